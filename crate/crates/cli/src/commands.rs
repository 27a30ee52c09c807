use anyhow::{Context, Result};

use marked_groups::algebra::FreeWord;
use marked_groups::cayley::{
    common_radius_of_balls, convergence_profile, enumerate_ball_with_cap, export_dot, CayleyBall,
};
use marked_groups::growth::growth_table;
use marked_groups::hnn::HnnGroup;
use marked_groups::limit::LimitGroup;
use marked_groups::oracle::{MarkedGroup, Remarked};
use marked_groups::spectra::{
    alpha_sequence, alpha_upper_bound_with, return_probabilities, SolverOptions, SpectralReport,
};

use crate::config::{Built, GroupSpec};
use crate::{parse_indices, Cli, CliError, Command, ExportFormat};

/// Runs `$body` with `$o` bound to the oracle inside a [`Built`].
macro_rules! with_oracle {
    ($built:expr, $o:ident => $body:expr) => {
        match $built {
            Built::Free($o) => $body,
            Built::Hnn($o) => $body,
            Built::Limit($o) => $body,
        }
    };
}

const SPECTRAL_HEADER: [&str; 8] = [
    "group",
    "i",
    "r",
    "lambda_min",
    "bound_sqrt",
    "bound_refined",
    "iterations",
    "residual",
];

fn num(x: f64) -> String {
    format!("{x}")
}

struct Table {
    header: String,
    writer: csv::Writer<Vec<u8>>,
}

impl Table {
    fn new(header: &str, columns: &[&str]) -> Result<Self> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(columns)?;
        Ok(Table {
            header: header.to_string(),
            writer,
        })
    }

    fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) -> Result<()> {
        self.writer.write_record(fields.into_iter().collect::<Vec<_>>())?;
        Ok(())
    }

    fn finish(self) -> Result<String> {
        let body = String::from_utf8(self.writer.into_inner()?)?;
        Ok(format!("{}\n{}", self.header, body))
    }
}

fn spectral_fields(group: &str, i: usize, rep: &SpectralReport) -> Vec<String> {
    vec![
        group.to_string(),
        i.to_string(),
        rep.radius.to_string(),
        num(rep.lambda_min),
        num(rep.bound_sqrt),
        num(rep.bound_refined),
        rep.iterations.to_string(),
        num(rep.residual),
    ]
}

fn guard_radius(cli: &Cli, radius: usize) -> Result<(), CliError> {
    if radius > cli.max_radius {
        return Err(CliError::Budget(format!(
            "radius {radius} exceeds --max-radius {}",
            cli.max_radius
        )));
    }
    Ok(())
}

fn hnn_of(built: &Built, spec: &GroupSpec) -> Result<HnnGroup, CliError> {
    match built {
        Built::Hnn(g) => Ok(g.clone()),
        _ => Err(CliError::Config(format!(
            "this command needs an HNN group (bs or abelian_hnn), got {spec}"
        ))),
    }
}

fn ball_of(built: &Built, radius: usize, cap: usize) -> Result<CayleyBall> {
    Ok(with_oracle!(built, o => enumerate_ball_with_cap(o, radius, cap)?.graph))
}

fn options(cli: &Cli) -> SolverOptions {
    SolverOptions {
        max_iterations: cli.max_iterations,
        vertex_cap: cli.max_vertices,
        ..SolverOptions::default()
    }
}

/// Output text and exit code.
pub fn run(cli: &Cli, header: &str) -> Result<(String, u8)> {
    let cap = cli.max_vertices;
    match &cli.command {
        Command::Check(args) => {
            let spec = args.spec()?;
            match spec.conditions()? {
                None => Ok((format!("{spec}: free group, no HNN conditions\n"), 0)),
                Some(report) => {
                    let mut text = format!("conditions: {}\n", report.summary());
                    for line in &report.diagnostics {
                        text.push_str(&format!("  {line}\n"));
                    }
                    Ok((text, if report.all_hold() { 0 } else { 2 }))
                }
            }
        }
        Command::Ball { group, radius } => {
            guard_radius(cli, *radius)?;
            let built = group.spec()?.build()?;
            let ball = ball_of(&built, *radius, cap)?;
            let mut t = Table::new(header, &["vertex", "distance", "element", "neighbors"])?;
            for v in 0..ball.len() {
                let neighbors = (0..ball.marking_size())
                    .map(|s| match ball.out_neighbor(v, s) {
                        Some(w) => format!("{}>{w}", ball.marking[s]),
                        None => format!("{}>-", ball.marking[s]),
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
                t.row([
                    v.to_string(),
                    ball.distances[v].to_string(),
                    ball.labels[v].clone(),
                    neighbors,
                ])?;
            }
            Ok((t.finish()?, 0))
        }
        Command::Compare {
            group,
            against,
            radius,
        } => {
            guard_radius(cli, *radius)?;
            let a = group.spec()?.build()?;
            let b = GroupSpec::parse_shorthand(against)?.build()?;
            let common = common_radius_of_balls(&ball_of(&a, *radius, cap)?, &ball_of(&b, *radius, cap)?)?;
            let mut t = Table::new(header, &["r", "isomorphic"])?;
            for (r, iso) in common.isomorphic.iter().enumerate() {
                t.row([r.to_string(), iso.to_string()])?;
            }
            Ok((t.finish()?, 0))
        }
        Command::Converge {
            group,
            indices,
            radius,
        } => {
            guard_radius(cli, *radius)?;
            let spec = group.spec()?;
            let g = hnn_of(&spec.build()?, &spec)?;
            let limit = LimitGroup::new(&g);
            let indices = parse_indices(indices)?;
            let mut rows = convergence_profile(&g, &limit, &indices, *radius, cap)?;
            rows.sort_by_key(|r| r.index);
            let mut t = Table::new(header, &["i", "r_star", "vertices", "edges"])?;
            for row in rows {
                t.row([
                    row.index.to_string(),
                    row.radius.map_or("none".to_string(), |r| r.to_string()),
                    row.vertices.to_string(),
                    row.edges.to_string(),
                ])?;
            }
            Ok((t.finish()?, 0))
        }
        Command::Alpha {
            group,
            radius,
            symmetric,
        } => {
            let spec = group.spec()?;
            let built = spec.build()?;
            let radii = parse_indices(radius)?;
            let mut t = Table::new(header, &SPECTRAL_HEADER)?;
            let label = spec.to_string();
            for r in radii {
                guard_radius(cli, r)?;
                let rep = with_oracle!(&built, o => {
                    if *symmetric {
                        alpha_upper_bound_with(&symmetrized(o), r, &options(cli))
                    } else {
                        alpha_upper_bound_with(o, r, &options(cli))
                    }
                })
                .with_context(|| format!("radius {r}"))?;
                t.row(spectral_fields(&label, 0, &rep))?;
            }
            Ok((t.finish()?, 0))
        }
        Command::AlphaSeq {
            group,
            indices,
            radius,
        } => {
            guard_radius(cli, *radius + 1)?;
            let spec = group.spec()?;
            let g = hnn_of(&spec.build()?, &spec)?;
            let mut indices = parse_indices(indices)?;
            indices.sort_unstable();
            indices.dedup();
            let seq = alpha_sequence(&g, &indices, *radius, &options(cli))?;
            let mut columns = SPECTRAL_HEADER.to_vec();
            columns.extend(["r_star", "equals_limit", "nonincreasing"]);
            let mut t = Table::new(header, &columns)?;
            let label = spec.to_string();
            let mut previous = f64::INFINITY;
            for row in &seq.rows {
                let mut fields = spectral_fields(&label, row.index, &row.report);
                fields.push(row.common_radius.map_or("none".to_string(), |r| r.to_string()));
                fields.push(row.equals_limit.to_string());
                fields.push((row.report.bound_refined <= previous).to_string());
                previous = row.report.bound_refined;
                t.row(fields)?;
            }
            Ok((t.finish()?, 0))
        }
        Command::Growth { group, n_max } => {
            guard_radius(cli, *n_max)?;
            let built = group.spec()?.build()?;
            let table = with_oracle!(&built, o => growth_table(o, *n_max, cap)?);
            let mut t = Table::new(header, &["n", "gamma", "gamma_root", "fekete_bound"])?;
            for n in 1..=*n_max {
                t.row([
                    n.to_string(),
                    table.gamma[n].to_string(),
                    num(table.root(n)),
                    num(table.fekete_bound(n)),
                ])?;
            }
            Ok((t.finish()?, 0))
        }
        Command::FreeCert {
            group,
            u,
            w,
            length,
        } => {
            let spec = group.spec()?;
            let g = hnn_of(&spec.build()?, &spec)?;
            let uw = FreeWord::parse(u, g.names())?;
            let ww = FreeWord::parse(w, g.names())?;
            let cert = g.free_subgroup_certificate(&uw, &ww, *length);
            let mut t = Table::new(
                header,
                &["u", "w", "max_length", "words_checked", "holds", "counterexample"],
            )?;
            let names = ["u".to_string(), "w".to_string()];
            t.row([
                u.clone(),
                w.clone(),
                cert.max_length.to_string(),
                cert.words_checked.to_string(),
                cert.holds.to_string(),
                cert.counterexample
                    .map_or(String::new(), |c| c.format_with(&names)),
            ])?;
            Ok((t.finish()?, 0))
        }
        Command::Walk { group, k } => {
            guard_radius(cli, *k)?;
            let built = group.spec()?.build()?;
            let ps = with_oracle!(&built, o => return_probabilities(o, *k, cap)?);
            let mut t = Table::new(header, &["k", "p_2k", "root"])?;
            for p in ps {
                let ratio = p.ratio();
                t.row([
                    p.k.to_string(),
                    format!("{}/{}", ratio.numer(), ratio.denom()),
                    num(p.root()),
                ])?;
            }
            Ok((t.finish()?, 0))
        }
        Command::Export {
            group,
            format,
            radius,
        } => {
            let spec = group.spec()?;
            match format {
                ExportFormat::Config => Ok((spec.to_toml(), 0)),
                ExportFormat::Dot => {
                    guard_radius(cli, *radius)?;
                    let built = spec.build()?;
                    Ok((export_dot(&ball_of(&built, *radius, cap)?), 0))
                }
            }
        }
    }
}

/// The marking `S ∪ S⁻¹`.
fn symmetrized<O: MarkedGroup>(o: &O) -> Remarked<&O> {
    let mut names = o.marking().to_vec();
    let mut gens: Vec<O::Element> = (0..o.rank()).map(|j| o.generator(j)).collect();
    for j in 0..o.rank() {
        names.push(format!("{}^-1", o.marking()[j]));
        gens.push(o.invert(&gens[j]));
    }
    Remarked::new(o, names, gens)
}
