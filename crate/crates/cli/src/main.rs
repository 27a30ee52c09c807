//! `mgroups`: command-line front end for the marked-groups library.
//!
//! Exit codes: 0 success, 2 the HNN conditions fail, 3 a budget is exceeded,
//! 4 malformed arguments or config, 1 anything else.

mod commands;
mod config;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::GroupSpec;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Validation(String),
    Budget(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m) | CliError::Validation(m) | CliError::Budget(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

#[derive(Parser, Debug)]
#[command(name = "mgroups", version, about = "Marked groups, HNN extensions and displacement bounds")]
struct Cli {
    /// Accepted and echoed; every computation is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Vertex budget for any single ball.
    #[arg(long, global = true, default_value_t = 5_000_000)]
    max_vertices: usize,
    /// Largest radius any command may request.
    #[arg(long, global = true, default_value_t = 8)]
    max_radius: usize,
    /// Iteration cap for the eigen solver.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_iterations: usize,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Shorthand such as `bs:2,3`, `free:2`, `hnn:2,0;0,2/3,0;0,3` or `limit:bs:2,3`.
    #[arg(long, conflicts_with = "config", required_unless_present = "config")]
    group: Option<String>,
    /// TOML group definition.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl GroupArgs {
    fn spec(&self) -> Result<GroupSpec, CliError> {
        match (&self.group, &self.config) {
            (Some(g), _) => GroupSpec::parse_shorthand(g),
            (None, Some(path)) => GroupSpec::from_file(path),
            (None, None) => Err(CliError::Config("one of --group or --config is required".into())),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ExportFormat {
    Dot,
    Config,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the three HNN conditions.
    Check(GroupArgs),
    /// List the ball of radius r.
    Ball {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        radius: usize,
    },
    /// Per-radius rooted isomorphism of two marked groups.
    Compare {
        #[command(flatten)]
        group: GroupArgs,
        /// Shorthand for the second group.
        #[arg(long)]
        against: String,
        #[arg(long)]
        radius: usize,
    },
    /// Radius of agreement between the markings {t, λ^i(a)} and the limit.
    Converge {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long = "i", default_value = "0..3")]
        indices: String,
        #[arg(long)]
        radius: usize,
    },
    /// Spectral upper bounds on the displacement constant.
    Alpha {
        #[command(flatten)]
        group: GroupArgs,
        /// A radius, a range `a..b` (inclusive) or a list `a,b,c`.
        #[arg(long)]
        radius: String,
        /// Use S ∪ S⁻¹ instead of S.
        #[arg(long)]
        symmetric: bool,
    },
    /// Bounds along the markings {t, λ^i(a)} next to the limit group.
    AlphaSeq {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long = "i", default_value = "0..3")]
        indices: String,
        #[arg(long = "r")]
        radius: usize,
    },
    /// Growth function and Fekete bound.
    Growth {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long = "n")]
        n_max: usize,
    },
    /// Check that no short word in u, w is trivial.
    FreeCert {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value = "t")]
        u: String,
        #[arg(long, default_value = "a^-1 t a")]
        w: String,
        #[arg(long)]
        length: usize,
    },
    /// Exact return probabilities of the simple random walk.
    Walk {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        k: usize,
    },
    /// DOT rendering of a ball, or the canonical TOML config.
    Export {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_enum, default_value_t = ExportFormat::Dot)]
        format: ExportFormat,
        #[arg(long, default_value_t = 2)]
        radius: usize,
    },
}

/// Parses `a`, `a..b` (inclusive) or `a,b,c`.
pub fn parse_indices(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Config(format!("bad index list `{text}`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    if let Some((a, b)) = text.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    let list = text.split(',').map(num).collect::<Result<Vec<_>, _>>()?;
    if list.is_empty() {
        return Err(bad());
    }
    Ok(list)
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<CliError>() {
            return match e {
                CliError::Config(_) => 4,
                CliError::Validation(_) => 2,
                CliError::Budget(_) => 3,
            };
        }
        if let Some(e) = cause.downcast_ref::<marked_groups::Error>() {
            use marked_groups::Error as E;
            return match e {
                E::BudgetExceeded { .. } => 3,
                E::ConditionsFailed(_) => 2,
                E::WordSyntax(_)
                | E::InvalidGenerator { .. }
                | E::InvalidInput(_)
                | E::NotSquare { .. }
                | E::Singular(_)
                | E::RankMismatch { .. }
                | E::IncomparableBalls(_) => 4,
                _ => 1,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 4 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let header = format!("# mgroups {} seed={}", argv.join(" "), cli.seed);
    match commands::run(&cli, &header) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => std::io::stdout().write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
