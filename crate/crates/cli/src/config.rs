//! Group definitions: the one-line shorthand and the TOML config form.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use marked_groups::algebra::Monomorphism;
use marked_groups::hnn::{validate_conditions, ConditionReport, HnnGroup};
use marked_groups::limit::LimitGroup;
use marked_groups::oracle::FreeGroup;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupSpec {
    Free { rank: usize },
    AbelianHnn { lambda: Vec<Vec<i64>>, mu: Vec<Vec<i64>> },
    Bs { m: i64, n: i64 },
    LimitOf { base: Box<GroupSpec> },
}

#[derive(Deserialize)]
struct KindOnly {
    kind: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FreeFields {
    #[allow(dead_code)]
    kind: String,
    rank: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BsFields {
    #[allow(dead_code)]
    kind: String,
    m: i64,
    n: i64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HnnFields {
    #[allow(dead_code)]
    kind: String,
    lambda: Vec<Vec<i64>>,
    mu: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LimitFields {
    #[allow(dead_code)]
    kind: String,
    base: BaseFields,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BaseFields {
    kind: String,
    m: Option<i64>,
    n: Option<i64>,
    lambda: Option<Vec<Vec<i64>>>,
    mu: Option<Vec<Vec<i64>>>,
}

fn missing(field: &str) -> CliError {
    CliError::Config(format!("missing field `{field}`"))
}

/// A group ready for computation.
pub enum Built {
    Free(FreeGroup),
    Hnn(HnnGroup),
    Limit(LimitGroup),
}

fn format_rows(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn parse_rows(text: &str) -> Result<Vec<Vec<i64>>, CliError> {
    text.split(';')
        .map(|row| {
            row.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| CliError::Config(format!("bad matrix entry `{x}`")))
                })
                .collect()
        })
        .collect()
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Free { rank } => write!(f, "free:{rank}"),
            GroupSpec::Bs { m, n } => write!(f, "bs:{m},{n}"),
            GroupSpec::AbelianHnn { lambda, mu } => {
                write!(f, "hnn:{}/{}", format_rows(lambda), format_rows(mu))
            }
            GroupSpec::LimitOf { base } => write!(f, "limit:{base}"),
        }
    }
}

impl GroupSpec {
    /// Parses `free:m`, `bs:m,n`, `hnn:<rows>/<rows>` (rows separated by `;`,
    /// entries by `,`) and `limit:<spec>`.
    pub fn parse_shorthand(text: &str) -> Result<Self, CliError> {
        let text = text.trim();
        let (kind, rest) = text
            .split_once(':')
            .ok_or_else(|| CliError::Config(format!("group `{text}` has no kind prefix")))?;
        let int = |s: &str| {
            s.trim()
                .parse::<i64>()
                .map_err(|_| CliError::Config(format!("bad integer `{s}` in `{text}`")))
        };
        let spec = match kind {
            "free" => GroupSpec::Free {
                rank: int(rest)?
                    .try_into()
                    .map_err(|_| CliError::Config(format!("bad rank in `{text}`")))?,
            },
            "bs" => {
                let (m, n) = rest
                    .split_once(',')
                    .ok_or_else(|| CliError::Config(format!("expected bs:m,n, got `{text}`")))?;
                GroupSpec::Bs {
                    m: int(m)?,
                    n: int(n)?,
                }
            }
            "hnn" => {
                let (l, m) = rest.split_once('/').ok_or_else(|| {
                    CliError::Config(format!("expected hnn:<lambda>/<mu>, got `{text}`"))
                })?;
                GroupSpec::AbelianHnn {
                    lambda: parse_rows(l)?,
                    mu: parse_rows(m)?,
                }
            }
            "limit" => GroupSpec::LimitOf {
                base: Box::new(GroupSpec::parse_shorthand(rest)?),
            },
            other => return Err(CliError::Config(format!("unknown group kind `{other}`"))),
        };
        spec.check_shape()?;
        Ok(spec)
    }

    /// Reads a TOML definition. The `kind` is read first and the fields are
    /// then deserialized directly, so errors carry line numbers.
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        fn de<T: serde::de::DeserializeOwned>(text: &str) -> Result<T, CliError> {
            toml::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))
        }
        let kind: KindOnly = de(text)?;
        let spec = match kind.kind.as_str() {
            "free" => {
                let f: FreeFields = de(text)?;
                GroupSpec::Free { rank: f.rank }
            }
            "bs" => {
                let f: BsFields = de(text)?;
                GroupSpec::Bs { m: f.m, n: f.n }
            }
            "abelian_hnn" => {
                let f: HnnFields = de(text)?;
                GroupSpec::AbelianHnn {
                    lambda: f.lambda,
                    mu: f.mu,
                }
            }
            "limit_of" => {
                let f: LimitFields = de(text)?;
                let base = match f.base.kind.as_str() {
                    "bs" => GroupSpec::Bs {
                        m: f.base.m.ok_or_else(|| missing("base.m"))?,
                        n: f.base.n.ok_or_else(|| missing("base.n"))?,
                    },
                    "abelian_hnn" => GroupSpec::AbelianHnn {
                        lambda: f.base.lambda.ok_or_else(|| missing("base.lambda"))?,
                        mu: f.base.mu.ok_or_else(|| missing("base.mu"))?,
                    },
                    other => {
                        return Err(CliError::Config(format!(
                            "field `base.kind`: expected bs or abelian_hnn, got `{other}`"
                        )))
                    }
                };
                GroupSpec::LimitOf {
                    base: Box::new(base),
                }
            }
            other => {
                return Err(CliError::Config(format!(
                    "field `kind`: unknown group kind `{other}` (expected free, abelian_hnn, bs or limit_of)"
                )))
            }
        };
        spec.check_shape()?;
        Ok(spec)
    }

    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        GroupSpec::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("group specs serialize")
    }

    fn check_shape(&self) -> Result<(), CliError> {
        match self {
            GroupSpec::Free { rank } if *rank == 0 => {
                Err(CliError::Config("free group rank must be at least 1".into()))
            }
            GroupSpec::Free { .. } => Ok(()),
            GroupSpec::Bs { m, n } if *m == 0 || *n == 0 => {
                Err(CliError::Config("field `m`/`n`: exponents must be nonzero".into()))
            }
            GroupSpec::Bs { .. } => Ok(()),
            GroupSpec::AbelianHnn { lambda, mu } => {
                for (field, rows) in [("lambda", lambda), ("mu", mu)] {
                    let d = rows.len();
                    if d == 0 || rows.iter().any(|r| r.len() != d) {
                        return Err(CliError::Config(format!(
                            "field `{field}`: expected a nonempty square matrix"
                        )));
                    }
                }
                if lambda.len() != mu.len() {
                    return Err(CliError::Config(
                        "fields `lambda` and `mu` have different sizes".into(),
                    ));
                }
                Ok(())
            }
            GroupSpec::LimitOf { base } => match **base {
                GroupSpec::Bs { .. } | GroupSpec::AbelianHnn { .. } => base.check_shape(),
                _ => Err(CliError::Config(
                    "field `base`: limit_of needs an abelian_hnn or bs base".into(),
                )),
            },
        }
    }

    /// `(λ, μ)` for HNN kinds.
    fn monomorphisms(&self) -> Result<Option<(Monomorphism, Monomorphism)>, CliError> {
        let wrap = |e: marked_groups::Error| CliError::Config(e.to_string());
        match self {
            GroupSpec::Bs { m, n } => Ok(Some((
                Monomorphism::scalar(*m).map_err(wrap)?,
                Monomorphism::scalar(*n).map_err(wrap)?,
            ))),
            GroupSpec::AbelianHnn { lambda, mu } => Ok(Some((
                Monomorphism::from_i64_rows(lambda).map_err(wrap)?,
                Monomorphism::from_i64_rows(mu).map_err(wrap)?,
            ))),
            GroupSpec::LimitOf { base } => base.monomorphisms(),
            GroupSpec::Free { .. } => Ok(None),
        }
    }

    /// The three HNN conditions, or `None` for free groups.
    pub fn conditions(&self) -> Result<Option<ConditionReport>, CliError> {
        match self.monomorphisms()? {
            Some((l, m)) => validate_conditions(&l, &m)
                .map(Some)
                .map_err(|e| CliError::Config(e.to_string())),
            None => Ok(None),
        }
    }

    /// Builds the oracle; HNN kinds are validated first.
    pub fn build(&self) -> Result<Built, CliError> {
        if let Some(report) = self.conditions()? {
            if !report.all_hold() {
                return Err(CliError::Validation(format!(
                    "conditions: {}",
                    report.summary()
                )));
            }
        }
        let hnn = || -> Result<HnnGroup, CliError> {
            let (l, m) = self.monomorphisms()?.expect("HNN kind");
            HnnGroup::new(l, m).map_err(|e| CliError::Validation(e.to_string()))
        };
        Ok(match self {
            GroupSpec::Free { rank } => Built::Free(FreeGroup::new(*rank)),
            GroupSpec::Bs { .. } | GroupSpec::AbelianHnn { .. } => Built::Hnn(hnn()?),
            GroupSpec::LimitOf { .. } => {
                Built::Limit(LimitGroup::new(&hnn()?))
            }
        })
    }
}
