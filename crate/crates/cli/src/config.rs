//! Session configuration from flags and an optional TOML file.

use std::path::Path;
use std::str::FromStr;

use monogenic::{BasisKind, Context, Eps, GroupSpec, Scalar};
use num_rational::BigRational;
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("invalid config file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("unknown group {0:?}; expected z2^d or b2")]
    Group(String),
    #[error("kappa value {0:?} is not an exact rational")]
    Kappa(String),
    #[error("group {group} takes {expected} kappa values, got {got}")]
    KappaCount { group: String, expected: usize, got: usize },
    #[error("epsilon must be +1 or -1, got {0:?}")]
    Eps(String),
    #[error("{0}")]
    Kind(String),
    #[error("unknown format {0:?}; expected json, csv, latex or text")]
    Format(String),
    #[error("unknown suite {0:?}")]
    Suite(String),
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("CK requires Z2^d")]
    CkRequiresZ2,
    #[error(transparent)]
    Root(#[from] monogenic::RootError),
}

/// Keys accepted in a config file. Every key is optional; flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub group: Option<String>,
    pub kappa: Option<KappaList>,
    pub epsilon: Option<i64>,
    pub degree: Option<usize>,
    pub max_degree: Option<usize>,
    pub suite: Option<String>,
    pub kind: Option<String>,
    pub format: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum KappaList {
    Text(String),
    Items(Vec<KappaItem>),
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum KappaItem {
    Int(i64),
    Text(String),
}

impl KappaList {
    fn values(&self) -> Vec<String> {
        match self {
            KappaList::Text(s) => split_list(s),
            KappaList::Items(v) => v
                .iter()
                .map(|k| match k {
                    KappaItem::Int(i) => i.to_string(),
                    KappaItem::Text(s) => s.trim().to_string(),
                })
                .collect(),
        }
    }
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',').map(|p| p.trim().to_string()).filter(|p| !p.is_empty()).collect()
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Read { path: path.display().to_string(), source })?;
        Ok(toml::from_str(&text)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Z2(usize),
    B2,
}

impl FromStr for Family {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        let t = s.trim().to_ascii_lowercase();
        if t == "b2" {
            return Ok(Family::B2);
        }
        t.strip_prefix("z2^")
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&d| (1..=8).contains(&d))
            .map(Family::Z2)
            .ok_or_else(|| ConfigError::Group(s.to_string()))
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Family::Z2(d) => write!(f, "z2^{d}"),
            Family::B2 => f.write_str("b2"),
        }
    }
}

impl Family {
    fn kappa_count(self) -> usize {
        match self {
            Family::Z2(d) => d,
            Family::B2 => 2,
        }
    }

    /// `1/2, 1/3, 1/4, …`
    fn default_kappa(self) -> Vec<BigRational> {
        (0..self.kappa_count()).map(|i| BigRational::new(1.into(), (i as i64 + 2).into())).collect()
    }
}

pub fn parse_eps(s: &str) -> Result<Eps, ConfigError> {
    match s.trim() {
        "-1" | "-" => Ok(Eps::Minus),
        "1" | "+1" | "+" => Ok(Eps::Plus),
        other => Err(ConfigError::Eps(other.to_string())),
    }
}

fn parse_kappa(values: &[String]) -> Result<Vec<BigRational>, ConfigError> {
    values
        .iter()
        .map(|v| BigRational::from_str(v).map_err(|_| ConfigError::Kappa(v.clone())))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

impl FromStr for Format {
    type Err = ConfigError;
    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" => Ok(Format::Latex),
            "text" => Ok(Format::Text),
            other => Err(ConfigError::Format(other.to_string())),
        }
    }
}

/// Group flags shared by every subcommand.
#[derive(Debug, Default, Clone)]
pub struct GroupFlags {
    pub group: Option<String>,
    pub kappa: Option<String>,
    pub eps: Option<String>,
}

/// A resolved group, multiplicities and sign.
#[derive(Debug, Clone)]
pub struct Session {
    pub family: Family,
    pub kappa: Vec<BigRational>,
    pub eps: Eps,
}

impl Session {
    pub fn resolve(flags: &GroupFlags, file: &FileConfig) -> Result<Self, ConfigError> {
        let family: Family = flags.group.as_deref().or(file.group.as_deref()).unwrap_or("z2^3").parse()?;
        let kappa = match (&flags.kappa, &file.kappa) {
            (Some(k), _) => parse_kappa(&split_list(k))?,
            (None, Some(k)) => parse_kappa(&k.values())?,
            (None, None) => family.default_kappa(),
        };
        if kappa.len() != family.kappa_count() {
            return Err(ConfigError::KappaCount {
                group: family.to_string(),
                expected: family.kappa_count(),
                got: kappa.len(),
            });
        }
        let eps = match (&flags.eps, file.epsilon) {
            (Some(e), _) => parse_eps(e)?,
            (None, Some(e)) => parse_eps(&e.to_string())?,
            (None, None) => Eps::Minus,
        };
        Ok(Session { family, kappa, eps })
    }

    pub fn context(&self) -> Result<Context, ConfigError> {
        let k: Vec<Scalar> = self.kappa.iter().cloned().map(Scalar::from_rational).collect();
        let spec = match self.family {
            Family::Z2(_) => GroupSpec::Z2 { kappa: k },
            Family::B2 => GroupSpec::B2 { short: k[0].clone(), long: k[1].clone() },
        };
        Ok(Context::build(&spec, self.eps)?)
    }

    pub fn dim(&self) -> usize {
        match self.family {
            Family::Z2(d) => d,
            Family::B2 => 2,
        }
    }

    pub fn kappa_strings(&self) -> Vec<String> {
        self.kappa.iter().map(|q| Scalar::from_rational(q.clone()).to_string()).collect()
    }

    pub fn require_z2_for(&self, kind: BasisKind) -> Result<(), ConfigError> {
        if kind != BasisKind::Maxwell && !matches!(self.family, Family::Z2(_)) {
            return Err(ConfigError::CkRequiresZ2);
        }
        Ok(())
    }
}

pub fn resolve_kind(flag: Option<&str>, file: &FileConfig) -> Result<BasisKind, ConfigError> {
    flag.or(file.kind.as_deref()).unwrap_or("maxwell").parse().map_err(ConfigError::Kind)
}

pub fn resolve_format(flag: Option<&str>, file: &FileConfig, default: Format) -> Result<Format, ConfigError> {
    flag.or(file.format.as_deref()).map_or(Ok(default), str::parse)
}
