use abnrl::error::{Error, Result};
use abnrl::limits::Block;
use abnrl::params::ExtParam;
use clap::{Args, ValueEnum};
use serde::{Deserialize, Deserializer};
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Dirac,
    Schrod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BlockArg {
    Full,
    UpperLeft,
    LowerRight,
    OffDiagonal,
}

impl From<BlockArg> for Block {
    fn from(b: BlockArg) -> Block {
        match b {
            BlockArg::Full => Block::Full,
            BlockArg::UpperLeft => Block::UpperLeft,
            BlockArg::LowerRight => Block::LowerRight,
            BlockArg::OffDiagonal => Block::OffDiagonal,
        }
    }
}

/// Extension parameter as given on the command line or in the config file:
/// a number or `inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ext(pub ExtParam);

impl FromStr for Ext {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        s.parse::<ExtParam>().map(Ext).map_err(|e| e.to_string())
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(x) => Ok(Ext(ExtParam::Finite(x))),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Parameters shared by all commands. Every field may also come from the JSON
/// config file (same names, dashes or underscores); flags win.
#[derive(Debug, Clone, Default, Args, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Opts {
    /// Operator family.
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    /// Flux parameter, |alpha| < 0.499.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub m: Option<f64>,
    /// Speed of light (Dirac only).
    #[arg(long)]
    pub c: Option<f64>,
    /// Spectral parameter; the resolvent is taken at -lambda.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Schrödinger extension parameter (number or inf).
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<Ext>,
    /// Dirac extension parameter (number or inf).
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<Ext>,
    /// Comma-separated list of extension parameters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub params: Option<Vec<Ext>>,
    /// Comma-separated increasing list of c values.
    #[arg(long, value_delimiter = ',')]
    #[serde(alias = "c-sweep")]
    pub c_sweep: Option<Vec<f64>>,
    #[arg(long, value_enum)]
    pub block: Option<BlockArg>,
    /// Radial nodes.
    #[arg(long)]
    pub nodes: Option<usize>,
    /// Angular samples (power of two, at least 16).
    #[arg(long)]
    #[serde(alias = "n-theta")]
    pub n_theta: Option<usize>,
    /// CSV output path; standard output if absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

macro_rules! overlay {
    ($a:ident, $b:ident; $($f:ident),*) => {
        Opts { $($f: $a.$f.or($b.$f)),* }
    };
}

impl Opts {
    /// Fields of `self` take precedence over `file`.
    pub fn over(self, file: Opts) -> Opts {
        overlay!(self, file; family, alpha, m, c, lambda, theta, gamma, params, c_sweep, block, nodes, n_theta, out)
    }

    pub fn load(path: &Path) -> Result<Opts> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Error::InvalidParameter(format!("bad config {}: {e}", path.display())))
    }

    pub fn family(&self) -> Result<Family> {
        self.family.ok_or_else(|| missing("family"))
    }

    pub fn alpha(&self) -> Result<f64> {
        self.alpha.ok_or_else(|| missing("alpha"))
    }

    pub fn m(&self) -> f64 {
        self.m.unwrap_or(1.0)
    }

    pub fn c(&self) -> f64 {
        self.c.unwrap_or(1.0)
    }

    pub fn theta(&self) -> Result<ExtParam> {
        self.theta.map(|t| t.0).ok_or_else(|| missing("theta"))
    }

    pub fn gamma(&self) -> Result<ExtParam> {
        self.gamma.map(|t| t.0).ok_or_else(|| missing("gamma"))
    }

    pub fn finite_theta(&self) -> Result<f64> {
        self.theta()?
            .finite()
            .ok_or_else(|| Error::InvalidParameter("theta must be finite for this command".into()))
    }

    pub fn c_sweep(&self) -> Vec<f64> {
        self.c_sweep.clone().unwrap_or_else(|| abnrl::limits::DEFAULT_C_SWEEP.to_vec())
    }

    pub fn params_or(&self, default: &[ExtParam]) -> Vec<ExtParam> {
        match &self.params {
            Some(p) => p.iter().map(|e| e.0).collect(),
            None => default.to_vec(),
        }
    }
}

fn missing(name: &str) -> Error {
    Error::InvalidParameter(format!("--{name} is required"))
}
