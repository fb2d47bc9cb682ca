//! Parameter types shared by the operator families.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Open bound on |alpha| enforced throughout the library.
pub const ALPHA_BOUND: f64 = 0.499;

pub fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha.abs() < ALPHA_BOUND) {
        return Err(Error::InvalidParameter(format!(
            "alpha = {alpha} outside the open interval (-{ALPHA_BOUND}, {ALPHA_BOUND})"
        )));
    }
    Ok(())
}

pub fn check_positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "{name} = {x} must be positive and finite"
        )));
    }
    Ok(())
}

/// Extension parameter on the extended real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtParam {
    Finite(f64),
    Infinite,
}

impl ExtParam {
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtParam::Finite(x) => Some(x),
            ExtParam::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, ExtParam::Infinite)
    }

    /// 1/x with 1/0 = inf and 1/inf = 0.
    pub fn reciprocal(self) -> ExtParam {
        match self {
            ExtParam::Infinite => ExtParam::Finite(0.0),
            ExtParam::Finite(0.0) => ExtParam::Infinite,
            ExtParam::Finite(x) => ExtParam::Finite(1.0 / x),
        }
    }
}

impl From<f64> for ExtParam {
    fn from(x: f64) -> Self {
        if x.is_infinite() {
            ExtParam::Infinite
        } else {
            ExtParam::Finite(x)
        }
    }
}

impl fmt::Display for ExtParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtParam::Finite(x) => write!(f, "{x}"),
            ExtParam::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for ExtParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "∞" => return Ok(ExtParam::Infinite),
            _ => {}
        }
        let x: f64 = t
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("cannot parse '{s}' as a number or 'inf'")))?;
        if !x.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "'{s}' is not finite; use 'inf' for the infinite extension"
            )));
        }
        Ok(ExtParam::Finite(x))
    }
}

/// Integral kernel evaluated pointwise.
pub trait KernelEval {
    type Value;
    fn eval(&self, r: f64, rho: f64) -> Result<Self::Value>;
}
