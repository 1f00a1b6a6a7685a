use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Logarithm base for entropy outputs.
///
/// Every computation runs in nats; a `LogBase` rescales log-homogeneous
/// quantities at the edge so all entropies in one report share a base.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub enum LogBase {
    #[default]
    Natural,
    Base(f64),
}

impl LogBase {
    pub fn new(base: f64) -> Result<Self> {
        if !(base.is_finite() && base > 1.0) {
            return Err(domain(format!("log base must be a finite real > 1, got {base}")));
        }
        Ok(LogBase::Base(base))
    }

    pub fn bits() -> Self {
        LogBase::Base(2.0)
    }

    /// Parses `e`, `natural`, `nats`, `bits` or a numeric base.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "e" | "natural" | "nats" => Ok(LogBase::Natural),
            "bits" => Ok(LogBase::bits()),
            other => {
                let b: f64 = other
                    .parse()
                    .map_err(|_| domain(format!("cannot parse log base {other:?}")))?;
                if (b - std::f64::consts::E).abs() < 1e-15 {
                    Ok(LogBase::Natural)
                } else {
                    LogBase::new(b)
                }
            }
        }
    }

    /// Multiplier converting a value in nats to this base.
    pub fn factor(self) -> f64 {
        match self {
            LogBase::Natural => 1.0,
            LogBase::Base(b) => 1.0 / b.ln(),
        }
    }

    pub fn from_nats(self, nats: f64) -> f64 {
        nats * self.factor()
    }
}

impl std::fmt::Display for LogBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LogBase::Natural => write!(f, "e"),
            LogBase::Base(b) => write!(f, "{b}"),
        }
    }
}
