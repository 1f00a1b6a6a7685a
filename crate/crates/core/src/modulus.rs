//! Moduli of continuity and the operator-level constant they are paired with.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "alpha")]
pub enum ModulusOfContinuity {
    /// `ω(t) = t^α`, α ∈ (0,1).
    Holder(f64),
    /// `ω(t) = −t log t` on `[0, 1/e]`, `e` beyond.
    AlmostLipschitz,
}

impl ModulusOfContinuity {
    pub fn holder(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(domain(format!("Hölder exponent must lie in (0,1), got {alpha}")));
        }
        Ok(ModulusOfContinuity::Holder(alpha))
    }

    pub fn omega(&self, t: f64) -> f64 {
        match *self {
            ModulusOfContinuity::Holder(a) => t.powf(a),
            ModulusOfContinuity::AlmostLipschitz => {
                if t <= 0.0 {
                    0.0
                } else if t <= 1.0 / E {
                    -t * t.ln()
                } else {
                    E
                }
            }
        }
    }

    /// Integrated modulus `ω*(t) = t ∫_t^∞ ω(x)/x² dx`.
    pub fn omega_star(&self, t: f64) -> f64 {
        match *self {
            ModulusOfContinuity::Holder(a) => t.powf(a) / (1.0 - a),
            ModulusOfContinuity::AlmostLipschitz => {
                if t <= 0.0 {
                    0.0
                } else if t <= 1.0 / E {
                    let l = t.ln();
                    (E * E - 0.5) * t + 0.5 * l * l * t
                } else {
                    E
                }
            }
        }
    }
}

/// Constant `c > 0` of the operator Hölder estimates; its value is not known,
/// so it is a parameter defaulting to 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UniversalConstant(f64);

impl UniversalConstant {
    pub fn new(c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(domain(format!("constant c must be finite and > 0, got {c}")));
        }
        Ok(UniversalConstant(c))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl Default for UniversalConstant {
    fn default() -> Self {
        UniversalConstant(1.0)
    }
}
