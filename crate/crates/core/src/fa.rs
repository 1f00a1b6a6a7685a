//! Numerics for the finite-dimensional-approximation counterexample:
//! states with spectrum `λ_k = ν/(k log(k)^α)` have finite entropy, yet
//! `β·log Σ_k e^{−β log(k)²}` stays above 1/4 as `β → 0`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Smallest partial-sum horizon accepted by the explorers.
pub const MIN_HORIZON: u64 = 1_000;

/// `∫_U^∞ (a + b·u + c·log u)·u^{−α} du` for `α > 2` (or `b = 0`, `α > 1`).
fn log_power_tail(upper: f64, alpha: f64, a: f64, b: f64, c: f64) -> f64 {
    let p1 = upper.powf(1.0 - alpha);
    let mut s = a * p1 / (alpha - 1.0) + c * (p1 * upper.ln() / (alpha - 1.0) + p1 / (alpha - 1.0).powi(2));
    if b != 0.0 {
        s += b * upper.powf(2.0 - alpha) / (alpha - 2.0);
    }
    s
}

/// `λ_k = ν/(k·log(k)^α)` for `k ≥ 2`, normalised to unit mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueFamily {
    pub alpha_exp: f64,
    pub nu: f64,
    /// Bracket on `1/ν = Σ_{k≥2} 1/(k log(k)^α)`.
    pub inverse_nu_bracket: (f64, f64),
}

impl EigenvalueFamily {
    pub fn new(alpha_exp: f64) -> Result<Self> {
        Self::with_horizon(alpha_exp, 1_000_000)
    }

    /// Sums `1/(k log(k)^α)` directly to `horizon`; the tail is
    /// `∫ du/u^α` in `u = log x`, bracketed by the endpoints `K` and `K+1`
    /// and estimated from `K + 1/2`.
    pub fn with_horizon(alpha_exp: f64, horizon: u64) -> Result<Self> {
        if !(alpha_exp > 1.0 && alpha_exp.is_finite()) {
            return Err(domain(format!("alpha_exp must be > 1 for a normalisable family, got {alpha_exp}")));
        }
        if horizon < MIN_HORIZON {
            return Err(domain(format!("horizon must be >= {MIN_HORIZON}, got {horizon}")));
        }
        let partial: f64 = (2..=horizon)
            .rev()
            .map(|k| {
                let x = k as f64;
                1.0 / (x * x.ln().powf(alpha_exp))
            })
            .sum();
        let tail = |x: f64| x.ln().powf(1.0 - alpha_exp) / (alpha_exp - 1.0);
        let k = horizon as f64;
        let estimate = partial + tail(k + 0.5);
        Ok(EigenvalueFamily {
            alpha_exp,
            nu: 1.0 / estimate,
            inverse_nu_bracket: (partial + tail(k + 1.0), partial + tail(k)),
        })
    }

    /// `λ_k`, zero for `k < 2`.
    pub fn lambda(&self, k: u64) -> f64 {
        if k < 2 {
            return 0.0;
        }
        let x = k as f64;
        self.nu / (x * x.ln().powf(self.alpha_exp))
    }

    /// `−λ_k log λ_k`.
    fn entropy_term(&self, k: u64) -> f64 {
        let l = self.lambda(k);
        if l > 0.0 {
            -l * l.ln()
        } else {
            0.0
        }
    }

    /// `∫_K^∞ −λ(x) log λ(x) dx`.
    fn entropy_tail(&self, from: f64) -> f64 {
        let a = self.alpha_exp;
        if a <= 2.0 {
            return f64::INFINITY;
        }
        self.nu * log_power_tail(from.ln(), a, -self.nu.ln(), 1.0, a)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleEntropy {
    pub alpha_exp: f64,
    pub horizon: u64,
    /// `Σ_{k=2}^{K} −λ_k log λ_k`.
    pub partial: f64,
    /// Integral-test bound on the omitted tail (infinite when divergent).
    pub tail_upper: f64,
    pub finite: bool,
}

impl CounterexampleEntropy {
    pub fn total_upper(&self) -> f64 {
        self.partial + self.tail_upper
    }
}

/// Entropy of the counterexample spectrum: partial sum to `horizon` plus an
/// integral tail, finite exactly when `α > 2`.
pub fn counterexample_entropy(alpha_exp: f64, horizon: u64) -> Result<CounterexampleEntropy> {
    let fam = EigenvalueFamily::with_horizon(alpha_exp, horizon)?;
    let partial: f64 = (2..=horizon).rev().map(|k| fam.entropy_term(k)).sum();
    let tail_upper = fam.entropy_tail(horizon as f64);
    Ok(CounterexampleEntropy {
        alpha_exp,
        horizon,
        partial,
        tail_upper,
        finite: tail_upper.is_finite(),
    })
}

/// Cauchy-condensation bracket on `Σ_{n ≥ 2^m} −λ_n log λ_n`:
/// `½ Σ_{k>m} 2^k a_{2^k} ≤ tail ≤ Σ_{k≥m} 2^k a_{2^k}`.
///
/// The condensed series is `a Σ k^{−α} + b Σ k^{1−α} + c Σ log k · k^{−α}`;
/// it is summed to `m + terms` and closed with its integral tail.
pub fn condensation_bracket(fam: &EigenvalueFamily, m: u32, terms: u64) -> Result<(f64, f64)> {
    let alpha = fam.alpha_exp;
    if alpha <= 2.0 {
        return Err(domain(format!("condensed entropy series diverges for alpha_exp = {alpha} <= 2")));
    }
    if !(4..=60).contains(&m) {
        return Err(domain(format!("condensation start 2^m needs 4 <= m <= 60, got {m}")));
    }
    let ln2 = std::f64::consts::LN_2;
    let nu = fam.nu;
    let scale = nu * ln2.powf(-alpha);
    let (a, b, c) = (scale * (-nu.ln() + alpha * ln2.ln()), scale * ln2, scale * alpha);
    let term = |k: f64| (a + b * k + c * k.ln()) * k.powf(-alpha);
    let last = m as u64 + terms;
    let body: f64 = (m as u64 + 1..=last).rev().map(|k| term(k as f64)).sum();
    let lo = 0.5 * (body + log_power_tail(last as f64 + 1.0, alpha, a, b, c));
    let hi = term(m as f64) + body + log_power_tail(last as f64, alpha, a, b, c);
    Ok((lo, hi))
}

/// Weight sequence `g_k` of the FA condition `Σ λ_k g_k < ∞`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GSequence {
    /// `g_k = log(k)²`.
    LogSquared,
    /// `g_k = 0`.
    Zero,
}

impl GSequence {
    pub fn at(&self, k: u64) -> f64 {
        match self {
            GSequence::LogSquared => {
                let l = (k.max(1) as f64).ln();
                l * l
            }
            GSequence::Zero => 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Feasibility {
    pub partial: f64,
    pub tail_upper: f64,
    pub converges: bool,
}

/// `Σ_{k ≤ K} λ_k g_k` and an integral-test verdict on the full series.
pub fn fa_weight_feasibility(fam: &EigenvalueFamily, g: GSequence, horizon: u64) -> Result<Feasibility> {
    if horizon < MIN_HORIZON {
        return Err(domain(format!("horizon must be >= {MIN_HORIZON}, got {horizon}")));
    }
    let partial: f64 = (2..=horizon).rev().map(|k| fam.lambda(k) * g.at(k)).sum();
    let tail_upper = match g {
        GSequence::Zero => 0.0,
        GSequence::LogSquared => {
            let a = fam.alpha_exp;
            if a > 3.0 {
                fam.nu * (horizon as f64).ln().powf(3.0 - a) / (a - 3.0)
            } else {
                f64::INFINITY
            }
        }
    };
    Ok(Feasibility {
        partial,
        tail_upper,
        converges: tail_upper.is_finite(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaLogZ {
    pub beta: f64,
    pub lower: f64,
    pub upper: f64,
    /// `log ∫_1^∞ e^{−β log(x)²} dx`.
    pub log_integral: f64,
}

impl BetaLogZ {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Bracket on `β·log Σ_{k≥1} e^{−β log(k)²}` from `I ≤ Σ ≤ 1 + I` with
/// `I = e^{1/(4β)}·√π(1 + erf(1/(2√β)))/(2√β)`, all in the log domain.
pub fn beta_log_z(beta: f64) -> Result<BetaLogZ> {
    if !(beta > 0.0 && beta <= 0.2) {
        return Err(domain(format!("beta must lie in (0, 0.2], got {beta}")));
    }
    let sb = beta.sqrt();
    let log_i = 0.25 / beta
        + (std::f64::consts::PI.sqrt() * (1.0 + libm::erf(0.5 / sb)) / (2.0 * sb)).ln();
    Ok(BetaLogZ {
        beta,
        lower: beta * log_i,
        upper: beta * (log_i + (-log_i).exp().ln_1p()),
        log_integral: log_i,
    })
}
