//! Classical continuity bounds and the extremal laws that saturate them.

use serde::{Deserialize, Serialize};

use crate::dist::{
    h, lp_distance, total_variation, DiscreteDistribution, JointDistribution, WeightSequence,
    DEFAULT_MAX_TAIL,
};
use crate::error::{config, domain, Error, Result};
use crate::report::{BoundKind, BoundReport, Combination};
use crate::series::SeriesBound;

/// A mean (energy) ceiling `E`, finite and positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct MeanConstraint(f64);

impl MeanConstraint {
    pub fn new(energy: f64) -> Result<Self> {
        if !(energy.is_finite() && energy > 0.0) {
            return Err(domain(format!("mean constraint E must be finite and > 0, got {energy}")));
        }
        Ok(MeanConstraint(energy))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Right end of the validity domain, `E/(E+1)`.
    pub fn critical_eps(self) -> f64 {
        self.0 / (self.0 + 1.0)
    }
}

/// Which entropy family a Rényi/Tsallis bound is evaluated for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntropyFamily {
    Tsallis,
    Renyi,
}

fn check_eps(eps: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(domain(format!("eps must lie in [0,1], got {eps}")));
    }
    Ok(())
}

/// `h(ε) + E·h(ε/E)` with `ε/E` clamped to 1.
pub(crate) fn tight_bound(kind: BoundKind, eps: f64, energy: f64) -> Result<BoundReport> {
    check_eps(eps)?;
    let e = MeanConstraint::new(energy)?;
    let ratio = eps / energy;
    let mut report = BoundReport::new(kind, Combination::Sum)
        .term("h(eps)", h(eps))
        .term("E*h(eps/E)", energy * h(ratio.min(1.0)))
        .param("eps", eps)
        .param("E", energy)
        .domain(eps <= e.critical_eps());
    if ratio > 1.0 {
        report = report.note("eps/E > 1 clamped to 1");
    }
    if !report.in_validity_domain {
        report = report.note(format!(
            "eps > E/(E+1) = {}: monotonicity and tightness not guaranteed",
            e.critical_eps()
        ));
    }
    Ok(report)
}

/// Mean-constrained Fano bound on `H(X|Y)` given `P(X ≠ Y) = ε` and `E(X) ≤ E`.
pub fn fano_bound(eps: f64, energy: f64) -> Result<BoundReport> {
    tight_bound(BoundKind::Fano, eps, energy)
}

/// Bound on `|H(X) − H(Y)|` for `TV(X,Y) ≤ ε` and both means `≤ E`.
pub fn shannon_continuity_bound(eps: f64, energy: f64) -> Result<BoundReport> {
    tight_bound(BoundKind::Shannon, eps, energy)
}

/// Law `(1−ε, ε·w(0), ε·w(1), ...)` with `w` geometric of mean `E/ε − 1`;
/// its entropy equals the Fano bound and its mean equals `E`.
pub fn extremal_marginal(eps: f64, energy: f64, d: usize) -> Result<DiscreteDistribution> {
    extremal_marginal_with_tail(eps, energy, d, DEFAULT_MAX_TAIL)
}

/// As [`extremal_marginal`] with an explicit budget for the geometric tail.
pub fn extremal_marginal_with_tail(
    eps: f64,
    energy: f64,
    d: usize,
    max_tail: f64,
) -> Result<DiscreteDistribution> {
    let e = MeanConstraint::new(energy)?;
    // tolerate rounding in grids that land on E/(E+1)
    if !(eps > 0.0 && eps <= e.critical_eps() * (1.0 + 4.0 * f64::EPSILON)) {
        return Err(domain(format!(
            "extremal construction needs 0 < eps <= E/(E+1) = {}, got {eps}",
            e.critical_eps()
        )));
    }
    if d < 2 {
        return Err(domain("extremal construction needs truncation d >= 2"));
    }
    let w = DiscreteDistribution::geometric_with_tail(energy / eps - 1.0, d - 1, max_tail)?;
    let mut probs = Vec::with_capacity(d);
    probs.push(1.0 - eps);
    probs.extend(w.probs().iter().map(|x| eps * x));
    Ok(DiscreteDistribution::from_parts(probs, eps * w.tail_mass()))
}

/// Joint law with `X`-marginal [`extremal_marginal`] and `Y ≡ 0`.
pub fn extremal_joint(eps: f64, energy: f64, d: usize) -> Result<JointDistribution> {
    let marginal = extremal_marginal(eps, energy, d)?;
    let mut cells = vec![0.0; d * d];
    for (x, p) in marginal.probs().iter().enumerate() {
        cells[x * d] = *p;
    }
    JointDistribution::new(cells, d)
}

/// Configuration for the weighted Rényi/Tsallis bound on probability vectors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedBoundParams {
    pub alpha: f64,
    pub beta: f64,
    pub weights: WeightSequence,
    /// Terms of `Σ w_i^{-β/(1-α)}` summed directly before the integral tail.
    pub norm_terms: usize,
}

impl WeightedBoundParams {
    pub fn new(alpha: f64, beta: f64, weights: WeightSequence) -> Self {
        WeightedBoundParams {
            alpha,
            beta,
            weights,
            norm_terms: 100_000,
        }
    }
}

fn check_unit_order(alpha: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain(format!("alpha must lie in (0,1), got {alpha}")));
    }
    Ok(())
}

/// Weighted Hölder bound on `|T_α(p) − T_α(q)|` and `|R_α(p) − R_α(q)|`, α ∈ (0,1):
///
/// `2^α/(1−α) · TV_w^β · TV^{α−β} · ‖(w_i^{−β/(1−α)})‖₁^{1−α}`.
///
/// The weight norm is a partial sum plus an integral-test upper tail, so the
/// reported value is itself an upper bound on the exact right-hand side.
pub fn classical_renyi_tsallis_bound(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
    params: &WeightedBoundParams,
) -> Result<BoundReport> {
    let WeightedBoundParams { alpha, beta, .. } = *params;
    check_unit_order(alpha)?;
    if !(beta < alpha) {
        return Err(domain(format!("beta must be < alpha, got beta={beta}, alpha={alpha}")));
    }
    let norm = params.weights.inverse_power_norm(beta / (1.0 - alpha), params.norm_terms)?;
    classical_renyi_tsallis_bound_with_norm(p, q, params, &norm)
}

/// As [`classical_renyi_tsallis_bound`] with the weight norm
/// `Σ w_i^{−β/(1−α)}` already evaluated, for repeated use over many pairs.
pub fn classical_renyi_tsallis_bound_with_norm(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
    params: &WeightedBoundParams,
    norm: &SeriesBound,
) -> Result<BoundReport> {
    let WeightedBoundParams { alpha, beta, .. } = *params;
    check_unit_order(alpha)?;
    if !(beta < alpha) {
        return Err(domain(format!("beta must be < alpha, got beta={beta}, alpha={alpha}")));
    }
    let tv = total_variation(p, q, None);
    let tv_w = total_variation(p, q, Some(&params.weights));
    Ok(
        BoundReport::new(BoundKind::ClassicalRenyiTsallis, Combination::Product)
            .term("2^alpha/(1-alpha)", 2f64.powf(alpha) / (1.0 - alpha))
            .term("TV_w^beta", tv_w.powf(beta))
            .term("TV^(alpha-beta)", tv.powf(alpha - beta))
            .term("weight_norm^(1-alpha)", norm.total().powf(1.0 - alpha))
            .param("alpha", alpha)
            .param("beta", beta)
            .param("norm_terms", norm.terms as f64)
            .diagnostic("TV", tv)
            .diagnostic("TV_w", tv_w)
            .diagnostic("weight_norm_partial", norm.partial)
            .diagnostic("weight_norm_tail", norm.tail_upper)
            .note("the same right-hand side bounds both the Renyi and the Tsallis difference"),
    )
}

/// Density sampled on a uniform grid over `[a, b]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GriddedDensity {
    a: f64,
    b: f64,
    values: Vec<f64>,
}

impl GriddedDensity {
    pub fn new(a: f64, b: f64, values: Vec<f64>) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(domain(format!("grid interval [{a}, {b}] is invalid")));
        }
        if values.len() < 2 {
            return Err(domain("grid needs at least two nodes"));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(domain("density values must be finite and >= 0"));
        }
        Ok(GriddedDensity { a, b, values })
    }

    /// Samples `f` on `n` nodes.
    pub fn from_fn(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let step = (b - a) / (n.max(2) - 1) as f64;
        Self::new(a, b, (0..n).map(|i| f(a + i as f64 * step)).collect())
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn step(&self) -> f64 {
        (self.b - self.a) / (self.values.len() - 1) as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let step = self.step();
        (0..self.values.len()).map(move |i| self.a + i as f64 * step)
    }

    fn same_grid(&self, other: &GriddedDensity) -> bool {
        self.a == other.a && self.b == other.b && self.values.len() == other.values.len()
    }

    /// Trapezoidal rule applied to `g(value_i, i)`.
    pub(crate) fn trapezoid(&self, g: impl Fn(f64, usize) -> f64) -> f64 {
        let n = self.values.len();
        let inner: f64 = (1..n - 1).map(|i| g(self.values[i], i)).sum();
        self.step() * (inner + 0.5 * (g(self.values[0], 0) + g(self.values[n - 1], n - 1)))
    }

    pub fn mass(&self) -> f64 {
        self.trapezoid(|v, _| v)
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }

    /// `∫ μ^α`.
    pub fn power_integral(&self, alpha: f64) -> f64 {
        self.trapezoid(|v, _| if v > 0.0 { v.powf(alpha) } else { 0.0 })
    }

    pub fn tsallis_entropy(&self, alpha: f64) -> f64 {
        (self.power_integral(alpha) - 1.0) / (1.0 - alpha)
    }

    pub fn renyi_entropy(&self, alpha: f64) -> f64 {
        self.power_integral(alpha).ln() / (1.0 - alpha)
    }
}

/// `δ` with `∫μ^α, ∫ν^α ≥ 1/δ` from `μ^α ≥ ‖μ‖_∞^{α−1} μ` applied node-wise,
/// which also holds for the trapezoidal integrals.
pub fn sup_norm_delta(mu: &GriddedDensity, nu: &GriddedDensity, alpha: f64) -> f64 {
    [mu, nu]
        .iter()
        .map(|m| m.sup_norm().powf(1.0 - alpha) / m.mass().min(1.0))
        .fold(0.0, f64::max)
}

const DENSITY_MASS_TOL: f64 = 1e-6;

/// Hölder bound for densities, α ∈ (0,1):
/// `L = ‖μ−ν‖_{L¹(w)}^β ‖μ−ν‖_{L¹}^{α−β} ‖w^{−β/(1−α)}‖_{L¹}^{1−α}`,
/// reported as `L/(1−α)` (Tsallis) or `δL/(1−α)` (Rényi). All integrals use
/// the trapezoidal rule on the shared grid.
pub fn continuous_renyi_tsallis_bound(
    mu: &GriddedDensity,
    nu: &GriddedDensity,
    alpha: f64,
    beta: f64,
    weights: &[f64],
    family: EntropyFamily,
    delta_lower: Option<f64>,
) -> Result<BoundReport> {
    check_unit_order(alpha)?;
    if !(0.0..alpha).contains(&beta) {
        return Err(domain(format!("beta must lie in [0, alpha), got {beta}")));
    }
    if !mu.same_grid(nu) {
        return Err(domain("densities are sampled on different grids"));
    }
    if weights.len() != mu.values.len() {
        return Err(domain(format!(
            "weight function has {} nodes, grid has {}",
            weights.len(),
            mu.values.len()
        )));
    }
    if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(domain("weights must be finite and > 0"));
    }
    for (name, m) in [("mu", mu), ("nu", nu)] {
        let mass = m.mass();
        if (mass - 1.0).abs() > DENSITY_MASS_TOL {
            return Err(domain(format!("{name} has trapezoidal mass {mass}, expected 1")));
        }
    }
    let delta = match (family, delta_lower) {
        (EntropyFamily::Tsallis, _) => None,
        (EntropyFamily::Renyi, None) => {
            return Err(config("the Renyi variant needs delta_lower with Tf_alpha >= 1/delta"))
        }
        (EntropyFamily::Renyi, Some(d)) if !(d.is_finite() && d > 0.0) => {
            return Err(domain(format!("delta_lower must be finite and > 0, got {d}")))
        }
        (EntropyFamily::Renyi, Some(d)) => {
            for m in [mu, nu] {
                let tf = m.power_integral(alpha);
                if tf < (1.0 / d) * (1.0 - 1e-12) {
                    return Err(Error::Precondition {
                        message: format!("Tf_alpha must be >= 1/delta = {}", 1.0 / d),
                        actual: tf,
                    });
                }
            }
            Some(d)
        }
    };

    let diff: Vec<f64> = mu
        .values
        .iter()
        .zip(&nu.values)
        .map(|(a, b)| (a - b).abs())
        .collect();
    let l1 = mu.trapezoid(|_, i| diff[i]);
    let l1_w = mu.trapezoid(|_, i| weights[i] * diff[i]);
    let s = beta / (1.0 - alpha);
    let w_norm = mu.trapezoid(|_, i| weights[i].powf(-s));

    let (kind, prefactor_name, prefactor) = match delta {
        None => (BoundKind::ContinuousTsallis, "1/(1-alpha)", 1.0 / (1.0 - alpha)),
        Some(d) => (BoundKind::ContinuousRenyi, "delta/(1-alpha)", d / (1.0 - alpha)),
    };
    let mut report = BoundReport::new(kind, Combination::Product)
        .term(prefactor_name, prefactor)
        .term("L1_w^beta", l1_w.powf(beta))
        .term("L1^(alpha-beta)", l1.powf(alpha - beta))
        .term("weight_norm^(1-alpha)", w_norm.powf(1.0 - alpha))
        .param("alpha", alpha)
        .param("beta", beta)
        .param("grid_nodes", mu.values.len() as f64)
        .diagnostic("L1", l1)
        .diagnostic("L1_w", l1_w)
        .diagnostic("weight_norm", w_norm)
        .note("trapezoidal quadrature; discretisation error is not certified");
    if let Some(d) = delta {
        report = report.param("delta", d);
    }
    Ok(report)
}

/// Bounds for α > 1 on probability vectors: Tsallis `α/(α−1)·‖p−q‖_α`,
/// Rényi `αδ/(α−1)·‖p−q‖_α` given `Σp^α, Σq^α ≥ 1/δ`.
pub fn classical_alpha_gt1_bounds(
    p: &DiscreteDistribution,
    q: &DiscreteDistribution,
    alpha: f64,
    family: EntropyFamily,
    delta: Option<f64>,
) -> Result<BoundReport> {
    if !(alpha.is_finite() && alpha > 1.0) {
        return Err(domain(format!("alpha must be > 1, got {alpha}")));
    }
    let dist = lp_distance(p, q, alpha);
    let (sp, sq) = (p.power_sum(alpha), q.power_sum(alpha));
    let intermediate = (sp - sq).abs() / (alpha - 1.0);
    let report = match family {
        EntropyFamily::Tsallis => {
            BoundReport::new(BoundKind::ClassicalTsallisAlphaGt1, Combination::Product)
                .term("alpha/(alpha-1)", alpha / (alpha - 1.0))
        }
        EntropyFamily::Renyi => {
            let d = delta.ok_or_else(|| {
                config("the Renyi bound for alpha > 1 needs delta with sum p^alpha >= 1/delta")
            })?;
            if !(d.is_finite() && d > 0.0) {
                return Err(domain(format!("delta must be finite and > 0, got {d}")));
            }
            let smallest = sp.min(sq);
            if smallest < (1.0 / d) * (1.0 - 1e-12) {
                return Err(Error::Precondition {
                    message: format!("sum p^alpha must be >= 1/delta = {}", 1.0 / d),
                    actual: smallest,
                });
            }
            BoundReport::new(BoundKind::ClassicalRenyiAlphaGt1, Combination::Product)
                .term("alpha*delta/(alpha-1)", alpha * d / (alpha - 1.0))
                .param("delta", d)
        }
    };
    Ok(report
        .term("||p-q||_alpha", dist)
        .param("alpha", alpha)
        .diagnostic("|sum p^a - sum q^a|/(alpha-1)", intermediate))
}
