//! Quantum continuity bounds: the tight von Neumann bound, Winter's comparison
//! bounds, the approximation-theorem Rényi/Tsallis bounds, α > 1 bounds and
//! moment estimates.

use serde::{Deserialize, Serialize};

use crate::classical::{extremal_marginal_with_tail, tight_bound, MeanConstraint};
use crate::dist::{h, xlogx};
use crate::error::{config, domain, Error, Result};
use crate::modulus::{ModulusOfContinuity, UniversalConstant};
use crate::quantum::{
    energy, gibbs_entropy, schatten_distance, spectral_projection, trace_power, DensityMatrix,
    HamiltonianSpec,
};
use crate::report::{BoundKind, BoundReport, Combination};
use crate::series::{power_partial_bracket, zeta_upper, SeriesBound};

/// Terms summed directly before an integral tail takes over.
pub const SERIES_TERMS: usize = 100_000;

/// `|S(ρ) − S(σ)| ≤ h(ε) + E·h(ε/E)` for `½‖ρ−σ‖₁ ≤ ε`, energies `≤ E`.
pub fn vn_continuity_bound(eps: f64, energy: f64) -> Result<BoundReport> {
    tight_bound(BoundKind::VonNeumann, eps, energy)
}

/// `ρ* = diag(extremal marginal)` and `σ* = |0⟩⟨0|`, which saturate
/// [`vn_continuity_bound`].
pub fn extremal_state_pair(
    eps: f64,
    energy: f64,
    d: usize,
    max_tail: f64,
) -> Result<(DensityMatrix, DensityMatrix)> {
    let p = extremal_marginal_with_tail(eps, energy, d, max_tail)?;
    Ok((DensityMatrix::from_distribution(&p), DensityMatrix::fock(0, d)?))
}

fn check_winter_inputs(eps: f64, energy: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&eps) {
        return Err(domain(format!("eps must lie in [0,1], got {eps}")));
    }
    MeanConstraint::new(energy)?;
    Ok(())
}

fn zero_limit(kind: BoundKind, eps: f64, energy: f64) -> BoundReport {
    BoundReport::new(kind, Combination::Sum)
        .param("eps", eps)
        .param("E", energy)
        .diagnostic("continuity_limit", 1.0)
        .note("eps = 0: value is the continuity limit")
}

/// Winter's bound for the number operator, `h(ε) + 2ε·g(E/ε)` with the
/// Gibbs entropy `g(x) = (x+1)log(x+1) − x log x`.
pub fn winter_bound_general(eps: f64, energy: f64) -> Result<BoundReport> {
    check_winter_inputs(eps, energy)?;
    if eps == 0.0 {
        return Ok(zero_limit(BoundKind::WinterGeneral, eps, energy));
    }
    Ok(BoundReport::new(BoundKind::WinterGeneral, Combination::Sum)
        .term("h(eps)", h(eps))
        .term("2*eps*g(E/eps)", 2.0 * eps * gibbs_entropy(energy / eps))
        .param("eps", eps)
        .param("E", energy))
}

/// `h(ε) + 2(E+ε)·h(ε/(E+ε))`, algebraically equal to [`winter_bound_general`].
pub fn winter_bound_number_op(eps: f64, energy: f64) -> Result<BoundReport> {
    check_winter_inputs(eps, energy)?;
    if eps == 0.0 {
        return Ok(zero_limit(BoundKind::WinterNumberOp, eps, energy));
    }
    let s = energy + eps;
    Ok(BoundReport::new(BoundKind::WinterNumberOp, Combination::Sum)
        .term("h(eps)", h(eps))
        .term("2*(E+eps)*h(eps/(E+eps))", 2.0 * s * h(eps / s))
        .param("eps", eps)
        .param("E", energy))
}

/// `h̃(x) = h(x)` for `x ≤ 1/2`, otherwise 1.
fn h_tilde(x: f64) -> f64 {
    if x <= 0.5 {
        h(x)
    } else {
        1.0
    }
}

/// Winter's α-dependent bound
/// `K = ε·c·[log(E+1) + log(ε/(α(1−ε)))] + 3c·h̃((1+α)/(1−α)·ε)`,
/// `c = (1+α)/(1−α) + 2α`, α ∈ (0, 1/2).
pub fn winter_bound_alpha(eps: f64, energy: f64, alpha: f64) -> Result<BoundReport> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(domain(format!("alpha must lie in (0, 1/2), got {alpha}")));
    }
    if !(0.0..1.0).contains(&eps) {
        return Err(domain(format!("eps must lie in [0,1), got {eps}")));
    }
    MeanConstraint::new(energy)?;
    if eps == 0.0 {
        return Ok(zero_limit(BoundKind::WinterAlpha, eps, energy).param("alpha", alpha));
    }
    let r = (1.0 + alpha) / (1.0 - alpha);
    let c = r + 2.0 * alpha;
    let log_term = energy.ln_1p() + (eps / (alpha * (1.0 - eps))).ln();
    Ok(BoundReport::new(BoundKind::WinterAlpha, Combination::Sum)
        .term("eps*c*log(E+1)", eps * c * energy.ln_1p())
        .term("eps*c*log(eps/(alpha(1-eps)))", eps * c * (eps / (alpha * (1.0 - eps))).ln())
        .term("3c*h~(r*eps)", 3.0 * c * h_tilde(r * eps))
        .param("eps", eps)
        .param("E", energy)
        .param("alpha", alpha)
        .diagnostic("c", c)
        .diagnostic("log_bracket", log_term)
        .diagnostic("r*eps", r * eps))
}

/// Function whose trace-norm continuity the approximation theorem controls.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "exponent")]
pub enum TraceFunction {
    /// `x^a`, `a ∈ (0, 1]`.
    Power(f64),
    /// `−x log x`.
    XLogX,
}

impl TraceFunction {
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.max(0.0);
        match *self {
            TraceFunction::Power(a) => x.powf(a),
            TraceFunction::XLogX => -xlogx(x),
        }
    }
}

/// Inputs of the approximation theorem with Hölder exponents `α = w/q`,
/// `1/p + 1/q = 1`.
#[derive(Debug, Clone)]
pub struct ApproxBoundInputs {
    pub rho: DensityMatrix,
    pub sigma: DensityMatrix,
    pub ham: HamiltonianSpec,
    /// Exponent β of `Ĥ^β`.
    pub beta_exp: f64,
    /// Ceiling on `tr(Ĥ^β |f|(ρ))` and `tr(Ĥ^β |f|(σ))`.
    pub mu: f64,
    pub eps: f64,
    pub alpha: f64,
    pub w: f64,
    pub q: f64,
    pub p: f64,
}

impl ApproxBoundInputs {
    /// Fills `w = αq` and `p = q/(q−1)`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        rho: DensityMatrix,
        sigma: DensityMatrix,
        ham: HamiltonianSpec,
        beta_exp: f64,
        mu: f64,
        eps: f64,
        alpha: f64,
        q: f64,
    ) -> Result<Self> {
        let inputs = ApproxBoundInputs {
            rho,
            sigma,
            ham,
            beta_exp,
            mu,
            eps,
            alpha,
            w: alpha * q,
            q,
            p: q / (q - 1.0),
        };
        inputs.validate()?;
        Ok(inputs)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.q > 1.0 && self.q.is_finite()) {
            return Err(domain(format!("q must be finite and > 1, got {}", self.q)));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(domain(format!("alpha = w/q must lie in (0,1), got {}", self.alpha)));
        }
        if (self.w / self.q - self.alpha).abs() > 1e-12 {
            return Err(domain(format!("alpha = {} differs from w/q = {}", self.alpha, self.w / self.q)));
        }
        if (1.0 / self.p + 1.0 / self.q - 1.0).abs() > 1e-12 {
            return Err(domain(format!("p = {} and q = {} are not conjugate", self.p, self.q)));
        }
        if !(self.w >= 1.0) {
            return Err(domain(format!("Schatten exponent w = alpha*q must be >= 1, got {}", self.w)));
        }
        if !(self.beta_exp > 0.0 && self.beta_exp.is_finite()) {
            return Err(domain(format!("beta must be finite and > 0, got {}", self.beta_exp)));
        }
        if !(self.eps > 0.0 && self.eps.is_finite()) {
            return Err(domain(format!("eps must be finite and > 0, got {}", self.eps)));
        }
        if !(self.mu > 0.0 && self.mu.is_finite()) {
            return Err(domain(format!("mu must be finite and > 0, got {}", self.mu)));
        }
        if self.rho.dim() != self.sigma.dim() {
            return Err(domain("states have different truncations"));
        }
        self.ham.validate()
    }
}

/// `tr(Ĥ^β |f|(ρ))` over the truncation.
pub fn weighted_moment(
    rho: &DensityMatrix,
    ham: &HamiltonianSpec,
    beta_exp: f64,
    f: impl Fn(f64) -> f64,
) -> Result<f64> {
    let levels = ham.levels(rho.dim())?;
    let fr = rho.apply(|x| f(x).abs());
    Ok(levels
        .iter()
        .zip(fr.diagonal())
        .map(|(e, z)| if *e == 0.0 { 0.0 } else { e.powf(beta_exp) * z.re })
        .sum())
}

fn trace_norm_of(rho: &DensityMatrix, f: &TraceFunction) -> f64 {
    rho.clipped_eigenvalues().iter().map(|x| f.eval(*x).abs()).sum()
}

/// Approximation-theorem bound on `‖f(ρ) − f(σ)‖₁`:
///
/// * `Power(a)`, `a ∈ [α, 1]`: `√(8ε)(√‖f(ρ)‖₁ + √‖f(σ)‖₁) + c|f|·rank(P)^{1/p}·‖ρ−σ‖_w^α`;
/// * `XLogX`: `√(8ε)(...) + c|f|·rank(P)·ω*_AL(‖ρ−σ‖_∞)`;
///
/// with `P = 1[Ĥ^β ≤ μ/ε]` and seminorm `|f| = 1`.
pub fn approx_trace_bound(
    inputs: &ApproxBoundInputs,
    f: TraceFunction,
    c: UniversalConstant,
) -> Result<BoundReport> {
    inputs.validate()?;
    let ApproxBoundInputs {
        rho,
        sigma,
        ham,
        beta_exp,
        mu,
        eps,
        alpha,
        w,
        q,
        p,
    } = inputs;
    if let TraceFunction::Power(a) = f {
        if !(a >= *alpha && a <= 1.0) {
            return Err(domain(format!(
                "x^{a} is not {alpha}-Hölder on [0,1] with unit seminorm; need alpha <= a <= 1"
            )));
        }
    }
    let moments = [
        weighted_moment(rho, ham, *beta_exp, |x| f.eval(x))?,
        weighted_moment(sigma, ham, *beta_exp, |x| f.eval(x))?,
    ];
    let worst = moments[0].max(moments[1]);
    if worst > mu * (1.0 + 1e-12) {
        return Err(Error::Precondition {
            message: format!("moment tr(H^beta |f|(state)) exceeds mu = {mu}"),
            actual: worst,
        });
    }
    let norms = [trace_norm_of(rho, &f), trace_norm_of(sigma, &f)];
    let gentle = (8.0 * eps).sqrt() * (norms[0].sqrt() + norms[1].sqrt());
    let rank = spectral_projection(ham, (mu / eps).powf(1.0 / beta_exp))?.rank;
    let seminorm = 1.0;

    let mut report = BoundReport::new(BoundKind::ApproxTrace, Combination::Sum)
        .term("gentle", gentle)
        .param("c", c.value())
        .param("eps", *eps)
        .param("mu", *mu)
        .param("beta", *beta_exp)
        .param("d", rho.dim() as f64)
        .diagnostic("moment_rho", moments[0])
        .diagnostic("moment_sigma", moments[1])
        .diagnostic("||f(rho)||_1", norms[0])
        .diagnostic("||f(sigma)||_1", norms[1])
        .diagnostic("rank_P", rank)
        .diagnostic("seminorm", seminorm);
    report = match f {
        TraceFunction::Power(a) => {
            let dist = schatten_distance(rho, sigma, *w)?;
            let p_norm = rank.powf(1.0 / p);
            report
                .term("operator_holder", c.value() * seminorm * p_norm * dist.powf(*alpha))
                .param("alpha", *alpha)
                .param("a", a)
                .param("w", *w)
                .param("q", *q)
                .param("p", *p)
                .diagnostic("||P||_p", p_norm)
                .diagnostic("||rho-sigma||_w", dist)
        }
        TraceFunction::XLogX => {
            let dist = schatten_distance(rho, sigma, f64::INFINITY)?;
            let star = ModulusOfContinuity::AlmostLipschitz.omega_star(dist);
            report
                .term("operator_modulus", c.value() * seminorm * rank * star)
                .diagnostic("||rho-sigma||_op", dist)
                .diagnostic("omega_star", star)
        }
    };
    if rank.is_infinite() || rank > 1e15 {
        report = report.note("projection rank is astronomically large; the bound is vacuous");
    }
    Ok(report.note("c is a free constant; the value is an upper bound only for admissible c"))
}

/// Smallest `c ≥ 0` for which a report built with constant `c` would still
/// dominate `actual`.
pub fn minimal_constant(report: &BoundReport, actual: f64) -> f64 {
    let c = report.param_value("c").unwrap_or(1.0);
    let (floor, scaled) = report.terms.iter().fold((0.0, 0.0), |(f, s), t| {
        if t.name.starts_with("gentle") {
            (f + t.value, s)
        } else {
            (f, s + t.value)
        }
    });
    let per_unit_c = scaled / c;
    if actual <= floor {
        0.0
    } else if per_unit_c == 0.0 {
        f64::INFINITY
    } else {
        (actual - floor) / per_unit_c
    }
}

/// Approximation-theorem bound for `f = x^α` divided by `1 − α`; bounds both
/// the Tsallis and the Rényi difference.
pub fn quantum_renyi_tsallis_bound(
    inputs: &ApproxBoundInputs,
    c: UniversalConstant,
) -> Result<BoundReport> {
    let base = approx_trace_bound(inputs, TraceFunction::Power(inputs.alpha), c)?;
    let k = 1.0 / (1.0 - inputs.alpha);
    let mut report = BoundReport::new(BoundKind::QuantumRenyiTsallis, Combination::Sum);
    for t in &base.terms {
        report = report.term(&format!("{}/(1-alpha)", t.name), t.value * k);
    }
    report.params = base.params;
    report.diagnostics = base.diagnostics;
    report.notes = base.notes;
    Ok(report.note("the same right-hand side bounds both the Renyi and the Tsallis difference"))
}

fn check_alpha_gt1(alpha: f64) -> Result<()> {
    if !(alpha > 1.0 && alpha.is_finite()) {
        return Err(domain(format!("alpha must be finite and > 1, got {alpha}")));
    }
    Ok(())
}

/// `|T_α(ρ) − T_α(σ)| ≤ α/(α−1)·‖ρ−σ‖_α`, α > 1.
pub fn tsallis_lipschitz_bound(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    alpha: f64,
) -> Result<BoundReport> {
    check_alpha_gt1(alpha)?;
    let dist = schatten_distance(rho, sigma, alpha)?;
    let intermediate = (trace_power(rho, alpha) - trace_power(sigma, alpha)).abs() / (alpha - 1.0);
    Ok(BoundReport::new(BoundKind::TsallisLipschitz, Combination::Product)
        .term("alpha/(alpha-1)", alpha / (alpha - 1.0))
        .term("||rho-sigma||_alpha", dist)
        .param("alpha", alpha)
        .diagnostic("|tr rho^a - tr sigma^a|/(alpha-1)", intermediate))
}

/// How the lower bound `tr ρ^α ≥ 1/δ` is obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RenyiCondition {
    /// `δ` supplied and checked on both states.
    Delta(f64),
    /// `δ = E^{αβ/(1−β)}·τ^{α−1}`, `τ = tr Ĥ^{−αβ/((1−β)(α−1))}`, valid for
    /// states with `tr(Ĥρ) ≤ E`.
    Hamiltonian {
        ham: HamiltonianSpec,
        energy: f64,
        beta_split: f64,
    },
}

/// `δ` and `τ` derived from an energy constraint.
pub fn renyi_delta_from_energy(
    ham: &HamiltonianSpec,
    energy: f64,
    alpha: f64,
    beta_split: f64,
) -> Result<(f64, SeriesBound)> {
    check_alpha_gt1(alpha)?;
    MeanConstraint::new(energy)?;
    if !(beta_split > 0.0 && beta_split < 1.0) {
        return Err(domain(format!("beta_split must lie in (0,1), got {beta_split}")));
    }
    let exponent = alpha * beta_split / ((1.0 - beta_split) * (alpha - 1.0));
    let tau = ham.trace_power(-exponent, SERIES_TERMS)?;
    let delta = energy.powf(alpha * beta_split / (1.0 - beta_split)) * tau.total().powf(alpha - 1.0);
    Ok((delta, tau))
}

/// `|R_α(ρ) − R_α(σ)| ≤ αδ/(α−1)·‖ρ−σ‖_α`, α > 1.
pub fn renyi_alpha_gt1_bound(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    alpha: f64,
    condition: &RenyiCondition,
) -> Result<BoundReport> {
    check_alpha_gt1(alpha)?;
    let mut report = BoundReport::new(BoundKind::RenyiAlphaGt1, Combination::Product);
    let delta = match condition {
        RenyiCondition::Delta(d) => {
            if !(d.is_finite() && *d > 0.0) {
                return Err(domain(format!("delta must be finite and > 0, got {d}")));
            }
            *d
        }
        RenyiCondition::Hamiltonian {
            ham,
            energy: e,
            beta_split,
        } => {
            for (name, s) in [("rho", rho), ("sigma", sigma)] {
                let en = energy(s, ham)?;
                if en > e * (1.0 + 1e-12) {
                    return Err(Error::Precondition {
                        message: format!("energy of {name} exceeds E = {e}"),
                        actual: en,
                    });
                }
            }
            let (delta, tau) = renyi_delta_from_energy(ham, *e, alpha, *beta_split)?;
            report = report
                .param("E", *e)
                .param("beta_split", *beta_split)
                .diagnostic("tau", tau.total())
                .diagnostic("tau_tail", tau.tail_upper);
            delta
        }
    };
    let (tr, ts) = (trace_power(rho, alpha), trace_power(sigma, alpha));
    let smallest = tr.min(ts);
    if smallest < (1.0 / delta) * (1.0 - 1e-12) {
        return Err(Error::Precondition {
            message: format!("tr state^alpha must be >= 1/delta = {}", 1.0 / delta),
            actual: smallest,
        });
    }
    Ok(report
        .term("alpha*delta/(alpha-1)", alpha * delta / (alpha - 1.0))
        .term("||rho-sigma||_alpha", schatten_distance(rho, sigma, alpha)?)
        .param("alpha", alpha)
        .param("delta", delta)
        .diagnostic("min tr state^alpha", smallest))
}

/// `∫_a^∞ 2u(1+u²)e^{−u} du`, the tail of `Σ e^{−√m}(1+m)` past `m = a²`.
fn exp_sqrt_tail(a: f64) -> f64 {
    2.0 * (-a).exp() * (((a + 3.0) * a + 7.0) * a + 7.0)
}

/// `tr(e^{−√Ĥ}(1+Ĥ))` on the untruncated space.
///
/// The summand is nonincreasing in the level, so families dominating the
/// number operator inherit its integral tail.
pub fn exp_sqrt_trace(ham: &HamiltonianSpec, terms: usize) -> Result<SeriesBound> {
    ham.validate()?;
    let t = |e: f64| (-e.sqrt()).exp() * (1.0 + e);
    let shifted = match ham {
        HamiltonianSpec::Diagonal(v) => {
            return Ok(SeriesBound::finite(v.iter().map(|e| t(*e)).sum(), v.len()))
        }
        HamiltonianSpec::Number => false,
        HamiltonianSpec::ShiftedNumber => true,
        HamiltonianSpec::Power(k) | HamiltonianSpec::ShiftedPower(k) => {
            if *k < 1.0 {
                return Err(config(format!(
                    "no tail bound for tr(exp(-sqrt H)(1+H)) with level exponent {k} < 1"
                )));
            }
            matches!(ham, HamiltonianSpec::ShiftedPower(_))
        }
    };
    let terms = terms.max(2);
    let partial: f64 = (0..terms).rev().map(|n| t(ham.level(n).unwrap())).sum();
    // levels n ≥ terms dominate n (or n + 1); compare with ∫ from the previous integer
    let a = if shifted { terms as f64 } else { (terms - 1) as f64 };
    Ok(SeriesBound {
        partial,
        tail_upper: exp_sqrt_tail(a.sqrt()),
        terms,
    })
}

/// `tr(Ĥ^γ g(ρ))` over the truncation, zero levels contributing 0.
fn weighted_trace(rho: &DensityMatrix, ham: &HamiltonianSpec, gamma: f64, g: impl Fn(f64) -> f64) -> Result<f64> {
    let levels = ham.levels(rho.dim())?;
    let m = rho.apply(|x| g(x.max(0.0)));
    Ok(levels
        .iter()
        .zip(m.diagonal())
        .map(|(e, z)| if *e == 0.0 { 0.0 } else { e.powf(gamma) * z.re })
        .sum())
}

/// `tr(Ĥ^{1/2} f₁(ρ)) ≤ tr(Ĥρ) + tr(e^{−√Ĥ}(1+Ĥ))`, `f₁(x) = −x log x`.
pub fn moment_bound_f1(rho: &DensityMatrix, ham: &HamiltonianSpec) -> Result<BoundReport> {
    let lhs = weighted_trace(rho, ham, 0.5, |x| -xlogx(x))?;
    let series = exp_sqrt_trace(ham, SERIES_TERMS)?;
    let report = BoundReport::new(BoundKind::MomentF1, Combination::Sum)
        .term("tr(H rho)", energy(rho, ham)?)
        .term("tr(exp(-sqrt H)(1+H))", series.total())
        .param("d", rho.dim() as f64)
        .diagnostic("lhs", lhs)
        .diagnostic("series_tail", series.tail_upper);
    let slack = report.value - lhs;
    Ok(report.diagnostic("slack", slack))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "r")]
pub enum MomentVariant {
    /// `tr(Ĥ^{1/2} ρ^α) ≤ tr(Ĥρ) + tr(Ĥ^{(2α−1)/(2(α−1))})`.
    HalfPower,
    /// `tr(Ĥ^{α−r} ρ^α) ≤ tr(Ĥρ)^α · tr(Ĥ^{−r/(1−α)})`.
    General(f64),
}

/// Whether `tr Ĥ^{−r/(1−α)}` is finite for `Ĥ = (N̂+1)^κ`.
pub fn moment_series_converges(kappa: f64, alpha: f64, r: f64) -> bool {
    kappa * r / (1.0 - alpha) > 1.0
}

/// Moment estimates for `f_α(x) = x^α`, α ∈ (0,1).
pub fn moment_bound_falpha(
    rho: &DensityMatrix,
    ham: &HamiltonianSpec,
    alpha: f64,
    variant: MomentVariant,
) -> Result<BoundReport> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(domain(format!("alpha must lie in (0,1), got {alpha}")));
    }
    let e = energy(rho, ham)?;
    let pow = |x: f64| if x > 0.0 { x.powf(alpha) } else { 0.0 };
    let report = match variant {
        MomentVariant::HalfPower => {
            let s = (2.0 * alpha - 1.0) / (2.0 * (alpha - 1.0));
            let series = ham.trace_power(s, SERIES_TERMS)?;
            BoundReport::new(BoundKind::MomentFAlpha, Combination::Sum)
                .term("tr(H rho)", e)
                .term("tr(H^s)", series.total())
                .diagnostic("lhs", weighted_trace(rho, ham, 0.5, pow)?)
                .diagnostic("s", s)
                .diagnostic("series_tail", series.tail_upper)
        }
        MomentVariant::General(r) => {
            if !(r > 0.0 && r <= alpha) {
                return Err(domain(format!("r must lie in (0, alpha], got {r}")));
            }
            let s = -r / (1.0 - alpha);
            let series = ham.trace_power(s, SERIES_TERMS)?;
            BoundReport::new(BoundKind::MomentFAlpha, Combination::Product)
                .term("tr(H rho)^alpha", e.powf(alpha))
                .term("tr(H^s)", series.total())
                .param("r", r)
                .diagnostic("lhs", weighted_trace(rho, ham, alpha - r, pow)?)
                .diagnostic("s", s)
                .diagnostic("series_tail", series.tail_upper)
                .diagnostic("holder_form", e.powf(alpha) * series.total().powf(1.0 - alpha))
        }
    };
    let lhs = report.diagnostic_value("lhs").unwrap();
    let slack = report.value - lhs;
    Ok(report
        .param("alpha", alpha)
        .param("d", rho.dim() as f64)
        .diagnostic("slack", slack))
}

/// Partial sums for `λ_i ∝ (i+1)^{−1/α}`, α < 1/2: `tr ρ^α` grows without
/// bound while `tr(ρN̂)` converges.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DivergenceWitness {
    pub alpha: f64,
    pub d: u64,
    /// Bracket on `Σ_{i<d} λ_i^α`.
    pub trace_power: (f64, f64),
    /// Bracket on `Σ_{i<d} i·λ_i`.
    pub energy_partial: (f64, f64),
    /// Bracket on `Σ_{i≥0} i·λ_i`.
    pub energy_limit: (f64, f64),
}

/// Evaluates [`DivergenceWitness`] through integral brackets, never
/// materialising the `d` eigenvalues.
pub fn divergence_witness(alpha: f64, d: u64) -> Result<DivergenceWitness> {
    if !(alpha > 0.0 && alpha < 0.5) {
        return Err(domain(format!("the witness needs alpha in (0, 1/2), got {alpha}")));
    }
    let s = 1.0 / alpha;
    const DIRECT: u64 = 10_000;
    let z = zeta_upper(s, DIRECT as usize);
    let z_lo = z.partial + crate::series::power_tail_lower(DIRECT as f64 + 1.0, s);
    let z_hi = z.total();
    let z1 = zeta_upper(s - 1.0, DIRECT as usize);
    let z1_lo = z1.partial + crate::series::power_tail_lower(DIRECT as f64 + 1.0, s - 1.0);
    let z1_hi = z1.total();

    // λ_{m-1} = m^{-s}/ζ(s), m = 1..d
    let (h_lo, h_hi) = power_partial_bracket(1.0, d, DIRECT);
    let (a_lo, a_hi) = power_partial_bracket(s - 1.0, d, DIRECT);
    let (b_lo, b_hi) = power_partial_bracket(s, d, DIRECT);
    Ok(DivergenceWitness {
        alpha,
        d,
        trace_power: (h_lo / z_hi.powf(alpha), h_hi / z_lo.powf(alpha)),
        energy_partial: ((a_lo - b_hi) / z_hi, (a_hi - b_lo) / z_lo),
        energy_limit: ((z1_lo - z_hi) / z_hi, (z1_hi - z_lo) / z_lo),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::von_neumann_entropy;
    use approx::assert_abs_diff_eq;

    #[test]
    fn vn_matches_classical() {
        assert_eq!(vn_continuity_bound(0.0, 3.0).unwrap().value, 0.0);
        assert_abs_diff_eq!(
            vn_continuity_bound(0.3, 1.0).unwrap().value,
            1.221_728_604_109_786_9,
            epsilon = 1e-15
        );
        assert!(!vn_continuity_bound(0.9, 1.0).unwrap().in_validity_domain);
    }

    #[test]
    fn extremal_pair_saturates() {
        let (rho, sigma) = extremal_state_pair(0.3, 1.0, 512, 1e-12).unwrap();
        let gap = von_neumann_entropy(&rho) - von_neumann_entropy(&sigma);
        assert_abs_diff_eq!(gap, vn_continuity_bound(0.3, 1.0).unwrap().value, epsilon = 1e-9);
        assert_abs_diff_eq!(crate::quantum::trace_distance(&rho, &sigma).unwrap(), 0.3, epsilon = 1e-12);
    }

    #[test]
    fn winter_paths_agree() {
        let expected = h(0.3) + 2.0 * 1.3 * h(0.3 / 1.3);
        let g = winter_bound_general(0.3, 1.0).unwrap();
        let n = winter_bound_number_op(0.3, 1.0).unwrap();
        assert_abs_diff_eq!(n.value, expected, epsilon = 1e-15);
        assert_abs_diff_eq!(g.value, n.value, epsilon = 1e-12);
        for e in [0.1, 1.0, 10.0, 100.0, 20f64.exp()] {
            for k in 1..=20 {
                let eps = k as f64 / 20.0;
                let a = winter_bound_general(eps, e).unwrap().value;
                let b = winter_bound_number_op(eps, e).unwrap().value;
                assert!((a - b).abs() <= 1e-12 * a.max(1.0), "eps {eps} E {e}: {a} {b}");
            }
        }
        assert_eq!(winter_bound_general(0.0, 1.0).unwrap().value, 0.0);
        assert!(winter_bound_general(1e-9, 1.0).unwrap().value < 1e-6);
    }

    #[test]
    fn winter_alpha_examples() {
        assert!(winter_bound_alpha(0.1, 1.0, 0.5).is_err());
        assert!(winter_bound_alpha(0.1, 1.0, 0.0).is_err());
        assert!(winter_bound_alpha(1e-12, 1.0, 0.1).unwrap().value.abs() < 1e-9);
        let k = winter_bound_alpha(0.1, 10f64.exp(), 0.1).unwrap();
        assert!(k.value.is_finite());
        assert!(k.value > vn_continuity_bound(0.1, 10f64.exp()).unwrap().value);
        assert_abs_diff_eq!(k.value, k.recombine(), epsilon = 1e-15);
        // h̃ jumps to 1 once r·ε passes 1/2
        let k = winter_bound_alpha(0.45, 1.0, 0.2).unwrap();
        assert_eq!(k.term_value("3c*h~(r*eps)").unwrap(), 3.0 * k.diagnostic_value("c").unwrap());
    }

    fn diag(p: &[f64]) -> DensityMatrix {
        DensityMatrix::from_diagonal(p.to_vec()).unwrap()
    }

    #[test]
    fn approx_bound_examples() {
        let rho = diag(&[0.6, 0.3, 0.1, 0.0]);
        let sigma = diag(&[0.5, 0.3, 0.15, 0.05]);
        let ham = HamiltonianSpec::ShiftedNumber;
        let alpha = 0.8;
        let f = TraceFunction::Power(alpha);
        let mu = weighted_moment(&rho, &ham, 1.0, |x| f.eval(x))
            .unwrap()
            .max(weighted_moment(&sigma, &ham, 1.0, |x| f.eval(x)).unwrap());

        let same = ApproxBoundInputs::new(rho.clone(), rho.clone(), ham.clone(), 1.0, mu, 0.01, alpha, 2.0).unwrap();
        let r = approx_trace_bound(&same, f, UniversalConstant::default()).unwrap();
        let norm: f64 = [0.6f64, 0.3, 0.1].iter().map(|x| x.powf(alpha)).sum();
        assert_abs_diff_eq!(r.value, 0.08f64.sqrt() * 2.0 * norm.sqrt(), epsilon = 1e-14);

        let inputs = ApproxBoundInputs::new(rho.clone(), sigma.clone(), ham.clone(), 1.0, mu, 0.01, alpha, 2.0).unwrap();
        let r = approx_trace_bound(&inputs, f, UniversalConstant::default()).unwrap();
        let actual: f64 = [0.6f64, 0.3, 0.1, 0.0]
            .iter()
            .zip([0.5f64, 0.3, 0.15, 0.05])
            .map(|(a, b)| (a.powf(alpha) - b.powf(alpha)).abs())
            .sum();
        assert!(r.value >= actual);
        assert_eq!(r.param_value("c"), Some(1.0));
        assert_eq!(r.diagnostic_value("seminorm"), Some(1.0));
        assert!(minimal_constant(&r, actual) <= 1.0);

        let low = ApproxBoundInputs::new(rho, sigma, ham, 1.0, mu / 2.0, 0.01, alpha, 2.0).unwrap();
        assert!(matches!(
            approx_trace_bound(&low, f, UniversalConstant::default()),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn approx_inputs_validation() {
        let rho = diag(&[1.0, 0.0]);
        let h = HamiltonianSpec::ShiftedNumber;
        assert!(ApproxBoundInputs::new(rho.clone(), rho.clone(), h.clone(), 1.0, 1.0, 0.1, 0.8, 1.0).is_err());
        assert!(ApproxBoundInputs::new(rho.clone(), rho.clone(), h.clone(), 1.0, 1.0, 0.1, 0.8, 1.2).is_err());
        let mut ok = ApproxBoundInputs::new(rho.clone(), rho, h, 1.0, 1.0, 0.1, 0.5, 3.0).unwrap();
        ok.p = 2.0;
        assert!(ok.validate().is_err());
    }

    #[test]
    fn xlogx_variant_and_renyi_tsallis() {
        let rho = diag(&[0.7, 0.2, 0.1]);
        let sigma = diag(&[0.6, 0.3, 0.1]);
        let ham = HamiltonianSpec::ShiftedNumber;
        let inputs = ApproxBoundInputs::new(rho.clone(), sigma.clone(), ham, 1.0, 5.0, 0.05, 0.5, 2.0).unwrap();
        let r = approx_trace_bound(&inputs, TraceFunction::XLogX, UniversalConstant::default()).unwrap();
        assert!(r.term_value("operator_modulus").unwrap() > 0.0);
        let q = quantum_renyi_tsallis_bound(&inputs, UniversalConstant::new(2.0).unwrap()).unwrap();
        assert_eq!(q.param_value("c"), Some(2.0));
        let t = (crate::quantum::quantum_tsallis(&rho, 0.5).unwrap()
            - crate::quantum::quantum_tsallis(&sigma, 0.5).unwrap())
        .abs();
        assert!(q.value >= t);
    }

    #[test]
    fn tsallis_lipschitz_examples() {
        let a = DensityMatrix::fock(0, 2).unwrap();
        let b = DensityMatrix::fock(1, 2).unwrap();
        assert_eq!(tsallis_lipschitz_bound(&a, &a, 2.0).unwrap().value, 0.0);
        let r = tsallis_lipschitz_bound(&a, &b, 2.0).unwrap();
        assert_abs_diff_eq!(r.value, 2.0 * 2f64.sqrt(), epsilon = 1e-15);
        assert_eq!(r.diagnostic_value("|tr rho^a - tr sigma^a|/(alpha-1)"), Some(0.0));
        assert!(tsallis_lipschitz_bound(&a, &b, 1.0).is_err());
    }

    #[test]
    fn renyi_gt1_examples() {
        let ham = HamiltonianSpec::ShiftedNumber;
        let cond = RenyiCondition::Hamiltonian {
            ham: ham.clone(),
            energy: 2.0,
            beta_split: 1.0 / 3.0,
        };
        let rho = diag(&[0.6, 0.3, 0.1]);
        let err = renyi_alpha_gt1_bound(&rho, &rho, 2.0, &cond).unwrap_err();
        assert!(matches!(err, Error::Config(_)), "{err}");

        let cond = RenyiCondition::Hamiltonian {
            ham,
            energy: 2.0,
            beta_split: 0.5,
        };
        assert_eq!(renyi_alpha_gt1_bound(&rho, &rho, 3.0, &cond).unwrap().value, 0.0);
        let sigma = diag(&[0.5, 0.3, 0.2]);
        let r = renyi_alpha_gt1_bound(&rho, &sigma, 3.0, &cond).unwrap();
        let actual = (crate::quantum::quantum_renyi(&rho, 3.0).unwrap()
            - crate::quantum::quantum_renyi(&sigma, 3.0).unwrap())
        .abs();
        assert!(r.value >= actual);
        // δ = E^{αβ/(1−β)} τ^{α−1} with τ = ζ(3/2)
        let zeta_15 = 2.612_375_348_685_488;
        assert_abs_diff_eq!(r.param_value("delta").unwrap(), 8.0 * zeta_15 * zeta_15, epsilon = 2e-2);

        assert!(matches!(
            renyi_alpha_gt1_bound(&rho, &sigma, 2.0, &RenyiCondition::Delta(1.0)),
            Err(Error::Precondition { .. })
        ));
    }

    #[test]
    fn moment_f1_examples() {
        let ham = HamiltonianSpec::ShiftedNumber;
        let ground = DensityMatrix::fock(0, 8).unwrap();
        let r = moment_bound_f1(&ground, &ham).unwrap();
        assert_eq!(r.diagnostic_value("lhs"), Some(0.0));
        assert!(r.value > 0.0);

        let g = DensityMatrix::from_distribution(&crate::dist::DiscreteDistribution::geometric(1.0, 128).unwrap());
        let r = moment_bound_f1(&g, &ham).unwrap();
        assert!(r.diagnostic_value("slack").unwrap() >= 0.0);

        let direct: f64 = (1..2_000_000u64).map(|m| (-(m as f64).sqrt()).exp() * (1.0 + m as f64)).sum();
        let s = exp_sqrt_trace(&ham, 1000).unwrap();
        assert!(s.partial <= direct && direct <= s.total());
        assert!(exp_sqrt_trace(&HamiltonianSpec::Power(0.5), 10).is_err());
    }

    #[test]
    fn moment_falpha_examples() {
        let ham = HamiltonianSpec::ShiftedNumber;
        let ground = DensityMatrix::fock(0, 8).unwrap();
        let r = moment_bound_falpha(&ground, &ham, 0.8, MomentVariant::General(0.3)).unwrap();
        assert_abs_diff_eq!(r.diagnostic_value("lhs").unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.diagnostic_value("s").unwrap(), -1.5, epsilon = 1e-12);

        let rho = diag(&[0.5, 0.25, 0.125, 0.125]);
        let r = moment_bound_falpha(&rho, &ham, 0.8, MomentVariant::General(0.3)).unwrap();
        assert!(r.diagnostic_value("slack").unwrap() >= 0.0);
        assert!(r.diagnostic_value("holder_form").unwrap() <= r.value);

        let r = moment_bound_falpha(&rho, &ham, 0.9, MomentVariant::HalfPower).unwrap();
        assert!(r.diagnostic_value("slack").unwrap() >= 0.0);
        assert!(matches!(
            moment_bound_falpha(&rho, &ham, 0.7, MomentVariant::HalfPower),
            Err(Error::Config(_))
        ));
        assert!(moment_series_converges(6.0, 0.4, 0.35));
        assert!(!moment_series_converges(1.0, 0.4, 0.35));
    }

    #[test]
    fn divergence_witness_brackets() {
        let w = divergence_witness(0.4, 1_000_000).unwrap();
        assert!(w.trace_power.0 <= w.trace_power.1);
        assert!(w.trace_power.1 - w.trace_power.0 < 1e-3);
        let w2 = divergence_witness(0.4, 10_000_000).unwrap();
        assert!(w2.trace_power.0 > w.trace_power.1);
        assert!(w.energy_limit.1 - w.energy_limit.0 < 1e-6);
        assert!(w2.energy_partial.1 <= w2.energy_limit.1);
        assert!(divergence_witness(0.6, 10).is_err());
    }
}
