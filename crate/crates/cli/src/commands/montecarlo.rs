//! Randomised dominance experiments with per-trial seeds.

use entrobound::classical::{classical_renyi_tsallis_bound_with_norm, fano_bound, shannon_continuity_bound, WeightedBoundParams};
use entrobound::modulus::UniversalConstant;
use entrobound::qbounds::{
    minimal_constant, quantum_renyi_tsallis_bound, renyi_alpha_gt1_bound, tsallis_lipschitz_bound,
    vn_continuity_bound, weighted_moment, ApproxBoundInputs, RenyiCondition, TraceFunction,
};
use entrobound::quantum::{
    energy, quantum_renyi, quantum_tsallis, trace_distance, von_neumann_entropy, DensityMatrix, HamiltonianSpec,
};
use entrobound::rng::SplitMix64;
use entrobound::sampling::{
    perturbed_pair, random_diagonal_state, random_fano_joint, random_mean_constrained, random_unitary, rotate,
};
use entrobound::series::SeriesBound;
use entrobound::{total_variation, DiscreteDistribution, WeightSequence};
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{Experiment, MonteCarloArgs};
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{emit, pretty_json, Table};

/// Slack granted to floating-point noise when comparing bound and actual.
pub const VIOLATION_TOL: f64 = 1e-12;
pub const HISTOGRAM_BINS: usize = 20;
pub const CLASSICAL_ALPHA: f64 = 0.8;
pub const CLASSICAL_BETAS: [f64; 3] = [0.55, 0.65, 0.75];
/// Gentle-measurement ε, Ĥ exponent and Hölder split of the approximation experiment.
pub const APPROX_EPS: f64 = 0.05;
pub const APPROX_BETA: f64 = 1.0;
pub const APPROX_ALPHA: f64 = 0.5;
pub const APPROX_Q: f64 = 2.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McRow {
    pub trial: u64,
    pub label: String,
    pub actual: f64,
    pub bound: f64,
    pub margin: f64,
    /// Whether the row counts towards violations. Rows outside a bound's
    /// hypotheses, and calibration rows, are recorded but not checked.
    pub checked: bool,
}

impl McRow {
    fn new(trial: u64, label: impl Into<String>, actual: f64, bound: f64, checked: bool) -> Self {
        McRow {
            trial,
            label: label.into(),
            actual,
            bound,
            margin: bound - actual,
            checked,
        }
    }

    pub fn violates(&self) -> bool {
        self.checked && !(self.actual <= self.bound + VIOLATION_TOL)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Bin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabelSummary {
    pub label: String,
    pub rows: usize,
    pub checked: usize,
    pub violations: usize,
    pub min_margin: f64,
    pub mean_margin: f64,
    pub histogram: Vec<Bin>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct McSummary {
    pub experiment: String,
    pub seed: u64,
    pub trials: usize,
    pub dim: usize,
    pub violations: usize,
    pub labels: Vec<LabelSummary>,
    /// Smallest operator constant `c` under which every approximation-bound
    /// row would dominate (quantum experiment only).
    pub empirical_minimal_c: Option<f64>,
    /// Approximation-bound rows not dominated at the configured `c`.
    pub calibration_violations: Option<usize>,
    /// Whether mean margins increase with β, per entropy family
    /// (classical Rényi/Tsallis experiment only).
    pub margin_increasing_in_beta: Option<Vec<(String, bool)>>,
}

pub struct McRun {
    pub rows: Vec<McRow>,
    pub summary: McSummary,
}

fn histogram(values: &[f64]) -> Vec<Bin> {
    let finite: Vec<f64> = values.iter().copied().filter(|x| x.is_finite()).collect();
    if finite.is_empty() {
        return Vec::new();
    }
    let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi == lo {
        return vec![Bin { lo, hi, count: finite.len() }];
    }
    let w = (hi - lo) / HISTOGRAM_BINS as f64;
    let mut bins: Vec<Bin> = (0..HISTOGRAM_BINS)
        .map(|i| Bin {
            lo: lo + w * i as f64,
            hi: if i + 1 == HISTOGRAM_BINS { hi } else { lo + w * (i + 1) as f64 },
            count: 0,
        })
        .collect();
    for x in finite {
        let i = (((x - lo) / w) as usize).min(HISTOGRAM_BINS - 1);
        bins[i].count += 1;
    }
    bins
}

fn summarise_labels(rows: &[McRow]) -> Vec<LabelSummary> {
    let mut labels: Vec<String> = Vec::new();
    for r in rows {
        if !labels.contains(&r.label) {
            labels.push(r.label.clone());
        }
    }
    labels
        .into_iter()
        .map(|label| {
            let sel: Vec<&McRow> = rows.iter().filter(|r| r.label == label).collect();
            let checked: Vec<&&McRow> = sel.iter().filter(|r| r.checked).collect();
            let margins: Vec<f64> = sel.iter().map(|r| r.margin).filter(|m| m.is_finite()).collect();
            LabelSummary {
                rows: sel.len(),
                checked: checked.len(),
                violations: sel.iter().filter(|r| r.violates()).count(),
                min_margin: margins.iter().copied().fold(f64::INFINITY, f64::min),
                mean_margin: margins.iter().sum::<f64>() / margins.len().max(1) as f64,
                histogram: histogram(&margins),
                label,
            }
        })
        .collect()
}

fn run_trials<F>(seed: u64, trials: usize, f: F) -> CliResult<Vec<McRow>>
where
    F: Fn(u64, &mut SplitMix64) -> CliResult<Vec<McRow>> + Sync,
{
    let per_trial: Vec<CliResult<Vec<McRow>>> = (0..trials as u64)
        .into_par_iter()
        .map(|i| f(i, &mut SplitMix64::for_trial(seed, i)))
        .collect();
    let mut rows = Vec::new();
    for r in per_trial {
        rows.extend(r?);
    }
    Ok(rows)
}

fn fano_trial(i: u64, rng: &mut SplitMix64, max_dim: usize) -> CliResult<Vec<McRow>> {
    let d = 2 + rng.below(max_dim as u64 - 1) as usize;
    let e_max = rng.uniform(0.1, 8.0);
    let j = random_fano_joint(rng, d, e_max)?;
    let e = j.marginal_x().mean();
    let eps = j.mismatch_probability().min(1.0);
    let actual = j.conditional_entropy();
    if e <= 0.0 {
        return Ok(vec![McRow::new(i, "fano", actual, f64::NAN, false)]);
    }
    let b = fano_bound(eps, e)?;
    Ok(vec![McRow::new(i, "fano", actual, b.value, b.in_validity_domain)])
}

fn mean(p: &[f64]) -> f64 {
    p.iter().enumerate().map(|(k, x)| k as f64 * x).sum()
}

fn shannon_trial(i: u64, rng: &mut SplitMix64, d: usize) -> CliResult<Vec<McRow>> {
    let e_max = rng.uniform(0.1, 8.0);
    let p = random_mean_constrained(rng, d, e_max)?;
    let other = random_mean_constrained(rng, d, e_max)?;
    let t = rng.next_f64();
    let q: Vec<f64> = p.iter().zip(&other).map(|(a, b)| (1.0 - t) * a + t * b).collect();
    let e = mean(&p).max(mean(&q));
    let (p, q) = (DiscreteDistribution::new(p)?, DiscreteDistribution::new(q)?);
    let actual = (p.shannon_entropy() - q.shannon_entropy()).abs();
    if e <= 0.0 {
        return Ok(vec![McRow::new(i, "shannon", actual, f64::NAN, false)]);
    }
    let b = shannon_continuity_bound(total_variation(&p, &q, None).min(1.0), e)?;
    Ok(vec![McRow::new(i, "shannon", actual, b.value, b.in_validity_domain)])
}

struct ClassicalSetup {
    params: Vec<(WeightedBoundParams, SeriesBound)>,
}

impl ClassicalSetup {
    fn new(alpha: f64, betas: &[f64]) -> CliResult<Self> {
        // support {1, ..., d} stored from position 0
        let w = WeightSequence::identity().with_offset(1);
        let params = betas
            .iter()
            .map(|&b| {
                let p = WeightedBoundParams::new(alpha, b, w);
                let norm = w.inverse_power_norm(b / (1.0 - alpha), p.norm_terms)?;
                Ok((p, norm))
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(ClassicalSetup { params })
    }
}

fn classical_trial(i: u64, rng: &mut SplitMix64, d: usize, setup: &ClassicalSetup) -> CliResult<Vec<McRow>> {
    let (p, q, _) = perturbed_pair(rng, d);
    let alpha = setup.params[0].0.alpha;
    let dt = (p.tsallis_entropy(alpha)? - q.tsallis_entropy(alpha)?).abs();
    let dr = (p.renyi_entropy(alpha)? - q.renyi_entropy(alpha)?).abs();
    let mut rows = Vec::new();
    for (params, norm) in &setup.params {
        let b = classical_renyi_tsallis_bound_with_norm(&p, &q, params, norm)?.value;
        rows.push(McRow::new(i, format!("tsallis_b{}", params.beta), dt, b, true));
        rows.push(McRow::new(i, format!("renyi_b{}", params.beta), dr, b, true));
    }
    Ok(rows)
}

fn quantum_pair(rng: &mut SplitMix64, d: usize, e: f64) -> CliResult<(DensityMatrix, DensityMatrix)> {
    let rho = random_diagonal_state(rng, d, e)?;
    let p = random_mean_constrained(rng, d, e)?;
    let sigma = if rng.next_f64() < 0.5 {
        DensityMatrix::from_diagonal(p)?
    } else {
        rotate(&p, &random_unitary(rng, d))?
    };
    Ok((rho, sigma))
}

fn quantum_trial(i: u64, rng: &mut SplitMix64, max_dim: usize, c: UniversalConstant) -> CliResult<Vec<McRow>> {
    let d = 2 + rng.below(max_dim as u64 - 1) as usize;
    let e = rng.uniform(0.25, 4.0);
    let (rho, sigma) = quantum_pair(rng, d, e)?;
    let mut rows = Vec::new();

    let n = HamiltonianSpec::Number;
    let e_n = energy(&rho, &n)?.max(energy(&sigma, &n)?);
    let eps = trace_distance(&rho, &sigma)?.min(1.0);
    let ds = (von_neumann_entropy(&rho) - von_neumann_entropy(&sigma)).abs();
    if e_n > 0.0 {
        let b = vn_continuity_bound(eps, e_n)?;
        rows.push(McRow::new(i, "vn", ds, b.value, b.in_validity_domain));
    }

    let a = rng.uniform(1.1, 3.0);
    let b = tsallis_lipschitz_bound(&rho, &sigma, a)?.value;
    let dt = (quantum_tsallis(&rho, a)? - quantum_tsallis(&sigma, a)?).abs();
    rows.push(McRow::new(i, "tsallis_lip", dt, b, true));

    let shifted = HamiltonianSpec::ShiftedNumber;
    let cond = RenyiCondition::Hamiltonian {
        energy: energy(&rho, &shifted)?.max(energy(&sigma, &shifted)?),
        ham: shifted.clone(),
        beta_split: 0.5,
    };
    let b = renyi_alpha_gt1_bound(&rho, &sigma, 2.0, &cond)?.value;
    let dr = (quantum_renyi(&rho, 2.0)? - quantum_renyi(&sigma, 2.0)?).abs();
    rows.push(McRow::new(i, "renyi_gt1", dr, b, true));

    let f = TraceFunction::Power(APPROX_ALPHA);
    let mu = weighted_moment(&rho, &shifted, APPROX_BETA, |x| f.eval(x))?
        .max(weighted_moment(&sigma, &shifted, APPROX_BETA, |x| f.eval(x))?);
    let inputs = ApproxBoundInputs::new(
        rho.clone(), sigma.clone(), shifted, APPROX_BETA, mu, APPROX_EPS, APPROX_ALPHA, APPROX_Q,
    )?;
    let report = quantum_renyi_tsallis_bound(&inputs, c)?;
    let da = (quantum_tsallis(&rho, APPROX_ALPHA)? - quantum_tsallis(&sigma, APPROX_ALPHA)?).abs();
    rows.push(McRow::new(i, "approx_tsallis", da, report.value, false));
    // calibration row: the constant this trial needs against the one configured
    rows.push(McRow::new(i, "approx_tsallis_c_min", minimal_constant(&report, da), c.value(), false));
    Ok(rows)
}

pub fn default_trials(exp: Experiment) -> usize {
    match exp {
        Experiment::Fano => 10_000,
        Experiment::Shannon | Experiment::RenyiTsallisClassical => 5_000,
        Experiment::Quantum => 1_000,
    }
}

pub fn default_dim(exp: Experiment) -> usize {
    match exp {
        Experiment::Fano => 200,
        Experiment::Shannon | Experiment::RenyiTsallisClassical => 1_000,
        Experiment::Quantum => 64,
    }
}

pub fn experiment_name(exp: Experiment) -> &'static str {
    match exp {
        Experiment::Fano => "fano",
        Experiment::Shannon => "shannon",
        Experiment::RenyiTsallisClassical => "renyi-tsallis-classical",
        Experiment::Quantum => "quantum",
    }
}

pub fn run_experiment(exp: Experiment, cfg: &RunConfig) -> CliResult<McRun> {
    let trials = cfg.trials_or(default_trials(exp));
    let dim = cfg.dim_or(default_dim(exp));
    if dim < 2 {
        return Err(CliError::Usage("monte carlo experiments need --dim >= 2".into()));
    }
    let seed = cfg.seed;
    let mut betas_used = None;
    let rows = match exp {
        Experiment::Fano => run_trials(seed, trials, |i, r| fano_trial(i, r, dim))?,
        Experiment::Shannon => run_trials(seed, trials, |i, r| shannon_trial(i, r, dim))?,
        Experiment::RenyiTsallisClassical => {
            let alpha = cfg.alphas.first().copied().unwrap_or(CLASSICAL_ALPHA);
            let betas = cfg.betas_or(&CLASSICAL_BETAS);
            let setup = ClassicalSetup::new(alpha, &betas)?;
            betas_used = Some(betas);
            run_trials(seed, trials, |i, r| classical_trial(i, r, dim, &setup))?
        }
        Experiment::Quantum => {
            let c = cfg.constant();
            run_trials(seed, trials, |i, r| quantum_trial(i, r, dim, c))?
        }
    };
    let labels = summarise_labels(&rows);
    let mut summary = McSummary {
        experiment: experiment_name(exp).into(),
        seed,
        trials,
        dim,
        violations: rows.iter().filter(|r| r.violates()).count(),
        labels,
        empirical_minimal_c: None,
        calibration_violations: None,
        margin_increasing_in_beta: None,
    };
    if exp == Experiment::Quantum {
        let c_rows = rows.iter().filter(|r| r.label == "approx_tsallis_c_min");
        summary.empirical_minimal_c = Some(c_rows.map(|r| r.actual).fold(0.0, f64::max));
        summary.calibration_violations = Some(
            rows.iter()
                .filter(|r| r.label == "approx_tsallis" && r.actual > r.bound)
                .count(),
        );
    }
    if let Some(betas) = betas_used {
        let ordering = ["tsallis", "renyi"]
            .iter()
            .map(|fam| {
                let means: Vec<f64> = betas
                    .iter()
                    .map(|b| {
                        summary
                            .labels
                            .iter()
                            .find(|l| l.label == format!("{fam}_b{b}"))
                            .map_or(f64::NAN, |l| l.mean_margin)
                    })
                    .collect();
                (fam.to_string(), means.windows(2).all(|w| w[1] > w[0]))
            })
            .collect();
        summary.margin_increasing_in_beta = Some(ordering);
    }
    Ok(McRun { rows, summary })
}

pub fn rows_table(rows: &[McRow]) -> Table {
    let mut t = Table::new(["trial", "label", "actual", "bound", "margin", "checked"]);
    for r in rows {
        t.push(vec![
            r.trial.into(),
            r.label.as_str().into(),
            r.actual.into(),
            r.bound.into(),
            r.margin.into(),
            r.checked.into(),
        ]);
    }
    t
}

pub fn run(args: &MonteCarloArgs) -> CliResult<()> {
    let cfg = RunConfig::from_args(&args.common)?;
    let run = run_experiment(args.experiment, &cfg)?;
    let rows_path = cfg.output_path.as_deref();
    emit(&rows_table(&run.rows).render(cfg.format), rows_path)?;
    let summary = pretty_json(&run.summary);
    match (args.summary.as_deref(), rows_path) {
        (Some(p), _) => emit(&summary, Some(p))?,
        (None, Some(_)) => emit(&summary, None)?,
        (None, None) => eprint!("{summary}"),
    }
    report_violations(&run.summary)
}

fn report_violations(s: &McSummary) -> CliResult<()> {
    if s.violations > 0 {
        return Err(CliError::Tolerance(format!(
            "{} bound violation(s) in the {} experiment",
            s.violations, s.experiment
        )));
    }
    Ok(())
}
