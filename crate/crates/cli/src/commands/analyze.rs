use entrobound::classical::{classical_renyi_tsallis_bound, WeightedBoundParams};
use entrobound::qbounds::{
    moment_bound_f1, moment_bound_falpha, quantum_renyi_tsallis_bound, renyi_alpha_gt1_bound,
    tsallis_lipschitz_bound, vn_continuity_bound, weighted_moment, winter_bound_alpha,
    winter_bound_number_op, ApproxBoundInputs, MomentVariant, RenyiCondition, TraceFunction,
};
use entrobound::quantum::{
    energy, fidelity, passive_state, quantum_renyi, quantum_tsallis, trace_distance, von_neumann_entropy,
    DensityMatrix, HamiltonianSpec,
};
use entrobound::{BoundReport, WeightSequence};
use serde::Serialize;

use crate::cli::AnalyzeArgs;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{emit, pretty_json};
use crate::states::{as_distribution, hamiltonian, read_state};

pub const FVDG_TOL: f64 = 1e-9;
pub const DEFAULT_APPROX_EPS: f64 = 0.05;

#[derive(Debug, Clone, Serialize)]
pub struct Sandwich {
    pub one_minus_fidelity: f64,
    pub trace_distance: f64,
    pub sqrt_one_minus_f2: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Passive {
    pub energy_rho: f64,
    pub energy_sigma: f64,
    pub trace_distance: f64,
    pub entropy_rho: f64,
    pub entropy_sigma: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundEntry {
    pub bound: String,
    pub report: Option<BoundReport>,
    /// Why the bound could not be evaluated on these inputs.
    pub error: Option<String>,
    pub actual: Option<f64>,
    pub dominates: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub d: usize,
    pub hamiltonian: String,
    pub energy_rho: f64,
    pub energy_sigma: f64,
    pub number_energy_rho: f64,
    pub number_energy_sigma: f64,
    pub entropy_rho: f64,
    pub entropy_sigma: f64,
    pub trace_distance: f64,
    pub fidelity: f64,
    pub fuchs_van_de_graaf: Sandwich,
    pub passive: Passive,
    pub bounds: Vec<BoundEntry>,
}

fn entry(name: &str, r: entrobound::Result<BoundReport>, actual: Option<f64>) -> BoundEntry {
    match r {
        Ok(rep) => BoundEntry {
            dominates: actual.map(|a| a <= rep.value + 1e-12),
            bound: name.into(),
            report: Some(rep),
            error: None,
            actual,
        },
        Err(e) => BoundEntry {
            bound: name.into(),
            report: None,
            error: Some(e.to_string()),
            actual,
            dominates: None,
        },
    }
}

pub fn analyze(rho: &DensityMatrix, sigma: &DensityMatrix, ham: &HamiltonianSpec, cfg: &RunConfig) -> CliResult<Analysis> {
    if rho.dim() != sigma.dim() {
        return Err(entrobound::Error::Domain(format!(
            "states have different dimensions {} and {}",
            rho.dim(),
            sigma.dim()
        ))
        .into());
    }
    let n = HamiltonianSpec::Number;
    let (er, es) = (energy(rho, ham)?, energy(sigma, ham)?);
    let (nr, ns) = (energy(rho, &n)?, energy(sigma, &n)?);
    let (sr, ss) = (von_neumann_entropy(rho), von_neumann_entropy(sigma));
    let t = trace_distance(rho, sigma)?;
    let f = fidelity(rho, sigma)?;
    let upper = (1.0 - f * f).max(0.0).sqrt();
    let sandwich = Sandwich {
        one_minus_fidelity: 1.0 - f,
        trace_distance: t,
        sqrt_one_minus_f2: upper,
        holds: 1.0 - f <= t + FVDG_TOL && t <= upper + FVDG_TOL,
    };
    let (pr, ps) = (passive_state(rho), passive_state(sigma));
    let passive = Passive {
        energy_rho: energy(&pr, ham)?,
        energy_sigma: energy(&ps, ham)?,
        trace_distance: trace_distance(&pr, &ps)?,
        entropy_rho: von_neumann_entropy(&pr),
        entropy_sigma: von_neumann_entropy(&ps),
    };

    let mut bounds = Vec::new();
    let eps = t.min(1.0);
    let e_n = cfg.energy.unwrap_or(nr.max(ns));
    let ds = (sr - ss).abs();
    bounds.push(entry("vn", vn_continuity_bound(eps, e_n), Some(ds)));
    bounds.push(entry("winter3", winter_bound_number_op(eps, e_n), Some(ds)));
    for a in cfg.alphas.iter().copied().filter(|a| *a > 0.0 && *a < 0.5).chain(cfg.alphas.is_empty().then_some(0.1)) {
        bounds.push(entry(&format!("winter2_a{a}"), winter_bound_alpha(eps, e_n, a), Some(ds)));
    }

    let gt1: Vec<f64> = match cfg.alphas.iter().copied().filter(|a| *a > 1.0).collect::<Vec<_>>() {
        v if v.is_empty() => vec![2.0],
        v => v,
    };
    for a in gt1 {
        let dt = (quantum_tsallis(rho, a)? - quantum_tsallis(sigma, a)?).abs();
        bounds.push(entry(&format!("tsallis_lip_a{a}"), tsallis_lipschitz_bound(rho, sigma, a), Some(dt)));
        let dr = (quantum_renyi(rho, a)? - quantum_renyi(sigma, a)?).abs();
        let cond = RenyiCondition::Hamiltonian {
            ham: ham.clone(),
            energy: er.max(es),
            beta_split: cfg.betas.first().copied().filter(|b| *b > 0.0 && *b < 1.0).unwrap_or(0.5),
        };
        bounds.push(entry(&format!("renyi_gt1_a{a}"), renyi_alpha_gt1_bound(rho, sigma, a, &cond), Some(dr)));
    }

    let lt1: Vec<f64> = match cfg.alphas.iter().copied().filter(|a| *a > 0.0 && *a < 1.0).collect::<Vec<_>>() {
        v if v.is_empty() => vec![0.5],
        v => v,
    };
    for a in lt1 {
        let dt = (quantum_tsallis(rho, a)? - quantum_tsallis(sigma, a)?).abs();
        let tf = TraceFunction::Power(a);
        let approx = (|| {
            let mu = weighted_moment(rho, ham, 1.0, |x| tf.eval(x))?.max(weighted_moment(sigma, ham, 1.0, |x| tf.eval(x))?);
            let inputs = ApproxBoundInputs::new(
                rho.clone(),
                sigma.clone(),
                ham.clone(),
                1.0,
                mu,
                cfg.eps.unwrap_or(DEFAULT_APPROX_EPS),
                a,
                2.0f64.max(1.0 / a),
            )?;
            quantum_renyi_tsallis_bound(&inputs, cfg.constant())
        })();
        bounds.push(entry(&format!("renyi_tsallis_quantum_a{a}"), approx, Some(dt)));
        bounds.push(entry(&format!("moment_falpha_rho_a{a}"), moment_bound_falpha(rho, ham, a, MomentVariant::HalfPower), None));
        if let (true, true) = (rho.is_diagonal(), sigma.is_diagonal()) {
            let (p, q) = (as_distribution(rho)?, as_distribution(sigma)?);
            let beta = cfg.betas.first().copied().filter(|b| *b < a).unwrap_or(a / 2.0);
            let params = WeightedBoundParams::new(a, beta, WeightSequence::identity());
            let dtc = (p.tsallis_entropy(a)? - q.tsallis_entropy(a)?).abs();
            bounds.push(entry(
                &format!("renyi_tsallis_classical_a{a}"),
                classical_renyi_tsallis_bound(&p, &q, &params),
                Some(dtc),
            ));
        }
    }
    bounds.push(entry("moment_f1_rho", moment_bound_f1(rho, ham), None));
    bounds.push(entry("moment_f1_sigma", moment_bound_f1(sigma, ham), None));

    let k = cfg.log_base.factor();
    for b in &mut bounds {
        if let Some(r) = b.report.take() {
            if r.kind.is_log_homogeneous() {
                b.actual = b.actual.map(|a| a * k);
            }
            b.report = Some(r.in_base(cfg.log_base));
        }
    }
    let (sr, ss) = (sr * k, ss * k);
    let passive = Passive {
        entropy_rho: passive.entropy_rho * k,
        entropy_sigma: passive.entropy_sigma * k,
        ..passive
    };

    Ok(Analysis {
        d: rho.dim(),
        hamiltonian: ham.to_string(),
        energy_rho: er,
        energy_sigma: es,
        number_energy_rho: nr,
        number_energy_sigma: ns,
        entropy_rho: sr,
        entropy_sigma: ss,
        trace_distance: t,
        fidelity: f,
        fuchs_van_de_graaf: sandwich,
        passive,
        bounds,
    })
}

pub fn run(args: &AnalyzeArgs) -> CliResult<()> {
    let cfg = RunConfig::from_args(&args.common)?;
    let (Some(r), Some(s)) = (&args.states.rho, &args.states.sigma) else {
        return Err(CliError::Usage("analyze needs --rho and --sigma".into()));
    };
    let (rho, sigma) = (read_state(r)?, read_state(s)?);
    let a = analyze(&rho, &sigma, &hamiltonian(&args.states)?, &cfg)?;
    emit(&pretty_json(&a), cfg.output_path.as_deref())
}
