use entrobound::classical::{classical_renyi_tsallis_bound, fano_bound, shannon_continuity_bound, WeightedBoundParams};
use entrobound::qbounds::{
    moment_bound_f1, moment_bound_falpha, quantum_renyi_tsallis_bound, renyi_alpha_gt1_bound,
    tsallis_lipschitz_bound, vn_continuity_bound, weighted_moment, winter_bound_alpha,
    winter_bound_number_op, ApproxBoundInputs, MomentVariant, RenyiCondition, TraceFunction,
};
use entrobound::quantum::{quantum_renyi, quantum_tsallis};
use entrobound::{BoundReport, WeightSequence};
use serde::Serialize;

use crate::cli::{BoundArgs, BoundName};
use crate::config::{Format, RunConfig};
use crate::error::CliResult;
use crate::output::{emit, pretty_json, Table};
use crate::states::{as_distribution, hamiltonian, max_energy, state_pair};

#[derive(Debug, Clone, Serialize)]
pub struct BoundOutput {
    pub reports: Vec<BoundReport>,
    /// Directly evaluated entropy differences, when the bound acts on states.
    pub actual: Vec<(String, f64)>,
}

impl BoundOutput {
    fn single(r: BoundReport) -> Self {
        BoundOutput {
            reports: vec![r],
            actual: Vec::new(),
        }
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(["kind", "entry", "name", "value"]);
        for r in &self.reports {
            let kind = serde_json::to_value(r.kind).unwrap().as_str().unwrap().to_string();
            let row = |entry: &str, name: &str, v: f64| vec![kind.as_str().into(), entry.into(), name.into(), v.into()];
            t.push(row("value", "value", r.value));
            t.push(row("flag", "in_validity_domain", if r.in_validity_domain { 1.0 } else { 0.0 }));
            for term in &r.terms {
                t.push(row("term", &term.name, term.value));
            }
            for (n, v) in &r.params {
                t.push(row("param", n, *v));
            }
            for (n, v) in &r.diagnostics {
                t.push(row("diagnostic", n, *v));
            }
        }
        for (n, v) in &self.actual {
            t.push(vec!["actual".into(), "actual".into(), n.as_str().into(), (*v).into()]);
        }
        t
    }
}

pub fn evaluate(args: &BoundArgs, cfg: &RunConfig) -> CliResult<BoundOutput> {
    let eps = || cfg.require_eps();
    let energy = || cfg.require_energy();
    let first = |v: Vec<f64>| v[0];
    let out = match args.kind {
        BoundName::Fano => BoundOutput::single(fano_bound(eps()?, energy()?)?),
        BoundName::Shannon => BoundOutput::single(shannon_continuity_bound(eps()?, energy()?)?),
        BoundName::Vn => BoundOutput::single(vn_continuity_bound(eps()?, energy()?)?),
        BoundName::Winter3 => BoundOutput::single(winter_bound_number_op(eps()?, energy()?)?),
        BoundName::Winter2 => {
            let (e, en) = (eps()?, energy()?);
            let reports = cfg
                .alphas_or(&[0.1])
                .into_iter()
                .map(|a| winter_bound_alpha(e, en, a))
                .collect::<Result<Vec<_>, _>>()?;
            BoundOutput {
                reports,
                actual: Vec::new(),
            }
        }
        BoundName::RenyiTsallisClassical => {
            let (rho, sigma) = state_pair(&args.states, cfg)?;
            let (p, q) = (as_distribution(&rho)?, as_distribution(&sigma)?);
            let alpha = first(cfg.alphas_or(&[0.8]));
            let beta = first(cfg.betas_or(&[0.6]));
            let params = WeightedBoundParams::new(alpha, beta, WeightSequence::identity());
            let r = classical_renyi_tsallis_bound(&p, &q, &params)?;
            let actual = vec![
                ("|T_a(p)-T_a(q)|".into(), (p.tsallis_entropy(alpha)? - q.tsallis_entropy(alpha)?).abs()),
                ("|R_a(p)-R_a(q)|".into(), (p.renyi_entropy(alpha)? - q.renyi_entropy(alpha)?).abs()),
            ];
            BoundOutput { reports: vec![r], actual }
        }
        BoundName::RenyiTsallisQuantum => {
            let (rho, sigma) = state_pair(&args.states, cfg)?;
            let ham = hamiltonian(&args.states)?;
            let alpha = first(cfg.alphas_or(&[0.5]));
            let beta_exp = first(cfg.betas_or(&[1.0]));
            let mu = match args.states.mu {
                Some(m) => m,
                None => {
                    let f = TraceFunction::Power(alpha);
                    weighted_moment(&rho, &ham, beta_exp, |x| f.eval(x))?
                        .max(weighted_moment(&sigma, &ham, beta_exp, |x| f.eval(x))?)
                }
            };
            let inputs = ApproxBoundInputs::new(
                rho.clone(), sigma.clone(), ham, beta_exp, mu, eps()?, alpha, args.states.q,
            )?;
            let r = quantum_renyi_tsallis_bound(&inputs, cfg.constant())?;
            let actual = vec![
                ("|T_a(rho)-T_a(sigma)|".into(), (quantum_tsallis(&rho, alpha)? - quantum_tsallis(&sigma, alpha)?).abs()),
                ("|R_a(rho)-R_a(sigma)|".into(), (quantum_renyi(&rho, alpha)? - quantum_renyi(&sigma, alpha)?).abs()),
            ];
            BoundOutput { reports: vec![r], actual }
        }
        BoundName::TsallisLip => {
            let (rho, sigma) = state_pair(&args.states, cfg)?;
            let alpha = first(cfg.alphas_or(&[2.0]));
            let r = tsallis_lipschitz_bound(&rho, &sigma, alpha)?;
            let actual = vec![(
                "|T_a(rho)-T_a(sigma)|".into(),
                (quantum_tsallis(&rho, alpha)? - quantum_tsallis(&sigma, alpha)?).abs(),
            )];
            BoundOutput { reports: vec![r], actual }
        }
        BoundName::RenyiGt1 => {
            let (rho, sigma) = state_pair(&args.states, cfg)?;
            let ham = hamiltonian(&args.states)?;
            let alpha = first(cfg.alphas_or(&[2.0]));
            let cond = RenyiCondition::Hamiltonian {
                energy: max_energy(&rho, &sigma, &ham)?,
                ham,
                beta_split: first(cfg.betas_or(&[0.5])),
            };
            let r = renyi_alpha_gt1_bound(&rho, &sigma, alpha, &cond)?;
            let actual = vec![(
                "|R_a(rho)-R_a(sigma)|".into(),
                (quantum_renyi(&rho, alpha)? - quantum_renyi(&sigma, alpha)?).abs(),
            )];
            BoundOutput { reports: vec![r], actual }
        }
        BoundName::MomentF1 => {
            let (rho, _) = state_pair(&args.states, cfg)?;
            BoundOutput::single(moment_bound_f1(&rho, &hamiltonian(&args.states)?)?)
        }
        BoundName::MomentFalpha => {
            let (rho, _) = state_pair(&args.states, cfg)?;
            let variant = args.states.r.map_or(MomentVariant::HalfPower, MomentVariant::General);
            let alpha = first(cfg.alphas_or(&[0.8]));
            BoundOutput::single(moment_bound_falpha(&rho, &hamiltonian(&args.states)?, alpha, variant)?)
        }
    };
    Ok(BoundOutput {
        reports: out.reports.into_iter().map(|r| r.in_base(cfg.log_base)).collect(),
        actual: out
            .actual
            .into_iter()
            .map(|(n, v)| {
                let v = if n.starts_with("|R") { cfg.log_base.from_nats(v) } else { v };
                (n, v)
            })
            .collect(),
    })
}

pub fn run(args: &BoundArgs) -> CliResult<()> {
    let cfg = RunConfig::from_args(&args.common)?;
    let out = evaluate(args, &cfg)?;
    let text = match cfg.format {
        Format::Csv => out.table().to_csv(),
        Format::Json => pretty_json(&out),
    };
    emit(&text, cfg.output_path.as_deref())
}
