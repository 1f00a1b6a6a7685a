use entrobound::fa::{beta_log_z, counterexample_entropy, fa_weight_feasibility, EigenvalueFamily, GSequence};

use crate::cli::FaArgs;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};
use crate::output::{emit, Table};

pub const DEFAULT_BETAS: [f64; 5] = [0.1, 0.05, 0.02, 0.01, 0.005];
pub const DEFAULT_ALPHAS: [f64; 3] = [2.2, 2.5, 2.8];
pub const HORIZON: u64 = 1_000_000;
pub const FLOOR: f64 = 0.25;
pub const MAX_WIDTH: f64 = 0.05;

pub struct FaReport {
    pub table: Table,
    /// β values whose lower bracket is not above [`FLOOR`] or whose width
    /// is not below [`MAX_WIDTH`].
    pub failures: Vec<f64>,
}

pub fn fa_report(betas: &[f64], alphas: &[f64], horizon: u64) -> CliResult<FaReport> {
    let mut t = Table::new(["quantity", "parameter", "lower", "upper", "width", "verdict"]);
    let mut failures = Vec::new();
    for &b in betas {
        let z = beta_log_z(b)?;
        let ok = z.lower > FLOOR && z.width() < MAX_WIDTH;
        if !ok {
            failures.push(b);
        }
        t.push(vec![
            "beta_log_z".into(),
            b.into(),
            z.lower.into(),
            z.upper.into(),
            z.width().into(),
            if ok { "above-floor" } else { "FLOOR-BREACH" }.into(),
        ]);
    }
    for &a in alphas {
        let s = counterexample_entropy(a, horizon)?;
        t.push(vec![
            "entropy".into(),
            a.into(),
            s.partial.into(),
            s.total_upper().into(),
            s.tail_upper.into(),
            if s.finite { "finite" } else { "divergent" }.into(),
        ]);
        let fam = EigenvalueFamily::with_horizon(a, horizon)?;
        let f = fa_weight_feasibility(&fam, GSequence::LogSquared, horizon)?;
        t.push(vec![
            "sum_lambda_log2".into(),
            a.into(),
            f.partial.into(),
            (f.partial + f.tail_upper).into(),
            f.tail_upper.into(),
            if f.converges { "finite" } else { "divergent" }.into(),
        ]);
    }
    Ok(FaReport { table: t, failures })
}

pub fn run(args: &FaArgs) -> CliResult<()> {
    let cfg = RunConfig::from_args(&args.common)?;
    let rep = fa_report(&cfg.betas_or(&DEFAULT_BETAS), &cfg.alphas_or(&DEFAULT_ALPHAS), HORIZON)?;
    emit(&rep.table.render(cfg.format), cfg.output_path.as_deref())?;
    if !rep.failures.is_empty() {
        return Err(CliError::Tolerance(format!(
            "beta log Z bracket not above {FLOOR} or not narrower than {MAX_WIDTH} for beta in {:?}",
            rep.failures
        )));
    }
    Ok(())
}
