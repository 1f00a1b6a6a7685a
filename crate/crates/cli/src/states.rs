//! Loading or synthesising the state pair a command works on.

use std::path::Path;

use entrobound::quantum::{energy, DensityMatrix, HamiltonianSpec};
use entrobound::{DiscreteDistribution, Error};

use crate::cli::StateArgs;
use crate::config::RunConfig;
use crate::error::{CliError, CliResult};

pub const DEFAULT_DIM: usize = 256;

pub fn read_state(path: &Path) -> CliResult<DensityMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    DensityMatrix::from_json(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
    .map_err(Into::into)
}

pub fn hamiltonian(args: &StateArgs) -> CliResult<HamiltonianSpec> {
    Ok(args.ham.parse::<HamiltonianSpec>()?)
}

/// States from `--rho/--sigma`, or the default pair
/// `ρ = geometric(E)`, `σ = (1−ε)ρ + ε|0⟩⟨0|` at truncation `--dim`.
pub fn state_pair(args: &StateArgs, cfg: &RunConfig) -> CliResult<(DensityMatrix, DensityMatrix)> {
    match (&args.rho, &args.sigma) {
        (Some(r), Some(s)) => Ok((read_state(r)?, read_state(s)?)),
        (None, None) => {
            let e = cfg.require_energy()?;
            let eps = cfg.require_eps()?;
            if !(0.0..=1.0).contains(&eps) {
                return Err(Error::Domain(format!("eps must lie in [0,1], got {eps}")).into());
            }
            let p = DiscreteDistribution::geometric(e, cfg.dim_or(DEFAULT_DIM))?;
            let mut q: Vec<f64> = p.probs().iter().map(|x| (1.0 - eps) * x).collect();
            q[0] += eps;
            Ok((DensityMatrix::from_distribution(&p), DensityMatrix::from_diagonal(q)?))
        }
        _ => Err(CliError::Usage("--rho and --sigma must be given together".into())),
    }
}

/// Populations of diagonal states as distributions.
pub fn as_distribution(rho: &DensityMatrix) -> CliResult<DiscreteDistribution> {
    if !rho.is_diagonal() {
        return Err(Error::Domain("classical bounds need diagonal states".into()).into());
    }
    Ok(DiscreteDistribution::new(rho.populations().iter().map(|x| x.max(0.0)).collect())?)
}

pub fn max_energy(rho: &DensityMatrix, sigma: &DensityMatrix, ham: &HamiltonianSpec) -> CliResult<f64> {
    Ok(energy(rho, ham)?.max(energy(sigma, ham)?))
}
