//! Density matrices in a truncated Fock basis and the spectral quantities
//! the quantum bounds consume.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dist::{power_sum, shannon, DiscreteDistribution};
use crate::error::{config, domain, Error, Result};
use crate::linalg::{CMatrix, Eigh, C64};
use crate::series::{zeta_upper, SeriesBound};

pub use crate::linalg::Eigh as Spectrum;

const HERMITIAN_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-10;
const NEG_EIG_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    /// Diagonal in the Fock basis; kept unmaterialised so large truncations stay cheap.
    Diagonal(Vec<f64>),
    Dense { m: CMatrix, eig: Eigh },
}

/// Hermitian, positive semidefinite, unit-trace `d×d` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    repr: Repr,
}

impl DensityMatrix {
    /// Validates Hermiticity (1e-12), trace (1e-10) and eigenvalues (≥ −1e-10).
    pub fn new(m: CMatrix) -> Result<Self> {
        let defect = m.hermitian_defect();
        if defect > HERMITIAN_TOL {
            return Err(domain(format!("matrix is not Hermitian (defect {defect:e})")));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(domain(format!("trace must be 1, got {tr}")));
        }
        let eig = m.eigh()?;
        let smallest = *eig.values.last().unwrap();
        if smallest < -NEG_EIG_TOL {
            return Err(domain(format!("matrix is not positive semidefinite (eigenvalue {smallest:e})")));
        }
        Ok(DensityMatrix {
            repr: Repr::Dense { m, eig },
        })
    }

    /// Diagonal state with the given Fock-level populations.
    pub fn from_diagonal(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(domain("state needs dimension >= 1"));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < -NEG_EIG_TOL) {
            return Err(domain("diagonal entries must be finite and >= 0"));
        }
        let tr: f64 = probs.iter().sum();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(domain(format!("trace must be 1, got {tr}")));
        }
        Ok(DensityMatrix {
            repr: Repr::Diagonal(probs),
        })
    }

    pub fn from_distribution(p: &DiscreteDistribution) -> Self {
        DensityMatrix {
            repr: Repr::Diagonal(p.probs().to_vec()),
        }
    }

    /// `|n⟩⟨n|` in dimension `d`.
    pub fn fock(n: usize, d: usize) -> Result<Self> {
        if n >= d {
            return Err(domain(format!("level {n} outside truncation {d}")));
        }
        let mut probs = vec![0.0; d];
        probs[n] = 1.0;
        Self::from_diagonal(probs)
    }

    /// `|ψ⟩⟨ψ|` for a vector normalised here.
    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm.is_finite() && norm > 0.0) {
            return Err(domain("state vector must be nonzero and finite"));
        }
        let v: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Self::new(CMatrix::outer(&v))
    }

    pub fn dim(&self) -> usize {
        match &self.repr {
            Repr::Diagonal(p) => p.len(),
            Repr::Dense { m, .. } => m.dim(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        matches!(self.repr, Repr::Diagonal(_))
    }

    pub fn to_matrix(&self) -> CMatrix {
        match &self.repr {
            Repr::Diagonal(p) => CMatrix::from_diagonal(p),
            Repr::Dense { m, .. } => m.clone(),
        }
    }

    /// Fock-basis populations `ρ_nn`.
    pub fn populations(&self) -> Vec<f64> {
        match &self.repr {
            Repr::Diagonal(p) => p.clone(),
            Repr::Dense { m, .. } => m.diagonal().iter().map(|z| z.re).collect(),
        }
    }

    /// Eigenvalues, nonincreasing, unclipped.
    pub fn eigenvalues(&self) -> Vec<f64> {
        match &self.repr {
            Repr::Diagonal(p) => {
                let mut v = p.clone();
                v.sort_by(|a, b| b.total_cmp(a));
                v
            }
            Repr::Dense { eig, .. } => eig.values.clone(),
        }
    }

    /// Eigenvalues with the negative rounding residue set to 0 and the
    /// remainder renormalised; used only for entropies.
    pub fn clipped_eigenvalues(&self) -> Vec<f64> {
        let mut v = self.eigenvalues();
        v.iter_mut().for_each(|x| *x = x.max(0.0));
        let s: f64 = v.iter().sum();
        v.iter_mut().for_each(|x| *x /= s);
        v
    }

    /// `f(ρ) = Σ f(λ_k) π_k` as a matrix.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        match &self.repr {
            Repr::Diagonal(p) => CMatrix::from_diagonal(&p.iter().map(|x| f(*x)).collect::<Vec<_>>()),
            Repr::Dense { eig, .. } => eig.apply(f),
        }
    }

    pub fn to_json(&self) -> String {
        write_matrix_json(&self.to_matrix())
    }

    /// Parses a matrix file; exactly diagonal input keeps the cheap
    /// diagonal representation.
    pub fn from_json(text: &str) -> Result<Self> {
        let m = read_matrix_json(text)?;
        let d = m.dim();
        let diagonal = (0..d).all(|i| (0..d).all(|j| if i == j { m.get(i, i).im == 0.0 } else { m.get(i, j) == C64::new(0.0, 0.0) }));
        if diagonal {
            Self::from_diagonal(m.diagonal().iter().map(|z| z.re).collect())
        } else {
            Self::new(m)
        }
    }
}

/// Spectral decomposition with eigenvectors as columns.
pub fn eigendecompose(rho: &DensityMatrix) -> Spectrum {
    match &rho.repr {
        Repr::Dense { eig, .. } => eig.clone(),
        Repr::Diagonal(p) => {
            let d = p.len();
            let mut order: Vec<usize> = (0..d).collect();
            order.sort_by(|&i, &j| p[j].total_cmp(&p[i]));
            let mut vectors = CMatrix::zeros(d);
            for (col, &row) in order.iter().enumerate() {
                vectors.set(row, col, C64::new(1.0, 0.0));
            }
            Spectrum {
                values: order.iter().map(|&i| p[i]).collect(),
                vectors,
            }
        }
    }
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    shannon(&rho.clipped_eigenvalues())
}

/// `tr ρ^α` over the clipped spectrum.
pub fn trace_power(rho: &DensityMatrix, alpha: f64) -> f64 {
    power_sum(&rho.clipped_eigenvalues(), alpha)
}

pub fn quantum_renyi(rho: &DensityMatrix, alpha: f64) -> Result<f64> {
    crate::dist::renyi(&rho.clipped_eigenvalues(), alpha)
}

pub fn quantum_tsallis(rho: &DensityMatrix, alpha: f64) -> Result<f64> {
    crate::dist::tsallis(&rho.clipped_eigenvalues(), alpha)
}

fn check_dims(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<()> {
    if rho.dim() != sigma.dim() {
        return Err(domain(format!(
            "states have different truncations {} and {}",
            rho.dim(),
            sigma.dim()
        )));
    }
    Ok(())
}

/// Eigenvalues of `ρ − σ`.
pub fn difference_eigenvalues(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Vec<f64>> {
    check_dims(rho, sigma)?;
    match (&rho.repr, &sigma.repr) {
        (Repr::Diagonal(p), Repr::Diagonal(q)) => Ok(p.iter().zip(q).map(|(a, b)| a - b).collect()),
        _ => Ok((&rho.to_matrix() - &sigma.to_matrix()).eigh()?.values),
    }
}

fn lp(values: &[f64], p: f64) -> f64 {
    if p.is_infinite() {
        values.iter().fold(0.0, |m, x| m.max(x.abs()))
    } else {
        values.iter().map(|x| x.abs().powf(p)).sum::<f64>().powf(1.0 / p)
    }
}

fn check_schatten_p(p: f64) -> Result<()> {
    if !(p >= 1.0) {
        return Err(domain(format!("Schatten exponent must be >= 1, got {p}")));
    }
    Ok(())
}

/// `‖A‖_p` for Hermitian `A`; `p = ∞` is the operator norm.
pub fn schatten_norm(a: &CMatrix, p: f64) -> Result<f64> {
    check_schatten_p(p)?;
    Ok(lp(&a.eigh()?.values, p))
}

/// `‖ρ − σ‖_p`.
pub fn schatten_distance(rho: &DensityMatrix, sigma: &DensityMatrix, p: f64) -> Result<f64> {
    check_schatten_p(p)?;
    Ok(lp(&difference_eigenvalues(rho, sigma)?, p))
}

/// `½‖ρ − σ‖₁`.
pub fn trace_distance(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    Ok(0.5 * lp(&difference_eigenvalues(rho, sigma)?, 1.0))
}

/// `F(ρ,σ) = ‖√ρ√σ‖₁ = tr √(√ρ σ √ρ)`.
pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    check_dims(rho, sigma)?;
    let f = match (&rho.repr, &sigma.repr) {
        (Repr::Diagonal(p), Repr::Diagonal(q)) => {
            p.iter().zip(q).map(|(a, b)| (a.max(0.0) * b.max(0.0)).sqrt()).sum()
        }
        _ => {
            let s = rho.apply(|x| x.max(0.0).sqrt());
            let m = &(&s * &sigma.to_matrix()) * &s;
            // symmetrise away rounding before the eigensolver
            let m = (&m + &m.adjoint()).scale(0.5);
            m.eigh()?.values.iter().map(|x| x.max(0.0).sqrt()).sum::<f64>()
        }
    };
    Ok(f.clamp(0.0, 1.0))
}

/// `tr(Ĥρ)` for a Hamiltonian diagonal in the Fock basis.
pub fn energy(rho: &DensityMatrix, ham: &HamiltonianSpec) -> Result<f64> {
    let levels = ham.levels(rho.dim())?;
    Ok(rho.populations().iter().zip(&levels).map(|(p, e)| p * e).sum())
}

/// Eigenvalues sorted nonincreasing on Fock levels `0, 1, 2, ...`.
pub fn passive_state(rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix {
        repr: Repr::Diagonal(rho.eigenvalues()),
    }
}

/// `1_{[0, cutoff]}(Ĥ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralProjection {
    pub cutoff: f64,
    /// Rank on the untruncated space (`f64` because it can exceed `u64`).
    pub rank: f64,
}

impl SpectralProjection {
    /// The projector restricted to the first `d` levels.
    pub fn matrix(&self, ham: &HamiltonianSpec, d: usize) -> Result<CMatrix> {
        let levels = ham.levels(d)?;
        Ok(CMatrix::from_diagonal(
            &levels
                .iter()
                .map(|e| if *e <= self.cutoff { 1.0 } else { 0.0 })
                .collect::<Vec<_>>(),
        ))
    }
}

pub fn spectral_projection(ham: &HamiltonianSpec, cutoff: f64) -> Result<SpectralProjection> {
    if !(cutoff >= 0.0) {
        return Err(domain(format!("projection cutoff must be >= 0, got {cutoff}")));
    }
    Ok(SpectralProjection {
        cutoff,
        rank: ham.count_at_most(cutoff)?,
    })
}

/// `S(γ(E)) = (E+1)ln(E+1) − E ln E`.
pub fn gibbs_entropy(energy: f64) -> f64 {
    if energy <= 0.0 {
        return 0.0;
    }
    energy.ln_1p() + energy * (1.0 / energy).ln_1p()
}

#[derive(Debug, Clone, PartialEq)]
pub struct GibbsState {
    pub state: DensityMatrix,
    /// `β(E) = ln(1 + 1/E)`.
    pub beta: f64,
    /// `Σ e^{−βn}(n − E) / Z` over the truncation.
    pub residual: f64,
    pub tail_mass: f64,
}

/// Number-operator Gibbs state of mean `E`, truncated at `d` levels.
pub fn gibbs_state_number_op(energy: f64, d: usize) -> Result<GibbsState> {
    if !(energy.is_finite() && energy > 0.0) {
        return Err(domain(format!("Gibbs energy must be finite and > 0, got {energy}")));
    }
    let p = DiscreteDistribution::geometric(energy, d)?;
    let residual = p
        .probs()
        .iter()
        .enumerate()
        .map(|(n, x)| x * (n as f64 - energy))
        .sum();
    Ok(GibbsState {
        beta: (1.0 / energy).ln_1p(),
        residual,
        tail_mass: p.tail_mass(),
        state: DensityMatrix::from_distribution(&p),
    })
}

/// Hamiltonians diagonal in the Fock basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum HamiltonianSpec {
    /// `N̂`, levels `n`.
    Number,
    /// `N̂ + 1`, levels `n + 1`.
    ShiftedNumber,
    /// `N̂^κ`.
    Power(f64),
    /// `(N̂ + 1)^κ`.
    ShiftedPower(f64),
    /// Custom finite list of nondecreasing, nonnegative levels.
    Diagonal(Vec<f64>),
}

impl HamiltonianSpec {
    pub fn diagonal(levels: Vec<f64>) -> Result<Self> {
        let h = HamiltonianSpec::Diagonal(levels);
        h.validate()?;
        Ok(h)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            HamiltonianSpec::Power(k) | HamiltonianSpec::ShiftedPower(k) => {
                if !(k.is_finite() && *k > 0.0) {
                    return Err(domain(format!("Hamiltonian power must be finite and > 0, got {k}")));
                }
            }
            HamiltonianSpec::Diagonal(v) => {
                if v.is_empty() {
                    return Err(domain("custom Hamiltonian needs at least one level"));
                }
                if v.iter().any(|x| !x.is_finite() || *x < 0.0) {
                    return Err(domain("Hamiltonian levels must be finite and >= 0"));
                }
                if v.windows(2).any(|w| w[1] < w[0]) {
                    return Err(domain("Hamiltonian levels must be nondecreasing"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Level `n`, or `None` past the end of a custom list.
    pub fn level(&self, n: usize) -> Option<f64> {
        let x = n as f64;
        match self {
            HamiltonianSpec::Number => Some(x),
            HamiltonianSpec::ShiftedNumber => Some(x + 1.0),
            HamiltonianSpec::Power(k) => Some(if n == 0 { 0.0 } else { x.powf(*k) }),
            HamiltonianSpec::ShiftedPower(k) => Some((x + 1.0).powf(*k)),
            HamiltonianSpec::Diagonal(v) => v.get(n).copied(),
        }
    }

    pub fn levels(&self, d: usize) -> Result<Vec<f64>> {
        self.validate()?;
        (0..d)
            .map(|n| {
                self.level(n).ok_or_else(|| {
                    domain(format!("custom Hamiltonian has fewer than {d} levels"))
                })
            })
            .collect()
    }

    /// The exponent `κ` with levels `≍ n^κ`, for the unbounded families.
    fn growth(&self) -> Option<(f64, bool)> {
        match self {
            HamiltonianSpec::Number => Some((1.0, false)),
            HamiltonianSpec::ShiftedNumber => Some((1.0, true)),
            HamiltonianSpec::Power(k) => Some((*k, false)),
            HamiltonianSpec::ShiftedPower(k) => Some((*k, true)),
            HamiltonianSpec::Diagonal(_) => None,
        }
    }

    /// Number of levels `≤ cutoff` on the untruncated space.
    pub fn count_at_most(&self, cutoff: f64) -> Result<f64> {
        self.validate()?;
        let Some((k, shifted)) = self.growth() else {
            let HamiltonianSpec::Diagonal(v) = self else { unreachable!() };
            return Ok(v.iter().filter(|e| **e <= cutoff).count() as f64);
        };
        if cutoff < 0.0 {
            return Ok(0.0);
        }
        // largest m with m^κ ≤ cutoff, then levels 0..=m (unshifted) or 1..=m (shifted)
        let root = cutoff.powf(1.0 / k);
        if root > 1e15 {
            return Ok(if shifted { root.floor() } else { root.floor() + 1.0 });
        }
        let mut m = root.floor() as u64;
        while m > 0 && (m as f64).powf(k) > cutoff {
            m -= 1;
        }
        while ((m + 1) as f64).powf(k) <= cutoff {
            m += 1;
        }
        Ok(if shifted { m as f64 } else { m as f64 + 1.0 })
    }

    /// `tr Ĥ^s` on the untruncated space as a partial sum over `terms`
    /// levels plus an integral-test upper tail. Diverges unless `−κs > 1`.
    pub fn trace_power(&self, s: f64, terms: usize) -> Result<SeriesBound> {
        self.validate()?;
        let Some((k, shifted)) = self.growth() else {
            let HamiltonianSpec::Diagonal(v) = self else { unreachable!() };
            if s < 0.0 && v[0] == 0.0 {
                return Err(config(format!("tr H^{s} is infinite: H has a zero level")));
            }
            return Ok(SeriesBound::finite(v.iter().map(|e| e.powf(s)).sum(), v.len()));
        };
        if !shifted && s < 0.0 {
            return Err(config(format!("tr H^{s} is infinite: H has a zero level")));
        }
        let e = -k * s;
        if !(e > 1.0) {
            return Err(config(format!(
                "tr H^{s} diverges: level exponent {e} must exceed 1"
            )));
        }
        Ok(zeta_upper(e, terms))
    }
}

impl FromStr for HamiltonianSpec {
    type Err = Error;

    /// `number`, `shifted`, `power:<κ>`, `shifted-power:<κ>` or
    /// `diagonal:<e0>,<e1>,...`.
    fn from_str(s: &str) -> Result<Self> {
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h.trim(), Some(a.trim())),
            None => (s.trim(), None),
        };
        let num = |a: Option<&str>| -> Result<f64> {
            a.ok_or_else(|| Error::Parse(format!("Hamiltonian '{s}' needs an exponent")))?
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("Hamiltonian '{s}': {e}")))
        };
        let h = match head {
            "number" | "N" => HamiltonianSpec::Number,
            "shifted" | "N+1" => HamiltonianSpec::ShiftedNumber,
            "power" => HamiltonianSpec::Power(num(arg)?),
            "shifted-power" => HamiltonianSpec::ShiftedPower(num(arg)?),
            "diagonal" => HamiltonianSpec::Diagonal(
                arg.unwrap_or("")
                    .split(',')
                    .map(|x| {
                        x.trim()
                            .parse::<f64>()
                            .map_err(|e| Error::Parse(format!("Hamiltonian level '{x}': {e}")))
                    })
                    .collect::<Result<_>>()?,
            ),
            _ => return Err(Error::Parse(format!("unknown Hamiltonian '{s}'"))),
        };
        h.validate()?;
        Ok(h)
    }
}

impl fmt::Display for HamiltonianSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HamiltonianSpec::Number => write!(f, "number"),
            HamiltonianSpec::ShiftedNumber => write!(f, "shifted"),
            HamiltonianSpec::Power(k) => write!(f, "power:{k}"),
            HamiltonianSpec::ShiftedPower(k) => write!(f, "shifted-power:{k}"),
            HamiltonianSpec::Diagonal(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "diagonal:{}", parts.join(","))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    d: usize,
    entries_re: Vec<f64>,
    entries_im: Vec<f64>,
}

/// Parses `{d, entries_re, entries_im}` (row-major).
pub fn read_matrix_json(text: &str) -> Result<CMatrix> {
    let raw: MatrixJson = serde_json::from_str(text).map_err(|e| {
        Error::Parse(format!("matrix JSON, line {} column {}: {e}", e.line(), e.column()))
    })?;
    let n = raw.d * raw.d;
    for (field, len) in [("entries_re", raw.entries_re.len()), ("entries_im", raw.entries_im.len())] {
        if len != n {
            return Err(Error::Parse(format!("field {field}: expected {n} entries for d={}, got {len}", raw.d)));
        }
    }
    CMatrix::new(
        raw.d,
        raw.entries_re
            .iter()
            .zip(&raw.entries_im)
            .map(|(re, im)| C64::new(*re, *im))
            .collect(),
    )
}

pub fn write_matrix_json(m: &CMatrix) -> String {
    let raw = MatrixJson {
        d: m.dim(),
        entries_re: m.data().iter().map(|z| z.re).collect(),
        entries_im: m.data().iter().map(|z| z.im).collect(),
    };
    serde_json::to_string(&raw).expect("matrix serialisation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::LN_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn validation() {
        let bad_trace = CMatrix::from_diagonal(&[0.5, 0.4]);
        assert!(matches!(DensityMatrix::new(bad_trace), Err(Error::Domain(_))));
        let not_psd = CMatrix::from_diagonal(&[1.5, -0.5]);
        assert!(DensityMatrix::new(not_psd).is_err());
        let not_herm = CMatrix::new(2, vec![c(0.5, 0.), c(0.1, 0.), c(0.2, 0.), c(0.5, 0.)]).unwrap();
        assert!(DensityMatrix::new(not_herm).is_err());
        assert!(DensityMatrix::from_diagonal(vec![0.5, 0.6]).is_err());
    }

    #[test]
    fn spectra() {
        let m = CMatrix::new(2, vec![c(0.5, 0.), c(0.5, 0.), c(0.5, 0.), c(0.5, 0.)]).unwrap();
        let rho = DensityMatrix::new(m).unwrap();
        let s = eigendecompose(&rho);
        assert_abs_diff_eq!(s.values[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.values[1], 0.0, epsilon = 1e-15);
        assert!(von_neumann_entropy(&rho) < 1e-12);

        let diag = DensityMatrix::from_diagonal(vec![0.1, 0.6, 0.3]).unwrap();
        let s = eigendecompose(&diag);
        assert_eq!(s.values, vec![0.6, 0.3, 0.1]);
        assert!(s.apply(|x| x).max_abs_diff(&diag.to_matrix()) < 1e-15);

        let mixed = DensityMatrix::from_diagonal(vec![0.25; 4]).unwrap();
        assert_abs_diff_eq!(von_neumann_entropy(&mixed), 4f64.ln(), epsilon = 1e-15);
    }

    #[test]
    fn geometric_state_entropy_and_energy() {
        let g = DiscreteDistribution::geometric(1.0, 256).unwrap();
        let rho = DensityMatrix::from_distribution(&g);
        assert_abs_diff_eq!(von_neumann_entropy(&rho), 2.0 * LN_2, epsilon = 1e-8);
        assert_abs_diff_eq!(energy(&rho, &HamiltonianSpec::Number).unwrap(), 1.0, epsilon = 1e-8);
        assert_eq!(energy(&DensityMatrix::fock(0, 4).unwrap(), &HamiltonianSpec::Number).unwrap(), 0.0);
        assert_eq!(energy(&DensityMatrix::fock(3, 4).unwrap(), &HamiltonianSpec::Number).unwrap(), 3.0);
    }

    #[test]
    fn entropies_mirror_classical() {
        let rho = DensityMatrix::from_diagonal(vec![0.7, 0.3]).unwrap();
        assert_abs_diff_eq!(quantum_renyi(&rho, 0.5).unwrap(), 0.650_508_505_098_256_0, epsilon = 1e-14);
        assert_abs_diff_eq!(quantum_tsallis(&rho, 0.5).unwrap(), 0.768_765_168_078_483_3, epsilon = 1e-14);
        assert!(quantum_tsallis(&rho, 1.0).is_err());
    }

    #[test]
    fn distances() {
        let a = DensityMatrix::fock(0, 2).unwrap();
        let b = DensityMatrix::fock(1, 2).unwrap();
        assert_eq!(trace_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(trace_distance(&a, &b).unwrap(), 1.0);
        assert_eq!(fidelity(&a, &b).unwrap(), 0.0);
        assert_abs_diff_eq!(fidelity(&a, &a).unwrap(), 1.0, epsilon = 1e-15);

        let p = DensityMatrix::from_diagonal(vec![0.2, 0.3, 0.5]).unwrap();
        let q = DensityMatrix::from_diagonal(vec![0.5, 0.3, 0.2]).unwrap();
        assert_abs_diff_eq!(trace_distance(&p, &q).unwrap(), 0.3, epsilon = 1e-15);
        assert_abs_diff_eq!(
            fidelity(&p, &q).unwrap(),
            2.0 * 0.1f64.sqrt() + 0.3,
            epsilon = 1e-15
        );

        // dense path agrees with the diagonal path
        let pd = DensityMatrix::new(p.to_matrix()).unwrap();
        let qd = DensityMatrix::new(q.to_matrix()).unwrap();
        assert_abs_diff_eq!(trace_distance(&pd, &qd).unwrap(), 0.3, epsilon = 1e-14);
        assert_abs_diff_eq!(fidelity(&pd, &qd).unwrap(), fidelity(&p, &q).unwrap(), epsilon = 1e-12);
        assert!(trace_distance(&p, &a).is_err());
    }

    #[test]
    fn schatten() {
        let a = CMatrix::from_diagonal(&[0.5, -0.5]);
        assert_abs_diff_eq!(schatten_norm(&a, 1.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(schatten_norm(&a, 2.0).unwrap(), a.frobenius_norm(), epsilon = 1e-15);
        assert_abs_diff_eq!(schatten_norm(&a, f64::INFINITY).unwrap(), 0.5, epsilon = 1e-15);
        assert!(matches!(schatten_norm(&a, 0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn passive() {
        let sorted = DensityMatrix::from_diagonal(vec![0.6, 0.3, 0.1]).unwrap();
        assert_eq!(passive_state(&sorted).populations(), vec![0.6, 0.3, 0.1]);
        let m = CMatrix::new(2, vec![c(0.5, 0.), c(0., 0.3), c(0., -0.3), c(0.5, 0.)]).unwrap();
        let rho = DensityMatrix::new(m).unwrap();
        let p = passive_state(&rho).populations();
        assert_abs_diff_eq!(p[0], 0.8, epsilon = 1e-14);
        assert_abs_diff_eq!(p[1], 0.2, epsilon = 1e-14);
    }

    #[test]
    fn projections() {
        let n = HamiltonianSpec::Number;
        assert_eq!(spectral_projection(&HamiltonianSpec::ShiftedNumber, 0.5).unwrap().rank, 0.0);
        let p = spectral_projection(&n, 3.5).unwrap();
        assert_eq!(p.rank, 4.0);
        let m = p.matrix(&n, 10).unwrap();
        for q in [1.0, 2.0, 3.0] {
            assert_abs_diff_eq!(schatten_norm(&m, q).unwrap(), 4f64.powf(1.0 / q), epsilon = 1e-14);
        }
        assert_eq!(HamiltonianSpec::ShiftedPower(2.0).count_at_most(16.0).unwrap(), 4.0);
        assert_eq!(HamiltonianSpec::Power(0.5).count_at_most(3.0).unwrap(), 10.0);
        assert!(spectral_projection(&n, -1.0).is_err());
    }

    #[test]
    fn gibbs() {
        let g = gibbs_state_number_op(1.0, 128).unwrap();
        assert_abs_diff_eq!(g.beta, LN_2, epsilon = 1e-15);
        assert!(g.residual.abs() <= 1e-10);
        let pops = g.state.populations();
        for (n, p) in pops.iter().take(10).enumerate() {
            assert_abs_diff_eq!(*p, 0.5f64.powi(n as i32 + 1), epsilon = 1e-15);
        }
        for e in [0.3, 1.0, 4.0] {
            let g = gibbs_state_number_op(e, 1024).unwrap();
            assert_abs_diff_eq!(von_neumann_entropy(&g.state), gibbs_entropy(e), epsilon = 1e-9);
        }
        let g = gibbs_state_number_op(1e-9, 16).unwrap();
        assert!(g.state.populations()[0] > 1.0 - 1e-8);
        assert!(gibbs_state_number_op(0.0, 16).is_err());
    }

    #[test]
    fn hamiltonian_parsing_and_traces() {
        for s in ["number", "shifted", "power:1.5", "shifted-power:2", "diagonal:0,1,4"] {
            let h: HamiltonianSpec = s.parse().unwrap();
            assert_eq!(h.to_string(), s);
        }
        assert!("diagonal:2,1".parse::<HamiltonianSpec>().is_err());
        assert!("nope".parse::<HamiltonianSpec>().is_err());
        let z = HamiltonianSpec::ShiftedNumber.trace_power(-2.0, 10_000).unwrap();
        assert_abs_diff_eq!(z.total(), std::f64::consts::PI.powi(2) / 6.0, epsilon = 1e-4);
        assert!(z.total() >= std::f64::consts::PI.powi(2) / 6.0);
        assert!(matches!(
            HamiltonianSpec::ShiftedNumber.trace_power(-1.0, 100),
            Err(Error::Config(_))
        ));
        assert!(HamiltonianSpec::Number.trace_power(-2.0, 100).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = CMatrix::new(2, vec![c(0.5, 0.), c(0.1, 0.2), c(0.1, -0.2), c(0.5, 0.)]).unwrap();
        let rho = DensityMatrix::new(m.clone()).unwrap();
        let back = DensityMatrix::from_json(&rho.to_json()).unwrap();
        assert_eq!(back.to_matrix(), m);
        let err = read_matrix_json("{\"d\": 2,\n \"entries_re\": [1]}").unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
        assert!(err.to_string().contains("line"), "{err}");
        let err = read_matrix_json(r#"{"d":2,"entries_re":[1],"entries_im":[0]}"#).unwrap_err();
        assert!(err.to_string().contains("entries_re"));
    }
}
