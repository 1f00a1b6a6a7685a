//! Python bindings. Importable as `entrobound`.

use std::collections::HashMap;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use entrobound_core as eb;
use eb::classical::{self, WeightedBoundParams};
use eb::linalg::{CMatrix, C64};
use eb::qbounds::{self, MomentVariant, RenyiCondition};
use eb::quantum::{self, HamiltonianSpec};
use eb::{LogBase, WeightSequence};

create_exception!(entrobound, EntroboundError, PyValueError, "Domain, parse or configuration error from the library.");

fn err(e: eb::Error) -> PyErr {
    EntroboundError::new_err(e.to_string())
}

fn ham(spec: &str) -> PyResult<HamiltonianSpec> {
    spec.parse().map_err(err)
}

#[pyclass(name = "Distribution", module = "entrobound", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyDistribution {
    inner: eb::DiscreteDistribution,
}

#[pymethods]
impl PyDistribution {
    /// Normalises nonnegative `weights` over labels `0..len(weights)`.
    #[new]
    fn new(weights: Vec<f64>) -> PyResult<Self> {
        Ok(PyDistribution { inner: eb::DiscreteDistribution::new(weights).map_err(err)? })
    }

    #[staticmethod]
    fn geometric(mean: f64, d: usize) -> PyResult<Self> {
        Ok(PyDistribution { inner: eb::DiscreteDistribution::geometric(mean, d).map_err(err)? })
    }

    #[staticmethod]
    fn uniform(d: usize) -> PyResult<Self> {
        Ok(PyDistribution { inner: eb::DiscreteDistribution::uniform(d).map_err(err)? })
    }

    #[staticmethod]
    fn point_mass(n: usize, d: usize) -> PyResult<Self> {
        Ok(PyDistribution { inner: eb::DiscreteDistribution::point_mass(n, d).map_err(err)? })
    }

    #[getter]
    fn probs(&self) -> Vec<f64> {
        self.inner.probs().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn mean(&self) -> f64 {
        self.inner.mean()
    }

    fn shannon_entropy(&self) -> f64 {
        self.inner.shannon_entropy()
    }

    fn renyi_entropy(&self, alpha: f64) -> PyResult<f64> {
        self.inner.renyi_entropy(alpha).map_err(err)
    }

    fn tsallis_entropy(&self, alpha: f64) -> PyResult<f64> {
        self.inner.tsallis_entropy(alpha).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("Distribution(len={}, mean={})", self.inner.len(), self.inner.mean())
    }
}

#[pyclass(name = "DensityMatrix", module = "entrobound", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyDensityMatrix {
    inner: quantum::DensityMatrix,
}

#[pymethods]
impl PyDensityMatrix {
    /// Builds a state from row-major real and optional imaginary parts.
    #[new]
    #[pyo3(signature = (re, im=None))]
    fn new(re: Vec<Vec<f64>>, im: Option<Vec<Vec<f64>>>) -> PyResult<Self> {
        let d = re.len();
        if re.iter().any(|r| r.len() != d) || im.as_ref().is_some_and(|m| m.len() != d || m.iter().any(|r| r.len() != d)) {
            return Err(EntroboundError::new_err("matrix must be square"));
        }
        let data = (0..d * d)
            .map(|k| {
                let (i, j) = (k / d, k % d);
                C64::new(re[i][j], im.as_ref().map_or(0.0, |m| m[i][j]))
            })
            .collect();
        let m = CMatrix::new(d, data).map_err(err)?;
        Ok(PyDensityMatrix { inner: quantum::DensityMatrix::new(m).map_err(err)? })
    }

    #[staticmethod]
    fn from_diagonal(probs: Vec<f64>) -> PyResult<Self> {
        Ok(PyDensityMatrix { inner: quantum::DensityMatrix::from_diagonal(probs).map_err(err)? })
    }

    #[staticmethod]
    fn from_distribution(p: &PyDistribution) -> Self {
        PyDensityMatrix { inner: quantum::DensityMatrix::from_distribution(&p.inner) }
    }

    #[staticmethod]
    fn fock(n: usize, d: usize) -> PyResult<Self> {
        Ok(PyDensityMatrix { inner: quantum::DensityMatrix::fock(n, d).map_err(err)? })
    }

    /// Reads `{"d": .., "entries_re": [..], "entries_im": [..]}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyDensityMatrix { inner: quantum::DensityMatrix::from_json(text).map_err(err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn is_diagonal(&self) -> bool {
        self.inner.is_diagonal()
    }

    fn eigenvalues(&self) -> Vec<f64> {
        self.inner.eigenvalues()
    }

    fn populations(&self) -> Vec<f64> {
        self.inner.populations()
    }

    fn __repr__(&self) -> String {
        format!("DensityMatrix(dim={}, diagonal={})", self.inner.dim(), self.inner.is_diagonal())
    }
}

#[pyclass(name = "BoundReport", module = "entrobound", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyBoundReport {
    inner: eb::BoundReport,
}

#[pymethods]
impl PyBoundReport {
    #[getter]
    fn value(&self) -> f64 {
        self.inner.value
    }

    #[getter]
    fn in_validity_domain(&self) -> bool {
        self.inner.in_validity_domain
    }

    #[getter]
    fn kind(&self) -> String {
        serde_json::to_value(self.inner.kind)
            .ok()
            .and_then(|v| v.as_str().map(String::from))
            .unwrap_or_default()
    }

    #[getter]
    fn terms(&self) -> Vec<(String, f64)> {
        self.inner.terms.iter().map(|t| (t.name.clone(), t.value)).collect()
    }

    #[getter]
    fn params(&self) -> HashMap<String, f64> {
        self.inner.params.iter().cloned().collect()
    }

    #[getter]
    fn diagnostics(&self) -> HashMap<String, f64> {
        self.inner.diagnostics.iter().cloned().collect()
    }

    #[getter]
    fn notes(&self) -> Vec<String> {
        self.inner.notes.clone()
    }

    /// Rescales log-homogeneous reports; `base` is `e`, `bits` or a number.
    fn in_base(&self, base: &str) -> PyResult<Self> {
        let b = LogBase::parse(base).map_err(err)?;
        Ok(PyBoundReport { inner: self.inner.clone().in_base(b) })
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.inner).expect("report serialisation")
    }

    fn __float__(&self) -> f64 {
        self.inner.value
    }

    fn __repr__(&self) -> String {
        format!(
            "BoundReport(kind={}, value={}, in_validity_domain={})",
            self.kind(),
            self.inner.value,
            if self.inner.in_validity_domain { "True" } else { "False" }
        )
    }
}

fn report(r: eb::Result<eb::BoundReport>) -> PyResult<PyBoundReport> {
    r.map(|inner| PyBoundReport { inner }).map_err(err)
}

#[pyfunction]
fn binary_entropy(eps: f64) -> PyResult<f64> {
    eb::binary_entropy(eps).map_err(err)
}

#[pyfunction]
fn total_variation(p: &PyDistribution, q: &PyDistribution) -> f64 {
    eb::total_variation(&p.inner, &q.inner, None)
}

#[pyfunction]
fn fano_bound(eps: f64, energy: f64) -> PyResult<PyBoundReport> {
    report(classical::fano_bound(eps, energy))
}

#[pyfunction]
fn shannon_continuity_bound(eps: f64, energy: f64) -> PyResult<PyBoundReport> {
    report(classical::shannon_continuity_bound(eps, energy))
}

#[pyfunction]
fn extremal_marginal(eps: f64, energy: f64, d: usize) -> PyResult<PyDistribution> {
    Ok(PyDistribution { inner: classical::extremal_marginal(eps, energy, d).map_err(err)? })
}

/// Weighted bound with weights `(i + offset)^kappa`; `kappa = 1` is `w_i = i + offset`.
#[pyfunction]
#[pyo3(signature = (p, q, alpha, beta, kappa=1.0, offset=1))]
fn classical_renyi_tsallis_bound(
    p: &PyDistribution,
    q: &PyDistribution,
    alpha: f64,
    beta: f64,
    kappa: f64,
    offset: u64,
) -> PyResult<PyBoundReport> {
    let w = WeightSequence::power(kappa).map_err(err)?.with_offset(offset);
    report(classical::classical_renyi_tsallis_bound(&p.inner, &q.inner, &WeightedBoundParams::new(alpha, beta, w)))
}

#[pyfunction]
fn vn_continuity_bound(eps: f64, energy: f64) -> PyResult<PyBoundReport> {
    report(qbounds::vn_continuity_bound(eps, energy))
}

#[pyfunction]
fn winter_bound_general(eps: f64, energy: f64) -> PyResult<PyBoundReport> {
    report(qbounds::winter_bound_general(eps, energy))
}

#[pyfunction]
fn winter_bound_number_op(eps: f64, energy: f64) -> PyResult<PyBoundReport> {
    report(qbounds::winter_bound_number_op(eps, energy))
}

#[pyfunction]
fn winter_bound_alpha(eps: f64, energy: f64, alpha: f64) -> PyResult<PyBoundReport> {
    report(qbounds::winter_bound_alpha(eps, energy, alpha))
}

#[pyfunction]
fn tsallis_lipschitz_bound(rho: &PyDensityMatrix, sigma: &PyDensityMatrix, alpha: f64) -> PyResult<PyBoundReport> {
    report(qbounds::tsallis_lipschitz_bound(&rho.inner, &sigma.inner, alpha))
}

/// α > 1 Rényi bound under `tr(Ĥρ), tr(Ĥσ) ≤ energy`.
#[pyfunction]
#[pyo3(signature = (rho, sigma, alpha, energy, hamiltonian="shifted", beta_split=0.5))]
fn renyi_alpha_gt1_bound(
    rho: &PyDensityMatrix,
    sigma: &PyDensityMatrix,
    alpha: f64,
    energy: f64,
    hamiltonian: &str,
    beta_split: f64,
) -> PyResult<PyBoundReport> {
    let cond = RenyiCondition::Hamiltonian { ham: ham(hamiltonian)?, energy, beta_split };
    report(qbounds::renyi_alpha_gt1_bound(&rho.inner, &sigma.inner, alpha, &cond))
}

#[pyfunction]
#[pyo3(signature = (rho, hamiltonian="shifted"))]
fn moment_bound_f1(rho: &PyDensityMatrix, hamiltonian: &str) -> PyResult<PyBoundReport> {
    report(qbounds::moment_bound_f1(&rho.inner, &ham(hamiltonian)?))
}

/// `r = None` selects the half-power form.
#[pyfunction]
#[pyo3(signature = (rho, alpha, r=None, hamiltonian="shifted"))]
fn moment_bound_falpha(rho: &PyDensityMatrix, alpha: f64, r: Option<f64>, hamiltonian: &str) -> PyResult<PyBoundReport> {
    let v = r.map_or(MomentVariant::HalfPower, MomentVariant::General);
    report(qbounds::moment_bound_falpha(&rho.inner, &ham(hamiltonian)?, alpha, v))
}

#[pyfunction]
fn von_neumann_entropy(rho: &PyDensityMatrix) -> f64 {
    quantum::von_neumann_entropy(&rho.inner)
}

#[pyfunction]
fn quantum_renyi(rho: &PyDensityMatrix, alpha: f64) -> PyResult<f64> {
    quantum::quantum_renyi(&rho.inner, alpha).map_err(err)
}

#[pyfunction]
fn quantum_tsallis(rho: &PyDensityMatrix, alpha: f64) -> PyResult<f64> {
    quantum::quantum_tsallis(&rho.inner, alpha).map_err(err)
}

#[pyfunction]
fn trace_distance(rho: &PyDensityMatrix, sigma: &PyDensityMatrix) -> PyResult<f64> {
    quantum::trace_distance(&rho.inner, &sigma.inner).map_err(err)
}

#[pyfunction]
fn fidelity(rho: &PyDensityMatrix, sigma: &PyDensityMatrix) -> PyResult<f64> {
    quantum::fidelity(&rho.inner, &sigma.inner).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (rho, hamiltonian="number"))]
fn energy(rho: &PyDensityMatrix, hamiltonian: &str) -> PyResult<f64> {
    quantum::energy(&rho.inner, &ham(hamiltonian)?).map_err(err)
}

#[pyfunction]
fn passive_state(rho: &PyDensityMatrix) -> PyDensityMatrix {
    PyDensityMatrix { inner: quantum::passive_state(&rho.inner) }
}

#[pyfunction]
fn gibbs_entropy(energy: f64) -> f64 {
    quantum::gibbs_entropy(energy)
}

/// `(lower, upper)` bracket on `β log Z(β)`.
#[pyfunction]
fn beta_log_z(beta: f64) -> PyResult<(f64, f64)> {
    let z = eb::fa::beta_log_z(beta).map_err(err)?;
    Ok((z.lower, z.upper))
}

/// Brackets for `λ_i ∝ (i+1)^{−1/α}` truncated at `d`, as a dict of pairs.
#[pyfunction]
fn divergence_witness(alpha: f64, d: u64) -> PyResult<HashMap<&'static str, (f64, f64)>> {
    let w = qbounds::divergence_witness(alpha, d).map_err(err)?;
    Ok(HashMap::from([
        ("trace_power", w.trace_power),
        ("energy_partial", w.energy_partial),
        ("energy_limit", w.energy_limit),
    ]))
}

/// Haar-rotated random state of dimension `d`, reproducible from `seed`.
#[pyfunction]
fn random_density_matrix(seed: u64, d: usize) -> PyResult<PyDensityMatrix> {
    let mut rng = eb::rng::SplitMix64::new(seed);
    Ok(PyDensityMatrix { inner: eb::sampling::random_density_matrix(&mut rng, d).map_err(err)? })
}

#[pymodule]
#[pyo3(name = "entrobound")]
fn entrobound_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("EntroboundError", m.py().get_type::<EntroboundError>())?;
    m.add_class::<PyDistribution>()?;
    m.add_class::<PyDensityMatrix>()?;
    m.add_class::<PyBoundReport>()?;
    m.add_function(wrap_pyfunction!(binary_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(total_variation, m)?)?;
    m.add_function(wrap_pyfunction!(fano_bound, m)?)?;
    m.add_function(wrap_pyfunction!(shannon_continuity_bound, m)?)?;
    m.add_function(wrap_pyfunction!(extremal_marginal, m)?)?;
    m.add_function(wrap_pyfunction!(classical_renyi_tsallis_bound, m)?)?;
    m.add_function(wrap_pyfunction!(vn_continuity_bound, m)?)?;
    m.add_function(wrap_pyfunction!(winter_bound_general, m)?)?;
    m.add_function(wrap_pyfunction!(winter_bound_number_op, m)?)?;
    m.add_function(wrap_pyfunction!(winter_bound_alpha, m)?)?;
    m.add_function(wrap_pyfunction!(tsallis_lipschitz_bound, m)?)?;
    m.add_function(wrap_pyfunction!(renyi_alpha_gt1_bound, m)?)?;
    m.add_function(wrap_pyfunction!(moment_bound_f1, m)?)?;
    m.add_function(wrap_pyfunction!(moment_bound_falpha, m)?)?;
    m.add_function(wrap_pyfunction!(von_neumann_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_renyi, m)?)?;
    m.add_function(wrap_pyfunction!(quantum_tsallis, m)?)?;
    m.add_function(wrap_pyfunction!(trace_distance, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(energy, m)?)?;
    m.add_function(wrap_pyfunction!(passive_state, m)?)?;
    m.add_function(wrap_pyfunction!(gibbs_entropy, m)?)?;
    m.add_function(wrap_pyfunction!(beta_log_z, m)?)?;
    m.add_function(wrap_pyfunction!(divergence_witness, m)?)?;
    m.add_function(wrap_pyfunction!(random_density_matrix, m)?)?;
    Ok(())
}
