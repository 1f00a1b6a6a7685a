//! Random instances for dominance and structural checks.
//!
//! Probability vectors are normalised exponentials (a flat Dirichlet draw),
//! optionally multiplied by a geometric profile `r^k` so that mean
//! constraints can be met; a mean bound is then enforced by rejection.

use crate::dist::{DiscreteDistribution, JointDistribution};
use crate::error::{domain, Result};
use crate::linalg::{CMatrix, C64};
use crate::quantum::DensityMatrix;
use crate::rng::SplitMix64;

/// Rejection attempts before a mean-constrained draw gives up.
pub const MAX_REJECTIONS: usize = 10_000;

/// Normalised exponentials times `decay^k`. `decay = 1` is a flat Dirichlet draw.
pub fn random_probs(rng: &mut SplitMix64, d: usize, decay: f64) -> Vec<f64> {
    let mut w = Vec::with_capacity(d);
    let mut profile = 1.0;
    for _ in 0..d {
        w.push(rng.exponential() * profile);
        profile *= decay;
    }
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= total);
    w
}

pub fn random_distribution(rng: &mut SplitMix64, d: usize) -> DiscreteDistribution {
    DiscreteDistribution::new(random_probs(rng, d, 1.0)).expect("exponential weights are positive")
}

/// Draw on `{0..d-1}` with mean at most `max_mean`. The decay ratio is drawn
/// uniformly up to the one whose geometric mean is `2·max_mean`.
pub fn random_mean_constrained(rng: &mut SplitMix64, d: usize, max_mean: f64) -> Result<Vec<f64>> {
    if d < 1 || !(max_mean > 0.0) {
        return Err(domain(format!("need d >= 1 and mean bound > 0, got d={d}, E={max_mean}")));
    }
    let r_max = 2.0 * max_mean / (1.0 + 2.0 * max_mean);
    for _ in 0..MAX_REJECTIONS {
        let r = rng.uniform(0.0, r_max);
        let p = random_probs(rng, d, r);
        let mean: f64 = p.iter().enumerate().map(|(k, x)| k as f64 * x).sum();
        if mean <= max_mean {
            return Ok(p);
        }
    }
    Err(domain(format!("no draw with mean <= {max_mean} after {MAX_REJECTIONS} attempts")))
}

/// Joint law with `X` mean-constrained and `Y = X` except with probability
/// `t ~ U(0,1)`, in which case `Y` follows a random row-dependent law.
pub fn random_fano_joint(rng: &mut SplitMix64, d: usize, max_mean: f64) -> Result<JointDistribution> {
    let px = random_mean_constrained(rng, d, max_mean)?;
    let t = rng.next_f64();
    let mut cells = vec![0.0; d * d];
    for x in 0..d {
        let q = random_probs(rng, d, 1.0);
        for y in 0..d {
            let stay = if x == y { 1.0 - t } else { 0.0 };
            cells[x * d + y] = px[x] * (stay + t * q[y]);
        }
    }
    JointDistribution::new(cells, d)
}

/// Perturbed pair `(p, (1−ε)p + εq)` with `p, q` flat Dirichlet draws and
/// `ε ~ U(0,1)`. Returns the pair and `ε`.
pub fn perturbed_pair(rng: &mut SplitMix64, d: usize) -> (DiscreteDistribution, DiscreteDistribution, f64) {
    let p = random_probs(rng, d, 1.0);
    let q = random_probs(rng, d, 1.0);
    let eps = rng.next_f64();
    let pq: Vec<f64> = p.iter().zip(&q).map(|(a, b)| (1.0 - eps) * a + eps * b).collect();
    (
        DiscreteDistribution::new(p).expect("positive"),
        DiscreteDistribution::new(pq).expect("positive"),
        eps,
    )
}

fn ginibre(rng: &mut SplitMix64, d: usize) -> Vec<C64> {
    (0..d * d).map(|_| C64::new(rng.normal(), rng.normal())).collect()
}

/// Haar-like unitary: Gram–Schmidt on the columns of a complex Gaussian matrix.
pub fn random_unitary(rng: &mut SplitMix64, d: usize) -> CMatrix {
    let g = ginibre(rng, d);
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut v: Vec<C64> = (0..d).map(|i| g[i * d + j]).collect();
        // two passes keep the columns orthogonal to machine precision
        for _ in 0..2 {
            for u in &cols {
                let dot: C64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                v.iter_mut().zip(u).for_each(|(x, a)| *x -= dot * a);
            }
        }
        let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= n);
        cols.push(v);
    }
    let mut u = CMatrix::zeros(d);
    for (j, c) in cols.iter().enumerate() {
        for (i, z) in c.iter().enumerate() {
            u.set(i, j, *z);
        }
    }
    u
}

/// `U·diag(p)·U†`, Hermitised entrywise.
pub fn rotate(probs: &[f64], u: &CMatrix) -> Result<DensityMatrix> {
    let m = &(u * &CMatrix::from_diagonal(probs)) * &u.adjoint();
    DensityMatrix::new(hermitise(&m))
}

fn hermitise(m: &CMatrix) -> CMatrix {
    let d = m.dim();
    let mut h = CMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            h.set(i, j, (m.get(i, j) + m.get(j, i).conj()) * 0.5);
        }
    }
    h
}

/// `G·G†/tr(G·G†)` with `G` complex Gaussian.
pub fn random_density_matrix(rng: &mut SplitMix64, d: usize) -> Result<DensityMatrix> {
    let g = CMatrix::new(d, ginibre(rng, d))?;
    let m = &g * &g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::new(hermitise(&m.scale(1.0 / tr)))
}

/// Diagonal state with `Σ n·p_n ≤ max_energy` on `{0..d-1}`.
pub fn random_diagonal_state(rng: &mut SplitMix64, d: usize, max_energy: f64) -> Result<DensityMatrix> {
    DensityMatrix::from_diagonal(random_mean_constrained(rng, d, max_energy)?)
}
