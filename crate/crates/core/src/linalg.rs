//! Dense complex matrices and a Hermitian eigensolver.

use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};

pub type C64 = Complex64;

/// Square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CMatrix {
    d: usize,
    data: Vec<C64>,
}

/// Eigenvalues in nonincreasing order and the matching eigenvectors as
/// columns of a unitary matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

const JACOBI_TOL: f64 = 1e-14;

impl CMatrix {
    pub fn new(d: usize, data: Vec<C64>) -> Result<Self> {
        if d == 0 {
            return Err(domain("matrix dimension must be >= 1"));
        }
        if data.len() != d * d {
            return Err(domain(format!("expected {} entries for d={d}, got {}", d * d, data.len())));
        }
        if data.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(domain("matrix entries must be finite"));
        }
        Ok(CMatrix { d, data })
    }

    pub fn zeros(d: usize) -> Self {
        CMatrix {
            d,
            data: vec![C64::new(0.0, 0.0); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        Self::from_diagonal(&vec![1.0; d])
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, v) in diag.iter().enumerate() {
            m.data[i * m.d + i] = C64::new(*v, 0.0);
        }
        m
    }

    /// Rank-one projector `|v⟩⟨v|` (the vector is not normalised).
    pub fn outer(v: &[C64]) -> Self {
        let d = v.len();
        let mut m = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.data[i * d + j] = v[i] * v[j].conj();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, z: C64) {
        self.data[i * self.d + j] = z;
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.d).map(|i| self.get(i, j)).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.d).map(|i| self.get(i, i)).collect()
    }

    pub fn adjoint(&self) -> Self {
        let d = self.d;
        let mut m = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.data[j * d + i] = self.data[i * d + j].conj();
            }
        }
        m
    }

    pub fn scale(&self, k: f64) -> Self {
        CMatrix {
            d: self.d,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn trace(&self) -> C64 {
        self.diagonal().into_iter().sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |A_ij − conj(A_ji)|`.
    pub fn hermitian_defect(&self) -> f64 {
        let d = self.d;
        let mut worst = 0.0f64;
        for i in 0..d {
            for j in i..d {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// `max |A_ij − B_ij|`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    fn off_diagonal_norm(&self) -> f64 {
        let d = self.d;
        let mut s = 0.0;
        for i in 0..d {
            for j in 0..d {
                if i != j {
                    s += self.data[i * d + j].norm_sqr();
                }
            }
        }
        s.sqrt()
    }

    /// Cyclic complex Jacobi. Each step removes `A_pq` with `U = D·R`, where
    /// `D = diag(1, e^{−iφ})` makes the pivot real and `R` is a real rotation.
    pub fn eigh(&self) -> Result<Eigh> {
        let defect = self.hermitian_defect();
        let scale = self.frobenius_norm().max(1.0);
        if defect > 1e-10 * scale {
            return Err(Error::Numerical {
                message: "eigh needs a Hermitian matrix".into(),
                residual: defect,
            });
        }
        let d = self.d;
        let mut a = self.clone();
        for i in 0..d {
            let z = a.get(i, i);
            a.set(i, i, C64::new(z.re, 0.0));
        }
        let mut v = CMatrix::identity(d);
        let target = JACOBI_TOL * a.frobenius_norm();
        let cap = 100 * d * d;
        let mut rotations = 0usize;

        while a.off_diagonal_norm() > target {
            if rotations >= cap {
                return Err(Error::Numerical {
                    message: format!("Jacobi did not converge within {cap} rotations"),
                    residual: a.off_diagonal_norm(),
                });
            }
            for p in 0..d {
                for q in p + 1..d {
                    let g = a.get(p, q);
                    let mag = g.norm();
                    if mag == 0.0 {
                        continue;
                    }
                    rotations += 1;
                    let phase = (g / mag).conj();
                    let theta = (a.get(q, q).re - a.get(p, p).re) / (2.0 * mag);
                    let t = if theta.abs() > 1e150 {
                        0.5 / theta
                    } else {
                        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                    };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    let u_pp = C64::new(c, 0.0);
                    let u_pq = C64::new(s, 0.0);
                    let u_qp = phase * -s;
                    let u_qq = phase * c;

                    for k in 0..d {
                        let (akp, akq) = (a.get(k, p), a.get(k, q));
                        a.set(k, p, akp * u_pp + akq * u_qp);
                        a.set(k, q, akp * u_pq + akq * u_qq);
                        let (vkp, vkq) = (v.get(k, p), v.get(k, q));
                        v.set(k, p, vkp * u_pp + vkq * u_qp);
                        v.set(k, q, vkp * u_pq + vkq * u_qq);
                    }
                    for k in 0..d {
                        let (apk, aqk) = (a.get(p, k), a.get(q, k));
                        a.set(p, k, u_pp.conj() * apk + u_qp.conj() * aqk);
                        a.set(q, k, u_pq.conj() * apk + u_qq.conj() * aqk);
                    }
                    let zero = C64::new(0.0, 0.0);
                    a.set(p, q, zero);
                    a.set(q, p, zero);
                    a.set(p, p, C64::new(a.get(p, p).re, 0.0));
                    a.set(q, q, C64::new(a.get(q, q).re, 0.0));
                }
            }
        }

        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&i, &j| a.get(j, j).re.total_cmp(&a.get(i, i).re));
        let values = order.iter().map(|&i| a.get(i, i).re).collect();
        let mut vectors = CMatrix::zeros(d);
        for (col, &src) in order.iter().enumerate() {
            for k in 0..d {
                vectors.set(k, col, v.get(k, src));
            }
        }
        Ok(Eigh { values, vectors })
    }
}

impl Eigh {
    /// `V·diag(f(λ))·V†`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let d = self.values.len();
        let fl: Vec<f64> = self.values.iter().map(|l| f(*l)).collect();
        let mut m = CMatrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let mut z = C64::new(0.0, 0.0);
                for k in 0..d {
                    z += self.vectors.get(i, k) * fl[k] * self.vectors.get(j, k).conj();
                }
                m.data[i * d + j] = z;
            }
        }
        m
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.d, rhs.d, "dimension mismatch");
        let d = self.d;
        let mut m = CMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == C64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    m.data[i * d + j] += a * rhs.data[k * d + j];
                }
            }
        }
        m
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;

    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.d, rhs.d, "dimension mismatch");
        CMatrix {
            d: self.d,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;

    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.d, rhs.d, "dimension mismatch");
        CMatrix {
            d: self.d,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}
