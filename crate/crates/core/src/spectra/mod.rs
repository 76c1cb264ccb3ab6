//! Gram matrices, Hermitian eigenvalues and spectral statistics.

mod jacobi;
mod stats;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::signal::{Entries, SignalMatrix};

pub use jacobi::{symmetric_eigenvalues, MAX_SWEEPS, REL_TOL};
pub use stats::{
    eigenvalues_csv, esd, ks_statistic, ks_statistic_against, median, trace_moments, CdfModel,
    EmpiricalCdf, SpectralSummary, SummaryMetadata,
};

/// Tolerance on conjugate symmetry and on the unit diagonal.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// A conjugate-symmetric `p × p` matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    p: usize,
    data: Vec<Complex64>,
}

impl HermitianMatrix {
    /// Validates conjugate symmetry within [`HERMITIAN_TOL`] (relative to the largest entry).
    pub fn new(p: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != p * p {
            return Err(Error::param(format!(
                "{} entries do not form a {p}×{p} matrix",
                data.len()
            )));
        }
        let scale = data.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for i in 0..p {
            for j in i..p {
                let (a, b) = (data[i * p + j], data[j * p + i]);
                if (a - b.conj()).norm() > HERMITIAN_TOL * scale {
                    return Err(Error::Contract(format!(
                        "entry ({i},{j}) = {a} is not the conjugate of ({j},{i}) = {b}"
                    )));
                }
            }
        }
        Ok(Self { p, data })
    }

    pub fn from_real(p: usize, data: &[f64]) -> Result<Self> {
        Self::new(p, data.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn identity(p: usize) -> Self {
        let mut data = vec![Complex64::new(0.0, 0.0); p * p];
        for i in 0..p {
            data[i * p + i] = Complex64::new(1.0, 0.0);
        }
        Self { p, data }
    }

    pub fn size(&self) -> usize {
        self.p
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.p + j]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(|z| z.im == 0.0)
    }

    pub fn trace(&self) -> f64 {
        (0..self.p).map(|i| self.data[i * self.p + i].re).sum()
    }

    /// `‖H‖_F² = Σ |h_ij|²`.
    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Dense product, used for trace-power cross-checks.
    pub fn matmul(&self, other: &Self) -> Vec<Complex64> {
        let p = self.p;
        let mut out = vec![Complex64::new(0.0, 0.0); p * p];
        for i in 0..p {
            for k in 0..p {
                let a = self.data[i * p + k];
                for j in 0..p {
                    out[i * p + j] += a * other.data[k * p + j];
                }
            }
        }
        out
    }

    /// `(1/p) Tr(H^ℓ)` by repeated multiplication.
    pub fn normalized_trace_power(&self, l: u32) -> f64 {
        let p = self.p;
        let mut acc = Self::identity(p);
        for _ in 0..l {
            acc = Self {
                p,
                data: acc.matmul(self),
            };
        }
        acc.trace() / p as f64
    }
}

/// `G = (1/n) Φ Φ*`.
pub fn gram(phi: &SignalMatrix) -> HermitianMatrix {
    let (p, n) = (phi.p, phi.n);
    let inv_n = 1.0 / n as f64;
    let mut data = vec![Complex64::new(0.0, 0.0); p * p];
    match &phi.entries {
        Entries::Real(d) => {
            for i in 0..p {
                let ri = &d[i * n..(i + 1) * n];
                for j in i..p {
                    let rj = &d[j * n..(j + 1) * n];
                    let dot: f64 = ri.iter().zip(rj).map(|(a, b)| a * b).sum();
                    let v = Complex64::new(dot * inv_n, 0.0);
                    data[i * p + j] = v;
                    data[j * p + i] = v;
                }
            }
        }
        Entries::Complex(d) => {
            for i in 0..p {
                let ri = &d[i * n..(i + 1) * n];
                for j in i..p {
                    let rj = &d[j * n..(j + 1) * n];
                    let dot: Complex64 = ri.iter().zip(rj).map(|(a, b)| a * b.conj()).sum();
                    let v = dot * inv_n;
                    if i == j {
                        data[i * p + i] = Complex64::new(v.re, 0.0);
                    } else {
                        data[i * p + j] = v;
                        data[j * p + i] = v.conj();
                    }
                }
            }
        }
    }
    HermitianMatrix { p, data }
}

/// `G_I = √(n/p)(G − I)`; requires a unit diagonal (distinct unit-modulus rows).
pub fn center_scale(g: &HermitianMatrix, n: usize, p: usize) -> Result<HermitianMatrix> {
    if g.p != p {
        return Err(Error::param(format!(
            "matrix has size {}, expected {p}",
            g.p
        )));
    }
    for i in 0..p {
        let d = g.get(i, i);
        if (d - Complex64::new(1.0, 0.0)).norm() > HERMITIAN_TOL {
            return Err(Error::Contract(format!(
                "diagonal entry {i} is {d}, expected 1"
            )));
        }
    }
    let scale = (n as f64 / p as f64).sqrt();
    let mut data: Vec<Complex64> = g.data.iter().map(|z| z * scale).collect();
    for i in 0..p {
        data[i * p + i] = Complex64::new(0.0, 0.0);
    }
    Ok(HermitianMatrix { p, data })
}

/// All eigenvalues of a Hermitian matrix, ascending.
///
/// Real matrices go straight to Jacobi. Complex ones use the real symmetric
/// embedding `[[Re, −Im], [Im, Re]]`, whose spectrum is that of `H` with every
/// eigenvalue doubled; consecutive sorted pairs are averaged back.
pub fn eig_hermitian(h: &HermitianMatrix) -> Result<Vec<f64>> {
    let p = h.p;
    if h.is_real() {
        return symmetric_eigenvalues(h.data.iter().map(|z| z.re).collect(), p);
    }
    let m = 2 * p;
    let mut a = vec![0.0; m * m];
    for i in 0..p {
        for j in 0..p {
            let z = h.data[i * p + j];
            a[i * m + j] = z.re;
            a[(i + p) * m + (j + p)] = z.re;
            a[i * m + (j + p)] = -z.im;
            a[(i + p) * m + j] = z.im;
        }
    }
    let doubled = symmetric_eigenvalues(a, m)?;
    Ok(doubled.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect())
}

/// Residuals of the trace identities `Σλ = Tr H` and `Σλ² = ‖H‖_F²`,
/// relative to `max(|Tr H|, ‖H‖_F, tiny)` and `max(‖H‖_F², tiny)`.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize)]
pub struct IdentityResiduals {
    pub sum_abs: f64,
    pub sum_rel: f64,
    pub sq_rel: f64,
}

impl IdentityResiduals {
    pub fn within(&self, rel_tol: f64) -> bool {
        self.sum_rel <= rel_tol && self.sq_rel <= rel_tol
    }
}

pub fn identity_residuals(h: &HermitianMatrix, eigs: &[f64]) -> IdentityResiduals {
    let tr = h.trace();
    let fro2 = h.frobenius_sq();
    let s1: f64 = eigs.iter().sum();
    let s2: f64 = eigs.iter().map(|x| x * x).sum();
    let tiny = f64::MIN_POSITIVE;
    IdentityResiduals {
        sum_abs: (s1 - tr).abs(),
        sum_rel: (s1 - tr).abs() / tr.abs().max(fro2.sqrt()).max(tiny),
        sq_rel: (s2 - fro2).abs() / fro2.max(tiny),
    }
}
