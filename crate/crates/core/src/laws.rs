//! Reference spectral laws: Wigner's semicircle and Marchenko–Pastur.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::adaptive_simpson;

/// Absolute tolerance of the Marchenko–Pastur CDF quadrature.
pub const MP_CDF_TOL: f64 = 1e-10;

/// Which limiting law an empirical spectrum is compared against.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LawSpec {
    Semicircle,
    MarchenkoPastur { y: f64 },
}

fn check_ratio(y: f64) -> Result<()> {
    if y > 0.0 && y < 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!(
            "Marchenko–Pastur ratio must lie in (0,1), got {y}"
        )))
    }
}

impl LawSpec {
    pub fn marchenko_pastur(y: f64) -> Result<Self> {
        check_ratio(y)?;
        Ok(LawSpec::MarchenkoPastur { y })
    }

    /// Closed support `[lo, hi]`.
    pub fn support(&self) -> (f64, f64) {
        match *self {
            LawSpec::Semicircle => (-2.0, 2.0),
            LawSpec::MarchenkoPastur { y } => mp_edges(y),
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        match *self {
            LawSpec::Semicircle => sc_pdf(x),
            LawSpec::MarchenkoPastur { y } => mp_pdf_unchecked(x, y),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            LawSpec::Semicircle => sc_cdf(x),
            LawSpec::MarchenkoPastur { y } => mp_cdf_unchecked(x, y),
        }
    }

    pub fn moment(&self, l: u32) -> f64 {
        match *self {
            LawSpec::Semicircle => sc_moment(l),
            LawSpec::MarchenkoPastur { y } => mp_moment_unchecked(l, y),
        }
    }

    pub fn name(&self) -> String {
        match *self {
            LawSpec::Semicircle => "semicircle".to_string(),
            LawSpec::MarchenkoPastur { y } => format!("marchenko-pastur(y={y})"),
        }
    }
}

/// Semicircle density `√(4 − x²)/(2π)` on `[−2, 2]`.
pub fn sc_pdf(x: f64) -> f64 {
    if x.abs() >= 2.0 {
        0.0
    } else {
        (4.0 - x * x).sqrt() / (2.0 * PI)
    }
}

/// Semicircle CDF `1/2 + x√(4 − x²)/(4π) + arcsin(x/2)/π`.
pub fn sc_cdf(x: f64) -> f64 {
    if x <= -2.0 {
        0.0
    } else if x >= 2.0 {
        1.0
    } else {
        0.5 + x * (4.0 - x * x).sqrt() / (4.0 * PI) + (x / 2.0).asin() / PI
    }
}

/// Catalan number `C_n = binom(2n, n)/(n + 1)`.
pub fn catalan(n: u32) -> u64 {
    // C_{i+1} = C_i · 2(2i+1)/(i+2)
    (0..n).fold(1u64, |c, i| c * 2 * (2 * i as u64 + 1) / (i as u64 + 2))
}

/// `ℓ`-th semicircle moment: 0 for odd `ℓ`, `C_{ℓ/2}` for even `ℓ`.
pub fn sc_moment(l: u32) -> f64 {
    if l % 2 == 1 {
        0.0
    } else {
        catalan(l / 2) as f64
    }
}

fn mp_edges(y: f64) -> (f64, f64) {
    let r = y.sqrt();
    ((1.0 - r) * (1.0 - r), (1.0 + r) * (1.0 + r))
}

fn mp_pdf_unchecked(x: f64, y: f64) -> f64 {
    let (a, b) = mp_edges(y);
    if x <= a || x >= b {
        return 0.0;
    }
    ((b - x) * (x - a)).sqrt() / (2.0 * PI * x * y)
}

/// Marchenko–Pastur density `√((b − x)(x − a))/(2πxy)` on `[a, b]`.
pub fn mp_pdf(x: f64, y: f64) -> Result<f64> {
    check_ratio(y)?;
    Ok(mp_pdf_unchecked(x, y))
}

fn mp_cdf_unchecked(x: f64, y: f64) -> f64 {
    let (a, b) = mp_edges(y);
    if x <= a {
        return 0.0;
    }
    if x >= b {
        return 1.0;
    }
    let width = b - a;
    // x = a + u² (or b − u²) turns the square-root edge into a smooth integrand
    let mid = 0.5 * (a + b);
    if x <= mid {
        let g = |u: f64| {
            let u2 = u * u;
            2.0 * u2 * (width - u2).max(0.0).sqrt() / (2.0 * PI * y * (a + u2))
        };
        adaptive_simpson(g, 0.0, (x - a).sqrt(), MP_CDF_TOL).clamp(0.0, 1.0)
    } else {
        let g = |u: f64| {
            let u2 = u * u;
            2.0 * u2 * (width - u2).max(0.0).sqrt() / (2.0 * PI * y * (b - u2))
        };
        (1.0 - adaptive_simpson(g, 0.0, (b - x).sqrt(), MP_CDF_TOL)).clamp(0.0, 1.0)
    }
}

/// Marchenko–Pastur CDF by adaptive quadrature of the density.
pub fn mp_cdf(x: f64, y: f64) -> Result<f64> {
    check_ratio(y)?;
    Ok(mp_cdf_unchecked(x, y))
}

fn binomial_f64(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn mp_moment_unchecked(l: u32, y: f64) -> f64 {
    if l == 0 {
        return 1.0;
    }
    (0..l)
        .map(|j| y.powi(j as i32) / (j + 1) as f64 * binomial_f64(l, j) * binomial_f64(l - 1, j))
        .sum()
}

/// `Σ_{j<ℓ} y^j/(j+1) · binom(ℓ, j) · binom(ℓ−1, j)`.
pub fn mp_moment(l: u32, y: f64) -> Result<f64> {
    check_ratio(y)?;
    Ok(mp_moment_unchecked(l, y))
}
