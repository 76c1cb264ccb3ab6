use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laws::LawSpec;
use crate::signal::SampleMode;

/// A distribution function, with left limits for models that jump.
pub trait CdfModel {
    fn cdf(&self, x: f64) -> f64;

    /// `F(x−)`; equal to `F(x)` for continuous laws.
    fn cdf_left(&self, x: f64) -> f64 {
        self.cdf(x)
    }
}

impl CdfModel for LawSpec {
    fn cdf(&self, x: f64) -> f64 {
        LawSpec::cdf(self, x)
    }
}

/// Empirical distribution function of a sample.
#[derive(Clone, Debug)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(mut values: Vec<f64>) -> Self {
        values.sort_by(f64::total_cmp);
        Self { sorted: values }
    }
}

impl CdfModel for EmpiricalCdf {
    fn cdf(&self, x: f64) -> f64 {
        esd(&self.sorted, x)
    }

    fn cdf_left(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v < x) as f64 / self.sorted.len() as f64
    }
}

/// Fraction of (sorted) eigenvalues `≤ x`.
pub fn esd(eigs: &[f64], x: f64) -> f64 {
    if eigs.is_empty() {
        return 0.0;
    }
    eigs.partition_point(|&v| v <= x) as f64 / eigs.len() as f64
}

/// Kolmogorov–Smirnov distance between the ESD of `eigs` and `law`.
pub fn ks_statistic(eigs: &[f64], law: &LawSpec) -> f64 {
    ks_statistic_against(eigs, law)
}

/// `sup_x |M_emp(x) − F(x)|`, evaluated exactly at the jump points of the
/// empirical step function: at a jump `x` holding eigenvalues `j+1..=j′`
/// both `|j′/p − F(x)|` and `|j/p − F(x−)|` are compared.
pub fn ks_statistic_against(eigs: &[f64], model: &impl CdfModel) -> f64 {
    let p = eigs.len();
    if p == 0 {
        return 0.0;
    }
    let mut sorted = eigs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let pf = p as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < p {
        let x = sorted[i];
        let mut j = i + 1;
        while j < p && sorted[j] == x {
            j += 1;
        }
        let below = i as f64 / pf;
        let at = j as f64 / pf;
        d = d
            .max((at - model.cdf(x)).abs())
            .max((below - model.cdf_left(x)).abs());
        i = j;
    }
    d
}

/// `A_ℓ = (1/p) Σ λ^ℓ` for `ℓ = 1..=l_max`.
pub fn trace_moments(eigs: &[f64], l_max: u32) -> Result<Vec<(u32, f64)>> {
    if l_max == 0 {
        return Err(Error::param("l_max must be at least 1"));
    }
    let p = eigs.len() as f64;
    Ok((1..=l_max)
        .map(|l| (l, eigs.iter().map(|x| x.powi(l as i32)).sum::<f64>() / p))
        .collect())
}

/// Median (mean of the two central values for even length); `NaN` when empty.
pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

/// Eigenvalue CSV: header `lambda`, one value per line with 17 significant digits.
pub fn eigenvalues_csv(eigs: &[f64]) -> String {
    let mut out = String::from("lambda\n");
    for x in eigs {
        let _ = writeln!(out, "{x:.16e}");
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct SummaryMetadata {
    pub code_label: String,
    pub n: usize,
    pub p: usize,
    pub seed: u64,
    pub stream_index: u64,
    pub mode: SampleMode,
}

/// One spectrum with its distance to a reference law and its trace moments.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralSummary {
    pub eigenvalues: Vec<f64>,
    pub ks_to_law: f64,
    pub moments: Vec<(u32, f64)>,
    pub law: LawSpec,
    pub metadata: SummaryMetadata,
}
