use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::ClosedPath;
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::signal::char_map;

/// Largest `N^v · ℓ · n` an exact expectation may cost.
pub const EXPECTATION_BUDGET: f64 = 1e9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MapMode {
    /// Every map `V_γ → ε(𝒞)`.
    AllMaps,
    /// Only maps sending distinct labels to distinct codewords.
    Injective,
}

/// Exact average of `ω_γ(s) = Π_j ⟨s(γ(j)), s(γ(j+1))⟩` over maps `s` from the
/// labels of `γ` into the character images of all codewords.
pub fn expect_omega(code: &LinearCode, path: &ClosedPath, mode: MapMode) -> Result<Complex64> {
    let n = code.n();
    let l = path.len();
    let big_n = code.num_codewords().ok_or_else(|| {
        Error::resource(format!(
            "{} has too many codewords to enumerate",
            code.label()
        ))
    })?;
    let canon = path.canonical();
    let v = canon.vertex_count();
    let cost = (big_n as f64).powi(v as i32) * l as f64 * n as f64;
    if cost > EXPECTATION_BUDGET || (big_n as f64).powi(2) > EXPECTATION_BUDGET {
        return Err(Error::resource(format!(
            "expectation of {path} over {}: N^v·ℓ·n = {cost:.3e} exceeds {EXPECTATION_BUDGET:e}",
            code.label()
        )));
    }
    if mode == MapMode::Injective && (v as u64) > big_n {
        return Err(Error::param(format!(
            "no injective map from {v} labels into {big_n} codewords"
        )));
    }
    let big_n = big_n as usize;
    let images: Vec<Vec<Complex64>> = (0..big_n as u64)
        .map(|i| {
            Ok(char_map(
                &code.encode(&code.message_from_index(i))?,
                code.q(),
            ))
        })
        .collect::<Result<_>>()?;
    // ⟨x, y⟩ = Σ_t x_t · conj(y_t)
    let mut inner = vec![Complex64::new(0.0, 0.0); big_n * big_n];
    for i in 0..big_n {
        for j in 0..big_n {
            inner[i * big_n + j] = images[i]
                .iter()
                .zip(&images[j])
                .map(|(x, y)| x * y.conj())
                .sum();
        }
    }
    if code.q() == 2 {
        // ±1 sums are exact integers
        for z in &mut inner {
            *z = Complex64::new(z.re.round(), 0.0);
        }
    }
    let steps: Vec<(usize, usize)> = canon
        .labels()
        .windows(2)
        .map(|w| (w[0] as usize - 1, w[1] as usize - 1))
        .collect();
    let mut assign = vec![0usize; v];
    let mut total = Complex64::new(0.0, 0.0);
    let mut count = 0u64;
    loop {
        let admissible = mode == MapMode::AllMaps || {
            let mut seen = assign.clone();
            seen.sort_unstable();
            seen.windows(2).all(|w| w[0] != w[1])
        };
        if admissible {
            let mut prod = Complex64::new(1.0, 0.0);
            for &(a, b) in &steps {
                prod *= inner[assign[a] * big_n + assign[b]];
            }
            total += prod;
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == v {
                return Ok(total / count as f64);
            }
            assign[i] += 1;
            if assign[i] < big_n {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}
