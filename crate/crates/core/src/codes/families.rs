use super::{CodeFamily, LinearCode};
use crate::error::{Error, Result};
use crate::field::ExtField;

/// Binary Gold code of length `2^m − 1` and dimension `2m` (odd `m ≥ 5`).
///
/// Row `i < m` is `t ↦ Tr(α^i · α^t)`, row `m + i` is `t ↦ Tr(α^i · α^{3t})`,
/// i.e. the span of all shifts of the m-sequence and of its decimation by 3.
pub fn make_gold(m: u32) -> Result<LinearCode> {
    if m < 5 || m.is_multiple_of(2) {
        return Err(Error::param(format!("Gold codes need odd m >= 5, got {m}")));
    }
    let field = ExtField::with_default_modulus(m)?;
    let n = (1usize << m) - 1;
    let alpha = field.alpha();
    // traces[e] = Tr(α^e)
    let mut traces = Vec::with_capacity(n);
    let mut cur = field.one();
    for _ in 0..n {
        traces.push(cur.trace().value as u32);
        cur = cur.mul(&alpha)?;
    }
    let m = m as usize;
    let mut rows = Vec::with_capacity(2 * m);
    for i in 0..m {
        rows.push((0..n).map(|t| traces[(i + t) % n]).collect());
    }
    for i in 0..m {
        rows.push((0..n).map(|t| traces[(i + 3 * t) % n]).collect());
    }
    LinearCode::with_family(
        2,
        rows,
        format!("gold m={m} [{n},{}]", 2 * m),
        CodeFamily::Gold { m: m as u32 },
    )
}

/// First-order Reed–Muller code `RM(1, m)`: length `2^m`, dimension `m + 1`.
pub fn make_rm1(m: u32) -> Result<LinearCode> {
    if m < 3 {
        return Err(Error::param(format!("RM(1,m) needs m >= 3, got {m}")));
    }
    if m > 20 {
        return Err(Error::param(format!("RM(1,m) with m = {m} is too long")));
    }
    let n = 1usize << m;
    let mut rows = vec![vec![1u32; n]];
    for bit in 0..m {
        rows.push((0..n).map(|t| ((t >> bit) & 1) as u32).collect());
    }
    LinearCode::with_family(
        2,
        rows,
        format!("rm1 m={m} [{n},{}]", m + 1),
        CodeFamily::ReedMuller1 { m },
    )
}

/// The binary `[n, n−1]` code of all even-weight words. Its dual is the
/// repetition code, so the dual distance is `n`.
pub fn make_even_weight(n: usize) -> Result<LinearCode> {
    if n < 3 {
        return Err(Error::param(format!(
            "even-weight code needs n >= 3, got {n}"
        )));
    }
    let rows = (0..n - 1)
        .map(|i| {
            let mut row = vec![0u32; n];
            row[i] = 1;
            row[n - 1] = 1;
            row
        })
        .collect();
    LinearCode::with_family(
        2,
        rows,
        format!("even n={n} [{n},{}]", n - 1),
        CodeFamily::EvenWeight { n },
    )
}
