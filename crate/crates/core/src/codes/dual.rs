use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Serialize, Serializer};

use super::{rank_over, LinearCode};
use crate::error::{Error, Result};

/// Upper limit on the number of candidate column subsets examined per size.
pub const SEARCH_BUDGET: u64 = 100_000_000;

/// Longest code handled by the generic subset search (`q > 2`).
const GENERIC_MAX_LEN: usize = 64;

/// Dual distance: either exact, or a certified lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualDistance {
    Exact(usize),
    AtLeast(usize),
}

impl DualDistance {
    /// The exact value or the certified lower bound.
    pub fn value(&self) -> usize {
        match *self {
            DualDistance::Exact(d) | DualDistance::AtLeast(d) => d,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, DualDistance::Exact(_))
    }

    /// True when the dual distance is certainly at least `d`.
    pub fn certifies_at_least(&self, d: usize) -> bool {
        self.value() >= d
    }
}

impl fmt::Display for DualDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualDistance::Exact(d) => write!(f, "={d}"),
            DualDistance::AtLeast(d) => write!(f, "≥{d}"),
        }
    }
}

impl Serialize for DualDistance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Advance `idx` to the next `k`-combination of `0..n` in lexicographic order.
fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn binary_rank(cols: impl Iterator<Item = u128>) -> usize {
    let mut basis: Vec<u128> = Vec::new();
    for mut v in cols {
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Exact dual distance when a dependent set of at most `bound` columns
/// exists, otherwise the certificate `≥ bound + 1`.
///
/// The dual distance is the smallest number of linearly dependent columns of
/// the generator matrix. For binary codes sizes 1–5 use hashing of column
/// sums (pair sums against single columns and against each other, triple sums
/// against pair sums), so `n = 2047` is cheap up to size 4. Searches whose
/// candidate count exceeds [`SEARCH_BUDGET`] stop with a lower bound.
pub fn dual_distance_status(code: &LinearCode, bound: usize) -> Result<DualDistance> {
    if bound < 2 {
        return Err(Error::param(format!(
            "dual distance bound must be >= 2, got {bound}"
        )));
    }
    match code.binary_columns() {
        Some(cols) => Ok(binary_dual_distance(&cols, bound)),
        None => generic_dual_distance(code, bound),
    }
}

fn binary_dual_distance(cols: &[u128], bound: usize) -> DualDistance {
    let n = cols.len();
    if cols.contains(&0) {
        return DualDistance::Exact(1);
    }
    let mut singles: HashMap<u128, usize> = HashMap::with_capacity(n);
    for (t, &c) in cols.iter().enumerate() {
        if singles.insert(c, t).is_some() {
            return DualDistance::Exact(2);
        }
    }
    if bound < 3 {
        return DualDistance::AtLeast(3);
    }
    // columns are distinct and nonzero, so g_a + g_b hits neither g_a nor g_b
    for a in 0..n {
        for b in a + 1..n {
            if singles.contains_key(&(cols[a] ^ cols[b])) {
                return DualDistance::Exact(3);
            }
        }
    }
    if bound < 4 {
        return DualDistance::AtLeast(4);
    }
    // any collision of pair sums comes from disjoint pairs once d ≥ 4
    let mut pairs: HashSet<u128> = HashSet::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            if !pairs.insert(cols[a] ^ cols[b]) {
                return DualDistance::Exact(4);
            }
        }
    }
    if bound < 5 {
        return DualDistance::AtLeast(5);
    }
    if binomial(n as u64, 3) > SEARCH_BUDGET {
        return DualDistance::AtLeast(5);
    }
    // a triple sum equal to a pair sum overlaps it only if d ≤ 3
    for a in 0..n {
        for b in a + 1..n {
            let ab = cols[a] ^ cols[b];
            for c in b + 1..n {
                if pairs.contains(&(ab ^ cols[c])) {
                    return DualDistance::Exact(5);
                }
            }
        }
    }
    drop(pairs);
    for size in 6..=bound {
        if size > n {
            return DualDistance::AtLeast(size);
        }
        if binomial(n as u64, size as u64) > SEARCH_BUDGET {
            return DualDistance::AtLeast(size);
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if binary_rank(idx.iter().map(|&i| cols[i])) < size {
                return DualDistance::Exact(size);
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    DualDistance::AtLeast(bound + 1)
}

fn generic_dual_distance(code: &LinearCode, bound: usize) -> Result<DualDistance> {
    let n = code.n();
    if n > GENERIC_MAX_LEN {
        return Err(Error::param(format!(
            "generic dual-distance search supports n <= {GENERIC_MAX_LEN}, got {n}"
        )));
    }
    let cols = code.columns();
    for size in 1..=bound {
        if size > n {
            return Ok(DualDistance::AtLeast(size));
        }
        if binomial(n as u64, size as u64) > SEARCH_BUDGET {
            return Ok(DualDistance::AtLeast(size));
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let subset: Vec<Vec<u32>> = idx.iter().map(|&i| cols[i].clone()).collect();
            if rank_over(code.field(), &subset) < size {
                return Ok(DualDistance::Exact(size));
            }
            if !next_combination(&mut idx, n) {
                break;
            }
        }
    }
    Ok(DualDistance::AtLeast(bound + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_even_weight, make_gold, make_rm1};

    /// Minimum weight of a nonzero dual codeword by enumerating all
    /// `x ∈ F_2^n` with `G x = 0` (small `n` only).
    fn dual_min_weight_bruteforce(code: &LinearCode) -> usize {
        let cols = code.binary_columns().unwrap();
        let n = cols.len();
        (1u64..(1 << n))
            .filter(|x| {
                cols.iter()
                    .enumerate()
                    .filter(|(t, _)| x >> t & 1 == 1)
                    .fold(0u128, |acc, (_, &c)| acc ^ c)
                    == 0
            })
            .map(|x| x.count_ones() as usize)
            .min()
            .unwrap_or(usize::MAX)
    }

    #[test]
    fn shipped_codes() {
        assert_eq!(
            dual_distance_status(&make_gold(5).unwrap(), 5).unwrap(),
            DualDistance::Exact(5)
        );
        assert_eq!(
            dual_distance_status(&make_rm1(3).unwrap(), 5).unwrap(),
            DualDistance::Exact(4)
        );
        let ev = make_even_weight(5).unwrap();
        assert_eq!(
            dual_distance_status(&ev, 4).unwrap(),
            DualDistance::AtLeast(5)
        );
        assert_eq!(
            dual_distance_status(&ev, 5).unwrap(),
            DualDistance::Exact(5)
        );
        let ev7 = make_even_weight(7).unwrap();
        assert_eq!(
            dual_distance_status(&ev7, 8).unwrap(),
            DualDistance::Exact(7)
        );
    }

    #[test]
    fn agrees_with_dual_enumeration() {
        for code in [
            make_rm1(3).unwrap(),
            make_rm1(4).unwrap(),
            make_even_weight(6).unwrap(),
        ] {
            let d = dual_min_weight_bruteforce(&code);
            assert_eq!(
                dual_distance_status(&code, 8).unwrap(),
                DualDistance::Exact(d),
                "{}",
                code.label()
            );
        }
    }

    #[test]
    fn monotone_in_bound() {
        let code = make_rm1(4).unwrap();
        let d = dual_distance_status(&code, 4).unwrap();
        assert_eq!(d, DualDistance::Exact(4));
        for bound in 4..8 {
            assert_eq!(dual_distance_status(&code, bound).unwrap(), d);
        }
        assert_eq!(
            dual_distance_status(&code, 3).unwrap(),
            DualDistance::AtLeast(4)
        );
    }

    #[test]
    fn small_dependencies() {
        let zero_col = LinearCode::new(2, vec![vec![1, 0, 1], vec![0, 0, 1]], "z").unwrap();
        assert_eq!(
            dual_distance_status(&zero_col, 5).unwrap(),
            DualDistance::Exact(1)
        );
        let repeated = LinearCode::new(2, vec![vec![1, 1, 0], vec![0, 0, 1]], "r").unwrap();
        assert_eq!(
            dual_distance_status(&repeated, 5).unwrap(),
            DualDistance::Exact(2)
        );
        let hamming = LinearCode::new(
            2,
            vec![
                vec![1, 0, 1, 0, 1, 0, 1],
                vec![0, 1, 1, 0, 0, 1, 1],
                vec![0, 0, 0, 1, 1, 1, 1],
            ],
            "simplex",
        )
        .unwrap();
        assert_eq!(
            dual_distance_status(&hamming, 5).unwrap(),
            DualDistance::Exact(3)
        );
    }

    #[test]
    fn ternary_search() {
        // columns (1,0), (0,1), (1,1), (1,2): any three are dependent, no two are
        let code = LinearCode::new(3, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]], "t").unwrap();
        assert_eq!(
            dual_distance_status(&code, 5).unwrap(),
            DualDistance::Exact(3)
        );
        assert_eq!(
            dual_distance_status(&code, 2).unwrap(),
            DualDistance::AtLeast(3)
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(DualDistance::Exact(5).to_string(), "=5");
        assert_eq!(DualDistance::AtLeast(5).to_string(), "≥5");
        assert_eq!(
            serde_json::to_string(&DualDistance::Exact(4)).unwrap(),
            "\"=4\""
        );
    }
}
