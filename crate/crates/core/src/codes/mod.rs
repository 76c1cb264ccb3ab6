//! Linear codes over prime fields and their audits.

mod dual;
mod families;
mod report;

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::PrimeField;

pub use dual::{dual_distance_status, DualDistance, SEARCH_BUDGET};
pub use families::{make_even_weight, make_gold, make_rm1};
pub use report::{
    code_report, code_report_with_bound, structural_weights, CodeReport, WeightSource,
    DEFAULT_DUAL_BOUND, DEFAULT_EXHAUSTIVE_LIMIT, REPORT_SAMPLE_SEED, REPORT_SAMPLE_SIZE,
};

/// Where a code came from; lets audits use known weight structure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CodeFamily {
    Gold { m: u32 },
    ReedMuller1 { m: u32 },
    EvenWeight { n: usize },
    Custom,
}

/// A `[n, k]_q` linear code given by a full-rank generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCode {
    field: PrimeField,
    n: usize,
    k: usize,
    /// `k` rows of length `n`, entries in `[0, q)`.
    generator: Vec<Vec<u32>>,
    label: String,
    family: CodeFamily,
}

impl LinearCode {
    /// Build a code from generator rows, rejecting rank-deficient matrices.
    pub fn new(q: u32, generator: Vec<Vec<u32>>, label: impl Into<String>) -> Result<Self> {
        Self::with_family(q, generator, label, CodeFamily::Custom)
    }

    pub(crate) fn with_family(
        q: u32,
        generator: Vec<Vec<u32>>,
        label: impl Into<String>,
        family: CodeFamily,
    ) -> Result<Self> {
        let field = PrimeField::new(q as u64)?;
        let k = generator.len();
        if k == 0 {
            return Err(Error::param("generator matrix has no rows"));
        }
        let n = generator[0].len();
        if n == 0 {
            return Err(Error::param("generator matrix has no columns"));
        }
        if k > n {
            return Err(Error::param(format!("dimension {k} exceeds length {n}")));
        }
        for (i, row) in generator.iter().enumerate() {
            if row.len() != n {
                return Err(Error::param(format!(
                    "generator row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= q) {
                return Err(Error::param(format!(
                    "symbol {bad} in row {i} is not in F_{q}"
                )));
            }
        }
        let rank = rank_over(&field, &generator);
        if rank != k {
            return Err(Error::param(format!(
                "generator matrix has rank {rank}, expected full row rank {k}"
            )));
        }
        Ok(Self {
            field,
            n,
            k,
            generator,
            label: label.into(),
            family,
        })
    }

    pub fn q(&self) -> u32 {
        self.field.order() as u32
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> CodeFamily {
        self.family
    }

    pub fn generator(&self) -> &[Vec<u32>] {
        &self.generator
    }

    /// `N = q^k`, or `None` when it does not fit in 64 bits.
    pub fn num_codewords(&self) -> Option<u64> {
        (self.q() as u64).checked_pow(self.k as u32)
    }

    /// `N = q^k` as a float, always available.
    pub fn num_codewords_f64(&self) -> f64 {
        (self.q() as f64).powi(self.k as i32)
    }

    /// `message · G` over `F_q`.
    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        if message.len() != self.k {
            return Err(Error::param(format!(
                "message has length {}, expected {}",
                message.len(),
                self.k
            )));
        }
        let q = self.q() as u64;
        let mut word = vec![0u64; self.n];
        for (&coef, row) in message.iter().zip(&self.generator) {
            let coef = coef as u64 % q;
            if coef == 0 {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(row) {
                *w = (*w + coef * g as u64) % q;
            }
        }
        Ok(word.into_iter().map(|x| x as u32).collect())
    }

    /// The message with integer index `index` in base `q`, least significant digit first.
    pub fn message_from_index(&self, mut index: u64) -> Vec<u32> {
        let q = self.q() as u64;
        (0..self.k)
            .map(|_| {
                let d = index % q;
                index /= q;
                d as u32
            })
            .collect()
    }

    /// Columns `g_1, …, g_n` of the generator matrix.
    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.n)
            .map(|t| self.generator.iter().map(|row| row[t]).collect())
            .collect()
    }

    /// Binary columns packed into `u128` (bit `i` = row `i`), when `q = 2` and `k ≤ 128`.
    pub fn binary_columns(&self) -> Option<Vec<u128>> {
        if self.q() != 2 || self.k > 128 {
            return None;
        }
        Some(
            (0..self.n)
                .map(|t| {
                    self.generator
                        .iter()
                        .enumerate()
                        .fold(0u128, |acc, (i, row)| acc | ((row[t] as u128) << i))
                })
                .collect(),
        )
    }

    /// Binary generator rows packed into 64-bit words, when `q = 2`.
    pub(crate) fn packed_rows(&self) -> Option<Vec<Vec<u64>>> {
        if self.q() != 2 {
            return None;
        }
        let words = self.n.div_ceil(64);
        Some(
            self.generator
                .iter()
                .map(|row| {
                    let mut packed = vec![0u64; words];
                    for (t, &b) in row.iter().enumerate() {
                        if b == 1 {
                            packed[t / 64] |= 1 << (t % 64);
                        }
                    }
                    packed
                })
                .collect(),
        )
    }

    /// Parse the plain-text generator format: a header line `q n k`, then `k`
    /// lines of `n` whitespace-separated symbols.
    pub fn from_text(text: &str, label: impl Into<String>) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::param("empty generator file"))?;
        let nums = parse_ints(header)?;
        let [q, n, k] = nums[..] else {
            return Err(Error::param(format!(
                "header must be `q n k`, got `{header}`"
            )));
        };
        let mut rows = Vec::with_capacity(k as usize);
        for i in 0..k {
            let line = lines
                .next()
                .ok_or_else(|| Error::param(format!("missing generator row {i}")))?;
            let row = parse_ints(line)?;
            if row.len() as u64 != n {
                return Err(Error::param(format!(
                    "generator row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            rows.push(row.into_iter().map(|x| x as u32).collect());
        }
        if lines.next().is_some() {
            return Err(Error::param("trailing content after generator rows"));
        }
        let q = u32::try_from(q).map_err(|_| Error::param(format!("q = {q} out of range")))?;
        Self::new(q, rows, label)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.q(), self.n, self.k);
        for row in &self.generator {
            let mut first = true;
            for x in row {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{x}");
            }
            out.push('\n');
        }
        out
    }
}

fn parse_ints(line: &str) -> Result<Vec<u64>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| Error::param(format!("`{tok}` is not a nonnegative integer")))
        })
        .collect()
}

/// Row rank over `F_q` by Gaussian elimination.
pub(crate) fn rank_over(field: &PrimeField, rows: &[Vec<u32>]) -> usize {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as u64).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = field.inv(m[rank][c]).expect("pivot is nonzero");
        for x in m[rank].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c];
                for j in c..cols {
                    let sub = field.mul(f, m[rank][j]);
                    m[r][j] = field.sub(m[r][j], sub);
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
