//! The character map and seeded assembly of codeword matrices `Φ`.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::rng::SeedContract;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    /// `p` pairwise distinct codewords, uniformly.
    Distinct,
    /// `p` independent uniform codewords.
    WithReplacement,
}

impl std::str::FromStr for SampleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "distinct" => Ok(SampleMode::Distinct),
            "with_replacement" | "with-replacement" => Ok(SampleMode::WithReplacement),
            other => Err(Error::param(format!("unknown sampling mode `{other}`"))),
        }
    }
}

/// Matrix entries: real `±1` for binary codes, complex roots of unity otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Entries {
    Real(Vec<f64>),
    Complex(Vec<Complex64>),
}

/// The `p × n` matrix whose rows are character images of sampled codewords.
#[derive(Clone, Debug, PartialEq)]
pub struct SignalMatrix {
    pub p: usize,
    pub n: usize,
    pub q: u32,
    /// Row-major.
    pub entries: Entries,
    pub source_seed: SeedContract,
    pub mode: SampleMode,
    /// Messages whose codewords form the rows.
    pub messages: Vec<Vec<u32>>,
}

/// Additive character `x ↦ exp(2πi·x/q)` applied component-wise.
pub fn char_map(word: &[u32], q: u32) -> Vec<Complex64> {
    word.iter().map(|&x| root_of_unity(x, q)).collect()
}

fn root_of_unity(x: u32, q: u32) -> Complex64 {
    if q == 2 {
        return Complex64::new(if x.is_multiple_of(2) { 1.0 } else { -1.0 }, 0.0);
    }
    let x = x % q;
    if x == 0 {
        return Complex64::new(1.0, 0.0);
    }
    Complex64::from_polar(1.0, std::f64::consts::TAU * x as f64 / q as f64)
}

/// Largest code whose message space is enumerated for the shuffle fallback.
const MAX_ENUMERATED: u64 = 1 << 26;

fn random_message(rng: &mut crate::rng::SplitMix64, q: u32, k: usize) -> Vec<u32> {
    (0..k).map(|_| rng.below(q as u64) as u32).collect()
}

/// Draw `p` codewords and apply the character map.
///
/// Messages are `k` independent uniform symbols drawn from the stream
/// `seed`. In distinct mode repeated messages are rejected while `p ≤ N/2`;
/// for larger `p` all `N` message indices are enumerated and the first `p`
/// positions of a Fisher–Yates shuffle are taken.
pub fn sample_codewords(
    code: &LinearCode,
    p: usize,
    mode: SampleMode,
    seed: SeedContract,
) -> Result<SignalMatrix> {
    if p == 0 {
        return Err(Error::param("p must be at least 1"));
    }
    let (q, k, n) = (code.q(), code.k(), code.n());
    let mut rng = seed.rng();
    let messages: Vec<Vec<u32>> = match mode {
        SampleMode::WithReplacement => (0..p).map(|_| random_message(&mut rng, q, k)).collect(),
        SampleMode::Distinct => {
            let big_n = code.num_codewords_f64();
            if p as f64 > big_n {
                return Err(Error::param(format!(
                    "cannot draw {p} distinct codewords from a code with {big_n} codewords"
                )));
            }
            if 2.0 * p as f64 <= big_n {
                let mut seen = HashSet::with_capacity(p);
                let mut out = Vec::with_capacity(p);
                while out.len() < p {
                    let msg = random_message(&mut rng, q, k);
                    if seen.insert(msg.clone()) {
                        out.push(msg);
                    }
                }
                out
            } else {
                let total = code
                    .num_codewords()
                    .filter(|&t| t <= MAX_ENUMERATED)
                    .ok_or_else(|| {
                        Error::resource(format!(
                            "cannot enumerate {big_n} messages for distinct sampling"
                        ))
                    })?;
                let mut idx: Vec<u64> = (0..total).collect();
                for i in 0..p {
                    let j = i + rng.below(total - i as u64) as usize;
                    idx.swap(i, j);
                }
                idx[..p]
                    .iter()
                    .map(|&i| code.message_from_index(i))
                    .collect()
            }
        }
    };

    let entries = if q == 2 {
        let mut data = Vec::with_capacity(p * n);
        for msg in &messages {
            data.extend(
                code.encode(msg)?
                    .into_iter()
                    .map(|b| if b == 0 { 1.0 } else { -1.0 }),
            );
        }
        Entries::Real(data)
    } else {
        let mut data = Vec::with_capacity(p * n);
        for msg in &messages {
            data.extend(char_map(&code.encode(msg)?, q));
        }
        Entries::Complex(data)
    };
    Ok(SignalMatrix {
        p,
        n,
        q,
        entries,
        source_seed: seed,
        mode,
        messages,
    })
}

impl SignalMatrix {
    pub fn entry(&self, i: usize, t: usize) -> Complex64 {
        match &self.entries {
            Entries::Real(d) => Complex64::new(d[i * self.n + t], 0.0),
            Entries::Complex(d) => d[i * self.n + t],
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self.entries, Entries::Real(_))
    }

    /// CSV dump: `p` lines of `n` comma-separated values, `re` for real
    /// matrices and `re+imj` otherwise.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for i in 0..self.p {
            for t in 0..self.n {
                if t > 0 {
                    out.push(',');
                }
                match &self.entries {
                    Entries::Real(d) => {
                        let _ = write!(out, "{}", d[i * self.n + t]);
                    }
                    Entries::Complex(d) => {
                        let z = d[i * self.n + t];
                        let sign = if z.im.is_sign_negative() { '-' } else { '+' };
                        let _ = write!(out, "{}{}{}j", z.re, sign, z.im.abs());
                    }
                }
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_even_weight, make_gold};

    #[test]
    fn character_values() {
        let v = char_map(&[0, 1, 1], 2);
        assert_eq!(
            v,
            vec![
                Complex64::new(1.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(-1.0, 0.0)
            ]
        );
        let w = char_map(&[1], 3)[0];
        let expected = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        assert!((w - expected).norm() < 1e-15);
        let word = [0, 2, 1, 1, 2];
        let img = char_map(&word, 3);
        let self_dot: Complex64 = img.iter().map(|z| z * z.conj()).sum();
        assert!((self_dot - Complex64::new(5.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn exhaustive_distinct_sample_is_permutation() {
        let code = make_even_weight(5).unwrap();
        let sm =
            sample_codewords(&code, 16, SampleMode::Distinct, SeedContract::new(3, 0)).unwrap();
        let set: HashSet<Vec<u32>> = sm.messages.iter().cloned().collect();
        assert_eq!(set.len(), 16);
        assert!(
            sample_codewords(&code, 17, SampleMode::Distinct, SeedContract::new(3, 0)).is_err()
        );
        assert!(sample_codewords(&code, 0, SampleMode::Distinct, SeedContract::new(3, 0)).is_err());
    }

    #[test]
    fn deterministic_given_seed() {
        let code = make_gold(5).unwrap();
        let a = sample_codewords(&code, 8, SampleMode::Distinct, SeedContract::new(11, 2)).unwrap();
        let b = sample_codewords(&code, 8, SampleMode::Distinct, SeedContract::new(11, 2)).unwrap();
        assert_eq!(a, b);
        assert_eq!((a.p, a.n), (8, 31));
        let Entries::Real(d) = &a.entries else {
            panic!("binary matrix must be real")
        };
        assert!(d.iter().all(|&x| x == 1.0 || x == -1.0));
        let distinct: HashSet<_> = a.messages.iter().collect();
        assert_eq!(distinct.len(), 8);
    }

    #[test]
    fn uniform_over_codewords() {
        let code = make_even_weight(5).unwrap();
        let draws = 100_000usize;
        let mut counts = [0usize; 16];
        let mut rng = SeedContract::new(99, 0).rng();
        for _ in 0..draws {
            let msg = random_message(&mut rng, code.q(), code.k());
            let idx = msg
                .iter()
                .enumerate()
                .map(|(i, &b)| (b as usize) << i)
                .sum::<usize>();
            counts[idx] += 1;
        }
        let mean = draws as f64 / 16.0;
        let sigma = (draws as f64 * (1.0 / 16.0) * (15.0 / 16.0)).sqrt();
        for c in counts {
            assert!((c as f64 - mean).abs() < 5.0 * sigma, "{counts:?}");
        }
    }

    #[test]
    fn sampled_rows_follow_seed_stream() {
        // p = 1 draws go through the same message generator
        let code = make_even_weight(5).unwrap();
        let seed = SeedContract::new(5, 1);
        let sm = sample_codewords(&code, 1, SampleMode::WithReplacement, seed).unwrap();
        let mut rng = seed.rng();
        assert_eq!(sm.messages[0], random_message(&mut rng, 2, 4));
    }

    #[test]
    fn csv_forms() {
        let code = make_even_weight(3).unwrap();
        let sm = sample_codewords(&code, 2, SampleMode::Distinct, SeedContract::new(1, 0)).unwrap();
        let csv = sm.to_csv();
        assert_eq!(csv.lines().count(), 2);
        assert!(csv.lines().all(|l| l.split(',').count() == 3));
        let t = LinearCode::new(3, vec![vec![1, 2]], "t").unwrap();
        let sm = sample_codewords(&t, 2, SampleMode::Distinct, SeedContract::new(1, 0)).unwrap();
        assert!(sm.to_csv().contains('j'));
    }
}
