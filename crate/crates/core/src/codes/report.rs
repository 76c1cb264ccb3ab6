use std::collections::BTreeSet;

use serde::Serialize;

use super::{dual_distance_status, CodeFamily, DualDistance, LinearCode};
use crate::error::{Error, Result};
use crate::rng::SeedContract;

/// Codeword count up to which weights and coherence are enumerated exhaustively.
pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 1 << 20;

/// Dual-distance bound used by reports (the `d^⊥ ≥ 5` hypothesis).
pub const DEFAULT_DUAL_BOUND: usize = 5;

/// Number of codewords drawn when a code is too large to enumerate.
pub const REPORT_SAMPLE_SIZE: usize = 1 << 16;

/// Seed of the codeword sample used by non-exhaustive reports (stream 0).
pub const REPORT_SAMPLE_SEED: u64 = 0x5EED_C0DE;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightSource {
    /// Every codeword enumerated.
    Exhaustive,
    /// Weight set known from the code family; a sample was checked against it.
    Analytic,
    /// Only a sample was seen; not a certificate.
    Sampled,
}

/// Audit of the hypotheses on a code: dual distance, weights, coherence.
#[derive(Clone, Debug, Serialize)]
pub struct CodeReport {
    pub label: String,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub q: u32,
    pub dual_distance_status: DualDistance,
    /// Nonzero codeword weights.
    pub weight_set: BTreeSet<usize>,
    /// `max |⟨ε(c), ε(c′)⟩|` over distinct codewords.
    pub coherence: f64,
    /// `coherence / √n`.
    pub coherence_constant: f64,
    #[serde(rename = "ratio_N_over_n")]
    pub ratio_n_over_len: f64,
    pub weight_source: WeightSource,
    /// True unless the weight set and coherence come from a sample alone.
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampled_codewords: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Weight set implied by the construction, when known.
pub fn structural_weights(family: CodeFamily) -> Option<BTreeSet<usize>> {
    match family {
        CodeFamily::Gold { m } => {
            let half = 1usize << (m - 1);
            let off = 1usize << ((m - 1) / 2);
            Some([half - off, half, half + off].into_iter().collect())
        }
        CodeFamily::ReedMuller1 { m } => {
            Some([1usize << (m - 1), 1usize << m].into_iter().collect())
        }
        CodeFamily::EvenWeight { n } => Some((2..=n).step_by(2).collect()),
        CodeFamily::Custom => None,
    }
}

/// `|Σ_t ω^{u_t}|` for a word `u`, given per-symbol counts.
fn character_sum_abs(counts: &[usize], q: u32) -> f64 {
    if q == 2 {
        return (counts[0] as f64 - counts[1] as f64).abs();
    }
    let (mut re, mut im) = (0.0, 0.0);
    for (s, &c) in counts.iter().enumerate() {
        let theta = std::f64::consts::TAU * s as f64 / q as f64;
        re += c as f64 * theta.cos();
        im += c as f64 * theta.sin();
    }
    re.hypot(im)
}

struct WeightScan {
    weights: BTreeSet<usize>,
    coherence: f64,
}

impl WeightScan {
    fn new() -> Self {
        Self {
            weights: BTreeSet::new(),
            coherence: 0.0,
        }
    }

    fn observe_binary(&mut self, n: usize, w: usize) {
        if w == 0 {
            return;
        }
        self.weights.insert(w);
        self.coherence = self.coherence.max((n as f64 - 2.0 * w as f64).abs());
    }

    fn observe(&mut self, word: &[u32], q: u32) {
        let mut counts = vec![0usize; q as usize];
        for &s in word {
            counts[s as usize] += 1;
        }
        let w = word.len() - counts[0];
        if w == 0 {
            return;
        }
        self.weights.insert(w);
        self.coherence = self.coherence.max(character_sum_abs(&counts, q));
    }
}

/// Exhaustive scan. For linear codes `c − c′` runs over all nonzero codewords
/// as `(c, c′)` runs over distinct pairs, so the maximum over nonzero words
/// is the pair coherence; for `q = 2` it is `max |n − 2·wt(c)|`.
fn scan_exhaustive(code: &LinearCode, count: u64) -> WeightScan {
    let mut scan = WeightScan::new();
    let n = code.n();
    if let Some(rows) = code.packed_rows() {
        // binary reflected Gray code: one row XOR per step
        let mut cur = vec![0u64; rows[0].len()];
        for i in 1..count {
            let bit = i.trailing_zeros() as usize;
            for (c, r) in cur.iter_mut().zip(&rows[bit]) {
                *c ^= r;
            }
            let w: u32 = cur.iter().map(|x| x.count_ones()).sum();
            scan.observe_binary(n, w as usize);
        }
        return scan;
    }
    // q-ary odometer: bumping a digit (including a wrap to zero) adds its row once
    let q = code.q();
    let k = code.k();
    let mut digits = vec![0u32; k];
    let mut word = vec![0u32; n];
    for _ in 1..count {
        let mut j = 0;
        loop {
            for (w, &g) in word.iter_mut().zip(&code.generator()[j]) {
                *w = (*w + g) % q;
            }
            digits[j] += 1;
            if digits[j] < q {
                break;
            }
            digits[j] = 0;
            j += 1;
        }
        scan.observe(&word, q);
    }
    scan
}

fn scan_sample(code: &LinearCode) -> Result<WeightScan> {
    let mut scan = WeightScan::new();
    let mut rng = SeedContract::new(REPORT_SAMPLE_SEED, 0).rng();
    let q = code.q() as u64;
    for _ in 0..REPORT_SAMPLE_SIZE {
        let msg: Vec<u32> = (0..code.k()).map(|_| rng.below(q) as u32).collect();
        scan.observe(&code.encode(&msg)?, code.q());
    }
    Ok(scan)
}

/// Audit with the default dual-distance bound of 5.
pub fn code_report(code: &LinearCode, exhaustive_limit: u64) -> Result<CodeReport> {
    code_report_with_bound(code, exhaustive_limit, DEFAULT_DUAL_BOUND)
}

/// Audit a code: dual distance up to `bound`, weight set and coherence.
///
/// Codes with at most `exhaustive_limit` codewords are enumerated. Larger
/// codes draw [`REPORT_SAMPLE_SIZE`] codewords from the fixed stream
/// `(REPORT_SAMPLE_SEED, 0)`; when the family's weight set is known the
/// report uses it (and records whether the sample agreed), otherwise the
/// sampled values are reported uncertified.
pub fn code_report_with_bound(
    code: &LinearCode,
    exhaustive_limit: u64,
    bound: usize,
) -> Result<CodeReport> {
    let big_n = code
        .num_codewords()
        .ok_or_else(|| Error::param(format!("{}: q^k does not fit in 64 bits", code.label())))?;
    let n = code.n();
    let dual = dual_distance_status(code, bound)?;
    let mut notes = Vec::new();
    if let (CodeFamily::Gold { .. }, DualDistance::AtLeast(5)) = (code.family(), dual) {
        if bound == 5 {
            notes.push("d^⊥ = 5 known analytically for Gold codes".to_string());
        }
    }

    let (weight_set, coherence, source, sampled) = if big_n <= exhaustive_limit {
        let scan = scan_exhaustive(code, big_n);
        (scan.weights, scan.coherence, WeightSource::Exhaustive, None)
    } else {
        let scan = scan_sample(code)?;
        match structural_weights(code.family()) {
            Some(known) if code.q() == 2 => {
                if !scan.weights.is_subset(&known) {
                    return Err(Error::Contract(format!(
                        "{}: sampled weights {:?} outside the family weight set {:?}",
                        code.label(),
                        scan.weights,
                        known
                    )));
                }
                notes.push(format!(
                    "weight set from code family; {} sampled codewords agree",
                    REPORT_SAMPLE_SIZE
                ));
                let coh = known
                    .iter()
                    .map(|&w| (n as f64 - 2.0 * w as f64).abs())
                    .fold(0.0, f64::max);
                (known, coh, WeightSource::Analytic, Some(REPORT_SAMPLE_SIZE))
            }
            _ => {
                notes.push("weight set and coherence from a sample; not certified".to_string());
                (
                    scan.weights,
                    scan.coherence,
                    WeightSource::Sampled,
                    Some(REPORT_SAMPLE_SIZE),
                )
            }
        }
    };

    Ok(CodeReport {
        label: code.label().to_string(),
        n,
        k: code.k(),
        big_n,
        q: code.q(),
        dual_distance_status: dual,
        weight_set,
        coherence,
        coherence_constant: coherence / (n as f64).sqrt(),
        ratio_n_over_len: big_n as f64 / n as f64,
        certified: source != WeightSource::Sampled,
        weight_source: source,
        sampled_codewords: sampled,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_even_weight, make_gold, make_rm1};

    /// Pair coherence by direct enumeration of distinct codeword pairs.
    fn pair_coherence_bruteforce(code: &LinearCode) -> f64 {
        let words: Vec<Vec<u32>> = (0..code.num_codewords().unwrap())
            .map(|i| code.encode(&code.message_from_index(i)).unwrap())
            .collect();
        let mut best = 0.0f64;
        for (i, a) in words.iter().enumerate() {
            for b in &words[i + 1..] {
                let dot: f64 = a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| if x == y { 1.0 } else { -1.0 })
                    .sum();
                best = best.max(dot.abs());
            }
        }
        best
    }

    #[test]
    fn gold5_report() {
        let code = make_gold(5).unwrap();
        let r = code_report(&code, DEFAULT_EXHAUSTIVE_LIMIT).unwrap();
        assert_eq!(r.weight_set, [12, 16, 20].into_iter().collect());
        assert_eq!(r.coherence, 9.0);
        assert!((r.coherence_constant - 9.0 / 31f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.dual_distance_status, DualDistance::Exact(5));
        assert_eq!(r.big_n, 1024);
        assert_eq!(r.coherence, pair_coherence_bruteforce(&code));
        assert!(r.certified);
    }

    #[test]
    fn gold7_weights() {
        let r = code_report(&make_gold(7).unwrap(), DEFAULT_EXHAUSTIVE_LIMIT).unwrap();
        assert_eq!(r.weight_set, [56, 64, 72].into_iter().collect());
        assert_eq!(r.coherence, 17.0);
    }

    #[test]
    fn even_and_rm_reports() {
        let code = make_even_weight(5).unwrap();
        let r = code_report(&code, DEFAULT_EXHAUSTIVE_LIMIT).unwrap();
        assert_eq!(r.coherence, 3.0);
        assert_eq!(r.coherence, pair_coherence_bruteforce(&code));
        assert_eq!(r.weight_set, [2, 4].into_iter().collect());
        assert!((r.ratio_n_over_len - 16.0 / 5.0).abs() < 1e-15);

        let rm = make_rm1(3).unwrap();
        let r = code_report(&rm, DEFAULT_EXHAUSTIVE_LIMIT).unwrap();
        assert_eq!(r.weight_set, [4, 8].into_iter().collect());
        assert_eq!(r.dual_distance_status, DualDistance::Exact(4));
        assert_eq!(r.coherence, 8.0);
    }

    #[test]
    fn sampled_report_uses_family_weights() {
        let code = make_gold(7).unwrap();
        let r = code_report(&code, 1000).unwrap();
        assert_eq!(r.weight_source, WeightSource::Analytic);
        assert_eq!(r.weight_set, [56, 64, 72].into_iter().collect());
        assert!(r.certified);

        let custom = LinearCode::new(2, code.generator().to_vec(), "custom").unwrap();
        let r = code_report(&custom, 1000).unwrap();
        assert_eq!(r.weight_source, WeightSource::Sampled);
        assert!(!r.certified);
        assert!(r.weight_set.is_subset(&[56, 64, 72].into_iter().collect()));
    }

    #[test]
    fn ternary_coherence() {
        // [3,1] repetition code over F_3: nonzero words (1,1,1), (2,2,2); |Σ ω^u| = 3
        let code = LinearCode::new(3, vec![vec![1, 1, 1]], "rep3").unwrap();
        let r = code_report(&code, DEFAULT_EXHAUSTIVE_LIMIT).unwrap();
        assert!((r.coherence - 3.0).abs() < 1e-12);
        // [3,2] code with words (a, b, a+b): (1,0,1) gives |2 + ω| = √3
        let code = LinearCode::new(3, vec![vec![1, 0, 1], vec![0, 1, 1]], "t").unwrap();
        let r = code_report(&code, DEFAULT_EXHAUSTIVE_LIMIT).unwrap();
        assert!((r.coherence - 3f64.sqrt()).abs() < 1e-12, "{}", r.coherence);
    }

    #[test]
    fn report_json_field_names() {
        let r = code_report(&make_even_weight(5).unwrap(), DEFAULT_EXHAUSTIVE_LIMIT).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        for key in [
            "n",
            "k",
            "N",
            "q",
            "dual_distance_status",
            "weight_set",
            "coherence",
            "coherence_constant",
            "ratio_N_over_n",
        ] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["dual_distance_status"], "=5");
    }
}
