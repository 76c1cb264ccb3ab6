//! Closed paths on vertex labels, double trees, and the solution counts
//! that drive the moment computation.
//!
//! A closed path of length `ℓ` is a label sequence `γ(0), …, γ(ℓ)` with
//! `γ(0) = γ(ℓ)`. Relabeling by a permutation does not change any of the
//! quantities computed here, so paths are handled through a canonical
//! representative whose labels appear in first-use order `1, 2, 3, …`.

mod audit;
mod expect;
mod system;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

pub use audit::{paths_audit, AuditChecks, ClassRecord, PairRecord, PathsAudit};
pub use expect::{expect_omega, MapMode, EXPECTATION_BUDGET};
pub use system::{
    count_w, count_w_pair, Equation, EquationGroup, VertexSystem, BRUTE_FORCE_BUDGET,
};

/// Longest path length accepted by the class enumerators.
pub const MAX_ENUMERATED_LEN: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClosedPath {
    labels: Vec<u32>,
}

impl ClosedPath {
    /// `labels` lists `γ(0..=ℓ)`; requires `ℓ ≥ 1`, positive labels and `γ(0) = γ(ℓ)`.
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        if labels.len() < 2 {
            return Err(Error::param("a closed path needs at least one step"));
        }
        if labels.contains(&0) {
            return Err(Error::param("path labels are positive integers"));
        }
        if labels[0] != labels[labels.len() - 1] {
            return Err(Error::param(format!("path {labels:?} is not closed")));
        }
        Ok(Self { labels })
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// Path length `ℓ`.
    pub fn len(&self) -> usize {
        self.labels.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Distinct labels, ascending.
    pub fn vertices(&self) -> BTreeSet<u32> {
        self.labels.iter().copied().collect()
    }

    /// Number of distinct labels `v_γ`.
    pub fn vertex_count(&self) -> usize {
        self.vertices().len()
    }

    /// No step stays at the same label.
    pub fn is_simple(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] != w[1])
    }

    /// Relabel in first-use order.
    pub fn canonical(&self) -> Self {
        let mut map = HashMap::new();
        let labels = self
            .labels
            .iter()
            .map(|&x| {
                let next = map.len() as u32 + 1;
                *map.entry(x).or_insert(next)
            })
            .collect();
        Self { labels }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// Apply a relabeling map to every label.
    pub fn relabel(&self, f: impl Fn(u32) -> u32) -> Result<Self> {
        Self::new(self.labels.iter().map(|&x| f(x)).collect())
    }

    /// Whether every edge of an underlying tree is traversed exactly once in
    /// each direction: cancelling immediate reversals (`a→b` then `b→a`)
    /// empties the walk, and `v = 1 + ℓ/2` rules out edges walked four or more times.
    pub fn is_double_tree(&self) -> bool {
        if self.len() % 2 == 1 || self.vertex_count() != 1 + self.len() / 2 {
            return false;
        }
        let mut stack: Vec<(u32, u32)> = Vec::with_capacity(self.len());
        for w in self.labels.windows(2) {
            let step = (w[0], w[1]);
            if stack.last() == Some(&(step.1, step.0)) {
                stack.pop();
            } else {
                stack.push(step);
            }
        }
        stack.is_empty()
    }
}

impl std::fmt::Display for ClosedPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

fn check_len(l: usize) -> Result<()> {
    if l == 0 || l > MAX_ENUMERATED_LEN {
        return Err(Error::param(format!(
            "path length {l} outside [1, {MAX_ENUMERATED_LEN}]"
        )));
    }
    Ok(())
}

/// Extend restricted-growth prefixes `prefix[0..]` to length `l`, with new
/// labels allowed up to `max + 1`; calls `emit` on each closed completion.
fn grow(
    prefix: &mut Vec<u32>,
    max: u32,
    l: usize,
    simple: bool,
    start: usize,
    emit: &mut dyn FnMut(&[u32]),
) {
    let pos = prefix.len() - start;
    if pos == l {
        let first = prefix[start];
        if simple && prefix[prefix.len() - 1] == first {
            return;
        }
        prefix.push(first);
        emit(&prefix[start..]);
        prefix.pop();
        return;
    }
    for label in 1..=max + 1 {
        if simple && pos > 0 && prefix[prefix.len() - 1] == label {
            continue;
        }
        prefix.push(label);
        grow(prefix, max.max(label), l, simple, start, emit);
        prefix.pop();
    }
}

/// One canonical representative per relabeling class of closed paths of
/// length `l` (simple ones only when `simple`).
pub fn enumerate_closed_classes(l: usize, simple: bool) -> Result<Vec<ClosedPath>> {
    check_len(l)?;
    let mut out = Vec::new();
    let mut prefix = vec![1u32];
    let mut emit = |labels: &[u32]| {
        out.push(ClosedPath {
            labels: labels.to_vec(),
        })
    };
    if l == 1 {
        if !simple {
            emit(&[1, 1]);
        }
        return Ok(out);
    }
    grow(&mut prefix, 1, l, simple, 0, &mut emit);
    Ok(out)
}

/// Double-tree classes of length `l` built from Dyck words: an up-step moves
/// to a fresh child, a down-step returns to the parent.
pub fn double_tree_classes(l: usize) -> Result<Vec<ClosedPath>> {
    if l % 2 == 1 {
        return Err(Error::param(format!(
            "double trees have even length, got {l}"
        )));
    }
    check_len(l)?;
    let half = l / 2;
    let mut out = BTreeSet::new();
    for word in 0u32..(1 << l) {
        if word.count_ones() as usize != half {
            continue;
        }
        let mut labels = vec![1u32];
        let mut ancestry = vec![1u32];
        let mut next = 2;
        let mut ok = true;
        for i in 0..l {
            if word >> i & 1 == 1 {
                ancestry.push(next);
                labels.push(next);
                next += 1;
            } else {
                if ancestry.len() < 2 {
                    ok = false;
                    break;
                }
                ancestry.pop();
                labels.push(*ancestry.last().expect("root stays on the stack"));
            }
        }
        if ok {
            out.insert(ClosedPath { labels }.canonical());
        }
    }
    Ok(out.into_iter().collect())
}

/// Number of simple double-tree classes with `v = 1 + l/2`.
pub fn count_double_tree_classes(l: usize) -> Result<usize> {
    Ok(double_tree_classes(l)?
        .iter()
        .filter(|g| g.is_simple() && g.is_double_tree() && g.vertex_count() == 1 + l / 2)
        .count())
}

/// Two closed paths on a shared label space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PathPair {
    pub first: ClosedPath,
    pub second: ClosedPath,
}

impl PathPair {
    pub fn new(first: ClosedPath, second: ClosedPath) -> Self {
        Self { first, second }
    }

    /// `#(V_γ₁ ∪ V_γ₂)`.
    pub fn v_union(&self) -> usize {
        self.first.vertices().union(&self.second.vertices()).count()
    }

    /// `#(V_γ₁ ∩ V_γ₂)`.
    pub fn v_meet(&self) -> usize {
        self.first
            .vertices()
            .intersection(&self.second.vertices())
            .count()
    }

    /// Joint first-use relabeling over `γ₁` then `γ₂`.
    pub fn canonical(&self) -> Self {
        let mut map = HashMap::new();
        let mut relabel = |labels: &[u32]| -> Vec<u32> {
            labels
                .iter()
                .map(|&x| {
                    let next = map.len() as u32 + 1;
                    *map.entry(x).or_insert(next)
                })
                .collect()
        };
        let first = ClosedPath {
            labels: relabel(&self.first.labels),
        };
        let second = ClosedPath {
            labels: relabel(&self.second.labels),
        };
        Self { first, second }
    }
}

/// Representatives of the joint relabeling classes of ordered pairs of closed
/// paths of length `l`.
pub fn enumerate_pair_classes(l: usize, simple: bool) -> Result<Vec<PathPair>> {
    let firsts = enumerate_closed_classes(l, simple)?;
    let mut out = Vec::new();
    for g1 in firsts {
        let v1 = g1.vertex_count() as u32;
        let mut prefix = Vec::with_capacity(l + 1);
        for start_label in 1..=v1 + 1 {
            prefix.clear();
            prefix.push(start_label);
            let mut emit = |labels: &[u32]| {
                out.push(PathPair::new(
                    g1.clone(),
                    ClosedPath {
                        labels: labels.to_vec(),
                    },
                ));
            };
            if l == 1 {
                if !simple {
                    emit(&[start_label, start_label]);
                }
                continue;
            }
            grow(&mut prefix, v1.max(start_label), l, simple, 0, &mut emit);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SeedContract;

    fn path(labels: &[u32]) -> ClosedPath {
        ClosedPath::new(labels.to_vec()).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert!(ClosedPath::new(vec![1, 2]).is_err());
        assert!(ClosedPath::new(vec![1]).is_err());
        assert!(ClosedPath::new(vec![0, 0]).is_err());
        let g = path(&[5, 3, 5, 9, 5]);
        assert_eq!(g.len(), 4);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.canonical(), path(&[1, 2, 1, 3, 1]));
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(
            enumerate_closed_classes(2, true).unwrap(),
            vec![path(&[1, 2, 1])]
        );
        assert_eq!(
            enumerate_closed_classes(2, false).unwrap(),
            vec![path(&[1, 1, 1]), path(&[1, 2, 1])]
        );
        assert!(enumerate_closed_classes(0, true).is_err());
        assert!(enumerate_closed_classes(11, true).is_err());
        assert_eq!(
            enumerate_closed_classes(1, false).unwrap(),
            vec![path(&[1, 1])]
        );
        assert!(enumerate_closed_classes(1, true).unwrap().is_empty());
    }

    /// Brute-force class enumeration: all label maps into [1..=l], canonicalised.
    fn classes_bruteforce(l: usize, simple: bool) -> BTreeSet<ClosedPath> {
        let base = l as u32;
        let mut out = BTreeSet::new();
        for code in 0..base.pow(l as u32) {
            let mut labels: Vec<u32> = (0..l)
                .map(|i| code / base.pow(i as u32) % base + 1)
                .collect();
            labels.push(labels[0]);
            let g = ClosedPath { labels };
            if !simple || g.is_simple() {
                out.insert(g.canonical());
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_bruteforce() {
        for l in 1..=6 {
            for simple in [false, true] {
                let fast: BTreeSet<ClosedPath> = enumerate_closed_classes(l, simple)
                    .unwrap()
                    .into_iter()
                    .collect();
                let slow = classes_bruteforce(l, simple);
                assert_eq!(fast, slow, "l={l} simple={simple}");
                assert!(fast.iter().all(ClosedPath::is_canonical));
            }
        }
    }

    #[test]
    fn class_count_bound() {
        for l in 2..=8 {
            let classes = enumerate_closed_classes(l, true).unwrap();
            for v in 1..=l {
                let count = classes.iter().filter(|g| g.vertex_count() == v).count();
                assert!(count < v.pow(l as u32) || count == 0, "l={l} v={v}");
            }
        }
    }

    #[test]
    fn double_tree_examples() {
        assert!(path(&[1, 2, 1]).is_double_tree());
        assert!(!path(&[1, 2, 3, 1]).is_double_tree());
        assert!(path(&[1, 2, 1, 3, 1]).is_double_tree());
        assert!(path(&[1, 2, 3, 2, 1]).is_double_tree());
        assert!(!path(&[1, 2, 1, 2, 1]).is_double_tree());
        let at4: Vec<ClosedPath> = enumerate_closed_classes(4, true)
            .unwrap()
            .into_iter()
            .filter(ClosedPath::is_double_tree)
            .collect();
        assert_eq!(at4, vec![path(&[1, 2, 1, 3, 1]), path(&[1, 2, 3, 2, 1])]);
    }

    #[test]
    fn catalan_counts() {
        for (l, c) in [(2, 1), (4, 2), (6, 5), (8, 14)] {
            assert_eq!(count_double_tree_classes(l).unwrap(), c);
            let oracle = enumerate_closed_classes(l, true)
                .unwrap()
                .iter()
                .filter(|g| g.vertex_count() == 1 + l / 2 && g.is_double_tree())
                .count();
            assert_eq!(oracle, c);
        }
        assert!(count_double_tree_classes(5).is_err());
    }

    #[test]
    fn canonical_is_orbit_invariant() {
        let classes = enumerate_closed_classes(6, true).unwrap();
        let mut rng = SeedContract::new(1234, 0).rng();
        for i in 0..10_000 {
            let g = &classes[i % classes.len()];
            // random injective relabeling into [1..=40]
            let mut pool: Vec<u32> = (1..=40).collect();
            for j in 0..pool.len() {
                let r = j + rng.below((pool.len() - j) as u64) as usize;
                pool.swap(j, r);
            }
            let h = g.relabel(|x| pool[x as usize - 1]).unwrap();
            assert_eq!(h.canonical(), *g);
            assert_eq!(h.canonical().canonical(), h.canonical());
        }
    }

    #[test]
    fn pair_classes_are_jointly_canonical() {
        let pairs = enumerate_pair_classes(2, true).unwrap();
        // (1,2,1) with second path on {1,2,3,4}: (1,2,1), (2,1,2), (1,3,1), (3,1,3), (2,3,2), (3,2,3), (3,4,3)
        assert_eq!(pairs.len(), 7);
        for pp in &pairs {
            assert_eq!(pp.canonical(), *pp);
            assert_eq!(
                pp.v_union() + pp.v_meet(),
                pp.first.vertex_count() + pp.second.vertex_count()
            );
        }
        let set: BTreeSet<_> = pairs
            .iter()
            .map(|p| (p.first.clone(), p.second.clone()))
            .collect();
        assert_eq!(set.len(), pairs.len());
    }
}
