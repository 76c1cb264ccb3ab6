use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{ClosedPath, PathPair};
use crate::codes::LinearCode;
use crate::error::{Error, Result};

/// Largest number of index tuples `n^(#variables)` a count may range over.
pub const BRUTE_FORCE_BUDGET: f64 = 1e8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EquationGroup {
    /// Vertex of a single path, or (A): vertex shared by both paths of a pair.
    Shared,
    /// (B): vertex of the first path only.
    FirstOnly,
    /// (C): vertex of the second path only.
    SecondOnly,
}

/// `Σ coef · g_{x_var} = 0` for one vertex; coefficients are nonzero integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equation {
    pub vertex: u32,
    pub group: EquationGroup,
    pub terms: Vec<(usize, i64)>,
}

/// Per-vertex column-sum equations for one closed path or a pair.
///
/// Variables `0..ℓ` are the edge indices `t_0 … t_{ℓ−1}` of the first path
/// (with `t_ℓ ≡ t_0`); for a pair, variables `ℓ..2ℓ` are `w_0 … w_{ℓ−1}`.
/// Vertex `a` of the first path collects `g_{t_u} − g_{t_{u−1}}` over
/// `u ∈ [1..ℓ]` with `γ₁(u) = a`; the second path contributes
/// `g_{w_{u−1}} − g_{w_u}`, i.e. it is traversed with conjugated inner products.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexSystem {
    pub num_vars: usize,
    pub equations: Vec<Equation>,
}

fn accumulate(
    coefs: &mut BTreeMap<u32, BTreeMap<usize, i64>>,
    path: &ClosedPath,
    offset: usize,
    sign: i64,
) {
    let l = path.len();
    let labels = path.labels();
    for u in 1..=l {
        let row = coefs.entry(labels[u]).or_default();
        *row.entry(offset + u % l).or_default() += sign;
        *row.entry(offset + u - 1).or_default() -= sign;
    }
}

fn to_equation(vertex: u32, group: EquationGroup, row: BTreeMap<usize, i64>) -> Equation {
    Equation {
        vertex,
        group,
        terms: row.into_iter().filter(|&(_, c)| c != 0).collect(),
    }
}

impl VertexSystem {
    pub fn for_path(path: &ClosedPath) -> Self {
        let mut coefs = BTreeMap::new();
        accumulate(&mut coefs, path, 0, 1);
        let equations = coefs
            .into_iter()
            .map(|(v, row)| to_equation(v, EquationGroup::Shared, row))
            .collect();
        Self {
            num_vars: path.len(),
            equations,
        }
    }

    /// Equations (A), (B), (C) in that order, vertices ascending within each group.
    pub fn for_pair(pair: &PathPair) -> Result<Self> {
        let l = pair.first.len();
        if pair.second.len() != l {
            return Err(Error::param("paths of a pair must have equal length"));
        }
        let mut coefs = BTreeMap::new();
        accumulate(&mut coefs, &pair.first, 0, 1);
        accumulate(&mut coefs, &pair.second, l, -1);
        let (v1, v2) = (pair.first.vertices(), pair.second.vertices());
        let mut groups: [Vec<Equation>; 3] = Default::default();
        for (v, row) in coefs {
            let (slot, group) = match (v1.contains(&v), v2.contains(&v)) {
                (true, true) => (0, EquationGroup::Shared),
                (true, false) => (1, EquationGroup::FirstOnly),
                _ => (2, EquationGroup::SecondOnly),
            };
            groups[slot].push(to_equation(v, group, row));
        }
        let equations = groups.into_iter().flatten().collect();
        Ok(Self {
            num_vars: 2 * l,
            equations,
        })
    }

    /// The same system with equation `index` removed.
    pub fn without_equation(&self, index: usize) -> Self {
        let mut equations = self.equations.clone();
        equations.remove(index);
        Self {
            num_vars: self.num_vars,
            equations,
        }
    }

    /// The system with the last vertex equation removed; the vertex equations
    /// sum to zero, so this does not change the solution set.
    pub fn reduced(&self) -> Self {
        if self.equations.is_empty() {
            return self.clone();
        }
        self.without_equation(self.equations.len() - 1)
    }

    /// Number of tuples in `[1..n]^{num_vars}` solving every equation over `F_q`
    /// for the generator columns of `code`.
    ///
    /// The count is exact: variables are split in two halves, partial column
    /// sums of one half are tabulated and matched against the negated sums of
    /// the other half.
    pub fn count_solutions(&self, code: &LinearCode) -> Result<u64> {
        let n = code.n();
        let space = (n as f64).powi(self.num_vars as i32);
        if space > BRUTE_FORCE_BUDGET {
            return Err(Error::resource(format!(
                "{}^{} index tuples exceed the budget of {BRUTE_FORCE_BUDGET:e}",
                n, self.num_vars
            )));
        }
        let eqs: Vec<&Equation> = self
            .equations
            .iter()
            .filter(|e| !e.terms.is_empty())
            .collect();
        let half = self.num_vars / 2;
        match code.binary_columns() {
            Some(cols) => Ok(meet_in_middle(
                self.num_vars,
                half,
                n,
                |vars, assign| {
                    eqs.iter()
                        .map(|e| {
                            e.terms
                                .iter()
                                .filter(|(v, c)| vars.contains(v) && c % 2 != 0)
                                .fold(0u128, |acc, &(v, _)| acc ^ cols[assign[v]])
                        })
                        .collect::<Vec<u128>>()
                },
                |key| key.clone(),
            )),
            None => {
                let q = code.q() as i64;
                let cols = code.columns();
                let k = code.k();
                Ok(meet_in_middle(
                    self.num_vars,
                    half,
                    n,
                    |vars, assign| {
                        let mut key = vec![0u32; eqs.len() * k];
                        for (ei, e) in eqs.iter().enumerate() {
                            for &(v, c) in &e.terms {
                                if !vars.contains(&v) {
                                    continue;
                                }
                                let c = c.rem_euclid(q);
                                for (r, &g) in cols[assign[v]].iter().enumerate() {
                                    let slot = &mut key[ei * k + r];
                                    *slot = ((*slot as i64 + c * g as i64) % q) as u32;
                                }
                            }
                        }
                        key
                    },
                    |key: &Vec<u32>| key.iter().map(|&x| ((q - x as i64) % q) as u32).collect(),
                ))
            }
        }
    }
}

/// Count assignments of `num_vars` indices in `[0, n)` whose partial keys
/// cancel. `partial(vars, assign)` sums the contributions of `vars` only;
/// `negate` maps a right-half key to the left-half key it must meet.
fn meet_in_middle<K, P, N>(num_vars: usize, half: usize, n: usize, partial: P, negate: N) -> u64
where
    K: std::hash::Hash + Eq,
    P: Fn(&std::ops::Range<usize>, &[usize]) -> K,
    N: Fn(&K) -> K,
{
    let left_vars = 0..half;
    let right_vars = half..num_vars;
    let mut assign = vec![0usize; num_vars];
    let mut table: HashMap<K, u64> = HashMap::new();
    for_each_assignment(&mut assign, left_vars.clone(), n, |a| {
        *table.entry(partial(&left_vars, a)).or_default() += 1;
    });
    let mut total = 0u64;
    let mut assign = vec![0usize; num_vars];
    for_each_assignment(&mut assign, right_vars.clone(), n, |a| {
        if let Some(c) = table.get(&negate(&partial(&right_vars, a))) {
            total += c;
        }
    });
    total
}

fn for_each_assignment(
    assign: &mut [usize],
    vars: std::ops::Range<usize>,
    n: usize,
    mut f: impl FnMut(&[usize]),
) {
    for v in vars.clone() {
        assign[v] = 0;
    }
    loop {
        f(assign);
        let mut i = vars.start;
        loop {
            if i == vars.end {
                return;
            }
            assign[i] += 1;
            if assign[i] < n {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

/// `W_γ`: number of `(t_0, …, t_{ℓ−1}) ∈ [1..n]^ℓ` solving the vertex equations of `γ`.
pub fn count_w(code: &LinearCode, path: &ClosedPath) -> Result<u64> {
    VertexSystem::for_path(path).count_solutions(code)
}

/// `W_{γ₁,γ₂}`: number of `2ℓ`-tuples solving equations (A)–(C) of the pair.
pub fn count_w_pair(code: &LinearCode, pair: &PathPair) -> Result<u64> {
    VertexSystem::for_pair(pair)?.count_solutions(code)
}
