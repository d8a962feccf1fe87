//! Brute-force enumeration at desk scale.
//!
//! Nothing here calls into the linear-algebra or counting code: the
//! symplectic form and span closures are recomputed from scratch so the
//! results can serve as independent ground truth.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::ModMatrix;
use crate::ring::Modulus;

/// Receives a generating tuple and the span it generates.
type TupleVisitor<'a> = dyn FnMut(&[Vec<u64>], &BTreeSet<Vec<u64>>) + 'a;

/// Work limits; exceeding either is an error.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EnumerationBudget {
    /// Candidate columns tested while building matrices.
    pub max_matrix_cells: u64,
    /// Candidate vectors tested while building generator tuples.
    pub max_subgroup_candidates: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_matrix_cells: 50_000_000,
            max_subgroup_candidates: 50_000_000,
        }
    }
}

struct Meter {
    used: u64,
    limit: u64,
    what: &'static str,
}

impl Meter {
    fn new(limit: u64, what: &'static str) -> Self {
        Meter {
            used: 0,
            limit,
            what,
        }
    }

    fn spend(&mut self, amount: u64) -> Result<()> {
        self.used += amount;
        if self.used > self.limit {
            return Err(Error::BudgetExceeded(format!(
                "{} needs more than {} candidate tests",
                self.what, self.limit
            )));
        }
        Ok(())
    }
}

fn form(a: &[u64], b: &[u64], d: u64) -> u64 {
    let n = a.len() / 2;
    let mut plus = 0u64;
    let mut minus = 0u64;
    for i in 0..n {
        plus = (plus + a[i] * b[n + i]) % d;
        minus = (minus + a[n + i] * b[i]) % d;
    }
    (plus + d - minus) % d
}

/// Every vector of Z_d^len in lexicographic order, after an upfront size check.
fn all_vectors(len: usize, d: u64, limit: u64, what: &'static str) -> Result<Vec<Vec<u64>>> {
    let total = (d as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if total > limit as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{what} would scan {total} vectors, limit is {limit}"
        )));
    }
    let mut out = Vec::with_capacity(total as usize);
    let mut v = vec![0u64; len];
    for _ in 0..total {
        out.push(v.clone());
        for i in (0..len).rev() {
            v[i] += 1;
            if v[i] < d {
                break;
            }
            v[i] = 0;
        }
    }
    Ok(out)
}

/// Value `ω(col_i, col_j)` must take in a symplectic matrix.
fn lambda_entry(i: usize, j: usize, n: usize) -> i64 {
    if j == i + n && i < n {
        1
    } else if i == j + n && j < n {
        -1
    } else {
        0
    }
}

/// Column-by-column backtracking over symplectic matrices; `candidates[j]`
/// lists the vectors allowed in column `j`.
fn search_symplectic(
    n: usize,
    d: u64,
    candidates: &[Vec<Vec<u64>>],
    meter: &mut Meter,
    visit: &mut dyn FnMut(&[Vec<u64>]),
) -> Result<()> {
    fn go(
        n: usize,
        d: u64,
        candidates: &[Vec<Vec<u64>>],
        chosen: &mut Vec<Vec<u64>>,
        meter: &mut Meter,
        visit: &mut dyn FnMut(&[Vec<u64>]),
    ) -> Result<()> {
        let j = chosen.len();
        if j == 2 * n {
            visit(chosen);
            return Ok(());
        }
        meter.spend(candidates[j].len() as u64)?;
        for v in &candidates[j] {
            let ok = chosen
                .iter()
                .enumerate()
                .all(|(i, c)| form(c, v, d) == lambda_entry(i, j, n).rem_euclid(d as i64) as u64);
            if ok {
                chosen.push(v.clone());
                go(n, d, candidates, chosen, meter, visit)?;
                chosen.pop();
            }
        }
        Ok(())
    }
    go(n, d, candidates, &mut Vec::new(), meter, visit)
}

fn columns_to_matrix(cols: &[Vec<u64>], d: Modulus) -> ModMatrix {
    ModMatrix::from_columns(cols, cols[0].len(), d).expect("columns share a length")
}

#[derive(Clone, Debug)]
pub struct SymplecticEnumeration {
    pub count: u64,
    pub elements: Option<Vec<ModMatrix>>,
}

/// `|Sp(2n, Z_d)|` by exhaustion, optionally keeping every element.
pub fn enumerate_symplectic(
    n: usize,
    d: Modulus,
    budget: &EnumerationBudget,
    keep_elements: bool,
) -> Result<SymplecticEnumeration> {
    if n == 0 {
        return Err(Error::InvalidParams("n must be at least 1".into()));
    }
    let dd = d.get();
    let vectors = all_vectors(2 * n, dd, budget.max_matrix_cells, "symplectic enumeration")?;
    let candidates = vec![vectors; 2 * n];
    let mut meter = Meter::new(budget.max_matrix_cells, "symplectic enumeration");
    let mut count = 0u64;
    let mut elements = keep_elements.then(Vec::new);
    search_symplectic(n, dd, &candidates, &mut meter, &mut |cols| {
        count += 1;
        if let Some(list) = elements.as_mut() {
            list.push(columns_to_matrix(cols, d));
        }
    })?;
    Ok(SymplecticEnumeration { count, elements })
}

/// `|T(n,k,d)|` by exhaustion with the block pattern imposed column by column.
pub fn enumerate_tnkd(n: usize, k: usize, d: Modulus, budget: &EnumerationBudget) -> Result<u64> {
    if k >= n {
        return Err(Error::InvalidParams(format!(
            "need 0 <= k < n, got n={n}, k={k}"
        )));
    }
    let dd = d.get();
    let r = n - k;
    let vectors = all_vectors(2 * n, dd, budget.max_matrix_cells, "T(n,k,d) enumeration")?;
    // row blocks: [0, r) | [r, n) | [n, n + r) | [n + r, 2n)
    let block_of = |i: usize| match i {
        i if i < r => 0,
        i if i < n => 1,
        i if i < n + r => 2,
        _ => 3,
    };
    let candidates: Vec<Vec<Vec<u64>>> = (0..2 * n)
        .map(|j| {
            let cb = block_of(j);
            vectors
                .iter()
                .filter(|v| {
                    v.iter().enumerate().all(|(i, &x)| {
                        let rb = block_of(i);
                        let must_vanish = match cb {
                            0 => false,
                            2 => rb != 2,
                            _ => rb == 0,
                        };
                        !must_vanish || x == 0
                    })
                })
                .cloned()
                .collect()
        })
        .collect();
    let mut meter = Meter::new(budget.max_matrix_cells, "T(n,k,d) enumeration");
    let mut count = 0u64;
    search_symplectic(n, dd, &candidates, &mut meter, &mut |cols| {
        // M11ᵀ·A = I, with M11 = rows/cols [0, r) and A = rows/cols [n, n + r)
        let ok = (0..r).all(|i| {
            (0..r).all(|j| {
                let s = (0..r).fold(0, |acc, t| (acc + cols[i][t] * cols[n + j][n + t]) % dd);
                s == u64::from(i == j)
            })
        });
        count += u64::from(ok);
    })?;
    Ok(count)
}

/// The full element set of an isotropic free subgroup, with one generating tuple.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CanonicalSubgroup {
    pub d: u64,
    pub n: usize,
    pub k: usize,
    pub generators: Vec<Vec<u64>>,
    pub elements: Vec<Vec<u64>>,
}

impl CanonicalSubgroup {
    /// Closed under addition, pairwise isotropic, and of size `d^{n−k}`.
    pub fn verify(&self) -> bool {
        let d = self.d;
        let set: BTreeSet<&Vec<u64>> = self.elements.iter().collect();
        let size_ok = (d as u128).checked_pow((self.n - self.k) as u32) == Some(set.len() as u128)
            && set.len() == self.elements.len();
        let closed = self.elements.iter().all(|a| {
            self.elements.iter().all(|b| {
                let s: Vec<u64> = a.iter().zip(b).map(|(x, y)| (x + y) % d).collect();
                set.contains(&s)
            })
        });
        let isotropic = self
            .elements
            .iter()
            .all(|a| self.elements.iter().all(|b| form(a, b, d) == 0));
        let generated = span(&self.generators, 2 * self.n, d) == self.elements;
        size_ok && closed && isotropic && generated
    }
}

/// Sorted element list of the span of `gens`.
fn span(gens: &[Vec<u64>], len: usize, d: u64) -> Vec<Vec<u64>> {
    let mut set = BTreeSet::new();
    set.insert(vec![0; len]);
    for g in gens {
        set = extend_span(&set, g, d);
    }
    set.into_iter().collect()
}

fn extend_span(set: &BTreeSet<Vec<u64>>, g: &[u64], d: u64) -> BTreeSet<Vec<u64>> {
    let mut out = BTreeSet::new();
    for s in set {
        let mut cur = s.clone();
        for _ in 0..d {
            out.insert(cur.clone());
            for (x, &y) in cur.iter_mut().zip(g) {
                *x = (*x + y) % d;
            }
        }
    }
    out
}

/// Visits every ordered `(n−k)`-tuple of pairwise isotropic vectors whose
/// span grows by a factor `d` at each step.
fn search_tuples(
    n: usize,
    k: usize,
    d: Modulus,
    budget: &EnumerationBudget,
    visit: &mut TupleVisitor<'_>,
) -> Result<()> {
    if k >= n {
        return Err(Error::InvalidParams(format!(
            "need 0 <= k < n, got n={n}, k={k}"
        )));
    }
    let dd = d.get();
    let limit = budget.max_subgroup_candidates;
    let vectors = all_vectors(2 * n, dd, limit, "isotropic tuple enumeration")?;
    let mut meter = Meter::new(limit, "isotropic tuple enumeration");

    fn go(
        r: usize,
        d: u64,
        vectors: &[Vec<u64>],
        chosen: &mut Vec<Vec<u64>>,
        current: &BTreeSet<Vec<u64>>,
        meter: &mut Meter,
        visit: &mut TupleVisitor<'_>,
    ) -> Result<()> {
        if chosen.len() == r {
            visit(chosen, current);
            return Ok(());
        }
        meter.spend(vectors.len() as u64)?;
        for v in vectors {
            if form(v, v, d) != 0 || !chosen.iter().all(|c| form(c, v, d) == 0) {
                continue;
            }
            let next = extend_span(current, v, d);
            if next.len() != current.len() * d as usize {
                continue;
            }
            chosen.push(v.clone());
            go(r, d, vectors, chosen, &next, meter, visit)?;
            chosen.pop();
        }
        Ok(())
    }

    let mut start = BTreeSet::new();
    start.insert(vec![0; 2 * n]);
    go(
        n - k,
        dd,
        &vectors,
        &mut Vec::new(),
        &start,
        &mut meter,
        visit,
    )
}

#[derive(Clone, Debug)]
pub struct CodeEnumeration {
    pub count: u64,
    pub subgroups: Vec<CanonicalSubgroup>,
}

/// All `[[n,k]]_d` codes as isotropic free subgroups of size `d^{n−k}`.
pub fn enumerate_codes(
    n: usize,
    k: usize,
    d: Modulus,
    budget: &EnumerationBudget,
) -> Result<CodeEnumeration> {
    let mut seen: BTreeMap<Vec<Vec<u64>>, Vec<Vec<u64>>> = BTreeMap::new();
    search_tuples(n, k, d, budget, &mut |tuple, set| {
        let key: Vec<Vec<u64>> = set.iter().cloned().collect();
        seen.entry(key).or_insert_with(|| tuple.to_vec());
    })?;
    let subgroups: Vec<CanonicalSubgroup> = seen
        .into_iter()
        .map(|(elements, generators)| CanonicalSubgroup {
            d: d.get(),
            n,
            k,
            generators,
            elements,
        })
        .collect();
    Ok(CodeEnumeration {
        count: subgroups.len() as u64,
        subgroups,
    })
}

/// Number of ordered generating tuples of all `[[n,k]]_d` codes.
pub fn enumerate_ordered_tuples(
    n: usize,
    k: usize,
    d: Modulus,
    budget: &EnumerationBudget,
) -> Result<u64> {
    let mut count = 0u64;
    search_tuples(n, k, d, budget, &mut |_, _| count += 1)?;
    Ok(count)
}
