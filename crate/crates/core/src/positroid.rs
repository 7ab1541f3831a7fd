//! Positroid recognition and the structure results around it: non-crossing
//! component partitions, the circuit/cocircuit criterion, circularity, and the
//! Grassmann necklace cross-check.

use serde::Serialize;
use thiserror::Error;

use crate::chirotope::{Chirotope, ChirotopeError, GpWitness};
use crate::matroid::Matroid;
use crate::subset::{is_cyclic_interval, CyclicInterval, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PositroidError {
    #[error("{0} and {1} are not disjoint")]
    NotDisjoint(Subset, Subset),
    #[error("blocks do not partition [{0}]")]
    NotAPartition(usize),
    #[error("blocks {0} and {1} cross")]
    Crossing(Subset, Subset),
}

/// Whether disjoint `t` and `u` are non-crossing in the cyclic order on `[n]`:
/// no `a < b < c < d` cyclically with `a, c ∈ t` and `b, d ∈ u`.
pub fn is_noncrossing(t: Subset, u: Subset, n: usize) -> Result<bool, PositroidError> {
    if !t.is_disjoint(u) {
        return Err(PositroidError::NotDisjoint(t, u));
    }
    Ok(alternations(t, u, n) <= 2)
}

/// Number of cyclic label changes when walking once around `[n]` and reading
/// only members of `t` or `u`. Four or more means the sets cross.
fn alternations(t: Subset, u: Subset, n: usize) -> usize {
    let seq: Vec<bool> = (1..=n)
        .filter(|&e| t.contains(e) || u.contains(e))
        .map(|e| t.contains(e))
        .collect();
    if seq.is_empty() {
        return 0;
    }
    (0..seq.len()).filter(|&i| seq[i] != seq[(i + 1) % seq.len()]).count()
}

/// A partition of `[n]` into pairwise non-crossing blocks, sorted by least element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonCrossingPartition {
    pub n: usize,
    pub blocks: Vec<Subset>,
}

impl NonCrossingPartition {
    pub fn new(n: usize, mut blocks: Vec<Subset>) -> Result<Self, PositroidError> {
        let mut union = Subset::EMPTY;
        for &b in &blocks {
            if b.is_empty() || !union.is_disjoint(b) {
                return Err(PositroidError::NotAPartition(n));
            }
            union = union.union(b);
        }
        if union != Subset::full(n) {
            return Err(PositroidError::NotAPartition(n));
        }
        blocks.sort_by_key(|b| b.first());
        if let Some((a, b)) = first_crossing(&blocks, n) {
            return Err(PositroidError::Crossing(a, b));
        }
        Ok(NonCrossingPartition { n, blocks })
    }

    /// Every non-crossing partition of `[n]`, generated by placing each element
    /// in turn into an existing block or a new one and discarding crossings.
    pub fn all(n: usize) -> Vec<NonCrossingPartition> {
        fn go(e: usize, n: usize, blocks: &mut Vec<Subset>, out: &mut Vec<NonCrossingPartition>) {
            if e > n {
                out.push(NonCrossingPartition { n, blocks: blocks.clone() });
                return;
            }
            for i in 0..blocks.len() {
                blocks[i] = blocks[i].with(e);
                if first_crossing(blocks, n).is_none() {
                    go(e + 1, n, blocks, out);
                }
                blocks[i] = blocks[i].without(e);
            }
            blocks.push(Subset::singleton(e));
            go(e + 1, n, blocks, out);
            blocks.pop();
        }
        let mut out = Vec::new();
        go(1, n, &mut Vec::new(), &mut out);
        out
    }
}

fn first_crossing(blocks: &[Subset], n: usize) -> Option<(Subset, Subset)> {
    for (i, &a) in blocks.iter().enumerate() {
        for &b in &blocks[i + 1..] {
            if alternations(a, b, n) > 2 {
                return Some((a, b));
            }
        }
    }
    None
}

/// Outcome of checking that the connected components form a non-crossing partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentPartition {
    NonCrossing { blocks: Vec<Subset> },
    Crossing { first: Subset, second: Subset },
}

impl ComponentPartition {
    pub fn is_noncrossing(&self) -> bool {
        matches!(self, ComponentPartition::NonCrossing { .. })
    }
}

/// Connected components of `m`, read in the inherited cyclic order of its
/// ground set, with a crossing pair of blocks reported if there is one.
pub fn component_partition_check(m: &Matroid) -> ComponentPartition {
    let re = m.reindexed();
    let blocks = re.connected_components();
    match first_crossing(&blocks, re.n()) {
        Some((a, b)) => ComponentPartition::Crossing {
            first: a.expand(m.ground()),
            second: b.expand(m.ground()),
        },
        None => ComponentPartition::NonCrossing {
            blocks: blocks.iter().map(|b| b.expand(m.ground())).collect(),
        },
    }
}

/// Verdict of the cyclic-interval rank criterion. A negative verdict carries
/// a `k`-subset that meets every cyclic interval within its rank but is not a basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositroidVerdict {
    pub is_positroid: bool,
    pub certificate: Option<Subset>,
}

/// Decides whether `m` is a positroid in the inherited order of its ground set.
///
/// With `a_ij = r([i, j])` for every cyclic interval, `m` is a positroid iff
/// every `k`-subset `S` with `|S ∩ [i, j]| ≤ a_ij` for all intervals is a basis.
pub fn is_positroid(m: &Matroid) -> PositroidVerdict {
    let re = m.reindexed();
    let n = re.n();
    let k = re.rank();
    let bounds: Vec<(Subset, usize)> = CyclicInterval::all(n)
        .map(|iv| {
            let s = iv.to_subset(n);
            (s, re.rank_of(s))
        })
        .collect();
    for s in Subset::full(n).k_subsets(k) {
        if re.is_basis(s) {
            continue;
        }
        if bounds.iter().all(|&(iv, a)| s.intersection(iv).len() <= a) {
            return PositroidVerdict {
                is_positroid: false,
                certificate: Some(s.expand(m.ground())),
            };
        }
    }
    PositroidVerdict { is_positroid: true, certificate: None }
}

/// `(I₁, …, I_n)`: `I_a` is the lexicographically least basis for the order
/// `a < a+1 < … < n < 1 < … < a−1`, found greedily. Indices follow the
/// positions of the ground set.
pub fn grassmann_necklace(m: &Matroid) -> Vec<Subset> {
    let elems = m.ground().to_vec();
    let len = elems.len();
    (0..len)
        .map(|start| {
            let mut basis = Subset::EMPTY;
            for off in 0..len {
                let e = elems[(start + off) % len];
                if basis.len() == m.rank() {
                    break;
                }
                if m.is_independent(basis.with(e)) {
                    basis = basis.with(e);
                }
            }
            basis
        })
        .collect()
}

/// Gale order for the rotated order starting at position `start`:
/// `s ≥ t` iff the sorted sequences dominate entrywise.
fn gale_geq(s: Subset, t: Subset, start: usize, len: usize) -> bool {
    let key = |p: usize| (p + len - start) % len;
    let mut a: Vec<usize> = s.iter().map(|p| key(p - 1)).collect();
    let mut b: Vec<usize> = t.iter().map(|p| key(p - 1)).collect();
    a.sort_unstable();
    b.sort_unstable();
    a.iter().zip(&b).all(|(x, y)| x >= y)
}

/// Necklace characterization: `m` is a positroid iff its bases are exactly the
/// `k`-subsets that Gale-dominate `I_a` in every rotated order.
pub fn necklace_criterion(m: &Matroid) -> bool {
    let re = m.reindexed();
    let n = re.n();
    let necklace = grassmann_necklace(&re);
    Subset::full(n).k_subsets(re.rank()).all(|s| {
        let dominated = necklace
            .iter()
            .enumerate()
            .all(|(a, &i)| gale_geq(s, i, a, n));
        dominated == re.is_basis(s)
    })
}

/// Result of the circuit/cocircuit non-crossing test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DaSilvaVerdict {
    pub holds: bool,
    /// A disjoint circuit/cocircuit pair that crosses.
    pub witness: Option<(Subset, Subset)>,
}

/// Checks that every circuit `C` and cocircuit `C*` with `C ∩ C* = ∅` are
/// non-crossing.
pub fn da_silva_criterion(m: &Matroid) -> DaSilvaVerdict {
    let re = m.reindexed();
    let n = re.n();
    let circuits = re.circuits();
    let cocircuits = re.cocircuits();
    for &c in &circuits {
        for &d in &cocircuits {
            if c.is_disjoint(d) && alternations(c, d, n) > 2 {
                return DaSilvaVerdict {
                    holds: false,
                    witness: Some((c.expand(m.ground()), d.expand(m.ground()))),
                };
            }
        }
    }
    DaSilvaVerdict { holds: true, witness: None }
}

/// Circular: the closure of every circuit of rank below `k` is a cyclic interval.
pub fn is_circular(m: &Matroid) -> bool {
    let re = m.reindexed();
    let n = re.n();
    re.circuits()
        .into_iter()
        .filter(|&c| re.rank_of(c) < re.rank())
        .all(|c| is_cyclic_interval(re.closure(c), n))
}

/// The sign map equal to `+1` on bases and `0` elsewhere, if it is a chirotope.
/// This succeeds exactly when `m` underlies a positively oriented matroid.
pub fn indicator_chirotope(m: &Matroid) -> Result<Chirotope, GpWitness> {
    match Chirotope::indicator(m) {
        Ok(chi) => Ok(chi),
        Err(ChirotopeError::GpViolation(w)) => Err(w),
        Err(e) => unreachable!("indicator of a valid matroid: {e}"),
    }
}
