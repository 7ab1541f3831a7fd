//! Exhaustive enumeration of labeled matroids, positroids and chirotopes.

use crate::chirotope::Chirotope;
use crate::matroid::Matroid;
use crate::positroid::is_positroid;
use crate::subset::{colex_rank, Subset};

/// Calls `visit` on every matroid of rank `k` on `[n]`, each exactly once.
///
/// Depth-first search over the `k`-subsets in colex order, deciding
/// membership one subset at a time. A branch is cut as soon as some pair of
/// chosen bases has an exchange whose every candidate has been decided
/// against, so every leaf is a matroid.
pub fn for_each_matroid(n: usize, k: usize, mut visit: impl FnMut(Matroid)) {
    if k > n {
        return;
    }
    let cands: Vec<Subset> = Subset::full(n).k_subsets(k).collect();
    let mut search = MatroidSearch { n, cands, state: Vec::new(), ins: Vec::new() };
    search.state = vec![0; search.cands.len()];
    search.dfs(0, &mut visit);
}

pub fn enumerate_matroids(n: usize, k: usize) -> Vec<Matroid> {
    let mut out = Vec::new();
    for_each_matroid(n, k, |m| out.push(m));
    out
}

/// All matroids on `[n]`, rank by rank.
pub fn enumerate_all_matroids(n: usize) -> Vec<Matroid> {
    (0..=n).flat_map(|k| enumerate_matroids(n, k)).collect()
}

pub fn enumerate_positroids(n: usize, k: usize) -> Vec<Matroid> {
    let mut out = Vec::new();
    for_each_matroid(n, k, |m| {
        if is_positroid(&m).is_positroid {
            out.push(m);
        }
    });
    out
}

struct MatroidSearch {
    n: usize,
    cands: Vec<Subset>,
    /// 1 chosen, -1 rejected, 0 undecided.
    state: Vec<i8>,
    ins: Vec<Subset>,
}

impl MatroidSearch {
    fn dfs(&mut self, i: usize, visit: &mut impl FnMut(Matroid)) {
        if i == self.cands.len() {
            if !self.ins.is_empty() {
                visit(Matroid::from_sorted_unchecked(self.n, Subset::full(self.n), self.ins.clone()));
            }
            return;
        }
        let x = self.cands[i];

        self.state[i] = 1;
        self.ins.push(x);
        if !self.include_breaks(x, i) {
            self.dfs(i + 1, visit);
        }
        self.ins.pop();

        self.state[i] = -1;
        if !self.exclude_breaks(x, i) {
            self.dfs(i + 1, visit);
        }
        self.state[i] = 0;
    }

    /// True when `b1` can no longer be exchanged out of `b1_set` towards
    /// `b2_set`: every candidate is decided (index `≤ i`) and rejected.
    fn stuck(&self, b1_set: Subset, b1: usize, b2_set: Subset, i: usize) -> bool {
        let base = b1_set.without(b1);
        b2_set.difference(b1_set).iter().all(|b2| {
            let j = colex_rank(base.with(b2));
            j <= i && self.state[j] != 1
        })
    }

    fn include_breaks(&self, x: Subset, i: usize) -> bool {
        self.ins.iter().any(|&b| {
            x.difference(b).iter().any(|e| self.stuck(x, e, b, i))
                || b.difference(x).iter().any(|e| self.stuck(b, e, x, i))
        })
    }

    fn exclude_breaks(&self, x: Subset, i: usize) -> bool {
        let outside = Subset::full(self.n).difference(x);
        for added in x.iter() {
            for removed in outside.iter() {
                let b1 = x.without(added).with(removed);
                if self.state[colex_rank(b1)] != 1 {
                    continue;
                }
                for &b2 in &self.ins {
                    if b2.contains(added) && !b2.contains(removed) && self.stuck(b1, removed, b2, i) {
                        return true;
                    }
                }
            }
        }
        false
    }
}

/// All chirotopes of rank `d` on `[n]`, one per `{χ, −χ}` pair, grouped by
/// underlying matroid in [`enumerate_matroids`] order.
pub fn enumerate_chirotopes(n: usize, d: usize) -> Vec<Chirotope> {
    let mut out = Vec::new();
    for_each_matroid(n, d, |m| out.extend(orientations(&m)));
    out
}

/// Every chirotope on `[n]` of every rank.
pub fn enumerate_all_chirotopes(n: usize) -> Vec<Chirotope> {
    (0..=n).flat_map(|d| enumerate_chirotopes(n, d)).collect()
}

/// All orientations of `m` (on the full ground set), up to global sign.
pub fn orientations(m: &Matroid) -> Vec<Chirotope> {
    let n = m.n();
    let d = m.rank();
    let mut lex: Vec<Subset> = m.bases().to_vec();
    lex.sort_by(|a, b| a.lex_cmp(*b));
    let total = crate::subset::binomial(n, d);
    // Position in `lex` of each d-subset, by colex rank.
    let mut pos = vec![usize::MAX; total];
    for (p, b) in lex.iter().enumerate() {
        pos[colex_rank(*b)] = p;
    }
    let relations = gp_relations(n, d, &pos);
    let mut by_trigger: Vec<Vec<Relation>> = vec![Vec::new(); lex.len()];
    for r in relations {
        by_trigger[r.trigger()].push(r);
    }
    let mut signs = vec![0i8; lex.len()];
    let mut out = Vec::new();
    signs[0] = 1;
    if by_trigger[0].iter().all(|r| r.holds(&signs)) {
        assign(1, &mut signs, &by_trigger, &mut |s: &[i8]| {
            let mut table = vec![0i8; total];
            for (p, b) in lex.iter().enumerate() {
                table[colex_rank(*b)] = s[p];
            }
            out.push(Chirotope::from_signs_unchecked(n, Subset::full(n), d, table));
        });
    }
    out
}

fn assign(p: usize, signs: &mut Vec<i8>, by_trigger: &[Vec<Relation>], emit: &mut impl FnMut(&[i8])) {
    if p == signs.len() {
        emit(signs);
        return;
    }
    for s in [1i8, -1] {
        signs[p] = s;
        if by_trigger[p].iter().all(|r| r.holds(signs)) {
            assign(p + 1, signs, by_trigger, emit);
        }
    }
    signs[p] = 0;
}

/// A product `sign · s[a] · s[b]` of two basis signs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Term {
    a: usize,
    b: usize,
    sign: i8,
}

impl Term {
    fn value(&self, s: &[i8]) -> i8 {
        self.sign * s[self.a] * s[self.b]
    }
}

/// A three-term relation: when `lead` is nonzero, one of `alts` must equal it.
/// Absent alternatives are zero.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Relation {
    lead: Term,
    alts: [Option<Term>; 2],
}

impl Relation {
    fn trigger(&self) -> usize {
        let mut t = self.lead.a.max(self.lead.b);
        for alt in self.alts.iter().flatten() {
            t = t.max(alt.a).max(alt.b);
        }
        t
    }

    fn holds(&self, s: &[i8]) -> bool {
        let lead = self.lead.value(s);
        self.alts.iter().flatten().any(|t| t.value(s) == lead)
    }
}

fn gp_relations(n: usize, d: usize, pos: &[usize]) -> Vec<Relation> {
    if d < 2 {
        return Vec::new();
    }
    // Sign and basis position of the ordered tuple (a, b, y...).
    let pair = |a: usize, b: usize, y: Subset| -> Option<(usize, i8)> {
        let p = pos[colex_rank(y.with(a).with(b))];
        if p == usize::MAX {
            return None;
        }
        let inversions = usize::from(a > b) + y.count_below(a) + y.count_below(b);
        Some((p, if inversions.is_multiple_of(2) { 1 } else { -1 }))
    };
    let term = |x: Option<(usize, i8)>, z: Option<(usize, i8)>| -> Option<Term> {
        let ((a, sa), (b, sb)) = (x?, z?);
        Some(Term { a: a.min(b), b: a.max(b), sign: sa * sb })
    };
    let mut out = Vec::new();
    let ground = Subset::full(n);
    for v1 in 1..=n {
        for v2 in (1..=n).filter(|&v| v != v1) {
            for v3 in (1..=n).filter(|&v| v != v1 && v != v2) {
                for v4 in (1..=n).filter(|&v| v != v1 && v != v2 && v != v3) {
                    let rest = ground.difference(Subset::from_elems([v1, v2, v3, v4]));
                    for y in rest.k_subsets(d - 2) {
                        let Some(lead) = term(pair(v1, v2, y), pair(v3, v4, y)) else {
                            continue;
                        };
                        let alts = [
                            term(pair(v3, v2, y), pair(v1, v4, y)),
                            term(pair(v2, v4, y), pair(v1, v3, y)),
                        ];
                        out.push(Relation { lead, alts });
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Canonical reading of the positively oriented matroids of rank `k` on
/// `[n]`: the matroids whose all-`+1` indicator is a chirotope, paired with
/// that chirotope.
pub fn enumerate_pom_indicators(n: usize, k: usize) -> Vec<(Matroid, Chirotope)> {
    let mut out = Vec::new();
    for_each_matroid(n, k, |m| {
        if let Ok(chi) = Chirotope::indicator(&m) {
            out.push((m, chi));
        }
    });
    out
}

/// Reorientation-closed reading: every chirotope of rank `k` on `[n]` that
/// some reorientation makes nonnegative.
pub fn enumerate_positively_oriented(n: usize, k: usize) -> Vec<Chirotope> {
    enumerate_chirotopes(n, k)
        .into_iter()
        .filter(Chirotope::is_positively_orientable)
        .collect()
}
