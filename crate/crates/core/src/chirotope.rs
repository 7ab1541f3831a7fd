//! Oriented matroids in chirotope form, signed circuits and reorientations.

use std::fmt;

use thiserror::Error;

use crate::matroid::{Matroid, MatroidError};
use crate::subset::{binomial, colex_rank, sort_sign, Subset, MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChirotopeError {
    #[error("expected a tuple of length {expected}, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("every sign is zero")]
    AllZero,
    #[error("support is not the basis family of a matroid: {0}")]
    SupportNotMatroid(MatroidError),
    #[error("three-term Grassmann-Plücker relation fails at {0}")]
    GpViolation(GpWitness),
    #[error("ground sets {0} and {1} overlap")]
    OverlappingGroundSets(Subset, Subset),
    #[error("{0} is not contained in the ground set {1}")]
    NotInGround(Subset, Subset),
    #[error("sign {0} is not one of -1, 0, 1")]
    BadSign(i64),
    #[error("rank {d} exceeds the ground set size {size}")]
    RankTooLarge { d: usize, size: usize },
    #[error("ground set size {0} exceeds the supported maximum of {MAX_N}")]
    GroundTooLarge(usize),
}

/// A tuple `(v1, v2, v3, v4, y3, ..., yd)` at which the three-term relation fails.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct GpWitness {
    pub v: [usize; 4],
    pub y: Vec<usize>,
}

impl fmt::Display for GpWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v=({},{},{},{}) y={:?}", self.v[0], self.v[1], self.v[2], self.v[3], self.y)
    }
}

/// A signed subset `X = X⁺ ⊔ X⁻`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct SignedSet {
    pub positive: Subset,
    pub negative: Subset,
}

impl SignedSet {
    pub fn new(positive: Subset, negative: Subset) -> Self {
        debug_assert!(positive.is_disjoint(negative));
        SignedSet { positive, negative }
    }

    pub fn support(&self) -> Subset {
        self.positive.union(self.negative)
    }

    pub fn negated(&self) -> SignedSet {
        SignedSet::new(self.negative, self.positive)
    }

    /// `X(e)`: +1, -1, or 0 when `e` is outside the support.
    pub fn sign_of(&self, e: usize) -> i8 {
        if self.positive.contains(e) {
            1
        } else if self.negative.contains(e) {
            -1
        } else {
            0
        }
    }
}

impl fmt::Display for SignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.support().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}{}", if self.positive.contains(e) { '+' } else { '-' })?;
        }
        f.write_str("}")
    }
}

/// The set `A` of elements whose sign is flipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Reorientation {
    pub flipped: Subset,
}

/// A chirotope of rank `d` on a ground set `S ⊆ [n]`.
///
/// Signs are stored densely in colex order of the `d`-subsets of `S`
/// (positions within `S`). Construction always normalizes the global sign so
/// that the lexicographically first nonzero subset is positive, which makes
/// `χ` and `−χ` compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chirotope {
    n: usize,
    ground: Subset,
    rank: usize,
    signs: Vec<i8>,
}

impl fmt::Debug for Chirotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chirotope(n={}, ground={}, d={}, ", self.n, self.ground, self.rank)?;
        for s in self.ground.k_subsets(self.rank) {
            let c = match self.sign(s) {
                1 => '+',
                -1 => '-',
                _ => '0',
            };
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl Chirotope {
    /// Checks the alternating-map support axiom and all three-term relations,
    /// then normalizes the global sign. `sign_of` is queried on every sorted
    /// `d`-subset of `[n]`.
    pub fn validate(n: usize, d: usize, sign_of: impl Fn(Subset) -> i8) -> Result<Chirotope, ChirotopeError> {
        Chirotope::validate_on(n, Subset::full(n.min(MAX_N)), d, sign_of)
    }

    pub fn validate_on(
        n: usize,
        ground: Subset,
        d: usize,
        sign_of: impl Fn(Subset) -> i8,
    ) -> Result<Chirotope, ChirotopeError> {
        if n > MAX_N {
            return Err(ChirotopeError::GroundTooLarge(n));
        }
        if !ground.is_subset_of(Subset::full(n)) {
            return Err(ChirotopeError::NotInGround(ground, Subset::full(n)));
        }
        if d > ground.len() {
            return Err(ChirotopeError::RankTooLarge { d, size: ground.len() });
        }
        let raw = Chirotope::from_fn_raw(n, ground, d, sign_of);
        if raw.signs.iter().all(|&s| s == 0) {
            return Err(ChirotopeError::AllZero);
        }
        Matroid::on_ground(n, ground, raw.support()).map_err(ChirotopeError::SupportNotMatroid)?;
        if let Some(w) = raw.gp_violation() {
            return Err(ChirotopeError::GpViolation(w));
        }
        Ok(raw.canonical())
    }

    /// Builds the sign table without any checks or normalization.
    pub(crate) fn from_fn_raw(n: usize, ground: Subset, d: usize, sign_of: impl Fn(Subset) -> i8) -> Chirotope {
        let signs = ground.k_subsets(d).map(|s| sign_of(s).signum()).collect();
        Chirotope { n, ground, rank: d, signs }
    }

    /// Wraps a sign table in colex order that is already known to be valid.
    pub(crate) fn from_signs_unchecked(n: usize, ground: Subset, d: usize, signs: Vec<i8>) -> Chirotope {
        debug_assert_eq!(signs.len(), binomial(ground.len(), d));
        Chirotope { n, ground, rank: d, signs }.canonical()
    }

    fn canonical(mut self) -> Chirotope {
        let first = self
            .ground
            .k_subsets(self.rank)
            .filter(|&s| self.sign(s) != 0)
            .min_by(|a, b| a.lex_cmp(*b));
        if let Some(s) = first {
            if self.sign(s) < 0 {
                self.signs.iter_mut().for_each(|x| *x = -*x);
            }
        }
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Signs in colex order of the `d`-subsets of the ground set.
    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `χ(I)` for a sorted subset `I`; zero for sets of the wrong size or outside the ground set.
    #[inline]
    pub fn sign(&self, s: Subset) -> i8 {
        if s.len() != self.rank || !s.is_subset_of(self.ground) {
            return 0;
        }
        let idx = if self.ground == Subset::full(self.n) {
            colex_rank(s)
        } else {
            colex_rank(s.compress(self.ground))
        };
        self.signs[idx]
    }

    /// `χ` on an ordered tuple: zero on repeats, otherwise the sorting sign times `χ` of the set.
    pub fn eval_ordered(&self, tuple: &[usize]) -> Result<i8, ChirotopeError> {
        if tuple.len() != self.rank {
            return Err(ChirotopeError::WrongArity { expected: self.rank, got: tuple.len() });
        }
        let perm = sort_sign(tuple);
        if perm == 0 || tuple.iter().any(|&e| !self.ground.contains(e)) {
            return Ok(0);
        }
        Ok(perm * self.sign(Subset::from_elems(tuple.iter().copied())))
    }

    /// `χ(a, b, y₁, …)` with `y` sorted and disjoint from `{a, b}`.
    #[inline]
    fn eval_pair(&self, a: usize, b: usize, y: Subset) -> i8 {
        if a == b {
            return 0;
        }
        let s = self.sign(y.with(a).with(b));
        if s == 0 {
            return 0;
        }
        let inversions = usize::from(a > b) + y.count_below(a) + y.count_below(b);
        if inversions.is_multiple_of(2) {
            s
        } else {
            -s
        }
    }

    /// The first failing three-term relation, scanning ordered 4-tuples of
    /// distinct elements in lexicographic order and, for each, the sorted
    /// `(d−2)`-subsets of the remaining elements in colex order.
    pub fn gp_violation(&self) -> Option<GpWitness> {
        if self.rank < 2 {
            return None;
        }
        let elems = self.ground.to_vec();
        for &v1 in &elems {
            for &v2 in &elems {
                if v2 == v1 {
                    continue;
                }
                for &v3 in &elems {
                    if v3 == v1 || v3 == v2 {
                        continue;
                    }
                    for &v4 in &elems {
                        if v4 == v1 || v4 == v2 || v4 == v3 {
                            continue;
                        }
                        let rest = self.ground.difference(Subset::from_elems([v1, v2, v3, v4]));
                        for y in rest.k_subsets(self.rank - 2) {
                            let eps = self.eval_pair(v1, v2, y) * self.eval_pair(v3, v4, y);
                            if eps == 0 {
                                continue;
                            }
                            let alt1 = self.eval_pair(v3, v2, y) * self.eval_pair(v1, v4, y);
                            let alt2 = self.eval_pair(v2, v4, y) * self.eval_pair(v1, v3, y);
                            if alt1 != eps && alt2 != eps {
                                return Some(GpWitness { v: [v1, v2, v3, v4], y: y.to_vec() });
                            }
                        }
                    }
                }
            }
        }
        None
    }

    /// Sorted subsets with nonzero sign, in colex order.
    pub fn support(&self) -> Vec<Subset> {
        self.ground
            .k_subsets(self.rank)
            .zip(&self.signs)
            .filter(|(_, &s)| s != 0)
            .map(|(b, _)| b)
            .collect()
    }

    pub fn underlying_matroid(&self) -> Matroid {
        Matroid::from_sorted_unchecked(self.n, self.ground, self.support())
    }

    /// `₋Aχ(I) = (−1)^{|A ∩ I|} χ(I)`, normalized.
    pub fn reorient(&self, a: Reorientation) -> Chirotope {
        let signs = self
            .ground
            .k_subsets(self.rank)
            .zip(&self.signs)
            .map(|(s, &x)| if s.intersection(a.flipped).len() % 2 == 1 { -x } else { x })
            .collect();
        Chirotope { n: self.n, ground: self.ground, rank: self.rank, signs }.canonical()
    }

    /// Whether all nonzero signs are `+1` (after normalization this is the same as all `-1`).
    pub fn is_nonnegative(&self) -> bool {
        self.signs.iter().all(|&s| s >= 0)
    }

    /// A reorientation making every basis positive, found by solving the
    /// parity system `Σ_{i∈B} x_i ≡ t_B (mod 2)` over the bases, once for each
    /// global sign target.
    pub fn positive_reorientation(&self) -> Option<Reorientation> {
        let elems = self.ground.to_vec();
        let bases: Vec<(Subset, i8)> = self
            .ground
            .k_subsets(self.rank)
            .zip(self.signs.iter().copied())
            .filter(|&(_, s)| s != 0)
            .collect();
        for target in [1i8, -1] {
            let rows: Vec<(u32, bool)> = bases
                .iter()
                .map(|&(b, s)| (b.compress(self.ground).bits(), s != target))
                .collect();
            if let Some(x) = solve_gf2(rows, elems.len()) {
                let flipped = Subset(x).expand(self.ground);
                return Some(Reorientation { flipped });
            }
        }
        None
    }

    /// Brute force over all `2^|E|` reorientations; used to check
    /// [`Chirotope::positive_reorientation`] on small ground sets.
    pub fn positive_reorientation_brute(&self) -> Option<Reorientation> {
        assert!(self.ground.len() <= 12, "brute-force search is limited to 12 elements");
        self.ground
            .subsets()
            .map(|flipped| Reorientation { flipped })
            .find(|&a| self.reorient(a).is_nonnegative())
    }

    pub fn is_positively_orientable(&self) -> bool {
        self.positive_reorientation().is_some()
    }

    /// `σ(e, f) = −χ(e, X)·χ(f, X)` for a sorted `(d−1)`-set `X`.
    pub fn sigma(&self, e: usize, f: usize, x: Subset) -> i8 {
        let ce = if x.contains(e) { 0 } else { self.sign(x.with(e)) * parity(x.count_below(e)) };
        let cf = if x.contains(f) { 0 } else { self.sign(x.with(f)) * parity(x.count_below(f)) };
        -ce * cf
    }

    /// One signed circuit per circuit of the underlying matroid, each with its
    /// least element positive. Ordered like [`Matroid::circuits`].
    pub fn signed_circuits(&self) -> Vec<SignedSet> {
        let m = self.underlying_matroid();
        m.circuits().into_iter().map(|c| self.sign_circuit(&m, c)).collect()
    }

    fn sign_circuit(&self, m: &Matroid, c: Subset) -> SignedSet {
        let least = c.first().expect("circuits are nonempty");
        let rest = c.without(least);
        // `rest` is independent; extend it to a basis greedily.
        let mut basis = rest;
        for e in self.ground.iter() {
            if basis.len() == self.rank {
                break;
            }
            if !basis.contains(e) && m.is_independent(basis.with(e)) {
                basis = basis.with(e);
            }
        }
        let mut positive = Subset::singleton(least);
        let mut negative = Subset::EMPTY;
        for f in rest.iter() {
            match self.sigma(least, f, basis.without(f)) {
                1 => positive = positive.with(f),
                -1 => negative = negative.with(f),
                _ => unreachable!("basis extension of a circuit gives nonzero σ"),
            }
        }
        SignedSet::new(positive, negative)
    }

    /// Deletion of the complement of `s`, using the smallest-index completion
    /// `a₁ < … < a_{d−d'}` from outside `s`.
    pub fn restrict(&self, s: Subset) -> Result<Chirotope, ChirotopeError> {
        if !s.is_subset_of(self.ground) {
            return Err(ChirotopeError::NotInGround(s, self.ground));
        }
        let m = self.underlying_matroid();
        let target = m.rank_of(s);
        let mut completion = Vec::new();
        let mut span = s;
        let mut r = target;
        for e in self.ground.difference(s).iter() {
            if r == self.rank {
                break;
            }
            if m.rank_of(span.with(e)) > r {
                span = span.with(e);
                r += 1;
                completion.push(e);
            }
        }
        Ok(self
            .restrict_with_completion(s, &completion)
            .expect("greedy completion spans"))
    }

    /// Deletion using an explicit completion tuple. Returns `None` if the
    /// completion is not drawn from outside `s` or does not raise `s` to full rank.
    pub fn restrict_with_completion(&self, s: Subset, completion: &[usize]) -> Option<Chirotope> {
        let m = self.underlying_matroid();
        let d_sub = m.rank_of(s);
        let comp = Subset::from_elems(completion.iter().copied());
        if d_sub + completion.len() != self.rank
            || comp.len() != completion.len()
            || !comp.is_subset_of(self.ground.difference(s))
            || m.rank_of(s.union(comp)) != self.rank
        {
            return None;
        }
        let mut tuple = Vec::with_capacity(self.rank);
        let signs = s
            .k_subsets(d_sub)
            .map(|b| {
                tuple.clear();
                tuple.extend(b.iter());
                tuple.extend_from_slice(completion);
                self.eval_ordered(&tuple).expect("arity matches")
            })
            .collect();
        Some(Chirotope { n: self.n, ground: s, rank: d_sub, signs }.canonical())
    }

    /// `χ(e₁…e_{d₁}, f₁…f_{d₂}) = χ₁(e)·χ₂(f)`, read on sorted subsets through
    /// the sign of the merge permutation.
    pub fn direct_sum(&self, other: &Chirotope) -> Result<Chirotope, ChirotopeError> {
        if !self.ground.is_disjoint(other.ground) {
            return Err(ChirotopeError::OverlappingGroundSets(self.ground, other.ground));
        }
        let n = self.n.max(other.n);
        let ground = self.ground.union(other.ground);
        let d = self.rank + other.rank;
        let sum = Chirotope::from_fn_raw(n, ground, d, |s| {
            let left = s.intersection(self.ground);
            let right = s.intersection(other.ground);
            if left.len() != self.rank {
                return 0;
            }
            let v = self.sign(left) * other.sign(right);
            if v == 0 {
                return 0;
            }
            // Inversions of the sequence (left..., right...).
            let inversions: usize = right.iter().map(|f| left.iter().filter(|&e| e > f).count()).sum();
            v * parity(inversions)
        });
        Ok(sum.canonical())
    }

    /// Connectivity of the underlying matroid.
    pub fn is_connected(&self) -> bool {
        self.underlying_matroid().is_connected()
    }

    /// Relabels by the cyclic shift of the ground order that makes `i` first.
    /// Elements are the positions within the ground set, so for ground `[n]`
    /// old element `j` becomes `j − i + 1 (mod n)`.
    pub fn rotate(&self, i: usize) -> Chirotope {
        assert!(self.ground.contains(i), "rotation pivot must be in the ground set");
        let elems = self.ground.to_vec();
        let m = elems.len();
        let shift = elems.iter().position(|&e| e == i).unwrap();
        // New position q holds the old element at position (q + shift) mod m.
        let mut tuple = Vec::with_capacity(self.rank);
        let signs = self
            .ground
            .k_subsets(self.rank)
            .map(|new_set| {
                tuple.clear();
                for e in new_set.iter() {
                    let q = elems.iter().position(|&x| x == e).unwrap();
                    tuple.push(elems[(q + shift) % m]);
                }
                self.eval_ordered(&tuple).expect("arity matches")
            })
            .collect();
        Chirotope { n: self.n, ground: self.ground, rank: self.rank, signs }.canonical()
    }

    /// The chirotope with every sign negated (the same oriented matroid).
    pub fn negated_signs(&self) -> Vec<i8> {
        self.signs.iter().map(|&s| -s).collect()
    }

    /// Sorted nonzero entries in lexicographic order of the subsets.
    pub fn nonzero_lex(&self) -> Vec<(Subset, i8)> {
        let mut v: Vec<(Subset, i8)> = self
            .ground
            .k_subsets(self.rank)
            .zip(self.signs.iter().copied())
            .filter(|&(_, s)| s != 0)
            .collect();
        v.sort_by(|a, b| a.0.lex_cmp(b.0));
        v
    }

    /// The sign vector of the indicator of `m`, validated.
    pub fn indicator(m: &Matroid) -> Result<Chirotope, ChirotopeError> {
        let raw = Chirotope::from_fn_raw(m.n(), m.ground(), m.rank(), |s| i8::from(m.is_basis(s)));
        match raw.gp_violation() {
            Some(w) => Err(ChirotopeError::GpViolation(w)),
            None => Ok(raw),
        }
    }
}

#[inline]
fn parity(k: usize) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Solves a system of GF(2) equations given as (coefficient mask, rhs) rows
/// over `vars` unknowns. Free variables are set to zero.
fn solve_gf2(mut rows: Vec<(u32, bool)>, vars: usize) -> Option<u32> {
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, column)
    let mut next = 0;
    for col in 0..vars {
        let bit = 1u32 << col;
        let Some(p) = (next..rows.len()).find(|&r| rows[r].0 & bit != 0) else {
            continue;
        };
        rows.swap(next, p);
        let (prow, prhs) = rows[next];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != next && row.0 & bit != 0 {
                row.0 ^= prow;
                row.1 ^= prhs;
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    if rows[next..].iter().any(|&(mask, rhs)| mask == 0 && rhs) {
        return None;
    }
    let mut x = 0u32;
    for &(r, col) in &pivots {
        if rows[r].1 {
            x |= 1 << col;
        }
    }
    Some(x)
}

/// Checks the signed-circuit axioms C0–C3 on a family given up to sign
/// (negatives are added here). Returns a description of the first failure.
pub fn circuit_axiom_violation(family: &[SignedSet]) -> Option<String> {
    let mut all: Vec<SignedSet> = family.iter().flat_map(|c| [*c, c.negated()]).collect();
    all.sort();
    all.dedup();
    if all.iter().any(|c| c.support().is_empty()) {
        return Some("C0: empty signed set".into());
    }
    for x in &all {
        for y in &all {
            if x.support().is_subset_of(y.support()) && x.support() != y.support() {
                return Some(format!("C2: {x} properly inside {y}"));
            }
            if x.support() == y.support() && x != y && *x != y.negated() {
                return Some(format!("C2: {x} and {y} share a support"));
            }
            if *x == y.negated() {
                continue;
            }
            for e in x.positive.intersection(y.negative).iter() {
                let pos = x.positive.union(y.positive).without(e);
                let neg = x.negative.union(y.negative).without(e);
                let ok = all
                    .iter()
                    .any(|z| z.positive.is_subset_of(pos) && z.negative.is_subset_of(neg));
                if !ok {
                    return Some(format!("C3: no elimination of {e} between {x} and {y}"));
                }
            }
        }
    }
    None
}
