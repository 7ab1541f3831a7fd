//! Matroids on ordered ground sets, described by their bases.

use std::fmt;

use thiserror::Error;

use crate::subset::{Subset, MAX_N};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("a matroid needs at least one basis")]
    EmptyBasisSet,
    #[error("bases {first} and {other} have different sizes")]
    UnequalBasisSizes { first: Subset, other: Subset },
    #[error("exchange axiom fails: removing {element} from {left} admits no replacement from {right}")]
    ExchangeViolation {
        left: Subset,
        right: Subset,
        element: usize,
    },
    #[error("ground set size {0} exceeds the supported maximum of {MAX_N}")]
    GroundTooLarge(usize),
    #[error("{set} is not contained in the ground set {ground}")]
    NotInGround { set: Subset, ground: Subset },
    #[error("ground sets {0} and {1} overlap")]
    OverlappingGroundSets(Subset, Subset),
    #[error("expected {expected} weights, got {got}")]
    WeightLength { expected: usize, got: usize },
}

/// Membership table over all subsets of `[n]`, one bit per mask.
#[derive(Clone)]
struct MaskTable(Vec<u64>);

impl MaskTable {
    fn new(n: usize) -> Self {
        MaskTable(vec![0; (1usize << n).div_ceil(64)])
    }

    #[inline]
    fn set(&mut self, s: Subset) {
        let i = s.bits() as usize;
        self.0[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    fn get(&self, s: Subset) -> bool {
        let i = s.bits() as usize;
        self.0.get(i / 64).is_some_and(|w| w & (1 << (i % 64)) != 0)
    }
}

/// A matroid on a ground set `S ⊆ [n]`, kept as its sorted list of bases.
///
/// The ambient `n` is retained for minors so that the cyclic order on `[n]`
/// stays meaningful downstream. Two matroids are equal when they have the
/// same `n`, the same ground set and the same bases.
#[derive(Clone)]
pub struct Matroid {
    n: usize,
    ground: Subset,
    rank: usize,
    bases: Vec<Subset>,
    lookup: MaskTable,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.ground == other.ground && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl std::hash::Hash for Matroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.ground.hash(state);
        self.bases.hash(state);
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(n={}, ground={}, rank={}, bases=[", self.n, self.ground, self.rank)?;
        for (i, b) in self.bases.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{b}")?;
        }
        f.write_str("])")
    }
}

impl Matroid {
    /// Validates a basis family on the full ground set `[n]`.
    pub fn from_bases(n: usize, bases: impl IntoIterator<Item = Subset>) -> Result<Matroid, MatroidError> {
        Matroid::on_ground(n, Subset::full(n.min(MAX_N)), bases)
    }

    /// Validates a basis family on `ground ⊆ [n]`.
    pub fn on_ground(
        n: usize,
        ground: Subset,
        bases: impl IntoIterator<Item = Subset>,
    ) -> Result<Matroid, MatroidError> {
        if n > MAX_N {
            return Err(MatroidError::GroundTooLarge(n));
        }
        let full = Subset::full(n);
        if !ground.is_subset_of(full) {
            return Err(MatroidError::NotInGround { set: ground, ground: full });
        }
        let mut bases: Vec<Subset> = bases.into_iter().collect();
        if bases.is_empty() {
            return Err(MatroidError::EmptyBasisSet);
        }
        if let Some(&bad) = bases.iter().find(|b| !b.is_subset_of(ground)) {
            return Err(MatroidError::NotInGround { set: bad, ground });
        }
        bases.sort_unstable();
        bases.dedup();
        let first = bases[0];
        if let Some(&other) = bases.iter().find(|b| b.len() != first.len()) {
            return Err(MatroidError::UnequalBasisSizes { first, other });
        }
        let m = Matroid::from_sorted_unchecked(n, ground, bases);
        if let Some((left, right, element)) = m.exchange_violation() {
            return Err(MatroidError::ExchangeViolation { left, right, element });
        }
        Ok(m)
    }

    /// Builds without checking the exchange axiom. `bases` must be sorted,
    /// deduplicated, nonempty and of equal size.
    pub(crate) fn from_sorted_unchecked(n: usize, ground: Subset, bases: Vec<Subset>) -> Matroid {
        debug_assert!(!bases.is_empty());
        debug_assert!(bases.windows(2).all(|w| w[0] < w[1]));
        let mut lookup = MaskTable::new(n);
        for &b in &bases {
            lookup.set(b);
        }
        Matroid {
            n,
            ground,
            rank: bases[0].len(),
            bases,
            lookup,
        }
    }

    pub(crate) fn from_unsorted_unchecked(n: usize, ground: Subset, mut bases: Vec<Subset>) -> Matroid {
        bases.sort_unstable();
        bases.dedup();
        Matroid::from_sorted_unchecked(n, ground, bases)
    }

    /// The uniform matroid `U_{k,S}`. Returns `None` when `k > |S|`.
    pub fn uniform(n: usize, ground: Subset, k: usize) -> Option<Matroid> {
        if k > ground.len() {
            return None;
        }
        Some(Matroid::from_sorted_unchecked(n, ground, ground.k_subsets(k).collect()))
    }

    /// The free matroid on `[n]`.
    pub fn free(n: usize) -> Matroid {
        Matroid::from_sorted_unchecked(n, Subset::full(n), vec![Subset::full(n)])
    }

    /// Returns the first `(B₁, B₂, b₁)` with `b₁ ∈ B₁ − B₂` and no `b₂ ∈ B₂ − B₁`
    /// making `(B₁ − b₁) ∪ b₂` a basis.
    fn exchange_violation(&self) -> Option<(Subset, Subset, usize)> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                let out = b1.difference(b2);
                let inn = b2.difference(b1);
                for x in out.iter() {
                    let removed = b1.without(x);
                    if !inn.iter().any(|y| self.is_basis(removed.with(y))) {
                        return Some((b1, b2, x));
                    }
                }
            }
        }
        None
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        self.ground
    }

    /// The rank `k` of the matroid (common size of all bases).
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Bases in increasing numeric (colex) order.
    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    #[inline]
    pub fn is_basis(&self, s: Subset) -> bool {
        self.lookup.get(s)
    }

    pub fn is_independent(&self, a: Subset) -> bool {
        self.bases.iter().any(|&b| a.is_subset_of(b))
    }

    /// Rank of a subset: the largest `|B ∩ A|` over bases `B`.
    pub fn rank_of(&self, a: Subset) -> usize {
        self.bases
            .iter()
            .map(|b| b.intersection(a).len())
            .max()
            .unwrap_or(0)
    }

    pub fn loops(&self) -> Subset {
        let union = self.bases.iter().fold(Subset::EMPTY, |acc, &b| acc.union(b));
        self.ground.difference(union)
    }

    pub fn coloops(&self) -> Subset {
        self.bases.iter().fold(self.ground, |acc, &b| acc.intersection(b))
    }

    pub fn is_uniform(&self) -> bool {
        self.bases.len() == crate::subset::binomial(self.ground.len(), self.rank)
    }

    /// Independence flag for every subset of the ground set, indexed by the
    /// compressed mask (position within the ground set).
    fn independence_table(&self) -> Vec<bool> {
        let m = self.ground.len();
        let mut indep = vec![false; 1 << m];
        for &b in &self.bases {
            indep[b.compress(self.ground).bits() as usize] = true;
        }
        for mask in (0..indep.len()).rev() {
            if indep[mask] {
                let mut rest = mask;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    indep[mask ^ bit] = true;
                    rest ^= bit;
                }
            }
        }
        indep
    }

    /// All independent sets, in increasing numeric order.
    pub fn independent_sets(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = self
            .independence_table()
            .iter()
            .enumerate()
            .filter(|(_, &ok)| ok)
            .map(|(mask, _)| Subset(mask as u32).expand(self.ground))
            .collect();
        out.sort_unstable();
        out
    }

    /// Inclusion-minimal dependent sets, ordered by size and then colex.
    pub fn circuits(&self) -> Vec<Subset> {
        let indep = self.independence_table();
        let m = self.ground.len();
        let mut out = Vec::new();
        for size in 1..=m {
            for c in Subset::full(m).k_subsets(size) {
                let c_bits = c.bits() as usize;
                if indep[c_bits] {
                    continue;
                }
                if c.iter().all(|e| indep[c.without(e).bits() as usize]) {
                    out.push(c.expand(self.ground));
                }
            }
        }
        out
    }

    /// Circuits of the dual matroid.
    pub fn cocircuits(&self) -> Vec<Subset> {
        self.dual().circuits()
    }

    /// The largest superset of `a` (inside the ground set) with the same rank.
    pub fn closure(&self, a: Subset) -> Subset {
        let r = self.rank_of(a);
        self.ground
            .iter()
            .filter(|&e| a.contains(e) || self.rank_of(a.with(e)) == r)
            .collect()
    }

    /// Bases are the complements (within the ground set) of the bases.
    pub fn dual(&self) -> Matroid {
        let bases = self.bases.iter().map(|&b| self.ground.difference(b)).collect();
        Matroid::from_unsorted_unchecked(self.n, self.ground, bases)
    }

    fn check_in_ground(&self, s: Subset) -> Result<(), MatroidError> {
        if s.is_subset_of(self.ground) {
            Ok(())
        } else {
            Err(MatroidError::NotInGround { set: s, ground: self.ground })
        }
    }

    /// `M|S`: maximal intersections `B ∩ S`.
    pub fn restrict(&self, s: Subset) -> Result<Matroid, MatroidError> {
        self.check_in_ground(s)?;
        let r = self.rank_of(s);
        let bases = self
            .bases
            .iter()
            .map(|b| b.intersection(s))
            .filter(|b| b.len() == r)
            .collect();
        Ok(Matroid::from_unsorted_unchecked(self.n, s, bases))
    }

    /// `M/T`: the sets `B − T` for bases meeting `T` maximally.
    pub fn contract(&self, t: Subset) -> Result<Matroid, MatroidError> {
        self.check_in_ground(t)?;
        let r = self.rank_of(t);
        let bases = self
            .bases
            .iter()
            .filter(|b| b.intersection(t).len() == r)
            .map(|b| b.difference(t))
            .collect();
        Ok(Matroid::from_unsorted_unchecked(self.n, self.ground.difference(t), bases))
    }

    /// Deletion of `a`, i.e. restriction to the ground set minus `a`.
    pub fn delete(&self, a: Subset) -> Result<Matroid, MatroidError> {
        self.check_in_ground(a)?;
        self.restrict(self.ground.difference(a))
    }

    /// Direct sum of matroids on disjoint ground sets inside a common `[n]`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        if !self.ground.is_disjoint(other.ground) {
            return Err(MatroidError::OverlappingGroundSets(self.ground, other.ground));
        }
        let n = self.n.max(other.n);
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &a in &self.bases {
            for &b in &other.bases {
                bases.push(a.union(b));
            }
        }
        Ok(Matroid::from_unsorted_unchecked(n, self.ground.union(other.ground), bases))
    }

    /// Connected components: classes of the closure of the single-exchange
    /// relation. Loops and coloops come out as singletons. Sorted by least element.
    pub fn connected_components(&self) -> Vec<Subset> {
        let elems = self.ground.to_vec();
        let mut parent: Vec<usize> = (0..elems.len()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let pos = |e: usize| elems.iter().position(|&x| x == e).unwrap();
        for &b in &self.bases {
            let outside = self.ground.difference(b);
            for a in b.iter() {
                let removed = b.without(a);
                for c in outside.iter() {
                    if self.is_basis(removed.with(c)) {
                        let (ra, rc) = (find(&mut parent, pos(a)), find(&mut parent, pos(c)));
                        if ra != rc {
                            parent[ra.max(rc)] = ra.min(rc);
                        }
                    }
                }
            }
        }
        let mut classes: Vec<Subset> = Vec::new();
        let mut root_of: Vec<Option<usize>> = vec![None; elems.len()];
        for (i, &e) in elems.iter().enumerate() {
            let r = find(&mut parent, i);
            match root_of[r] {
                Some(ci) => classes[ci] = classes[ci].with(e),
                None => {
                    root_of[r] = Some(classes.len());
                    classes.push(Subset::singleton(e));
                }
            }
        }
        classes
    }

    /// Connected when there is at most one component.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Dimension of the basis polytope: `|E| − c(M)`.
    pub fn polytope_dim(&self) -> usize {
        self.ground.len() - self.connected_components().len()
    }

    /// The matroid whose bases are the `w`-maximal bases, built from the
    /// flag of weight levels as `⊕ (M|A_i)/A_{i−1}`. `w[e - 1]` is the weight
    /// of element `e`; entries outside the ground set are ignored.
    pub fn face_matroid<W: Ord>(&self, w: &[W]) -> Result<Matroid, MatroidError> {
        if w.len() != self.n {
            return Err(MatroidError::WeightLength { expected: self.n, got: w.len() });
        }
        let mut order: Vec<usize> = self.ground.to_vec();
        order.sort_by(|&a, &b| w[b - 1].cmp(&w[a - 1]));
        let mut face: Option<Matroid> = None;
        let mut prev = Subset::EMPTY;
        let mut i = 0;
        while i < order.len() {
            let mut level = prev;
            let mut j = i;
            while j < order.len() && w[order[j] - 1] == w[order[i] - 1] {
                level = level.with(order[j]);
                j += 1;
            }
            let piece = self.restrict(level)?.contract(prev)?;
            face = Some(match face {
                None => piece,
                Some(acc) => acc.direct_sum(&piece)?,
            });
            prev = level;
            i = j;
        }
        Ok(face.unwrap_or_else(|| self.clone()))
    }

    /// Relabels the ground set onto `[|S|]` keeping the inherited order.
    pub fn reindexed(&self) -> Matroid {
        let m = self.ground.len();
        let bases = self.bases.iter().map(|b| b.compress(self.ground)).collect();
        Matroid::from_sorted_unchecked(m, Subset::full(m), bases)
    }

    /// Moves a matroid on `[m]` onto the ground set `target` (with `|target| = m`)
    /// inside `[n]`, matching orders.
    pub fn embedded(&self, n: usize, target: Subset) -> Matroid {
        debug_assert_eq!(self.ground, Subset::full(target.len()));
        let bases = self.bases.iter().map(|b| b.expand(target)).collect();
        Matroid::from_unsorted_unchecked(n, target, bases)
    }

    /// Bases sorted lexicographically by their element sequences.
    pub fn bases_lex(&self) -> Vec<Subset> {
        let mut v = self.bases.clone();
        v.sort_by(|a, b| a.lex_cmp(*b));
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(e: &[usize]) -> Subset {
        Subset::from_elems(e.iter().copied())
    }

    fn u(k: usize, n: usize) -> Matroid {
        Matroid::uniform(n, Subset::full(n), k).unwrap()
    }

    /// Bases {a, b} with a ∈ {1,3}, b ∈ {2,4}.
    fn crossing_sum() -> Matroid {
        Matroid::from_bases(4, [s(&[1, 2]), s(&[1, 4]), s(&[2, 3]), s(&[3, 4])]).unwrap()
    }

    fn parallel_sum() -> Matroid {
        Matroid::from_bases(4, [s(&[1, 3]), s(&[1, 4]), s(&[2, 3]), s(&[2, 4])]).unwrap()
    }

    #[test]
    fn validates_uniform() {
        let m = Matroid::from_bases(4, Subset::full(4).k_subsets(2)).unwrap();
        assert_eq!(m, u(2, 4));
        assert_eq!(m.rank(), 2);
        assert_eq!(m.bases().len(), 6);
    }

    #[test]
    fn rejects_exchange_violation_with_witness() {
        let err = Matroid::from_bases(4, [s(&[1, 2]), s(&[3, 4])]).unwrap_err();
        assert_eq!(
            err,
            MatroidError::ExchangeViolation { left: s(&[1, 2]), right: s(&[3, 4]), element: 1 }
        );
    }

    #[test]
    fn rank_zero_and_error_paths() {
        let m = Matroid::from_bases(1, [Subset::EMPTY]).unwrap();
        assert_eq!(m.rank(), 0);
        assert_eq!(m.loops(), s(&[1]));
        assert_eq!(Matroid::from_bases(3, []).unwrap_err(), MatroidError::EmptyBasisSet);
        assert!(matches!(
            Matroid::from_bases(3, [s(&[1]), s(&[1, 2])]),
            Err(MatroidError::UnequalBasisSizes { .. })
        ));
        assert!(matches!(
            Matroid::from_bases(2, [s(&[3])]),
            Err(MatroidError::NotInGround { .. })
        ));
        assert!(matches!(Matroid::from_bases(17, [Subset::EMPTY]), Err(MatroidError::GroundTooLarge(17))));
        let empty = Matroid::from_bases(0, [Subset::EMPTY]).unwrap();
        assert_eq!(empty.rank(), 0);
        assert!(empty.is_connected());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(u(2, 4).rank_of(s(&[1])), 1);
        assert_eq!(crossing_sum().rank_of(s(&[1, 3])), 1);
        assert_eq!(crossing_sum().rank_of(Subset::EMPTY), 0);
    }

    #[test]
    fn circuit_examples() {
        let c: Vec<_> = u(2, 4).circuits();
        assert_eq!(c, Subset::full(4).k_subsets(3).collect::<Vec<_>>());
        assert_eq!(crossing_sum().circuits(), vec![s(&[1, 3]), s(&[2, 4])]);
        assert!(Matroid::free(3).circuits().is_empty());
        let indep = u(1, 2).independent_sets();
        assert_eq!(indep, vec![Subset::EMPTY, s(&[1]), s(&[2])]);
    }

    #[test]
    fn closure_examples() {
        assert_eq!(u(2, 4).closure(s(&[1])), s(&[1]));
        assert_eq!(parallel_sum().closure(s(&[1])), s(&[1, 2]));
        assert_eq!(crossing_sum().closure(Subset::full(4)), Subset::full(4));
    }

    #[test]
    fn dual_examples() {
        assert_eq!(u(2, 4).dual(), u(2, 4));
        assert_eq!(Matroid::free(3).dual(), Matroid::from_bases(3, [Subset::EMPTY]).unwrap());
        let m = u(2, 4);
        let t = s(&[1]);
        let lhs = m.contract(t).unwrap().dual();
        let rhs = m.dual().restrict(s(&[2, 3, 4])).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, Matroid::uniform(4, s(&[2, 3, 4]), 2).unwrap());
    }

    #[test]
    fn restriction_examples() {
        assert_eq!(u(2, 4).restrict(s(&[1, 2, 3])).unwrap(), Matroid::uniform(4, s(&[1, 2, 3]), 2).unwrap());
        assert_eq!(
            parallel_sum().restrict(s(&[1, 2])).unwrap(),
            Matroid::uniform(4, s(&[1, 2]), 1).unwrap()
        );
        let empty = u(2, 4).restrict(Subset::EMPTY).unwrap();
        assert_eq!(empty.rank(), 0);
        assert_eq!(empty.ground(), Subset::EMPTY);
        assert!(u(2, 3).restrict(s(&[4])).is_err());
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(u(2, 4).contract(s(&[1])).unwrap(), Matroid::uniform(4, s(&[2, 3, 4]), 1).unwrap());
        assert_eq!(crossing_sum().contract(Subset::EMPTY).unwrap(), crossing_sum());
    }

    #[test]
    fn direct_sum_examples() {
        let a = Matroid::uniform(4, s(&[1, 2]), 1).unwrap();
        let b = Matroid::uniform(4, s(&[3, 4]), 1).unwrap();
        assert_eq!(a.direct_sum(&b).unwrap(), parallel_sum());
        let nothing = Matroid::on_ground(4, Subset::EMPTY, [Subset::EMPTY]).unwrap();
        assert_eq!(parallel_sum().direct_sum(&nothing).unwrap(), parallel_sum());
        assert!(matches!(a.direct_sum(&a), Err(MatroidError::OverlappingGroundSets(..))));
    }

    #[test]
    fn component_examples() {
        assert_eq!(u(2, 4).connected_components(), vec![Subset::full(4)]);
        assert_eq!(crossing_sum().connected_components(), vec![s(&[1, 3]), s(&[2, 4])]);
        let loops = Matroid::from_bases(2, [Subset::EMPTY]).unwrap();
        assert_eq!(loops.connected_components(), vec![s(&[1]), s(&[2])]);
    }

    #[test]
    fn polytope_dimension() {
        assert_eq!(u(2, 4).polytope_dim(), 3);
        assert_eq!(crossing_sum().polytope_dim(), 2);
        assert_eq!(Matroid::from_bases(1, [Subset::EMPTY]).unwrap().polytope_dim(), 0);
    }

    #[test]
    fn face_examples() {
        let m = u(2, 4);
        assert_eq!(m.face_matroid(&[0, 0, 0, 0]).unwrap(), m);
        let expected = Matroid::uniform(4, s(&[1]), 1)
            .unwrap()
            .direct_sum(&Matroid::uniform(4, s(&[2, 3, 4]), 1).unwrap())
            .unwrap();
        assert_eq!(m.face_matroid(&[1, 0, 0, 0]).unwrap(), expected);
        let expected = Matroid::uniform(4, s(&[1, 2]), 2)
            .unwrap()
            .direct_sum(&Matroid::uniform(4, s(&[3, 4]), 0).unwrap())
            .unwrap();
        assert_eq!(m.face_matroid(&[1, 1, 0, 0]).unwrap(), expected);
        assert!(m.face_matroid(&[1, 2]).is_err());
    }

    #[test]
    fn reindex_and_embed() {
        let r = u(2, 4).restrict(s(&[2, 4])).unwrap();
        let re = r.reindexed();
        assert_eq!(re, Matroid::free(2));
        assert_eq!(re.embedded(4, s(&[2, 4])), r);
    }
}
