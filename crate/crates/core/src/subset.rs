//! Subsets of an ordered ground set `[n] = {1, ..., n}` packed into one machine word.

use std::fmt;

/// Largest supported ground set. Every subset fits in the low 16 bits of a `u32`.
pub const MAX_N: usize = 16;

/// A subset of `[n]`. Element `e` lives in bit `e - 1`, so numeric order of the
/// masks among sets of equal size is colex order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full ground set `[n]`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_N);
        if n == 0 {
            Subset(0)
        } else {
            Subset(u32::MAX >> (32 - n))
        }
    }

    pub fn singleton(e: usize) -> Subset {
        debug_assert!((1..=MAX_N).contains(&e));
        Subset(1 << (e - 1))
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Subset {
        elems
            .into_iter()
            .fold(Subset::EMPTY, |acc, e| acc.with(e))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        (1..=32).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    #[inline]
    pub fn with(self, e: usize) -> Subset {
        Subset(self.0 | (1 << (e - 1)))
    }

    #[inline]
    pub fn without(self, e: usize) -> Subset {
        Subset(self.0 & !(1 << (e - 1)))
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    pub fn last(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(32 - self.0.leading_zeros() as usize)
        }
    }

    /// Number of members strictly smaller than `e`.
    #[inline]
    pub fn count_below(self, e: usize) -> usize {
        (self.0 & ((1u32 << (e - 1)) - 1)).count_ones() as usize
    }

    /// Members in increasing order.
    pub fn iter(self) -> Elems {
        Elems(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the sorted element sequences.
    pub fn lex_cmp(self, other: Subset) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }

    /// Maps a subset of `ground` onto `[|ground|]` preserving the inherited order.
    pub fn compress(self, ground: Subset) -> Subset {
        debug_assert!(self.is_subset_of(ground));
        let mut out = 0u32;
        for (pos, e) in ground.iter().enumerate() {
            if self.contains(e) {
                out |= 1 << pos;
            }
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`].
    pub fn expand(self, ground: Subset) -> Subset {
        let mut out = 0u32;
        for (pos, e) in ground.iter().enumerate() {
            if self.0 & (1 << pos) != 0 {
                out |= 1 << (e - 1);
            }
        }
        Subset(out)
    }

    /// All subsets of `self`, in increasing numeric order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let m = self.0;
        let mut cur = Some(0u32);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == m { None } else { Some((s.wrapping_sub(m)) & m) };
            Some(Subset(s))
        })
    }

    /// The `k`-subsets of `self`, in colex order.
    pub fn k_subsets(self, k: usize) -> impl Iterator<Item = Subset> {
        let ground = self;
        let m = ground.len();
        let mut next = if k <= m { Some(Subset::full(k).0) } else { None };
        let limit = 1u32 << m;
        std::iter::from_fn(move || {
            let v = next?;
            next = if k == 0 {
                None
            } else {
                // Gosper's hack on positions within `ground`.
                let c = v & v.wrapping_neg();
                let r = v + c;
                let nv = (((r ^ v) >> 2) / c) | r;
                if nv < limit {
                    Some(nv)
                } else {
                    None
                }
            };
            Some(Subset(v).expand(ground))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl serde::Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(self.len()))?;
        for e in self.iter() {
            seq.serialize_element(&e)?;
        }
        seq.end()
    }
}

impl<'de> serde::Deserialize<'de> for Subset {
    /// Accepts a strictly increasing list of elements in `1..=MAX_N`.
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let elems = Vec::<usize>::deserialize(de)?;
        if elems.iter().any(|&e| e == 0 || e > MAX_N) {
            return Err(serde::de::Error::custom(format!("elements must lie in 1..={MAX_N}")));
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(serde::de::Error::custom("subset entries must be strictly increasing"));
        }
        Ok(Subset::from_elems(elems))
    }
}

pub struct Elems(u32);

impl Iterator for Elems {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz as usize + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Elems {}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_elems(iter)
    }
}

/// The cyclic interval `[start, end]` of `[n]`, wrapping past `n` when `end < start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicInterval {
    pub start: usize,
    pub end: usize,
}

impl CyclicInterval {
    pub fn new(start: usize, end: usize) -> Self {
        CyclicInterval { start, end }
    }

    pub fn contains(&self, e: usize) -> bool {
        if self.start <= self.end {
            self.start <= e && e <= self.end
        } else {
            e >= self.start || e <= self.end
        }
    }

    pub fn to_subset(&self, n: usize) -> Subset {
        (1..=n).filter(|&e| self.contains(e)).collect()
    }

    /// Every interval `[i, j]` with `i, j ∈ [n]`, in row-major order of `(i, j)`.
    pub fn all(n: usize) -> impl Iterator<Item = CyclicInterval> {
        (1..=n).flat_map(move |i| (1..=n).map(move |j| CyclicInterval::new(i, j)))
    }
}

/// Whether `s` is a cyclic interval of `[n]`. The empty set is not.
pub fn is_cyclic_interval(s: Subset, n: usize) -> bool {
    if s.is_empty() {
        return false;
    }
    if s == Subset::full(n) {
        return true;
    }
    // Exactly one element whose cyclic predecessor is missing.
    let starts = s
        .iter()
        .filter(|&e| {
            let pred = if e == 1 { n } else { e - 1 };
            !s.contains(pred)
        })
        .count();
    starts == 1
}

/// Sign of the permutation that sorts `tuple`, or 0 when an entry repeats.
pub fn sort_sign(tuple: &[usize]) -> i8 {
    let mut sign = 1i8;
    for i in 0..tuple.len() {
        for j in (i + 1)..tuple.len() {
            match tuple[i].cmp(&tuple[j]) {
                std::cmp::Ordering::Equal => return 0,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    sign
}

/// Pascal's triangle up to `MAX_N`.
pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1usize;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Colex rank of a `k`-subset of `[m]` (bits 0..m).
#[inline]
pub(crate) fn colex_rank(s: Subset) -> usize {
    s.iter()
        .enumerate()
        .map(|(i, e)| binomial(e - 1, i + 1))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_subsets_are_colex_and_complete() {
        let all: Vec<_> = Subset::full(5).k_subsets(2).collect();
        assert_eq!(all.len(), 10);
        for (i, s) in all.iter().enumerate() {
            assert_eq!(colex_rank(*s), i);
            assert_eq!(s.len(), 2);
        }
        assert_eq!(Subset::full(3).k_subsets(0).collect::<Vec<_>>(), vec![Subset::EMPTY]);
        assert_eq!(Subset::full(3).k_subsets(4).count(), 0);
        assert_eq!(Subset::EMPTY.k_subsets(0).count(), 1);
    }

    #[test]
    fn k_subsets_of_sparse_ground() {
        let g = Subset::from_elems([2, 4, 7]);
        let got: Vec<_> = g.k_subsets(2).map(|s| s.to_vec()).collect();
        assert_eq!(got, vec![vec![2, 4], vec![2, 7], vec![4, 7]]);
    }

    #[test]
    fn subsets_enumerates_powerset() {
        let g = Subset::from_elems([1, 3, 4]);
        let all: Vec<_> = g.subsets().collect();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|s| s.is_subset_of(g)));
    }

    #[test]
    fn cyclic_interval_membership() {
        let wrap = CyclicInterval::new(4, 1);
        assert_eq!(wrap.to_subset(4), Subset::from_elems([1, 4]));
        assert_eq!(CyclicInterval::new(2, 3).to_subset(4), Subset::from_elems([2, 3]));
        assert_eq!(CyclicInterval::new(3, 2).to_subset(4), Subset::full(4));
        assert_eq!(CyclicInterval::all(4).count(), 16);
    }

    #[test]
    fn interval_recognition() {
        assert!(is_cyclic_interval(Subset::from_elems([1, 4]), 4));
        assert!(is_cyclic_interval(Subset::from_elems([2, 3]), 4));
        assert!(!is_cyclic_interval(Subset::from_elems([1, 3]), 4));
        assert!(is_cyclic_interval(Subset::full(4), 4));
        assert!(!is_cyclic_interval(Subset::EMPTY, 4));
        for n in 1..=6 {
            let from_intervals: std::collections::BTreeSet<_> =
                CyclicInterval::all(n).map(|iv| iv.to_subset(n)).collect();
            for s in Subset::full(n).subsets() {
                assert_eq!(is_cyclic_interval(s, n), from_intervals.contains(&s), "{s} in [{n}]");
            }
        }
    }

    #[test]
    fn compress_roundtrip() {
        let g = Subset::from_elems([2, 5, 6, 9]);
        let s = Subset::from_elems([5, 9]);
        assert_eq!(s.compress(g), Subset::from_elems([2, 4]));
        assert_eq!(s.compress(g).expand(g), s);
    }

    #[test]
    fn sort_sign_counts_inversions() {
        assert_eq!(sort_sign(&[2, 1]), -1);
        assert_eq!(sort_sign(&[1, 1]), 0);
        assert_eq!(sort_sign(&[3, 1, 2]), 1);
        assert_eq!(sort_sign(&[]), 1);
    }
}
