//! Structural identities for matroids, checked exhaustively on small ground
//! sets and on random subsets.

use std::sync::OnceLock;

use positroid::enumerate::enumerate_all_matroids;
use positroid::{Matroid, Subset};
use proptest::prelude::*;

fn cached(n: usize) -> &'static [Matroid] {
    static CACHE: OnceLock<Vec<Vec<Matroid>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=5).map(enumerate_all_matroids).collect())[n]
}

fn all_up_to(n_max: usize) -> Vec<Matroid> {
    (0..=n_max).flat_map(enumerate_all_matroids).collect()
}

fn brute_rank(m: &Matroid, a: Subset) -> usize {
    m.bases().iter().map(|b| b.intersection(a).len()).max().unwrap_or(0)
}

#[test]
fn dual_is_an_involution() {
    for m in all_up_to(6) {
        assert_eq!(m.dual().dual(), m);
        assert_eq!(m.dual().rank(), m.ground().len() - m.rank());
    }
}

#[test]
fn contraction_dualizes_to_restriction() {
    for m in all_up_to(5) {
        for t in m.ground().subsets() {
            let lhs = m.contract(t).unwrap().dual();
            let rhs = m.dual().restrict(m.ground().difference(t)).unwrap();
            assert_eq!(lhs, rhs, "{m:?} T={t}");
        }
    }
}

#[test]
fn components_give_a_direct_sum_decomposition() {
    for m in all_up_to(5) {
        let comps = m.connected_components();
        let mut covered = Subset::EMPTY;
        let mut sum: Option<Matroid> = None;
        for &c in &comps {
            assert!(covered.is_disjoint(c));
            covered = covered.union(c);
            let piece = m.restrict(c).unwrap();
            assert!(piece.is_connected());
            sum = Some(match sum {
                None => piece,
                Some(s) => s.direct_sum(&piece).unwrap(),
            });
        }
        assert_eq!(covered, m.ground());
        if let Some(s) = sum {
            assert_eq!(s, m);
        }
    }
}

#[test]
fn rank_matches_bases_and_is_submodular() {
    for m in all_up_to(5) {
        let subsets: Vec<Subset> = m.ground().subsets().collect();
        for &a in &subsets {
            let r = m.rank_of(a);
            assert_eq!(r, brute_rank(&m, a));
            assert!(r <= a.len());
            for &b in &subsets {
                let (ra, rb) = (r, m.rank_of(b));
                if a.is_subset_of(b) {
                    assert!(ra <= rb);
                }
                assert!(ra + rb >= m.rank_of(a.union(b)) + m.rank_of(a.intersection(b)));
            }
        }
    }
}

#[test]
fn face_matroid_bases_are_weight_maximizers() {
    for m in all_up_to(5) {
        let n = m.n();
        let grid = 3usize.pow(n as u32);
        for code in 0..grid {
            let w: Vec<i64> = (0..n).map(|i| ((code / 3usize.pow(i as u32)) % 3) as i64).collect();
            let weight = |b: &Subset| b.iter().map(|e| w[e - 1]).sum::<i64>();
            let best = m.bases().iter().map(weight).max().unwrap();
            let mut expected: Vec<Subset> = m.bases().iter().copied().filter(|b| weight(b) == best).collect();
            expected.sort();
            let face = m.face_matroid(&w).unwrap();
            let mut got = face.bases().to_vec();
            got.sort();
            assert_eq!(got, expected, "{m:?} w={w:?}");
        }
    }
}

#[test]
fn closure_is_idempotent_and_rank_preserving() {
    for m in all_up_to(5) {
        for a in m.ground().subsets() {
            let c = m.closure(a);
            assert!(a.is_subset_of(c));
            assert_eq!(m.rank_of(c), m.rank_of(a));
            assert_eq!(m.closure(c), c);
        }
    }
}

proptest! {
    #[test]
    fn restriction_and_deletion_agree(n in 1usize..=5, pick in 0usize..10_000, bits in 0u32..32) {
        let ms = cached(n);
        let m = &ms[pick % ms.len()];
        let s = Subset::from_elems((1..=n).filter(|e| bits >> (e - 1) & 1 == 1));
        let r = m.restrict(s).unwrap();
        prop_assert_eq!(&r, &m.delete(m.ground().difference(s)).unwrap());
        prop_assert_eq!(r.rank(), m.rank_of(s));
        for b in r.bases() {
            prop_assert!(m.is_independent(*b));
        }
    }
}
