//! The positive MacPhersonian: positively oriented matroids of fixed rank
//! ordered by specialization.

use thiserror::Error;

use crate::chirotope::Chirotope;
use crate::enumerate::{enumerate_pom_indicators, enumerate_positively_oriented};
use crate::matroid::Matroid;
use crate::poset::Poset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("chirotopes differ in ground set or rank")]
pub struct ShapeMismatch;

/// `χ ⤳ χ′`: up to global sign, `χ` agrees with `χ′` wherever `χ′` is nonzero.
pub fn specializes(chi: &Chirotope, chi_prime: &Chirotope) -> Result<bool, ShapeMismatch> {
    if chi.n() != chi_prime.n() || chi.ground() != chi_prime.ground() || chi.rank() != chi_prime.rank() {
        return Err(ShapeMismatch);
    }
    let agrees = |eps: i8| {
        chi_prime
            .signs()
            .iter()
            .zip(chi.signs())
            .all(|(&p, &c)| p == 0 || c == eps * p)
    };
    Ok(agrees(1) || agrees(-1))
}

/// `MacP⁺(k, n)` with an adjoined bottom at index 0; element `i + 1` is
/// `matroids[i]` with its indicator chirotope.
#[derive(Clone, Debug)]
pub struct MacPoset {
    pub k: usize,
    pub n: usize,
    pub poset: Poset,
    pub matroids: Vec<Matroid>,
    pub chirotopes: Vec<Chirotope>,
}

/// Label of a matroid by its bases in lexicographic order, e.g. `12 13 23`
/// (comma-separated elements when `n ≥ 10`).
pub fn basis_label(m: &Matroid) -> String {
    let sep = if m.n() >= 10 { "," } else { "" };
    m.bases_lex()
        .iter()
        .map(|b| b.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(sep))
        .map(|s| if s.is_empty() { "∅".to_string() } else { s })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Builds `MacP⁺(k, n) ∪ 0̂` on the canonical representatives: one indicator
/// chirotope per positroid, ordered by specialization. Elements are sorted by
/// number of bases, then lexicographically by basis list.
pub fn build_macphersonian_plus(k: usize, n: usize) -> MacPoset {
    let mut items = enumerate_pom_indicators(n, k);
    items.sort_by(|(a, _), (b, _)| {
        a.bases().len().cmp(&b.bases().len()).then_with(|| {
            let (la, lb) = (a.bases_lex(), b.bases_lex());
            la.iter().map(|s| s.to_vec()).cmp(lb.iter().map(|s| s.to_vec()))
        })
    });
    let (matroids, chirotopes): (Vec<Matroid>, Vec<Chirotope>) = items.into_iter().unzip();
    let labels = matroids.iter().map(basis_label).collect();
    let poset = Poset::new(labels, |x, y| {
        specializes(&chirotopes[y], &chirotopes[x]).expect("same shape")
    })
    .expect("specialization is a partial order on canonical representatives")
    .with_bottom("0");
    MacPoset { k, n, poset, matroids, chirotopes }
}

/// The reorientation-closed reading: every chirotope that some reorientation
/// makes nonnegative, ordered by specialization, with a bottom adjoined.
pub fn build_macphersonian_plus_reoriented(k: usize, n: usize) -> (Poset, Vec<Chirotope>) {
    let chis = enumerate_positively_oriented(n, k);
    let labels = chis.iter().map(|c| format!("{c:?}")).collect();
    let poset = Poset::new(labels, |x, y| specializes(&chis[y], &chis[x]).expect("same shape"))
        .expect("specialization is a partial order up to global sign")
        .with_bottom("0");
    (poset, chis)
}

impl MacPoset {
    /// Whether specialization agrees with basis containment on every pair.
    pub fn containment_mismatch(&self) -> Option<(usize, usize)> {
        let m = self.matroids.len();
        for x in 0..m {
            for y in 0..m {
                let contained = self.matroids[x].bases().iter().all(|&b| self.matroids[y].is_basis(b));
                if contained != self.poset.leq(x + 1, y + 1) {
                    return Some((x + 1, y + 1));
                }
            }
        }
        None
    }

    /// Index of the uniform indicator, if it is the unique maximal element.
    pub fn unique_top(&self) -> Option<usize> {
        match self.poset.maximal_elements().as_slice() {
            [t] if *t > 0 && self.matroids[*t - 1].is_uniform() => Some(*t),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Part;
    use crate::subset::Subset;

    #[test]
    fn specializes_examples() {
        let top = Chirotope::validate(4, 2, |_| 1).unwrap();
        let blocks = Matroid::from_bases(
            4,
            [[1, 3], [1, 4], [2, 3], [2, 4]].map(Subset::from_elems),
        )
        .unwrap();
        let small = Chirotope::indicator(&blocks).unwrap();
        assert!(specializes(&top, &small).unwrap());
        assert!(!specializes(&small, &top).unwrap());
        assert!(specializes(&small, &small).unwrap());
        let neg = Chirotope::validate(4, 2, |_| -1).unwrap();
        assert!(specializes(&neg, &top).unwrap());
        let other = Chirotope::validate(4, 1, |_| 1).unwrap();
        assert_eq!(specializes(&top, &other), Err(ShapeMismatch));
    }

    #[test]
    fn rank_one_on_three() {
        let mac = build_macphersonian_plus(1, 3);
        assert_eq!(mac.poset.len(), 8);
        assert_eq!(mac.containment_mismatch(), None);
        let top = mac.unique_top().unwrap();
        assert_eq!(mac.poset.mobius(0, top).unwrap(), -1);
        assert_eq!(mac.poset.length(0, top).unwrap(), 3);
        let d = mac.poset.diagnostics();
        assert!(d.graded && d.thin && d.eulerian);
        assert_eq!(d.rank_vector, vec![1, 3, 3, 1]);
        assert_eq!(mac.poset.order_complex_euler(Part::Whole).unwrap(), 0);
        assert_eq!(mac.poset.order_complex_euler(Part::Open(0, 1)).unwrap(), -1);
    }

    #[test]
    fn full_rank_is_a_chain() {
        for n in 0..5 {
            let mac = build_macphersonian_plus(n, n);
            assert_eq!(mac.poset.len(), 2);
            assert!(mac.poset.diagnostics().eulerian);
        }
        let zero = build_macphersonian_plus(0, 3);
        assert_eq!(zero.poset.len(), 2);
        assert_eq!(zero.poset.labels()[1], "∅");
    }

    #[test]
    fn two_four() {
        let mac = build_macphersonian_plus(2, 4);
        let top = mac.unique_top().unwrap();
        assert_eq!(mac.matroids[top - 1], Matroid::uniform(4, Subset::full(4), 2).unwrap());
        assert_eq!(mac.containment_mismatch(), None);
        let d = mac.poset.diagnostics();
        assert!(d.graded && d.thin && d.eulerian);
        assert_eq!(mac.poset.length(0, top).unwrap(), 2 * 2 + 1);
        for x in 1..mac.poset.len() {
            let l = mac.poset.length(0, x).unwrap() as i64;
            let expected = if l % 2 == 0 { 1 } else { -1 };
            assert_eq!(mac.poset.order_complex_euler(Part::Open(0, x)).unwrap(), expected);
        }
        assert_eq!(mac.poset.order_complex_euler(Part::Whole).unwrap(), 0);
    }

    #[test]
    fn reoriented_reading_is_larger() {
        let (p, chis) = build_macphersonian_plus_reoriented(1, 2);
        assert_eq!(chis.len(), 4);
        assert_eq!(p.len(), 5);
        assert_eq!(build_macphersonian_plus(1, 2).poset.len(), 4);
    }
}
