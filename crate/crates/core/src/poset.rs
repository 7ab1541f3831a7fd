//! Finite posets: Hasse diagrams, Möbius functions, order complexes and the
//! graded/thin/Eulerian diagnostics.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("relation is not reflexive at element {0}")]
    NotReflexive(usize),
    #[error("relation is not antisymmetric at elements {0} and {1}")]
    NotAntisymmetric(usize, usize),
    #[error("relation is not transitive at elements {0}, {1}, {2}")]
    NotTransitive(usize, usize, usize),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("element {0} is out of range")]
    OutOfRange(usize),
}

/// Which subposet an order complex is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// Every element, except the adjoined bottom when there is one.
    Whole,
    /// Elements strictly between `x` and `y`.
    Open(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub graded: bool,
    pub rank_vector: Vec<usize>,
    pub thin: bool,
    pub eulerian: bool,
}

#[derive(Clone, Debug)]
pub struct Poset {
    labels: Vec<String>,
    leq: Vec<bool>,
    has_bottom: bool,
    /// A linear extension: `order[i]` is never above `order[j]` for `i < j`.
    order: Vec<usize>,
}

impl Poset {
    /// Builds a poset from a relation, checking the partial-order axioms.
    pub fn new(labels: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Poset, PosetError> {
        let n = labels.len();
        let mut table = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = leq(x, y);
            }
        }
        for x in 0..n {
            if !table[x * n + x] {
                return Err(PosetError::NotReflexive(x));
            }
            for y in x + 1..n {
                if table[x * n + y] && table[y * n + x] {
                    return Err(PosetError::NotAntisymmetric(x, y));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if !table[x * n + y] {
                    continue;
                }
                for z in 0..n {
                    if table[y * n + z] && !table[x * n + z] {
                        return Err(PosetError::NotTransitive(x, y, z));
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&y| (0..n).filter(|&x| table[x * n + y]).count());
        Ok(Poset { labels, leq: table, has_bottom: false, order })
    }

    /// Adjoins a new least element `0̂` at index 0; old element `i` becomes `i + 1`.
    pub fn with_bottom(&self, label: &str) -> Poset {
        let n = self.len();
        let m = n + 1;
        let mut leq = vec![false; m * m];
        leq[..m].iter_mut().for_each(|b| *b = true);
        for x in 0..n {
            for y in 0..n {
                leq[(x + 1) * m + y + 1] = self.leq(x, y);
            }
        }
        let mut labels = Vec::with_capacity(m);
        labels.push(label.to_string());
        labels.extend(self.labels.iter().cloned());
        let mut order = vec![0];
        order.extend(self.order.iter().map(|&x| x + 1));
        Poset { labels, leq, has_bottom: true, order }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn has_bottom(&self) -> bool {
        self.has_bottom
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    /// Cover relations `(lo, hi)`, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Elements with nothing strictly above them.
    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| !(0..self.len()).any(|y| self.lt(x, y))).collect()
    }

    /// `μ(x, ·)` on every element, zero where `x ≰ y`.
    fn mobius_row(&self, x: usize) -> Vec<i64> {
        let mut mu = vec![0i64; self.len()];
        let above: Vec<usize> = self.order.iter().copied().filter(|&z| self.leq(x, z)).collect();
        for (i, &z) in above.iter().enumerate() {
            mu[z] = if z == x {
                1
            } else {
                -above[..i].iter().filter(|&&w| self.leq(w, z)).map(|&w| mu[w]).sum::<i64>()
            };
        }
        mu
    }

    pub fn mobius(&self, x: usize, y: usize) -> Result<i64, PosetError> {
        self.check(x)?;
        self.check(y)?;
        if !self.leq(x, y) {
            return Err(PosetError::NotComparable(x, y));
        }
        Ok(self.mobius_row(x)[y])
    }

    fn check(&self, x: usize) -> Result<(), PosetError> {
        if x < self.len() {
            Ok(())
        } else {
            Err(PosetError::OutOfRange(x))
        }
    }

    /// Longest chain length from `x` to every element above it (`None` elsewhere).
    fn length_row(&self, x: usize) -> Vec<Option<usize>> {
        let mut len = vec![None; self.len()];
        for &z in &self.order {
            if !self.leq(x, z) {
                continue;
            }
            len[z] = Some(if z == x {
                0
            } else {
                self.order
                    .iter()
                    .filter(|&&w| self.leq(x, w) && self.lt(w, z))
                    .filter_map(|&w| len[w])
                    .max()
                    .map_or(1, |l| l + 1)
            });
        }
        len
    }

    /// Length of the longest chain from `x` to `y`.
    pub fn length(&self, x: usize, y: usize) -> Result<usize, PosetError> {
        self.check(x)?;
        self.check(y)?;
        self.length_row(x)[y].ok_or(PosetError::NotComparable(x, y))
    }

    /// Rank of each element: length of the longest chain below it.
    pub fn ranks(&self) -> Vec<usize> {
        let mut rank = vec![0usize; self.len()];
        for &z in &self.order {
            rank[z] = self
                .order
                .iter()
                .filter(|&&w| self.lt(w, z))
                .map(|&w| rank[w] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    pub fn diagnostics(&self) -> Diagnostics {
        let n = self.len();
        let rank = self.ranks();
        let covers = self.covers();
        let maximal = self.maximal_elements();
        let graded = covers.iter().all(|&(x, y)| rank[y] == rank[x] + 1)
            && maximal.windows(2).all(|w| rank[w[0]] == rank[w[1]]);
        let top = rank.iter().copied().max().map_or(0, |r| r + 1);
        let mut rank_vector = vec![0; top];
        for &r in &rank {
            rank_vector[r] += 1;
        }
        let mut thin = true;
        let mut eulerian = graded;
        for x in 0..n {
            let len = self.length_row(x);
            let mu = self.mobius_row(x);
            for y in 0..n {
                let Some(l) = len[y] else { continue };
                if l == 2 {
                    let size = (0..n).filter(|&z| self.leq(x, z) && self.leq(z, y)).count();
                    thin &= size == 4;
                }
                let expected = if l % 2 == 0 { 1 } else { -1 };
                eulerian &= mu[y] == expected;
            }
        }
        Diagnostics { graded, rank_vector, thin, eulerian }
    }

    /// Reduced Euler characteristic `χ̃ = Σ_{i≥0} (−1)^{i−1} c_i` of the order
    /// complex, where `c_i` counts chains with `i` elements and `c_0 = 1`
    /// (the empty chain). The empty complex gives `−1`.
    pub fn order_complex_euler(&self, part: Part) -> Result<i64, PosetError> {
        let members: Vec<usize> = match part {
            Part::Whole => self
                .order
                .iter()
                .copied()
                .filter(|&z| !(self.has_bottom && z == 0))
                .collect(),
            Part::Open(x, y) => {
                self.check(x)?;
                self.check(y)?;
                if !self.leq(x, y) {
                    return Err(PosetError::NotComparable(x, y));
                }
                self.order.iter().copied().filter(|&z| self.lt(x, z) && self.lt(z, y)).collect()
            }
        };
        // Alternating chain count ending at each element: a chain with top z
        // contributes (−1)^{|chain|−1}, so the sum for z is
        // 1 − Σ_{w<z} (sum for w).
        let mut ending = vec![0i64; self.len()];
        let mut total = -1i64;
        for (i, &z) in members.iter().enumerate() {
            let below: i64 = members[..i].iter().filter(|&&w| self.lt(w, z)).map(|&w| ending[w]).sum();
            ending[z] = 1 - below;
            total += ending[z];
        }
        Ok(total)
    }

    /// `{"elements": [...], "covers": [[lo, hi], ...], "ranks": [...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let covers: Vec<[usize; 2]> = self.covers().into_iter().map(|(a, b)| [a, b]).collect();
        serde_json::json!({
            "elements": self.labels,
            "covers": covers,
            "ranks": self.ranks(),
        })
    }

    /// Hasse diagram in Graphviz DOT, drawn bottom to top.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n", name.replace('"', "\\\""));
        for (i, label) in self.labels.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", label.replace('"', "\\\"")));
        }
        for (a, b) in self.covers() {
            out.push_str(&format!("  n{a} -> n{b};\n"));
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boolean_lattice(m: usize) -> Poset {
        let labels = (0..1usize << m).map(|s| format!("{s:b}")).collect();
        Poset::new(labels, |x, y| x & y == x).unwrap()
    }

    fn chain(len: usize) -> Poset {
        Poset::new((0..=len).map(|i| i.to_string()).collect(), |x, y| x <= y).unwrap()
    }

    /// Reduced Euler characteristic by listing every chain explicitly.
    fn euler_by_listing(p: &Poset, members: &[usize]) -> i64 {
        let mut total = 0i64;
        for mask in 0u64..(1 << members.len()) {
            let chosen: Vec<usize> =
                (0..members.len()).filter(|i| mask >> i & 1 == 1).map(|i| members[i]).collect();
            let is_chain = chosen.iter().all(|&a| chosen.iter().all(|&b| p.leq(a, b) || p.leq(b, a)));
            if is_chain {
                total += if chosen.len().is_multiple_of(2) { -1 } else { 1 };
            }
        }
        total
    }

    #[test]
    fn rejects_non_orders() {
        let labels = || vec!["a".to_string(), "b".to_string(), "c".to_string()];
        assert_eq!(Poset::new(labels(), |x, y| x < y).unwrap_err(), PosetError::NotReflexive(0));
        assert_eq!(Poset::new(labels(), |_, _| true).unwrap_err(), PosetError::NotAntisymmetric(0, 1));
        let bad = Poset::new(labels(), |x, y| x == y || (x, y) == (0, 1) || (x, y) == (1, 2));
        assert_eq!(bad.unwrap_err(), PosetError::NotTransitive(0, 1, 2));
    }

    #[test]
    fn mobius_examples() {
        let b3 = boolean_lattice(3);
        assert_eq!(b3.mobius(5, 5).unwrap(), 1);
        assert_eq!(b3.mobius(0, 1).unwrap(), -1);
        assert_eq!(b3.mobius(0, 7).unwrap(), -1);
        assert_eq!(b3.mobius(0, 3).unwrap(), 1);
        assert_eq!(b3.mobius(1, 2).unwrap_err(), PosetError::NotComparable(1, 2));
        let c = chain(3);
        assert_eq!(c.mobius(0, 2).unwrap(), 0);
    }

    #[test]
    fn diagnostics_examples() {
        let d = boolean_lattice(3).diagnostics();
        assert_eq!(d, Diagnostics { graded: true, rank_vector: vec![1, 3, 3, 1], thin: true, eulerian: true });
        let c = chain(2).diagnostics();
        assert!(c.graded);
        assert!(!c.thin);
        assert!(!c.eulerian);
        let two = chain(1).diagnostics();
        assert!(two.graded && two.thin && two.eulerian);
        // 0 < 1 < 2 and 0 < 3: maximal chains of different lengths.
        let ungraded = Poset::new((0..4).map(|i| i.to_string()).collect(), |x, y| {
            x == y || x == 0 || (x == 1 && y == 2)
        })
        .unwrap();
        assert!(!ungraded.diagnostics().graded);
    }

    #[test]
    fn euler_examples() {
        let b3 = boolean_lattice(3);
        assert_eq!(b3.order_complex_euler(Part::Open(0, 1)).unwrap(), -1);
        // Proper part of B3 is a hexagon: a circle.
        assert_eq!(b3.order_complex_euler(Part::Open(0, 7)).unwrap(), -1);
        // B3 minus its bottom has a top, so it is a cone.
        let cone = boolean_lattice(3);
        let minus_bottom = Poset::new(cone.labels()[1..].to_vec(), |x, y| cone.leq(x + 1, y + 1)).unwrap();
        assert_eq!(minus_bottom.with_bottom("0").order_complex_euler(Part::Whole).unwrap(), 0);
        assert_eq!(
            b3.order_complex_euler(Part::Open(1, 2)).unwrap_err(),
            PosetError::NotComparable(1, 2)
        );
    }

    #[test]
    fn euler_matches_listing_and_hall() {
        for p in [boolean_lattice(3), boolean_lattice(4), chain(4)] {
            for x in 0..p.len() {
                for y in 0..p.len() {
                    if !p.leq(x, y) {
                        continue;
                    }
                    let members: Vec<usize> = (0..p.len()).filter(|&z| p.lt(x, z) && p.lt(z, y)).collect();
                    let chi = p.order_complex_euler(Part::Open(x, y)).unwrap();
                    assert_eq!(chi, euler_by_listing(&p, &members));
                    if x != y {
                        assert_eq!(chi, p.mobius(x, y).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn bottom_and_exports() {
        let p = Poset::new(vec!["a".into(), "b".into()], |x, y| x == y).unwrap().with_bottom("0");
        assert!(p.has_bottom());
        assert_eq!(p.covers(), vec![(0, 1), (0, 2)]);
        assert_eq!(p.ranks(), vec![0, 1, 1]);
        let json = p.to_json();
        assert_eq!(json["elements"], serde_json::json!(["0", "a", "b"]));
        assert_eq!(json["covers"], serde_json::json!([[0, 1], [0, 2]]));
        let dot = p.to_dot("p");
        assert!(dot.contains("n0 -> n1;") && dot.contains("n0 -> n2;"));
        assert_eq!(dot.matches("[label=").count(), 3);
    }
}
