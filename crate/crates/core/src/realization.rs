//! Exact rational matrices, their maximal minors, and the matroids and
//! chirotopes they realize.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::chirotope::{Chirotope, ChirotopeError};
use crate::matroid::Matroid;
use crate::positroid::{grassmann_necklace, is_positroid};
use crate::subset::{Subset, MAX_N};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("expected a column set of size {expected}, got {got}")]
    WrongSize { expected: usize, got: usize },
    #[error("matrix has rank below its row count")]
    RankDeficient,
    #[error("moment-curve parameters must be strictly increasing")]
    NotIncreasing,
    #[error("matrix rows have inconsistent lengths")]
    Ragged,
    #[error("{0} columns exceed the supported maximum of {MAX_N}")]
    TooManyColumns(usize),
    #[error("column index {0} is out of range")]
    ColumnOutOfRange(usize),
    #[error("not a positroid (certificate {0})")]
    NotAPositroid(Subset),
    #[error("matroid must live on the full ground set [n]")]
    NotFullGround,
    #[error("minor signs violate the chirotope axioms: {0}")]
    Inconsistent(ChirotopeError),
}

/// A `d × n` matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        f.write_str("]")
    }
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<RationalMatrix, RealizationError> {
        let d = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(RealizationError::Ragged);
        }
        if n > MAX_N {
            return Err(RealizationError::TooManyColumns(n));
        }
        Ok(RationalMatrix { rows: d, cols: n, entries: rows.into_iter().flatten().collect() })
    }

    /// A `d × n` matrix with no rows is allowed when `d = 0`; it has `n` columns.
    pub fn with_shape(d: usize, n: usize, entries: Vec<Rational>) -> Result<RationalMatrix, RealizationError> {
        if entries.len() != d * n {
            return Err(RealizationError::Ragged);
        }
        if n > MAX_N {
            return Err(RealizationError::TooManyColumns(n));
        }
        Ok(RationalMatrix { rows: d, cols: n, entries })
    }

    pub fn from_integers(rows: &[&[i64]]) -> Result<RationalMatrix, RealizationError> {
        RationalMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    /// Determinant of the columns in `cols` (1-indexed, increasing).
    pub fn maximal_minor(&self, cols: Subset) -> Result<Rational, RealizationError> {
        if cols.len() != self.rows {
            return Err(RealizationError::WrongSize { expected: self.rows, got: cols.len() });
        }
        if let Some(c) = cols.iter().find(|&c| c > self.cols) {
            return Err(RealizationError::ColumnOutOfRange(c));
        }
        let idx: Vec<usize> = cols.iter().map(|c| c - 1).collect();
        // Clear denominators row by row, then eliminate over the integers.
        let mut scale = BigInt::one();
        let mut work: Vec<Vec<BigInt>> = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let lcm = idx
                .iter()
                .fold(BigInt::one(), |acc, &c| acc.lcm(self.get(r, c).denom()));
            work.push(
                idx.iter()
                    .map(|&c| {
                        let x = self.get(r, c);
                        x.numer() * (&lcm / x.denom())
                    })
                    .collect(),
            );
            scale *= lcm;
        }
        Ok(Rational::new(bareiss(work), scale))
    }

    /// Every maximal minor, in colex order of the column sets.
    pub fn maximal_minors(&self) -> Vec<(Subset, Rational)> {
        Subset::full(self.cols)
            .k_subsets(self.rows)
            .map(|s| {
                let m = self.maximal_minor(s).expect("column sets have the right size");
                (s, m)
            })
            .collect()
    }

    /// True when no maximal minor is negative.
    pub fn is_totally_nonnegative(&self) -> bool {
        self.maximal_minors().iter().all(|(_, m)| !m.is_negative())
    }

    /// The matroid whose bases are the column sets with nonzero minor.
    pub fn matroid(&self) -> Result<Matroid, RealizationError> {
        let bases: Vec<Subset> = self
            .maximal_minors()
            .into_iter()
            .filter(|(_, m)| !m.is_zero())
            .map(|(s, _)| s)
            .collect();
        if bases.is_empty() {
            return Err(RealizationError::RankDeficient);
        }
        Ok(Matroid::from_sorted_unchecked(self.cols, Subset::full(self.cols), bases))
    }

    /// Signs of the maximal minors, validated as a chirotope.
    pub fn chirotope(&self) -> Result<Chirotope, RealizationError> {
        let minors = self.maximal_minors();
        let sign_of = |s: Subset| {
            minors
                .iter()
                .find(|(t, _)| *t == s)
                .map_or(0, |(_, m)| if m.is_positive() { 1 } else if m.is_negative() { -1 } else { 0 })
        };
        Chirotope::validate(self.cols, self.rows, sign_of).map_err(|e| match e {
            ChirotopeError::AllZero => RealizationError::RankDeficient,
            other => RealizationError::Inconsistent(other),
        })
    }

    fn negate_column(&mut self, c: usize) {
        for r in 0..self.rows {
            let i = r * self.cols + c;
            self.entries[i] = -self.entries[i].clone();
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let i = r * self.cols + c;
            self.entries[i] = -self.entries[i].clone();
        }
    }
}

/// Fraction-free Gaussian elimination: exact determinant of a square integer matrix.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Columns `(1, x, x², …, x^{d−1})` for each parameter.
pub fn moment_curve_matrix(d: usize, xs: &[Rational]) -> Result<RationalMatrix, RealizationError> {
    if xs.windows(2).any(|w| w[0] >= w[1]) {
        return Err(RealizationError::NotIncreasing);
    }
    if xs.len() < d {
        return Err(RealizationError::RankDeficient);
    }
    let entries = (0..d)
        .flat_map(|p| xs.iter().map(move |x| num_traits::pow(x.clone(), p)))
        .collect();
    RationalMatrix::with_shape(d, xs.len(), entries)
}

/// Best-effort search for a totally nonnegative rational matrix realizing the
/// positroid `m` (on the full ground set). Uniform matroids get a moment-curve
/// matrix; otherwise matrices in standard form on the first necklace basis are
/// tried with entry magnitudes in `1..=height`, their signs fixed by the
/// requirement that each single-exchange minor be positive. `None` means the
/// budget ran out, not that no realization exists.
pub fn realize_positroid_search(m: &Matroid, height: u32) -> Result<Option<RationalMatrix>, RealizationError> {
    if m.ground() != Subset::full(m.n()) {
        return Err(RealizationError::NotFullGround);
    }
    let verdict = is_positroid(m);
    if let Some(cert) = verdict.certificate {
        return Err(RealizationError::NotAPositroid(cert));
    }
    let n = m.n();
    let k = m.rank();
    if m.is_uniform() {
        let xs: Vec<Rational> = (0..n as i64).map(|x| Rational::from_integer(x.into())).collect();
        return Ok(Some(moment_curve_matrix(k, &xs)?));
    }
    const MAX_ATTEMPTS: u64 = 2_000_000;
    let pivot = grassmann_necklace(m)[0];
    let pivots: Vec<usize> = pivot.iter().collect();
    // (row, column, sign) for each entry forced nonzero.
    let mut free: Vec<(usize, usize, i64)> = Vec::new();
    for (r, &i) in pivots.iter().enumerate() {
        for j in Subset::full(n).difference(pivot).iter() {
            if m.is_basis(pivot.without(i).with(j)) {
                let (lo, hi) = if i < j { (i, j) } else { (j, i) };
                let between = pivot.without(i).iter().filter(|&e| lo < e && e < hi).count();
                free.push((r, j - 1, if between % 2 == 0 { 1 } else { -1 }));
            }
        }
    }
    let mut base = vec![vec![0i64; n]; k];
    for (r, &i) in pivots.iter().enumerate() {
        base[r][i - 1] = 1;
    }
    let height = height.max(1) as i64;
    let mut mags = vec![1i64; free.len()];
    let mut attempts = 0u64;
    loop {
        attempts += 1;
        let mut a = base.clone();
        for (&(r, c, s), &mag) in free.iter().zip(&mags) {
            a[r][c] = s * mag;
        }
        if integer_candidate_realizes(&a, m) {
            let rows: Vec<&[i64]> = a.iter().map(Vec::as_slice).collect();
            let mut mat = if k == 0 {
                RationalMatrix::with_shape(0, n, vec![])?
            } else {
                RationalMatrix::from_integers(&rows)?
            };
            if mat.matroid()? == *m && mat.is_totally_nonnegative() {
                return Ok(Some(mat));
            }
            // Fall back to sign fixing through a positive reorientation.
            if let Some(fixed) = fix_signs(&mut mat, m) {
                return Ok(Some(fixed));
            }
        }
        if attempts >= MAX_ATTEMPTS {
            return Ok(None);
        }
        // Odometer over magnitudes.
        let mut pos = 0;
        loop {
            if pos == mags.len() {
                return Ok(None);
            }
            if mags[pos] < height {
                mags[pos] += 1;
                break;
            }
            mags[pos] = 1;
            pos += 1;
        }
    }
}

fn fix_signs(mat: &mut RationalMatrix, m: &Matroid) -> Option<RationalMatrix> {
    let chi = mat.chirotope().ok()?;
    let flip = chi.positive_reorientation()?;
    for c in flip.flipped.iter() {
        mat.negate_column(c - 1);
    }
    if !mat.is_totally_nonnegative() && mat.rows() > 0 {
        mat.negate_row(0);
    }
    (mat.is_totally_nonnegative() && mat.matroid().ok()? == *m).then(|| mat.clone())
}

/// Quick integer screen: every minor is nonzero exactly on bases and has one sign.
fn integer_candidate_realizes(a: &[Vec<i64>], m: &Matroid) -> bool {
    let k = a.len();
    let n = m.n();
    let mut seen_sign = 0i32;
    for s in Subset::full(n).k_subsets(k) {
        let cols: Vec<usize> = s.iter().map(|c| c - 1).collect();
        let sub: Vec<Vec<BigInt>> = a
            .iter()
            .map(|row| cols.iter().map(|&c| BigInt::from(row[c])).collect())
            .collect();
        let det = bareiss(sub);
        if det.is_zero() == m.is_basis(s) {
            return false;
        }
        if !det.is_zero() {
            let sg = if det.is_positive() { 1 } else { -1 };
            if seen_sign == 0 {
                seen_sign = sg;
            } else if seen_sign != sg {
                return false;
            }
        }
    }
    true
}
