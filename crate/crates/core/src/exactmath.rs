//! Exact rational scalars and exact sparse linear algebra.
//!
//! All coefficients in the repository are arbitrary-precision rationals, kept
//! reduced with a positive denominator. Linear solves (kernel bases, span
//! membership) run a fraction-free Gauss-Jordan elimination over cleared
//! integer rows, so intermediate coefficient growth stays under control on
//! the larger weight-0 solves. Output bases are in reduced row echelon form,
//! which makes every solver result canonical for a fixed column order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number. Always reduced, denominator > 0,
/// zero is 0/1 (invariants maintained by `BigRational` itself).
pub type Rat = BigRational;

/// `n` as a rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational.
pub fn frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Render as `p` or `p/q`, matching the wire format used by the JSON layer.
pub fn rat_to_string(x: &Rat) -> alloc::string::String {
    use alloc::string::ToString;
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        alloc::format!("{}/{}", x.numer(), x.denom())
    }
}

/// Argument shape error: the caller passed incompatible dimensions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionMismatch {
    pub expected: usize,
    pub got: usize,
}

impl fmt::Display for DimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dimension mismatch: expected {}, got {}",
            self.expected, self.got
        )
    }
}

/// Sparse matrix over the rationals. Absent entries are zero; explicit zeros
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rat>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_rows(rows: &[Vec<Rat>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = RationalMatrix::new(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row in matrix literal");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Set entry (r, c). Zero values delete the entry.
    pub fn set(&mut self, r: usize, c: usize, v: Rat) {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Add `v` into entry (r, c).
    pub fn add(&mut self, r: usize, c: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c) + v;
        self.set(r, c, cur);
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// m·v, exact.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols, "vector length must match cols");
        let mut out = vec![Rat::zero(); self.rows];
        for ((r, c), a) in &self.entries {
            if !v[*c].is_zero() {
                out[*r] += a * &v[*c];
            }
        }
        out
    }

    fn sparse_integer_rows(&self) -> Vec<SparseRow> {
        let mut rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows.into_iter()
            .filter(|r| !r.is_empty())
            .map(|r| SparseRow::from_rationals(&r))
            .collect()
    }

    /// Number of linearly independent rows.
    pub fn rank(&self) -> usize {
        Elimination::run(self.sparse_integer_rows(), self.cols).pivots.len()
    }

    /// Basis of { v : m·v = 0 }, canonical for the given column order.
    ///
    /// The basis is read off the reduced row echelon form, one vector per
    /// free column, in ascending free-column order; every vector is scaled
    /// to coprime integer entries with positive free-column coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<Rat>> {
        let elim = Elimination::run(self.sparse_integer_rows(), self.cols);
        elim.kernel_basis(self.cols)
    }
}

/// Is `v` a rational linear combination of `basis`? On success returns the
/// certificate coefficients (free coordinates pinned to zero, so the
/// certificate is deterministic).
pub fn in_span(v: &[Rat], basis: &[Vec<Rat>]) -> Result<Option<Vec<Rat>>, DimensionMismatch> {
    let dim = v.len();
    for b in basis {
        if b.len() != dim {
            return Err(DimensionMismatch {
                expected: dim,
                got: b.len(),
            });
        }
    }
    // One equation per coordinate, one unknown per basis vector, with v as
    // the augmented column.
    let k = basis.len();
    let mut rows: Vec<Vec<(usize, Rat)>> = vec![Vec::new(); dim];
    for (j, b) in basis.iter().enumerate() {
        for (i, x) in b.iter().enumerate() {
            if !x.is_zero() {
                rows[i].push((j, x.clone()));
            }
        }
    }
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            rows[i].push((k, x.clone()));
        }
    }
    let sparse: Vec<SparseRow> = rows
        .into_iter()
        .filter(|r| !r.is_empty())
        .map(|r| SparseRow::from_rationals(&r))
        .collect();
    let elim = Elimination::run(sparse, k + 1);
    // A pivot in the augmented column means the system is inconsistent.
    if elim.pivots.iter().any(|&(col, _)| col == k) {
        return Ok(None);
    }
    let mut coeffs = vec![Rat::zero(); k];
    for &(col, row_idx) in &elim.pivots {
        let row = &elim.rows[row_idx];
        let pivot = row.get(col);
        let rhs = row.get(k);
        coeffs[col] = Rat::new(rhs, BigInt::one()) / Rat::new(pivot, BigInt::one());
    }
    Ok(Some(coeffs))
}

/// Integer row with sorted column indices; content gcd always divided out.
#[derive(Debug, Clone)]
struct SparseRow {
    entries: Vec<(usize, BigInt)>,
}

impl SparseRow {
    fn from_rationals(entries: &[(usize, Rat)]) -> Self {
        let mut lcm = BigInt::one();
        for (_, v) in entries {
            lcm = lcm.lcm(v.denom());
        }
        let ints: Vec<(usize, BigInt)> = entries
            .iter()
            .map(|(c, v)| (*c, v.numer() * (&lcm / v.denom())))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        let mut row = SparseRow { entries: ints };
        row.normalize();
        row
    }

    fn normalize(&mut self) {
        let mut g = BigInt::zero();
        for (_, x) in &self.entries {
            g = g.gcd(x);
        }
        if g > BigInt::one() {
            for (_, x) in &mut self.entries {
                *x = &*x / &g;
            }
        }
    }

    fn leading_col(&self) -> Option<usize> {
        self.entries.first().map(|(c, _)| *c)
    }

    fn get(&self, col: usize) -> BigInt {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// self := pivot_val·self − factor·pivot_row (fraction-free elimination
    /// step), followed by gcd normalization.
    fn eliminate(&mut self, pivot_row: &SparseRow, pivot_val: &BigInt, factor: &BigInt) {
        let mut out: Vec<(usize, BigInt)> = Vec::with_capacity(self.entries.len() + pivot_row.entries.len());
        let (a, b) = (&self.entries, &pivot_row.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some((ca, va)), Some((cb, vb))) => {
                    if ca < cb {
                        i += 1;
                        (*ca, pivot_val * va)
                    } else if cb < ca {
                        j += 1;
                        (*cb, -(factor * vb))
                    } else {
                        let v = pivot_val * va - factor * vb;
                        i += 1;
                        j += 1;
                        (*ca, v)
                    }
                }
                (Some((ca, va)), None) => {
                    i += 1;
                    (*ca, pivot_val * va)
                }
                (None, Some((cb, vb))) => {
                    j += 1;
                    (*cb, -(factor * vb))
                }
                (None, None) => unreachable!(),
            };
            if !next.1.is_zero() {
                out.push(next);
            }
        }
        self.entries = out;
        self.normalize();
    }
}

/// Result of Gauss-Jordan elimination: rows in echelon form, each pivot
/// column eliminated from every other row.
struct Elimination {
    rows: Vec<SparseRow>,
    /// (pivot column, row index) in ascending column order.
    pivots: Vec<(usize, usize)>,
}

impl Elimination {
    fn run(mut rows: Vec<SparseRow>, cols: usize) -> Elimination {
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut next_pivot_row = 0usize;
        for col in 0..cols {
            // Remaining rows have their leading column ≥ col, so a nonzero
            // entry in col is a leading entry. Pick the smallest-bit pivot.
            let mut best: Option<(usize, u64)> = None;
            for (i, row) in rows.iter().enumerate().skip(next_pivot_row) {
                if row.leading_col() == Some(col) {
                    let bits = row.entries[0].1.bits();
                    if best.is_none_or(|(_, b)| bits < b) {
                        best = Some((i, bits));
                    }
                }
            }
            let Some((pivot_idx, _)) = best else { continue };
            rows.swap(next_pivot_row, pivot_idx);
            let pivot_row = rows[next_pivot_row].clone();
            let pivot_val = pivot_row.entries[0].1.clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == next_pivot_row {
                    continue;
                }
                let factor = row.get(col);
                if !factor.is_zero() {
                    row.eliminate(&pivot_row, &pivot_val, &factor);
                }
            }
            pivots.push((col, next_pivot_row));
            next_pivot_row += 1;
            // Rows cleared to zero would confuse the leading-column scan.
            // Pivot rows sit at the front and are never empty, so their
            // recorded indices survive the retain.
            rows.retain(|r| !r.entries.is_empty());
            if next_pivot_row >= rows.len() {
                break;
            }
        }
        Elimination { rows, pivots }
    }

    fn kernel_basis(&self, cols: usize) -> Vec<Vec<Rat>> {
        let pivot_cols: Vec<usize> = self.pivots.iter().map(|&(c, _)| c).collect();
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_cols.binary_search(&free).is_ok() {
                continue;
            }
            let mut v = vec![Rat::zero(); cols];
            v[free] = Rat::one();
            for &(pc, row_idx) in &self.pivots {
                let row = &self.rows[row_idx];
                let num = row.get(free);
                if !num.is_zero() {
                    let den = row.get(pc);
                    v[pc] = -Rat::new(num, den);
                }
            }
            basis.push(clear_denominators(v));
        }
        basis
    }
}

/// Scale a rational vector to coprime integer entries, preserving direction.
fn clear_denominators(v: Vec<Rat>) -> Vec<Rat> {
    let mut lcm = BigInt::one();
    for x in &v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v;
    }
    ints.into_iter()
        .map(|x| Rat::from_integer(x / &g))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> RationalMatrix {
        let rows: Vec<Vec<Rat>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect();
        RationalMatrix::from_rows(&rows)
    }

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(m(&[&[1]]).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_difference_row() {
        assert_eq!(m(&[&[1, -1]]).kernel_basis(), vec![v(&[1, 1])]);
    }

    #[test]
    fn kernel_two_rows_three_cols() {
        // Hand Gaussian elimination on (1,0,-1),(0,1,-1) leaves (1,1,1).
        let k = m(&[&[1, 0, -1], &[0, 1, -1]]).kernel_basis();
        assert_eq!(k, vec![v(&[1, 1, 1])]);
    }

    #[test]
    fn kernel_vectors_are_scaled_coprime() {
        let k = m(&[&[2, -4]]).kernel_basis();
        assert_eq!(k, vec![v(&[2, 1])]);
    }

    #[test]
    fn in_span_zero_vector() {
        let res = in_span(&v(&[0, 0]), &[v(&[1, 1])]).unwrap();
        assert_eq!(res, Some(v(&[0])));
    }

    #[test]
    fn in_span_scaling() {
        let res = in_span(&v(&[2, 2]), &[v(&[1, 1])]).unwrap();
        assert_eq!(res, Some(v(&[2])));
    }

    #[test]
    fn in_span_rank_failure() {
        assert_eq!(in_span(&v(&[1, 0]), &[v(&[1, 1])]).unwrap(), None);
    }

    #[test]
    fn in_span_dimension_mismatch_is_an_error() {
        assert!(in_span(&v(&[1, 0]), &[v(&[1, 1, 1])]).is_err());
    }

    #[test]
    fn in_span_empty_basis() {
        assert_eq!(in_span(&v(&[0]), &[]).unwrap(), Some(vec![]));
        assert_eq!(in_span(&v(&[1]), &[]).unwrap(), None);
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(rows in proptest::collection::vec(
            proptest::collection::vec(-6i64..=6, 4), 1..5)) {
            let mat = RationalMatrix::from_rows(
                &rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>());
            for k in mat.kernel_basis() {
                prop_assert!(mat.mul_vec(&k).iter().all(Rat::is_zero));
            }
        }

        #[test]
        fn rank_nullity(rows in proptest::collection::vec(
            proptest::collection::vec(-6i64..=6, 5), 1..6)) {
            let mat = RationalMatrix::from_rows(
                &rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>());
            prop_assert_eq!(mat.rank() + mat.kernel_basis().len(), mat.cols());
        }

        #[test]
        fn kernel_invariant_under_row_permutation(rows in proptest::collection::vec(
            proptest::collection::vec(-4i64..=4, 4), 2..5), seed in 0u64..1000) {
            let mat = RationalMatrix::from_rows(
                &rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>());
            let mut shuffled = rows.clone();
            // Cheap deterministic shuffle.
            let n = shuffled.len();
            for i in 0..n {
                let j = (seed as usize + i * 7) % n;
                shuffled.swap(i, j);
            }
            let mat2 = RationalMatrix::from_rows(
                &shuffled.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect::<Vec<_>>());
            prop_assert_eq!(mat.kernel_basis(), mat2.kernel_basis());
        }

        #[test]
        fn in_span_certificate_reconstructs(coeffs in proptest::collection::vec(-5i64..=5, 3)) {
            let basis = vec![v(&[1, 2, 0, 0]), v(&[0, 1, 1, 0]), v(&[0, 0, 3, -1])];
            let dim = 4;
            let mut target = vec![Rat::zero(); dim];
            for (c, b) in coeffs.iter().zip(&basis) {
                for i in 0..dim {
                    target[i] += rat(*c) * &b[i];
                }
            }
            let got = in_span(&target, &basis).unwrap().expect("must be in span");
            let mut rebuilt = vec![Rat::zero(); dim];
            for (c, b) in got.iter().zip(&basis) {
                for i in 0..dim {
                    rebuilt[i] += c * &b[i];
                }
            }
            prop_assert_eq!(rebuilt, target);
        }
    }
}
