//! Exact matrices and deterministic Gaussian elimination.
//!
//! The pivot rule is fixed once and used everywhere: columns are processed
//! left to right, and within a column the pivot is the first row from the top
//! that is not already a pivot row and has a nonzero entry. Pivot rows are
//! frozen after selection; the column is cleared from every other non-pivot
//! row. Because a row chosen as pivot at column `c` was a non-pivot row while
//! all earlier columns were processed, it is zero on every column before `c`.

use crate::error::Error;
use crate::exact::scalar::{Domain, Scalar};
use std::collections::BTreeSet;
use std::fmt;

/// Dense row-major exact matrix over a single [`Domain`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    domain: Domain,
    data: Vec<Scalar>,
}

/// Result of forward elimination: the reduced working matrix plus the pivot
/// positions in column order.
pub struct Elimination {
    pub mat: ExactMatrix,
    /// (row, column) pairs, ascending in column.
    pub pivots: Vec<(usize, usize)>,
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize, domain: Domain) -> Self {
        ExactMatrix { rows, cols, domain, data: vec![Scalar::zero(domain); rows * cols] }
    }

    pub fn identity(n: usize, domain: Domain) -> Self {
        let mut m = Self::zero(n, n, domain);
        for i in 0..n {
            m.set(i, i, Scalar::one(domain));
        }
        m
    }

    pub fn from_rows(domain: Domain, rows: Vec<Vec<Scalar>>) -> Self {
        let nr = rows.len();
        let nc = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(nr * nc);
        for row in rows {
            assert_eq!(row.len(), nc, "ragged matrix rows");
            for v in row {
                assert_eq!(v.domain(), domain, "entry domain mismatch");
                data.push(v);
            }
        }
        ExactMatrix { rows: nr, cols: nc, domain, data }
    }

    /// Test/construction helper: integer entries interpreted in `domain`.
    pub fn from_i64_rows(domain: Domain, rows: &[&[i64]]) -> Self {
        let converted = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_i64(v, domain)).collect())
            .collect();
        Self::from_rows(domain, converted)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        assert_eq!(v.domain(), self.domain, "entry domain mismatch");
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zero(self.cols, self.rows, self.domain);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m.set(c, r, self.at(r, c).clone());
            }
        }
        m
    }

    /// Submatrix keeping `cols` (strictly ascending) in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        for w in cols.windows(2) {
            assert!(w[0] < w[1], "column selection must be strictly ascending");
        }
        if let Some(&last) = cols.last() {
            assert!(last < self.cols, "column index out of range");
        }
        let mut m = Self::zero(self.rows, cols.len(), self.domain);
        for r in 0..self.rows {
            for (i, &c) in cols.iter().enumerate() {
                m.set(r, i, self.at(r, c).clone());
            }
        }
        m
    }

    /// Submatrix keeping `rows` (strictly ascending) in order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        for w in rows.windows(2) {
            assert!(w[0] < w[1], "row selection must be strictly ascending");
        }
        if let Some(&last) = rows.last() {
            assert!(last < self.rows, "row index out of range");
        }
        let mut m = Self::zero(rows.len(), self.cols, self.domain);
        for (i, &r) in rows.iter().enumerate() {
            for c in 0..self.cols {
                m.set(i, c, self.at(r, c).clone());
            }
        }
        m
    }

    pub fn mat_mul(&self, other: &Self) -> Self {
        assert_eq!(self.domain, other.domain, "matrix domain mismatch");
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut m = Self::zero(self.rows, other.cols, self.domain);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = Scalar::zero(self.domain);
                for k in 0..self.cols {
                    let term = self.at(r, k).mul(other.at(k, c));
                    acc = acc.add(&term);
                }
                m.set(r, c, acc);
            }
        }
        m
    }

    /// Entry-wise embedding into the rational-function domain.
    pub fn lift(&self) -> Self {
        let domain = self.domain.lifted();
        let data = self.data.iter().map(|v| v.lift()).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, domain, data }
    }

    /// Evaluate a lifted matrix at `t = alpha`, returning a base-domain
    /// matrix. `Err` if any denominator vanishes at the point.
    pub fn eval_at(&self, alpha: i64) -> Result<Self, Error> {
        let domain = self.domain.base();
        let mut data = Vec::with_capacity(self.data.len());
        for v in &self.data {
            data.push(v.eval_at(alpha)?);
        }
        Ok(ExactMatrix { rows: self.rows, cols: self.cols, domain, data })
    }

    /// Forward elimination under the fixed pivot rule.
    pub fn eliminate(&self) -> Elimination {
        let mut m = self.clone();
        let mut is_pivot = vec![false; self.rows];
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        for c in 0..self.cols {
            let Some(r) = (0..self.rows).find(|&r| !is_pivot[r] && !m.at(r, c).is_zero())
            else {
                continue;
            };
            is_pivot[r] = true;
            pivots.push((r, c));
            let pv = m.at(r, c).clone();
            for r2 in 0..self.rows {
                if is_pivot[r2] || m.at(r2, c).is_zero() {
                    continue;
                }
                let factor = m.at(r2, c).div(&pv);
                // Row r is zero before column c, so only cc >= c changes.
                for cc in c..self.cols {
                    let nv = m.at(r2, cc).sub(&factor.mul(m.at(r, cc)));
                    m.set(r2, cc, nv);
                }
            }
        }
        Elimination { mat: m, pivots }
    }

    /// Reduced row echelon form: pivot rows normalized to leading 1, each
    /// pivot column cleared everywhere else, pivot rows first in ascending
    /// pivot-column order, zero rows last.
    pub fn rref(&self) -> Self {
        let Elimination { mut mat, pivots } = self.eliminate();
        // Clear pivot columns from pivot rows with smaller pivot columns.
        for idx in (0..pivots.len()).rev() {
            let (r, c) = pivots[idx];
            let pv = mat.at(r, c).clone();
            for &(r2, _) in &pivots[..idx] {
                if mat.at(r2, c).is_zero() {
                    continue;
                }
                let factor = mat.at(r2, c).div(&pv);
                for cc in c..mat.cols {
                    let nv = mat.at(r2, cc).sub(&factor.mul(mat.at(r, cc)));
                    mat.set(r2, cc, nv);
                }
            }
        }
        for &(r, c) in &pivots {
            let pv = mat.at(r, c).clone();
            for cc in c..mat.cols {
                let nv = mat.at(r, cc).div(&pv);
                mat.set(r, cc, nv);
            }
        }
        // Reorder: pivot rows by ascending pivot column, then (zero) rest.
        let pivot_rows: BTreeSet<usize> = pivots.iter().map(|&(r, _)| r).collect();
        let mut order: Vec<usize> = pivots.iter().map(|&(r, _)| r).collect();
        for r in 0..self.rows {
            if !pivot_rows.contains(&r) {
                debug_assert!((0..self.cols).all(|c| mat.at(r, c).is_zero()));
                order.push(r);
            }
        }
        let mut out = Self::zero(self.rows, self.cols, self.domain);
        for (i, &r) in order.iter().enumerate() {
            for c in 0..self.cols {
                out.set(i, c, mat.at(r, c).clone());
            }
        }
        out
    }

    /// The nonzero rows of `rref`: a canonical basis of the row space.
    pub fn row_basis(&self) -> Self {
        let rank = self.eliminate().pivots.len();
        let r = self.rref();
        let mut out = Self::zero(rank, self.cols, self.domain);
        for i in 0..rank {
            for c in 0..self.cols {
                out.set(i, c, r.at(i, c).clone());
            }
        }
        out
    }

    /// Determinant of a square matrix via the fixed elimination. Row
    /// operations of the form `row_j += λ · row_pivot` preserve the
    /// determinant, so it equals the product of pivots times the sign of the
    /// pivot-row permutation.
    pub fn det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        if self.rows == 0 {
            return Scalar::one(self.domain);
        }
        let Elimination { mat, pivots } = self.eliminate();
        if pivots.len() < self.rows {
            return Scalar::zero(self.domain);
        }
        let seq: Vec<usize> = pivots.iter().map(|&(r, _)| r).collect();
        let mut inversions = 0usize;
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if seq[i] > seq[j] {
                    inversions += 1;
                }
            }
        }
        let mut acc = if inversions % 2 == 0 {
            Scalar::one(self.domain)
        } else {
            Scalar::one(self.domain).neg()
        };
        for &(r, c) in &pivots {
            acc = acc.mul(mat.at(r, c));
        }
        acc
    }

    /// Rank by an independent route: one-step fraction-free (Bareiss-style)
    /// elimination with row swaps. Used to cross-check `mat_rank`.
    pub fn bareiss_rank(&self) -> usize {
        let mut m: Vec<Vec<Scalar>> = (0..self.rows).map(|r| self.row(r)).collect();
        let mut prev = Scalar::one(self.domain);
        let mut pr = 0usize;
        for c in 0..self.cols {
            if pr == self.rows {
                break;
            }
            let Some(r) = (pr..self.rows).find(|&r| !m[r][c].is_zero()) else {
                continue;
            };
            m.swap(pr, r);
            for i in pr + 1..self.rows {
                for j in c + 1..self.cols {
                    let v = m[pr][c]
                        .mul(&m[i][j])
                        .sub(&m[i][c].mul(&m[pr][j]))
                        .div(&prev);
                    m[i][j] = v;
                }
                m[i][c] = Scalar::zero(self.domain);
            }
            prev = m[pr][c].clone();
            pr += 1;
        }
        pr
    }

    /// Determinant by the same independent route.
    pub fn bareiss_det(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Scalar::one(self.domain);
        }
        let mut m: Vec<Vec<Scalar>> = (0..n).map(|r| self.row(r)).collect();
        let mut prev = Scalar::one(self.domain);
        let mut sign_flip = false;
        for k in 0..n {
            let Some(r) = (k..n).find(|&r| !m[r][k].is_zero()) else {
                return Scalar::zero(self.domain);
            };
            if r != k {
                m.swap(k, r);
                sign_flip = !sign_flip;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j])).div(&prev);
                    m[i][j] = v;
                }
                m[i][k] = Scalar::zero(self.domain);
            }
            prev = m[k][k].clone();
        }
        if sign_flip {
            m[n - 1][n - 1].neg()
        } else {
            m[n - 1][n - 1].clone()
        }
    }

    /// Render rows in instance-file syntax (base domains only).
    pub fn render_rows(&self) -> Result<Vec<String>, Error> {
        let mut out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut parts = Vec::with_capacity(self.cols);
            for c in 0..self.cols {
                parts.push(self.at(r, c).render()?);
            }
            out.push(parts.join(" "));
        }
        Ok(out)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                match self.at(r, c).render() {
                    Ok(s) => write!(f, "{s}")?,
                    Err(_) => write!(f, "<poly>")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Rank of the column set `cols` of `a` under the fixed pivot rule.
pub fn mat_rank(a: &ExactMatrix, cols: &BTreeSet<usize>) -> usize {
    let sel: Vec<usize> = cols.iter().copied().collect();
    a.select_columns(&sel).eliminate().pivots.len()
}

/// Lexicographically first maximal independent set of columns: scanning left
/// to right, a column is kept iff it is outside the span of the columns kept
/// so far. Under the fixed pivot rule these are exactly the pivot columns.
pub fn mat_basis_columns(a: &ExactMatrix) -> BTreeSet<usize> {
    a.eliminate().pivots.iter().map(|&(_, c)| c).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_cols(a: &ExactMatrix) -> BTreeSet<usize> {
        (0..a.cols()).collect()
    }

    #[test]
    fn rank_identity_gfp5() {
        let a = ExactMatrix::identity(3, Domain::Gfp(5));
        assert_eq!(mat_rank(&a, &all_cols(&a)), 3);
        assert_eq!(mat_rank(&a, &BTreeSet::new()), 0);
    }

    #[test]
    fn rank_dependent_rational_columns() {
        // Columns (1,0), (0,1), (1,1): the third is the sum of the first two.
        let a = ExactMatrix::from_i64_rows(Domain::Rat, &[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(mat_rank(&a, &all_cols(&a)), 2);
        assert_eq!(mat_rank(&a, &[0, 2].into_iter().collect()), 2);
        assert_eq!(mat_rank(&a, &[2].into_iter().collect()), 1);
    }

    #[test]
    fn basis_columns_examples() {
        let id = ExactMatrix::identity(3, Domain::Gfp(5));
        assert_eq!(mat_basis_columns(&id), (0..3).collect());

        // Columns (1,0), (2,0), (0,1): the second is twice the first.
        let a = ExactMatrix::from_i64_rows(Domain::Rat, &[&[1, 2, 0], &[0, 0, 1]]);
        assert_eq!(mat_basis_columns(&a), [0, 2].into_iter().collect());

        let z = ExactMatrix::zero(2, 3, Domain::Gfp(7));
        assert_eq!(mat_basis_columns(&z), BTreeSet::new());
    }

    #[test]
    fn basis_columns_greedy_property() {
        // Kept set is the greedy one: each kept column increases the rank of
        // the prefix, each dropped column does not.
        let a = ExactMatrix::from_i64_rows(
            Domain::Gfp(7),
            &[&[1, 2, 3, 0, 5], &[0, 0, 1, 1, 2], &[1, 2, 4, 1, 0]],
        );
        let basis = mat_basis_columns(&a);
        let mut kept: BTreeSet<usize> = BTreeSet::new();
        for c in 0..a.cols() {
            let mut trial = kept.clone();
            trial.insert(c);
            let grows = mat_rank(&a, &trial) > mat_rank(&a, &kept);
            assert_eq!(basis.contains(&c), grows);
            if grows {
                kept = trial;
            }
        }
        assert_eq!(kept, basis);
    }

    #[test]
    fn rref_is_idempotent_and_canonical() {
        let a = ExactMatrix::from_i64_rows(
            Domain::Rat,
            &[&[2, 4, 1], &[1, 2, 0], &[0, 0, 3]],
        );
        let r = a.rref();
        assert_eq!(r.rref(), r);
        // Leading entries are 1, and pivot columns are otherwise zero.
        let pivots = r.eliminate().pivots;
        for &(pr, pc) in &pivots {
            assert!(r.at(pr, pc).is_one());
            for other in 0..r.rows() {
                if other != pr {
                    assert!(r.at(other, pc).is_zero());
                }
            }
        }
    }

    #[test]
    fn row_basis_spans_same_space() {
        let a = ExactMatrix::from_i64_rows(
            Domain::Gfp(101),
            &[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]],
        );
        let b = a.row_basis();
        assert_eq!(b.rows(), 2);
        // Stacking the basis on top of the original does not raise the rank.
        let mut stacked_rows = Vec::new();
        for r in 0..b.rows() {
            stacked_rows.push(b.row(r));
        }
        for r in 0..a.rows() {
            stacked_rows.push(a.row(r));
        }
        let stacked = ExactMatrix::from_rows(Domain::Gfp(101), stacked_rows);
        assert_eq!(mat_rank(&stacked, &all_cols(&a)), 2);
    }

    #[test]
    fn determinants() {
        let id = ExactMatrix::identity(4, Domain::Rat);
        assert!(id.det().is_one());
        let a = ExactMatrix::from_i64_rows(Domain::Rat, &[&[1, 2], &[3, 4]]);
        assert_eq!(a.det(), Scalar::rat_int(-2));
        assert_eq!(a.bareiss_det(), Scalar::rat_int(-2));
        let sing = ExactMatrix::from_i64_rows(Domain::Rat, &[&[1, 2], &[2, 4]]);
        assert!(sing.det().is_zero());
        assert!(sing.bareiss_det().is_zero());
        // A permutation matrix with negative sign.
        let p = ExactMatrix::from_i64_rows(Domain::Gfp(7), &[&[0, 1], &[1, 0]]);
        assert_eq!(p.det(), Scalar::gfp(-1, 7));
        assert_eq!(p.bareiss_det(), Scalar::gfp(-1, 7));
    }

    #[test]
    fn det_zero_leading_column_sign() {
        // First pivot lands in row 1, second in row 0: one inversion.
        let a = ExactMatrix::from_i64_rows(Domain::Rat, &[&[0, 5], &[2, 1]]);
        assert_eq!(a.det(), Scalar::rat_int(-10));
        assert_eq!(a.bareiss_det(), Scalar::rat_int(-10));
    }

    #[test]
    fn rank_transpose_agreement_basic() {
        let a = ExactMatrix::from_i64_rows(
            Domain::Gfp(5),
            &[&[1, 2, 3, 4], &[2, 4, 1, 3], &[3, 1, 4, 2]],
        );
        assert_eq!(mat_rank(&a, &all_cols(&a)), {
            let t = a.transpose();
            mat_rank(&t, &(0..t.cols()).collect())
        });
        assert_eq!(a.bareiss_rank(), mat_rank(&a, &all_cols(&a)));
    }

    #[test]
    fn mat_mul_identity() {
        let a = ExactMatrix::from_i64_rows(Domain::Gfp(7), &[&[1, 2], &[3, 4], &[5, 6]]);
        let id = ExactMatrix::identity(2, Domain::Gfp(7));
        assert_eq!(a.mat_mul(&id), a);
    }

    #[test]
    fn lift_and_eval_round_trip() {
        let a = ExactMatrix::from_i64_rows(Domain::Gfp(11), &[&[1, 5], &[7, 0]]);
        let lifted = a.lift();
        assert_eq!(lifted.domain(), Domain::PolyGfp(11));
        assert_eq!(lifted.eval_at(3).unwrap(), a);
    }

    #[test]
    fn select_columns_subset_rank() {
        let a = ExactMatrix::from_i64_rows(Domain::Rat, &[&[1, 0, 2], &[0, 1, 3]]);
        let s = a.select_columns(&[0, 2]);
        assert_eq!(s.cols(), 2);
        assert_eq!(mat_rank(&s, &(0..2).collect()), 2);
    }
}
