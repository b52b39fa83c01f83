//! Exact dense rational linear algebra: reduced row echelon form, rank,
//! and row-space membership. No floating point anywhere.
//!
//! Elimination is fraction-free: rows are scaled to coprime integers and
//! combined by cross-multiplication, with a gcd reduction after every step
//! to control entry growth. Normalization to rational RREF happens last.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::json;
use thiserror::Error;

use crate::poly::Coeff;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("row width {found} does not match matrix width {expected}")]
    WidthMismatch { expected: usize, found: usize },
}

/// An incrementally built row space, kept fully reduced.
///
/// Rows are coprime integer vectors with positive leading entry, sorted by
/// pivot column; every stored row is reduced against every other.
#[derive(Debug, Clone, Default)]
pub struct RowSpace {
    cols: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn gcd_reduce(row: &mut [BigInt]) {
    let mut g = BigInt::zero();
    for e in row.iter() {
        if !e.is_zero() {
            g = g.gcd(e);
            if g.is_one() {
                break;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for e in row.iter_mut() {
        *e = &*e / &g;
    }
}

fn first_nonzero(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|e| !e.is_zero())
}

fn to_integer_row(row: &[Coeff]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for e in row {
        lcm = lcm.lcm(e.denom());
    }
    let mut out: Vec<BigInt> = row.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
    gcd_reduce(&mut out);
    if let Some(p) = first_nonzero(&out) {
        if out[p].is_negative() {
            for e in out.iter_mut() {
                *e = -std::mem::take(e);
            }
        }
    }
    out
}

impl RowSpace {
    pub fn new(cols: usize) -> RowSpace {
        RowSpace {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Eliminate all pivots from `row`; the returned vector is zero exactly
    /// when `row` lies in the space.
    fn reduce_integer(&self, mut row: Vec<BigInt>) -> Vec<BigInt> {
        for (r, &p) in self.rows.iter().zip(self.pivots.iter()) {
            if row[p].is_zero() {
                continue;
            }
            // row := row * r[p] - r * row[p], cancels column p
            let a = r[p].clone();
            let b = row[p].clone();
            for (x, y) in row.iter_mut().zip(r.iter()) {
                *x = &*x * &a - y * &b;
            }
            debug_assert!(row[p].is_zero());
            gcd_reduce(&mut row);
        }
        if let Some(p) = first_nonzero(&row) {
            if row[p].is_negative() {
                for e in row.iter_mut() {
                    *e = -std::mem::take(e);
                }
            }
        }
        row
    }

    /// Insert a row; returns true when it enlarged the space.
    pub fn insert(&mut self, row: &[Coeff]) -> Result<bool, LinalgError> {
        if row.len() != self.cols {
            return Err(LinalgError::WidthMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        let reduced = self.reduce_integer(to_integer_row(row));
        let Some(pivot) = first_nonzero(&reduced) else {
            return Ok(false);
        };
        // back-eliminate the new pivot from the stored rows
        for r in self.rows.iter_mut() {
            if r[pivot].is_zero() {
                continue;
            }
            let a = reduced[pivot].clone();
            let b = r[pivot].clone();
            for (x, y) in r.iter_mut().zip(reduced.iter()) {
                *x = &*x * &a - y * &b;
            }
            gcd_reduce(r);
            if let Some(p) = first_nonzero(r) {
                if r[p].is_negative() {
                    for e in r.iter_mut() {
                        *e = -std::mem::take(e);
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, reduced);
        Ok(true)
    }

    pub fn contains(&self, row: &[Coeff]) -> Result<bool, LinalgError> {
        Ok(self.residual(row)?.is_none())
    }

    /// `None` when the row is in the space, otherwise the nonzero
    /// remainder after eliminating every pivot.
    pub fn residual(&self, row: &[Coeff]) -> Result<Option<Vec<Coeff>>, LinalgError> {
        if row.len() != self.cols {
            return Err(LinalgError::WidthMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        let reduced = self.reduce_integer(to_integer_row(row));
        if first_nonzero(&reduced).is_none() {
            Ok(None)
        } else {
            Ok(Some(
                reduced.into_iter().map(BigRational::from_integer).collect(),
            ))
        }
    }

    /// The reduced rows normalized to leading 1: the nonzero part of the
    /// unique RREF of any generating set.
    pub fn normalized_rows(&self) -> Vec<Vec<Coeff>> {
        self.rows
            .iter()
            .zip(self.pivots.iter())
            .map(|(r, &p)| {
                let pivot = r[p].clone();
                r.iter()
                    .map(|e| BigRational::new(e.clone(), pivot.clone()))
                    .collect()
            })
            .collect()
    }
}

/// Dense matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Coeff>,
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> QMatrix {
        QMatrix {
            rows,
            cols,
            data: vec![Coeff::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> QMatrix {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Coeff::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Coeff>>) -> Result<QMatrix, LinalgError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in &rows {
            if r.len() != ncols {
                return Err(LinalgError::WidthMismatch {
                    expected: ncols,
                    found: r.len(),
                });
            }
            data.extend(r.iter().cloned());
        }
        Ok(QMatrix {
            rows: nrows,
            cols: ncols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Coeff {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Coeff {
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Coeff] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Coeff]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.get_mut(c, r) = self.get(r, c).clone();
            }
        }
        t
    }

    pub fn stack(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::WidthMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn row_space(&self) -> RowSpace {
        let mut space = RowSpace::new(self.cols);
        for r in self.row_iter() {
            space.insert(r).expect("widths match by construction");
        }
        space
    }

    /// Unique reduced row echelon form, with rank and pivot columns.
    pub fn rref(&self) -> (QMatrix, usize, Vec<usize>) {
        let space = self.row_space();
        let rank = space.rank();
        let pivots = space.pivots().to_vec();
        let mut data = Vec::with_capacity(self.rows * self.cols);
        for row in space.normalized_rows() {
            data.extend(row);
        }
        data.resize(self.rows * self.cols, Coeff::zero());
        (
            QMatrix {
                rows: self.rows,
                cols: self.cols,
                data,
            },
            rank,
            pivots,
        )
    }

    pub fn rank(&self) -> usize {
        self.row_space().rank()
    }

    pub fn row_space_contains(&self, v: &[Coeff]) -> Result<bool, LinalgError> {
        self.row_space().contains(v)
    }

    pub fn row_space_equal(&self, other: &QMatrix) -> Result<bool, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::WidthMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        // row spaces are equal exactly when the unique RREFs agree
        Ok(self.row_space().normalized_rows() == other.row_space().normalized_rows())
    }

    /// Basis of `{x : self * x = 0}`, one vector per free column of the
    /// RREF, in column order.
    pub fn null_space(&self) -> Vec<Vec<Coeff>> {
        let (r, rank, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Coeff::zero(); self.cols];
                v[f] = Coeff::one();
                for (row, &p) in pivots.iter().enumerate().take(rank) {
                    v[p] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// JSON form for audit dumps: entries as exact `num/den` strings.
    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = self
            .row_iter()
            .map(|r| {
                r.iter()
                    .map(|e| {
                        if e.denom().is_one() {
                            e.numer().to_string()
                        } else {
                            format!("{}/{}", e.numer(), e.denom())
                        }
                    })
                    .collect()
            })
            .collect();
        json!({
            "schema": 1,
            "rows": self.rows,
            "cols": self.cols,
            "entries": rows,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coeff_int;

    fn q(n: i64) -> Coeff {
        coeff_int(n)
    }

    fn mat(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&e| q(e)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_has_full_rank() {
        for n in 1..6 {
            assert_eq!(QMatrix::identity(n).rank(), n);
        }
    }

    #[test]
    fn rref_is_idempotent_and_deterministic() {
        let m = mat(&[&[2, 4, 6], &[1, 2, 4], &[3, 6, 10]]);
        let (r1, rank, pivots) = m.rref();
        assert_eq!(rank, 2);
        assert_eq!(pivots, vec![0, 2]);
        let (r2, rank2, _) = r1.rref();
        assert_eq!(rank2, rank);
        assert_eq!(r1, r2);
        let (r3, _, _) = m.rref();
        assert_eq!(r1, r3);
    }

    #[test]
    fn rank_equals_rank_of_transpose() {
        let m = mat(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0], &[1, 3, 4, 4]]);
        assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn membership_of_own_rows() {
        let m = mat(&[&[1, 2, 3], &[0, 1, 1]]);
        for r in m.row_iter() {
            assert!(m.row_space_contains(r).unwrap());
        }
        assert!(!m.row_space_contains(&[q(0), q(0), q(1)]).unwrap());
        // single-row space contains that row
        let v = [q(3), q(-5), q(7)];
        let single = QMatrix::from_rows(vec![v.to_vec()]).unwrap();
        assert!(single.row_space_contains(&v).unwrap());
    }

    #[test]
    fn row_space_equality_under_permutation_and_scaling() {
        let m = mat(&[&[1, 2, 3], &[0, 1, 1]]);
        let p = mat(&[&[0, 1, 1], &[1, 2, 3]]);
        let s = mat(&[&[2, 4, 6], &[0, 2, 2]]);
        assert!(m.row_space_equal(&p).unwrap());
        assert!(m.row_space_equal(&s).unwrap());
        let other = mat(&[&[1, 0, 0], &[0, 1, 1]]);
        assert!(!m.row_space_equal(&other).unwrap());
    }

    #[test]
    fn stack_rank_is_monotone() {
        let a = mat(&[&[1, 0, 0], &[0, 1, 0]]);
        let b = mat(&[&[0, 0, 1]]);
        let s = a.stack(&b).unwrap();
        assert!(s.rank() >= a.rank());
        assert!(s.rank() >= b.rank());
        for r in a.row_iter() {
            assert!(s.row_space_contains(r).unwrap());
        }
    }

    #[test]
    fn rational_entries_are_exact() {
        let third = BigRational::new(1.into(), 3.into());
        let m = QMatrix::from_rows(vec![vec![third.clone(), q(1)], vec![q(1), q(3)]]).unwrap();
        // second row is 3 times the first
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn null_space_dimensions() {
        assert!(QMatrix::identity(4).null_space().is_empty());
        let m = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = m.null_space();
        // rank 1, so nullity 2, and every kernel vector annihilates m
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in m.row_iter() {
                let dot: Coeff = r.iter().zip(v.iter()).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn width_mismatch_reported() {
        let m = mat(&[&[1, 2]]);
        assert!(matches!(
            m.row_space_contains(&[q(1)]),
            Err(LinalgError::WidthMismatch { .. })
        ));
    }
}
