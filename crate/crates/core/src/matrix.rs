use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{Poly, Ring};

/// Homogeneous map of graded free modules `F1 -> F0`.
///
/// `row_deg` are the generator degrees of `F0`, `col_deg` those of `F1`; a nonzero
/// entry `(i, j)` is homogeneous of degree `col_deg[j] - row_deg[i]`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    nrows: usize,
    ncols: usize,
    entries: Vec<Poly>,
    row_deg: Vec<i64>,
    col_deg: Vec<i64>,
}

impl Matrix {
    pub fn zeros(ring: &Ring, row_deg: Vec<i64>, col_deg: Vec<i64>) -> Matrix {
        let (nrows, ncols) = (row_deg.len(), col_deg.len());
        Matrix {
            ring: ring.clone(),
            nrows,
            ncols,
            entries: vec![Poly::zero(ring); nrows * ncols],
            row_deg,
            col_deg,
        }
    }

    pub fn identity(ring: &Ring, degs: Vec<i64>) -> Matrix {
        let mut m = Matrix::zeros(ring, degs.clone(), degs);
        for i in 0..m.nrows {
            m.set(i, i, Poly::one(ring));
        }
        m
    }

    /// Build from rows with explicit degrees; every entry is checked.
    pub fn from_rows(
        ring: &Ring,
        rows: Vec<Vec<Poly>>,
        row_deg: Vec<i64>,
        col_deg: Vec<i64>,
    ) -> Result<Matrix> {
        if rows.len() != row_deg.len() {
            return Err(Error::Shape(format!(
                "{} rows but {} row degrees",
                rows.len(),
                row_deg.len()
            )));
        }
        let mut m = Matrix::zeros(ring, row_deg, col_deg);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != m.ncols {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    m.ncols
                )));
            }
            for (j, e) in row.into_iter().enumerate() {
                if e.ring() != ring {
                    return Err(Error::RingMismatch);
                }
                m.set(i, j, e);
            }
        }
        m.check_homogeneous()?;
        Ok(m)
    }

    /// Build from rows, inferring column degrees from the first nonzero entry of
    /// each column. Zero columns get the smallest row degree.
    pub fn from_rows_infer(ring: &Ring, rows: Vec<Vec<Poly>>, row_deg: Vec<i64>) -> Result<Matrix> {
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let fallback = row_deg.iter().copied().min().unwrap_or(0);
        let mut col_deg = vec![fallback; ncols];
        for (j, cd) in col_deg.iter_mut().enumerate() {
            for (i, row) in rows.iter().enumerate() {
                if let Some(e) = row.get(j) {
                    if let (Some(d), Some(rd)) = (e.degree(), row_deg.get(i)) {
                        *cd = d as i64 + rd;
                        break;
                    }
                }
            }
        }
        Matrix::from_rows(ring, rows, row_deg, col_deg)
    }

    /// Single column matrix from a vector of entries.
    pub fn column_vector(ring: &Ring, entries: Vec<Poly>, row_deg: Vec<i64>, col_deg: i64) -> Result<Matrix> {
        Matrix::from_rows(
            ring,
            entries.into_iter().map(|e| vec![e]).collect(),
            row_deg,
            vec![col_deg],
        )
    }

    /// Build from columns with explicit degrees.
    pub fn from_columns(
        ring: &Ring,
        cols: Vec<Vec<Poly>>,
        row_deg: Vec<i64>,
        col_deg: Vec<i64>,
    ) -> Result<Matrix> {
        let mut m = Matrix::zeros(ring, row_deg, col_deg);
        if cols.len() != m.ncols {
            return Err(Error::Shape("column count mismatch".into()));
        }
        for (j, col) in cols.into_iter().enumerate() {
            if col.len() != m.nrows {
                return Err(Error::Shape(format!("column {j} has wrong length")));
            }
            for (i, e) in col.into_iter().enumerate() {
                m.set(i, j, e);
            }
        }
        m.check_homogeneous()?;
        Ok(m)
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    #[inline]
    pub fn nrows(&self) -> usize {
        self.nrows
    }

    #[inline]
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row_deg(&self) -> &[i64] {
        &self.row_deg
    }

    pub fn col_deg(&self) -> &[i64] {
        &self.col_deg
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.ncols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Poly) {
        self.entries[i * self.ncols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        (0..self.ncols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Poly>> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Poly>> {
        (0..self.nrows).map(|i| self.row(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_square(&self) -> bool {
        self.nrows == self.ncols
    }

    pub fn is_column_zero(&self, j: usize) -> bool {
        (0..self.nrows).all(|i| self.get(i, j).is_zero())
    }

    /// Required degree of entry `(i, j)`.
    pub fn entry_degree(&self, i: usize, j: usize) -> i64 {
        self.col_deg[j] - self.row_deg[i]
    }

    pub fn check_homogeneous(&self) -> Result<()> {
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                let e = self.get(i, j);
                if e.is_zero() {
                    continue;
                }
                if !e.is_homogeneous() || e.degree().unwrap() as i64 != self.entry_degree(i, j) {
                    return Err(Error::Inhomogeneous { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Whether some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.entries.iter().any(|e| e.is_constant())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.ncols != other.nrows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, other.nrows, other.ncols
            )));
        }
        let mut out = Matrix::zeros(&self.ring, self.row_deg.clone(), other.col_deg.clone());
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.ncols + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Matrix times a column vector given as entries.
    pub fn apply(&self, v: &[Poly]) -> Vec<Poly> {
        assert_eq!(v.len(), self.ncols);
        (0..self.nrows)
            .map(|i| {
                let mut acc = Poly::zero(&self.ring);
                for (j, vj) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        acc = acc.add(&a.mul(vj));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.nrows != other.nrows || self.ncols != other.ncols {
            return Err(Error::Shape("cannot add matrices of different shape".into()));
        }
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&other.entries) {
            *a = a.add(b);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = a.neg();
        }
        out
    }

    pub fn scale(&self, f: &Poly, extra_deg: i64) -> Matrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = a.mul(f);
        }
        for d in out.col_deg.iter_mut() {
            *d += extra_deg;
        }
        out
    }

    /// The dual map `F0^* -> F1^*`.
    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(
            &self.ring,
            self.col_deg.iter().map(|d| -d).collect(),
            self.row_deg.iter().map(|d| -d).collect(),
        );
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Plain transpose with explicit degrees (no dualization).
    pub fn transpose_with(&self, row_deg: Vec<i64>, col_deg: Vec<i64>) -> Matrix {
        let mut t = self.transpose();
        t.row_deg = row_deg;
        t.col_deg = col_deg;
        t
    }

    /// Shift every degree by `-j`, so that `coker` becomes `coker(j)`.
    pub fn twist(&self, j: i64) -> Matrix {
        let mut out = self.clone();
        out.row_deg.iter_mut().for_each(|d| *d -= j);
        out.col_deg.iter_mut().for_each(|d| *d -= j);
        out
    }

    pub fn with_degrees(&self, row_deg: Vec<i64>, col_deg: Vec<i64>) -> Matrix {
        assert_eq!(row_deg.len(), self.nrows);
        assert_eq!(col_deg.len(), self.ncols);
        let mut out = self.clone();
        out.row_deg = row_deg;
        out.col_deg = col_deg;
        out
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.nrows != other.nrows {
            return Err(Error::Shape("hstack row mismatch".into()));
        }
        let mut col_deg = self.col_deg.clone();
        col_deg.extend_from_slice(&other.col_deg);
        let mut out = Matrix::zeros(&self.ring, self.row_deg.clone(), col_deg);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.ncols {
                out.set(i, self.ncols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.ncols != other.ncols {
            return Err(Error::Shape("vstack column mismatch".into()));
        }
        let mut row_deg = self.row_deg.clone();
        row_deg.extend_from_slice(&other.row_deg);
        let mut out = Matrix::zeros(&self.ring, row_deg, self.col_deg.clone());
        for j in 0..self.ncols {
            for i in 0..self.nrows {
                out.set(i, j, self.get(i, j).clone());
            }
            for i in 0..other.nrows {
                out.set(self.nrows + i, j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut row_deg = self.row_deg.clone();
        row_deg.extend_from_slice(&other.row_deg);
        let mut col_deg = self.col_deg.clone();
        col_deg.extend_from_slice(&other.col_deg);
        let mut out = Matrix::zeros(&self.ring, row_deg, col_deg);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.nrows {
            for j in 0..other.ncols {
                out.set(self.nrows + i, self.ncols + j, other.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(
            &self.ring,
            rows.iter().map(|&i| self.row_deg[i]).collect(),
            self.col_deg.clone(),
        );
        for (a, &i) in rows.iter().enumerate() {
            for j in 0..self.ncols {
                out.set(a, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(
            &self.ring,
            self.row_deg.clone(),
            cols.iter().map(|&j| self.col_deg[j]).collect(),
        );
        for i in 0..self.nrows {
            for (b, &j) in cols.iter().enumerate() {
                out.set(i, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by cofactor expansion over column subsets.
    pub fn det(&self) -> Poly {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.nrows;
        if n == 0 {
            return Poly::one(&self.ring);
        }
        let mut memo: HashMap<u64, Poly> = HashMap::new();
        self.det_rec(0, (1u64 << n) - 1, &mut memo)
    }

    // Minor on rows `row..n` and the columns in `mask`.
    fn det_rec(&self, row: usize, mask: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
        if mask.count_ones() == 1 {
            let j = mask.trailing_zeros() as usize;
            return self.get(row, j).clone();
        }
        if let Some(p) = memo.get(&mask) {
            return p.clone();
        }
        let mut acc = Poly::zero(&self.ring);
        let mut sign_neg = false;
        for j in 0..self.ncols {
            if mask & (1 << j) == 0 {
                continue;
            }
            let a = self.get(row, j);
            if !a.is_zero() {
                let minor = self.det_rec(row + 1, mask & !(1 << j), memo);
                if !minor.is_zero() {
                    let t = a.mul(&minor);
                    acc = if sign_neg { acc.sub(&t) } else { acc.add(&t) };
                }
            }
            sign_neg = !sign_neg;
        }
        memo.insert(mask, acc.clone());
        acc
    }

    /// Minor with row `i` and column `j` removed.
    pub fn minor_matrix(&self, i: usize, j: usize) -> Matrix {
        let rows: Vec<usize> = (0..self.nrows).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..self.ncols).filter(|&c| c != j).collect();
        self.select_rows(&rows).select_cols(&cols)
    }

    /// Adjugate, with the degrees that make `adj(A) * A = det(A) * I` homogeneous.
    pub fn adjugate(&self) -> Matrix {
        assert!(self.is_square());
        let n = self.nrows;
        let total: i64 = self.col_deg.iter().sum::<i64>() - self.row_deg.iter().sum::<i64>();
        // entry (j, i) has degree total - (col_j - row_i)
        let row_deg: Vec<i64> = self.col_deg.iter().map(|c| c - total).collect();
        let col_deg: Vec<i64> = self.row_deg.clone();
        let mut out = Matrix::zeros(&self.ring, row_deg, col_deg);
        if n == 1 {
            out.set(0, 0, Poly::one(&self.ring));
            return out;
        }
        for i in 0..n {
            for j in 0..n {
                let m = self.minor_matrix(i, j).det();
                let m = if (i + j) % 2 == 1 { m.neg() } else { m };
                out.set(j, i, m);
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.nrows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matrix{{rows {:?}, cols {:?}, {}}}",
            self.row_deg, self.col_deg, self
        )
    }
}
