//! Exact linear algebra over the rationals: vectors, dense matrices,
//! Gaussian elimination, rank, kernels and inverses.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Vector with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QVector {
    entries: Vec<Rational>,
}

impl QVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        QVector { entries }
    }

    pub fn zeros(n: usize) -> Self {
        QVector {
            entries: vec![Rational::zero(); n],
        }
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        QVector {
            entries: entries.iter().map(|&n| Rational::from_int(n)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Rational::is_zero)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn dot(&self, other: &QVector) -> Result<Rational> {
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "dot of lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a * b)
            .sum())
    }

    pub fn scale(&self, c: &Rational) -> QVector {
        QVector {
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &QVector) -> Result<QVector> {
        if self.len() != other.len() {
            return Err(Error::Dimension("vector addition".into()));
        }
        Ok(QVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }
}

impl std::ops::Index<usize> for QVector {
    type Output = Rational;
    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl std::ops::IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Rational {
        &mut self.entries[i]
    }
}

impl From<Vec<Rational>> for QVector {
    fn from(entries: Vec<Rational>) -> Self {
        QVector { entries }
    }
}

impl From<Vec<i64>> for QVector {
    fn from(entries: Vec<i64>) -> Self {
        QVector::from_ints(&entries)
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.entries).finish()
    }
}

/// Dense row-major matrix with exact rational entries.
#[derive(Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "matrix {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(QMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        QMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&n| Rational::from_int(n)).collect())
                .collect(),
        )
        .expect("rectangular integer rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn row(&self, i: usize) -> QVector {
        QVector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * &other[(k, j)];
                    out[(i, j)] += &t;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &QVector) -> Result<QVector> {
        if self.cols != v.len() {
            return Err(Error::Dimension(format!(
                "matrix {}x{} applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = QVector::zeros(self.rows);
        for i in 0..self.rows {
            let mut acc = Rational::zero();
            for j in 0..self.cols {
                if !self[(i, j)].is_zero() {
                    acc += &(&self[(i, j)] * &v[j]);
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension("matrix addition".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(src) = (pivot_row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            self.swap_rows(src, pivot_row);
            let inv = self[(pivot_row, col)].recip().expect("non-zero pivot");
            for j in col..self.cols {
                let t = &self[(pivot_row, j)] * &inv;
                self[(pivot_row, j)] = t;
            }
            for r in 0..self.rows {
                if r != pivot_row && !self[(r, col)].is_zero() {
                    let factor = self[(r, col)].clone();
                    for j in col..self.cols {
                        let t = &self[(r, j)] - &(&factor * &self[(pivot_row, j)]);
                        self[(r, j)] = t;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        pivots
    }

    /// Exact rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.rref_in_place().len()
    }

    /// Exact basis of the right null space; empty iff the rank equals the
    /// number of columns.
    pub fn kernel_basis(&self) -> Vec<QVector> {
        let mut work = self.clone();
        let pivots = work.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = QVector::zeros(self.cols);
            v[fc] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -&work[(row, fc)];
            }
            basis.push(v);
        }
        basis
    }

    /// True iff the matrix is square and `M^n = 0` with `n = rows`.
    pub fn is_nilpotent(&self) -> Result<bool> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut power = self.clone();
        for _ in 1..self.rows.max(1) {
            if power.is_zero() {
                return Ok(true);
            }
            power = power.mul(self)?;
        }
        Ok(power.is_zero())
    }

    /// Exact inverse of a square matrix.
    pub fn inverse(&self) -> Result<QMatrix> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = QMatrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rational::one();
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return Err(Error::Singular(format!("{n}x{n} matrix has no inverse")));
        }
        let mut out = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = aug[(i, n + j)].clone();
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(QMatrix::from_int_rows(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(QMatrix::from_int_rows(&[&[0, 0], &[0, 0]]).rank(), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(QMatrix::identity(2).kernel_basis().is_empty());

        let k = QMatrix::from_int_rows(&[&[1, 1]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0] + &k[0][1], Rational::zero());

        // [[1,2],[2,4]] has kernel spanned by (2,-1).
        let k = QMatrix::from_int_rows(&[&[1, 2], &[2, 4]]).kernel_basis();
        assert_eq!(k.len(), 1);
        assert_eq!(&k[0][0], &(&Rational::from_int(-2) * &k[0][1]));
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let m = QMatrix::from_int_rows(&[&[1, 2, 3], &[4, 5, 6]]);
        for v in m.kernel_basis() {
            assert!(m.mul_vec(&v).unwrap().is_zero());
        }
        assert_eq!(m.rank() + m.kernel_basis().len(), m.cols());
    }

    #[test]
    fn nilpotency_examples() {
        assert!(QMatrix::from_int_rows(&[&[0, 1], &[0, 0]])
            .is_nilpotent()
            .unwrap());
        assert!(!QMatrix::identity(2).is_nilpotent().unwrap());
        assert!(QMatrix::from_int_rows(&[&[1, -1], &[1, -1]])
            .is_nilpotent()
            .unwrap());
        assert!(QMatrix::from_int_rows(&[&[1, 2]]).is_nilpotent().is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_int_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(2));
        assert!(QMatrix::from_int_rows(&[&[1, 2], &[2, 4]])
            .inverse()
            .is_err());
    }
}
