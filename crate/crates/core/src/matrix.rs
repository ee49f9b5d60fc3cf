//! Row reduction over a [`Field`].
//!
//! Matrices over `F_q` reuse the arithmetic of the big field since `F_q` is a
//! subfield of it.

use alloc::vec;
use alloc::vec::Vec;

use crate::field_tower::{Field, FieldElement};

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    cols: usize,
    rows: Vec<Vec<FieldElement>>,
}

impl Matrix {
    pub fn new(cols: usize, rows: Vec<Vec<FieldElement>>) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Matrix { cols, rows }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { cols, rows: vec![vec![FieldElement::ZERO; cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.rows[i][i] = FieldElement::ONE;
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<FieldElement>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<FieldElement>> {
        self.rows
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.rows[r][c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.rows[r][c] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols).map(|c| self.rows.iter().map(|r| r[c]).collect()).collect();
        Matrix { cols: self.rows.len(), rows }
    }

    pub fn mul(&self, field: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.nrows());
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.cols)
                    .map(|c| {
                        r.iter()
                            .zip(&other.rows)
                            .fold(FieldElement::ZERO, |acc, (&a, o)| field.add(acc, field.mul(a, o[c])))
                    })
                    .collect()
            })
            .collect();
        Matrix { cols: other.cols, rows }
    }

    /// Reduced row echelon form with zero rows removed, plus pivot columns.
    pub fn rref(&self, field: &Field) -> (Matrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
            for x in rows[r].iter_mut() {
                *x = field.mul(*x, inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        (Matrix { cols: self.cols, rows }, pivots)
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of the right kernel `{x : M x = 0}`, in reduced echelon form.
    pub fn kernel(&self, field: &Field) -> Matrix {
        let (red, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let basis = free
            .iter()
            .map(|&f| {
                let mut v = vec![FieldElement::ZERO; self.cols];
                v[f] = FieldElement::ONE;
                for (row, &pc) in red.rows.iter().zip(&pivots) {
                    v[pc] = field.neg(row[f]);
                }
                v
            })
            .collect();
        Matrix { cols: self.cols, rows: basis }.rref(field).0
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self, field: &Field) -> Option<Matrix> {
        let n = self.rows.len();
        if n != self.cols {
            return None;
        }
        let aug = Matrix {
            cols: 2 * n,
            rows: self
                .rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    let mut row = r.clone();
                    row.extend((0..n).map(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO }));
                    row
                })
                .collect(),
        };
        let (red, pivots) = aug.rref(field);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Matrix { cols: n, rows: red.rows.into_iter().map(|r| r[n..].to_vec()).collect() })
    }
}
