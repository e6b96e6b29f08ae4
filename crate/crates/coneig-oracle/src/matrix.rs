//! Dense complex matrix at a fixed multiple precision, row major.
//!
//! Only the handful of operations the reference computations need; no
//! attempt at performance beyond in-place accumulation.

use rug::ops::NegAssign;
use rug::{Assign, Complex};
use std::ops::{Index, IndexMut};

use crate::mp::conj;

#[derive(Debug, Clone)]
pub struct MpMatrix {
    rows: usize,
    cols: usize,
    prec: u32,
    data: Vec<Complex>,
}

impl MpMatrix {
    pub fn zeros(prec: u32, rows: usize, cols: usize) -> Self {
        let data = (0..rows * cols).map(|_| Complex::new(prec)).collect();
        Self {
            rows,
            cols,
            prec,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Entrywise conjugate.
    pub fn conj(&self) -> Self {
        let mut r = self.clone();
        for v in &mut r.data {
            v.mut_imag().neg_assign();
        }
        r
    }

    /// Conjugate transpose.
    pub fn hermitian_transpose(&self) -> Self {
        let mut r = Self::zeros(self.prec, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                r[(j, i)] = conj(&self[(i, j)]);
            }
        }
        r
    }

    /// self * other.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut r = Self::zeros(self.prec, self.rows, other.cols);
        let mut t = Complex::new(self.prec);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Complex::new(self.prec);
                for k in 0..self.cols {
                    t.assign(&self[(i, k)] * &other[(k, j)]);
                    acc += &t;
                }
                r[(i, j)] = acc;
            }
        }
        r
    }

    /// self * v for a column vector v.
    pub fn mul_vec(&self, v: &[Complex]) -> Vec<Complex> {
        assert_eq!(self.cols, v.len(), "matvec shape");
        let mut t = Complex::new(self.prec);
        (0..self.rows)
            .map(|i| {
                let mut acc = Complex::new(self.prec);
                for k in 0..self.cols {
                    t.assign(&self[(i, k)] * &v[k]);
                    acc += &t;
                }
                acc
            })
            .collect()
    }

    pub fn col(&self, j: usize) -> Vec<Complex> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl Index<(usize, usize)> for MpMatrix {
    type Output = Complex;
    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for MpMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        &mut self.data[i * self.cols + j]
    }
}
