//! Minimal dense complex matrix used by the factorizations.
//!
//! Column-major storage; just the handful of operations the algorithms
//! need, written so that heavily graded data (column scales spanning
//! hundreds of orders of magnitude) does not underflow in norms.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn col(&self, j: usize) -> &[Complex64] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [Complex64] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    /// Mutable access to two distinct columns at once.
    pub fn two_cols_mut(&mut self, p: usize, q: usize) -> (&mut [Complex64], &mut [Complex64]) {
        assert!(p < q);
        let (lo, hi) = self.data.split_at_mut(q * self.rows);
        (
            &mut lo[p * self.rows..(p + 1) * self.rows],
            &mut hi[..self.rows],
        )
    }

    pub fn swap_cols(&mut self, p: usize, q: usize) {
        if p == q {
            return;
        }
        let (a, b) = if p < q { (p, q) } else { (q, p) };
        let (x, y) = self.two_cols_mut(a, b);
        x.swap_with_slice(y);
    }

    pub fn swap_rows(&mut self, p: usize, q: usize) {
        if p == q {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(j * self.rows + p, j * self.rows + q);
        }
    }

    /// A^T * A (plain transpose, no conjugation): the complex-symmetric Gram.
    pub fn transpose_times_self(&self) -> Matrix {
        let m = self.cols;
        let mut g = Matrix::zeros(m, m);
        for i in 0..m {
            let ci = self.col(i);
            for j in i..m {
                let cj = self.col(j);
                let mut s = Complex64::new(0.0, 0.0);
                for l in 0..self.rows {
                    s += ci[l] * cj[l];
                }
                g[(i, j)] = s;
                g[(j, i)] = s; // exact symmetry by construction
            }
        }
        g
    }

    /// self * other.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for j in 0..other.cols {
            let oc = other.col(j);
            let out_col = out.col_mut(j);
            for k in 0..self.cols {
                let f = oc[k];
                if f == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let sc = self.col(k);
                for i in 0..self.rows {
                    out_col[i] += sc[i] * f;
                }
            }
        }
        out
    }

    /// self^* * v for a vector v (conjugate transpose application).
    pub fn conj_transpose_mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.rows);
        (0..self.cols)
            .map(|j| {
                let c = self.col(j);
                let mut s = Complex64::new(0.0, 0.0);
                for i in 0..self.rows {
                    s += c[i].conj() * v[i];
                }
                s
            })
            .collect()
    }

    /// self * v for a vector v.
    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Complex64::new(0.0, 0.0); self.rows];
        for j in 0..self.cols {
            let f = v[j];
            if f == Complex64::new(0.0, 0.0) {
                continue;
            }
            let c = self.col(j);
            for i in 0..self.rows {
                out[i] += c[i] * f;
            }
        }
        out
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

/// Euclidean norm of a complex slice, scaled to survive entries whose
/// squares underflow.
pub fn scaled_norm(v: &[Complex64]) -> f64 {
    let mut amax = 0.0f64;
    for z in v {
        amax = amax.max(z.re.abs()).max(z.im.abs());
    }
    if amax == 0.0 || !amax.is_finite() {
        return if amax == 0.0 { 0.0 } else { f64::INFINITY };
    }
    let inv = 1.0 / amax;
    let mut s = 0.0f64;
    for z in v {
        let re = z.re * inv;
        let im = z.im * inv;
        s += re * re + im * im;
    }
    amax * s.sqrt()
}

/// Conjugated dot product conj(a) . b.
pub fn cdot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    debug_assert_eq!(a.len(), b.len());
    let mut s = Complex64::new(0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        s += x.conj() * y;
    }
    s
}
