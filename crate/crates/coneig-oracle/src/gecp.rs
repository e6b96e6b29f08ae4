//! Multiple-precision Cholesky with diagonal pivoting.
//!
//! Plain outer-product elimination on the explicitly assembled matrix: at
//! each step the largest remaining diagonal entry is brought to the front,
//! exactly the pivoting rule the double pipeline applies through its
//! generator recursion. The output layout matches `coneig`'s factorization
//! (unit lower triangle in pivot order plus positive pivots) so the two can
//! be compared entry by entry.

use rug::{Assign, Complex, Float};

use coneig::RationalFunction;

use crate::assemble::cauchy_mp;
use crate::error::{OracleError, Result};
use crate::matrix::MpMatrix;
use crate::mp::{bits, conj};

/// Pivoted factorization C[perm, perm] = L diag(pivots) L^*.
#[derive(Debug, Clone)]
pub struct OracleCholesky {
    pub perm: Vec<usize>,
    /// Unit lower triangular, rows in pivot order.
    pub l: MpMatrix,
    /// Positive pivots, decreasing.
    pub pivots: Vec<Float>,
}

pub fn oracle_gecp(f: &RationalFunction, digits: u32) -> Result<OracleCholesky> {
    let cauchy = cauchy_mp(f, bits(digits))?;
    oracle_gecp_of(&cauchy.c)
}

pub fn oracle_gecp_of(c: &MpMatrix) -> Result<OracleCholesky> {
    let p = c.prec();
    let n = c.rows();
    let mut a = c.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::with_capacity(n);
    let mut l = MpMatrix::zeros(p, n, n);
    for i in 0..n {
        l[(i, i)] = Complex::with_val(p, (1, 0));
    }

    for k in 0..n {
        // Largest remaining diagonal entry.
        let mut best = k;
        for i in k + 1..n {
            if a[(i, i)].real() > a[(best, best)].real() {
                best = i;
            }
        }
        if best != k {
            a.swap_rows(k, best);
            a.swap_cols(k, best);
            perm.swap(k, best);
            // Only the already-computed part of L moves with the rows.
            for j in 0..k {
                let (r0, r1) = (k.min(best), k.max(best));
                let tmp = l[(r0, j)].clone();
                l[(r0, j)] = l[(r1, j)].clone();
                l[(r1, j)] = tmp;
            }
        }
        let piv = a[(k, k)].real().clone();
        if !(piv > 0) {
            return Err(OracleError::NotPositive {
                step: k,
                value: piv.to_f64(),
            });
        }
        for i in k + 1..n {
            l[(i, k)] = Complex::with_val(p, &a[(i, k)] / &piv);
        }
        // Schur update of the trailing block.
        for i in k + 1..n {
            for j in k + 1..=i {
                let mut upd = Complex::with_val(p, &l[(i, k)] * &conj(&l[(j, k)]));
                upd *= &piv;
                a[(i, j)] -= &upd;
                if i != j {
                    a[(j, i)] = conj(&a[(i, j)]);
                }
            }
            a[(i, i)].mut_imag().assign(0);
        }
        pivots.push(piv);
    }
    Ok(OracleCholesky { perm, l, pivots })
}
