//! Elimination kernels: fraction-free determinant, Gauss–Jordan inverse and
//! reduced row echelon form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::RatMatrix;
use crate::error::{Error, Result};
use crate::rat::Rat;

/// Exact determinant.
///
/// Each row is scaled by the lcm of its denominators to get an integer
/// matrix, Bareiss elimination runs on that, and the row scalings are divided
/// back out. The 0×0 determinant is one.
pub fn det(a: &RatMatrix) -> Result<Rat> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "determinant of non-square {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    if n == 0 {
        return Ok(Rat::one());
    }

    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in a.row_vecs() {
        let l = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        m.push(row.iter().map(|v| v.numer() * (&l / v.denom())).collect());
        scale *= l;
    }

    let d = bareiss(&mut m);
    Ok(Rat::new(d, scale))
}

/// In-place Bareiss elimination; returns the determinant.
fn bareiss(m: &mut [Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                // exact by Sylvester's identity
                m[i][j] = v / &prev;
            }
            m[i][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Exact inverse by Gauss–Jordan elimination.
pub fn inverse(a: &RatMatrix) -> Result<RatMatrix> {
    if !a.is_square() {
        return Err(Error::Shape(format!(
            "inverse of non-square {}x{} matrix",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let mut m: Vec<Vec<Rat>> = a.row_vecs().map(<[Rat]>::to_vec).collect();
    let mut inv: Vec<Vec<Rat>> = RatMatrix::identity(n)
        .row_vecs()
        .map(<[Rat]>::to_vec)
        .collect();

    for k in 0..n {
        let p = (k..n)
            .find(|&r| !m[r][k].is_zero())
            .ok_or(Error::Singular)?;
        m.swap(k, p);
        inv.swap(k, p);

        let piv = m[k][k].recip();
        for v in m[k].iter_mut().skip(k) {
            *v *= &piv;
        }
        for v in inv[k].iter_mut() {
            *v *= &piv;
        }

        let (pivot_row, pivot_inv) = (m[k].clone(), inv[k].clone());
        for i in (0..n).filter(|&i| i != k) {
            let f = m[i][k].clone();
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                if !pivot_row[j].is_zero() {
                    let t = &f * &pivot_row[j];
                    m[i][j] -= t;
                }
            }
            for j in 0..n {
                if !pivot_inv[j].is_zero() {
                    let t = &f * &pivot_inv[j];
                    inv[i][j] -= t;
                }
            }
        }
    }
    RatMatrix::from_rows(inv)
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(a: &RatMatrix) -> (RatMatrix, Vec<usize>) {
    let (rows, cols) = a.shape();
    let mut m: Vec<Vec<Rat>> = a.row_vecs().map(<[Rat]>::to_vec).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let piv = m[r][c].recip();
        for v in m[r].iter_mut().skip(c) {
            *v *= &piv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &f * &pivot_row[j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let out = RatMatrix::new(rows, cols, m.into_iter().flatten().collect())
        .expect("rref preserves shape");
    (out, pivots)
}

pub fn rank(a: &RatMatrix) -> usize {
    rref(a).1.len()
}
