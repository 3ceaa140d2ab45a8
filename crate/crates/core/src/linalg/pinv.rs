//! Moore–Penrose inverse over the rationals.
//!
//! Over a real field the conjugate transpose is the plain transpose, so every
//! Penrose axiom can be checked with exact equality.

use super::{elimination, RatMatrix};
use crate::error::{Error, Result};

/// `A = F·G` with `F` of full column rank and `G` of full row rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFactorization {
    pub f: RatMatrix,
    pub g: RatMatrix,
    pub rank: usize,
}

/// Full-rank factorization read off the reduced row echelon form: `G` is the
/// nonzero rows of `rref(A)` and `F` the columns of `A` at the pivots.
///
/// The zero matrix gives rank 0 with an `m×0` `F` and a `0×n` `G`.
pub fn rank_factorization(a: &RatMatrix) -> RankFactorization {
    let (r, pivots) = elimination::rref(a);
    let rank = pivots.len();
    let rows: Vec<usize> = (0..rank).collect();
    let all_cols: Vec<usize> = (0..a.cols()).collect();
    let all_rows: Vec<usize> = (0..a.rows()).collect();
    RankFactorization {
        f: a.select(&all_rows, &pivots),
        g: r.select(&rows, &all_cols),
        rank,
    }
}

/// `A† = Gᵀ (G Gᵀ)⁻¹ (Fᵀ F)⁻¹ Fᵀ`.
pub fn pinv_general(a: &RatMatrix) -> RatMatrix {
    let RankFactorization { f, g, rank } = rank_factorization(a);
    if rank == 0 {
        return RatMatrix::zeros(a.cols(), a.rows());
    }
    let gt = g.transpose();
    let ft = f.transpose();
    // Both Gram matrices are r×r and positive definite.
    let ggt_inv = elimination::inverse(&(&g * &gt)).expect("G has full row rank");
    let ftf_inv = elimination::inverse(&(&ft * &f)).expect("F has full column rank");
    &(&(&gt * &ggt_inv) * &ftf_inv) * &ft
}

/// Outcome of checking the four Penrose equations for a candidate `X = A†`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PenroseAxioms {
    pub axa_eq_a: bool,
    pub xax_eq_x: bool,
    pub ax_symmetric: bool,
    pub xa_symmetric: bool,
}

impl PenroseAxioms {
    pub fn all(&self) -> bool {
        self.axa_eq_a && self.xax_eq_x && self.ax_symmetric && self.xa_symmetric
    }
}

pub fn penrose_axioms(a: &RatMatrix, x: &RatMatrix) -> Result<PenroseAxioms> {
    if x.shape() != (a.cols(), a.rows()) {
        return Err(Error::Shape(format!(
            "candidate inverse of a {}x{} matrix must be {}x{}, got {}x{}",
            a.rows(),
            a.cols(),
            a.cols(),
            a.rows(),
            x.rows(),
            x.cols()
        )));
    }
    let ax = a * x;
    let xa = x * a;
    Ok(PenroseAxioms {
        axa_eq_a: &ax * a == *a,
        xax_eq_x: &xa * x == *x,
        ax_symmetric: ax.is_symmetric(),
        xa_symmetric: xa.is_symmetric(),
    })
}

/// True iff `x` satisfies all four Penrose equations for `a` exactly.
pub fn penrose_check(a: &RatMatrix, x: &RatMatrix) -> Result<bool> {
    Ok(penrose_axioms(a, x)?.all())
}

/// `diag(A, C)† = diag(A†, C†)`.
pub fn block_diag_pinv(a: &RatMatrix, c: &RatMatrix) -> RatMatrix {
    RatMatrix::block_diag(&pinv_general(a), &pinv_general(c))
}
