//! Dense exact linear algebra over [`Rat`](crate::rat::Rat).

mod elimination;
mod matrix;
mod pinv;

pub use elimination::{det, inverse, rank, rref};
pub use matrix::RatMatrix;
pub use pinv::{
    block_diag_pinv, penrose_axioms, penrose_check, pinv_general, rank_factorization,
    PenroseAxioms, RankFactorization,
};
