//! Deterministic workloads shared by the benchmarks.

use resdist::generators::{self, PieceKind};
use resdist::{spectral, Digraph, RatMatrix};

/// Balanced random digraph on `n` vertices with about `2n` arcs.
pub fn balanced(n: usize, seed: u64) -> Digraph {
    generators::gen_balanced_random(n, (2 * n).min(n * (n - 1)), seed).expect("budget within range")
}

/// Cactus of `blocks` cycles of length 3 to 5.
pub fn cactus(blocks: usize, seed: u64) -> Digraph {
    generators::gen_cactus(blocks, 3, 5, seed).expect("valid parameters")
}

/// One-point union of `blocks` small balanced pieces.
pub fn class_c(blocks: usize, seed: u64) -> Digraph {
    let kind = PieceKind::BalancedRandom {
        min_n: 3,
        max_n: 5,
        arc_factor_pct: 150,
    };
    generators::gen_class_c(blocks, kind, seed)
        .expect("valid parameters")
        .graph
}

/// Laplacian with the last row and column removed; nonsingular for
/// connected balanced input.
pub fn reduced_laplacian(d: &Digraph) -> RatMatrix {
    let keep: Vec<usize> = (0..d.n() - 1).collect();
    spectral::laplacian(d).select(&keep, &keep)
}
