//! Laplacians, spanning-tree counts, the partitioned pseudoinverse and
//! resistance matrices.
//!
//! For a connected balanced digraph on `N` vertices the Laplacian has zero row
//! and column sums and rank `N − 1`. Moving a pivot vertex to the last
//! position gives
//!
//! ```text
//!     L = [  B     −Be  ]        L† = [ C − e yᵀ/N − x eᵀ/N   −x/N ] + x₀ J
//!         [ −eᵀB   eᵀBe ]             [ −yᵀ/N                   0  ]
//! ```
//!
//! with `C = B⁻¹`, `x = Ce`, `yᵀ = eᵀC` and `x₀ = eᵀCe / N²`. That is the fast
//! path used for balanced inputs; the general rank-factorization
//! pseudoinverse is the cross-check and the fallback for unbalanced graphs.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::linalg::{self, RatMatrix};
use crate::rat::{self, Rat};

/// `L[i,i] = outdeg(i)`, `L[i,j] = −1` for each arc `(i,j)`.
pub fn laplacian(d: &Digraph) -> RatMatrix {
    let n = d.n();
    let mut l = RatMatrix::zeros(n, n);
    for (u, v) in d.arcs() {
        l[(u - 1, v - 1)] = rat::int(-1);
        l[(u - 1, u - 1)] += Rat::one();
    }
    l
}

fn require_connected_balanced(d: &Digraph, what: &'static str) -> Result<()> {
    if !d.is_balanced() {
        return Err(Error::NotBalanced(what));
    }
    if !d.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(())
}

fn singleton(i: usize) -> BTreeSet<usize> {
    BTreeSet::from([i])
}

/// Number of spanning arborescences, `det L[{i}ᶜ, {i}ᶜ]`, which is the same
/// for every root `i` of a connected balanced digraph.
pub fn kappa(d: &Digraph) -> Result<Rat> {
    require_connected_balanced(d, "kappa")?;
    let l = laplacian(d);
    let first = linalg::det(&l.delete(&singleton(0), &singleton(0))?)?;
    let last = d.n() - 1;
    let other = linalg::det(&l.delete(&singleton(last), &singleton(last))?)?;
    if first != other {
        return Err(Error::Invariant(format!(
            "cofactors differ: root 1 gives {first}, root {} gives {other}",
            d.n()
        )));
    }
    Ok(first)
}

/// `det L[{i,j}ᶜ, {i,j}ᶜ]` for distinct 1-based `i`, `j`.
pub fn pair_cofactor(d: &Digraph, i: usize, j: usize) -> Result<Rat> {
    let (i0, j0) = (d.check_vertex(i)?, d.check_vertex(j)?);
    if i0 == j0 {
        return Err(Error::InvalidArgument(format!(
            "pair cofactor needs distinct vertices, got {i} twice"
        )));
    }
    let drop = BTreeSet::from([i0, j0]);
    linalg::det(&laplacian(d).delete(&drop, &drop)?)
}

/// Ingredients of the partitioned pseudoinverse for one pivot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionData {
    /// 1-based pivot vertex (placed last).
    pub pivot: usize,
    /// Original 1-based labels in permuted order; the pivot is last.
    pub order: Vec<usize>,
    /// `C = B⁻¹`, indexed in permuted order.
    pub c: RatMatrix,
    /// Row sums of `C`.
    pub x: Vec<Rat>,
    /// Column sums of `C`.
    pub y: Vec<Rat>,
    /// `eᵀCe / N²`.
    pub x0: Rat,
    pub big_n: usize,
}

impl PartitionData {
    /// Position of a non-pivot vertex inside `C`.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.order[..self.order.len() - 1]
            .iter()
            .position(|&w| w == v)
    }

    fn pos(&self, v: usize) -> Result<usize> {
        self.position(v).ok_or_else(|| {
            Error::InvalidArgument(format!("vertex {v} is the pivot or not in the graph"))
        })
    }

    /// `c_ij` addressed by original 1-based labels (neither may be the pivot).
    pub fn c_entry(&self, i: usize, j: usize) -> Result<Rat> {
        Ok(self.c[(self.pos(i)?, self.pos(j)?)].clone())
    }

    pub fn x_entry(&self, i: usize) -> Result<Rat> {
        Ok(self.x[self.pos(i)?].clone())
    }

    pub fn y_entry(&self, i: usize) -> Result<Rat> {
        Ok(self.y[self.pos(i)?].clone())
    }

    /// Assembles `L†` in the original vertex order.
    pub fn assemble_pinv(&self) -> RatMatrix {
        let m = self.big_n - 1;
        let nn = rat::int(self.big_n as i64);
        let mut permuted = RatMatrix::zeros(self.big_n, self.big_n);
        for a in 0..m {
            for b in 0..m {
                permuted[(a, b)] = &self.c[(a, b)] - &self.y[b] / &nn - &self.x[a] / &nn + &self.x0;
            }
            permuted[(a, m)] = &self.x0 - &self.x[a] / &nn;
            permuted[(m, a)] = &self.x0 - &self.y[a] / &nn;
        }
        permuted[(m, m)] = self.x0.clone();

        let mut out = RatMatrix::zeros(self.big_n, self.big_n);
        for (a, &va) in self.order.iter().enumerate() {
            for (b, &vb) in self.order.iter().enumerate() {
                out[(va - 1, vb - 1)] = permuted[(a, b)].clone();
            }
        }
        out
    }
}

/// Computes `B`, `C = B⁻¹`, `x`, `y`, `x₀` with `pivot` moved to the end, and
/// checks that `L` has the block shape `[B, −Be; −eᵀB, eᵀBe]` there.
pub fn partition_data(d: &Digraph, pivot: usize) -> Result<PartitionData> {
    let p0 = d.check_vertex(pivot)?;
    require_connected_balanced(d, "partitioned pseudoinverse")?;
    let n = d.n();
    let order0: Vec<usize> = (0..n).filter(|&v| v != p0).chain([p0]).collect();
    let lp = laplacian(d).permute_symmetric(&order0);
    let m = n - 1;
    let head: Vec<usize> = (0..m).collect();
    let b = lp.select(&head, &head);

    let b_rows = b.row_sums();
    let b_cols = b.col_sums();
    let corner = b.total();
    let shape_ok = (0..m).all(|a| lp[(a, m)] == -&b_rows[a] && lp[(m, a)] == -&b_cols[a])
        && lp[(m, m)] == corner;
    if !shape_ok {
        return Err(Error::Invariant(
            "Laplacian does not have the partitioned shape".into(),
        ));
    }

    let c = linalg::inverse(&b)?;
    let x = c.row_sums();
    let y = c.col_sums();
    let total = c.total();
    let x0 = total / rat::int((n * n) as i64);
    Ok(PartitionData {
        pivot,
        order: order0.iter().map(|v| v + 1).collect(),
        c,
        x,
        y,
        x0,
        big_n: n,
    })
}

/// `L†` of a connected balanced digraph through the partitioned formula,
/// certified against the four Penrose equations before it is returned.
pub fn pinv_balanced(d: &Digraph, pivot: usize) -> Result<RatMatrix> {
    let pd = partition_data(d, pivot)?;
    let pinv = pd.assemble_pinv();
    if !linalg::penrose_check(&laplacian(d), &pinv)? {
        return Err(Error::Invariant(format!(
            "partitioned pseudoinverse with pivot {pivot} fails the Penrose equations"
        )));
    }
    Ok(pinv)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResistanceResult {
    pub lap: RatMatrix,
    pub lap_pinv: RatMatrix,
    /// `rmat[(i-1, j-1)] = r_ij`.
    pub rmat: RatMatrix,
    /// Present only for balanced inputs.
    pub kappa: Option<Rat>,
    pub balanced_path_used: bool,
}

impl ResistanceResult {
    /// `r_ij` for 1-based vertices.
    pub fn r(&self, i: usize, j: usize) -> &Rat {
        &self.rmat[(i - 1, j - 1)]
    }

    pub fn n(&self) -> usize {
        self.rmat.rows()
    }
}

/// `r_ij = L†_ii + L†_jj − 2 L†_ij` from any pseudoinverse.
pub fn resistance_matrix(pinv: &RatMatrix) -> RatMatrix {
    let two = rat::int(2);
    RatMatrix::from_fn(pinv.rows(), pinv.cols(), |i, j| {
        &pinv[(i, i)] + &pinv[(j, j)] - &two * &pinv[(i, j)]
    })
}

/// Resistance matrix of a strongly connected digraph. Balanced inputs take
/// the partitioned path with the last vertex as pivot; others fall back to
/// the general pseudoinverse and carry no `kappa`.
pub fn resistance(d: &Digraph) -> Result<ResistanceResult> {
    if !d.is_strongly_connected() {
        return Err(Error::NotStronglyConnected);
    }
    let lap = laplacian(d);
    let (lap_pinv, kappa, balanced) = if d.is_balanced() {
        (pinv_balanced(d, d.n())?, Some(kappa(d)?), true)
    } else {
        (linalg::pinv_general(&lap), None, false)
    };
    let rmat = resistance_matrix(&lap_pinv);
    Ok(ResistanceResult {
        lap,
        lap_pinv,
        rmat,
        kappa,
        balanced_path_used: balanced,
    })
}

/// Which gluing identity applies to a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GlueCase {
    /// One endpoint is the glue vertex.
    GlueEndpoint,
    /// Neither endpoint is the glue vertex.
    Interior,
}

/// Both sides of the gluing identity for a pair inside the first piece of a
/// one-point union, plus the auxiliary identities that feed it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlueQuantities {
    pub case: GlueCase,
    pub i: usize,
    pub j: usize,
    /// Shared vertex (label in the union and in the first piece).
    pub glue: usize,
    /// Resistance in the union.
    pub r_d: Rat,
    /// Resistance in the first piece alone.
    pub r_d1: Rat,
    /// `c_ss` for the non-glue endpoint `s` (glue-endpoint case) or
    /// `c_ii + c_jj − 2c_ij` (interior case), from `C = B⁻¹` of the union
    /// with the glue vertex as pivot.
    pub c_term: Rat,
    /// `|V(D1)|`.
    pub n: usize,
    /// `|V(D2)| − 1`.
    pub k: usize,
    /// `n + k`.
    pub big_n: usize,
    /// `(n r_d1 + k c_term) / (n + k)`.
    pub rhs: Rat,
    /// `r_d` expressed through `c`, `x`, `y` with denominator `N`.
    pub union_form_holds: bool,
    /// `r_d1` expressed through the same `c`, `x`, `y` with denominator `n`.
    pub piece_form_holds: bool,
    /// `C` restricted to the first piece equals the inverse of its own
    /// reduced Laplacian.
    pub block_inverse_holds: bool,
    /// `c_ii + c_jj − c_ij − c_ji = det L[{i,j}ᶜ,{i,j}ᶜ] / κ(D)` (interior
    /// case) or `c_ss = det L[{s,g}ᶜ,{s,g}ᶜ] / κ(D)` (glue-endpoint case).
    pub cofactor_form_holds: bool,
    /// `c_ij = c_ji`. Observational: not an identity in general.
    pub c_symmetric_pair: bool,
}

/// Evaluates the gluing identity for `D = D1 ∪ D2` glued at `glue1 ∈ D1`,
/// `glue2 ∈ D2`, for a pair `i ≠ j` of `D1`-vertices. Labels of `D1` are
/// kept in the union.
///
/// Returns an [`Error::Invariant`] if `r_d ≠ rhs`.
pub fn glue_quantities(
    d1: &Digraph,
    d2: &Digraph,
    glue1: usize,
    glue2: usize,
    i: usize,
    j: usize,
) -> Result<GlueQuantities> {
    require_connected_balanced(d1, "gluing")?;
    require_connected_balanced(d2, "gluing")?;
    d1.check_vertex(i)?;
    d1.check_vertex(j)?;
    if i == j {
        return Err(Error::InvalidArgument(
            "gluing identity needs distinct endpoints".into(),
        ));
    }
    let d = d1.one_point_union(d2, glue1, glue2)?;
    let n = d1.n();
    let k = d2.n() - 1;
    let big_n = n + k;

    let res_d = resistance(&d)?;
    let res_d1 = resistance(d1)?;
    let r_d = res_d.r(i, j).clone();
    let r_d1 = res_d1.r(i, j).clone();

    let pd = partition_data(&d, glue1)?;
    let kappa_d = res_d.kappa.clone().expect("balanced union has kappa");
    let nn = rat::int(big_n as i64);
    let n1 = rat::int(n as i64);

    let (case, c_term, union_form, piece_form, cofactor_form, c_symmetric_pair) =
        if i == glue1 || j == glue1 {
            let s = if i == glue1 { j } else { i };
            let css = pd.c_entry(s, s)?;
            // (x_s − y_s) enters with + for s→g and − for g→s
            let drift = pd.x_entry(s)? - pd.y_entry(s)?;
            let signed = if j == glue1 { drift } else { -drift };
            let union_form = r_d == &css + &signed / &nn;
            let piece_form = r_d1 == &css + &signed / &n1;
            let cof = pair_cofactor(&d, s, glue1)? / &kappa_d;
            (
                GlueCase::GlueEndpoint,
                css.clone(),
                union_form,
                piece_form,
                cof == css,
                true,
            )
        } else {
            let cii = pd.c_entry(i, i)?;
            let cjj = pd.c_entry(j, j)?;
            let cij = pd.c_entry(i, j)?;
            let cji = pd.c_entry(j, i)?;
            let term = &cii + &cjj - rat::int(2) * &cij;
            let drift = pd.x_entry(i)? - pd.y_entry(i)? + pd.y_entry(j)? - pd.x_entry(j)?;
            let union_form = r_d == &term + &drift / &nn;
            let piece_form = r_d1 == &term + &drift / &n1;
            let cof = pair_cofactor(&d, i, j)? / &kappa_d;
            let cofactor_form = &cii + &cjj - &cij - &cji == cof;
            (
                GlueCase::Interior,
                term,
                union_form,
                piece_form,
                cofactor_form,
                cij == cji,
            )
        };

    let rhs = (&n1 * &r_d1 + rat::int(k as i64) * &c_term) / &nn;

    let block_inverse_holds = {
        let g0 = glue1 - 1;
        let reduced = laplacian(d1).delete(&singleton(g0), &singleton(g0))?;
        let c1 = linalg::inverse(&reduced)?;
        let piece: Vec<usize> = (1..=n).filter(|&v| v != glue1).collect();
        let idx: Vec<usize> = piece.iter().map(|&v| pd.position(v).unwrap()).collect();
        pd.c.select(&idx, &idx) == c1
    };

    if r_d != rhs {
        return Err(Error::Invariant(format!(
            "gluing identity fails for ({i}, {j}): r = {r_d}, formula gives {rhs}"
        )));
    }

    Ok(GlueQuantities {
        case,
        i,
        j,
        glue: glue1,
        r_d,
        r_d1,
        c_term,
        n,
        k,
        big_n,
        rhs,
        union_form_holds: union_form,
        piece_form_holds: piece_form,
        block_inverse_holds,
        cofactor_form_holds: cofactor_form,
        c_symmetric_pair,
    })
}

/// `(−1)^{i+j} det B[{j}ᶜ,{i}ᶜ] / det B`, the adjugate expression for the
/// `(i, j)` entry of `C = B⁻¹`, with positions counted in permuted order.
pub fn c_entry_by_cofactor(pd: &PartitionData, d: &Digraph, i: usize, j: usize) -> Result<Rat> {
    let a = pd
        .position(i)
        .ok_or(Error::InvalidArgument(format!("{i} is the pivot")))?;
    let b = pd
        .position(j)
        .ok_or(Error::InvalidArgument(format!("{j} is the pivot")))?;
    let order0: Vec<usize> = pd.order.iter().map(|v| v - 1).collect();
    let lp = laplacian(d).permute_symmetric(&order0);
    let m = pd.big_n - 1;
    let drop_r = BTreeSet::from([b, m]);
    let drop_c = BTreeSet::from([a, m]);
    let minor = linalg::det(&lp.delete(&drop_r, &drop_c)?)?;
    let reduced = BTreeSet::from([m]);
    let det_b = linalg::det(&lp.delete(&reduced, &reduced)?)?;
    if det_b.is_zero() {
        return Err(Error::Singular);
    }
    let sign = if (a + b) % 2 == 0 {
        Rat::one()
    } else {
        -Rat::one()
    };
    Ok(sign * minor / det_b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, ratio};

    fn fig_d() -> Digraph {
        Digraph::new(
            8,
            [
                (1, 3),
                (2, 1),
                (2, 3),
                (3, 2),
                (3, 4),
                (4, 6),
                (5, 2),
                (6, 5),
                (6, 7),
                (7, 8),
                (8, 6),
            ],
        )
        .unwrap()
    }

    fn fig_d1() -> Digraph {
        Digraph::new(
            6,
            [
                (1, 3),
                (2, 1),
                (2, 3),
                (3, 2),
                (3, 4),
                (4, 6),
                (5, 2),
                (6, 5),
            ],
        )
        .unwrap()
    }

    fn cycle(n: usize) -> Digraph {
        Digraph::new(n, (1..=n).map(|i| (i, i % n + 1))).unwrap()
    }

    fn cex() -> Digraph {
        Digraph::new(4, [(1, 3), (1, 4), (2, 1), (3, 1), (4, 1), (4, 2)]).unwrap()
    }

    #[test]
    fn laplacian_examples() {
        assert_eq!(
            laplacian(&cex()),
            RatMatrix::from_i64_rows(&[
                [2, 0, -1, -1],
                [-1, 1, 0, 0],
                [-1, 0, 1, 0],
                [-1, -1, 0, 2]
            ])
        );
        assert_eq!(
            laplacian(&cycle(2)),
            RatMatrix::from_i64_rows(&[[1, -1], [-1, 1]])
        );
        assert!(laplacian(&fig_d()).row_sums().iter().all(Zero::is_zero));
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(&cycle(3)).unwrap(), int(1));
        assert_eq!(kappa(&cycle(2)).unwrap(), int(1));
        assert_eq!(kappa(&cex()), Err(Error::NotBalanced("kappa")));
    }

    #[test]
    fn pair_cofactor_examples() {
        assert_eq!(pair_cofactor(&cycle(3), 1, 2).unwrap(), int(1));
        assert_eq!(pair_cofactor(&cycle(2), 1, 2).unwrap(), int(1));
        assert!(pair_cofactor(&cycle(3), 2, 2).is_err());
    }

    #[test]
    fn partition_data_digon() {
        let pd = partition_data(&cycle(2), 2).unwrap();
        assert_eq!(pd.c, RatMatrix::from_i64_rows(&[[1]]));
        assert_eq!(pd.x, vec![int(1)]);
        assert_eq!(pd.y, vec![int(1)]);
        assert_eq!(pd.x0, ratio(1, 4));
    }

    #[test]
    fn partition_data_sums() {
        let pd = partition_data(&fig_d(), 8).unwrap();
        let n2 = int(64);
        let sx = pd.x.iter().fold(Rat::zero(), |a, v| a + v);
        let sy = pd.y.iter().fold(Rat::zero(), |a, v| a + v);
        assert_eq!(&pd.x0 * &n2, sx);
        assert_eq!(sx, sy);
        assert!(partition_data(&cex(), 4).is_err());
    }

    #[test]
    fn inverse_of_c_is_not_symmetric_on_fig_d() {
        // C = B⁻¹ for a non-symmetric balanced Laplacian need not be symmetric.
        let pd = partition_data(&fig_d(), 8).unwrap();
        assert_eq!(pd.c_entry(1, 2).unwrap(), ratio(3, 2));
        assert_eq!(pd.c_entry(2, 1).unwrap(), int(2));
        for i in 1..8 {
            for j in 1..8 {
                assert_eq!(
                    c_entry_by_cofactor(&pd, &fig_d(), i, j).unwrap(),
                    pd.c_entry(i, j).unwrap()
                );
            }
        }
    }

    #[test]
    fn pinv_balanced_matches_general_digon() {
        let expect = linalg::pinv_general(&laplacian(&cycle(2)));
        assert_eq!(pinv_balanced(&cycle(2), 2).unwrap(), expect);
        assert_eq!(pinv_balanced(&cycle(2), 1).unwrap(), expect);
    }

    #[test]
    fn fig_d_pinv_entries() {
        let p = pinv_balanced(&fig_d(), 8).unwrap();
        assert_eq!(p[(0, 0)], ratio(13, 16));
        assert_eq!(p[(2, 2)], ratio(7, 16));
        assert_eq!(p[(0, 2)], ratio(5, 16));
        assert_eq!(p, linalg::pinv_general(&laplacian(&fig_d())));
    }

    #[test]
    fn resistance_examples() {
        let r = resistance(&fig_d()).unwrap();
        assert_eq!(*r.r(1, 3), ratio(5, 8));
        assert!(r.balanced_path_used);
        let r1 = resistance(&fig_d1()).unwrap();
        assert_eq!(*r1.r(1, 3), ratio(2, 3));
        let rc = resistance(&cex()).unwrap();
        assert_eq!(*rc.r(3, 1), ratio(23, 20));
        assert!(!rc.balanced_path_used);
        assert!(rc.kappa.is_none());
        assert_eq!(
            resistance(&Digraph::new(2, [(1, 2)]).unwrap()),
            Err(Error::NotStronglyConnected)
        );
    }

    #[test]
    fn glue_fig_d() {
        let g = glue_quantities(&fig_d1(), &cycle(3), 6, 1, 1, 6).unwrap();
        assert_eq!(g.case, GlueCase::GlueEndpoint);
        assert_eq!((g.n, g.k, g.big_n), (6, 2, 8));
        assert_eq!(g.r_d, g.rhs);
        assert!(g.union_form_holds && g.piece_form_holds);
        assert!(g.block_inverse_holds && g.cofactor_form_holds);

        let g = glue_quantities(&fig_d1(), &cycle(3), 6, 1, 1, 3).unwrap();
        assert_eq!(g.case, GlueCase::Interior);
        assert_eq!(g.r_d, ratio(5, 8));
        assert_eq!(g.r_d1, ratio(2, 3));
        assert!(g.union_form_holds && g.piece_form_holds);
        assert!(g.block_inverse_holds && g.cofactor_form_holds);
    }

    #[test]
    fn glue_digon_at_glue_vertex() {
        let g = glue_quantities(&cycle(3), &cycle(2), 2, 1, 2, 3).unwrap();
        assert_eq!(g.case, GlueCase::GlueEndpoint);
        assert_eq!(g.r_d, g.rhs);
        assert!(glue_quantities(&cycle(3), &cycle(2), 2, 1, 3, 3).is_err());
    }
}
