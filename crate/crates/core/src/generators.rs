//! Built-in fixtures and seeded generators for balanced digraphs.
//!
//! Every generator is a pure function of its parameters and seed; see
//! [`crate::rng`] for the PRNG recurrence.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::blocks;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;

/// Retry bound for connectivity and 2-connectivity rejection loops.
pub const MAX_RETRIES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Fixture {
    /// 8-vertex balanced digraph: the 6-vertex `FigD1` with a triangle on
    /// 6, 7, 8 glued at vertex 6.
    #[serde(rename = "FIG_D")]
    FigD,
    #[serde(rename = "FIG_D1")]
    FigD1,
    /// Triangle 1 → 2 → 3 → 1; glued at its vertex 1 it becomes 6 → 7 → 8 → 6.
    #[serde(rename = "FIG_D2_TRIANGLE")]
    FigD2Triangle,
    /// Strongly connected but unbalanced 4-vertex digraph with `r₃₁ > d₃₁`.
    #[serde(rename = "CEX")]
    Cex,
    #[serde(rename = "DIGON")]
    Digon,
    #[serde(rename = "C3")]
    C3,
}

impl Fixture {
    pub const ALL: [Fixture; 6] = [
        Fixture::FigD,
        Fixture::FigD1,
        Fixture::FigD2Triangle,
        Fixture::Cex,
        Fixture::Digon,
        Fixture::C3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::FigD => "FIG_D",
            Fixture::FigD1 => "FIG_D1",
            Fixture::FigD2Triangle => "FIG_D2_TRIANGLE",
            Fixture::Cex => "CEX",
            Fixture::Digon => "DIGON",
            Fixture::C3 => "C3",
        }
    }

    /// Where the arc list comes from.
    pub fn provenance(self) -> &'static str {
        match self {
            Fixture::FigD => {
                "balanced, strongly connected, 8 vertices / 11 arcs; arcs read off its \
                 published Laplacian; one-point union of FIG_D1 and a triangle at vertex 6"
            }
            Fixture::FigD1 => {
                "balanced, strongly connected, 6 vertices / 8 arcs; FIG_D restricted to \
                 vertices 1..6; digon 2<->3 shared by cycles 1-3-2-1 and 2-3-4-6-5-2"
            }
            Fixture::FigD2Triangle => {
                "directed triangle 1->2->3->1; the piece glued onto FIG_D1 (as 6->7->8->6)"
            }
            Fixture::Cex => {
                "strongly connected but unbalanced (vertex 1: indegree 3, outdegree 2); \
                 r(3,1) = 23/20 exceeds d(3,1) = 1"
            }
            Fixture::Digon => "two vertices joined in both directions; arc resistance exactly 1",
            Fixture::C3 => "directed 3-cycle 1->2->3->1",
        }
    }

    pub fn graph(self) -> Digraph {
        let (n, arcs): (usize, &[(usize, usize)]) = match self {
            Fixture::FigD => (
                8,
                &[
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
            ),
            Fixture::FigD1 => (
                6,
                &[
                    (1, 3),
                    (2, 1),
                    (2, 3),
                    (3, 2),
                    (3, 4),
                    (4, 6),
                    (5, 2),
                    (6, 5),
                ],
            ),
            Fixture::FigD2Triangle | Fixture::C3 => (3, &[(1, 2), (2, 3), (3, 1)]),
            Fixture::Cex => (4, &[(1, 3), (1, 4), (2, 1), (3, 1), (4, 1), (4, 2)]),
            Fixture::Digon => (2, &[(1, 2), (2, 1)]),
        };
        Digraph::new(n, arcs.iter().copied()).expect("fixture arc lists are valid")
    }
}

impl FromStr for Fixture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Fixture::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownFixture(s.to_string()))
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn fixture(name: &str) -> Result<Digraph> {
    Ok(name.parse::<Fixture>()?.graph())
}

/// Directed cycle `1 → 2 → … → n → 1`.
pub fn gen_cycle(n: usize) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("cycle length {n} < 2")));
    }
    Digraph::new(n, (1..=n).map(|i| (i, i % n + 1)))
}

/// Superposes random directed cycles on random vertex subsets until the arc
/// budget is met or the cycle draws run out, rejecting any cycle that would
/// repeat an arc. Graphs that do not span all `n` vertices connectedly are
/// discarded and redrawn, at most [`MAX_RETRIES`] times.
///
/// The result is an arc-disjoint union of cycles, hence balanced, and
/// strongly connected once connected.
pub fn gen_balanced_random(n: usize, target_arcs: usize, seed: u64) -> Result<Digraph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("need n >= 2, got {n}")));
    }
    if target_arcs < n || target_arcs > n * (n - 1) {
        return Err(Error::InvalidArgument(format!(
            "arc budget {target_arcs} outside {n}..={}",
            n * (n - 1)
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let draws = 32 * target_arcs;
    for _ in 0..MAX_RETRIES {
        let mut arcs: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut vertices: Vec<usize> = (1..=n).collect();
        for _ in 0..draws {
            let remaining = target_arcs - arcs.len();
            if remaining < 2 {
                break;
            }
            let len = rng.range_inclusive(2, n.min(remaining));
            rng.shuffle(&mut vertices);
            let cyc = &vertices[..len];
            let new: Vec<(usize, usize)> = (0..len).map(|t| (cyc[t], cyc[(t + 1) % len])).collect();
            if new.iter().any(|a| arcs.contains(a)) {
                continue;
            }
            arcs.extend(new);
        }
        let g = Digraph::new(n, arcs)?;
        if g.is_connected() {
            debug_assert!(g.is_balanced() && g.is_strongly_connected());
            return Ok(g);
        }
    }
    Err(Error::GeneratorExhausted {
        attempts: MAX_RETRIES,
        msg: format!("no connected balanced digraph with n = {n}, arcs <= {target_arcs}"),
    })
}

fn check_len_range(min_len: usize, max_len: usize) -> Result<()> {
    if min_len < 2 || min_len > max_len {
        return Err(Error::InvalidArgument(format!(
            "cycle length range [{min_len}, {max_len}] must satisfy 2 <= min <= max"
        )));
    }
    Ok(())
}

/// Iterated one-point union of `blocks` directed cycles with lengths drawn
/// from `min_len..=max_len`, each glued at a uniformly chosen existing vertex.
pub fn gen_cactus(blocks: usize, min_len: usize, max_len: usize, seed: u64) -> Result<Digraph> {
    Ok(gen_class_c(blocks, PieceKind::Cycle { min_len, max_len }, seed)?.graph)
}

/// Shape of the pieces glued together by [`gen_class_c`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "piece", rename_all = "snake_case")]
pub enum PieceKind {
    Cycle {
        min_len: usize,
        max_len: usize,
    },
    /// 2-connected outputs of [`gen_balanced_random`] with `min_n..=max_n`
    /// vertices and an arc budget of `arc_factor_pct`% of the vertex count
    /// (clamped to the feasible range).
    BalancedRandom {
        min_n: usize,
        max_n: usize,
        arc_factor_pct: usize,
    },
}

/// A generated one-point union with its construction history.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCUnion {
    pub graph: Digraph,
    /// Arc set of each piece in the union's labels, in construction order.
    pub pieces: Vec<Vec<(usize, usize)>>,
    /// Glue vertex of piece `t + 1` (in union labels).
    pub glue_vertices: Vec<usize>,
}

fn gen_piece(kind: PieceKind, rng: &mut SplitMix64) -> Result<Digraph> {
    match kind {
        PieceKind::Cycle { min_len, max_len } => gen_cycle(rng.range_inclusive(min_len, max_len)),
        PieceKind::BalancedRandom {
            min_n,
            max_n,
            arc_factor_pct,
        } => {
            if min_n < 2 || min_n > max_n {
                return Err(Error::InvalidArgument(format!(
                    "piece size range [{min_n}, {max_n}] must satisfy 2 <= min <= max"
                )));
            }
            for _ in 0..MAX_RETRIES {
                let n = rng.range_inclusive(min_n, max_n);
                let budget = (n * arc_factor_pct / 100).clamp(n, n * (n - 1));
                let g = match gen_balanced_random(n, budget, rng.next_u64()) {
                    Ok(g) => g,
                    Err(Error::GeneratorExhausted { .. }) => continue,
                    Err(e) => return Err(e),
                };
                if blocks::blocks(&g)?.blocks.len() == 1 {
                    return Ok(g);
                }
            }
            Err(Error::GeneratorExhausted {
                attempts: MAX_RETRIES,
                msg: "no 2-connected balanced piece".into(),
            })
        }
    }
}

/// One-point union of `blocks` generated pieces, each glued at a uniformly
/// chosen vertex of the union so far (and at a uniformly chosen vertex of
/// the new piece).
pub fn gen_class_c(blocks: usize, kind: PieceKind, seed: u64) -> Result<ClassCUnion> {
    if blocks == 0 {
        return Err(Error::InvalidArgument("need at least one block".into()));
    }
    if let PieceKind::Cycle { min_len, max_len } = kind {
        check_len_range(min_len, max_len)?;
    }
    let mut rng = SplitMix64::new(seed);
    let mut graph = gen_piece(kind, &mut rng)?;
    let mut pieces = vec![graph.arcs().collect::<Vec<_>>()];
    let mut glue_vertices = Vec::new();
    for _ in 1..blocks {
        let piece = gen_piece(kind, &mut rng)?;
        let at = rng.range_inclusive(1, graph.n());
        let local = rng.range_inclusive(1, piece.n());
        let before: BTreeSet<(usize, usize)> = graph.arcs().collect();
        graph = graph.one_point_union(&piece, at, local)?;
        pieces.push(graph.arcs().filter(|a| !before.contains(a)).collect());
        glue_vertices.push(at);
    }
    Ok(ClassCUnion {
        graph,
        pieces,
        glue_vertices,
    })
}

/// Serializable generator request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenSpec {
    #[serde(flatten)]
    pub kind: GenKind,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GenKind {
    Cycle {
        n: usize,
    },
    Digon,
    Cactus {
        blocks: usize,
        min_len: usize,
        max_len: usize,
    },
    BalancedRandom {
        n: usize,
        arcs: usize,
    },
    ClassCUnion {
        blocks: usize,
        #[serde(flatten)]
        piece: PieceKind,
    },
}

impl GenSpec {
    pub fn generate(&self) -> Result<Digraph> {
        match &self.kind {
            GenKind::Cycle { n } => gen_cycle(*n),
            GenKind::Digon => gen_cycle(2),
            GenKind::Cactus {
                blocks,
                min_len,
                max_len,
            } => gen_cactus(*blocks, *min_len, *max_len, self.seed),
            GenKind::BalancedRandom { n, arcs } => gen_balanced_random(*n, *arcs, self.seed),
            GenKind::ClassCUnion { blocks, piece } => {
                Ok(gen_class_c(*blocks, *piece, self.seed)?.graph)
            }
        }
    }
}

/// Two pieces glued by identifying two vertex pairs, for open-ended
/// exploration. `None` when the identification would duplicate an arc.
pub fn two_vertex_overlap(
    a: &Digraph,
    b: &Digraph,
    rng: &mut SplitMix64,
) -> Result<Option<Digraph>> {
    if a.n() < 2 || b.n() < 2 {
        return Err(Error::InvalidArgument("pieces need two vertices".into()));
    }
    let mut va: Vec<usize> = (1..=a.n()).collect();
    let mut vb: Vec<usize> = (1..=b.n()).collect();
    rng.shuffle(&mut va);
    rng.shuffle(&mut vb);
    let (a1, a2, b1, b2) = (va[0], va[1], vb[0], vb[1]);
    let mut next = a.n();
    let mut map = vec![0usize; b.n() + 1];
    for (w, slot) in map.iter_mut().enumerate().skip(1) {
        *slot = if w == b1 {
            a1
        } else if w == b2 {
            a2
        } else {
            next += 1;
            next
        };
    }
    let mut arcs: BTreeSet<(usize, usize)> = a.arcs().collect();
    for (u, v) in b.arcs() {
        if !arcs.insert((map[u], map[v])) {
            return Ok(None);
        }
    }
    Ok(Some(Digraph::new(next, arcs)?))
}
