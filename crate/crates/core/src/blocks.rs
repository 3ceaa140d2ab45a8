//! Block decomposition of the underlying undirected multigraph.
//!
//! Each arc is one undirected edge, so a digon contributes two parallel edges
//! and stays inside a single block. Blocks are the pieces a connected graph
//! is glued from at single vertices, which is exactly the structure needed to
//! certify membership in the class of iterated one-point unions.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Block {
    /// Sorted 1-based vertex ids.
    pub vertices: Vec<usize>,
    /// Sorted 1-based arcs.
    pub arcs: Vec<(usize, usize)>,
}

impl Block {
    /// The block as a standalone digraph on `1..=m`, plus the original label
    /// of each local vertex.
    pub fn to_digraph(&self, parent: &Digraph) -> Result<(Digraph, Vec<usize>)> {
        parent.arc_subgraph(&self.arcs)
    }

    /// Every vertex has in- and out-degree one inside the block and the arc
    /// count equals the vertex count, i.e. the block is one directed cycle.
    pub fn is_directed_cycle(&self) -> bool {
        if self.arcs.len() != self.vertices.len() {
            return false;
        }
        let idx = |v: usize| self.vertices.binary_search(&v).unwrap();
        let mut indeg = vec![0usize; self.vertices.len()];
        let mut outdeg = vec![0usize; self.vertices.len()];
        for &(u, v) in &self.arcs {
            outdeg[idx(u)] += 1;
            indeg[idx(v)] += 1;
        }
        indeg.iter().chain(&outdeg).all(|&d| d == 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub cut_vertices: BTreeSet<usize>,
    /// Ordered by smallest vertex, then by arc list.
    pub blocks: Vec<Block>,
    /// Block–cut tree edges `(block index, cut vertex)`, sorted.
    pub block_cut_tree: Vec<(usize, usize)>,
}

/// Biconnected components of the underlying undirected multigraph.
///
/// Errors with [`Error::NotConnected`] when the underlying graph is
/// disconnected. A single isolated vertex has no blocks.
pub fn blocks(d: &Digraph) -> Result<BlockDecomposition> {
    if !d.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = d.n();
    let arcs = d.arcs0();
    let mut und: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (eid, &(u, v)) in arcs.iter().enumerate() {
        und[u].push((v, eid));
        und[v].push((u, eid));
    }

    const UNSEEN: usize = usize::MAX;
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();

    struct Frame {
        v: usize,
        parent_edge: Option<usize>,
        pos: usize,
    }

    let root = 0;
    disc[root] = timer;
    low[root] = timer;
    timer += 1;
    let mut stack = vec![Frame {
        v: root,
        parent_edge: None,
        pos: 0,
    }];
    while let Some(frame) = stack.last_mut() {
        let v = frame.v;
        if frame.pos < und[v].len() {
            let (w, eid) = und[v][frame.pos];
            frame.pos += 1;
            if Some(eid) == frame.parent_edge {
                continue;
            }
            if disc[w] == UNSEEN {
                edge_stack.push(eid);
                disc[w] = timer;
                low[w] = timer;
                timer += 1;
                stack.push(Frame {
                    v: w,
                    parent_edge: Some(eid),
                    pos: 0,
                });
            } else if disc[w] < disc[v] {
                edge_stack.push(eid);
                low[v] = low[v].min(disc[w]);
            }
        } else {
            let done = stack.pop().unwrap();
            if let (Some(parent), Some(pe)) = (stack.last(), done.parent_edge) {
                let p = parent.v;
                low[p] = low[p].min(low[done.v]);
                if low[done.v] >= disc[p] {
                    let mut comp = Vec::new();
                    while let Some(e) = edge_stack.pop() {
                        comp.push(e);
                        if e == pe {
                            break;
                        }
                    }
                    components.push(comp);
                }
            }
        }
    }

    let mut out: Vec<Block> = components
        .into_iter()
        .map(|comp| {
            let mut block_arcs: Vec<(usize, usize)> = comp
                .into_iter()
                .map(|e| (arcs[e].0 + 1, arcs[e].1 + 1))
                .collect();
            block_arcs.sort_unstable();
            let vertices: BTreeSet<usize> = block_arcs.iter().flat_map(|&(u, v)| [u, v]).collect();
            Block {
                vertices: vertices.into_iter().collect(),
                arcs: block_arcs,
            }
        })
        .collect();
    out.sort_by(|a, b| (a.vertices[0], &a.arcs).cmp(&(b.vertices[0], &b.arcs)));

    let mut membership = vec![0usize; n + 1];
    for b in &out {
        for &v in &b.vertices {
            membership[v] += 1;
        }
    }
    let cut_vertices: BTreeSet<usize> = (1..=n).filter(|&v| membership[v] > 1).collect();
    let block_cut_tree = out
        .iter()
        .enumerate()
        .flat_map(|(i, b)| {
            b.vertices
                .iter()
                .filter(|v| cut_vertices.contains(v))
                .map(move |&v| (i, v))
        })
        .collect();

    Ok(BlockDecomposition {
        cut_vertices,
        blocks: out,
        block_cut_tree,
    })
}

/// Strongly connected, balanced, and every block is a single directed cycle.
pub fn is_directed_cactus(d: &Digraph) -> bool {
    if !d.is_strongly_connected() || !d.is_balanced() {
        return false;
    }
    match blocks(d) {
        Ok(dec) => dec.blocks.iter().all(Block::is_directed_cycle),
        Err(_) => false,
    }
}

/// One block in certificate order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedBlock {
    /// Index into [`BlockDecomposition::blocks`].
    pub index: usize,
    pub vertices: Vec<usize>,
    pub arcs: Vec<(usize, usize)>,
    /// The single vertex shared with the union of earlier blocks; `None` for
    /// the first block.
    pub attached_at: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ClassCVerdict {
    /// Blocks in an order where each meets its predecessors in one vertex and
    /// all pass the base predicate.
    Certified { blocks: Vec<CertifiedBlock> },
    /// The first block in traversal order that failed the base predicate.
    Rejected {
        position: usize,
        block: CertifiedBlock,
        reason: String,
    },
}

impl ClassCVerdict {
    pub fn is_certified(&self) -> bool {
        matches!(self, ClassCVerdict::Certified { .. })
    }
}

/// Orders the blocks of a connected balanced digraph by a breadth-first walk
/// of the block–cut tree, starting at the first block that contains vertex 1,
/// and applies `base_ok` to each block (as a standalone digraph).
pub fn class_c_certificate(
    d: &Digraph,
    mut base_ok: impl FnMut(&Digraph) -> bool,
) -> Result<ClassCVerdict> {
    if !d.is_balanced() {
        return Err(Error::NotBalanced("class certificate"));
    }
    let dec = blocks(d)?;
    let order = traversal_order(&dec);

    let mut covered: BTreeSet<usize> = BTreeSet::new();
    let mut certified = Vec::with_capacity(order.len());
    for (position, &bi) in order.iter().enumerate() {
        let b = &dec.blocks[bi];
        let shared: Vec<usize> = b
            .vertices
            .iter()
            .copied()
            .filter(|v| covered.contains(v))
            .collect();
        let attached_at = match (position, shared.as_slice()) {
            (0, []) => None,
            (p, [v]) if p > 0 => Some(*v),
            _ => {
                return Err(Error::Invariant(format!(
                    "block {bi} meets earlier blocks in {shared:?}"
                )))
            }
        };
        covered.extend(b.vertices.iter().copied());

        let (piece, _) = b.to_digraph(d)?;
        if !piece.is_balanced() || !piece.is_connected() {
            return Err(Error::Invariant(format!(
                "block {bi} of a connected balanced digraph is not connected and balanced"
            )));
        }
        let cb = CertifiedBlock {
            index: bi,
            vertices: b.vertices.clone(),
            arcs: b.arcs.clone(),
            attached_at,
        };
        if !base_ok(&piece) {
            return Ok(ClassCVerdict::Rejected {
                position,
                reason: format!(
                    "block {} on vertices {:?} fails the base predicate",
                    bi, cb.vertices
                ),
                block: cb,
            });
        }
        certified.push(cb);
    }
    Ok(ClassCVerdict::Certified { blocks: certified })
}

fn traversal_order(dec: &BlockDecomposition) -> Vec<usize> {
    let nb = dec.blocks.len();
    if nb == 0 {
        return Vec::new();
    }
    let start = dec
        .blocks
        .iter()
        .position(|b| b.vertices.contains(&1))
        .unwrap_or(0);
    let mut seen = vec![false; nb];
    let mut seen_cut: BTreeSet<usize> = BTreeSet::new();
    let mut order = Vec::with_capacity(nb);
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    while let Some(bi) = queue.pop_front() {
        order.push(bi);
        for &c in dec.blocks[bi]
            .vertices
            .iter()
            .filter(|v| dec.cut_vertices.contains(v))
        {
            if !seen_cut.insert(c) {
                continue;
            }
            for &(other, cv) in &dec.block_cut_tree {
                if cv == c && !seen[other] {
                    seen[other] = true;
                    queue.push_back(other);
                }
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

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

    fn cycle(n: usize) -> Digraph {
        Digraph::new(n, (1..=n).map(|i| (i, i % n + 1))).unwrap()
    }

    #[test]
    fn fig_d_has_two_blocks_cut_at_six() {
        let dec = blocks(&fig_d()).unwrap();
        assert_eq!(dec.cut_vertices, BTreeSet::from([6]));
        assert_eq!(dec.blocks.len(), 2);
        assert_eq!(dec.blocks[0].vertices, vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(dec.blocks[0].arcs.len(), 8);
        assert_eq!(dec.blocks[1].arcs, vec![(6, 7), (7, 8), (8, 6)]);
        assert_eq!(dec.block_cut_tree, vec![(0, 6), (1, 6)]);
    }

    #[test]
    fn cycle_and_bowtie() {
        let dec = blocks(&cycle(3)).unwrap();
        assert_eq!(dec.blocks.len(), 1);
        assert!(dec.cut_vertices.is_empty());

        let bowtie = cycle(2).one_point_union(&cycle(2), 1, 1).unwrap();
        let dec = blocks(&bowtie).unwrap();
        assert_eq!(dec.blocks.len(), 2);
        assert_eq!(dec.cut_vertices, BTreeSet::from([1]));
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = Digraph::new(4, [(1, 2), (2, 1), (3, 4), (4, 3)]).unwrap();
        assert_eq!(blocks(&g), Err(Error::NotConnected));
    }

    #[test]
    fn single_vertex_has_no_blocks() {
        let dec = blocks(&Digraph::new(1, []).unwrap()).unwrap();
        assert!(dec.blocks.is_empty());
    }

    #[test]
    fn cactus_recognition() {
        assert!(is_directed_cactus(&cycle(3)));
        assert!(!is_directed_cactus(&fig_d()));
        let u = cycle(3).one_point_union(&cycle(2), 2, 1).unwrap();
        assert!(is_directed_cactus(&u));
        // a balanced but non-cactus block: two triangles sharing an edge pair
        let k3 = Digraph::new(3, [(1, 2), (2, 1), (2, 3), (3, 2), (1, 3), (3, 1)]).unwrap();
        assert!(!is_directed_cactus(&k3));
    }

    #[test]
    fn certificate_fig_d() {
        let v = class_c_certificate(&fig_d(), |_| true).unwrap();
        let ClassCVerdict::Certified { blocks } = v else {
            panic!("expected certificate")
        };
        assert_eq!(blocks.len(), 2);
        assert!(blocks[0].vertices.contains(&1));
        assert_eq!(blocks[0].attached_at, None);
        assert_eq!(blocks[1].attached_at, Some(6));
    }

    #[test]
    fn certificate_rejects_and_errors() {
        let v = class_c_certificate(&fig_d(), |g| g.n() == 3).unwrap();
        match v {
            ClassCVerdict::Rejected {
                position, block, ..
            } => {
                assert_eq!(position, 0);
                assert_eq!(block.index, 0);
            }
            _ => panic!("expected rejection"),
        }
        let cex = Digraph::new(4, [(1, 3), (1, 4), (2, 1), (3, 1), (4, 1), (4, 2)]).unwrap();
        assert!(matches!(
            class_c_certificate(&cex, |_| true),
            Err(Error::NotBalanced(_))
        ));
    }

    #[test]
    fn cactus_certificate_with_cycle_predicate() {
        let g = cycle(4)
            .one_point_union(&cycle(3), 3, 2)
            .unwrap()
            .one_point_union(&cycle(2), 6, 1)
            .unwrap();
        let v =
            class_c_certificate(&g, |b| blocks(b).unwrap().blocks[0].is_directed_cycle()).unwrap();
        assert!(v.is_certified());
    }
}
