//! Simple digraphs on vertices `1..=n`.
//!
//! Vertex ids are 1-based at the API boundary, matching how graphs are
//! written down by hand; storage and matrix indices are 0-based. Vectors
//! indexed by vertex (degrees, distance rows) hold vertex `v` at `v - 1`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Finite simple digraph: no loops, no parallel arcs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    /// 0-based, sorted, unique.
    arcs: Vec<(usize, usize)>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
}

impl Digraph {
    /// Builds a digraph from 1-based arcs. Rejects loops, duplicates and
    /// labels outside `1..=n`.
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("vertex count must be positive".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in arcs {
            for w in [u, v] {
                if w == 0 || w > n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            if !set.insert((u - 1, v - 1)) {
                return Err(Error::InvalidGraph(format!("duplicate arc ({u}, {v})")));
            }
        }
        Ok(Self::from_sorted_zero_based(n, set.into_iter().collect()))
    }

    fn from_sorted_zero_based(n: usize, arcs: Vec<(usize, usize)>) -> Self {
        let mut out_adj = vec![Vec::new(); n];
        let mut in_adj = vec![Vec::new(); n];
        for &(u, v) in &arcs {
            out_adj[u].push(v);
            in_adj[v].push(u);
        }
        for l in &mut in_adj {
            l.sort_unstable();
        }
        Self {
            n,
            arcs,
            out_adj,
            in_adj,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs as 1-based pairs, in lexicographic order.
    pub fn arcs(&self) -> impl ExactSizeIterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().map(|&(u, v)| (u + 1, v + 1))
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u >= 1 && v >= 1 && self.arcs.binary_search(&(u - 1, v - 1)).is_ok()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        (1..=self.n).contains(&v)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<usize> {
        if self.contains_vertex(v) {
            Ok(v - 1)
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        }
    }

    pub(crate) fn arcs0(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn indegree(&self, v: usize) -> usize {
        self.in_adj[v - 1].len()
    }

    pub fn outdegree(&self, v: usize) -> usize {
        self.out_adj[v - 1].len()
    }

    /// `(indeg, outdeg)`, position `v - 1` for vertex `v`.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        (
            self.in_adj.iter().map(Vec::len).collect(),
            self.out_adj.iter().map(Vec::len).collect(),
        )
    }

    pub fn is_balanced(&self) -> bool {
        self.in_adj
            .iter()
            .zip(&self.out_adj)
            .all(|(i, o)| i.len() == o.len())
    }

    pub fn is_strongly_connected(&self) -> bool {
        let all = |seen: Vec<bool>| seen.into_iter().all(|s| s);
        all(self.reach(0, &self.out_adj)) && all(self.reach(0, &self.in_adj))
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let mut und = vec![Vec::new(); self.n];
        for &(u, v) in &self.arcs {
            und[u].push(v);
            und[v].push(u);
        }
        self.reach(0, &und).into_iter().all(|s| s)
    }

    fn reach(&self, src: usize, adj: &[Vec<usize>]) -> Vec<bool> {
        let mut seen = vec![false; self.n];
        seen[src] = true;
        let mut stack = vec![src];
        while let Some(u) = stack.pop() {
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// BFS distances from 0-based `src`.
    pub(crate) fn bfs0(&self, src: usize) -> Vec<Distance> {
        let mut dist = vec![Distance::Unreachable; self.n];
        dist[src] = Distance::Finite(0);
        let mut queue = VecDeque::from([(src, 0usize)]);
        while let Some((u, du)) = queue.pop_front() {
            for &w in &self.out_adj[u] {
                if dist[w] == Distance::Unreachable {
                    dist[w] = Distance::Finite(du + 1);
                    queue.push_back((w, du + 1));
                }
            }
        }
        dist
    }

    /// All-pairs shortest directed path lengths, one BFS per source.
    pub fn shortest_distances(&self) -> DistanceMatrix {
        DistanceMatrix {
            n: self.n,
            entries: (0..self.n).flat_map(|s| self.bfs0(s)).collect(),
        }
    }

    /// Glues `other` onto `self` by identifying `other`'s `v2` with `self`'s
    /// `v1`. Vertices of `self` keep their labels; the remaining vertices of
    /// `other` become `n1 + 1, n1 + 2, …` in increasing order.
    pub fn one_point_union(&self, other: &Digraph, v1: usize, v2: usize) -> Result<Digraph> {
        let g1 = self.check_vertex(v1)?;
        let g2 = other.check_vertex(v2)?;
        let map = |w: usize| -> usize {
            match w.cmp(&g2) {
                std::cmp::Ordering::Equal => g1,
                std::cmp::Ordering::Less => self.n + w,
                std::cmp::Ordering::Greater => self.n + w - 1,
            }
        };
        let mut arcs = self.arcs.clone();
        arcs.extend(other.arcs.iter().map(|&(u, v)| (map(u), map(v))));
        arcs.sort_unstable();
        debug_assert!(arcs.windows(2).all(|w| w[0] != w[1]));
        Ok(Self::from_sorted_zero_based(self.n + other.n - 1, arcs))
    }

    /// Subgraph induced by an arc subset, relabelled onto `1..=m` in increasing
    /// order of the original labels. Returns the graph and the original
    /// (1-based) label of each new vertex.
    pub fn arc_subgraph(&self, arcs: &[(usize, usize)]) -> Result<(Digraph, Vec<usize>)> {
        let vertices: BTreeSet<usize> = arcs.iter().flat_map(|&(u, v)| [u, v]).collect();
        let labels: Vec<usize> = vertices.into_iter().collect();
        let local = |w: usize| labels.binary_search(&w).unwrap() + 1;
        for &(u, v) in arcs {
            if !self.has_arc(u, v) {
                return Err(Error::InvalidArgument(format!("({u}, {v}) is not an arc")));
            }
        }
        let g = Digraph::new(
            labels.len().max(1),
            arcs.iter().map(|&(u, v)| (local(u), local(v))),
        )?;
        Ok((g, labels))
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Digraph")
            .field("n", &self.n)
            .field("arcs", &self.arcs().collect::<Vec<_>>())
            .finish()
    }
}

/// Shortest-path length, or unreachable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Distance {
    Finite(usize),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<usize> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("inf"),
        }
    }
}

impl Serialize for Distance {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Distance::Finite(d) => s.serialize_u64(*d as u64),
            Distance::Unreachable => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    entries: Vec<Distance>,
}

impl DistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    /// `d(i, j)` for 1-based vertices.
    pub fn get(&self, i: usize, j: usize) -> Distance {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<Distance>> {
        self.entries
            .chunks(self.n)
            .map(<[Distance]>::to_vec)
            .collect()
    }
}
