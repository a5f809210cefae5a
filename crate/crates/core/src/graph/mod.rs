//! Simple undirected graphs with deterministic iteration order.

mod blocks;
mod flow;
mod planar;

pub use blocks::{biconnected_blocks, biconnected_split, Block, BlockStep};
pub use flow::{vertex_disjoint_paths, vertex_disjoint_paths_capped, DisjointPaths};
pub use planar::{planar_embed, validate_embedding, Embedding};

use crate::VertexId;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Undirected simple graph over arbitrary u32 vertex ids. All iteration is
/// in ascending id order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn with_vertices<I: IntoIterator<Item = VertexId>>(vs: I) -> Self {
        let mut g = Graph::new();
        for v in vs {
            g.add_vertex(v);
        }
        g
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    /// Insert an edge, adding missing endpoints. Self-loops are rejected.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) {
        assert_ne!(u, v, "self-loops not supported");
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        if let Some(s) = self.adj.get_mut(&u) {
            s.remove(&v);
        }
        if let Some(s) = self.adj.get_mut(&v) {
            s.remove(&u);
        }
    }

    pub fn remove_vertex(&mut self, v: VertexId) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for u in nbrs {
                self.adj.get_mut(&u).expect("symmetric adjacency").remove(&v);
            }
        }
    }

    /// Clone with one vertex removed.
    pub fn removed(&self, v: VertexId) -> Self {
        let mut g = self.clone();
        g.remove_vertex(v);
        g
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(&u).map_or(false, |s| s.contains(&v))
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().copied().collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges as (u, v) with u < v, ascending.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.num_edges());
        for (&u, nbrs) in &self.adj {
            for &v in nbrs.range(u + 1..) {
                out.push((u, v));
            }
        }
        out
    }

    /// Subgraph induced on `keep` (ids absent from the graph are ignored).
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Self {
        let mut g = Graph::new();
        for &v in keep {
            if self.has_vertex(v) {
                g.add_vertex(v);
            }
        }
        for (&u, nbrs) in &self.adj {
            if !keep.contains(&u) {
                continue;
            }
            for &v in nbrs.range(u + 1..) {
                if keep.contains(&v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Vertices reachable from `start` (including it), or empty if absent.
    pub fn reachable(&self, start: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::new();
        if !self.has_vertex(start) {
            return seen;
        }
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if seen.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        seen
    }

    /// Connected components, sorted by their smallest vertex.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut out = Vec::new();
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        for v in self.vertices() {
            if seen.contains(&v) {
                continue;
            }
            let comp = self.reachable(v);
            seen.extend(comp.iter().copied());
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(v) => self.reachable(v).len() == self.num_vertices(),
        }
    }

    /// Shortest path by BFS with smallest-id tie-breaking, optionally
    /// restricted to `allowed` vertices (which must include both endpoints
    /// to succeed). Returns the vertex sequence from `s` to `t`.
    pub fn shortest_path(
        &self,
        s: VertexId,
        t: VertexId,
        allowed: Option<&BTreeSet<VertexId>>,
    ) -> Option<Vec<VertexId>> {
        let ok = |v: VertexId| allowed.map_or(true, |a| a.contains(&v));
        if !self.has_vertex(s) || !self.has_vertex(t) || !ok(s) || !ok(t) {
            return None;
        }
        if s == t {
            return Some(vec![s]);
        }
        let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        let mut queue = VecDeque::from([s]);
        parent.insert(s, s);
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if ok(u) && !parent.contains_key(&u) {
                    parent.insert(u, v);
                    if u == t {
                        let mut path = vec![t];
                        let mut cur = t;
                        while cur != s {
                            cur = parent[&cur];
                            path.push(cur);
                        }
                        path.reverse();
                        return Some(path);
                    }
                    queue.push_back(u);
                }
            }
        }
        None
    }

    /// Whether `path` is a simple path in this graph (distinct vertices,
    /// consecutive pairs adjacent).
    pub fn is_simple_path(&self, path: &[VertexId]) -> bool {
        if path.is_empty() {
            return false;
        }
        let distinct: BTreeSet<VertexId> = path.iter().copied().collect();
        if distinct.len() != path.len() {
            return false;
        }
        if !path.iter().all(|&v| self.has_vertex(v)) {
            return false;
        }
        path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: u32) -> Graph {
        let mut g = Graph::new();
        for v in 0..n.saturating_sub(1) {
            g.add_edge(v, v + 1);
        }
        g
    }

    #[test]
    fn basic_accessors() {
        let mut g = Graph::new();
        g.add_edge(5, 3);
        g.add_edge(3, 7);
        g.add_vertex(100);
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.num_edges(), 2);
        assert!(g.has_edge(3, 5));
        assert_eq!(g.edges(), vec![(3, 5), (3, 7)]);
        assert_eq!(g.degree(3), 2);
        assert_eq!(g.degree(100), 0);
        let vs: Vec<_> = g.vertices().collect();
        assert_eq!(vs, vec![3, 5, 7, 100]);
    }

    #[test]
    fn removal_keeps_symmetry() {
        let mut g = path_graph(4);
        g.remove_vertex(1);
        assert!(!g.has_vertex(1));
        assert!(!g.has_edge(0, 1));
        assert_eq!(g.degree(0), 0);
        assert_eq!(g.degree(2), 1);
        let h = g.removed(2);
        assert_eq!(h.num_edges(), 0);
        assert_eq!(g.num_edges(), 1, "removed() leaves the original intact");
    }

    #[test]
    fn components_and_reachability() {
        let mut g = path_graph(3);
        g.add_edge(10, 11);
        g.add_vertex(20);
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(comps[0], (0..3).collect());
        assert_eq!(comps[1], [10, 11].into_iter().collect());
        assert_eq!(comps[2], [20].into_iter().collect());
        assert!(!g.is_connected());
        assert_eq!(g.reachable(10).len(), 2);
    }

    #[test]
    fn shortest_paths() {
        let mut g = path_graph(5);
        g.add_edge(0, 4); // shortcut
        assert_eq!(g.shortest_path(0, 4, None), Some(vec![0, 4]));
        let allowed: BTreeSet<VertexId> = (0..4).collect();
        assert_eq!(
            g.shortest_path(0, 3, Some(&allowed)),
            Some(vec![0, 1, 2, 3])
        );
        let blocked: BTreeSet<VertexId> = [0, 2, 3, 4].into_iter().collect();
        assert_eq!(g.shortest_path(0, 3, Some(&blocked)), Some(vec![0, 4, 3]));
        assert_eq!(g.shortest_path(0, 99, None), None);
    }

    #[test]
    fn induced_subgraph() {
        let mut g = path_graph(4);
        g.add_edge(0, 3);
        let keep: BTreeSet<VertexId> = [0, 1, 3].into_iter().collect();
        let h = g.induced(&keep);
        assert_eq!(h.num_vertices(), 3);
        assert_eq!(h.edges(), vec![(0, 1), (0, 3)]);
    }

    #[test]
    fn simple_path_check() {
        let g = path_graph(4);
        assert!(g.is_simple_path(&[0, 1, 2, 3]));
        assert!(g.is_simple_path(&[2]));
        assert!(!g.is_simple_path(&[0, 2]));
        assert!(!g.is_simple_path(&[0, 1, 0]));
        assert!(!g.is_simple_path(&[]));
    }
}
