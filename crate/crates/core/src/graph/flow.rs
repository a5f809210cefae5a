//! Vertex-disjoint path packing via unit-capacity maximum flow.
//!
//! The graph is node-split: each vertex v becomes v_in → v_out with capacity
//! 1 (terminal node arcs get capacity 0 so paths never pass through a
//! terminal), each undirected edge becomes a pair of unit arcs between out-
//! and in-sides, and a super source/sink feeds terminals with per-terminal
//! budgets. Augmentation is breadth-first in deterministic arc order, so
//! results are reproducible.

use super::Graph;
use crate::error::Error;
use crate::{Result, VertexId};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Outcome of a disjoint-paths query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DisjointPaths {
    /// Exactly the requested number of paths, internally disjoint, each from
    /// a source to a sink; paths share a terminal only when its budget
    /// allows.
    Paths(Vec<Vec<VertexId>>),
    /// Fewer paths exist: a vertex set of size < requested meeting every
    /// source-sink path.
    Separator(BTreeSet<VertexId>),
}

struct Arc {
    to: usize,
    cap: i64,
    orig: i64,
    rev: usize,
}

struct FlowNet {
    adj: Vec<Vec<Arc>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet { adj: (0..n).map(|_| Vec::new()).collect() }
    }

    fn add(&mut self, from: usize, to: usize, cap: i64) {
        let a = self.adj[to].len();
        let b = self.adj[from].len();
        self.adj[from].push(Arc { to, cap, orig: cap, rev: a });
        self.adj[to].push(Arc { to: from, cap: 0, orig: 0, rev: b });
    }

    /// Flow pushed through an arc (zero for the backward twins).
    fn flow(&self, v: usize, i: usize) -> i64 {
        let a = &self.adj[v][i];
        a.orig - a.cap
    }

    /// One unit-augmenting BFS; returns true if a unit was pushed.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let n = self.adj.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        'bfs: while let Some(v) = queue.pop_front() {
            for (i, arc) in self.adj[v].iter().enumerate() {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    prev[arc.to] = Some((v, i));
                    if arc.to == t {
                        break 'bfs;
                    }
                    queue.push_back(arc.to);
                }
            }
        }
        if !seen[t] {
            return false;
        }
        let mut cur = t;
        while cur != s {
            let (pv, pi) = prev[cur].expect("path recorded");
            let rev = self.adj[pv][pi].rev;
            self.adj[pv][pi].cap -= 1;
            self.adj[cur][rev].cap += 1;
            cur = pv;
        }
        true
    }

    /// Nodes reachable from `s` in the residual network.
    fn residual_side(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for arc in &self.adj[v] {
                if arc.cap > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }
}

/// `count` internally-vertex-disjoint paths from A to B, where each terminal
/// may serve up to `count` paths (Menger semantics for vertex sets: paths
/// may share endpoints but nothing else).
pub fn vertex_disjoint_paths(
    g: &Graph,
    a: &[VertexId],
    b: &[VertexId],
    count: usize,
) -> Result<DisjointPaths> {
    let a_caps: Vec<(VertexId, usize)> = a.iter().map(|&v| (v, count)).collect();
    let b_caps: Vec<(VertexId, usize)> = b.iter().map(|&v| (v, count)).collect();
    vertex_disjoint_paths_capped(g, &a_caps, &b_caps, count)
}

/// As [`vertex_disjoint_paths`], with an explicit per-terminal budget: a
/// source with capacity c starts at most c of the returned paths, a sink
/// with capacity c ends at most c. All capacities 1 forces fully disjoint
/// paths with distinct endpoints.
pub fn vertex_disjoint_paths_capped(
    g: &Graph,
    a_caps: &[(VertexId, usize)],
    b_caps: &[(VertexId, usize)],
    count: usize,
) -> Result<DisjointPaths> {
    let a_map: BTreeMap<VertexId, usize> = a_caps.iter().copied().collect();
    let b_map: BTreeMap<VertexId, usize> = b_caps.iter().copied().collect();
    if a_map.len() != a_caps.len() || b_map.len() != b_caps.len() {
        return Err(Error::InvalidInstance("duplicate terminal in A or B".into()));
    }
    for &v in a_map.keys().chain(b_map.keys()) {
        if !g.has_vertex(v) {
            return Err(Error::InvalidInstance(format!(
                "terminal {v} is not a vertex of the graph"
            )));
        }
    }

    // Terminals in both A and B yield trivial one-vertex paths first; every
    // shared vertex then leaves the network (nothing else may touch it).
    let shared: Vec<VertexId> =
        a_map.keys().filter(|v| b_map.contains_key(v)).copied().collect();
    let mut paths: Vec<Vec<VertexId>> = Vec::new();
    let mut work = g.clone();
    for &v in &shared {
        if paths.len() < count {
            paths.push(vec![v]);
        }
        work.remove_vertex(v);
    }
    let remaining = count - paths.len();
    if remaining == 0 {
        return Ok(DisjointPaths::Paths(paths));
    }

    let verts: Vec<VertexId> = work.vertices().collect();
    let idx_of: BTreeMap<VertexId, usize> =
        verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = verts.len();
    let v_in = |i: usize| 2 * i;
    let v_out = |i: usize| 2 * i + 1;
    let src = 2 * n;
    let snk = 2 * n + 1;
    let mut net = FlowNet::new(2 * n + 2);

    for (i, v) in verts.iter().enumerate() {
        let internal = !a_map.contains_key(v) && !b_map.contains_key(v);
        let cap = if internal { 1 } else { 0 };
        net.add(v_in(i), v_out(i), cap);
    }
    for (u, v) in work.edges() {
        let ui = idx_of[&u];
        let vi = idx_of[&v];
        net.add(v_out(ui), v_in(vi), 1);
        net.add(v_out(vi), v_in(ui), 1);
    }
    for (&v, &cap) in &a_map {
        if let Some(&i) = idx_of.get(&v) {
            net.add(src, v_out(i), cap as i64);
        }
    }
    for (&v, &cap) in &b_map {
        if let Some(&i) = idx_of.get(&v) {
            net.add(v_in(i), snk, cap as i64);
        }
    }

    let mut flow = 0usize;
    while flow < remaining && net.augment(src, snk) {
        flow += 1;
    }

    if flow < remaining {
        // Min cut: map each saturated crossing arc to a vertex whose removal
        // kills it; the mapped set meets every A-B path and has size < count.
        let side = net.residual_side(src);
        let mut sep: BTreeSet<VertexId> = paths.iter().map(|p| p[0]).collect();
        for (i, v) in verts.iter().enumerate() {
            if side[v_in(i)] && !side[v_out(i)] {
                sep.insert(*v);
            }
        }
        for (u, v) in work.edges() {
            let ui = idx_of[&u];
            let vi = idx_of[&v];
            if side[v_out(ui)] && !side[v_in(vi)] {
                sep.insert(v);
            }
            if side[v_out(vi)] && !side[v_in(ui)] {
                sep.insert(u);
            }
        }
        for &v in a_map.keys() {
            if let Some(&i) = idx_of.get(&v) {
                if !side[v_out(i)] {
                    sep.insert(v);
                }
            }
        }
        for &v in b_map.keys() {
            if let Some(&i) = idx_of.get(&v) {
                if side[v_in(i)] {
                    sep.insert(v);
                }
            }
        }
        return Ok(DisjointPaths::Separator(sep));
    }

    // Flow decomposition: walk positive-flow arcs from each source injection,
    // consuming flow as we go. Arc order is deterministic, so the extracted
    // paths are too.
    let mut used: Vec<Vec<i64>> =
        net.adj.iter().map(|arcs| vec![0i64; arcs.len()]).collect();
    let take = |net: &FlowNet, used: &mut Vec<Vec<i64>>, v: usize| -> Option<usize> {
        for i in 0..net.adj[v].len() {
            if net.flow(v, i) - used[v][i] > 0 {
                used[v][i] += 1;
                return Some(net.adj[v][i].to);
            }
        }
        None
    };
    for _ in 0..remaining {
        // One unit leaves the source into some a_out; afterwards each vertex
        // on the path is entered exactly once through its in-node.
        let mut cur = take(&net, &mut used, src).expect("source has residual flow units");
        let mut path: Vec<VertexId> = vec![verts[cur / 2]];
        loop {
            cur = take(&net, &mut used, cur).expect("flow conservation");
            if cur == snk {
                break;
            }
            if cur % 2 == 0 {
                path.push(verts[cur / 2]);
            }
        }
        paths.push(path);
    }

    // Defensive validation: simple paths, correct endpoints, internal
    // disjointness.
    let mut seen_internal: BTreeSet<VertexId> = BTreeSet::new();
    for p in &paths {
        if p.is_empty() || !a_map.contains_key(&p[0]) || !b_map.contains_key(p.last().unwrap()) {
            if p.len() == 1 && shared.contains(&p[0]) {
                // trivial path
            } else {
                return Err(Error::Incomplete(
                    "flow decomposition produced an invalid path".into(),
                ));
            }
        }
        if p.len() > 1 && !g.is_simple_path(p) {
            return Err(Error::Incomplete(
                "flow decomposition produced a non-simple path".into(),
            ));
        }
        if p.len() > 2 {
            for &v in &p[1..p.len() - 1] {
                if !seen_internal.insert(v) {
                    return Err(Error::Incomplete(
                        "flow decomposition produced overlapping paths".into(),
                    ));
                }
            }
        }
    }
    Ok(DisjointPaths::Paths(paths))
}
