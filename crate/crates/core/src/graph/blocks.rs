//! Biconnected components (blocks) and the block path between two terminals.
//!
//! Any s-t path visits the blocks along the unique block-cut-tree path from
//! s to t, entering and leaving each block through its cut vertices. Solvers
//! exploit this by working block by block.

use super::Graph;
use crate::error::Error;
use crate::{Result, VertexId};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A biconnected component: its induced subgraph (a single vertex for
/// isolated vertices, a single edge for bridges, 2-connected otherwise).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub graph: Graph,
}

impl Block {
    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.graph.vertex_set()
    }
}

/// One step of a block path: traverse `graph` from `enter` to `exit`.
#[derive(Debug, Clone)]
pub struct BlockStep {
    pub graph: Graph,
    pub enter: VertexId,
    pub exit: VertexId,
}

/// All blocks of the graph, iteratively (no recursion), sorted by their
/// lexicographically smallest edge (singleton blocks by vertex, first).
pub fn biconnected_blocks(g: &Graph) -> Vec<Block> {
    let mut disc: BTreeMap<VertexId, u32> = BTreeMap::new();
    let mut low: BTreeMap<VertexId, u32> = BTreeMap::new();
    let mut timer: u32 = 0;
    let mut edge_stack: Vec<(VertexId, VertexId)> = Vec::new();
    let mut block_edges: Vec<Vec<(VertexId, VertexId)>> = Vec::new();
    let mut singletons: Vec<VertexId> = Vec::new();

    struct Frame {
        v: VertexId,
        parent: Option<VertexId>,
        nbrs: Vec<VertexId>,
        idx: usize,
    }

    for root in g.vertices().collect::<Vec<_>>() {
        if disc.contains_key(&root) {
            continue;
        }
        if g.degree(root) == 0 {
            disc.insert(root, timer);
            timer += 1;
            singletons.push(root);
            continue;
        }
        disc.insert(root, timer);
        low.insert(root, timer);
        timer += 1;
        let mut stack = vec![Frame {
            v: root,
            parent: None,
            nbrs: g.neighbors(root).collect(),
            idx: 0,
        }];
        while let Some(top) = stack.last_mut() {
            let v = top.v;
            if top.idx < top.nbrs.len() {
                let w = top.nbrs[top.idx];
                top.idx += 1;
                if Some(w) == top.parent {
                    continue;
                }
                if let Some(&dw) = disc.get(&w) {
                    if dw < disc[&v] {
                        // Back edge.
                        edge_stack.push((v, w));
                        let lv = low[&v].min(dw);
                        low.insert(v, lv);
                    }
                } else {
                    edge_stack.push((v, w));
                    disc.insert(w, timer);
                    low.insert(w, timer);
                    timer += 1;
                    stack.push(Frame {
                        v: w,
                        parent: Some(v),
                        nbrs: g.neighbors(w).collect(),
                        idx: 0,
                    });
                }
            } else {
                let finished = stack.pop().expect("frame");
                let v = finished.v;
                if let Some(p) = finished.parent {
                    let lp = low[&p].min(low[&v]);
                    low.insert(p, lp);
                    if low[&v] >= disc[&p] {
                        // (p, v) closes a block.
                        let mut blk = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            let done = e == (p, v);
                            blk.push(e);
                            if done {
                                break;
                            }
                        }
                        block_edges.push(blk);
                    }
                }
            }
        }
        debug_assert!(edge_stack.is_empty(), "all edges assigned to blocks");
    }

    let mut blocks: Vec<Block> = Vec::new();
    for v in singletons {
        blocks.push(Block { graph: Graph::with_vertices([v]) });
    }
    for edges in block_edges {
        let mut bg = Graph::new();
        for (u, v) in edges {
            bg.add_edge(u, v);
        }
        blocks.push(Block { graph: bg });
    }
    blocks.sort_by_key(|b| {
        let first_edge = b.graph.edges().into_iter().next();
        let first_vertex = b.graph.vertices().next().unwrap_or(u32::MAX);
        (first_edge.is_some() as u8, first_edge, first_vertex)
    });
    blocks
}

/// The block path from s to t: each step names the block and the cut
/// vertices through which any s-t path enters and leaves it. `Ok(None)` when
/// t is unreachable from s.
pub fn biconnected_split(
    g: &Graph,
    s: VertexId,
    t: VertexId,
) -> Result<Option<Vec<BlockStep>>> {
    if s == t {
        return Err(Error::InvalidInstance("terminals must differ".into()));
    }
    if !g.has_vertex(s) || !g.has_vertex(t) {
        return Err(Error::InvalidInstance("terminal missing from graph".into()));
    }
    if !g.reachable(s).contains(&t) {
        return Ok(None);
    }
    let blocks = biconnected_blocks(g);

    // Cut vertices appear in at least two blocks.
    let mut owner_count: BTreeMap<VertexId, usize> = BTreeMap::new();
    for b in &blocks {
        for v in b.graph.vertices() {
            *owner_count.entry(v).or_insert(0) += 1;
        }
    }

    // Single-block case first (deterministically the smallest such block).
    if let Some(b) = blocks
        .iter()
        .find(|b| b.graph.has_vertex(s) && b.graph.has_vertex(t))
    {
        return Ok(Some(vec![BlockStep { graph: b.graph.clone(), enter: s, exit: t }]));
    }

    // BFS over the block-cut tree from every block containing s.
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
    enum Node {
        Block(usize),
        Cut(VertexId),
    }
    let mut adjacency: BTreeMap<Node, Vec<Node>> = BTreeMap::new();
    for (i, b) in blocks.iter().enumerate() {
        for v in b.graph.vertices() {
            if owner_count[&v] >= 2 {
                adjacency.entry(Node::Block(i)).or_default().push(Node::Cut(v));
                adjacency.entry(Node::Cut(v)).or_default().push(Node::Block(i));
            }
        }
    }
    let mut parent: BTreeMap<Node, Node> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for (i, b) in blocks.iter().enumerate() {
        if b.graph.has_vertex(s) {
            parent.insert(Node::Block(i), Node::Block(i));
            queue.push_back(Node::Block(i));
        }
    }
    let mut goal: Option<Node> = None;
    'bfs: while let Some(node) = queue.pop_front() {
        if let Node::Block(i) = node {
            if blocks[i].graph.has_vertex(t) {
                goal = Some(node);
                break 'bfs;
            }
        }
        for &next in adjacency.get(&node).into_iter().flatten() {
            if !parent.contains_key(&next) {
                parent.insert(next, node);
                queue.push_back(next);
            }
        }
    }
    let goal = goal.ok_or_else(|| {
        Error::InvalidInstance("block-cut tree disagrees with reachability".into())
    })?;

    // Reconstruct the alternating block/cut path.
    let mut rev = vec![goal];
    let mut cur = goal;
    while parent[&cur] != cur {
        cur = parent[&cur];
        rev.push(cur);
    }
    rev.reverse();
    let mut steps: Vec<BlockStep> = Vec::new();
    let block_seq: Vec<usize> = rev
        .iter()
        .filter_map(|n| match n {
            Node::Block(i) => Some(*i),
            Node::Cut(_) => None,
        })
        .collect();
    let cut_seq: Vec<VertexId> = rev
        .iter()
        .filter_map(|n| match n {
            Node::Cut(v) => Some(*v),
            Node::Block(_) => None,
        })
        .collect();
    debug_assert_eq!(block_seq.len(), cut_seq.len() + 1);
    for (pos, &bi) in block_seq.iter().enumerate() {
        let enter = if pos == 0 { s } else { cut_seq[pos - 1] };
        let exit = if pos == block_seq.len() - 1 { t } else { cut_seq[pos] };
        debug_assert_ne!(enter, exit, "degenerate block step");
        steps.push(BlockStep { graph: blocks[bi].graph.clone(), enter, exit });
    }
    Ok(Some(steps))
}
