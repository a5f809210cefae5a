//! Tree decompositions: width-bounded construction, validation, and the
//! nice form consumed by the dynamic program.
//!
//! `treewidth_decompose(G, w)` has a three-way contract:
//! * `Decomposition(td)` — a valid decomposition of width ≤ 2w + 1;
//! * `Exceeds(w)` — a proof (exhaustive elimination-order search, small
//!   graphs only) that the treewidth is strictly greater than w;
//! * `Incomplete` — neither: the heuristic found nothing good enough and the
//!   graph is too large to settle exactly. Callers must treat this as an
//!   honest abstention, never as evidence either way.

use crate::error::Error;
use crate::graph::Graph;
use crate::{Result, VertexId};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// A rooted tree decomposition: bag contents plus parent links
/// (`parent[i] == None` exactly for the root).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub bags: Vec<BTreeSet<VertexId>>,
    pub parent: Vec<Option<usize>>,
}

impl TreeDecomposition {
    pub fn width(&self) -> usize {
        self.bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Children lists derived from parent links.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.bags.len()];
        for (i, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                out[*p].push(i);
            }
        }
        out
    }

    pub fn root(&self) -> Option<usize> {
        self.parent.iter().position(|p| p.is_none())
    }
}

/// Outcome of width-bounded decomposition.
#[derive(Debug, Clone)]
pub enum TwResult {
    /// Valid decomposition of width ≤ 2w + 1.
    Decomposition(TreeDecomposition),
    /// Proven: treewidth > w.
    Exceeds(usize),
    /// No decomposition found and no proof; the graph is too large for the
    /// exact search.
    Incomplete,
}

/// Vertices are mapped to 0..n for the elimination machinery.
struct Ctx {
    ids: Vec<VertexId>,
    adj: Vec<BTreeSet<usize>>,
}

impl Ctx {
    fn new(g: &Graph) -> Ctx {
        let ids: Vec<VertexId> = g.vertices().collect();
        let pos: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = ids
            .iter()
            .map(|&v| g.neighbors(v).map(|u| pos[&u]).collect())
            .collect();
        Ctx { ids, adj }
    }
}

/// Min-fill elimination order: repeatedly remove the vertex whose
/// neighborhood needs the fewest fill edges (ties to the smaller id),
/// making its neighborhood a clique.
fn min_fill_order(ctx: &Ctx) -> Vec<usize> {
    let n = ctx.ids.len();
    let mut adj = ctx.adj.clone();
    let mut alive: BTreeSet<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    while !alive.is_empty() {
        let mut best: Option<(usize, usize)> = None; // (fill, vertex)
        for &v in &alive {
            let nbrs: Vec<usize> = adj[v].iter().copied().collect();
            let mut fill = 0;
            for (i, &a) in nbrs.iter().enumerate() {
                for &b in &nbrs[i + 1..] {
                    if !adj[a].contains(&b) {
                        fill += 1;
                    }
                }
            }
            if best.map_or(true, |(bf, _)| fill < bf) {
                best = Some((fill, v));
            }
        }
        let (_, v) = best.expect("alive nonempty");
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nbrs {
            adj[a].remove(&v);
        }
        adj[v].clear();
        alive.remove(&v);
        order.push(v);
    }
    order
}

/// Build a decomposition from an elimination order; bags are the eliminated
/// vertex plus its fill neighborhood, parents point at the bag of the
/// earliest-later-eliminated fill neighbor.
fn td_from_order(ctx: &Ctx, order: &[usize]) -> TreeDecomposition {
    let n = ctx.ids.len();
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let mut adj = ctx.adj.clone();
    let mut bags: Vec<BTreeSet<VertexId>> = Vec::with_capacity(n);
    let mut fill_nbrs: Vec<Vec<usize>> = Vec::with_capacity(n);
    for &v in order {
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        let mut bag: BTreeSet<VertexId> = [ctx.ids[v]].into_iter().collect();
        for &u in &nbrs {
            bag.insert(ctx.ids[u]);
        }
        bags.push(bag);
        fill_nbrs.push(nbrs.clone());
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nbrs {
            adj[a].remove(&v);
        }
        adj[v].clear();
    }
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for (i, nbrs) in fill_nbrs.iter().enumerate() {
        // Parent: bag of the fill neighbor eliminated first after this one.
        if let Some(&u) = nbrs.iter().min_by_key(|&&u| position[u]) {
            parent[i] = Some(position[u]);
        }
    }
    // Multiple components give several roots; link extra roots under the
    // first to keep a single tree (bags may be disjoint, which is fine for
    // decomposition validity as long as connectivity per vertex holds).
    let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
    for &r in roots.iter().skip(1) {
        parent[r] = Some(roots[0]);
    }
    if n == 0 {
        return TreeDecomposition { bags: vec![BTreeSet::new()], parent: vec![None] };
    }
    TreeDecomposition { bags, parent }
}

/// Exhaustive decision "treewidth ≤ θ" by elimination-order search with
/// memoisation on the eliminated set; only for graphs with ≤ 24 vertices.
/// Returns Some(order) or None; aborts (None + flag) past the node budget.
fn exact_order_within(ctx: &Ctx, theta: usize, budget: &mut u64) -> Option<Option<Vec<usize>>> {
    let n = ctx.ids.len();
    debug_assert!(n <= 24);
    // Fill-degree of v with eliminated set S: neighbors reachable through S.
    let fill_degree = |v: usize, s: u32| -> usize {
        let mut seen: u32 = 1 << v;
        let mut out: u32 = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &u in &ctx.adj[x] {
                if seen >> u & 1 == 1 {
                    continue;
                }
                seen |= 1 << u;
                if s >> u & 1 == 1 {
                    queue.push_back(u);
                } else {
                    out |= 1 << u;
                }
            }
        }
        out.count_ones() as usize
    };
    let mut failed: BTreeSet<u32> = BTreeSet::new();
    fn rec(
        ctx: &Ctx,
        theta: usize,
        s: u32,
        depth: usize,
        order: &mut Vec<usize>,
        failed: &mut BTreeSet<u32>,
        budget: &mut u64,
        fill_degree: &dyn Fn(usize, u32) -> usize,
    ) -> Option<bool> {
        let n = ctx.ids.len();
        if depth == n {
            return Some(true);
        }
        if failed.contains(&s) {
            return Some(false);
        }
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        for v in 0..n {
            if s >> v & 1 == 1 {
                continue;
            }
            if fill_degree(v, s) <= theta {
                order.push(v);
                match rec(ctx, theta, s | 1 << v, depth + 1, order, failed, budget, fill_degree)
                {
                    Some(true) => return Some(true),
                    Some(false) => {
                        order.pop();
                    }
                    None => return None,
                }
            }
        }
        failed.insert(s);
        Some(false)
    }
    let mut order = Vec::new();
    match rec(ctx, theta, 0, 0, &mut order, &mut failed, budget, &fill_degree) {
        Some(true) => Some(Some(order)),
        Some(false) => Some(None),
        None => None,
    }
}

/// Width-bounded decomposition; see module docs for the contract.
pub fn treewidth_decompose(g: &Graph, w: usize) -> TwResult {
    let ctx = Ctx::new(g);
    let n = ctx.ids.len();
    if n == 0 {
        return TwResult::Decomposition(TreeDecomposition {
            bags: vec![BTreeSet::new()],
            parent: vec![None],
        });
    }
    let heuristic = td_from_order(&ctx, &min_fill_order(&ctx));
    debug_assert!(validate_td(g, &heuristic).is_ok());
    if heuristic.width() <= 2 * w + 1 {
        return TwResult::Decomposition(heuristic);
    }
    if n <= 24 {
        let mut budget: u64 = 2_000_000;
        match exact_order_within(&ctx, w, &mut budget) {
            Some(Some(order)) => {
                let td = td_from_order(&ctx, &order);
                debug_assert!(validate_td(g, &td).is_ok());
                debug_assert!(td.width() <= w);
                TwResult::Decomposition(td)
            }
            Some(None) => TwResult::Exceeds(w),
            None => TwResult::Incomplete,
        }
    } else {
        TwResult::Incomplete
    }
}

/// Check the three decomposition properties: vertex coverage, edge coverage,
/// and connectivity of every vertex's bag set, plus tree-shapedness.
pub fn validate_td(g: &Graph, td: &TreeDecomposition) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidInstance(msg));
    if td.bags.len() != td.parent.len() {
        return bad("bag and parent arrays differ in length".into());
    }
    if td.bags.is_empty() {
        return bad("decomposition has no nodes".into());
    }
    let roots = td.parent.iter().filter(|p| p.is_none()).count();
    if roots != 1 {
        return bad(format!("expected exactly one root, found {roots}"));
    }
    // Tree: all nodes reach the root by parent links without cycles.
    for mut i in 0..td.bags.len() {
        let mut steps = 0;
        while let Some(p) = td.parent[i] {
            if p >= td.bags.len() {
                return bad(format!("parent index {p} out of range"));
            }
            i = p;
            steps += 1;
            if steps > td.bags.len() {
                return bad("parent links contain a cycle".into());
            }
        }
    }
    let children = td.children();
    // Coverage.
    let mut covered: BTreeSet<VertexId> = BTreeSet::new();
    for b in &td.bags {
        covered.extend(b.iter().copied());
    }
    for v in g.vertices() {
        if !covered.contains(&v) {
            return bad(format!("vertex {v} is in no bag"));
        }
    }
    for &x in &covered {
        if !g.has_vertex(x) {
            return bad(format!("bag vertex {x} is not in the graph"));
        }
    }
    for (u, v) in g.edges() {
        if !td.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return bad(format!("edge ({u}, {v}) is in no bag"));
        }
    }
    // Connectivity: nodes containing each vertex form a subtree.
    for v in covered {
        let holders: Vec<usize> = (0..td.bags.len())
            .filter(|&i| td.bags[i].contains(&v))
            .collect();
        let holder_set: BTreeSet<usize> = holders.iter().copied().collect();
        let mut seen: BTreeSet<usize> = [holders[0]].into_iter().collect();
        let mut queue = VecDeque::from([holders[0]]);
        while let Some(i) = queue.pop_front() {
            let mut nbrs: Vec<usize> = children[i].clone();
            if let Some(p) = td.parent[i] {
                nbrs.push(p);
            }
            for j in nbrs {
                if holder_set.contains(&j) && seen.insert(j) {
                    queue.push_back(j);
                }
            }
        }
        if seen.len() != holders.len() {
            return bad(format!("bags containing {v} are not connected"));
        }
    }
    Ok(())
}

/// Kinds of nodes in a nice decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NiceKind {
    /// Bag is exactly {s, t}.
    Leaf,
    /// Bag = child bag plus this vertex.
    Insert(VertexId),
    /// Bag = child bag minus this vertex.
    Forget(VertexId),
    /// Bag equals both children's bags.
    Join,
}

#[derive(Debug, Clone)]
pub struct NiceNode {
    pub kind: NiceKind,
    pub bag: BTreeSet<VertexId>,
    pub children: Vec<usize>,
}

/// A nice tree decomposition rooted for a terminal pair: both terminals are
/// in every bag, leaves and root have bag exactly {s, t}, and every internal
/// node is an insert, forget, or binary join.
#[derive(Debug, Clone)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
    pub s: VertexId,
    pub t: VertexId,
}

impl NiceDecomposition {
    pub fn width(&self) -> usize {
        self.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(0).saturating_sub(1)
    }

    /// Node indices with children before parents.
    pub fn postorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![(self.root, false)];
        while let Some((i, expanded)) = stack.pop() {
            if expanded {
                out.push(i);
            } else {
                stack.push((i, true));
                for &c in self.nodes[i].children.iter().rev() {
                    stack.push((c, false));
                }
            }
        }
        out
    }
}

/// Convert a decomposition into nice form for terminals s ≠ t: s and t are
/// added to every bag first (width grows by at most 2).
pub fn make_nice(
    td: &TreeDecomposition,
    g: &Graph,
    s: VertexId,
    t: VertexId,
) -> Result<NiceDecomposition> {
    if s == t {
        return Err(Error::InvalidInstance("terminals must differ".into()));
    }
    if !g.has_vertex(s) || !g.has_vertex(t) {
        return Err(Error::InvalidInstance("terminal missing from graph".into()));
    }
    validate_td(g, td)?;
    let mut bags = td.bags.clone();
    for b in &mut bags {
        b.insert(s);
        b.insert(t);
    }
    let base: BTreeSet<VertexId> = [s, t].into_iter().collect();

    let mut nodes: Vec<NiceNode> = Vec::new();
    let push = |kind: NiceKind, bag: BTreeSet<VertexId>, children: Vec<usize>,
                    nodes: &mut Vec<NiceNode>| {
        nodes.push(NiceNode { kind, bag, children });
        nodes.len() - 1
    };

    // Chain from `from` bag to `to` bag: forget from∖to ascending, then
    // insert to∖from ascending. Returns the index of the top node.
    let adapt = |mut cur: usize,
                 from: &BTreeSet<VertexId>,
                 to: &BTreeSet<VertexId>,
                 nodes: &mut Vec<NiceNode>|
     -> usize {
        let mut bag = from.clone();
        for &v in from.difference(to) {
            bag.remove(&v);
            let next = NiceNode {
                kind: NiceKind::Forget(v),
                bag: bag.clone(),
                children: vec![cur],
            };
            nodes.push(next);
            cur = nodes.len() - 1;
        }
        for &v in to.difference(from) {
            bag.insert(v);
            let next = NiceNode {
                kind: NiceKind::Insert(v),
                bag: bag.clone(),
                children: vec![cur],
            };
            nodes.push(next);
            cur = nodes.len() - 1;
        }
        cur
    };

    // Recursively build nice subtrees bottom-up over the original tree.
    let children = td.children();
    let root = td.root().ok_or_else(|| Error::InvalidInstance("no root".into()))?;
    // Iterative post-order over the original decomposition.
    let mut order = Vec::new();
    let mut stack = vec![(root, false)];
    while let Some((i, expanded)) = stack.pop() {
        if expanded {
            order.push(i);
        } else {
            stack.push((i, true));
            for &c in children[i].iter().rev() {
                stack.push((c, false));
            }
        }
    }
    let mut built: BTreeMap<usize, usize> = BTreeMap::new(); // td node → nice node idx
    for &i in &order {
        let bag = bags[i].clone();
        let kids = &children[i];
        let top = if kids.is_empty() {
            // Leaf: {s,t} then insert the rest ascending.
            let leaf = push(NiceKind::Leaf, base.clone(), vec![], &mut nodes);
            adapt(leaf, &base, &bag, &mut nodes)
        } else {
            // Adapt each child subtree to this bag, then fold joins.
            let mut tops: Vec<usize> = Vec::new();
            for &c in kids {
                let child_top = built[&c];
                let adapted = adapt(child_top, &bags[c], &bag, &mut nodes);
                tops.push(adapted);
            }
            let mut acc = tops[0];
            for &next in &tops[1..] {
                acc = push(NiceKind::Join, bag.clone(), vec![acc, next], &mut nodes);
            }
            acc
        };
        built.insert(i, top);
    }
    // Forget chain from the root bag down to {s, t}.
    let top = adapt(built[&root], &bags[root], &base, &mut nodes);
    let nice = NiceDecomposition { nodes, root: top, s, t };
    debug_assert!(validate_nice(&nice, g).is_ok());
    Ok(nice)
}

/// Structural check of a nice decomposition (used by tests and debug
/// assertions): node kinds match bag deltas, terminals everywhere, leaf and
/// root bags are exactly {s, t}, and the underlying decomposition is valid.
pub fn validate_nice(nice: &NiceDecomposition, g: &Graph) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidInstance(msg));
    let base: BTreeSet<VertexId> = [nice.s, nice.t].into_iter().collect();
    for (i, n) in nice.nodes.iter().enumerate() {
        if !n.bag.contains(&nice.s) || !n.bag.contains(&nice.t) {
            return bad(format!("node {i} misses a terminal"));
        }
        match n.kind {
            NiceKind::Leaf => {
                if !n.children.is_empty() || n.bag != base {
                    return bad(format!("leaf node {i} malformed"));
                }
            }
            NiceKind::Insert(v) => {
                if n.children.len() != 1 {
                    return bad(format!("insert node {i} needs one child"));
                }
                let c = &nice.nodes[n.children[0]];
                let mut expect = c.bag.clone();
                if !expect.insert(v) || n.bag != expect {
                    return bad(format!("insert node {i} bag mismatch"));
                }
            }
            NiceKind::Forget(v) => {
                if n.children.len() != 1 {
                    return bad(format!("forget node {i} needs one child"));
                }
                let c = &nice.nodes[n.children[0]];
                let mut expect = c.bag.clone();
                if !expect.remove(&v) || n.bag != expect {
                    return bad(format!("forget node {i} bag mismatch"));
                }
            }
            NiceKind::Join => {
                if n.children.len() != 2 {
                    return bad(format!("join node {i} needs two children"));
                }
                for &c in &n.children {
                    if nice.nodes[c].bag != n.bag {
                        return bad(format!("join node {i} children bag mismatch"));
                    }
                }
            }
        }
    }
    if nice.nodes[nice.root].bag != base {
        return bad("root bag is not {s, t}".into());
    }
    // Reconstruct a plain decomposition and validate it against the graph.
    let bags: Vec<BTreeSet<VertexId>> = nice.nodes.iter().map(|n| n.bag.clone()).collect();
    let mut parent: Vec<Option<usize>> = vec![None; nice.nodes.len()];
    for (i, n) in nice.nodes.iter().enumerate() {
        for &c in &n.children {
            parent[c] = Some(i);
        }
    }
    let td = TreeDecomposition { bags, parent };
    validate_td(g, &td)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: u32) -> Graph {
        let mut g = Graph::new();
        for v in 0..n - 1 {
            g.add_edge(v, v + 1);
        }
        g
    }

    fn cycle(n: u32) -> Graph {
        let mut g = path(n);
        g.add_edge(0, n - 1);
        g
    }

    fn grid(w: u32, h: u32) -> Graph {
        let mut g = Graph::new();
        let id = |x: u32, y: u32| y * w + x;
        for y in 0..h {
            for x in 0..w {
                if x + 1 < w {
                    g.add_edge(id(x, y), id(x + 1, y));
                }
                if y + 1 < h {
                    g.add_edge(id(x, y), id(x, y + 1));
                }
            }
        }
        g
    }

    #[test]
    fn tree_has_width_one() {
        let mut g = Graph::new();
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(2, 3);
        match treewidth_decompose(&g, 1) {
            TwResult::Decomposition(td) => {
                assert!(td.width() <= 1);
                validate_td(&g, &td).unwrap();
            }
            other => panic!("expected decomposition, got {other:?}"),
        }
    }

    #[test]
    fn c5_exceeds_width_one() {
        // A cycle has treewidth 2; heuristic width 2 ≤ 2·1+1 = 3 would accept,
        // so ask with w = 0 to force the exact branch: tw(C5) = 2 > 0.
        match treewidth_decompose(&cycle(5), 0) {
            TwResult::Exceeds(0) => {}
            other => panic!("expected Exceeds(0), got {other:?}"),
        }
        // Width-1 requests on C5 are satisfiable within the 2w+1 = 3 slack.
        match treewidth_decompose(&cycle(5), 1) {
            TwResult::Decomposition(td) => assert!(td.width() <= 3),
            other => panic!("expected decomposition, got {other:?}"),
        }
    }

    #[test]
    fn grid_4x4_exceeds_width_three_exactly_when_forced() {
        // tw(4×4 grid) = 4. Heuristic stays within 2w+1 for w = 3 (7), so to
        // obtain the proof we must ask at w where even 2w+1 < 4... instead
        // verify the exact search directly: no elimination order with bags
        // ≤ 4 wide exists at θ = 3.
        let g = grid(4, 4);
        let ctx = Ctx::new(&g);
        let mut budget = 2_000_000u64;
        assert_eq!(exact_order_within(&ctx, 3, &mut budget), Some(None));
        let mut budget2 = 2_000_000u64;
        match exact_order_within(&ctx, 4, &mut budget2) {
            Some(Some(order)) => {
                let td = td_from_order(&ctx, &order);
                assert_eq!(td.width(), 4);
                validate_td(&g, &td).unwrap();
            }
            other => panic!("expected order at θ=4, got {other:?}"),
        }
    }

    #[test]
    fn heuristic_handles_disconnected_graphs() {
        let mut g = path(3);
        g.add_edge(10, 11);
        g.add_vertex(42);
        match treewidth_decompose(&g, 1) {
            TwResult::Decomposition(td) => validate_td(&g, &td).unwrap(),
            other => panic!("expected decomposition, got {other:?}"),
        }
    }

    #[test]
    fn validate_rejects_broken_decompositions() {
        let g = path(3);
        // Missing edge coverage.
        let td = TreeDecomposition {
            bags: vec![
                [0, 1].into_iter().collect(),
                [2].into_iter().collect(),
            ],
            parent: vec![None, Some(0)],
        };
        assert!(validate_td(&g, &td).is_err());
        // Disconnected holder set for vertex 0.
        let td2 = TreeDecomposition {
            bags: vec![
                [0, 1].into_iter().collect(),
                [1, 2].into_iter().collect(),
                [0, 2].into_iter().collect(),
            ],
            parent: vec![None, Some(0), Some(1)],
        };
        assert!(validate_td(&g, &td2).is_err());
        // Two roots.
        let td3 = TreeDecomposition {
            bags: vec![[0, 1].into_iter().collect(), [1, 2].into_iter().collect()],
            parent: vec![None, None],
        };
        assert!(validate_td(&g, &td3).is_err());
    }

    #[test]
    fn nice_decomposition_structure() {
        let g = cycle(6);
        let td = match treewidth_decompose(&g, 2) {
            TwResult::Decomposition(td) => td,
            other => panic!("expected decomposition, got {other:?}"),
        };
        let nice = make_nice(&td, &g, 0, 3).unwrap();
        validate_nice(&nice, &g).unwrap();
        assert!(nice.width() <= td.width() + 2);
        // Post-order puts children first.
        let order = nice.postorder();
        let mut seen = BTreeSet::new();
        for &i in &order {
            for &c in &nice.nodes[i].children {
                assert!(seen.contains(&c));
            }
            seen.insert(i);
        }
        assert_eq!(*order.last().unwrap(), nice.root);
    }

    #[test]
    fn nice_handles_root_and_leaf_terminals() {
        let g = path(5);
        let td = match treewidth_decompose(&g, 1) {
            TwResult::Decomposition(td) => td,
            other => panic!("expected decomposition, got {other:?}"),
        };
        for (s, t) in [(0, 4), (1, 3), (0, 1)] {
            let nice = make_nice(&td, &g, s, t).unwrap();
            validate_nice(&nice, &g).unwrap();
            let base: BTreeSet<VertexId> = [s, t].into_iter().collect();
            assert_eq!(nice.nodes[nice.root].bag, base);
        }
        assert!(make_nice(&td, &g, 2, 2).is_err());
    }

    #[test]
    fn join_nodes_appear_for_branching_trees() {
        // Star with three arms forces a branching decomposition.
        let mut g = Graph::new();
        g.add_edge(0, 1);
        g.add_edge(0, 2);
        g.add_edge(0, 3);
        let td = match treewidth_decompose(&g, 1) {
            TwResult::Decomposition(td) => td,
            other => panic!("expected decomposition, got {other:?}"),
        };
        let nice = make_nice(&td, &g, 1, 2).unwrap();
        validate_nice(&nice, &g).unwrap();
        if td.children().iter().any(|c| c.len() >= 2) {
            assert!(nice.nodes.iter().any(|n| matches!(n.kind, NiceKind::Join)));
        }
    }
}
