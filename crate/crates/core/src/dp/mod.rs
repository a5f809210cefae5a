//! The treewidth dynamic program: semi-matchings, partial-solution tables
//! over a nice decomposition, representative-set pruning, and witness
//! reconstruction.
//!
//! A table key is a pair (ℳ, i): ℳ is a semi-matching describing how the
//! partial forest meets the current bag, i counts the independent vertices
//! collected strictly below the bag. The base set X is implicit — it is
//! always the support of ℳ.

mod solve;

pub use solve::{
    dp_forget, dp_insert, dp_join, dp_leaf, solve_dp, DpConfig, DpOutcome, DpTable, Entry,
    NodeStat, PartialKey, Provenance, Witness,
};

use crate::graph::Graph;
use crate::{Error, Result, VertexId};
use std::collections::{BTreeMap, BTreeSet};

/// One element of a semi-matching: an unordered pair of distinct vertices,
/// or an isolated vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SmElem {
    Single(VertexId),
    /// Endpoints in ascending order.
    Pair(VertexId, VertexId),
}

impl SmElem {
    pub fn pair(a: VertexId, b: VertexId) -> SmElem {
        debug_assert_ne!(a, b);
        if a < b {
            SmElem::Pair(a, b)
        } else {
            SmElem::Pair(b, a)
        }
    }

    fn touches(&self, v: VertexId) -> bool {
        match *self {
            SmElem::Single(u) => u == v,
            SmElem::Pair(a, b) => a == v || b == v,
        }
    }
}

/// A semi-matching: the edge/isolated-vertex list of a simple acyclic graph
/// of maximum degree two on its support. Singletons appear exactly for the
/// degree-zero vertices, so the support is covered.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct SemiMatching {
    elems: BTreeSet<SmElem>,
}

impl SemiMatching {
    /// Build and validate. `None` when the elements do not form a
    /// semi-matching (degree over two, a cycle, a self-pair, or a singleton
    /// on a paired vertex).
    pub fn from_elems<I: IntoIterator<Item = SmElem>>(elems: I) -> Option<SemiMatching> {
        let elems: BTreeSet<SmElem> = elems.into_iter().collect();
        let mut deg: BTreeMap<VertexId, usize> = BTreeMap::new();
        let mut singles: BTreeSet<VertexId> = BTreeSet::new();
        for e in &elems {
            match *e {
                SmElem::Single(v) => {
                    singles.insert(v);
                }
                SmElem::Pair(a, b) => {
                    if a >= b {
                        return None;
                    }
                    *deg.entry(a).or_insert(0) += 1;
                    *deg.entry(b).or_insert(0) += 1;
                }
            }
        }
        if deg.values().any(|&d| d > 2) {
            return None;
        }
        if singles.iter().any(|v| deg.contains_key(v)) {
            return None;
        }
        // Acyclicity of the pair graph via union-find.
        let ids: Vec<VertexId> = deg.keys().copied().collect();
        let index: BTreeMap<VertexId, usize> =
            ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parent: Vec<usize> = (0..ids.len()).collect();
        fn find(parent: &mut Vec<usize>, mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for e in &elems {
            if let SmElem::Pair(a, b) = *e {
                let (ra, rb) = (find(&mut parent, index[&a]), find(&mut parent, index[&b]));
                if ra == rb {
                    return None;
                }
                parent[ra] = rb;
            }
        }
        Some(SemiMatching { elems })
    }

    pub fn elems(&self) -> impl Iterator<Item = &SmElem> {
        self.elems.iter()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, e: &SmElem) -> bool {
        self.elems.contains(e)
    }

    /// U(ℳ): every vertex an element touches.
    pub fn support(&self) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for e in &self.elems {
            match *e {
                SmElem::Single(v) => {
                    out.insert(v);
                }
                SmElem::Pair(a, b) => {
                    out.insert(a);
                    out.insert(b);
                }
            }
        }
        out
    }

    /// The pairs touching v, at most two.
    pub fn pairs_at(&self, v: VertexId) -> Vec<(VertexId, VertexId)> {
        self.elems
            .iter()
            .filter_map(|e| match *e {
                SmElem::Pair(a, b) if a == v || b == v => Some((a, b)),
                _ => None,
            })
            .collect()
    }

    pub fn has_single(&self, v: VertexId) -> bool {
        self.elems.contains(&SmElem::Single(v))
    }

    fn with(&self, add: &[SmElem], remove: &[SmElem]) -> Option<SemiMatching> {
        let mut elems = self.elems.clone();
        for e in remove {
            elems.remove(e);
        }
        for e in add {
            elems.insert(*e);
        }
        SemiMatching::from_elems(elems)
    }
}

/// rem(ℳ,v): drop every element at v, restoring a singleton for any pair
/// partner this uncovers.
pub fn sm_rem(m: &SemiMatching, v: VertexId) -> Result<SemiMatching> {
    if !m.support().contains(&v) {
        return Err(Error::InvalidInstance(format!(
            "vertex {v} is not in the semi-matching's support"
        )));
    }
    let mut elems: BTreeSet<SmElem> = m.elems.iter().copied().filter(|e| !e.touches(v)).collect();
    let kept_support: BTreeSet<VertexId> = SemiMatching { elems: elems.clone() }.support();
    for (a, b) in m.pairs_at(v) {
        let u = if a == v { b } else { a };
        if !kept_support.contains(&u) {
            elems.insert(SmElem::Single(u));
        }
    }
    Ok(SemiMatching::from_elems(elems).expect("removal keeps a valid semi-matching"))
}

/// Merge-out: if v is internal (pairs {a,v},{v,b}), contract them to {a,b};
/// `None` when v is a singleton or a segment endpoint instead.
pub fn sm_merge_out(m: &SemiMatching, v: VertexId) -> Option<SemiMatching> {
    let pairs = m.pairs_at(v);
    let [(a1, b1), (a2, b2)] = pairs.as_slice() else {
        return None;
    };
    let u1 = if *a1 == v { *b1 } else { *a1 };
    let u2 = if *a2 == v { *b2 } else { *a2 };
    let merged = m.with(
        &[SmElem::pair(u1, u2)],
        &[SmElem::pair(u1, v), SmElem::pair(v, u2)],
    );
    Some(merged.expect("contracting an internal vertex keeps a forest"))
}

/// Merge-semantics predecessors: all semi-matchings over X∪{v} in which v is
/// internal and contracting v yields m — one per pair of m.
pub fn sm_forget_predecessors(m: &SemiMatching, v: VertexId) -> Vec<SemiMatching> {
    if m.support().contains(&v) {
        return Vec::new();
    }
    let mut out = Vec::new();
    for e in &m.elems {
        if let SmElem::Pair(a, b) = *e {
            let pred = m
                .with(&[SmElem::pair(a, v), SmElem::pair(v, b)], &[SmElem::Pair(a, b)])
                .expect("splitting an edge through a fresh vertex keeps a forest");
            out.push(pred);
        }
    }
    out
}

/// The literal rem-preimage add(ℳ,v): every semi-matching over X∪{v} whose
/// rem at v gives m. v enters as a singleton, or attached to one or two
/// support vertices of pair-degree below two (replacing their singletons).
pub fn sm_rem_predecessors(m: &SemiMatching, v: VertexId) -> Vec<SemiMatching> {
    let support = m.support();
    if support.contains(&v) {
        return Vec::new();
    }
    let mut out = Vec::new();
    out.push(
        m.with(&[SmElem::Single(v)], &[])
            .expect("adding a fresh singleton keeps a semi-matching"),
    );
    let open: Vec<VertexId> = support
        .iter()
        .copied()
        .filter(|&u| m.pairs_at(u).len() <= 1)
        .collect();
    for &u in &open {
        let mut remove = vec![];
        if m.has_single(u) {
            remove.push(SmElem::Single(u));
        }
        let cand = m
            .with(&[SmElem::pair(u, v)], &remove)
            .expect("one fresh leaf edge keeps a forest");
        out.push(cand);
    }
    for (ai, &u1) in open.iter().enumerate() {
        for &u2 in &open[ai + 1..] {
            let mut remove = vec![];
            for u in [u1, u2] {
                if m.has_single(u) {
                    remove.push(SmElem::Single(u));
                }
            }
            // A path u1–v–u2 closes a cycle exactly when u1,u2 are already
            // connected; validation rejects that case.
            if let Some(cand) = m.with(&[SmElem::pair(u1, v), SmElem::pair(v, u2)], &remove) {
                out.push(cand);
            }
        }
    }
    debug_assert!(out
        .iter()
        .all(|mp| sm_rem(mp, v).map(|r| r == *m).unwrap_or(false)));
    out
}

/// ξ(ℳ): all ordered two-colorings of the element set.
pub fn sm_xi(m: &SemiMatching) -> Vec<(SemiMatching, SemiMatching)> {
    let elems: Vec<SmElem> = m.elems.iter().copied().collect();
    let mut out = Vec::with_capacity(1 << elems.len());
    for mask in 0u64..(1 << elems.len()) {
        let mut left = BTreeSet::new();
        let mut right = BTreeSet::new();
        for (j, e) in elems.iter().enumerate() {
            if mask & (1 << j) != 0 {
                left.insert(*e);
            } else {
                right.insert(*e);
            }
        }
        out.push((SemiMatching { elems: left }, SemiMatching { elems: right }));
    }
    out
}

/// Signature of a linear forest against a vertex set X: isolated X-vertices
/// as singletons, plus a pair {u,v} for every maximal forest subpath between
/// consecutive X-vertices. `None` when F is not a linear forest, is not a
/// subgraph of G, or has a component that meets X yet ends outside it — such
/// a dangling segment has no signature.
pub fn sig_of_forest(g: &Graph, x: &BTreeSet<VertexId>, f: &Graph) -> Option<SemiMatching> {
    for (u, v) in f.edges() {
        if !g.has_edge(u, v) {
            return None;
        }
    }
    if f.vertices().any(|v| f.degree(v) > 2) {
        return None;
    }
    let mut elems = Vec::new();
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    for start in f.vertices() {
        if seen.contains(&start) || f.degree(start) > 1 {
            continue;
        }
        // A path component, walked from one endpoint; or an isolated vertex.
        let mut walk = vec![start];
        seen.insert(start);
        let mut cur = start;
        let mut prev = None;
        while let Some(next) = f.neighbors(cur).find(|&u| Some(u) != prev) {
            walk.push(next);
            seen.insert(next);
            prev = Some(cur);
            cur = next;
        }
        let hits: Vec<VertexId> = walk.iter().copied().filter(|v| x.contains(v)).collect();
        if hits.is_empty() {
            continue;
        }
        if walk.len() == 1 {
            elems.push(SmElem::Single(start));
            continue;
        }
        if !x.contains(&walk[0]) || !x.contains(walk.last().unwrap()) {
            return None;
        }
        for w in hits.windows(2) {
            elems.push(SmElem::pair(w[0], w[1]));
        }
    }
    // Any vertex still unseen sits on a cycle: every path component was
    // consumed from its degree-≤1 endpoint.
    if f.vertices().any(|v| !seen.contains(&v)) {
        return None;
    }
    SemiMatching::from_elems(elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sm(elems: &[SmElem]) -> SemiMatching {
        SemiMatching::from_elems(elems.iter().copied()).unwrap()
    }

    #[test]
    fn validation_rejects_non_forests() {
        use SmElem::*;
        assert!(SemiMatching::from_elems([Pair(1, 1)]).is_none());
        assert!(SemiMatching::from_elems([Single(1), Pair(1, 2)]).is_none());
        // Degree three.
        assert!(SemiMatching::from_elems([Pair(1, 2), Pair(1, 3), Pair(1, 4)]).is_none());
        // Triangle.
        assert!(SemiMatching::from_elems([Pair(1, 2), Pair(2, 3), Pair(1, 3)]).is_none());
        // A path plus covered singletons is fine.
        assert!(SemiMatching::from_elems([Pair(1, 2), Pair(2, 3), Single(9)]).is_some());
    }

    #[test]
    fn exactly_two_semi_matchings_on_a_pair() {
        // Every semi-matching over {a,b}: either both isolated or matched.
        let a = sm(&[SmElem::Single(1), SmElem::Single(2)]);
        let b = sm(&[SmElem::pair(1, 2)]);
        assert_ne!(a, b);
        let all: Vec<SemiMatching> = [
            SemiMatching::from_elems([SmElem::Single(1), SmElem::Single(2)]),
            SemiMatching::from_elems([SmElem::Pair(1, 2)]),
            SemiMatching::from_elems([SmElem::Single(1), SmElem::Pair(1, 2)]),
        ]
        .into_iter()
        .flatten()
        .filter(|m| m.support() == [1, 2].into_iter().collect())
        .collect();
        assert_eq!(all.len(), 2);
    }

    #[test]
    fn rem_restores_uncovered_partners() {
        let m = sm(&[SmElem::pair(1, 5), SmElem::pair(5, 2)]);
        assert_eq!(sm_rem(&m, 5).unwrap(), sm(&[SmElem::Single(1), SmElem::Single(2)]));

        let m = sm(&[SmElem::Single(5)]);
        assert_eq!(sm_rem(&m, 5).unwrap(), SemiMatching::default());

        // A partner still covered elsewhere is not restored as a singleton.
        let m = sm(&[SmElem::pair(1, 5), SmElem::pair(1, 2)]);
        assert_eq!(sm_rem(&m, 5).unwrap(), sm(&[SmElem::pair(1, 2)]));

        assert!(sm_rem(&m, 9).is_err());
    }

    #[test]
    fn merge_predecessors_split_each_pair() {
        let m = sm(&[SmElem::pair(1, 2)]);
        let preds = sm_forget_predecessors(&m, 5);
        assert_eq!(preds, vec![sm(&[SmElem::pair(1, 5), SmElem::pair(2, 5)])]);

        let none = sm_forget_predecessors(&sm(&[SmElem::Single(1), SmElem::Single(2)]), 5);
        assert!(none.is_empty());

        for pred in &preds {
            assert_eq!(sm_merge_out(pred, 5).unwrap(), m);
        }
        // Merge-out declines singletons and endpoints.
        assert!(sm_merge_out(&sm(&[SmElem::Single(5)]), 5).is_none());
        assert!(sm_merge_out(&sm(&[SmElem::pair(1, 5)]), 5).is_none());
    }

    #[test]
    fn rem_predecessors_cover_all_attachments() {
        let m = sm(&[SmElem::Single(1), SmElem::Single(2)]);
        let preds = sm_rem_predecessors(&m, 5);
        // v isolated; v–1; v–2; 1–v–2.
        assert_eq!(preds.len(), 4);
        assert!(preds.contains(&sm(&[SmElem::Single(1), SmElem::Single(2), SmElem::Single(5)])));
        assert!(preds.contains(&sm(&[SmElem::pair(1, 5), SmElem::Single(2)])));
        assert!(preds.contains(&sm(&[SmElem::pair(1, 5), SmElem::pair(2, 5)])));

        // Attaching both ends of an existing pair would close a cycle; only
        // the chain extensions survive.
        let m = sm(&[SmElem::pair(1, 2)]);
        let preds = sm_rem_predecessors(&m, 5);
        assert_eq!(preds.len(), 3);
        assert!(!preds.iter().any(|p| p.pairs_at(5).len() == 2));
    }

    #[test]
    fn xi_enumerates_ordered_bipartitions() {
        assert_eq!(sm_xi(&SemiMatching::default()).len(), 1);
        let m = sm(&[SmElem::pair(1, 2)]);
        assert_eq!(sm_xi(&m).len(), 2);
        let m2 = sm(&[SmElem::pair(1, 2), SmElem::Single(3)]);
        let splits = sm_xi(&m2);
        assert_eq!(splits.len(), 4);
        for (a, b) in &splits {
            assert_eq!(a.len() + b.len(), 2);
        }
    }

    #[test]
    fn forest_signatures() {
        let mut g = Graph::with_vertices(0..5);
        for (u, v) in [(0, 2), (2, 1), (0, 1), (3, 4)] {
            g.add_edge(u, v);
        }
        let x: BTreeSet<VertexId> = [0, 1].into_iter().collect();

        // Two isolated terminals.
        let f = Graph::with_vertices([0, 1]);
        assert_eq!(
            sig_of_forest(&g, &x, &f).unwrap(),
            sm(&[SmElem::Single(0), SmElem::Single(1)])
        );

        // Path 0–2–1 compresses to the pair {0,1}.
        let mut f = Graph::with_vertices([0, 1, 2]);
        f.add_edge(0, 2);
        f.add_edge(2, 1);
        assert_eq!(sig_of_forest(&g, &x, &f).unwrap(), sm(&[SmElem::pair(0, 1)]));

        // Dangling segment: 0–2 ends outside X.
        let mut f = Graph::with_vertices([0, 2]);
        f.add_edge(0, 2);
        assert!(sig_of_forest(&g, &x, &f).is_none());

        // A component avoiding X entirely is ignored.
        let mut f = Graph::with_vertices([0, 1, 3, 4]);
        f.add_edge(3, 4);
        assert_eq!(
            sig_of_forest(&g, &x, &f).unwrap(),
            sm(&[SmElem::Single(0), SmElem::Single(1)])
        );

        // Not a subgraph.
        let mut f = Graph::with_vertices([0, 3]);
        f.add_edge(0, 3);
        assert!(sig_of_forest(&g, &x, &f).is_none());

        // Cycles are not linear forests.
        let mut f = Graph::with_vertices([0, 1, 2]);
        for (u, v) in [(0, 2), (2, 1), (0, 1)] {
            f.add_edge(u, v);
        }
        assert!(sig_of_forest(&g, &x, &f).is_none());
    }

    #[test]
    fn signature_tracks_interior_bag_vertices() {
        // Path 0–2–3–1 with X = {0,1,3}: consecutive X-hits along the walk
        // give the pairs {0,3} and {3,1}.
        let mut g = Graph::with_vertices(0..4);
        for (u, v) in [(0, 2), (2, 3), (3, 1)] {
            g.add_edge(u, v);
        }
        let x: BTreeSet<VertexId> = [0, 1, 3].into_iter().collect();
        let mut f = Graph::with_vertices(0..4);
        for (u, v) in [(0, 2), (2, 3), (3, 1)] {
            f.add_edge(u, v);
        }
        assert_eq!(
            sig_of_forest(&g, &x, &f).unwrap(),
            sm(&[SmElem::pair(0, 3), SmElem::pair(1, 3)])
        );
    }
}
