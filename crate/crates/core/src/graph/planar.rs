//! Planarity testing and combinatorial embedding by incremental face
//! splitting (the classical Demoucron–Malgrange–Pertuiset scheme), run per
//! biconnected block and glued at cut vertices.
//!
//! An embedding is a rotation system: the cyclic order of neighbors around
//! each vertex. Faces are recovered by dart tracing — the dart after (u, v)
//! is (v, w) where w follows u in the rotation at v — and planarity of the
//! result is certified by Euler's formula per connected component.

use super::blocks::biconnected_blocks;
use super::Graph;
use crate::error::Error;
use crate::{Result, VertexId};
use std::collections::{BTreeMap, BTreeSet};

/// A combinatorial embedding of a planar graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    /// Cyclic neighbor order around each vertex (every vertex has an entry).
    pub rotation: BTreeMap<VertexId, Vec<VertexId>>,
    /// Faces as closed directed walks (vertex sequences). Isolated vertices
    /// contribute a single one-vertex face.
    pub faces: Vec<Vec<VertexId>>,
    /// Number of connected components.
    pub components: usize,
}

impl Embedding {
    /// Face count with the outer faces of all components identified, so that
    /// V - E + F = 1 + C.
    pub fn merged_face_count(&self) -> usize {
        self.faces.len() - self.components.saturating_sub(1)
    }
}

/// Compute a planar embedding, or report non-planarity.
pub fn planar_embed(g: &Graph) -> Result<Embedding> {
    let mut rotation: BTreeMap<VertexId, Vec<VertexId>> =
        g.vertices().map(|v| (v, Vec::new())).collect();
    for block in biconnected_blocks(g) {
        let bg = &block.graph;
        match bg.num_vertices() {
            0 => unreachable!("blocks are nonempty"),
            1 => {} // isolated vertex: empty rotation
            2 => {
                let vs: Vec<VertexId> = bg.vertices().collect();
                rotation.get_mut(&vs[0]).expect("vertex known").push(vs[1]);
                rotation.get_mut(&vs[1]).expect("vertex known").push(vs[0]);
            }
            _ => {
                let block_rot = embed_block(bg)?;
                for (v, mut order) in block_rot {
                    rotation.get_mut(&v).expect("vertex known").append(&mut order);
                }
            }
        }
    }
    let faces = trace_faces(g, &rotation);
    let components = g.components().len();
    let emb = Embedding { rotation, faces, components };
    validate_embedding(g, &emb)?;
    Ok(emb)
}

/// Check that `emb` is a planar embedding of `g`: rotations are permutations
/// of the adjacencies, faces are exactly the dart orbits of the rotation
/// system, and Euler's formula V - E + F = 2 holds on every component.
pub fn validate_embedding(g: &Graph, emb: &Embedding) -> Result<()> {
    let bad = |msg: String| Err(Error::NotPlanar(msg));
    if emb.rotation.len() != g.num_vertices() {
        return bad("rotation table size differs from vertex count".into());
    }
    for (&v, order) in &emb.rotation {
        let from_rot: BTreeSet<VertexId> = order.iter().copied().collect();
        let from_graph: BTreeSet<VertexId> = g.neighbors(v).collect();
        if from_rot != from_graph || from_rot.len() != order.len() {
            return bad(format!("rotation at {v} is not a permutation of its neighbors"));
        }
    }
    let traced = trace_faces(g, &emb.rotation);
    if traced != emb.faces {
        return bad("face list disagrees with dart tracing".into());
    }
    // Euler per component.
    let comps = g.components();
    if comps.len() != emb.components {
        return bad("component count mismatch".into());
    }
    let mut comp_of: BTreeMap<VertexId, usize> = BTreeMap::new();
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of.insert(v, i);
        }
    }
    let mut face_count = vec![0usize; comps.len()];
    for f in &emb.faces {
        let Some(&first) = f.first() else {
            return bad("empty face".into());
        };
        face_count[comp_of[&first]] += 1;
    }
    for (i, c) in comps.iter().enumerate() {
        let vi = c.len();
        let ei = g.induced(c).num_edges();
        let fi = face_count[i];
        if vi + fi != ei + 2 {
            return bad(format!(
                "Euler check failed on component {i}: V={vi} E={ei} F={fi}"
            ));
        }
    }
    Ok(())
}

/// Dart-orbit face tracing. Orbits start from the smallest unvisited dart,
/// so the face order is canonical. Isolated vertices yield one-vertex faces.
fn trace_faces(
    g: &Graph,
    rotation: &BTreeMap<VertexId, Vec<VertexId>>,
) -> Vec<Vec<VertexId>> {
    let mut faces = Vec::new();
    let mut visited: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let succ = |u: VertexId, v: VertexId| -> (VertexId, VertexId) {
        let order = &rotation[&v];
        let pos = order.iter().position(|&x| x == u).expect("dart endpoint in rotation");
        (v, order[(pos + 1) % order.len()])
    };
    let mut starts: Vec<(VertexId, VertexId)> = Vec::new();
    for v in g.vertices() {
        for w in g.neighbors(v) {
            starts.push((v, w));
        }
    }
    starts.sort_unstable();
    for start in starts {
        if visited.contains(&start) {
            continue;
        }
        let mut face = Vec::new();
        let mut cur = start;
        loop {
            visited.insert(cur);
            face.push(cur.0);
            cur = succ(cur.0, cur.1);
            if cur == start {
                break;
            }
        }
        faces.push(face);
    }
    for v in g.vertices() {
        if g.degree(v) == 0 {
            faces.push(vec![v]);
        }
    }
    faces
}

/// Fragments of the partially embedded block: either a chord between two
/// embedded vertices, or a connected component of the unembedded part
/// together with its attachment vertices.
enum Fragment {
    Chord(VertexId, VertexId),
    Comp { verts: BTreeSet<VertexId>, attachments: BTreeSet<VertexId> },
}

impl Fragment {
    fn attachments(&self) -> BTreeSet<VertexId> {
        match self {
            Fragment::Chord(u, v) => [*u, *v].into_iter().collect(),
            Fragment::Comp { attachments, .. } => attachments.clone(),
        }
    }
}

/// Embed one 2-connected block; returns its rotation system.
fn embed_block(bg: &Graph) -> Result<BTreeMap<VertexId, Vec<VertexId>>> {
    let cycle = find_cycle(bg).ok_or_else(|| {
        Error::NotPlanar("block of size ≥ 3 without a cycle".into())
    })?;
    // Faces as directed vertex cycles, orientations kept consistent.
    let mut faces: Vec<Vec<VertexId>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    let mut emb_v: BTreeSet<VertexId> = cycle.iter().copied().collect();
    let mut emb_e: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    let norm = |u: VertexId, v: VertexId| if u < v { (u, v) } else { (v, u) };
    for w in cycle.windows(2) {
        emb_e.insert(norm(w[0], w[1]));
    }
    emb_e.insert(norm(cycle[0], *cycle.last().expect("cycle nonempty")));

    let max_iters = bg.num_edges() + 2;
    for _ in 0..max_iters {
        if emb_e.len() == bg.num_edges() {
            break;
        }
        // Fragments, in deterministic construction order.
        let mut fragments: Vec<Fragment> = Vec::new();
        for (u, v) in bg.edges() {
            if emb_v.contains(&u) && emb_v.contains(&v) && !emb_e.contains(&norm(u, v)) {
                fragments.push(Fragment::Chord(u, v));
            }
        }
        let outside: BTreeSet<VertexId> =
            bg.vertices().filter(|v| !emb_v.contains(v)).collect();
        for comp in bg.induced(&outside).components() {
            let mut attachments = BTreeSet::new();
            for &x in &comp {
                for w in bg.neighbors(x) {
                    if emb_v.contains(&w) {
                        attachments.insert(w);
                    }
                }
            }
            fragments.push(Fragment::Comp { verts: comp, attachments });
        }
        debug_assert!(!fragments.is_empty(), "unembedded edges imply a fragment");

        // Admissible face indices per fragment; pick the most constrained.
        let admissible: Vec<Vec<usize>> = fragments
            .iter()
            .map(|f| {
                let att = f.attachments();
                faces
                    .iter()
                    .enumerate()
                    .filter(|(_, face)| att.iter().all(|a| face.contains(a)))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let (fi, _) = fragments
            .iter()
            .enumerate()
            .min_by_key(|&(i, _)| (admissible[i].len(), i))
            .expect("nonempty fragments");
        if admissible[fi].is_empty() {
            return Err(Error::NotPlanar(
                "a fragment has no admissible face".into(),
            ));
        }
        let face_idx = admissible[fi][0];

        // A path through the fragment between its two smallest attachments.
        let att: Vec<VertexId> = fragments[fi].attachments().into_iter().collect();
        debug_assert!(att.len() >= 2, "2-connected blocks leave ≥ 2 attachments");
        let path: Vec<VertexId> = match &fragments[fi] {
            Fragment::Chord(u, v) => vec![*u, *v],
            Fragment::Comp { verts, .. } => {
                let (a1, a2) = (att[0], att[1]);
                let mut allowed = verts.clone();
                allowed.insert(a1);
                allowed.insert(a2);
                let mut h = bg.induced(&allowed);
                h.remove_edge(a1, a2);
                h.shortest_path(a1, a2, None).ok_or_else(|| {
                    Error::NotPlanar("fragment path missing".into())
                })?
            }
        };

        // Split the chosen face by the path.
        let face = faces.remove(face_idx);
        let pi = face.iter().position(|&x| x == path[0]).expect("attachment on face");
        let pj = face
            .iter()
            .position(|&x| x == *path.last().expect("path nonempty"))
            .expect("attachment on face");
        let m = face.len();
        let mut seg1 = Vec::new(); // path[0] ... path[last] along the face
        let mut i = pi;
        loop {
            seg1.push(face[i]);
            if i == pj {
                break;
            }
            i = (i + 1) % m;
        }
        let mut seg2 = Vec::new(); // path[last] ... path[0] along the face
        let mut i = pj;
        loop {
            seg2.push(face[i]);
            if i == pi {
                break;
            }
            i = (i + 1) % m;
        }
        let interior: Vec<VertexId> = path[1..path.len() - 1].to_vec();
        let mut face1 = seg1;
        face1.extend(interior.iter().rev());
        let mut face2 = seg2;
        face2.extend(interior.iter());
        faces.push(face1);
        faces.push(face2);

        for &x in &interior {
            emb_v.insert(x);
        }
        for w in path.windows(2) {
            emb_e.insert(norm(w[0], w[1]));
        }
    }
    if emb_e.len() != bg.num_edges() {
        return Err(Error::NotPlanar("embedding loop failed to converge".into()));
    }

    // Faces → rotation: at each vertex, the dart successor map u ↦ w for
    // consecutive u, v, w on a face walk must close into one cycle per vertex.
    let mut succ: BTreeMap<VertexId, BTreeMap<VertexId, VertexId>> = BTreeMap::new();
    for face in &faces {
        let m = face.len();
        for i in 0..m {
            let u = face[i];
            let v = face[(i + 1) % m];
            let w = face[(i + 2) % m];
            succ.entry(v).or_default().insert(u, w);
        }
    }
    let mut rotation = BTreeMap::new();
    for v in bg.vertices() {
        let map = succ.get(&v).ok_or_else(|| {
            Error::NotPlanar(format!("vertex {v} missing from face walks"))
        })?;
        let first = *map.keys().next().expect("nonempty");
        let mut order = vec![first];
        let mut cur = map[&first];
        while cur != first {
            order.push(cur);
            cur = *map.get(&cur).ok_or_else(|| {
                Error::NotPlanar(format!("rotation at {v} does not close"))
            })?;
        }
        if order.len() != bg.degree(v) {
            return Err(Error::NotPlanar(format!(
                "rotation at {v} misses neighbors"
            )));
        }
        rotation.insert(v, order);
    }
    Ok(rotation)
}

/// Any simple cycle of a graph with minimum degree ≥ 2, via DFS back edge.
fn find_cycle(g: &Graph) -> Option<Vec<VertexId>> {
    let mut parent: BTreeMap<VertexId, Option<VertexId>> = BTreeMap::new();
    for root in g.vertices().collect::<Vec<_>>() {
        if parent.contains_key(&root) {
            continue;
        }
        parent.insert(root, None);
        let mut stack = vec![(root, g.neighbors(root).collect::<Vec<_>>(), 0usize)];
        let mut on_path: Vec<VertexId> = vec![root];
        let mut on_path_set: BTreeSet<VertexId> = [root].into_iter().collect();
        while let Some((v, nbrs, idx)) = stack.last_mut() {
            let v = *v;
            if *idx < nbrs.len() {
                let w = nbrs[*idx];
                *idx += 1;
                if parent[&v] == Some(w) {
                    continue;
                }
                if on_path_set.contains(&w) {
                    // Cycle: w ... v along the DFS path.
                    let start = on_path.iter().position(|&x| x == w).expect("on path");
                    return Some(on_path[start..].to_vec());
                }
                if !parent.contains_key(&w) {
                    parent.insert(w, Some(v));
                    stack.push((w, g.neighbors(w).collect(), 0));
                    on_path.push(w);
                    on_path_set.insert(w);
                }
            } else {
                stack.pop();
                let done = on_path.pop().expect("path tracks stack");
                on_path_set.remove(&done);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u32) -> Graph {
        let mut g = Graph::new();
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    fn k33() -> Graph {
        let mut g = Graph::new();
        for u in 0..3 {
            for v in 3..6 {
                g.add_edge(u, v);
            }
        }
        g
    }

    #[test]
    fn k4_has_four_faces() {
        let emb = planar_embed(&complete(4)).unwrap();
        assert_eq!(emb.faces.len(), 4);
        assert_eq!(emb.components, 1);
        assert_eq!(emb.merged_face_count(), 4);
    }

    #[test]
    fn k5_and_k33_rejected() {
        assert!(matches!(planar_embed(&complete(5)), Err(Error::NotPlanar(_))));
        assert!(matches!(planar_embed(&k33()), Err(Error::NotPlanar(_))));
    }

    #[test]
    fn cycle_two_faces() {
        let mut g = Graph::new();
        for v in 0..6 {
            g.add_edge(v, (v + 1) % 6);
        }
        let emb = planar_embed(&g).unwrap();
        assert_eq!(emb.faces.len(), 2);
    }

    #[test]
    fn tree_single_face() {
        let mut g = Graph::new();
        g.add_edge(0, 1);
        g.add_edge(1, 2);
        g.add_edge(1, 3);
        let emb = planar_embed(&g).unwrap();
        assert_eq!(emb.faces.len(), 1);
    }

    #[test]
    fn disjoint_triangles_shared_outer_face_count() {
        let mut g = Graph::new();
        for (u, v) in [(0, 1), (1, 2), (2, 0), (10, 11), (11, 12), (12, 10)] {
            g.add_edge(u, v);
        }
        let emb = planar_embed(&g).unwrap();
        assert_eq!(emb.components, 2);
        assert_eq!(emb.faces.len(), 4);
        // V - E + F = 1 + C with the outer face shared: 6 - 6 + 3 = 3.
        assert_eq!(emb.merged_face_count(), 3);
        assert_eq!(
            6 - 6 + emb.merged_face_count(),
            1 + emb.components
        );
    }

    #[test]
    fn edgeless_and_empty() {
        let emb = planar_embed(&Graph::with_vertices([4, 7])).unwrap();
        assert_eq!(emb.faces.len(), 2);
        assert_eq!(emb.components, 2);
        let empty = planar_embed(&Graph::new()).unwrap();
        assert_eq!(empty.faces.len(), 0);
        assert_eq!(empty.components, 0);
    }

    #[test]
    fn grid_embeds() {
        // 4 × 4 grid: V=16, E=24, so F must be 10.
        let mut g = Graph::new();
        let id = |x: u32, y: u32| y * 4 + x;
        for y in 0..4 {
            for x in 0..4 {
                if x + 1 < 4 {
                    g.add_edge(id(x, y), id(x + 1, y));
                }
                if y + 1 < 4 {
                    g.add_edge(id(x, y), id(x, y + 1));
                }
            }
        }
        let emb = planar_embed(&g).unwrap();
        assert_eq!(emb.faces.len(), 10);
        validate_embedding(&g, &emb).unwrap();
    }

    #[test]
    fn blocks_glued_at_cut_vertex() {
        // Two squares sharing vertex 0.
        let mut g = Graph::new();
        for (u, v) in [(0, 1), (1, 2), (2, 3), (3, 0)] {
            g.add_edge(u, v);
        }
        for (u, v) in [(0, 11), (11, 12), (12, 13), (13, 0)] {
            g.add_edge(u, v);
        }
        let emb = planar_embed(&g).unwrap();
        // V=7, E=8, C=1 → F=3.
        assert_eq!(emb.faces.len(), 3);
        validate_embedding(&g, &emb).unwrap();
    }

    #[test]
    fn validation_rejects_tampering() {
        let g = complete(4);
        let mut emb = planar_embed(&g).unwrap();
        emb.rotation.get_mut(&0).expect("has vertex 0").reverse();
        // Reversing one rotation (K4 rotations have length 3, so this swaps
        // two neighbors) changes the face structure; tracing disagrees.
        assert!(validate_embedding(&g, &emb).is_err());
    }

    #[test]
    fn planar_with_many_blocks_and_bridges() {
        let mut g = Graph::new();
        // Triangle - bridge - square - pendant.
        for (u, v) in [(0, 1), (1, 2), (2, 0), (2, 5), (5, 6), (6, 7), (7, 8), (8, 5), (8, 20)] {
            g.add_edge(u, v);
        }
        let emb = planar_embed(&g).unwrap();
        let v = g.num_vertices() as i64;
        let e = g.num_edges() as i64;
        let f = emb.faces.len() as i64;
        assert_eq!(v - e + f, 2);
    }
}
