//! Walls: elementary and subdivided wall models, layers, compasses, and
//! validation.
//!
//! A height-r wall (r odd ≥ 3) is derived from the 2r×r grid: all horizontal
//! edges, vertical edges on every other column (parity bit selects which),
//! and the two degree-one corners trimmed. A model maps every position of
//! that pattern to a host vertex and every pattern edge to the host path
//! realizing it (internal vertices only), so subdivided walls and walls
//! embedded in larger graphs share one representation.
//!
//! Peeling the outermost layer of a wall yields a smaller wall of *opposite*
//! brick parity, which is why the parity bit exists: subwalls anchored at
//! odd offsets are mirror-phase walls and every helper here accepts both.

mod find;
mod packing;

pub use find::{find_wall, FindWall};
pub use packing::{equal_rank_packing, f_height, grid_packing, WallPacking};
pub(crate) use packing::ceil_sqrt;

use crate::error::Error;
use crate::graph::Graph;
use crate::matroid::LinearMatroid;
use crate::{Result, VertexId};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Position in the wall pattern: (column, row), both 1-based; columns run
/// 1..=2·height, rows 1..=height.
pub type WallPos = (u16, u16);

/// Pattern edge with endpoints in ascending order.
pub type WallEdge = (WallPos, WallPos);

fn ekey(a: WallPos, b: WallPos) -> WallEdge {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// The two degree-one corners removed from the 2r×r pattern.
pub fn trimmed_corners(r: u32, parity: u8) -> [WallPos; 2] {
    let w = (2 * r) as u16;
    let h = r as u16;
    if parity == 0 {
        [(w, 1), (1, h)]
    } else {
        [(1, 1), (w, h)]
    }
}

/// All pattern positions of a height-r wall with the given brick parity.
pub fn pattern_vertices(r: u32, parity: u8) -> BTreeSet<WallPos> {
    let trimmed = trimmed_corners(r, parity);
    let mut out = BTreeSet::new();
    for x in 1..=(2 * r) as u16 {
        for y in 1..=r as u16 {
            if !trimmed.contains(&(x, y)) {
                out.insert((x, y));
            }
        }
    }
    out
}

/// All pattern edges: every horizontal neighbor pair, vertical pairs
/// (x,y)-(x,y+1) exactly when x+y ≡ parity (mod 2), corners trimmed.
pub fn pattern_edges(r: u32, parity: u8) -> BTreeSet<WallEdge> {
    let verts = pattern_vertices(r, parity);
    let mut out = BTreeSet::new();
    for &(x, y) in &verts {
        let right = (x + 1, y);
        if verts.contains(&right) {
            out.insert(((x, y), right));
        }
        let down = (x, y + 1);
        if (x + y) % 2 == parity as u16 % 2 && verts.contains(&down) {
            out.insert(((x, y), down));
        }
    }
    out
}

/// Orbit decomposition of the pattern graph's face walks, using the
/// geometric rotation (east, north, west, south) at every position. Faces of
/// these grid-drawn patterns are simple cycles; the longest orbit is the
/// outer boundary.
fn geo_faces(verts: &BTreeSet<WallPos>, edges: &BTreeSet<WallEdge>) -> Vec<Vec<WallPos>> {
    let mut adj: BTreeMap<WallPos, Vec<WallPos>> = BTreeMap::new();
    for &v in verts {
        let (x, y) = v;
        let mut rot = Vec::new();
        let east = (x + 1, y);
        let north = (x, y.wrapping_sub(1));
        let west = (x.wrapping_sub(1), y);
        let south = (x, y + 1);
        for n in [east, north, west, south] {
            if n.0 >= 1 && n.1 >= 1 && edges.contains(&ekey(v, n)) {
                rot.push(n);
            }
        }
        adj.insert(v, rot);
    }
    let mut darts: BTreeSet<(WallPos, WallPos)> = BTreeSet::new();
    for &(a, b) in edges {
        darts.insert((a, b));
        darts.insert((b, a));
    }
    let mut faces = Vec::new();
    let mut used: BTreeSet<(WallPos, WallPos)> = BTreeSet::new();
    for &start in &darts {
        if used.contains(&start) {
            continue;
        }
        let mut walk = Vec::new();
        let mut dart = start;
        loop {
            used.insert(dart);
            walk.push(dart.0);
            let (u, v) = dart;
            let rot = &adj[&v];
            let pos = rot.iter().position(|&w| w == u).expect("reverse dart in rotation");
            let next = rot[(pos + 1) % rot.len()];
            dart = (v, next);
            if dart == start {
                break;
            }
        }
        faces.push(walk);
    }
    faces
}

/// One peeling step: identify the outer boundary cycle, remove it, and trim
/// degree ≤ 1 leftovers. Returns the boundary in cyclic order.
fn peel_once(
    verts: &mut BTreeSet<WallPos>,
    edges: &mut BTreeSet<WallEdge>,
) -> Vec<WallPos> {
    let faces = geo_faces(verts, edges);
    let outer = faces
        .into_iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b[0].cmp(&a[0])))
        .expect("nonempty pattern");
    let distinct: BTreeSet<WallPos> = outer.iter().copied().collect();
    debug_assert_eq!(distinct.len(), outer.len(), "outer face must be a simple cycle");
    for v in &distinct {
        verts.remove(v);
    }
    edges.retain(|&(a, b)| verts.contains(&a) && verts.contains(&b));
    loop {
        let mut deg: BTreeMap<WallPos, usize> = verts.iter().map(|&v| (v, 0)).collect();
        for &(a, b) in edges.iter() {
            *deg.get_mut(&a).unwrap() += 1;
            *deg.get_mut(&b).unwrap() += 1;
        }
        let drop: Vec<WallPos> =
            deg.iter().filter(|&(_, &d)| d <= 1).map(|(&v, _)| v).collect();
        if drop.is_empty() {
            break;
        }
        for v in &drop {
            verts.remove(v);
        }
        edges.retain(|&(a, b)| verts.contains(&a) && verts.contains(&b));
    }
    // Canonical start: the minimal position.
    let min_idx = outer
        .iter()
        .enumerate()
        .min_by_key(|&(_, v)| v)
        .map(|(i, _)| i)
        .unwrap();
    let mut cycle = outer[min_idx..].to_vec();
    cycle.extend_from_slice(&outer[..min_idx]);
    cycle
}

/// The ⌊r/2⌋ layer cycles of the height-r pattern, outermost first, each in
/// cyclic order starting at its minimal position.
pub fn pattern_layers(r: u32, parity: u8) -> Vec<Vec<WallPos>> {
    let mut verts = pattern_vertices(r, parity);
    let mut edges = pattern_edges(r, parity);
    let mut layers = Vec::new();
    for _ in 0..(r / 2) {
        layers.push(peel_once(&mut verts, &mut edges));
    }
    debug_assert!(verts.is_empty(), "pattern fully consumed by its layers");
    layers
}

/// Pattern positions remaining after peeling the given number of layers
/// (0 peels → the full pattern).
pub fn pattern_after_peels(r: u32, parity: u8, peels: u32) -> BTreeSet<WallPos> {
    let mut verts = pattern_vertices(r, parity);
    let mut edges = pattern_edges(r, parity);
    for _ in 0..peels.min(r / 2) {
        peel_once(&mut verts, &mut edges);
    }
    verts
}

/// A wall realized in a host graph: every pattern position is mapped to a
/// host vertex, and every pattern edge carries the internal vertices of the
/// host path realizing it (empty for an unsubdivided edge). The realized
/// subgraph is a subdivision of the pattern wall.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallModel {
    pub height: u32,
    /// Brick parity: vertical pattern edges sit at x+y ≡ parity (mod 2).
    pub parity: u8,
    pub branch: BTreeMap<WallPos, VertexId>,
    pub paths: BTreeMap<WallEdge, Vec<VertexId>>,
}

impl WallModel {
    /// Host path realizing a pattern edge, endpoints included, oriented a→b.
    pub fn host_path(&self, a: WallPos, b: WallPos) -> Option<Vec<VertexId>> {
        let key = ekey(a, b);
        let internals = self.paths.get(&key)?;
        let mut out = vec![*self.branch.get(&a)?];
        if a <= b {
            out.extend(internals.iter().copied());
        } else {
            out.extend(internals.iter().rev().copied());
        }
        out.push(*self.branch.get(&b)?);
        Some(out)
    }

    /// Every host vertex of the wall (branch images and path internals).
    pub fn host_vertices(&self) -> BTreeSet<VertexId> {
        let mut out: BTreeSet<VertexId> = self.branch.values().copied().collect();
        for internals in self.paths.values() {
            out.extend(internals.iter().copied());
        }
        out
    }

    /// Layer cycles in the host graph, outermost first, subdivision vertices
    /// included.
    pub fn host_layers(&self) -> Vec<Vec<VertexId>> {
        pattern_layers(self.height, self.parity)
            .into_iter()
            .map(|cycle| self.host_cycle(&cycle))
            .collect()
    }

    fn host_cycle(&self, cycle: &[WallPos]) -> Vec<VertexId> {
        let mut out = Vec::new();
        for i in 0..cycle.len() {
            let a = cycle[i];
            let b = cycle[(i + 1) % cycle.len()];
            let path = self.host_path(a, b).expect("layer edge realized");
            out.extend_from_slice(&path[..path.len() - 1]);
        }
        out
    }

    /// Host vertices of the wall remaining after peeling `peels` layers
    /// (the wall whose perimeter is layer `peels + 1`).
    pub fn interior_after(&self, peels: u32) -> BTreeSet<VertexId> {
        let verts = pattern_after_peels(self.height, self.parity, peels);
        let mut out = BTreeSet::new();
        for &v in &verts {
            out.insert(self.branch[&v]);
        }
        for (&(a, b), internals) in &self.paths {
            if verts.contains(&a) && verts.contains(&b) {
                out.extend(internals.iter().copied());
            }
        }
        out
    }

    /// The subwall of height h anchored with its pattern shifted by
    /// (dx, dy); its parity flips when dx+dy is odd.
    pub fn subwall(&self, dx: u16, dy: u16, h: u32) -> Result<WallModel> {
        if h % 2 == 0 || h < 3 || h > self.height {
            return Err(Error::InvalidInstance(format!(
                "subwall height {h} invalid for wall of height {}",
                self.height
            )));
        }
        let parity = ((self.parity as u16 + dx + dy) % 2) as u8;
        let mut branch = BTreeMap::new();
        for (x, y) in pattern_vertices(h, parity) {
            let global = (x + dx, y + dy);
            let host = self.branch.get(&global).ok_or_else(|| {
                Error::InvalidInstance(format!(
                    "subwall position {global:?} missing from wall"
                ))
            })?;
            branch.insert((x, y), *host);
        }
        let mut paths = BTreeMap::new();
        for (a, b) in pattern_edges(h, parity) {
            let global = ((a.0 + dx, a.1 + dy), (b.0 + dx, b.1 + dy));
            let internals = self.paths.get(&global).ok_or_else(|| {
                Error::InvalidInstance(format!(
                    "subwall edge {global:?} missing from wall"
                ))
            })?;
            paths.insert((a, b), internals.clone());
        }
        Ok(WallModel { height: h, parity, branch, paths })
    }

    /// A designated interior vertex: the minimal host id among the
    /// degree-three pattern positions of the innermost layer.
    pub fn central_vertex(&self) -> VertexId {
        let layers = pattern_layers(self.height, self.parity);
        let innermost = layers.last().expect("wall has a layer");
        let edges = pattern_edges(self.height, self.parity);
        let mut deg: BTreeMap<WallPos, usize> = BTreeMap::new();
        for &(a, b) in &edges {
            *deg.entry(a).or_insert(0) += 1;
            *deg.entry(b).or_insert(0) += 1;
        }
        innermost
            .iter()
            .filter(|p| deg.get(p) == Some(&3))
            .map(|p| self.branch[p])
            .min()
            .expect("innermost layer has branch vertices")
    }
}

/// Build the elementary height-r wall as its own host graph, vertices
/// numbered row-major from zero.
pub fn build_elementary_wall(r: u32) -> Result<(Graph, WallModel)> {
    if r % 2 == 0 || r < 3 {
        return Err(Error::InvalidInstance(format!(
            "wall height must be odd and at least 3, got {r}"
        )));
    }
    let verts = pattern_vertices(r, 0);
    let mut by_row: Vec<WallPos> = verts.iter().copied().collect();
    by_row.sort_by_key(|&(x, y)| (y, x));
    let branch: BTreeMap<WallPos, VertexId> = by_row
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i as VertexId))
        .collect();
    let mut g = Graph::new();
    for &p in &verts {
        g.add_vertex(branch[&p]);
    }
    let mut paths = BTreeMap::new();
    for (a, b) in pattern_edges(r, 0) {
        g.add_edge(branch[&a], branch[&b]);
        paths.insert((a, b), Vec::new());
    }
    let model = WallModel { height: r, parity: 0, branch, paths };
    Ok((g, model))
}

/// Structural violations of a wall model against its host graph; empty means
/// the model is valid.
pub fn wall_violations(g: &Graph, w: &WallModel) -> Vec<String> {
    let mut out = Vec::new();
    if w.height % 2 == 0 || w.height < 3 {
        out.push(format!("height {} is not an odd number >= 3", w.height));
        return out;
    }
    if w.parity > 1 {
        out.push(format!("parity {} is not 0 or 1", w.parity));
        return out;
    }
    let verts = pattern_vertices(w.height, w.parity);
    for &p in &verts {
        if !w.branch.contains_key(&p) {
            out.push(format!("pattern position {p:?} unmapped"));
        }
    }
    for p in w.branch.keys() {
        if !verts.contains(p) {
            out.push(format!("extra branch entry {p:?}"));
        }
    }
    if !out.is_empty() {
        return out;
    }
    let edges = pattern_edges(w.height, w.parity);
    for e in &edges {
        if !w.paths.contains_key(e) {
            out.push(format!("edge path missing for {e:?}"));
        }
    }
    for e in w.paths.keys() {
        if !edges.contains(e) {
            out.push(format!("extra edge path {e:?}"));
        }
    }
    if !out.is_empty() {
        return out;
    }
    // Host-side checks: vertices exist, paths are real paths, all host
    // vertices distinct across branch images and path internals.
    let mut seen: BTreeMap<VertexId, String> = BTreeMap::new();
    for (&p, &v) in &w.branch {
        if !g.has_vertex(v) {
            out.push(format!("host vertex {v} for {p:?} not in graph"));
        }
        if let Some(prev) = seen.insert(v, format!("{p:?}")) {
            out.push(format!("host vertex {v} used by {prev} and {p:?}"));
        }
    }
    for (&(a, b), internals) in &w.paths {
        for &v in internals {
            if !g.has_vertex(v) {
                out.push(format!("internal vertex {v} of {:?} not in graph", (a, b)));
            }
            if let Some(prev) = seen.insert(v, format!("{:?}", (a, b))) {
                out.push(format!("host vertex {v} used by {prev} and {:?}", (a, b)));
            }
        }
        let path = w.host_path(a, b).expect("totality checked");
        for pair in path.windows(2) {
            if !g.has_edge(pair[0], pair[1]) {
                out.push(format!(
                    "edge path missing host edge {}-{} for {:?}",
                    pair[0],
                    pair[1],
                    (a, b)
                ));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    // Perimeter must realize a host cycle.
    let perim = &w.host_layers()[0];
    let distinct: BTreeSet<VertexId> = perim.iter().copied().collect();
    let mut cycle_ok = distinct.len() == perim.len() && perim.len() >= 3;
    if cycle_ok {
        for i in 0..perim.len() {
            if !g.has_edge(perim[i], perim[(i + 1) % perim.len()]) {
                cycle_ok = false;
            }
        }
    }
    if !cycle_ok {
        out.push("perimeter not a cycle".into());
    }
    out
}

/// Validate a wall model, collapsing violations into one error.
pub fn validate_wall(g: &Graph, w: &WallModel) -> Result<()> {
    let violations = wall_violations(g, w);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidInstance(format!(
            "invalid wall: {}",
            violations.join("; ")
        )))
    }
}

/// The compass of a wall in its host graph: the perimeter plus the connected
/// component of G minus the perimeter that contains the wall's interior.
pub fn compass_of(g: &Graph, w: &WallModel) -> Result<BTreeSet<VertexId>> {
    validate_wall(g, w)?;
    let perim: BTreeSet<VertexId> = w.host_layers()[0].iter().copied().collect();
    let inside: BTreeSet<VertexId> = w
        .host_vertices()
        .into_iter()
        .filter(|v| !perim.contains(v))
        .collect();
    let allowed: BTreeSet<VertexId> =
        g.vertices().filter(|v| !perim.contains(v)).collect();
    let seed = *inside.iter().next().expect("wall of height >= 3 has interior");
    let mut component: BTreeSet<VertexId> = BTreeSet::new();
    let mut queue = std::collections::VecDeque::from([seed]);
    component.insert(seed);
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if allowed.contains(&u) && component.insert(u) {
                queue.push_back(u);
            }
        }
    }
    for v in &inside {
        if !component.contains(v) {
            return Err(Error::InvalidInstance(
                "wall interior is not connected off the perimeter".into(),
            ));
        }
    }
    let mut out = component;
    out.extend(perim.iter().copied());
    Ok(out)
}

/// Rank of the compass vertex set in the matroid.
pub fn rho(g: &Graph, m: &LinearMatroid, w: &WallModel) -> Result<usize> {
    let compass = compass_of(g, w)?;
    for v in &compass {
        if !m.contains(*v) {
            return Err(Error::InvalidInstance(format!(
                "compass vertex {v} is not a matroid element"
            )));
        }
    }
    let subset: Vec<VertexId> = compass.into_iter().collect();
    Ok(m.rank(&subset))
}

/// Subdivide wall edges in the host graph: for each pattern edge with a
/// positive count, that many fresh vertices are spliced into the first host
/// edge of its realizing path. Returns the rewritten graph and model.
pub fn subdivide_wall(
    g: &Graph,
    w: &WallModel,
    scheme: &BTreeMap<WallEdge, usize>,
) -> Result<(Graph, WallModel)> {
    let edges = pattern_edges(w.height, w.parity);
    for e in scheme.keys() {
        if !edges.contains(e) {
            return Err(Error::InvalidInstance(format!(
                "subdivision scheme names unknown edge {e:?}"
            )));
        }
    }
    let mut out_g = g.clone();
    let mut out_w = w.clone();
    let mut next: VertexId =
        g.vertices().max().map_or(0, |v| v + 1);
    for (&edge, &count) in scheme {
        if count == 0 {
            continue;
        }
        let (a, b) = edge;
        let path = w.host_path(a, b).expect("validated edge");
        let (h0, h1) = (path[0], path[1]);
        out_g.remove_edge(h0, h1);
        let fresh: Vec<VertexId> = (0..count)
            .map(|_| {
                let id = next;
                next += 1;
                id
            })
            .collect();
        let mut prev = h0;
        for &n in &fresh {
            out_g.add_edge(prev, n);
            prev = n;
        }
        out_g.add_edge(prev, h1);
        let internals = out_w.paths.get_mut(&edge).expect("validated edge");
        let mut new_internals = fresh;
        new_internals.extend(internals.iter().copied());
        *internals = new_internals;
    }
    Ok((out_g, out_w))
}

/// Seed-deterministic subdivision counts, up to `max_extra` per edge.
pub fn random_scheme(
    w: &WallModel,
    max_extra: usize,
    seed: u64,
) -> BTreeMap<WallEdge, usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pattern_edges(w.height, w.parity)
        .into_iter()
        .map(|e| (e, rng.gen_range(0..=max_extra)))
        .collect()
}
