//! Wall discovery: certificate validation, the small-treewidth escape, and
//! a grid recognizer for carved hosts.
//!
//! Completeness is deliberately relaxed: a validated answer or an honest
//! `Incomplete` are the only outcomes. Research-grade wall extraction is out
//! of scope; instances built by this suite carry certificates or are exact
//! grids, where discovery is complete.

use super::{pattern_edges, pattern_vertices, wall_violations, WallModel};
use crate::error::Error;
use crate::graph::{planar_embed, Graph};
use crate::td::{treewidth_decompose, TreeDecomposition, TwResult};
use crate::{Result, VertexId};
use std::collections::{BTreeMap, VecDeque};

/// Outcome of wall discovery.
#[derive(Debug, Clone)]
pub enum FindWall {
    /// A validated wall of height ≥ the requested q.
    Wall(WallModel),
    /// A validated decomposition of width ≤ 9q.
    SmallTw(TreeDecomposition),
}

/// Size cap for running the full planarity test; larger graphs get only the
/// edge-count screen.
const EMBED_CAP: usize = 400;

/// Find a wall of height at least q, or certify small treewidth. Attempts,
/// in order: the supplied certificate, a width-9q decomposition, and exact
/// grid recognition. Anything else is an honest abstention.
pub fn find_wall(g: &Graph, q: u32, cert: Option<&WallModel>) -> Result<FindWall> {
    if q % 2 == 0 || q < 3 {
        return Err(Error::InvalidInstance(format!(
            "wall height request must be odd and >= 3, got {q}"
        )));
    }
    let n = g.num_vertices();
    let m = g.num_edges();
    if n >= 3 && m > 3 * n - 6 {
        return Err(Error::NotPlanar("edge count exceeds the planar bound".into()));
    }
    if n <= EMBED_CAP && planar_embed(g).is_err() {
        return Err(Error::NotPlanar("input graph is not planar".into()));
    }
    if let Some(c) = cert {
        if c.height >= q && wall_violations(g, c).is_empty() {
            return Ok(FindWall::Wall(c.clone()));
        }
    }
    let w = (9 * q as usize - 1) / 2;
    if let TwResult::Decomposition(td) = treewidth_decompose(g, w) {
        debug_assert!(td.width() <= 9 * q as usize);
        return Ok(FindWall::SmallTw(td));
    }
    if let Some(model) = sniff_grid_wall(g, q) {
        debug_assert!(wall_violations(g, &model).is_empty());
        return Ok(FindWall::Wall(model));
    }
    Err(Error::Incomplete(
        "no wall certificate, treewidth not settled small, and the host is \
         not an exact grid"
            .into(),
    ))
}

fn bfs_dist(g: &Graph, start: VertexId) -> BTreeMap<VertexId, usize> {
    let mut dist = BTreeMap::new();
    dist.insert(start, 0usize);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for u in g.neighbors(v) {
            if !dist.contains_key(&u) {
                dist.insert(u, d + 1);
                queue.push_back(u);
            }
        }
    }
    dist
}

/// Recognize an exact W×H grid graph and carve an elementary height-q wall
/// out of its top-left corner. Returns None unless the host is precisely a
/// grid large enough to hold the wall.
fn sniff_grid_wall(g: &Graph, q: u32) -> Option<WallModel> {
    let n = g.num_vertices();
    if n < 6 {
        return None;
    }
    let mut corners = Vec::new();
    for v in g.vertices() {
        match g.degree(v) {
            2 => corners.push(v),
            3 | 4 => {}
            _ => return None,
        }
    }
    if corners.len() != 4 {
        return None;
    }
    let corner = corners[0];
    let n2 = g.neighbors(corner).nth(1)?;
    let d0 = bfs_dist(g, corner);
    let d2 = bfs_dist(g, n2);
    if d0.len() != n || d2.len() != n {
        return None;
    }
    // Row 0 runs from the corner along the n1 axis: exactly the vertices
    // that n2 (one step up the other axis) sees one unit farther away.
    let row0: Vec<VertexId> =
        g.vertices().filter(|v| d2[v] == d0[v] + 1).collect();
    let mut dy: BTreeMap<VertexId, usize> = row0.iter().map(|&v| (v, 0)).collect();
    let mut queue: VecDeque<VertexId> = row0.into_iter().collect();
    while let Some(v) = queue.pop_front() {
        let d = dy[&v];
        for u in g.neighbors(v) {
            if !dy.contains_key(&u) {
                dy.insert(u, d + 1);
                queue.push_back(u);
            }
        }
    }
    if dy.len() != n {
        return None;
    }
    let mut coord: BTreeMap<VertexId, (usize, usize)> = BTreeMap::new();
    let mut at: BTreeMap<(usize, usize), VertexId> = BTreeMap::new();
    let mut max_x = 0usize;
    let mut max_y = 0usize;
    for v in g.vertices() {
        let y = dy[&v];
        let x = d0[&v].checked_sub(y)?;
        if at.insert((x, y), v).is_some() {
            return None;
        }
        coord.insert(v, (x, y));
        max_x = max_x.max(x);
        max_y = max_y.max(y);
    }
    let (w, h) = (max_x + 1, max_y + 1);
    if w * h != n {
        return None;
    }
    for (a, b) in g.edges() {
        let (ax, ay) = coord[&a];
        let (bx, by) = coord[&b];
        if ax.abs_diff(bx) + ay.abs_diff(by) != 1 {
            return None;
        }
    }
    if g.num_edges() != 2 * w * h - w - h {
        return None;
    }
    // Orient so the wall fits: pattern columns need 2q, rows need q.
    let (cols, rows) = (2 * q as usize, q as usize);
    let lookup: Box<dyn Fn(usize, usize) -> VertexId> = if w >= cols && h >= rows {
        Box::new(move |x, y| at[&(x, y)])
    } else if h >= cols && w >= rows {
        let at2 = at.clone();
        Box::new(move |x, y| at2[&(y, x)])
    } else {
        return None;
    };
    let mut branch = BTreeMap::new();
    for (px, py) in pattern_vertices(q, 0) {
        branch.insert((px, py), lookup(px as usize - 1, py as usize - 1));
    }
    let paths = pattern_edges(q, 0).into_iter().map(|e| (e, Vec::new())).collect();
    Some(WallModel { height: q, parity: 0, branch, paths })
}
