//! Irrelevant-vertex reduction for planar frameworks.
//!
//! One reduction step either constructs a rank-certified (s,t)-path
//! outright, names a vertex whose deletion provably preserves the answer,
//! or hands back a small-width tree decomposition for the dynamic program.
//! [`reduce_loop`] applies steps until one of the terminal outcomes fires.

use crate::error::Error;
use crate::graph::{biconnected_split, vertex_disjoint_paths_capped, DisjointPaths, Graph};
use crate::instance::Framework;
use crate::td::TreeDecomposition;
use crate::wall::{
    ceil_sqrt, compass_of, equal_rank_packing, f_height, find_wall, grid_packing, FindWall,
    WallModel,
};
use crate::{GroundSubset, Result, VertexId};
use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// How the reduction thresholds are chosen: the full constant chain derived
/// from k, or explicit overrides for desk-scale experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReductionMode {
    /// Derive every constant from k. The resulting treewidth threshold is
    /// astronomically large even for k = 2, so this mode is for exactness,
    /// not for exercising the reduction branch.
    Paper,
    /// User-supplied slab width b, replacement count x, insulation z,
    /// packing height q, and wall height r.
    Relaxed { b: u32, x: u32, z: u32, q: u32, r: u32 },
}

impl ReductionMode {
    /// Small overrides that make every branch reachable on desk-size walls.
    pub fn relaxed_default() -> ReductionMode {
        ReductionMode::Relaxed { b: 1, x: 1, z: 1, q: 5, r: 13 }
    }
}

/// The evaluated reduction thresholds: the wall height r to look for, the
/// packed subwall height q, insulation z, replacement count x, slab width
/// b, and the treewidth threshold g = 36(r+1) under which the dynamic
/// program takes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionConstants {
    pub mode: ReductionMode,
    pub k: usize,
    pub b: u32,
    pub x: u32,
    pub z: u32,
    pub q: u32,
    pub r: u32,
    pub g: u32,
}

fn checked_u32(v: u128, what: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| Error::ConstantOverflow(format!("{what} exceeds u32")))
}

/// Evaluate the constant chain for k. Derived mode: b = 2k(k+2)+2k+1,
/// x = k+1, z = (k+1)·b, q = f(k−1, z, x, 3), r = 1+⌈√k⌉·(q+1),
/// g = 36(r+1); it needs k ≥ 2 (below that the problem is answered
/// directly, not by reduction). Relaxed mode passes the overrides through
/// after checking the parities the packing machinery needs: z, q, r odd
/// and q, r ≥ 3.
pub fn constants_for(k: usize, mode: ReductionMode) -> Result<ReductionConstants> {
    match mode {
        ReductionMode::Paper => {
            if k <= 1 {
                return Err(Error::Unsupported(
                    "the constant chain needs k >= 2; k <= 1 is answered directly".into(),
                ));
            }
            let kk = k as u128;
            let b = checked_u32(2 * kk * (kk + 2) + 2 * kk + 1, "slab width b")?;
            let x = checked_u32(kk + 1, "replacement count x")?;
            let z = checked_u32((kk + 1) * b as u128, "insulation width z")?;
            let q = f_height(u32::try_from(k - 1).expect("k fits"), z, x, 3)?;
            let root = ceil_sqrt(checked_u32(kk, "k")?);
            let r = checked_u32(1 + root as u128 * (q as u128 + 1), "wall height r")?;
            let g = checked_u32(36 * (r as u128 + 1), "treewidth threshold g")?;
            Ok(ReductionConstants { mode, k, b, x, z, q, r, g })
        }
        ReductionMode::Relaxed { b, x, z, q, r } => {
            if b == 0 || x == 0 {
                return Err(Error::InvalidInstance(
                    "constants b and x must be positive".into(),
                ));
            }
            if z % 2 == 0 || q % 2 == 0 || q < 3 {
                return Err(Error::InvalidInstance(
                    "packing constants need odd z and odd q >= 3".into(),
                ));
            }
            if r % 2 == 0 || r < 3 {
                return Err(Error::InvalidInstance(
                    "wall height r must be odd and >= 3".into(),
                ));
            }
            let g = checked_u32(36 * (r as u128 + 1), "treewidth threshold g")?;
            Ok(ReductionConstants { mode, k, b, x, z, q, r, g })
        }
    }
}

/// The verdict of one reduction step.
#[derive(Debug, Clone)]
pub enum ReduceOutcome {
    /// A verified simple (s,t)-path whose vertex set has rank ≥ k, with an
    /// independent subset of its vertices certifying the rank.
    PathFound { path: Vec<VertexId>, set: GroundSubset },
    /// Deleting this vertex (never a terminal) keeps the answer unchanged.
    Irrelevant(VertexId),
    /// Treewidth is already below the threshold: hand the decomposition to
    /// the dynamic program.
    BelowThreshold(TreeDecomposition),
    /// The machinery abstained; the reason says where.
    Incomplete(String),
}

/// The verdict of the full reduction loop.
#[derive(Debug, Clone)]
pub enum LoopOutcome {
    /// Same certificate as [`ReduceOutcome::PathFound`].
    PathFound { path: Vec<VertexId>, set: GroundSubset },
    /// No further step applies: the surviving framework, every deleted
    /// vertex in order, and the final decomposition when the treewidth
    /// branch ended the loop.
    Reduced {
        framework: Framework,
        deletions: Vec<VertexId>,
        decomposition: Option<TreeDecomposition>,
    },
    /// A step abstained after the logged deletions were applied.
    Incomplete { reason: String, deletions: Vec<VertexId> },
}

/// One reduction step. Branch order: block-path cleanup; wall discovery
/// honoring an optional certificate, shrinking to a subwall whose compass
/// avoids both terminals; the two-disjoint-connection screen; a k-member
/// packing of height-q subwalls with one compass rank each; then either
/// path construction (all ranks ≥ k) or an equal-rank packing of the
/// deficient compass, whose first member's central vertex is deletable.
pub fn reduce_once(
    f: &Framework,
    consts: &ReductionConstants,
    cert: Option<&WallModel>,
) -> Result<ReduceOutcome> {
    let g = f.graph();
    let m = f.matroid();
    let (s, t) = (f.s(), f.t());
    let k = f.k();
    if consts.k != k {
        return Err(Error::InvalidInstance(format!(
            "constants were derived for k = {}, instance has k = {k}",
            consts.k
        )));
    }
    if k <= 1 {
        return Ok(ReduceOutcome::Incomplete(
            "k <= 1 is answered directly, not by reduction".into(),
        ));
    }

    // Vertices off the s-t block path lie on no (s,t)-path at all, so the
    // smallest one is deletable outright. An unreachable t makes every
    // non-terminal vertex deletable: both instances stay no-instances.
    match block_survivors(g, s, t)? {
        None => {
            if let Some(v) = g.vertices().find(|&v| v != s && v != t) {
                return Ok(ReduceOutcome::Irrelevant(v));
            }
        }
        Some(on_path) => {
            if let Some(v) = g.vertices().find(|v| !on_path.contains(v)) {
                return Ok(ReduceOutcome::Irrelevant(v));
            }
        }
    }

    // A wall tall enough for the k-member packing, with both terminals
    // outside its compass.
    let min_h = packing_bound(k as u32, consts.q)?;
    let (wall, compass) = match wall_avoiding_terminals(g, consts, cert, s, t, min_h)? {
        WallSelect::Wall(w, c) => (w, c),
        WallSelect::Small(td) => return Ok(ReduceOutcome::BelowThreshold(td)),
        WallSelect::Abstain(reason) => return Ok(ReduceOutcome::Incomplete(reason)),
    };

    // Two vertex-disjoint connections from the terminals to the wall
    // perimeter. If a single vertex meets every such connection, no simple
    // (s,t)-path can enter the compass interior, so any interior vertex is
    // deletable.
    let perim: Vec<VertexId> = wall.host_layers()[0].clone();
    let perim_set: BTreeSet<VertexId> = perim.iter().copied().collect();
    let attachments = match attachment_pair(g, s, t, &perim)? {
        Some(pair) => pair,
        None => {
            let v = compass.iter().copied().find(|v| !perim_set.contains(v));
            match v {
                Some(v) => return Ok(ReduceOutcome::Irrelevant(v)),
                None => {
                    return Ok(ReduceOutcome::Incomplete(
                        "compass has no interior to reduce".into(),
                    ))
                }
            }
        }
    };

    // The k-member packing and its compass ranks.
    let pack = match grid_packing(g, &wall, 1, k as u32, consts.q) {
        Ok(p) => p,
        Err(e) => return Ok(ReduceOutcome::Incomplete(format!("packing: {e}"))),
    };
    let mut compasses = Vec::with_capacity(pack.walls.len());
    let mut ranks = Vec::with_capacity(pack.walls.len());
    for w in &pack.walls {
        let c = match compass_of(g, w) {
            Ok(c) => c,
            Err(e) => return Ok(ReduceOutcome::Incomplete(format!("compass: {e}"))),
        };
        let verts: Vec<VertexId> = c.iter().copied().collect();
        ranks.push(m.rank(&verts));
        compasses.push(c);
    }

    if let Some(i) = ranks.iter().position(|&r| r < k) {
        // A rank-deficient compass: pack it with subwalls whose compass
        // ranks all equal its own, and name the first member's central
        // vertex.
        let sub = match equal_rank_packing(
            g,
            m,
            &pack.walls[i],
            (k - 1) as u32,
            consts.z,
            consts.x,
            3,
        ) {
            Ok(p) => p,
            Err(e) => {
                return Ok(ReduceOutcome::Incomplete(format!("equal-rank packing: {e}")))
            }
        };
        let v = sub.walls[0].central_vertex();
        if v == s || v == t {
            return Ok(ReduceOutcome::Incomplete(
                "central vertex collides with a terminal".into(),
            ));
        }
        return Ok(ReduceOutcome::Irrelevant(v));
    }

    // Every compass has rank ≥ k: pick one independent vertex per compass
    // (the exchange axiom guarantees each step) and thread a path through
    // them in packing order.
    let mut set: GroundSubset = Vec::with_capacity(k);
    let mut stations = Vec::with_capacity(k);
    for c in &compasses {
        let cand: Vec<VertexId> = c.iter().copied().collect();
        let Some(v) = m.extend_independent(&set, &cand) else {
            return Ok(ReduceOutcome::Incomplete(
                "independent extension failed despite the compass rank bound".into(),
            ));
        };
        let pos = set.binary_search(&v).expect_err("extension vertex is fresh");
        set.insert(pos, v);
        stations.push(v);
    }
    let zones: Vec<(BTreeSet<VertexId>, BTreeSet<VertexId>)> = pack
        .walls
        .iter()
        .zip(&compasses)
        .map(|(w, c)| {
            let p: BTreeSet<VertexId> = w.host_layers()[0].iter().copied().collect();
            let interior: BTreeSet<VertexId> = c.difference(&p).copied().collect();
            (interior, p)
        })
        .collect();
    let (p_s, p_t) = attachments;
    let Some(path) = thread_path(g, &zones, &stations, &p_s, &p_t) else {
        return Ok(ReduceOutcome::Incomplete(
            "path threading failed despite the rank-rich packing".into(),
        ));
    };
    // Self-certification: simple, terminal-to-terminal, rank ≥ k.
    let mut verts = path.clone();
    verts.sort_unstable();
    if !g.is_simple_path(&path)
        || path.first() != Some(&s)
        || path.last() != Some(&t)
        || m.rank(&verts) < k
    {
        return Ok(ReduceOutcome::Incomplete(
            "constructed path failed self-verification".into(),
        ));
    }
    debug_assert!(set.iter().all(|v| verts.binary_search(v).is_ok()));
    Ok(ReduceOutcome::PathFound { path, set })
}

/// Apply reduction steps until a path is found, the treewidth threshold is
/// reached, or the machinery abstains. k ≤ 1 never enters the loop: k = 0
/// is plain reachability and k = 1 goes to the dynamic program unchanged.
pub fn reduce_loop(
    f: &Framework,
    consts: &ReductionConstants,
    cert: Option<&WallModel>,
) -> Result<LoopOutcome> {
    let k = f.k();
    if consts.k != k {
        return Err(Error::InvalidInstance(format!(
            "constants were derived for k = {}, instance has k = {k}",
            consts.k
        )));
    }
    if k == 0 {
        if let Some(path) = f.graph().shortest_path(f.s(), f.t(), None) {
            return Ok(LoopOutcome::PathFound { path, set: Vec::new() });
        }
        return Ok(LoopOutcome::Reduced {
            framework: f.clone(),
            deletions: Vec::new(),
            decomposition: None,
        });
    }
    if k == 1 {
        return Ok(LoopOutcome::Reduced {
            framework: f.clone(),
            deletions: Vec::new(),
            decomposition: None,
        });
    }
    let mut fw = f.clone();
    let mut cert: Option<WallModel> = cert.cloned();
    let mut deletions: Vec<VertexId> = Vec::new();
    let budget = fw.graph().num_vertices();
    for _ in 0..=budget {
        match reduce_once(&fw, consts, cert.as_ref())? {
            ReduceOutcome::PathFound { path, set } => {
                return Ok(LoopOutcome::PathFound { path, set });
            }
            ReduceOutcome::BelowThreshold(td) => {
                return Ok(LoopOutcome::Reduced {
                    framework: fw,
                    deletions,
                    decomposition: Some(td),
                });
            }
            ReduceOutcome::Incomplete(reason) => {
                return Ok(LoopOutcome::Incomplete { reason, deletions });
            }
            ReduceOutcome::Irrelevant(v) => {
                fw = fw.delete(v)?;
                deletions.push(v);
                if cert.as_ref().is_some_and(|c| c.host_vertices().contains(&v)) {
                    cert = None;
                }
            }
        }
    }
    Err(Error::Incomplete(
        "reduction loop exceeded its vertex budget".into(),
    ))
}

/// Minimum wall height admitting the k-member packing of height-q subwalls
/// behind one ring of insulation: 1 + ⌈√k⌉·(q+1).
fn packing_bound(k: u32, q: u32) -> Result<u32> {
    checked_u32(1 + ceil_sqrt(k) as u128 * (q as u128 + 1), "packing height bound")
}

/// Vertices of the blocks any (s,t)-path traverses, or None when t is
/// unreachable from s.
fn block_survivors(g: &Graph, s: VertexId, t: VertexId) -> Result<Option<BTreeSet<VertexId>>> {
    let Some(steps) = biconnected_split(g, s, t)? else {
        return Ok(None);
    };
    let mut on_path: BTreeSet<VertexId> = [s, t].into();
    for step in &steps {
        on_path.extend(step.graph.vertices());
    }
    Ok(Some(on_path))
}

enum WallSelect {
    Wall(WallModel, BTreeSet<VertexId>),
    Small(TreeDecomposition),
    Abstain(String),
}

/// Find a wall of height ≥ r and make its compass avoid both terminals,
/// scanning subwalls (tallest first, then by offset) when the full wall's
/// compass contains one. Heights below `min_h` cannot host the packing and
/// are not considered.
fn wall_avoiding_terminals(
    g: &Graph,
    consts: &ReductionConstants,
    cert: Option<&WallModel>,
    s: VertexId,
    t: VertexId,
    min_h: u32,
) -> Result<WallSelect> {
    let wall = match find_wall(g, consts.r.max(3), cert) {
        Ok(FindWall::Wall(w)) => w,
        Ok(FindWall::SmallTw(td)) => return Ok(WallSelect::Small(td)),
        Err(Error::Incomplete(msg)) => return Ok(WallSelect::Abstain(msg)),
        Err(e) => return Err(e),
    };
    let comp = match compass_of(g, &wall) {
        Ok(c) => c,
        Err(e) => return Ok(WallSelect::Abstain(format!("compass: {e}"))),
    };
    if !comp.contains(&s) && !comp.contains(&t) {
        return Ok(WallSelect::Wall(wall, comp));
    }
    let mut h = wall.height.saturating_sub(2);
    while h >= min_h.max(3) {
        let span = (wall.height - h) as u16;
        for dy in 0..=span {
            for dx in 0..=(2 * span) {
                let Ok(sub) = wall.subwall(dx, dy, h) else { continue };
                let Ok(c) = compass_of(g, &sub) else { continue };
                if !c.contains(&s) && !c.contains(&t) {
                    return Ok(WallSelect::Wall(sub, c));
                }
            }
        }
        h -= 2;
    }
    Ok(WallSelect::Abstain(
        "no subwall tall enough for the packing has a compass avoiding the terminals".into(),
    ))
}

/// Two vertex-disjoint paths from s and t to the perimeter, each truncated
/// at its first perimeter hit. None when a single vertex meets every
/// terminal-perimeter connection.
#[allow(clippy::type_complexity)]
fn attachment_pair(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    perim: &[VertexId],
) -> Result<Option<(Vec<VertexId>, Vec<VertexId>)>> {
    let sinks: Vec<(VertexId, usize)> = perim.iter().map(|&v| (v, 1)).collect();
    let sources = [(s, 1), (t, 1)];
    match vertex_disjoint_paths_capped(g, &sources, &sinks, 2)? {
        DisjointPaths::Separator(_) => Ok(None),
        DisjointPaths::Paths(paths) => {
            let pset: BTreeSet<VertexId> = perim.iter().copied().collect();
            let mut from_s = None;
            let mut from_t = None;
            for p in paths {
                let hit = p.iter().position(|v| pset.contains(v)).ok_or_else(|| {
                    Error::InvalidInstance("disjoint path missed every sink".into())
                })?;
                let prefix = p[..=hit].to_vec();
                if prefix.first() == Some(&s) {
                    from_s = Some(prefix);
                } else {
                    from_t = Some(prefix);
                }
            }
            match (from_s, from_t) {
                (Some(a), Some(b)) => Ok(Some((a, b))),
                _ => Err(Error::InvalidInstance(
                    "disjoint paths did not cover both terminals".into(),
                )),
            }
        }
    }
}

/// Stitch the full path: the s-attachment, then per packed compass a street
/// leg to its perimeter and an interior detour through its station, then a
/// final street leg to the t-attachment. Street legs stay outside every
/// compass interior, so each detour finds its region untouched.
fn thread_path(
    g: &Graph,
    zones: &[(BTreeSet<VertexId>, BTreeSet<VertexId>)],
    stations: &[VertexId],
    p_s: &[VertexId],
    p_t: &[VertexId],
) -> Option<Vec<VertexId>> {
    let mut path: Vec<VertexId> = p_s.to_vec();
    let mut used: BTreeSet<VertexId> = p_s.iter().copied().collect();
    used.extend(p_t.iter().copied());
    let all_interior: BTreeSet<VertexId> =
        zones.iter().flat_map(|(int, _)| int.iter().copied()).collect();

    for (i, &sigma) in stations.iter().enumerate() {
        let (interior, perim) = &zones[i];
        let cur = *path.last().expect("path never empty");
        let mut blocked = all_interior.clone();
        blocked.extend(used.iter().copied());
        blocked.extend(stations[i + 1..].iter().copied());
        let targets: BTreeSet<VertexId> =
            perim.iter().copied().filter(|v| !used.contains(v)).collect();
        let leg = bfs_to_set(g, cur, &targets, &blocked)?;
        let entry = *leg.last().expect("leg nonempty");
        for &v in &leg[1..] {
            path.push(v);
            used.insert(v);
        }
        if entry != sigma {
            let detour = compass_detour(g, interior, perim, &used, entry, sigma)?;
            for &v in &detour[1..] {
                path.push(v);
                used.insert(v);
            }
        }
    }

    let cur = *path.last().expect("path never empty");
    let d_t = *p_t.last().expect("attachment nonempty");
    let mut blocked = all_interior;
    blocked.extend(used.iter().copied());
    blocked.remove(&d_t);
    let targets: BTreeSet<VertexId> = [d_t].into();
    let leg = bfs_to_set(g, cur, &targets, &blocked)?;
    for &v in &leg[1..] {
        path.push(v);
    }
    for &v in p_t.iter().rev().skip(1) {
        path.push(v);
    }
    Some(path)
}

/// A path entry → station → exit inside one compass, with internally
/// disjoint halves, avoiding used vertices; the exit is the first fresh
/// perimeter vertex for which the pair of disjoint paths exists.
fn compass_detour(
    g: &Graph,
    interior: &BTreeSet<VertexId>,
    perim: &BTreeSet<VertexId>,
    used: &BTreeSet<VertexId>,
    entry: VertexId,
    sigma: VertexId,
) -> Option<Vec<VertexId>> {
    let allowed: BTreeSet<VertexId> = interior
        .iter()
        .chain(perim.iter())
        .copied()
        .filter(|&v| v == entry || !used.contains(&v))
        .collect();
    let mut sub = Graph::new();
    for &v in &allowed {
        sub.add_vertex(v);
        for u in g.neighbors(v) {
            if u > v && allowed.contains(&u) {
                sub.add_edge(v, u);
            }
        }
    }
    for &exit in perim {
        if exit == entry || exit == sigma || used.contains(&exit) {
            continue;
        }
        let sinks = [(entry, 1), (exit, 1)];
        let Ok(DisjointPaths::Paths(two)) =
            vertex_disjoint_paths_capped(&sub, &[(sigma, 2)], &sinks, 2)
        else {
            continue;
        };
        let mut to_entry = None;
        let mut to_exit = None;
        for p in two {
            if p.last() == Some(&entry) {
                to_entry = Some(p);
            } else if p.last() == Some(&exit) {
                to_exit = Some(p);
            }
        }
        let (a, b) = match (to_entry, to_exit) {
            (Some(a), Some(b)) => (a, b),
            _ => continue,
        };
        let mut out: Vec<VertexId> = a.into_iter().rev().collect();
        out.extend(b.into_iter().skip(1));
        return Some(out);
    }
    None
}

/// Deterministic BFS from `from` to the nearest member of `targets`,
/// traversing only vertices outside `blocked`.
fn bfs_to_set(
    g: &Graph,
    from: VertexId,
    targets: &BTreeSet<VertexId>,
    blocked: &BTreeSet<VertexId>,
) -> Option<Vec<VertexId>> {
    if targets.contains(&from) {
        return Some(vec![from]);
    }
    let mut parent: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut seen: BTreeSet<VertexId> = [from].into();
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v) {
            if seen.contains(&u) || blocked.contains(&u) {
                continue;
            }
            seen.insert(u);
            parent.insert(u, v);
            if targets.contains(&u) {
                let mut out = vec![u];
                let mut cur = u;
                while let Some(&p) = parent.get(&cur) {
                    out.push(p);
                    cur = p;
                }
                out.reverse();
                return Some(out);
            }
            queue.push_back(u);
        }
    }
    None
}
