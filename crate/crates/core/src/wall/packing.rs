//! Wall packings: tiling disjoint subwalls inside a peeled wall, and the
//! recursive equal-compass-rank refinement.

use super::{
    compass_of, pattern_after_peels, pattern_vertices, rho, wall_violations, WallModel,
};
use crate::error::Error;
use crate::graph::Graph;
use crate::matroid::LinearMatroid;
use crate::{Result, VertexId};
use std::collections::BTreeSet;

/// Smallest s with s·s ≥ x.
pub(crate) fn ceil_sqrt(x: u32) -> u32 {
    let mut s = 0u32;
    while (s as u64) * (s as u64) < x as u64 {
        s += 1;
    }
    s
}

/// Height threshold for the equal-rank recursion: level 0 is the target
/// subwall height q, and every further level wraps one packing around it:
/// f(j) = z + ⌈√x⌉·(f(j−1)+1).
pub fn f_height(k: u32, z: u32, x: u32, q: u32) -> Result<u32> {
    let g = ceil_sqrt(x) as u128;
    let mut f = q as u128;
    for _ in 0..k {
        f = z as u128 + g * (f + 1);
        if f > u32::MAX as u128 {
            return Err(Error::ConstantOverflow(format!(
                "packing height f({k}, {z}, {x}, {q}) exceeds u32"
            )));
        }
    }
    Ok(f as u32)
}

/// A (z, r, q)-packing: subwalls W₁…W_r of the outer wall W₀, each of height
/// at least q, lying inside W₀ with (z+1)/2 layers of insulation peeled off,
/// with pairwise disjoint compasses.
#[derive(Debug, Clone)]
pub struct WallPacking {
    pub z: u32,
    pub count: u32,
    pub q: u32,
    pub outer: WallModel,
    pub walls: Vec<WallModel>,
}

impl WallPacking {
    /// Check every packing invariant against the host graph.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidInstance(msg));
        if self.z % 2 == 0 || self.q % 2 == 0 {
            return bad("packing parameters z and q must be odd".into());
        }
        if self.walls.len() != self.count as usize {
            return bad(format!(
                "packing holds {} walls, expected {}",
                self.walls.len(),
                self.count
            ));
        }
        let violations = wall_violations(g, &self.outer);
        if !violations.is_empty() {
            return bad(format!("outer wall invalid: {}", violations.join("; ")));
        }
        let region = self.outer.interior_after((self.z + 1) / 2);
        let mut compasses: Vec<BTreeSet<VertexId>> = Vec::new();
        for (i, w) in self.walls.iter().enumerate() {
            let violations = wall_violations(g, w);
            if !violations.is_empty() {
                return bad(format!("subwall {i} invalid: {}", violations.join("; ")));
            }
            if w.height < self.q {
                return bad(format!(
                    "subwall {i} has height {} below q = {}",
                    w.height, self.q
                ));
            }
            if !w.host_vertices().is_subset(&region) {
                return bad(format!("subwall {i} leaves the insulated region"));
            }
            compasses.push(compass_of(g, w)?);
        }
        for i in 0..compasses.len() {
            for j in i + 1..compasses.len() {
                if compasses[i].intersection(&compasses[j]).next().is_some() {
                    return bad(format!("compasses of subwalls {i} and {j} intersect"));
                }
            }
        }
        Ok(())
    }
}

/// Tile r height-q subwalls row-major inside the wall with (z+1)/2 layers
/// peeled for insulation. Requires height(W) ≥ z + ⌈√r⌉·(q+1).
pub fn grid_packing(
    g: &Graph,
    w: &WallModel,
    z: u32,
    r: u32,
    q: u32,
) -> Result<WallPacking> {
    if z % 2 == 0 || q % 2 == 0 || q < 3 {
        return Err(Error::InvalidInstance(
            "packing needs odd z and odd q >= 3".into(),
        ));
    }
    if r == 0 {
        return Err(Error::InvalidInstance("packing needs at least one subwall".into()));
    }
    let gcount = ceil_sqrt(r);
    let need = z + gcount * (q + 1);
    if w.height < need {
        return Err(Error::InvalidInstance(format!(
            "wall height {} below packing bound {need}",
            w.height
        )));
    }
    let rings = (z + 1) / 2;
    let region = pattern_after_peels(w.height, w.parity, rings);
    let mut walls = Vec::new();
    let max_dx = (2 * w.height - 2 * q) as u16;
    'rows: for row in 0..gcount {
        let dy = (rings + row * (q + 1)) as u16;
        let mut dx: u16 = 0;
        while walls.len() < r as usize {
            if dx > max_dx {
                continue 'rows;
            }
            let parity = ((w.parity as u16 + dx + dy) % 2) as u8;
            let fits = pattern_vertices(q, parity)
                .iter()
                .all(|&(x, y)| region.contains(&(x + dx, y + dy)));
            if fits {
                walls.push(w.subwall(dx, dy, q)?);
                dx += 2 * q as u16;
            } else {
                dx += 1;
            }
        }
        break;
    }
    if walls.len() < r as usize {
        return Err(Error::InvalidInstance(format!(
            "packing placement failed: {} of {r} subwalls placed",
            walls.len()
        )));
    }
    let packing = WallPacking { z, count: r, q, outer: w.clone(), walls };
    packing.validate(g)?;
    Ok(packing)
}

/// Find a packing of x subwalls whose compass ranks all equal the outer
/// wall's, by packing at decreasing height levels and recursing into a
/// deficient subwall. Requires height(W) ≥ f(k, z, x, q) and ρ(W) ≤ k.
pub fn equal_rank_packing(
    g: &Graph,
    m: &LinearMatroid,
    w: &WallModel,
    k: u32,
    z: u32,
    x: u32,
    q: u32,
) -> Result<WallPacking> {
    if k == 0 {
        return Err(Error::InvalidInstance("equal-rank packing needs k >= 1".into()));
    }
    let need = f_height(k, z, x, q)?;
    if w.height < need {
        return Err(Error::InvalidInstance(format!(
            "wall height {} below equal-rank bound f = {need}",
            w.height
        )));
    }
    let rho_w = rho(g, m, w)?;
    if rho_w > k as usize {
        return Err(Error::InvalidInstance(format!(
            "compass rank {rho_w} exceeds k = {k}"
        )));
    }
    let mut cur = w.clone();
    let mut depth = k;
    loop {
        let sub_h = if depth == 1 { q } else { f_height(depth - 1, z, x, q)? };
        let mut pack = grid_packing(g, &cur, z, x, sub_h)?;
        let rho0 = rho(g, m, &cur)?;
        let mut deficient = None;
        for (i, wall) in pack.walls.iter().enumerate() {
            let ri = rho(g, m, wall)?;
            if ri > rho0 {
                return Err(Error::Incomplete(
                    "subwall compass rank exceeds its outer wall's; \
                     compass nesting violated by host structure"
                        .into(),
                ));
            }
            if ri < rho0 && deficient.is_none() {
                deficient = Some(i);
            }
        }
        match deficient {
            None => {
                pack.q = q;
                return Ok(pack);
            }
            Some(i) if depth > 1 => {
                cur = pack.walls[i].clone();
                depth -= 1;
            }
            Some(_) => {
                return Err(Error::Incomplete(
                    "equal-rank packing stuck at unit depth: subwall compass \
                     ranks still differ from the outer wall's"
                        .into(),
                ));
            }
        }
    }
}
