//! Ground truth at desk scale: exhaustive path enumeration over a framework
//! and exhaustive checkers for representativeness and truncation. Clarity
//! beats speed everywhere here — these routines certify everything else.

use crate::instance::Framework;
use crate::matroid::LinearMatroid;
use crate::{Error, GroundSubset, Result, VertexId};
use std::collections::BTreeSet;

/// Default vertex cap for path enumeration.
pub const BRUTE_FORCE_LIMIT: usize = 15;

/// Ground set cap for the exhaustive set-quantifier checkers.
pub const CHECKER_LIMIT: usize = 12;

/// Outcome of exhaustive path enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForce {
    /// Whether some simple (s,t)-path reaches rank k.
    pub yes: bool,
    /// The maximum-rank path and its rank; `None` when no (s,t)-path exists.
    /// Among maximizers this is the first in depth-first (lexicographic)
    /// order.
    pub best: Option<(Vec<VertexId>, usize)>,
}

/// Enumerate every simple (s,t)-path by DFS with ascending-id branching and
/// return the maximum-rank one. Decision: rank ≥ k.
pub fn brute_force(f: &Framework) -> Result<BruteForce> {
    brute_force_limit(f, BRUTE_FORCE_LIMIT)
}

/// `brute_force` with an explicit vertex cap.
pub fn brute_force_limit(f: &Framework, limit: usize) -> Result<BruteForce> {
    let n = f.graph().num_vertices();
    if n > limit {
        return Err(Error::Unsupported(format!(
            "brute force capped at {limit} vertices, instance has {n}"
        )));
    }
    let mut state = Walk {
        f,
        path: vec![f.s()],
        seen: BTreeSet::from([f.s()]),
        best: None,
    };
    state.extend_from(f.s());
    let yes = state.best.as_ref().is_some_and(|(_, r)| *r >= f.k());
    Ok(BruteForce { yes, best: state.best })
}

struct Walk<'a> {
    f: &'a Framework,
    path: Vec<VertexId>,
    seen: BTreeSet<VertexId>,
    best: Option<(Vec<VertexId>, usize)>,
}

impl Walk<'_> {
    fn extend_from(&mut self, v: VertexId) {
        if v == self.f.t() {
            let mut sorted: GroundSubset = self.path.clone();
            sorted.sort_unstable();
            let rank = self.f.matroid().rank(&sorted);
            // Strict improvement keeps the DFS-first maximizer.
            if self.best.as_ref().is_none_or(|(_, r)| rank > *r) {
                self.best = Some((self.path.clone(), rank));
            }
            return;
        }
        let nbrs: Vec<VertexId> = self.f.graph().neighbors(v).collect();
        for u in nbrs {
            if self.seen.insert(u) {
                self.path.push(u);
                self.extend_from(u);
                self.path.pop();
                self.seen.remove(&u);
            }
        }
    }
}

fn fits(m: &LinearMatroid, s: &GroundSubset, y: &GroundSubset) -> bool {
    let mut union = s.clone();
    for v in y {
        if s.binary_search(v).is_ok() {
            return false;
        }
        union.push(*v);
    }
    union.sort_unstable();
    m.is_independent(&union)
}

/// Exhaustively decide whether `subfamily` q-represents `family` in `m`: for
/// every Y with |Y| ≤ q that some family member extends to an independent
/// set disjointly, some subfamily member must do the same.
pub fn check_representative(
    m: &LinearMatroid,
    family: &[GroundSubset],
    subfamily: &[GroundSubset],
    q: usize,
) -> Result<bool> {
    let ground = m.ground();
    let n = ground.len();
    if n > CHECKER_LIMIT {
        return Err(Error::Unsupported(format!(
            "representativeness check capped at {CHECKER_LIMIT} elements, got {n}"
        )));
    }
    let fam: BTreeSet<&GroundSubset> = family.iter().collect();
    if !subfamily.iter().all(|s| fam.contains(s)) {
        return Ok(false);
    }
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) > q {
            continue;
        }
        let y: GroundSubset = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| ground[i])
            .collect();
        let extendable = family.iter().any(|s| fits(m, s, &y));
        if extendable && !subfamily.iter().any(|s| fits(m, s, &y)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustively decide whether `mt` is the rank-k truncation of `m`: a set is
/// independent in `mt` exactly when it is independent in `m` and no larger
/// than k. Subsets of size k+2 and beyond are dependent in any candidate of
/// rank ≤ k, so sizes up to k+1 decide the question.
pub fn check_truncation(m: &LinearMatroid, mt: &LinearMatroid, k: usize) -> Result<bool> {
    let ground = m.ground();
    let n = ground.len();
    if n > CHECKER_LIMIT {
        return Err(Error::Unsupported(format!(
            "truncation check capped at {CHECKER_LIMIT} elements, got {n}"
        )));
    }
    if mt.ground() != ground {
        return Ok(false);
    }
    if mt.full_rank() > k.min(m.full_rank()) {
        return Ok(false);
    }
    for mask in 0u32..(1 << n) {
        if (mask.count_ones() as usize) > k + 1 {
            continue;
        }
        let x: GroundSubset = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| ground[i])
            .collect();
        let want = m.is_independent(&x) && x.len() <= k;
        if mt.is_independent(&x) != want {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustively check the rank axioms on a small ground set: r(∅) = 0, unit
/// increments, and local submodularity r(A∪x) + r(A∪y) ≥ r(A∪xy) + r(A).
/// Together these force a matroid rank function. Returns the violations
/// found (empty means the axioms hold).
pub fn check_matroid_axioms(m: &LinearMatroid) -> Result<Vec<String>> {
    let ground = m.ground();
    let n = ground.len();
    if n > CHECKER_LIMIT {
        return Err(Error::Unsupported(format!(
            "axiom check capped at {CHECKER_LIMIT} elements, got {n}"
        )));
    }
    let rank_of = |mask: u32| {
        let set: GroundSubset = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| ground[i])
            .collect();
        m.rank(&set)
    };
    let ranks: Vec<usize> = (0u32..(1 << n)).map(rank_of).collect();
    let mut out = Vec::new();
    if ranks[0] != 0 {
        out.push(format!("rank of the empty set is {}", ranks[0]));
    }
    for mask in 0u32..(1 << n) {
        let r = ranks[mask as usize];
        for i in 0..n {
            if mask & (1 << i) != 0 {
                continue;
            }
            let ri = ranks[(mask | (1 << i)) as usize];
            if ri < r || ri > r + 1 {
                out.push(format!(
                    "adding {} to a rank-{r} set gives rank {ri}",
                    ground[i]
                ));
            }
            for j in (i + 1)..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let rj = ranks[(mask | (1 << j)) as usize];
                let rij = ranks[(mask | (1 << i) | (1 << j)) as usize];
                if ri + rj < rij + r {
                    out.push(format!(
                        "submodularity fails at {{{}, {}}} over a rank-{r} set",
                        ground[i], ground[j]
                    ));
                }
            }
        }
    }
    out.truncate(20);
    Ok(out)
}
