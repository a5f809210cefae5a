//! The full solve loop: decompose and run the dynamic program once the width
//! threshold admits it, otherwise delete one irrelevant vertex and repeat.
//!
//! [`solve_full`] is the entry point the CLI's `solve` verb wraps. Every YES
//! is re-verified against the *original* framework before it is reported,
//! and the audit log records the constants in force, each deletion, and the
//! decomposition the dynamic program ran on.

use crate::dp::{solve_dp, DpConfig, Witness};
use crate::error::Error;
use crate::instance::{Framework, InstanceBundle};
use crate::reduce::{reduce_once, ReduceOutcome, ReductionConstants, ReductionMode};
use crate::td::{make_nice, treewidth_decompose, TreeDecomposition, TwResult};
use crate::{Result, VertexId};

/// Caps and overrides for the solve loop.
#[derive(Debug, Clone, Copy, Default)]
pub struct Limits {
    /// Cap on reducer deletions; defaults to the instance's vertex count.
    pub max_deletions: Option<usize>,
    /// Width threshold for the decompose-first branch; defaults to the
    /// constants' g. Lowering it forces the reducer onto instances whose
    /// width the dynamic program could already handle.
    pub width_threshold: Option<usize>,
}

/// Verdict, witness, and the trail that produced them.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub yes: bool,
    /// Present on every YES unless a literal-mode flag suppressed
    /// reconstruction; always re-verified against the input framework.
    pub witness: Option<Witness>,
    /// Vertices deleted by the reducer, in deletion order.
    pub deletions: Vec<VertexId>,
    /// Deterministic log: constants, deletions, decomposition, table sizes.
    pub audit: Vec<String>,
}

/// Check a claimed witness against a framework: a simple (s,t)-path whose
/// vertices include an independent set of size ≥ k.
pub fn verify_witness(f: &Framework, w: &Witness) -> Result<()> {
    let fail = |msg: &str| Err(Error::InvalidInstance(format!("witness rejected: {msg}")));
    if !f.graph().is_simple_path(&w.path) {
        return fail("not a simple path");
    }
    if w.path.first() != Some(&f.s()) || w.path.last() != Some(&f.t()) {
        return fail("path misses a terminal");
    }
    if w.independent_set.len() < f.k() {
        return fail("independent set smaller than k");
    }
    if !w.independent_set.iter().all(|v| w.path.contains(v)) {
        return fail("independent set leaves the path");
    }
    if !f.matroid().is_independent(&w.independent_set) {
        return fail("set is dependent");
    }
    Ok(())
}

fn constants_line(c: &ReductionConstants, threshold: usize) -> String {
    let mode = match c.mode {
        ReductionMode::Paper => "paper",
        ReductionMode::Relaxed { .. } => "relaxed",
    };
    format!(
        "constants: {mode} k={} b={} x={} z={} q={} r={} g={} threshold={threshold}",
        c.k, c.b, c.x, c.z, c.q, c.r, c.g
    )
}

/// Run the framework through the reduce/decompose loop and answer the
/// decision problem. `bundle.wall`, when present, certifies wall searches on
/// the *initial* graph; it is discarded as soon as a deletion touches it.
pub fn solve_full(
    bundle: &InstanceBundle,
    consts: &ReductionConstants,
    cfg: &DpConfig,
    limits: &Limits,
) -> Result<SolveReport> {
    let f0 = &bundle.framework;
    if consts.k != f0.k() {
        return Err(Error::InvalidInstance(format!(
            "constants were derived for k = {}, instance has k = {}",
            consts.k,
            f0.k()
        )));
    }
    let threshold = limits.width_threshold.unwrap_or(consts.g as usize);
    let mut audit = vec![constants_line(consts, threshold)];

    // k = 0 is plain reachability.
    if f0.k() == 0 {
        return match f0.graph().shortest_path(f0.s(), f0.t(), None) {
            Some(path) => {
                audit.push("k = 0: any terminal-to-terminal path suffices".into());
                let w = Witness { path, independent_set: Vec::new() };
                verify_witness(f0, &w)?;
                Ok(SolveReport { yes: true, witness: Some(w), deletions: Vec::new(), audit })
            }
            None => {
                audit.push("k = 0: terminals disconnected".into());
                Ok(SolveReport { yes: false, witness: None, deletions: Vec::new(), audit })
            }
        };
    }

    let mut fw = f0.clone();
    let mut cert = bundle.wall.clone();
    let mut deletions: Vec<VertexId> = Vec::new();
    let budget = limits.max_deletions.unwrap_or(f0.graph().num_vertices());
    loop {
        if let TwResult::Decomposition(td) = treewidth_decompose(fw.graph(), threshold) {
            audit.push(format!(
                "decomposition: width {} on {} vertices after {} deletions",
                td.width(),
                fw.graph().num_vertices(),
                deletions.len()
            ));
            return finish_with_dp(f0, &fw, &td, cfg, deletions, audit);
        }
        // Width not settled at the threshold: one reduction step.
        match reduce_once(&fw, consts, cert.as_ref())? {
            ReduceOutcome::PathFound { path, set } => {
                audit.push(format!(
                    "reducer constructed a path after {} deletions",
                    deletions.len()
                ));
                let w = Witness { path, independent_set: set };
                verify_witness(f0, &w)?;
                audit.push(witness_line(&w));
                return Ok(SolveReport { yes: true, witness: Some(w), deletions, audit });
            }
            ReduceOutcome::Irrelevant(v) => {
                if deletions.len() >= budget {
                    return Err(Error::Incomplete(format!(
                        "deletion budget {budget} exhausted"
                    )));
                }
                fw = fw.delete(v)?;
                deletions.push(v);
                audit.push(format!("deleted {v}"));
                if cert.as_ref().is_some_and(|c| c.host_vertices().contains(&v)) {
                    cert = None;
                }
            }
            ReduceOutcome::BelowThreshold(td) => {
                audit.push(format!(
                    "reducer handed back a decomposition: width {} on {} vertices after {} deletions",
                    td.width(),
                    fw.graph().num_vertices(),
                    deletions.len()
                ));
                return finish_with_dp(f0, &fw, &td, cfg, deletions, audit);
            }
            ReduceOutcome::Incomplete(reason) => {
                return Err(Error::Incomplete(reason));
            }
        }
    }
}

fn witness_line(w: &Witness) -> String {
    format!(
        "witness: path of {} vertices, independent set of {}",
        w.path.len(),
        w.independent_set.len()
    )
}

/// Run the dynamic program on the surviving framework and lift the verdict.
/// Deletions preserve the answer, and any path in the reduced graph is a
/// path of the original, so witnesses verify against `f0` unchanged.
fn finish_with_dp(
    f0: &Framework,
    fw: &Framework,
    td: &TreeDecomposition,
    cfg: &DpConfig,
    deletions: Vec<VertexId>,
    mut audit: Vec<String>,
) -> Result<SolveReport> {
    let nice = make_nice(td, fw.graph(), fw.s(), fw.t())?;
    let out = solve_dp(fw, &nice, cfg)?;
    let keys: usize = out.stats.iter().map(|s| s.keys).sum();
    let entries: usize = out.stats.iter().map(|s| s.entries).sum();
    audit.push(format!("dp: {} nodes, {keys} keys, {entries} entries", out.stats.len()));
    let witness = match out.witness {
        Some(w) if out.yes => {
            verify_witness(f0, &w)?;
            audit.push(witness_line(&w));
            Some(w)
        }
        None if out.yes => {
            audit.push("dp reported YES without a reconstructible witness".into());
            None
        }
        _ => None,
    };
    Ok(SolveReport { yes: out.yes, witness, deletions, audit })
}
