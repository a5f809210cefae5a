//! Command surface for the solver suite.
//!
//! Exit codes: 0 = YES (or a clean reduce/check), 1 = NO (or check
//! violations), 2 = usage or parse errors, 3 = an honest abstention.

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rankpath::dp::{solve_dp, DpConfig, Witness};
use rankpath::graph::planar_embed;
use rankpath::instance::{
    gen_random_planar, gen_wall_instance, parse_instance, reduce_colored_path,
    reduce_longest_path, reduce_t_cycle, write_instance, MatroidKind, MatroidSpec,
};
use rankpath::matroid::{representative_family, truncate, TruncationMode};
use rankpath::oracle::{
    brute_force, check_matroid_axioms, check_representative, BRUTE_FORCE_LIMIT, CHECKER_LIMIT,
};
use rankpath::pipeline::{solve_full, verify_witness, Limits};
use rankpath::reduce::{constants_for, reduce_once, ReduceOutcome, ReductionConstants, ReductionMode};
use rankpath::td::{make_nice, treewidth_decompose, validate_td, TwResult};
use rankpath::wall::validate_wall;
use rankpath::{Error, Framework, InstanceBundle, Result, VertexId};
use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rankpath", version, about = "Maximum-rank (s,t)-path solver suite")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Reduction constants: `paper`, `relaxed`, or `relaxed:b,x,z,q,r`.
    #[arg(long, global = true, default_value = "relaxed")]
    constants: String,
    /// Seed for generators and randomized truncation.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Replay the verdict against the brute-force oracle when small enough.
    #[arg(long, global = true)]
    verify: bool,
    /// Prune every dynamic-program cell at q = k instead of q = k − i.
    #[arg(long, global = true)]
    uniform_k_rep: bool,
    /// Historical forget rule: plain removal instead of segment contraction.
    #[arg(long, global = true)]
    paper_literal_forget: bool,
    /// Historical root rule: accept only i = k, ignoring terminal columns.
    #[arg(long, global = true)]
    paper_literal_root: bool,
    /// Randomized truncation seeded by --seed (overrides --truncation).
    #[arg(long, global = true)]
    randomized: bool,
    /// Truncation strategy for the dynamic program.
    #[arg(long, global = true, value_enum, default_value_t = TruncArg::Auto)]
    truncation: TruncArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum TruncArg {
    Auto,
    Evaluate,
    Symbolic,
}

#[derive(Subcommand)]
enum Cmd {
    /// Full pipeline: reduce until the width threshold admits the dynamic
    /// program, then decide.
    Solve {
        file: PathBuf,
        /// Cap on reducer deletions (default: the vertex count).
        #[arg(long)]
        max_deletions: Option<usize>,
        /// Override the decompose-first width threshold (default: g).
        #[arg(long)]
        width_threshold: Option<usize>,
    },
    /// Decompose and run the dynamic program directly, no reduction.
    Dp { file: PathBuf },
    /// Run the reduction loop and print the surviving instance.
    Reduce {
        file: PathBuf,
        /// Write the reduced instance here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Replay the oracle across every deletion (small instances only).
        #[arg(long)]
        verify_deletions: bool,
    },
    /// Exhaustive path enumeration (small instances only).
    Oracle { file: PathBuf },
    /// Generate an instance and print it.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        /// Write the instance here instead of stdout.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Validate an instance's components.
    Check {
        file: PathBuf,
        /// Which validator to run.
        #[arg(long, value_enum, default_value_t = CheckWhat::All)]
        what: CheckWhat,
    },
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum CheckWhat {
    All,
    Parse,
    Embedding,
    Td,
    Wall,
    Matroid,
    Repset,
}

#[derive(Clone, Copy, ValueEnum)]
enum MatKind {
    Uniform,
    Zero,
    Random,
    Partition,
}

#[derive(clap::Args)]
struct MatroidArgs {
    /// Matroid attached to the generated vertices.
    #[arg(long, value_enum, default_value_t = MatKind::Uniform)]
    matroid: MatKind,
    /// Rank target k of the instance.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Rank of the uniform matroid (default: k).
    #[arg(long)]
    rank: Option<usize>,
    /// Row count of the random matroid.
    #[arg(long, default_value_t = 2)]
    rows: usize,
    /// Prime modulus of the random matroid.
    #[arg(long, default_value_t = 101)]
    p: u64,
    /// Class count of the partition matroid.
    #[arg(long, default_value_t = 3)]
    classes: usize,
}

impl MatroidArgs {
    fn spec(&self) -> MatroidSpec {
        let kind = match self.matroid {
            MatKind::Uniform => MatroidKind::Uniform { rank: self.rank.unwrap_or(self.k) },
            MatKind::Zero => MatroidKind::Zero,
            MatKind::Random => MatroidKind::Random { rows: self.rows, p: self.p },
            MatKind::Partition => MatroidKind::Partition { classes: self.classes },
        };
        MatroidSpec { kind, k: self.k }
    }
}

#[derive(Subcommand)]
enum GenKind {
    /// Elementary wall of odd height r with terminals attached outside.
    Wall {
        r: u32,
        #[command(flatten)]
        matroid: MatroidArgs,
    },
    /// Spanning subgraph of a seeded triangulated grid.
    Planar {
        n: usize,
        /// Edge keep probability.
        #[arg(long, default_value_t = 0.7)]
        density: f64,
        #[command(flatten)]
        matroid: MatroidArgs,
    },
    /// Longest Path as a framework: uniform matroid over a planar host.
    LongestPath {
        n: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0.7)]
        density: f64,
    },
    /// T-Cycle as a framework: one per-edge instance of the host graph.
    Tcycle {
        n: usize,
        /// Size of the terminal set T.
        #[arg(long, default_value_t = 3)]
        t_size: usize,
        /// Which edge's instance to emit, by sorted edge index.
        #[arg(long, default_value_t = 0)]
        edge: usize,
        #[arg(long, default_value_t = 0.7)]
        density: f64,
    },
    /// Maximum Colored Path as a framework: partition matroid by color.
    Colored {
        n: usize,
        #[arg(long, default_value_t = 3)]
        colors: u32,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 0.7)]
        density: f64,
    },
}

fn main() -> ExitCode {
    // Die quietly when the reader of a pipe goes away (`rankpath … | head`),
    // like any well-behaved filter, instead of panicking on the write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Incomplete(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    match &cli.cmd {
        Cmd::Solve { file, max_deletions, width_threshold } => {
            let bundle = load(file)?;
            let consts = parse_constants(&cli.constants, bundle.framework.k())?;
            let limits =
                Limits { max_deletions: *max_deletions, width_threshold: *width_threshold };
            let report = solve_full(&bundle, &consts, &dp_config(cli), &limits)?;
            for line in &report.audit {
                println!("# {line}");
            }
            if cli.verify {
                replay(&bundle.framework, report.yes)?;
            }
            print_answer(report.yes, report.witness.as_ref(), Some(&report.deletions));
            Ok(verdict_code(report.yes))
        }
        Cmd::Dp { file } => {
            let bundle = load(file)?;
            let f = &bundle.framework;
            let consts = parse_constants(&cli.constants, f.k())?;
            let td = match treewidth_decompose(f.graph(), consts.g as usize) {
                TwResult::Decomposition(td) => td,
                TwResult::Exceeds(w) => {
                    return Err(Error::Incomplete(format!(
                        "treewidth exceeds {w}; use `solve` to reduce first"
                    )))
                }
                TwResult::Incomplete => {
                    return Err(Error::Incomplete(
                        "no decomposition found at the width threshold".into(),
                    ))
                }
            };
            println!("# decomposition: width {} over {} bags", td.width(), td.len());
            let nice = make_nice(&td, f.graph(), f.s(), f.t())?;
            let out = solve_dp(f, &nice, &dp_config(cli))?;
            if let Some(w) = &out.witness {
                verify_witness(f, w)?;
            }
            if cli.verify {
                replay(f, out.yes)?;
            }
            print_answer(out.yes, out.witness.as_ref(), None);
            Ok(verdict_code(out.yes))
        }
        Cmd::Reduce { file, out, verify_deletions } => {
            let bundle = load(file)?;
            let consts = parse_constants(&cli.constants, bundle.framework.k())?;
            run_reduce(&bundle, &consts, out.as_deref(), *verify_deletions)
        }
        Cmd::Oracle { file } => {
            let bundle = load(file)?;
            let f = &bundle.framework;
            let answer = brute_force(f)?;
            if let Some((path, rank)) = &answer.best {
                println!("# best path rank: {rank}");
                if answer.yes {
                    let set = greedy_independent(f, path);
                    print_answer(true, Some(&Witness { path: path.clone(), independent_set: set }), None);
                    return Ok(ExitCode::SUCCESS);
                }
            }
            print_answer(false, None, None);
            Ok(ExitCode::from(1))
        }
        Cmd::Gen { kind, out } => {
            let bundle = generate(kind, cli.seed)?;
            let text = write_instance(&bundle)?;
            match out {
                Some(path) => fs::write(path, text)?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Check { file, what } => run_check(&load(file)?, *what),
    }
}

fn verdict_code(yes: bool) -> ExitCode {
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load(path: &PathBuf) -> Result<InstanceBundle> {
    parse_instance(&fs::read_to_string(path)?)
}

fn parse_constants(spec: &str, k: usize) -> Result<ReductionConstants> {
    let mode = match spec {
        "paper" => ReductionMode::Paper,
        "relaxed" => ReductionMode::relaxed_default(),
        other => {
            let body = other.strip_prefix("relaxed:").ok_or_else(|| {
                Error::InvalidInstance(format!(
                    "constants must be `paper`, `relaxed`, or `relaxed:b,x,z,q,r`, got `{other}`"
                ))
            })?;
            let parts: Vec<u32> = body
                .split(',')
                .map(|x| x.trim().parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidInstance(format!("bad constants `{other}`: {e}")))?;
            let [b, x, z, q, r] = parts[..] else {
                return Err(Error::InvalidInstance(format!(
                    "relaxed constants need five values b,x,z,q,r, got {}",
                    parts.len()
                )));
            };
            ReductionMode::Relaxed { b, x, z, q, r }
        }
    };
    constants_for(k, mode)
}

fn dp_config(cli: &Cli) -> DpConfig {
    let truncation = if cli.randomized {
        TruncationMode::Randomized { seed: cli.seed }
    } else {
        match cli.truncation {
            TruncArg::Auto => TruncationMode::Auto,
            TruncArg::Evaluate => TruncationMode::Evaluate,
            TruncArg::Symbolic => TruncationMode::Symbolic,
        }
    };
    DpConfig {
        uniform_k_rep: cli.uniform_k_rep,
        paper_literal_forget: cli.paper_literal_forget,
        paper_literal_root: cli.paper_literal_root,
        truncation,
    }
}

fn join(ids: &[VertexId]) -> String {
    ids.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn print_answer(yes: bool, witness: Option<&Witness>, deletions: Option<&[VertexId]>) {
    println!("answer: {}", if yes { "YES" } else { "NO" });
    if let Some(w) = witness {
        println!("path: {}", join(&w.path));
        println!("independent_set: {}", join(&w.independent_set));
    }
    if let Some(d) = deletions {
        println!("deletions: {}", join(d));
    }
}

/// Oracle replay behind --verify: errors out on disagreement, reports an
/// honest skip above the enumeration cap.
fn replay(f: &Framework, yes: bool) -> Result<()> {
    if f.graph().num_vertices() > BRUTE_FORCE_LIMIT {
        println!("# verify: skipped, instance beyond the oracle cap");
        return Ok(());
    }
    let oracle = brute_force(f)?;
    if oracle.yes != yes {
        return Err(Error::InvalidInstance(format!(
            "verdict {} disagrees with the oracle",
            if yes { "YES" } else { "NO" }
        )));
    }
    println!("# verify: oracle agrees");
    Ok(())
}

/// Greedy independent subset of the path's vertices, capped at k.
fn greedy_independent(f: &Framework, path: &[VertexId]) -> Vec<VertexId> {
    let mut cands: Vec<VertexId> = path.to_vec();
    cands.sort_unstable();
    let mut set: Vec<VertexId> = Vec::new();
    while set.len() < f.k() {
        let Some(v) = f.matroid().extend_independent(&set, &cands) else {
            break;
        };
        let pos = set.binary_search(&v).expect_err("fresh vertex");
        set.insert(pos, v);
    }
    set
}

/// The reduce verb: step the reducer to a terminal outcome, optionally
/// replaying the oracle across each deletion.
fn run_reduce(
    bundle: &InstanceBundle,
    consts: &ReductionConstants,
    out: Option<&std::path::Path>,
    verify_deletions: bool,
) -> Result<ExitCode> {
    let mut fw = bundle.framework.clone();
    let mut cert = bundle.wall.clone();
    let mut deletions: Vec<VertexId> = Vec::new();
    let budget = fw.graph().num_vertices();
    for _ in 0..=budget {
        match reduce_once(&fw, consts, cert.as_ref()) {
            Ok(ReduceOutcome::PathFound { path, set }) => {
                verify_witness(
                    &bundle.framework,
                    &Witness { path: path.clone(), independent_set: set.clone() },
                )?;
                println!("# reducer constructed a certified path");
                print_answer(true, Some(&Witness { path, independent_set: set }), Some(&deletions));
                return Ok(ExitCode::SUCCESS);
            }
            Ok(ReduceOutcome::Irrelevant(v)) => {
                if verify_deletions {
                    replay_deletion(&fw, v)?;
                }
                fw = fw.delete(v)?;
                deletions.push(v);
                println!("# deleted {v}");
                if cert.as_ref().is_some_and(|c| c.host_vertices().contains(&v)) {
                    cert = None;
                }
            }
            Ok(ReduceOutcome::BelowThreshold(td)) => {
                println!("# reducer stopped: decomposition of width {}", td.width());
                println!("deletions: {}", join(&deletions));
                return emit_reduced(bundle, fw, out);
            }
            Ok(ReduceOutcome::Incomplete(reason)) => {
                println!("# incomplete: {reason}");
                println!("deletions: {}", join(&deletions));
                return Err(Error::Incomplete(reason));
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::Incomplete("deletion budget exhausted".into()))
}

/// Check that deleting v preserves the oracle's verdict (small instances).
fn replay_deletion(fw: &Framework, v: VertexId) -> Result<()> {
    if fw.graph().num_vertices() > BRUTE_FORCE_LIMIT {
        println!("# verify: deletion of {v} not replayed, instance beyond the oracle cap");
        return Ok(());
    }
    let before = brute_force(fw)?.yes;
    let after = brute_force(&fw.delete(v)?)?.yes;
    if before != after {
        return Err(Error::InvalidInstance(format!(
            "deleting {v} flipped the oracle verdict"
        )));
    }
    println!("# verify: deletion of {v} preserves the verdict");
    Ok(())
}

fn emit_reduced(
    bundle: &InstanceBundle,
    fw: Framework,
    out: Option<&std::path::Path>,
) -> Result<ExitCode> {
    let mut reduced = InstanceBundle::bare(fw);
    reduced.name = format!("{}-reduced", bundle.name);
    let text = write_instance(&reduced)?;
    match out {
        Some(path) => {
            fs::write(path, text)?;
            println!("# wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn generate(kind: &GenKind, seed: u64) -> Result<InstanceBundle> {
    match kind {
        GenKind::Wall { r, matroid } => gen_wall_instance(*r, &matroid.spec(), seed),
        GenKind::Planar { n, density, matroid } => {
            gen_random_planar(*n, *density, &matroid.spec(), seed)
        }
        GenKind::LongestPath { n, k, density } => {
            let host = host_graph(*n, *density, seed)?;
            let fw = reduce_longest_path(host.framework.graph(), 0, *n as VertexId - 1, *k)?;
            Ok(InstanceBundle {
                framework: fw,
                rotation: host.rotation,
                wall: None,
                name: format!("longest-path-{n}-{seed}"),
                generator: Some(format!("longest-path n={n} density={density}")),
                seed: Some(seed),
            })
        }
        GenKind::Tcycle { n, t_size, edge, density } => {
            let host = host_graph(*n, *density, seed)?;
            let g = host.framework.graph();
            if *t_size == 0 || *t_size > *n {
                return Err(Error::InvalidInstance(format!(
                    "terminal set size {t_size} out of range"
                )));
            }
            // Deterministic seeded terminal choice.
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7c79_636c);
            let verts: Vec<VertexId> = g.vertices().collect();
            let mut terminals = std::collections::BTreeSet::new();
            while terminals.len() < *t_size {
                terminals.insert(verts[rng.gen_range(0..verts.len())]);
            }
            let fws = reduce_t_cycle(g, &terminals)?;
            let Some(fw) = fws.into_iter().nth(*edge) else {
                return Err(Error::InvalidInstance(format!(
                    "edge index {edge} out of range ({} edges)",
                    g.num_edges()
                )));
            };
            let rotation = planar_embed(fw.graph()).ok().map(|e| e.rotation);
            Ok(InstanceBundle {
                framework: fw,
                rotation,
                wall: None,
                name: format!("tcycle-{n}-{seed}-e{edge}"),
                generator: Some(format!("tcycle n={n} t={t_size} density={density}")),
                seed: Some(seed),
            })
        }
        GenKind::Colored { n, colors, k, density } => {
            let host = host_graph(*n, *density, seed)?;
            let g = host.framework.graph();
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x636f_6c6f);
            let coloring: BTreeMap<VertexId, u32> =
                g.vertices().map(|v| (v, rng.gen_range(0..*colors.max(&1)))).collect();
            let fw = reduce_colored_path(g, 0, *n as VertexId - 1, &coloring, *k)?;
            Ok(InstanceBundle {
                framework: fw,
                rotation: host.rotation,
                wall: None,
                name: format!("colored-{n}-{seed}"),
                generator: Some(format!("colored n={n} colors={colors} density={density}")),
                seed: Some(seed),
            })
        }
    }
}

/// Seeded planar host for the problem reductions.
fn host_graph(n: usize, density: f64, seed: u64) -> Result<InstanceBundle> {
    gen_random_planar(n, density, &MatroidSpec { kind: MatroidKind::Zero, k: 0 }, seed)
}

fn run_check(bundle: &InstanceBundle, what: CheckWhat) -> Result<ExitCode> {
    let mut violations = 0usize;
    let mut section = |name: &str, outcome: Result<Vec<String>>| match outcome {
        Ok(v) if v.is_empty() => println!("# check {name}: ok"),
        Ok(v) => {
            for msg in v {
                println!("violation: {name}: {msg}");
                violations += 1;
            }
        }
        Err(Error::Unsupported(why)) => println!("# check {name}: skipped, {why}"),
        Err(e) => {
            println!("violation: {name}: {e}");
            violations += 1;
        }
    };
    let want = |w: CheckWhat| what == CheckWhat::All || what == w;

    if want(CheckWhat::Parse) {
        section("parse", check_roundtrip(bundle));
    }
    if want(CheckWhat::Embedding) {
        section("embedding", check_embedding(bundle));
    }
    if want(CheckWhat::Td) {
        section("td", check_td(bundle));
    }
    if want(CheckWhat::Wall) {
        match &bundle.wall {
            Some(w) => section("wall", validate_wall(bundle.framework.graph(), w).map(|()| vec![])),
            None => println!("# check wall: absent"),
        }
    }
    if want(CheckWhat::Matroid) {
        section("matroid", check_matroid_axioms(bundle.framework.matroid()));
    }
    if want(CheckWhat::Repset) {
        section("repset", check_repset(bundle.framework.matroid()));
    }
    drop(section);
    if violations == 0 {
        println!("check: ok");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("check: {violations} violations");
        Ok(ExitCode::from(1))
    }
}

fn check_roundtrip(bundle: &InstanceBundle) -> Result<Vec<String>> {
    let text = write_instance(bundle)?;
    let again = parse_instance(&text)?;
    if write_instance(&again)? == text {
        Ok(vec![])
    } else {
        Ok(vec!["canonical text does not round-trip".into()])
    }
}

fn check_embedding(bundle: &InstanceBundle) -> Result<Vec<String>> {
    let g = bundle.framework.graph();
    let emb = planar_embed(g)?;
    let mut out = Vec::new();
    if let Some(rotation) = &bundle.rotation {
        for v in g.vertices() {
            let mut claimed: Vec<VertexId> = match rotation.get(&v) {
                Some(order) => order.clone(),
                None => {
                    out.push(format!("vertex {v} missing from the rotation"));
                    continue;
                }
            };
            claimed.sort_unstable();
            let actual: Vec<VertexId> = g.neighbors(v).collect();
            if claimed != actual {
                out.push(format!("rotation at {v} is not a permutation of its neighbors"));
            }
        }
    }
    // The freshly computed embedding must self-validate.
    rankpath::graph::validate_embedding(g, &emb)?;
    Ok(out)
}

fn check_td(bundle: &InstanceBundle) -> Result<Vec<String>> {
    let g = bundle.framework.graph();
    let w = g.num_vertices().saturating_sub(1);
    match treewidth_decompose(g, w) {
        TwResult::Decomposition(td) => {
            validate_td(g, &td)?;
            Ok(vec![])
        }
        TwResult::Exceeds(_) => Ok(vec!["width search contradicts the trivial bound".into()]),
        TwResult::Incomplete => {
            Err(Error::Unsupported("no decomposition at the trivial bound".into()))
        }
    }
}

/// Smoke-test the representative-family machinery on this matroid: build
/// the family of all independent p-sets, shrink it, and verify q-coverage.
fn check_repset(m: &rankpath::LinearMatroid) -> Result<Vec<String>> {
    let n = m.ground().len();
    if n > CHECKER_LIMIT {
        return Err(Error::Unsupported(format!(
            "representative check capped at {CHECKER_LIMIT} elements, got {n}"
        )));
    }
    let r0 = m.full_rank();
    if r0 == 0 {
        return Err(Error::Unsupported("rank-zero matroid has no families".into()));
    }
    let p = r0.min(2);
    let q = (r0 - p).min(2);
    let mt = truncate(m, p + q, TruncationMode::Auto)?;
    let ground = m.ground().to_vec();
    let mut family: Vec<Vec<VertexId>> = Vec::new();
    let mut stack: Vec<(Vec<VertexId>, usize)> = vec![(Vec::new(), 0)];
    while let Some((set, from)) = stack.pop() {
        if set.len() == p {
            family.push(set);
            continue;
        }
        for i in from..ground.len() {
            let mut next = set.clone();
            next.push(ground[i]);
            if mt.is_independent(&next) {
                stack.push((next, i + 1));
            }
        }
    }
    family.sort();
    let sub = representative_family(&mt, &family, p, q)?;
    let mut out = Vec::new();
    if !check_representative(&mt, &family, &sub, q)? {
        out.push(format!("family of {} is not {q}-represented by {}", family.len(), sub.len()));
    }
    let bound = binom(p + q, p);
    if sub.len() > bound {
        out.push(format!("representative family of {} exceeds the bound {bound}", sub.len()));
    }
    Ok(out)
}

fn binom(n: usize, k: usize) -> usize {
    let k = k.min(n - k);
    let mut out = 1usize;
    for i in 0..k {
        out = out * (n - i) / (i + 1);
    }
    out
}
