//! Frameworks (graph + linear matroid on the same vertex set), the instance
//! file format, the classic problem reductions, and seeded generators.

use crate::error::Error;
use crate::exact::{is_prime_u64, next_prime_above, Domain, ExactMatrix, FieldTag, Scalar};
use crate::graph::{planar_embed, Graph};
use crate::matroid::LinearMatroid;
use crate::wall::{build_elementary_wall, pattern_vertices, validate_wall, WallModel};
use crate::{Result, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

/// A graph with a linear matroid on its vertex set, two terminals, and a
/// target rank. The central invariant is that the matroid ground set equals
/// the graph's vertex set, element for element; every mutation preserves it.
#[derive(Debug, Clone)]
pub struct Framework {
    graph: Graph,
    matroid: LinearMatroid,
    s: VertexId,
    t: VertexId,
    k: usize,
}

impl Framework {
    pub fn new(
        graph: Graph,
        matroid: LinearMatroid,
        s: VertexId,
        t: VertexId,
        k: usize,
    ) -> Result<Self> {
        let vs: Vec<VertexId> = graph.vertices().collect();
        if matroid.ground() != vs.as_slice() {
            return Err(Error::InvalidInstance(
                "ground set size mismatch: matroid columns must correspond \
                 one-to-one with graph vertices"
                    .into(),
            ));
        }
        if matroid.domain().is_lifted() {
            return Err(Error::InvalidInstance(
                "framework matroids live over a base field".into(),
            ));
        }
        if s == t {
            return Err(Error::InvalidInstance("terminals must differ".into()));
        }
        if !graph.has_vertex(s) || !graph.has_vertex(t) {
            return Err(Error::InvalidInstance(format!(
                "terminal {} absent from the graph",
                if graph.has_vertex(s) { t } else { s }
            )));
        }
        Ok(Framework { graph, matroid, s, t, k })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn matroid(&self) -> &LinearMatroid {
        &self.matroid
    }

    pub fn s(&self) -> VertexId {
        self.s
    }

    pub fn t(&self) -> VertexId {
        self.t
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The instance-file field this framework is written in.
    pub fn field(&self) -> FieldTag {
        match self.matroid.domain() {
            Domain::Gfp(p) | Domain::PolyGfp(p) => FieldTag::Prime(p),
            Domain::Rat | Domain::PolyRat => FieldTag::Rational,
        }
    }

    /// Same graph and matroid, different target rank.
    pub fn with_k(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.k = k;
        out
    }

    /// Delete a non-terminal vertex from the graph and the matroid together.
    pub fn delete(&self, v: VertexId) -> Result<Self> {
        if v == self.s || v == self.t {
            return Err(Error::InvalidInstance(format!(
                "refusing to delete terminal {v}"
            )));
        }
        if !self.graph.has_vertex(v) {
            return Err(Error::InvalidInstance(format!(
                "vertex {v} absent from the graph"
            )));
        }
        Ok(Framework {
            graph: self.graph.removed(v),
            matroid: self.matroid.delete(v),
            s: self.s,
            t: self.t,
            k: self.k,
        })
    }
}

/// A parsed or generated instance: the framework plus optional planarity and
/// wall certificates and provenance metadata.
#[derive(Debug, Clone)]
pub struct InstanceBundle {
    pub framework: Framework,
    /// Clockwise neighbor order per vertex, when the instance carries one.
    pub rotation: Option<BTreeMap<VertexId, Vec<VertexId>>>,
    /// Wall certificate, validated against the graph on parse.
    pub wall: Option<WallModel>,
    pub name: String,
    pub generator: Option<String>,
    pub seed: Option<u64>,
}

impl InstanceBundle {
    pub fn bare(framework: Framework) -> Self {
        InstanceBundle {
            framework,
            rotation: None,
            wall: None,
            name: String::new(),
            generator: None,
            seed: None,
        }
    }
}

/// `ExactMatrix::from_rows` forgets the width of an empty matrix; matroid
/// construction needs it.
fn rows_matrix(dom: Domain, rows: Vec<Vec<Scalar>>, cols: usize) -> ExactMatrix {
    if rows.is_empty() {
        ExactMatrix::zero(0, cols, dom)
    } else {
        ExactMatrix::from_rows(dom, rows)
    }
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

/// Cursor over the logical (comment-stripped, nonblank) lines of a file.
struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let mut items = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let body = match raw.find('#') {
                Some(h) => &raw[..h],
                None => raw,
            };
            let body = body.trim();
            if !body.is_empty() {
                items.push((i + 1, body));
            }
        }
        Lines { items, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.items.get(self.pos) {
            Some(&(line, body)) => {
                self.pos += 1;
                Ok((line, body))
            }
            None => Err(perr(
                self.items.last().map_or(1, |&(l, _)| l + 1),
                1,
                format!("unexpected end of file, expected {what}"),
            )),
        }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }
}

fn parse_num<T: std::str::FromStr>(tok: &str, line: usize, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| perr(line, 1, format!("expected {what}, got `{tok}`")))
}

/// Split a header line `TAG rest...` and check the tag.
fn expect_tag<'a>(line: usize, body: &'a str, tag: &str) -> Result<Vec<&'a str>> {
    let mut toks = body.split_whitespace();
    let head = toks.next().unwrap_or("");
    if head != tag {
        return Err(perr(line, 1, format!("expected `{tag}` header, got `{head}`")));
    }
    Ok(toks.collect())
}

/// Parse an instance file. The grammar is line-oriented with `#` comments:
/// FRAMEWORK / FIELD / GRAPH (+ optional VERTICES when ids have gaps) /
/// TERMINALS / K / MATROID, then optional EMBEDDING and WALL blocks.
/// Certificates are validated against the graph before the bundle is
/// returned.
pub fn parse_instance(text: &str) -> Result<InstanceBundle> {
    // Provenance comments (`# name: …`) are metadata, not content; collect
    // them from the raw text before stripping.
    let mut name = String::new();
    let mut generator = None;
    let mut seed = None;
    for raw in text.lines() {
        let raw = raw.trim();
        if let Some(rest) = raw.strip_prefix("# name:") {
            name = rest.trim().to_string();
        } else if let Some(rest) = raw.strip_prefix("# generator:") {
            generator = Some(rest.trim().to_string());
        } else if let Some(rest) = raw.strip_prefix("# seed:") {
            seed = rest.trim().parse::<u64>().ok();
        }
    }

    let mut lines = Lines::new(text);

    let (l, body) = lines.next("FRAMEWORK header")?;
    let rest = expect_tag(l, body, "FRAMEWORK")?;
    if rest != ["v1"] {
        return Err(perr(l, 11, format!("unsupported version `{}`", rest.join(" "))));
    }

    let (l, body) = lines.next("FIELD header")?;
    let rest = expect_tag(l, body, "FIELD")?;
    let tag = match rest.as_slice() {
        ["rational"] => FieldTag::Rational,
        ["gfp", ptok] => {
            let p: u64 = parse_num(ptok, l, "prime modulus")?;
            if !is_prime_u64(p) {
                return Err(perr(l, 11, format!("modulus {p} is not prime")));
            }
            FieldTag::Prime(p)
        }
        _ => return Err(perr(l, 7, "expected `gfp <p>` or `rational`")),
    };

    let (l, body) = lines.next("GRAPH header")?;
    let rest = expect_tag(l, body, "GRAPH")?;
    let [ntok, mtok] = rest.as_slice() else {
        return Err(perr(l, 7, "expected `GRAPH <n> <m>`"));
    };
    let n: usize = parse_num(ntok, l, "vertex count")?;
    let m: usize = parse_num(mtok, l, "edge count")?;

    // Optional VERTICES line names the ids explicitly; otherwise 0..n.
    let ids: Vec<VertexId> = match lines.peek() {
        Some((vl, vbody)) if vbody.starts_with("VERTICES") => {
            lines.next("VERTICES")?;
            let toks = expect_tag(vl, vbody, "VERTICES")?;
            if toks.len() != n {
                return Err(perr(vl, 10, format!(
                    "VERTICES lists {} ids, GRAPH declares {n}",
                    toks.len()
                )));
            }
            let mut out = Vec::with_capacity(n);
            for t in toks {
                out.push(parse_num::<VertexId>(t, vl, "vertex id")?);
            }
            if out.windows(2).any(|w| w[0] >= w[1]) {
                return Err(perr(vl, 10, "vertex ids must be strictly ascending"));
            }
            out
        }
        _ => (0..n as VertexId).collect(),
    };
    let idset: BTreeSet<VertexId> = ids.iter().copied().collect();

    let mut graph = Graph::with_vertices(ids.iter().copied());
    for _ in 0..m {
        let (el, ebody) = lines.next("edge line")?;
        let toks: Vec<&str> = ebody.split_whitespace().collect();
        let [ut, vt] = toks.as_slice() else {
            return Err(perr(el, 1, "expected `u v` edge line"));
        };
        let u: VertexId = parse_num(ut, el, "vertex id")?;
        let v: VertexId = parse_num(vt, el, "vertex id")?;
        for w in [u, v] {
            if !idset.contains(&w) {
                return Err(perr(el, 1, format!("dangling vertex id {w}")));
            }
        }
        if u == v {
            return Err(perr(el, 1, format!("self-loop at {u}")));
        }
        graph.add_edge(u, v);
    }

    let (l, body) = lines.next("TERMINALS header")?;
    let rest = expect_tag(l, body, "TERMINALS")?;
    let [st, tt] = rest.as_slice() else {
        return Err(perr(l, 11, "expected `TERMINALS <s> <t>`"));
    };
    let s: VertexId = parse_num(st, l, "terminal id")?;
    let t: VertexId = parse_num(tt, l, "terminal id")?;

    let (l, body) = lines.next("K header")?;
    let rest = expect_tag(l, body, "K")?;
    let [ktok] = rest.as_slice() else {
        return Err(perr(l, 3, "expected `K <k>`"));
    };
    let k: usize = parse_num(ktok, l, "target rank")?;

    let (l, body) = lines.next("MATROID header")?;
    let rest = expect_tag(l, body, "MATROID")?;
    let [rtok, ctok] = rest.as_slice() else {
        return Err(perr(l, 9, "expected `MATROID <r> <n>`"));
    };
    let r: usize = parse_num(rtok, l, "row count")?;
    let nc: usize = parse_num(ctok, l, "column count")?;
    if nc != n {
        return Err(perr(l, 9, format!(
            "ground set size mismatch: MATROID has {nc} columns, GRAPH has {n} vertices"
        )));
    }
    let mut rows = Vec::with_capacity(r);
    for _ in 0..r {
        let (rl, rbody) = lines.next("matrix row")?;
        let toks: Vec<&str> = rbody.split_whitespace().collect();
        if toks.len() != nc {
            return Err(perr(rl, 1, format!(
                "matrix row has {} entries, expected {nc}",
                toks.len()
            )));
        }
        let mut row = Vec::with_capacity(nc);
        for (j, tok) in toks.iter().enumerate() {
            let sc = Scalar::parse(tok, tag).map_err(|e| match e {
                Error::Parse { msg, .. } => perr(rl, j + 1, msg),
                other => other,
            })?;
            row.push(sc);
        }
        rows.push(row);
    }
    let matrix = rows_matrix(tag.domain(), rows, nc);
    let matroid = LinearMatroid::new(ids.clone(), matrix)?;
    let framework = Framework::new(graph, matroid, s, t, k)?;

    let mut rotation = None;
    let mut wall = None;
    while let Some((bl, bbody)) = lines.peek() {
        let head = bbody.split_whitespace().next().unwrap_or("");
        match head {
            "EMBEDDING" => {
                lines.next("EMBEDDING")?;
                let mut rot: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
                for _ in 0..n {
                    let (el, ebody) = lines.next("rotation line")?;
                    let Some((vtok, rest)) = ebody.split_once(':') else {
                        return Err(perr(el, 1, "expected `v: neighbors…` rotation line"));
                    };
                    let v: VertexId = parse_num(vtok.trim(), el, "vertex id")?;
                    let mut nbrs = Vec::new();
                    for tok in rest.split_whitespace() {
                        nbrs.push(parse_num::<VertexId>(tok, el, "vertex id")?);
                    }
                    if rot.insert(v, nbrs).is_some() {
                        return Err(perr(el, 1, format!("duplicate rotation for {v}")));
                    }
                }
                validate_rotation(framework.graph(), &rot)?;
                rotation = Some(rot);
            }
            "WALL" => {
                let (wl, wbody) = lines.next("WALL")?;
                let toks = expect_tag(wl, wbody, "WALL")?;
                let (height, parity): (u32, Option<u8>) = match toks.as_slice() {
                    [h] => (parse_num(h, wl, "wall height")?, None),
                    [h, p] => (
                        parse_num(h, wl, "wall height")?,
                        Some(parse_num(p, wl, "wall parity")?),
                    ),
                    _ => return Err(perr(wl, 6, "expected `WALL <height> [parity]`")),
                };
                let mut branch = BTreeMap::new();
                let mut paths = BTreeMap::new();
                while let Some((cl, cbody)) = lines.peek() {
                    let mut toks = cbody.split_whitespace();
                    match toks.next() {
                        Some("B") => {
                            lines.next("branch line")?;
                            let rest: Vec<&str> = toks.collect();
                            let [x, y, h] = rest.as_slice() else {
                                return Err(perr(cl, 3, "expected `B <x> <y> <host>`"));
                            };
                            let pos = (
                                parse_num::<u16>(x, cl, "pattern column")?,
                                parse_num::<u16>(y, cl, "pattern row")?,
                            );
                            let host: VertexId = parse_num(h, cl, "host vertex")?;
                            if branch.insert(pos, host).is_some() {
                                return Err(perr(cl, 3, format!(
                                    "duplicate branch position {pos:?}"
                                )));
                            }
                        }
                        Some("P") => {
                            lines.next("path line")?;
                            let rest: Vec<&str> = toks.collect();
                            if rest.len() < 4 {
                                return Err(perr(cl, 3,
                                    "expected `P <x1> <y1> <x2> <y2> [internals…]`"));
                            }
                            let a = (
                                parse_num::<u16>(rest[0], cl, "pattern column")?,
                                parse_num::<u16>(rest[1], cl, "pattern row")?,
                            );
                            let b = (
                                parse_num::<u16>(rest[2], cl, "pattern column")?,
                                parse_num::<u16>(rest[3], cl, "pattern row")?,
                            );
                            let key = if a <= b { (a, b) } else { (b, a) };
                            let mut internals = Vec::new();
                            for tok in &rest[4..] {
                                internals.push(parse_num::<VertexId>(tok, cl, "host vertex")?);
                            }
                            if paths.insert(key, internals).is_some() {
                                return Err(perr(cl, 3, format!(
                                    "duplicate path for edge {key:?}"
                                )));
                            }
                        }
                        _ => break,
                    }
                }
                let parity = match parity {
                    Some(p) if p <= 1 => p,
                    Some(p) => return Err(perr(wl, 6, format!("parity must be 0/1, got {p}"))),
                    // Old files omit the parity; the branch-map footprint
                    // identifies it, since the trimmed corners differ.
                    None => {
                        let keys: BTreeSet<_> = branch.keys().copied().collect();
                        let fits = |par: u8| {
                            pattern_vertices(height, par)
                                .into_iter()
                                .collect::<BTreeSet<_>>()
                                == keys
                        };
                        if fits(0) {
                            0
                        } else if fits(1) {
                            1
                        } else {
                            return Err(perr(wl, 6,
                                "branch map matches neither brick parity"));
                        }
                    }
                };
                let model = WallModel { height, parity, branch, paths };
                validate_wall(framework.graph(), &model)?;
                wall = Some(model);
            }
            other => return Err(perr(bl, 1, format!("unexpected trailing block `{other}`"))),
        }
    }

    Ok(InstanceBundle { framework, rotation, wall, name, generator, seed })
}

fn validate_rotation(g: &Graph, rot: &BTreeMap<VertexId, Vec<VertexId>>) -> Result<()> {
    let vs: BTreeSet<VertexId> = g.vertices().collect();
    let keys: BTreeSet<VertexId> = rot.keys().copied().collect();
    if keys != vs {
        return Err(Error::InvalidInstance(
            "embedding must list every vertex exactly once".into(),
        ));
    }
    for (&v, order) in rot {
        let listed: BTreeSet<VertexId> = order.iter().copied().collect();
        let actual: BTreeSet<VertexId> = g.neighbors(v).collect();
        if listed.len() != order.len() || listed != actual {
            return Err(Error::InvalidInstance(format!(
                "rotation at {v} is not a permutation of its neighbors"
            )));
        }
    }
    Ok(())
}

/// Serialize a bundle in canonical form: provenance comments first, scalars
/// canonicalized, edges and block lines ascending. `parse_instance` of the
/// output reproduces the bundle.
pub fn write_instance(bundle: &InstanceBundle) -> Result<String> {
    let fw = &bundle.framework;
    let g = fw.graph();
    let mut out = String::new();
    out.push_str("FRAMEWORK v1\n");
    if !bundle.name.is_empty() {
        writeln!(out, "# name: {}", bundle.name).unwrap();
    }
    if let Some(gen) = &bundle.generator {
        writeln!(out, "# generator: {gen}").unwrap();
    }
    if let Some(seed) = bundle.seed {
        writeln!(out, "# seed: {seed}").unwrap();
    }
    writeln!(out, "FIELD {}", fw.field()).unwrap();
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    let edges = g.edges();
    writeln!(out, "GRAPH {n} {}", edges.len()).unwrap();
    let contiguous = ids.iter().enumerate().all(|(i, &v)| v as usize == i);
    if !contiguous {
        let toks: Vec<String> = ids.iter().map(|v| v.to_string()).collect();
        writeln!(out, "VERTICES {}", toks.join(" ")).unwrap();
    }
    for (u, v) in &edges {
        writeln!(out, "{u} {v}").unwrap();
    }
    writeln!(out, "TERMINALS {} {}", fw.s(), fw.t()).unwrap();
    writeln!(out, "K {}", fw.k()).unwrap();
    let mat = fw.matroid().matrix();
    writeln!(out, "MATROID {} {}", mat.rows(), mat.cols()).unwrap();
    for line in mat.render_rows()? {
        out.push_str(&line);
        out.push('\n');
    }
    if let Some(rot) = &bundle.rotation {
        out.push_str("EMBEDDING\n");
        for (v, order) in rot {
            let toks: Vec<String> = order.iter().map(|u| u.to_string()).collect();
            writeln!(out, "{v}: {}", toks.join(" ")).unwrap();
        }
    }
    if let Some(w) = &bundle.wall {
        writeln!(out, "WALL {} {}", w.height, w.parity).unwrap();
        for (&(x, y), &host) in &w.branch {
            writeln!(out, "B {x} {y} {host}").unwrap();
        }
        for (&((x1, y1), (x2, y2)), internals) in &w.paths {
            write!(out, "P {x1} {y1} {x2} {y2}").unwrap();
            for v in internals {
                write!(out, " {v}").unwrap();
            }
            out.push('\n');
        }
    }
    Ok(out)
}

/// Longest Path as a framework: a path has at least k vertices exactly when
/// its rank reaches k in the uniform matroid U(k,n), represented by a k×n
/// Vandermonde matrix with distinct nodes over the smallest prime above n.
pub fn reduce_longest_path(g: &Graph, s: VertexId, t: VertexId, k: usize) -> Result<Framework> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    if k > n {
        return Err(Error::InvalidInstance(format!(
            "target {k} exceeds the vertex count {n}"
        )));
    }
    let p = next_prime_above(n as u64);
    let dom = Domain::Gfp(p);
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let node = Scalar::gfp(j as i64, p);
            let mut v = Scalar::one(dom);
            for _ in 0..i {
                v = v.mul(&node);
            }
            row.push(v);
        }
        rows.push(row);
    }
    let matroid = LinearMatroid::new(ids.clone(), rows_matrix(dom, rows, ids.len()))?;
    Framework::new(g.clone(), matroid, s, t, k)
}

/// T-Cycle as frameworks: G has a cycle through every vertex of T exactly
/// when some edge {u,v}, removed from the graph, leaves a (u,v)-path that
/// still collects all of T. Terminal vertices carry standard basis columns,
/// everything else the zero column, so rank counts the T-vertices visited.
pub fn reduce_t_cycle(g: &Graph, terminals: &BTreeSet<VertexId>) -> Result<Vec<Framework>> {
    for &v in terminals {
        if !g.has_vertex(v) {
            return Err(Error::InvalidInstance(format!(
                "T-vertex {v} absent from the graph"
            )));
        }
    }
    let ids: Vec<VertexId> = g.vertices().collect();
    let k = terminals.len();
    let dom = Domain::Gfp(2);
    let mut rows = vec![vec![Scalar::zero(dom); ids.len()]; k];
    for (i, tv) in terminals.iter().enumerate() {
        let j = ids.binary_search(tv).expect("terminal present");
        rows[i][j] = Scalar::one(dom);
    }
    let matrix = rows_matrix(dom, rows, ids.len());
    let mut out = Vec::new();
    for (u, v) in g.edges() {
        let mut h = g.clone();
        h.remove_edge(u, v);
        let matroid = LinearMatroid::new(ids.clone(), matrix.clone())?;
        out.push(Framework::new(h, matroid, u, v, k)?);
    }
    Ok(out)
}

/// Maximum Colored Path as a framework: each vertex carries the indicator
/// column of its color, so the rank of a path is the number of distinct
/// colors it visits (a partition matroid).
pub fn reduce_colored_path(
    g: &Graph,
    s: VertexId,
    t: VertexId,
    coloring: &BTreeMap<VertexId, u32>,
    k: usize,
) -> Result<Framework> {
    let ids: Vec<VertexId> = g.vertices().collect();
    for v in &ids {
        if !coloring.contains_key(v) {
            return Err(Error::InvalidInstance(format!("vertex {v} has no color")));
        }
    }
    let colors: Vec<u32> = coloring
        .iter()
        .filter(|(v, _)| g.has_vertex(**v))
        .map(|(_, &c)| c)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let dom = Domain::Gfp(2);
    let mut rows = vec![vec![Scalar::zero(dom); ids.len()]; colors.len()];
    for (j, v) in ids.iter().enumerate() {
        let i = colors.binary_search(&coloring[v]).expect("color listed");
        rows[i][j] = Scalar::one(dom);
    }
    let matroid = LinearMatroid::new(ids.clone(), rows_matrix(dom, rows, ids.len()))?;
    Framework::new(g.clone(), matroid, s, t, k)
}

/// What matroid a generator should attach to the vertices it produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatroidKind {
    /// Uniform U(rank, n): Vandermonde columns over the smallest prime > n.
    Uniform { rank: usize },
    /// The rank-zero matroid (an empty matrix).
    Zero,
    /// Seeded random matrix with the given row count over GF(p).
    Random { rows: usize, p: u64 },
    /// Partition matroid: seeded random color per vertex, indicator columns.
    Partition { classes: usize },
}

/// Matroid recipe plus the target rank for generated instances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidSpec {
    pub kind: MatroidKind,
    pub k: usize,
}

fn matroid_for(ids: Vec<VertexId>, spec: &MatroidKind, rng: &mut ChaCha8Rng) -> Result<LinearMatroid> {
    let n = ids.len();
    match spec {
        MatroidKind::Uniform { rank } => {
            let p = next_prime_above(n as u64);
            let dom = Domain::Gfp(p);
            let mut rows = Vec::with_capacity(*rank);
            for i in 0..*rank {
                let mut row = Vec::with_capacity(n);
                for j in 0..n {
                    let node = Scalar::gfp(j as i64, p);
                    let mut v = Scalar::one(dom);
                    for _ in 0..i {
                        v = v.mul(&node);
                    }
                    row.push(v);
                }
                rows.push(row);
            }
            let n = ids.len();
            LinearMatroid::new(ids, rows_matrix(dom, rows, n))
        }
        MatroidKind::Zero => {
            LinearMatroid::new(ids, ExactMatrix::zero(0, n, Domain::Gfp(2)))
        }
        MatroidKind::Random { rows, p } => {
            if !is_prime_u64(*p) {
                return Err(Error::InvalidInstance(format!("modulus {p} is not prime")));
            }
            let dom = Domain::Gfp(*p);
            let mut mat = Vec::with_capacity(*rows);
            for _ in 0..*rows {
                let row: Vec<Scalar> = (0..n)
                    .map(|_| Scalar::gfp(rng.gen_range(0..*p) as i64, *p))
                    .collect();
                mat.push(row);
            }
            let n = ids.len();
            LinearMatroid::new(ids, rows_matrix(dom, mat, n))
        }
        MatroidKind::Partition { classes } => {
            let classes = (*classes).max(1);
            let dom = Domain::Gfp(2);
            let mut rows = vec![vec![Scalar::zero(dom); n]; classes];
            for j in 0..n {
                let c = rng.gen_range(0..classes);
                rows[c][j] = Scalar::one(dom);
            }
            let n = ids.len();
            LinearMatroid::new(ids, rows_matrix(dom, rows, n))
        }
    }
}

/// Build a wall instance: an elementary wall of the given height with the
/// terminals attached to its perimeter from outside, so the wall's compass
/// avoids both. Carries a WALL certificate.
pub fn gen_wall_instance(r: u32, spec: &MatroidSpec, seed: u64) -> Result<InstanceBundle> {
    let (mut g, model) = build_elementary_wall(r)?;
    let perim: Vec<VertexId> = model.host_layers()[0].clone();
    let s = g.vertices().last().unwrap() + 1;
    let t = s + 1;
    g.add_vertex(s);
    g.add_vertex(t);
    g.add_edge(s, perim[0]);
    g.add_edge(t, perim[perim.len() / 2]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<VertexId> = g.vertices().collect();
    let matroid = matroid_for(ids, &spec.kind, &mut rng)?;
    let framework = Framework::new(g, matroid, s, t, spec.k)?;
    Ok(InstanceBundle {
        framework,
        rotation: None,
        wall: Some(model),
        name: format!("wall-{r}-{seed}"),
        generator: Some(format!("wall r={r}")),
        seed: Some(seed),
    })
}

/// Build a random planar instance: a seeded spanning subgraph of a
/// triangulated grid on n vertices, terminals at the numbering's extremes.
/// Carries the rotation system of one planar embedding.
pub fn gen_random_planar(
    n: usize,
    density: f64,
    spec: &MatroidSpec,
    seed: u64,
) -> Result<InstanceBundle> {
    if n < 2 {
        return Err(Error::InvalidInstance("need at least two vertices".into()));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidInstance(format!("density {density} out of [0,1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = (n as f64).sqrt().ceil() as usize;
    let coord = |v: usize| (v % side, v / side);
    let id_at = |x: usize, y: usize| y * side + x;
    let mut g = Graph::with_vertices(0..n as VertexId);
    let maybe = |g: &mut Graph, rng: &mut ChaCha8Rng, u: usize, v: usize| {
        if rng.gen_bool(density) {
            g.add_edge(u as VertexId, v as VertexId);
        }
    };
    for v in 0..n {
        let (x, y) = coord(v);
        if x + 1 < side && id_at(x + 1, y) < n {
            maybe(&mut g, &mut rng, v, id_at(x + 1, y));
        }
        if id_at(x, y + 1) < n {
            maybe(&mut g, &mut rng, v, id_at(x, y + 1));
        }
        // One diagonal per grid cell keeps the host planar (triangulation).
        if x + 1 < side && id_at(x + 1, y + 1) < n {
            if rng.gen_bool(0.5) {
                maybe(&mut g, &mut rng, v, id_at(x + 1, y + 1));
            } else {
                maybe(&mut g, &mut rng, id_at(x + 1, y), id_at(x, y + 1));
            }
        }
    }
    let rotation = planar_embed(&g)?.rotation;
    let ids: Vec<VertexId> = g.vertices().collect();
    let matroid = matroid_for(ids, &spec.kind, &mut rng)?;
    let framework = Framework::new(g, matroid, 0, n as VertexId - 1, spec.k)?;
    Ok(InstanceBundle {
        framework,
        rotation: Some(rotation),
        wall: None,
        name: format!("planar-{n}-{seed}"),
        generator: Some(format!("planar n={n} density={density}")),
        seed: Some(seed),
    })
}
