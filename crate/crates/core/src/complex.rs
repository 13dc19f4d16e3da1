//! Finite combinatorial 2-complexes.
//!
//! Faces store their attaching maps as cyclic sequences of signed edges, so loops
//! and multi-edges (one-vertex presentation complexes, Cayley complexes of small
//! groups) are represented without ambiguity.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::presentation::{Letter, Presentation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SignedEdge {
    pub edge: usize,
    pub forward: bool,
}

impl SignedEdge {
    pub fn new(edge: usize, forward: bool) -> Self {
        SignedEdge { edge, forward }
    }

    pub fn inv(self) -> Self {
        SignedEdge::new(self.edge, !self.forward)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub name: String,
    pub tail: usize,
    pub head: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub name: String,
    pub boundary: Vec<SignedEdge>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TwoComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("realization does not satisfy relator {relator} at element {element}")]
    RelatorNotSatisfied { relator: usize, element: usize },
    #[error("invalid realization: {0}")]
    BadRealization(String),
    #[error("at least two faces are required, got {0}")]
    TooFewFaces(usize),
    #[error("faces {0} and {1} do not intersect")]
    NotIntersecting(usize, usize),
    #[error("faces must be pairwise distinct")]
    RepeatedFace,
    #[error("no such cell: {0}")]
    NoSuchCell(String),
}

impl TwoComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> usize {
        self.vertices.push(name.into());
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, name: impl Into<String>, tail: usize, head: usize) -> usize {
        self.edges.push(Edge {
            name: name.into(),
            tail,
            head,
        });
        self.edges.len() - 1
    }

    pub fn add_face(&mut self, name: impl Into<String>, boundary: Vec<SignedEdge>) -> usize {
        self.faces.push(Face {
            name: name.into(),
            boundary,
        });
        self.faces.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn boundary(&self, f: usize) -> &[SignedEdge] {
        &self.faces[f].boundary
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edge_by_name(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn face_by_name(&self, name: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.name == name)
    }

    /// Start vertex of a traversal of `s`.
    pub fn origin(&self, s: SignedEdge) -> usize {
        let e = &self.edges[s.edge];
        if s.forward {
            e.tail
        } else {
            e.head
        }
    }

    /// End vertex of a traversal of `s`.
    pub fn terminus(&self, s: SignedEdge) -> usize {
        let e = &self.edges[s.edge];
        if s.forward {
            e.head
        } else {
            e.tail
        }
    }

    /// Number of edge ends at `v`; a loop contributes two.
    pub fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.tail == v) + usize::from(e.head == v))
            .sum()
    }

    /// Vertices on the closed cell `f`.
    pub fn face_vertices(&self, f: usize) -> BTreeSet<usize> {
        self.faces[f].boundary.iter().map(|&s| self.origin(s)).collect()
    }

    pub fn face_edges(&self, f: usize) -> BTreeSet<usize> {
        self.faces[f].boundary.iter().map(|s| s.edge).collect()
    }

    /// Edges that lie on no face boundary.
    pub fn free_edges(&self) -> Vec<usize> {
        let used: BTreeSet<usize> = self.faces.iter().flat_map(|f| f.boundary.iter().map(|s| s.edge)).collect();
        (0..self.edges.len()).filter(|e| !used.contains(e)).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.tail >= self.vertices.len() || e.head >= self.vertices.len() {
                violations.push(Violation::DanglingVertex { edge: i });
            }
        }
        let mut names = BTreeSet::new();
        for v in &self.vertices {
            if !names.insert(("v", v.as_str())) {
                violations.push(Violation::DuplicateName(v.clone()));
            }
        }
        for e in &self.edges {
            if !names.insert(("e", e.name.as_str())) {
                violations.push(Violation::DuplicateName(e.name.clone()));
            }
        }
        for f in &self.faces {
            if !names.insert(("f", f.name.as_str())) {
                violations.push(Violation::DuplicateName(f.name.clone()));
            }
        }
        if !violations.is_empty() {
            return ValidationReport { violations };
        }
        for (fi, f) in self.faces.iter().enumerate() {
            let b = &f.boundary;
            if b.is_empty() {
                violations.push(Violation::EmptyBoundary { face: fi });
                continue;
            }
            if let Some(p) = b.iter().position(|s| s.edge >= self.edges.len()) {
                violations.push(Violation::DanglingEdge { face: fi, position: p });
                continue;
            }
            let n = b.len();
            for i in 0..n {
                let (s, t) = (b[i], b[(i + 1) % n]);
                if self.terminus(s) != self.origin(t) {
                    violations.push(Violation::NotClosed { face: fi, position: i });
                }
                if t == s.inv() {
                    violations.push(Violation::NotImmersed { face: fi, position: i });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Parses the line-oriented complex format (`v`, `e`, `f` records).
    pub fn parse(text: &str) -> Result<Self, ComplexError> {
        let mut c = TwoComplex::new();
        let mut vmap: HashMap<String, usize> = HashMap::new();
        let mut emap: HashMap<String, usize> = HashMap::new();
        let mut pending: Vec<(usize, String, Vec<String>)> = Vec::new();
        let err = |line: usize, m: String| ComplexError::Parse { line, message: m };
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            let Some(&kind) = toks.first() else { continue };
            let check_id = |t: &str| -> Result<(), ComplexError> {
                if t.chars().all(|ch| ch.is_ascii_alphanumeric() || ch == '_' || ch == ':' || ch == '.') {
                    Ok(())
                } else {
                    Err(err(line, format!("invalid id '{t}'")))
                }
            };
            match kind {
                "v" => {
                    if toks.len() != 2 {
                        return Err(err(line, "expected `v <id>`".into()));
                    }
                    check_id(toks[1])?;
                    if vmap.contains_key(toks[1]) {
                        return Err(err(line, format!("duplicate vertex '{}'", toks[1])));
                    }
                    vmap.insert(toks[1].to_string(), c.add_vertex(toks[1]));
                }
                "e" => {
                    if toks.len() != 4 {
                        return Err(err(line, "expected `e <id> <tail> <head>`".into()));
                    }
                    check_id(toks[1])?;
                    if emap.contains_key(toks[1]) {
                        return Err(err(line, format!("duplicate edge '{}'", toks[1])));
                    }
                    let lookup = |t: &str| vmap.get(t).copied().ok_or_else(|| err(line, format!("unknown vertex '{t}'")));
                    let (t, h) = (lookup(toks[2])?, lookup(toks[3])?);
                    emap.insert(toks[1].to_string(), c.add_edge(toks[1], t, h));
                }
                "f" => {
                    if toks.len() < 3 {
                        return Err(err(line, "expected `f <id> <±edge-id list>`".into()));
                    }
                    check_id(toks[1])?;
                    pending.push((line, toks[1].to_string(), toks[2..].iter().map(|s| s.to_string()).collect()));
                }
                other => return Err(err(line, format!("unknown record '{other}'"))),
            }
        }
        let mut fnames = BTreeSet::new();
        for (line, name, list) in pending {
            if !fnames.insert(name.clone()) {
                return Err(err(line, format!("duplicate face '{name}'")));
            }
            let mut boundary = Vec::with_capacity(list.len());
            for tok in list {
                let (forward, id) = match tok.strip_prefix('-') {
                    Some(rest) => (false, rest),
                    None => (true, tok.strip_prefix('+').unwrap_or(&tok)),
                };
                let e = *emap.get(id).ok_or_else(|| err(line, format!("unknown edge '{id}'")))?;
                boundary.push(SignedEdge::new(e, forward));
            }
            c.add_face(name, boundary);
        }
        Ok(c)
    }

    pub fn to_file_string(&self) -> String {
        let mut s = String::new();
        for v in &self.vertices {
            let _ = writeln!(s, "v {v}");
        }
        for e in &self.edges {
            let _ = writeln!(s, "e {} {} {}", e.name, self.vertices[e.tail], self.vertices[e.head]);
        }
        for f in &self.faces {
            let _ = write!(s, "f {}", f.name);
            for b in &f.boundary {
                let _ = write!(s, " {}{}", if b.forward { "+" } else { "-" }, self.edges[b.edge].name);
            }
            s.push('\n');
        }
        s
    }

    /// Boundary of `f` as a string of edge names, for reports.
    pub fn boundary_string(&self, f: usize) -> String {
        self.faces[f]
            .boundary
            .iter()
            .map(|b| format!("{}{}", if b.forward { "+" } else { "-" }, self.edges[b.edge].name))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Adds, for every free edge `e`, a parallel edge `e'` and a bigon face `e·e'⁻¹`.
    pub fn thicken_free_edges(&self) -> TwoComplex {
        let mut c = self.clone();
        for e in self.free_edges() {
            let Edge { name, tail, head } = self.edges[e].clone();
            let twin = c.add_edge(format!("{name}_thick"), tail, head);
            c.add_face(
                format!("{name}_bigon"),
                vec![SignedEdge::new(e, true), SignedEdge::new(twin, false)],
            );
        }
        c
    }
}

impl fmt::Display for TwoComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_file_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    DanglingVertex { edge: usize },
    DanglingEdge { face: usize, position: usize },
    EmptyBoundary { face: usize },
    /// `boundary[position]` does not end where `boundary[position + 1]` starts.
    NotClosed { face: usize, position: usize },
    /// `boundary[position + 1]` immediately backtracks along `boundary[position]`.
    NotImmersed { face: usize, position: usize },
    DuplicateName(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DanglingVertex { edge } => write!(f, "edge {edge} references a missing vertex"),
            Violation::DanglingEdge { face, position } => {
                write!(f, "face {face} position {position} references a missing edge")
            }
            Violation::EmptyBoundary { face } => write!(f, "face {face} has an empty boundary"),
            Violation::NotClosed { face, position } => {
                write!(f, "face {face} position {position}: boundary not closed path")
            }
            Violation::NotImmersed { face, position } => {
                write!(f, "face {face} position {position}: attaching map not an immersion")
            }
            Violation::DuplicateName(n) => write!(f, "duplicate id '{n}'"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// One vertex, one loop per generator, one face per relator.
pub fn build_presentation_complex(p: &Presentation) -> TwoComplex {
    let mut c = TwoComplex::new();
    let o = c.add_vertex("o");
    for &g in p.generators() {
        c.add_edge(g.to_string(), o, o);
    }
    let edge_of = |l: Letter| p.generator_index(l.gen).expect("relator letters are declared generators");
    for (i, r) in p.relators().iter().enumerate() {
        let boundary = r
            .word()
            .letters()
            .iter()
            .map(|&l| SignedEdge::new(edge_of(l), !l.inverse))
            .collect();
        c.add_face(format!("r{i}"), boundary);
    }
    c
}

/// A finite permutation representation: generator `i` sends element `g` to `perms[i][g]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PermRealization {
    n: usize,
    perms: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
}

impl PermRealization {
    pub fn new(n: usize, perms: Vec<Vec<usize>>) -> Result<Self, ComplexError> {
        if n == 0 {
            return Err(ComplexError::BadRealization("empty element set".into()));
        }
        let mut inverses = Vec::with_capacity(perms.len());
        for (i, p) in perms.iter().enumerate() {
            if p.len() != n {
                return Err(ComplexError::BadRealization(format!("permutation {i} has length {} != {n}", p.len())));
            }
            let mut inv = vec![usize::MAX; n];
            for (g, &h) in p.iter().enumerate() {
                if h >= n || inv[h] != usize::MAX {
                    return Err(ComplexError::BadRealization(format!("permutation {i} is not a bijection")));
                }
                inv[h] = g;
            }
            inverses.push(inv);
        }
        Ok(PermRealization { n, perms, inverses })
    }

    /// The regular action of the cyclic group of order `n` for a single generator.
    pub fn cyclic(n: usize) -> Self {
        Self::new(n, vec![(0..n).map(|g| (g + 1) % n).collect()]).expect("rotation is a bijection")
    }

    pub fn trivial(gens: usize) -> Self {
        Self::new(1, vec![vec![0]; gens]).expect("identity")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `g · l`, where `l` indexes generators in presentation order.
    pub fn step(&self, g: usize, gen_index: usize, inverse: bool) -> usize {
        if inverse {
            self.inverses[gen_index][g]
        } else {
            self.perms[gen_index][g]
        }
    }
}

/// Vertices are realization elements; edge `(g, g·x)` per generator `x`; one face
/// per closed relator loop, with translates tracing the same loop (up to rotation
/// or reversal) identified.
pub fn build_cayley_complex(p: &Presentation, r: &PermRealization) -> Result<TwoComplex, ComplexError> {
    if r.perms.len() != p.generators().len() {
        return Err(ComplexError::BadRealization(format!(
            "{} permutations for {} generators",
            r.perms.len(),
            p.generators().len()
        )));
    }
    let mut c = TwoComplex::new();
    for g in 0..r.n {
        c.add_vertex(g.to_string());
    }
    let k = p.generators().len();
    for g in 0..r.n {
        for (i, &x) in p.generators().iter().enumerate() {
            c.add_edge(format!("{x}{g}"), g, r.perms[i][g]);
        }
    }
    let mut seen: BTreeSet<Vec<SignedEdge>> = BTreeSet::new();
    for (ri, rel) in p.relators().iter().enumerate() {
        for start in 0..r.n {
            let mut g = start;
            let mut loop_edges = Vec::with_capacity(rel.len());
            for &l in rel.word().letters() {
                let gi = p.generator_index(l.gen).expect("declared generator");
                if l.inverse {
                    let prev = r.inverses[gi][g];
                    loop_edges.push(SignedEdge::new(prev * k + gi, false));
                    g = prev;
                } else {
                    loop_edges.push(SignedEdge::new(g * k + gi, true));
                    g = r.perms[gi][g];
                }
            }
            if g != start {
                return Err(ComplexError::RelatorNotSatisfied { relator: ri, element: start });
            }
            let key = canonical_cycle(&loop_edges);
            if seen.insert(key) {
                let name = format!("r{ri}_{start}");
                c.add_face(name, loop_edges);
            }
        }
    }
    Ok(c)
}

/// Least rotation of the cycle or of its reversal.
pub fn canonical_cycle(cycle: &[SignedEdge]) -> Vec<SignedEdge> {
    let n = cycle.len();
    let rev: Vec<SignedEdge> = cycle.iter().rev().map(|s| s.inv()).collect();
    let mut best: Option<Vec<SignedEdge>> = None;
    for seq in [cycle, &rev[..]] {
        for k in 0..n.max(1) {
            let cand: Vec<SignedEdge> = (0..n).map(|i| seq[(i + k) % n]).collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// An end of an edge at a vertex: `at_head` tells which end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeEnd {
    pub edge: usize,
    pub at_head: bool,
}

/// A corner of a face: the turn from `boundary[position]` into `boundary[position + 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LinkArc {
    pub face: usize,
    pub position: usize,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkGraph {
    pub vertex: usize,
    pub nodes: Vec<EdgeEnd>,
    pub arcs: Vec<LinkArc>,
}

impl LinkGraph {
    pub fn adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.nodes.len()];
        for a in &self.arcs {
            adj[a.from].insert(a.to);
            adj[a.to].insert(a.from);
        }
        adj
    }
}

pub fn link_of(c: &TwoComplex, v: usize) -> LinkGraph {
    let mut nodes = Vec::new();
    for (i, e) in c.edges.iter().enumerate() {
        if e.tail == v {
            nodes.push(EdgeEnd { edge: i, at_head: false });
        }
        if e.head == v {
            nodes.push(EdgeEnd { edge: i, at_head: true });
        }
    }
    let index: HashMap<EdgeEnd, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut arcs = Vec::new();
    for (fi, f) in c.faces.iter().enumerate() {
        let n = f.boundary.len();
        for i in 0..n {
            let (inc, out) = (f.boundary[i], f.boundary[(i + 1) % n]);
            if c.terminus(inc) != v {
                continue;
            }
            let a = EdgeEnd { edge: inc.edge, at_head: inc.forward };
            let b = EdgeEnd { edge: out.edge, at_head: !out.forward };
            if let (Some(&from), Some(&to)) = (index.get(&a), index.get(&b)) {
                arcs.push(LinkArc { face: fi, position: i, from, to });
            }
        }
    }
    LinkGraph { vertex: v, nodes, arcs }
}

/// Intersection of two closed 2-cells as a 1-subcomplex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Intersection {
    pub vertices: BTreeSet<usize>,
    pub edges: BTreeSet<usize>,
    pub is_connected: bool,
    pub is_subdivided_interval: bool,
    pub is_single_vertex: bool,
}

impl Intersection {
    pub fn from_cells(c: &TwoComplex, vertices: BTreeSet<usize>, edges: BTreeSet<usize>) -> Self {
        let is_connected = !vertices.is_empty() && connected(c, &vertices, &edges);
        let is_single_vertex = vertices.len() == 1 && edges.is_empty();
        let degrees_ok = vertices.iter().all(|&v| {
            edges
                .iter()
                .map(|&e| usize::from(c.edges[e].tail == v) + usize::from(c.edges[e].head == v))
                .sum::<usize>()
                <= 2
        });
        let is_subdivided_interval =
            is_connected && !edges.is_empty() && edges.len() + 1 == vertices.len() && degrees_ok;
        Intersection {
            vertices,
            edges,
            is_connected,
            is_subdivided_interval,
            is_single_vertex,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_subset_of(&self, vertices: &BTreeSet<usize>, edges: &BTreeSet<usize>) -> bool {
        self.vertices.is_subset(vertices) && self.edges.is_subset(edges)
    }
}

fn connected(c: &TwoComplex, vertices: &BTreeSet<usize>, edges: &BTreeSet<usize>) -> bool {
    let Some(&start) = vertices.iter().next() else {
        return false;
    };
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &e in edges {
            let Edge { tail, head, .. } = c.edges[e];
            let other = if tail == v {
                head
            } else if head == v {
                tail
            } else {
                continue;
            };
            if vertices.contains(&other) && seen.insert(other) {
                stack.push(other);
            }
        }
    }
    seen.len() == vertices.len()
}

pub fn face_intersection(c: &TwoComplex, f1: usize, f2: usize) -> Intersection {
    let vs = &c.face_vertices(f1) & &c.face_vertices(f2);
    let es = &c.face_edges(f1) & &c.face_edges(f2);
    Intersection::from_cells(c, vs, es)
}

/// Pairs of intersecting faces whose intersection is disconnected.
pub fn connected_intersection_scan(c: &TwoComplex) -> Vec<(usize, usize)> {
    let mut bad = Vec::new();
    for f1 in 0..c.face_count() {
        for f2 in f1 + 1..c.face_count() {
            let x = face_intersection(c, f1, f2);
            if !x.is_empty() && !x.is_connected {
                bad.push((f1, f2));
            }
        }
    }
    bad
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HellyReport {
    pub triples_checked: usize,
    pub violations: Vec<[usize; 3]>,
}

/// For each pairwise-intersecting triple, some pairwise intersection must lie in the third face.
pub fn strong_helly_check(c: &TwoComplex) -> HellyReport {
    let n = c.face_count();
    let verts: Vec<BTreeSet<usize>> = (0..n).map(|f| c.face_vertices(f)).collect();
    let edges: Vec<BTreeSet<usize>> = (0..n).map(|f| c.face_edges(f)).collect();
    let mut pair: BTreeMap<(usize, usize), Intersection> = BTreeMap::new();
    for a in 0..n {
        for b in a + 1..n {
            let x = Intersection::from_cells(c, &verts[a] & &verts[b], &edges[a] & &edges[b]);
            if !x.is_empty() {
                pair.insert((a, b), x);
            }
        }
    }
    let mut report = HellyReport::default();
    for a in 0..n {
        for b in a + 1..n {
            let Some(ab) = pair.get(&(a, b)) else { continue };
            for k in b + 1..n {
                let (Some(ak), Some(bk)) = (pair.get(&(a, k)), pair.get(&(b, k))) else {
                    continue;
                };
                report.triples_checked += 1;
                let ok = ab.is_subset_of(&verts[k], &edges[k])
                    || ak.is_subset_of(&verts[b], &edges[b])
                    || bk.is_subset_of(&verts[a], &edges[a]);
                if !ok {
                    report.violations.push([a, b, k]);
                }
            }
        }
    }
    report
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum IntersectionClass {
    Interval,
    SingleVertex,
    /// Anything else; a witness against the C(4)–T(4) conclusion.
    Other,
}

/// Classifies the common intersection of pairwise-intersecting, pairwise-distinct faces.
pub fn multi_intersection_check(c: &TwoComplex, faces: &[usize]) -> Result<(Intersection, IntersectionClass), ComplexError> {
    if faces.len() < 2 {
        return Err(ComplexError::TooFewFaces(faces.len()));
    }
    for &f in faces {
        if f >= c.face_count() {
            return Err(ComplexError::NoSuchCell(format!("face {f}")));
        }
    }
    for (i, &a) in faces.iter().enumerate() {
        for &b in &faces[i + 1..] {
            if a == b {
                return Err(ComplexError::RepeatedFace);
            }
            if face_intersection(c, a, b).is_empty() {
                return Err(ComplexError::NotIntersecting(a, b));
            }
        }
    }
    let mut vs = c.face_vertices(faces[0]);
    let mut es = c.face_edges(faces[0]);
    for &f in &faces[1..] {
        vs = &vs & &c.face_vertices(f);
        es = &es & &c.face_edges(f);
    }
    let x = Intersection::from_cells(c, vs, es);
    let class = if x.is_subdivided_interval {
        IntersectionClass::Interval
    } else if x.is_single_vertex {
        IntersectionClass::SingleVertex
    } else {
        IntersectionClass::Other
    };
    Ok((x, class))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::presentation::parse_presentation;

    fn square() -> TwoComplex {
        let mut c = TwoComplex::new();
        let v: Vec<usize> = (0..4).map(|i| c.add_vertex(format!("v{i}"))).collect();
        let e: Vec<usize> = (0..4).map(|i| c.add_edge(format!("e{i}"), v[i], v[(i + 1) % 4])).collect();
        c.add_face("f", e.iter().map(|&e| SignedEdge::new(e, true)).collect());
        c
    }

    #[test]
    fn validation_examples() {
        assert!(square().validate().is_valid());

        let mut c = square();
        c.add_face("g", vec![SignedEdge::new(0, true), SignedEdge::new(2, true)]);
        let r = c.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::NotClosed { face: 1, .. })));
        assert!(r.violations[0].to_string().contains("boundary not closed path"));

        let mut c = square();
        c.add_face("h", vec![SignedEdge::new(0, true), SignedEdge::new(0, false)]);
        let r = c.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::NotImmersed { face: 1, .. })));
        assert!(r.violations.iter().any(|v| v.to_string().contains("attaching map not an immersion")));

        let mut c = square();
        c.add_face("d", vec![SignedEdge::new(9, true)]);
        assert!(matches!(c.validate().violations[0], Violation::DanglingEdge { face: 1, position: 0 }));
    }

    #[test]
    fn file_round_trip() {
        let c = corpus::grid(2, 2);
        let text = c.to_file_string();
        assert_eq!(TwoComplex::parse(&text).unwrap(), c);
    }

    #[test]
    fn parse_errors_carry_lines() {
        let e = TwoComplex::parse("v a\ne x a b\n").unwrap_err();
        assert_eq!(e, ComplexError::Parse { line: 2, message: "unknown vertex 'b'".into() });
        let e = TwoComplex::parse("v a\ne x a a\nf F +x -y\n").unwrap_err();
        assert!(matches!(e, ComplexError::Parse { line: 3, .. }));
        assert!(TwoComplex::parse("q 1").is_err());
    }

    #[test]
    fn presentation_complexes() {
        let p = parse_presentation("gens: a b\nrels: abAB").unwrap();
        let c = build_presentation_complex(&p);
        assert_eq!((c.vertex_count(), c.edge_count(), c.face_count()), (1, 2, 1));
        assert_eq!(
            c.boundary(0),
            &[
                SignedEdge::new(0, true),
                SignedEdge::new(1, true),
                SignedEdge::new(0, false),
                SignedEdge::new(1, false)
            ]
        );
        assert!(c.validate().is_valid());

        let c = build_presentation_complex(&parse_presentation("gens: a\nrels: aaa").unwrap());
        assert_eq!((c.vertex_count(), c.edge_count(), c.face_count(), c.boundary(0).len()), (1, 1, 1, 3));

        let c = build_presentation_complex(&parse_presentation("gens: a b c d\nrels: abABcdCD").unwrap());
        assert_eq!((c.vertex_count(), c.edge_count(), c.face_count(), c.boundary(0).len()), (1, 4, 1, 8));
    }

    #[test]
    fn presentation_complex_spells_relators() {
        for text in ["gens: a b\nrels: abAB", "gens: a b\nrels: aabbAB abaB", "gens: a b c\nrels: abc CCb"] {
            let p = parse_presentation(text).unwrap();
            let c = build_presentation_complex(&p);
            for (i, r) in p.relators().iter().enumerate() {
                let spelled: String = c
                    .boundary(i)
                    .iter()
                    .map(|s| {
                        let ch = c.edge(s.edge).name.chars().next().unwrap();
                        if s.forward { ch } else { ch.to_ascii_uppercase() }
                    })
                    .collect();
                assert_eq!(spelled, r.to_string());
            }
        }
    }

    #[test]
    fn cayley_complexes() {
        let p = parse_presentation("gens: a\nrels: aaa").unwrap();
        let c = build_cayley_complex(&p, &PermRealization::cyclic(3)).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count(), c.face_count()), (3, 3, 1));
        assert!(c.validate().is_valid());

        let torus = parse_presentation("gens: a b\nrels: abAB").unwrap();
        let c = build_cayley_complex(&torus, &PermRealization::trivial(2)).unwrap();
        let pc = build_presentation_complex(&torus);
        assert_eq!((c.vertex_count(), c.edge_count(), c.face_count()), (1, 2, 1));
        assert_eq!(c.boundary(0), pc.boundary(0));

        let a4 = parse_presentation("gens: a\nrels: aaaa").unwrap();
        let c = build_cayley_complex(&a4, &PermRealization::cyclic(2)).unwrap();
        assert_eq!((c.vertex_count(), c.edge_count(), c.face_count()), (2, 2, 1));
        // explicit trace from element 0: a0 a1 a0 a1
        assert_eq!(
            c.boundary(0),
            &[SignedEdge::new(0, true), SignedEdge::new(1, true), SignedEdge::new(0, true), SignedEdge::new(1, true)]
        );

        let e = build_cayley_complex(&a4, &PermRealization::cyclic(3)).unwrap_err();
        assert!(matches!(e, ComplexError::RelatorNotSatisfied { relator: 0, .. }));
    }

    #[test]
    fn cayley_counts_match_direct_counting() {
        // ⟨a, b | aa, bb, abAB⟩ realized by the Klein four-group on 4 points
        let p = parse_presentation("gens: a b\nrels: aa bb abAB").unwrap();
        let r = PermRealization::new(4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        let c = build_cayley_complex(&p, &r).unwrap();
        assert_eq!(c.vertex_count(), r.len());
        assert_eq!(c.edge_count(), r.len() * p.generators().len());
        // aa loops: 2 per generator (orbits of size 2); abAB: one square per pair of
        // elements whose loops coincide up to rotation: 4 translates, each loop traced
        // by 4 starting points... counted by brute force below
        let mut loops = BTreeSet::new();
        for (ri, rel) in p.relators().iter().enumerate() {
            for g in 0..4 {
                let mut cur = g;
                let mut seq = Vec::new();
                for l in rel.word().letters() {
                    let gi = l.gen as usize;
                    if l.inverse {
                        let prev = r.step(cur, gi, true);
                        seq.push(SignedEdge::new(prev * 2 + gi, false));
                        cur = prev;
                    } else {
                        seq.push(SignedEdge::new(cur * 2 + gi, true));
                        cur = r.step(cur, gi, false);
                    }
                }
                let _ = ri;
                loops.insert(canonical_cycle(&seq));
            }
        }
        assert_eq!(c.face_count(), loops.len());
        assert!(c.validate().is_valid());
    }

    /// Corner enumeration straight from the definition: count ordered pairs of
    /// consecutive boundary edges meeting at v.
    fn corner_count(c: &TwoComplex, v: usize) -> usize {
        c.faces()
            .iter()
            .map(|f| f.boundary.iter().filter(|&&s| c.terminus(s) == v).count())
            .sum()
    }

    #[test]
    fn links() {
        let g = corpus::grid(2, 2);
        let center = g.vertex_by_name("1_1").unwrap();
        let l = link_of(&g, center);
        assert_eq!((l.nodes.len(), l.arcs.len()), (4, 4));
        assert_eq!(l.arcs.len(), corner_count(&g, center));
        assert!(l.adjacency().iter().all(|n| n.len() == 2));

        let mut c = TwoComplex::new();
        let a = c.add_vertex("a");
        let b = c.add_vertex("b");
        c.add_edge("e", a, b);
        let l = link_of(&c, b);
        assert_eq!((l.nodes.len(), l.arcs.len()), (1, 0));

        let torus = build_presentation_complex(&parse_presentation("gens: a b\nrels: abAB").unwrap());
        let l = link_of(&torus, 0);
        assert_eq!((l.nodes.len(), l.arcs.len()), (4, 4));
        assert_eq!(l.nodes.len(), torus.valence(0));
        assert!(l.adjacency().iter().all(|n| n.len() == 2));
    }

    #[test]
    fn intersections() {
        let g = corpus::grid(3, 3);
        let f = |x: usize, y: usize| g.face_by_name(&format!("s{x}_{y}")).unwrap();
        let x = face_intersection(&g, f(0, 0), f(1, 0));
        assert_eq!((x.vertices.len(), x.edges.len()), (2, 1));
        assert!(x.is_connected && x.is_subdivided_interval && !x.is_single_vertex);
        let x = face_intersection(&g, f(0, 0), f(1, 1));
        assert!(x.is_connected && x.is_single_vertex && !x.is_subdivided_interval);
        let strip = corpus::grid(3, 1);
        let x = face_intersection(&strip, 0, 2);
        assert!(x.is_empty() && !x.is_connected);
        for a in 0..g.face_count() {
            for b in 0..g.face_count() {
                if a != b {
                    assert_eq!(face_intersection(&g, a, b), face_intersection(&g, b, a));
                }
            }
        }
    }

    #[test]
    fn helly_examples() {
        let r = strong_helly_check(&corpus::grid(3, 3));
        assert!(r.violations.is_empty());
        assert!(r.triples_checked > 0);
        let r = strong_helly_check(&corpus::cube_corner());
        assert_eq!(r.violations, vec![[0, 1, 2]]);
        assert!(strong_helly_check(&corpus::grid(2, 1)).violations.is_empty());
    }

    #[test]
    fn multi_intersection_examples() {
        let g = corpus::grid(2, 2);
        let (_, class) = multi_intersection_check(&g, &[0, 1]).unwrap();
        assert_eq!(class, IntersectionClass::Interval);
        let (x, class) = multi_intersection_check(&g, &[0, 1, 2, 3]).unwrap();
        assert_eq!(class, IntersectionClass::SingleVertex);
        assert_eq!(x.vertices, BTreeSet::from([g.vertex_by_name("1_1").unwrap()]));
        let strip = corpus::grid(3, 1);
        assert_eq!(multi_intersection_check(&strip, &[0, 2]).unwrap_err(), ComplexError::NotIntersecting(0, 2));
        assert_eq!(multi_intersection_check(&strip, &[0]).unwrap_err(), ComplexError::TooFewFaces(1));
    }

    #[test]
    fn thickening_adds_bigons() {
        let mut c = square();
        let a = c.vertex_by_name("v0").unwrap();
        let z = c.add_vertex("z");
        c.add_edge("spur", a, z);
        assert_eq!(c.free_edges().len(), 1);
        let t = c.thicken_free_edges();
        assert!(t.validate().is_valid());
        assert_eq!(t.face_count(), 2);
        assert!(t.free_edges().is_empty());
    }
}
