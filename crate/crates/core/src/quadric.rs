//! Quadrization of a 2-complex and disc diagrams in it.
//!
//! The quadrization `Y` has a node per vertex and per face of the base, an edge
//! `(v, F)` whenever `v` lies on `∂F`, and a square on every 4-cycle of distinct
//! nodes. Squares are stored as 4-cycles of node ids.

mod ladder;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{face_intersection, SignedEdge, TwoComplex};
use crate::diagram::{DiagramError, DiscDiagram};
use crate::smallcancel::PieceCatalog;

pub use ladder::{bare_dlwc, dlwc_resolve, find_dlwc, laddy_resolve, DlwcCase, DoubleLadderWithCap, LaddyCase, LaddyConfig, LaddyError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuadError {
    #[error("face index {0} out of range")]
    BadFace(usize),
    #[error("faces must be distinct")]
    RepeatedFace,
    #[error("union boundary is not a cycle of length {expected} (got {got})")]
    WrongUnion { expected: usize, got: usize },
    #[error("union boundary is not an embedded cycle in the square complex")]
    NotACycleInY,
    #[error("no square spans the cycle {0:?} (replacement rule A fails)")]
    MissingSquare(Vec<usize>),
    #[error("the 6-cycle {0:?} has no diagonal (replacement rule B fails)")]
    NoDiagonal(Vec<usize>),
    #[error("inner face at dart {0} is not a square")]
    NonSquareFace(usize),
    #[error("degenerate diagram: {0}")]
    Degenerate(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A square complex given by a simple graph and a set of 4-cycles.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SquareComplex {
    names: Vec<String>,
    adj: Vec<BTreeSet<usize>>,
    squares: BTreeSet<[usize; 4]>,
}

/// Least of the eight dihedral images of a 4-cycle.
pub fn canonical_square(q: [usize; 4]) -> [usize; 4] {
    let mut best = q;
    for k in 0..4 {
        let rot = [q[k], q[(k + 1) % 4], q[(k + 2) % 4], q[(k + 3) % 4]];
        let rev = [q[k], q[(k + 3) % 4], q[(k + 2) % 4], q[(k + 1) % 4]];
        best = best.min(rot).min(rev);
    }
    best
}

impl SquareComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.adj.push(BTreeSet::new());
        self.names.len() - 1
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        assert!(a != b, "square complexes here have no loops");
        self.adj[a].insert(b);
        self.adj[b].insert(a);
    }

    /// Adds the 4-cycle `q` and its edges.
    pub fn add_square(&mut self, q: [usize; 4]) {
        for i in 0..4 {
            self.add_edge(q[i], q[(i + 1) % 4]);
        }
        self.squares.insert(canonical_square(q));
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, n: usize) -> &str {
        &self.names[n]
    }

    pub fn node_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|x| x == name)
    }

    pub fn neighbors(&self, n: usize) -> &BTreeSet<usize> {
        &self.adj[n]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.adj.len() && self.adj[a].contains(&b)
    }

    pub fn has_square(&self, q: [usize; 4]) -> bool {
        self.squares.contains(&canonical_square(q))
    }

    pub fn squares(&self) -> impl Iterator<Item = &[usize; 4]> {
        self.squares.iter()
    }

    pub fn square_count(&self) -> usize {
        self.squares.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Quadrization {
    base: TwoComplex,
    y: SquareComplex,
}

impl Quadrization {
    pub fn new(c: &TwoComplex) -> Self {
        let mut y = SquareComplex::new();
        for v in 0..c.vertex_count() {
            y.add_node(format!("x0.{}", c.vertex_name(v)));
        }
        let nv = c.vertex_count();
        for f in 0..c.face_count() {
            y.add_node(format!("x2.{}", c.face(f).name));
        }
        let verts: Vec<Vec<usize>> = (0..c.face_count()).map(|f| c.face_vertices(f).into_iter().collect()).collect();
        for (f, vs) in verts.iter().enumerate() {
            for &v in vs {
                y.add_edge(v, nv + f);
            }
        }
        for f in 0..c.face_count() {
            for g in f + 1..c.face_count() {
                let common: Vec<usize> = verts[f].iter().copied().filter(|v| verts[g].binary_search(v).is_ok()).collect();
                for (i, &a) in common.iter().enumerate() {
                    for &b in &common[i + 1..] {
                        y.squares.insert(canonical_square([a, nv + f, b, nv + g]));
                    }
                }
            }
        }
        Quadrization { base: c.clone(), y }
    }

    pub fn base(&self) -> &TwoComplex {
        &self.base
    }

    pub fn y(&self) -> &SquareComplex {
        &self.y
    }

    pub fn vertex_node(&self, v: usize) -> usize {
        v
    }

    pub fn face_node(&self, f: usize) -> usize {
        self.base.vertex_count() + f
    }

    pub fn is_face_node(&self, n: usize) -> bool {
        n >= self.base.vertex_count()
    }

    /// Base face of an X₂ node.
    pub fn node_face(&self, n: usize) -> Option<usize> {
        n.checked_sub(self.base.vertex_count())
    }

    /// `Y` as a complex: one vertex per node, one edge per incidence, one face per square.
    pub fn to_complex(&self) -> TwoComplex {
        let mut c = TwoComplex::new();
        for n in 0..self.y.node_count() {
            c.add_vertex(self.y.name(n));
        }
        let mut edge = BTreeMap::new();
        for a in 0..self.y.node_count() {
            for &b in self.y.neighbors(a) {
                if a < b {
                    let e = c.add_edge(format!("y{}", edge.len()), a, b);
                    edge.insert((a, b), e);
                }
            }
        }
        for (i, q) in self.y.squares().enumerate() {
            let b = (0..4)
                .map(|k| {
                    let (s, t) = (q[k], q[(k + 1) % 4]);
                    match edge.get(&(s, t)) {
                        Some(&e) => SignedEdge::new(e, true),
                        None => SignedEdge::new(edge[&(t, s)], false),
                    }
                })
                .collect();
            c.add_face(format!("q{i}"), b);
        }
        c
    }

    pub fn to_file_string(&self, source: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# quadrization-of: {source}");
        let _ = writeln!(
            s,
            "# nodes: {} edges: {} squares: {}",
            self.y.node_count(),
            self.y.edge_count(),
            self.y.square_count()
        );
        s.push_str(&self.to_complex().to_file_string());
        s
    }

    /// Squares `[v, F, w, G]` for which the path from `v` to `w` in `F ∩ G` is not
    /// a piece of the base, or `F ∩ G` is not connected.
    pub fn square_piece_violations(&self, cat: &PieceCatalog) -> Vec<[usize; 4]> {
        let nv = self.base.vertex_count();
        let mut bad = Vec::new();
        for &q in self.y.squares() {
            let (v, w, f, g) = if q[0] < nv { (q[0], q[2], q[1] - nv, q[3] - nv) } else { (q[1], q[3], q[0] - nv, q[2] - nv) };
            if !self.piece_between(cat, f, g, v, w) {
                bad.push(q);
            }
        }
        bad
    }

    fn piece_between(&self, cat: &PieceCatalog, f: usize, g: usize, v: usize, w: usize) -> bool {
        let c = &self.base;
        let x = face_intersection(c, f, g);
        if !x.is_connected || !x.vertices.contains(&v) || !x.vertices.contains(&w) {
            return false;
        }
        // the path from v to w inside the intersection, as an edge set
        let mut prev: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut stack = vec![v];
        let mut seen = BTreeSet::from([v]);
        while let Some(a) = stack.pop() {
            for &e in &x.edges {
                let ed = c.edge(e);
                let b = if ed.tail == a { ed.head } else if ed.head == a { ed.tail } else { continue };
                if seen.insert(b) {
                    prev.insert(b, (a, e));
                    stack.push(b);
                }
            }
        }
        let mut path = BTreeSet::new();
        let mut cur = w;
        while cur != v {
            let Some(&(p, e)) = prev.get(&cur) else { return false };
            path.insert(e);
            cur = p;
        }
        let len = path.len();
        let b = c.boundary(f);
        let n = b.len();
        (0..n).any(|i| {
            let run: BTreeSet<usize> = (0..len).map(|k| b[(i + k) % n].edge).collect();
            run == path && len <= n && cat.longest_from(f, i) >= len
        })
    }
}

pub fn quadrize(c: &TwoComplex) -> Quadrization {
    Quadrization::new(c)
}

/// A square disc diagram whose vertices are labeled by nodes of a square complex.
/// Faces are vertex 4-cycles, all oriented the same way.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YDiagram {
    pub labels: Vec<usize>,
    pub faces: Vec<[usize; 4]>,
}

impl YDiagram {
    pub fn area(&self) -> usize {
        self.faces.len()
    }

    /// The underlying disc diagram; vertex `i` of the result is vertex `i` here.
    pub fn to_disc(&self) -> Result<DiscDiagram, QuadError> {
        if self.faces.is_empty() {
            return if self.labels.len() == 1 {
                Ok(DiscDiagram::trivial())
            } else {
                Err(QuadError::Degenerate("faceless diagram with several vertices".into()))
            };
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut faces = Vec::with_capacity(self.faces.len());
        for f in &self.faces {
            let mut fe = Vec::with_capacity(4);
            for k in 0..4 {
                let (a, b) = (f[k], f[(k + 1) % 4]);
                if a >= self.labels.len() || b >= self.labels.len() || a == b {
                    return Err(QuadError::Degenerate(format!("bad face {f:?}")));
                }
                let key = (a.min(b), a.max(b));
                let e = *index.entry(key).or_insert_with(|| {
                    edges.push(key);
                    edges.len() - 1
                });
                fe.push((e, a == key.0));
            }
            faces.push(fe);
        }
        let d = DiscDiagram::from_faces(self.labels.len(), &edges, &faces)?;
        let report = d.validate();
        if !report.is_valid() {
            return Err(QuadError::Degenerate(report.problems.join("; ")));
        }
        Ok(d)
    }

    /// Every face maps to a square and every edge to an edge of `y`.
    pub fn check_labels(&self, y: &SquareComplex) -> Result<(), QuadError> {
        for f in &self.faces {
            let q = f.map(|v| self.labels[v]);
            if !y.has_square(q) {
                return Err(QuadError::MissingSquare(q.to_vec()));
            }
        }
        Ok(())
    }

    /// Node labels along the outer boundary walk.
    pub fn boundary_labels(&self) -> Result<Vec<usize>, QuadError> {
        Ok(self.to_disc()?.boundary_positions().iter().map(|&v| self.labels[v]).collect())
    }

    fn without_orphans(mut self) -> Self {
        let used: BTreeSet<usize> = self.faces.iter().flatten().copied().collect();
        let map: BTreeMap<usize, usize> = used.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        self.labels = used.iter().map(|&v| self.labels[v]).collect();
        for f in &mut self.faces {
            *f = f.map(|v| map[&v]);
        }
        self
    }

    /// Directed boundary of the union of `faces`, chained into one cycle.
    fn union_cycle(&self, faces: &[usize]) -> Result<Vec<usize>, QuadError> {
        let mut darts: Vec<(usize, usize)> = Vec::new();
        for &f in faces {
            let q = self.faces.get(f).ok_or(QuadError::BadFace(f))?;
            for k in 0..4 {
                darts.push((q[k], q[(k + 1) % 4]));
            }
        }
        let set: BTreeSet<(usize, usize)> = darts.iter().copied().collect();
        let outer: Vec<(usize, usize)> = darts.iter().copied().filter(|&(a, b)| !set.contains(&(b, a))).collect();
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        for &(a, b) in &outer {
            if next.insert(a, b).is_some() {
                return Err(QuadError::WrongUnion { expected: 2 * faces.len() + 2, got: outer.len() });
            }
        }
        let Some(&start) = next.keys().next() else {
            return Err(QuadError::WrongUnion { expected: 2 * faces.len() + 2, got: 0 });
        };
        let mut cycle = vec![start];
        let mut cur = next[&start];
        while cur != start {
            cycle.push(cur);
            cur = *next.get(&cur).ok_or(QuadError::WrongUnion { expected: 2 * faces.len() + 2, got: outer.len() })?;
            if cycle.len() > outer.len() {
                break;
            }
        }
        if cycle.len() != outer.len() {
            return Err(QuadError::WrongUnion { expected: 2 * faces.len() + 2, got: cycle.len() });
        }
        Ok(cycle)
    }

    fn replace(&self, remove: &[usize], add: Vec<[usize; 4]>) -> Self {
        let mut faces: Vec<[usize; 4]> = self
            .faces
            .iter()
            .enumerate()
            .filter(|(i, _)| !remove.contains(i))
            .map(|(_, &f)| f)
            .collect();
        faces.extend(add);
        YDiagram { labels: self.labels.clone(), faces }.without_orphans()
    }

    /// No vertex has two neighbors with the same label. Diagrams without this
    /// fold and are never minimal.
    pub fn is_locally_injective(&self) -> bool {
        let mut around: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); self.labels.len()];
        for f in &self.faces {
            for k in 0..4 {
                let (a, b) = (f[k], f[(k + 1) % 4]);
                for (p, q) in [(a, b), (b, a)] {
                    if *around[p].entry(self.labels[q]).or_insert(q) != q {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Faces containing vertex `v`.
    pub fn faces_at(&self, v: usize) -> Vec<usize> {
        (0..self.faces.len()).filter(|&f| self.faces[f].contains(&v)).collect()
    }
}

fn distinct(nodes: &[usize]) -> bool {
    nodes.iter().collect::<BTreeSet<_>>().len() == nodes.len()
}

fn check_faces(d: &YDiagram, faces: &[usize]) -> Result<(), QuadError> {
    if let Some(&f) = faces.iter().find(|&&f| f >= d.faces.len()) {
        return Err(QuadError::BadFace(f));
    }
    if !distinct(faces) {
        return Err(QuadError::RepeatedFace);
    }
    Ok(())
}

/// Replaces two faces whose union is bounded by a 4-cycle by the square on that cycle.
pub fn rule_a_apply(d: &YDiagram, y: &SquareComplex, f1: usize, f2: usize) -> Result<YDiagram, QuadError> {
    check_faces(d, &[f1, f2])?;
    let cycle = d.union_cycle(&[f1, f2])?;
    if cycle.len() != 4 {
        return Err(QuadError::WrongUnion { expected: 4, got: cycle.len() });
    }
    let q = [cycle[0], cycle[1], cycle[2], cycle[3]];
    let lq = q.map(|v| d.labels[v]);
    if !distinct(&lq) {
        return Err(QuadError::NotACycleInY);
    }
    if !y.has_square(lq) {
        return Err(QuadError::MissingSquare(lq.to_vec()));
    }
    let out = d.replace(&[f1, f2], vec![q]);
    out.to_disc()?;
    Ok(out)
}

/// Replaces three faces whose union is bounded by a 6-cycle by two squares along a
/// diagonal of that cycle; returns the diagonal as a pair of nodes.
pub fn rule_b_apply(
    d: &YDiagram,
    y: &SquareComplex,
    f1: usize,
    f2: usize,
    f3: usize,
) -> Result<(YDiagram, (usize, usize)), QuadError> {
    check_faces(d, &[f1, f2, f3])?;
    let cycle = d.union_cycle(&[f1, f2, f3])?;
    if cycle.len() != 6 {
        return Err(QuadError::WrongUnion { expected: 6, got: cycle.len() });
    }
    let lc: Vec<usize> = cycle.iter().map(|&v| d.labels[v]).collect();
    if !distinct(&lc) {
        return Err(QuadError::NotACycleInY);
    }
    for k in 0..3 {
        let c = |i: usize| cycle[(k + i) % 6];
        let l = |i: usize| lc[(k + i) % 6];
        let a = [l(0), l(1), l(2), l(3)];
        let b = [l(3), l(4), l(5), l(0)];
        if y.has_edge(l(0), l(3)) && y.has_square(a) && y.has_square(b) {
            let out = d.replace(&[f1, f2, f3], vec![[c(0), c(1), c(2), c(3)], [c(3), c(4), c(5), c(0)]]);
            out.to_disc()?;
            return Ok((out, (l(0), l(3))));
        }
    }
    Err(QuadError::NoDiagonal(lc))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cat0Verdict {
    pub holds: bool,
    /// Internal vertices with fewer than four incident squares.
    pub witnesses: Vec<usize>,
}

pub fn cat0_square_check(d: &DiscDiagram) -> Result<Cat0Verdict, QuadError> {
    for f in d.inner_faces() {
        let orbit = &d.face_orbits()[f];
        if orbit.len() != 4 {
            return Err(QuadError::NonSquareFace(orbit[0]));
        }
    }
    let boundary = d.boundary_vertices();
    let witnesses: Vec<usize> = (0..d.vertex_count())
        .filter(|v| !boundary.contains(v) && d.inner_corners(*v) < 4)
        .collect();
    Ok(Cat0Verdict { holds: witnesses.is_empty(), witnesses })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Minimized {
    pub diagram: YDiagram,
    pub rule_a: usize,
    pub rule_b: usize,
    pub diagonals: Vec<(usize, usize)>,
}

/// Applies rules A and B at internal vertices of valence 2 and 3 until none remain.
pub fn minimize_diagram(d: &YDiagram, y: &SquareComplex) -> Result<Minimized, QuadError> {
    let mut cur = d.clone();
    let (mut ra, mut rb) = (0, 0);
    let mut diagonals = Vec::new();
    loop {
        let disc = cur.to_disc()?;
        let boundary = disc.boundary_vertices();
        let internal: Vec<(usize, Vec<usize>)> = (0..cur.labels.len())
            .filter(|v| !boundary.contains(v))
            .map(|v| (v, cur.faces_at(v)))
            .filter(|(_, fs)| fs.len() < 4)
            .collect();
        if let Some((v, _)) = internal.iter().find(|(_, fs)| fs.len() < 2) {
            return Err(QuadError::Degenerate(format!("internal vertex {v} with fewer than two squares")));
        }
        if let Some((_, fs)) = internal.iter().find(|(_, fs)| fs.len() == 2) {
            cur = rule_a_apply(&cur, y, fs[0], fs[1])?;
            ra += 1;
        } else if let Some((_, fs)) = internal.iter().find(|(_, fs)| fs.len() == 3) {
            let (next, diag) = rule_b_apply(&cur, y, fs[0], fs[1], fs[2])?;
            cur = next;
            diagonals.push(diag);
            rb += 1;
        } else {
            return Ok(Minimized { diagram: cur, rule_a: ra, rule_b: rb, diagonals });
        }
    }
}

/// Whether two cyclic sequences agree up to rotation.
pub fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && (a.is_empty() || (0..a.len()).any(|k| (0..a.len()).all(|i| a[(i + k) % a.len()] == b[i])))
}
