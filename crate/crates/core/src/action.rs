//! Automorphisms of finite 2-complexes and the finite groups they generate.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::complex::{multi_intersection_check, IntersectionClass, SignedEdge, TwoComplex};
use crate::quadric::Quadrization;
use crate::smallcancel::classify;

pub const DEFAULT_BOUND: usize = 10_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActionError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("group closure truncated at {0} elements")]
    Truncated(usize),
    #[error("hypotheses not met: {}", .0.join("; "))]
    Hypotheses(Vec<String>),
    #[error("node {0} is not fixed")]
    NotFixed(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("automorphism `{name}` is invalid: {}", .problems.join("; "))]
    Invalid { name: String, problems: Vec<String> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Cell {
    Vertex(usize),
    Edge(usize),
    Face(usize),
}

/// Images of every vertex, edge (with orientation) and face.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Automorphism {
    pub name: String,
    pub vertices: Vec<usize>,
    pub edges: Vec<SignedEdge>,
    pub faces: Vec<usize>,
}

impl Automorphism {
    pub fn identity(c: &TwoComplex) -> Self {
        Automorphism {
            name: "1".into(),
            vertices: (0..c.vertex_count()).collect(),
            edges: (0..c.edge_count()).map(|e| SignedEdge::new(e, true)).collect(),
            faces: (0..c.face_count()).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.vertices.iter().enumerate().all(|(i, &v)| i == v)
            && self.edges.iter().enumerate().all(|(i, s)| s.edge == i && s.forward)
            && self.faces.iter().enumerate().all(|(i, &f)| i == f)
    }

    pub fn map_signed(&self, s: SignedEdge) -> SignedEdge {
        let t = self.edges[s.edge];
        SignedEdge::new(t.edge, t.forward == s.forward)
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn after(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            name: format!("{} {}", other.name, self.name),
            vertices: other.vertices.iter().map(|&v| self.vertices[v]).collect(),
            edges: other.edges.iter().map(|&s| self.map_signed(s)).collect(),
            faces: other.faces.iter().map(|&f| self.faces[f]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut vertices = vec![0; self.vertices.len()];
        for (i, &v) in self.vertices.iter().enumerate() {
            vertices[v] = i;
        }
        let mut edges = vec![SignedEdge::new(0, true); self.edges.len()];
        for (i, s) in self.edges.iter().enumerate() {
            edges[s.edge] = SignedEdge::new(i, s.forward);
        }
        let mut faces = vec![0; self.faces.len()];
        for (i, &f) in self.faces.iter().enumerate() {
            faces[f] = i;
        }
        Automorphism { name: format!("({})^-1", self.name), vertices, edges, faces }
    }

    fn key(&self) -> (Vec<usize>, Vec<SignedEdge>, Vec<usize>) {
        (self.vertices.clone(), self.edges.clone(), self.faces.clone())
    }

    pub fn fixes(&self, cell: Cell) -> bool {
        match cell {
            Cell::Vertex(v) => self.vertices[v] == v,
            Cell::Edge(e) => self.edges[e].edge == e,
            Cell::Face(f) => self.faces[f] == f,
        }
    }

    /// Problems with the permutations or with commuting with attaching maps.
    pub fn validate(&self, c: &TwoComplex) -> Vec<String> {
        let mut out = Vec::new();
        let bijective = |xs: &mut dyn Iterator<Item = usize>, n: usize| {
            let mut seen = vec![false; n];
            let mut count = 0;
            for x in xs {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return false;
                }
                count += 1;
            }
            count == n
        };
        if !bijective(&mut self.vertices.iter().copied(), c.vertex_count()) {
            out.push("vertex map is not a bijection".into());
        }
        if !bijective(&mut self.edges.iter().map(|s| s.edge), c.edge_count()) {
            out.push("edge map is not a bijection".into());
        }
        if !bijective(&mut self.faces.iter().copied(), c.face_count()) {
            out.push("face map is not a bijection".into());
        }
        if !out.is_empty() {
            return out;
        }
        for e in 0..c.edge_count() {
            let ed = c.edge(e);
            let img = self.edges[e];
            if c.origin(img) != self.vertices[ed.tail] || c.terminus(img) != self.vertices[ed.head] {
                out.push(format!("edge {} does not follow its endpoints", ed.name));
            }
        }
        for f in 0..c.face_count() {
            let img: Vec<SignedEdge> = c.boundary(f).iter().map(|&s| self.map_signed(s)).collect();
            if !same_boundary(&img, c.boundary(self.faces[f])) {
                out.push(format!("face {} does not map onto the boundary of its image", c.face(f).name));
            }
        }
        out
    }

    pub fn to_file_string(&self, c: &TwoComplex) -> String {
        let mut s = format!("aut {}\n", self.name);
        for (v, &w) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "v {} {}", c.vertex_name(v), c.vertex_name(w));
        }
        for (e, t) in self.edges.iter().enumerate() {
            let _ = writeln!(s, "e {} {}{}", c.edge(e).name, if t.forward { "+" } else { "-" }, c.edge(t.edge).name);
        }
        for (f, &g) in self.faces.iter().enumerate() {
            let _ = writeln!(s, "f {} {}", c.face(f).name, c.face(g).name);
        }
        s
    }
}

/// Equal as cyclic sequences, possibly read backwards.
fn same_boundary(a: &[SignedEdge], b: &[SignedEdge]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let rev: Vec<SignedEdge> = a.iter().rev().map(|s| s.inv()).collect();
    [a, &rev[..]].iter().any(|w| (0..n).any(|k| (0..n).all(|i| w[(i + k) % n] == b[i])))
}

/// Parses an action file: one or more `aut <name>` blocks of `v`, `e`, `f` lines.
/// Cells not mentioned in a block are fixed.
pub fn parse_actions(c: &TwoComplex, text: &str) -> Result<Vec<Automorphism>, ActionError> {
    let mut out: Vec<Automorphism> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ActionError::Parse { line: i + 1, message };
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts[0] == "aut" {
            if parts.len() != 2 {
                return Err(err("expected `aut <name>`".into()));
            }
            let mut a = Automorphism::identity(c);
            a.name = parts[1].to_string();
            out.push(a);
            continue;
        }
        let Some(a) = out.last_mut() else {
            return Err(err("mapping before any `aut` header".into()));
        };
        if parts.len() != 3 {
            return Err(err(format!("expected `{} <from> <to>`", parts[0])));
        }
        let unknown = |kind: &str, name: &str| err(format!("unknown {kind} `{name}`"));
        match parts[0] {
            "v" => {
                let from = c.vertex_by_name(parts[1]).ok_or_else(|| unknown("vertex", parts[1]))?;
                let to = c.vertex_by_name(parts[2]).ok_or_else(|| unknown("vertex", parts[2]))?;
                a.vertices[from] = to;
            }
            "e" => {
                let from = c.edge_by_name(parts[1]).ok_or_else(|| unknown("edge", parts[1]))?;
                let (forward, name) = match parts[2].as_bytes()[0] {
                    b'+' => (true, &parts[2][1..]),
                    b'-' => (false, &parts[2][1..]),
                    _ => (true, parts[2]),
                };
                let to = c.edge_by_name(name).ok_or_else(|| unknown("edge", name))?;
                a.edges[from] = SignedEdge::new(to, forward);
            }
            "f" => {
                let from = c.face_by_name(parts[1]).ok_or_else(|| unknown("face", parts[1]))?;
                let to = c.face_by_name(parts[2]).ok_or_else(|| unknown("face", parts[2]))?;
                a.faces[from] = to;
            }
            other => return Err(err(format!("unknown line kind `{other}`"))),
        }
    }
    Ok(out)
}

/// The group generated by some automorphisms, enumerated breadth first.
#[derive(Clone, Debug, Serialize)]
pub struct GroupAction {
    pub generators: Vec<Automorphism>,
    pub elements: Vec<Automorphism>,
    pub truncated: bool,
    pub bound: usize,
}

impl GroupAction {
    /// Fails if a generator is not an automorphism of `c`.
    pub fn new(c: &TwoComplex, generators: Vec<Automorphism>, bound: usize) -> Result<Self, ActionError> {
        for g in &generators {
            let problems = g.validate(c);
            if !problems.is_empty() {
                return Err(ActionError::Invalid { name: g.name.clone(), problems });
            }
        }
        let id = Automorphism::identity(c);
        let mut index = HashMap::from([(id.key(), 0usize)]);
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        let mut truncated = false;
        'outer: while let Some(i) = queue.pop_front() {
            for g in &generators {
                let next = g.after(&elements[i]);
                if index.contains_key(&next.key()) {
                    continue;
                }
                if elements.len() >= bound {
                    truncated = true;
                    break 'outer;
                }
                index.insert(next.key(), elements.len());
                queue.push_back(elements.len());
                let mut next = next;
                if elements[i].is_identity() {
                    next.name = g.name.clone();
                }
                elements.push(next);
            }
        }
        Ok(GroupAction { generators, elements, truncated, bound })
    }

    pub fn order(&self) -> Option<usize> {
        (!self.truncated).then_some(self.elements.len())
    }

    fn complete(&self) -> Result<(), ActionError> {
        if self.truncated {
            Err(ActionError::Truncated(self.bound))
        } else {
            Ok(())
        }
    }

    /// The element spelled by whitespace-separated generator names, each optionally
    /// followed by `^-1`. The empty word is the identity.
    pub fn word(&self, word: &str) -> Result<Automorphism, ActionError> {
        let mut acc = self.elements[0].clone();
        for tok in word.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n, true),
                None => (tok, false),
            };
            let g = self
                .generators
                .iter()
                .find(|g| g.name == name)
                .ok_or_else(|| ActionError::UnknownGenerator(name.to_string()))?;
            acc = if inverse { g.inverse().after(&acc) } else { g.after(&acc) };
        }
        acc.name = if word.trim().is_empty() { "1".into() } else { word.trim().to_string() };
        Ok(acc)
    }

    /// Whether no nontrivial element fixes a vertex or an edge. Edge inversions count.
    pub fn free_on_1_skeleton(&self) -> Result<FreeVerdict, ActionError> {
        self.complete()?;
        for a in self.elements.iter().filter(|a| !a.is_identity()) {
            let vertex = (0..a.vertices.len()).map(Cell::Vertex);
            let edge = (0..a.edges.len()).map(Cell::Edge);
            if let Some(cell) = vertex.chain(edge).find(|&x| a.fixes(x)) {
                return Ok(FreeVerdict { free: false, witness: Some((a.name.clone(), cell)) });
            }
        }
        Ok(FreeVerdict { free: true, witness: None })
    }

    /// Whether every element fixes a point: a vertex, a face, or the midpoint of an
    /// inverted edge. Elements that only fix edge midpoints are listed separately.
    pub fn locally_elliptic_check(&self) -> Result<EllipticVerdict, ActionError> {
        self.complete()?;
        let mut mid_edge_only = Vec::new();
        let mut witness = None;
        for a in &self.elements {
            let vertex = (0..a.vertices.len()).any(|v| a.fixes(Cell::Vertex(v)));
            let face = (0..a.faces.len()).any(|f| a.fixes(Cell::Face(f)));
            let edge = (0..a.edges.len()).any(|e| a.fixes(Cell::Edge(e)));
            if !vertex && !face {
                if edge {
                    mid_edge_only.push(a.name.clone());
                } else if witness.is_none() {
                    witness = Some(a.name.clone());
                }
            }
        }
        Ok(EllipticVerdict { elliptic: witness.is_none(), witness, mid_edge_only })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeVerdict {
    pub free: bool,
    pub witness: Option<(String, Cell)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EllipticVerdict {
    pub elliptic: bool,
    /// An element fixing no point.
    pub witness: Option<String>,
    pub mid_edge_only: Vec<String>,
}

/// Least `k ≤ bound` with `aᵏ` the identity.
pub fn element_order(a: &Automorphism, bound: usize) -> Option<usize> {
    let mut p = a.clone();
    for k in 1..=bound {
        if p.is_identity() {
            return Some(k);
        }
        p = a.after(&p);
    }
    None
}

/// The permutation of quadrization nodes induced by `a`.
pub fn y_permutation(q: &Quadrization, a: &Automorphism) -> Vec<usize> {
    let nv = q.base().vertex_count();
    let mut p: Vec<usize> = a.vertices.clone();
    p.extend(a.faces.iter().map(|&f| nv + f));
    p
}

/// Whether a node permutation preserves the edges and squares of the quadrization.
pub fn is_y_automorphism(q: &Quadrization, p: &[usize]) -> bool {
    let y = q.y();
    (0..y.node_count()).all(|a| y.neighbors(a).iter().all(|&b| y.has_edge(p[a], p[b])))
        && y.squares().all(|s| y.has_square(s.map(|n| p[n])))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedSet {
    pub vertices: Vec<usize>,
    /// Edges mapped to themselves, including inverted ones.
    pub edges: Vec<usize>,
    pub inverted_edges: Vec<usize>,
    pub faces: Vec<usize>,
    pub y_nodes: Vec<usize>,
    /// X₂-nodes of `Fix_Y` are exactly the fixed faces, and the induced node map is
    /// an automorphism of the quadrization.
    pub consistent: bool,
}

pub fn fixed_sets(q: &Quadrization, a: &Automorphism) -> FixedSet {
    let vertices: Vec<usize> = (0..a.vertices.len()).filter(|&v| a.fixes(Cell::Vertex(v))).collect();
    let edges: Vec<usize> = (0..a.edges.len()).filter(|&e| a.fixes(Cell::Edge(e))).collect();
    let inverted_edges = edges.iter().copied().filter(|&e| !a.edges[e].forward).collect();
    let faces: Vec<usize> = (0..a.faces.len()).filter(|&f| a.fixes(Cell::Face(f))).collect();
    let p = y_permutation(q, a);
    let y_nodes: Vec<usize> = (0..p.len()).filter(|&n| p[n] == n).collect();
    let from_y: Vec<usize> = y_nodes.iter().filter_map(|&n| q.node_face(n)).collect();
    let consistent = from_y == faces && is_y_automorphism(q, &p);
    FixedSet { vertices, edges, inverted_edges, faces, y_nodes, consistent }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixReport {
    pub checked: usize,
    /// Elements whose fixed set in `Y` has more than one node, with that set.
    pub violations: Vec<(String, Vec<usize>)>,
}

fn action_hypotheses(c: &TwoComplex, g: &GroupAction) -> Result<(), ActionError> {
    g.complete()?;
    let mut missing = Vec::new();
    let cls = classify(c);
    if !cls.c4 {
        missing.push("complex is not C(4)".to_string());
    }
    if !cls.t4 {
        missing.push("complex is not T(4)".to_string());
    }
    if let FreeVerdict { free: false, witness: Some((name, cell)) } = g.free_on_1_skeleton()? {
        missing.push(format!("action is not free on the 1-skeleton: {name} fixes {cell:?}"));
    }
    if missing.is_empty() {
        Ok(())
    } else {
        Err(ActionError::Hypotheses(missing))
    }
}

/// Every nontrivial element with a fixed node in `Y` fixes exactly one.
pub fn fix_uniqueness_check(q: &Quadrization, g: &GroupAction) -> Result<FixReport, ActionError> {
    action_hypotheses(q.base(), g)?;
    let mut report = FixReport { checked: 0, violations: Vec::new() };
    for a in g.elements.iter().filter(|a| !a.is_identity()) {
        let fix = fixed_sets(q, a);
        if fix.y_nodes.is_empty() {
            continue;
        }
        report.checked += 1;
        if fix.y_nodes.len() > 1 {
            report.violations.push((a.name.clone(), fix.y_nodes));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Separation {
    /// Least `k` such that `gᵏ` moves every neighbor of `v` and every square at `v`
    /// meets its `gᵏ`-image only in `v`.
    pub k: Option<usize>,
    /// At that `k`, every neighbor `v′` has link distance `d(v′, gᵏv′) > 1`.
    pub link_distance_holds: bool,
}

pub fn separation_exponent(q: &Quadrization, a: &Automorphism, v: usize, bound: usize) -> Result<Separation, ActionError> {
    let p = y_permutation(q, a);
    if p.get(v) != Some(&v) {
        return Err(ActionError::NotFixed(v));
    }
    let y = q.y();
    let at_v: Vec<[usize; 4]> = y.squares().filter(|s| s.contains(&v)).copied().collect();
    let mut pk: Vec<usize> = p.clone();
    for k in 1..=bound {
        let moves = y.neighbors(v).iter().all(|&n| pk[n] != n);
        let separated = at_v.iter().all(|s| {
            let image: BTreeSet<usize> = s.iter().map(|&n| pk[n]).collect();
            s.iter().filter(|n| image.contains(n)).count() == 1
        });
        if moves && separated {
            let link_adjacent = |a: usize, b: usize| at_v.iter().any(|s| s.contains(&a) && s.contains(&b));
            let link_distance_holds = y.neighbors(v).iter().all(|&n| pk[n] != n && !link_adjacent(n, pk[n]));
            return Ok(Separation { k: Some(k), link_distance_holds });
        }
        pk = pk.iter().map(|&n| p[n]).collect();
    }
    Ok(Separation { k: None, link_distance_holds: false })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimReport {
    pub vacuous: bool,
    pub class: Option<IntersectionClass>,
    /// A vertex or edge of `⋂ σ` fixed by the element.
    pub fixed_cell: Option<Cell>,
    /// The element is trivial, `|σ| = 1`, or it fixes a cell of the 1-skeleton.
    pub holds: bool,
}

/// Faces `sigma` pairwise at distance 2 in `Y` (sharing a vertex) and permuted by `a`.
pub fn sim_check(q: &Quadrization, a: &Automorphism, sigma: &[usize]) -> Result<SimReport, ActionError> {
    let c = q.base();
    let set: BTreeSet<usize> = sigma.iter().copied().collect();
    if set.len() != sigma.len() || sigma.iter().any(|&f| f >= c.face_count()) {
        return Err(ActionError::Precondition("σ must be distinct faces".into()));
    }
    if sigma.iter().map(|&f| a.faces[f]).collect::<BTreeSet<_>>() != set {
        return Err(ActionError::Precondition("σ is not invariant".into()));
    }
    if sigma.len() <= 1 || a.is_identity() {
        return Ok(SimReport { vacuous: true, class: None, fixed_cell: None, holds: true });
    }
    let (x, class) = multi_intersection_check(c, sigma).map_err(|e| ActionError::Precondition(e.to_string()))?;
    let fixed_cell = x
        .vertices
        .iter()
        .map(|&v| Cell::Vertex(v))
        .chain(x.edges.iter().map(|&e| Cell::Edge(e)))
        .find(|&cell| a.fixes(cell));
    Ok(SimReport { vacuous: false, class: Some(class), fixed_cell, holds: fixed_cell.is_some() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedFaceReport {
    pub order: usize,
    /// Faces fixed by every element.
    pub global_fixed_faces: Vec<usize>,
    pub holds: bool,
}

/// For an action on a C(4)-T(4) complex that is free on the 1-skeleton and locally
/// elliptic: a face fixed by the whole group, and a finite group.
pub fn fixed_face_check(c: &TwoComplex, g: &GroupAction) -> Result<FixedFaceReport, ActionError> {
    action_hypotheses(c, g)?;
    let ell = g.locally_elliptic_check()?;
    if !ell.elliptic {
        return Err(ActionError::Hypotheses(vec![format!(
            "action is not locally elliptic: {} fixes no point",
            ell.witness.unwrap_or_default()
        )]));
    }
    let global_fixed_faces: Vec<usize> =
        (0..c.face_count()).filter(|&f| g.generators.iter().all(|a| a.fixes(Cell::Face(f)))).collect();
    Ok(FixedFaceReport { order: g.elements.len(), holds: !global_fixed_faces.is_empty(), global_fixed_faces })
}

#[cfg(test)]
mod tests;
