//! Disc diagrams as rotation systems over darts.
//!
//! Faces are the orbits of `next(d) = rot_succ(twin(d))`. One orbit is marked as
//! the outer face; every other orbit is a 2-cell. Curvature is kept as an integer
//! multiple of π/2.

mod io;
mod search;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign};

use serde::Serialize;
use thiserror::Error;

use crate::complex::{SignedEdge, TwoComplex};

pub use search::{search_minimal_diagram, SearchOutcome};

/// Curvature in units of π/2.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CurvatureHalfPi(pub i64);

impl Add for CurvatureHalfPi {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        CurvatureHalfPi(self.0 + o.0)
    }
}

impl AddAssign for CurvatureHalfPi {
    fn add_assign(&mut self, o: Self) {
        self.0 += o.0;
    }
}

impl std::iter::Sum for CurvatureHalfPi {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(CurvatureHalfPi(0), Add::add)
    }
}

impl fmt::Display for CurvatureHalfPi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "0"),
            1 => write!(f, "π/2"),
            -1 => write!(f, "-π/2"),
            v if v % 2 == 0 => write!(f, "{}π", v / 2),
            v => write!(f, "{v}π/2"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DiagramError {
    #[error("malformed diagram: {0}")]
    Malformed(String),
    #[error("position {position} out of range for boundary of length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("subpath of length {len} does not fit on a boundary of length {boundary}")]
    NotOnBoundary { len: usize, boundary: usize },
    #[error("unlabeled cell: {0}")]
    Unlabeled(String),
    #[error("face containing dart {dart} does not read the boundary of its target face")]
    LabelMismatch { dart: usize },
    #[error("word is not a closed path: break after position {0}")]
    NotClosed(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    Forward,
    Backward,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscDiagram {
    twin: Vec<usize>,
    origin: Vec<usize>,
    rotation: Vec<Vec<usize>>,
    outer: Option<usize>,
    edge_labels: Option<Vec<SignedEdge>>,
    face_labels: BTreeMap<usize, usize>,
    rot_index: Vec<usize>,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
}

impl DiscDiagram {
    /// The single-vertex diagram.
    pub fn trivial() -> Self {
        Self::from_parts(vec![], vec![], vec![vec![]], None).expect("trivial diagram")
    }

    /// Builds from explicit darts; faces are derived. Index errors are reported here,
    /// topological problems by [`DiscDiagram::validate`].
    pub fn from_parts(
        twin: Vec<usize>,
        origin: Vec<usize>,
        rotation: Vec<Vec<usize>>,
        outer: Option<usize>,
    ) -> Result<Self, DiagramError> {
        let n = twin.len();
        if origin.len() != n {
            return Err(DiagramError::Malformed("twin and origin lengths differ".into()));
        }
        if twin.iter().any(|&t| t >= n) {
            return Err(DiagramError::Malformed("twin out of range".into()));
        }
        if origin.iter().any(|&v| v >= rotation.len()) {
            return Err(DiagramError::Malformed("origin out of range".into()));
        }
        let mut rot_index = vec![usize::MAX; n];
        for rot in &rotation {
            for (i, &d) in rot.iter().enumerate() {
                if d >= n {
                    return Err(DiagramError::Malformed(format!("rotation lists unknown dart {d}")));
                }
                if rot_index[d] != usize::MAX {
                    return Err(DiagramError::Malformed(format!("dart {d} appears twice in rotations")));
                }
                rot_index[d] = i;
            }
        }
        if let Some(d) = rot_index.iter().position(|&i| i == usize::MAX) {
            return Err(DiagramError::Malformed(format!("dart {d} missing from rotations")));
        }
        if outer.is_some_and(|d| d >= n) || (outer.is_none() && n > 0) {
            return Err(DiagramError::Malformed("outer face must name an existing dart".into()));
        }
        let mut d = DiscDiagram {
            twin,
            origin,
            rotation,
            outer,
            edge_labels: None,
            face_labels: BTreeMap::new(),
            rot_index,
            face_of: vec![],
            faces: vec![],
        };
        d.rebuild_faces();
        Ok(d)
    }

    fn rebuild_faces(&mut self) {
        let n = self.twin.len();
        self.face_of = vec![usize::MAX; n];
        self.faces.clear();
        for start in 0..n {
            if self.face_of[start] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut orbit = Vec::new();
            let mut d = start;
            while self.face_of[d] == usize::MAX {
                self.face_of[d] = id;
                orbit.push(d);
                d = self.next(d);
            }
            self.faces.push(orbit);
        }
    }

    /// Builds a diagram from faces given as cyclic lists of `(edge, forward)` over
    /// `edges[i] = (tail, head)`. Edges on no face are tree edges. The outer face
    /// is the one orbit not listed.
    pub fn from_faces(
        vertex_count: usize,
        edges: &[(usize, usize)],
        faces: &[Vec<(usize, bool)>],
    ) -> Result<Self, DiagramError> {
        if edges.is_empty() {
            if vertex_count != 1 || !faces.is_empty() {
                return Err(DiagramError::Malformed("an edgeless diagram is a single vertex".into()));
            }
            return Ok(Self::trivial());
        }
        let dart = |e: usize, fwd: bool| if fwd { 2 * e } else { 2 * e + 1 };
        let m = 2 * edges.len();
        let mut origin = vec![0; m];
        for (e, &(t, h)) in edges.iter().enumerate() {
            if t >= vertex_count || h >= vertex_count {
                return Err(DiagramError::Malformed(format!("edge {e} has an endpoint out of range")));
            }
            origin[2 * e] = t;
            origin[2 * e + 1] = h;
        }
        let twin: Vec<usize> = (0..m).map(|d| d ^ 1).collect();
        let mut succ = vec![usize::MAX; m];
        let mut has_pred = vec![false; m];
        for (fi, f) in faces.iter().enumerate() {
            let k = f.len();
            for i in 0..k {
                let (e_in, fwd_in) = f[i];
                let (e_out, fwd_out) = f[(i + 1) % k];
                if e_in >= edges.len() || e_out >= edges.len() {
                    return Err(DiagramError::Malformed(format!("face {fi} uses an unknown edge")));
                }
                let d_in = dart(e_in, fwd_in);
                let d_out = dart(e_out, fwd_out);
                if origin[twin[d_in]] != origin[d_out] {
                    return Err(DiagramError::Malformed(format!("face {fi} is not a closed walk")));
                }
                let back = twin[d_in];
                if succ[back] != usize::MAX || has_pred[d_out] {
                    return Err(DiagramError::Malformed(format!("face {fi} reuses a corner")));
                }
                succ[back] = d_out;
                has_pred[d_out] = true;
            }
        }
        let mut rotation = vec![Vec::new(); vertex_count];
        let mut at: Vec<Vec<usize>> = vec![Vec::new(); vertex_count];
        for d in 0..m {
            at[origin[d]].push(d);
        }
        for v in 0..vertex_count {
            let mut placed = BTreeSet::new();
            let starts: Vec<usize> = at[v].iter().copied().filter(|&d| !has_pred[d]).collect();
            for s in starts {
                let mut d = s;
                loop {
                    rotation[v].push(d);
                    placed.insert(d);
                    if succ[d] == usize::MAX {
                        break;
                    }
                    d = succ[d];
                }
            }
            if placed.len() != at[v].len() {
                if !placed.is_empty() {
                    return Err(DiagramError::Malformed(format!("vertex {v} is interior and on the boundary")));
                }
                let mut d = at[v][0];
                loop {
                    rotation[v].push(d);
                    d = succ[d];
                    if d == at[v][0] {
                        break;
                    }
                }
                if rotation[v].len() != at[v].len() {
                    return Err(DiagramError::Malformed(format!("link of vertex {v} is not connected")));
                }
            }
        }
        let mut diag = Self::from_parts(twin, origin, rotation, Some(0))?;
        let listed: BTreeSet<usize> = faces
            .iter()
            .map(|f| diag.face_of[dart(f[0].0, f[0].1)])
            .collect();
        if listed.len() != faces.len() {
            return Err(DiagramError::Malformed("two listed faces are the same orbit".into()));
        }
        for f in faces {
            let id = diag.face_of[dart(f[0].0, f[0].1)];
            if diag.faces[id].len() != f.len() {
                return Err(DiagramError::Malformed("listed face is not an orbit".into()));
            }
        }
        let rest: Vec<usize> = (0..diag.faces.len()).filter(|f| !listed.contains(f)).collect();
        if rest.len() != 1 {
            return Err(DiagramError::Malformed(format!("expected one outer orbit, found {}", rest.len())));
        }
        diag.outer = Some(diag.faces[rest[0]][0]);
        Ok(diag)
    }

    pub fn dart_count(&self) -> usize {
        self.twin.len()
    }

    pub fn edge_count(&self) -> usize {
        self.twin.len() / 2
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn twin(&self, d: usize) -> usize {
        self.twin[d]
    }

    pub fn origin(&self, d: usize) -> usize {
        self.origin[d]
    }

    pub fn target(&self, d: usize) -> usize {
        self.origin[self.twin[d]]
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rot_succ(&self, d: usize) -> usize {
        let rot = &self.rotation[self.origin[d]];
        rot[(self.rot_index[d] + 1) % rot.len()]
    }

    pub fn next(&self, d: usize) -> usize {
        self.rot_succ(self.twin[d])
    }

    pub fn outer_dart(&self) -> Option<usize> {
        self.outer
    }

    /// All `next`-orbits, outer face included.
    pub fn face_orbits(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    pub fn outer_face(&self) -> Option<usize> {
        self.outer.map(|d| self.face_of[d])
    }

    pub fn is_inner(&self, d: usize) -> bool {
        Some(self.face_of[d]) != self.outer_face()
    }

    /// Indices of inner faces in orbit order.
    pub fn inner_faces(&self) -> Vec<usize> {
        let outer = self.outer_face();
        (0..self.faces.len()).filter(|&f| Some(f) != outer).collect()
    }

    pub fn area(&self) -> usize {
        self.inner_faces().len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotation[v].len()
    }

    /// Corners of inner faces at `v`.
    pub fn inner_corners(&self, v: usize) -> usize {
        self.rotation[v].iter().filter(|&&d| self.is_inner(d)).count()
    }

    pub fn is_square(&self) -> bool {
        self.inner_faces().iter().all(|&f| self.faces[f].len() == 4)
    }

    pub fn validate(&self) -> DiagramReport {
        let mut problems = Vec::new();
        let n = self.twin.len();
        for d in 0..n {
            let t = self.twin[d];
            if t == d || self.twin[t] != d {
                problems.push(format!("twin is not a fixed-point-free involution at dart {d}"));
            }
        }
        let v = self.vertex_count() as i64;
        let e = (n / 2) as i64;
        let f = self.faces.len().max(1) as i64;
        if v - e + f != 2 {
            problems.push(format!("Euler characteristic V-E+F = {} != 2", v - e + f));
        }
        if !self.is_connected() {
            problems.push("diagram is not connected".into());
        }
        if n > 0 && self.outer.is_none() {
            problems.push("no outer face".into());
        }
        DiagramReport { problems }
    }

    fn is_connected(&self) -> bool {
        let nv = self.vertex_count();
        if nv == 0 {
            return false;
        }
        let mut seen = vec![false; nv];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &d in &self.rotation[v] {
                let w = self.target(d);
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The closed walk around the outer face, starting at the outer dart.
    pub fn boundary_cycle(&self) -> Vec<usize> {
        match self.outer {
            Some(d) => {
                let f = self.face_of[d];
                let orbit = &self.faces[f];
                let k = orbit.iter().position(|&x| x == d).expect("outer dart on outer orbit");
                orbit[k..].iter().chain(&orbit[..k]).copied().collect()
            }
            None => vec![],
        }
    }

    /// Vertex at each boundary position.
    pub fn boundary_positions(&self) -> Vec<usize> {
        self.boundary_cycle().iter().map(|&d| self.origin[d]).collect()
    }

    pub fn boundary_vertices(&self) -> BTreeSet<usize> {
        if self.outer.is_none() {
            return (0..self.vertex_count()).collect();
        }
        self.boundary_positions().into_iter().collect()
    }

    /// Whether position `w` is passed strictly between positions `u` and `v`.
    pub fn between(&self, orientation: Orientation, u: usize, w: usize, v: usize) -> Result<bool, DiagramError> {
        let len = self.boundary_cycle().len();
        for p in [u, w, v] {
            if p >= len {
                return Err(DiagramError::PositionOutOfRange { position: p, len });
            }
        }
        let (du, dv) = match orientation {
            Orientation::Forward => ((w + len - u) % len, (v + len - u) % len),
            Orientation::Backward => ((u + len - w) % len, (u + len - v) % len),
        };
        Ok(du > 0 && du < dv)
    }

    pub fn curvature(&self, v: usize) -> CurvatureHalfPi {
        let delta = self.degree(v) as i64;
        let rho = self.inner_corners(v) as i64;
        CurvatureHalfPi(4 - 2 * delta + rho)
    }

    pub fn gauss_bonnet_audit(&self) -> GaussBonnetReport {
        let total: CurvatureHalfPi = (0..self.vertex_count()).map(|v| self.curvature(v)).sum();
        let boundary = self.boundary_vertices();
        let boundary_total: CurvatureHalfPi = boundary.iter().map(|&v| self.curvature(v)).sum();
        let excess: i64 = self
            .inner_faces()
            .iter()
            .map(|&f| self.faces[f].len() as i64 - 4)
            .sum();
        let expected_total = CurvatureHalfPi(4 + excess);
        let squares_only = excess == 0 && self.is_square();
        let cat0_interior = squares_only
            && (0..self.vertex_count())
                .filter(|v| !boundary.contains(v))
                .all(|v| self.degree(v) == self.inner_corners(v) && self.degree(v) >= 4);
        let pass = total == expected_total && (!cat0_interior || boundary_total.0 >= 4);
        GaussBonnetReport {
            total,
            boundary_total,
            expected_total,
            squares_only,
            cat0_interior,
            pass,
        }
    }

    /// Union-find over open cells of `D` minus `removed`.
    fn components_without(&self, removed: &BTreeSet<usize>) -> CellComponents {
        let nv = self.vertex_count();
        let ne = self.edge_count();
        let inner = self.inner_faces();
        let face_slot: BTreeMap<usize, usize> = inner.iter().enumerate().map(|(i, &f)| (f, nv + ne + i)).collect();
        let mut uf = UnionFind::new(nv + ne + inner.len());
        for (e, &d) in self.edge_darts().iter().enumerate() {
            for w in [self.origin[d], self.target(d)] {
                if !removed.contains(&w) {
                    uf.union(nv + e, w);
                }
            }
            for side in [d, self.twin[d]] {
                if let Some(&slot) = face_slot.get(&self.face_of[side]) {
                    uf.union(nv + e, slot);
                }
            }
        }
        let mut roots = BTreeMap::new();
        let mut comp = vec![usize::MAX; nv + ne + inner.len()];
        for cell in 0..comp.len() {
            if cell < nv && removed.contains(&cell) {
                continue;
            }
            let r = uf.find(cell);
            let next = roots.len();
            comp[cell] = *roots.entry(r).or_insert(next);
        }
        CellComponents { count: roots.len(), comp, nv }
    }

    fn edge_darts(&self) -> Vec<usize> {
        (0..self.twin.len()).filter(|&d| d < self.twin[d]).collect()
    }

    pub fn cut_and_singular_vertices(&self) -> (BTreeSet<usize>, BTreeSet<usize>) {
        let mut cut = BTreeSet::new();
        let mut singular = BTreeSet::new();
        for v in 0..self.vertex_count() {
            if self.components_without(&BTreeSet::from([v])).count > 1 {
                cut.insert(v);
                if self.inner_corners(v) > 0 {
                    singular.insert(v);
                }
            }
        }
        (cut, singular)
    }

    pub fn modified_cut_tree(&self) -> ModifiedCutTree {
        let (_, singular) = self.cut_and_singular_vertices();
        let cc = self.components_without(&singular);
        let mut edges = BTreeSet::new();
        let ed = self.edge_darts();
        for &v in &singular {
            for &d in &self.rotation[v] {
                let lo = d.min(self.twin[d]);
                let e = ed.binary_search(&lo).expect("edge dart");
                edges.insert((v, cc.comp[cc.nv + e]));
            }
        }
        ModifiedCutTree {
            singular: singular.into_iter().collect(),
            components: cc.count,
            edges: edges.into_iter().collect(),
        }
    }

    pub fn singular_identity_check(&self) -> SingularReport {
        let tree = self.modified_cut_tree();
        let mut violations = Vec::new();
        for &v in &tree.singular {
            let delta = self.degree(v);
            let rho = self.inner_corners(v);
            let delta_t = tree.degree_of_vertex(v);
            let kappa = self.curvature(v);
            if delta != rho + delta_t || kappa.0 > -1 {
                violations.push(SingularViolation { vertex: v, delta, rho, delta_t, kappa });
            }
        }
        SingularReport { checked: tree.singular.len(), violations }
    }

    /// Checks the curvature pattern forced on a geodesic boundary subpath that
    /// starts at boundary position `start` and has `len` edges.
    pub fn geodesic_boundary_check(&self, start: usize, len: usize) -> Result<GeodesicReport, DiagramError> {
        let pos = self.boundary_positions();
        let n = pos.len();
        if start >= n.max(1) {
            return Err(DiagramError::PositionOutOfRange { position: start, len: n });
        }
        if len > n {
            return Err(DiagramError::NotOnBoundary { len, boundary: n });
        }
        let internal: Vec<(usize, CurvatureHalfPi)> = (1..len)
            .map(|k| {
                let p = (start + k) % n;
                (p, self.curvature(pos[p]))
            })
            .collect();
        let mut violations = Vec::new();
        for &(p, k) in &internal {
            if k.0 >= 2 {
                violations.push(GeodesicViolation::Spur { position: p });
            }
        }
        let positives: Vec<usize> = (0..internal.len()).filter(|&i| internal[i].1 .0 == 1).collect();
        for pair in positives.windows(2) {
            let (a, b) = (pair[0], pair[1]);
            if !internal[a + 1..b].iter().any(|&(_, k)| k.0 <= -1) {
                violations.push(GeodesicViolation::Shortcut {
                    from: internal[a].0,
                    to: internal[b].0,
                });
            }
        }
        Ok(GeodesicReport { internal_vertices: internal.len(), violations })
    }

    pub fn sng_check(&self) -> SngReport {
        let pos = self.boundary_positions();
        let n = pos.len();
        let kappa: Vec<i64> = pos.iter().map(|&v| self.curvature(v).0).collect();
        let boundary_total: CurvatureHalfPi = self.boundary_vertices().iter().map(|&v| self.curvature(v)).sum();
        let squares = self.is_square();
        let positives: Vec<usize> = (0..n).filter(|&i| kappa[i] == 1).collect();
        let mut hypothesis = squares && n > 0 && kappa.iter().all(|&k| k <= 1);
        if hypothesis {
            for (i, &p) in positives.iter().enumerate() {
                let q = positives[(i + 1) % positives.len()];
                let gap = if q > p { q - p } else { q + n - p };
                if !(1..gap).any(|k| kappa[(p + k) % n] <= -1) {
                    hypothesis = false;
                    break;
                }
            }
        }
        let conclusion = !hypothesis || boundary_total.0 <= 0;
        SngReport {
            hypothesis_holds: hypothesis,
            boundary_total,
            conclusion_holds: conclusion,
            cat0_excluded: hypothesis && conclusion,
        }
    }

    pub fn edge_labels(&self) -> Option<&[SignedEdge]> {
        self.edge_labels.as_deref()
    }

    pub fn dart_label(&self, d: usize) -> Option<SignedEdge> {
        self.edge_labels.as_ref().map(|l| l[d])
    }

    /// Labels every dart; twin labels must be inverse.
    pub fn set_dart_labels(&mut self, labels: Vec<SignedEdge>) -> Result<(), DiagramError> {
        if labels.len() != self.dart_count() {
            return Err(DiagramError::Malformed("one label per dart is required".into()));
        }
        for d in 0..labels.len() {
            if labels[self.twin[d]] != labels[d].inv() {
                return Err(DiagramError::Malformed(format!("twin of dart {d} is not labeled by the inverse edge")));
            }
        }
        self.edge_labels = Some(labels);
        Ok(())
    }

    /// Maps the inner face containing `dart` to face `target` of the labeling complex.
    pub fn set_face_label(&mut self, dart: usize, target: usize) -> Result<(), DiagramError> {
        if dart >= self.dart_count() || !self.is_inner(dart) {
            return Err(DiagramError::Malformed(format!("dart {dart} is not on an inner face")));
        }
        let f = self.face_of[dart];
        self.face_labels.retain(|&d, _| self.face_of[d] != f);
        self.face_labels.insert(dart, target);
        Ok(())
    }

    pub fn face_label(&self, face: usize) -> Option<usize> {
        self.face_labels
            .iter()
            .find(|(&d, _)| self.face_of[d] == face)
            .map(|(_, &t)| t)
    }

    fn face_reading(&self, labels: &[SignedEdge], start: usize) -> Vec<SignedEdge> {
        let f = &self.faces[self.face_of[start]];
        let k = f.iter().position(|&x| x == start).expect("dart on its face");
        f[k..].iter().chain(&f[..k]).map(|&d| labels[d]).collect()
    }

    pub fn boundary_word(&self) -> Option<Vec<SignedEdge>> {
        let labels = self.edge_labels.as_ref()?;
        Some(self.boundary_cycle().iter().map(|&d| labels[d]).collect())
    }

    /// Cancellable-pair test. Errors if some cell is unlabeled or a face does
    /// not read its target boundary.
    pub fn is_reduced(&self, c: &TwoComplex) -> Result<ReducedVerdict, DiagramError> {
        let labels = self
            .edge_labels
            .as_ref()
            .ok_or_else(|| DiagramError::Unlabeled("edges".into()))?;
        let mut target = BTreeMap::new();
        for f in self.inner_faces() {
            let t = self
                .face_label(f)
                .ok_or_else(|| DiagramError::Unlabeled(format!("face at dart {}", self.faces[f][0])))?;
            if t >= c.face_count() {
                return Err(DiagramError::LabelMismatch { dart: self.faces[f][0] });
            }
            let reading = self.face_reading(labels, self.faces[f][0]);
            if !is_dihedral_reading(&reading, c.boundary(t)) {
                return Err(DiagramError::LabelMismatch { dart: self.faces[f][0] });
            }
            target.insert(f, t);
        }
        for d in 0..self.dart_count() {
            let t = self.twin[d];
            let (f1, f2) = (self.face_of[d], self.face_of[t]);
            if d > t || f1 == f2 {
                continue;
            }
            let (Some(a), Some(b)) = (target.get(&f1), target.get(&f2)) else {
                continue;
            };
            if a != b {
                continue;
            }
            let r1 = self.face_reading(labels, d);
            let r2 = self.face_reading(labels, t);
            let mirrored = r1.len() == r2.len()
                && (0..r1.len()).all(|k| r2[k] == r1[(r1.len() - k) % r1.len()].inv());
            if mirrored {
                return Ok(ReducedVerdict { reduced: false, witness: Some((f1, f2, d)) });
            }
        }
        Ok(ReducedVerdict { reduced: true, witness: None })
    }

    pub(crate) fn insert_in_rotation_after(&mut self, anchor: usize, d: usize) {
        let v = self.origin[anchor];
        let i = self.rot_index[anchor] + 1;
        self.rotation[v].insert(i, d);
        for (k, &x) in self.rotation[v].iter().enumerate() {
            self.rot_index[x] = k;
        }
    }

    /// Adds an edge pair of darts with the given origins, not yet in any rotation.
    pub(crate) fn push_edge(&mut self, from: usize, to: usize) -> (usize, usize) {
        let a = self.twin.len();
        self.twin.extend([a + 1, a]);
        self.origin.extend([from, to]);
        self.rot_index.extend([usize::MAX, usize::MAX]);
        (a, a + 1)
    }

    pub(crate) fn push_vertex(&mut self) -> usize {
        self.rotation.push(Vec::new());
        self.rotation.len() - 1
    }

    pub(crate) fn set_rotation(&mut self, v: usize, rot: Vec<usize>) {
        for (k, &x) in rot.iter().enumerate() {
            self.rot_index[x] = k;
        }
        self.rotation[v] = rot;
    }

    pub(crate) fn finish_surgery(&mut self, outer: Option<usize>) {
        self.outer = outer;
        self.rebuild_faces();
    }

    pub(crate) fn set_labels_unchecked(&mut self, labels: Vec<SignedEdge>, faces: BTreeMap<usize, usize>) {
        self.edge_labels = Some(labels);
        self.face_labels = faces;
    }
}

/// Whether `reading` is a rotation of `boundary` or of its reversed inverse.
pub fn is_dihedral_reading(reading: &[SignedEdge], boundary: &[SignedEdge]) -> bool {
    let n = boundary.len();
    if reading.len() != n {
        return false;
    }
    (0..n).any(|k| {
        (0..n).all(|i| reading[i] == boundary[(k + i) % n])
            || (0..n).all(|i| reading[i] == boundary[(k + n - i) % n].inv())
    })
}

struct CellComponents {
    count: usize,
    comp: Vec<usize>,
    nv: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let nxt = self.0[y];
            self.0[y] = r;
            y = nxt;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub problems: Vec<String>,
}

impl DiagramReport {
    pub fn is_valid(&self) -> bool {
        self.problems.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GaussBonnetReport {
    pub total: CurvatureHalfPi,
    pub boundary_total: CurvatureHalfPi,
    /// `4 + Σ (|F| − 4)` over inner faces; `4` for square diagrams.
    pub expected_total: CurvatureHalfPi,
    pub squares_only: bool,
    pub cat0_interior: bool,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModifiedCutTree {
    pub singular: Vec<usize>,
    /// Number of modified cut-components.
    pub components: usize,
    /// Incidences `(singular vertex, component)`.
    pub edges: Vec<(usize, usize)>,
}

impl ModifiedCutTree {
    pub fn node_count(&self) -> usize {
        self.singular.len() + self.components
    }

    pub fn degree_of_vertex(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v).count()
    }

    pub fn is_tree(&self) -> bool {
        let n = self.node_count();
        if self.edges.len() + 1 != n {
            return false;
        }
        let k = self.singular.len();
        let index: BTreeMap<usize, usize> = self.singular.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut uf = UnionFind::new(n);
        for &(v, s) in &self.edges {
            uf.union(index[&v], k + s);
        }
        (0..n).all(|i| uf.find(i) == uf.find(0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SingularViolation {
    pub vertex: usize,
    pub delta: usize,
    pub rho: usize,
    pub delta_t: usize,
    pub kappa: CurvatureHalfPi,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularReport {
    pub checked: usize,
    pub violations: Vec<SingularViolation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GeodesicViolation {
    Spur { position: usize },
    Shortcut { from: usize, to: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeodesicReport {
    pub internal_vertices: usize,
    pub violations: Vec<GeodesicViolation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SngReport {
    pub hypothesis_holds: bool,
    pub boundary_total: CurvatureHalfPi,
    pub conclusion_holds: bool,
    /// The hypothesis held and the diagram was shown not to be CAT(0).
    pub cat0_excluded: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedVerdict {
    pub reduced: bool,
    /// Two faces and a dart of their common edge.
    pub witness: Option<(usize, usize, usize)>,
}

#[cfg(test)]
mod tests;
