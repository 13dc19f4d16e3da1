//! Text format: `d <id> <twin> <origin>`, `rot <vertex> <darts…>`, `outer <dart>`,
//! and optional `lab d<dart> ±<edge>` / `lab f<dart> <face>` lines naming cells of
//! a target complex.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{DiagramError, DiscDiagram};
use crate::complex::{SignedEdge, TwoComplex};

impl DiscDiagram {
    pub fn parse(text: &str, target: Option<&TwoComplex>) -> Result<Self, DiagramError> {
        let err = |line: usize, m: String| DiagramError::Parse { line, message: m };
        let mut darts: BTreeMap<usize, (usize, usize, usize)> = BTreeMap::new();
        let mut rots: BTreeMap<usize, (usize, Vec<usize>)> = BTreeMap::new();
        let mut outer = None;
        let mut labs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<&str> = body.split_whitespace().collect();
            let Some(&kind) = toks.first() else { continue };
            let num = |t: &str| t.parse::<usize>().map_err(|_| err(line, format!("expected a number, got '{t}'")));
            match kind {
                "d" => {
                    if toks.len() != 4 {
                        return Err(err(line, "expected `d <id> <twin> <origin>`".into()));
                    }
                    let id = num(toks[1])?;
                    if darts.insert(id, (num(toks[2])?, num(toks[3])?, line)).is_some() {
                        return Err(err(line, format!("duplicate dart {id}")));
                    }
                }
                "rot" => {
                    if toks.len() < 2 {
                        return Err(err(line, "expected `rot <vertex> <darts…>`".into()));
                    }
                    let v = num(toks[1])?;
                    let list = toks[2..].iter().map(|t| num(t)).collect::<Result<Vec<_>, _>>()?;
                    if rots.insert(v, (line, list)).is_some() {
                        return Err(err(line, format!("duplicate rotation for vertex {v}")));
                    }
                }
                "outer" => {
                    if toks.len() != 2 {
                        return Err(err(line, "expected `outer <dart>`".into()));
                    }
                    outer = Some(num(toks[1])?);
                }
                "lab" => {
                    if toks.len() != 3 {
                        return Err(err(line, "expected `lab <cell> <target-cell>`".into()));
                    }
                    labs.push((line, toks[1].to_string(), toks[2].to_string()));
                }
                other => return Err(err(line, format!("unknown record '{other}'"))),
            }
        }
        let n = darts.len();
        if darts.keys().copied().ne(0..n) {
            return Err(err(0, "dart ids must be 0..n-1".into()));
        }
        let nv = rots.keys().next_back().map_or(0, |&v| v + 1);
        if rots.keys().copied().ne(0..nv) {
            return Err(err(0, "vertex ids must be 0..n-1, each with a rot line".into()));
        }
        let twin: Vec<usize> = darts.values().map(|d| d.0).collect();
        let origin: Vec<usize> = darts.values().map(|d| d.1).collect();
        for (v, (line, list)) in &rots {
            if let Some(&d) = list.iter().find(|&&d| d < n && origin[d] != *v) {
                return Err(err(*line, format!("dart {d} does not leave vertex {v}")));
            }
        }
        let rotation: Vec<Vec<usize>> = rots.into_values().map(|(_, l)| l).collect();
        let rotation = if rotation.is_empty() { vec![vec![]] } else { rotation };
        let mut diag = DiscDiagram::from_parts(twin, origin, rotation, outer)?;
        if labs.is_empty() {
            return Ok(diag);
        }
        let c = target.ok_or_else(|| err(labs[0].0, "labels need a target complex".into()))?;
        let mut edge_labels: Vec<Option<SignedEdge>> = vec![None; n];
        let mut face_labels = Vec::new();
        for (line, cell, tgt) in labs {
            let id = |s: &str| s.parse::<usize>().map_err(|_| err(line, format!("bad cell '{cell}'")));
            if let Some(rest) = cell.strip_prefix('d') {
                let d = id(rest)?;
                let (fwd, name) = match tgt.strip_prefix('-') {
                    Some(r) => (false, r),
                    None => (true, tgt.strip_prefix('+').unwrap_or(&tgt)),
                };
                let e = c.edge_by_name(name).ok_or_else(|| err(line, format!("unknown edge '{name}'")))?;
                if d >= n {
                    return Err(err(line, format!("unknown dart {d}")));
                }
                let s = SignedEdge::new(e, fwd);
                edge_labels[d] = Some(s);
                edge_labels[diag.twin(d)] = Some(s.inv());
            } else if let Some(rest) = cell.strip_prefix('f') {
                let d = id(rest)?;
                let f = c.face_by_name(&tgt).ok_or_else(|| err(line, format!("unknown face '{tgt}'")))?;
                face_labels.push((line, d, f));
            } else {
                return Err(err(line, format!("bad cell '{cell}'")));
            }
        }
        let labels = edge_labels
            .into_iter()
            .enumerate()
            .map(|(d, l)| l.ok_or_else(|| DiagramError::Unlabeled(format!("dart {d}"))))
            .collect::<Result<Vec<_>, _>>()?;
        diag.set_dart_labels(labels)?;
        for (line, d, f) in face_labels {
            diag.set_face_label(d, f).map_err(|e| err(line, e.to_string()))?;
        }
        Ok(diag)
    }

    pub fn to_file_string(&self, target: Option<&TwoComplex>) -> String {
        let mut s = String::new();
        for d in 0..self.dart_count() {
            let _ = writeln!(s, "d {d} {} {}", self.twin(d), self.origin(d));
        }
        for v in 0..self.vertex_count() {
            let _ = write!(s, "rot {v}");
            for d in self.rotation(v) {
                let _ = write!(s, " {d}");
            }
            s.push('\n');
        }
        if let Some(o) = self.outer_dart() {
            let _ = writeln!(s, "outer {o}");
        }
        if let (Some(c), Some(labels)) = (target, self.edge_labels()) {
            for d in 0..self.dart_count() {
                if d < self.twin(d) {
                    let l = labels[d];
                    let _ = writeln!(s, "lab d{d} {}{}", if l.forward { "+" } else { "-" }, c.edge(l.edge).name);
                }
            }
            for (&d, &f) in &self.face_labels {
                let _ = writeln!(s, "lab f{d} {}", c.face(f).name);
            }
        }
        s
    }
}
