//! Breadth-first minimal-area van Kampen search.
//!
//! States are cyclically reduced closed paths up to rotation. A move glues one
//! face along one boundary edge and then cyclically reduces. The winning move
//! sequence is replayed backwards as dart surgery on a growing diagram.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::{DiagramError, DiscDiagram};
use crate::complex::{SignedEdge, TwoComplex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SearchOutcome {
    Found { diagram: DiscDiagram, area: usize, states: usize },
    NoneWithinBound { bound: usize, states: usize },
}

impl SearchOutcome {
    pub fn area(&self) -> Option<usize> {
        match self {
            SearchOutcome::Found { area, .. } => Some(*area),
            SearchOutcome::NoneWithinBound { .. } => None,
        }
    }

    pub fn diagram(&self) -> Option<&DiscDiagram> {
        match self {
            SearchOutcome::Found { diagram, .. } => Some(diagram),
            SearchOutcome::NoneWithinBound { .. } => None,
        }
    }
}

type Path = Vec<SignedEdge>;

/// Reduction log: `(position, letter)` for each cancelled pair `letter · letter⁻¹`.
type Cancels = Vec<(usize, SignedEdge)>;

struct Node {
    word: Path,
    parent: usize,
    /// Boundary position and reading id of the glued face, `None` at the root.
    glue: Option<(usize, usize)>,
    cancels: Cancels,
    rot: usize,
}

struct Reading {
    face: usize,
    letters: Path,
}

fn reduce_logged(mut w: Path) -> (Path, Cancels) {
    let mut log = Vec::new();
    'outer: while w.len() >= 2 {
        let n = w.len();
        for j in 0..n {
            if w[(j + 1) % n] == w[j].inv() {
                log.push((j, w[j]));
                if j + 1 < n {
                    w.drain(j..j + 2);
                } else {
                    w.pop();
                    w.remove(0);
                }
                continue 'outer;
            }
        }
        break;
    }
    (w, log)
}

/// Least rotation and its offset `r`, so that `canon[k] = w[(k + r) % n]`.
fn canonical(w: &[SignedEdge]) -> (Path, usize) {
    let n = w.len();
    if n == 0 {
        return (vec![], 0);
    }
    let mut best = 0;
    for r in 1..n {
        let better = (0..n)
            .map(|k| w[(k + r) % n].cmp(&w[(k + best) % n]))
            .find(|o| o.is_ne())
            .is_some_and(|o| o.is_lt());
        if better {
            best = r;
        }
    }
    ((0..n).map(|k| w[(k + best) % n]).collect(), best)
}

/// Searches for a minimal-area diagram whose outer boundary reads `w` (a closed
/// path in `c`), exploring every area up to `bound`.
pub fn search_minimal_diagram(c: &TwoComplex, w: &[SignedEdge], bound: usize) -> Result<SearchOutcome, DiagramError> {
    let n = w.len();
    for i in 0..n {
        if w[i].edge >= c.edge_count() {
            return Err(DiagramError::Malformed(format!("unknown edge {}", w[i].edge)));
        }
    }
    for i in 0..n {
        if c.terminus(w[i]) != c.origin(w[(i + 1) % n]) {
            return Err(DiagramError::NotClosed(i));
        }
    }
    let mut readings: Vec<Reading> = Vec::new();
    let mut by_first: HashMap<SignedEdge, Vec<usize>> = HashMap::new();
    let mut max_len = 1;
    for (f, face) in c.faces().iter().enumerate() {
        let b = &face.boundary;
        let k = b.len();
        max_len = max_len.max(k);
        let mut seen = Vec::new();
        for r in 0..k {
            let fwd: Path = (0..k).map(|i| b[(r + i) % k]).collect();
            let bwd: Path = (0..k).map(|i| b[(r + k - i) % k].inv()).collect();
            for letters in [fwd, bwd] {
                if !seen.contains(&letters) {
                    seen.push(letters.clone());
                    by_first.entry(letters[0]).or_default().push(readings.len());
                    readings.push(Reading { face: f, letters });
                }
            }
        }
    }

    let (reduced, cancels) = reduce_logged(w.to_vec());
    let (word, rot) = canonical(&reduced);
    let mut nodes = vec![Node { word: word.clone(), parent: usize::MAX, glue: None, cancels, rot }];
    let mut seen: HashMap<Path, usize> = HashMap::from([(word, 0)]);
    let mut frontier = vec![0];
    let mut found = if nodes[0].word.is_empty() { Some(0) } else { None };
    let mut depth = 0;
    while found.is_none() && depth < bound && !frontier.is_empty() {
        let mut next = Vec::new();
        'layer: for &id in &frontier {
            let len = nodes[id].word.len();
            for pos in 0..len {
                let s = nodes[id].word[pos];
                let Some(list) = by_first.get(&s) else { continue };
                for &rid in list {
                    let r = &readings[rid].letters;
                    let cur = &nodes[id].word;
                    let mut w2 = Vec::with_capacity(len + r.len());
                    w2.extend_from_slice(&cur[..pos]);
                    w2.extend(r[1..].iter().rev().map(|x| x.inv()));
                    w2.extend_from_slice(&cur[pos + 1..]);
                    let (red, log) = reduce_logged(w2);
                    if depth + 1 + red.len().div_ceil(max_len) > bound {
                        continue;
                    }
                    let (canon, rot) = canonical(&red);
                    if seen.contains_key(&canon) {
                        continue;
                    }
                    let child = nodes.len();
                    seen.insert(canon.clone(), child);
                    let done = canon.is_empty();
                    nodes.push(Node { word: canon, parent: id, glue: Some((pos, rid)), cancels: log, rot });
                    if done {
                        found = Some(child);
                        break 'layer;
                    }
                    next.push(child);
                }
            }
        }
        frontier = next;
        depth += 1;
    }
    let states = nodes.len();
    let Some(goal) = found else {
        return Ok(SearchOutcome::NoneWithinBound { bound, states });
    };
    let diagram = replay(&nodes, &readings, goal);
    let area = diagram.area();
    Ok(SearchOutcome::Found { diagram, area, states })
}

struct Builder {
    d: DiscDiagram,
    boundary: Vec<usize>,
    labels: Vec<SignedEdge>,
    faces: BTreeMap<usize, usize>,
}

impl Builder {
    fn insert_spur(&mut self, j: usize, s: SignedEdge) {
        let l = self.boundary.len();
        let u = self.d.push_vertex();
        if l == 0 {
            let (a, b) = self.d.push_edge(0, u);
            self.d.set_rotation(0, vec![a]);
            self.d.set_rotation(u, vec![b]);
            self.boundary = vec![a, b];
        } else {
            let v = self.d.origin(self.boundary[j % l]);
            let t = self.d.twin(self.boundary[(j + l - 1) % l]);
            let (a, b) = self.d.push_edge(v, u);
            self.d.insert_in_rotation_after(t, a);
            self.d.set_rotation(u, vec![b]);
            self.boundary.splice(j..j, [a, b]);
        }
        self.labels.extend([s, s.inv()]);
    }

    /// Glues a face reading `r` along boundary positions `pos..pos + r.len() - 1`.
    fn glue(&mut self, pos: usize, r: &[SignedEdge], face: usize) {
        let l = self.boundary.len();
        let m = r.len() - 1;
        let (e, e_back);
        if l == 0 {
            (e, e_back) = self.d.push_edge(0, 0);
            self.d.set_rotation(0, vec![e, e_back]);
            self.boundary = vec![e];
        } else {
            let x = self.d.origin(self.boundary[pos % l]);
            let t = self.d.twin(self.boundary[(pos + l - 1) % l]);
            if m == 0 {
                (e, e_back) = self.d.push_edge(x, x);
                self.d.insert_in_rotation_after(t, e);
                self.d.insert_in_rotation_after(e, e_back);
                self.boundary.insert(pos, e);
            } else if m == l {
                (e, e_back) = self.d.push_edge(x, x);
                self.d.insert_in_rotation_after(t, e);
                self.d.insert_in_rotation_after(t, e_back);
                self.boundary = vec![e];
            } else {
                let last = self.boundary[pos + m - 1];
                let y = self.d.target(last);
                let t2 = self.d.twin(last);
                (e, e_back) = self.d.push_edge(x, y);
                self.d.insert_in_rotation_after(t, e);
                self.d.insert_in_rotation_after(t2, e_back);
                self.boundary.splice(pos..pos + m, [e]);
            }
        }
        self.labels.extend([r[0], r[0].inv()]);
        self.faces.insert(e_back, face);
    }

    fn unrotate(&mut self, r: usize) {
        let l = self.boundary.len();
        if l > 0 {
            self.boundary.rotate_right(r % l);
        }
    }

    fn uncancel(&mut self, log: &Cancels) {
        for &(j, s) in log.iter().rev() {
            let pre_len = self.boundary.len() + 2;
            if j + 1 < pre_len {
                self.insert_spur(j, s);
            } else {
                self.insert_spur(0, s);
                self.boundary.rotate_left(1);
            }
        }
    }

    fn word(&self) -> Path {
        self.boundary.iter().map(|&d| self.labels[d]).collect()
    }
}

fn replay(nodes: &[Node], readings: &[Reading], goal: usize) -> DiscDiagram {
    let mut b = Builder {
        d: DiscDiagram::trivial(),
        boundary: vec![],
        labels: vec![],
        faces: BTreeMap::new(),
    };
    let mut id = goal;
    loop {
        let node = &nodes[id];
        debug_assert_eq!(b.word(), node.word);
        b.unrotate(node.rot);
        b.uncancel(&node.cancels);
        match node.glue {
            Some((pos, rid)) => {
                let r = &readings[rid];
                b.glue(pos, &r.letters, r.face);
                id = node.parent;
            }
            None => break,
        }
    }
    let outer = b.boundary.first().copied();
    let Builder { mut d, labels, faces, .. } = b;
    d.finish_surgery(outer);
    d.set_labels_unchecked(labels, faces);
    d
}
