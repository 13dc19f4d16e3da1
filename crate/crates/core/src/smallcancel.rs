//! Pieces, C(p), T(q), and the combined C(4)–T(4) report.
//!
//! An occurrence is a face, a start position on its boundary and a reading
//! direction. Two occurrences are identified when a label-preserving dihedral
//! isomorphism between the two face boundaries carries one to the other.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::complex::{canonical_cycle, link_of, LinkGraph, SignedEdge, TwoComplex};
use crate::diagram::DiscDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OccurrenceRef {
    pub face: usize,
    pub position: usize,
    pub forward: bool,
}

/// A maximal piece read forward from `(face, offset)`, with an inequivalent
/// second occurrence of the same path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub face: usize,
    pub offset: usize,
    pub length: usize,
    pub other: OccurrenceRef,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PieceCatalog {
    /// `lengths[f][i]`: longest piece read forward from position `i` of face `f`.
    lengths: Vec<Vec<usize>>,
    pieces: Vec<Piece>,
}

fn letter(c: &TwoComplex, o: OccurrenceRef, k: usize) -> SignedEdge {
    let b = c.boundary(o.face);
    let n = b.len();
    if o.forward {
        b[(o.position + k) % n]
    } else {
        b[(o.position + n * (k / n + 1) - k % n) % n].inv()
    }
}

/// Dihedral boundary isomorphisms between faces: rotations `t` and reflections `c`.
#[derive(Default)]
struct Isos {
    rotations: Vec<usize>,
    reflections: Vec<usize>,
}

fn isomorphisms(a: &[SignedEdge], b: &[SignedEdge]) -> Isos {
    let n = a.len();
    let mut iso = Isos::default();
    if b.len() != n {
        return iso;
    }
    for t in 0..n {
        if (0..n).all(|k| b[(t + k) % n] == a[k]) {
            iso.rotations.push(t);
        }
        if (0..n).all(|k| b[(t + n - k) % n] == a[k].inv()) {
            iso.reflections.push(t);
        }
    }
    iso
}

impl PieceCatalog {
    pub fn compute(c: &TwoComplex) -> Self {
        let nf = c.face_count();
        let class: Vec<Vec<SignedEdge>> = (0..nf).map(|f| canonical_cycle(c.boundary(f))).collect();
        let mut isos: HashMap<(usize, usize), Isos> = HashMap::new();
        for f in 0..nf {
            for g in 0..nf {
                if class[f] == class[g] {
                    isos.insert((f, g), isomorphisms(c.boundary(f), c.boundary(g)));
                }
            }
        }
        let equivalent = |a: OccurrenceRef, b: OccurrenceRef| -> bool {
            let Some(iso) = isos.get(&(a.face, b.face)) else {
                return false;
            };
            let n = c.boundary(b.face).len();
            let rot = a.forward == b.forward && iso.rotations.iter().any(|&t| (t + a.position) % n == b.position);
            let refl = a.forward != b.forward
                && iso.reflections.iter().any(|&t| (t + n - a.position) % n == b.position);
            rot || refl
        };
        let mut by_first: HashMap<SignedEdge, Vec<OccurrenceRef>> = HashMap::new();
        for g in 0..nf {
            for j in 0..c.boundary(g).len() {
                for forward in [true, false] {
                    let o = OccurrenceRef { face: g, position: j, forward };
                    by_first.entry(letter(c, o, 0)).or_default().push(o);
                }
            }
        }
        let mut lengths = Vec::with_capacity(nf);
        let mut pieces = Vec::new();
        for f in 0..nf {
            let n = c.boundary(f).len();
            let mut row = vec![0; n];
            for (i, slot) in row.iter_mut().enumerate() {
                let me = OccurrenceRef { face: f, position: i, forward: true };
                let mut best: Option<(usize, OccurrenceRef)> = None;
                for &o in by_first.get(&letter(c, me, 0)).map(Vec::as_slice).unwrap_or(&[]) {
                    if equivalent(me, o) {
                        continue;
                    }
                    let cap = n.min(c.boundary(o.face).len());
                    let len = (0..cap).take_while(|&k| letter(c, me, k) == letter(c, o, k)).count();
                    if best.is_none_or(|(l, _)| len > l) {
                        best = Some((len, o));
                    }
                }
                if let Some((len, other)) = best {
                    *slot = len;
                    pieces.push(Piece { face: f, offset: i, length: len, other });
                }
            }
            lengths.push(row);
        }
        PieceCatalog { lengths, pieces }
    }

    pub fn longest_from(&self, face: usize, position: usize) -> usize {
        self.lengths[face][position]
    }

    /// Pieces read forward from each boundary position, longest witness first found.
    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Maximal pieces: those not contained in the piece starting one step earlier.
    pub fn maximal_pieces(&self) -> Vec<&Piece> {
        self.pieces
            .iter()
            .filter(|p| {
                let n = self.lengths[p.face].len();
                let prev = self.lengths[p.face][(p.offset + n - 1) % n];
                prev < p.length + 1
            })
            .collect()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Fewest pieces whose concatenation is the boundary of `face`; `None` when
    /// some boundary edge lies in no piece.
    pub fn min_piece_cover(&self, face: usize) -> Option<usize> {
        let row = &self.lengths[face];
        let n = row.len();
        if n == 0 || row.contains(&0) {
            return None;
        }
        (0..n)
            .map(|s| {
                let (mut covered, mut count) = (0, 0);
                while covered < n {
                    covered += row[(s + covered) % n];
                    count += 1;
                }
                count
            })
            .min()
    }
}

pub fn compute_pieces(c: &TwoComplex) -> PieceCatalog {
    PieceCatalog::compute(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CpVerdict {
    pub p: usize,
    pub holds: bool,
    /// Faces whose boundary is a concatenation of fewer than `p` pieces, with that number.
    pub witnesses: Vec<(usize, usize)>,
}

pub fn check_cp(c: &TwoComplex, p: usize) -> CpVerdict {
    check_cp_with(c, &PieceCatalog::compute(c), p)
}

pub fn check_cp_with(c: &TwoComplex, cat: &PieceCatalog, p: usize) -> CpVerdict {
    let witnesses: Vec<(usize, usize)> = (0..c.face_count())
        .filter_map(|f| cat.min_piece_cover(f).filter(|&k| k < p).map(|k| (f, k)))
        .collect();
    CpVerdict { p, holds: witnesses.is_empty(), witnesses }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkCycle {
    pub vertex: usize,
    /// Indices into the link's node list, in cycle order.
    pub nodes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TqVerdict {
    pub q: usize,
    pub holds: bool,
    pub witnesses: Vec<LinkCycle>,
}

/// Two distinct arcs joining the same pair of nodes.
fn double_arc(link: &LinkGraph) -> Option<(usize, usize)> {
    let mut seen = BTreeSet::new();
    link.arcs
        .iter()
        .filter(|a| a.from != a.to)
        .map(|a| (a.from.min(a.to), a.from.max(a.to)))
        .find(|&pair| !seen.insert(pair))
}

/// A closed non-backtracking walk of length in `3..q` in the link, if any: a simple
/// cycle, or a double arc walked around twice.
fn short_link_cycle(link: &LinkGraph, q: usize) -> Option<Vec<usize>> {
    if let Some(c) = short_simple_cycle(link, q) {
        return Some(c);
    }
    match double_arc(link) {
        Some((a, b)) if q > 4 => Some(vec![a, b, a, b]),
        _ => None,
    }
}

/// A simple cycle of length in `3..q` in the link, if any.
fn short_simple_cycle(link: &LinkGraph, q: usize) -> Option<Vec<usize>> {
    let adj = link.adjacency();
    let n = adj.len();
    fn dfs(adj: &[BTreeSet<usize>], start: usize, path: &mut Vec<usize>, on: &mut [bool], limit: usize) -> bool {
        let last = *path.last().expect("nonempty path");
        for &w in &adj[last] {
            if w == start && path.len() >= 3 {
                return true;
            }
            if w > start && !on[w] && path.len() < limit {
                on[w] = true;
                path.push(w);
                if dfs(adj, start, path, on, limit) {
                    return true;
                }
                path.pop();
                on[w] = false;
            }
        }
        false
    }
    if q <= 3 {
        return None;
    }
    for s in 0..n {
        let mut on = vec![false; n];
        on[s] = true;
        let mut path = vec![s];
        if dfs(&adj, s, &mut path, &mut on, q - 1) {
            return Some(path);
        }
    }
    None
}

/// Shortest closed non-backtracking walk of length ≥ 3 in the link: the shortest
/// simple cycle of length ≥ 3, or 4 when two arcs join the same pair of nodes.
pub fn link_girth(link: &LinkGraph) -> Option<usize> {
    let simple = simple_girth(link);
    match double_arc(link) {
        Some(_) => Some(simple.map_or(4, |g| g.min(4))),
        None => simple,
    }
}

fn simple_girth(link: &LinkGraph) -> Option<usize> {
    let adj = link.adjacency();
    let n = adj.len();
    let mut best: Option<usize> = None;
    for s in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &adj[u] {
                if w == u {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    if len >= 3 && best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}

pub fn check_tq_link(c: &TwoComplex, q: usize) -> TqVerdict {
    let mut witnesses = Vec::new();
    for v in 0..c.vertex_count() {
        let link = link_of(c, v);
        if let Some(nodes) = short_link_cycle(&link, q) {
            witnesses.push(LinkCycle { vertex: v, nodes });
        }
    }
    TqVerdict { q, holds: witnesses.is_empty(), witnesses }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TqDiagramWitness {
    /// Vertex of the complex at the centre of the fan.
    pub vertex: usize,
    /// Valence of the internal vertex of the diagram.
    pub valence: usize,
    pub diagram: DiscDiagram,
}

/// Searches reduced fan diagrams (faces arranged around one internal vertex) of
/// area at most `area_bound` for an internal vertex of valence in `3..q`.
pub fn falsify_tq_by_diagrams(c: &TwoComplex, q: usize, area_bound: usize) -> Option<TqDiagramWitness> {
    let max_k = area_bound.min(q.saturating_sub(1));
    if max_k < 3 {
        return None;
    }
    for v in 0..c.vertex_count() {
        let link = link_of(c, v);
        // arcs incident to each node, as (arc, other end)
        let mut inc: Vec<Vec<(usize, usize)>> = vec![Vec::new(); link.nodes.len()];
        for (a, arc) in link.arcs.iter().enumerate() {
            if c.boundary(arc.face).len() < 3 {
                continue;
            }
            inc[arc.from].push((a, arc.to));
            if arc.to != arc.from {
                inc[arc.to].push((a, arc.from));
            }
        }
        for k in 3..=max_k {
            for start in 0..link.nodes.len() {
                let mut walk = Vec::new();
                if let Some(w) = closed_walks(c, &link, &inc, start, start, k, &mut walk) {
                    return Some(TqDiagramWitness { vertex: v, valence: k, diagram: w });
                }
            }
        }
    }
    None
}

/// Extends `walk` (steps `(arc, node reached)`) to closed walks of length `k`,
/// returning the first that yields a reduced fan.
fn closed_walks(
    c: &TwoComplex,
    link: &LinkGraph,
    inc: &[Vec<(usize, usize)>],
    start: usize,
    at: usize,
    k: usize,
    walk: &mut Vec<(usize, usize)>,
) -> Option<DiscDiagram> {
    if walk.len() == k {
        if at != start || walk[0].0 == walk[k - 1].0 {
            return None;
        }
        let d = fan_diagram(c, link, start, walk)?;
        return Some(d);
    }
    for &(a, to) in &inc[at] {
        if walk.last().is_some_and(|&(prev, _)| prev == a) {
            continue;
        }
        walk.push((a, to));
        if let Some(d) = closed_walks(c, link, inc, start, to, k, walk) {
            return Some(d);
        }
        walk.pop();
    }
    None
}

fn outward(link: &LinkGraph, node: usize) -> SignedEdge {
    let end = link.nodes[node];
    SignedEdge::new(end.edge, !end.at_head)
}

/// The fan around a closed link walk, if it is a valid reduced diagram.
fn fan_diagram(c: &TwoComplex, link: &LinkGraph, start: usize, walk: &[(usize, usize)]) -> Option<DiscDiagram> {
    let k = walk.len();
    // spoke i goes from the centre (vertex 0) to vertex i + 1 along node walk[i].1
    let mut edges: Vec<(usize, usize)> = (0..k).map(|i| (0, i + 1)).collect();
    let mut labels: Vec<SignedEdge> = (0..k).map(|i| outward(link, walk[i].1)).collect();
    let mut nv = k + 1;
    let mut faces = Vec::with_capacity(k);
    let mut targets = Vec::with_capacity(k);
    for i in 0..k {
        let (a, to) = walk[i];
        let from = if i == 0 { start } else { walk[i - 1].1 };
        let arc = link.arcs[a];
        let b = c.boundary(arc.face);
        let n = b.len();
        // reading from the centre out along `to`, around the face, back in along `from`
        let reading: Vec<SignedEdge> = if arc.to == to && arc.from == from {
            (1..=n).map(|j| b[(arc.position + j) % n]).collect()
        } else {
            (0..n).map(|j| b[(arc.position + n - j) % n].inv()).collect()
        };
        if reading[0] != labels[i] || reading[n - 1] != outward(link, from).inv() {
            return None;
        }
        let prev_spoke = (i + k - 1) % k;
        let mut face = vec![(i, true)];
        let mut cur = i + 1;
        for (j, &l) in reading[1..n - 1].iter().enumerate() {
            let nxt = if j + 2 == n - 1 { prev_spoke + 1 } else {
                nv += 1;
                nv - 1
            };
            face.push((edges.len(), true));
            edges.push((cur, nxt));
            labels.push(l);
            cur = nxt;
        }
        face.push((prev_spoke, false));
        faces.push(face);
        targets.push(arc.face);
    }
    let mut d = DiscDiagram::from_faces(nv, &edges, &faces).ok()?;
    if !d.validate().is_valid() {
        return None;
    }
    let mut darts = vec![SignedEdge::new(0, true); 2 * edges.len()];
    for (e, &l) in labels.iter().enumerate() {
        darts[2 * e] = l;
        darts[2 * e + 1] = l.inv();
    }
    d.set_dart_labels(darts).ok()?;
    for (i, &t) in targets.iter().enumerate() {
        d.set_face_label(2 * i, t).ok()?;
    }
    let verdict = d.is_reduced(c).ok()?;
    verdict.reduced.then_some(d)
}

/// Bound on `q` explored by [`classify`].
pub const Q_CAP: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub c4: bool,
    pub t4: bool,
    /// Largest `p` with C(p), capped at the longest boundary length.
    pub max_p: usize,
    /// Largest `q ≤ Q_CAP` with T(q).
    pub max_q_checked: usize,
    pub cp_witnesses: Vec<(usize, usize)>,
    pub tq_witnesses: Vec<LinkCycle>,
    pub piece_count: usize,
}

pub fn classify(c: &TwoComplex) -> Classification {
    let cat = PieceCatalog::compute(c);
    let longest = c.faces().iter().map(|f| f.boundary.len()).max().unwrap_or(0);
    let min_cover = (0..c.face_count()).filter_map(|f| cat.min_piece_cover(f)).min();
    let max_p = min_cover.map_or(longest, |m| m.min(longest));
    let girth = (0..c.vertex_count()).filter_map(|v| link_girth(&link_of(c, v))).min();
    let max_q_checked = girth.map_or(Q_CAP, |g| g.min(Q_CAP));
    let cp = check_cp_with(c, &cat, 4);
    let tq = check_tq_link(c, 4);
    Classification {
        c4: cp.holds,
        t4: tq.holds,
        max_p,
        max_q_checked,
        cp_witnesses: cp.witnesses,
        tq_witnesses: tq.witnesses,
        piece_count: cat.maximal_pieces().len(),
    }
}

/// Maximal pieces grouped by face, for reports.
pub fn pieces_by_face(cat: &PieceCatalog) -> BTreeMap<usize, Vec<(usize, usize)>> {
    let mut m: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for p in cat.maximal_pieces() {
        m.entry(p.face).or_default().push((p.offset, p.length));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::build_presentation_complex;
    use crate::corpus;
    use crate::presentation::parse_presentation;
    use proptest::prelude::*;

    fn pc(text: &str) -> TwoComplex {
        build_presentation_complex(&parse_presentation(text).unwrap())
    }

    /// Every occurrence pair compared letter by letter, with equivalence decided
    /// by trying every dihedral map between the two boundaries.
    fn brute_lengths(c: &TwoComplex) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for f in 0..c.face_count() {
            let bf = c.boundary(f).to_vec();
            let n = bf.len();
            let mut row = Vec::new();
            for i in 0..n {
                let mut best = 0;
                for g in 0..c.face_count() {
                    let bg = c.boundary(g).to_vec();
                    let m = bg.len();
                    for j in 0..m {
                        for fwd in [true, false] {
                            let read = |k: usize| if fwd { bg[(j + k) % m] } else { bg[(j + m * 4 - k) % m].inv() };
                            let mut same_class = false;
                            if n == m {
                                for t in 0..n {
                                    let rot = (0..n).all(|x| bg[(x + t) % n] == bf[x]);
                                    if rot && fwd && (i + t) % n == j {
                                        same_class = true;
                                    }
                                    let refl = (0..n).all(|x| bg[(t + 4 * n - x) % n] == bf[x].inv());
                                    if refl && !fwd && (t + 4 * n - i) % n == j {
                                        same_class = true;
                                    }
                                }
                            }
                            if same_class {
                                continue;
                            }
                            let mut k = 0;
                            while k < n.min(m) && bf[(i + k) % n] == read(k) {
                                k += 1;
                            }
                            best = best.max(k);
                        }
                    }
                }
                row.push(best);
            }
            out.push(row);
        }
        out
    }

    fn lengths(c: &TwoComplex) -> Vec<Vec<usize>> {
        let cat = PieceCatalog::compute(c);
        (0..c.face_count()).map(|f| (0..c.boundary(f).len()).map(|i| cat.longest_from(f, i)).collect()).collect()
    }

    #[test]
    fn torus_pieces_are_single_edges() {
        let c = pc("gens: a b\nrels: abAB");
        let cat = PieceCatalog::compute(&c);
        assert_eq!(lengths(&c), vec![vec![1, 1, 1, 1]]);
        assert_eq!(cat.maximal_pieces().len(), 4);
        assert_eq!(cat.min_piece_cover(0), Some(4));
    }

    #[test]
    fn grid_pieces_are_single_edges() {
        let g = corpus::grid(3, 3);
        let center = g.face_by_name("s1_1").unwrap();
        assert_eq!(lengths(&g)[center], vec![1, 1, 1, 1]);
        assert!(lengths(&g).iter().flatten().all(|&l| l <= 1));
    }

    #[test]
    fn lone_primitive_face_has_no_pieces() {
        let c = pc("gens: a b c\nrels: abc");
        assert!(PieceCatalog::compute(&c).is_empty());
        // a repeated letter overlaps itself at two offsets
        let c = pc("gens: a b\nrels: aabbb");
        assert_eq!(lengths(&c), vec![vec![1, 1, 2, 2, 1]]);
        let n = corpus::ngon(5);
        let cat = PieceCatalog::compute(&n);
        assert!(cat.is_empty());
        assert_eq!(cat.min_piece_cover(0), None);
    }

    #[test]
    fn period_symmetry_is_quotiented() {
        let c = pc("gens: a b\nrels: abab");
        let cat = PieceCatalog::compute(&c);
        assert!(cat.is_empty());
        assert_eq!(cat.min_piece_cover(0), None);
    }

    #[test]
    fn genus_two_cover() {
        let c = pc("gens: a b c d\nrels: abABcdCD");
        assert_eq!(lengths(&c), vec![vec![1; 8]]);
        assert_eq!(PieceCatalog::compute(&c).min_piece_cover(0), Some(8));
    }

    #[test]
    fn catalog_matches_brute_force() {
        for c in [
            pc("gens: a b\nrels: abAB"),
            pc("gens: a b\nrels: aabAB"),
            pc("gens: a b\nrels: abab aabb"),
            pc("gens: a b c\nrels: abcABC"),
            pc("gens: a b\nrels: aaBaBB abbaB"),
            corpus::grid(2, 2),
            corpus::subdivided_grid(2, 1, 2),
            corpus::cube_corner(),
            corpus::cube_surface(),
        ] {
            assert_eq!(lengths(&c), brute_lengths(&c));
        }
    }

    #[test]
    fn cp_examples() {
        let torus = pc("gens: a b\nrels: abAB");
        assert!(check_cp(&torus, 4).holds);
        let v = check_cp(&torus, 5);
        assert!(!v.holds);
        assert_eq!(v.witnesses, vec![(0, 4)]);
        assert!(check_cp(&pc("gens: a b c d\nrels: abABcdCD"), 8).holds);
    }

    #[test]
    fn tq_examples() {
        assert!(check_tq_link(&corpus::grid(3, 3), 4).holds);
        let v = check_tq_link(&corpus::cube_corner(), 4);
        assert!(!v.holds);
        assert_eq!(v.witnesses.len(), 1);
        assert_eq!(v.witnesses[0].nodes.len(), 3);
        assert_eq!(v.witnesses[0].vertex, corpus::cube_corner().vertex_by_name("o").unwrap());
        assert!(check_tq_link(&pc("gens: a b\nrels: abAB"), 4).holds);
        assert!(!check_tq_link(&pc("gens: a b\nrels: abAB"), 5).holds);
    }

    #[test]
    fn falsifier_examples() {
        let cc = corpus::cube_corner();
        let w = falsify_tq_by_diagrams(&cc, 4, 3).unwrap();
        assert_eq!(w.valence, 3);
        assert_eq!(w.diagram.area(), 3);
        assert!(w.diagram.validate().is_valid());
        assert!(w.diagram.is_reduced(&cc).unwrap().reduced);
        assert!(falsify_tq_by_diagrams(&corpus::grid(3, 3), 4, 6).is_none());
        assert!(falsify_tq_by_diagrams(&cc, 4, 2).is_none());
    }

    #[test]
    fn classification_examples() {
        let t = classify(&pc("gens: a b\nrels: abAB"));
        assert!(t.c4 && t.t4);
        assert_eq!(t.max_p, 4);
        assert!(!classify(&corpus::cube_corner()).t4);
        let g = classify(&pc("gens: a b c d\nrels: abABcdCD"));
        assert!(g.c4 && g.t4);
        assert_eq!(g.max_p, 8);
    }

    #[test]
    fn girth_agrees_with_cycle_search() {
        for c in [corpus::grid(3, 3), corpus::cube_corner(), corpus::cube_surface(), pc("gens: a b\nrels: abAB")] {
            for v in 0..c.vertex_count() {
                let link = link_of(&c, v);
                let g = link_girth(&link);
                for q in 3..10 {
                    assert_eq!(short_link_cycle(&link, q).is_some(), g.is_some_and(|g| g < q));
                }
            }
        }
    }

    proptest! {
        #[test]
        fn cp_and_tq_are_monotone(seed in 0u64..200) {
            let c = corpus::random_grid_subcomplex(4, 4, seed);
            for p in 2..8 {
                if check_cp(&c, p).holds {
                    prop_assert!((1..p).all(|p2| check_cp(&c, p2).holds));
                }
            }
            for q in 3..8 {
                if check_tq_link(&c, q).holds {
                    prop_assert!((3..q).all(|q2| check_tq_link(&c, q2).holds));
                }
            }
        }

        #[test]
        fn link_verdict_and_falsifier_agree(seed in 0u64..100) {
            let c = corpus::random_grid_subcomplex(3, 3, seed);
            if check_tq_link(&c, 4).holds {
                prop_assert!(falsify_tq_by_diagrams(&c, 4, 6).is_none());
            }
        }
    }

    #[test]
    fn double_arcs_break_t5() {
        // the midpoint of a shared side has two faces, so two arcs join the same pair of ends
        let c = crate::corpus::subdivided_grid(2, 1, 2);
        assert!(check_tq_link(&c, 4).holds);
        let v = check_tq_link(&c, 5);
        assert!(!v.holds);
        assert_eq!(v.witnesses[0].nodes.len(), 4);
        let w = falsify_tq_by_diagrams(&c, 5, 6).expect("a fan wrapping twice");
        assert_eq!(w.valence, 4);
        assert_eq!(classify(&c).max_q_checked, 4);
    }
}
