use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::corpus;

const T: bool = true;
const F: bool = false;

fn square() -> DiscDiagram {
    DiscDiagram::from_faces(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], &[vec![(0, T), (1, T), (2, T), (3, T)]]).unwrap()
}

fn domino() -> DiscDiagram {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 2)];
    let faces = [vec![(0, T), (1, T), (2, T), (3, T)], vec![(1, F), (4, T), (5, T), (6, T)]];
    DiscDiagram::from_faces(6, &edges, &faces).unwrap()
}

/// `k` squares sharing only vertex 0.
fn bouquet(k: usize) -> DiscDiagram {
    let mut edges = Vec::new();
    let mut faces = Vec::new();
    for i in 0..k {
        let (a, b, c) = (3 * i + 1, 3 * i + 2, 3 * i + 3);
        let e = edges.len();
        edges.extend([(0, a), (a, b), (b, c), (c, 0)]);
        faces.push(vec![(e, T), (e + 1, T), (e + 2, T), (e + 3, T)]);
    }
    DiscDiagram::from_faces(3 * k + 1, &edges, &faces).unwrap()
}

/// `m × n` grid of squares as a diagram; vertex `(x, y)` is `y * (m + 1) + x`.
fn grid(m: usize, n: usize) -> DiscDiagram {
    let vid = |x: usize, y: usize| y * (m + 1) + x;
    let mut edges = Vec::new();
    let mut h = vec![vec![0; n + 1]; m];
    let mut v = vec![vec![0; n]; m + 1];
    for y in 0..=n {
        for x in 0..m {
            h[x][y] = edges.len();
            edges.push((vid(x, y), vid(x + 1, y)));
        }
    }
    for x in 0..=m {
        for y in 0..n {
            v[x][y] = edges.len();
            edges.push((vid(x, y), vid(x, y + 1)));
        }
    }
    let mut faces = Vec::new();
    for y in 0..n {
        for x in 0..m {
            faces.push(vec![(h[x][y], T), (v[x + 1][y], T), (h[x][y + 1], F), (v[x][y], F)]);
        }
    }
    DiscDiagram::from_faces((m + 1) * (n + 1), &edges, &faces).unwrap()
}

#[test]
fn validation_examples() {
    let s = square();
    assert!(s.validate().is_valid());
    assert_eq!((s.vertex_count(), s.edge_count(), s.face_orbits().len()), (4, 4, 2));
    let d = domino();
    assert!(d.validate().is_valid());
    assert_eq!((d.vertex_count(), d.edge_count(), d.face_orbits().len()), (6, 7, 3));

    // swap the cyclic order at a valence-3 vertex of the domino
    let mut rotation: Vec<Vec<usize>> = (0..d.vertex_count()).map(|v| d.rotation(v).to_vec()).collect();
    rotation[1].swap(0, 1);
    let twin: Vec<usize> = (0..d.dart_count()).map(|x| d.twin(x)).collect();
    let origin: Vec<usize> = (0..d.dart_count()).map(|x| d.origin(x)).collect();
    let bad = DiscDiagram::from_parts(twin, origin, rotation, Some(0)).unwrap();
    assert!(!bad.validate().is_valid());

    assert!(DiscDiagram::from_faces(3, &[(0, 1), (1, 2), (2, 0)], &[vec![(0, T), (1, T), (2, T)], vec![(0, T), (1, T), (2, T)]]).is_err());
}

#[test]
fn boundary_examples() {
    assert_eq!(square().boundary_cycle().len(), 4);
    let b = bouquet(2);
    let pos = b.boundary_positions();
    assert_eq!(pos.len(), 8);
    assert_eq!(pos.iter().filter(|&&v| v == 0).count(), 2);
    let e = DiscDiagram::from_faces(2, &[(0, 1)], &[]).unwrap();
    assert!(e.validate().is_valid());
    assert_eq!(e.boundary_cycle().len(), 2);
    assert_eq!(e.area(), 0);
    let t = DiscDiagram::trivial();
    assert!(t.validate().is_valid());
    assert!(t.boundary_cycle().is_empty());
}

#[test]
fn between_examples() {
    let s = square();
    assert!(s.between(Orientation::Forward, 0, 1, 2).unwrap());
    assert!(!s.between(Orientation::Forward, 0, 3, 2).unwrap());
    assert!(s.between(Orientation::Backward, 0, 3, 2).unwrap());
    assert_eq!(
        s.between(Orientation::Forward, 0, 1, 4),
        Err(DiagramError::PositionOutOfRange { position: 4, len: 4 })
    );
}

#[test]
fn curvature_examples() {
    let s = square();
    assert!((0..4).all(|v| s.curvature(v) == CurvatureHalfPi(1)));
    let e = DiscDiagram::from_faces(2, &[(0, 1)], &[]).unwrap();
    assert_eq!(e.curvature(1), CurvatureHalfPi(2));
    let g = grid(2, 2);
    assert_eq!(g.curvature(4), CurvatureHalfPi(0));
    assert_eq!(g.curvature(1), CurvatureHalfPi(0));
    assert_eq!(g.curvature(0), CurvatureHalfPi(1));
    assert_eq!(CurvatureHalfPi(1).to_string(), "π/2");
    assert_eq!(CurvatureHalfPi(-4).to_string(), "-2π");
}

#[test]
fn gauss_bonnet_examples() {
    let r = square().gauss_bonnet_audit();
    assert_eq!((r.total, r.boundary_total), (CurvatureHalfPi(4), CurvatureHalfPi(4)));
    assert!(r.pass);
    let g = grid(2, 2);
    let sum: i64 = (0..9).map(|v| g.curvature(v).0).sum();
    assert_eq!(sum, 4);
    let r = g.gauss_bonnet_audit();
    assert!(r.pass && r.cat0_interior);
    // six outer corners at +1 and the cut vertex at 4 - 8 + 2
    let b = bouquet(2);
    assert_eq!(b.curvature(0), CurvatureHalfPi(-2));
    assert_eq!((1..7).map(|v| b.curvature(v).0).sum::<i64>(), 6);
    assert_eq!(b.gauss_bonnet_audit().total, CurvatureHalfPi(4));
    assert_eq!(DiscDiagram::trivial().gauss_bonnet_audit().total, CurvatureHalfPi(4));
}

#[test]
fn cut_and_singular_examples() {
    let (cut, sing) = bouquet(2).cut_and_singular_vertices();
    assert_eq!(cut, BTreeSet::from([0]));
    assert_eq!(sing, BTreeSet::from([0]));

    let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)];
    let d = DiscDiagram::from_faces(5, &edges, &[vec![(0, T), (1, T), (2, T), (3, T)]]).unwrap();
    assert!(d.validate().is_valid());
    let (cut, sing) = d.cut_and_singular_vertices();
    assert_eq!(cut, BTreeSet::from([0]));
    assert_eq!(sing, BTreeSet::from([0]));

    let (cut, sing) = grid(2, 2).cut_and_singular_vertices();
    assert!(cut.is_empty() && sing.is_empty());

    // a path a - b - c: b is cut but touches no face
    let p = DiscDiagram::from_faces(3, &[(0, 1), (1, 2)], &[]).unwrap();
    let (cut, sing) = p.cut_and_singular_vertices();
    assert_eq!(cut, BTreeSet::from([1]));
    assert!(sing.is_empty());
}

/// Three squares in a row, consecutive ones sharing one vertex.
fn chain3() -> DiscDiagram {
    let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (2, 4), (4, 5), (5, 6), (6, 2), (5, 7), (7, 8), (8, 9), (9, 5)];
    let faces: Vec<Vec<(usize, bool)>> = (0..3).map(|i| (0..4).map(|k| (4 * i + k, T)).collect()).collect();
    DiscDiagram::from_faces(10, &edges, &faces).unwrap()
}

#[test]
fn cut_tree_examples() {
    let t = bouquet(2).modified_cut_tree();
    assert_eq!((t.singular.len(), t.components, t.node_count()), (1, 2, 3));
    assert!(t.is_tree());
    let c = chain3();
    assert!(c.validate().is_valid());
    let t = c.modified_cut_tree();
    assert_eq!(t.node_count(), 5);
    assert!(t.is_tree());
    let t = grid(2, 2).modified_cut_tree();
    assert_eq!((t.singular.len(), t.components), (0, 1));
    assert!(t.is_tree());
}

#[test]
fn singular_identity_examples() {
    let b = bouquet(2);
    let r = b.singular_identity_check();
    assert_eq!(r.checked, 1);
    assert!(r.violations.is_empty());
    assert_eq!((b.degree(0), b.inner_corners(0), b.modified_cut_tree().degree_of_vertex(0)), (4, 2, 2));
    let b = bouquet(3);
    assert_eq!((b.degree(0), b.inner_corners(0), b.modified_cut_tree().degree_of_vertex(0)), (6, 3, 3));
    assert!(b.singular_identity_check().violations.is_empty());
    let r = grid(2, 2).singular_identity_check();
    assert_eq!(r.checked, 0);
}

#[test]
fn geodesic_examples() {
    let g = grid(3, 1);
    let pos = g.boundary_positions();
    let at = |v: usize| pos.iter().position(|&p| p == v).unwrap();
    // the bottom side between (0,0) and (3,0), in whichever direction the walk runs
    let start = if pos[(at(0) + 1) % pos.len()] == 1 { at(0) } else { at(3) };
    let r = g.geodesic_boundary_check(start, 3).unwrap();
    assert_eq!(r.internal_vertices, 2);
    assert!(r.violations.is_empty());

    let s = square();
    assert!(s.geodesic_boundary_check(0, 2).unwrap().violations.is_empty());

    let d = grid(2, 1);
    let r = d.geodesic_boundary_check(0, 4).unwrap();
    assert!(r.violations.iter().any(|v| matches!(v, GeodesicViolation::Shortcut { .. })));
    assert!(d.geodesic_boundary_check(0, 7).is_err());
}

#[test]
fn sng_examples() {
    assert!(!grid(2, 2).sng_check().hypothesis_holds);
    let d = DiscDiagram::from_faces(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)], &[vec![(0, T), (1, T), (2, T), (3, T)]]).unwrap();
    assert!(!d.sng_check().hypothesis_holds);
    let r = chain3().sng_check();
    assert!(r.conclusion_holds);
}

fn square_target() -> TwoComplex {
    let mut c = TwoComplex::new();
    let v: Vec<usize> = (0..4).map(|i| c.add_vertex(format!("v{i}"))).collect();
    let x: Vec<usize> = (0..4).map(|i| c.add_edge(format!("x{i}"), v[i], v[(i + 1) % 4])).collect();
    c.add_face("F", x.iter().map(|&e| SignedEdge::new(e, true)).collect());
    c
}

#[test]
fn reducedness_examples() {
    let c = square_target();
    let x = |i: usize, f: bool| SignedEdge::new(i, f);
    let mut d = domino();
    let mut labels = vec![SignedEdge::new(0, true); d.dart_count()];
    for (e, l) in [(0, x(0, T)), (1, x(1, T)), (2, x(2, T)), (3, x(3, T)), (4, x(0, F)), (5, x(3, F)), (6, x(2, F))] {
        labels[2 * e] = l;
        labels[2 * e + 1] = l.inv();
    }
    d.set_dart_labels(labels).unwrap();
    assert_eq!(d.is_reduced(&c), Err(DiagramError::Unlabeled("face at dart 0".into())));
    d.set_face_label(0, 0).unwrap();
    d.set_face_label(3, 0).unwrap();
    let v = d.is_reduced(&c).unwrap();
    assert!(!v.reduced);
    assert!(v.witness.is_some());

    let g = corpus::grid(2, 1);
    let w: Vec<SignedEdge> = g.boundary(0).to_vec();
    let found = search_minimal_diagram(&g, &w, 2).unwrap();
    let single = found.diagram().unwrap();
    assert_eq!(single.area(), 1);
    assert!(single.is_reduced(&g).unwrap().reduced);
}

fn rectangle_word(g: &TwoComplex) -> Vec<SignedEdge> {
    let e = |n: &str| g.edge_by_name(n).unwrap();
    vec![
        SignedEdge::new(e("h0_0"), T),
        SignedEdge::new(e("h1_0"), T),
        SignedEdge::new(e("v2_0"), T),
        SignedEdge::new(e("h1_1"), F),
        SignedEdge::new(e("h0_1"), F),
        SignedEdge::new(e("v0_0"), F),
    ]
}

#[test]
fn minimal_search_examples() {
    let g = corpus::grid(2, 1);
    let w = rectangle_word(&g);
    assert_eq!(
        search_minimal_diagram(&g, &w, 1).unwrap(),
        SearchOutcome::NoneWithinBound { bound: 1, states: search_states(&g, &w, 1) }
    );
    let out = search_minimal_diagram(&g, &w, 6).unwrap();
    let d = out.diagram().unwrap();
    assert_eq!(out.area(), Some(2));
    assert!(d.validate().is_valid());
    assert_eq!(d.boundary_word().unwrap(), w);
    assert!(d.is_reduced(&g).unwrap().reduced);
    assert!(d.gauss_bonnet_audit().pass);

    let e = SignedEdge::new(0, T);
    let out = search_minimal_diagram(&g, &[e, e.inv()], 3).unwrap();
    let d = out.diagram().unwrap();
    assert_eq!((d.area(), d.edge_count(), d.vertex_count()), (0, 1, 2));
    assert_eq!(d.boundary_word().unwrap(), vec![e, e.inv()]);

    assert_eq!(search_minimal_diagram(&g, &[e], 3), Err(DiagramError::NotClosed(0)));
    let empty = search_minimal_diagram(&g, &[], 3).unwrap();
    assert_eq!(empty.area(), Some(0));
}

fn search_states(g: &TwoComplex, w: &[SignedEdge], bound: usize) -> usize {
    match search_minimal_diagram(g, w, bound).unwrap() {
        SearchOutcome::Found { states, .. } | SearchOutcome::NoneWithinBound { states, .. } => states,
    }
}

#[test]
fn search_on_presentation_complex() {
    use crate::complex::build_presentation_complex;
    use crate::presentation::parse_presentation;
    let p = parse_presentation("gens: a b\nrels: abAB").unwrap();
    let c = build_presentation_complex(&p);
    let a = SignedEdge::new(0, T);
    let b = SignedEdge::new(1, T);
    // a²b a⁻²b⁻¹ bounds two faces
    let w = vec![a, a, b, a.inv(), a.inv(), b.inv()];
    let out = search_minimal_diagram(&c, &w, 4).unwrap();
    let d = out.diagram().unwrap();
    assert_eq!(out.area(), Some(2));
    assert!(d.validate().is_valid());
    assert_eq!(d.boundary_word().unwrap(), w);
    assert!(d.is_reduced(&c).unwrap().reduced);
    assert!(d.gauss_bonnet_audit().pass);
    // aba⁻¹ is nontrivial in the group, so no diagram exists at any area
    let out = search_minimal_diagram(&c, &[a, b, a.inv()], 3).unwrap();
    assert!(out.area().is_none());
}

#[test]
fn file_round_trip() {
    let g = corpus::grid(2, 1);
    let d = search_minimal_diagram(&g, &rectangle_word(&g), 4).unwrap().diagram().unwrap().clone();
    let text = d.to_file_string(Some(&g));
    let back = DiscDiagram::parse(&text, Some(&g)).unwrap();
    assert_eq!(back.to_file_string(Some(&g)), text);
    assert!(back.is_reduced(&g).unwrap().reduced);
    let plain = DiscDiagram::parse(&square().to_file_string(None), None).unwrap();
    assert!(plain.validate().is_valid());
    assert!(matches!(DiscDiagram::parse("d 0 1 0\nzz", None), Err(DiagramError::Parse { line: 2, .. })));
}

proptest! {
    #[test]
    fn betweenness_splits_the_circle(n in 3usize..12, u in 0usize..12, w in 0usize..12, v in 0usize..12) {
        let (u, w, v) = (u % n, w % n, v % n);
        prop_assume!(u != w && w != v && u != v);
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let d = DiscDiagram::from_faces(n, &edges, &[(0..n).map(|i| (i, T)).collect()]).unwrap();
        let f = d.between(Orientation::Forward, u, w, v).unwrap();
        let b = d.between(Orientation::Backward, u, w, v).unwrap();
        prop_assert!(f ^ b);
    }

    #[test]
    fn grids_satisfy_gauss_bonnet(m in 1usize..6, n in 1usize..6) {
        let g = grid(m, n);
        prop_assert!(g.validate().is_valid());
        let r = g.gauss_bonnet_audit();
        prop_assert_eq!(r.total, CurvatureHalfPi(4));
        prop_assert!(r.pass && r.cat0_interior);
        prop_assert_eq!(g.area(), m * n);
    }
}
