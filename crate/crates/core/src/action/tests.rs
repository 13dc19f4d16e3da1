use proptest::prelude::*;

use super::*;
use crate::corpus::{cyclic_cayley, cyclic_translation, grid, grid_mirror, ngon, ngon_rotation};
use crate::quadric::quadrize;

fn ngon_group(n: usize, k: usize) -> (TwoComplex, GroupAction) {
    let c = ngon(n);
    let g = GroupAction::new(&c, vec![ngon_rotation(n, k)], DEFAULT_BOUND).expect("valid");
    (c, g)
}

#[test]
fn validation() {
    let c = ngon(5);
    assert!(ngon_rotation(5, 1).validate(&c).is_empty());
    assert!(Automorphism::identity(&c).validate(&c).is_empty());
    let mut bad = ngon_rotation(5, 1);
    bad.vertices.swap(0, 1);
    assert!(!bad.validate(&c).is_empty());
    let mut bad = ngon_rotation(5, 1);
    bad.faces[0] = 3;
    assert_eq!(bad.validate(&c), vec!["face map is not a bijection".to_string()]);
    let g = grid(2, 1);
    assert!(grid_mirror(&g, 2, 1).validate(&g).is_empty());
    let t = cyclic_cayley(4);
    assert!(cyclic_translation(4).validate(&t).is_empty());
}

#[test]
fn rotation_groups_are_free_and_elliptic() {
    for n in 2..9 {
        let (_, g) = ngon_group(n, 1);
        assert_eq!(g.order(), Some(n));
        assert!(g.free_on_1_skeleton().expect("complete").free);
        let e = g.locally_elliptic_check().expect("complete");
        assert!(e.elliptic && e.mid_edge_only.is_empty());
    }
}

#[test]
fn trivial_group() {
    let c = grid(2, 2);
    let g = GroupAction::new(&c, vec![], DEFAULT_BOUND).expect("valid");
    assert_eq!(g.order(), Some(1));
    assert!(g.free_on_1_skeleton().expect("complete").free);
    assert!(g.locally_elliptic_check().expect("complete").elliptic);
    let report = fixed_face_check(&c, &g).expect("hypotheses hold");
    assert!(report.holds);
    assert_eq!(report.global_fixed_faces.len(), 4);
}

#[test]
fn mirror_fixes_the_middle_edge() {
    let c = grid(2, 1);
    let g = GroupAction::new(&c, vec![grid_mirror(&c, 2, 1)], DEFAULT_BOUND).expect("valid");
    let v = g.free_on_1_skeleton().expect("complete");
    assert!(!v.free);
    let middle = c.vertex_by_name("1_0").expect("vertex");
    assert_eq!(v.witness, Some(("mirror".to_string(), Cell::Vertex(middle))));
    let fix = fixed_sets(&quadrize(&c), &g.elements[1]);
    assert_eq!(fix.edges, vec![c.edge_by_name("v1_0").expect("edge")]);
    assert!(fix.inverted_edges.is_empty());
    assert!(fix.consistent);
    let q = quadrize(&c);
    assert!(matches!(fix_uniqueness_check(&q, &g), Err(ActionError::Hypotheses(_))));
}

#[test]
fn edge_inversion_is_not_free() {
    // the mirror of a single row of three squares swaps the ends of the middle edge
    let c = grid(3, 1);
    let g = GroupAction::new(&c, vec![grid_mirror(&c, 3, 1)], DEFAULT_BOUND).expect("valid");
    let v = g.free_on_1_skeleton().expect("complete");
    assert_eq!(v.witness, Some(("mirror".to_string(), Cell::Edge(c.edge_by_name("h1_0").expect("edge")))));
    let fix = fixed_sets(&quadrize(&c), &g.elements[1]);
    assert_eq!(fix.inverted_edges.len(), 2);
}

#[test]
fn orders() {
    let (_, g) = ngon_group(6, 1);
    assert_eq!(element_order(&g.word("rot1").expect("word"), 100), Some(6));
    assert_eq!(element_order(&g.word("rot1 rot1").expect("word"), 100), Some(3));
    assert_eq!(element_order(&g.word("").expect("word"), 100), Some(1));
    assert_eq!(element_order(&g.word("rot1").expect("word"), 5), None);
    assert!(g.word("rot1 rot1^-1").expect("word").is_identity());
    assert!(matches!(g.word("nope"), Err(ActionError::UnknownGenerator(_))));
    for a in &g.elements {
        let k = element_order(a, 100).expect("finite");
        assert_eq!(g.elements.len() % k, 0);
    }
}

#[test]
fn fixed_sets_of_rotations() {
    let (c, g) = ngon_group(5, 1);
    let q = quadrize(&c);
    let fix = fixed_sets(&q, &g.elements[1]);
    assert!(fix.vertices.is_empty() && fix.edges.is_empty());
    assert_eq!(fix.faces, vec![0]);
    assert_eq!(fix.y_nodes, vec![q.face_node(0)]);
    assert!(fix.consistent);
    let all = fixed_sets(&q, &g.elements[0]);
    assert_eq!(all.y_nodes.len(), q.y().node_count());
}

#[test]
fn cayley_translation_fixes_only_the_face() {
    let c = cyclic_cayley(5);
    assert_eq!(c.face_count(), 1);
    let g = GroupAction::new(&c, vec![cyclic_translation(5)], DEFAULT_BOUND).expect("valid");
    let q = quadrize(&c);
    let fix = fixed_sets(&q, &g.elements[1]);
    assert!(fix.vertices.is_empty() && fix.edges.is_empty());
    assert_eq!(fix.faces, vec![0]);
    let report = fix_uniqueness_check(&q, &g).expect("hypotheses hold");
    assert_eq!((report.checked, report.violations.len()), (4, 0));
    assert!(fixed_face_check(&c, &g).expect("hypotheses hold").holds);
}

#[test]
fn truncation_is_loud() {
    let (_, g) = {
        let c = ngon(7);
        let g = GroupAction::new(&c, vec![ngon_rotation(7, 1)], 3).expect("valid");
        (c, g)
    };
    assert!(g.truncated);
    assert_eq!(g.free_on_1_skeleton(), Err(ActionError::Truncated(3)));
    assert_eq!(g.locally_elliptic_check(), Err(ActionError::Truncated(3)));
}

#[test]
fn separation() {
    let (c, g) = ngon_group(6, 1);
    let q = quadrize(&c);
    let f = q.face_node(0);
    let s = separation_exponent(&q, &g.elements[1], f, 10).expect("fixed");
    assert_eq!(s.k, Some(1));
    assert!(s.link_distance_holds);
    let s = separation_exponent(&q, &g.elements[0], f, 10).expect("fixed");
    assert_eq!(s.k, None);
    assert_eq!(separation_exponent(&q, &g.elements[1], 0, 10), Err(ActionError::NotFixed(0)));
}

#[test]
fn sim() {
    let c = grid(2, 1);
    let q = quadrize(&c);
    let m = grid_mirror(&c, 2, 1);
    let r = sim_check(&q, &m, &[0, 1]).expect("preconditions");
    assert_eq!(r.class, Some(IntersectionClass::Interval));
    assert!(r.holds && r.fixed_cell.is_some());
    assert!(sim_check(&q, &m, &[0]).is_err());
    let id = Automorphism::identity(&c);
    assert!(sim_check(&q, &id, &[0]).expect("preconditions").vacuous);
    assert!(sim_check(&q, &id, &[0, 1]).expect("preconditions").vacuous);
}

#[test]
fn fixed_face_hypotheses_are_itemized() {
    let c = grid(2, 1);
    let g = GroupAction::new(&c, vec![grid_mirror(&c, 2, 1)], DEFAULT_BOUND).expect("valid");
    let Err(ActionError::Hypotheses(items)) = fixed_face_check(&c, &g) else { panic!("expected hypothesis error") };
    assert_eq!(items.len(), 1);
}

#[test]
fn file_round_trip() {
    let c = ngon(4);
    let a = ngon_rotation(4, 1);
    let text = a.to_file_string(&c);
    assert_eq!(parse_actions(&c, &text).expect("parses"), vec![a]);
    assert!(parse_actions(&c, "v p0 p1").is_err());
    assert!(matches!(parse_actions(&c, "aut r\nv p0 q9"), Err(ActionError::Parse { line: 2, .. })));
    let partial = parse_actions(&c, "aut r\nf f f\n").expect("parses");
    assert!(partial[0].is_identity());
}

proptest! {
    #[test]
    fn fixed_sets_are_equivariant(n in 2usize..10, i in 0usize..10, j in 0usize..10) {
        let (c, g) = ngon_group(n, 1);
        let q = quadrize(&c);
        let (a, h) = (&g.elements[i % n], &g.elements[j % n]);
        let conj = h.after(&a.after(&h.inverse()));
        let p = y_permutation(&q, h);
        let mut moved: Vec<usize> = fixed_sets(&q, a).y_nodes.iter().map(|&x| p[x]).collect();
        moved.sort_unstable();
        prop_assert_eq!(fixed_sets(&q, &conj).y_nodes, moved);
    }

    #[test]
    fn order_divides_group_order(n in 1usize..12, k in 0usize..12) {
        let (_, g) = ngon_group(n, k % n);
        let ord = element_order(&g.elements[g.elements.len() - 1], 100).expect("finite");
        prop_assert_eq!(g.elements.len() % ord, 0);
        prop_assert_eq!(g.elements.len(), n / gcd(n, k % n));
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}
