use cancellation_lab::action::{parse_actions, fixed_face_check, GroupAction, DEFAULT_BOUND};
use cancellation_lab::complex::{build_presentation_complex, strong_helly_check};
use cancellation_lab::corpus::{book, grid, ngon, ngon_rotation, random_grid_subcomplex, subdivided_grid, surface};
use cancellation_lab::diagram::{search_minimal_diagram, SearchOutcome};
use cancellation_lab::presentation::{parse_presentation, torsion_catalog};
use cancellation_lab::quadric::{cat0_square_check, minimize_diagram, quadrize, same_cycle};
use cancellation_lab::smallcancel::{check_tq_link, classify};
use cancellation_lab::{DiscDiagram, TwoComplex};

#[test]
fn presentation_to_classification() {
    let p = parse_presentation("# genus two\ngens: a b c d\nrels: abABcdCD\n").expect("parses");
    let c = build_presentation_complex(&p);
    assert_eq!((c.vertex_count(), c.edge_count(), c.face_count()), (1, 4, 1));
    let cls = classify(&c);
    assert!(cls.c4 && cls.t4);
    assert_eq!(cls.max_p, 8);
    assert_eq!(classify(&surface(2)).max_p, 8);
    assert!(torsion_catalog(&p).is_empty());
}

#[test]
fn complex_files_round_trip() {
    for c in [grid(3, 2), book(3, 3, 7), subdivided_grid(2, 2, 2), random_grid_subcomplex(5, 5, 11)] {
        let text = c.to_file_string();
        let back = TwoComplex::parse(&text).expect("parses");
        assert_eq!(back.to_file_string(), text);
        assert_eq!(classify(&back), classify(&c));
    }
}

#[test]
fn grid_subcomplexes_are_c4_t4_and_helly() {
    for seed in 0..20 {
        let c = random_grid_subcomplex(5, 4, seed);
        let cls = classify(&c);
        assert!(cls.c4 && cls.t4, "seed {seed}");
        assert!(strong_helly_check(&c).violations.is_empty(), "seed {seed}");
    }
}

#[test]
fn searched_diagrams_audit_cleanly() {
    let c = grid(3, 2);
    let e = |n: &str, fwd| cancellation_lab::SignedEdge::new(c.edge_by_name(n).expect("edge"), fwd);
    let w = vec![e("h0_0", true), e("h1_0", true), e("v2_0", true), e("v2_1", true), e("h1_2", false), e("h0_2", false), e("v0_1", false), e("v0_0", false)];
    let SearchOutcome::Found { diagram, area, .. } = search_minimal_diagram(&c, &w, 6).expect("closed path") else {
        panic!("no diagram within 6")
    };
    assert_eq!(area, 4);
    assert!(diagram.validate().is_valid());
    assert!(diagram.gauss_bonnet_audit().pass);
    assert_eq!(diagram.boundary_word().expect("labelled").len(), 8);
    let text = diagram.to_file_string(Some(&c));
    let back = DiscDiagram::parse(&text, Some(&c)).expect("parses");
    assert_eq!(back.to_file_string(Some(&c)), text);
    assert!(back.is_reduced(&c).expect("labelled").reduced);
}

#[test]
fn quadrization_of_a_book_minimizes_to_cat0() {
    let c = book(3, 3, 7);
    let q = quadrize(&c);
    assert_eq!(q.y().node_count(), c.vertex_count() + c.face_count());
    let d = cancellation_lab::corpus::random_y_diagram(q.y(), 4, 3, 5).expect("a diagram");
    let before = d.boundary_labels();
    let m = minimize_diagram(&d, q.y()).expect("minimizes");
    assert!(same_cycle(&before.expect("labels"), &m.diagram.boundary_labels().expect("labels")));
    assert!(cat0_square_check(&m.diagram.to_disc().expect("disc")).expect("squares").holds);
}

#[test]
fn action_file_drives_the_fixed_face_check() {
    let c = ngon(8);
    let text = ngon_rotation(8, 2).to_file_string(&c);
    let gens = parse_actions(&c, &text).expect("parses");
    let g = GroupAction::new(&c, gens, DEFAULT_BOUND).expect("valid");
    assert_eq!(g.order(), Some(4));
    let r = fixed_face_check(&c, &g).expect("free and elliptic");
    assert!(r.holds);
    assert_eq!(r.global_fixed_faces, vec![0]);
    assert!(check_tq_link(&c, 4).holds);
}
