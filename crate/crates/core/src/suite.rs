//! Seeded property suites over generated corpora.

use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use crate::action::{fix_uniqueness_check, fixed_face_check, ActionError, GroupAction, DEFAULT_BOUND};
use crate::complex::{connected_intersection_scan, strong_helly_check};
use crate::corpus::{
    action_corpus, book, complex_corpus, random_square_diagram, random_y_diagram, rng, sng_chain, subdivided_grid,
};
use crate::diagram::DiscDiagram;
use crate::presentation::{parse_presentation, torsion_catalog};
use crate::quadric::{
    bare_dlwc, cat0_square_check, dlwc_resolve, find_dlwc, minimize_diagram, quadrize, same_cycle, DlwcCase,
};
use crate::smallcancel::{check_tq_link, classify, falsify_tq_by_diagrams};

pub const SUITES: &[&str] = &["gauss-bonnet", "prop-quad", "dlwc", "singular", "sng", "helly", "torsion"];

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub seed: u64,
    pub cases: usize,
    pub failures: Vec<String>,
    #[serde(serialize_with = "millis")]
    pub elapsed: Duration,
    /// Extra counts, in a fixed order.
    pub stats: Vec<(String, String)>,
}

fn millis<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

impl SuiteReport {
    fn new(name: &str, seed: u64) -> Self {
        SuiteReport {
            name: name.to_string(),
            seed,
            cases: 0,
            failures: Vec::new(),
            elapsed: Duration::ZERO,
            stats: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn stat(&mut self, key: &str, value: impl ToString) {
        self.stats.push((key.to_string(), value.to_string()));
    }

    fn fail(&mut self, what: String) {
        self.failures.push(what);
    }
}

/// Runs a suite by name with its default sizes.
pub fn run(name: &str, seed: u64) -> Option<SuiteReport> {
    let start = Instant::now();
    let mut report = match name {
        "gauss-bonnet" => gauss_bonnet(seed, 10_000, 30),
        "singular" => singular(seed, 10_000, 30),
        "prop-quad" => prop_quad(seed, 1_000),
        "dlwc" => dlwc(seed, 6),
        "sng" => sng(seed, 500, 2_000),
        "helly" => helly(seed),
        "torsion" => torsion(seed),
        _ => return None,
    };
    report.elapsed = start.elapsed();
    Some(report)
}

/// Per-instance seeds drawn from one generator.
fn seeds(seed: u64, count: usize) -> Vec<u64> {
    let mut r = rng(seed);
    (0..count).map(|_| r.gen()).collect()
}

/// The random diagram corpus shared by the Gauss–Bonnet, singular and sng suites.
pub fn diagram_corpus(seed: u64, count: usize, max_area: usize) -> impl Iterator<Item = (u64, DiscDiagram)> {
    seeds(seed, count).into_iter().map(move |s| (s, random_square_diagram(max_area, s)))
}

pub fn gauss_bonnet(seed: u64, count: usize, max_area: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("gauss-bonnet", seed);
    let (mut singular, mut max_seen) = (0usize, 0usize);
    for (s, d) in diagram_corpus(seed, count, max_area) {
        rep.cases += 1;
        max_seen = max_seen.max(d.area());
        singular += usize::from(!d.cut_and_singular_vertices().1.is_empty());
        let gb = d.gauss_bonnet_audit();
        if !d.validate().is_valid() {
            rep.fail(format!("diagram {s}: invalid"));
        } else if gb.total.0 != 4 {
            rep.fail(format!("diagram {s}: total curvature {}", gb.total));
        }
    }
    rep.stat("singular_diagrams", singular);
    rep.stat("max_area", max_seen);
    rep
}

pub fn singular(seed: u64, count: usize, max_area: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("singular", seed);
    let mut vertices = 0;
    for (s, d) in diagram_corpus(seed, count, max_area) {
        rep.cases += 1;
        let r = d.singular_identity_check();
        vertices += r.checked;
        for v in r.violations {
            rep.fail(format!("diagram {s}: singular vertex {} (δ {}, ρ {}, δ_T {}, κ̂ {})", v.vertex, v.delta, v.rho, v.delta_t, v.kappa));
        }
    }
    rep.stat("singular_vertices", vertices);
    rep
}

pub fn prop_quad(seed: u64, count: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("prop-quad", seed);
    let bases = [subdivided_grid(3, 2, 2), subdivided_grid(2, 2, 3), book(3, 3, 7), book(4, 3, 7)];
    let quads: Vec<_> = bases.iter().map(quadrize).collect();
    let (mut ra, mut rb, mut removed) = (0, 0, 0);
    let mut r = rng(seed);
    for i in 0..count {
        let q = &quads[i % quads.len()];
        let (grow, splits, s) = (r.gen_range(0..6), r.gen_range(1..9), r.gen::<u64>());
        let Some(d) = random_y_diagram(q.y(), grow, splits, s) else { continue };
        rep.cases += 1;
        let before = d.boundary_labels();
        match (before, minimize_diagram(&d, q.y())) {
            (Ok(before), Ok(m)) => {
                ra += m.rule_a;
                rb += m.rule_b;
                removed += d.area() - m.diagram.area();
                let after = m.diagram.boundary_labels();
                if !after.as_ref().is_ok_and(|a| same_cycle(&before, a)) {
                    rep.fail(format!("diagram {s}: boundary changed"));
                }
                match m.diagram.to_disc().map_err(|e| e.to_string()).and_then(|x| cat0_square_check(&x).map_err(|e| e.to_string())) {
                    Ok(v) if v.holds => {}
                    Ok(v) => rep.fail(format!("diagram {s}: not CAT(0) at {:?}", v.witnesses)),
                    Err(e) => rep.fail(format!("diagram {s}: {e}")),
                }
                if m.diagram.check_labels(q.y()).is_err() {
                    rep.fail(format!("diagram {s}: output leaves the quadrization"));
                }
            }
            (_, Err(e)) | (Err(e), _) => rep.fail(format!("diagram {s}: {e}")),
        }
    }
    rep.stat("rule_a", ra);
    rep.stat("rule_b", rb);
    rep.stat("squares_removed", removed);
    rep
}

pub fn dlwc(seed: u64, max_len: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("dlwc", seed);
    let mut by_case = [0usize; 5];
    let mut complexes = 0;
    for (name, c) in complex_corpus(seed, 4) {
        let cls = classify(&c);
        if !(cls.c4 && cls.t4) {
            continue;
        }
        complexes += 1;
        let q = quadrize(&c);
        for l in find_dlwc(q.y(), max_len, 20_000) {
            rep.cases += 1;
            match dlwc_resolve(q.y(), &l).number() {
                Some(k) => by_case[usize::from(k) - 1] += 1,
                None => rep.fail(format!("{name}: violation at {l:?}")),
            }
        }
    }
    let (y, l) = bare_dlwc(2);
    let control = dlwc_resolve(&y, &l) == DlwcCase::Violation;
    if !control {
        rep.fail("negative control resolved to a case".into());
    }
    rep.stat("complexes", complexes);
    for (k, n) in by_case.iter().enumerate() {
        rep.stat(&format!("case_{}", k + 1), n);
    }
    rep.stat("negative_control_violation", control);
    rep
}

pub fn sng(seed: u64, chains: usize, corpus: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("sng", seed);
    let mut r = rng(seed);
    let mut hypothesis = 0;
    for _ in 0..chains {
        let (middle, s) = (r.gen_range(0..40), r.gen::<u64>());
        let d = sng_chain(middle, s);
        rep.cases += 1;
        let v = d.sng_check();
        if !v.hypothesis_holds {
            rep.fail(format!("chain {middle}/{s}: hypothesis does not hold"));
        } else {
            hypothesis += 1;
        }
        if !v.conclusion_holds {
            rep.fail(format!("chain {middle}/{s}: boundary total {}", v.boundary_total));
        }
    }
    let mut cat0 = 0;
    for (s, d) in diagram_corpus(seed, corpus, 30) {
        rep.cases += 1;
        let v = d.sng_check();
        if v.hypothesis_holds {
            hypothesis += 1;
        }
        if !v.conclusion_holds {
            rep.fail(format!("diagram {s}: boundary total {}", v.boundary_total));
        }
        let gb = d.gauss_bonnet_audit();
        if gb.squares_only && gb.cat0_interior {
            cat0 += 1;
            if v.hypothesis_holds {
                rep.fail(format!("diagram {s}: CAT(0) and satisfies the hypothesis"));
            }
        }
    }
    rep.stat("hypothesis_holds", hypothesis);
    rep.stat("cat0_diagrams", cat0);
    rep
}

pub fn helly(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("helly", seed);
    let mut triples = 0;
    let mut skipped = 0;
    for (name, c) in complex_corpus(seed, 16) {
        let cls = classify(&c);
        if !(cls.c4 && cls.t4) {
            skipped += 1;
            continue;
        }
        rep.cases += 1;
        let h = strong_helly_check(&c);
        triples += h.triples_checked;
        for t in h.violations {
            rep.fail(format!("{name}: Strong Helly fails on faces {t:?}"));
        }
        for p in connected_intersection_scan(&c) {
            rep.fail(format!("{name}: faces {p:?} meet in a disconnected set"));
        }
    }
    rep.stat("triples", triples);
    rep.stat("skipped_not_c4t4", skipped);
    rep
}

/// The link test and the fan-diagram falsifier agree on `T(q)` for `q ≤ 6`.
pub fn tq_agreement(seed: u64, random: usize, area_bound: usize) -> SuiteReport {
    let mut rep = SuiteReport::new("tq-agreement", seed);
    for (name, c) in complex_corpus(seed, random) {
        for q in 4..=6 {
            rep.cases += 1;
            let link = check_tq_link(&c, q).holds;
            let fan = falsify_tq_by_diagrams(&c, q, area_bound).is_none();
            if link != fan {
                rep.fail(format!("{name}: T({q}) link says {link}, diagrams say {fan}"));
            }
        }
    }
    rep
}

pub fn torsion(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("torsion", seed);
    let golden: [(&str, &[(&str, usize, &[usize])]); 4] = [
        ("gens: a b\nrels: abab", &[("ab", 2, &[2])]),
        ("gens: a\nrels: aaaaaa", &[("a", 6, &[2, 3, 6])]),
        ("gens: a b\nrels: abAB", &[]),
        ("gens: a b\nrels: aaaa bbbbbb", &[("a", 4, &[2, 4]), ("b", 6, &[2, 3, 6])]),
    ];
    for (text, want) in golden {
        rep.cases += 1;
        let p = match parse_presentation(text) {
            Ok(p) => p,
            Err(e) => {
                rep.fail(format!("{text:?}: {e}"));
                continue;
            }
        };
        let got: Vec<(String, usize, Vec<usize>)> = torsion_catalog(&p)
            .into_iter()
            .map(|e| (e.root.to_string(), e.exponent, e.candidate_orders.into_iter().collect()))
            .collect();
        let want: Vec<(String, usize, Vec<usize>)> = want.iter().map(|(r, q, o)| (r.to_string(), *q, o.to_vec())).collect();
        if got != want {
            rep.fail(format!("{text:?}: catalog {got:?}, expected {want:?}"));
        }
    }
    rep
}

/// Globally fixed faces and fixed-node uniqueness over every corpus action meeting the hypotheses.
pub fn fixed_face(seed: u64) -> SuiteReport {
    let mut rep = SuiteReport::new("fixed-face", seed);
    let mut skipped = 0;
    for (name, c, gens) in action_corpus() {
        let g = match GroupAction::new(&c, gens, DEFAULT_BOUND) {
            Ok(g) => g,
            Err(e) => {
                rep.fail(format!("{name}: {e}"));
                continue;
            }
        };
        match fixed_face_check(&c, &g) {
            Ok(r) => {
                rep.cases += 1;
                if !r.holds {
                    rep.fail(format!("{name}: no globally fixed face"));
                }
                match fix_uniqueness_check(&quadrize(&c), &g) {
                    Ok(f) if f.violations.is_empty() => {}
                    Ok(f) => rep.fail(format!("{name}: several fixed nodes {:?}", f.violations)),
                    Err(e) => rep.fail(format!("{name}: {e}")),
                }
            }
            Err(ActionError::Hypotheses(_)) => skipped += 1,
            Err(e) => rep.fail(format!("{name}: {e}")),
        }
    }
    rep.stat("skipped_hypotheses", skipped);
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_pass() {
        for rep in [
            gauss_bonnet(1, 200, 20),
            singular(1, 200, 20),
            prop_quad(1, 40),
            dlwc(1, 3),
            sng(1, 20, 100),
            helly(1),
            tq_agreement(1, 2, 6),
            torsion(1),
            fixed_face(1),
        ] {
            assert!(rep.passed(), "{}: {:?}", rep.name, rep.failures);
            assert!(rep.cases > 0, "{}", rep.name);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = gauss_bonnet(5, 50, 10);
        let b = gauss_bonnet(5, 50, 10);
        assert_eq!((a.cases, a.stats), (b.cases, b.stats));
    }

    #[test]
    fn unknown_suite() {
        assert!(run("nope", 0).is_none());
    }
}
