use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use cancellation_lab::action::{
    fix_uniqueness_check, fixed_sets, parse_actions, fixed_face_check, ActionError, Cell, GroupAction,
};
use cancellation_lab::complex::{build_presentation_complex, connected_intersection_scan, link_of, strong_helly_check};
use cancellation_lab::corpus::{grid, named, ngon_rotation, random_grid_subcomplex, NAMED};
use cancellation_lab::diagram::{search_minimal_diagram, SearchOutcome};
use cancellation_lab::presentation::{parse_presentation, torsion_catalog};
use cancellation_lab::quadric::{dlwc_resolve, find_dlwc, quadrize};
use cancellation_lab::smallcancel::{check_cp, check_tq_link, classify, falsify_tq_by_diagrams, LinkCycle, Q_CAP};
use cancellation_lab::suite;
use cancellation_lab::{DiscDiagram, TwoComplex};

use crate::input::{load, load_complex, parse_word, read};
use crate::report::Report;

const WITNESS_LINES: usize = 10;

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cycle_string(c: &TwoComplex, w: &LinkCycle) -> String {
    let link = link_of(c, w.vertex);
    let ends: Vec<String> = w
        .nodes
        .iter()
        .map(|&i| {
            let n = link.nodes[i];
            format!("{}@{}", c.edge(n.edge).name, if n.at_head { "head" } else { "tail" })
        })
        .collect();
    format!("vertex {} cycle {}", c.vertex_name(w.vertex), ends.join(" "))
}

fn face_names(c: &TwoComplex, faces: &[usize]) -> String {
    faces.iter().map(|&f| c.face(f).name.as_str()).collect::<Vec<_>>().join(" ")
}

fn cell_string(c: &TwoComplex, cell: Cell) -> String {
    match cell {
        Cell::Vertex(v) => format!("vertex {}", c.vertex_name(v)),
        Cell::Edge(e) => format!("edge {}", c.edge(e).name),
        Cell::Face(f) => format!("face {}", c.face(f).name),
    }
}

pub struct CheckArgs {
    pub input: PathBuf,
    pub p: usize,
    pub q: usize,
    pub oracle_area: Option<usize>,
    pub thicken: bool,
}

pub fn check(a: &CheckArgs) -> Result<Report> {
    let loaded = load(&a.input)?;
    let mut c = loaded.complex;
    if a.thicken {
        c = c.thicken_free_edges();
    }
    let mut r = Report::new("check", loaded.text.as_bytes());
    r.line("input_kind", if loaded.presentation.is_some() { "presentation" } else { "complex" });
    r.line("vertices", c.vertex_count());
    r.line("edges", c.edge_count());
    r.line("faces", c.face_count());
    let cls = classify(&c);
    r.line("pieces", cls.piece_count);
    r.line("max_p", cls.max_p);
    r.line("max_q", if cls.max_q_checked >= Q_CAP { format!("{Q_CAP} or more") } else { cls.max_q_checked.to_string() });
    r.line("C(4)–T(4)", yes_no(cls.c4 && cls.t4));

    let cp = check_cp(&c, a.p);
    r.verdict(&format!("C({})", a.p), cp.holds);
    for &(f, k) in cp.witnesses.iter().take(WITNESS_LINES) {
        r.line("cp_witness", format!("face {} is a product of {k} pieces", c.face(f).name));
    }
    let tq = check_tq_link(&c, a.q);
    r.verdict(&format!("T({})", a.q), tq.holds);
    for w in tq.witnesses.iter().take(WITNESS_LINES) {
        r.line("tq_witness", cycle_string(&c, w));
    }
    if let Some(area) = a.oracle_area {
        let fan = falsify_tq_by_diagrams(&c, a.q, area);
        match &fan {
            None => r.line("tq_oracle", format!("no interior vertex of valence 3..{} within area {area}", a.q - 1)),
            Some(w) => r.line(
                "tq_oracle",
                format!("valence {} at vertex {}, area {}", w.valence, c.vertex_name(w.vertex), w.diagram.area()),
            ),
        }
        r.verdict("tq_oracle_agreement", fan.is_none() == tq.holds);
    }
    if cls.c4 && cls.t4 {
        let ctc = connected_intersection_scan(&c);
        for &(f, g) in ctc.iter().take(WITNESS_LINES) {
            r.line("ctc_witness", format!("faces {} {} meet in a disconnected set", c.face(f).name, c.face(g).name));
        }
        r.verdict("connected_intersections", ctc.is_empty());
        let h = strong_helly_check(&c);
        r.line("helly_triples", h.triples_checked);
        for t in h.violations.iter().take(WITNESS_LINES) {
            r.line("helly_witness", format!("faces {}", face_names(&c, t)));
        }
        r.verdict("strong_helly", h.violations.is_empty());
    } else {
        r.line("connected_intersections", "skipped, not C(4)–T(4)");
        r.line("strong_helly", "skipped, not C(4)–T(4)");
    }
    Ok(r)
}

pub fn torsion(path: &Path) -> Result<Report> {
    let text = read(path)?;
    let p = parse_presentation(&text).with_context(|| format!("{}: parse error", path.display()))?;
    let cls = classify(&build_presentation_complex(&p));
    let catalog = torsion_catalog(&p);
    let mut r = Report::new("torsion", text.as_bytes());
    r.line("presentation", p.to_string().trim().replace('\n', "; "));
    let hyp = cls.c4 && cls.t4;
    let banner = match (hyp, catalog.is_empty()) {
        (true, true) => "yes; torsion-free",
        (true, false) => "yes; every torsion element is conjugate to a power of a listed root",
        (false, _) => "no; hypotheses not verified",
    };
    r.line("C(4)–T(4)", banner);
    if hyp {
        r.line("asphericity", "aspherical");
    }
    for e in &catalog {
        let orders: Vec<String> = e.candidate_orders.iter().map(ToString::to_string).collect();
        r.line(
            "torsion",
            format!("relator {} root {} exponent {} orders {}", e.relator_index, e.root, e.exponent, orders.join(",")),
        );
    }
    r.pass = hyp;
    Ok(r)
}

/// Returns the quadrization file and whether every detected configuration resolved.
pub fn quadrize_file(path: &Path, find: Option<usize>) -> Result<(String, bool)> {
    let (_, c) = load_complex(path)?;
    let q = quadrize(&c);
    let mut out = q.to_file_string(&path.display().to_string());
    let mut ok = true;
    if let Some(max_len) = find {
        let y = q.y();
        let found = find_dlwc(y, max_len, 20_000);
        let _ = writeln!(out, "# dlwc max-length: {max_len} found: {}", found.len());
        let names = |ns: &[usize]| ns.iter().map(|&n| y.name(n)).collect::<Vec<_>>().join(",");
        for l in &found {
            let case = dlwc_resolve(y, l);
            ok &= case.number().is_some();
            let verdict = case.number().map_or_else(|| "violation".to_string(), |k| format!("case {k}"));
            let _ = writeln!(out, "# dlwc u={} v={} w={} c={}: {verdict}", names(&l.u), names(&l.v), names(&l.w), y.name(l.c));
        }
    }
    Ok((out, ok))
}

pub fn diagram_audit(path: &Path, complex: Option<&Path>) -> Result<Report> {
    let text = read(path)?;
    let target = complex.map(load_complex).transpose()?;
    let d = DiscDiagram::parse(&text, target.as_ref().map(|t| &t.1)).with_context(|| format!("{}: parse error", path.display()))?;
    let mut input = text.clone();
    if let Some((t, _)) = &target {
        input.push_str(t);
    }
    let mut r = Report::new("diagram audit", input.as_bytes());
    let v = d.validate();
    for p in v.problems.iter().take(WITNESS_LINES) {
        r.line("problem", p);
    }
    r.verdict("valid", v.is_valid());
    if !v.is_valid() {
        return Ok(r);
    }
    r.line("vertices", d.vertex_count());
    r.line("edges", d.edge_count());
    r.line("area", d.area());
    let gb = d.gauss_bonnet_audit();
    r.line("curvature_total", gb.total);
    r.line("curvature_expected", gb.expected_total);
    r.line("boundary_curvature", gb.boundary_total);
    r.verdict("gauss_bonnet", gb.pass);
    let (cut, singular) = d.cut_and_singular_vertices();
    r.line("cut_vertices", cut.len());
    r.line("singular_vertices", singular.len());
    let s = d.singular_identity_check();
    for v in s.violations.iter().take(WITNESS_LINES) {
        r.line("singular_witness", format!("vertex {} δ {} ρ {} δ_T {} κ̂ {}", v.vertex, v.delta, v.rho, v.delta_t, v.kappa));
    }
    r.verdict("singular_identity", s.violations.is_empty());
    let sng = d.sng_check();
    r.line("sng_hypothesis", yes_no(sng.hypothesis_holds));
    if sng.hypothesis_holds {
        r.verdict("sng_boundary_nonpositive", sng.conclusion_holds);
    }
    if let Some((_, c)) = &target {
        let red = d.is_reduced(c)?;
        r.line("reduced", yes_no(red.reduced));
        if let Some((f, g, dart)) = red.witness {
            r.line("reduction_witness", format!("faces {f} {g} along dart {dart}"));
        }
    }
    Ok(r)
}

pub struct SearchArgs {
    pub complex: PathBuf,
    pub word: Option<String>,
    pub face: Option<String>,
    pub bound: usize,
    pub out: Option<PathBuf>,
}

pub fn diagram_search(a: &SearchArgs) -> Result<Report> {
    let (text, c) = load_complex(&a.complex)?;
    let w = match (&a.face, &a.word) {
        (Some(f), None) => {
            let f = c.face_by_name(f).ok_or_else(|| anyhow!("unknown face '{f}'"))?;
            c.boundary(f).to_vec()
        }
        (None, Some(word)) => parse_word(&c, word)?,
        _ => bail!("give exactly one of --word and --face"),
    };
    let mut input = text;
    let _ = write!(input, "\n{:?}\n{}", w, a.bound);
    let mut r = Report::new("diagram search", input.as_bytes());
    r.line("boundary_length", w.len());
    r.line("bound", a.bound);
    match search_minimal_diagram(&c, &w, a.bound)? {
        SearchOutcome::Found { diagram, area, states } => {
            r.line("area", area);
            r.line("states", states);
            r.verdict("found", true);
            if let Some(out) = &a.out {
                std::fs::write(out, diagram.to_file_string(Some(&c))).with_context(|| format!("cannot write {}", out.display()))?;
                r.line("written", out.display());
            }
        }
        SearchOutcome::NoneWithinBound { bound, states } => {
            r.line("area", format!("none within {bound}"));
            r.line("states", states);
            r.verdict("found", false);
        }
    }
    Ok(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ActionCheck {
    All,
    Free,
    Elliptic,
    FixedFace,
    Fix,
}

pub fn action(complex: &Path, actions: &Path, check: ActionCheck, bound: usize) -> Result<Report> {
    let (ctext, c) = load_complex(complex)?;
    let atext = read(actions)?;
    let gens = parse_actions(&c, &atext).with_context(|| format!("{}: parse error", actions.display()))?;
    let names: Vec<String> = gens.iter().map(|g| g.name.clone()).collect();
    let g = GroupAction::new(&c, gens, bound)?;
    let mut r = Report::new("action", format!("{ctext}{atext}").as_bytes());
    r.line("generators", names.join(" "));
    match g.order() {
        Some(n) => r.line("group_order", n),
        None => r.line("group_order", format!("more than {bound}, closure truncated")),
    }
    let want = |k: ActionCheck| check == ActionCheck::All || check == k;
    let q = quadrize(&c);
    if want(ActionCheck::Free) {
        match g.free_on_1_skeleton() {
            Ok(v) => {
                if let Some((name, cell)) = &v.witness {
                    r.line("free_witness", format!("{name} fixes {}", cell_string(&c, *cell)));
                }
                r.verdict("free_on_1_skeleton", v.free);
            }
            Err(e) => {
                r.line("free_on_1_skeleton", e);
                r.pass = false;
            }
        }
    }
    if want(ActionCheck::Elliptic) {
        match g.locally_elliptic_check() {
            Ok(v) => {
                if let Some(name) = &v.witness {
                    r.line("elliptic_witness", format!("{name} fixes no point"));
                }
                r.verdict("locally_elliptic", v.elliptic);
            }
            Err(e) => {
                r.line("locally_elliptic", e);
                r.pass = false;
            }
        }
    }
    if want(ActionCheck::Fix) {
        for a in &g.generators {
            let f = fixed_sets(&q, a);
            r.line(
                format!("fixed.{}", a.name),
                format!(
                    "vertices {} edges {} faces [{}] y_nodes {}",
                    f.vertices.len(),
                    f.edges.len(),
                    face_names(&c, &f.faces),
                    f.y_nodes.len()
                ),
            );
        }
        match fix_uniqueness_check(&q, &g) {
            Ok(f) => {
                r.line("fix_checked", f.checked);
                for (name, nodes) in f.violations.iter().take(WITNESS_LINES) {
                    r.line("fix_witness", format!("{name} fixes {} nodes of Y", nodes.len()));
                }
                r.verdict("fix_uniqueness", f.violations.is_empty());
            }
            Err(ActionError::Hypotheses(items)) => r.line("fix_uniqueness", format!("not applicable: {}", items.join("; "))),
            Err(e) => {
                r.line("fix_uniqueness", e);
                r.pass = false;
            }
        }
    }
    if want(ActionCheck::FixedFace) {
        match fixed_face_check(&c, &g) {
            Ok(t) => {
                r.line("global_fixed_faces", face_names(&c, &t.global_fixed_faces));
                r.verdict("fixed_face", t.holds);
            }
            Err(ActionError::Hypotheses(items)) => r.line("fixed_face", format!("not applicable: {}", items.join("; "))),
            Err(e) => {
                r.line("fixed_face", e);
                r.pass = false;
            }
        }
    }
    Ok(r)
}

pub struct GenerateArgs {
    pub family: String,
    pub seed: u64,
    pub rotation: Option<usize>,
}

pub struct Generated {
    pub complex: String,
    pub action: Option<String>,
}

fn family_args(spec: &str) -> Option<(&str, Vec<usize>)> {
    match spec.split_once(':') {
        Some((b, a)) => Some((b, a.split(',').map(|x| x.parse().ok()).collect::<Option<Vec<_>>>()?)),
        None => Some((spec, vec![])),
    }
}

pub fn generate(a: &GenerateArgs) -> Result<Generated> {
    let unknown = || {
        anyhow!(
            "unknown family '{}'; known: {}, strip:M, random-grid-subcomplex:M,N",
            a.family,
            NAMED.join(", ")
        )
    };
    let (base, args) = family_args(&a.family).ok_or_else(unknown)?;
    let small = |v: usize| (1..=64).contains(&v);
    let (c, header) = match (base, args.as_slice()) {
        ("random-grid-subcomplex", &[m, n]) if small(m) && small(n) => {
            (random_grid_subcomplex(m, n, a.seed), format!("# generated: {} seed {}\n", a.family, a.seed))
        }
        ("strip", &[m]) if small(m) => (grid(m, 1), format!("# generated: {}\n", a.family)),
        _ => (named(&a.family).ok_or_else(unknown)?, format!("# generated: {}\n", a.family)),
    };
    let action = match (a.rotation, base, args.as_slice()) {
        (None, ..) => None,
        (Some(k), "ngon", &[n]) => Some(ngon_rotation(n, k % n).to_file_string(&c)),
        (Some(_), ..) => bail!("--rotation applies only to ngon:K"),
    };
    Ok(Generated { complex: header + &c.to_file_string(), action })
}

/// Returns the report and the elapsed time, which stays out of the report so reruns match byte for byte.
pub fn suite(name: &str, seed: u64) -> Result<(Report, std::time::Duration)> {
    let rep = suite::run(name, seed).ok_or_else(|| anyhow!("unknown suite '{name}'; known: {}", suite::SUITES.join(", ")))?;
    let mut r = Report::new("suite", name.as_bytes()).with_seed(seed);
    r.line("suite", name);
    r.line("cases", rep.cases);
    for (k, v) in &rep.stats {
        r.line(k.as_str(), v);
    }
    r.line("failures", rep.failures.len());
    for f in &rep.failures {
        r.line("failure", f);
    }
    r.verdict(name, rep.passed());
    Ok((r, rep.elapsed))
}
