//! Named and seeded complexes and diagrams used by tests, benchmarks and the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::Automorphism;
use crate::diagram::DiscDiagram;
use crate::complex::{build_cayley_complex, build_presentation_complex, PermRealization, SignedEdge, TwoComplex};
use crate::presentation::parse_presentation;
use crate::quadric::{canonical_square, SquareComplex, YDiagram};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m × n` squares. Vertex `x_y`; edges `hx_y` = (x,y)→(x+1,y) and `vx_y` = (x,y)→(x,y+1);
/// face `sx_y` has lower-left corner (x,y). Faces are numbered row by row.
pub fn grid(m: usize, n: usize) -> TwoComplex {
    subdivided_grid(m, n, 1)
}

/// Like [`grid`] but every edge is subdivided into `s` edges, so faces are `4s`-gons
/// and every piece has length `s`. Subdivision vertices are `hx_y.k`, edges `hx_y.k`.
pub fn subdivided_grid(m: usize, n: usize, s: usize) -> TwoComplex {
    assert!(s >= 1);
    let mut c = TwoComplex::new();
    let mut vid = vec![vec![0; n + 1]; m + 1];
    for y in 0..=n {
        for x in 0..=m {
            vid[x][y] = c.add_vertex(format!("{x}_{y}"));
        }
    }
    let side = |c: &mut TwoComplex, name: String, a: usize, b: usize| -> Vec<usize> {
        if s == 1 {
            return vec![c.add_edge(name, a, b)];
        }
        let mut prev = a;
        let mut out = Vec::with_capacity(s);
        for k in 0..s {
            let next = if k + 1 == s { b } else { c.add_vertex(format!("{name}.{}", k + 1)) };
            out.push(c.add_edge(format!("{name}.{k}"), prev, next));
            prev = next;
        }
        out
    };
    let mut h = vec![vec![Vec::new(); n + 1]; m];
    let mut v = vec![vec![Vec::new(); n]; m + 1];
    for y in 0..=n {
        for x in 0..m {
            h[x][y] = side(&mut c, format!("h{x}_{y}"), vid[x][y], vid[x + 1][y]);
        }
    }
    for x in 0..=m {
        for y in 0..n {
            v[x][y] = side(&mut c, format!("v{x}_{y}"), vid[x][y], vid[x][y + 1]);
        }
    }
    for y in 0..n {
        for x in 0..m {
            let fwd = |es: &Vec<usize>| es.iter().map(|&e| SignedEdge::new(e, true)).collect::<Vec<_>>();
            let bwd = |es: &Vec<usize>| es.iter().rev().map(|&e| SignedEdge::new(e, false)).collect::<Vec<_>>();
            let mut b = fwd(&h[x][y]);
            b.extend(fwd(&v[x + 1][y]));
            b.extend(bwd(&h[x][y + 1]));
            b.extend(bwd(&v[x][y]));
            c.add_face(format!("s{x}_{y}"), b);
        }
    }
    c
}

/// A single `n`-gon: vertices `p0..`, edges `e0..` with `ei` = `pi → p(i+1)`.
pub fn ngon(n: usize) -> TwoComplex {
    let mut c = TwoComplex::new();
    let v: Vec<usize> = (0..n).map(|i| c.add_vertex(format!("p{i}"))).collect();
    let e: Vec<usize> = (0..n).map(|i| c.add_edge(format!("e{i}"), v[i], v[(i + 1) % n])).collect();
    c.add_face("f", e.iter().map(|&e| SignedEdge::new(e, true)).collect());
    c
}

pub fn torus() -> TwoComplex {
    build_presentation_complex(&parse_presentation("gens: a b\nrels: abAB").expect("torus"))
}

/// Presentation complex of the closed orientable surface of genus `g` (1 ≤ g ≤ 13).
pub fn surface(g: usize) -> TwoComplex {
    assert!((1..=13).contains(&g));
    let gens: Vec<char> = (0..2 * g).map(|i| (b'a' + i as u8) as char).collect();
    let rel: String = gens
        .chunks(2)
        .flat_map(|p| [p[0], p[1], p[0].to_ascii_uppercase(), p[1].to_ascii_uppercase()])
        .collect();
    let text = format!("gens: {}\nrels: {rel}", gens.iter().map(char::to_string).collect::<Vec<_>>().join(" "));
    build_presentation_complex(&parse_presentation(&text).expect("surface relator"))
}

/// Three squares around a corner of a cube: centre `o`, faces `xy`, `yz`, `zx`.
pub fn cube_corner() -> TwoComplex {
    let mut c = TwoComplex::new();
    let o = c.add_vertex("o");
    let x = c.add_vertex("x");
    let y = c.add_vertex("y");
    let z = c.add_vertex("z");
    let xy = c.add_vertex("xy");
    let yz = c.add_vertex("yz");
    let zx = c.add_vertex("zx");
    let ox = c.add_edge("ox", o, x);
    let oy = c.add_edge("oy", o, y);
    let oz = c.add_edge("oz", o, z);
    let x_xy = c.add_edge("x_xy", x, xy);
    let y_xy = c.add_edge("y_xy", y, xy);
    let y_yz = c.add_edge("y_yz", y, yz);
    let z_yz = c.add_edge("z_yz", z, yz);
    let z_zx = c.add_edge("z_zx", z, zx);
    let x_zx = c.add_edge("x_zx", x, zx);
    let s = SignedEdge::new;
    c.add_face("xy", vec![s(ox, true), s(x_xy, true), s(y_xy, false), s(oy, false)]);
    c.add_face("yz", vec![s(oy, true), s(y_yz, true), s(z_yz, false), s(oz, false)]);
    c.add_face("zx", vec![s(oz, true), s(z_zx, true), s(x_zx, false), s(ox, false)]);
    c
}

/// The surface of a cube: 8 vertices, 12 edges, 6 squares.
pub fn cube_surface() -> TwoComplex {
    let mut c = TwoComplex::new();
    let v: Vec<usize> = (0..8).map(|i| c.add_vertex(format!("c{i:03b}"))).collect();
    let mut edge = std::collections::BTreeMap::new();
    for a in 0..8usize {
        for bit in [1, 2, 4] {
            if a & bit == 0 {
                let e = c.add_edge(format!("c{a:03b}_{:03b}", a | bit), v[a], v[a | bit]);
                edge.insert((a, a | bit), e);
            }
        }
    }
    let step = |a: usize, b: usize| match edge.get(&(a, b)) {
        Some(&e) => SignedEdge::new(e, true),
        None => SignedEdge::new(edge[&(b, a)], false),
    };
    for (axis, name) in [(1usize, "x"), (2, "y"), (4, "z")] {
        let others: Vec<usize> = [1, 2, 4].into_iter().filter(|&b| b != axis).collect();
        for side in [0, axis] {
            let cyc = [side, side | others[0], side | others[0] | others[1], side | others[1]];
            let b = (0..4).map(|i| step(cyc[i], cyc[(i + 1) % 4])).collect();
            c.add_face(format!("{name}{}", usize::from(side != 0)), b);
        }
    }
    c
}

/// A random set of faces of the `m × n` grid with the cells they touch.
/// Keeps each face with probability 1/2 and at least one face.
pub fn random_grid_subcomplex(m: usize, n: usize, seed: u64) -> TwoComplex {
    let mut r = rng(seed);
    let g = grid(m, n);
    let mut keep: Vec<bool> = (0..g.face_count()).map(|_| r.gen_bool(0.5)).collect();
    if !keep.contains(&true) {
        let i = r.gen_range(0..keep.len());
        keep[i] = true;
    }
    subcomplex(&g, &keep)
}

/// Closed cells of the kept faces.
pub fn subcomplex(c: &TwoComplex, keep: &[bool]) -> TwoComplex {
    let mut out = TwoComplex::new();
    let mut vmap = vec![usize::MAX; c.vertex_count()];
    let mut emap = vec![usize::MAX; c.edge_count()];
    for f in (0..c.face_count()).filter(|&f| keep[f]) {
        let mut b = Vec::new();
        for &s in c.boundary(f) {
            if emap[s.edge] == usize::MAX {
                let e = c.edge(s.edge);
                for v in [e.tail, e.head] {
                    if vmap[v] == usize::MAX {
                        vmap[v] = out.add_vertex(c.vertex_name(v));
                    }
                }
                emap[s.edge] = out.add_edge(e.name.clone(), vmap[e.tail], vmap[e.head]);
            }
            b.push(SignedEdge::new(emap[s.edge], s.forward));
        }
        out.add_face(c.face(f).name.clone(), b);
    }
    out
}

/// `pages` faces sharing a spine path of `spine` edges. Each page closes up through
/// its own path so its boundary has `page_len` edges.
pub fn book(pages: usize, spine: usize, page_len: usize) -> TwoComplex {
    assert!(spine >= 1 && page_len >= spine + 2);
    let mut c = TwoComplex::new();
    let s: Vec<usize> = (0..=spine).map(|i| c.add_vertex(format!("s{i}"))).collect();
    let se: Vec<usize> = (0..spine).map(|i| c.add_edge(format!("s{i}"), s[i], s[i + 1])).collect();
    for k in 0..pages {
        let mut prev = s[spine];
        let mut b: Vec<SignedEdge> = se.iter().map(|&e| SignedEdge::new(e, true)).collect();
        let own = page_len - spine;
        for j in 0..own {
            let next = if j + 1 == own { s[0] } else { c.add_vertex(format!("p{k}_{j}")) };
            b.push(SignedEdge::new(c.add_edge(format!("p{k}_{j}"), prev, next), true));
            prev = next;
        }
        c.add_face(format!("page{k}"), b);
    }
    c
}

/// A square disc diagram over `y` that is not minimal in general: a strip grown
/// from one square by gluing squares along boundary edges, then `splits` random
/// inverse applications of the replacement rules. Moves that would fold the
/// labeling are skipped. `None` if `y` has no squares.
pub fn random_y_diagram(y: &SquareComplex, grow: usize, splits: usize, seed: u64) -> Option<YDiagram> {
    let mut r = rng(seed);
    let squares: Vec<[usize; 4]> = y.squares().copied().collect();
    if squares.is_empty() {
        return None;
    }
    let q = squares[r.gen_range(0..squares.len())];
    let mut d = YDiagram { labels: q.to_vec(), faces: vec![[0, 1, 2, 3]] };
    for _ in 0..grow {
        if let Some(next) = glue_square(&d, y, &mut r).filter(YDiagram::is_locally_injective) {
            d = next;
        }
    }
    for _ in 0..splits {
        let next = if r.gen_bool(0.5) { split_square(&d, y, &mut r) } else { expand_diagonal(&d, y, &mut r) };
        if let Some(next) = next.filter(YDiagram::is_locally_injective) {
            d = next;
        }
    }
    Some(d)
}

fn glue_square(d: &YDiagram, y: &SquareComplex, r: &mut ChaCha8Rng) -> Option<YDiagram> {
    let walk = d.to_disc().ok()?.boundary_positions();
    let k = r.gen_range(0..walk.len());
    let (p, q) = (walk[k], walk[(k + 1) % walk.len()]);
    let (lp, lq) = (d.labels[p], d.labels[q]);
    let inside = d.faces.iter().find(|f| (0..4).any(|i| f[i] == q && f[(i + 1) % 4] == p))?;
    let inside = canonical_square(inside.map(|v| d.labels[v]));
    let mut options = Vec::new();
    for &lr in y.neighbors(lq) {
        for &ls in y.neighbors(lp) {
            let sq = [lp, lq, lr, ls];
            if lr != lp && ls != lq && lr != ls && y.has_square(sq) && canonical_square(sq) != inside {
                options.push((lr, ls));
            }
        }
    }
    if options.is_empty() {
        return None;
    }
    let (lr, ls) = options[r.gen_range(0..options.len())];
    let mut out = d.clone();
    let n = out.labels.len();
    out.labels.extend([lr, ls]);
    out.faces.push([p, q, n, n + 1]);
    Some(out)
}

fn split_square(d: &YDiagram, y: &SquareComplex, r: &mut ChaCha8Rng) -> Option<YDiagram> {
    let f = r.gen_range(0..d.faces.len());
    let k = r.gen_range(0..2);
    let q = d.faces[f];
    let [a, b, c, e] = [q[k], q[k + 1], q[(k + 2) % 4], q[(k + 3) % 4]];
    let l = |v: usize| d.labels[v];
    let options: Vec<usize> = y
        .neighbors(l(a))
        .iter()
        .copied()
        .filter(|&x| ![l(b), l(e), l(c)].contains(&x) && y.has_square([x, l(a), l(b), l(c)]) && y.has_square([x, l(c), l(e), l(a)]))
        .collect();
    if options.is_empty() {
        return None;
    }
    let mut out = d.clone();
    let v = out.labels.len();
    out.labels.push(options[r.gen_range(0..options.len())]);
    out.faces[f] = [v, a, b, c];
    out.faces.push([v, c, e, a]);
    Some(out)
}

fn expand_diagonal(d: &YDiagram, y: &SquareComplex, r: &mut ChaCha8Rng) -> Option<YDiagram> {
    let f1 = r.gen_range(0..d.faces.len());
    let p = d.faces[f1];
    let k = r.gen_range(0..4);
    // P = c0 c1 c2 c3 ends with the dart c3 → c0; Q starts with c0 → c3
    let c: [usize; 4] = [p[(k + 1) % 4], p[(k + 2) % 4], p[(k + 3) % 4], p[k]];
    let f2 = (0..d.faces.len()).find(|&g| g != f1 && (0..4).any(|i| d.faces[g][i] == c[0] && d.faces[g][(i + 1) % 4] == c[3]))?;
    let q = d.faces[f2];
    let i = (0..4).find(|&i| q[i] == c[3])?;
    let cycle = [c[0], c[1], c[2], c[3], q[(i + 1) % 4], q[(i + 2) % 4]];
    let labels: Vec<usize> = cycle.iter().map(|&v| d.labels[v]).collect();
    if labels.iter().collect::<std::collections::BTreeSet<_>>().len() != 6 {
        return None;
    }
    let options: Vec<usize> = y
        .neighbors(labels[0])
        .iter()
        .copied()
        .filter(|x| !labels.contains(x))
        .filter(|&x| (0..3).all(|j| y.has_square([x, labels[2 * j], labels[2 * j + 1], labels[(2 * j + 2) % 6]])))
        .collect();
    if options.is_empty() {
        return None;
    }
    let mut out = d.clone();
    let v = out.labels.len();
    out.labels.push(options[r.gen_range(0..options.len())]);
    out.faces[f1] = [v, cycle[0], cycle[1], cycle[2]];
    out.faces[f2] = [v, cycle[2], cycle[3], cycle[4]];
    out.faces.push([v, cycle[4], cycle[5], cycle[0]]);
    Some(out)
}

/// A square disc diagram under construction: faces are cyclic `(edge, forward)` lists.
#[derive(Clone, Debug, Default)]
struct Sketch {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    faces: Vec<Vec<(usize, bool)>>,
}

impl Sketch {
    fn vertex(&mut self) -> usize {
        self.vertices += 1;
        self.vertices - 1
    }

    fn edge(&mut self, a: usize, b: usize) -> (usize, bool) {
        self.edges.push((a, b));
        (self.edges.len() - 1, true)
    }

    /// A square on `a`, then three new vertices.
    fn pendant_square(&mut self, a: usize) -> [usize; 4] {
        let (b, c, d) = (self.vertex(), self.vertex(), self.vertex());
        let face = vec![self.edge(a, b), self.edge(b, c), self.edge(c, d), self.edge(d, a)];
        self.faces.push(face);
        [a, b, c, d]
    }

    fn build(&self) -> DiscDiagram {
        DiscDiagram::from_faces(self.vertices, &self.edges, &self.faces).expect("sketch is a disc")
    }

    /// Boundary walk as `(edge, forward, origin)`.
    fn walk(&self) -> Vec<(usize, bool, usize)> {
        if self.edges.is_empty() {
            return vec![];
        }
        let d = self.build();
        d.boundary_cycle().iter().map(|&x| (x / 2, x % 2 == 0, d.origin(x))).collect()
    }
}

/// A random square disc diagram with at most `max_area` faces, possibly with spurs,
/// cut vertices and interior vertices of any valence. Built from one vertex by
/// adding spurs and pendant squares and gluing squares along one, two or three
/// consecutive boundary edges.
pub fn random_square_diagram(max_area: usize, seed: u64) -> DiscDiagram {
    let mut r = rng(seed);
    let target = r.gen_range(0..=max_area);
    let mut s = Sketch { vertices: 1, ..Sketch::default() };
    let spurs = r.gen_range(0..3);
    let mut spurs_left = spurs;
    let mut steps = 0;
    while s.faces.len() < target || spurs_left > 0 {
        steps += 1;
        if steps > 20 * (target + spurs + 1) {
            break;
        }
        let walk = s.walk();
        let op = r.gen_range(0..10);
        if walk.is_empty() || op == 0 {
            let at = if walk.is_empty() { 0 } else { walk[r.gen_range(0..walk.len())].2 };
            if spurs_left > 0 && r.gen_bool(0.5) {
                let w = s.vertex();
                s.edge(at, w);
                spurs_left -= 1;
            } else if s.faces.len() < target {
                s.pendant_square(at);
            }
            continue;
        }
        if s.faces.len() >= target {
            let at = walk[r.gen_range(0..walk.len())].2;
            let w = s.vertex();
            s.edge(at, w);
            spurs_left -= 1;
            continue;
        }
        let n = walk.len();
        let k = r.gen_range(0..n);
        let along = match op {
            1..=4 => 1,
            5..=7 => 2,
            _ => 3,
        };
        let run: Vec<(usize, bool, usize)> = (0..along).map(|i| walk[(k + i) % n]).collect();
        let first = run[0].2;
        let last = walk[(k + along) % n].2;
        let mut ends: Vec<usize> = run.iter().map(|x| x.2).collect();
        ends.push(last);
        if along > n || ends.iter().collect::<std::collections::BTreeSet<_>>().len() != ends.len() {
            continue;
        }
        let mut face: Vec<(usize, bool)> = run.iter().map(|&(e, f, _)| (e, f)).collect();
        match along {
            1 => {
                let (c, d) = (s.vertex(), s.vertex());
                face.extend([s.edge(last, c), s.edge(c, d), s.edge(d, first)]);
            }
            2 => {
                let d = s.vertex();
                face.extend([s.edge(last, d), s.edge(d, first)]);
            }
            _ => face.push(s.edge(last, first)),
        }
        s.faces.push(face);
    }
    s.build()
}

/// Two squares sharing two adjacent edges around an interior vertex of valence 2.
/// Returns the two boundary corners of valence 2, whose curvature is `π/2`.
fn bead(s: &mut Sketch, at: Option<usize>) -> (usize, usize) {
    let b = at.unwrap_or_else(|| s.vertex());
    let (c, a, x, b2) = (s.vertex(), s.vertex(), s.vertex(), s.vertex());
    let ca = s.edge(c, a);
    let ab = s.edge(a, b);
    let bx = s.edge(b, x);
    let xc = s.edge(x, c);
    let xb2 = s.edge(x, b2);
    let b2a = s.edge(b2, a);
    s.faces.push(vec![ca, ab, bx, xc]);
    s.faces.push(vec![(xc.0, false), xb2, b2a, (ca.0, false)]);
    (b, b2)
}

/// A chain of components joined at singular vertices: beads at both ends and
/// `middle` beads or squares in between, each joined to the next through a corner
/// of positive curvature. Every boundary stretch between singular vertices has at
/// most one vertex of curvature `π/2`.
pub fn sng_chain(middle: usize, seed: u64) -> DiscDiagram {
    let mut r = rng(seed);
    let mut s = Sketch::default();
    let (_, mut joint) = bead(&mut s, None);
    for _ in 0..middle {
        joint = if r.gen_bool(0.5) {
            bead(&mut s, Some(joint)).1
        } else {
            s.pendant_square(joint)[2]
        };
    }
    bead(&mut s, Some(joint));
    s.build()
}

/// Rotation of [`ngon`]`(n)` by `k` steps.
pub fn ngon_rotation(n: usize, k: usize) -> Automorphism {
    Automorphism {
        name: format!("rot{k}"),
        vertices: (0..n).map(|i| (i + k) % n).collect(),
        edges: (0..n).map(|i| SignedEdge::new((i + k) % n, true)).collect(),
        faces: vec![0],
    }
}

/// Cayley complex of `⟨a | aⁿ⟩` over the cyclic group of order `n`: an `n`-cycle
/// with one face.
pub fn cyclic_cayley(n: usize) -> TwoComplex {
    let p = parse_presentation(&format!("gens: a\nrels: {}", "a".repeat(n))).expect("cyclic relator");
    build_cayley_complex(&p, &PermRealization::cyclic(n)).expect("aⁿ holds in ℤ/n")
}

/// Left translation by `a` on [`cyclic_cayley`]`(n)`.
pub fn cyclic_translation(n: usize) -> Automorphism {
    Automorphism {
        name: "a".into(),
        vertices: (0..n).map(|i| (i + 1) % n).collect(),
        edges: (0..n).map(|i| SignedEdge::new((i + 1) % n, true)).collect(),
        faces: vec![0],
    }
}

/// Mirror of [`grid`]`(m, n)` in the vertical line `x = m/2`.
pub fn grid_mirror(c: &TwoComplex, m: usize, n: usize) -> Automorphism {
    let v = |x: usize, y: usize| c.vertex_by_name(&format!("{x}_{y}")).expect("grid vertex");
    let e = |s: String| c.edge_by_name(&s).expect("grid edge");
    let mut a = Automorphism::identity(c);
    a.name = "mirror".into();
    for y in 0..=n {
        for x in 0..=m {
            a.vertices[v(x, y)] = v(m - x, y);
        }
        for x in 0..m {
            a.edges[e(format!("h{x}_{y}"))] = SignedEdge::new(e(format!("h{}_{y}", m - 1 - x)), false);
        }
    }
    for y in 0..n {
        for x in 0..=m {
            a.edges[e(format!("v{x}_{y}"))] = SignedEdge::new(e(format!("v{}_{y}", m - x)), true);
        }
        for x in 0..m {
            a.faces[y * m + x] = y * m + (m - 1 - x);
        }
    }
    a
}

/// Complexes the suites sweep: fixed families plus `random` grid subcomplexes.
pub fn complex_corpus(seed: u64, random: usize) -> Vec<(String, TwoComplex)> {
    let mut out: Vec<(String, TwoComplex)> = Vec::new();
    for (m, n) in [(1, 1), (2, 1), (2, 2), (3, 3), (4, 2)] {
        out.push((format!("grid:{m},{n}"), grid(m, n)));
    }
    for (m, n, k) in [(2, 2, 2), (3, 1, 3), (2, 1, 4)] {
        out.push((format!("subdivided-grid:{m},{n},{k}"), subdivided_grid(m, n, k)));
    }
    for k in 3..=8 {
        out.push((format!("ngon:{k}"), ngon(k)));
    }
    out.push(("torus".into(), torus()));
    for g in 2..=3 {
        out.push((format!("surface:{g}"), surface(g)));
    }
    out.push(("cube-corner".into(), cube_corner()));
    out.push(("cube".into(), cube_surface()));
    for (p, l, n) in [(3, 3, 7), (4, 2, 6), (5, 4, 8)] {
        out.push((format!("book:{p},{l},{n}"), book(p, l, n)));
    }
    for n in [3, 5] {
        out.push((format!("cyclic-cayley:{n}"), cyclic_cayley(n)));
    }
    let mut r = rng(seed);
    for _ in 0..random {
        let s: u64 = r.gen();
        out.push((format!("random-grid-subcomplex:4,4,{s}"), random_grid_subcomplex(4, 4, s)));
    }
    out
}

/// Complexes with generators of a finite group acting on them.
pub fn action_corpus() -> Vec<(String, TwoComplex, Vec<Automorphism>)> {
    let mut out = Vec::new();
    for n in 2..=9 {
        out.push((format!("ngon:{n}"), ngon(n), vec![ngon_rotation(n, 1)]));
    }
    out.push(("ngon:6 by 2".into(), ngon(6), vec![ngon_rotation(6, 2)]));
    out.push(("ngon:12 by 3, 4".into(), ngon(12), vec![ngon_rotation(12, 3), ngon_rotation(12, 4)]));
    for n in [2, 3, 5, 7] {
        out.push((format!("cyclic-cayley:{n}"), cyclic_cayley(n), vec![cyclic_translation(n)]));
    }
    out.push(("grid:3,3 trivial".into(), grid(3, 3), vec![]));
    out.push(("book:3,3,7 trivial".into(), book(3, 3, 7), vec![]));
    let g = grid(2, 1);
    let m = grid_mirror(&g, 2, 1);
    out.push(("grid:2,1 mirror".into(), g, vec![m]));
    let g = grid(3, 2);
    let m = grid_mirror(&g, 3, 2);
    out.push(("grid:3,2 mirror".into(), g, vec![m]));
    out
}

/// Named complexes accepted by `generate` on the command line.
pub fn named(name: &str) -> Option<TwoComplex> {
    let (base, args) = match name.split_once(':') {
        Some((b, a)) => (b, a.split(',').map(|x| x.parse::<usize>().ok()).collect::<Option<Vec<_>>>()?),
        None => (name, vec![]),
    };
    let small = |v: usize| (1..=64).contains(&v);
    Some(match (base, args.as_slice()) {
        ("grid", &[m, n]) if small(m) && small(n) => grid(m, n),
        ("subdivided-grid", &[m, n, s]) if small(m) && small(n) && small(s) => subdivided_grid(m, n, s),
        ("ngon", &[k]) if small(k) => ngon(k),
        ("torus", &[]) => torus(),
        ("surface", &[g]) if (1..=13).contains(&g) => surface(g),
        ("cube-corner", &[]) => cube_corner(),
        ("cube", &[]) => cube_surface(),
        ("cyclic-cayley", &[n]) if small(n) => cyclic_cayley(n),
        ("book", &[p, l, n]) if small(p) && small(l) && n >= l + 2 && small(n) => book(p, l, n),
        _ => return None,
    })
}

pub const NAMED: &[&str] = &[
    "grid:M,N",
    "subdivided-grid:M,N,S",
    "ngon:K",
    "torus",
    "surface:G",
    "cube-corner",
    "cube",
    "book:PAGES,SPINE,LEN",
    "cyclic-cayley:N",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::strong_helly_check;

    #[test]
    fn shapes() {
        let g = grid(3, 2);
        assert_eq!((g.vertex_count(), g.edge_count(), g.face_count()), (12, 17, 6));
        assert!(g.validate().is_valid());
        let s = subdivided_grid(2, 1, 3);
        assert_eq!(s.boundary(0).len(), 12);
        assert!(s.validate().is_valid());
        assert!(cube_corner().validate().is_valid());
        let cube = cube_surface();
        assert_eq!((cube.vertex_count(), cube.edge_count(), cube.face_count()), (8, 12, 6));
        assert!(cube.validate().is_valid());
        assert!(surface(2).validate().is_valid());
        assert!(ngon(5).validate().is_valid());
        assert!(named("grid:2,3").is_some());
        assert!(named("grid:2").is_none());
        assert!(named("nope").is_none());
    }

    #[test]
    fn subcomplexes_are_valid_and_reproducible() {
        for seed in 0..20 {
            let a = random_grid_subcomplex(4, 3, seed);
            assert!(a.validate().is_valid());
            assert_eq!(a, random_grid_subcomplex(4, 3, seed));
            assert!(strong_helly_check(&a).violations.is_empty());
        }
    }

    #[test]
    fn random_diagrams_are_valid() {
        let mut areas = std::collections::BTreeSet::new();
        let mut singular = 0;
        for seed in 0..300 {
            let d = random_square_diagram(12, seed);
            assert!(d.validate().is_valid(), "seed {seed}");
            assert!(d.is_square());
            assert!(d.gauss_bonnet_audit().pass, "seed {seed}");
            areas.insert(d.area());
            singular += usize::from(!d.cut_and_singular_vertices().1.is_empty());
        }
        assert!(areas.contains(&0) && areas.contains(&12));
        assert!(singular > 30);
    }

    #[test]
    fn chains_satisfy_the_sng_hypothesis() {
        for middle in 0..8 {
            let d = sng_chain(middle, middle as u64);
            assert!(d.validate().is_valid());
            let r = d.sng_check();
            assert!(r.hypothesis_holds, "middle {middle}");
            assert!(r.boundary_total.0 <= 0);
        }
    }
}
