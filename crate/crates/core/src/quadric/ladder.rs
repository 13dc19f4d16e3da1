//! Double ladders with cap and the shortcuts they force.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use super::SquareComplex;

/// `{u₁..uₙ | v₁..vₙ | w₁..wₙ | c}`. Index `i` of each row holds position `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleLadderWithCap {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub w: Vec<usize>,
    pub c: usize,
}

impl DoubleLadderWithCap {
    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn nodes(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.u.iter().chain(&self.v).chain(&self.w).copied().collect();
        out.push(self.c);
        out
    }

    /// Squares as 4-cycles: ladder squares `uᵢ uᵢ₊₁ vᵢ₊₁ vᵢ`, `vᵢ vᵢ₊₁ wᵢ₊₁ wᵢ`, then the cap.
    pub fn squares(&self) -> Vec<[usize; 4]> {
        let n = self.len();
        let mut out = Vec::with_capacity(2 * n + 1);
        for i in 0..n.saturating_sub(1) {
            out.push([self.u[i], self.u[i + 1], self.v[i + 1], self.v[i]]);
            out.push([self.v[i], self.v[i + 1], self.w[i + 1], self.w[i]]);
        }
        if n > 0 {
            out.push([self.c, self.u[n - 1], self.v[n - 1], self.w[n - 1]]);
        }
        out
    }

    /// Checks that the rows have equal length, the nodes are distinct and every
    /// square is present in `y`.
    pub fn check_in(&self, y: &SquareComplex) -> Result<(), String> {
        let n = self.len();
        if n == 0 || self.u.len() != n || self.w.len() != n {
            return Err("rows must be nonempty and of equal length".into());
        }
        let nodes = self.nodes();
        if nodes.iter().any(|&x| x >= y.node_count()) {
            return Err("node out of range".into());
        }
        if nodes.iter().collect::<BTreeSet<_>>().len() != nodes.len() {
            return Err("nodes are not distinct".into());
        }
        match self.squares().into_iter().find(|&q| !y.has_square(q)) {
            Some(q) => Err(format!("missing square {q:?}")),
            None => Ok(()),
        }
    }
}

/// A square complex that is just a double ladder with cap of length `n`, with no
/// other edges, so none of the shortcut edges exists.
pub fn bare_dlwc(n: usize) -> (SquareComplex, DoubleLadderWithCap) {
    let mut y = SquareComplex::new();
    let mut row = |p: &str| (1..=n).map(|i| y.add_node(format!("{p}{i}"))).collect::<Vec<_>>();
    let (u, v, w) = (row("u"), row("v"), row("w"));
    let c = y.add_node("c");
    let l = DoubleLadderWithCap { u, v, w, c };
    for q in l.squares() {
        y.add_square(q);
    }
    (y, l)
}

/// Every double ladder with cap of length `2..=max_len` in `y`, up to `limit` of them.
/// Each is grown backwards from a labeled cap square.
pub fn find_dlwc(y: &SquareComplex, max_len: usize, limit: usize) -> Vec<DoubleLadderWithCap> {
    let mut out = Vec::new();
    if max_len < 2 {
        return out;
    }
    for q in y.squares() {
        for k in 0..4 {
            for rev in [false, true] {
                let at = |i: usize| if rev { q[(k + 4 - i) % 4] } else { q[(k + i) % 4] };
                let (c, un, vn, wn) = (at(0), at(1), at(2), at(3));
                let mut rows = vec![(un, vn, wn)];
                grow(y, c, &mut rows, max_len, limit, &mut out);
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

fn grow(
    y: &SquareComplex,
    c: usize,
    rows: &mut Vec<(usize, usize, usize)>,
    max_len: usize,
    limit: usize,
    out: &mut Vec<DoubleLadderWithCap>,
) {
    if out.len() >= limit {
        return;
    }
    if rows.len() >= 2 {
        let ordered: Vec<_> = rows.iter().rev().copied().collect();
        out.push(DoubleLadderWithCap {
            u: ordered.iter().map(|r| r.0).collect(),
            v: ordered.iter().map(|r| r.1).collect(),
            w: ordered.iter().map(|r| r.2).collect(),
            c,
        });
    }
    if rows.len() == max_len {
        return;
    }
    let used: BTreeSet<usize> = rows.iter().flat_map(|r| [r.0, r.1, r.2]).chain([c]).collect();
    let (u, v, w) = *rows.last().expect("rows start nonempty");
    for &v2 in y.neighbors(v) {
        if used.contains(&v2) {
            continue;
        }
        for &u2 in y.neighbors(u) {
            if used.contains(&u2) || u2 == v2 || !y.has_square([u2, u, v, v2]) {
                continue;
            }
            for &w2 in y.neighbors(w) {
                if used.contains(&w2) || w2 == v2 || w2 == u2 || !y.has_square([v2, v, w, w2]) {
                    continue;
                }
                rows.push((u2, v2, w2));
                grow(y, c, rows, max_len, limit, out);
                rows.pop();
                if out.len() >= limit {
                    return;
                }
            }
        }
    }
}

/// Which of the five shortcut edges a double ladder with cap has. Indices are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DlwcCase {
    /// `(c, vₙ₋₁)`
    CapToV { edge: (usize, usize) },
    /// `(uᵢ, vᵢ₋₂)`
    UToV { i: usize, edge: (usize, usize) },
    /// `(wᵢ, vᵢ₋₂)`
    WToV { i: usize, edge: (usize, usize) },
    /// `(u₂, w₁)`
    U2W1 { edge: (usize, usize) },
    /// `(u₁, w₂)`
    U1W2 { edge: (usize, usize) },
    Violation,
}

impl DlwcCase {
    pub fn number(&self) -> Option<u8> {
        match self {
            DlwcCase::CapToV { .. } => Some(1),
            DlwcCase::UToV { .. } => Some(2),
            DlwcCase::WToV { .. } => Some(3),
            DlwcCase::U2W1 { .. } => Some(4),
            DlwcCase::U1W2 { .. } => Some(5),
            DlwcCase::Violation => None,
        }
    }
}

/// Looks for the shortcut edges in order and reports the first one present.
pub fn dlwc_resolve(y: &SquareComplex, l: &DoubleLadderWithCap) -> DlwcCase {
    let n = l.len();
    if n < 2 {
        return DlwcCase::Violation;
    }
    let (u, v, w) = (|i: usize| l.u[i - 1], |i: usize| l.v[i - 1], |i: usize| l.w[i - 1]);
    if y.has_edge(l.c, v(n - 1)) {
        return DlwcCase::CapToV { edge: (l.c, v(n - 1)) };
    }
    for i in 3..=n {
        if y.has_edge(u(i), v(i - 2)) {
            return DlwcCase::UToV { i, edge: (u(i), v(i - 2)) };
        }
    }
    for i in 3..=n {
        if y.has_edge(w(i), v(i - 2)) {
            return DlwcCase::WToV { i, edge: (w(i), v(i - 2)) };
        }
    }
    if y.has_edge(u(2), w(1)) {
        return DlwcCase::U2W1 { edge: (u(2), w(1)) };
    }
    if y.has_edge(u(1), w(2)) {
        return DlwcCase::U1W2 { edge: (u(1), w(2)) };
    }
    DlwcCase::Violation
}

/// A ladder `{uₙ..u₁, x, v₁..vₙ₊₁ | ūₙ..ū₁, x̄, v̄₁..v̄ₙ₊₁}` in `Y` together with a
/// node permutation `h`. `u[0] = v[0] = x` and `ubar[0] = vbar[0] = x̄`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LaddyConfig {
    pub u: Vec<usize>,
    pub v: Vec<usize>,
    pub ubar: Vec<usize>,
    pub vbar: Vec<usize>,
    pub h: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum LaddyCase {
    /// Squares `[v̄ₛ, vₛ₋₂, vₛ₋₁, vₛ]` and `[v̄ₛ, vₛ₋₂, v̄ₛ₋₂, v̄ₛ₋₁]`.
    Shortcut { s: usize, r1: [usize; 4], r2: [usize; 4], present: bool },
    /// The edge `(ūₛ, uₛ₋₂)`, read off by translating back along `h`.
    Translated { s: usize, edge: (usize, usize), present: bool },
    /// A square `P` containing `x̄, x, hx̄` with `P ∩ hP ⊋ {x}`.
    Common { p: [usize; 4], is_square: bool, meets_image: bool },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaddyError {
    #[error("hypothesis fails: {0}")]
    Hypothesis(String),
    #[error("the double ladder with cap has no shortcut edge")]
    Unresolved,
}

impl LaddyConfig {
    pub fn n(&self) -> usize {
        self.u.len().saturating_sub(1)
    }

    /// The double ladder with cap `{hx̄, hū₁..hūₙ | x, v₁..vₙ | x̄, v̄₁..v̄ₙ | v̄ₙ₊₁}`.
    pub fn dlwc(&self) -> DoubleLadderWithCap {
        let n = self.n();
        DoubleLadderWithCap {
            u: self.ubar[..=n].iter().map(|&a| self.h[a]).collect(),
            v: self.v[..=n].to_vec(),
            w: self.vbar[..=n].to_vec(),
            c: self.vbar[n + 1],
        }
    }

    fn check(&self, y: &SquareComplex) -> Result<(), LaddyError> {
        let bad = |m: &str| Err(LaddyError::Hypothesis(m.to_string()));
        let n = self.n();
        if n < 1 || self.v.len() != n + 2 || self.ubar.len() != n + 1 || self.vbar.len() != n + 2 {
            return bad("row lengths");
        }
        if self.u[0] != self.v[0] || self.ubar[0] != self.vbar[0] {
            return bad("x and x̄ must start both rows");
        }
        let mut seen = vec![false; self.h.len()];
        if self.h.len() != y.node_count() || self.h.iter().any(|&a| a >= seen.len() || std::mem::replace(&mut seen[a], true)) {
            return bad("h is not a permutation of the nodes");
        }
        if (0..=n).any(|i| self.h[self.u[i]] != self.v[i]) {
            return bad("h uᵢ ≠ vᵢ");
        }
        if (0..=n).any(|i| self.h[self.ubar[i]] == self.vbar[i]) {
            return bad("h ūᵢ = v̄ᵢ");
        }
        let rail = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().rev().chain(&b[1..]).copied().collect() };
        let (r1, r2) = (rail(&self.u, &self.v), rail(&self.ubar, &self.vbar));
        let ladder = r1.windows(2).all(|p| y.has_edge(p[0], p[1]))
            && r2.windows(2).all(|p| y.has_edge(p[0], p[1]))
            && r1.iter().zip(&r2).all(|(&a, &b)| y.has_edge(a, b));
        if !ladder {
            return bad("not a ladder");
        }
        self.dlwc().check_in(y).map_err(LaddyError::Hypothesis)
    }
}

/// Checks the hypotheses, resolves the associated double ladder with cap and
/// translates the shortcut into one of the three conclusions.
pub fn laddy_resolve(y: &SquareComplex, cfg: &LaddyConfig) -> Result<(LaddyCase, DlwcCase), LaddyError> {
    cfg.check(y)?;
    let n = cfg.n();
    let case = dlwc_resolve(y, &cfg.dlwc());
    let (v, vb, h) = (&cfg.v, &cfg.vbar, &cfg.h);
    let shortcut = |s: usize| {
        let r1 = [vb[s], v[s - 2], v[s - 1], v[s]];
        let r2 = [vb[s], v[s - 2], vb[s - 2], vb[s - 1]];
        LaddyCase::Shortcut { s, r1, r2, present: y.has_square(r1) && y.has_square(r2) }
    };
    let (x, xb) = (cfg.u[0], cfg.ubar[0]);
    let common = |p: [usize; 4]| {
        let image: BTreeSet<usize> = p.iter().map(|&a| h[a]).collect();
        let meet = p.iter().filter(|a| image.contains(a)).count();
        LaddyCase::Common { p, is_square: y.has_square(p), meets_image: meet > 1 && image.contains(&x) }
    };
    let out = match case {
        DlwcCase::CapToV { .. } => shortcut(n + 1),
        DlwcCase::UToV { i, .. } => {
            let s = i - 1;
            let edge = (cfg.ubar[s], cfg.u[s - 2]);
            LaddyCase::Translated { s, edge, present: y.has_edge(edge.0, edge.1) }
        }
        DlwcCase::WToV { i, .. } => shortcut(i - 1),
        DlwcCase::U2W1 { .. } => common([xb, x, h[xb], h[cfg.ubar[1]]]),
        DlwcCase::U1W2 { .. } => common([xb, x, h[xb], vb[1]]),
        DlwcCase::Violation => return Err(LaddyError::Unresolved),
    };
    Ok((out, case))
}
