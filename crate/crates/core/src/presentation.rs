//! Group presentations over single-letter generators.
//!
//! Lowercase letters are generators, uppercase letters their inverses. Relators
//! are stored as [`CyclicWord`]s and must arrive freely and cyclically reduced;
//! the parser refuses anything else instead of normalizing it.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Maximum number of generators a presentation may declare.
pub const MAX_GENERATORS: usize = 26;

/// A signed generator: `gen` indexes into `a..=z`, `inverse` flips the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter {
    pub gen: u8,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: u8, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter::new(c as u8 - b'a', false))
        } else if c.is_ascii_uppercase() {
            Some(Letter::new(c as u8 - b'A', true))
        } else {
            None
        }
    }

    pub fn to_char(self) -> char {
        if self.inverse {
            (b'A' + self.gen) as char
        } else {
            (b'a' + self.gen) as char
        }
    }

    pub fn inv(self) -> Self {
        Letter::new(self.gen, !self.inverse)
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A word in the free group. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Parses letters only; anything else yields `None`.
    pub fn parse(s: &str) -> Option<Self> {
        s.chars().map(Letter::from_char).collect::<Option<Vec<_>>>().map(Word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn rotated(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn pow(&self, q: usize) -> Word {
        Word(self.0.iter().copied().cycle().take(self.0.len() * q).collect())
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].cancels(w[1]))
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && match (self.0.first(), self.0.last()) {
                (Some(f), Some(l)) if self.0.len() > 1 => !f.cancels(*l),
                _ => true,
            }
    }

    /// Smallest rotation `p > 0` with `rotated(p) == self`; `len` for primitive words.
    pub fn rotation_period(&self) -> usize {
        let n = self.0.len();
        (1..=n)
            .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| self.0[i] == self.0[(i + p) % n]))
            .unwrap_or(0)
    }

    /// Lexicographically least rotation.
    pub fn min_rotation(&self) -> Word {
        (0..self.0.len().max(1))
            .map(|k| self.rotated(k))
            .min()
            .unwrap_or_default()
    }

    pub fn generators(&self) -> impl Iterator<Item = u8> + '_ {
        self.0.iter().map(|l| l.gen)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.to_char())?;
        }
        Ok(())
    }
}

/// Stack-based free reduction.
pub fn free_reduce(w: &Word) -> Word {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if out.last().is_some_and(|&p| p.cancels(l)) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    Word(out)
}

/// Free reduction followed by stripping cancelling letters across the ends.
pub fn cyclic_reduce(w: &Word) -> Word {
    let mut v = free_reduce(w).0;
    let mut start = 0;
    while v.len() - start >= 2 && v[start].cancels(v[v.len() - 1]) {
        start += 1;
        v.pop();
    }
    Word(v[start..].to_vec())
}

/// A freely and cyclically reduced word read up to rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicWord {
    representative: Word,
    period: usize,
}

impl CyclicWord {
    /// Returns `None` when the word is empty or not cyclically reduced.
    pub fn new(w: Word) -> Option<Self> {
        if w.is_empty() || !w.is_cyclically_reduced() {
            return None;
        }
        let period = w.rotation_period();
        Some(CyclicWord {
            representative: w,
            period,
        })
    }

    pub fn word(&self) -> &Word {
        &self.representative
    }

    pub fn len(&self) -> usize {
        self.representative.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representative.is_empty()
    }

    pub fn period(&self) -> usize {
        self.period
    }

    /// Letter at cyclic position `i`.
    pub fn at(&self, i: usize) -> Letter {
        self.representative.0[i % self.len()]
    }

    /// Canonical key identifying the word up to rotation and inversion.
    pub fn class_key(&self) -> Word {
        let a = self.representative.min_rotation();
        let b = self.representative.inverse().min_rotation();
        a.min(b)
    }

    pub fn same_class(&self, other: &CyclicWord) -> bool {
        self.class_key() == other.class_key()
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.representative.fmt(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    generators: Vec<char>,
    relators: Vec<CyclicWord>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown generator '{symbol}' in relator")]
    UnknownGenerator {
        line: usize,
        column: usize,
        symbol: char,
    },
    #[error("line {line}, column {column}: relator {word} is not freely reduced")]
    NotFreelyReduced {
        line: usize,
        column: usize,
        word: String,
    },
    #[error("line {line}, column {column}: relator {word} is not cyclically reduced")]
    NotCyclicallyReduced {
        line: usize,
        column: usize,
        word: String,
    },
    #[error("line {line}, column {column}: relator {word} duplicates an earlier relator up to rotation and inversion")]
    DuplicateRelator {
        line: usize,
        column: usize,
        word: String,
    },
    #[error("too many generators: {0} (at most {MAX_GENERATORS})")]
    TooManyGenerators(usize),
}

impl Presentation {
    /// Builds a presentation from already-checked parts. Validation mirrors the parser.
    pub fn new(generators: Vec<char>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut text = String::from("gens:");
        for g in &generators {
            text.push(' ');
            text.push(*g);
        }
        text.push_str("\nrels:");
        for r in &relators {
            text.push(' ');
            text.push_str(&r.to_string());
        }
        parse_presentation(&text)
    }

    pub fn generators(&self) -> &[char] {
        &self.generators
    }

    pub fn relators(&self) -> &[CyclicWord] {
        &self.relators
    }

    pub fn generator_index(&self, gen: u8) -> Option<usize> {
        self.generators.iter().position(|&c| c as u8 - b'a' == gen)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens:")?;
        for g in &self.generators {
            write!(f, " {g}")?;
        }
        write!(f, "\nrels:")?;
        for r in &self.relators {
            write!(f, " {r}")?;
        }
        writeln!(f)
    }
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// Splits on whitespace and keeps 1-based column offsets.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

/// Parses the `gens:` / `rels:` presentation file format.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let content: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let syntax = |line, column, message: &str| PresentationError::Syntax {
        line,
        column,
        message: message.to_string(),
    };
    let Some(&(gline, gtext)) = content.first() else {
        return Err(syntax(1, 1, "expected `gens:` line"));
    };
    let gtoks = tokens(gtext);
    if gtoks.first().map(|t| t.1) != Some("gens:") {
        return Err(syntax(gline, gtoks.first().map_or(1, |t| t.0), "expected `gens:`"));
    }
    let mut generators = Vec::new();
    for &(col, tok) in &gtoks[1..] {
        let mut cs = tok.chars();
        let c = cs.next().unwrap();
        if cs.next().is_some() || !c.is_ascii_lowercase() {
            return Err(syntax(gline, col, "generator must be a single lowercase letter"));
        }
        if generators.contains(&c) {
            return Err(syntax(gline, col, "duplicate generator"));
        }
        generators.push(c);
    }
    if generators.len() > MAX_GENERATORS {
        return Err(PresentationError::TooManyGenerators(generators.len()));
    }

    let mut relators: Vec<CyclicWord> = Vec::new();
    match content.get(1) {
        None => {}
        Some(&(rline, rtext)) => {
            let rtoks = tokens(rtext);
            if rtoks.first().map(|t| t.1) != Some("rels:") {
                return Err(syntax(rline, rtoks.first().map_or(1, |t| t.0), "expected `rels:`"));
            }
            for &(col, tok) in &rtoks[1..] {
                let mut letters = Vec::new();
                for (off, c) in tok.chars().enumerate() {
                    let Some(l) = Letter::from_char(c) else {
                        return Err(syntax(rline, col + off, "relator letters must be ASCII letters"));
                    };
                    if !generators.contains(&((b'a' + l.gen) as char)) {
                        return Err(PresentationError::UnknownGenerator {
                            line: rline,
                            column: col + off,
                            symbol: c,
                        });
                    }
                    letters.push(l);
                }
                let w = Word(letters);
                if !w.is_freely_reduced() {
                    return Err(PresentationError::NotFreelyReduced {
                        line: rline,
                        column: col,
                        word: tok.to_string(),
                    });
                }
                let Some(cw) = CyclicWord::new(w) else {
                    return Err(PresentationError::NotCyclicallyReduced {
                        line: rline,
                        column: col,
                        word: tok.to_string(),
                    });
                };
                if relators.iter().any(|r| r.same_class(&cw)) {
                    return Err(PresentationError::DuplicateRelator {
                        line: rline,
                        column: col,
                        word: tok.to_string(),
                    });
                }
                relators.push(cw);
            }
        }
    }
    if let Some(&(line, extra)) = content.get(2) {
        return Err(syntax(line, tokens(extra)[0].0, "unexpected content after `rels:` line"));
    }
    Ok(Presentation {
        generators,
        relators,
    })
}

/// A relator written as `root^exponent` with a primitive root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootDecomposition {
    pub root: CyclicWord,
    pub exponent: usize,
}

pub fn primitive_root(r: &CyclicWord) -> RootDecomposition {
    let p = r.period();
    let root = Word(r.word().0[..p].to_vec());
    RootDecomposition {
        root: CyclicWord::new(root).expect("prefix of a cyclically reduced periodic word is cyclically reduced"),
        exponent: r.len() / p,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionEntry {
    pub relator_index: usize,
    pub root: CyclicWord,
    pub exponent: usize,
    pub candidate_orders: BTreeSet<usize>,
}

/// One entry per proper-power relator. Elements of finite order `s > 1` in an
/// aspherical presentation are conjugate to `root^(q/s)` for some entry with `s | q`.
/// The catalog is a property of this presentation, not of the abstract group.
pub fn torsion_catalog(p: &Presentation) -> Vec<TorsionEntry> {
    p.relators()
        .iter()
        .enumerate()
        .filter_map(|(i, r)| {
            let d = primitive_root(r);
            (d.exponent > 1).then(|| TorsionEntry {
                relator_index: i,
                candidate_orders: (2..=d.exponent).filter(|s| d.exponent.is_multiple_of(*s)).collect(),
                root: d.root,
                exponent: d.exponent,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Occurrence {
    pub relator: usize,
    pub offset: usize,
    /// `+1` reads the relator forwards from `offset`; `-1` reads inverted letters backwards.
    pub orientation: i8,
}

/// Every place `w` can be read along a relator cycle, forwards or backwards.
pub fn cyclic_occurrences(w: &Word, p: &Presentation) -> Vec<Occurrence> {
    let mut out = Vec::new();
    if w.is_empty() {
        return out;
    }
    for (ri, r) in p.relators().iter().enumerate() {
        let n = r.len();
        for offset in 0..n {
            let fwd = w
                .letters()
                .iter()
                .enumerate()
                .all(|(j, &l)| r.at(offset + j) == l);
            if fwd {
                out.push(Occurrence {
                    relator: ri,
                    offset,
                    orientation: 1,
                });
            }
            let bwd = w
                .letters()
                .iter()
                .enumerate()
                .all(|(j, &l)| r.at(offset + n * w.len() - j) == l.inv());
            if bwd {
                out.push(Occurrence {
                    relator: ri,
                    offset,
                    orientation: -1,
                });
            }
        }
    }
    out
}
