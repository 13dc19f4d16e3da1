use std::path::Path;

use anyhow::{bail, Context, Result};
use cancellation_lab::complex::build_presentation_complex;
use cancellation_lab::presentation::parse_presentation;
use cancellation_lab::{Presentation, SignedEdge, TwoComplex};

pub struct Loaded {
    pub text: String,
    pub complex: TwoComplex,
    pub presentation: Option<Presentation>,
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

/// Presentation files open with a `gens:` line; everything else is read as a complex.
pub fn looks_like_presentation(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("gens:"))
}

pub fn load(path: &Path) -> Result<Loaded> {
    let text = read(path)?;
    let shown = path.display();
    if looks_like_presentation(&text) {
        let p = parse_presentation(&text).with_context(|| format!("{shown}: parse error"))?;
        let complex = build_presentation_complex(&p);
        return Ok(Loaded { text, complex, presentation: Some(p) });
    }
    let complex = TwoComplex::parse(&text).with_context(|| format!("{shown}: parse error"))?;
    let v = complex.validate();
    if !v.is_valid() {
        let problems: Vec<String> = v.violations.iter().map(ToString::to_string).collect();
        bail!("{shown}: invalid complex: {}", problems.join("; "));
    }
    Ok(Loaded { text, complex, presentation: None })
}

pub fn load_complex(path: &Path) -> Result<(String, TwoComplex)> {
    let l = load(path)?;
    Ok((l.text, l.complex))
}

/// Reads a path word such as `h0_0 +h1_0 -v0_0` against the edge names of `c`.
pub fn parse_word(c: &TwoComplex, text: &str) -> Result<Vec<SignedEdge>> {
    text.split_whitespace()
        .map(|tok| {
            let (forward, name) = match tok.strip_prefix('-') {
                Some(rest) => (false, rest),
                None => (true, tok.strip_prefix('+').unwrap_or(tok)),
            };
            let e = c.edge_by_name(name).with_context(|| format!("unknown edge '{name}'"))?;
            Ok(SignedEdge::new(e, forward))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use cancellation_lab::corpus::grid;

    #[test]
    fn sniffing() {
        assert!(looks_like_presentation("# torus\n\ngens: a b\nrels: abAB\n"));
        assert!(!looks_like_presentation("v a\n"));
        assert!(!looks_like_presentation(""));
    }

    #[test]
    fn words() {
        let c = grid(1, 1);
        let w = parse_word(&c, "h0_0 +v1_0 -h0_1 -v0_0").expect("word");
        assert_eq!(w.len(), 4);
        assert!(!w[2].forward && w[1].forward);
        assert!(parse_word(&c, "nope").is_err());
    }
}
