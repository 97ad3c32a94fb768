//! Text and machine formats for polynomials and tensors.
//!
//! Grammar (round-trips exactly with [`fmt::Display`]):
//!
//! ```text
//! poly  := term (('+'|'-') term)*
//! term  := [coeff '*'] word | coeff
//! coeff := integer | 'q' | '(' scalar ')'
//! word  := 'y'<k> ('.' 'y'<k>)* | '1'
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::alphabet::{Letter, Word};
use crate::error::{Error, Result};
use crate::poly::{NCPoly, Tensor};
use crate::scalar::{Scalar, ScalarParser};

fn write_signed_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a Scalar)>,
{
    let mut first = true;
    for (word_text, c) in terms {
        let neg = c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        match (first, neg) {
            (true, true) => f.write_str("-")?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        if word_text == "1" {
            f.write_str(&abs.coefficient_text())?;
        } else if abs.is_one() {
            f.write_str(&word_text)?;
        } else {
            write!(f, "{}*{}", abs.coefficient_text(), word_text)?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(f, self.terms().map(|(w, c)| (w.to_string(), c)))
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Tensors print as `c*u⊗v` terms, legs joined by `⊗`.
impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(
            f,
            self.terms().map(|(k, c)| {
                let legs: Vec<String> = k.iter().map(Word::to_string).collect();
                (legs.join("⊗"), c)
            }),
        )
    }
}

/// Parses a polynomial, resolving letter indices through `resolve`.
pub fn parse_poly_with(text: &str, resolve: &dyn Fn(u32) -> Result<Letter>) -> Result<NCPoly> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = NCPoly::zero();
    for (negative, term) in split_terms(text)? {
        let (c, w) = parse_term(term, resolve)?;
        out.add_term(w, &if negative { -c } else { c });
    }
    Ok(out)
}

impl FromStr for NCPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<NCPoly> {
        parse_poly_with(s, &|k| Ok(Letter::y(k)))
    }
}

fn split_terms(text: &str) -> Result<Vec<(bool, &str)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0usize;
    let mut negative = false;
    let mut prev_significant: Option<u8> = None;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced `)` in `{text}`")));
                }
            }
            b'+' | b'-' if depth == 0 => {
                let binary = !matches!(prev_significant, None | Some(b'*' | b'/' | b'^' | b'+' | b'-'));
                if binary {
                    out.push((negative, text[start..i].trim()));
                    start = i + 1;
                    negative = b == b'-';
                } else if prev_significant.is_none() {
                    start = i + 1;
                    negative ^= b == b'-';
                }
            }
            _ => {}
        }
        if !b.is_ascii_whitespace() {
            prev_significant = Some(b);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced `(` in `{text}`")));
    }
    out.push((negative, text[start..].trim()));
    if out.iter().any(|(_, t)| t.is_empty()) {
        return Err(Error::Parse(format!("empty term in `{text}`")));
    }
    Ok(out)
}

fn looks_like_word(s: &str) -> bool {
    s == "1" || s.starts_with('y')
}

fn parse_term(term: &str, resolve: &dyn Fn(u32) -> Result<Letter>) -> Result<(Scalar, Word)> {
    let bytes = term.as_bytes();
    let mut depth = 0i32;
    let mut last_star = None;
    for (i, &b) in bytes.iter().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b'*' if depth == 0 => last_star = Some(i),
            _ => {}
        }
    }
    if let Some(i) = last_star {
        let rest = term[i + 1..].trim();
        if looks_like_word(rest) {
            let c: Scalar = ScalarParser::new(term[..i].trim()).parse_all()?;
            return Ok((c, Word::parse_with(rest, resolve)?));
        }
    }
    if term.starts_with('y') {
        return Ok((Scalar::one(), Word::parse_with(term, resolve)?));
    }
    Ok((term.parse()?, Word::empty()))
}

/// Machine-readable form of one term.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineTerm {
    pub word: Vec<String>,
    pub num: String,
    pub den: String,
}

/// Machine-readable polynomial document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachinePoly {
    pub terms: Vec<MachineTerm>,
}

impl MachinePoly {
    pub fn from_poly(p: &NCPoly) -> MachinePoly {
        MachinePoly {
            terms: p
                .terms()
                .map(|(w, c)| {
                    let (num, den) = c.display_parts();
                    MachineTerm {
                        word: w.letters().iter().map(Letter::to_string).collect(),
                        num,
                        den,
                    }
                })
                .collect(),
        }
    }

    /// Rebuilds the polynomial with default letter weights.
    pub fn to_poly(&self) -> Result<NCPoly> {
        let mut p = NCPoly::zero();
        for t in &self.terms {
            let text = if t.word.is_empty() { "1".to_string() } else { t.word.join(".") };
            let w: Word = text.parse()?;
            let c: Scalar = format!("({})/({})", t.num, t.den).parse()?;
            p.add_term(w, &c);
        }
        Ok(p)
    }
}
