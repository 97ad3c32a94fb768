//! The φ-shuffle product, its dual coproduct, deconcatenation, and the
//! Friedrichs test for primitive and group-like series.

use std::collections::HashMap;
use std::fmt;

use crate::alphabet::{Letter, Word};
use crate::error::Result;
use crate::law::{PhiLaw, Property};
use crate::poly::{NCPoly, Tensor, TruncSeries};
use crate::scalar::Scalar;

fn prepend_all(l: Letter, p: &NCPoly, into: &mut NCPoly, c: &Scalar) {
    for (w, a) in p.terms() {
        into.add_term(w.prepend(l), &(a * c));
    }
}

/// `u ⧢φ v` for words, by dynamic programming over suffix pairs.
pub fn phi_shuffle_words(law: &PhiLaw, u: &Word, v: &Word) -> Result<NCPoly> {
    let (a, b) = (u.letters(), v.letters());
    let (n, m) = (a.len(), b.len());
    // table[i][j] = a[i..] ⧢φ b[j..]
    let mut table: Vec<Vec<NCPoly>> = vec![vec![NCPoly::zero(); m + 1]; n + 1];
    for i in (0..=n).rev() {
        for j in (0..=m).rev() {
            if i == n {
                table[i][j] = NCPoly::word(Word::new(b[j..].to_vec()));
                continue;
            }
            if j == m {
                table[i][j] = NCPoly::word(Word::new(a[i..].to_vec()));
                continue;
            }
            let mut out = NCPoly::zero();
            let one = Scalar::one();
            prepend_all(a[i], &table[i + 1][j], &mut out, &one);
            prepend_all(b[j], &table[i][j + 1], &mut out, &one);
            for (z, c) in law.phi_apply(a[i], b[j])?.terms() {
                prepend_all(z.letters()[0], &table[i + 1][j + 1], &mut out, c);
            }
            table[i][j] = out;
        }
    }
    Ok(std::mem::take(&mut table[0][0]))
}

/// Bilinear `P ⧢φ Q`.
pub fn phi_shuffle(law: &PhiLaw, p: &NCPoly, q: &NCPoly) -> Result<NCPoly> {
    let mut out = NCPoly::zero();
    for (u, a) in p.terms() {
        for (v, b) in q.terms() {
            out.add_scaled(&phi_shuffle_words(law, u, v)?, &(a * b));
        }
    }
    Ok(out)
}

/// `P ⧢φ Q` keeping only words of weight at most `bound`. For graded laws,
/// pairs whose weights already exceed the bound are skipped.
pub fn phi_shuffle_truncated(law: &PhiLaw, p: &NCPoly, q: &NCPoly, bound: u32) -> Result<NCPoly> {
    let graded = law.properties().graded;
    let mut out = NCPoly::zero();
    for (u, a) in p.terms() {
        for (v, b) in q.terms() {
            if graded && u.weight() + v.weight() > bound {
                continue;
            }
            out.add_scaled(&phi_shuffle_words(law, u, v)?.truncate(bound), &(a * b));
        }
    }
    Ok(out)
}

/// `P^{⧢φ n}`, with `P^{⧢φ 0} = 1`.
pub fn phi_shuffle_power(law: &PhiLaw, p: &NCPoly, n: usize) -> Result<NCPoly> {
    if n >= 3 {
        law.require("phi_shuffle_power", &[Property::Associative])?;
    }
    let mut acc = NCPoly::one();
    for _ in 0..n {
        acc = phi_shuffle(law, &acc, p)?;
    }
    Ok(acc)
}

/// `Δ(y) = y⊗1 + 1⊗y + Σ γ_{a,b}^y a⊗b`.
fn letter_coproduct(law: &PhiLaw, y: Letter) -> Result<Tensor> {
    let e = Word::empty();
    let yw = Word::letter(y);
    let one = Scalar::one();
    let mut t = Tensor::zero(2);
    t.add_term(vec![yw.clone(), e.clone()], &one);
    t.add_term(vec![e, yw], &one);
    for (a, b, c) in law.contractions_onto(y)? {
        t.add_term(vec![Word::letter(a), Word::letter(b)], &c);
    }
    Ok(t)
}

struct Coproduct<'a> {
    law: &'a PhiLaw,
    letters: HashMap<Letter, Tensor>,
    words: HashMap<Word, Tensor>,
}

impl<'a> Coproduct<'a> {
    fn new(law: &'a PhiLaw) -> Self {
        Coproduct {
            law,
            letters: HashMap::new(),
            words: HashMap::new(),
        }
    }

    fn word(&mut self, w: &Word) -> Result<Tensor> {
        if let Some(t) = self.words.get(w) {
            return Ok(t.clone());
        }
        let mut acc = Tensor::one(2);
        for l in w.letters() {
            if !self.letters.contains_key(l) {
                let t = letter_coproduct(self.law, *l)?;
                self.letters.insert(*l, t);
            }
            acc = acc.conc(&self.letters[l]);
        }
        self.words.insert(w.clone(), acc.clone());
        Ok(acc)
    }
}

/// `Δ_{⧢φ}^{(n−1)}(P)` as an order-`n` tensor, iterating on the last leg.
pub fn delta_phi(law: &PhiLaw, p: &NCPoly, n: usize) -> Result<Tensor> {
    assert!(n >= 1, "tensor order must be positive");
    law.require("delta_phi", &[Property::Associative, Property::Dualizable])?;
    let mut cop = Coproduct::new(law);
    let mut t = Tensor::zero(1);
    for (w, c) in p.terms() {
        t.add_term(vec![w.clone()], c);
    }
    for _ in 1..n {
        let mut next = Tensor::zero(t.order() + 1);
        for (key, c) in t.terms() {
            let (last, init) = key.split_last().expect("order >= 1");
            for (pair, d) in cop.word(last)?.terms() {
                let mut k = init.to_vec();
                k.extend(pair.iter().cloned());
                next.add_term(k, &(c * d));
            }
        }
        t = next;
    }
    Ok(t)
}

/// `Δ_{⧢φ}` of a truncated series; every leg is cut at the series bound.
pub fn delta_phi_series(law: &PhiLaw, s: &TruncSeries, n: usize) -> Result<Tensor> {
    Ok(delta_phi(law, s.poly(), n)?.truncate(s.bound()))
}

/// `Δ⁺(P) = Δ(P) − P⊗1 − 1⊗P`.
pub fn reduced_coproduct(law: &PhiLaw, p: &NCPoly) -> Result<Tensor> {
    let mut t = delta_phi(law, p, 2)?;
    let mut q = p.clone();
    q.add_term(Word::empty(), &-p.constant_term());
    let minus = Scalar::from_i64(-1);
    t.add_scaled(&Tensor::product_of(&[q.clone(), NCPoly::one()]), &minus);
    t.add_scaled(&Tensor::product_of(&[NCPoly::one(), q]), &minus);
    Ok(t)
}

/// `Δ_conc^{(n−1)}(P)`: all ordered splittings into `n` possibly empty parts.
pub fn delta_conc(p: &NCPoly, n: usize) -> Tensor {
    assert!(n >= 1, "tensor order must be positive");
    let mut out = Tensor::zero(n);
    for (w, c) in p.terms() {
        for cuts in splittings(w.len(), n) {
            let key = cuts.windows(2).map(|r| w.slice(r[0], r[1])).collect();
            out.add_term(key, c);
        }
    }
    out
}

/// Cut positions `0 = c_0 ≤ c_1 ≤ ⋯ ≤ c_n = len`.
fn splittings(len: usize, parts: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0];
    fn rec(len: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == parts {
            cur.push(len);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        let last = *cur.last().expect("nonempty");
        for c in last..=len {
            cur.push(c);
            rec(len, parts, cur, out);
            cur.pop();
        }
    }
    rec(len, parts, &mut cur, &mut out);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementKind {
    Primitive,
    GroupLike,
    Neither,
}

/// A classification valid for all test pairs of total weight at most `bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub kind: ElementKind,
    pub valid_up_to_weight: u32,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            ElementKind::Primitive => "primitive",
            ElementKind::GroupLike => "grouplike",
            ElementKind::Neither => "neither",
        };
        write!(f, "{k} (weight<={})", self.valid_up_to_weight)
    }
}

/// Friedrichs test: pairs `S` against `u ⧢φ v` for all nonempty `u, v` with
/// `weight(u) + weight(v) ≤ bound`.
pub fn classify_element(law: &PhiLaw, s: &TruncSeries) -> Result<Classification> {
    law.require(
        "classify_element",
        &[Property::Associative, Property::Commutative, Property::Dualizable],
    )?;
    let bound = s.bound();
    let words = law.alphabet_up_to(bound).words_up_to(bound);
    let c0 = s.constant_term();
    let (mut primitive, mut grouplike) = (c0.is_zero(), c0.is_one());
    'outer: for u in words.iter().filter(|w| !w.is_empty()) {
        for v in words.iter().filter(|w| !w.is_empty() && u.weight() + w.weight() <= bound) {
            if !primitive && !grouplike {
                break 'outer;
            }
            let lhs = s.poly().pair(&phi_shuffle_words(law, u, v)?);
            if primitive && !lhs.is_zero() {
                primitive = false;
            }
            if grouplike && lhs != &s.poly().coeff(u) * &s.poly().coeff(v) {
                grouplike = false;
            }
        }
    }
    let kind = match (primitive, grouplike) {
        (true, _) => ElementKind::Primitive,
        (_, true) => ElementKind::GroupLike,
        _ => ElementKind::Neither,
    };
    Ok(Classification {
        kind,
        valid_up_to_weight: bound,
    })
}
