//! Sparse noncommutative polynomials, weight-truncated series and tensors.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::alphabet::Word;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Finite linear combination of words. Zero coefficients are never stored;
/// iteration follows the canonical word order (weight, length, lex).
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> NCPoly {
        NCPoly::default()
    }

    /// The unit `1 = 1_{Y*}`.
    pub fn one() -> NCPoly {
        NCPoly::word(Word::empty())
    }

    pub fn word(w: Word) -> NCPoly {
        NCPoly::monomial(w, Scalar::one())
    }

    pub fn monomial(w: Word, c: Scalar) -> NCPoly {
        let mut p = NCPoly::zero();
        p.add_term(w, &c);
        p
    }

    pub fn constant(c: Scalar) -> NCPoly {
        NCPoly::monomial(Word::empty(), c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(terms: I) -> NCPoly {
        let mut p = NCPoly::zero();
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    /// `self += c·p`
    pub fn add_scaled(&mut self, p: &NCPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &p.terms {
            self.add_term(w.clone(), &(v * c));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    /// Number of nonzero terms; see `is_zero` for emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Word::empty())
    }

    /// The part without constant term.
    pub fn proper_part(&self) -> NCPoly {
        let mut p = self.clone();
        p.terms.remove(&Word::empty());
        p
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero();
        }
        NCPoly {
            terms: self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect(),
        }
    }

    pub fn max_weight(&self) -> Option<u32> {
        self.terms.keys().map(Word::weight).max()
    }

    pub fn min_len(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).min()
    }

    pub fn max_len(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// True when every word has weight `n`.
    pub fn is_homogeneous(&self, n: u32) -> bool {
        self.terms.keys().all(|w| w.weight() == n)
    }

    /// Keeps the words of weight at most `bound`.
    pub fn truncate(&self, bound: u32) -> NCPoly {
        NCPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.weight() <= bound)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Concatenation product, bilinear.
    pub fn conc(&self, other: &NCPoly) -> NCPoly {
        self.conc_truncated(other, None)
    }

    pub(crate) fn conc_truncated(&self, other: &NCPoly, bound: Option<u32>) -> NCPoly {
        let mut out = NCPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if bound.is_some_and(|n| u.weight() + v.weight() > n) {
                    continue;
                }
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }

    /// `n`-th concatenation power; `P^0 = 1`.
    pub fn conc_pow(&self, n: usize) -> NCPoly {
        let mut acc = NCPoly::one();
        for _ in 0..n {
            acc = acc.conc(self);
        }
        acc
    }

    /// Lie bracket `[A, B] = AB − BA`.
    pub fn bracket(&self, other: &NCPoly) -> NCPoly {
        &self.conc(other) - &other.conc(self)
    }

    /// Duality pairing `⟨P, Q⟩ = Σ_w P(w)·Q(w)`.
    pub fn pair(&self, other: &NCPoly) -> Scalar {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Scalar::zero();
        for (w, c) in &small.terms {
            if let Some(d) = large.terms.get(w) {
                acc += &(c * d);
            }
        }
        acc
    }

    /// Applies `f` to every scalar; used to specialize `q` for display.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    /// Linear extension of a map on words.
    pub fn map_linear(&self, mut f: impl FnMut(&Word) -> Result<NCPoly>) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in &self.terms {
            out.add_scaled(&f(w)?, c);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<'a> Sub<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_i64(-1));
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&Scalar::from_i64(-1))
    }
}

impl<'a> Mul<&'a NCPoly> for &'a NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.conc(rhs)
    }
}

impl From<Word> for NCPoly {
    fn from(w: Word) -> NCPoly {
        NCPoly::word(w)
    }
}

/// A series known exactly on all words of weight at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    poly: NCPoly,
    bound: u32,
}

impl TruncSeries {
    pub fn new(poly: NCPoly, bound: u32) -> TruncSeries {
        TruncSeries {
            poly: poly.truncate(bound),
            bound,
        }
    }

    pub fn one(bound: u32) -> TruncSeries {
        TruncSeries::new(NCPoly::one(), bound)
    }

    pub fn poly(&self) -> &NCPoly {
        &self.poly
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn constant_term(&self) -> Scalar {
        self.poly.constant_term()
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        TruncSeries::new(&self.poly + &other.poly, self.bound.min(other.bound))
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        TruncSeries::new(&self.poly - &other.poly, self.bound.min(other.bound))
    }

    pub fn scale(&self, c: &Scalar) -> TruncSeries {
        TruncSeries {
            poly: self.poly.scale(c),
            bound: self.bound,
        }
    }

    /// Truncated concatenation product.
    pub fn conc(&self, other: &TruncSeries) -> TruncSeries {
        let bound = self.bound.min(other.bound);
        TruncSeries {
            poly: self.poly.conc_truncated(&other.poly, Some(bound)),
            bound,
        }
    }

    pub fn pair(&self, p: &NCPoly) -> Scalar {
        self.poly.pair(p)
    }

    /// Pairing of two truncated series, summed over the common known range.
    pub fn pair_series(&self, other: &TruncSeries) -> Scalar {
        let bound = self.bound.min(other.bound);
        self.poly.truncate(bound).pair(&other.poly.truncate(bound))
    }

    /// `log(1 + h) = Σ_{n≥1} (−1)^{n−1} hⁿ / n`, requiring constant term 1.
    pub fn log(&self) -> Result<TruncSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTerm("log", 1));
        }
        let h = TruncSeries::new(self.poly.proper_part(), self.bound);
        let mut out = TruncSeries::new(NCPoly::zero(), self.bound);
        let mut power = h.clone();
        let mut n = 1i64;
        while !power.poly.is_zero() {
            let c = Scalar::from_ratio(if n % 2 == 1 { 1 } else { -1 }, n);
            out = out.add(&power.scale(&c));
            power = power.conc(&h);
            n += 1;
        }
        Ok(out)
    }

    /// `exp(h) = Σ_{n≥0} hⁿ / n!`, requiring constant term 0.
    pub fn exp(&self) -> Result<TruncSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm("exp", 0));
        }
        let mut out = TruncSeries::one(self.bound);
        let mut term = TruncSeries::one(self.bound);
        let mut n = 1i64;
        loop {
            term = term.conc(self).scale(&Scalar::from_ratio(1, n));
            if term.poly.is_zero() {
                return Ok(out);
            }
            out = out.add(&term);
            n += 1;
        }
    }
}

/// Element of the `order`-fold tensor power, as a finite map from tuples of
/// words to scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor {
    order: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

/// Two-legged tensors (double series truncated to polynomials).
pub type TensorPoly = Tensor;

impl Tensor {
    pub fn zero(order: usize) -> Tensor {
        Tensor {
            order,
            terms: BTreeMap::new(),
        }
    }

    /// `1 ⊗ ⋯ ⊗ 1`
    pub fn one(order: usize) -> Tensor {
        let mut t = Tensor::zero(order);
        t.add_term(vec![Word::empty(); order], &Scalar::one());
        t
    }

    /// `P_1 ⊗ ⋯ ⊗ P_n`
    pub fn product_of(legs: &[NCPoly]) -> Tensor {
        let mut t = Tensor::one(0);
        for leg in legs {
            let mut next = Tensor::zero(t.order + 1);
            for (key, a) in &t.terms {
                for (w, b) in leg.terms() {
                    let mut k = key.clone();
                    k.push(w.clone());
                    next.add_term(k, &(a * b));
                }
            }
            t = next;
        }
        t
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn add_term(&mut self, key: Vec<Word>, c: &Scalar) {
        assert_eq!(key.len(), self.order, "tensor leg count");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        assert_eq!(self.order, other.order, "tensor order mismatch");
        for (k, v) in &other.terms {
            self.add_term(k.clone(), &(v * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        let mut out = Tensor::zero(self.order);
        out.add_scaled(self, c);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    /// Number of nonzero terms; see `is_zero` for emptiness.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[Word]) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    /// Legwise concatenation product.
    pub fn conc(&self, other: &Tensor) -> Tensor {
        self.conc_truncated(other, None)
    }

    pub(crate) fn conc_truncated(&self, other: &Tensor, bound: Option<u32>) -> Tensor {
        assert_eq!(self.order, other.order, "tensor order mismatch");
        let mut out = Tensor::zero(self.order);
        for (ka, a) in &self.terms {
            'pairs: for (kb, b) in &other.terms {
                let mut key = Vec::with_capacity(self.order);
                for (u, v) in ka.iter().zip(kb) {
                    if bound.is_some_and(|n| u.weight() + v.weight() > n) {
                        continue 'pairs;
                    }
                    key.push(u.concat(v));
                }
                out.add_term(key, &(a * b));
            }
        }
        out
    }

    /// Keeps terms whose every leg has weight at most `bound`.
    pub fn truncate(&self, bound: u32) -> Tensor {
        let mut out = Tensor::zero(self.order);
        for (k, v) in &self.terms {
            if k.iter().all(|w| w.weight() <= bound) {
                out.add_term(k.clone(), v);
            }
        }
        out
    }

    /// Keeps terms whose total weight is at most `bound`.
    pub fn truncate_total(&self, bound: u32) -> Tensor {
        let mut out = Tensor::zero(self.order);
        for (k, v) in &self.terms {
            if k.iter().map(Word::weight).sum::<u32>() <= bound {
                out.add_term(k.clone(), v);
            }
        }
        out
    }

    /// `⟨P_1 ⊗ ⋯ ⊗ P_n, T⟩`
    pub fn pair(&self, legs: &[NCPoly]) -> Scalar {
        assert_eq!(legs.len(), self.order, "tensor order mismatch");
        let mut acc = Scalar::zero();
        for (k, v) in &self.terms {
            let mut c = v.clone();
            for (w, p) in k.iter().zip(legs) {
                c = &c * &p.coeff(w);
                if c.is_zero() {
                    break;
                }
            }
            acc += &c;
        }
        acc
    }

    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Tensor {
        let mut out = Tensor::zero(self.order);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), &f(v));
        }
        out
    }
}

impl<'a> Add<&'a Tensor> for &'a Tensor {
    type Output = Tensor;
    fn add(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<'a> Sub<&'a Tensor> for &'a Tensor {
    type Output = Tensor;
    fn sub(self, rhs: &Tensor) -> Tensor {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_i64(-1));
        out
    }
}
