//! Series-of-products operators `Φ(S)`, the Eulerian projectors `π₁`, `πₙ`
//! and their adjoints, the antipode, and the Hausdorff series.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::alphabet::Word;
use crate::error::Result;
use crate::law::{PhiLaw, Property};
use crate::poly::{NCPoly, Tensor};
use crate::products::{phi_shuffle, phi_shuffle_truncated};
use crate::scalar::Scalar;

/// Coefficients `a_k` (`k ≥ 1`) of a series `a₁X + a₂X² + ⋯`.
#[derive(Clone)]
pub struct CoeffSeq(Arc<dyn Fn(usize) -> Scalar + Send + Sync>);

impl fmt::Debug for CoeffSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shown: Vec<String> = (1..=4).map(|k| self.coeff(k).to_string()).collect();
        write!(f, "CoeffSeq[{}, ...]", shown.join(", "))
    }
}

impl CoeffSeq {
    pub fn new(f: impl Fn(usize) -> Scalar + Send + Sync + 'static) -> CoeffSeq {
        CoeffSeq(Arc::new(f))
    }

    pub fn coeff(&self, k: usize) -> Scalar {
        if k == 0 {
            Scalar::zero()
        } else {
            (self.0)(k)
        }
    }

    /// `X`
    pub fn identity() -> CoeffSeq {
        CoeffSeq::new(|k| if k == 1 { Scalar::one() } else { Scalar::zero() })
    }

    /// `log(1 + X)`
    pub fn log1p() -> CoeffSeq {
        CoeffSeq::new(|k| {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            Scalar::from_ratio(sign, k as i64)
        })
    }

    /// `−X/(1 + X)`, i.e. `a_k = (−1)^k`.
    pub fn alternating() -> CoeffSeq {
        CoeffSeq::new(|k| Scalar::from_i64(if k % 2 == 0 { 1 } else { -1 }))
    }
}

/// Which member of an adjoint pair to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `π₁`, `πₙ`
    Standard,
    /// `π̌₁`, `π̌ₙ`
    Adjoint,
}

/// `Φ(S)[w] = Σ_k a_k Σ_{u₁⋯u_k = w} u₁ ⧢φ ⋯ ⧢φ u_k` on one nonempty word.
fn phi_of_series_word(law: &PhiLaw, coeffs: &CoeffSeq, w: &Word) -> Result<NCPoly> {
    let n = w.len();
    // prev[i] = Σ over splittings of w[..i] into k nonempty factors
    let mut prev: Vec<NCPoly> = (0..=n).map(|i| NCPoly::word(w.slice(0, i))).collect();
    prev[0] = NCPoly::zero();
    let mut out = prev[n].scale(&coeffs.coeff(1));
    for k in 2..=n {
        let mut cur = vec![NCPoly::zero(); n + 1];
        for (i, slot) in cur.iter_mut().enumerate().skip(k) {
            for (j, pj) in prev.iter().enumerate().take(i).skip(k - 1) {
                if pj.is_zero() {
                    continue;
                }
                let tail = NCPoly::word(w.slice(j, i));
                slot.add_scaled(&phi_shuffle(law, pj, &tail)?, &Scalar::one());
            }
        }
        let a = coeffs.coeff(k);
        if !a.is_zero() {
            out.add_scaled(&cur[n], &a);
        }
        prev = cur;
    }
    Ok(out)
}

/// `Φ(S)` extended linearly, with `Φ(S)[1] = 0`.
pub fn phi_of_series(law: &PhiLaw, coeffs: &CoeffSeq, p: &NCPoly) -> Result<NCPoly> {
    law.require("phi_of_series", &[Property::Associative])?;
    p.map_linear(|w| {
        if w.is_empty() {
            Ok(NCPoly::zero())
        } else {
            phi_of_series_word(law, coeffs, w)
        }
    })
}

/// The antipode of `(⧢φ, Δ_conc)`: `a(1) = 1`, `a(w) = Φ(−X/(1+X))[w]`.
pub fn antipode(law: &PhiLaw, p: &NCPoly) -> Result<NCPoly> {
    law.require("antipode", &[Property::Associative])?;
    let coeffs = CoeffSeq::alternating();
    p.map_linear(|w| {
        if w.is_empty() {
            Ok(NCPoly::one())
        } else {
            phi_of_series_word(law, &coeffs, w)
        }
    })
}

/// Sequences of `n` nonempty words over `words_by_weight` with total weight `total`.
fn word_tuples(words_by_weight: &[Vec<Word>], total: u32, n: usize) -> Vec<Vec<Word>> {
    if n == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 1..=total {
        let rest = word_tuples(words_by_weight, total - first, n - 1);
        if rest.is_empty() {
            continue;
        }
        for w in &words_by_weight[first as usize] {
            for r in &rest {
                let mut t = Vec::with_capacity(n);
                t.push(w.clone());
                t.extend(r.iter().cloned());
                out.push(t);
            }
        }
    }
    out
}

/// Memoizing evaluator for `π̌₁`, `π₁`, `πₙ`, `π̌ₙ` under one law.
///
/// Standard-side values for graded laws are computed a whole weight
/// component at a time by transposing `π̌₁`.
pub struct Eulerian {
    law: PhiLaw,
    check: HashMap<Word, NCPoly>,
    standard: HashMap<Word, NCPoly>,
    /// `(weight, n) ↦ [(π̌₁(u₁)⧢φ⋯⧢φπ̌₁(uₙ), π₁(u₁)⋯π₁(uₙ))]`
    products: HashMap<(u32, usize), Vec<(NCPoly, NCPoly)>>,
}

impl Eulerian {
    pub fn new(law: &PhiLaw) -> Eulerian {
        Eulerian {
            law: law.clone(),
            check: HashMap::new(),
            standard: HashMap::new(),
            products: HashMap::new(),
        }
    }

    pub fn law(&self) -> &PhiLaw {
        &self.law
    }

    /// `π̌₁(w)`
    pub fn check_pi1(&mut self, w: &Word) -> Result<NCPoly> {
        self.law.require("pi1", &[Property::Associative])?;
        if let Some(p) = self.check.get(w) {
            return Ok(p.clone());
        }
        let p = if w.is_empty() {
            NCPoly::zero()
        } else {
            phi_of_series_word(&self.law, &CoeffSeq::log1p(), w)?
        };
        self.check.insert(w.clone(), p.clone());
        Ok(p)
    }

    /// `π₁(w)`
    pub fn pi1(&mut self, w: &Word) -> Result<NCPoly> {
        self.law.require(
            "pi1",
            &[Property::Moderate, Property::Dualizable, Property::Associative],
        )?;
        if let Some(p) = self.standard.get(w) {
            return Ok(p.clone());
        }
        if w.is_empty() {
            return Ok(NCPoly::zero());
        }
        if self.law.properties().graded {
            self.fill_component(w.weight())?;
            return Ok(self.standard.get(w).cloned().unwrap_or_default());
        }
        let k = self.law.properties().nilpotency_index.unwrap_or(1).max(1);
        let alphabet = self.law.alphabet_up_to(u32::MAX);
        let mut out = NCPoly::zero();
        let mut layer = vec![Word::empty()];
        for len in 1..=w.len() * k {
            layer = layer
                .iter()
                .flat_map(|v| alphabet.letters().iter().map(move |l| v.concat(&Word::letter(*l))))
                .collect();
            if len < w.len() {
                continue;
            }
            for v in &layer {
                let c = self.check_pi1(v)?.coeff(w);
                out.add_term(v.clone(), &c);
            }
        }
        self.standard.insert(w.clone(), out.clone());
        Ok(out)
    }

    fn fill_component(&mut self, weight: u32) -> Result<()> {
        let words = self.law.alphabet_up_to(weight).words_of_weight(weight);
        let mut acc: HashMap<Word, NCPoly> = words.iter().map(|w| (w.clone(), NCPoly::zero())).collect();
        for v in &words {
            for (x, c) in self.check_pi1(v)?.terms() {
                if let Some(slot) = acc.get_mut(x) {
                    slot.add_term(v.clone(), c);
                }
            }
        }
        self.standard.extend(acc);
        Ok(())
    }

    fn products(&mut self, weight: u32, n: usize) -> Result<&[(NCPoly, NCPoly)]> {
        if !self.products.contains_key(&(weight, n)) {
            let alphabet = self.law.alphabet_up_to(weight);
            let by_weight: Vec<Vec<Word>> = (0..=weight).map(|m| alphabet.words_of_weight(m)).collect();
            let mut list = Vec::new();
            let law = self.law.clone();
            for tuple in word_tuples(&by_weight, weight, n) {
                let mut shuffled = NCPoly::one();
                let mut concatenated = NCPoly::one();
                for u in &tuple {
                    shuffled = phi_shuffle(&law, &shuffled, &self.check_pi1(u)?)?;
                    concatenated = concatenated.conc(&self.pi1(u)?);
                }
                if !shuffled.is_zero() && !concatenated.is_zero() {
                    list.push((shuffled, concatenated));
                }
            }
            self.products.insert((weight, n), list);
        }
        Ok(&self.products[&(weight, n)])
    }

    fn require_full(&self, operation: &'static str) -> Result<()> {
        self.law.require(
            operation,
            &[
                Property::Moderate,
                Property::Dualizable,
                Property::Associative,
                Property::Commutative,
                Property::Graded,
            ],
        )
    }

    /// `πₙ(w) = (1/n!) Σ ⟨w, π̌₁(u₁)⧢φ⋯⧢φπ̌₁(uₙ)⟩ π₁(u₁)⋯π₁(uₙ)`; `π₀` keeps the constant term.
    pub fn pi_n(&mut self, w: &Word, n: usize) -> Result<NCPoly> {
        self.require_full("pin")?;
        if n == 0 || w.is_empty() {
            let keep = n == 0 && w.is_empty();
            return Ok(if keep { NCPoly::one() } else { NCPoly::zero() });
        }
        let norm = factorial(n).recip()?;
        let mut out = NCPoly::zero();
        for (shuffled, concatenated) in self.products(w.weight(), n)? {
            let c = shuffled.coeff(w);
            if !c.is_zero() {
                out.add_scaled(concatenated, &(&c * &norm));
            }
        }
        Ok(out)
    }

    /// `π̌ₙ(w) = (1/n!) Σ ⟨w, π₁(u₁)⋯π₁(uₙ)⟩ π̌₁(u₁)⧢φ⋯⧢φπ̌₁(uₙ)`.
    pub fn check_pi_n(&mut self, w: &Word, n: usize) -> Result<NCPoly> {
        self.require_full("pin")?;
        if n == 0 || w.is_empty() {
            let keep = n == 0 && w.is_empty();
            return Ok(if keep { NCPoly::one() } else { NCPoly::zero() });
        }
        let norm = factorial(n).recip()?;
        let mut out = NCPoly::zero();
        for (shuffled, concatenated) in self.products(w.weight(), n)? {
            let c = concatenated.coeff(w);
            if !c.is_zero() {
                out.add_scaled(shuffled, &(&c * &norm));
            }
        }
        Ok(out)
    }
}

pub(crate) fn factorial(n: usize) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, k| &acc * &Scalar::from_i64(k))
}

/// `π₁(P)` or `π̌₁(P)`.
pub fn pi1(law: &PhiLaw, p: &NCPoly, side: Side) -> Result<NCPoly> {
    let mut e = Eulerian::new(law);
    p.map_linear(|w| match side {
        Side::Standard => e.pi1(w),
        Side::Adjoint => e.check_pi1(w),
    })
}

/// `πₙ(P)` or `π̌ₙ(P)`.
pub fn pi_n(law: &PhiLaw, p: &NCPoly, n: usize, side: Side) -> Result<NCPoly> {
    let mut e = Eulerian::new(law);
    p.map_linear(|w| match side {
        Side::Standard => e.pi_n(w, n),
        Side::Adjoint => e.check_pi_n(w, n),
    })
}

/// Both reconstructions of `w`: `Σₙ πₙ(w)` and `Σₙ π̌ₙ(w)`.
pub fn word_expansion_identity(law: &PhiLaw, w: &Word) -> Result<(NCPoly, NCPoly)> {
    let mut e = Eulerian::new(law);
    let (mut a, mut b) = (NCPoly::zero(), NCPoly::zero());
    for n in 0..=w.weight() as usize {
        a.add_scaled(&e.pi_n(w, n)?, &Scalar::one());
        b.add_scaled(&e.check_pi_n(w, n)?, &Scalar::one());
    }
    Ok((a, b))
}

/// Product in the double algebra: `⧢φ` on the left leg, `conc` on the right,
/// both legs cut at `bound`.
pub fn double_product(law: &PhiLaw, x: &Tensor, y: &Tensor, bound: u32) -> Result<Tensor> {
    let mut out = Tensor::zero(2);
    for (ka, a) in x.terms() {
        for (kb, b) in y.terms() {
            if ka[1].weight() + kb[1].weight() > bound {
                continue;
            }
            let right = ka[1].concat(&kb[1]);
            let left = phi_shuffle_truncated(
                law,
                &NCPoly::word(ka[0].clone()),
                &NCPoly::word(kb[0].clone()),
                bound,
            )?;
            let ab = a * b;
            for (u, c) in left.terms() {
                out.add_term(vec![u.clone(), right.clone()], &(c * &ab));
            }
        }
    }
    Ok(out)
}

/// `exp(X)` in the double algebra for `X` without constant term.
pub fn double_exp(law: &PhiLaw, x: &Tensor, bound: u32) -> Result<Tensor> {
    let mut out = Tensor::one(2);
    let mut power = Tensor::one(2);
    let mut k = 1i64;
    loop {
        power = double_product(law, &power, x, bound)?.scale(&Scalar::from_ratio(1, k));
        if power.is_zero() {
            return Ok(out);
        }
        out.add_scaled(&power, &Scalar::one());
        k += 1;
    }
}

/// `Haus_Y = Σ w⊗π₁(w)` (when `t` is `None`) or `σ_Y(t) = exp(t·Haus_Y)`,
/// with both legs cut at `bound`.
pub fn hausdorff(law: &PhiLaw, bound: u32, t: Option<Scalar>) -> Result<Tensor> {
    law.require(
        "hausdorff",
        &[
            Property::Moderate,
            Property::Dualizable,
            Property::Associative,
            Property::Commutative,
            Property::Graded,
        ],
    )?;
    let mut e = Eulerian::new(law);
    let mut haus = Tensor::zero(2);
    for w in law.alphabet_up_to(bound).words_up_to(bound) {
        for (v, c) in e.pi1(&w)?.terms() {
            haus.add_term(vec![w.clone(), v.clone()], c);
        }
    }
    match t {
        None => Ok(haus),
        Some(t) => double_exp(law, &haus.scale(&t), bound),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::products::{delta_conc, delta_phi};

    fn p(text: &str) -> NCPoly {
        text.parse().unwrap()
    }

    fn w(text: &str) -> Word {
        text.parse().unwrap()
    }

    /// `(Id − e)^{⋆k}` via `Δ^{(k−1)}`, concatenating the legs.
    fn conv_power(law: &PhiLaw, f: &dyn Fn(&Word) -> NCPoly, x: &Word, k: usize) -> NCPoly {
        if k == 0 {
            return if x.is_empty() { NCPoly::one() } else { NCPoly::zero() };
        }
        let d = delta_phi(law, &NCPoly::word(x.clone()), k).unwrap();
        let mut out = NCPoly::zero();
        for (legs, c) in d.terms() {
            let mut prod = NCPoly::one();
            for leg in legs {
                prod = prod.conc(&f(leg));
            }
            out.add_scaled(&prod, c);
        }
        out
    }

    /// `π₁ = log_⋆(Id)` as an independent oracle.
    fn pi1_oracle(law: &PhiLaw, x: &Word) -> NCPoly {
        let proper = |u: &Word| {
            if u.is_empty() {
                NCPoly::zero()
            } else {
                NCPoly::word(u.clone())
            }
        };
        let mut out = NCPoly::zero();
        for k in 1..=x.len().max(x.weight() as usize) {
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out.add_scaled(&conv_power(law, &proper, x, k), &Scalar::from_ratio(sign, k as i64));
        }
        out
    }

    #[test]
    fn phi_of_series_examples() {
        let law = PhiLaw::q_stuffle();
        let x = p("y2.y1.y3");
        assert_eq!(phi_of_series(&law, &CoeffSeq::identity(), &x).unwrap(), x);
        assert_eq!(
            phi_of_series(&law, &CoeffSeq::log1p(), &p("y1.y1")).unwrap(),
            p("-(q/2)*y2")
        );
        assert_eq!(phi_of_series(&law, &CoeffSeq::alternating(), &p("y1")).unwrap(), p("-y1"));
        assert!(phi_of_series(&law, &CoeffSeq::log1p(), &NCPoly::one()).unwrap().is_zero());
    }

    #[test]
    fn pi1_examples() {
        let law = PhiLaw::q_stuffle();
        let pi = |s: &str| pi1(&law, &p(s), Side::Standard).unwrap();
        assert_eq!(pi1(&law, &p("y3"), Side::Adjoint).unwrap(), p("y3"));
        assert_eq!(pi("y2"), p("y2 - (q/2)*y1.y1"));
        assert!(pi("y1.y1").is_zero());
        assert_eq!(pi("y1.y2"), p("(1/2)*y1.y2 - (1/2)*y2.y1"));
    }

    #[test]
    fn pi1_matches_convolution_log() {
        for law in [PhiLaw::q_stuffle(), PhiLaw::shuffle(), PhiLaw::q_shuffle()] {
            let mut e = Eulerian::new(&law);
            for x in Alphabet::standard(4).words_up_to(4).iter().skip(1) {
                assert_eq!(e.pi1(x).unwrap(), pi1_oracle(&law, x), "{} {x}", law.name());
            }
        }
    }

    #[test]
    fn pi1_precondition() {
        let law = PhiLaw::q_infiltration(Alphabet::standard(1), Scalar::q());
        let err = pi1(&law, &p("y1"), Side::Standard).unwrap_err();
        assert_eq!(err.to_string(), "pi1 requires moderate law");
        assert_eq!(pi1(&law, &p("y1.y1"), Side::Adjoint).unwrap(), p("-(q/2)*y1"));
    }

    #[test]
    fn pi1_nilpotent_table_by_length() {
        use crate::alphabet::Letter;
        use crate::text::parse_poly_with;
        let alpha = Alphabet::new(vec![
            Letter::with_weight(1, 1).unwrap(),
            Letter::with_weight(2, 1).unwrap(),
        ])
        .unwrap();
        let a2 = alpha.clone();
        let q = move |s: &str| parse_poly_with(s, &|k| a2.resolve(k)).unwrap();
        let law = PhiLaw::finite_table("drop", alpha, [((1, 1), q("y2"))]).unwrap();
        assert!(!law.properties().graded);
        assert_eq!(law.properties().nilpotency_index, Some(2));
        let mut e = Eulerian::new(&law);
        assert_eq!(e.pi1(&q("y2").terms().next().unwrap().0.clone()).unwrap(), q("y2 - (1/2)*y1.y1"));
        // adjointness on the finite candidate set
        let words: Vec<Word> = ["y1", "y2", "y1.y1", "y1.y2", "y2.y1", "y1.y1.y1"]
            .iter()
            .map(|s| q(s).terms().next().unwrap().0.clone())
            .collect();
        for u in &words {
            for v in &words {
                let lhs = e.check_pi1(u).unwrap().coeff(v);
                let rhs = e.pi1(v).unwrap().coeff(u);
                assert_eq!(lhs, rhs, "{u} {v}");
            }
        }
    }

    #[test]
    fn pi_n_examples() {
        let law = PhiLaw::q_stuffle();
        assert_eq!(pi_n(&law, &NCPoly::one(), 0, Side::Standard).unwrap(), NCPoly::one());
        assert!(pi_n(&law, &NCPoly::one(), 1, Side::Standard).unwrap().is_zero());
        assert_eq!(pi_n(&law, &p("y1.y1"), 2, Side::Standard).unwrap(), p("y1.y1"));
        let pp = p("y1.y1");
        assert_eq!(pi_n(&law, &pp, 2, Side::Standard).unwrap(), pp);
        assert!(pi_n(&law, &pp, 1, Side::Standard).unwrap().is_zero());
    }

    #[test]
    fn pi_n_matches_divided_convolution_powers() {
        let law = PhiLaw::q_stuffle();
        let mut e = Eulerian::new(&law);
        let words = Alphabet::standard(4).words_up_to(4);
        let table: HashMap<Word, NCPoly> = words.iter().map(|x| (x.clone(), e.pi1(x).unwrap())).collect();
        let f = |u: &Word| table[u].clone();
        for x in words.iter().skip(1) {
            for k in 1..=x.weight() as usize {
                let oracle = conv_power(&law, &f, x, k).scale(&factorial(k).recip().unwrap());
                assert_eq!(e.pi_n(x, k).unwrap(), oracle, "{x} k={k}");
            }
        }
    }

    #[test]
    fn antipode_examples_and_axiom() {
        let law = PhiLaw::q_stuffle();
        assert_eq!(antipode(&law, &p("y3")).unwrap(), p("-y3"));
        assert_eq!(antipode(&law, &p("y1.y1")).unwrap(), p("y1.y1 + q*y2"));
        assert_eq!(antipode(&PhiLaw::shuffle(), &p("y1.y2")).unwrap(), p("y2.y1"));
        assert_eq!(antipode(&law, &NCPoly::one()).unwrap(), NCPoly::one());
        for x in Alphabet::standard(4).words_up_to(4) {
            let mut total = NCPoly::zero();
            for (legs, c) in delta_conc(&NCPoly::word(x.clone()), 2).terms() {
                let a = antipode(&law, &NCPoly::word(legs[0].clone())).unwrap();
                total.add_scaled(&phi_shuffle(&law, &a, &NCPoly::word(legs[1].clone())).unwrap(), c);
            }
            let expect = if x.is_empty() { NCPoly::one() } else { NCPoly::zero() };
            assert_eq!(total, expect, "{x}");
        }
    }

    #[test]
    fn word_expansion_examples() {
        let law = PhiLaw::q_stuffle();
        for s in ["y1", "y1.y1", "y2", "y2.y1.y1"] {
            let x = w(s);
            let (a, b) = word_expansion_identity(&law, &x).unwrap();
            assert_eq!(a, NCPoly::word(x.clone()));
            assert_eq!(b, NCPoly::word(x));
        }
        // y2 = π₁(y2) + (q/2)π₁(y1)π₁(y1)
        let rebuilt = &pi1(&law, &p("y2"), Side::Standard).unwrap() + &p("(q/2)*y1.y1");
        assert_eq!(rebuilt, p("y2"));
    }

    #[test]
    fn hausdorff_examples() {
        let law = PhiLaw::q_stuffle();
        let h1 = hausdorff(&law, 1, None).unwrap();
        assert_eq!(h1.to_string(), "y1⊗y1");
        let s = hausdorff(&law, 3, Some(Scalar::one())).unwrap();
        let mut diag = Tensor::zero(2);
        for x in Alphabet::standard(3).words_up_to(3) {
            diag.add_term(vec![x.clone(), x], &Scalar::one());
        }
        assert_eq!(s, diag);
        assert_eq!(hausdorff(&law, 3, Some(Scalar::zero())).unwrap(), Tensor::one(2));
    }
}
