//! The primitive Lyndon basis `Π_l`, the PBW basis `Π_w`, its dual `Σ_w`,
//! the automorphism `φ_{π₁}` and the `ψ_π` kernel generators.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::alphabet::{cfl_factorization, lyndon_up_to, standard_factorization, LetterOrder, Word};
use crate::error::{Error, Result};
use crate::law::{PhiLaw, Property};
use crate::poly::NCPoly;
use crate::products::phi_shuffle;
use crate::projectors::{factorial, Eulerian};
use crate::scalar::Scalar;

const BASE_NEEDS: [Property; 4] = [
    Property::Moderate,
    Property::Dualizable,
    Property::Associative,
    Property::Commutative,
];

const GRADED_NEEDS: [Property; 5] = [
    Property::Moderate,
    Property::Dualizable,
    Property::Associative,
    Property::Commutative,
    Property::Graded,
];

/// Modes of [`phi_pi1_map`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapMode {
    /// The conc-endomorphism `y ↦ π₁(y)`.
    Forward,
    /// Its adjoint for the pairing.
    Adjoint,
    Inverse,
    AdjointInverse,
}

/// Memoizing builder for basis elements under one law.
pub struct Bases {
    eulerian: Eulerian,
    order: LetterOrder,
    pi: HashMap<Word, NCPoly>,
    classical_s: HashMap<Word, NCPoly>,
    adjoint: HashMap<Word, NCPoly>,
    shuffle: PhiLaw,
}

impl Bases {
    /// Fails when the law lacks a property every basis operation needs.
    pub fn new(law: &PhiLaw) -> Result<Bases> {
        law.require("pi_element", &BASE_NEEDS)?;
        Ok(Bases {
            eulerian: Eulerian::new(law),
            order: LetterOrder::default(),
            pi: HashMap::new(),
            classical_s: HashMap::new(),
            adjoint: HashMap::new(),
            shuffle: PhiLaw::shuffle(),
        })
    }

    pub fn law(&self) -> &PhiLaw {
        self.eulerian.law()
    }

    pub fn eulerian(&mut self) -> &mut Eulerian {
        &mut self.eulerian
    }

    /// `Π_w`: `π₁(y)` on letters, brackets along the standard factorization
    /// on Lyndon words, concatenation powers along the CFL factorization.
    pub fn pi(&mut self, w: &Word) -> Result<NCPoly> {
        if let Some(p) = self.pi.get(w) {
            return Ok(p.clone());
        }
        let out = if w.is_empty() {
            NCPoly::one()
        } else if w.len() == 1 {
            self.eulerian.pi1(w)?
        } else {
            let cfl = cfl_factorization(w, self.order);
            if let [(l, 1)] = cfl.as_slice() {
                let (s, r) = standard_factorization(l, self.order)?;
                self.pi(&s)?.bracket(&self.pi(&r)?)
            } else {
                let mut acc = NCPoly::one();
                for (l, i) in &cfl {
                    acc = acc.conc(&self.pi(l)?.conc_pow(*i));
                }
                acc
            }
        };
        self.pi.insert(w.clone(), out.clone());
        Ok(out)
    }

    /// Classical `S_w` (dual of the shuffle PBW basis): `S_y = y`,
    /// `S_{yu} = y·S_u` for Lyndon `yu`, and divided shuffle powers along the
    /// CFL factorization.
    pub fn classical_s(&mut self, w: &Word) -> Result<NCPoly> {
        if let Some(p) = self.classical_s.get(w) {
            return Ok(p.clone());
        }
        let cfl = cfl_factorization(w, self.order);
        let out = match cfl.as_slice() {
            [] => NCPoly::one(),
            [(l, 1)] if l.len() == 1 => NCPoly::word(l.clone()),
            [(l, 1)] => {
                let rest = self.classical_s(&l.slice(1, l.len()))?;
                NCPoly::word(l.slice(0, 1)).conc(&rest)
            }
            _ => {
                let mut acc = NCPoly::one();
                let mut denom = Scalar::one();
                for (l, i) in &cfl {
                    let sl = self.classical_s(l)?;
                    for _ in 0..*i {
                        acc = phi_shuffle(&self.shuffle, &acc, &sl)?;
                    }
                    denom = &denom * &factorial(*i);
                }
                acc.scale(&denom.recip()?)
            }
        };
        self.classical_s.insert(w.clone(), out.clone());
        Ok(out)
    }

    /// `φ_{π₁}(w) = π₁(y_{i₁})⋯π₁(y_{i_k})`.
    pub fn forward_word(&mut self, w: &Word) -> Result<NCPoly> {
        let mut acc = NCPoly::one();
        for l in w.letters() {
            acc = acc.conc(&self.eulerian.pi1(&Word::letter(*l))?);
        }
        Ok(acc)
    }

    /// `φ^∨_{π₁}(w) = Σ_v ⟨w, φ_{π₁}(v)⟩ v` over `v` of the same weight.
    pub fn adjoint_word(&mut self, w: &Word) -> Result<NCPoly> {
        self.law().require("phi_pi1_map", &GRADED_NEEDS)?;
        if let Some(p) = self.adjoint.get(w) {
            return Ok(p.clone());
        }
        let n = w.weight();
        let words = self.law().alphabet_up_to(n).words_of_weight(n);
        let mut acc: HashMap<Word, NCPoly> = words.iter().map(|v| (v.clone(), NCPoly::zero())).collect();
        for v in &words {
            for (x, c) in self.forward_word(v)?.terms() {
                if let Some(slot) = acc.get_mut(x) {
                    slot.add_term(v.clone(), c);
                }
            }
        }
        self.adjoint.extend(acc);
        Ok(self.adjoint.get(w).cloned().unwrap_or_default())
    }

    /// Inverts a map of the form `v ↦ v + (terms strictly further along)`
    /// by repeatedly clearing the term picked by `pick`.
    fn unitriangular_inverse(
        &mut self,
        p: &NCPoly,
        image: fn(&mut Bases, &Word) -> Result<NCPoly>,
        pick: fn(&NCPoly) -> (Word, Scalar),
    ) -> Result<NCPoly> {
        self.law().require("phi_pi1_map", &GRADED_NEEDS)?;
        let mut rest = p.clone();
        let mut out = NCPoly::zero();
        while !rest.is_zero() {
            let (v, c) = pick(&rest);
            out.add_term(v.clone(), &c);
            rest.add_scaled(&image(self, &v)?, &-c);
        }
        Ok(out)
    }

    pub fn map(&mut self, p: &NCPoly, mode: MapMode) -> Result<NCPoly> {
        match mode {
            MapMode::Forward => p.map_linear(|w| self.forward_word(w)),
            MapMode::Adjoint => p.map_linear(|w| self.adjoint_word(w)),
            MapMode::Inverse => self.unitriangular_inverse(p, Bases::forward_word, shortest_term),
            MapMode::AdjointInverse => self.unitriangular_inverse(p, Bases::adjoint_word, longest_term),
        }
    }

    /// `Σ_w = (φ^∨_{π₁})^{-1}(S_w)`.
    pub fn sigma(&mut self, w: &Word) -> Result<NCPoly> {
        self.law().require("sigma_element", &GRADED_NEEDS)?;
        let s = self.classical_s(w)?;
        self.map(&s, MapMode::AdjointInverse)
    }
}

fn shortest_term(p: &NCPoly) -> (Word, Scalar) {
    let (w, c) = p
        .terms()
        .min_by_key(|(w, _)| (w.len(), (*w).clone()))
        .expect("nonzero");
    (w.clone(), c.clone())
}

fn longest_term(p: &NCPoly) -> (Word, Scalar) {
    let (w, c) = p
        .terms()
        .max_by_key(|(w, _)| (w.len(), (*w).clone()))
        .expect("nonzero");
    (w.clone(), c.clone())
}

/// `Π_w` for one word.
pub fn pi_element(law: &PhiLaw, w: &Word) -> Result<NCPoly> {
    Bases::new(law)?.pi(w)
}

/// `Σ_w` for one word.
pub fn sigma_element(law: &PhiLaw, w: &Word) -> Result<NCPoly> {
    Bases::new(law)?.sigma(w)
}

/// `φ_{π₁}`, its adjoint, or either inverse, applied to `P`.
pub fn phi_pi1_map(law: &PhiLaw, p: &NCPoly, mode: MapMode) -> Result<NCPoly> {
    Bases::new(law)?.map(p, mode)
}

/// `Π_w` and `Σ_w` for every word of weight at most the bound.
#[derive(Clone, Debug)]
pub struct BasisTable {
    law: PhiLaw,
    weight_bound: u32,
    pi: BTreeMap<Word, NCPoly>,
    sigma: BTreeMap<Word, NCPoly>,
    lyndon: Vec<Word>,
}

impl BasisTable {
    pub fn build(law: &PhiLaw, weight_bound: u32) -> Result<BasisTable> {
        law.require("gram_check", &GRADED_NEEDS)?;
        let mut b = Bases::new(law)?;
        let alphabet = law.alphabet_up_to(weight_bound);
        let (mut pi, mut sigma) = (BTreeMap::new(), BTreeMap::new());
        for w in alphabet.words_up_to(weight_bound) {
            pi.insert(w.clone(), b.pi(&w)?);
            sigma.insert(w.clone(), b.sigma(&w)?);
        }
        let lyndon = lyndon_up_to(&alphabet, LetterOrder::default(), weight_bound)?;
        Ok(BasisTable {
            law: law.clone(),
            weight_bound,
            pi,
            sigma,
            lyndon,
        })
    }

    /// Assembles a table from given maps without checking them.
    pub fn from_parts(
        law: &PhiLaw,
        weight_bound: u32,
        pi: BTreeMap<Word, NCPoly>,
        sigma: BTreeMap<Word, NCPoly>,
    ) -> Result<BasisTable> {
        let alphabet = law.alphabet_up_to(weight_bound);
        let lyndon = lyndon_up_to(&alphabet, LetterOrder::default(), weight_bound)?;
        Ok(BasisTable {
            law: law.clone(),
            weight_bound,
            pi,
            sigma,
            lyndon,
        })
    }

    pub fn law(&self) -> &PhiLaw {
        &self.law
    }

    pub fn weight_bound(&self) -> u32 {
        self.weight_bound
    }

    pub fn pi(&self, w: &Word) -> Option<&NCPoly> {
        self.pi.get(w)
    }

    pub fn sigma(&self, w: &Word) -> Option<&NCPoly> {
        self.sigma.get(w)
    }

    /// Lyndon words of the table, ascending.
    pub fn lyndon(&self) -> &[Word] {
        &self.lyndon
    }

    /// Words of the table in canonical order.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.pi.keys()
    }

    /// `⟨Σ_u, Π_v⟩` over each weight component.
    pub fn gram_report(&self) -> GramReport {
        let mut by_weight: BTreeMap<u32, Vec<&Word>> = BTreeMap::new();
        for w in self.pi.keys().filter(|w| self.sigma.contains_key(*w)) {
            by_weight.entry(w.weight()).or_default().push(w);
        }
        let mut entries = 0;
        for words in by_weight.values() {
            for u in words {
                for v in words {
                    entries += 1;
                    let value = self.sigma[*u].pair(&self.pi[*v]);
                    let expect = if u == v { Scalar::one() } else { Scalar::zero() };
                    if value != expect {
                        return GramReport {
                            weight_bound: self.weight_bound,
                            entries,
                            failure: Some(((*u).clone(), (*v).clone(), value)),
                        };
                    }
                }
            }
        }
        GramReport {
            weight_bound: self.weight_bound,
            entries,
            failure: None,
        }
    }
}

/// Outcome of a Gram check: identity, or the first failing pair `(u, v, ⟨Σ_u, Π_v⟩)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramReport {
    pub weight_bound: u32,
    /// Entries compared before stopping.
    pub entries: usize,
    pub failure: Option<(Word, Word, Scalar)>,
}

impl GramReport {
    pub fn is_identity(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for GramReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(
                f,
                "OK: Gram matrix is the identity (weight<={}, {} entries)",
                self.weight_bound, self.entries
            ),
            Some((u, v, c)) => write!(f, "FAIL: <SIGMA {u}, PI {v}> = {c}"),
        }
    }
}

/// Builds the table and checks `⟨Σ_u, Π_v⟩ = δ_{u,v}`.
pub fn gram_check(law: &PhiLaw, weight_bound: u32) -> Result<GramReport> {
    Ok(BasisTable::build(law, weight_bound)?.gram_report())
}

/// Linear combination of products `y_{u₁}•⋯•y_{u_k}` of letters indexed by
/// nonempty words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IndexedPoly {
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl IndexedPoly {
    /// `y_P = Σ P(w)·y_w`; the empty word cannot index a letter.
    pub fn index(p: &NCPoly) -> Result<IndexedPoly> {
        let mut out = IndexedPoly::default();
        for (w, c) in p.terms() {
            if w.is_empty() {
                return Err(Error::EmptyWord("index"));
            }
            out.add_term(vec![w.clone()], c);
        }
        Ok(out)
    }

    /// `y_w`
    pub fn letter(w: &Word) -> Result<IndexedPoly> {
        IndexedPoly::index(&NCPoly::word(w.clone()))
    }

    fn add_term(&mut self, key: Vec<Word>, c: &Scalar) {
        let slot = self.terms.entry(key.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    /// `A•B`
    pub fn mul(&self, other: &IndexedPoly) -> IndexedPoly {
        let mut out = IndexedPoly::default();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut k = a.clone();
                k.extend(b.iter().cloned());
                out.add_term(k, &(x * y));
            }
        }
        out
    }

    pub fn add(&self, other: &IndexedPoly) -> IndexedPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &IndexedPoly) -> IndexedPoly {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), &-c);
        }
        out
    }

    /// `y_u − y_{π₁(u)}`
    pub fn s1_generator(bases: &mut Bases, u: &Word) -> Result<IndexedPoly> {
        let p = bases.eulerian().pi1(u)?;
        Ok(IndexedPoly::letter(u)?.sub(&IndexedPoly::index(&p)?))
    }

    /// `y_u•y_v − y_v•y_u − y_{[π₁(u), π₁(v)]}`
    pub fn s2_generator(bases: &mut Bases, u: &Word, v: &Word) -> Result<IndexedPoly> {
        let (yu, yv) = (IndexedPoly::letter(u)?, IndexedPoly::letter(v)?);
        let e = bases.eulerian();
        let br = e.pi1(u)?.bracket(&e.pi1(v)?);
        Ok(yu.mul(&yv).sub(&yv.mul(&yu)).sub(&IndexedPoly::index(&br)?))
    }
}

impl Bases {
    /// `ψ_{π₁}`: the conc-morphism `y_w ↦ π₁(w)`, sharing this table's cache.
    pub fn psi_pi(&mut self, expr: &IndexedPoly) -> Result<NCPoly> {
        let e = self.eulerian();
        let mut out = NCPoly::zero();
        for (key, c) in expr.terms() {
            let mut prod = NCPoly::one();
            for w in key {
                prod = prod.conc(&e.pi1(w)?);
            }
            out.add_scaled(&prod, c);
        }
        Ok(out)
    }
}

/// One-shot [`Bases::psi_pi`].
pub fn psi_pi_eval(law: &PhiLaw, expr: &IndexedPoly) -> Result<NCPoly> {
    law.require("psi_pi_eval", &BASE_NEEDS)?;
    Bases::new(law)?.psi_pi(expr)
}
