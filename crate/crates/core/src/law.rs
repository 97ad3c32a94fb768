//! Deformation laws `φ : Y × Y → K·Y` and their analysis.
//!
//! A law is either *weight-additive* (an opaque rule whose outputs have
//! weight `weight(a) + weight(b)`, defined on every letter) or a *finite
//! table* on a declared alphabet. Structure constants are
//! `γ_{a,b}^c = ⟨φ(a,b), c⟩`, extended to words by `φ(xw) = φ(x, φ(w))`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::alphabet::{Alphabet, Letter, Word};
use crate::error::{Error, Result};
use crate::poly::NCPoly;
use crate::scalar::Scalar;

/// Rule of a weight-additive law: `(a, b) ↦ Σ c_z · z`.
pub type LetterRule = Arc<dyn Fn(Letter, Letter) -> Vec<(Letter, Scalar)> + Send + Sync>;

/// Where enumeration finds letters of a given weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LetterSource {
    /// `y_k` with weight `k`, for every `k ≥ 1`.
    Standard,
    Finite(Alphabet),
}

#[derive(Clone)]
pub enum LawKind {
    WeightAdditive { rule: LetterRule, letters: LetterSource },
    FiniteTable { alphabet: Alphabet, entries: BTreeMap<(u32, u32), NCPoly> },
}

/// Three-valued verdict of a bounded analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl Verdict {
    pub fn holds(self) -> bool {
        self == Verdict::Yes
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "true",
            Verdict::No => "false",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Result of [`analyze_law`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub associative: bool,
    pub commutative: bool,
    pub dualizable: Verdict,
    pub moderate: Verdict,
    /// Outputs of `φ(a, b)` all have weight `weight(a) + weight(b)`.
    pub graded: bool,
    /// For finite tables: smallest `k` with `M^k = 0` for the boolean support
    /// matrix `M`, or `None` when `M` is not nilpotent.
    pub nilpotency_index: Option<usize>,
    pub verified_up_to_weight: u32,
    pub notes: Vec<String>,
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "associative: {}", self.associative)?;
        writeln!(f, "commutative: {}", self.commutative)?;
        writeln!(f, "dualizable: {}", self.dualizable)?;
        writeln!(f, "moderate: {}", self.moderate)?;
        writeln!(f, "graded: {}", self.graded)?;
        write!(f, "verified_up_to_weight: {}", self.verified_up_to_weight)?;
        for n in &self.notes {
            write!(f, "\nnote: {n}")?;
        }
        Ok(())
    }
}

/// Law properties an operation may require.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Associative,
    Commutative,
    Dualizable,
    Moderate,
    Graded,
}

impl Property {
    fn name(self) -> &'static str {
        match self {
            Property::Associative => "associative",
            Property::Commutative => "commutative",
            Property::Dualizable => "dualizable",
            Property::Moderate => "moderate",
            Property::Graded => "weight-graded",
        }
    }
}

struct LawInner {
    name: String,
    kind: LawKind,
    properties: OnceLock<LawReport>,
}

/// A deformation law. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct PhiLaw {
    inner: Arc<LawInner>,
}

impl fmt::Debug for PhiLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PhiLaw({})", self.inner.name)
    }
}

fn additive_letter(a: Letter, b: Letter) -> Letter {
    Letter::with_weight(a.index() + b.index(), a.weight() + b.weight()).expect("positive index")
}

impl PhiLaw {
    fn build(name: impl Into<String>, kind: LawKind) -> PhiLaw {
        PhiLaw {
            inner: Arc::new(LawInner {
                name: name.into(),
                kind,
                properties: OnceLock::new(),
            }),
        }
    }

    /// A weight-additive law given by an arbitrary rule on the standard letters.
    pub fn weight_additive(
        name: impl Into<String>,
        rule: impl Fn(Letter, Letter) -> Vec<(Letter, Scalar)> + Send + Sync + 'static,
    ) -> PhiLaw {
        Self::build(
            name,
            LawKind::WeightAdditive {
                rule: Arc::new(rule),
                letters: LetterSource::Standard,
            },
        )
    }

    /// A weight-additive law whose enumerations run over a custom alphabet.
    pub fn weight_additive_on(
        name: impl Into<String>,
        alphabet: Alphabet,
        rule: impl Fn(Letter, Letter) -> Vec<(Letter, Scalar)> + Send + Sync + 'static,
    ) -> PhiLaw {
        Self::build(
            name,
            LawKind::WeightAdditive {
                rule: Arc::new(rule),
                letters: LetterSource::Finite(alphabet),
            },
        )
    }

    /// A law given by a finite table; missing entries are zero. Every entry
    /// must be supported on letters of `alphabet`.
    pub fn finite_table(
        name: impl Into<String>,
        alphabet: Alphabet,
        entries: impl IntoIterator<Item = ((u32, u32), NCPoly)>,
    ) -> Result<PhiLaw> {
        let mut map = BTreeMap::new();
        for ((a, b), value) in entries {
            alphabet.resolve(a)?;
            alphabet.resolve(b)?;
            for (w, _) in value.terms() {
                if w.len() != 1 || !alphabet.contains(&w.letters()[0]) {
                    return Err(Error::LawFile(format!(
                        "entry φ(y{a}, y{b}) must be a combination of alphabet letters, found `{w}`"
                    )));
                }
            }
            if !value.is_zero() {
                map.insert((a, b), value);
            }
        }
        Ok(Self::build(
            name,
            LawKind::FiniteTable {
                alphabet,
                entries: map,
            },
        ))
    }

    /// `φ ≡ 0`.
    pub fn shuffle() -> PhiLaw {
        Self::weight_additive("shuffle", |_, _| Vec::new())
    }

    /// `φ(y_i, y_j) = y_{i+j}`.
    pub fn quasi_shuffle() -> PhiLaw {
        Self::weight_additive("quasi-shuffle", |a, b| vec![(additive_letter(a, b), Scalar::one())])
    }

    /// `φ(y_i, y_j) = −y_{i+j}`.
    pub fn min_shuffle() -> PhiLaw {
        Self::weight_additive("min-shuffle", |a, b| {
            vec![(additive_letter(a, b), Scalar::from_i64(-1))]
        })
    }

    /// `φ(y_i, y_j) = q·y_{i+j}` with symbolic `q`.
    pub fn q_stuffle() -> PhiLaw {
        Self::q_stuffle_at(Scalar::q())
    }

    /// `φ(y_i, y_j) = c·y_{i+j}`.
    pub fn q_stuffle_at(c: Scalar) -> PhiLaw {
        let name = if c == Scalar::q() {
            "qstuffle".to_string()
        } else {
            format!("qstuffle:{c}")
        };
        Self::weight_additive(name, move |a, b| vec![(additive_letter(a, b), c.clone())])
    }

    /// `φ(y_i, y_j) = q^{i·j}·y_{i+j}`.
    pub fn q_shuffle() -> PhiLaw {
        Self::weight_additive("qshuffle", |a, b| {
            vec![(additive_letter(a, b), Scalar::q().pow(a.index() * b.index()))]
        })
    }

    /// `φ(a, b) = c·δ_{a,b}·a` on a finite alphabet.
    pub fn q_infiltration(alphabet: Alphabet, c: Scalar) -> PhiLaw {
        let entries: Vec<_> = alphabet
            .letters()
            .iter()
            .map(|l| ((l.index(), l.index()), NCPoly::monomial(Word::letter(*l), c.clone())))
            .collect();
        let name = if c == Scalar::q() {
            "q-infiltration".to_string()
        } else {
            format!("q-infiltration:{c}")
        };
        Self::finite_table(name, alphabet, entries).expect("entries on the alphabet")
    }

    /// `φ(y_t, y_s) = y_{t⊥s}` for a semigroup operation on the indices of a
    /// finite alphabet; `op` returning `None` means `φ(y_t, y_s) = 0`.
    pub fn semigroup_shuffle(
        name: impl Into<String>,
        alphabet: Alphabet,
        op: impl Fn(u32, u32) -> Option<u32>,
    ) -> Result<PhiLaw> {
        let mut entries = Vec::new();
        for a in alphabet.letters() {
            for b in alphabet.letters() {
                if let Some(c) = op(a.index(), b.index()) {
                    let l = alphabet.resolve(c)?;
                    entries.push(((a.index(), b.index()), NCPoly::word(Word::letter(l))));
                }
            }
        }
        Self::finite_table(name, alphabet, entries)
    }

    /// Looks up a built-in law by name, optionally with a rational parameter
    /// after a colon (`qstuffle:1`, `q-infiltration:1/2`).
    pub fn builtin(spec: &str) -> Result<PhiLaw> {
        let (name, param) = match spec.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p.trim().parse::<Scalar>()?)),
            None => (spec.trim(), None),
        };
        let q = param.clone().unwrap_or_else(Scalar::q);
        let law = match name {
            "shuffle" => PhiLaw::shuffle(),
            "quasi-shuffle" | "stuffle" => PhiLaw::quasi_shuffle(),
            "min-shuffle" | "min-stuffle" => PhiLaw::min_shuffle(),
            "qstuffle" | "q-stuffle" => PhiLaw::q_stuffle_at(q),
            "qshuffle" | "q-shuffle" if param.is_none() => PhiLaw::q_shuffle(),
            "q-infiltration" | "infiltration" => PhiLaw::q_infiltration(Alphabet::standard(1), q),
            _ => return Err(Error::UnknownLaw(spec.to_string())),
        };
        Ok(law)
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn kind(&self) -> &LawKind {
        &self.inner.kind
    }

    pub fn is_finite_table(&self) -> bool {
        matches!(self.inner.kind, LawKind::FiniteTable { .. })
    }

    /// Resolves `y_k` to a letter with its weight.
    pub fn resolve(&self, index: u32) -> Result<Letter> {
        match &self.inner.kind {
            LawKind::WeightAdditive {
                letters: LetterSource::Standard,
                ..
            } => Ok(Letter::y(index)),
            LawKind::WeightAdditive {
                letters: LetterSource::Finite(a),
                ..
            }
            | LawKind::FiniteTable { alphabet: a, .. } => a.resolve(index),
        }
    }

    /// The finite alphabet of letters of weight at most `bound`.
    pub fn alphabet_up_to(&self, bound: u32) -> Alphabet {
        match &self.inner.kind {
            LawKind::WeightAdditive {
                letters: LetterSource::Standard,
                ..
            } => Alphabet::standard(bound),
            LawKind::WeightAdditive {
                letters: LetterSource::Finite(a),
                ..
            }
            | LawKind::FiniteTable { alphabet: a, .. } => a.restrict(bound),
        }
    }

    /// `φ(a, b)` as a polynomial supported on letters.
    pub fn phi_apply(&self, a: Letter, b: Letter) -> Result<NCPoly> {
        match &self.inner.kind {
            LawKind::WeightAdditive { rule, .. } => {
                let mut out = NCPoly::zero();
                for (z, c) in rule(a, b) {
                    if z.weight() != a.weight() + b.weight() {
                        return Err(Error::WeightMismatch {
                            law: self.name().to_string(),
                            letter: z.index(),
                            got: z.weight(),
                            expected: a.weight() + b.weight(),
                        });
                    }
                    out.add_term(Word::letter(z), &c);
                }
                Ok(out)
            }
            LawKind::FiniteTable { alphabet, entries } => {
                for l in [a, b] {
                    if !alphabet.contains(&l) {
                        return Err(Error::LetterOutsideAlphabet(l.index()));
                    }
                }
                Ok(entries
                    .get(&(a.index(), b.index()))
                    .cloned()
                    .unwrap_or_default())
            }
        }
    }

    /// Bilinear extension of `φ` to polynomials supported on letters.
    pub fn phi_linear(&self, p: &NCPoly, r: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (u, a) in p.terms() {
            for (v, b) in r.terms() {
                match (u.letters(), v.letters()) {
                    ([x], [y]) => out.add_scaled(&self.phi_apply(*x, *y)?, &(a * b)),
                    _ => {
                        return Err(Error::Parse(format!(
                            "φ is defined on letters only, got `{u}` and `{v}`"
                        )))
                    }
                }
            }
        }
        Ok(out)
    }

    /// Pairs `(a, b, γ_{a,b}^z)` with nonzero structure constant onto `z`.
    pub fn contractions_onto(&self, z: Letter) -> Result<Vec<(Letter, Letter, Scalar)>> {
        let mut out = Vec::new();
        let target = Word::letter(z);
        match &self.inner.kind {
            LawKind::WeightAdditive { .. } => {
                let alpha = self.alphabet_up_to(z.weight());
                for a in alpha.letters() {
                    for b in alpha.letters() {
                        if a.weight() + b.weight() != z.weight() {
                            continue;
                        }
                        let c = self.phi_apply(*a, *b)?.coeff(&target);
                        if !c.is_zero() {
                            out.push((*a, *b, c));
                        }
                    }
                }
            }
            LawKind::FiniteTable { alphabet, entries } => {
                for ((a, b), v) in entries {
                    let c = v.coeff(&target);
                    if !c.is_zero() {
                        out.push((alphabet.resolve(*a)?, alphabet.resolve(*b)?, c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Memoized analysis over a range that covers every finite table entirely.
    pub fn properties(&self) -> &LawReport {
        self.inner.properties.get_or_init(|| {
            let bound = match &self.inner.kind {
                LawKind::WeightAdditive { .. } => 8,
                LawKind::FiniteTable { alphabet, .. } => {
                    3 * alphabet.letters().iter().map(Letter::weight).max().unwrap_or(1)
                }
            };
            analyze_law(self, bound)
        })
    }

    pub fn has(&self, p: Property) -> bool {
        let r = self.properties();
        match p {
            Property::Associative => r.associative,
            Property::Commutative => r.commutative,
            Property::Dualizable => r.dualizable.holds(),
            Property::Moderate => r.moderate.holds(),
            Property::Graded => r.graded,
        }
    }

    /// Fails with the first missing property, naming `operation`.
    pub fn require(&self, operation: &'static str, needs: &[Property]) -> Result<()> {
        for &p in needs {
            if !self.has(p) {
                return Err(Error::Precondition {
                    operation,
                    property: p.name(),
                });
            }
        }
        Ok(())
    }
}

/// `γ_w` as a polynomial on letters: `φ(x) = x`, `φ(xw) = φ(x, φ(w))`.
pub fn gamma_word(law: &PhiLaw, w: &Word) -> Result<NCPoly> {
    law.require("gamma_word", &[Property::Associative])?;
    gamma_word_unchecked(law, w)
}

pub(crate) fn gamma_word_unchecked(law: &PhiLaw, w: &Word) -> Result<NCPoly> {
    let letters = w.letters();
    let Some((last, init)) = letters.split_last() else {
        return Err(Error::EmptyWord("structure constants"));
    };
    let mut acc = NCPoly::word(Word::letter(*last));
    for x in init.iter().rev() {
        acc = law.phi_linear(&NCPoly::word(Word::letter(*x)), &acc)?;
    }
    Ok(acc)
}

fn letters_with_total_weight(alpha: &Alphabet, count: usize, bound: u32) -> Vec<Vec<Letter>> {
    let mut out: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..count {
        let mut next = Vec::new();
        for prefix in &out {
            let used: u32 = prefix.iter().map(Letter::weight).sum();
            for l in alpha.letters() {
                if used + l.weight() <= bound {
                    let mut v = prefix.clone();
                    v.push(*l);
                    next.push(v);
                }
            }
        }
        out = next;
    }
    out
}

/// Bounded-exhaustive analysis of a law.
///
/// Associativity and commutativity are checked on all letter triples / pairs
/// of total weight at most `weight_bound`. Weight-additive laws are
/// dualizable and moderate. For finite tables, moderation is decided by
/// nilpotency of the boolean matrix `M[y][t] = ∨_x [γ_{x,t}^y ≠ 0]`: nilpotent
/// means moderate. A letter with `φ(y, y) = c·y` makes it fail; any other
/// non-nilpotent table is reported unknown.
pub fn analyze_law(law: &PhiLaw, weight_bound: u32) -> LawReport {
    let alpha = law.alphabet_up_to(weight_bound);
    let mut notes = Vec::new();
    let failure = |notes: &mut Vec<String>, e: Error| notes.push(format!("evaluation failed: {e}"));

    let mut associative = true;
    for t in letters_with_total_weight(&alpha, 3, weight_bound) {
        let (a, b, c) = (t[0], t[1], t[2]);
        let la = NCPoly::word(Word::letter(a));
        let lc = NCPoly::word(Word::letter(c));
        let left = law
            .phi_apply(a, b)
            .and_then(|ab| law.phi_linear(&ab, &lc));
        let right = law
            .phi_apply(b, c)
            .and_then(|bc| law.phi_linear(&la, &bc));
        match (left, right) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(_), Ok(_)) => {
                associative = false;
                notes.push(format!("φ(φ({a},{b}),{c}) ≠ φ({a},φ({b},{c}))"));
                break;
            }
            (Err(e), _) | (_, Err(e)) => {
                associative = false;
                failure(&mut notes, e);
                break;
            }
        }
    }

    let mut commutative = true;
    let mut graded = true;
    for t in letters_with_total_weight(&alpha, 2, weight_bound) {
        let (a, b) = (t[0], t[1]);
        match (law.phi_apply(a, b), law.phi_apply(b, a)) {
            (Ok(x), Ok(y)) => {
                if x != y && commutative {
                    commutative = false;
                    notes.push(format!("φ({a},{b}) ≠ φ({b},{a})"));
                }
                if !x.is_homogeneous(a.weight() + b.weight()) {
                    graded = false;
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                commutative = false;
                failure(&mut notes, e);
                break;
            }
        }
    }

    let (dualizable, moderate, nilpotency_index) = match law.kind() {
        LawKind::WeightAdditive { .. } => {
            notes.push("weight-additive: finitely many letter pairs per target weight".into());
            (Verdict::Yes, Verdict::Yes, None)
        }
        LawKind::FiniteTable { alphabet, entries } => {
            notes.push("finite table: every fibre of φ is finite".into());
            for ((a, b), v) in entries {
                let wa = alphabet.resolve(*a).map(|l| l.weight()).unwrap_or(0);
                let wb = alphabet.resolve(*b).map(|l| l.weight()).unwrap_or(0);
                if !v.is_homogeneous(wa + wb) {
                    graded = false;
                }
            }
            let index = support_nilpotency(alphabet, entries);
            match index {
                Some(k) => {
                    notes.push(format!(
                        "support matrix nilpotent (index {k}): γ_w^y = 0 whenever |w| > {k}"
                    ));
                    (Verdict::Yes, Verdict::Yes, Some(k))
                }
                None => {
                    notes.push(
                        "support matrix not nilpotent: moderation fails unless nonzero γ's cancel".into(),
                    );
                    if let Some(n) = inverse_pair_note(alphabet, entries) {
                        notes.push(n);
                    }
                    match idempotent_letter(alphabet, entries) {
                        Some((y, c)) => {
                            notes.push(format!(
                                "φ({y},{y}) = ({c})·{y}: γ over {y}^n is nonzero for every n"
                            ));
                            (Verdict::Yes, Verdict::No, None)
                        }
                        None => (Verdict::Yes, Verdict::Unknown, None),
                    }
                }
            }
        }
    };

    LawReport {
        associative,
        commutative,
        dualizable,
        moderate,
        graded,
        nilpotency_index,
        verified_up_to_weight: weight_bound,
        notes,
    }
}

fn support_nilpotency(alphabet: &Alphabet, entries: &BTreeMap<(u32, u32), NCPoly>) -> Option<usize> {
    let letters = alphabet.letters();
    let n = letters.len();
    let pos = |idx: u32| letters.iter().position(|l| l.index() == idx);
    let mut m = vec![vec![false; n]; n];
    for ((_, t), v) in entries {
        let Some(ti) = pos(*t) else { continue };
        for (w, _) in v.terms() {
            if let Some(yi) = w.letters().first().and_then(|l| pos(l.index())) {
                m[yi][ti] = true;
            }
        }
    }
    let mut power = m.clone();
    for k in 1..=n + 1 {
        if power.iter().all(|row| row.iter().all(|&b| !b)) {
            return Some(k);
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).any(|l| power[i][l] && m[l][j]);
            }
        }
        power = next;
    }
    None
}

/// A letter with `φ(y, y) = c·y`, `c ≠ 0`. Then `γ_{y^n} = c^{n−1}·y` for all
/// `n`, which rules out moderation.
fn idempotent_letter(alphabet: &Alphabet, entries: &BTreeMap<(u32, u32), NCPoly>) -> Option<(Letter, Scalar)> {
    alphabet.letters().iter().find_map(|y| {
        let v = entries.get(&(y.index(), y.index()))?;
        let only = Word::letter(*y);
        (v.len() == 1 && !v.coeff(&only).is_zero()).then(|| (*y, v.coeff(&only)))
    })
}

/// Detects a unit letter `e` with pairs `φ(x, y) = e`: over an unbounded
/// multiplicative index set (the muffle) such fibres are infinite.
fn inverse_pair_note(alphabet: &Alphabet, entries: &BTreeMap<(u32, u32), NCPoly>) -> Option<String> {
    let letters = alphabet.letters();
    let is_unit = |e: &Letter| {
        letters.iter().all(|t| {
            entries.get(&(e.index(), t.index())) == Some(&NCPoly::word(Word::letter(*t)))
        })
    };
    let e = letters.iter().find(|e| is_unit(e))?;
    let unit = NCPoly::word(Word::letter(*e));
    let pairs = entries
        .iter()
        .filter(|((a, b), v)| a != &e.index() && b != &e.index() && **v == unit)
        .count();
    (pairs > 0).then(|| {
        format!(
            "{pairs} inverse pair(s) multiply to the unit {e}; over an infinite multiplicative index set this fibre is infinite and the law is not dualizable (muffle pattern)"
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(k: u32) -> Letter {
        Letter::y(k)
    }

    fn p(text: &str) -> NCPoly {
        text.parse().unwrap()
    }

    #[test]
    fn phi_apply_catalog() {
        assert_eq!(PhiLaw::quasi_shuffle().phi_apply(y(1), y(2)).unwrap(), p("y3"));
        assert!(PhiLaw::shuffle().phi_apply(y(1), y(1)).unwrap().is_zero());
        assert_eq!(PhiLaw::q_stuffle().phi_apply(y(1), y(1)).unwrap(), p("q*y2"));
        assert_eq!(PhiLaw::min_shuffle().phi_apply(y(2), y(1)).unwrap(), p("-y3"));
        assert_eq!(PhiLaw::q_shuffle().phi_apply(y(2), y(3)).unwrap(), p("(q^6)*y5"));
    }

    #[test]
    fn letter_outside_table_alphabet() {
        let law = PhiLaw::q_infiltration(Alphabet::standard(1), Scalar::q());
        assert_eq!(law.phi_apply(y(1), y(2)), Err(Error::LetterOutsideAlphabet(2)));
        assert_eq!(law.phi_apply(y(1), y(1)).unwrap(), p("q*y1"));
    }

    #[test]
    fn weight_mismatch_detected() {
        let bad = PhiLaw::weight_additive("bad", |a, _| vec![(a, Scalar::one())]);
        assert!(matches!(bad.phi_apply(y(1), y(1)), Err(Error::WeightMismatch { .. })));
    }

    #[test]
    fn gamma_word_examples() {
        let law = PhiLaw::q_stuffle();
        let g = |s: &str| gamma_word(&law, &s.parse().unwrap()).unwrap();
        assert_eq!(g("y1"), p("y1"));
        assert_eq!(g("y1.y1"), p("q*y2"));
        assert_eq!(g("y1.y1.y1"), p("(q^2)*y3"));
        assert_eq!(gamma_word(&law, &Word::empty()), Err(Error::EmptyWord("structure constants")));
    }

    /// Sum over paths `γ^y_{x1,t1} γ^{t1}_{x2,t2} ⋯ γ^{t_{l−2}}_{x_{l−1},x_l}`.
    fn gamma_paths(law: &PhiLaw, w: &Word, y: Letter) -> Scalar {
        let xs = w.letters();
        if xs.len() == 1 {
            return if xs[0] == y { Scalar::one() } else { Scalar::zero() };
        }
        let alpha = law.alphabet_up_to(y.weight().max(w.weight()));
        let mut total = Scalar::zero();
        for (a, t, c) in law.contractions_onto(y).unwrap() {
            if a != xs[0] {
                continue;
            }
            if !alpha.contains(&t) && !law.is_finite_table() {
                continue;
            }
            let rest = w.slice(1, w.len());
            total += &(&c * &gamma_paths(law, &rest, t));
        }
        total
    }

    #[test]
    fn gamma_recursive_matches_path_sum() {
        for law in [
            PhiLaw::q_stuffle(),
            PhiLaw::quasi_shuffle(),
            PhiLaw::q_shuffle(),
            PhiLaw::shuffle(),
        ] {
            for w in Alphabet::standard(3).words_up_to(12) {
                if w.is_empty() || w.len() > 4 {
                    continue;
                }
                let g = gamma_word(&law, &w).unwrap();
                assert!(g.is_homogeneous(w.weight()), "{w}");
                let y = Letter::y(w.weight());
                assert_eq!(g.coeff(&Word::letter(y)), gamma_paths(&law, &w, y), "{w}");
            }
        }
    }

    #[test]
    fn qstuffle_analysis() {
        let r = analyze_law(&PhiLaw::q_stuffle(), 6);
        assert!(r.associative && r.commutative && r.graded);
        assert_eq!((r.dualizable, r.moderate), (Verdict::Yes, Verdict::Yes));
        for bound in 4..=9 {
            let s = analyze_law(&PhiLaw::q_stuffle(), bound);
            assert_eq!(
                (s.associative, s.commutative, s.dualizable, s.moderate),
                (r.associative, r.commutative, r.dualizable, r.moderate)
            );
        }
    }

    #[test]
    fn shuffle_all_true() {
        let r = analyze_law(&PhiLaw::shuffle(), 5);
        assert!(r.associative && r.commutative);
        assert_eq!((r.dualizable, r.moderate), (Verdict::Yes, Verdict::Yes));
    }

    #[test]
    fn infiltration_not_moderate() {
        let law = PhiLaw::q_infiltration(Alphabet::standard(1), Scalar::q());
        let r = analyze_law(&law, 3);
        assert!(r.associative && r.commutative);
        assert_eq!(r.dualizable, Verdict::Yes);
        assert_eq!(r.moderate, Verdict::No);
        assert_eq!(r.nilpotency_index, None);
        assert!(!r.graded);
    }

    #[test]
    fn nilpotent_table_is_moderate() {
        let alpha = Alphabet::standard(2);
        let law = PhiLaw::finite_table("square", alpha, [((1, 1), p("y2"))]).unwrap();
        let r = law.properties();
        assert_eq!(r.moderate, Verdict::Yes);
        assert_eq!(r.nilpotency_index, Some(2));
        assert!(r.graded);
    }

    #[test]
    fn non_commutative_and_non_associative_detected() {
        let skew = PhiLaw::weight_additive("skew", |a, b| {
            let c = if a.index() < b.index() { 1 } else { 0 };
            vec![(additive_letter(a, b), Scalar::from_i64(c))]
        });
        let r = analyze_law(&skew, 6);
        assert!(!r.commutative);
        let nonassoc = PhiLaw::weight_additive("nonassoc", |a, b| {
            vec![(additive_letter(a, b), Scalar::from_i64(a.index() as i64))]
        });
        assert!(!analyze_law(&nonassoc, 6).associative);
    }

    #[test]
    fn group_table_reports_inverse_pairs() {
        // Z/3 written multiplicatively on y1 (unit), y2, y3
        let alpha = Alphabet::standard(3);
        let law = PhiLaw::semigroup_shuffle("z3", alpha, |a, b| Some((a - 1 + b - 1) % 3 + 1)).unwrap();
        let r = law.properties();
        assert!(r.associative && r.commutative);
        assert_eq!(r.moderate, Verdict::No);
        assert!(r.notes.iter().any(|n| n.contains("muffle")));
    }

    #[test]
    fn builtin_lookup() {
        assert_eq!(PhiLaw::builtin("qstuffle").unwrap().name(), "qstuffle");
        let law = PhiLaw::builtin("qstuffle:1").unwrap();
        assert_eq!(law.phi_apply(y(1), y(1)).unwrap(), p("y2"));
        assert!(matches!(PhiLaw::builtin("nope"), Err(Error::UnknownLaw(_))));
    }
}
