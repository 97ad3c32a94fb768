//! Diagonal series, the Schützenberger factorization, and local
//! coordinates on group-like series.

use std::collections::BTreeMap;
use std::fmt;

use crate::alphabet::{cfl_factorization, is_lyndon, lyndon_up_to, Alphabet, LetterOrder, Word};
use crate::bases::Bases;
use crate::error::{Error, Result};
use crate::law::{PhiLaw, Property};
use crate::poly::{NCPoly, Tensor, TruncSeries};
use crate::products::{classify_element, ElementKind};
use crate::projectors::{double_exp, double_product, factorial};
use crate::scalar::Scalar;

const NEEDS: [Property; 5] = [
    Property::Moderate,
    Property::Dualizable,
    Property::Associative,
    Property::Commutative,
    Property::Graded,
];

/// `D_Y = Σ_{weight(w) ≤ bound} w⊗w`.
pub fn diagonal(alphabet: &Alphabet, weight_bound: u32) -> Tensor {
    let mut t = Tensor::zero(2);
    for w in alphabet.restrict(weight_bound).words_up_to(weight_bound) {
        t.add_term(vec![w.clone(), w], &Scalar::one());
    }
    t
}

/// Lyndon words of weight at most `bound`, largest first.
fn lyndon_decreasing(law: &PhiLaw, bound: u32) -> Result<Vec<Word>> {
    let mut ls = lyndon_up_to(&law.alphabet_up_to(bound), LetterOrder::default(), bound)?;
    ls.reverse();
    Ok(ls)
}

/// `∏↘_l exp(Σ_l⊗Π_l)` in the double algebra, both legs cut at `bound`.
///
/// The right legs use `Π_l`. With the classical `P_l` instead the product
/// matches the diagonal only for the plain shuffle.
pub fn schutzenberger(law: &PhiLaw, weight_bound: u32) -> Result<Tensor> {
    law.require("schutzenberger", &NEEDS)?;
    let mut b = Bases::new(law)?;
    let mut acc = Tensor::one(2);
    for l in lyndon_decreasing(law, weight_bound)? {
        let factor = double_exp(
            law,
            &Tensor::product_of(&[b.sigma(&l)?, b.pi(&l)?]),
            weight_bound,
        )?;
        acc = double_product(law, &acc, &factor, weight_bound)?;
    }
    Ok(acc)
}

/// `Σ_{weight(w) ≤ bound} Σ_w⊗Π_w`.
pub fn sigma_pi_sum(law: &PhiLaw, weight_bound: u32) -> Result<Tensor> {
    law.require("schutzenberger", &NEEDS)?;
    let mut b = Bases::new(law)?;
    let mut acc = Tensor::zero(2);
    for w in law.alphabet_up_to(weight_bound).words_up_to(weight_bound) {
        acc.add_scaled(&Tensor::product_of(&[b.sigma(&w)?, b.pi(&w)?]), &Scalar::one());
    }
    Ok(acc.truncate(weight_bound))
}

/// Coordinates `c_l` of a group-like series, one per Lyndon word of weight
/// at most the bound.
#[derive(Clone, Debug)]
pub struct CoordinateChart {
    law: PhiLaw,
    weight_bound: u32,
    coords: BTreeMap<Word, Scalar>,
}

impl CoordinateChart {
    /// A chart with the given coordinates; unlisted Lyndon words get 0.
    pub fn new(
        law: &PhiLaw,
        weight_bound: u32,
        given: impl IntoIterator<Item = (Word, Scalar)>,
    ) -> Result<CoordinateChart> {
        law.require("reconstruct", &NEEDS)?;
        let mut coords: BTreeMap<Word, Scalar> = lyndon_decreasing(law, weight_bound)?
            .into_iter()
            .map(|l| (l, Scalar::zero()))
            .collect();
        for (w, c) in given {
            match coords.get_mut(&w) {
                Some(slot) => *slot = c,
                None => {
                    let why = if is_lyndon(&w, LetterOrder::default()) {
                        "has weight above the chart bound"
                    } else {
                        "is not a Lyndon word"
                    };
                    return Err(Error::Parse(format!("coordinate `{w}` {why}")));
                }
            }
        }
        Ok(CoordinateChart {
            law: law.clone(),
            weight_bound,
            coords,
        })
    }

    pub fn law(&self) -> &PhiLaw {
        &self.law
    }

    pub fn weight_bound(&self) -> u32 {
        self.weight_bound
    }

    pub fn coord(&self, l: &Word) -> Option<&Scalar> {
        self.coords.get(l)
    }

    /// `(l, c_l)` with `l` decreasing for the Lyndon order.
    pub fn entries_decreasing(&self) -> Vec<(&Word, &Scalar)> {
        let mut v: Vec<_> = self.coords.iter().collect();
        v.sort_by(|a, b| LetterOrder::default().cmp_words(b.0, a.0));
        v
    }
}

/// Lines `COORD <lyndon-word> = <scalar>`, decreasing.
impl fmt::Display for CoordinateChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lines: Vec<String> = self
            .entries_decreasing()
            .into_iter()
            .map(|(l, c)| format!("COORD {l} = {c}"))
            .collect();
        f.write_str(&lines.join("\n"))
    }
}

/// `c_l = ⟨S, Σ_l⟩`, after checking that `S` is group-like at its bound.
pub fn local_coordinates(law: &PhiLaw, s: &TruncSeries) -> Result<CoordinateChart> {
    law.require("local_coordinates", &NEEDS)?;
    if classify_element(law, s)?.kind != ElementKind::GroupLike {
        return Err(Error::NotGroupLike);
    }
    let mut b = Bases::new(law)?;
    let mut coords = Vec::new();
    for l in lyndon_decreasing(law, s.bound())? {
        coords.push((l.clone(), s.poly().pair(&b.sigma(&l)?)));
    }
    CoordinateChart::new(law, s.bound(), coords)
}

/// `∏↘_l exp(c_l·Π_l)` under concatenation, cut at the chart bound.
pub fn reconstruct(chart: &CoordinateChart) -> Result<TruncSeries> {
    let mut b = Bases::new(&chart.law)?;
    let n = chart.weight_bound;
    let mut acc = TruncSeries::one(n);
    for (l, c) in chart.entries_decreasing() {
        if c.is_zero() {
            continue;
        }
        let factor = TruncSeries::new(b.pi(l)?.scale(c), n).exp()?;
        acc = acc.conc(&factor);
    }
    Ok(acc)
}

/// `(χ⊗id)(D_Y) = Σ_w χ(Σ_w)·Π_w` for the `⧢φ`-character with `χ(Σ_l) = values[l]`
/// on Lyndon words (unlisted ones map to 0). Divided powers along the CFL
/// factorization give `χ(Σ_w) = ∏ χ(Σ_l)^i / i!`.
pub fn character_series(
    law: &PhiLaw,
    weight_bound: u32,
    values: &BTreeMap<Word, Scalar>,
) -> Result<TruncSeries> {
    law.require("character_series", &NEEDS)?;
    let mut b = Bases::new(law)?;
    let mut acc = NCPoly::zero();
    for w in law.alphabet_up_to(weight_bound).words_up_to(weight_bound) {
        let mut c = Scalar::one();
        for (l, i) in cfl_factorization(&w, LetterOrder::default()) {
            let v = values.get(&l).cloned().unwrap_or_default();
            c = &c * &(&v.pow(i as u32) * &factorial(i).recip()?);
        }
        if !c.is_zero() {
            acc.add_scaled(&b.pi(&w)?, &c);
        }
    }
    Ok(TruncSeries::new(acc, weight_bound))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> NCPoly {
        text.parse().unwrap()
    }

    fn w(text: &str) -> Word {
        text.parse().unwrap()
    }

    #[test]
    fn diagonal_examples() {
        let a = Alphabet::standard(2);
        assert_eq!(diagonal(&a, 0), Tensor::one(2));
        assert_eq!(diagonal(&a, 1).to_string(), "1⊗1 + y1⊗y1");
        assert_eq!(diagonal(&a, 2).len(), 4);
    }

    #[test]
    fn factorization_matches_diagonal() {
        for law in [PhiLaw::shuffle(), PhiLaw::q_stuffle()] {
            for n in 1..=3 {
                let a = law.alphabet_up_to(n);
                assert_eq!(schutzenberger(&law, n).unwrap(), diagonal(&a, n), "{} {n}", law.name());
                assert_eq!(sigma_pi_sum(&law, n).unwrap(), diagonal(&a, n));
            }
        }
        assert_eq!(
            schutzenberger(&PhiLaw::q_stuffle(), 1).unwrap().to_string(),
            "1⊗1 + y1⊗y1"
        );
    }

    #[test]
    fn coordinate_examples() {
        let law = PhiLaw::q_stuffle();
        let trivial = local_coordinates(&law, &TruncSeries::one(3)).unwrap();
        assert!(trivial.entries_decreasing().iter().all(|(_, c)| c.is_zero()));
        let c = Scalar::from_ratio(3, 2);
        let s = TruncSeries::new(p("y1").scale(&c), 3).exp().unwrap();
        let chart = local_coordinates(&law, &s).unwrap();
        for (l, v) in chart.entries_decreasing() {
            let expect = if *l == w("y1") { c.clone() } else { Scalar::zero() };
            assert_eq!(*v, expect, "{l}");
        }
        assert_eq!(
            local_coordinates(&law, &TruncSeries::new(p("1 + y1"), 2)).unwrap_err(),
            Error::NotGroupLike
        );
    }

    #[test]
    fn reconstruct_examples() {
        let law = PhiLaw::q_stuffle();
        let empty = CoordinateChart::new(&law, 2, []).unwrap();
        assert_eq!(reconstruct(&empty).unwrap(), TruncSeries::one(2));
        let chart = CoordinateChart::new(&law, 2, [(w("y1"), Scalar::from_i64(2))]).unwrap();
        assert_eq!(reconstruct(&chart).unwrap().poly(), &p("1 + 2*y1 + 2*y1.y1"));
        assert!(CoordinateChart::new(&law, 2, [(w("y1.y2"), Scalar::one())]).is_err());
    }

    #[test]
    fn round_trip_two_factors() {
        let law = PhiLaw::q_stuffle();
        let mut b = Bases::new(&law).unwrap();
        let lie = &b.pi(&w("y1")).unwrap().scale(&Scalar::from_i64(2))
            + &b.pi(&w("y2.y1")).unwrap().scale(&Scalar::from_ratio(1, 3));
        let s = TruncSeries::new(lie, 4).exp().unwrap();
        let chart = local_coordinates(&law, &s).unwrap();
        assert_eq!(reconstruct(&chart).unwrap(), s);
    }

    #[test]
    fn character_coordinates() {
        let law = PhiLaw::q_stuffle();
        let values: BTreeMap<Word, Scalar> = [
            (w("y1"), Scalar::from_i64(2)),
            (w("y2"), Scalar::from_ratio(-1, 3)),
            (w("y2.y1"), Scalar::q()),
            (w("y3"), Scalar::from_i64(5)),
        ]
        .into_iter()
        .collect();
        let s = character_series(&law, 3, &values).unwrap();
        let chart = local_coordinates(&law, &s).unwrap();
        for (l, c) in chart.entries_decreasing() {
            assert_eq!(*c, values.get(l).cloned().unwrap_or_default(), "{l}");
        }
        assert_eq!(reconstruct(&chart).unwrap(), s);
        assert_eq!(chart.to_string().lines().next().unwrap(), "COORD y1 = 2");
    }

    #[test]
    fn letterwise_character_is_not_grouplike() {
        // χ(w) = ∏ χ(letters) is a conc-character, not a ⧢φ-character
        let s = TruncSeries::new(p("1 + 2*y1 + 4*y1.y1 + 3*y2"), 2);
        assert_eq!(local_coordinates(&PhiLaw::q_stuffle(), &s).unwrap_err(), Error::NotGroupLike);
    }
}
