//! Structural identities, checked exhaustively on small weights or on
//! random inputs.

use std::collections::BTreeMap;

use phishuffle::alphabet::{cfl_factorization, lyndon_up_to};
use phishuffle::bases::{Bases, MapMode};
use phishuffle::factorization::{
    diagonal, local_coordinates, reconstruct, schutzenberger, sigma_pi_sum, CoordinateChart,
};
use phishuffle::law::gamma_word;
use phishuffle::linalg::{intersection_dim, span_rank};
use phishuffle::products::{
    classify_element, delta_phi, phi_shuffle, phi_shuffle_words, reduced_coproduct, ElementKind,
};
use phishuffle::projectors::{pi1, Eulerian, Side};
use phishuffle::{LetterOrder, NCPoly, PhiLaw, Scalar, Tensor, TruncSeries, Word};
use proptest::prelude::*;

fn words(law: &PhiLaw, bound: u32) -> Vec<Word> {
    law.alphabet_up_to(bound).words_up_to(bound)
}

fn nonempty(law: &PhiLaw, bound: u32) -> Vec<Word> {
    words(law, bound).into_iter().filter(|w| !w.is_empty()).collect()
}

fn lyndon(law: &PhiLaw, bound: u32) -> Vec<Word> {
    lyndon_up_to(&law.alphabet_up_to(bound), LetterOrder::default(), bound).unwrap()
}

fn word(w: &Word) -> NCPoly {
    NCPoly::word(w.clone())
}

fn catalog() -> Vec<PhiLaw> {
    vec![
        PhiLaw::shuffle(),
        PhiLaw::q_stuffle(),
        PhiLaw::quasi_shuffle(),
        PhiLaw::min_shuffle(),
        PhiLaw::q_shuffle(),
    ]
}

fn rational(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

#[test]
fn phi_shuffle_commutative_to_weight_6() {
    for law in catalog() {
        let ws = nonempty(&law, 6);
        for u in &ws {
            for v in ws.iter().filter(|v| u.weight() + v.weight() <= 6 && u <= *v) {
                let uv = phi_shuffle_words(&law, u, v).unwrap();
                assert_eq!(uv, phi_shuffle_words(&law, v, u).unwrap(), "{} {u} {v}", law.name());
            }
        }
    }
}

#[test]
fn phi_shuffle_associative_to_weight_6() {
    for law in [PhiLaw::q_stuffle(), PhiLaw::min_shuffle(), PhiLaw::q_shuffle()] {
        let ws = nonempty(&law, 4);
        for u in &ws {
            for v in ws.iter().filter(|v| u.weight() + v.weight() <= 5) {
                let uv = phi_shuffle_words(&law, u, v).unwrap();
                for w in ws.iter().filter(|w| u.weight() + v.weight() + w.weight() <= 6) {
                    let left = phi_shuffle(&law, &uv, &word(w)).unwrap();
                    let vw = phi_shuffle_words(&law, v, w).unwrap();
                    let right = phi_shuffle(&law, &word(u), &vw).unwrap();
                    assert_eq!(left, right, "{} ({u},{v},{w})", law.name());
                }
            }
        }
    }
}

#[test]
fn coproduct_dual_to_product_to_weight_5() {
    for law in [PhiLaw::q_stuffle(), PhiLaw::shuffle()] {
        let ws = words(&law, 5);
        let deltas: BTreeMap<&Word, Tensor> =
            ws.iter().map(|w| (w, delta_phi(&law, &word(w), 2).unwrap())).collect();
        let mut seen = 0;
        for u in &ws {
            for v in ws.iter().filter(|v| u.weight() + v.weight() <= 5) {
                let uv = phi_shuffle_words(&law, u, v).unwrap();
                for w in ws.iter().filter(|w| w.weight() == u.weight() + v.weight()) {
                    let key = [u.clone(), v.clone()];
                    assert_eq!(uv.coeff(w), deltas[w].coeff(&key), "<{u} ⧢ {v}, {w}>");
                    if !uv.coeff(w).is_zero() {
                        seen += 1;
                    }
                }
            }
        }
        // every coproduct term is accounted for by some product
        let total: usize = deltas.values().map(Tensor::len).sum();
        assert_eq!(seen, total, "{}", law.name());
    }
}

fn small_poly(law: &PhiLaw, max_weight: u32) -> impl Strategy<Value = NCPoly> {
    let ws = words(law, max_weight);
    prop::collection::vec((prop::sample::select(ws), -3i64..=3), 0..4)
        .prop_map(|terms| NCPoly::from_terms(terms.into_iter().map(|(w, c)| (w, Scalar::from_i64(c)))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coproduct_is_conc_morphism(
        p in small_poly(&PhiLaw::q_stuffle(), 4),
        q in small_poly(&PhiLaw::q_stuffle(), 4),
    ) {
        let law = PhiLaw::q_stuffle();
        let lhs = delta_phi(&law, &p.conc(&q), 2).unwrap();
        let rhs = delta_phi(&law, &p, 2).unwrap().conc(&delta_phi(&law, &q, 2).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn grouplike_iff_log_primitive(
        coeffs in prop::collection::vec((-4i64..=4, 1i64..=3), 7),
        noise in prop::option::of((0usize..8, -2i64..=2)),
    ) {
        let law = PhiLaw::q_stuffle();
        let mut b = Bases::new(&law).unwrap();
        let ls = lyndon(&law, 4);
        let mut lie = NCPoly::zero();
        for (l, (n, d)) in ls.iter().zip(&coeffs) {
            lie.add_scaled(&b.pi(l).unwrap(), &rational(*n, *d));
        }
        let expect_primitive = match noise {
            Some((i, c)) if c != 0 => {
                let ws = nonempty(&law, 4);
                // a single word of length >= 2 is never primitive
                let extra = word(&ws[i % ws.len()]).conc(&NCPoly::word("y1".parse().unwrap()));
                lie.add_scaled(&extra.truncate(4), &Scalar::from_i64(c));
                extra.truncate(4).is_zero()
            }
            _ => true,
        };
        let s = TruncSeries::new(lie.clone(), 4).exp().unwrap();
        let log = s.log().unwrap();
        let s_kind = classify_element(&law, &s).unwrap().kind;
        let log_kind = classify_element(&law, &log).unwrap().kind;
        prop_assert_eq!(s_kind == ElementKind::GroupLike, log_kind == ElementKind::Primitive);
        prop_assert_eq!(log_kind == ElementKind::Primitive, expect_primitive);
    }
}

#[test]
fn grouplike_series_form_a_group() {
    let law = PhiLaw::q_stuffle();
    let mut b = Bases::new(&law).unwrap();
    let ls = lyndon(&law, 4);
    let a = TruncSeries::new(b.pi(&ls[0]).unwrap().scale(&rational(2, 3)), 4).exp().unwrap();
    let c = TruncSeries::new(
        &b.pi(&ls[1]).unwrap() + &b.pi(&ls[ls.len() - 1]).unwrap().scale(&rational(-1, 2)),
        4,
    )
    .exp()
    .unwrap();
    for s in [a.conc(&c), c.conc(&a)] {
        assert_eq!(classify_element(&law, &s).unwrap().kind, ElementKind::GroupLike);
    }
}

#[test]
fn bracket_of_primitives_is_primitive() {
    let law = PhiLaw::q_stuffle();
    let mut b = Bases::new(&law).unwrap();
    let prims: Vec<NCPoly> = lyndon(&law, 4).iter().map(|l| b.pi(l).unwrap()).collect();
    for x in &prims {
        for y in &prims {
            let br = x.bracket(y).truncate(5);
            if br.is_zero() {
                continue;
            }
            assert!(reduced_coproduct(&law, &br).unwrap().is_zero(), "[{x}, {y}]");
        }
    }
}

/// For primitive `S_i`, `Δ(S_1⋯S_m) = Σ_{I ⊔ J} S_I ⊗ S_J` over ordered
/// splittings of the index set.
#[test]
fn coproduct_of_products_of_primitives() {
    let law = PhiLaw::q_stuffle();
    let mut b = Bases::new(&law).unwrap();
    let prims: Vec<NCPoly> = lyndon(&law, 2).iter().map(|l| b.pi(l).unwrap()).collect();
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..3 {
        let next: Vec<Vec<usize>> = tuples
            .iter()
            .flat_map(|t| (0..prims.len()).map(move |i| [t.clone(), vec![i]].concat()))
            .collect();
        for idx in &next {
            let product = idx.iter().fold(NCPoly::one(), |acc, &i| acc.conc(&prims[i]));
            let mut expect = Tensor::zero(2);
            for mask in 0..(1u32 << idx.len()) {
                let (mut left, mut right) = (NCPoly::one(), NCPoly::one());
                for (k, &i) in idx.iter().enumerate() {
                    if mask & (1 << k) != 0 {
                        left = left.conc(&prims[i]);
                    } else {
                        right = right.conc(&prims[i]);
                    }
                }
                expect.add_scaled(&Tensor::product_of(&[left, right]), &Scalar::one());
            }
            assert_eq!(delta_phi(&law, &product, 2).unwrap(), expect, "{idx:?}");
        }
        tuples = next;
    }
}

#[test]
fn pi1_adjoint_projector_and_primitive() {
    for law in [PhiLaw::q_stuffle(), PhiLaw::shuffle()] {
        let mut e = Eulerian::new(&law);
        let ws = nonempty(&law, 5);
        for v in &ws {
            let p = e.pi1(v).unwrap();
            assert_eq!(p.map_linear(|u| e.pi1(u)).unwrap(), p, "pi1 pi1 ({v})");
            assert!(reduced_coproduct(&law, &p).unwrap().is_zero(), "pi1({v})");
            for u in ws.iter().filter(|u| u.weight() == v.weight()) {
                let lhs = e.check_pi1(u).unwrap().coeff(v);
                assert_eq!(lhs, p.coeff(u), "<check pi1({u}), {v}>");
            }
        }
    }
}

#[test]
fn pi1_module_functions_agree_with_cache() {
    let law = PhiLaw::q_stuffle();
    let mut e = Eulerian::new(&law);
    let p: NCPoly = "y1.y2 - 3*y2.y1 + y3".parse().unwrap();
    let direct = p.map_linear(|w| e.pi1(w)).unwrap();
    assert_eq!(pi1(&law, &p, Side::Standard).unwrap(), direct);
}

#[test]
fn basis_change_is_unitriangular() {
    let law = PhiLaw::q_stuffle();
    let mut b = Bases::new(&law).unwrap();
    for w in nonempty(&law, 5) {
        let f = b.map(&word(&w), MapMode::Forward).unwrap();
        let a = b.map(&word(&w), MapMode::Adjoint).unwrap();
        assert_eq!(f.coeff(&w), Scalar::one());
        assert_eq!(a.coeff(&w), Scalar::one());
        for (v, _) in f.terms().filter(|(v, _)| **v != w) {
            assert_eq!(v.weight(), w.weight());
            assert!(v.len() > w.len(), "forward({w}) has {v}");
        }
        for (v, _) in a.terms().filter(|(v, _)| **v != w) {
            assert_eq!(v.weight(), w.weight());
            assert!(v.len() < w.len(), "adjoint({w}) has {v}");
        }
    }
}

#[test]
fn sigma_multiplicative_to_weight_5() {
    let law = PhiLaw::q_stuffle();
    let mut b = Bases::new(&law).unwrap();
    for w in nonempty(&law, 5) {
        let mut acc = NCPoly::one();
        let mut denom = 1i64;
        for (l, i) in cfl_factorization(&w, LetterOrder::default()) {
            let s = b.sigma(&l).unwrap();
            for k in 1..=i {
                acc = phi_shuffle(&law, &acc, &s).unwrap();
                denom *= k as i64;
            }
        }
        let sigma = b.sigma(&w).unwrap();
        assert_eq!(sigma, acc.scale(&rational(1, denom)), "SIGMA_{w}");
        assert!(sigma.is_homogeneous(w.weight()));
        assert_eq!(sigma.coeff(&w), Scalar::one());
    }
}

#[test]
fn factorization_for_four_laws() {
    for law in [
        PhiLaw::shuffle(),
        PhiLaw::q_stuffle(),
        PhiLaw::quasi_shuffle(),
        PhiLaw::min_shuffle(),
    ] {
        for n in 1..=4 {
            let d = diagonal(&law.alphabet_up_to(n), n);
            assert_eq!(sigma_pi_sum(&law, n).unwrap(), d, "{} {n}", law.name());
            if n < 4 {
                assert_eq!(schutzenberger(&law, n).unwrap(), d, "{} {n}", law.name());
            }
        }
    }
}

#[test]
fn reconstruct_depends_on_factor_order() {
    let law = PhiLaw::q_stuffle();
    let mut b = Bases::new(&law).unwrap();
    let (y1, y2): (Word, Word) = ("y1".parse().unwrap(), "y2".parse().unwrap());
    let (c1, c2) = (rational(1, 2), rational(3, 1));
    let chart = CoordinateChart::new(&law, 4, [(y1.clone(), c1.clone()), (y2.clone(), c2.clone())])
        .unwrap();
    let e1 = TruncSeries::new(b.pi(&y1).unwrap().scale(&c1), 4).exp().unwrap();
    let e2 = TruncSeries::new(b.pi(&y2).unwrap().scale(&c2), 4).exp().unwrap();
    let s = reconstruct(&chart).unwrap();
    assert_eq!(s, e1.conc(&e2));
    assert_ne!(s, e2.conc(&e1));
    assert_eq!(local_coordinates(&law, &s).unwrap().coord(&y2), Some(&c2));
}

/// The complement of the primitive image is spanned both by the
/// nontrivial products and by the image of `Σ_{n≥2} πₙ`. Whether those two
/// spans coincide is only reported.
#[test]
fn ree_complements() {
    for law in [PhiLaw::q_stuffle(), PhiLaw::shuffle()] {
        let mut e = Eulerian::new(&law);
        for n in 2..=4u32 {
            let alpha = law.alphabet_up_to(n);
            let comp = alpha.words_of_weight(n);
            let prim: Vec<NCPoly> = comp.iter().map(|w| e.pi1(w).unwrap()).collect();
            let higher: Vec<NCPoly> = comp
                .iter()
                .map(|w| &word(w) - &(&e.pi_n(w, 0).unwrap() + &e.pi1(w).unwrap()))
                .collect();
            let mut products = Vec::new();
            for k in 1..n {
                for u in alpha.words_of_weight(k) {
                    for v in alpha.words_of_weight(n - k) {
                        products.push(phi_shuffle_words(&law, &u, &v).unwrap());
                    }
                }
            }
            let r = span_rank(&prim);
            assert_eq!(span_rank(&higher) + r, comp.len());
            assert_eq!(span_rank(&products) + r, comp.len());
            assert_eq!(intersection_dim(&prim, &higher), 0);
            let shared = intersection_dim(&higher, &products);
            println!(
                "{} weight {n}: dim(products ∩ higher images) = {shared} of {}",
                law.name(),
                comp.len() - r
            );
        }
    }
}

#[test]
fn gamma_extends_letterwise() {
    for law in [PhiLaw::q_stuffle(), PhiLaw::min_shuffle(), PhiLaw::q_shuffle()] {
        for w in nonempty(&law, 6).into_iter().filter(|w| w.len() >= 2) {
            let head = NCPoly::word(w.slice(0, 1));
            let tail = gamma_word(&law, &w.slice(1, w.len())).unwrap();
            let expect = law.phi_linear(&head, &tail).unwrap();
            assert_eq!(gamma_word(&law, &w).unwrap(), expect, "{} {w}", law.name());
            assert!(expect.is_homogeneous(w.weight()));
        }
    }
}
