//! Rank two straightening checked against the quantum shuffle model.

mod common;

use proptest::prelude::*;

use common::{qpow, sample_points, ShuffleModel};
use qfrob::cyclo::{q_int, LaurentPoly};
use qfrob::pbw2::{PbwAlgebra2, PbwExpression, PbwMonomial, Rank2Type, RuleSet};
use qfrob::rootsys::Root;
use qfrob::Error;

fn r(a: i64, b: i64) -> Root {
    Root(vec![a, b])
}

fn qp(e: i64) -> LaurentPoly {
    LaurentPoly::q_pow(e)
}

fn kinds() -> [Rank2Type; 5] {
    [Rank2Type::A1xA1, Rank2Type::A2 { d: 1 }, Rank2Type::A2 { d: 2 }, Rank2Type::B2, Rank2Type::G2]
}

/// `E_a^(x) E_b^(y)` straightened by the engine equals the shuffle product.
fn product_agrees(alg: &PbwAlgebra2, model: &ShuffleModel, (pa, x): (usize, u32), (pb, y): (usize, u32)) -> bool {
    let e = alg.straighten_positions(&[(pa, x), (pb, y)]).unwrap();
    model.mul(&model.divided(pa, x), &model.divided(pb, y)) == model.expression(&e)
}

#[test]
fn model_lengths_match_engine() {
    for k in kinds() {
        let alg = PbwAlgebra2::new(k);
        let model = ShuffleModel::new(k, sample_points()[0]);
        assert!(model.check_lengths(&alg), "{k}");
    }
}

#[test]
fn every_b2_pair_up_to_three() {
    let alg = PbwAlgebra2::new(Rank2Type::B2);
    let model = ShuffleModel::new(Rank2Type::B2, sample_points()[1]);
    for pa in 0..4 {
        for pb in 0..pa {
            for x in 1..=3 {
                for y in 1..=3 {
                    assert!(product_agrees(&alg, &model, (pa, x), (pb, y)), "positions {pa},{pb} exponents {x},{y}");
                }
            }
        }
    }
}

#[test]
fn every_g2_pair_up_to_two() {
    let alg = PbwAlgebra2::new(Rank2Type::G2);
    let model = ShuffleModel::new(Rank2Type::G2, sample_points()[2]);
    for pa in 0..6 {
        for pb in 0..pa {
            for x in 1..=2 {
                for y in 1..=2 {
                    if height(&alg, &[(pa, x), (pb, y)]) > 12 {
                        continue;
                    }
                    assert!(product_agrees(&alg, &model, (pa, x), (pb, y)), "positions {pa},{pb} exponents {x},{y}");
                }
            }
        }
    }
}

#[test]
fn g2_quoted_instances_match_model() {
    let alg = PbwAlgebra2::new(Rank2Type::G2);
    let model = ShuffleModel::new(Rank2Type::G2, sample_points()[0]);
    let words: [(&str, u32, &str, u32); 10] = [
        ("1", 1, "2", 2),
        ("1", 1, "12", 3),
        ("1", 1, "112", 2),
        ("1", 2, "2", 1),
        ("1", 3, "2", 1),
        ("11122", 1, "2", 1),
        ("1", 1, "11122", 2),
        ("112", 2, "2", 1),
        ("112", 3, "2", 1),
        ("1112", 1, "2", 1),
    ];
    for (a, x, b, y) in words {
        let pa = alg.position_of_label(a).unwrap();
        let pb = alg.position_of_label(b).unwrap();
        assert!(product_agrees(&alg, &model, (pa, x), (pb, y)), "E{a}^({x}) E{b}^({y})");
    }
}

#[test]
fn g2_a8_square_instance_sign() {
    let alg = PbwAlgebra2::new(Rank2Type::G2);
    let model = ShuffleModel::new(Rank2Type::G2, sample_points()[0]);
    let got = alg.straighten(&[(r(2, 1), 2), (r(0, 1), 1)]).unwrap();
    let mono = |f: &[(&str, u32)]| alg.monomial(f).unwrap();
    let q2 = q_int(2, 1);
    let c11122 = &qp(-2) * &(&qp(-3) - &qp(3));
    let c112 = &q2 * &(&qp(-1) - &qp(1));
    let corrected = PbwExpression::from_terms([
        (mono(&[("2", 1), ("112", 2)]), LaurentPoly::one()),
        (mono(&[("12", 1), ("11122", 1)]), c11122.clone()),
        (mono(&[("12", 2), ("112", 1)]), c112.clone()),
    ]);
    assert_eq!(got, corrected);
    let flipped = PbwExpression::from_terms([
        (mono(&[("2", 1), ("112", 2)]), LaurentPoly::one()),
        (mono(&[("12", 1), ("11122", 1)]), c11122),
        (mono(&[("12", 2), ("112", 1)]), -&c112),
    ]);
    let lhs = model.mul(&model.divided(3, 2), &model.divided(0, 1));
    assert_eq!(lhs, model.expression(&corrected));
    assert_ne!(lhs, model.expression(&flipped));
}

#[test]
fn g2_elementary_rules_rebuild_quoted_instances() {
    let closed = PbwAlgebra2::with_rules(Rank2Type::G2, RuleSet::Closed);
    let elementary = PbwAlgebra2::with_rules(Rank2Type::G2, RuleSet::Elementary);
    for pa in 0..6 {
        for pb in 0..pa {
            for x in 1..=3 {
                for y in 1..=3 {
                    if x * y > 6 {
                        continue;
                    }
                    let word = [(pa, x), (pb, y)];
                    assert_eq!(closed.straighten_positions(&word).unwrap(), elementary.straighten_positions(&word).unwrap(), "{word:?}");
                }
            }
        }
    }
}

#[test]
fn quoted_only_gap_is_reported() {
    let alg = PbwAlgebra2::with_rules(Rank2Type::G2, RuleSet::QuotedOnly);
    for (a, b) in [(r(1, 0), r(3, 2)), (r(2, 1), r(0, 1)), (r(2, 1), r(1, 1))] {
        let err = alg.straighten(&[(a.clone(), 1), (b.clone(), 1)]).unwrap_err();
        assert!(matches!(err, Error::RuleGap(_)), "{a:?} {b:?}: {err}");
    }
    let quoted = alg.straighten(&[(r(1, 0), 3), (r(0, 1), 1)]).unwrap();
    assert_eq!(quoted, PbwAlgebra2::new(Rank2Type::G2).straighten(&[(r(1, 0), 3), (r(0, 1), 1)]).unwrap());
}

#[test]
fn a1xa1_generators_commute() {
    let alg = PbwAlgebra2::new(Rank2Type::A1xA1);
    let e = alg.commutator(&r(1, 0), 3, &r(0, 1), 2).unwrap();
    assert!(e.is_zero());
}

#[test]
fn normal_words_are_fixed() {
    for k in kinds() {
        let alg = PbwAlgebra2::new(k);
        let n = alg.roots().len();
        let word: Vec<(usize, u32)> = (0..n).map(|p| (p, (p % 3) as u32 + 1)).collect();
        let m = PbwMonomial(word.clone());
        assert!(m.is_normal());
        assert_eq!(alg.straighten_positions(&word).unwrap(), PbwExpression::term(m, LaurentPoly::one()), "{k}");
    }
}

/// Total height of a word, which bounds the length of its shuffle image.
fn height(alg: &PbwAlgebra2, word: &[(usize, u32)]) -> i64 {
    word.iter().map(|&(p, x)| alg.roots()[p].height() * x as i64).sum()
}

fn word_strategy(n: usize, max_exp: u32, max_len: usize) -> impl Strategy<Value = Vec<(usize, u32)>> {
    prop::collection::vec((0..n, 1..=max_exp), 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn a2_b2_words_match_model(t in 0usize..3, word in word_strategy(4, 3, 3)) {
        let kind = [Rank2Type::A2 { d: 1 }, Rank2Type::A2 { d: 2 }, Rank2Type::B2][t];
        let alg = PbwAlgebra2::new(kind);
        let n = alg.roots().len();
        let word: Vec<(usize, u32)> = word.into_iter().map(|(p, e)| (p % n, e)).collect();
        let model = ShuffleModel::new(kind, sample_points()[t]);
        let e = alg.straighten_positions(&word).unwrap();
        let parts: Vec<_> = word.iter().map(|&(p, x)| model.divided(p, x)).collect();
        prop_assert_eq!(model.mul_all(&parts), model.expression(&e));
    }

    #[test]
    fn g2_words_match_model(word in word_strategy(6, 2, 3)) {
        let alg = PbwAlgebra2::new(Rank2Type::G2);
        prop_assume!(height(&alg, &word) <= 12);
        let model = ShuffleModel::new(Rank2Type::G2, sample_points()[0]);
        let e = alg.straighten_positions(&word).unwrap();
        let parts: Vec<_> = word.iter().map(|&(p, x)| model.divided(p, x)).collect();
        prop_assert_eq!(model.mul_all(&parts), model.expression(&e));
    }

    #[test]
    fn straightening_is_associative(t in 0usize..4, word in word_strategy(6, 3, 4), cut in 1usize..4) {
        let kind = [Rank2Type::A2 { d: 1 }, Rank2Type::B2, Rank2Type::G2, Rank2Type::A1xA1][t];
        let alg = PbwAlgebra2::new(kind);
        let n = alg.roots().len();
        let cap = if kind == Rank2Type::G2 { 2 } else { 3 };
        let word: Vec<(usize, u32)> = word.into_iter().map(|(p, e)| (p % n, e.min(cap))).collect();
        let cut = cut.min(word.len().saturating_sub(1)).max(1).min(word.len());
        let whole = alg.straighten_positions(&word).unwrap();
        let left = alg.straighten_positions(&word[..cut]).unwrap();
        let right = alg.straighten_positions(&word[cut..]).unwrap();
        prop_assert_eq!(alg.mul(&left, &right).unwrap(), whole);
    }

    #[test]
    fn closed_and_elementary_agree(t in 0usize..3, word in word_strategy(4, 4, 3)) {
        let kind = [Rank2Type::A2 { d: 1 }, Rank2Type::A2 { d: 3 }, Rank2Type::B2][t];
        let closed = PbwAlgebra2::with_rules(kind, RuleSet::Closed);
        let elementary = PbwAlgebra2::with_rules(kind, RuleSet::Elementary);
        let n = closed.roots().len();
        let word: Vec<(usize, u32)> = word.into_iter().map(|(p, e)| (p % n, e)).collect();
        prop_assert_eq!(closed.straighten_positions(&word).unwrap(), elementary.straighten_positions(&word).unwrap());
    }

    #[test]
    fn commutator_matches_model(t in 0usize..3, pa in 0usize..6, pb in 0usize..6, x in 1u32..=3, y in 1u32..=3) {
        let kind = [Rank2Type::A2 { d: 1 }, Rank2Type::B2, Rank2Type::G2][t];
        let alg = PbwAlgebra2::new(kind);
        let n = alg.roots().len();
        let (pa, pb) = (pa % n, pb % n);
        let (x, y) = if kind == Rank2Type::G2 { (x.min(2), y.min(2)) } else { (x, y) };
        prop_assume!(height(&alg, &[(pa, x), (pb, y)]) <= 12);
        let (a, b) = (alg.roots()[pa].clone(), alg.roots()[pb].clone());
        let e = alg.commutator(&a, x, &b, y).unwrap();
        let model = ShuffleModel::new(kind, sample_points()[1]);
        let (xa, yb) = (model.divided(pa, x), model.divided(pb, y));
        let k = qpow(&model.q, alg.pairing(&a, &b) * (x * y) as i64);
        let lhs = model.mul(&xa, &yb).sub(&model.mul(&yb, &xa).scale(&k));
        prop_assert_eq!(lhs, model.expression(&e));
    }
}
