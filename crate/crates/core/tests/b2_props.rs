use proptest::prelude::*;
use qsnake::b2restrict::{decompose, weyl_character, weyl_dimension, weyl_numerator, GCharacter, GWeight};

#[test]
fn weyl_dimension_formula() {
    for a in 0..=6i64 {
        for b in 0..=6i64 {
            let c = weyl_character(GWeight(a, b)).unwrap();
            let want = (a + 1) * (b + 1) * (a + b + 2) * (2 * a + b + 3) / 6;
            assert_eq!(c.dim(), want, "({a},{b})");
            assert_eq!(weyl_dimension(GWeight(a, b)), want);
            assert!(c.terms().all(|(_, k)| k > 0));
        }
    }
}

#[test]
fn numerators_have_eight_terms() {
    for a in 0..=4 {
        for b in 0..=4 {
            let n = weyl_numerator(GWeight(a, b)).unwrap();
            assert_eq!(n.len(), 8);
            assert_eq!(n.terms().map(|(_, k)| k).sum::<i64>(), 0);
        }
    }
    assert!(weyl_numerator(GWeight(-1, 0)).is_err());
}

proptest! {
    #[test]
    fn weyl_invariance(a in 0..7i64, b in 0..7i64) {
        let c = weyl_character(GWeight(a, b)).unwrap();
        prop_assert_eq!(c.reflect(1), c.clone());
        prop_assert_eq!(c.reflect(2), c);
    }

    // products of simples decompose, and the pieces multiply back
    #[test]
    fn tensor_products_decompose(a in 0..4i64, b in 0..4i64, c in 0..4i64, d in 0..4i64) {
        let x = &weyl_character(GWeight(a, b)).unwrap() * &weyl_character(GWeight(c, d)).unwrap();
        let dec = decompose(&x).unwrap();
        prop_assert_eq!(dec.character().unwrap(), x.clone());
        prop_assert_eq!(dec.dim(), x.dim());
        prop_assert_eq!(dec.0.get(&GWeight(a + c, b + d)).copied(), Some(1));
    }
}

#[test]
fn non_characters_are_rejected() {
    let lone = GCharacter::from_terms([(GWeight(1, 0), 1)]);
    assert!(decompose(&lone).is_err());
    let neg = &GCharacter::zero() - &weyl_character(GWeight(0, 1)).unwrap();
    assert!(decompose(&neg).is_err());
}
