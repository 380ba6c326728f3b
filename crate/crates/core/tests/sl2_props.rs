use std::collections::BTreeSet;

use proptest::prelude::*;
use qsnake::lattice::LatticePoint;
use qsnake::laurent::{Character, YMonomial};
use qsnake::sl2core::{sl2_simple_qchar, sl2_weyl_qchar, string_decompose, QString, Sl2};

fn s(k: i32, m: i32) -> YMonomial {
    YMonomial::from_factors((0..m).map(|j| (LatticePoint::new(1, k + 2 * j), 1)))
}

fn dominant() -> impl Strategy<Value = YMonomial> {
    prop::collection::vec(0..6i32, 0..6)
        .prop_map(|ks| YMonomial::from_factors(ks.into_iter().map(|k| (LatticePoint::new(1, 2 * k), 1))))
}

proptest! {
    #[test]
    fn strings_are_in_general_position(m in dominant()) {
        let strs = string_decompose(&m).unwrap();
        let prod = strs.iter().fold(YMonomial::one(), |a, q| &a * &q.monomial(Sl2::a1()));
        prop_assert_eq!(prod, m);
        for (x, a) in strs.iter().enumerate() {
            for b in &strs[x + 1..] {
                prop_assert!(!a.special_position(b, 1), "{} and {}", a, b);
            }
        }
    }

    #[test]
    fn dimensions(m in dominant()) {
        let w = sl2_weyl_qchar(&m).unwrap();
        prop_assert_eq!(w.dim(), 1 << m.degree());
        let l = sl2_simple_qchar(&m).unwrap();
        let want: i64 = string_decompose(&m).unwrap().iter().map(|q| q.len as i64 + 1).product();
        prop_assert_eq!(l.dim(), want);
        // the simple character sits inside the Weyl one
        prop_assert!(l.terms().all(|(t, c)| w.coefficient(t) >= c));
    }
}

#[test]
fn string_dimensions() {
    for k in [0, 2, 4] {
        for m in 1..=6 {
            assert_eq!(sl2_simple_qchar(&s(k, m)).unwrap().dim(), m as i64 + 1);
        }
    }
}

#[test]
fn a1_t_system() {
    for k in [0, 2, 4] {
        for m in 1..=4 {
            let ch = |k, m| sl2_simple_qchar(&s(k, m)).unwrap();
            let lhs = &ch(k, m) * &ch(k + 2, m);
            let rhs = &(&ch(k, m + 1) * &ch(k + 2, m - 1)) + &Character::one();
            assert_eq!(lhs, rhs, "k={k} m={m}");
        }
    }
}

#[test]
fn special_position_is_symmetric() {
    let strs: Vec<QString> = (0..4).flat_map(|st| (1..4).map(move |len| QString { start: 2 * st, len })).collect();
    let mut pairs = BTreeSet::new();
    for a in &strs {
        for b in &strs {
            assert_eq!(a.special_position(b, 1), b.special_position(a, 1));
            if a.special_position(b, 1) {
                pairs.insert((*a.min(b), *a.max(b)));
            }
        }
    }
    assert!(pairs.contains(&(QString { start: 0, len: 2 }, QString { start: 2, len: 2 })));
}
