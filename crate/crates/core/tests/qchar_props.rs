mod common;

use proptest::prelude::*;
use qsnake::lattice::{Algebra, LatticePoint};
use qsnake::laurent::{Character, YMonomial};
use qsnake::paths::{lowest_path, path_monomial, Path, PathSet};
use qsnake::qchar::{qchar_snake, snake_character, QCharConfig};
use qsnake::snakes::{prime_decomposition, validate_snake, Snake};

fn window() -> Vec<Snake> {
    let mut out = Vec::new();
    for alg in [Algebra::a(2), Algebra::a(3), Algebra::b(2)] {
        out.extend(common::snakes_in(&alg, 0, 12, 3));
    }
    out.extend(common::snakes_in(&Algebra::b(3), 0, 12, 2));
    out
}

fn a_snake() -> impl Strategy<Value = Snake> {
    prop::sample::select(window())
}

/// Column-by-column comparison read straight off the point lists.
fn strictly_above(p: &Path, q: &Path) -> bool {
    let cols = |r: &Path| {
        let mut m = std::collections::BTreeMap::new();
        for &(x, y) in r.points() {
            let e = m.entry(x).or_insert((y, y));
            e.0 = e.0.min(y);
            e.1 = e.1.max(y);
        }
        m
    };
    let (a, b) = (cols(p), cols(q));
    a.iter().all(|(x, &(_, hi))| b.get(x).map_or(true, |&(lo, _)| hi < lo))
}

/// Sum over the full cartesian product, keeping pairwise non-overlapping tuples.
fn brute_force(s: &Snake) -> Character {
    let alg = s.algebra();
    let sets: Vec<PathSet> = s.points().iter().map(|p| PathSet::new(alg, p.i, p.k).unwrap()).collect();
    let mut out = Character::zero();
    let mut idx = vec![0usize; sets.len()];
    loop {
        let tuple: Vec<&Path> = idx.iter().zip(&sets).map(|(&j, ps)| &ps.paths()[j]).collect();
        let ok = (0..tuple.len()).all(|a| (a + 1..tuple.len()).all(|b| strictly_above(tuple[a], tuple[b])));
        if ok {
            let m = tuple.iter().fold(YMonomial::one(), |m, p| &m * &path_monomial(p, alg));
            out.add_term(m, 1);
        }
        let mut t = 0;
        loop {
            if t == idx.len() {
                return out;
            }
            idx[t] += 1;
            if idx[t] < sets[t].len() {
                break;
            }
            idx[t] = 0;
            t += 1;
        }
    }
}

fn shifted(s: &Snake, by: i32) -> Snake {
    let pts: Vec<LatticePoint> = s.points().iter().map(|p| LatticePoint::new(p.i, p.k + by)).collect();
    validate_snake(s.algebra(), &pts).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn matches_brute_force(s in a_snake()) {
        prop_assert_eq!(snake_character(&s, &QCharConfig::default()).unwrap(), brute_force(&s));
    }

    #[test]
    fn thin_special_antispecial(s in a_snake()) {
        let r = qchar_snake(&s).unwrap();
        prop_assert!(r.thin && r.special && r.antispecial);
        prop_assert_eq!(r.dim, r.character.terms().map(|(_, c)| c).sum::<i64>());
        prop_assert_eq!(&r.dominant, &vec![(s.monomial(), 1)]);
    }

    #[test]
    fn shift_invariance(s in a_snake(), c in 1..4i32) {
        let step = match s.algebra().to_string().as_bytes()[0] { b'A' => 2, _ => 4 };
        let by = step * c;
        let a = snake_character(&s, &QCharConfig::default()).unwrap();
        let b = snake_character(&shifted(&s, by), &QCharConfig::default()).unwrap();
        let moved = a.map_monomials(|m| YMonomial::from_factors(m.factors().map(|(p, e)| (LatticePoint::new(p.i, p.k + by), e))));
        prop_assert_eq!(b, moved);
    }

    #[test]
    fn antidominant_is_lowest_paths(s in a_snake()) {
        let alg = s.algebra();
        let want = s.points().iter().fold(YMonomial::one(), |m, p| &m * &path_monomial(&lowest_path(alg, p.i, p.k).unwrap(), alg));
        let c = snake_character(&s, &QCharConfig::default()).unwrap();
        prop_assert_eq!(c.antidominant_terms(), vec![(want, 1)]);
    }

    #[test]
    fn nonprime_factorises(s in a_snake()) {
        let parts = prime_decomposition(&s);
        prop_assert!(parts.iter().all(|p| p.is_prime()));
        let prod = parts.iter().fold(Character::one(), |c, p| &c * &snake_character(p, &QCharConfig::default()).unwrap());
        prop_assert_eq!(prod, snake_character(&s, &QCharConfig::default()).unwrap());
    }
}
