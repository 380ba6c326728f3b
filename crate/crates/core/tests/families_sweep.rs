use qsnake::error::Error;
use qsnake::lattice::{Algebra, Kind, LatticePoint};
use qsnake::qchar::QCharConfig;
use qsnake::tsystem::families::{family_instance, Family};
use qsnake::tsystem::verify_relation;

fn lambdas(len: usize) -> Vec<Vec<i32>> {
    (0..3usize.pow(len as u32))
        .map(|mut c| {
            (0..len)
                .map(|_| {
                    let d = (c % 3) as i32;
                    c /= 3;
                    d
                })
                .collect()
        })
        .collect()
}

fn shifts(alg: &Algebra, i: i32) -> Vec<i32> {
    (0..4).filter(|&k| alg.is_y_point(LatticePoint::new(i, k))).collect()
}

fn cases(alg: &Algebra) -> Vec<Family> {
    let n = alg.rank();
    let mut out = Vec::new();
    for i in alg.nodes() {
        for k in shifts(alg, i) {
            for m in 1..=3 {
                out.push(Family::Kr { i, k, m });
                for nn in 1..=2 {
                    out.push(Family::TwoNode { i, k, m, n: nn });
                    out.push(Family::TwoNodeTilde { i, k, m, n: nn });
                }
            }
        }
    }
    for a in 1..=n {
        for b in a + 1..=n {
            for lam in lambdas((b - a + 1) as usize).into_iter().filter(|l| l.iter().all(|&x| x <= 1) || l.len() <= 3) {
                for k in shifts(alg, a) {
                    match alg.kind() {
                        Kind::A => out.push(Family::AMinAff { a, k, lambdas: lam.clone() }),
                        Kind::B => out.push(Family::BMinAff { a, k, lambdas: lam.clone() }),
                    }
                }
                for k in shifts(alg, b) {
                    match alg.kind() {
                        Kind::A => out.push(Family::AMinAffTilde { b, k, lambdas: lam.clone() }),
                        Kind::B => out.push(Family::BMinAffTilde { b, k, lambdas: lam.clone() }),
                    }
                }
            }
        }
    }
    if alg.kind() == Kind::B {
        let ls: Vec<Vec<i32>> = lambdas((n - 1) as usize).into_iter().filter(|l| l.iter().all(|&x| x <= 1)).collect();
        for up in &ls {
            for bar in &ls {
                for lambda in 0..=1 {
                    out.push(Family::BWrapping { k: 0, lambdas: up.clone(), lambda, bar: bar.clone() });
                }
            }
        }
    }
    out
}

/// Every family instance either has bad parameters or reproduces the
/// geometric relation; the relations built are exact identities.
#[test]
fn families_agree_with_geometry() {
    let mut built = 0;
    for alg in [Algebra::a(3), Algebra::a(4), Algebra::b(2), Algebra::b(3), Algebra::b(4)] {
        for fam in cases(&alg) {
            match family_instance(&alg, &fam) {
                Ok(rel) => {
                    built += 1;
                    if rel.top.len() <= 3 && alg.rank() <= 3 {
                        let r = verify_relation(&rel, &QCharConfig::default()).unwrap();
                        assert!(r.identity_holds, "{alg} {fam:?}");
                    }
                }
                Err(Error::BadParams(_)) => {}
                Err(e) => panic!("{alg} {fam:?}: {e}"),
            }
        }
    }
    assert!(built > 300, "only {built} instances built");
}
