//! The extended T-system: three-term relations among snake modules, their
//! exact verification at the level of q-characters, and the non-prime
//! factorisation.

pub mod families;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{Character, YMonomial};
use crate::paths::{highest_path, path_monomial, snake_lowered_path};
use crate::qchar::{snake_character, QCharConfig};
use crate::snakes::{neighbour_snakes, NeighbourPair, Snake};

/// The participants of the relation `[L][R] = [B][T] + [X][Y]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationInstance {
    pub top: Snake,
    pub left: Snake,
    pub right: Snake,
    pub bottom: Snake,
    pub nbrs: NeighbourPair,
}

impl RelationInstance {
    /// `(mon L, mon R, mon T, mon B, mon X, mon Y)`.
    pub fn monomials(&self) -> [YMonomial; 6] {
        [
            self.left.monomial(),
            self.right.monomial(),
            self.top.monomial(),
            self.bottom.monomial(),
            self.nbrs.x.monomial(),
            self.nbrs.y.monomial(),
        ]
    }
}

pub fn extended_relation(s: &Snake) -> Result<RelationInstance> {
    if s.len() < 2 {
        return Err(Error::SnakeTooShort);
    }
    if !s.is_prime() {
        return Err(Error::NotPrime);
    }
    let t = s.len();
    Ok(RelationInstance {
        top: s.clone(),
        left: s.slice(0..t - 1),
        right: s.slice(1..t),
        bottom: s.slice(1..t - 1),
        nbrs: neighbour_snakes(s)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dims {
    pub left: i64,
    pub right: i64,
    pub top: i64,
    pub bottom: i64,
    pub x: i64,
    pub y: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity_holds: bool,
    pub lhs_dominant: Vec<(YMonomial, i64)>,
    pub rhs1_dominant: Vec<(YMonomial, i64)>,
    /// Dominant terms of `χ(L)χ(R)` are exactly the predicted catalog, each once.
    pub lhs_catalog_ok: bool,
    /// Dominant terms of `χ(T)χ(B)` are the catalog minus its all-snake-lowered member.
    pub rhs1_catalog_ok: bool,
    pub xy_special: bool,
    pub dims: Dims,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn all_ok(&self) -> bool {
        self.identity_holds && self.lhs_catalog_ok && self.rhs1_catalog_ok && self.xy_special
    }
}

/// The predicted dominant monomials of `χ(L)χ(R)`, indexed by `R = 1..=T`:
/// highest paths before `R`, snake-lowered paths from `R` on, times `Π_{t≥2} Y`.
pub fn dominant_catalog(top: &Snake) -> Result<Vec<YMonomial>> {
    let alg = top.algebra();
    let pts = top.points();
    let t = pts.len();
    let highs: Vec<YMonomial> =
        pts.iter().map(|p| Ok(path_monomial(&highest_path(alg, p.i, p.k)?, alg))).collect::<Result<_>>()?;
    let snakes: Vec<YMonomial> = pts
        .windows(2)
        .map(|w| Ok(path_monomial(&snake_lowered_path(alg, w[0], w[1])?, alg)))
        .collect::<Result<_>>()?;
    let tail = YMonomial::product_of_points(&pts[1..]);
    Ok((1..=t)
        .map(|r| {
            let mut m = tail.clone();
            for h in &highs[..r - 1] {
                m = &m * h;
            }
            for s in &snakes[r - 1..] {
                m = &m * s;
            }
            m
        })
        .collect())
}

fn is_special(c: &Character) -> bool {
    let dom = c.dominant_terms();
    dom.len() == 1 && dom[0].1 == 1
}

pub fn verify_relation(r: &RelationInstance, cfg: &QCharConfig) -> Result<VerificationReport> {
    let ch = |s: &Snake| snake_character(s, cfg);
    let (l, rr, t, b, x, y) = (ch(&r.left)?, ch(&r.right)?, ch(&r.top)?, ch(&r.bottom)?, ch(&r.nbrs.x)?, ch(&r.nbrs.y)?);
    let lr = &l * &rr;
    let tb = &t * &b;
    let xy = &x * &y;
    let identity_holds = lr == &tb + &xy;

    let catalog = dominant_catalog(&r.top)?;
    let mut predicted: Vec<(YMonomial, i64)> = catalog.iter().map(|m| (m.clone(), 1)).collect();
    predicted.sort();
    let lhs_dominant = lr.dominant_terms();
    let rhs1_dominant = tb.dominant_terms();
    let lhs_catalog_ok = lhs_dominant == predicted && predicted.len() == r.top.len();
    let all_snake = &catalog[0];
    let predicted_tb: Vec<(YMonomial, i64)> = predicted.iter().filter(|(m, _)| m != all_snake).cloned().collect();
    let rhs1_catalog_ok = rhs1_dominant == predicted_tb;

    let mut notes = Vec::new();
    if !identity_holds {
        let diff = &lr - &(&tb + &xy);
        notes.push(format!("character identity fails; difference has {} terms", diff.len()));
    }
    if !lhs_catalog_ok {
        notes.push(format!("L·R has {} dominant terms, expected {}", lhs_dominant.len(), predicted.len()));
    }
    if !rhs1_catalog_ok {
        notes.push(format!("T·B has {} dominant terms, expected {}", rhs1_dominant.len(), predicted_tb.len()));
    }
    let xy_special = is_special(&xy);
    if !xy_special {
        notes.push("X·Y is not special".to_string());
    }
    Ok(VerificationReport {
        identity_holds,
        lhs_dominant,
        rhs1_dominant,
        lhs_catalog_ok,
        rhs1_catalog_ok,
        xy_special,
        dims: Dims { left: l.dim(), right: rr.dim(), top: t.dim(), bottom: b.dim(), x: x.dim(), y: y.dim() },
        notes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonPrimeReport {
    pub identity_holds: bool,
    /// Informational: the common product need not be special once the
    /// bottom is non-empty, e.g. A2 `(1,0),(1,4),(2,7)` also has `Y_{1,0}Y_{1,4}`.
    pub unique_dominant: bool,
    pub dims: Dims,
}

impl NonPrimeReport {
    pub fn all_ok(&self) -> bool {
        self.identity_holds
    }
}

/// For a snake that is not prime: `χ(L)χ(R) = χ(B)χ(T)`.
pub fn verify_nonprime(s: &Snake, cfg: &QCharConfig) -> Result<NonPrimeReport> {
    if s.len() < 2 {
        return Err(Error::SnakeTooShort);
    }
    if s.is_prime() {
        return Err(Error::NotApplicable);
    }
    let n = s.len();
    let ch = |s: Snake| snake_character(&s, cfg);
    let (l, r, t, b) = (ch(s.slice(0..n - 1))?, ch(s.slice(1..n))?, ch(s.clone())?, ch(s.slice(1..n - 1))?);
    let lr = &l * &r;
    Ok(NonPrimeReport {
        identity_holds: lr == &t * &b,
        unique_dominant: is_special(&lr),
        dims: Dims { left: l.dim(), right: r.dim(), top: t.dim(), bottom: b.dim(), x: 0, y: 0 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Algebra, LatticePoint};
    use crate::snakes::validate_snake;

    fn snake(alg: &Algebra, pts: &[(i32, i32)]) -> Snake {
        validate_snake(alg, &pts.iter().map(|&p| LatticePoint::from(p)).collect::<Vec<_>>()).unwrap()
    }

    fn pts(s: &Snake) -> Vec<(i32, i32)> {
        s.points().iter().map(|p| (p.i, p.k)).collect()
    }

    #[test]
    fn relation_participants() {
        let a2 = Algebra::a(2);
        let r = extended_relation(&snake(&a2, &[(1, 0), (1, 2)])).unwrap();
        assert_eq!(pts(&r.left), [(1, 0)]);
        assert_eq!(pts(&r.right), [(1, 2)]);
        assert!(r.bottom.is_empty() && r.nbrs.x.is_empty());
        assert_eq!(pts(&r.nbrs.y), [(2, 1)]);

        let b2 = Algebra::b(2);
        let r = extended_relation(&snake(&b2, &[(2, 1), (2, 3)])).unwrap();
        assert!(r.bottom.is_empty() && r.nbrs.x.is_empty());
        assert_eq!(pts(&r.nbrs.y), [(1, 2)]);

        let r = extended_relation(&snake(&b2, &[(1, 0), (2, 5), (1, 10)])).unwrap();
        assert_eq!(pts(&r.bottom), [(2, 5)]);
        assert_eq!(pts(&r.nbrs.x), [(2, 9)]);
        assert_eq!(pts(&r.nbrs.y), [(2, 1)]);

        assert_eq!(extended_relation(&snake(&a2, &[(1, 0)])), Err(Error::SnakeTooShort));
        assert_eq!(extended_relation(&snake(&a2, &[(1, 0), (1, 6)])), Err(Error::NotPrime));
    }

    #[test]
    fn spot_dimensions() {
        let cfg = QCharConfig::default();
        let cases: [(Algebra, &[(i32, i32)], Dims); 3] = [
            (Algebra::a(2), &[(1, 0), (1, 2)], Dims { left: 3, right: 3, top: 6, bottom: 1, x: 1, y: 3 }),
            (Algebra::b(2), &[(2, 1), (2, 3)], Dims { left: 4, right: 4, top: 11, bottom: 1, x: 1, y: 5 }),
            (Algebra::b(2), &[(1, 0), (2, 5), (1, 10)], Dims { left: 16, right: 16, top: 60, bottom: 4, x: 4, y: 4 }),
        ];
        for (alg, p, dims) in cases {
            let rep = verify_relation(&extended_relation(&snake(&alg, p)).unwrap(), &cfg).unwrap();
            assert!(rep.all_ok(), "{:?}", rep.notes);
            assert_eq!(rep.dims, dims);
        }
    }

    #[test]
    fn nonprime_examples() {
        let cfg = QCharConfig::default();
        let b2 = Algebra::b(2);
        let rep = verify_nonprime(&snake(&b2, &[(2, 1), (2, 11)]), &cfg).unwrap();
        assert!(rep.all_ok());
        assert_eq!((rep.dims.left, rep.dims.right, rep.dims.top, rep.dims.bottom), (4, 4, 16, 1));
        let a2 = Algebra::a(2);
        assert!(verify_nonprime(&snake(&a2, &[(1, 0), (1, 6)]), &cfg).unwrap().all_ok());
        assert_eq!(verify_nonprime(&snake(&a2, &[(1, 0), (1, 2)]), &cfg), Err(Error::NotApplicable));
        let rep = verify_nonprime(&snake(&a2, &[(1, 0), (1, 4), (2, 7)]), &cfg).unwrap();
        assert!(rep.all_ok() && !rep.unique_dominant);
    }
}
