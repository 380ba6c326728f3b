//! Cartan data for types A and B, the parity lattices of allowed spectral
//! shifts, the planar embedding used for drawing, and A-variables.
//!
//! A point `(i, k)` stands for the variable `Y_{i, a q^k}`; the base spectral
//! parameter `a` is fixed once and never represented.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::laurent::YMonomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Algebra {
    kind: Kind,
    rank: i32,
}

/// `(i, k)` indexes `Y_{i,k}`. Ordering is by node, then shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint {
    pub i: i32,
    pub k: i32,
}

impl LatticePoint {
    pub const fn new(i: i32, k: i32) -> Self {
        Self { i, k }
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.k)
    }
}

impl From<(i32, i32)> for LatticePoint {
    fn from((i, k): (i32, i32)) -> Self {
        Self { i, k }
    }
}

/// Image of a lattice point in the drawing plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePoint {
    pub x: i32,
    pub y: i32,
}

impl Algebra {
    pub fn new(kind: Kind, rank: i32) -> Result<Self> {
        match kind {
            Kind::A if rank < 1 => Err(Error::InvalidAlgebra(format!("A{rank}: rank must be >= 1"))),
            Kind::B if rank < 2 => Err(Error::InvalidAlgebra(format!("B{rank}: rank must be >= 2"))),
            _ => Ok(Self { kind, rank }),
        }
    }

    pub fn a(rank: i32) -> Self {
        Self::new(Kind::A, rank).expect("type A rank must be >= 1")
    }

    pub fn b(rank: i32) -> Self {
        Self::new(Kind::B, rank).expect("type B rank must be >= 2")
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rank(&self) -> i32 {
        self.rank
    }

    pub fn nodes(&self) -> impl Iterator<Item = i32> {
        1..=self.rank
    }

    pub fn contains_node(&self, i: i32) -> bool {
        (1..=self.rank).contains(&i)
    }

    fn check_node(&self, i: i32) -> Result<()> {
        if self.contains_node(i) {
            Ok(())
        } else {
            Err(Error::OutOfRange(i, self.rank))
        }
    }

    /// The symmetrizer `r_i`.
    pub fn r(&self, i: i32) -> i32 {
        match self.kind {
            Kind::A => 1,
            Kind::B if i == self.rank => 1,
            Kind::B => 2,
        }
    }

    /// `C_ij = 2<a_i, a_j> / <a_i, a_i>`.
    pub fn cartan(&self, i: i32, j: i32) -> i32 {
        if i == j {
            return 2;
        }
        if (i - j).abs() != 1 {
            return 0;
        }
        match self.kind {
            Kind::A => -1,
            // the short simple root is the last one
            Kind::B if i == self.rank => -2,
            Kind::B => -1,
        }
    }

    /// Membership in the lattice of allowed Y-indices, or with `shifted`,
    /// in the lattice of allowed A-indices (`(i, k - r_i)` allowed).
    pub fn in_lattice(&self, i: i32, k: i32, shifted: bool) -> Result<bool> {
        self.check_node(i)?;
        let k = if shifted { k - self.r(i) } else { k };
        Ok(self.parity_ok(i, k))
    }

    fn parity_ok(&self, i: i32, k: i32) -> bool {
        match self.kind {
            Kind::A => (i - k).rem_euclid(2) == 1,
            Kind::B if i == self.rank => k.rem_euclid(2) == 1,
            Kind::B => k.rem_euclid(2) == 0,
        }
    }

    pub fn is_y_point(&self, p: LatticePoint) -> bool {
        self.contains_node(p.i) && self.parity_ok(p.i, p.k)
    }

    pub fn is_a_point(&self, p: LatticePoint) -> bool {
        self.contains_node(p.i) && self.parity_ok(p.i, p.k - self.r(p.i))
    }

    pub fn check_y_point(&self, p: LatticePoint) -> Result<()> {
        if self.is_y_point(p) {
            Ok(())
        } else {
            Err(Error::InvalidLatticePoint(p))
        }
    }

    pub fn check_a_point(&self, p: LatticePoint) -> Result<()> {
        if self.is_a_point(p) {
            Ok(())
        } else {
            Err(Error::InvalidLatticePoint(p))
        }
    }

    /// Width of the drawing plane: columns run over `0..=max_column()`.
    pub fn max_column(&self) -> i32 {
        match self.kind {
            Kind::A => self.rank + 1,
            Kind::B => 4 * self.rank - 2,
        }
    }

    /// Column of the spinor node in type B.
    pub fn spinor_column(&self) -> Option<i32> {
        match self.kind {
            Kind::A => None,
            Kind::B => Some(2 * self.rank - 1),
        }
    }

    pub fn iota(&self, p: LatticePoint) -> Result<PlanePoint> {
        self.check_y_point(p)?;
        let n = self.rank;
        let LatticePoint { i, k } = p;
        let x = match self.kind {
            Kind::A => i,
            Kind::B if i == n => 2 * n - 1,
            Kind::B if (2 * n + k - 2 * i).rem_euclid(4) == 2 => 2 * i,
            Kind::B => 4 * n - 2 - 2 * i,
        };
        Ok(PlanePoint { x, y: k })
    }

    /// Inverse of [`Algebra::iota`] on its image; `None` off the image.
    pub fn iota_inverse(&self, q: PlanePoint) -> Option<LatticePoint> {
        let n = self.rank;
        let candidates: Vec<i32> = match self.kind {
            Kind::A => vec![q.x],
            Kind::B if q.x == 2 * n - 1 => vec![n],
            Kind::B if q.x.rem_euclid(2) == 0 => vec![q.x / 2, (4 * n - 2 - q.x) / 2],
            Kind::B => vec![],
        };
        candidates
            .into_iter()
            .map(|i| LatticePoint::new(i, q.y))
            .find(|&p| self.is_y_point(p) && self.iota(p).ok() == Some(q))
    }

    /// Expansion of `A_{i,k}` in the Y-variables.
    pub fn a_monomial(&self, i: i32, k: i32) -> Result<YMonomial> {
        let p = LatticePoint::new(i, k);
        self.check_a_point(p)?;
        let r = self.r(i);
        let mut factors = vec![((i, k + r), 1), ((i, k - r), 1)];
        for j in [i - 1, i + 1] {
            if !self.contains_node(j) {
                continue;
            }
            match self.cartan(j, i) {
                -1 => factors.push(((j, k), -1)),
                -2 => {
                    factors.push(((j, k + 1), -1));
                    factors.push(((j, k - 1), -1));
                }
                c => unreachable!("Cartan entry {c} does not occur in types A and B"),
            }
        }
        Ok(YMonomial::from_factors(
            factors.into_iter().map(|((i, k), e)| (LatticePoint::new(i, k), e)),
        ))
    }

    /// Column `i` of the Cartan matrix, i.e. the weight of `A_{i,k}` in the
    /// fundamental-weight basis.
    pub fn simple_root(&self, i: i32) -> Vec<i64> {
        self.nodes().map(|j| self.cartan(j, i) as i64).collect()
    }
}

impl fmt::Display for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            Kind::A => 'A',
            Kind::B => 'B',
        };
        write!(f, "{c}{}", self.rank)
    }
}

impl FromStr for Algebra {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Kind::A,
            Some('B') => Kind::B,
            _ => return Err(Error::Parse(format!("unknown algebra '{s}'"))),
        };
        let rank: i32 = chars
            .as_str()
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in '{s}'")))?;
        Algebra::new(kind, rank)
    }
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    kind: String,
    rank: i32,
}

impl Serialize for Algebra {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let kind = match self.kind {
            Kind::A => "A",
            Kind::B => "B",
        };
        AlgebraRepr { kind: kind.to_string(), rank: self.rank }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Algebra {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = AlgebraRepr::deserialize(d)?;
        let kind = match repr.kind.as_str() {
            "A" => Kind::A,
            "B" => Kind::B,
            other => return Err(D::Error::custom(format!("unknown kind '{other}'"))),
        };
        Algebra::new(kind, repr.rank).map_err(D::Error::custom)
    }
}

impl Serialize for LatticePoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.i, self.k].serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticePoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [i, k] = <[i32; 2]>::deserialize(d)?;
        Ok(Self { i, k })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y(i: i32, k: i32) -> LatticePoint {
        LatticePoint::new(i, k)
    }

    #[test]
    fn lattice_membership() {
        assert_eq!(Algebra::a(3).in_lattice(1, 0, false), Ok(true));
        assert_eq!(Algebra::b(2).in_lattice(2, 4, false), Ok(false));
        assert_eq!(Algebra::b(3).in_lattice(1, 2, false), Ok(true));
        assert_eq!(Algebra::a(3).in_lattice(4, 0, false), Err(Error::OutOfRange(4, 3)));
        // shifted lattice: (i, k - r_i) must be allowed
        assert_eq!(Algebra::b(2).in_lattice(1, 2, true), Ok(true));
        assert_eq!(Algebra::b(2).in_lattice(2, 2, true), Ok(true));
        assert_eq!(Algebra::a(2).in_lattice(1, 1, true), Ok(true));
    }

    #[test]
    fn iota_examples() {
        assert_eq!(Algebra::b(3).iota(y(3, 1)), Ok(PlanePoint { x: 5, y: 1 }));
        assert_eq!(Algebra::b(3).iota(y(1, 0)), Ok(PlanePoint { x: 8, y: 0 }));
        assert_eq!(Algebra::a(4).iota(y(2, 1)), Ok(PlanePoint { x: 2, y: 1 }));
        assert_eq!(Algebra::b(2).iota(y(2, 2)), Err(Error::InvalidLatticePoint(y(2, 2))));
    }

    #[test]
    fn iota_is_injective_and_inverted() {
        for n in 2..=6 {
            for alg in [Algebra::a(n), Algebra::b(n)] {
                let mut seen = std::collections::HashMap::new();
                for i in alg.nodes() {
                    for k in -40..=40 {
                        let p = y(i, k);
                        if !alg.is_y_point(p) {
                            continue;
                        }
                        let q = alg.iota(p).unwrap();
                        assert!((0..=alg.max_column()).contains(&q.x));
                        assert_eq!(alg.iota_inverse(q), Some(p));
                        assert!(seen.insert(q, p).is_none(), "{alg}: {p} collides");
                    }
                }
            }
        }
    }

    #[test]
    fn cartan_convention() {
        let b3 = Algebra::b(3);
        assert_eq!(b3.cartan(2, 3), -1);
        assert_eq!(b3.cartan(3, 2), -2);
        assert_eq!(b3.cartan(1, 3), 0);
        assert_eq!(b3.r(3), 1);
        assert_eq!(b3.r(1), 2);
    }

    #[test]
    fn a_monomial_examples() {
        let a2 = Algebra::a(2);
        let m = a2.a_monomial(1, 1).unwrap();
        assert_eq!(m, YMonomial::from_factors([(y(1, 0), 1), (y(1, 2), 1), (y(2, 1), -1)]));
        let b2 = Algebra::b(2);
        let m = b2.a_monomial(1, 2).unwrap();
        assert_eq!(
            m,
            YMonomial::from_factors([(y(1, 0), 1), (y(1, 4), 1), (y(2, 1), -1), (y(2, 3), -1)])
        );
        let m = b2.a_monomial(2, 2).unwrap();
        assert_eq!(m, YMonomial::from_factors([(y(2, 1), 1), (y(2, 3), 1), (y(1, 2), -1)]));
        assert!(b2.a_monomial(2, 1).is_err());
    }

    #[test]
    fn a_monomial_parity_closure_and_weight() {
        for n in 1..=6 {
            let mut algs = vec![Algebra::a(n)];
            if n >= 2 {
                algs.push(Algebra::b(n));
            }
            for alg in algs {
                for i in alg.nodes() {
                    for k in -12..=12 {
                        if !alg.is_a_point(y(i, k)) {
                            continue;
                        }
                        let m = alg.a_monomial(i, k).unwrap();
                        assert!(m.factors().all(|(p, _)| alg.is_y_point(p)));
                        assert_eq!(m.weight(&alg).coords, alg.simple_root(i));
                    }
                }
            }
        }
    }

    #[test]
    fn algebra_parse_and_json() {
        let alg: Algebra = "B3".parse().unwrap();
        assert_eq!(alg, Algebra::b(3));
        assert!("B1".parse::<Algebra>().is_err());
        assert!("C2".parse::<Algebra>().is_err());
        let s = serde_json::to_string(&alg).unwrap();
        assert_eq!(s, r#"{"kind":"B","rank":3}"#);
        assert_eq!(serde_json::from_str::<Algebra>(&s).unwrap(), alg);
        assert_eq!(serde_json::to_string(&y(2, -3)).unwrap(), "[2,-3]");
    }
}
