//! Exact sparse Laurent monomials in the Y-variables and integer linear
//! combinations of them.
//!
//! Both types are kept canonical: no zero exponents, no zero coefficients,
//! factors sorted by `(i, k)`. Equality is therefore structural, and the
//! JSON encoding is byte-stable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Algebra, LatticePoint};

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YMonomial {
    exps: Vec<(LatticePoint, i32)>,
}

impl YMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn y(i: i32, k: i32) -> Self {
        Self { exps: vec![(LatticePoint::new(i, k), 1)] }
    }

    /// Product of `Y_p^e` over the given pairs; repeated points are merged.
    pub fn from_factors<I: IntoIterator<Item = (LatticePoint, i32)>>(factors: I) -> Self {
        let mut acc: BTreeMap<LatticePoint, i32> = BTreeMap::new();
        for (p, e) in factors {
            let slot = acc.entry(p).or_insert(0);
            *slot = slot.checked_add(e).expect("exponent overflow");
        }
        Self { exps: acc.into_iter().filter(|&(_, e)| e != 0).collect() }
    }

    /// `Π_p Y_p` over a list of points.
    pub fn product_of_points<'a, I: IntoIterator<Item = &'a LatticePoint>>(points: I) -> Self {
        Self::from_factors(points.into_iter().map(|&p| (p, 1)))
    }

    pub fn factors(&self) -> impl Iterator<Item = (LatticePoint, i32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Number of distinct variables present.
    pub fn support_len(&self) -> usize {
        self.exps.len()
    }

    /// Exponent of `Y_{i,k}`.
    pub fn u_exponent(&self, i: i32, k: i32) -> i32 {
        let p = LatticePoint::new(i, k);
        self.exps
            .binary_search_by(|(q, _)| q.cmp(&p))
            .map(|ix| self.exps[ix].1)
            .unwrap_or(0)
    }

    pub fn is_dominant(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e >= 0)
    }

    pub fn is_antidominant(&self) -> bool {
        self.exps.iter().all(|&(_, e)| e <= 0)
    }

    pub fn is_i_dominant(&self, i: i32) -> bool {
        self.exps.iter().all(|&(p, e)| p.i != i || e >= 0)
    }

    pub fn inverse(&self) -> Self {
        Self { exps: self.exps.iter().map(|&(p, e)| (p, -e)).collect() }
    }

    pub fn pow(&self, n: i32) -> Self {
        if n == 0 {
            return Self::one();
        }
        Self {
            exps: self
                .exps
                .iter()
                .map(|&(p, e)| (p, e.checked_mul(n).expect("exponent overflow")))
                .collect(),
        }
    }

    pub fn weight(&self, alg: &Algebra) -> WeightVector {
        let mut coords = vec![0i64; alg.rank() as usize];
        for &(p, e) in &self.exps {
            coords[(p.i - 1) as usize] += e as i64;
        }
        WeightVector { coords }
    }

    /// `Σ e · r_i` over the factors `Y_{i,k}^e`.
    pub fn height(&self, alg: &Algebra) -> i64 {
        self.exps.iter().map(|&(p, e)| e as i64 * alg.r(p.i) as i64).sum()
    }

    /// Keeps only the factors at node `j`.
    pub fn beta_project(&self, j: i32) -> Self {
        Self { exps: self.exps.iter().copied().filter(|(p, _)| p.i == j).collect() }
    }

    pub fn max_shift(&self) -> Option<i32> {
        self.exps.iter().map(|(p, _)| p.k).max()
    }

    pub fn min_shift(&self) -> Option<i32> {
        self.exps.iter().map(|(p, _)| p.k).min()
    }

    /// Total degree `Σ e`.
    pub fn degree(&self) -> i64 {
        self.exps.iter().map(|&(_, e)| e as i64).sum()
    }
}

impl Mul for &YMonomial {
    type Output = YMonomial;

    fn mul(self, rhs: &YMonomial) -> YMonomial {
        let (a, b) = (&self.exps, &rhs.exps);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut x, mut y) = (0, 0);
        while x < a.len() && y < b.len() {
            match a[x].0.cmp(&b[y].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[x]);
                    x += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[y]);
                    y += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[x].1.checked_add(b[y].1).expect("exponent overflow");
                    if e != 0 {
                        out.push((a[x].0, e));
                    }
                    x += 1;
                    y += 1;
                }
            }
        }
        out.extend_from_slice(&a[x..]);
        out.extend_from_slice(&b[y..]);
        YMonomial { exps: out }
    }
}

impl Mul for YMonomial {
    type Output = YMonomial;

    fn mul(self, rhs: YMonomial) -> YMonomial {
        &self * &rhs
    }
}

impl fmt::Display for YMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (n, &(p, e)) in self.exps.iter().enumerate() {
            if n > 0 {
                write!(f, " ")?;
            }
            write!(f, "Y{},{}", p.i, p.k)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Parses the display form, e.g. `"Y1,0^2 Y2,3^-1"`; `"1"` is the unit.
impl std::str::FromStr for YMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Self::one());
        }
        let bad = |t: &str| Error::Parse(format!("bad monomial factor {t:?}, expected Yi,k or Yi,k^e"));
        let mut factors = Vec::new();
        for tok in s.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            let body = tok.strip_prefix('Y').ok_or_else(|| bad(tok))?;
            let (pt, e) = match body.split_once('^') {
                Some((pt, e)) => (pt, e.parse::<i32>().map_err(|_| bad(tok))?),
                None => (body, 1),
            };
            let (i, k) = pt.split_once(',').ok_or_else(|| bad(tok))?;
            let i = i.parse::<i32>().map_err(|_| bad(tok))?;
            let k = k.parse::<i32>().map_err(|_| bad(tok))?;
            factors.push((LatticePoint::new(i, k), e));
        }
        Ok(Self::from_factors(factors))
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialRepr {
    factors: Vec<[i32; 3]>,
}

impl Serialize for YMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MonomialRepr { factors: self.exps.iter().map(|&(p, e)| [p.i, p.k, e]).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for YMonomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = MonomialRepr::deserialize(d)?;
        Ok(Self::from_factors(repr.factors.into_iter().map(|[i, k, e]| (LatticePoint::new(i, k), e))))
    }
}

/// Coefficients in the fundamental-weight basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVector {
    pub coords: Vec<i64>,
}

impl WeightVector {
    pub fn zero(rank: usize) -> Self {
        Self { coords: vec![0; rank] }
    }
}

/// Exponents of the A-variables in a quotient of two monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AFactorization {
    pub factors: BTreeMap<LatticePoint, i32>,
}

impl AFactorization {
    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn all_nonpositive(&self) -> bool {
        self.factors.values().all(|&e| e <= 0)
    }

    /// `v`: minus the sum of exponents.
    pub fn degree(&self) -> i64 {
        -self.factors.values().map(|&e| e as i64).sum::<i64>()
    }

    pub fn support(&self) -> impl Iterator<Item = LatticePoint> + '_ {
        self.factors.keys().copied()
    }

    pub fn expand(&self, alg: &Algebra) -> Result<YMonomial> {
        let mut m = YMonomial::one();
        for (&p, &e) in &self.factors {
            m = &m * &alg.a_monomial(p.i, p.k)?.pow(e);
        }
        Ok(m)
    }
}

/// The exponents `f` with `num / den = Π A_{i,k}^{f(i,k)}`.
///
/// Peels off the factor with the largest shift each round: the top factor
/// `Y_{i,l}` of any product of A-variables comes only from `A_{i,l-r_i}`.
pub fn a_factorize(num: &YMonomial, den: &YMonomial, alg: &Algebra) -> Result<AFactorization> {
    let target = num * &den.inverse();
    if target.is_one() {
        return Ok(AFactorization::default());
    }
    // every round strictly lowers the top shift; the floor bounds the descent
    let floor = target.min_shift().unwrap() - 4;
    let mut rest = target;
    let mut factors: BTreeMap<LatticePoint, i32> = BTreeMap::new();
    while let Some(&(top, e)) = rest.exps.iter().max_by_key(|(p, _)| (p.k, p.i)) {
        let at = LatticePoint::new(top.i, top.k - alg.r(top.i));
        if !alg.contains_node(at.i) || !alg.is_a_point(at) || at.k < floor {
            return Err(Error::NotInRootLattice);
        }
        *factors.entry(at).or_insert(0) += e;
        rest = &rest * &alg.a_monomial(at.i, at.k)?.pow(-e);
    }
    factors.retain(|_, e| *e != 0);
    let f = AFactorization { factors };
    debug_assert_eq!(&f.expand(alg)?, &(num * &den.inverse()));
    Ok(f)
}

/// Finite integer combination of monomials.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Character {
    terms: BTreeMap<YMonomial, i64>,
}

impl Character {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(YMonomial::one())
    }

    pub fn monomial(m: YMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, 1);
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (YMonomial, i64)>>(terms: I) -> Self {
        let mut c = Self::zero();
        for (m, k) in terms {
            c.add_term(m, k);
        }
        c
    }

    pub fn add_term(&mut self, m: YMonomial, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(m).or_insert(0);
        *slot = slot.checked_add(coeff).expect("coefficient overflow");
        if *slot == 0 {
            // re-find to remove; entry API borrows are released here
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&YMonomial, i64)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn monomials(&self) -> impl Iterator<Item = &YMonomial> + '_ {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &YMonomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn contains(&self, m: &YMonomial) -> bool {
        self.terms.contains_key(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of coefficients.
    pub fn dim(&self) -> i64 {
        self.terms.values().fold(0i64, |acc, &c| acc.checked_add(c).expect("coefficient overflow"))
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| (m.clone(), c.checked_mul(k).expect("coefficient overflow")))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &YMonomial) -> Self {
        Self { terms: self.terms.iter().map(|(n, &c)| (n * m, c)).collect() }
    }

    /// Terms with a dominant monomial, in canonical order.
    pub fn dominant_terms(&self) -> Vec<(YMonomial, i64)> {
        self.terms.iter().filter(|(m, _)| m.is_dominant()).map(|(m, &c)| (m.clone(), c)).collect()
    }

    pub fn antidominant_terms(&self) -> Vec<(YMonomial, i64)> {
        self.terms
            .iter()
            .filter(|(m, _)| m.is_antidominant())
            .map(|(m, &c)| (m.clone(), c))
            .collect()
    }

    /// Applies a monomial map and collects like terms.
    pub fn map_monomials(&self, f: impl Fn(&YMonomial) -> YMonomial) -> Self {
        Self::from_terms(self.terms.iter().map(|(m, &c)| (f(m), c)))
    }
}

impl Add for &Character {
    type Output = Character;

    fn add(self, rhs: &Character) -> Character {
        let mut out = self.clone();
        for (m, &c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Character {
    type Output = Character;

    fn sub(self, rhs: &Character) -> Character {
        self + &(-rhs)
    }
}

impl Neg for &Character {
    type Output = Character;

    fn neg(self) -> Character {
        self.scale(-1)
    }
}

impl Mul for &Character {
    type Output = Character;

    fn mul(self, rhs: &Character) -> Character {
        let mut acc: BTreeMap<YMonomial, i64> = BTreeMap::new();
        for (a, &x) in &self.terms {
            for (b, &y) in &rhs.terms {
                let c = x.checked_mul(y).expect("coefficient overflow");
                let slot = acc.entry(a * b).or_insert(0);
                *slot = slot.checked_add(c).expect("coefficient overflow");
            }
        }
        acc.retain(|_, c| *c != 0);
        Character { terms: acc }
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if n > 0 { "+" } else { "" };
            if n > 0 {
                write!(f, " {sign} ")?;
            } else {
                write!(f, "{sign}")?;
            }
            match c.abs() {
                1 => write!(f, "{m}")?,
                a => write!(f, "{a} {m}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    m: YMonomial,
    c: i64,
}

#[derive(Serialize, Deserialize)]
struct CharacterRepr {
    terms: Vec<TermRepr>,
}

impl Serialize for Character {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CharacterRepr {
            terms: self.terms.iter().map(|(m, &c)| TermRepr { m: m.clone(), c }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Character {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CharacterRepr::deserialize(d)?;
        let mut seen = BTreeSet::new();
        for t in &repr.terms {
            if !seen.insert(t.m.clone()) {
                return Err(D::Error::custom(format!("duplicate monomial {}", t.m)));
            }
        }
        Ok(Self::from_terms(repr.terms.into_iter().map(|t| (t.m, t.c))))
    }
}

/// Keeps the terms `m` of `c` with `m / m_plus` a product of inverse
/// A-variables indexed by `region`.
pub fn truncate_character(
    c: &Character,
    m_plus: &YMonomial,
    region: &BTreeSet<LatticePoint>,
    alg: &Algebra,
) -> Character {
    Character::from_terms(
        c.terms()
            .filter(|(m, _)| in_cone(m, m_plus, region, alg))
            .map(|(m, k)| (m.clone(), k)),
    )
}

/// Whether `m ∈ m_plus · Q^-_U`.
pub fn in_cone(m: &YMonomial, m_plus: &YMonomial, region: &BTreeSet<LatticePoint>, alg: &Algebra) -> bool {
    match a_factorize(m, m_plus, alg) {
        Ok(f) => f.all_nonpositive() && f.support().all(|p| region.contains(&p)),
        Err(_) => false,
    }
}
