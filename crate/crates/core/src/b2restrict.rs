//! Finite-type B2: Weyl characters, decomposition of restricted snake modules,
//! and the B2 Q-system among restricted wrapping modules.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Sub};

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Algebra, LatticePoint};
use crate::qchar::{restrict_weights, snake_character, QCharConfig};
use crate::snakes::{validate_snake, Snake};

/// `a ω_1 + b ω_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GWeight(pub i64, pub i64);

impl GWeight {
    pub const RHO: GWeight = GWeight(1, 1);

    pub fn is_dominant(self) -> bool {
        self.0 >= 0 && self.1 >= 0
    }

    /// Simple reflections; `α_1 = 2ω_1 - 2ω_2`, `α_2 = -ω_1 + 2ω_2`.
    pub fn reflect(self, i: u8) -> GWeight {
        match i {
            1 => GWeight(self.0 - 2 * self.0, self.1 + 2 * self.0),
            2 => GWeight(self.0 + self.1, self.1 - 2 * self.1),
            _ => panic!("B2 has simple reflections 1 and 2 only"),
        }
    }

    // stripping order: larger (a+b, a) first
    fn strip_key(self) -> (i64, i64) {
        (self.0 + self.1, self.0)
    }
}

impl Add for GWeight {
    type Output = GWeight;
    fn add(self, o: GWeight) -> GWeight {
        GWeight(self.0 + o.0, self.1 + o.1)
    }
}

impl Sub for GWeight {
    type Output = GWeight;
    fn sub(self, o: GWeight) -> GWeight {
        GWeight(self.0 - o.0, self.1 - o.1)
    }
}

impl fmt::Display for GWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.0, self.1)
    }
}

/// Finite sum `Σ c_λ e^λ`, also used for Weyl numerators.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GCharacter {
    terms: BTreeMap<GWeight, i64>,
}

impl GCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_terms([(GWeight(0, 0), 1)])
    }

    pub fn from_terms<I: IntoIterator<Item = (GWeight, i64)>>(it: I) -> Self {
        let mut c = Self::zero();
        for (w, k) in it {
            c.add_term(w, k);
        }
        c
    }

    pub fn add_term(&mut self, w: GWeight, k: i64) {
        let e = self.terms.entry(w).or_insert(0);
        *e = e.checked_add(k).expect("coefficient overflow");
        if *e == 0 {
            self.terms.remove(&w);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (GWeight, i64)> + '_ {
        self.terms.iter().map(|(&w, &k)| (w, k))
    }

    pub fn coefficient(&self, w: GWeight) -> i64 {
        self.terms.get(&w).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn dim(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(w, c)| (w, c * k)))
    }

    pub fn shift(&self, by: GWeight) -> Self {
        Self::from_terms(self.terms().map(|(w, c)| (w + by, c)))
    }

    pub fn reflect(&self, i: u8) -> Self {
        Self::from_terms(self.terms().map(|(w, c)| (w.reflect(i), c)))
    }

    pub fn from_weight_map(alg: &Algebra, m: &BTreeMap<crate::laurent::WeightVector, i64>) -> Result<Self> {
        if *alg != Algebra::b(2) {
            return Err(Error::InvalidAlgebra(format!("{alg} is not B2")));
        }
        Ok(Self::from_terms(m.iter().map(|(w, &c)| (GWeight(w.coords[0], w.coords[1]), c))))
    }

    fn leading(&self) -> Option<(GWeight, i64)> {
        self.terms.iter().next_back().map(|(&w, &c)| (w, c))
    }

    // componentwise (min, max) of the exponents
    fn bbox(&self) -> Option<(GWeight, GWeight)> {
        let mut it = self.terms.keys();
        let first = *it.next()?;
        Some(it.fold((first, first), |(lo, hi), w| {
            (GWeight(lo.0.min(w.0), lo.1.min(w.1)), GWeight(hi.0.max(w.0), hi.1.max(w.1)))
        }))
    }

    /// Exact division by a Laurent polynomial, in the lexicographic order on weights.
    /// Quotient terms of an exact division lie in the box `[lo(n) - lo(d), hi(n) - hi(d)]`.
    pub fn exact_div(&self, d: &GCharacter) -> Result<GCharacter> {
        let (dl, dc) = d.leading().ok_or(Error::DivisionNotExact)?;
        let Some((nlo, nhi)) = self.bbox() else { return Ok(GCharacter::zero()) };
        let (dlo, dhi) = d.bbox().expect("nonzero divisor");
        let (lo, hi) = (nlo - dlo, nhi - dhi);
        let mut rem = self.clone();
        let mut q = GCharacter::zero();
        while let Some((w, c)) = rem.leading() {
            let qw = w - dl;
            if c % dc != 0 || qw.0 < lo.0 || qw.1 < lo.1 || qw.0 > hi.0 || qw.1 > hi.1 {
                return Err(Error::DivisionNotExact);
            }
            let t = GCharacter::from_terms([(qw, c / dc)]);
            rem = &rem - &(&t * d);
            q.add_term(qw, c / dc);
        }
        Ok(q)
    }
}

impl Add for &GCharacter {
    type Output = GCharacter;
    fn add(self, o: &GCharacter) -> GCharacter {
        let mut c = self.clone();
        for (w, k) in o.terms() {
            c.add_term(w, k);
        }
        c
    }
}

impl Sub for &GCharacter {
    type Output = GCharacter;
    fn sub(self, o: &GCharacter) -> GCharacter {
        let mut c = self.clone();
        for (w, k) in o.terms() {
            c.add_term(w, -k);
        }
        c
    }
}

impl Mul for &GCharacter {
    type Output = GCharacter;
    fn mul(self, o: &GCharacter) -> GCharacter {
        let mut c = GCharacter::zero();
        for (w1, k1) in self.terms() {
            for (w2, k2) in o.terms() {
                c.add_term(w1 + w2, k1.checked_mul(k2).expect("coefficient overflow"));
            }
        }
        c
    }
}

impl Serialize for GCharacter {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms())
    }
}

/// `Σ_w (-1)^{ℓ(w)} e^{w(λ+ρ)}`, the eight terms written out.
pub fn weyl_numerator(lam: GWeight) -> Result<GCharacter> {
    if !lam.is_dominant() {
        return Err(Error::NotDominant);
    }
    let (l1, l2) = (lam.0, lam.1);
    Ok(GCharacter::from_terms([
        (GWeight(l1 + 1, l2 + 1), 1),
        (GWeight(-l1 - 1, l2 + 2 * l1 + 3), -1),
        (GWeight(l2 + l1 + 2, -l2 - 1), -1),
        (GWeight(-l2 - l1 - 2, l2 + 2 * l1 + 3), 1),
        (GWeight(l2 + l1 + 2, -l2 - 2 * l1 - 3), 1),
        (GWeight(-l2 - l1 - 2, l2 + 1), -1),
        (GWeight(l1 + 1, -l2 - 2 * l1 - 3), -1),
        (GWeight(-l1 - 1, -l2 - 1), 1),
    ]))
}

pub fn weyl_character(lam: GWeight) -> Result<GCharacter> {
    weyl_numerator(lam)?.exact_div(&weyl_numerator(GWeight(0, 0))?)
}

pub fn weyl_dimension(lam: GWeight) -> i64 {
    let (a, b) = (lam.0, lam.1);
    (a + 1) * (b + 1) * (a + b + 2) * (2 * a + b + 3) / 6
}

/// Multiplicities of simple modules, keyed by highest weight.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Decomposition(pub BTreeMap<GWeight, u64>);

impl Decomposition {
    pub fn dim(&self) -> i64 {
        self.0.iter().map(|(&w, &m)| weyl_dimension(w) * m as i64).sum()
    }

    pub fn character(&self) -> Result<GCharacter> {
        let mut c = GCharacter::zero();
        for (&w, &m) in &self.0 {
            c = &c + &weyl_character(w)?.scale(m as i64);
        }
        Ok(c)
    }

    fn push(&mut self, w: GWeight, m: u64) {
        if m > 0 {
            *self.0.entry(w).or_insert(0) += m;
        }
    }
}

impl Serialize for Decomposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            highest_weight: GWeight,
            multiplicity: u64,
        }
        s.collect_seq(self.0.iter().map(|(&w, &m)| Entry { highest_weight: w, multiplicity: m }))
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(w, &m)| if m == 1 { format!("V{w}") } else { format!("{m}·V{w}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Peel off simple characters, highest weights first.
pub fn decompose(c: &GCharacter) -> Result<Decomposition> {
    let mut rem = c.clone();
    let mut out = Decomposition::default();
    while !rem.is_empty() {
        let (w, k) = rem
            .terms()
            .filter(|(w, _)| w.is_dominant())
            .max_by_key(|(w, _)| w.strip_key())
            .ok_or_else(|| Error::NotACharacter("residue has no dominant weight".into()))?;
        if k < 0 {
            return Err(Error::NotACharacter(format!("negative multiplicity {k} at {w}")));
        }
        rem = &rem - &weyl_character(w)?.scale(k);
        out.push(w, k as u64);
    }
    Ok(out)
}

/// The point list `Y_{1,0}…Y_{1,4m-4} · Y_{2,4m+1}…Y_{2,4m+2k-1} · Y_{1,4m+2k+4}…Y_{1,4m+2k+4n}`.
pub fn wq_points(m: u32, mid: u32, n: u32) -> Vec<LatticePoint> {
    let (m, k, n) = (m as i32, mid as i32, n as i32);
    let mut v: Vec<LatticePoint> = (0..m).map(|t| LatticePoint::new(1, 4 * t)).collect();
    v.extend((0..k).map(|t| LatticePoint::new(2, 4 * m + 1 + 2 * t)));
    v.extend((1..=n).map(|t| LatticePoint::new(1, 4 * m + 2 * k + 4 * t)));
    v
}

pub fn wq_snake(m: u32, mid: u32, n: u32) -> Result<Snake> {
    validate_snake(&Algebra::b(2), &wq_points(m, mid, n))
}

/// Restricted character of the snake module `W_Q{m,mid,n}`.
pub fn wq_character(m: u32, mid: u32, n: u32, cfg: &QCharConfig) -> Result<GCharacter> {
    let b2 = Algebra::b(2);
    let ch = snake_character(&wq_snake(m, mid, n)?, cfg)?;
    GCharacter::from_weight_map(&b2, &restrict_weights(&ch, &b2))
}

pub fn wq_decompose(m: u32, mid: u32, n: u32, cfg: &QCharConfig) -> Result<Decomposition> {
    decompose(&wq_character(m, mid, n, cfg)?)
}

/// Closed-form decomposition of `W_Q{m,mid,n}`: for odd `mid = 2k+1`,
/// `⊕_{i≤min(m,n)} ⊕_{j≤k} V((m+n-2i)ω_1 + (2i+2k-2j+1)ω_2)`;
/// for even `mid = 2k` the inner sum runs to `i+k` without the `+1`.
pub fn predicted_decomposition(m: u32, mid: u32, n: u32) -> Decomposition {
    let (m, n) = (m as i64, n as i64);
    let k = (mid / 2) as i64;
    let odd = mid % 2 == 1;
    let mut out = Decomposition::default();
    for i in 0..=m.min(n) {
        let jmax = if odd { k } else { i + k };
        for j in 0..=jmax {
            out.push(GWeight(m + n - 2 * i, 2 * i + 2 * k - 2 * j + odd as i64), 1);
        }
    }
    out
}

/// `dim W_Q{m,2k+1,n} = (k+1)(n+1)(m+1)(n+k+2)(m+k+2)(n+m+k+3)/3`.
pub fn odd_wrapping_dimension(m: i64, k: i64, n: i64) -> i64 {
    (k + 1) * (n + 1) * (m + 1) * (n + k + 2) * (m + k + 2) * (n + m + k + 3) / 3
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QSystemCheck {
    pub relation: u8,
    pub params: (u32, u32, u32),
    pub holds: bool,
    /// `dim LHS = dim T·B + dim X·Y`.
    pub dims: (i64, i64, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QSystemReport {
    pub checks: Vec<QSystemCheck>,
}

impl QSystemReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &QSystemCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

type Key = (u32, u32, u32);

// one relation: [left, right] = [top, bottom] + [x, y]
fn relations(max: u32) -> Vec<(u8, Key, [Key; 6])> {
    let mut out = Vec::new();
    let r = 0..=max;
    for m in r.clone() {
        for k in r.clone() {
            for n in r.clone() {
                let o = 2 * k + 1;
                out.push((
                    1,
                    (m, k, n),
                    [(m, o, n + 1), (m + 1, o, n), (m + 1, o, n + 1), (m, o, n), (k, 2 * n + 1, 0), (k, 2 * m + 1, 0)],
                ));
            }
            out.push((
                2,
                (m, k, 0),
                [(m + 1, 2 * k, 0), (m, 2 * k + 1, 0), (m + 1, 2 * k + 1, 0), (m, 2 * k, 0), (k, 0, 0), (k, 2 * m + 1, 0)],
            ));
        }
        out.push((3, (m, 0, 0), [(m + 1, 0, 0), (m + 1, 0, 0), (m + 2, 0, 0), (m, 0, 0), (0, 2 * m + 2, 0), (0, 0, 0)]));
        let k = m;
        out.push((
            4,
            (k, 0, 0),
            [(0, k + 1, 0), (0, k + 1, 0), (0, k + 2, 0), (0, k, 0), ((k + 1) / 2, 0, 0), ((k + 2) / 2, 0, 0)],
        ));
    }
    out
}

/// Check the four B2 Q-system relations for all parameters up to `max`, as
/// exact identities between restricted characters.
pub fn verify_b2_qsystem(max: u32, cfg: &QCharConfig) -> Result<QSystemReport> {
    let rels = relations(max);
    let mut keys: Vec<Key> = rels.iter().flat_map(|(_, _, ks)| ks.iter().copied()).collect();
    keys.sort();
    keys.dedup();
    let chars: HashMap<Key, GCharacter> = keys
        .par_iter()
        .map(|&(m, k, n)| Ok(((m, k, n), wq_character(m, k, n, cfg)?)))
        .collect::<Result<_>>()?;
    let checks = rels
        .into_iter()
        .map(|(relation, params, [l, r, t, b, x, y])| {
            let lhs = &chars[&l] * &chars[&r];
            let tb = &chars[&t] * &chars[&b];
            let xy = &chars[&x] * &chars[&y];
            QSystemCheck { relation, params, holds: lhs == &tb + &xy, dims: (lhs.dim(), tb.dim(), xy.dim()) }
        })
        .collect();
    Ok(QSystemReport { checks })
}
