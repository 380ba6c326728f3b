//! sl2 building blocks and the truncated-character certificate: string
//! decompositions, simple and Weyl q-characters of sl2, the three-way
//! classification of lowering steps, the four-condition verifier for candidate
//! truncated characters, and the exclusion certificate used for simplicity of
//! `T ⊗ B`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Algebra, LatticePoint};
use crate::laurent::{a_factorize, Character, YMonomial};
use crate::paths::{highest_path, path_monomial, snake_lowered_path, weakly_above, PathSet};
use crate::qchar::{snake_character, QCharConfig};
use crate::tsystem::RelationInstance;

/// One node with its step: the `U_{q_i}(sl2)` seen by node `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sl2 {
    pub node: i32,
    pub r: i32,
}

impl Sl2 {
    pub fn a1() -> Self {
        Sl2 { node: 1, r: 1 }
    }

    pub fn of(alg: &Algebra, i: i32) -> Self {
        Sl2 { node: i, r: alg.r(i) }
    }

    fn y(&self, k: i32) -> YMonomial {
        YMonomial::y(self.node, k)
    }

    /// `A_a = Y_{a-r} Y_{a+r}`.
    pub fn a(&self, a: i32) -> YMonomial {
        YMonomial::from_factors([
            (LatticePoint::new(self.node, a - self.r), 1),
            (LatticePoint::new(self.node, a + self.r), 1),
        ])
    }

    fn check(&self, m: &YMonomial) -> Result<()> {
        if m.factors().any(|(p, _)| p.i != self.node) {
            return Err(Error::NotSingleNode);
        }
        if !m.is_dominant() {
            return Err(Error::NotDominant);
        }
        Ok(())
    }
}

/// `Y_k Y_{k+2r} … Y_{k+2r(len-1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QString {
    pub start: i32,
    pub len: u32,
}

impl QString {
    pub fn shifts(&self, r: i32) -> impl Iterator<Item = i32> {
        let (s, l) = (self.start, self.len as i32);
        (0..l).map(move |t| s + 2 * r * t)
    }

    pub fn monomial(&self, ctx: Sl2) -> YMonomial {
        YMonomial::from_factors(self.shifts(ctx.r).map(|k| (LatticePoint::new(ctx.node, k), 1)))
    }

    /// Two strings are in special position when their union is a string
    /// strictly longer than both.
    pub fn special_position(&self, o: &QString, r: i32) -> bool {
        let a: BTreeSet<i32> = self.shifts(r).collect();
        let b: BTreeSet<i32> = o.shifts(r).collect();
        if a.is_subset(&b) || b.is_subset(&a) {
            return false;
        }
        let u: Vec<i32> = a.union(&b).copied().collect();
        (self.start - o.start).rem_euclid(2 * r) == 0 && u.windows(2).all(|w| w[1] - w[0] == 2 * r)
    }
}

impl fmt::Display for QString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{})", self.start, self.len)
    }
}

/// Greedy normal form: repeatedly take the longest run from the least shift.
pub fn string_decompose_on(m: &YMonomial, ctx: Sl2) -> Result<Vec<QString>> {
    ctx.check(m)?;
    let mut left: BTreeMap<i32, i32> = m.factors().map(|(p, e)| (p.k, e)).collect();
    let mut out = Vec::new();
    while let Some((&start, _)) = left.iter().next() {
        let mut len = 0;
        let mut k = start;
        while let Some(e) = left.get_mut(&k) {
            *e -= 1;
            if *e == 0 {
                left.remove(&k);
            }
            len += 1;
            k += 2 * ctx.r;
        }
        out.push(QString { start, len });
    }
    debug_assert!(out.iter().enumerate().all(|(a, s)| out[a + 1..].iter().all(|t| !s.special_position(t, ctx.r))));
    Ok(out)
}

pub fn string_decompose(m: &YMonomial) -> Result<Vec<QString>> {
    string_decompose_on(m, Sl2::a1())
}

/// Terms of an sl2 character together with the lowering shifts producing them.
type Tracked = Vec<(YMonomial, BTreeMap<i32, i32>)>;

fn tracked_product(parts: Vec<Tracked>) -> Tracked {
    parts.into_iter().fold(vec![(YMonomial::one(), BTreeMap::new())], |acc, part| {
        let mut out = Vec::with_capacity(acc.len() * part.len());
        for (m1, a1) in &acc {
            for (m2, a2) in &part {
                let mut a = a1.clone();
                for (&k, &e) in a2 {
                    *a.entry(k).or_insert(0) += e;
                }
                out.push((m1 * m2, a));
            }
        }
        out
    })
}

fn string_terms(s: QString, ctx: Sl2) -> Tracked {
    let shifts: Vec<i32> = s.shifts(ctx.r).collect();
    let n = shifts.len();
    (0..=n)
        .map(|j| {
            // the last j factors are lowered, top first
            let mut m = YMonomial::one();
            let mut lowered = BTreeMap::new();
            for (t, &k) in shifts.iter().enumerate() {
                if t < n - j {
                    m = &m * &ctx.y(k);
                } else {
                    m = &m * &ctx.y(k + 2 * ctx.r).inverse();
                    lowered.insert(k + ctx.r, 1);
                }
            }
            (m, lowered)
        })
        .collect()
}

fn simple_tracked(m: &YMonomial, ctx: Sl2) -> Result<Tracked> {
    Ok(tracked_product(string_decompose_on(m, ctx)?.into_iter().map(|s| string_terms(s, ctx)).collect()))
}

fn weyl_tracked(m: &YMonomial, ctx: Sl2) -> Result<Tracked> {
    ctx.check(m)?;
    let parts = m
        .factors()
        .flat_map(|(p, e)| std::iter::repeat(p.k).take(e as usize))
        .map(|k| string_terms(QString { start: k, len: 1 }, ctx))
        .collect();
    Ok(tracked_product(parts))
}

fn untrack(t: Tracked) -> Character {
    Character::from_terms(t.into_iter().map(|(m, _)| (m, 1)))
}

pub fn sl2_simple_qchar_on(m: &YMonomial, ctx: Sl2) -> Result<Character> {
    Ok(untrack(simple_tracked(m, ctx)?))
}

pub fn sl2_weyl_qchar_on(m: &YMonomial, ctx: Sl2) -> Result<Character> {
    Ok(untrack(weyl_tracked(m, ctx)?))
}

pub fn sl2_simple_qchar(m: &YMonomial) -> Result<Character> {
    sl2_simple_qchar_on(m, Sl2::a1())
}

pub fn sl2_weyl_qchar(m: &YMonomial) -> Result<Character> {
    sl2_weyl_qchar_on(m, Sl2::a1())
}

/// The simple sl2 character of `m`, truncated to lowerings at shifts in `region`.
pub fn sl2_truncated_simple(m: &YMonomial, ctx: Sl2, region: &BTreeSet<i32>) -> Result<Character> {
    let kept = simple_tracked(m, ctx)?.into_iter().filter(|(_, a)| a.keys().all(|k| region.contains(k)));
    Ok(untrack(kept.collect()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Trichotomy {
    CaseI,
    CaseII,
    CaseIII,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrichotomyResult {
    pub case: Trichotomy,
    /// Whether `m A_a^{-1}` sits where the case says it does.
    pub membership_holds: bool,
}

/// Classify the lowering of `m` at shift `a`, for `m` a term of the
/// `U`-truncated character of `L(big)`.
pub fn sl2_trichotomy_on(
    big: &YMonomial,
    m: &YMonomial,
    a: i32,
    region: &BTreeSet<i32>,
    ctx: Sl2,
) -> Result<TrichotomyResult> {
    let trunc = sl2_truncated_simple(big, ctx, region)?;
    if trunc.terms().any(|(_, c)| c != 1) {
        return Err(Error::PreconditionFailed("L(M) is not thin in U".into()));
    }
    if !trunc.contains(m) {
        return Err(Error::PreconditionFailed(format!("{m} is not a term of the truncated character")));
    }
    if !region.contains(&a) {
        return Err(Error::PreconditionFailed(format!("shift {a} is not in U")));
    }
    let below = m.u_exponent(ctx.node, a - ctx.r);
    let above = m.u_exponent(ctx.node, a + ctx.r);
    let case = if below <= 0 {
        Trichotomy::CaseIII
    } else if below == above + 1 {
        Trichotomy::CaseI
    } else if below <= above {
        Trichotomy::CaseII
    } else {
        return Err(Error::PreconditionFailed(format!("exponents {below}, {above} fit no case")));
    };
    let lowered = m * &ctx.a(a).inverse();
    let in_simple = sl2_simple_qchar_on(big, ctx)?.contains(&lowered);
    let in_weyl = sl2_weyl_qchar_on(big, ctx)?.contains(&lowered);
    let membership_holds = match case {
        Trichotomy::CaseI => in_simple,
        Trichotomy::CaseII => in_weyl && !in_simple,
        Trichotomy::CaseIII => !in_weyl,
    };
    Ok(TrichotomyResult { case, membership_holds })
}

pub fn sl2_trichotomy(big: &YMonomial, m: &YMonomial, a: i32, region: &BTreeSet<i32>) -> Result<TrichotomyResult> {
    sl2_trichotomy_on(big, m, a, region, Sl2::a1())
}

/// Witness data for condition (iv) at one `(m, i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeWitness {
    pub m: YMonomial,
    pub node: i32,
    /// The i-dominant element satisfying the equation, if exactly one does.
    pub witness: Option<YMonomial>,
    pub candidates_matching: usize,
    pub class_sum: Character,
    /// Truncated sl2 character of the projected witness, when one exists.
    pub truncated: Option<Character>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThmACertificate {
    pub distinct: bool,
    pub in_cone: bool,
    pub only_dominant: bool,
    pub one_way_back: bool,
    pub node_characters: bool,
    pub witnesses: Vec<NodeWitness>,
    pub notes: Vec<String>,
    pub verdict: bool,
}

fn ratio_is_single_a(ratio: &YMonomial, alg: &Algebra) -> Option<LatticePoint> {
    ratio.factors().filter(|&(_, e)| e > 0).find_map(|(p, _)| {
        let at = LatticePoint::new(p.i, p.k - alg.r(p.i));
        match alg.a_monomial(at.i, at.k) {
            Ok(a) if &a == ratio => Some(at),
            _ => None,
        }
    })
}

/// Whether `m2 / m1` is a product of `A_{i,·}^{±1}`.
fn same_node_class(m1: &YMonomial, m2: &YMonomial, i: i32, alg: &Algebra) -> bool {
    match a_factorize(m2, m1, alg) {
        Ok(f) => f.support().all(|p| p.i == i),
        Err(_) => false,
    }
}

/// Check the four sufficient conditions for `Σ M_set` to be the `U`-truncated
/// q-character of `L(m_plus)`.
pub fn thm_a_verify(
    alg: &Algebra,
    m_plus: &YMonomial,
    m_set: &[YMonomial],
    region: &BTreeSet<LatticePoint>,
) -> ThmACertificate {
    let mut notes = Vec::new();
    let set: BTreeSet<&YMonomial> = m_set.iter().collect();
    let distinct = set.len() == m_set.len();
    if !distinct {
        notes.push("candidate monomials are not distinct".into());
    }

    // (i)
    let mut in_cone = true;
    for m in m_set {
        let ok = match a_factorize(m, m_plus, alg) {
            Ok(f) => f.all_nonpositive() && f.support().all(|p| region.contains(&p)),
            Err(_) => false,
        };
        if !ok {
            in_cone = false;
            notes.push(format!("(i): {m} is not in m+·Q⁻_U"));
        }
    }

    // (ii)
    let dominant: Vec<&YMonomial> = m_set.iter().filter(|m| m.is_dominant()).collect();
    let only_dominant = dominant.len() == 1 && dominant[0] == m_plus;
    if !only_dominant {
        notes.push(format!("(ii): dominant candidates {dominant:?}"));
    }

    // Exponent vectors relative to m_plus; monomials that are not A-related
    // to m_plus fall back to direct comparison.
    type Exps = BTreeMap<LatticePoint, i32>;
    let exps: Vec<Option<Exps>> = m_set.iter().map(|m| a_factorize(m, m_plus, alg).ok().map(|f| f.factors)).collect();
    let height = |f: &Exps| f.values().map(|&e| e as i64).sum::<i64>();

    // (iii)
    let mut one_way_back = true;
    let mut layers: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (x, f) in exps.iter().enumerate() {
        if let Some(f) = f {
            layers.entry(height(f)).or_default().push(x);
        }
    }
    for layer in layers.values() {
        for &x in layer {
            let fm = exps[x].as_ref().unwrap();
            for &y in layer {
                let fo = exps[y].as_ref().unwrap();
                let mut diff: Exps = fo.clone();
                for (&p, &e) in fm {
                    *diff.entry(p).or_insert(0) -= e;
                }
                diff.retain(|_, e| *e != 0);
                if diff.len() != 2 {
                    continue;
                }
                let (Some((&u, _)), Some((&jb, _))) =
                    (diff.iter().find(|(_, &e)| e == -1), diff.iter().find(|(_, &e)| e == 1))
                else {
                    continue;
                };
                if !region.contains(&u) {
                    continue;
                }
                let lowered = &m_set[x] * &alg.a_monomial(u.i, u.k).expect("region point").inverse();
                if !set.contains(&lowered) {
                    one_way_back = false;
                    notes.push(format!("(iii): {}·A{u}⁻¹·A{jb} = {}", m_set[x], m_set[y]));
                }
            }
        }
    }
    for m in m_set.iter().enumerate().filter(|(x, _)| exps[*x].is_none()).map(|(_, m)| m) {
        for &u in region {
            let Ok(a) = alg.a_monomial(u.i, u.k) else { continue };
            let lowered = m * &a.inverse();
            if set.contains(&lowered) {
                continue;
            }
            for (y, other) in m_set.iter().enumerate() {
                if exps[y].is_some() {
                    continue;
                }
                let ratio = other * &lowered.inverse();
                if let Some(jb) = ratio_is_single_a(&ratio, alg) {
                    if jb != u {
                        one_way_back = false;
                        notes.push(format!("(iii): {m}·A{u}⁻¹·A{jb} = {other}"));
                    }
                }
            }
        }
    }

    // (iv), one evaluation per node class
    let mut node_characters = true;
    let mut witnesses = Vec::new();
    type ClassResult = (Character, Vec<(YMonomial, Character)>);
    let mut by_node: Vec<Vec<Option<usize>>> = Vec::new();
    let mut results: Vec<ClassResult> = Vec::new();
    for i in alg.nodes() {
        let ctx = Sl2::of(alg, i);
        let shifts: BTreeSet<i32> = region.iter().filter(|p| p.i == i).map(|p| p.k).collect();
        let mut keys: BTreeMap<Exps, Vec<usize>> = BTreeMap::new();
        let mut members: Vec<Vec<usize>> = Vec::new();
        for (x, f) in exps.iter().enumerate() {
            match f {
                Some(f) => keys.entry(f.iter().filter(|(p, _)| p.i != i).map(|(&p, &e)| (p, e)).collect()).or_default().push(x),
                None => members.push(
                    (0..m_set.len()).filter(|&y| exps[y].is_none() && same_node_class(&m_set[x], &m_set[y], i, alg)).collect(),
                ),
            }
        }
        members.extend(keys.into_values());
        let mut slot = vec![None; m_set.len()];
        for class in members {
            let class_sum = Character::from_terms(class.iter().map(|&y| (m_set[y].beta_project(i), 1)));
            let mut matching = Vec::new();
            for &y in class.iter().filter(|&&y| m_set[y].is_i_dominant(i)) {
                if let Ok(t) = sl2_truncated_simple(&m_set[y].beta_project(i), ctx, &shifts) {
                    if t == class_sum {
                        matching.push((m_set[y].clone(), t));
                    }
                }
            }
            for &y in &class {
                slot[y].get_or_insert(results.len());
            }
            results.push((class_sum, matching));
        }
        by_node.push(slot);
    }
    for (x, m) in m_set.iter().enumerate() {
        for (ni, i) in alg.nodes().enumerate() {
            let (class_sum, matching) = &results[by_node[ni][x].expect("every monomial has a class")];
            let n = matching.len();
            if n != 1 {
                node_characters = false;
                notes.push(format!("(iv): {n} matching node-{i} witnesses for {m}"));
            }
            let (witness, truncated) = match matching.first() {
                Some((w, t)) if n == 1 => (Some(w.clone()), Some(t.clone())),
                _ => (None, None),
            };
            witnesses.push(NodeWitness {
                m: m.clone(),
                node: i,
                witness,
                candidates_matching: n,
                class_sum: class_sum.clone(),
                truncated,
            });
        }
    }

    let verdict = distinct && in_cone && only_dominant && one_way_back && node_characters;
    ThmACertificate { distinct, in_cone, only_dominant, one_way_back, node_characters, witnesses, notes, verdict }
}

/// Grow a candidate set from `m_plus` by lowering at `(i,a) ∈ U` whenever
/// `0 < u_{i,a-r}(m) = u_{i,a+r}(m) + 1`.
pub fn thin_closure(
    alg: &Algebra,
    m_plus: &YMonomial,
    region: &BTreeSet<LatticePoint>,
    cap: usize,
) -> Result<Vec<YMonomial>> {
    let mut seen: BTreeSet<YMonomial> = BTreeSet::from([m_plus.clone()]);
    let mut frontier = vec![m_plus.clone()];
    while let Some(m) = frontier.pop() {
        for &u in region {
            let r = alg.r(u.i);
            let below = m.u_exponent(u.i, u.k - r);
            if below > 0 && below == m.u_exponent(u.i, u.k + r) + 1 {
                let next = &m * &alg.a_monomial(u.i, u.k)?.inverse();
                if seen.insert(next.clone()) {
                    if seen.len() > cap {
                        return Err(Error::TooLarge { cap: cap as u64 });
                    }
                    frontier.push(next);
                }
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExclusionCertificate {
    pub r: usize,
    pub n: YMonomial,
    pub region: Vec<LatticePoint>,
    /// Lowering points, in an order in which the moves can be applied.
    pub moves: Vec<LatticePoint>,
    pub candidates: Vec<YMonomial>,
    pub thm_a: ThmACertificate,
    pub witness: YMonomial,
    pub absent: bool,
}

impl ExclusionCertificate {
    pub fn holds(&self) -> bool {
        self.thm_a.verdict && self.absent
    }
}

/// For `2 ≤ r ≤ T-1` (1-based), certify that the non-highest dominant monomial
/// `n` of `χ(T)χ(B)` indexed by `r` has a term of `χ(L(n))` missing from `χ(T)χ(B)`.
pub fn exclusion_certificate(rel: &RelationInstance, r: usize, cfg: &QCharConfig) -> Result<ExclusionCertificate> {
    let top = &rel.top;
    let t = top.len();
    if t < 3 || r < 2 || r > t - 1 {
        return Err(Error::BadR { r, max: t.saturating_sub(1) });
    }
    let alg = top.algebra();
    let pts = top.points();
    let mut n = top.monomial();
    for p in &pts[1..r - 1] {
        n = &n * &YMonomial::y(p.i, p.k);
    }
    for w in pts[r - 1..].windows(2) {
        n = &n * &path_monomial(&snake_lowered_path(alg, w[0], w[1])?, alg);
    }

    let at = pts[r - 1];
    let set = PathSet::new(alg, at.i, at.k)?;
    let high = highest_path(alg, at.i, at.k)?;
    let low = snake_lowered_path(alg, at, pts[r])?;
    let (high_mon, low_mon) = (path_monomial(&high, alg), path_monomial(&low, alg));

    // replay the lowering moves from the highest to the snake-lowered path
    let mut pending: BTreeMap<LatticePoint, i32> =
        a_factorize(&low_mon, &high_mon, alg)?.factors.into_iter().map(|(p, e)| (p, -e)).collect();
    let mut cur = high.clone();
    let mut moves = Vec::new();
    while !pending.is_empty() {
        let next = pending.keys().copied().find_map(|p| set.lower(&cur, p.i, p.k).ok().map(|q| (p, q)));
        let Some((p, q)) = next else {
            return Err(Error::PreconditionFailed("no lowering move sequence reaches the snake-lowered path".into()));
        };
        moves.push(p);
        cur = q;
        let e = pending.get_mut(&p).unwrap();
        *e -= 1;
        if *e == 0 {
            pending.remove(&p);
        }
    }
    let region: BTreeSet<LatticePoint> = moves.iter().copied().collect();

    let base = &n * &high_mon.inverse();
    let mut candidates = Vec::new();
    for (p, m) in set.paths().iter().zip(set.monomials()) {
        if weakly_above(p, &low)? {
            candidates.push(&base * m);
        }
    }
    let thm_a = thm_a_verify(alg, &n, &candidates, &region);
    let witness = &base * &low_mon;
    let tb = &snake_character(top, cfg)? * &snake_character(&rel.bottom, cfg)?;
    let absent = !tb.contains(&witness);
    Ok(ExclusionCertificate {
        r,
        n,
        region: region.into_iter().collect(),
        moves,
        candidates,
        thm_a,
        witness,
        absent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::snakes::validate_snake;
    use crate::tsystem::extended_relation;

    fn y(k: i32) -> YMonomial {
        YMonomial::y(1, k)
    }

    fn prod(ks: &[i32]) -> YMonomial {
        ks.iter().fold(YMonomial::one(), |m, &k| &m * &y(k))
    }

    fn s(start: i32, len: u32) -> QString {
        QString { start, len }
    }

    #[test]
    fn decompositions() {
        assert_eq!(string_decompose(&prod(&[0, 2, 2, 4])).unwrap(), [s(0, 3), s(2, 1)]);
        assert_eq!(string_decompose(&y(0)).unwrap(), [s(0, 1)]);
        assert_eq!(string_decompose(&prod(&[0, 6])).unwrap(), [s(0, 1), s(6, 1)]);
        assert_eq!(string_decompose(&y(0).inverse()), Err(Error::NotDominant));
        assert_eq!(string_decompose(&YMonomial::y(2, 0)), Err(Error::NotSingleNode));
        assert!(s(0, 2).special_position(&s(2, 2), 1));
        assert!(!s(0, 3).special_position(&s(2, 1), 1));
        assert!(!s(0, 1).special_position(&s(4, 1), 1));
        assert!(s(0, 1).special_position(&s(2, 1), 1));
    }

    #[test]
    fn characters() {
        assert_eq!(sl2_simple_qchar(&y(0)).unwrap(), Character::from_terms([(y(0), 1), (y(2).inverse(), 1)]));
        let l = sl2_simple_qchar(&prod(&[0, 2])).unwrap();
        let expected = Character::from_terms([
            (prod(&[0, 2]), 1),
            (&y(0) * &y(4).inverse(), 1),
            (prod(&[2, 4]).inverse(), 1),
        ]);
        assert_eq!(l, expected);
        let w = sl2_weyl_qchar(&prod(&[0, 2])).unwrap();
        assert_eq!(w.dim(), 4);
        assert_eq!(w.coefficient(&YMonomial::one()), 1);
        let f = sl2_simple_qchar(&y(0)).unwrap();
        assert_eq!(sl2_simple_qchar(&prod(&[0, 0])).unwrap(), &f * &f);
    }

    #[test]
    fn trichotomy_examples() {
        let u: BTreeSet<i32> = [1, 3, 5].into();
        let r = sl2_trichotomy(&y(0), &y(0), 1, &u).unwrap();
        assert_eq!(r, TrichotomyResult { case: Trichotomy::CaseI, membership_holds: true });
        let r = sl2_trichotomy(&y(0), &y(2).inverse(), 3, &u).unwrap();
        assert_eq!(r.case, Trichotomy::CaseIII);
        assert!(r.membership_holds);
        let big = prod(&[0, 2]);
        let r = sl2_trichotomy(&big, &big, 3, &u).unwrap();
        assert_eq!(r, TrichotomyResult { case: Trichotomy::CaseI, membership_holds: true });
        let r = sl2_trichotomy(&big, &big, 1, &u).unwrap();
        assert_eq!(r, TrichotomyResult { case: Trichotomy::CaseII, membership_holds: true });
        assert!(matches!(sl2_trichotomy(&y(0), &y(4), 1, &u), Err(Error::PreconditionFailed(_))));
    }

    #[test]
    fn thm_a_small() {
        let a1 = Algebra::a(1);
        let u: BTreeSet<LatticePoint> = [LatticePoint::new(1, 1)].into();
        let cert = thm_a_verify(&a1, &y(0), &[y(0), y(2).inverse()], &u);
        assert!(cert.verdict, "{:?}", cert.notes);
        let cert = thm_a_verify(&a1, &y(0), &[y(0)], &u);
        assert!(!cert.verdict);
        assert!(cert.in_cone && cert.only_dominant && !cert.node_characters);
        let cert = thm_a_verify(&a1, &y(0), &[y(0)], &BTreeSet::new());
        assert!(cert.verdict);
    }

    #[test]
    fn closure_matches_small_truncation() {
        let a1 = Algebra::a(1);
        let u: BTreeSet<LatticePoint> = [LatticePoint::new(1, 1), LatticePoint::new(1, 3)].into();
        let got = thin_closure(&a1, &prod(&[0, 2]), &u, 100).unwrap();
        assert_eq!(got.len(), 3);
    }

    #[test]
    fn exclusion_small() {
        let cfg = QCharConfig::default();
        for (alg, pts) in [(Algebra::a(2), [(1, 0), (1, 2), (1, 4)]), (Algebra::b(2), [(2, 1), (2, 3), (2, 5)])] {
            let pts: Vec<LatticePoint> = pts.iter().map(|&p| p.into()).collect();
            let rel = extended_relation(&validate_snake(&alg, &pts).unwrap()).unwrap();
            let cert = exclusion_certificate(&rel, 2, &cfg).unwrap();
            assert!(cert.holds(), "{alg}: {:?}", cert.thm_a.notes);
            assert_eq!(exclusion_certificate(&rel, 1, &cfg).unwrap_err(), Error::BadR { r: 1, max: 2 });
            assert_eq!(exclusion_certificate(&rel, 3, &cfg).unwrap_err(), Error::BadR { r: 3, max: 2 });
        }
    }
}
