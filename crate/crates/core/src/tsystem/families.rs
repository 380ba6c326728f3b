//! Closed-form families of relations: KR modules, minimal affinizations and
//! type-B wrapping modules, built from their string recurrences and checked
//! against the geometric relation.

use serde::{Deserialize, Serialize};

use super::{extended_relation, RelationInstance};
use crate::error::{Error, Result};
use crate::lattice::{Algebra, Kind, LatticePoint};
use crate::laurent::YMonomial;
use crate::snakes::validate_snake;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    /// `W_{i,k}^{m}`, `m ≥ 2`.
    Kr { i: i32, k: i32, m: i32 },
    /// `W_{i,k}^{m,n}` on nodes `i, i+1`; `m, n ≥ 1`.
    TwoNode { i: i32, k: i32, m: i32, n: i32 },
    /// `W̃_{i,k}^{m,n}` on nodes `i, i-1`; `m, n ≥ 1`.
    TwoNodeTilde { i: i32, k: i32, m: i32, n: i32 },
    /// Type A, `W_{a,k}^{λ_a,…,λ_b}` with `a < b`.
    AMinAff { a: i32, k: i32, lambdas: Vec<i32> },
    /// Type A, `W̃_{b,k}^{λ_b,…,λ_a}` with `a < b`.
    AMinAffTilde { b: i32, k: i32, lambdas: Vec<i32> },
    /// Type B, `W_{a,k}^{λ_a,…,λ_b}` with `b - a ≥ 2`.
    BMinAff { a: i32, k: i32, lambdas: Vec<i32> },
    /// Type B, `W̃_{b,k}^{λ_b,…,λ_a}` with `b - a ≥ 2`.
    BMinAffTilde { b: i32, k: i32, lambdas: Vec<i32> },
    /// Type B wrapping module. `lambdas[j]` is `λ_{j+1}` and `bar[j]` is `λ̄_{j+1}`,
    /// both of length `N-1`; the spinor string has length `2·lambda+1`.
    BWrapping { k: i32, lambdas: Vec<i32>, lambda: i32, bar: Vec<i32> },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Kr { .. } => "kr",
            Family::TwoNode { .. } => "two-node",
            Family::TwoNodeTilde { .. } => "two-node-tilde",
            Family::AMinAff { .. } => "a-min-aff",
            Family::AMinAffTilde { .. } => "a-min-aff-tilde",
            Family::BMinAff { .. } => "b-min-aff",
            Family::BMinAffTilde { .. } => "b-min-aff-tilde",
            Family::BWrapping { .. } => "b-wrapping",
        }
    }
}

/// The six monomials of a relation as given by the closed formulas.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrintedParticipants {
    pub top: Vec<LatticePoint>,
    pub left: YMonomial,
    pub right: YMonomial,
    pub bottom: YMonomial,
    pub x: YMonomial,
    pub y: YMonomial,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}

// r_i, extended to the nodes just outside I
fn r(alg: &Algebra, i: i32) -> i32 {
    if alg.contains_node(i) {
        alg.r(i)
    } else {
        match alg.kind() {
            Kind::A => 1,
            Kind::B => 2,
        }
    }
}

/// The q-string `(i, k + 2t r_i)`, `0 ≤ t < m`; empty off `I`.
pub fn q_string(alg: &Algebra, i: i32, k: i32, m: i32) -> Result<Vec<LatticePoint>> {
    if m < 0 {
        return Err(bad(format!("negative string length {m}")));
    }
    if !alg.contains_node(i) {
        return Ok(Vec::new());
    }
    Ok((0..m).map(|t| LatticePoint::new(i, k + 2 * t * alg.r(i))).collect())
}

/// `W_{a,k}^{n_1..n_s}` (`step = 1`) or `W̃_{a,k}^{n_1..n_s}` (`step = -1`).
pub fn chain(alg: &Algebra, a: i32, k: i32, ns: &[i32], step: i32) -> Result<Vec<LatticePoint>> {
    let mut out = Vec::new();
    let mut kk = k;
    for (t, &n) in ns.iter().enumerate() {
        let node = a + step * t as i32;
        out.extend(q_string(alg, node, kk, n)?);
        let (rc, rn) = (r(alg, node), r(alg, node + step));
        kk += 2 * n * rc - rc + rn + rc.max(rn);
    }
    Ok(out)
}

/// `Ww_{a,ℓ}^{n_a..n_{N-1}; c; n̄_{N-1}..n̄_b}`: strings on nodes `a..N-1`, a spinor
/// string of length `c`, then strings on nodes `N-1, N-2, …`.
pub fn wrapping(alg: &Algebra, a: i32, l: i32, ns: &[i32], c: i32, bar: &[i32]) -> Result<Vec<LatticePoint>> {
    let n = alg.rank();
    if ns.len() as i32 != n - a {
        return Err(bad(format!("wrapping string needs {} leading entries, got {}", n - a, ns.len())));
    }
    let mut out = Vec::new();
    let mut ll = l;
    for (t, &m) in ns.iter().enumerate() {
        out.extend(q_string(alg, a + t as i32, ll, m)?);
        ll += 4 * m + 2;
    }
    // the last step into the spinor node is one shorter
    ll -= 1;
    out.extend(q_string(alg, n, ll, c)?);
    ll += 2 * c + 3;
    for (t, &m) in bar.iter().enumerate() {
        out.extend(q_string(alg, n - 1 - t as i32, ll, m)?);
        ll += 4 * m + 2;
    }
    Ok(out)
}

fn mon(pts: &[LatticePoint]) -> YMonomial {
    YMonomial::product_of_points(pts)
}

fn s(l: i32) -> i32 {
    l.rem_euclid(2)
}

fn half(l: i32) -> i32 {
    l.div_euclid(2)
}

fn with_last(v: &[i32], d: i32) -> Vec<i32> {
    let mut v = v.to_vec();
    *v.last_mut().unwrap() += d;
    v
}

fn with_first(v: &[i32], d: i32) -> Vec<i32> {
    let mut v = v.to_vec();
    v[0] += d;
    v
}

fn need_kind(alg: &Algebra, kind: Kind) -> Result<()> {
    if alg.kind() == kind {
        Ok(())
    } else {
        Err(bad(format!("family requires type {kind:?}")))
    }
}

fn need(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(bad(msg))
    }
}

/// Participants as given by the closed formulas, without any geometry.
pub fn printed_participants(alg: &Algebra, fam: &Family) -> Result<PrintedParticipants> {
    let n = alg.rank();
    let typ_b = alg.kind() == Kind::B;
    let node = |i: i32| need(alg.contains_node(i), "node out of range");
    let p = |top: Vec<LatticePoint>, l: Vec<LatticePoint>, rt: Vec<LatticePoint>, b: Vec<LatticePoint>, x: Vec<LatticePoint>, y: Vec<LatticePoint>| PrintedParticipants {
        top,
        left: mon(&l),
        right: mon(&rt),
        bottom: mon(&b),
        x: mon(&x),
        y: mon(&y),
    };
    match fam {
        &Family::Kr { i, k, m } => {
            node(i)?;
            need(m >= 2, "m ≥ 2 required")?;
            let k2 = k + 2 * alg.r(i);
            let st = |i, k, m| q_string(alg, i, k, m);
            let (x, y) = if !typ_b {
                (st(i - 1, k + 1, m - 1)?, st(i + 1, k + 1, m - 1)?)
            } else if i < n - 1 {
                (st(i - 1, k + 2, m - 1)?, st(i + 1, k + 2, m - 1)?)
            } else if i == n - 1 {
                (st(n - 2, k + 2, m - 1)?, st(n, k + 1, 2 * m - 2)?)
            } else {
                (st(n - 1, k + 1, half(m))?, st(n - 1, k + 3, half(m - 1))?)
            };
            Ok(p(st(i, k, m)?, st(i, k, m - 1)?, st(i, k2, m - 1)?, st(i, k2, m - 2)?, x, y))
        }
        &Family::TwoNode { i, k, m, n: nn } => {
            node(i)?;
            node(i + 1)?;
            need(m >= 1 && nn >= 1, "m, n ≥ 1 required")?;
            let w = |a, k, ns: &[i32]| chain(alg, a, k, ns, 1);
            let k2 = k + 2 * alg.r(i);
            let (x, y) = if !typ_b {
                (w(i - 1, k + 1, &[m, nn - 1])?, w(i + 1, k + 1, &[m - 1, nn])?)
            } else if i < n - 2 {
                (w(i - 1, k + 2, &[m, nn - 1])?, w(i + 1, k + 2, &[m - 1, nn])?)
            } else if i == n - 2 {
                // the second string of Y sits on the spinor node and doubles
                (w(i - 1, k + 2, &[m, nn - 1])?, w(n - 1, k + 2, &[m - 1, 2 * nn])?)
            } else {
                (w(n - 2, k + 2, &[m, half(nn - 1)])?, chain(alg, n, k + 1, &[2 * m - 1, half(nn)], -1)?)
            };
            Ok(p(w(i, k, &[m, nn])?, w(i, k, &[m, nn - 1])?, w(i, k2, &[m - 1, nn])?, w(i, k2, &[m - 1, nn - 1])?, x, y))
        }
        &Family::TwoNodeTilde { i, k, m, n: nn } => {
            node(i)?;
            node(i - 1)?;
            need(m >= 1 && nn >= 1, "m, n ≥ 1 required")?;
            let wt = |a, k, ns: &[i32]| chain(alg, a, k, ns, -1);
            let k2 = k + 2 * alg.r(i);
            let (x, y) = if !typ_b {
                (wt(i + 1, k + 1, &[m, nn - 1])?, wt(i - 1, k + 1, &[m - 1, nn])?)
            } else if i < n - 1 {
                (wt(i + 1, k + 2, &[m, nn - 1])?, wt(i - 1, k + 2, &[m - 1, nn])?)
            } else if i == n - 1 {
                (wt(n, k + 1, &[2 * m, nn - 1])?, wt(n - 2, k + 2, &[m - 1, nn])?)
            } else {
                (
                    chain(alg, n - 1, k + 1 + 2 * s(m), &[half(m), 2 * nn - 1], 1)?,
                    wt(n - 1, k + 1 + 2 * s(m - 1), &[half(m - 1), nn])?,
                )
            };
            Ok(p(wt(i, k, &[m, nn])?, wt(i, k, &[m, nn - 1])?, wt(i, k2, &[m - 1, nn])?, wt(i, k2, &[m - 1, nn - 1])?, x, y))
        }
        Family::AMinAff { a, k, lambdas } | Family::BMinAff { a, k, lambdas } => {
            let (a, k, lam) = (*a, *k, lambdas.as_slice());
            let is_b = matches!(fam, Family::BMinAff { .. });
            need_kind(alg, if is_b { Kind::B } else { Kind::A })?;
            let b = a + lam.len() as i32 - 1;
            node(a)?;
            node(b)?;
            need(lam.len() >= if is_b { 3 } else { 2 }, "too few nodes for this family")?;
            need(lam[0] > 0 && lam[lam.len() - 1] > 0, "end labels must be positive")?;
            need(lam.iter().all(|&l| l >= 0), "labels must be non-negative")?;
            let w = |a, k, ns: &[i32]| chain(alg, a, k, ns, 1);
            let dk = if is_b { 4 } else { 2 };
            let dx = if is_b { 2 } else { 1 };
            let x = if !is_b || b < n {
                w(a - 1, k + dx, &with_last(lam, -1))?
            } else {
                let mut v = lam[..lam.len() - 1].to_vec();
                v.push(half(lam[lam.len() - 1] - 1));
                w(a - 1, k + 2, &v)?
            };
            let y = if !is_b || b < n - 1 {
                w(a + 1, k + dx, &with_first(lam, -1))?
            } else if b == n - 1 {
                let mut v = with_first(&lam[..lam.len() - 1], -1);
                v.push(2 * lam[lam.len() - 1]);
                w(a + 1, k + 2, &v)?
            } else {
                // lam = λ_a..λ_N
                let first = with_first(&lam[..lam.len() - 2], -1);
                let ln1 = lam[lam.len() - 2];
                let ln = lam[lam.len() - 1];
                wrapping(alg, a + 1, k + 2, &first, 2 * ln1 + 1, &[half(ln)])?
            };
            Ok(p(
                w(a, k, lam)?,
                w(a, k, &with_last(lam, -1))?,
                w(a, k + dk, &with_first(lam, -1))?,
                w(a, k + dk, &with_first(&with_last(lam, -1), -1))?,
                x,
                y,
            ))
        }
        Family::AMinAffTilde { b, k, lambdas } | Family::BMinAffTilde { b, k, lambdas } => {
            let (b, k, lam) = (*b, *k, lambdas.as_slice());
            let is_b = matches!(fam, Family::BMinAffTilde { .. });
            need_kind(alg, if is_b { Kind::B } else { Kind::A })?;
            let a = b - lam.len() as i32 + 1;
            node(a)?;
            node(b)?;
            need(lam.len() >= if is_b { 3 } else { 2 }, "too few nodes for this family")?;
            need(lam[0] > 0 && lam[lam.len() - 1] > 0, "end labels must be positive")?;
            need(lam.iter().all(|&l| l >= 0), "labels must be non-negative")?;
            let wt = |a, k, ns: &[i32]| chain(alg, a, k, ns, -1);
            let dk = 2 * alg.r(b);
            let dx = if is_b { 2 } else { 1 };
            // lam = λ_b, λ_{b-1}, …, λ_a
            let x = if !is_b || b < n - 1 {
                wt(b + 1, k + dx, &with_last(lam, -1))?
            } else if b == n - 1 {
                wt(n, k + 1, &with_last(&with_first(lam, lam[0]), -1))?
            } else {
                wrapping(alg, n - 1, k + 1 + 2 * s(lam[0]), &[half(lam[0])], 2 * lam[1] + 1, &with_last(&lam[2..], -1))?
            };
            let y = if !is_b || b < n {
                wt(b - 1, k + dx, &with_first(lam, -1))?
            } else {
                let mut v = vec![half(lam[0] - 1)];
                v.extend_from_slice(&lam[1..]);
                wt(n - 1, k + 1 + 2 * s(lam[0] - 1), &v)?
            };
            Ok(p(
                wt(b, k, lam)?,
                wt(b, k, &with_last(lam, -1))?,
                wt(b, k + dk, &with_first(lam, -1))?,
                wt(b, k + dk, &with_first(&with_last(lam, -1), -1))?,
                x,
                y,
            ))
        }
        Family::BWrapping { k, lambdas, lambda, bar } => {
            need_kind(alg, Kind::B)?;
            let k = *k;
            let lam_len = (n - 1) as usize;
            need(lambdas.len() == lam_len && bar.len() == lam_len, "need N-1 entries in lambdas and bar")?;
            need(lambdas.iter().chain(bar).all(|&l| l >= 0) && *lambda >= 0, "labels must be non-negative")?;
            let first_pos = |v: &[i32]| v.iter().position(|&l| l > 0).map(|j| j as i32 + 1);
            let a = first_pos(lambdas).ok_or_else(|| bad("some λ_i, i < N, must be positive"))?;
            let b = first_pos(bar).ok_or_else(|| bad("some λ̄_i, i < N, must be positive"))?;
            need(alg.is_y_point(LatticePoint::new(a, k)), "(a, k) must lie in the lattice")?;
            // λ_a..λ_{N-1} and λ̄_{N-1}..λ̄_b
            let up: Vec<i32> = lambdas[(a - 1) as usize..].to_vec();
            let down: Vec<i32> = bar[(b - 1) as usize..].iter().rev().copied().collect();
            let c = 2 * lambda + 1;
            let ww = |a, k, up: &[i32], down: &[i32]| wrapping(alg, a, k, up, c, down);
            let x = if b < n - 1 {
                let mut v = up.clone();
                v.push(*lambda);
                wrapping(alg, a - 1, k + 2, &v, 2 * down[0] + 1, &with_last(&down[1..], -1))?
            } else {
                let mut v = up.clone();
                v.push(*lambda);
                v.push(2 * down[0] - 1);
                chain(alg, a - 1, k + 2, &v, 1)?
            };
            let y = if a < n - 1 {
                let mut tail = vec![*lambda];
                tail.extend_from_slice(&down);
                wrapping(alg, a + 1, k + 2, &with_first(&up[..up.len() - 1], -1), 2 * up[up.len() - 1] + 1, &tail)?
            } else {
                let mut v = vec![2 * up[0] - 1, *lambda];
                v.extend_from_slice(&down);
                chain(alg, n, k + 1, &v, -1)?
            };
            Ok(p(
                ww(a, k, &up, &down)?,
                ww(a, k, &up, &with_last(&down, -1))?,
                ww(a, k + 4, &with_first(&up, -1), &down)?,
                ww(a, k + 4, &with_first(&up, -1), &with_last(&down, -1))?,
                x,
                y,
            ))
        }
    }
}

/// Build the family's top snake, derive its relation geometrically and check
/// it against the closed formulas.
pub fn family_instance(alg: &Algebra, fam: &Family) -> Result<RelationInstance> {
    let printed = printed_participants(alg, fam)?;
    let top = validate_snake(alg, &printed.top).map_err(|e| bad(format!("top is not a snake: {e}")))?;
    let rel = extended_relation(&top).map_err(|e| match e {
        Error::NotPrime | Error::SnakeTooShort => bad(format!("top snake: {e}")),
        e => e,
    })?;
    let mut bad_parts = Vec::new();
    for (name, got, want) in [
        ("L", rel.left.monomial(), &printed.left),
        ("R", rel.right.monomial(), &printed.right),
        ("B", rel.bottom.monomial(), &printed.bottom),
    ] {
        if &got != want {
            bad_parts.push(format!("{name}: geometric {got}, closed form {want}"));
        }
    }
    let (gx, gy) = (rel.nbrs.x.monomial(), rel.nbrs.y.monomial());
    let same = (gx == printed.x && gy == printed.y) || (gx == printed.y && gy == printed.x);
    if !same {
        bad_parts.push(format!("X,Y: geometric {{{gx}; {gy}}}, closed form {{{}; {}}}", printed.x, printed.y));
    }
    if bad_parts.is_empty() {
        Ok(rel)
    } else {
        Err(Error::FamilyMismatch(format!("{} {:?}: {}", fam.name(), fam, bad_parts.join("; "))))
    }
}
