//! Snake position, snakes, neighbouring points and neighbouring snakes.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Algebra, Kind, LatticePoint};
use crate::laurent::YMonomial;
use crate::paths::{corner_list, snake_lowered_path};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionKind {
    None,
    Snake,
    MinimalSnake,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Position {
    pub kind: PositionKind,
    pub prime: bool,
}

/// Lower bound, upper (prime) bound and required residue mod 4 (type B only)
/// for `k' - k`.
fn bounds(alg: &Algebra, p: LatticePoint, q: LatticePoint) -> (i32, i32, Option<i32>) {
    let d = (q.i - p.i).abs();
    let n = alg.rank();
    match alg.kind() {
        // the bound i+i' alone admits pairs past the far edge of the diagram
        Kind::A => (d + 2, (p.i + q.i).min(2 * n + 2 - p.i - q.i), None),
        Kind::B if p.i == n && q.i == n => (2, 4 * n - 2, Some(2)),
        Kind::B if p.i == n || q.i == n => (2 * d + 3, 2 * p.i + 2 * q.i - 1, Some((2 * d - 1).rem_euclid(4))),
        Kind::B => (2 * d + 4, 2 * p.i + 2 * q.i, Some((2 * d).rem_euclid(4))),
    }
}

/// How `q` sits relative to `p`.
pub fn position_kind(alg: &Algebra, p: LatticePoint, q: LatticePoint) -> Result<Position> {
    alg.check_y_point(p)?;
    alg.check_y_point(q)?;
    let (lo, hi, residue) = bounds(alg, p, q);
    let gap = q.k - p.k;
    let congruent = residue.map_or(true, |r| gap.rem_euclid(4) == r);
    if gap < lo || !congruent {
        return Ok(Position { kind: PositionKind::None, prime: false });
    }
    let kind = if gap == lo { PositionKind::MinimalSnake } else { PositionKind::Snake };
    Ok(Position { kind, prime: gap <= hi })
}

pub fn in_snake_position(alg: &Algebra, p: LatticePoint, q: LatticePoint) -> Result<bool> {
    Ok(position_kind(alg, p, q)?.kind != PositionKind::None)
}

pub fn in_prime_snake_position(alg: &Algebra, p: LatticePoint, q: LatticePoint) -> Result<bool> {
    let pos = position_kind(alg, p, q)?;
    Ok(pos.kind != PositionKind::None && pos.prime)
}

pub fn in_minimal_snake_position(alg: &Algebra, p: LatticePoint, q: LatticePoint) -> Result<bool> {
    Ok(position_kind(alg, p, q)?.kind == PositionKind::MinimalSnake)
}

/// A validated snake.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Snake {
    alg: Algebra,
    points: Vec<LatticePoint>,
    minimal: bool,
    prime: bool,
}

impl Snake {
    pub fn new(alg: &Algebra, points: Vec<LatticePoint>) -> Result<Self> {
        validate_snake(alg, &points)
    }

    pub fn empty(alg: &Algebra) -> Self {
        Self { alg: *alg, points: Vec::new(), minimal: true, prime: true }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn points(&self) -> &[LatticePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_prime(&self) -> bool {
        self.prime
    }

    /// `Π_t Y_{i_t,k_t}`.
    pub fn monomial(&self) -> YMonomial {
        YMonomial::product_of_points(&self.points)
    }

    /// The sub-snake `points[range]`.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Snake {
        validate_snake(&self.alg, &self.points[range]).expect("a contiguous piece of a snake is a snake")
    }
}

impl fmt::Display for Snake {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for Snake {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.points.serialize(s)
    }
}

pub fn validate_snake(alg: &Algebra, pts: &[LatticePoint]) -> Result<Snake> {
    if let [only] = pts {
        alg.check_y_point(*only)?;
    }
    let (mut minimal, mut prime) = (true, true);
    for t in 1..pts.len() {
        let pos = position_kind(alg, pts[t - 1], pts[t]).map_err(|_| Error::NotASnake(t - 1, t))?;
        match pos.kind {
            PositionKind::None => return Err(Error::NotASnake(t - 1, t)),
            PositionKind::Snake => minimal = false,
            PositionKind::MinimalSnake => {}
        }
        prime &= pos.prime;
    }
    Ok(Snake { alg: *alg, points: pts.to_vec(), minimal, prime })
}

/// Parses `"(i,k),(i,k),..."`; whitespace is ignored, the empty string is the empty list.
pub fn parse_points(s: &str) -> Result<Vec<LatticePoint>> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Ok(Vec::new());
    }
    let inner = compact
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("expected \"(i,k),(i,k),...\", got {s:?}")))?;
    inner
        .split("),(")
        .map(|pair| {
            let (i, k) = pair
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad point {pair:?}")))?;
            let num = |t: &str| i32::from_str(t).map_err(|e| Error::Parse(format!("bad integer {t:?}: {e}")));
            Ok(LatticePoint::new(num(i)?, num(k)?))
        })
        .collect()
}

/// The two groups of neighbouring points of a prime pair, left group first.
///
/// Read off the snake-lowered path: its upper corners before and after the
/// lower corner, oriented so the first group is on the left of the plane.
pub fn neighbouring_points(
    alg: &Algebra,
    p: LatticePoint,
    q: LatticePoint,
) -> Result<(Vec<LatticePoint>, Vec<LatticePoint>)> {
    let path = snake_lowered_path(alg, p, q)?;
    let cs = corner_list(&path, alg);
    let at = cs.iter().find(|c| !c.upper).expect("snake-lowered path has a lower corner").position;
    let mut before: Vec<LatticePoint> = cs.iter().filter(|c| c.upper && c.position < at).map(|c| c.point).collect();
    let mut after: Vec<LatticePoint> = cs.iter().filter(|c| c.upper && c.position > at).map(|c| c.point).collect();
    // spinor corners share the lower corner's column; order within a group by shift
    before.sort_by_key(|c| (c.k, c.i));
    after.sort_by_key(|c| (c.k, c.i));
    let starts_left = path.points()[0].0 == 0;
    Ok(if starts_left { (before, after) } else { (after, before) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NeighbourPair {
    pub x: Snake,
    pub y: Snake,
}

/// The neighbouring snakes `X`, `Y` of a prime snake of length at least two.
pub fn neighbour_snakes(s: &Snake) -> Result<NeighbourPair> {
    if s.len() < 2 {
        return Err(Error::SnakeTooShort);
    }
    if !s.is_prime() {
        return Err(Error::NotPrime);
    }
    let alg = s.alg;
    let groups: Vec<(Vec<LatticePoint>, Vec<LatticePoint>)> = s
        .points
        .windows(2)
        .map(|w| neighbouring_points(&alg, w[0], w[1]))
        .collect::<Result<_>>()?;

    fn extend_ok(alg: &Algebra, chain: &[LatticePoint], group: &[LatticePoint]) -> bool {
        let mut prev = chain.last().copied();
        for &g in group {
            if let Some(p) = prev {
                if !in_snake_position(alg, p, g).unwrap_or(false) {
                    return false;
                }
            }
            prev = Some(g);
        }
        true
    }

    // depth-first over orientations, "keep" before "swap": the first hit is lexicographically least
    fn search(
        alg: &Algebra,
        groups: &[(Vec<LatticePoint>, Vec<LatticePoint>)],
        x: &mut Vec<LatticePoint>,
        y: &mut Vec<LatticePoint>,
    ) -> bool {
        let Some(((g0, g1), rest)) = groups.split_first() else {
            let xs: BTreeSet<_> = x.iter().collect();
            return y.iter().all(|p| !xs.contains(p));
        };
        for (a, b) in [(g0, g1), (g1, g0)] {
            if extend_ok(alg, x, a) && extend_ok(alg, y, b) {
                let (lx, ly) = (x.len(), y.len());
                x.extend_from_slice(a);
                y.extend_from_slice(b);
                if search(alg, rest, x, y) {
                    return true;
                }
                x.truncate(lx);
                y.truncate(ly);
            }
        }
        false
    }

    let (mut x, mut y) = (Vec::new(), Vec::new());
    if !search(&alg, &groups, &mut x, &mut y) {
        let detail: Vec<String> = groups.iter().map(|(a, b)| format!("{a:?} | {b:?}")).collect();
        return Err(Error::AssignmentFailed(detail.join("; ")));
    }
    Ok(NeighbourPair { x: validate_snake(&alg, &x)?, y: validate_snake(&alg, &y)? })
}

fn monotonic(xs: &[i32]) -> bool {
    xs.windows(2).all(|w| w[0] <= w[1]) || xs.windows(2).all(|w| w[0] >= w[1])
}

/// Minimal snake with monotonic node sequence.
pub fn is_minimal_affinization(s: &Snake) -> bool {
    let nodes: Vec<i32> = s.points.iter().map(|p| p.i).collect();
    s.minimal && monotonic(&nodes)
}

/// Minimal snake whose plane columns are monotonic.
pub fn is_wrapping(s: &Snake) -> bool {
    let cols: Vec<i32> = s.points.iter().map(|&p| s.alg.iota(p).expect("snake points are valid").x).collect();
    s.minimal && monotonic(&cols)
}

/// Splits at every adjacent pair not in prime position.
pub fn prime_decomposition(s: &Snake) -> Vec<Snake> {
    let mut out = Vec::new();
    let mut start = 0;
    for t in 1..=s.len() {
        let cut = t == s.len() || !in_prime_snake_position(&s.alg, s.points[t - 1], s.points[t]).unwrap_or(false);
        if cut {
            out.push(s.slice(start..t));
            start = t;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(i: i32, k: i32) -> LatticePoint {
        LatticePoint::new(i, k)
    }

    fn snake(alg: &Algebra, pts: &[(i32, i32)]) -> Snake {
        validate_snake(alg, &pts.iter().map(|&p| p.into()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn position_examples() {
        let a3 = Algebra::a(3);
        assert_eq!(
            position_kind(&a3, lp(2, 1), lp(2, 3)).unwrap(),
            Position { kind: PositionKind::MinimalSnake, prime: true }
        );
        let b2 = Algebra::b(2);
        assert_eq!(
            position_kind(&b2, lp(1, 0), lp(2, 5)).unwrap(),
            Position { kind: PositionKind::MinimalSnake, prime: true }
        );
        assert_eq!(position_kind(&b2, lp(2, 1), lp(2, 9)).unwrap().kind, PositionKind::None);
        assert_eq!(
            position_kind(&b2, lp(2, 1), lp(2, 7)).unwrap(),
            Position { kind: PositionKind::Snake, prime: true }
        );
        assert_eq!(position_kind(&b2, lp(2, 1), lp(2, 11)).unwrap(), Position { kind: PositionKind::Snake, prime: false });
        assert!(position_kind(&b2, lp(2, 1), lp(2, 2)).is_err());
    }

    #[test]
    fn validation() {
        let b2 = Algebra::b(2);
        let s = snake(&b2, &[(1, 0), (2, 5), (1, 10)]);
        assert!(s.is_minimal() && s.is_prime());
        let a2 = Algebra::a(2);
        assert_eq!(validate_snake(&a2, &[lp(1, 0), lp(1, 3)]), Err(Error::NotASnake(0, 1)));
        assert_eq!(validate_snake(&a2, &[lp(1, 0), lp(1, 2), lp(1, 2)]), Err(Error::NotASnake(1, 2)));
        let e = validate_snake(&a2, &[]).unwrap();
        assert!(e.is_empty() && e.is_minimal() && e.is_prime());
        assert_eq!(validate_snake(&a2, &[lp(1, 1)]), Err(Error::InvalidLatticePoint(lp(1, 1))));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_points("(1,0),(2, 5), (1,-10)").unwrap(), vec![lp(1, 0), lp(2, 5), lp(1, -10)]);
        assert_eq!(parse_points("").unwrap(), vec![]);
        assert!(parse_points("(1,0").is_err());
        assert!(parse_points("(1,x)").is_err());
    }

    #[test]
    fn neighbouring_point_examples() {
        let a2 = Algebra::a(2);
        assert_eq!(neighbouring_points(&a2, lp(1, 0), lp(1, 2)).unwrap(), (vec![], vec![lp(2, 1)]));
        let a3 = Algebra::a(3);
        assert_eq!(neighbouring_points(&a3, lp(2, 1), lp(2, 3)).unwrap(), (vec![lp(1, 2)], vec![lp(3, 2)]));
        let b2 = Algebra::b(2);
        assert_eq!(neighbouring_points(&b2, lp(2, 1), lp(2, 3)).unwrap(), (vec![], vec![lp(1, 2)]));
        assert_eq!(
            neighbouring_points(&a2, lp(1, 0), lp(1, 8)),
            Err(Error::NotPrimePosition(lp(1, 0), lp(1, 8)))
        );
    }

    #[test]
    fn neighbour_snake_examples() {
        let a2 = Algebra::a(2);
        let nb = neighbour_snakes(&snake(&a2, &[(1, 0), (1, 2)])).unwrap();
        assert!(nb.x.is_empty());
        assert_eq!(nb.y.points(), [lp(2, 1)]);

        let b2 = Algebra::b(2);
        let nb = neighbour_snakes(&snake(&b2, &[(1, 0), (2, 5), (1, 10)])).unwrap();
        let mut got = [nb.x.points().to_vec(), nb.y.points().to_vec()];
        got.sort();
        assert_eq!(got, [vec![lp(2, 1)], vec![lp(2, 9)]]);

        let a3 = Algebra::a(3);
        let nb = neighbour_snakes(&snake(&a3, &[(2, 1), (2, 3), (2, 5)])).unwrap();
        assert_eq!(nb.x.points(), [lp(1, 2), lp(1, 4)]);
        assert_eq!(nb.y.points(), [lp(3, 2), lp(3, 4)]);

        assert_eq!(neighbour_snakes(&snake(&a3, &[(2, 1)])), Err(Error::SnakeTooShort));
        assert_eq!(neighbour_snakes(&snake(&a3, &[(2, 1), (2, 11)])), Err(Error::NotPrime));
    }

    #[test]
    fn affinization_predicates() {
        let b2 = Algebra::b(2);
        let s = snake(&b2, &[(1, 0), (2, 5), (1, 10)]);
        assert!(!is_minimal_affinization(&s));
        assert!(is_wrapping(&s));
        let a3 = Algebra::a(3);
        let s = snake(&a3, &[(1, 0), (2, 3)]);
        assert!(is_minimal_affinization(&s) && is_wrapping(&s));
        let s = snake(&b2, &[(2, 1), (1, 6), (2, 11)]);
        assert!(!is_wrapping(&s));
    }

    #[test]
    fn decomposition() {
        let b2 = Algebra::b(2);
        let s = snake(&b2, &[(2, 1), (2, 11)]);
        let parts = prime_decomposition(&s);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].points(), [lp(2, 1)]);
        assert_eq!(parts[1].points(), [lp(2, 11)]);
        let s = snake(&b2, &[(1, 0), (2, 5), (1, 10)]);
        assert_eq!(prime_decomposition(&s), vec![s.clone()]);
        assert!(prime_decomposition(&Snake::empty(&b2)).is_empty());
    }
}
