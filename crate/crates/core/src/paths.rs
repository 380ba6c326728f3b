//! Path models for fundamental modules: the sets `P_{i,k}`, their corners,
//! the monomial map, distinguished paths, moves and overlap tests.
//!
//! Type-B paths live in the `ι`-plane. The spinor column `2N-1` carries a
//! symbolic infinitesimal offset `ε` (never a float).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{Algebra, Kind, LatticePoint, PlanePoint};
use crate::laurent::YMonomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eps {
    Minus,
    None,
    Plus,
}

impl Eps {
    pub fn sign(self) -> i32 {
        match self {
            Eps::Minus => -1,
            Eps::None => 0,
            Eps::Plus => 1,
        }
    }

    pub fn from_sign(s: i32) -> Option<Self> {
        match s {
            -1 => Some(Eps::Minus),
            0 => Some(Eps::None),
            1 => Some(Eps::Plus),
            _ => None,
        }
    }
}

/// `base + sign(eps)·ε` with `0 < ε < 1/2`; field order gives the right total order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YCoord {
    pub base: i32,
    pub eps: Eps,
}

impl YCoord {
    pub const fn int(base: i32) -> Self {
        Self { base, eps: Eps::None }
    }

    pub const fn with_eps(base: i32, eps: Eps) -> Self {
        Self { base, eps }
    }

    /// Order-preserving integer key.
    pub fn key(self) -> i32 {
        4 * self.base + self.eps.sign()
    }
}

impl fmt::Display for YCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.eps {
            Eps::None => write!(f, "{}", self.base),
            Eps::Minus => write!(f, "{}-e", self.base),
            Eps::Plus => write!(f, "{}+e", self.base),
        }
    }
}

/// A path in `P_{i,k}`, stored in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    origin: LatticePoint,
    points: Vec<(i32, YCoord)>,
    // per column: (min key, max key), for fast overlap tests
    span: Vec<Option<(i32, i32)>>,
}

impl Path {
    fn new(origin: LatticePoint, points: Vec<(i32, YCoord)>, width: i32) -> Self {
        let mut span = vec![None; (width + 1) as usize];
        for &(x, y) in &points {
            let slot: &mut Option<(i32, i32)> = &mut span[x as usize];
            let key = y.key();
            *slot = Some(match *slot {
                None => (key, key),
                Some((lo, hi)) => (lo.min(key), hi.max(key)),
            });
        }
        Self { origin, points, span }
    }

    /// The index `(i, k)` of the set this path belongs to.
    pub fn origin(&self) -> LatticePoint {
        self.origin
    }

    pub fn points(&self) -> &[(i32, YCoord)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: i32, y: YCoord) -> bool {
        self.points.contains(&(x, y))
    }

    /// The y-values (integer parts) in traversal order.
    pub fn heights(&self) -> Vec<i32> {
        self.points.iter().map(|(_, y)| y.base).collect()
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|(x, y)| format!("({x},{y})")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for Path {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pts: Vec<[i32; 3]> = self.points.iter().map(|(x, y)| [*x, y.base, y.eps.sign()]).collect();
        pts.serialize(s)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CornerSet {
    pub upper: BTreeSet<LatticePoint>,
    pub lower: BTreeSet<LatticePoint>,
}

/// A corner together with the traversal index of the path point realising it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Corner {
    pub point: LatticePoint,
    pub upper: bool,
    pub position: usize,
}

fn spinor_half(alg: &Algebra, ell: i32) -> Vec<Vec<(i32, YCoord)>> {
    let n = alg.rank();
    let cols: Vec<i32> = if ell.rem_euclid(4) == 3 {
        (0..n).map(|t| 2 * t).collect()
    } else {
        (0..n).map(|t| 4 * n - 2 - 2 * t).collect()
    };
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let mut y = ell + 2 * n - 1;
        let mut pts = vec![(cols[0], YCoord::int(y))];
        for (t, &c) in cols.iter().enumerate().skip(1) {
            y += if mask >> (t - 1) & 1 == 1 { 2 } else { -2 };
            pts.push((c, YCoord::int(y)));
        }
        let last = if mask >> (n - 1) & 1 == 1 {
            YCoord::with_eps(y + 1, Eps::Plus)
        } else {
            YCoord::with_eps(y - 1, Eps::Minus)
        };
        pts.push((2 * n - 1, last));
        out.push(pts);
    }
    // ascending in the step pattern read from the start
    out.sort_by_key(|pts| pts.iter().map(|(_, y)| *y).collect::<Vec<_>>());
    out
}

/// The complete set `P_{i,k}` in a fixed deterministic order.
pub fn enumerate_paths(alg: &Algebra, i: i32, k: i32) -> Result<Vec<Path>> {
    let origin = LatticePoint::new(i, k);
    alg.check_y_point(origin)?;
    let n = alg.rank();
    let width = alg.max_column();
    let paths = match alg.kind() {
        Kind::A => {
            let mut out = Vec::new();
            for mask in 0u32..(1 << (n + 1)) {
                if mask.count_ones() as i32 != n + 1 - i {
                    continue;
                }
                let mut y = i + k;
                let mut pts = vec![(0, YCoord::int(y))];
                for r in 0..=n {
                    y += if mask >> r & 1 == 1 { 1 } else { -1 };
                    pts.push((r + 1, YCoord::int(y)));
                }
                debug_assert_eq!(y, n + 1 - i + k);
                out.push(pts);
            }
            out.sort_by_key(|pts| pts.iter().map(|(_, y)| *y).collect::<Vec<_>>());
            out
        }
        Kind::B if i == n => spinor_half(alg, k),
        Kind::B => {
            let d = 2 * n - 2 * i - 1;
            let firsts = spinor_half(alg, k - d);
            let seconds = spinor_half(alg, k + d);
            let mut out = Vec::new();
            for a in &firsts {
                for b in &seconds {
                    if a[n as usize].1 <= b[n as usize].1 {
                        continue;
                    }
                    let mut pts = a.clone();
                    pts.extend(b.iter().rev().copied());
                    out.push(pts);
                }
            }
            out
        }
    };
    Ok(paths.into_iter().map(|pts| Path::new(origin, pts, width)).collect())
}

/// Corners in traversal order.
pub fn corner_list(p: &Path, alg: &Algebra) -> Vec<Corner> {
    let pts = &p.points;
    let mut out = Vec::new();
    match alg.kind() {
        Kind::A => {
            for r in 1..pts.len() - 1 {
                let (prev, here, next) = (pts[r - 1].1.base, pts[r].1.base, pts[r + 1].1.base);
                if prev == next && prev == here + 1 {
                    out.push(Corner { point: LatticePoint::new(pts[r].0, here), upper: true, position: r });
                } else if prev == next && prev == here - 1 {
                    out.push(Corner { point: LatticePoint::new(pts[r].0, here), upper: false, position: r });
                }
            }
        }
        Kind::B => {
            let n = alg.rank();
            let spin = 2 * n - 1;
            for r in 0..pts.len() {
                let (x, y) = pts[r];
                if x == spin {
                    let other = match y.eps {
                        Eps::Minus => YCoord::with_eps(y.base, Eps::Plus),
                        Eps::Plus => YCoord::with_eps(y.base, Eps::Minus),
                        Eps::None => continue,
                    };
                    if !p.contains(spin, other) {
                        out.push(Corner {
                            point: LatticePoint::new(n, y.base),
                            upper: y.eps == Eps::Minus,
                            position: r,
                        });
                    }
                    continue;
                }
                if r == 0 || r + 1 == pts.len() || x == 0 || x == 4 * n - 2 {
                    continue;
                }
                let (prev, next) = (pts[r - 1].1, pts[r + 1].1);
                let upper = prev > y && next > y;
                let lower = prev < y && next < y;
                if upper || lower {
                    let point = alg
                        .iota_inverse(PlanePoint { x, y: y.base })
                        .expect("corner of a path lies on the image of iota");
                    out.push(Corner { point, upper, position: r });
                }
            }
        }
    }
    out
}

pub fn corners(p: &Path, alg: &Algebra) -> CornerSet {
    let mut cs = CornerSet::default();
    for c in corner_list(p, alg) {
        if c.upper {
            cs.upper.insert(c.point);
        } else {
            cs.lower.insert(c.point);
        }
    }
    cs
}

/// `Π_{C+} Y · Π_{C-} Y^{-1}`.
pub fn path_monomial(p: &Path, alg: &Algebra) -> YMonomial {
    YMonomial::from_factors(corner_list(p, alg).into_iter().map(|c| (c.point, if c.upper { 1 } else { -1 })))
}

pub fn highest_path(alg: &Algebra, i: i32, k: i32) -> Result<Path> {
    unique_with_lower_corners(alg, i, k, &BTreeSet::new())
}

pub fn lowest_path(alg: &Algebra, i: i32, k: i32) -> Result<Path> {
    let found: Vec<Path> = enumerate_paths(alg, i, k)?
        .into_iter()
        .filter(|p| corners(p, alg).upper.is_empty())
        .collect();
    assert_eq!(found.len(), 1, "P_({i},{k}) must have exactly one path without upper corners");
    Ok(found.into_iter().next().unwrap())
}

fn unique_with_lower_corners(alg: &Algebra, i: i32, k: i32, lower: &BTreeSet<LatticePoint>) -> Result<Path> {
    let found: Vec<Path> = enumerate_paths(alg, i, k)?
        .into_iter()
        .filter(|p| &corners(p, alg).lower == lower)
        .collect();
    match found.len() {
        1 => Ok(found.into_iter().next().unwrap()),
        0 => Err(Error::PreconditionFailed(format!("no path in P_({i},{k}) has lower corners {lower:?}"))),
        _ => Err(Error::PreconditionFailed(format!("several paths in P_({i},{k}) have lower corners {lower:?}"))),
    }
}

/// The unique path of `P_from` whose only lower corner is `to`.
pub fn snake_lowered_path(alg: &Algebra, from: LatticePoint, to: LatticePoint) -> Result<Path> {
    alg.check_y_point(from)?;
    alg.check_y_point(to)?;
    if !crate::snakes::in_prime_snake_position(alg, from, to)? {
        return Err(Error::NotPrimePosition(from, to));
    }
    unique_with_lower_corners(alg, from.i, from.k, &BTreeSet::from([to]))
}

/// All of `P_{i,k}` with a monomial index, for moves and lookups.
#[derive(Debug, Clone)]
pub struct PathSet {
    alg: Algebra,
    origin: LatticePoint,
    paths: Vec<Path>,
    monomials: Vec<YMonomial>,
    index: HashMap<YMonomial, usize>,
}

impl PathSet {
    pub fn new(alg: &Algebra, i: i32, k: i32) -> Result<Self> {
        let paths = enumerate_paths(alg, i, k)?;
        let monomials: Vec<YMonomial> = paths.iter().map(|p| path_monomial(p, alg)).collect();
        let index: HashMap<YMonomial, usize> = monomials.iter().cloned().enumerate().map(|(n, m)| (m, n)).collect();
        assert_eq!(index.len(), paths.len(), "monomial map must be injective on P_({i},{k})");
        Ok(Self { alg: *alg, origin: LatticePoint::new(i, k), paths, monomials, index })
    }

    pub fn origin(&self) -> LatticePoint {
        self.origin
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn monomials(&self) -> &[YMonomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn find(&self, m: &YMonomial) -> Option<&Path> {
        self.index.get(m).map(|&n| &self.paths[n])
    }

    pub fn lower(&self, p: &Path, j: i32, l: i32) -> Result<Path> {
        self.shift(p, j, l, -1)
    }

    pub fn raise(&self, p: &Path, j: i32, l: i32) -> Result<Path> {
        self.shift(p, j, l, 1)
    }

    fn shift(&self, p: &Path, j: i32, l: i32, e: i32) -> Result<Path> {
        if p.origin != self.origin {
            return Err(Error::ShapeMismatch);
        }
        let at = LatticePoint::new(j, l);
        let ok = if e < 0 { can_lower(p, j, l, &self.alg) } else { can_raise(p, j, l, &self.alg) };
        if !ok {
            return Err(Error::MoveNotApplicable(at));
        }
        let target = &path_monomial(p, &self.alg) * &self.alg.a_monomial(j, l)?.pow(e);
        self.find(&target).cloned().ok_or(Error::MoveNotApplicable(at))
    }
}

pub fn can_lower(p: &Path, j: i32, l: i32, alg: &Algebra) -> bool {
    if !alg.is_a_point(LatticePoint::new(j, l)) {
        return false;
    }
    let up = corners(p, alg).upper;
    let r = alg.r(j);
    up.contains(&LatticePoint::new(j, l - r)) && !up.contains(&LatticePoint::new(j, l + r))
}

pub fn can_raise(p: &Path, j: i32, l: i32, alg: &Algebra) -> bool {
    if !alg.is_a_point(LatticePoint::new(j, l)) {
        return false;
    }
    let low = corners(p, alg).lower;
    let r = alg.r(j);
    low.contains(&LatticePoint::new(j, l + r)) && !low.contains(&LatticePoint::new(j, l - r))
}

pub fn lower(p: &Path, j: i32, l: i32, alg: &Algebra) -> Result<Path> {
    PathSet::new(alg, p.origin.i, p.origin.k)?.lower(p, j, l)
}

pub fn raise(p: &Path, j: i32, l: i32, alg: &Algebra) -> Result<Path> {
    PathSet::new(alg, p.origin.i, p.origin.k)?.raise(p, j, l)
}

/// `p` strictly above `q`: wherever both have a point in a column, `p`'s is smaller.
pub fn strictly_above(p: &Path, q: &Path) -> bool {
    p.span.iter().zip(&q.span).all(|(a, b)| match (a, b) {
        (Some((_, p_hi)), Some((q_lo, _))) => p_hi < q_lo,
        _ => true,
    })
}

/// Pointwise comparison of two paths of the same set.
pub fn weakly_above(p: &Path, q: &Path) -> Result<bool> {
    same_shape(p, q)?;
    Ok(p.points.iter().zip(&q.points).all(|(a, b)| a.1 <= b.1))
}

/// Pointwise maximum; again a path in the same set.
pub fn bott(p: &Path, q: &Path) -> Result<Path> {
    same_shape(p, q)?;
    let pts = p.points.iter().zip(&q.points).map(|(&(x, a), &(_, b))| (x, a.max(b))).collect();
    Ok(Path::new(p.origin, pts, p.span.len() as i32 - 1))
}

fn same_shape(p: &Path, q: &Path) -> Result<()> {
    let same = p.origin == q.origin
        && p.points.len() == q.points.len()
        && p.points.iter().zip(&q.points).all(|(a, b)| a.0 == b.0);
    if same {
        Ok(())
    } else {
        Err(Error::ShapeMismatch)
    }
}
