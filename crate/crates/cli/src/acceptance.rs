//! The acceptance suite: eleven end-to-end checks over exhaustive windows of
//! small snakes, each reporting one pass/fail line.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use qsnake::b2restrict::{
    decompose, odd_wrapping_dimension, predicted_decomposition, verify_b2_qsystem, wq_decompose, Decomposition,
    GCharacter, GWeight,
};
use qsnake::error::{Error, Result};
use qsnake::lattice::{Algebra, LatticePoint};
use qsnake::laurent::{truncate_character, Character, YMonomial};
use qsnake::paths::PathSet;
use qsnake::qchar::{qchar_snake_with, restrict_weights, snake_character, QCharConfig};
use qsnake::sl2core::{
    exclusion_certificate, sl2_simple_qchar, sl2_trichotomy, sl2_truncated_simple, thin_closure, thm_a_verify,
    Sl2,
};
use qsnake::snakes::{in_snake_position, validate_snake, Snake};
use qsnake::tsystem::families::{family_instance, Family};
use qsnake::tsystem::{extended_relation, verify_nonprime, verify_relation, VerificationReport};

pub const WINDOW: (i32, i32) = (0, 24);
pub const B3_SAMPLE: usize = 200;
pub const B3_SEED: u64 = 0x5eed_b3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Set on a failure that is fully explained by a claim of the source
    /// material that does not hold, with everything else in the criterion passing.
    pub known_discrepancy: Option<String>,
}

impl CriterionResult {
    /// Failures that are not explained by a documented discrepancy.
    pub fn is_unexplained_failure(&self) -> bool {
        !self.passed && self.known_discrepancy.is_none()
    }
}

impl std::fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2}. {} — {}", self.id, self.name, self.detail)?;
        if let Some(why) = &self.known_discrepancy {
            write!(f, "\n            known discrepancy: {why}")?;
        }
        Ok(())
    }
}

type Outcome = Result<(bool, String)>;

/// The snake windows shared by criteria 3–7, built once.
pub struct Windows {
    pub by_algebra: Vec<(Algebra, Vec<Snake>)>,
    pub b3_sample: Vec<Snake>,
}

fn y_points(alg: &Algebra, lo: i32, hi: i32) -> Vec<LatticePoint> {
    alg.nodes()
        .flat_map(|i| (lo..=hi).map(move |k| LatticePoint::new(i, k)))
        .filter(|&p| alg.is_y_point(p))
        .collect()
}

/// Every snake of length `1..=max_len` with all shifts in `[lo, hi]`.
pub fn window_snakes(alg: &Algebra, lo: i32, hi: i32, max_len: usize) -> Result<Vec<Snake>> {
    let pts = y_points(alg, lo, hi);
    let mut succ: BTreeMap<LatticePoint, Vec<LatticePoint>> = BTreeMap::new();
    for &p in &pts {
        let mut next = Vec::new();
        for &q in &pts {
            if in_snake_position(alg, p, q)? {
                next.push(q);
            }
        }
        succ.insert(p, next);
    }
    let mut layer: Vec<Vec<LatticePoint>> = pts.iter().map(|&p| vec![p]).collect();
    let mut out = Vec::new();
    for len in 1..=max_len {
        for seq in &layer {
            out.push(validate_snake(alg, seq)?);
        }
        if len == max_len {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|seq| {
                succ[seq.last().unwrap()].iter().map(move |&q| {
                    let mut s = seq.clone();
                    s.push(q);
                    s
                })
            })
            .collect();
    }
    Ok(out)
}

/// Random B3 snakes of length 1–3: a uniform start, then uniform successors
/// among the points in snake position within a bounded shift gap.
pub fn b3_sample(n: usize, seed: u64) -> Result<Vec<Snake>> {
    let alg = Algebra::b(3);
    let pts = y_points(&alg, 0, 40);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let len = rng.gen_range(1..=3);
        let mut seq = vec![*pts.choose(&mut rng).unwrap()];
        while seq.len() < len {
            let last = *seq.last().unwrap();
            let mut next = Vec::new();
            for &q in &pts {
                if q.k <= last.k + 20 && in_snake_position(&alg, last, q)? {
                    next.push(q);
                }
            }
            match next.choose(&mut rng) {
                Some(&q) => seq.push(q),
                None => break,
            }
        }
        if seq.len() == len {
            out.push(validate_snake(&alg, &seq)?);
        }
    }
    Ok(out)
}

impl Windows {
    pub fn build() -> Result<Self> {
        let (lo, hi) = WINDOW;
        let by_algebra = [Algebra::a(2), Algebra::a(3), Algebra::b(2)]
            .into_iter()
            .map(|alg| Ok((alg, window_snakes(&alg, lo, hi, 3)?)))
            .collect::<Result<_>>()?;
        Ok(Self { by_algebra, b3_sample: b3_sample(B3_SAMPLE, B3_SEED)? })
    }

    fn all(&self) -> impl Iterator<Item = &Snake> {
        self.by_algebra.iter().flat_map(|(_, v)| v).chain(&self.b3_sample)
    }

    fn relation_tops(&self) -> Vec<&Snake> {
        self.all().filter(|s| s.len() >= 2 && s.is_prime()).collect()
    }
}

fn serial(cfg: &QCharConfig) -> QCharConfig {
    QCharConfig { parallel: false, ..*cfg }
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn timed(limit: Duration, start: Instant, mut detail: String, ok: bool) -> (bool, String) {
    let el = start.elapsed();
    detail.push_str(&format!(" ({:.1}s, limit {}s)", el.as_secs_f64(), limit.as_secs()));
    (ok && el <= limit, detail)
}

fn c1_path_counts() -> Outcome {
    let start = Instant::now();
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 1..=6 {
        let alg = Algebra::a(n);
        for i in 1..=n {
            let shifts = (0..).map(|k| LatticePoint::new(i, k)).filter(|&p| alg.is_y_point(p)).take(3);
            for p in shifts {
                let got = PathSet::new(&alg, p.i, p.k)?.len() as u64;
                checked += 1;
                if got != binom(n as u64 + 1, i as u64) {
                    bad.push(format!("A{n} ({},{}) → {got}", p.i, p.k));
                }
            }
        }
    }
    for n in 2..=5 {
        let alg = Algebra::b(n);
        for k in [1, 3, 5] {
            let got = PathSet::new(&alg, n, k)?.len() as u64;
            checked += 1;
            if got != 1 << n {
                bad.push(format!("B{n} ({n},{k}) → {got}"));
            }
        }
    }
    Ok(timed(
        Duration::from_secs(10),
        start,
        format!("{checked} path sets counted, {} wrong {:?}", bad.len(), bad),
        bad.is_empty(),
    ))
}

fn c2_fundamentals(cfg: &QCharConfig) -> Outcome {
    let y = |i, k, e| YMonomial::from_factors([(LatticePoint::new(i, k), e)]);
    let cases: Vec<(Algebra, LatticePoint, Vec<YMonomial>)> = vec![
        (Algebra::a(1), LatticePoint::new(1, 0), vec![y(1, 0, 1), y(1, 2, -1)]),
        (Algebra::a(2), LatticePoint::new(1, 0), vec![y(1, 0, 1), &y(1, 2, -1) * &y(2, 1, 1), y(2, 3, -1)]),
        (
            Algebra::b(2),
            LatticePoint::new(2, 1),
            vec![y(2, 1, 1), &y(1, 2, 1) * &y(2, 3, -1), &y(2, 5, 1) * &y(1, 6, -1), y(2, 7, -1)],
        ),
    ];
    let mut detail = Vec::new();
    let mut ok = true;
    for (alg, p, want) in cases {
        let s = validate_snake(&alg, &[p])?;
        let got = qchar_snake_with(&s, cfg)?.character;
        let want = Character::from_terms(want.into_iter().map(|m| (m, 1)));
        let same = got == want;
        ok &= same;
        detail.push(format!("{alg} ({},{}): {}", p.i, p.k, if same { "equal" } else { "DIFFERENT" }));
    }
    Ok((ok, detail.join("; ")))
}

fn c3_flags(w: &Windows, cfg: &QCharConfig) -> Outcome {
    let start = Instant::now();
    let snakes: Vec<&Snake> = w.all().collect();
    let scfg = serial(cfg);
    let bad: Vec<String> = snakes
        .par_iter()
        .map(|s| {
            let r = qchar_snake_with(s, &scfg)?;
            Ok((!(r.thin && r.special && r.antispecial)).then(|| format!("{:?}", s.points())))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let sizes: Vec<String> = w.by_algebra.iter().map(|(a, v)| format!("{a}:{}", v.len())).collect();
    Ok(timed(
        Duration::from_secs(300),
        start,
        format!(
            "{} snakes ({}, B3 sample:{}), {} without all three flags",
            snakes.len(),
            sizes.join(", "),
            w.b3_sample.len(),
            bad.len()
        ),
        bad.is_empty(),
    ))
}

/// Relation reports for every prime top of length 2–3 in the windows.
pub struct RelationRun {
    pub reports: Vec<(Snake, VerificationReport)>,
    pub empty_neighbour: usize,
    pub elapsed: Duration,
}

pub fn relation_run(w: &Windows, cfg: &QCharConfig) -> Result<RelationRun> {
    let start = Instant::now();
    let scfg = serial(cfg);
    let tops = w.relation_tops();
    let rows: Vec<(Snake, VerificationReport, bool)> = tops
        .par_iter()
        .map(|s| {
            let rel = extended_relation(s)?;
            let empty = rel.nbrs.x.is_empty() || rel.nbrs.y.is_empty();
            Ok(((*s).clone(), verify_relation(&rel, &scfg)?, empty))
        })
        .collect::<Result<_>>()?;
    let empty_neighbour = rows.iter().filter(|r| r.2).count();
    Ok(RelationRun {
        reports: rows.into_iter().map(|(s, r, _)| (s, r)).collect(),
        empty_neighbour,
        elapsed: start.elapsed(),
    })
}

fn c4_relations(run: &RelationRun, cfg: &QCharConfig) -> Outcome {
    let failed: Vec<_> = run.reports.iter().filter(|(_, r)| !r.identity_holds).collect();
    let spots: [(&str, &str, [i64; 6]); 3] = [
        ("A2", "(1,0),(1,2)", [3, 3, 6, 1, 1, 3]),
        ("B2", "(2,1),(2,3)", [4, 4, 11, 1, 1, 5]),
        ("B2", "(1,0),(2,5),(1,10)", [16, 16, 60, 4, 4, 4]),
    ];
    let mut spot_ok = true;
    let mut spot_detail = Vec::new();
    for (alg, pts, want) in spots {
        let alg: Algebra = alg.parse()?;
        let s = validate_snake(&alg, &qsnake::snakes::parse_points(pts)?)?;
        let r = verify_relation(&extended_relation(&s)?, cfg)?;
        let d = r.dims;
        let got = [d.left, d.right, d.top, d.bottom, d.x, d.y];
        let ok = r.identity_holds && got == want;
        spot_ok &= ok;
        spot_detail.push(format!("{}·{} = {}·{} + {}·{}", d.left, d.right, d.top, d.bottom, d.x, d.y));
    }
    let ok = failed.is_empty() && spot_ok && run.empty_neighbour > 0;
    Ok(timed(
        Duration::from_secs(600),
        Instant::now() - run.elapsed,
        format!(
            "{} relations, {} failing, {} with an empty neighbour; spots {}",
            run.reports.len(),
            failed.len(),
            run.empty_neighbour,
            spot_detail.join(", ")
        ),
        ok,
    ))
}

fn c5_lhs_dominants(run: &RelationRun) -> Outcome {
    let bad = run
        .reports
        .iter()
        .filter(|(s, r)| r.lhs_dominant.len() != s.len() || r.lhs_dominant.iter().any(|&(_, c)| c != 1) || !r.lhs_catalog_ok)
        .count();
    let rhs_bad = run.reports.iter().filter(|(_, r)| !r.rhs1_catalog_ok).count();
    Ok((
        bad == 0 && rhs_bad == 0,
        format!(
            "{} relations: {bad} with a wrong dominant count/catalog in χ(L)χ(R), {rhs_bad} with a wrong catalog in χ(T)χ(B)",
            run.reports.len()
        ),
    ))
}

fn c6_xy_special(run: &RelationRun) -> Outcome {
    let bad = run.reports.iter().filter(|(_, r)| !r.xy_special).count();
    Ok((bad == 0, format!("{} relations, {bad} with χ(X)χ(Y) not special", run.reports.len())))
}

fn c7_nonprime(w: &Windows, cfg: &QCharConfig) -> Outcome {
    let quota = [17, 17, 16];
    let mut picked = Vec::new();
    for ((_, snakes), q) in w.by_algebra.iter().zip(quota) {
        let pool: Vec<&Snake> = snakes.iter().filter(|s| s.len() >= 2 && !s.is_prime()).collect();
        let step = (pool.len() / q).max(1);
        picked.extend(pool.into_iter().step_by(step).take(q));
    }
    let scfg = serial(cfg);
    let reports = picked.par_iter().map(|s| verify_nonprime(s, &scfg)).collect::<Result<Vec<_>>>()?;
    let bad = reports.iter().filter(|r| !r.all_ok()).count();
    let special = reports.iter().filter(|r| r.unique_dominant).count();
    Ok((
        picked.len() == 50 && bad == 0,
        format!("{} non-prime snakes, {bad} failing the identity ({special} with a special product)", picked.len()),
    ))
}

fn lowest_shift(alg: &Algebra, i: i32) -> i32 {
    (0..).find(|&k| alg.is_y_point(LatticePoint::new(i, k))).unwrap()
}

pub fn family_cases() -> Vec<(Algebra, Family)> {
    let mut out = Vec::new();
    for alg in [Algebra::a(3), Algebra::b(2), Algebra::b(3)] {
        for i in alg.nodes() {
            let k = lowest_shift(&alg, i);
            for m in 2..=3 {
                out.push((alg, Family::Kr { i, k, m }));
            }
            for m in 1..=2 {
                for n in 1..=2 {
                    if alg.contains_node(i + 1) {
                        out.push((alg, Family::TwoNode { i, k, m, n }));
                    }
                    if alg.contains_node(i - 1) {
                        out.push((alg, Family::TwoNodeTilde { i, k, m, n }));
                    }
                }
            }
        }
    }
    out.push((Algebra::b(2), Family::BWrapping { k: 0, lambdas: vec![1], lambda: 0, bar: vec![1] }));
    for lambdas in [vec![1, 0], vec![0, 1]] {
        for bar in [vec![1, 0], vec![0, 1]] {
            let k = 0;
            out.push((Algebra::b(3), Family::BWrapping { k, lambdas: lambdas.clone(), lambda: 0, bar }));
        }
    }
    out
}

fn c8_families() -> Outcome {
    let cases = family_cases();
    let mut mismatches = Vec::new();
    for (alg, fam) in &cases {
        match family_instance(alg, fam) {
            Ok(_) => {}
            Err(e) => mismatches.push(format!("{alg} {}: {e}", serde_json::to_string(fam).unwrap())),
        }
    }
    Ok((
        mismatches.is_empty(),
        format!("{} family instances, {} mismatched {:?}", cases.len(), mismatches.len(), mismatches),
    ))
}

fn c9_b2(cfg: &QCharConfig) -> Outcome {
    let start = Instant::now();
    let mut grid = Vec::new();
    for m in 0..=2 {
        for mid in 0..=5 {
            for n in 0..=2 {
                grid.push((m, mid, n));
            }
        }
    }
    let rows: Vec<((u32, u32, u32), Decomposition)> = grid
        .par_iter()
        .map(|&(m, mid, n)| Ok(((m, mid, n), wq_decompose(m, mid, n, &serial(cfg))?)))
        .collect::<Result<_>>()?;
    let mut bad = Vec::new();
    for ((m, mid, n), d) in &rows {
        if *d != predicted_decomposition(*m, *mid, *n) {
            bad.push(format!("decomposition of ({m},{mid},{n}) is {d}"));
        }
        if mid % 2 == 1 {
            let want = odd_wrapping_dimension(*m as i64, (*mid as i64 - 1) / 2, *n as i64);
            if d.dim() != want {
                bad.push(format!("dim ({m},{mid},{n}) = {} ≠ {want}", d.dim()));
            }
        }
    }
    let lookup: BTreeMap<_, _> = rows.into_iter().collect();
    let printed: [((u32, u32, u32), &[((i64, i64), u64)], i64); 3] = [
        ((0, 1, 0), &[((0, 1), 1)], 4),
        ((1, 1, 1), &[((2, 1), 1), ((0, 3), 1)], 60),
        ((0, 3, 0), &[((0, 1), 1), ((0, 3), 1)], 24),
    ];
    for (key, want, dim) in printed {
        let want = Decomposition(want.iter().map(|&((a, b), k)| (GWeight(a, b), k)).collect());
        let got = &lookup[&key];
        if *got != want || got.dim() != dim {
            bad.push(format!("{key:?} → {got}"));
        }
    }
    let q = verify_b2_qsystem(2, cfg)?;
    let qfail = q.failures().count();
    Ok(timed(
        Duration::from_secs(300),
        start,
        format!(
            "{} wrapping restrictions, {} discrepancies {:?}; Q-system: {} instances, {qfail} failing",
            lookup.len(),
            bad.len(),
            bad,
            q.checks.len()
        ),
        bad.is_empty() && qfail == 0,
    ))
}

fn s_mono(k: i32, m: i32) -> YMonomial {
    YMonomial::from_factors((0..m).map(|j| (LatticePoint::new(1, k + 2 * j), 1)))
}

fn c10_sl2(cfg: &QCharConfig) -> Result<(bool, String, Option<String>)> {
    let mut notes = Vec::new();
    let mut ok = true;

    // the A1 T-system
    let mut tsys_bad = 0;
    for k in [0, 2, 4] {
        for m in 1..=4 {
            let ch = |k, m| sl2_simple_qchar(&s_mono(k, m));
            let lhs = &ch(k, m)? * &ch(k + 2, m)?;
            let rhs = &(&ch(k, m + 1)? * &ch(k + 2, m - 1)?) + &Character::one();
            tsys_bad += usize::from(lhs != rhs);
        }
    }
    ok &= tsys_bad == 0;
    notes.push(format!("T-system 12 cases, {tsys_bad} failing"));

    // trichotomy: every dominant monomial on shifts 0,2,..,8 of degree ≤ 5,
    // every interval region of odd shifts, every term and every a ∈ U
    let shifts = [0, 2, 4, 6, 8];
    let mut bigs = vec![YMonomial::one()];
    let mut layer = vec![(YMonomial::one(), 0usize)];
    for _ in 0..5 {
        let mut next = Vec::new();
        for (m, from) in &layer {
            for (j, &k) in shifts.iter().enumerate().skip(*from) {
                let m2 = m * &YMonomial::y(1, k);
                bigs.push(m2.clone());
                next.push((m2, j));
            }
        }
        layer = next;
    }
    let odd: Vec<i32> = (0..=9).map(|j| 2 * j - 1).collect();
    let mut regions = Vec::new();
    for a in 0..odd.len() {
        for b in a..odd.len() {
            regions.push(odd[a..=b].iter().copied().collect::<BTreeSet<i32>>());
        }
    }
    let (mut classified, mut wrong, mut not_thin) = (0usize, 0usize, 0usize);
    let mut wrong_bigs = BTreeSet::new();
    for big in &bigs {
        for region in &regions {
            let trunc = sl2_truncated_simple(big, Sl2::a1(), region)?;
            if trunc.terms().any(|(_, c)| c != 1) {
                not_thin += 1;
                continue;
            }
            for m in trunc.monomials() {
                for &a in region {
                    match sl2_trichotomy(big, m, a, region) {
                        Ok(r) => {
                            classified += 1;
                            if !r.membership_holds {
                                wrong += 1;
                                wrong_bigs.insert(big.clone());
                            }
                        }
                        Err(Error::PreconditionFailed(_)) => {
                            wrong += 1;
                            wrong_bigs.insert(big.clone());
                        }
                        Err(e) => return Err(e),
                    }
                }
            }
        }
    }
    ok &= classified > 0;
    let trichotomy_ok = wrong == 0;
    let repeated = wrong_bigs.iter().filter(|m| m.factors().any(|(_, e)| e > 1)).count();
    let explained = repeated == wrong_bigs.len();
    notes.push(format!(
        "trichotomy {classified} classified, {wrong} wrong ({} monomials × {} regions, {not_thin} non-thin skipped; \
         wrong cases come from {} monomials, {repeated} of them with a repeated factor{})",
        bigs.len(),
        regions.len(),
        wrong_bigs.len(),
        wrong_bigs.first().map_or(String::new(), |m| format!(", e.g. M = {m}")),
    ));

    // the A1 fundamental, intact and mutilated
    let a1 = Algebra::a(1);
    let u: BTreeSet<LatticePoint> = [LatticePoint::new(1, 1)].into();
    let y0 = YMonomial::y(1, 0);
    let full = thm_a_verify(&a1, &y0, &[y0.clone(), YMonomial::y(1, 2).inverse()], &u);
    let cut = thm_a_verify(&a1, &y0, &[y0.clone()], &u);
    ok &= full.verdict && !cut.verdict;
    notes.push(format!("verifier verdicts {} / {}", full.verdict, cut.verdict));

    // exclusion at R = 2 for every prime length-3 top starting at the lowest shifts
    let (mut tops, mut held) = (0, 0);
    for alg in [Algebra::a(2), Algebra::b(2)] {
        for s in window_snakes(&alg, 0, 16, 3)? {
            if s.len() != 3 || !s.is_prime() || s.points()[0].k > 1 {
                continue;
            }
            tops += 1;
            held += usize::from(exclusion_certificate(&extended_relation(&s)?, 2, cfg)?.holds());
        }
    }
    ok &= tops > 0 && held == tops;
    notes.push(format!("exclusion certificates {held}/{tops}"));
    // The trichotomy breaks on repeated factors: M = Y_0^2 Y_2, U = {1}, m = Y_0 is
    // case (i) by exponents, yet m A_1^{-1} = Y_2^{-1} is absent from
    // χ(L(M)) = χ(L(Y_0 Y_2)) χ(L(Y_0)).
    let known = (ok && !trichotomy_ok && explained).then(|| {
        "the trichotomy fails for highest monomials with a repeated factor \
         (M = Y1,0^2 Y1,2, U = {1}, m = Y1,0: exponents give case (i) but m·A⁻¹ = Y1,2^-1 is not in χ(L(M))); \
         it holds for every multiplicity-free M in the scan"
            .to_string()
    });
    Ok((ok && trichotomy_ok, notes.join("; "), known))
}

fn a_points(alg: &Algebra, lo: i32, hi: i32) -> BTreeSet<LatticePoint> {
    alg.nodes()
        .flat_map(|i| (lo..=hi).map(move |k| LatticePoint::new(i, k)))
        .filter(|&p| alg.is_a_point(p))
        .collect()
}

/// Regions for the cross-check: all A-points covering the character,
/// each single node, and lower windows of growing height.
fn test_regions(alg: &Algebra, s: &Snake) -> Vec<BTreeSet<LatticePoint>> {
    let lo = s.points().iter().map(|p| p.k).min().unwrap();
    let hi = s.points().iter().map(|p| p.k).max().unwrap() + 4 * alg.rank() + 4;
    let all = a_points(alg, lo, hi);
    let mut out = vec![all.clone()];
    for i in alg.nodes() {
        out.push(all.iter().copied().filter(|p| p.i == i).collect());
    }
    for h in (lo + 2..hi).step_by(4) {
        out.push(all.iter().copied().filter(|p| p.k <= h).collect());
    }
    out
}

fn c11_cross(w: &Windows, cfg: &QCharConfig) -> Outcome {
    let scfg = serial(cfg);
    let b2 = &w.by_algebra.iter().find(|(a, _)| *a == Algebra::b(2)).unwrap().1;
    let negatives = b2
        .par_iter()
        .map(|s| {
            let c = snake_character(s, &scfg)?;
            let g = GCharacter::from_weight_map(s.algebra(), &restrict_weights(&c, s.algebra()))?;
            Ok(decompose(&g).is_err())
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|&b| b)
        .count();

    let mut samples = Vec::new();
    for (alg, snakes) in &w.by_algebra {
        samples.extend(snakes.iter().filter(|s| s.points()[0].k <= 1 && s.points().iter().all(|p| p.k <= 12)));
        let _ = alg;
    }
    let rows = samples
        .par_iter()
        .map(|s| {
            let alg = s.algebra();
            let c = snake_character(s, &scfg)?;
            let m_plus = s.monomial();
            let mut out = (0usize, 0usize, 0usize);
            for region in test_regions(alg, s) {
                let set = thin_closure(alg, &m_plus, &region, 100_000)?;
                out.0 += 1;
                if thm_a_verify(alg, &m_plus, &set, &region).verdict {
                    out.1 += 1;
                    let sum = Character::from_terms(set.into_iter().map(|m| (m, 1)));
                    out.2 += usize::from(sum != truncate_character(&c, &m_plus, &region, alg));
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?;
    let (tested, certified, differ) = rows.iter().fold((0, 0, 0), |a, r| (a.0 + r.0, a.1 + r.1, a.2 + r.2));
    Ok((
        negatives == 0 && certified > 0 && differ == 0,
        format!(
            "{} B2 restrictions, {negatives} not genuine; {tested} truncations over {} snakes, {certified} certified, {differ} differing",
            b2.len(),
            samples.len()
        ),
    ))
}

fn result(id: u8, name: &str, o: Outcome) -> CriterionResult {
    let (passed, detail) = match o {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    CriterionResult { id, name: name.into(), passed, detail, known_discrepancy: None }
}

fn result_with_known(id: u8, name: &str, o: Result<(bool, String, Option<String>)>) -> CriterionResult {
    match o {
        Ok((passed, detail, known)) => CriterionResult { id, name: name.into(), passed, detail, known_discrepancy: known },
        Err(e) => result(id, name, Err(e)),
    }
}

/// Run every criterion in order. `each` sees results as they complete.
pub fn run_all(cfg: &QCharConfig, mut each: impl FnMut(&CriterionResult)) -> Vec<CriterionResult> {
    let mut out = Vec::new();
    let mut push = |r: CriterionResult| {
        each(&r);
        out.push(r);
    };
    push(result(1, "path counts", c1_path_counts()));
    push(result(2, "fundamental characters", c2_fundamentals(cfg)));
    let windows = Windows::build();
    let windows = match windows {
        Ok(w) => w,
        Err(e) => {
            for (id, name) in [(3, "thin/special/anti-special"), (4, "extended T-system"), (5, "dominant terms of χ(L)χ(R)"), (6, "χ(X)χ(Y) special"), (7, "non-prime snakes"), (11, "cross-module consistency")] {
                push(result(id, name, Err(e.clone())));
            }
            push(result(8, "closed-form families", c8_families()));
            push(result(9, "B2 restriction and Q-system", c9_b2(cfg)));
            push(result_with_known(10, "sl2 machinery", c10_sl2(cfg)));
            out.sort_by_key(|r| r.id);
            return out;
        }
    };
    push(result(3, "thin/special/anti-special", c3_flags(&windows, cfg)));
    match relation_run(&windows, cfg) {
        Ok(run) => {
            push(result(4, "extended T-system", c4_relations(&run, cfg)));
            push(result(5, "dominant terms of χ(L)χ(R)", c5_lhs_dominants(&run)));
            push(result(6, "χ(X)χ(Y) special", c6_xy_special(&run)));
        }
        Err(e) => {
            push(result(4, "extended T-system", Err(e.clone())));
            push(result(5, "dominant terms of χ(L)χ(R)", Err(e.clone())));
            push(result(6, "χ(X)χ(Y) special", Err(e)));
        }
    }
    push(result(7, "non-prime snakes", c7_nonprime(&windows, cfg)));
    push(result(8, "closed-form families", c8_families()));
    push(result(9, "B2 restriction and Q-system", c9_b2(cfg)));
    push(result_with_known(10, "sl2 machinery", c10_sl2(cfg)));
    push(result(11, "cross-module consistency", c11_cross(&windows, cfg)));
    out
}
