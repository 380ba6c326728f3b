//! q-characters of snake modules as sums over non-overlapping path tuples.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::Algebra;
use crate::laurent::{Character, WeightVector, YMonomial};
use crate::paths::{strictly_above, Path, PathSet};
use crate::snakes::Snake;

pub const DEFAULT_MAX_TUPLES: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QCharConfig {
    /// Upper bound on visited partial tuples before giving up.
    pub max_tuples: u64,
    pub parallel: bool,
}

impl Default for QCharConfig {
    fn default() -> Self {
        Self { max_tuples: DEFAULT_MAX_TUPLES, parallel: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QCharReport {
    pub character: Character,
    pub thin: bool,
    pub special: bool,
    pub antispecial: bool,
    pub dim: i64,
    pub dominant: Vec<(YMonomial, i64)>,
}

impl QCharReport {
    pub fn from_character(character: Character) -> Self {
        let dominant = character.dominant_terms();
        let antidominant = character.antidominant_terms();
        let thin = character.terms().all(|(_, c)| c == 1);
        Self {
            thin,
            special: dominant.len() == 1 && dominant[0].1 == 1,
            antispecial: antidominant.len() == 1 && antidominant[0].1 == 1,
            dim: character.dim(),
            dominant,
            character,
        }
    }
}

pub fn qchar_snake(s: &Snake) -> Result<QCharReport> {
    qchar_snake_with(s, &QCharConfig::default())
}

pub fn qchar_snake_with(s: &Snake, cfg: &QCharConfig) -> Result<QCharReport> {
    Ok(QCharReport::from_character(snake_character(s, cfg)?))
}

struct Level {
    paths: Vec<Path>,
    monomials: Vec<YMonomial>,
}

struct Walk<'a> {
    levels: &'a [Level],
    visited: &'a AtomicU64,
    cap: u64,
}

impl Walk<'_> {
    fn tick(&self) -> Result<()> {
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.cap {
            Err(Error::TooLarge { cap: self.cap })
        } else {
            Ok(())
        }
    }

    // chosen[s] indexes levels[s]; every new path must lie strictly below all chosen ones
    fn descend(&self, chosen: &mut Vec<usize>, mon: &YMonomial, out: &mut Character) -> Result<()> {
        let t = chosen.len();
        if t == self.levels.len() {
            out.add_term(mon.clone(), 1);
            return Ok(());
        }
        let level = &self.levels[t];
        for (n, p) in level.paths.iter().enumerate() {
            if !chosen.iter().enumerate().all(|(s, &c)| strictly_above(&self.levels[s].paths[c], p)) {
                continue;
            }
            self.tick()?;
            chosen.push(n);
            self.descend(chosen, &(mon * &level.monomials[n]), out)?;
            chosen.pop();
        }
        Ok(())
    }
}

/// `Σ_{non-overlapping (p_1..p_T)} Π mon(p_t)`.
pub fn snake_character(s: &Snake, cfg: &QCharConfig) -> Result<Character> {
    let alg = s.algebra();
    let levels: Vec<Level> = s
        .points()
        .iter()
        .map(|p| {
            let set = PathSet::new(alg, p.i, p.k)?;
            Ok(Level { paths: set.paths().to_vec(), monomials: set.monomials().to_vec() })
        })
        .collect::<Result<_>>()?;
    if levels.is_empty() {
        return Ok(Character::one());
    }
    let visited = AtomicU64::new(0);
    let walk = Walk { levels: &levels, visited: &visited, cap: cfg.max_tuples };
    let first = |n: usize| -> Result<Character> {
        walk.tick()?;
        let mut out = Character::zero();
        walk.descend(&mut vec![n], &levels[0].monomials[n], &mut out)?;
        Ok(out)
    };
    let parts: Vec<Result<Character>> = if cfg.parallel {
        (0..levels[0].paths.len()).into_par_iter().map(first).collect()
    } else {
        (0..levels[0].paths.len()).map(first).collect()
    };
    let mut total = Character::zero();
    for part in parts {
        total = &total + &part?;
    }
    Ok(total)
}

/// Product of the characters of several snake modules.
pub fn qchar_tensor(factors: &[Snake], cfg: &QCharConfig) -> Result<Character> {
    let mut acc = Character::one();
    for s in factors {
        acc = &acc * &snake_character(s, cfg)?;
    }
    Ok(acc)
}

pub fn dominant_terms(c: &Character) -> Vec<(YMonomial, i64)> {
    c.dominant_terms()
}

/// Push-forward of coefficients along the weight map.
pub fn restrict_weights(c: &Character, alg: &Algebra) -> BTreeMap<WeightVector, i64> {
    let mut out: BTreeMap<WeightVector, i64> = BTreeMap::new();
    for (m, k) in c.terms() {
        *out.entry(m.weight(alg)).or_insert(0) += k;
    }
    out.retain(|_, k| *k != 0);
    out
}
