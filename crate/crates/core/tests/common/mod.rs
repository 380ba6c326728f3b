#![allow(dead_code)]

use qsnake::lattice::{Algebra, LatticePoint};
use qsnake::snakes::{in_snake_position, validate_snake, Snake};

pub fn y_points(alg: &Algebra, lo: i32, hi: i32) -> Vec<LatticePoint> {
    alg.nodes()
        .flat_map(|i| (lo..=hi).map(move |k| LatticePoint::new(i, k)))
        .filter(|&p| alg.is_y_point(p))
        .collect()
}

/// All snakes of length 1..=max_len with shifts in [lo, hi], by brute force
/// over sequences.
pub fn snakes_in(alg: &Algebra, lo: i32, hi: i32, max_len: usize) -> Vec<Snake> {
    let pts = y_points(alg, lo, hi);
    let mut out = Vec::new();
    let mut layer: Vec<Vec<LatticePoint>> = pts.iter().map(|&p| vec![p]).collect();
    for _ in 0..max_len {
        out.extend(layer.iter().map(|s| validate_snake(alg, s).unwrap()));
        layer = layer
            .iter()
            .flat_map(|s| {
                pts.iter()
                    .filter(|&&q| in_snake_position(alg, *s.last().unwrap(), q).unwrap())
                    .map(|&q| {
                        let mut t = s.clone();
                        t.push(q);
                        t
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

pub fn algebras() -> Vec<Algebra> {
    vec![Algebra::a(1), Algebra::a(2), Algebra::a(3), Algebra::b(2), Algebra::b(3)]
}
