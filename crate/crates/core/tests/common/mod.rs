#![allow(dead_code)]

//! Shared helpers for integration tests: independent brute-force oracles and
//! seeded random society generators over exact rationals.

use circ_pierce::arc::{Arc, Closure};
use circ_pierce::coord::Coord;
use circ_pierce::society::Society;
use itertools::Itertools;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::Rng;

pub fn rat(n: i64, d: i64) -> BigRational {
    <BigRational as Coord>::from_ratio(n, d)
}

/// Minimum piercing number by subset enumeration over candidate points.
/// Candidates: each closed arc's right endpoint; for half-open arcs a point
/// eps inside the right end, with eps below a third of the smallest positive
/// endpoint gap so no containment relation changes on the way in.
pub fn brute_force_pierce(s: &Society<BigRational>) -> usize {
    let mut endpoints: Vec<BigRational> = Vec::new();
    for a in s.arcs() {
        endpoints.push(a.left().clone());
        endpoints.push(a.right());
    }
    endpoints.sort();
    endpoints.dedup();
    let m = endpoints.len();
    let mut min_gap: Option<BigRational> = None;
    for i in 0..m {
        let gap = (endpoints[(i + 1) % m].clone() - &endpoints[i]).normalize();
        if gap > rat(0, 1) && min_gap.as_ref().map_or(true, |g| gap < *g) {
            min_gap = Some(gap);
        }
    }
    let eps = min_gap.map(|g| g / rat(3, 1)).unwrap_or_else(|| rat(1, 1000));

    let mut candidates: Vec<BigRational> = s
        .arcs()
        .iter()
        .map(|a| match a.closure() {
            Closure::Closed => a.right(),
            Closure::HalfOpen => (a.right() - &eps).normalize(),
        })
        .collect();
    candidates.sort();
    candidates.dedup();

    for size in 1..=s.len() {
        for subset in candidates.iter().combinations(size) {
            if s.arcs()
                .iter()
                .all(|a| subset.iter().any(|p| a.contains(p)))
            {
                return size;
            }
        }
    }
    unreachable!("the full candidate set always pierces");
}

/// Size of the largest pairwise-disjoint subfamily, by 2^n enumeration.
pub fn max_disjoint_brute(s: &Society<BigRational>) -> usize {
    let n = s.len();
    let arcs = s.arcs();
    let mut best = 0;
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        if idx.len() <= best {
            continue;
        }
        let ok = idx
            .iter()
            .enumerate()
            .all(|(t, &i)| idx[t + 1..].iter().all(|&j| !arcs[i].intersects(&arcs[j])));
        if ok {
            best = idx.len();
        }
    }
    best
}

pub const DENOM: i64 = 420;

/// Random society with coordinates on the 1/420 grid; mixed closures.
pub fn random_rational_society(rng: &mut StdRng, n: usize, allow_half_open: bool) -> Society<BigRational> {
    let arcs = (0..n)
        .map(|_| {
            let left = rat(rng.gen_range(0..DENOM), DENOM);
            let length = rat(rng.gen_range(1..DENOM), DENOM);
            let closure = if allow_half_open && rng.gen_bool(0.5) {
                Closure::HalfOpen
            } else {
                Closure::Closed
            };
            Arc::new(left, length, closure).unwrap()
        })
        .collect();
    Society::new(arcs).unwrap()
}

/// Random society whose arcs all fit inside [0, 9/10], so the point 19/20 is
/// uncovered and the society is linear-equivalent by construction.
pub fn random_linear_equivalent_society(rng: &mut StdRng, n: usize) -> Society<BigRational> {
    let hi = DENOM * 9 / 10;
    let arcs = (0..n)
        .map(|_| {
            let left = rng.gen_range(0..hi);
            let length = rng.gen_range(1..=(hi - left).max(1));
            let closure = if rng.gen_bool(0.5) {
                Closure::HalfOpen
            } else {
                Closure::Closed
            };
            Arc::new(rat(left, DENOM), rat(length, DENOM), closure).unwrap()
        })
        .collect();
    Society::new(arcs).unwrap()
}

/// Random fixed-length closed society with the given rational length.
pub fn random_fixed_length_society(
    rng: &mut StdRng,
    n: usize,
    length: BigRational,
) -> Society<BigRational> {
    let arcs = (0..n)
        .map(|_| {
            Arc::new(rat(rng.gen_range(0..DENOM), DENOM), length.clone(), Closure::Closed).unwrap()
        })
        .collect();
    Society::new(arcs).unwrap()
}
