//! The local counting function C(x) and the quantities derived from it:
//! Riemann and Euler integrals, local extremum intervals, the agreement
//! number, and (k,m)-agreeability.

use std::cmp::Ordering;

use itertools::Itertools;

use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::society::Society;

/// One maximal piece of a step function on the circle. The piece runs
/// clockwise from `start` to `end` (possibly wrapping past 0). Special
/// encodings: `start == end` with both ends closed is a single point;
/// `start == end` with `start_closed && !end_closed` is the full circle.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece<T> {
    pub start: T,
    pub end: T,
    pub start_closed: bool,
    pub end_closed: bool,
    pub value: u32,
}

impl<T: Coord> Piece<T> {
    pub fn is_point(&self) -> bool {
        self.start == self.end && self.start_closed && self.end_closed
    }

    pub fn is_full_circle(&self) -> bool {
        self.start == self.end && self.start_closed && !self.end_closed
    }

    pub fn span(&self) -> T {
        if self.is_point() {
            T::zero()
        } else if self.is_full_circle() {
            T::one()
        } else {
            self.end.sub(&self.start).normalize()
        }
    }

    pub fn contains(&self, x: &T) -> bool {
        if self.is_full_circle() {
            return true;
        }
        if self.is_point() {
            return *x == self.start;
        }
        let d = x.sub(&self.start).normalize();
        let span = self.span();
        if d.is_zero_value() {
            self.start_closed
        } else {
            match d.total_cmp(&span) {
                Ordering::Less => true,
                Ordering::Equal => self.end_closed,
                Ordering::Greater => false,
            }
        }
    }

    /// Euler characteristic: closed interval 1, half-open 0, open -1,
    /// single point 1, full circle 0.
    pub fn euler_char(&self) -> i64 {
        if self.is_full_circle() {
            return 0;
        }
        match (self.start_closed, self.end_closed) {
            (true, true) => 1,
            (false, false) => -1,
            _ => 0,
        }
    }

    /// Cyclic midpoint of the piece.
    pub fn midpoint(&self) -> T {
        let half = T::zero().midpoint(&self.span());
        self.start.add(&half).normalize()
    }
}

/// The local counting function as maximal constant pieces partitioning the
/// circle, in clockwise order starting from the smallest breakpoint.
/// Adjacent pieces carry different values.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction<T> {
    pieces: Vec<Piece<T>>,
}

#[derive(Clone, Debug)]
pub struct ExtremumIntervals<T> {
    /// Local maximum intervals with their values (closed for all-closed societies).
    pub lmax: Vec<Piece<T>>,
    /// Local minimum intervals with their values (open for all-closed societies).
    pub lmin: Vec<Piece<T>>,
}

enum Atom<T> {
    Point(T),
    Gap(T, T),
}

/// Build the local counting function by an endpoint sweep: every arc endpoint
/// is a breakpoint, evaluated separately from the open gaps between
/// breakpoints so that closures at breakpoints are captured exactly.
pub fn counting_function<T: Coord>(s: &Society<T>) -> StepFunction<T> {
    let mut bps: Vec<T> = Vec::with_capacity(2 * s.len());
    for a in s.arcs() {
        bps.push(a.left().clone());
        bps.push(a.right());
    }
    bps.sort_by(|a, b| a.total_cmp(b));
    bps.dedup();
    debug_assert!(bps.len() >= 2, "an arc always has two distinct endpoints");

    let m = bps.len();
    let mut atoms: Vec<(Atom<T>, u32)> = Vec::with_capacity(2 * m);
    for i in 0..m {
        let b = &bps[i];
        atoms.push((Atom::Point(b.clone()), s.count_at(b)));
        let next = &bps[(i + 1) % m];
        let span = next.sub(b).normalize();
        let mid = b.add(&T::zero().midpoint(&span)).normalize();
        atoms.push((Atom::Gap(b.clone(), next.clone()), s.count_at(&mid)));
    }

    let k = atoms.len();
    let constant = atoms.iter().all(|(_, v)| *v == atoms[0].1);
    if constant {
        return StepFunction {
            pieces: vec![Piece {
                start: bps[0].clone(),
                end: bps[0].clone(),
                start_closed: true,
                end_closed: false,
                value: atoms[0].1,
            }],
        };
    }

    // rotate to a run boundary, then merge equal-valued runs
    let first = (0..k)
        .find(|&i| atoms[i].1 != atoms[(i + k - 1) % k].1)
        .unwrap();
    let mut pieces: Vec<Piece<T>> = Vec::new();
    let mut i = 0;
    while i < k {
        let run_value = atoms[(first + i) % k].1;
        let mut j = i;
        while j + 1 < k && atoms[(first + j + 1) % k].1 == run_value {
            j += 1;
        }
        let (start, start_closed) = match &atoms[(first + i) % k].0 {
            Atom::Point(b) => (b.clone(), true),
            Atom::Gap(a, _) => (a.clone(), false),
        };
        let (end, end_closed) = match &atoms[(first + j) % k].0 {
            Atom::Point(b) => (b.clone(), true),
            Atom::Gap(_, b) => (b.clone(), false),
        };
        pieces.push(Piece {
            start,
            end,
            start_closed,
            end_closed,
            value: run_value,
        });
        i = j + 1;
    }

    // canonical rotation: begin at the piece with the smallest start
    let min_idx = pieces
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.start.total_cmp(&b.start))
        .map(|(i, _)| i)
        .unwrap();
    pieces.rotate_left(min_idx);
    StepFunction { pieces }
}

impl<T: Coord> StepFunction<T> {
    pub fn pieces(&self) -> &[Piece<T>] {
        &self.pieces
    }

    pub fn value_at(&self, x: &T) -> u32 {
        let x = x.normalize();
        self.pieces
            .iter()
            .find(|p| p.contains(&x))
            .map(|p| p.value)
            .expect("pieces partition the circle")
    }

    pub fn max_value(&self) -> u32 {
        self.pieces.iter().map(|p| p.value).max().unwrap()
    }

    pub fn min_value(&self) -> u32 {
        self.pieces.iter().map(|p| p.value).min().unwrap()
    }

    /// Sum of piece length times value. For a fixed-length society of n arcs
    /// of length p this equals n*p, exactly in rational kind.
    pub fn riemann_integral(&self) -> T {
        let mut acc = T::zero();
        for p in &self.pieces {
            acc = acc.add(&p.span().mul_u32(p.value));
        }
        acc
    }

    /// Integral against the Euler characteristic valuation. Each level set
    /// decomposes into maximal pieces whose closure class is read off the
    /// piece closures; equals the number of arcs for all-closed societies.
    pub fn euler_integral(&self) -> i64 {
        self.pieces
            .iter()
            .map(|p| i64::from(p.value) * p.euler_char())
            .sum()
    }

    /// Pieces whose value strictly exceeds (lmax) or falls below (lmin) both
    /// neighboring pieces. Errors when the function is constant.
    pub fn extremum_intervals(&self) -> Result<ExtremumIntervals<T>> {
        let n = self.pieces.len();
        if n < 2 {
            return Err(Error::ConstantCountingFunction);
        }
        let mut lmax = Vec::new();
        let mut lmin = Vec::new();
        for i in 0..n {
            let v = self.pieces[i].value;
            let prev = self.pieces[(i + n - 1) % n].value;
            let next = self.pieces[(i + 1) % n].value;
            if v > prev && v > next {
                lmax.push(self.pieces[i].clone());
            } else if v < prev && v < next {
                lmin.push(self.pieces[i].clone());
            }
        }
        Ok(ExtremumIntervals { lmax, lmin })
    }
}

impl<T: Coord> ExtremumIntervals<T> {
    /// The identity sum(lmax values) - sum(lmin values).
    pub fn alternating_sum(&self) -> i64 {
        let max: i64 = self.lmax.iter().map(|p| i64::from(p.value)).sum();
        let min: i64 = self.lmin.iter().map(|p| i64::from(p.value)).sum();
        max - min
    }
}

/// Maximum number of arcs sharing a common point.
pub fn agreement_number<T: Coord>(s: &Society<T>) -> u32 {
    counting_function(s).max_value()
}

/// Euler integral of the counting function; requires all-closed arcs.
pub fn euler_integral<T: Coord>(s: &Society<T>) -> Result<i64> {
    if !s.all_closed() {
        return Err(Error::HalfOpenArcs);
    }
    Ok(counting_function(s).euler_integral())
}

/// Extremum intervals of the counting function; requires all-closed arcs and
/// a non-constant counting function.
pub fn extremum_intervals<T: Coord>(s: &Society<T>) -> Result<ExtremumIntervals<T>> {
    if !s.all_closed() {
        return Err(Error::HalfOpenArcs);
    }
    counting_function(s).extremum_intervals()
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
    }
    acc
}

const SUBSET_GUARD: u128 = 5_000_000;

/// True iff every m-subset of arcs has a point covered by at least k subset
/// members. The check enumerates all C(n,m) subsets with early exit; very
/// large enumerations are refused unless `force` is set.
///
/// Within a subset the maximum of the subset counting function is attained at
/// a left endpoint of a subset arc (left endpoints are always contained), so
/// only those m candidate points are tested.
pub fn is_km_agreeable<T: Coord>(s: &Society<T>, k: u32, m: u32, force: bool) -> Result<bool> {
    let n = s.len() as u32;
    if k < 1 || k > m || m > n {
        return Err(Error::ParameterRange(format!(
            "need 1 <= k <= m <= n, got k={k}, m={m}, n={n}"
        )));
    }
    if k == 1 {
        return Ok(true);
    }
    let count = binomial(u64::from(n), u64::from(m));
    if !force && count > SUBSET_GUARD {
        return Err(Error::EnumerationTooLarge(count));
    }
    let arcs = s.arcs();
    for subset in (0..arcs.len()).combinations(m as usize) {
        let mut ok = false;
        'points: for &i in &subset {
            let x = arcs[i].left();
            let mut c = 0u32;
            for &j in &subset {
                if arcs[j].contains(x) {
                    c += 1;
                    if c >= k {
                        ok = true;
                        break 'points;
                    }
                }
            }
        }
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arc::{Arc, Closure};
    use num_rational::BigRational;

    fn rat(n: i64, d: i64) -> BigRational {
        <BigRational as Coord>::from_ratio(n, d)
    }

    fn closed(l: (i64, i64), len: (i64, i64)) -> Arc<BigRational> {
        Arc::new(rat(l.0, l.1), rat(len.0, len.1), Closure::Closed).unwrap()
    }

    fn uniform(n: i64, h: i64) -> Society<BigRational> {
        let arcs = (0..n)
            .map(|i| Arc::new(rat(i, n), rat(h, n), Closure::HalfOpen).unwrap())
            .collect();
        Society::new(arcs).unwrap()
    }

    /// Four closed arcs whose counting function peaks at 4 and never drops
    /// below 1: [0.8, 1.5], [0.2, 0.7], [0.3, 0.6], [0.4, 0.9].
    fn four_arc_example() -> Society<BigRational> {
        Society::new(vec![
            closed((8, 10), (7, 10)),
            closed((2, 10), (5, 10)),
            closed((3, 10), (3, 10)),
            closed((4, 10), (5, 10)),
        ])
        .unwrap()
    }

    #[test]
    fn uniform_society_counting_is_constant() {
        let s = uniform(7, 3);
        let c = counting_function(&s);
        assert_eq!(c.pieces().len(), 1);
        assert!(c.pieces()[0].is_full_circle());
        for i in 0..29 {
            assert_eq!(c.value_at(&rat(i, 29)), 3);
        }
        assert_eq!(agreement_number(&s), 3);
    }

    #[test]
    fn single_arc_step_function() {
        let s = Society::new(vec![closed((0, 1), (1, 4))]).unwrap();
        let c = counting_function(&s);
        assert_eq!(c.value_at(&rat(0, 1)), 1);
        assert_eq!(c.value_at(&rat(1, 4)), 1);
        assert_eq!(c.value_at(&rat(1, 8)), 1);
        assert_eq!(c.value_at(&rat(1, 2)), 0);
        assert_eq!(c.riemann_integral(), rat(1, 4));
        assert_eq!(c.euler_integral(), 1);
        let ext = c.extremum_intervals().unwrap();
        assert_eq!(ext.lmax.len(), 1);
        assert_eq!(ext.lmax[0].value, 1);
        assert_eq!(ext.lmin.len(), 1);
        assert_eq!(ext.lmin[0].value, 0);
        assert_eq!(ext.alternating_sum(), 1);
    }

    #[test]
    fn four_arc_example_matches_expected_profile() {
        let s = four_arc_example();
        let c = counting_function(&s);
        assert_eq!(c.max_value(), 4);
        assert_eq!(c.min_value(), 1);
        // counting function agrees with direct arc membership everywhere
        for i in 0..200 {
            let x = rat(i, 200);
            assert_eq!(c.value_at(&x), s.count_at(&x));
        }
        let ext = c.extremum_intervals().unwrap();
        let max_vals: Vec<u32> = ext.lmax.iter().map(|p| p.value).collect();
        assert_eq!(ext.lmax.len(), 2);
        assert!(max_vals.contains(&4) && max_vals.contains(&2));
        assert!(ext.lmin.len() == 2 || ext.lmin.len() == 3);
        assert_eq!(ext.alternating_sum(), 4);
        assert_eq!(c.euler_integral(), 4);
    }

    #[test]
    fn riemann_integral_of_uniform() {
        assert_eq!(counting_function(&uniform(7, 3)).riemann_integral(), rat(3, 1));
    }

    #[test]
    fn euler_integral_requires_closed_arcs() {
        assert!(matches!(
            euler_integral(&uniform(7, 3)),
            Err(Error::HalfOpenArcs)
        ));
    }

    #[test]
    fn agreement_number_examples() {
        assert_eq!(agreement_number(&uniform(5, 4)), 4);
    }

    #[test]
    fn km_agreeable_trivial_and_range() {
        let s = uniform(7, 3);
        assert!(is_km_agreeable(&s, 1, 5, false).unwrap());
        assert!(is_km_agreeable(&s, 1, 1, false).unwrap());
        assert!(is_km_agreeable(&s, 2, 1, false).is_err());
        assert!(is_km_agreeable(&s, 0, 3, false).is_err());
        assert!(is_km_agreeable(&s, 2, 8, false).is_err());
    }

    #[test]
    fn km_agreeable_uniform() {
        // U(7,3): any 3 arcs include 2 intersecting ones? three pairwise
        // disjoint arcs of length 3/7 cannot fit, so yes.
        let s = uniform(7, 3);
        assert!(is_km_agreeable(&s, 2, 3, false).unwrap());
    }

    #[test]
    fn step_function_partition_invariant() {
        let s = four_arc_example();
        let c = counting_function(&s);
        let pieces = c.pieces();
        // adjacent pieces carry different values
        for i in 0..pieces.len() {
            let j = (i + 1) % pieces.len();
            assert_ne!(pieces[i].value, pieces[j].value);
        }
        // spans plus points cover the circle exactly once
        let total = pieces
            .iter()
            .fold(rat(0, 1), |acc, p| acc + p.span());
        assert_eq!(total, rat(1, 1));
    }
}
