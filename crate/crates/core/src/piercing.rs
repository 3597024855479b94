//! Piercing algorithms: the greedy sweep for linear societies, its circular
//! wrapper, an exact minimum solver, disjoint-family extraction, and bound
//! verification.
//!
//! All algorithms run on an all-closed copy of the input. Half-open arcs are
//! shrunk into closed arcs by pulling the right endpoint inward by half the
//! smallest gap between distinct endpoint values. No endpoint lies inside the
//! vacated zone, so every piercing set of the original society maps to one of
//! the shrunk society of the same size and vice versa; the piercing number is
//! unchanged and shrunk witness points remain inside the original arcs.

use std::cmp::Ordering;

use serde::Serialize;

use crate::arc::{Arc, Closure};
use crate::coord::Coord;
use crate::counting::{self, counting_function};
use crate::error::{Error, Result};
use crate::society::Society;

/// Which algorithm produced a piercing result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    GreedyLinear,
    CircularAlg2,
    Exact,
}

/// A representative candidate set: piercing points plus, for each voter, the
/// index of the first point (in algorithm order) that pierces their arc.
#[derive(Clone, Debug, PartialEq)]
pub struct PiercingResult<T> {
    pub points: Vec<T>,
    pub witness: Vec<usize>,
    pub method: Method,
    pub optimal: bool,
}

impl<T: Coord> PiercingResult<T> {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Every arc contains its witness point and points are distinct.
    pub fn verify_against(&self, s: &Society<T>) -> bool {
        if self.witness.len() != s.len() {
            return false;
        }
        for (v, &w) in self.witness.iter().enumerate() {
            match self.points.get(w) {
                Some(p) if s.arcs()[v].contains(p) || s.arcs()[v].right() == *p => {}
                _ => return false,
            }
        }
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                if self.points[i] == self.points[j] {
                    return false;
                }
            }
        }
        true
    }
}

/// A pairwise-disjoint subfamily of arcs, by voter index.
#[derive(Clone, Debug, PartialEq)]
pub struct DisjointFamily {
    pub arc_indices: Vec<usize>,
    pub certified_unique: bool,
}

/// Replace half-open arcs by closed arcs shrunk at the right endpoint; the
/// shrink amount is half the smallest gap between distinct endpoint values.
pub fn shrink_to_closed<T: Coord>(s: &Society<T>) -> Society<T> {
    if s.all_closed() {
        return s.clone();
    }
    let mut endpoints: Vec<T> = Vec::with_capacity(2 * s.len());
    for a in s.arcs() {
        endpoints.push(a.left().clone());
        endpoints.push(a.right());
    }
    endpoints.sort_by(|a, b| a.total_cmp(b));
    endpoints.dedup();
    let m = endpoints.len();
    debug_assert!(m >= 2);
    let mut min_gap: Option<T> = None;
    for i in 0..m {
        let gap = endpoints[(i + 1) % m].sub(&endpoints[i]).normalize();
        if min_gap
            .as_ref()
            .map_or(true, |g| gap.total_cmp(g) == Ordering::Less)
        {
            min_gap = Some(gap);
        }
    }
    let delta = T::zero().midpoint(&min_gap.unwrap());
    let arcs = s
        .arcs()
        .iter()
        .map(|a| match a.closure() {
            Closure::Closed => a.clone(),
            Closure::HalfOpen => Arc::new(
                a.left().clone(),
                a.length().sub(&delta),
                Closure::Closed,
            )
            .expect("shrunk length stays in (0,1)"),
        })
        .collect();
    Society::new(arcs).unwrap()
}

/// A point with no arc covering it, chosen as the midpoint of the largest
/// uncovered gap. `None` when the arcs cover the whole circle.
pub fn uncovered_point<T: Coord>(s: &Society<T>) -> Option<T> {
    let closed = shrink_to_closed(s);
    uncovered_point_closed(&closed)
}

fn uncovered_point_closed<T: Coord>(s: &Society<T>) -> Option<T> {
    let c = counting_function(s);
    c.pieces()
        .iter()
        .filter(|p| p.value == 0)
        .max_by(|a, b| a.span().total_cmp(&b.span()))
        .map(|p| p.midpoint())
}

/// A closed interval on the unrolled spectrum, with its original voter id.
#[derive(Clone, Debug)]
struct LinInterval<T> {
    start: T,
    end: T,
    voter: usize,
}

/// A circular society cut at an uncovered point and unrolled onto a line.
/// Interval coordinates are offsets from the cut point; piercing results are
/// mapped back to circle coordinates.
#[derive(Clone, Debug)]
pub struct LinearSociety<T> {
    cut: T,
    intervals: Vec<LinInterval<T>>,
}

impl<T: Coord> LinearSociety<T> {
    /// Cut at `x` and unroll. `x` must lie outside every arc.
    pub fn cut_and_unroll(s: &Society<T>, x: &T) -> Result<Self> {
        let closed = shrink_to_closed(s);
        let cut = x.normalize();
        if closed.arcs().iter().any(|a| a.contains(&cut)) {
            return Err(Error::CutPointCovered);
        }
        Ok(Self::unroll_uncovered(&closed, &cut))
    }

    /// Cut at the midpoint of the largest uncovered gap.
    pub fn at_largest_gap(s: &Society<T>) -> Result<Self> {
        let closed = shrink_to_closed(s);
        let cut = uncovered_point_closed(&closed).ok_or(Error::NotLinearEquivalent)?;
        Ok(Self::unroll_uncovered(&closed, &cut))
    }

    /// Unroll the arcs of `closed` that do not contain `cut`.
    fn unroll_uncovered(closed: &Society<T>, cut: &T) -> Self {
        let intervals = closed
            .arcs()
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.contains(cut))
            .map(|(voter, a)| {
                let start = a.left().sub(cut).normalize();
                let end = start.add(a.length());
                LinInterval { start, end, voter }
            })
            .collect();
        LinearSociety {
            cut: cut.clone(),
            intervals,
        }
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    fn to_circle(&self, x: &T) -> T {
        self.cut.add(x).normalize()
    }
}

/// Outcome of the greedy sweep: piercing points (linear coordinates), a
/// witness per interval, and the chosen pairwise-disjoint intervals.
struct GreedyOutcome<T> {
    points: Vec<T>,
    /// (voter, point index)
    witness: Vec<(usize, usize)>,
    /// positions into `lin.intervals` of the chosen disjoint subfamily
    chosen: Vec<usize>,
}

/// Repeatedly pierce at the leftmost right endpoint among surviving
/// intervals and drop everything it pierces. Ties on the right endpoint are
/// broken by lowest voter index.
fn greedy_core<T: Coord>(lin: &LinearSociety<T>) -> GreedyOutcome<T> {
    let n = lin.intervals.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        lin.intervals[i]
            .end
            .total_cmp(&lin.intervals[j].end)
            .then(lin.intervals[i].voter.cmp(&lin.intervals[j].voter))
    });
    let mut pierced: Vec<Option<usize>> = vec![None; n];
    let mut points = Vec::new();
    let mut chosen = Vec::new();
    for &i in &order {
        if pierced[i].is_some() {
            continue;
        }
        let x = lin.intervals[i].end.clone();
        let point_idx = points.len();
        for (j, iv) in lin.intervals.iter().enumerate() {
            if pierced[j].is_none()
                && iv.start.total_cmp(&x) != Ordering::Greater
                && x.total_cmp(&iv.end) != Ordering::Greater
            {
                pierced[j] = Some(point_idx);
            }
        }
        points.push(x);
        chosen.push(i);
    }
    let witness = lin
        .intervals
        .iter()
        .enumerate()
        .map(|(j, iv)| (iv.voter, pierced[j].unwrap()))
        .collect();
    GreedyOutcome {
        points,
        witness,
        chosen,
    }
}

/// Minimum representative candidate set of a linear(ized) society, found by
/// the leftmost-right-endpoint greedy sweep. Points are returned in circle
/// coordinates.
pub fn greedy_linear_pierce<T: Coord>(lin: &LinearSociety<T>) -> Result<PiercingResult<T>> {
    if lin.intervals.is_empty() {
        return Err(Error::EmptySociety);
    }
    let out = greedy_core(lin);
    // a full linearization carries every voter 0..n
    let max_voter = lin.intervals.iter().map(|iv| iv.voter).max().unwrap();
    let mut by_voter = vec![0usize; max_voter + 1];
    for &(v, w) in &out.witness {
        by_voter[v] = w;
    }
    Ok(PiercingResult {
        points: out.points.iter().map(|x| lin.to_circle(x)).collect(),
        witness: by_voter,
        method: Method::GreedyLinear,
        optimal: true,
    })
}

/// Core of the circular wrapper: pierce at `x`, drop everything containing
/// `x`, then run the greedy sweep on the unrolled remainder. When `x` lies in
/// no arc it is omitted from the result.
fn alg2_core<T: Coord>(closed: &Society<T>, x: &T) -> PiercingResult<T> {
    let n = closed.len();
    // an arc always contains its own right endpoint; the explicit check
    // covers float societies where the two mod-1 roundings disagree by an ulp
    let covered: Vec<bool> = closed
        .arcs()
        .iter()
        .map(|a| a.contains(x) || a.right() == *x)
        .collect();
    let removed = covered.iter().filter(|&&c| c).count();
    if removed == n {
        return PiercingResult {
            points: vec![x.clone()],
            witness: vec![0; n],
            method: Method::CircularAlg2,
            optimal: false,
        };
    }
    let lin = LinearSociety::unroll_uncovered(closed, x);
    let out = greedy_core(&lin);
    if removed == 0 {
        let mut witness = vec![usize::MAX; n];
        for &(v, w) in &out.witness {
            witness[v] = w;
        }
        return PiercingResult {
            points: out.points.iter().map(|p| lin.to_circle(p)).collect(),
            witness,
            method: Method::CircularAlg2,
            optimal: false,
        };
    }
    let mut points = Vec::with_capacity(out.points.len() + 1);
    points.push(x.clone());
    points.extend(out.points.iter().map(|p| lin.to_circle(p)));
    let mut witness = vec![0usize; n];
    for &(v, w) in &out.witness {
        witness[v] = w + 1;
    }
    PiercingResult {
        points,
        witness,
        method: Method::CircularAlg2,
        optimal: false,
    }
}

/// The circular piercing wrapper: pick a point `x`, pierce there, and finish
/// with the greedy sweep on the rest. The result has at most one more point
/// than the piercing number.
pub fn circular_pierce_alg2<T: Coord>(s: &Society<T>, x: &T) -> PiercingResult<T> {
    let closed = shrink_to_closed(s);
    alg2_core(&closed, &x.normalize())
}

fn cmp_point_lists<T: Coord>(a: &[T], b: &[T]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.total_cmp(y) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Exact minimum piercing. If some point of the circle is uncovered, cut
/// there and run the greedy sweep. Otherwise fix a seed arc and try every
/// candidate first point inside it: the seed's right endpoint and, for every
/// arc intersecting the seed, that arc's right endpoint when it falls inside
/// the seed. Each candidate is completed greedily; the smallest result wins
/// (ties: lexicographically smallest point list).
pub fn exact_pierce<T: Coord>(s: &Society<T>) -> PiercingResult<T> {
    let closed = shrink_to_closed(s);
    if let Some(cut) = uncovered_point_closed(&closed) {
        let lin = LinearSociety::unroll_uncovered(&closed, &cut);
        let out = greedy_core(&lin);
        let mut witness = vec![0usize; closed.len()];
        for &(v, w) in &out.witness {
            witness[v] = w;
        }
        return PiercingResult {
            points: out.points.iter().map(|p| lin.to_circle(p)).collect(),
            witness,
            method: Method::Exact,
            optimal: true,
        };
    }

    let arcs = closed.arcs();
    let n = arcs.len();
    // seed arc: fewest intersecting arcs, ties lowest index
    let seed_idx = (0..n)
        .min_by_key(|&i| {
            (0..n)
                .filter(|&j| j != i && arcs[i].intersects(&arcs[j]))
                .count()
        })
        .unwrap();
    let seed = &arcs[seed_idx];
    let mut candidates: Vec<T> = vec![seed.right()];
    for (j, b) in arcs.iter().enumerate() {
        if j != seed_idx && seed.intersects(b) {
            let r = b.right();
            if seed.contains(&r) {
                candidates.push(r);
            }
        }
    }
    candidates.sort_by(|a, b| a.total_cmp(b));
    candidates.dedup();

    let mut best: Option<PiercingResult<T>> = None;
    for x in &candidates {
        let mut cand = alg2_core(&closed, x);
        cand.method = Method::Exact;
        let better = match &best {
            None => true,
            Some(b) => match cand.size().cmp(&b.size()) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => cmp_point_lists(&cand.points, &b.points) == Ordering::Less,
            },
        };
        if better {
            best = Some(cand);
        }
    }
    let mut result = best.expect("covered circle yields at least one candidate");
    result.optimal = true;
    result
}

/// Extract the pairwise-disjoint subfamily found by the greedy sweep, with a
/// uniqueness certificate when the leftmost-first reconstruction is forced at
/// every step and the family's union contains every other left endpoint.
/// When no point of the circle is uncovered, a non-certified family is
/// assembled from the exact solver's witness instead.
pub fn extract_disjoint_family<T: Coord>(s: &Society<T>) -> DisjointFamily {
    let closed = shrink_to_closed(s);
    if let Some(cut) = uncovered_point_closed(&closed) {
        let lin = LinearSociety::unroll_uncovered(&closed, &cut);
        let out = greedy_core(&lin);
        let family: Vec<usize> = out.chosen.iter().map(|&i| lin.intervals[i].voter).collect();

        // forced leftmost reconstruction
        let mut remaining: Vec<usize> = (0..lin.intervals.len()).collect();
        let mut reconstructed: Vec<usize> = Vec::new();
        let mut last_end: Option<T> = None;
        let mut forced = true;
        loop {
            let eligible: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&i| match &last_end {
                    None => true,
                    Some(e) => lin.intervals[i].start.total_cmp(e) == Ordering::Greater,
                })
                .collect();
            if eligible.is_empty() {
                break;
            }
            let min_start = eligible
                .iter()
                .map(|&i| &lin.intervals[i].start)
                .min_by(|a, b| a.total_cmp(b))
                .unwrap()
                .clone();
            let at_min: Vec<usize> = eligible
                .iter()
                .copied()
                .filter(|&i| lin.intervals[i].start == min_start)
                .collect();
            if at_min.len() != 1 {
                forced = false;
            }
            let pick = at_min[0];
            reconstructed.push(pick);
            last_end = Some(lin.intervals[pick].end.clone());
            remaining.retain(|&i| i != pick);
        }
        let same_family = {
            let mut a: Vec<usize> = out.chosen.clone();
            let mut b = reconstructed.clone();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        };
        let covers_lefts = lin.intervals.iter().enumerate().all(|(i, iv)| {
            out.chosen.contains(&i)
                || out.chosen.iter().any(|&c| {
                    let f = &lin.intervals[c];
                    f.start.total_cmp(&iv.start) != Ordering::Greater
                        && iv.start.total_cmp(&f.end) != Ordering::Greater
                })
        });
        return DisjointFamily {
            arc_indices: family,
            certified_unique: forced && same_family && covers_lefts,
        };
    }

    // covered circle: pick one tight arc per exact piercing point, keeping
    // only arcs disjoint from those already taken
    let exact = exact_pierce(&closed);
    let arcs = closed.arcs();
    let mut family: Vec<usize> = Vec::new();
    for (pi, point) in exact.points.iter().enumerate() {
        let mut holders: Vec<usize> = exact
            .witness
            .iter()
            .enumerate()
            .filter(|&(_, &w)| w == pi)
            .map(|(v, _)| v)
            .collect();
        // tightest first: smallest clockwise distance from the point to the
        // arc's right endpoint
        holders.sort_by(|&a, &b| {
            arcs[a]
                .right()
                .sub(point)
                .normalize()
                .total_cmp(&arcs[b].right().sub(point).normalize())
        });
        for v in holders {
            if family.iter().all(|&u| !arcs[u].intersects(&arcs[v])) {
                family.push(v);
                break;
            }
        }
    }
    DisjointFamily {
        arc_indices: family,
        certified_unique: false,
    }
}

/// One verified bound in a [`BoundReport`].
#[derive(Clone, Debug, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub description: String,
    pub satisfied: bool,
}

/// Exact piercing number together with every applicable bound.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub tau: usize,
    pub checks: Vec<BoundCheck>,
}

impl BoundReport {
    pub fn all_satisfied(&self) -> bool {
        self.checks.iter().all(|c| c.satisfied)
    }
}

/// Check the fixed-length piercing bounds and, for each supplied `(k, m)`
/// pair that the society satisfies, the agreeability bound `tau <= m - k + 2`.
pub fn verify_bounds<T: Coord>(
    s: &Society<T>,
    km_pairs: &[(u32, u32)],
    force: bool,
) -> Result<BoundReport> {
    let tau = exact_pierce(s).size();
    let n = s.len();
    let mut checks = Vec::new();

    if let Some(p) = s.fixed_length() {
        let q = p.recip_ceil();
        checks.push(BoundCheck {
            name: "fixed_length_upper".into(),
            description: format!("p >= 1/{q} implies tau <= {q}"),
            satisfied: tau <= q as usize,
        });
        if q >= 2 && n < (2 * q as usize - 1) {
            checks.push(BoundCheck {
                name: "few_voters_strict".into(),
                description: format!("n={n} < 2*{q}-1 implies tau <= {}", q - 1),
                satisfied: tau <= q as usize - 1,
            });
        }
        let frac = T::from_ratio(n as i64 - 1, n as i64);
        if p.total_cmp(&frac) != Ordering::Less {
            checks.push(BoundCheck {
                name: "long_arcs_tau_one".into(),
                description: format!("p >= {}/{} implies tau = 1", n - 1, n),
                satisfied: tau == 1,
            });
        }
    }

    for &(k, m) in km_pairs {
        if counting::is_km_agreeable(s, k, m, force)? {
            let bound = (m - k + 2) as usize;
            checks.push(BoundCheck {
                name: "km_agreeable_upper".into(),
                description: format!("({k},{m})-agreeable implies tau <= {bound}"),
                satisfied: tau <= bound,
            });
        }
    }

    Ok(BoundReport { tau, checks })
}
