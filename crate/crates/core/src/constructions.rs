//! Deterministic generators for named societies, all in exact rational kind.

use num_rational::BigRational;

use crate::arc::{Arc, Closure};
use crate::coord::Coord;
use crate::error::{Error, Result};
use crate::society::Society;

fn rat(n: i64, d: i64) -> BigRational {
    <BigRational as Coord>::from_ratio(n, d)
}

fn closed(left: BigRational, length: BigRational) -> Arc<BigRational> {
    Arc::new(left, length, Closure::Closed).expect("valid construction arc")
}

/// The uniform society U(n, h): n half-open arcs of length h/n with left
/// endpoints (i-1)/n. Every point of the circle lies in exactly h arcs.
pub fn uniform_society(n: u32, h: u32) -> Result<Society<BigRational>> {
    if !(1 <= h && h < n) {
        return Err(Error::ParameterRange(format!(
            "uniform society needs 1 <= h < n, got n={n}, h={h}"
        )));
    }
    let arcs = (0..n)
        .map(|i| {
            Arc::new(
                rat(i as i64, n as i64),
                rat(h as i64, n as i64),
                Closure::HalfOpen,
            )
            .unwrap()
        })
        .collect();
    Society::new(arcs)
}

/// Closed variant of U(n, h) with each arc shortened by `eps` at the right
/// endpoint: [l, l + h/n - eps].
pub fn uniform_society_closed(n: u32, h: u32, eps: BigRational) -> Result<Society<BigRational>> {
    if !(1 <= h && h < n) {
        return Err(Error::ParameterRange(format!(
            "uniform society needs 1 <= h < n, got n={n}, h={h}"
        )));
    }
    let length = rat(h as i64, n as i64) - eps;
    let arcs = (0..n)
        .map(|i| Arc::new(rat(i as i64, n as i64), length.clone(), Closure::Closed))
        .collect::<Result<Vec<_>>>()?;
    Society::new(arcs)
}

/// Worst-case fixed-length society: 2q-1 closed arcs of length 1/q with left
/// endpoints (i-1)(1/q + 1/(2q^2)) mod 1, so consecutive arcs are separated
/// by 1/(2q^2). Its piercing number is q and its agreement number is 2.
pub fn sharp_society(q: u32) -> Result<Society<BigRational>> {
    if q < 2 {
        return Err(Error::ParameterRange(format!(
            "sharp society needs q >= 2, got q={q}"
        )));
    }
    let q = q as i64;
    let step = rat(1, q) + rat(1, 2 * q * q);
    let length = rat(1, q);
    let arcs = (0..(2 * q - 1))
        .map(|i| closed((step.clone() * rat(i, 1)).normalize(), length.clone()))
        .collect();
    Society::new(arcs)
}

/// Identifiers accepted by [`figure_society`].
pub const FIGURE_IDS: &[&str] = &[
    "fig1_circular",
    "fig_linear_equivalent",
    "fig_alg1",
    "fig_alg2",
    "fig_4voter",
    "fig_counting",
];

/// Small hand-built societies with fixed rational coordinates, each
/// reproducing a documented combinatorial situation:
///
/// * `fig1_circular` — five arcs whose overlap graph is a 5-cycle:
///   (2,3)-agreeable, agreement number 2, piercing number 3.
/// * `fig_linear_equivalent` — five arcs leaving an uncovered gap, so the
///   circle can be cut and unrolled into a linear society.
/// * `fig_alg1` — thirteen intervals in four clusters; the greedy sweep
///   pierces at the right endpoints of sets 1, 5, 9, and 13.
/// * `fig_alg2` — nine arcs with piercing number 3 where starting the
///   circular wrapper at 1/4 yields four points but starting at 7/60 yields
///   three.
/// * `fig_4voter` — four arcs of length 17/24 < 3/4 with agreement number 3
///   and piercing number 2.
/// * `fig_counting` — four closed arcs whose counting function has maxima 4
///   and 2 and minima 1 and 1.
pub fn figure_society(id: &str) -> Result<Society<BigRational>> {
    // coordinates are in units of 1/360 (angles) or 1/100 unless noted
    let deg = |left: i64, len: i64| closed(rat(left, 360), rat(len, 360));
    let pct = |left: i64, len: i64| closed(rat(left, 100), rat(len, 100));
    let arcs = match id {
        "fig1_circular" => vec![
            deg(300, 120), // orange
            deg(120, 140), // violet
            deg(350, 110), // blue
            deg(80, 100),  // green
            deg(200, 130), // red
        ],
        "fig_linear_equivalent" => vec![
            deg(290, 100), // orange
            deg(110, 150), // blue
            deg(350, 60),  // violet
            deg(130, 110), // green
            deg(200, 130), // red
        ],
        "fig_alg1" => {
            // four-interval clusters at 0.02, 0.24, 0.46 plus a final
            // singleton; within a cluster every interval contains the right
            // endpoint of the cluster's first (shortest) interval
            let mut v = Vec::new();
            for a in [2i64, 24, 46] {
                v.push(pct(a, 6));
                v.push(pct(a + 2, 8));
                v.push(pct(a + 3, 9));
                v.push(pct(a + 4, 10));
            }
            v.push(pct(70, 6));
            v
        }
        "fig_alg2" => vec![
            deg(75, 85),  // teal
            deg(30, 75),  // orange
            deg(75, 85),  // magenta
            deg(30, 75),  // blue
            deg(339, 71), // violet
            deg(280, 80), // pink
            deg(135, 105), // green
            deg(200, 100), // red
            deg(270, 60), // yellow
        ],
        "fig_4voter" => vec![
            deg(105, 255), // red
            deg(285, 255), // orange
            deg(25, 255),  // green
            deg(195, 255), // blue
        ],
        "fig_counting" => vec![
            closed(rat(8, 10), rat(7, 10)),
            closed(rat(2, 10), rat(5, 10)),
            closed(rat(3, 10), rat(3, 10)),
            closed(rat(4, 10), rat(5, 10)),
        ],
        other => return Err(Error::UnknownFigure(other.to_string())),
    };
    Society::new(arcs)
}
