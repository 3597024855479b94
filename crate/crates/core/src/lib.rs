//! Approval arcs on the unit circle: piercing numbers, agreement numbers,
//! counting-function integrals, named constructions, and Monte Carlo
//! estimates for societies with random fixed-length arcs.
//!
//! The circle is R/Z, so every coordinate lives in [0, 1) and arithmetic
//! wraps. Societies come in two numeric kinds, exact rationals and floats,
//! and the two never mix inside one society.

pub mod arc;
pub mod constructions;
pub mod coord;
pub mod counting;
pub mod error;
pub mod io;
pub mod piercing;
pub mod randomsim;
pub mod society;

pub use arc::{Arc, Closure};
pub use coord::{Coord, SpectrumCoord};
pub use counting::{
    agreement_number, counting_function, euler_integral, extremum_intervals, is_km_agreeable,
    ExtremumIntervals, Piece, StepFunction,
};
pub use error::{Error, Result};
pub use piercing::{
    circular_pierce_alg2, exact_pierce, extract_disjoint_family, greedy_linear_pierce,
    uncovered_point, verify_bounds, BoundCheck, BoundReport, DisjointFamily, LinearSociety,
    Method, PiercingResult,
};
pub use randomsim::{
    disjoint_probability, disjoint_probability_check, expected_tau_formula, formula_tau1_n3,
    formula_tau_k, random_society, simulate, sweep, Applicability, DisjointCheck, SimParams,
    SimulationReport, SweepRow,
};
pub use society::{AnySociety, Society};
