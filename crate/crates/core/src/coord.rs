//! Coordinates on the unit circle, represented as `R/Z` = `[0, 1)`.
//!
//! Two numeric kinds coexist: exact big rationals for deterministic
//! constructions and bound checks, and `f64` for random simulation where
//! endpoint ties occur with probability zero. Analysis code is generic over
//! the [`Coord`] trait; the [`SpectrumCoord`] enum is the dynamic boundary
//! used by file formats and the CLI, where mixing kinds is an error.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};

/// Numeric kind for circle coordinates. All values handed to arc and society
/// operations are kept normalized into `[0, 1)`.
pub trait Coord: Clone + PartialEq + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static {
    /// True when arithmetic on this kind carries no rounding.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_ratio(num: i64, den: i64) -> Self;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;

    /// Reduce modulo 1 into `[0, 1)`.
    fn normalize(&self) -> Self;

    /// Plain (non-circular) midpoint `(a + b) / 2`.
    fn midpoint(&self, other: &Self) -> Self;

    fn mul_u32(&self, k: u32) -> Self;

    fn total_cmp(&self, other: &Self) -> Ordering;

    fn to_f64(&self) -> f64;

    /// Smallest integer `q` with `1/q <= self`, for values in `(0, 1)`.
    fn recip_ceil(&self) -> u32;

    fn is_finite_value(&self) -> bool {
        true
    }

    fn is_zero_value(&self) -> bool {
        self.total_cmp(&Self::zero()) == Ordering::Equal
    }
}

impl Coord for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        num_traits::Zero::zero()
    }

    fn one() -> Self {
        num_traits::One::one()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn normalize(&self) -> Self {
        self - self.floor()
    }

    fn midpoint(&self, other: &Self) -> Self {
        (self + other) / BigRational::from_integer(BigInt::from(2))
    }

    fn mul_u32(&self, k: u32) -> Self {
        self * BigRational::from_integer(BigInt::from(k))
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn recip_ceil(&self) -> u32 {
        debug_assert!(self.is_positive());
        self.recip().ceil().to_integer().to_u32().unwrap_or(u32::MAX)
    }
}

impl Coord for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }

    fn one() -> Self {
        1.0
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn normalize(&self) -> Self {
        let r = self.rem_euclid(1.0);
        // rem_euclid can round up to exactly 1.0 for tiny negative inputs
        if r >= 1.0 {
            0.0
        } else {
            r
        }
    }

    fn midpoint(&self, other: &Self) -> Self {
        (self + other) / 2.0
    }

    fn mul_u32(&self, k: u32) -> Self {
        self * f64::from(k)
    }

    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn recip_ceil(&self) -> u32 {
        debug_assert!(*self > 0.0);
        // absorb float noise like 1/0.1 = 10.000000000000002
        (self.recip() - 1e-9).ceil() as u32
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }
}

/// A point on the spectrum with an explicit kind tag. Arithmetic is closed
/// within one kind; mixing kinds is an error.
#[derive(Clone, Debug, PartialEq)]
pub enum SpectrumCoord {
    Rational(BigRational),
    Float(f64),
}

impl SpectrumCoord {
    /// Normalize a raw float coordinate into `[0, 1)`.
    pub fn from_float(raw: f64) -> Result<Self> {
        if !raw.is_finite() {
            return Err(Error::NonFinite(raw));
        }
        Ok(SpectrumCoord::Float(Coord::normalize(&raw)))
    }

    /// Normalize a raw rational coordinate into `[0, 1)`.
    pub fn from_rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::BadCoordinate(format!("{num}/{den}")));
        }
        Ok(SpectrumCoord::Rational(
            BigRational::from_ratio(num, den).normalize(),
        ))
    }

    pub fn normalized(self) -> Self {
        match self {
            SpectrumCoord::Rational(r) => SpectrumCoord::Rational(r.normalize()),
            SpectrumCoord::Float(x) => SpectrumCoord::Float(Coord::normalize(&x)),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, SpectrumCoord::Rational(_))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (SpectrumCoord::Rational(a), SpectrumCoord::Rational(b)) => {
                Ok(SpectrumCoord::Rational((a + b).normalize()))
            }
            (SpectrumCoord::Float(a), SpectrumCoord::Float(b)) => {
                Ok(SpectrumCoord::Float(Coord::normalize(&(a + b))))
            }
            _ => Err(Error::KindMismatch),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        match (self, other) {
            (SpectrumCoord::Rational(a), SpectrumCoord::Rational(b)) => {
                Ok(SpectrumCoord::Rational((a - b).normalize()))
            }
            (SpectrumCoord::Float(a), SpectrumCoord::Float(b)) => {
                Ok(SpectrumCoord::Float(Coord::normalize(&(a - b))))
            }
            _ => Err(Error::KindMismatch),
        }
    }

    /// Circular distance: the shorter of the two ways around.
    pub fn distance(&self, other: &Self) -> Result<Self> {
        let d = self.sub(other)?;
        match &d {
            SpectrumCoord::Rational(r) => {
                let one_minus = (<BigRational as Coord>::one() - r).normalize();
                Ok(if *r <= one_minus {
                    d
                } else {
                    SpectrumCoord::Rational(one_minus)
                })
            }
            SpectrumCoord::Float(x) => {
                let one_minus = Coord::normalize(&(1.0 - x));
                Ok(if *x <= one_minus {
                    d
                } else {
                    SpectrumCoord::Float(one_minus)
                })
            }
        }
    }

    /// Parse "3/7" (rational) or "0.15" (decimal) into a coordinate.
    /// A bare integer string is treated as rational.
    pub fn parse(s: &str) -> Result<Self> {
        crate::io::parse_coord_string(s)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            SpectrumCoord::Rational(r) => Coord::to_f64(r),
            SpectrumCoord::Float(x) => *x,
        }
    }
}

impl std::fmt::Display for SpectrumCoord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SpectrumCoord::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            SpectrumCoord::Float(x) => write!(f, "{x}"),
        }
    }
}
