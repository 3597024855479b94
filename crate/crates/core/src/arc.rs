//! Approval sets as arcs on the unit circle.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::coord::Coord;
use crate::error::{Error, Result};

/// Whether an arc contains its right endpoint. The left endpoint is always
/// contained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Closure {
    Closed,
    HalfOpen,
}

/// An approval set: the arc of length `length` starting at `left` and running
/// clockwise, possibly wrapping past 0. Stored as (left, length) so that
/// wrap-around is unambiguous.
#[derive(Clone, Debug, PartialEq)]
pub struct Arc<T> {
    left: T,
    length: T,
    closure: Closure,
}

impl<T: Coord> Arc<T> {
    /// Build an arc, normalizing the left endpoint. The length must lie
    /// strictly between 0 and 1.
    pub fn new(left: T, length: T, closure: Closure) -> Result<Self> {
        if !left.is_finite_value() || !length.is_finite_value() {
            return Err(Error::NonFinite(length.to_f64()));
        }
        let zero = T::zero();
        let one = T::one();
        if length.total_cmp(&zero) != Ordering::Greater || length.total_cmp(&one) != Ordering::Less
        {
            return Err(Error::BadArcLength(format!("{length}")));
        }
        Ok(Arc {
            left: left.normalize(),
            length,
            closure,
        })
    }

    pub fn left(&self) -> &T {
        &self.left
    }

    pub fn length(&self) -> &T {
        &self.length
    }

    pub fn closure(&self) -> Closure {
        self.closure
    }

    /// Right endpoint, reduced mod 1.
    pub fn right(&self) -> T {
        self.left.add(&self.length).normalize()
    }

    /// Membership under the arc's closure rule, accounting for wrap-around.
    pub fn contains(&self, x: &T) -> bool {
        let d = x.sub(&self.left).normalize();
        match self.closure {
            Closure::Closed => d.total_cmp(&self.length) != Ordering::Greater,
            Closure::HalfOpen => d.total_cmp(&self.length) == Ordering::Less,
        }
    }

    /// True iff some point lies in both arcs. Two closed arcs touching at a
    /// single endpoint intersect.
    ///
    /// An overlap region, if nonempty, contains the left endpoint of at least
    /// one of the two arcs, so checking both left endpoints is complete.
    pub fn intersects(&self, other: &Arc<T>) -> bool {
        self.contains(&other.left) || other.contains(&self.left)
    }

    /// Rotate the arc by `t`.
    pub fn shift(&self, t: &T) -> Arc<T> {
        Arc {
            left: self.left.add(t).normalize(),
            length: self.length.clone(),
            closure: self.closure,
        }
    }
}
