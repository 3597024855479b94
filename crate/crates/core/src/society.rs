//! A society: an ordered collection of arcs over the unit circle.

use num_rational::BigRational;

use crate::arc::{Arc, Closure};
use crate::coord::Coord;
use crate::error::{Error, Result};

/// Nonempty ordered collection of arcs; the index is the voter id. All arcs
/// share one numeric kind by construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Society<T> {
    arcs: Vec<Arc<T>>,
}

impl<T: Coord> Society<T> {
    pub fn new(arcs: Vec<Arc<T>>) -> Result<Self> {
        if arcs.is_empty() {
            return Err(Error::EmptySociety);
        }
        Ok(Society { arcs })
    }

    pub fn arcs(&self) -> &[Arc<T>] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The common arc length, if all arcs share one.
    pub fn fixed_length(&self) -> Option<&T> {
        let p = self.arcs[0].length();
        if self.arcs.iter().all(|a| a.length() == p) {
            Some(p)
        } else {
            None
        }
    }

    pub fn all_closed(&self) -> bool {
        self.arcs.iter().all(|a| a.closure() == Closure::Closed)
    }

    /// Number of arcs containing `x`.
    pub fn count_at(&self, x: &T) -> u32 {
        self.arcs.iter().filter(|a| a.contains(x)).count() as u32
    }
}

/// Kind-erased society, the boundary type for files and the CLI.
#[derive(Clone, Debug)]
pub enum AnySociety {
    Rational(Society<BigRational>),
    Float(Society<f64>),
}

impl AnySociety {
    pub fn len(&self) -> usize {
        match self {
            AnySociety::Rational(s) => s.len(),
            AnySociety::Float(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AnySociety::Rational(_))
    }
}
