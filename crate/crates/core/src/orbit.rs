//! Forward orbits of signed vectors along a diagram.
//!
//! A vector at level `m` is pushed through the edge matrices. Both goals are
//! invariant under multiplication by a positive scalar, so once the diagram is
//! periodic a repeated pair (tail phase, primitive direction) means the orbit is
//! eventually a scaled copy of an earlier stretch and the goal is never reached.
//! Independently, edge matrices have no zero column, so a nonzero vector with all
//! entries of one sign keeps that property forever.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, DiagramError};
use crate::matrix::{primitive, Matrix};

/// Why a pushed vector never reaches its goal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    /// The orbit state at `repeat` equals the state at `start` up to a positive scalar.
    Cycle { start: usize, repeat: usize },
    /// At `level` the vector is nonzero and sign-definite (nonpositive, for positivity),
    /// which every later push preserves.
    Sign { level: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Goal {
    Zero,
    Nonnegative,
}

impl Goal {
    pub fn reached(self, v: &[BigInt]) -> bool {
        match self {
            Goal::Zero => v.iter().all(Zero::is_zero),
            Goal::Nonnegative => v.iter().all(|x| !x.is_negative()),
        }
    }

    /// The goal fails here and at every later level.
    pub fn blocked(self, v: &[BigInt]) -> bool {
        let negative = v.iter().any(Signed::is_negative);
        let positive = v.iter().any(Signed::is_positive);
        match self {
            Goal::Zero => negative != positive,
            Goal::Nonnegative => negative && !positive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Orbit {
    /// Smallest level at which the goal is reached.
    Hit(usize),
    /// The goal fails at every level from the first on.
    Never(Refutation),
    /// Neither outcome within the bound.
    Exhausted,
}

/// Pushes `x` from `level` up to `bound`, testing the goal at every level including the first.
pub(crate) fn search(d: &Diagram, level: usize, x: Vec<BigInt>, bound: usize, goal: Goal) -> Result<Orbit, DiagramError> {
    let mut seen: HashMap<(usize, Vec<BigInt>), usize> = HashMap::new();
    let mut m = level;
    let mut x = x;
    let last = d.last_level().unwrap_or(usize::MAX).min(bound);
    while m <= last {
        if goal.reached(&x) {
            return Ok(Orbit::Hit(m));
        }
        if d.has_tail() && goal.blocked(&x) {
            return Ok(Orbit::Never(Refutation::Sign { level: m }));
        }
        if let Some(phase) = d.phase(m) {
            if let Some(&start) = seen.get(&(phase, primitive(&x))) {
                return Ok(Orbit::Never(Refutation::Cycle { start, repeat: m }));
            }
            seen.insert((phase, primitive(&x)), m);
        }
        if m == last {
            break;
        }
        x = d.edge_matrix(m)?.mul_signed(&x);
        m += 1;
    }
    Ok(Orbit::Exhausted)
}

/// Signed matrix stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Residual {
    pub columns: Vec<Vec<BigInt>>,
}

impl Residual {
    /// `a − b` for equally shaped nonnegative matrices.
    pub fn difference(a: &Matrix, b: &Matrix) -> Self {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
        let columns = (0..a.cols())
            .map(|j| {
                (0..a.rows())
                    .map(|i| BigInt::from(a.get(i, j).clone()) - BigInt::from(b.get(i, j).clone()))
                    .collect()
            })
            .collect();
        Self { columns }
    }
}

/// Outcome of pushing every column of a residual matrix until it vanishes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Vanish {
    /// All columns vanish from this level on (the smallest such level).
    At(usize),
    /// Column `column` never vanishes.
    Never { column: usize, reason: Refutation },
    Unknown,
}

pub(crate) fn vanishing_level(
    d: &Diagram,
    level: usize,
    r: Residual,
    bound: usize,
) -> Result<Vanish, DiagramError> {
    let mut witness = level;
    let mut unknown = false;
    for (column, x) in r.columns.into_iter().enumerate() {
        match search(d, level, x, bound, Goal::Zero)? {
            Orbit::Hit(m) => witness = witness.max(m),
            Orbit::Never(reason) => return Ok(Vanish::Never { column, reason }),
            Orbit::Exhausted => unknown = true,
        }
    }
    Ok(if unknown { Vanish::Unknown } else { Vanish::At(witness) })
}
