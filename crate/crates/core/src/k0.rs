//! Class calculus for the inductive limit `lim (ℤ^{k_n}, E_n)`.
//!
//! A class is a vector at some level; two classes are equal when their pushes
//! agree at a common level. Positivity and membership in the scale
//! (`0 ≤ y ≤ V_m`) are both monotone along pushes, so every question reduces to
//! finding the first level where a predicate holds, with the residual-orbit
//! cycle test supplying negative answers on periodic tails.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError};
use crate::matrix::to_signed;
use crate::morphism::{MorphismError, Premorphism};
use crate::orbit::{search, Goal, Orbit, Refutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum K0Error {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("class at level {level} needs {expected} entries, found {found}")]
    LengthMismatch { level: usize, expected: usize, found: usize },
    #[error("cannot push a class from level {from} down to level {to}")]
    Backwards { from: usize, to: usize },
    #[error("level {0} lies outside the premorphism window")]
    OutOfWindow(usize),
}

/// `[x]` at level `n`, an element of the formal limit group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct K0Class {
    pub level: usize,
    #[serde(serialize_with = "crate::num::ser_int_vec")]
    pub vector: Vec<BigInt>,
}

impl K0Class {
    pub fn new(level: usize, vector: Vec<BigInt>) -> Self {
        Self { level, vector }
    }

    pub fn small(level: usize, vector: &[i64]) -> Self {
        Self::new(level, vector.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Checks the vector length against the diagram.
    pub fn check(&self, d: &Diagram) -> Result<(), K0Error> {
        let expected = d.width(self.level)?;
        if expected != self.vector.len() {
            return Err(K0Error::LengthMismatch {
                level: self.level,
                expected,
                found: self.vector.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for K0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K0@{} [", self.level)?;
        for (i, x) in self.vector.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum K0Verdict {
    /// Holds from `level` on (the smallest such level).
    Holds { level: usize },
    /// The relevant pushed vector never satisfies the condition.
    Refuted { reason: Refutation },
    UnknownAtBound,
}

impl K0Verdict {
    fn from_orbit(o: Orbit) -> Self {
        match o {
            Orbit::Hit(level) => K0Verdict::Holds { level },
            Orbit::Never(reason) => K0Verdict::Refuted { reason },
            Orbit::Exhausted => K0Verdict::UnknownAtBound,
        }
    }
}

/// `(n, x) ↦ (m, E_{nm}·x)`.
pub fn push(d: &Diagram, c: &K0Class, m: usize) -> Result<K0Class, K0Error> {
    c.check(d)?;
    if m < c.level {
        return Err(K0Error::Backwards { from: c.level, to: m });
    }
    let e = d.telescope_matrix(c.level, m)?;
    Ok(K0Class::new(m, e.mul_signed(&c.vector)))
}

/// Equal when the pushes agree at some level `≤ bound`.
pub fn class_equal(d: &Diagram, a: &K0Class, b: &K0Class, bound: usize) -> Result<K0Verdict, K0Error> {
    let level = a.level.max(b.level);
    let (pa, pb) = (push(d, a, level)?, push(d, b, level)?);
    let diff = pa.vector.iter().zip(&pb.vector).map(|(x, y)| x - y).collect();
    Ok(K0Verdict::from_orbit(search(d, level, diff, bound, Goal::Zero)?))
}

/// Positive when some push has only nonnegative entries.
pub fn class_positive(d: &Diagram, c: &K0Class, bound: usize) -> Result<K0Verdict, K0Error> {
    c.check(d)?;
    Ok(K0Verdict::from_orbit(search(d, c.level, c.vector.clone(), bound, Goal::Nonnegative)?))
}

/// `E_n·V_n = V_{n+1}` on the periodic tail, so that `V_m − y_m` is pushed linearly there.
fn tail_is_unital(d: &Diagram) -> bool {
    let Some(q) = d.period() else {
        return false;
    };
    let p = d.prefix_len();
    (p + 1..=p + q).all(|n| {
        let (Ok(v), Ok(w), Ok(e)) = (d.level(n), d.level(n + 1), d.edge_matrix(n)) else {
            return false;
        };
        e.mul_vec(v.entries()) == w.entries()
    })
}

/// In the scale when some push `y` satisfies `0 ≤ y ≤ V_m` componentwise.
///
/// Both inequalities persist once they hold (`V_{m+1} ≥ E_m·V_m`), so the answer is
/// the later of the two first levels. The upper inequality is refuted by the
/// cycle test only on unital tails, where `V − y` is itself a pushed vector.
pub fn class_in_scale(d: &Diagram, c: &K0Class, bound: usize) -> Result<K0Verdict, K0Error> {
    let lower = class_positive(d, c, bound)?;
    let K0Verdict::Holds { level: low } = lower else {
        return Ok(lower);
    };
    let slack_at = |m: usize| -> Result<Vec<BigInt>, K0Error> {
        let y = push(d, c, m)?;
        let v = to_signed(d.level(m)?.entries());
        Ok(v.iter().zip(&y.vector).map(|(a, b)| a - b).collect())
    };
    let linear_from = if tail_is_unital(d) {
        Some(c.level.max(d.prefix_len() + 1))
    } else {
        None
    };
    let last = d.last_level().unwrap_or(usize::MAX).min(bound);
    let mut m = c.level;
    let upper = loop {
        if m > last {
            break K0Verdict::UnknownAtBound;
        }
        if Some(m) == linear_from {
            break K0Verdict::from_orbit(search(d, m, slack_at(m)?, bound, Goal::Nonnegative)?);
        }
        if Goal::Nonnegative.reached(&slack_at(m)?) {
            break K0Verdict::Holds { level: m };
        }
        m += 1;
    };
    Ok(match upper {
        K0Verdict::Holds { level } => K0Verdict::Holds { level: level.max(low) },
        other => other,
    })
}

/// `(n, x) ↦ (f_n, F_n·x)`.
pub fn induced_map(f: &Premorphism, c: &K0Class) -> Result<K0Class, K0Error> {
    c.check(f.source())?;
    if !f.is_defined_at(c.level) {
        return Err(K0Error::OutOfWindow(c.level));
    }
    let m = f.matrix(c.level)?;
    Ok(K0Class::new(f.index(c.level)?, m.mul_signed(&c.vector)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramPresentation;
    use crate::matrix::Matrix;
    use crate::morphism::{identity_premorphism, PremorphismWindow};

    fn doubling() -> Diagram {
        Diagram::validate(DiagramPresentation::periodic(
            &[&[1]],
            vec![],
            &[&[2]],
            vec![Matrix::small(&[&[2]])],
            Matrix::small(&[&[2]]),
        ))
        .unwrap()
    }

    fn all_ones() -> Diagram {
        Diagram::validate(DiagramPresentation::periodic(
            &[&[1, 1]],
            vec![],
            &[&[2, 2]],
            vec![Matrix::small(&[&[1, 1], &[1, 1]])],
            Matrix::small(&[&[1, 1], &[1, 1]]),
        ))
        .unwrap()
    }

    #[test]
    fn push_examples() {
        let d = doubling();
        assert_eq!(push(&d, &K0Class::small(1, &[1]), 3).unwrap(), K0Class::small(3, &[4]));
        let c = K0Class::small(2, &[3]);
        assert_eq!(push(&d, &c, 2).unwrap(), c);
        let e = all_ones();
        assert_eq!(push(&e, &K0Class::small(1, &[1, -1]), 2).unwrap(), K0Class::small(2, &[0, 0]));
    }

    #[test]
    fn equality_examples() {
        let d = doubling();
        assert_eq!(
            class_equal(&d, &K0Class::small(1, &[1]), &K0Class::small(2, &[2]), 10).unwrap(),
            K0Verdict::Holds { level: 2 }
        );
        let e = all_ones();
        assert_eq!(
            class_equal(&e, &K0Class::small(1, &[1, -1]), &K0Class::small(1, &[0, 0]), 10).unwrap(),
            K0Verdict::Holds { level: 2 }
        );
        assert!(matches!(
            class_equal(&d, &K0Class::small(1, &[1]), &K0Class::small(1, &[2]), 10).unwrap(),
            K0Verdict::Refuted { .. }
        ));
    }

    #[test]
    fn order_examples() {
        let d = doubling();
        assert_eq!(class_positive(&d, &K0Class::small(1, &[1]), 10).unwrap(), K0Verdict::Holds { level: 1 });
        assert_eq!(class_in_scale(&d, &K0Class::small(1, &[1]), 10).unwrap(), K0Verdict::Holds { level: 1 });
        assert!(matches!(class_positive(&d, &K0Class::small(1, &[-1]), 10).unwrap(), K0Verdict::Refuted { .. }));
        assert!(matches!(class_in_scale(&d, &K0Class::small(1, &[5]), 20).unwrap(), K0Verdict::Refuted { .. }));
        // direct iteration: 5·2^{m−1} > 2^{m−1} at every level up to 20
        for m in 1..=20 {
            let y = push(&d, &K0Class::small(1, &[5]), m).unwrap();
            assert!(y.vector[0] > to_signed(d.level(m).unwrap().entries())[0]);
        }
    }

    #[test]
    fn display_format() {
        assert_eq!(K0Class::small(3, &[1, -2]).to_string(), "K0@3 [1,-2]");
    }

    #[test]
    fn induced_by_identity_and_uhf_map() {
        let d = doubling();
        let id = identity_premorphism(&d, 2).unwrap();
        let c = K0Class::small(2, &[1]);
        assert_eq!(induced_map(&id, &c).unwrap(), c);
        let four = Diagram::validate(DiagramPresentation::periodic(
            &[&[1]],
            vec![],
            &[&[4]],
            vec![Matrix::small(&[&[4]])],
            Matrix::small(&[&[4]]),
        ))
        .unwrap();
        // F_n = (m_{f_n}/k_n) with f_n = n: (1), (2), (4)
        let f = Premorphism::validate(PremorphismWindow {
            source: d,
            target: four,
            indices: vec![1, 2, 3],
            matrices: vec![Matrix::small(&[&[1]]), Matrix::small(&[&[2]]), Matrix::small(&[&[4]])],
            periodic_rule: None,
        })
        .unwrap();
        assert_eq!(induced_map(&f, &K0Class::small(3, &[1])).unwrap(), K0Class::small(3, &[4]));
        assert!(matches!(induced_map(&f, &K0Class::small(4, &[1])), Err(K0Error::OutOfWindow(4))));
    }
}
