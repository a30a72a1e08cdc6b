//! Finitely presented Bratteli diagrams.
//!
//! A diagram is presented by a finite prefix of levels and edges, optionally
//! followed by a periodic tail. Levels are indexed from 1; edge `n` maps level
//! `n` into level `n + 1`.
//!
//! Tail levels repeat up to a per-period growth factor: with prefix length `P`,
//! period `q` and growth `λ`, level `P + 1 + i + c·q` equals `λ^c` times tail
//! level `i`. The growth factor is the least positive integer for which the
//! closing edge satisfies the multiplicity condition, so a tail whose edges fit
//! inside constant levels has `λ = 1`, while a stationary edge `(2)` over `(1)`
//! yields the levels `1, 2, 4, …`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::matrix::{vec_le, Matrix};

/// Position of an edge matrix inside a presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRef {
    /// Standalone multiplicity matrix (not part of a diagram).
    Standalone,
    /// Prefix edge `n`, mapping prefix level `n` to `n + 1` (1-based).
    Prefix(usize),
    /// Edge from the last prefix level into the first tail level.
    Glue,
    /// Tail edge `i` (1-based within the period).
    Tail(usize),
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeRef::Standalone => f.write_str("matrix"),
            EdgeRef::Prefix(n) => write!(f, "edge {n}"),
            EdgeRef::Glue => f.write_str("glue edge"),
            EdgeRef::Tail(i) => write!(f, "tail edge {i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("level vector must have at least one entry")]
    EmptyLevel,
    #[error("level entries must be positive (entry {index} of {context} is zero)")]
    ZeroLevelEntry { context: String, index: usize },
    #[error("a non-zero diagram needs at least one level")]
    EmptyPrefix,
    #[error("a periodic tail needs at least one level")]
    EmptyTail,
    #[error("expected {expected} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{edge}: expected a {expected_rows}x{expected_cols} matrix, found {rows}x{cols}")]
    DimensionMismatch {
        edge: EdgeRef,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("{edge}: column {column} is zero, so the matrix is not an embedding")]
    NotEmbedding { edge: EdgeRef, column: usize },
    #[error("{edge}: multiplicity condition E·V ≤ W fails in row {row}")]
    MultiplicityViolation { edge: EdgeRef, row: usize },
    #[error("level {index} is out of range (resolvable levels: 1..={available})")]
    OutOfRange { index: usize, available: usize },
    #[error("the zero diagram has no levels")]
    ZeroDiagram,
    #[error("telescope requires n ≤ m (got n = {n}, m = {m})")]
    ReversedRange { n: usize, m: usize },
}

/// Column of positive matrix sizes `n_1, …, n_k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LevelVector(Vec<BigUint>);

impl LevelVector {
    pub fn new(entries: Vec<BigUint>) -> Result<Self, DiagramError> {
        if entries.is_empty() {
            return Err(DiagramError::EmptyLevel);
        }
        if let Some(index) = entries.iter().position(Zero::is_zero) {
            return Err(DiagramError::ZeroLevelEntry {
                context: "level".into(),
                index: index + 1,
            });
        }
        Ok(Self(entries))
    }

    /// Panics on invalid input; meant for literals.
    pub fn small(entries: &[u64]) -> Self {
        Self::new(entries.iter().map(|&x| BigUint::from(x)).collect()).expect("valid level")
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.0
    }

    pub fn scaled(&self, k: &BigUint) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    /// Total matrix size `Σ n_j` of the corresponding algebra block structure.
    pub fn total(&self) -> BigUint {
        self.0.iter().sum()
    }
}

impl fmt::Display for LevelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::matrix::write_vec(f, &self.0)
    }
}

impl fmt::Debug for LevelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A matrix `E: V → W` with `E·V ≤ W`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiplicityMatrix {
    matrix: Matrix,
    domain: LevelVector,
    codomain: LevelVector,
}

impl MultiplicityMatrix {
    pub fn new(
        matrix: Matrix,
        domain: LevelVector,
        codomain: LevelVector,
    ) -> Result<Self, DiagramError> {
        check_multiplicity(&matrix, &domain, &codomain, EdgeRef::Standalone)?;
        Ok(Self {
            matrix,
            domain,
            codomain,
        })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn domain(&self) -> &LevelVector {
        &self.domain
    }

    pub fn codomain(&self) -> &LevelVector {
        &self.codomain
    }

    pub fn is_embedding(&self) -> bool {
        self.matrix.is_embedding()
    }

    /// `E·V = W`.
    pub fn is_unital(&self) -> bool {
        self.matrix.mul_vec(self.domain.entries()) == self.codomain.entries()
    }

    /// Slack `s_i = W_i − (E·V)_i`.
    pub fn slack(&self) -> Vec<BigUint> {
        self.matrix
            .mul_vec(self.domain.entries())
            .iter()
            .zip(self.codomain.entries())
            .map(|(used, total)| total - used)
            .collect()
    }
}

pub(crate) fn check_multiplicity(
    matrix: &Matrix,
    domain: &LevelVector,
    codomain: &LevelVector,
    edge: EdgeRef,
) -> Result<(), DiagramError> {
    if matrix.rows() != codomain.len() || matrix.cols() != domain.len() {
        return Err(DiagramError::DimensionMismatch {
            edge,
            expected_rows: codomain.len(),
            expected_cols: domain.len(),
            rows: matrix.rows(),
            cols: matrix.cols(),
        });
    }
    let image = matrix.mul_vec(domain.entries());
    if let Some(row) = image
        .iter()
        .zip(codomain.entries())
        .position(|(a, b)| a > b)
    {
        return Err(DiagramError::MultiplicityViolation { edge, row: row + 1 });
    }
    Ok(())
}

fn check_edge(
    matrix: &Matrix,
    domain: &LevelVector,
    codomain: &LevelVector,
    edge: EdgeRef,
) -> Result<(), DiagramError> {
    check_multiplicity(matrix, domain, codomain, edge)?;
    if let Some(column) = matrix.zero_column() {
        return Err(DiagramError::NotEmbedding {
            edge,
            column: column + 1,
        });
    }
    Ok(())
}

/// Unvalidated periodic tail: levels and edges of one period plus the gluing edge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicTail {
    pub levels: Vec<Vec<BigUint>>,
    /// Edge `i` maps tail level `i` to `i + 1`; the last one closes the cycle.
    pub edges: Vec<Matrix>,
    /// Maps the last prefix level into the first tail level.
    pub glue: Matrix,
}

/// Unvalidated finite presentation of a diagram, as written in a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramPresentation {
    Zero,
    Levels {
        prefix_levels: Vec<Vec<BigUint>>,
        prefix_edges: Vec<Matrix>,
        tail: Option<PeriodicTail>,
    },
}

impl DiagramPresentation {
    /// Tail-free presentation from small literals.
    pub fn finite(levels: &[&[u64]], edges: Vec<Matrix>) -> Self {
        DiagramPresentation::Levels {
            prefix_levels: levels.iter().map(|l| small_vec(l)).collect(),
            prefix_edges: edges,
            tail: None,
        }
    }

    /// Presentation with a periodic tail, from small literals.
    pub fn periodic(
        levels: &[&[u64]],
        edges: Vec<Matrix>,
        tail_levels: &[&[u64]],
        tail_edges: Vec<Matrix>,
        glue: Matrix,
    ) -> Self {
        DiagramPresentation::Levels {
            prefix_levels: levels.iter().map(|l| small_vec(l)).collect(),
            prefix_edges: edges,
            tail: Some(PeriodicTail {
                levels: tail_levels.iter().map(|l| small_vec(l)).collect(),
                edges: tail_edges,
                glue,
            }),
        }
    }
}

fn small_vec(v: &[u64]) -> Vec<BigUint> {
    v.iter().map(|&x| BigUint::from(x)).collect()
}

#[derive(Debug)]
struct Tail {
    levels: Vec<LevelVector>,
    edges: Vec<Matrix>,
    glue: Matrix,
    growth: BigUint,
}

#[derive(Debug)]
struct Levels {
    levels: Vec<LevelVector>,
    edges: Vec<Matrix>,
    tail: Option<Tail>,
}

#[derive(Debug)]
struct Repr {
    presentation: DiagramPresentation,
    body: Option<Levels>,
}

/// A validated diagram. Cheap to clone; immutable.
#[derive(Clone, Debug)]
pub struct Diagram(Arc<Repr>);

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.presentation == other.0.presentation
    }
}

impl Eq for Diagram {}

fn level_vector(raw: &[BigUint], context: String) -> Result<LevelVector, DiagramError> {
    if raw.is_empty() {
        return Err(DiagramError::EmptyLevel);
    }
    if let Some(index) = raw.iter().position(Zero::is_zero) {
        return Err(DiagramError::ZeroLevelEntry {
            context,
            index: index + 1,
        });
    }
    Ok(LevelVector(raw.to_vec()))
}

/// Least positive integer `λ` with `closing·last ≤ λ·first`.
fn growth_factor(closing: &Matrix, last: &LevelVector, first: &LevelVector) -> BigUint {
    let image = closing.mul_vec(last.entries());
    image
        .iter()
        .zip(first.entries())
        .map(|(a, b)| Integer::div_ceil(a, b))
        .fold(BigUint::one(), |acc, x| acc.max(x))
}

impl Diagram {
    /// Validates a presentation.
    pub fn validate(p: DiagramPresentation) -> Result<Diagram, DiagramError> {
        let body = match &p {
            DiagramPresentation::Zero => None,
            DiagramPresentation::Levels {
                prefix_levels,
                prefix_edges,
                tail,
            } => Some(Self::validate_levels(prefix_levels, prefix_edges, tail.as_ref())?),
        };
        Ok(Diagram(Arc::new(Repr {
            presentation: p,
            body,
        })))
    }

    fn validate_levels(
        prefix_levels: &[Vec<BigUint>],
        prefix_edges: &[Matrix],
        tail: Option<&PeriodicTail>,
    ) -> Result<Levels, DiagramError> {
        if prefix_levels.is_empty() {
            return Err(DiagramError::EmptyPrefix);
        }
        let levels = prefix_levels
            .iter()
            .enumerate()
            .map(|(i, l)| level_vector(l, format!("level {}", i + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        if prefix_edges.len() + 1 != levels.len() {
            return Err(DiagramError::CountMismatch {
                what: "prefix edges",
                expected: levels.len() - 1,
                found: prefix_edges.len(),
            });
        }
        for (i, e) in prefix_edges.iter().enumerate() {
            check_edge(e, &levels[i], &levels[i + 1], EdgeRef::Prefix(i + 1))?;
        }
        let tail = match tail {
            None => None,
            Some(t) => {
                if t.levels.is_empty() {
                    return Err(DiagramError::EmptyTail);
                }
                let tl = t
                    .levels
                    .iter()
                    .enumerate()
                    .map(|(i, l)| level_vector(l, format!("tail level {}", i + 1)))
                    .collect::<Result<Vec<_>, _>>()?;
                if t.edges.len() != tl.len() {
                    return Err(DiagramError::CountMismatch {
                        what: "tail edges",
                        expected: tl.len(),
                        found: t.edges.len(),
                    });
                }
                check_edge(&t.glue, levels.last().unwrap(), &tl[0], EdgeRef::Glue)?;
                let q = tl.len();
                for i in 0..q - 1 {
                    check_edge(&t.edges[i], &tl[i], &tl[i + 1], EdgeRef::Tail(i + 1))?;
                }
                let closing = &t.edges[q - 1];
                let last = &tl[q - 1];
                if closing.rows() != tl[0].len() || closing.cols() != last.len() {
                    return Err(DiagramError::DimensionMismatch {
                        edge: EdgeRef::Tail(q),
                        expected_rows: tl[0].len(),
                        expected_cols: last.len(),
                        rows: closing.rows(),
                        cols: closing.cols(),
                    });
                }
                let growth = growth_factor(closing, last, &tl[0]);
                check_edge(closing, last, &tl[0].scaled(&growth), EdgeRef::Tail(q))?;
                Some(Tail {
                    levels: tl,
                    edges: t.edges.clone(),
                    glue: t.glue.clone(),
                    growth,
                })
            }
        };
        Ok(Levels {
            levels,
            edges: prefix_edges.to_vec(),
            tail,
        })
    }

    /// The zero diagram.
    pub fn zero() -> Diagram {
        Diagram::validate(DiagramPresentation::Zero).expect("zero diagram is valid")
    }

    pub fn presentation(&self) -> &DiagramPresentation {
        &self.0.presentation
    }

    pub fn is_zero(&self) -> bool {
        self.0.body.is_none()
    }

    fn body(&self) -> Result<&Levels, DiagramError> {
        self.0.body.as_ref().ok_or(DiagramError::ZeroDiagram)
    }

    /// Number of prefix levels `P` (0 for the zero diagram).
    pub fn prefix_len(&self) -> usize {
        self.0.body.as_ref().map_or(0, |b| b.levels.len())
    }

    pub fn has_tail(&self) -> bool {
        self.0.body.as_ref().is_some_and(|b| b.tail.is_some())
    }

    /// Tail period `q`.
    pub fn period(&self) -> Option<usize> {
        self.0.body.as_ref()?.tail.as_ref().map(|t| t.levels.len())
    }

    /// Per-period growth factor of tail levels.
    pub fn growth(&self) -> Option<&BigUint> {
        self.0.body.as_ref()?.tail.as_ref().map(|t| &t.growth)
    }

    /// Last resolvable level, or `None` when the diagram is infinite (or zero).
    pub fn last_level(&self) -> Option<usize> {
        match &self.0.body {
            Some(b) if b.tail.is_none() => Some(b.levels.len()),
            _ => None,
        }
    }

    /// First level index from which levels and edges repeat with the tail period.
    pub fn periodic_from(&self) -> Option<usize> {
        self.has_tail().then(|| self.prefix_len() + 1)
    }

    /// Phase of level `n` inside the tail period, when `n` lies past the prefix.
    pub fn phase(&self, n: usize) -> Option<usize> {
        let q = self.period()?;
        let p = self.prefix_len();
        (n > p).then(|| (n - p - 1) % q)
    }

    fn check_index(&self, n: usize, b: &Levels) -> Result<(), DiagramError> {
        if n == 0 || (b.tail.is_none() && n > b.levels.len()) {
            return Err(DiagramError::OutOfRange {
                index: n,
                available: b.levels.len(),
            });
        }
        Ok(())
    }

    /// Level vector `V_n`.
    pub fn level(&self, n: usize) -> Result<LevelVector, DiagramError> {
        let b = self.body()?;
        self.check_index(n, b)?;
        let p = b.levels.len();
        if n <= p {
            return Ok(b.levels[n - 1].clone());
        }
        let t = b.tail.as_ref().unwrap();
        let q = t.levels.len();
        let (cycles, i) = ((n - p - 1) / q, (n - p - 1) % q);
        let factor = Pow::pow(&t.growth, cycles);
        Ok(t.levels[i].scaled(&factor))
    }

    /// Number of summands `k_n` at level `n`.
    pub fn width(&self, n: usize) -> Result<usize, DiagramError> {
        let b = self.body()?;
        self.check_index(n, b)?;
        let p = b.levels.len();
        if n <= p {
            return Ok(b.levels[n - 1].len());
        }
        let t = b.tail.as_ref().unwrap();
        Ok(t.levels[(n - p - 1) % t.levels.len()].len())
    }

    /// Edge matrix `E_n: V_n → V_{n+1}`.
    pub fn edge_matrix(&self, n: usize) -> Result<&Matrix, DiagramError> {
        let b = self.body()?;
        let p = b.levels.len();
        if n == 0 {
            return Err(DiagramError::OutOfRange {
                index: 0,
                available: p,
            });
        }
        if n < p {
            return Ok(&b.edges[n - 1]);
        }
        match &b.tail {
            None => Err(DiagramError::OutOfRange {
                index: n + 1,
                available: p,
            }),
            Some(t) if n == p => Ok(&t.glue),
            Some(t) => Ok(&t.edges[(n - p - 1) % t.edges.len()]),
        }
    }

    /// Edge `E_n` together with its domain and codomain levels.
    pub fn edge(&self, n: usize) -> Result<MultiplicityMatrix, DiagramError> {
        let matrix = self.edge_matrix(n)?.clone();
        Ok(MultiplicityMatrix {
            matrix,
            domain: self.level(n)?,
            codomain: self.level(n + 1)?,
        })
    }

    /// Exact product `E_{nm} = E_{m−1} ⋯ E_n`, the identity when `n = m`.
    pub fn telescope_matrix(&self, n: usize, m: usize) -> Result<Matrix, DiagramError> {
        if n > m {
            return Err(DiagramError::ReversedRange { n, m });
        }
        let mut acc = Matrix::identity(self.width(n)?);
        for k in n..m {
            acc = self.edge_matrix(k)?.mul(&acc);
        }
        Ok(acc)
    }

    /// Telescoped edge from level `n` to level `m` as a multiplicity matrix.
    pub fn telescope(&self, n: usize, m: usize) -> Result<MultiplicityMatrix, DiagramError> {
        let matrix = self.telescope_matrix(n, m)?;
        Ok(MultiplicityMatrix {
            matrix,
            domain: self.level(n)?,
            codomain: self.level(m)?,
        })
    }

    /// Whether `E_n·V_n = V_{n+1}` for every edge (vacuously true for the zero diagram).
    pub fn is_unital(&self) -> bool {
        let Some(b) = &self.0.body else {
            return true;
        };
        let unital = |e: &Matrix, v: &LevelVector, w: &[BigUint]| e.mul_vec(v.entries()) == w;
        for (i, e) in b.edges.iter().enumerate() {
            if !unital(e, &b.levels[i], b.levels[i + 1].entries()) {
                return false;
            }
        }
        if let Some(t) = &b.tail {
            if !unital(&t.glue, b.levels.last().unwrap(), t.levels[0].entries()) {
                return false;
            }
            let q = t.levels.len();
            for i in 0..q {
                let next = if i + 1 < q {
                    t.levels[i + 1].clone()
                } else {
                    t.levels[0].scaled(&t.growth)
                };
                if !unital(&t.edges[i], &t.levels[i], next.entries()) {
                    return false;
                }
            }
        }
        true
    }

    /// Index of the last level that a presentation lists explicitly (prefix plus one period).
    pub fn presented_depth(&self) -> usize {
        self.prefix_len() + self.period().unwrap_or(0)
    }
}

/// `E·V ≤ W` for plain data.
pub fn satisfies_multiplicity(e: &Matrix, v: &LevelVector, w: &LevelVector) -> bool {
    e.cols() == v.len() && e.rows() == w.len() && vec_le(&e.mul_vec(v.entries()), w.entries())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn section_two() -> Diagram {
        Diagram::validate(DiagramPresentation::finite(
            &[&[1], &[2, 2], &[6]],
            vec![Matrix::small(&[&[2], &[1]]), Matrix::small(&[&[1, 2]])],
        ))
        .unwrap()
    }

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

    #[test]
    fn section_two_example_validates() {
        let d = section_two();
        assert_eq!(d.edge_matrix(2).unwrap(), &Matrix::small(&[&[1, 2]]));
        assert_eq!(d.telescope_matrix(1, 3).unwrap(), Matrix::small(&[&[4]]));
        assert!(!d.is_unital());
    }

    #[test]
    fn single_level_is_valid() {
        let d = Diagram::validate(DiagramPresentation::finite(&[&[1]], vec![])).unwrap();
        assert_eq!(d.level(1).unwrap(), LevelVector::small(&[1]));
        assert!(matches!(d.level(2), Err(DiagramError::OutOfRange { .. })));
    }

    #[test]
    fn zero_column_rejected() {
        let err = Diagram::validate(DiagramPresentation::finite(
            &[&[1, 1], &[3]],
            vec![Matrix::small(&[&[1, 0]])],
        ))
        .unwrap_err();
        assert_eq!(
            err,
            DiagramError::NotEmbedding {
                edge: EdgeRef::Prefix(1),
                column: 2
            }
        );
    }

    #[test]
    fn multiplicity_violation_names_row() {
        let err = Diagram::validate(DiagramPresentation::finite(
            &[&[2], &[3, 5]],
            vec![Matrix::small(&[&[2], &[1]])],
        ))
        .unwrap_err();
        assert_eq!(
            err,
            DiagramError::MultiplicityViolation {
                edge: EdgeRef::Prefix(1),
                row: 1
            }
        );
    }

    #[test]
    fn stationary_tail_levels_repeat() {
        let d = Diagram::validate(DiagramPresentation::periodic(
            &[&[1]],
            vec![],
            &[&[2, 2]],
            vec![Matrix::identity(2)],
            Matrix::small(&[&[1], &[1]]),
        ))
        .unwrap();
        assert_eq!(d.growth(), Some(&BigUint::one()));
        assert_eq!(d.level(7).unwrap(), LevelVector::small(&[2, 2]));
        assert_eq!(d.level(1).unwrap(), LevelVector::small(&[1]));
    }

    #[test]
    fn doubling_tail_grows() {
        let d = doubling();
        assert_eq!(d.growth(), Some(&BigUint::from(2u32)));
        assert_eq!(d.level(5).unwrap(), LevelVector::small(&[16]));
        assert_eq!(d.edge_matrix(9).unwrap(), &Matrix::small(&[&[2]]));
        assert_eq!(d.telescope_matrix(1, 4).unwrap(), Matrix::small(&[&[8]]));
        assert!(d.is_unital());
        assert!(matches!(d.edge_matrix(0), Err(DiagramError::OutOfRange { index: 0, .. })));
    }

    #[test]
    fn telescope_identity_on_diagonal() {
        let d = section_two();
        assert_eq!(d.telescope_matrix(2, 2).unwrap(), Matrix::identity(2));
        assert!(d.telescope_matrix(3, 2).is_err());
    }

    #[test]
    fn zero_diagram_is_special() {
        let z = Diagram::zero();
        assert!(z.is_zero());
        assert!(z.is_unital());
        assert_eq!(z.level(1), Err(DiagramError::ZeroDiagram));
    }

    #[test]
    fn phases_follow_period() {
        let d = Diagram::validate(DiagramPresentation::periodic(
            &[&[1], &[1]],
            vec![Matrix::small(&[&[1]])],
            &[&[1], &[2]],
            vec![Matrix::small(&[&[2]]), Matrix::small(&[&[1]])],
            Matrix::small(&[&[1]]),
        ))
        .unwrap();
        assert_eq!(d.phase(2), None);
        assert_eq!(d.phase(3), Some(0));
        assert_eq!(d.phase(4), Some(1));
        assert_eq!(d.phase(5), Some(0));
        // closing edge (1) takes 2 into λ·1, so λ = 2
        assert_eq!(d.growth(), Some(&BigUint::from(2u32)));
        assert_eq!(d.level(5).unwrap(), LevelVector::small(&[2]));
        assert_eq!(d.level(6).unwrap(), LevelVector::small(&[4]));
    }
}
