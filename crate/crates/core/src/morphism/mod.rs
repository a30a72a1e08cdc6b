//! Premorphisms between diagrams.
//!
//! A premorphism `B → C` is a family `(F_n, f_n)` with `f` nondecreasing,
//! `F_n: V_n → W_{f_n}` and `F_{n+1}·E_n = S_{f_n f_{n+1}}·F_n`. Only a finite
//! window `n ≤ L` is stored. A periodic rule `(p, p')` extends the window by
//! `F_{n+p} = F_n` and `f_{n+p} = f_n + p'` for `n > L − p`; this is the only way
//! cofinality of `f` is asserted.

mod equivalence;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError};
use crate::matrix::{vec_le, Matrix};

pub use equivalence::{
    equivalent_def210, equivalent_def25, equivalent_def29, verify_non_equivalence, verify_witness, EquivalenceVerdict,
    EquivalenceWitness, NonEquivalence, Scope,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MorphismError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("window must have at least one index")]
    EmptyWindow,
    #[error("{indices} indices but {matrices} matrices")]
    LengthMismatch { indices: usize, matrices: usize },
    #[error("target indices must be at least 1 (index {n})")]
    ZeroIndex { n: usize },
    #[error("indices decrease at n = {n}: f_{n} > f_{next}", next = n + 1)]
    MonotonicityFails { n: usize },
    #[error("F_{n} has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    ShapeMismatch {
        n: usize,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("F_{n}·V_{n} exceeds the target level")]
    MultiplicityViolation { n: usize },
    #[error("square at n = {n} fails: F_(n+1)·E_n = {lhs} but S·F_n = {rhs}")]
    SquareFails { n: usize, lhs: Matrix, rhs: Matrix },
    #[error("invalid periodic rule: {0}")]
    InvalidRule(String),
    #[error("a premorphism into or out of the zero diagram carries no matrices")]
    ZeroEndpoint,
    #[error("target of the first premorphism differs from the source of the second")]
    ComposabilityMismatch,
    #[error("premorphisms have different sources or targets")]
    SourceTargetMismatch,
    #[error("n = {n} lies outside the premorphism window")]
    OutOfWindow { n: usize },
}

/// Periodic continuation `F_{n+period} = F_n`, `f_{n+period} = f_n + shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicRule {
    pub period: usize,
    pub shift: usize,
}

/// Unvalidated premorphism data.
#[derive(Debug, Clone)]
pub struct PremorphismWindow {
    pub source: Diagram,
    pub target: Diagram,
    pub indices: Vec<usize>,
    pub matrices: Vec<Matrix>,
    pub periodic_rule: Option<PeriodicRule>,
}

/// Whether `f_n → ∞` is certified.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cofinality {
    Periodic,
    WindowOnly,
}

#[derive(Debug)]
enum Body {
    Zero,
    Window {
        indices: Vec<usize>,
        matrices: Vec<Matrix>,
        rule: Option<PeriodicRule>,
    },
}

#[derive(Debug)]
struct Repr {
    source: Diagram,
    target: Diagram,
    body: Body,
}

/// A validated premorphism. Cheap to clone.
#[derive(Debug, Clone)]
pub struct Premorphism(Arc<Repr>);

impl PartialEq for Premorphism {
    fn eq(&self, other: &Self) -> bool {
        if self.source() != other.source() || self.target() != other.target() {
            return false;
        }
        match (&self.0.body, &other.0.body) {
            (Body::Zero, Body::Zero) => true,
            (
                Body::Window { indices: a, matrices: b, rule: c },
                Body::Window { indices: x, matrices: y, rule: z },
            ) => a == x && b == y && c == z,
            _ => false,
        }
    }
}

fn rule_error(msg: impl Into<String>) -> MorphismError {
    MorphismError::InvalidRule(msg.into())
}

/// Checks the data at `n`: shape and multiplicity of `F_n` into `W_{f_n}`.
fn check_matrix(
    source: &Diagram,
    target: &Diagram,
    n: usize,
    f: usize,
    m: &Matrix,
) -> Result<(), MorphismError> {
    let v = source.level(n)?;
    let w = target.level(f)?;
    if m.rows() != w.len() || m.cols() != v.len() {
        return Err(MorphismError::ShapeMismatch {
            n,
            rows: m.rows(),
            cols: m.cols(),
            expected_rows: w.len(),
            expected_cols: v.len(),
        });
    }
    if !vec_le(&m.mul_vec(v.entries()), w.entries()) {
        return Err(MorphismError::MultiplicityViolation { n });
    }
    Ok(())
}

/// `F_{n+1}·E_n = S_{f_n f_{n+1}}·F_n`.
fn check_square(
    source: &Diagram,
    target: &Diagram,
    n: usize,
    (f0, m0): (usize, &Matrix),
    (f1, m1): (usize, &Matrix),
) -> Result<(), MorphismError> {
    let lhs = m1.mul(source.edge_matrix(n)?);
    let rhs = target.telescope_matrix(f0, f1)?.mul(m0);
    if lhs != rhs {
        return Err(MorphismError::SquareFails { n, lhs, rhs });
    }
    Ok(())
}

impl Premorphism {
    /// Validates window data: monotonicity, multiplicity, commuting squares and the periodic rule.
    pub fn validate(w: PremorphismWindow) -> Result<Premorphism, MorphismError> {
        let PremorphismWindow {
            source,
            target,
            indices,
            matrices,
            periodic_rule,
        } = w;
        if source.is_zero() || target.is_zero() {
            return Err(MorphismError::ZeroEndpoint);
        }
        if indices.is_empty() {
            return Err(MorphismError::EmptyWindow);
        }
        if indices.len() != matrices.len() {
            return Err(MorphismError::LengthMismatch {
                indices: indices.len(),
                matrices: matrices.len(),
            });
        }
        let l = indices.len();
        for (i, &f) in indices.iter().enumerate() {
            if f == 0 {
                return Err(MorphismError::ZeroIndex { n: i + 1 });
            }
            if i + 1 < l && indices[i + 1] < f {
                return Err(MorphismError::MonotonicityFails { n: i + 1 });
            }
        }
        for n in 1..=l {
            check_matrix(&source, &target, n, indices[n - 1], &matrices[n - 1])?;
        }
        for n in 1..l {
            check_square(
                &source,
                &target,
                n,
                (indices[n - 1], &matrices[n - 1]),
                (indices[n], &matrices[n]),
            )?;
        }
        if let Some(rule) = periodic_rule {
            Self::check_rule(&source, &target, &indices, &matrices, rule)?;
        }
        Ok(Premorphism(Arc::new(Repr {
            source,
            target,
            body: Body::Window {
                indices,
                matrices,
                rule: periodic_rule,
            },
        })))
    }

    fn check_rule(
        source: &Diagram,
        target: &Diagram,
        indices: &[usize],
        matrices: &[Matrix],
        rule: PeriodicRule,
    ) -> Result<(), MorphismError> {
        let PeriodicRule { period: p, shift: s } = rule;
        let l = indices.len();
        if p == 0 || p > l {
            return Err(rule_error(format!("period {p} must lie in 1..={l}")));
        }
        if s == 0 {
            return Err(rule_error("shift must be positive"));
        }
        let (Some(qs), Some(qt)) = (source.period(), target.period()) else {
            return Err(rule_error("both diagrams need periodic tails"));
        };
        let base = l - p + 1;
        if base <= source.prefix_len() {
            return Err(rule_error(format!(
                "repeating part starts at n = {base}, inside the source prefix"
            )));
        }
        if p % qs != 0 {
            return Err(rule_error(format!("period {p} is not a multiple of the source tail period {qs}")));
        }
        if indices[base - 1] <= target.prefix_len() {
            return Err(rule_error(format!(
                "f_{base} = {} lies inside the target prefix",
                indices[base - 1]
            )));
        }
        if s % qt != 0 {
            return Err(rule_error(format!("shift {s} is not a multiple of the target tail period {qt}")));
        }
        let next = indices[base - 1] + s;
        if next < indices[l - 1] {
            return Err(MorphismError::MonotonicityFails { n: l });
        }
        // Levels grow by these factors over one period of the rule.
        let gs = Pow::pow(source.growth().unwrap(), p / qs);
        let gt = Pow::pow(target.growth().unwrap(), s / qt);
        if gs > gt {
            for n in base..=l {
                let used = matrices[n - 1].mul_vec(source.level(n)?.entries());
                if used.iter().any(|x| !x.is_zero()) {
                    return Err(rule_error(format!(
                        "source levels grow faster than target levels (factor {gs} against {gt})"
                    )));
                }
            }
        }
        check_square(
            source,
            target,
            l,
            (indices[l - 1], &matrices[l - 1]),
            (next, &matrices[base - 1]),
        )
        .map_err(|e| match e {
            MorphismError::SquareFails { lhs, rhs, .. } => {
                rule_error(format!("closing square at n = {l} fails: {lhs} ≠ {rhs}"))
            }
            other => other,
        })
    }

    /// The unique premorphism into or out of the zero diagram.
    pub fn zero(source: Diagram, target: Diagram) -> Result<Premorphism, MorphismError> {
        if !source.is_zero() && !target.is_zero() {
            return Err(MorphismError::ZeroEndpoint);
        }
        Ok(Premorphism(Arc::new(Repr {
            source,
            target,
            body: Body::Zero,
        })))
    }

    pub fn source(&self) -> &Diagram {
        &self.0.source
    }

    pub fn target(&self) -> &Diagram {
        &self.0.target
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0.body, Body::Zero)
    }

    pub fn rule(&self) -> Option<PeriodicRule> {
        match &self.0.body {
            Body::Window { rule, .. } => *rule,
            Body::Zero => None,
        }
    }

    pub fn cofinality(&self) -> Cofinality {
        match self.rule() {
            Some(_) => Cofinality::Periodic,
            None => Cofinality::WindowOnly,
        }
    }

    /// Length `L` of the stored window (0 for a zero premorphism).
    pub fn depth(&self) -> usize {
        match &self.0.body {
            Body::Window { indices, .. } => indices.len(),
            Body::Zero => 0,
        }
    }

    /// Largest `n` at which the premorphism is defined, or `None` when a rule makes it total.
    pub fn extent(&self) -> Option<usize> {
        match &self.0.body {
            Body::Window { rule: Some(_), .. } => None,
            Body::Window { indices, .. } => Some(indices.len()),
            Body::Zero => Some(0),
        }
    }

    pub fn is_defined_at(&self, n: usize) -> bool {
        n >= 1 && self.extent().is_none_or(|e| n <= e)
    }

    /// First index of the repeating block of the window.
    pub fn rule_base(&self) -> Option<usize> {
        self.rule().map(|r| self.depth() - r.period + 1)
    }

    pub fn window_indices(&self) -> &[usize] {
        match &self.0.body {
            Body::Window { indices, .. } => indices,
            Body::Zero => &[],
        }
    }

    pub fn window_matrices(&self) -> &[Matrix] {
        match &self.0.body {
            Body::Window { matrices, .. } => matrices,
            Body::Zero => &[],
        }
    }

    /// Maps `n` to (stored position, number of rule periods applied).
    fn locate(&self, n: usize) -> Result<(usize, usize), MorphismError> {
        let l = self.depth();
        if n == 0 || self.is_zero() {
            return Err(MorphismError::OutOfWindow { n });
        }
        if n <= l {
            return Ok((n - 1, 0));
        }
        let Some(rule) = self.rule() else {
            return Err(MorphismError::OutOfWindow { n });
        };
        let base = l - rule.period + 1;
        let (c, r) = ((n - base) / rule.period, (n - base) % rule.period);
        Ok((base - 1 + r, c))
    }

    /// Target index `f_n`.
    pub fn index(&self, n: usize) -> Result<usize, MorphismError> {
        let (pos, c) = self.locate(n)?;
        let shift = self.rule().map_or(0, |r| r.shift);
        Ok(self.window_indices()[pos] + c * shift)
    }

    /// Matrix `F_n`.
    pub fn matrix(&self, n: usize) -> Result<&Matrix, MorphismError> {
        let (pos, _) = self.locate(n)?;
        Ok(&self.window_matrices()[pos])
    }

    /// Same data with the stored window extended to depth `l` (rule-carrying premorphisms only).
    pub fn with_depth(&self, l: usize) -> Result<Premorphism, MorphismError> {
        let Some(rule) = self.rule() else {
            return Err(rule_error("only premorphisms with a periodic rule can be re-windowed"));
        };
        let base = self.rule_base().unwrap();
        if l < base + rule.period - 1 {
            return Err(MorphismError::OutOfWindow { n: l });
        }
        let indices = (1..=l).map(|n| self.index(n)).collect::<Result<Vec<_>, _>>()?;
        let matrices = (1..=l).map(|n| self.matrix(n).cloned()).collect::<Result<Vec<_>, _>>()?;
        Premorphism::validate(PremorphismWindow {
            source: self.source().clone(),
            target: self.target().clone(),
            indices,
            matrices,
            periodic_rule: Some(rule),
        })
    }
}

impl fmt::Display for Premorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.body {
            Body::Zero => f.write_str("zero premorphism"),
            Body::Window { indices, matrices, rule } => {
                for (n, (i, m)) in indices.iter().zip(matrices).enumerate() {
                    writeln!(f, "n = {}: f = {i}, F = {m}", n + 1)?;
                }
                match rule {
                    Some(r) => write!(f, "period {} shift {}", r.period, r.shift),
                    None => f.write_str("window only"),
                }
            }
        }
    }
}

/// `F_n = I`, `f_n = n`. With a tail the window is widened to carry a periodic rule.
pub fn identity_premorphism(d: &Diagram, depth: usize) -> Result<Premorphism, MorphismError> {
    if d.is_zero() {
        return Premorphism::zero(d.clone(), d.clone());
    }
    if depth == 0 {
        return Err(MorphismError::EmptyWindow);
    }
    let (l, rule) = match d.period() {
        Some(q) => (
            depth.max(d.prefix_len() + q),
            Some(PeriodicRule { period: q, shift: q }),
        ),
        None => {
            d.level(depth)?;
            (depth, None)
        }
    };
    let matrices = (1..=l)
        .map(|n| d.width(n).map(Matrix::identity))
        .collect::<Result<Vec<_>, _>>()?;
    Premorphism::validate(PremorphismWindow {
        source: d.clone(),
        target: d.clone(),
        indices: (1..=l).collect(),
        matrices,
        periodic_rule: rule,
    })
}

/// Zero matrices between two non-zero diagrams (the composite through the zero diagram).
fn zero_between(b: &Diagram, d: &Diagram) -> Result<Premorphism, MorphismError> {
    let (l, rule) = match (b.period(), d.period()) {
        (Some(qb), Some(qd)) => {
            let q = qb.lcm(&qd);
            (b.prefix_len().max(d.prefix_len()) + q, Some(PeriodicRule { period: q, shift: q }))
        }
        _ => {
            let l = b.last_level().unwrap_or(usize::MAX).min(d.last_level().unwrap_or(usize::MAX));
            (l, None)
        }
    };
    let matrices = (1..=l)
        .map(|n| Ok(Matrix::zeros(d.width(n)?, b.width(n)?)))
        .collect::<Result<Vec<_>, DiagramError>>()?;
    Premorphism::validate(PremorphismWindow {
        source: b.clone(),
        target: d.clone(),
        indices: (1..=l).collect(),
        matrices,
        periodic_rule: rule,
    })
}

/// `H_n = G_{f_n}·F_n`, `h_n = g_{f_n}`.
///
/// When both factors carry periodic rules the composite does too. Otherwise the
/// window shrinks to the indices `n` with `f_n` inside the window of `g`.
pub fn compose(g: &Premorphism, f: &Premorphism) -> Result<Premorphism, MorphismError> {
    if f.target() != g.source() {
        return Err(MorphismError::ComposabilityMismatch);
    }
    let (b, d) = (f.source(), g.target());
    if b.is_zero() || d.is_zero() {
        return Premorphism::zero(b.clone(), d.clone());
    }
    if f.is_zero() || g.is_zero() {
        return zero_between(b, d);
    }
    let at = |n: usize| -> Result<(usize, Matrix), MorphismError> {
        let fi = f.index(n)?;
        Ok((g.index(fi)?, g.matrix(fi)?.mul(f.matrix(n)?)))
    };
    let (l, rule) = match (f.rule(), g.rule()) {
        (Some(rf), Some(rg)) => {
            let k = rf.shift.lcm(&rg.period) / rf.shift;
            let j = k * rf.shift / rg.period;
            let period = rf.period * k;
            let shift = rg.shift * j;
            let (bf, bg) = (f.rule_base().unwrap(), g.rule_base().unwrap());
            let mut n0 = bf;
            while f.index(n0)? < bg {
                n0 += 1;
            }
            (n0 + period - 1, Some(PeriodicRule { period, shift }))
        }
        _ => {
            let mut l = 0;
            while f.is_defined_at(l + 1) && g.is_defined_at(f.index(l + 1)?) {
                l += 1;
            }
            if l == 0 {
                return Err(MorphismError::EmptyWindow);
            }
            (l, None)
        }
    };
    let (indices, matrices): (Vec<_>, Vec<_>) =
        (1..=l).map(at).collect::<Result<Vec<_>, _>>()?.into_iter().unzip();
    Premorphism::validate(PremorphismWindow {
        source: b.clone(),
        target: d.clone(),
        indices,
        matrices,
        periodic_rule: rule,
    })
}

/// Premorphism along the diagram itself: `F_n = E_{n, n+c}`, `f_n = n + c`.
pub fn telescope_shift(d: &Diagram, c: usize, depth: usize) -> Result<Premorphism, MorphismError> {
    let (l, rule) = match d.period() {
        Some(q) => (
            depth.max(d.prefix_len() + q),
            Some(PeriodicRule { period: q, shift: q }),
        ),
        None => (depth, None),
    };
    let matrices = (1..=l)
        .map(|n| d.telescope_matrix(n, n + c))
        .collect::<Result<Vec<_>, _>>()?;
    Premorphism::validate(PremorphismWindow {
        source: d.clone(),
        target: d.clone(),
        indices: (1..=l).map(|n| n + c).collect(),
        matrices,
        periodic_rule: rule,
    })
}

/// `F_n = k·I` into the diagram whose levels are `k` times those of `d`.
pub fn scalar_premorphism(
    source: &Diagram,
    target: &Diagram,
    k: &BigUint,
    depth: usize,
) -> Result<Premorphism, MorphismError> {
    let (l, rule) = match (source.period(), target.period()) {
        (Some(q), Some(q2)) => {
            let q = q.lcm(&q2);
            (
                depth.max(source.prefix_len().max(target.prefix_len()) + q),
                Some(PeriodicRule { period: q, shift: q }),
            )
        }
        _ => (depth, None),
    };
    let matrices = (1..=l)
        .map(|n| Ok(Matrix::identity(source.width(n)?).scaled(k)))
        .collect::<Result<Vec<_>, DiagramError>>()?;
    Premorphism::validate(PremorphismWindow {
        source: source.clone(),
        target: target.clone(),
        indices: (1..=l).collect(),
        matrices,
        periodic_rule: rule,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramPresentation;

    pub(crate) fn scalar_diagram(prefix: &[u64], ratio: u64) -> Diagram {
        let levels: Vec<&[u64]> = prefix.iter().map(std::slice::from_ref).collect();
        let edges = prefix
            .windows(2)
            .map(|w| Matrix::small(&[&[w[1] / w[0]]]))
            .collect();
        let last = *prefix.last().unwrap();
        Diagram::validate(DiagramPresentation::periodic(
            &levels,
            edges,
            &[&[last * ratio]],
            vec![Matrix::small(&[&[ratio]])],
            Matrix::small(&[&[ratio]]),
        ))
        .unwrap()
    }

    #[test]
    fn identity_validates_with_rule() {
        let d = scalar_diagram(&[1], 2);
        let id = identity_premorphism(&d, 1).unwrap();
        assert_eq!(id.depth(), 2);
        assert_eq!(id.index(40).unwrap(), 40);
        assert_eq!(id.matrix(40).unwrap(), &Matrix::identity(1));
        assert_eq!(id.cofinality(), Cofinality::Periodic);
    }

    #[test]
    fn uhf_window_between_divisible_diagrams() {
        // k_n = 2^{n-1}, m_n = 4^{n-1}; f_n = n, F_n = (m_n / k_n) = (2^{n-1}).
        let b = scalar_diagram(&[1], 2);
        let c = scalar_diagram(&[1], 4);
        let w = PremorphismWindow {
            source: b,
            target: c,
            indices: vec![1, 2, 3],
            matrices: vec![Matrix::small(&[&[1]]), Matrix::small(&[&[2]]), Matrix::small(&[&[4]])],
            periodic_rule: None,
        };
        assert!(Premorphism::validate(w).is_ok());
    }

    #[test]
    fn perturbed_square_is_reported() {
        let d = scalar_diagram(&[1], 2);
        let w = PremorphismWindow {
            source: d.clone(),
            target: d,
            indices: vec![1, 2],
            matrices: vec![Matrix::small(&[&[1]]), Matrix::small(&[&[2]])],
            periodic_rule: None,
        };
        let err = Premorphism::validate(w).unwrap_err();
        assert!(matches!(err, MorphismError::MultiplicityViolation { n: 2 } | MorphismError::SquareFails { n: 1, .. }));
    }

    #[test]
    fn square_failure_names_index() {
        let d = Diagram::validate(DiagramPresentation::finite(
            &[&[1], &[2], &[4]],
            vec![Matrix::small(&[&[2]]), Matrix::small(&[&[2]])],
        ))
        .unwrap();
        let w = PremorphismWindow {
            source: d.clone(),
            target: d,
            indices: vec![2, 2],
            matrices: vec![Matrix::small(&[&[1]]), Matrix::small(&[&[1]])],
            periodic_rule: None,
        };
        assert!(matches!(Premorphism::validate(w), Err(MorphismError::SquareFails { n: 1, .. })));
    }

    #[test]
    fn decreasing_indices_rejected() {
        let d = scalar_diagram(&[1], 1);
        let w = PremorphismWindow {
            source: d.clone(),
            target: d,
            indices: vec![2, 1],
            matrices: vec![Matrix::small(&[&[1]]), Matrix::small(&[&[1]])],
            periodic_rule: None,
        };
        assert_eq!(Premorphism::validate(w).unwrap_err(), MorphismError::MonotonicityFails { n: 1 });
    }

    #[test]
    fn scalar_composition() {
        let b = scalar_diagram(&[1], 1);
        let c = scalar_diagram(&[2], 1);
        let d = scalar_diagram(&[6], 1);
        let f = scalar_premorphism(&b, &c, &BigUint::from(2u32), 1).unwrap();
        let g = scalar_premorphism(&c, &d, &BigUint::from(3u32), 1).unwrap();
        let h = compose(&g, &f).unwrap();
        assert_eq!(h.matrix(1).unwrap(), &Matrix::small(&[&[6]]));
        assert_eq!(h.index(9).unwrap(), 9);
    }

    #[test]
    fn composing_with_identity_is_exact() {
        let d = scalar_diagram(&[1, 2], 3);
        let f = telescope_shift(&d, 2, 4).unwrap();
        let id = identity_premorphism(&d, 3).unwrap();
        let left = compose(&id, &f).unwrap();
        let right = compose(&f, &id).unwrap();
        for n in 1..20 {
            assert_eq!(left.index(n).unwrap(), f.index(n).unwrap());
            assert_eq!(left.matrix(n).unwrap(), f.matrix(n).unwrap());
            assert_eq!(right.matrix(n).unwrap(), f.matrix(n).unwrap());
        }
    }

    #[test]
    fn window_composition_shrinks() {
        let d = Diagram::validate(DiagramPresentation::finite(
            &[&[1], &[2], &[4]],
            vec![Matrix::small(&[&[2]]), Matrix::small(&[&[2]])],
        ))
        .unwrap();
        let shift = PremorphismWindow {
            source: d.clone(),
            target: d.clone(),
            indices: vec![2, 3],
            matrices: vec![Matrix::small(&[&[2]]), Matrix::small(&[&[2]])],
            periodic_rule: None,
        };
        let f = Premorphism::validate(shift).unwrap();
        let h = compose(&f, &f).unwrap();
        assert_eq!(h.depth(), 1);
        assert_eq!(h.index(1).unwrap(), 3);
        assert_eq!(h.matrix(1).unwrap(), &Matrix::small(&[&[4]]));
    }

    #[test]
    fn zero_premorphism_absorbs() {
        let d = scalar_diagram(&[1], 2);
        let z = Diagram::zero();
        let to_zero = Premorphism::zero(d.clone(), z.clone()).unwrap();
        let from_zero = Premorphism::zero(z.clone(), d.clone()).unwrap();
        let id = identity_premorphism(&d, 1).unwrap();
        assert!(compose(&to_zero, &id).unwrap().is_zero());
        let through = compose(&from_zero, &to_zero).unwrap();
        assert!(!through.is_zero());
        assert!(through.matrix(5).unwrap().is_zero());
    }

    #[test]
    fn rule_needs_tails() {
        let d = Diagram::validate(DiagramPresentation::finite(&[&[1], &[1]], vec![Matrix::small(&[&[1]])])).unwrap();
        let w = PremorphismWindow {
            source: d.clone(),
            target: d,
            indices: vec![1, 2],
            matrices: vec![Matrix::identity(1), Matrix::identity(1)],
            periodic_rule: Some(PeriodicRule { period: 1, shift: 1 }),
        };
        assert!(matches!(Premorphism::validate(w), Err(MorphismError::InvalidRule(_))));
    }

    #[test]
    fn growth_mismatch_rejected() {
        let b = scalar_diagram(&[1], 4);
        let c = scalar_diagram(&[1], 2);
        let w = PremorphismWindow {
            source: b,
            target: c,
            indices: vec![1, 2],
            matrices: vec![Matrix::identity(1), Matrix::identity(1)],
            periodic_rule: Some(PeriodicRule { period: 1, shift: 1 }),
        };
        assert!(Premorphism::validate(w).is_err());
    }
}
