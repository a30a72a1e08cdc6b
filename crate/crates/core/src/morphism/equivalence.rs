//! Equivalence of premorphisms as bounded semi-decision procedures.
//!
//! Three formulations are implemented:
//!
//! * levelwise: for each `n` some `m ≥ f_n, g_n` with `S_{f_n m}F_n = S_{g_n m}G_n`;
//! * interleaved: indices `n_1 < m_1 < n_2 < …` with
//!   `G_{m_k}E_{n_k m_k} = S_{f_{n_k} g_{m_k}}F_{n_k}` and
//!   `F_{n_{k+1}}E_{m_k n_{k+1}} = S_{g_{m_k} f_{n_{k+1}}}G_{m_k}`;
//! * pairwise: for `n ≤ k` some `m` with `S_{f_n m}F_n = S_{g_k m}G_kE_{nk}`.
//!
//! Verdicts are three-valued. `Equivalent` carries a witness that
//! [`verify_witness`] re-checks. When both premorphisms repeat with the same
//! shift over a common period, a finite stretch of indices determines all
//! later ones and the witness has [`Scope::Infinite`]; otherwise it only speaks
//! about the stored window. `NotEquivalent` is only produced from a residual
//! orbit that provably never vanishes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::{MorphismError, Premorphism};
use crate::diagram::{Diagram, DiagramError};
use crate::matrix::primitive;
use crate::orbit::{vanishing_level, Goal, Refutation, Residual, Vanish};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Valid for the stored windows only.
    Window,
    /// Valid for every index.
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "definition", rename_all = "snake_case")]
pub enum EquivalenceWitness {
    /// Both premorphisms start or end at the zero diagram.
    Trivial,
    Levelwise {
        scope: Scope,
        /// `(n, m_n)` pairs.
        levels: Vec<(usize, usize)>,
    },
    Interleaved {
        scope: Scope,
        /// Source indices of `f` (`n_k`).
        n: Vec<usize>,
        /// Source indices of `g` (`m_k`).
        m: Vec<usize>,
        /// Positions `(j, k)` in the merged sequence whose indices agree modulo the common period.
        closure: Option<(usize, usize)>,
    },
    Pairwise {
        scope: Scope,
        /// `(n, k, m)` triples.
        triples: Vec<(usize, usize, usize)>,
    },
}

impl EquivalenceWitness {
    pub fn scope(&self) -> Scope {
        match self {
            EquivalenceWitness::Trivial => Scope::Infinite,
            EquivalenceWitness::Levelwise { scope, .. }
            | EquivalenceWitness::Interleaved { scope, .. }
            | EquivalenceWitness::Pairwise { scope, .. } => *scope,
        }
    }
}

/// A residual column that never vanishes: `S_{f_n ·}F_n − S_{g_k ·}G_kE_{nk}` (with `k = n`
/// for the levelwise form) has a column whose orbit is refuted by `reason`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonEquivalence {
    pub n: usize,
    pub k: usize,
    pub column: usize,
    pub reason: Refutation,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum EquivalenceVerdict {
    Equivalent { witness: EquivalenceWitness },
    NotEquivalent { certificate: NonEquivalence },
    UnknownAtBound,
}

impl EquivalenceVerdict {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::Equivalent { .. })
    }

    pub fn is_not_equivalent(&self) -> bool {
        matches!(self, EquivalenceVerdict::NotEquivalent { .. })
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, EquivalenceVerdict::UnknownAtBound)
    }
}

/// Range of source indices that decides the question.
#[derive(Debug, Clone, Copy)]
struct Plan {
    scope: Scope,
    /// Last source index to examine.
    last: usize,
    /// Common period and first index of the periodic regime (infinite scope only).
    period: usize,
    start: usize,
}

fn plan(f: &Premorphism, g: &Premorphism) -> Result<Plan, MorphismError> {
    if let (Some(rf), Some(rg)) = (f.rule(), g.rule()) {
        let p = rf.period.lcm(&rg.period);
        let sf = rf.shift * (p / rf.period);
        let sg = rg.shift * (p / rg.period);
        if sf == sg {
            let target_prefix = f.target().prefix_len();
            let mut n0 = f.rule_base().unwrap().max(g.rule_base().unwrap());
            while f.index(n0)? <= target_prefix || g.index(n0)? <= target_prefix {
                n0 += 1;
            }
            return Ok(Plan {
                scope: Scope::Infinite,
                last: n0 + p - 1,
                period: p,
                start: n0,
            });
        }
        return Ok(Plan {
            scope: Scope::Window,
            last: f.depth().max(g.depth()),
            period: 0,
            start: 0,
        });
    }
    let last = match (f.extent(), g.extent()) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) | (None, Some(a)) => a,
        (None, None) => unreachable!("both rules handled above"),
    };
    Ok(Plan {
        scope: Scope::Window,
        last,
        period: 0,
        start: 0,
    })
}

fn check_pair(f: &Premorphism, g: &Premorphism) -> Result<(), MorphismError> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(MorphismError::SourceTargetMismatch);
    }
    Ok(())
}

fn trivial(f: &Premorphism) -> bool {
    f.source().is_zero() || f.target().is_zero()
}

/// `(S_{f_n m0}F_n − S_{g_k m0}G_kE_{nk}, m0)` with `m0 = max(f_n, g_k)`.
fn residual(f: &Premorphism, g: &Premorphism, n: usize, k: usize) -> Result<(Residual, usize), MorphismError> {
    let t = f.target();
    let (fn_, gk) = (f.index(n)?, g.index(k)?);
    let m0 = fn_.max(gk);
    let a = t.telescope_matrix(fn_, m0)?.mul(f.matrix(n)?);
    let b = t
        .telescope_matrix(gk, m0)?
        .mul(g.matrix(k)?)
        .mul(&f.source().telescope_matrix(n, k)?);
    Ok((Residual::difference(&a, &b), m0))
}

enum PointCheck {
    Vanishes(usize),
    Never(NonEquivalence),
    Unknown,
}

fn check_point(f: &Premorphism, g: &Premorphism, n: usize, k: usize, bound: usize) -> Result<PointCheck, MorphismError> {
    let (r, m0) = residual(f, g, n, k)?;
    if m0 > bound {
        return Ok(PointCheck::Unknown);
    }
    Ok(match vanishing_level(f.target(), m0, r, bound)? {
        Vanish::At(m) => PointCheck::Vanishes(m),
        Vanish::Never { column, reason } => PointCheck::Never(NonEquivalence { n, k, column, reason }),
        Vanish::Unknown => PointCheck::Unknown,
    })
}

/// Levelwise equivalence: for each `n` in scope, the smallest `m ≤ bound` with
/// `S_{f_n m}F_n = S_{g_n m}G_n`.
pub fn equivalent_def29(f: &Premorphism, g: &Premorphism, bound: usize) -> Result<EquivalenceVerdict, MorphismError> {
    check_pair(f, g)?;
    if trivial(f) {
        return Ok(EquivalenceVerdict::Equivalent {
            witness: EquivalenceWitness::Trivial,
        });
    }
    let plan = plan(f, g)?;
    let mut levels = Vec::new();
    let mut unknown = false;
    for n in 1..=plan.last {
        match check_point(f, g, n, n, bound)? {
            PointCheck::Vanishes(m) => levels.push((n, m)),
            PointCheck::Never(certificate) => return Ok(EquivalenceVerdict::NotEquivalent { certificate }),
            PointCheck::Unknown => unknown = true,
        }
    }
    Ok(if unknown {
        EquivalenceVerdict::UnknownAtBound
    } else {
        EquivalenceVerdict::Equivalent {
            witness: EquivalenceWitness::Levelwise {
                scope: plan.scope,
                levels,
            },
        }
    })
}

/// Pairwise equivalence: every `n ≤ k` in scope.
pub fn equivalent_def210(f: &Premorphism, g: &Premorphism, bound: usize) -> Result<EquivalenceVerdict, MorphismError> {
    check_pair(f, g)?;
    if trivial(f) {
        return Ok(EquivalenceVerdict::Equivalent {
            witness: EquivalenceWitness::Trivial,
        });
    }
    let plan = plan(f, g)?;
    let mut triples = Vec::new();
    let mut unknown = false;
    for n in 1..=plan.last {
        for k in n..=plan.last {
            match check_point(f, g, n, k, bound)? {
                PointCheck::Vanishes(m) => triples.push((n, k, m)),
                PointCheck::Never(certificate) => return Ok(EquivalenceVerdict::NotEquivalent { certificate }),
                PointCheck::Unknown => unknown = true,
            }
        }
    }
    Ok(if unknown {
        EquivalenceVerdict::UnknownAtBound
    } else {
        EquivalenceVerdict::Equivalent {
            witness: EquivalenceWitness::Pairwise {
                scope: plan.scope,
                triples,
            },
        }
    })
}

/// `B_m·E_{nm} = S_{a_n b_m}·A_n` with `m > n`.
fn interleave_step(
    a: &Premorphism,
    b: &Premorphism,
    n: usize,
    m: usize,
) -> Result<bool, MorphismError> {
    let (an, bm) = (a.index(n)?, b.index(m)?);
    if m <= n || bm < an {
        return Ok(false);
    }
    let lhs = b.matrix(m)?.mul(&a.source().telescope_matrix(n, m)?);
    let rhs = a.target().telescope_matrix(an, bm)?.mul(a.matrix(n)?);
    Ok(lhs == rhs)
}

/// Interleaved equivalence, built greedily from `n_1 = 1` with source indices up to `bound`.
///
/// An interleaving is an infinite object, so `Equivalent` is only returned when the
/// sequence provably continues forever: two indices of the same role agree modulo
/// the common period inside the periodic regime.
pub fn equivalent_def25(f: &Premorphism, g: &Premorphism, bound: usize) -> Result<EquivalenceVerdict, MorphismError> {
    check_pair(f, g)?;
    if trivial(f) {
        return Ok(EquivalenceVerdict::Equivalent {
            witness: EquivalenceWitness::Trivial,
        });
    }
    let plan = plan(f, g)?;
    if plan.scope != Scope::Infinite {
        return Ok(EquivalenceVerdict::UnknownAtBound);
    }
    let mut seq = vec![1usize];
    loop {
        let last = *seq.last().unwrap();
        let (a, b) = if seq.len() % 2 == 1 { (f, g) } else { (g, f) };
        let mut next = None;
        for x in last + 1..=bound {
            if interleave_step(a, b, last, x)? {
                next = Some(x);
                break;
            }
        }
        let Some(x) = next else {
            return Ok(EquivalenceVerdict::UnknownAtBound);
        };
        seq.push(x);
        let k = seq.len() - 1;
        if x >= plan.start {
            let earlier = (0..k)
                .filter(|&j| j % 2 == k % 2)
                .find(|&j| seq[j] >= plan.start && (x - seq[j]) % plan.period == 0);
            if let Some(j) = earlier {
                let (n, m) = split(&seq);
                return Ok(EquivalenceVerdict::Equivalent {
                    witness: EquivalenceWitness::Interleaved {
                        scope: Scope::Infinite,
                        n,
                        m,
                        closure: Some((j, k)),
                    },
                });
            }
        }
    }
}

fn split(seq: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let n = seq.iter().step_by(2).copied().collect();
    let m = seq.iter().skip(1).step_by(2).copied().collect();
    (n, m)
}

fn merge(n: &[usize], m: &[usize]) -> Option<Vec<usize>> {
    if m.len() != n.len() && m.len() + 1 != n.len() {
        return None;
    }
    let mut seq = Vec::with_capacity(n.len() + m.len());
    for i in 0..n.len() {
        seq.push(n[i]);
        if let Some(&x) = m.get(i) {
            seq.push(x);
        }
    }
    Some(seq)
}

fn identity_holds(f: &Premorphism, g: &Premorphism, n: usize, k: usize, m: usize) -> Result<bool, MorphismError> {
    let (fn_, gk) = (f.index(n)?, g.index(k)?);
    if k < n || m < fn_ || m < gk {
        return Ok(false);
    }
    let t = f.target();
    let a = t.telescope_matrix(fn_, m)?.mul(f.matrix(n)?);
    let b = t
        .telescope_matrix(gk, m)?
        .mul(g.matrix(k)?)
        .mul(&f.source().telescope_matrix(n, k)?);
    Ok(a == b)
}

/// Re-checks a witness by direct matrix arithmetic, including that it covers the required indices.
pub fn verify_witness(f: &Premorphism, g: &Premorphism, w: &EquivalenceWitness) -> Result<bool, MorphismError> {
    check_pair(f, g)?;
    if trivial(f) {
        return Ok(matches!(w, EquivalenceWitness::Trivial));
    }
    let plan = plan(f, g)?;
    if w.scope() == Scope::Infinite && plan.scope != Scope::Infinite {
        return Ok(false);
    }
    match w {
        EquivalenceWitness::Trivial => Ok(false),
        EquivalenceWitness::Levelwise { levels, .. } => {
            if levels.iter().map(|&(n, _)| n).ne(1..=plan.last) {
                return Ok(false);
            }
            for &(n, m) in levels {
                if !identity_holds(f, g, n, n, m)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        EquivalenceWitness::Pairwise { triples, .. } => {
            let expected = (1..=plan.last).flat_map(|n| (n..=plan.last).map(move |k| (n, k)));
            if triples.iter().map(|&(n, k, _)| (n, k)).ne(expected) {
                return Ok(false);
            }
            for &(n, k, m) in triples {
                if !identity_holds(f, g, n, k, m)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        EquivalenceWitness::Interleaved { n, m, closure, scope } => {
            let Some(seq) = merge(n, m) else {
                return Ok(false);
            };
            if seq.first() != Some(&1) || *scope != Scope::Infinite {
                return Ok(false);
            }
            for (i, w) in seq.windows(2).enumerate() {
                let (a, b) = if i % 2 == 0 { (f, g) } else { (g, f) };
                if !interleave_step(a, b, w[0], w[1])? {
                    return Ok(false);
                }
            }
            let Some((j, k)) = *closure else {
                return Ok(false);
            };
            Ok(j < k
                && k == seq.len() - 1
                && j % 2 == k % 2
                && seq[j] >= plan.start
                && (seq[k] - seq[j]) % plan.period == 0)
        }
    }
}

/// Re-checks a non-equivalence certificate: the residual column stays nonzero from its
/// first level through the refuting level, where it is either sign-definite on a periodic
/// diagram or a positive multiple of its state at an earlier level of the same tail phase.
pub fn verify_non_equivalence(f: &Premorphism, g: &Premorphism, c: &NonEquivalence) -> Result<bool, MorphismError> {
    check_pair(f, g)?;
    if trivial(f) || c.k < c.n {
        return Ok(false);
    }
    let (r, m0) = residual(f, g, c.n, c.k)?;
    let Some(mut x) = r.columns.into_iter().nth(c.column) else {
        return Ok(false);
    };
    let t: &Diagram = f.target();
    let (start, end) = match c.reason {
        Refutation::Cycle { start, repeat } => (start, repeat),
        Refutation::Sign { level } => (level, level),
    };
    if start < m0 || end < start || t.last_level().is_some_and(|l| end > l) {
        return Ok(false);
    }
    let mut at_start = None;
    for level in m0..=end {
        if x.iter().all(Zero::is_zero) {
            return Ok(false);
        }
        if level == start {
            at_start = Some(primitive(&x));
        }
        if level == end {
            break;
        }
        x = push(t, level, &x)?;
    }
    Ok(match c.reason {
        Refutation::Cycle { .. } => {
            end > start && t.phase(start).is_some() && t.phase(start) == t.phase(end) && at_start == Some(primitive(&x))
        }
        Refutation::Sign { .. } => t.has_tail() && Goal::Zero.blocked(&x),
    })
}

fn push(t: &Diagram, level: usize, x: &[BigInt]) -> Result<Vec<BigInt>, DiagramError> {
    Ok(t.edge_matrix(level)?.mul_signed(x))
}
