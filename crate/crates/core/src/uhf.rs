//! Supernatural numbers of UHF-shaped diagrams.
//!
//! A diagram is UHF-shaped when every level is a single summand `k_n` and every
//! edge is the scalar `(k_{n+1}/k_n)`. Its invariant is
//! `ε(p) = sup { m : p^m | k_n for some n }`. On a periodic tail with period
//! ratio `r` (the product of the tail edges), primes dividing `r` have infinite
//! exponent and every other prime keeps the exponent it has at the first tail level.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::Diagram;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UhfError {
    #[error("diagram is not UHF-shaped: {0}")]
    NotUhfShape(String),
}

/// Formal product `Π p^{ε(p)}` with `ε(p) ∈ ℕ ∪ {∞}`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SupernaturalNumber {
    /// Primes with finite positive exponent.
    #[serde(serialize_with = "ser_finite")]
    pub finite_part: BTreeMap<BigUint, u64>,
    /// Primes with infinite exponent.
    #[serde(serialize_with = "ser_infinite")]
    pub infinite_primes: BTreeSet<BigUint>,
}

fn ser_finite<S: serde::Serializer>(m: &BTreeMap<BigUint, u64>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (p, e) in m {
        map.serialize_entry(&p.to_string(), e)?;
    }
    map.end()
}

fn ser_infinite<S: serde::Serializer>(m: &BTreeSet<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|p| p.to_string()))
}

/// Exponent of a prime in a supernatural number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

impl SupernaturalNumber {
    pub fn exponent(&self, p: &BigUint) -> Exponent {
        if self.infinite_primes.contains(p) {
            Exponent::Infinite
        } else {
            Exponent::Finite(self.finite_part.get(p).copied().unwrap_or(0))
        }
    }

    /// Whether the natural number `k` divides this supernatural number.
    pub fn is_divisible_by(&self, k: &BigUint) -> bool {
        factorize(k)
            .into_iter()
            .all(|(p, e)| self.exponent(&p) >= Exponent::Finite(e))
    }

    /// A prime where `k` exceeds this number, if any.
    pub fn excess_prime(&self, k: &BigUint) -> Option<BigUint> {
        factorize(k)
            .into_iter()
            .find(|(p, e)| self.exponent(p) < Exponent::Finite(*e))
            .map(|(p, _)| p)
    }
}

impl fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let primes: BTreeSet<&BigUint> = self.finite_part.keys().chain(&self.infinite_primes).collect();
        if primes.is_empty() {
            return f.write_str("1");
        }
        for (i, p) in primes.into_iter().enumerate() {
            if i > 0 {
                f.write_str(" · ")?;
            }
            match self.exponent(p) {
                Exponent::Infinite => write!(f, "{p}^∞")?,
                Exponent::Finite(e) => write!(f, "{p}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Structural equality.
pub fn sn_equal(a: &SupernaturalNumber, b: &SupernaturalNumber) -> bool {
    a == b
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u64)> {
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut n = n.clone();
    let two = BigUint::from(2u32);
    let mut p = two.clone();
    while &p * &p <= n {
        let mut e = 0;
        loop {
            let (q, r) = n.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            n = q;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += if p == two { 1u32 } else { 2u32 };
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Invariant together with whether it is exact (tail present) or a truncated lower bound.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UhfInvariant {
    pub value: SupernaturalNumber,
    pub exact: bool,
}

/// `k_n` for every prefix and tail level, and the period ratio, after checking the shape.
struct UhfData {
    prefix: Vec<BigUint>,
    tail: Option<(BigUint, BigUint)>,
}

fn shape(d: &Diagram) -> Result<UhfData, UhfError> {
    let bad = |s: String| UhfError::NotUhfShape(s);
    if d.is_zero() {
        return Err(bad("the zero diagram has no levels".into()));
    }
    let last = d.presented_depth();
    let mut sizes = Vec::with_capacity(last + 1);
    for n in 1..=last + usize::from(d.has_tail()) {
        let v = d.level(n).expect("presented level");
        if v.len() != 1 {
            return Err(bad(format!("level {n} has {} summands", v.len())));
        }
        sizes.push(v.entries()[0].clone());
    }
    for n in 1..sizes.len() {
        let e = d.edge_matrix(n).expect("presented edge");
        if e.get(0, 0) * &sizes[n - 1] != sizes[n] {
            return Err(bad(format!("edge {n} is not the unital scalar {}/{}", sizes[n], sizes[n - 1])));
        }
    }
    let p = d.prefix_len();
    let tail = d.has_tail().then(|| {
        let first = sizes[p].clone();
        let ratio = &sizes[last] / &first;
        (first, ratio)
    });
    sizes.truncate(p);
    Ok(UhfData { prefix: sizes, tail })
}

pub fn is_uhf_shape(d: &Diagram) -> bool {
    shape(d).is_ok()
}

/// Glimm invariant `ε`.
pub fn uhf_invariant(d: &Diagram) -> Result<UhfInvariant, UhfError> {
    let data = shape(d)?;
    let mut value = SupernaturalNumber::default();
    let (base, exact) = match &data.tail {
        Some((first, ratio)) => {
            for (p, _) in factorize(ratio) {
                value.infinite_primes.insert(p);
            }
            (first.clone(), true)
        }
        None => (data.prefix.last().unwrap().clone(), false),
    };
    for (p, e) in factorize(&base) {
        if !value.infinite_primes.contains(&p) {
            value.finite_part.insert(p, e);
        }
    }
    Ok(UhfInvariant { value, exact })
}

/// Some prime has a larger exponent in `a` than in `b`.
fn exceeds(a: &SupernaturalNumber, b: &SupernaturalNumber) -> bool {
    a.finite_part
        .keys()
        .chain(&a.infinite_primes)
        .any(|p| a.exponent(p) > b.exponent(p))
}

/// Which side of the interleaving condition fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Some `k_n` of the first diagram divides no level of the second.
    First,
    Second,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Interleaving {
    /// `∀n ∃l k_n | m_l` and `∀l ∃n m_l | k_n`.
    Holds,
    /// `k_n` (on `side`) has more factors of `prime` than any level of the other diagram.
    Fails { side: Side, n: usize, prime: String },
    UnknownAtBound,
}

/// Mutual divisibility of the level sizes. Decided exactly when both diagrams have tails;
/// otherwise levels up to `bound` are compared.
pub fn check_interleaving(d1: &Diagram, d2: &Diagram, bound: usize) -> Result<Interleaving, UhfError> {
    let i1 = uhf_invariant(d1)?;
    let i2 = uhf_invariant(d2)?;
    let sides = [(Side::First, d1, &i1, &i2), (Side::Second, d2, &i2, &i1)];
    for (side, d, own, other) in sides {
        if !other.exact || (own.exact && !exceeds(&own.value, &other.value)) {
            continue;
        }
        // With a tail and an exceeding invariant some level eventually shows the excess.
        let limit = if d.has_tail() { usize::MAX } else { d.prefix_len().min(bound) };
        for n in 1..=limit {
            let level = d.level(n).expect("uhf level");
            if let Some(p) = other.value.excess_prime(&level.entries()[0]) {
                return Ok(Interleaving::Fails {
                    side,
                    n,
                    prime: p.to_string(),
                });
            }
        }
    }
    if i1.exact && i2.exact {
        return Ok(Interleaving::Holds);
    }
    Ok(Interleaving::UnknownAtBound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramPresentation;
    use crate::matrix::Matrix;

    fn scalar(prefix: &[u64], tail_edges: &[u64]) -> Diagram {
        let levels: Vec<&[u64]> = prefix.iter().map(std::slice::from_ref).collect();
        let edges = prefix.windows(2).map(|w| Matrix::small(&[&[w[1] / w[0]]])).collect();
        let mut t = vec![*prefix.last().unwrap() * tail_edges[0]];
        for e in &tail_edges[1..] {
            t.push(t.last().unwrap() * e);
        }
        let tl: Vec<&[u64]> = t.iter().map(std::slice::from_ref).collect();
        let te = tail_edges[1..]
            .iter()
            .chain(std::iter::once(&tail_edges[0]))
            .map(|&e| Matrix::small(&[&[e]]))
            .collect();
        Diagram::validate(DiagramPresentation::periodic(&levels, edges, &tl, te, Matrix::small(&[&[tail_edges[0]]]))).unwrap()
    }

    fn sn(fin: &[(u64, u64)], inf: &[u64]) -> SupernaturalNumber {
        SupernaturalNumber {
            finite_part: fin.iter().map(|&(p, e)| (p.into(), e)).collect(),
            infinite_primes: inf.iter().map(|&p| p.into()).collect(),
        }
    }

    #[test]
    fn stationary_two() {
        let inv = uhf_invariant(&scalar(&[1], &[2])).unwrap();
        assert!(inv.exact);
        assert_eq!(inv.value, sn(&[], &[2]));
        assert_eq!(inv.value.to_string(), "2^∞");
    }

    #[test]
    fn twelve_then_five() {
        let d = scalar(&[1, 12], &[5]);
        let inv = uhf_invariant(&d).unwrap();
        assert_eq!(inv.value, sn(&[(2, 2), (3, 1)], &[5]));
        assert_eq!(inv.value.to_string(), "2^2 · 3^1 · 5^∞");
        // brute-force sup of exponents over k_n, n ≤ 40
        for (p, want) in [(2u64, 2u64), (3, 1)] {
            let got = (1..=40)
                .map(|n| {
                    let mut k = d.level(n).unwrap().entries()[0].clone();
                    let mut e = 0;
                    while (&k % p).is_zero() {
                        k /= p;
                        e += 1;
                    }
                    e
                })
                .max()
                .unwrap();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn six_vs_alternating_two_three() {
        let a = uhf_invariant(&scalar(&[1], &[6])).unwrap().value;
        let b = uhf_invariant(&scalar(&[1], &[2, 3])).unwrap().value;
        assert!(sn_equal(&a, &b));
        assert!(!sn_equal(&a, &sn(&[], &[2])));
        assert!(sn_equal(&a, &a));
    }

    #[test]
    fn two_summands_rejected() {
        let d = Diagram::validate(DiagramPresentation::periodic(
            &[&[2, 2]],
            vec![],
            &[&[2, 2]],
            vec![Matrix::identity(2)],
            Matrix::identity(2),
        ))
        .unwrap();
        assert!(matches!(uhf_invariant(&d), Err(UhfError::NotUhfShape(_))));
    }

    #[test]
    fn interleaving_verdicts() {
        let a = scalar(&[1], &[2]);
        let b = scalar(&[1], &[4]);
        let c = scalar(&[1], &[3]);
        assert_eq!(check_interleaving(&a, &b, 10).unwrap(), Interleaving::Holds);
        assert_eq!(
            check_interleaving(&a, &c, 10).unwrap(),
            Interleaving::Fails {
                side: Side::First,
                n: 2,
                prime: "2".into()
            }
        );
        let d = scalar(&[1, 32], &[3]);
        assert_eq!(
            check_interleaving(&a, &d, 10).unwrap(),
            Interleaving::Fails {
                side: Side::First,
                n: 7,
                prime: "2".into()
            }
        );
        let t = Diagram::validate(DiagramPresentation::finite(&[&[1], &[2]], vec![Matrix::small(&[&[2]])])).unwrap();
        assert_eq!(check_interleaving(&t, &t, 10).unwrap(), Interleaving::UnknownAtBound);
        assert!(!uhf_invariant(&t).unwrap().exact);
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(&BigUint::from(360u32)), vec![(2u32.into(), 3), (3u32.into(), 2), (5u32.into(), 1)]);
        assert!(factorize(&BigUint::one()).is_empty());
        assert_eq!(factorize(&BigUint::from(97u32)), vec![(97u32.into(), 1)]);
    }
}
