//! Isomorphism of diagrams through intertwining certificates.
//!
//! A certificate consists of indices `r_1 < r_2 < …` in `B`, `t_1 < t_2 < …` in
//! `C`, and matrices `R_k: V_{r_k} → W_{t_k}`, `T_k: W_{t_k} → V_{r_{k+1}}` with
//! `T_k·R_k = E_{r_k r_{k+1}}` and `R_{k+1}·T_k = S_{t_k t_{k+1}}`. A finite list
//! of such matrices is extended to all `k` by a closure:
//!
//! * `Repeat`: the final `R` equals an earlier one at the same tail phases and the
//!   level growth over the repeated stretch agrees, so the stretch repeats forever;
//! * `Divisibility`: both diagrams are UHF-shaped with equal supernatural numbers,
//!   in which case the mutual divisibility of the level sizes extends any such list.
//!
//! Without a closure the certificate must end at the last level of a tail-free
//! diagram, and it only speaks about the presented levels.

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use num_traits::{Pow, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, LevelVector, MultiplicityMatrix};
use crate::matrix::{vec_le, Matrix};
use crate::morphism::{MorphismError, PeriodicRule, Premorphism, PremorphismWindow};
use crate::uhf::{check_interleaving, is_uhf_shape, uhf_invariant, Interleaving};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsoError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("certificate does not verify")]
    InvalidCertificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Closure {
    /// `R_K = R_from` (1-based) at equal tail phases; the stretch `from..K` repeats.
    Repeat { from: usize },
    /// Equal supernatural numbers of two UHF-shaped diagrams.
    Divisibility,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntertwiningCertificate {
    pub r: Vec<usize>,
    pub t: Vec<usize>,
    #[serde(rename = "R")]
    pub big_r: Vec<Matrix>,
    #[serde(rename = "T")]
    pub big_t: Vec<Matrix>,
    pub closure: Option<Closure>,
}

impl IntertwiningCertificate {
    fn empty() -> Self {
        Self {
            r: vec![],
            t: vec![],
            big_r: vec![],
            big_t: vec![],
            closure: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// Exactly one of the diagrams is the zero diagram.
    ZeroMismatch,
    /// Both are UHF-shaped with exact, different supernatural numbers.
    UhfInvariant { first: String, second: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IsoVerdict {
    Found { certificate: IntertwiningCertificate },
    NonIsomorphic { obstruction: Obstruction },
    UnknownAtBound,
}

impl IsoVerdict {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoVerdict::Found { .. })
    }

    pub fn is_non_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::NonIsomorphic { .. })
    }
}

/// Nonnegative rows `x` with `x·A = b` and `x·v ≤ cap`, in lexicographic order.
fn solve_row(a: &Matrix, b: &[BigUint], v: &[BigUint], cap: &BigUint) -> Vec<Vec<BigUint>> {
    let q = a.rows();
    // last_use[c]: largest row index of A with a nonzero entry in column c.
    let last_use: Vec<Option<usize>> = (0..a.cols())
        .map(|c| (0..q).rev().find(|&r| !a.get(r, c).is_zero()))
        .collect();
    let mut out = Vec::new();
    let mut x = vec![BigUint::zero(); q];
    fn go(
        i: usize,
        a: &Matrix,
        rem: &mut Vec<BigUint>,
        cap: &BigUint,
        v: &[BigUint],
        last_use: &[Option<usize>],
        x: &mut Vec<BigUint>,
        out: &mut Vec<Vec<BigUint>>,
    ) {
        // a column with demand left and no later row able to supply it is dead
        if rem
            .iter()
            .zip(last_use)
            .any(|(r, l)| !r.is_zero() && l.is_none_or(|l| l < i))
        {
            return;
        }
        if i == a.rows() {
            out.push(x.clone());
            return;
        }
        let mut hi = cap / &v[i];
        for c in 0..a.cols() {
            let e = a.get(i, c);
            if !e.is_zero() {
                hi = hi.min(&rem[c] / e);
            }
        }
        let mut k = BigUint::zero();
        while k <= hi {
            for c in 0..a.cols() {
                let e = a.get(i, c);
                if !e.is_zero() {
                    rem[c] -= &k * e;
                }
            }
            x[i] = k.clone();
            let cap2 = cap - &k * &v[i];
            go(i + 1, a, rem, &cap2, v, last_use, x, out);
            for c in 0..a.cols() {
                let e = a.get(i, c);
                if !e.is_zero() {
                    rem[c] += &k * e;
                }
            }
            k += 1u32;
        }
        x[i] = BigUint::zero();
    }
    let mut rem = b.to_vec();
    go(0, a, &mut rem, cap, v, &last_use, &mut x, &mut out);
    out
}

/// Calls `f` on every product of one option per row, lexicographically, keeping embeddings only.
fn for_each_product(
    options: &[Vec<Vec<BigUint>>],
    cols: usize,
    f: &mut dyn FnMut(Matrix) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if options.iter().any(Vec::is_empty) {
        return ControlFlow::Continue(());
    }
    let mut idx = vec![0usize; options.len()];
    loop {
        let rows: Vec<Vec<BigUint>> = idx.iter().zip(options).map(|(&i, o)| o[i].clone()).collect();
        let m = Matrix::from_rows(rows).expect("rectangular");
        debug_assert_eq!(m.cols(), cols);
        if m.is_embedding() {
            f(m)?;
        }
        let mut k = options.len();
        loop {
            if k == 0 {
                return ControlFlow::Continue(());
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

/// Embedding matrices `X` with `X·A = B` and `X·v ≤ w`.
fn for_each_solution(
    a: &Matrix,
    b: &Matrix,
    v: &[BigUint],
    w: &[BigUint],
    f: &mut dyn FnMut(Matrix) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if a.cols() != b.cols() || v.len() != a.rows() || w.len() != b.rows() {
        return ControlFlow::Continue(());
    }
    let options: Vec<_> = (0..b.rows()).map(|i| solve_row(a, b.row(i), v, &w[i])).collect();
    for_each_product(&options, a.rows(), f)
}

/// All rows `x` with `x_j ≤ bounds[j]` and `x·v ≤ cap`.
fn bounded_rows(bounds: &[BigUint], v: &[BigUint], cap: &BigUint) -> Vec<Vec<BigUint>> {
    let mut out = Vec::new();
    let mut x = vec![BigUint::zero(); bounds.len()];
    fn go(i: usize, bounds: &[BigUint], v: &[BigUint], cap: &BigUint, x: &mut Vec<BigUint>, out: &mut Vec<Vec<BigUint>>) {
        if i == bounds.len() {
            out.push(x.clone());
            return;
        }
        let hi = bounds[i].clone().min(cap / &v[i]);
        let mut k = BigUint::zero();
        while k <= hi {
            x[i] = k.clone();
            go(i + 1, bounds, v, &(cap - &k * &v[i]), x, out);
            k += 1u32;
        }
        x[i] = BigUint::zero();
    }
    go(0, bounds, v, cap, &mut x, &mut out);
    out
}

fn for_each_factorization(
    e: &Matrix,
    v: &LevelVector,
    mid: &LevelVector,
    target: &LevelVector,
    f: &mut dyn FnMut(Matrix, Matrix) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let bounds: Vec<BigUint> = (0..e.cols()).map(|j| e.column(j).into_iter().max().unwrap()).collect();
    let options: Vec<_> = mid
        .entries()
        .iter()
        .map(|cap| bounded_rows(&bounds, v.entries(), cap))
        .collect();
    for_each_product(&options, e.cols(), &mut |r| {
        for_each_solution(&r, e, mid.entries(), target.entries(), &mut |t| f(r.clone(), t))
    })
}

/// All pairs of embedding matrices `R: V → V_mid`, `T: V_mid → V'` with `T·R = E`, in
/// lexicographic order of `R` then `T`.
pub fn factor_as_product(e: &MultiplicityMatrix, mid: &LevelVector) -> Vec<(Matrix, Matrix)> {
    let mut out = Vec::new();
    let _ = for_each_factorization(e.matrix(), e.domain(), mid, e.codomain(), &mut |r, t| {
        out.push((r, t));
        ControlFlow::Continue(())
    });
    out
}

fn growth_over(d: &Diagram, steps: usize) -> Option<BigUint> {
    let q = d.period()?;
    steps.is_multiple_of(q).then(|| Pow::pow(d.growth().unwrap(), steps / q))
}

/// Whether the stretch from position `j` to the last position can repeat forever.
fn repeat_closes(b: &Diagram, c: &Diagram, cert: &IntertwiningCertificate, j: usize) -> bool {
    let k = cert.r.len() - 1;
    if j >= k || j >= cert.big_t.len() {
        return false;
    }
    let (rj, rk, tj, tk) = (cert.r[j], cert.r[k], cert.t[j], cert.t[k]);
    if rj <= b.prefix_len() || tj <= c.prefix_len() || cert.big_r[j] != cert.big_r[k] {
        return false;
    }
    match (growth_over(b, rk - rj), growth_over(c, tk - tj)) {
        (Some(gb), Some(gc)) => gb == gc,
        _ => false,
    }
}

fn uhf_closes(b: &Diagram, c: &Diagram) -> bool {
    is_uhf_shape(b) && is_uhf_shape(c) && matches!(check_interleaving(b, c, 0), Ok(Interleaving::Holds))
}

/// Checks every identity, the multiplicity and embedding conditions, and the closure.
pub fn verify_certificate(cert: &IntertwiningCertificate, b: &Diagram, c: &Diagram) -> Result<bool, IsoError> {
    if b.is_zero() || c.is_zero() {
        return Ok(b.is_zero() && c.is_zero() && cert == &IntertwiningCertificate::empty());
    }
    let k = cert.r.len();
    if k == 0 || cert.t.len() != k || cert.big_r.len() != k || cert.big_t.len() + 1 != k {
        return Ok(false);
    }
    let increasing = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]) && v[0] >= 1;
    if !increasing(&cert.r) || !increasing(&cert.t) {
        return Ok(false);
    }
    let fits = |m: &Matrix, from: LevelVector, to: LevelVector| {
        m.cols() == from.len()
            && m.rows() == to.len()
            && m.is_embedding()
            && vec_le(&m.mul_vec(from.entries()), to.entries())
    };
    for i in 0..k {
        if !fits(&cert.big_r[i], b.level(cert.r[i])?, c.level(cert.t[i])?) {
            return Ok(false);
        }
    }
    for i in 0..k - 1 {
        let t = &cert.big_t[i];
        if !fits(t, c.level(cert.t[i])?, b.level(cert.r[i + 1])?) {
            return Ok(false);
        }
        if t.mul(&cert.big_r[i]) != b.telescope_matrix(cert.r[i], cert.r[i + 1])? {
            return Ok(false);
        }
        if cert.big_r[i + 1].mul(t) != c.telescope_matrix(cert.t[i], cert.t[i + 1])? {
            return Ok(false);
        }
    }
    Ok(match cert.closure {
        Some(Closure::Repeat { from }) => from >= 1 && repeat_closes(b, c, cert, from - 1),
        Some(Closure::Divisibility) => uhf_closes(b, c),
        None => b.last_level() == Some(cert.r[k - 1]) || c.last_level() == Some(cert.t[k - 1]),
    })
}

struct Search<'a> {
    b: &'a Diagram,
    c: &'a Diagram,
    depth: usize,
    nodes: usize,
    budget: usize,
    failed: HashSet<(bool, usize, usize, Matrix)>,
    cert: IntertwiningCertificate,
    repeat_possible: bool,
}

type Step = ControlFlow<bool>;

impl Search<'_> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        self.nodes <= self.budget
    }

    /// A new `R_K` has been placed; look for a closure, else choose `r_{K+1}` and `T_K`.
    fn after_r(&mut self) -> Step {
        if !self.tick() {
            return ControlFlow::Break(false);
        }
        let k = self.cert.r.len() - 1;
        let (rk, tk) = (self.cert.r[k], self.cert.t[k]);
        if self.repeat_possible {
            for j in 0..k {
                if repeat_closes(self.b, self.c, &self.cert, j) {
                    self.cert.closure = Some(Closure::Repeat { from: j + 1 });
                    return ControlFlow::Break(true);
                }
            }
        }
        if self.b.last_level() == Some(rk) || self.c.last_level() == Some(tk) {
            return ControlFlow::Break(true);
        }
        let key = (true, rk, tk, self.cert.big_r[k].clone());
        if self.failed.contains(&key) {
            return ControlFlow::Continue(());
        }
        let last_b = self.b.last_level().unwrap_or(usize::MAX).min(self.depth);
        for next in rk + 1..=last_b {
            let Ok(e) = self.b.telescope_matrix(rk, next) else { break };
            let (Ok(v), Ok(w)) = (self.c.level(tk), self.b.level(next)) else { break };
            let r = self.cert.big_r[k].clone();
            let mut outcome = None;
            // on success the pushed entries stay in place
            let _ = for_each_solution(&r, &e, v.entries(), w.entries(), &mut |t| {
                self.cert.big_t.push(t);
                self.cert.r.push(next);
                match self.after_t() {
                    ControlFlow::Break(b) => {
                        outcome = Some(b);
                        ControlFlow::Break(())
                    }
                    ControlFlow::Continue(()) => {
                        self.cert.big_t.pop();
                        self.cert.r.pop();
                        ControlFlow::Continue(())
                    }
                }
            });
            if let Some(b) = outcome {
                return ControlFlow::Break(b);
            }
        }
        self.failed.insert(key);
        ControlFlow::Continue(())
    }

    /// A new `T_K` into level `r_{K+1}` has been placed; choose `t_{K+1}` and `R_{K+1}`.
    fn after_t(&mut self) -> Step {
        if !self.tick() {
            return ControlFlow::Break(false);
        }
        let k = self.cert.big_t.len() - 1;
        let (tk, rn) = (self.cert.t[k], self.cert.r[k + 1]);
        let key = (false, rn, tk, self.cert.big_t[k].clone());
        if self.failed.contains(&key) {
            return ControlFlow::Continue(());
        }
        let last_c = self.c.last_level().unwrap_or(usize::MAX).min(self.depth);
        for next in tk + 1..=last_c {
            let Ok(s) = self.c.telescope_matrix(tk, next) else { break };
            let (Ok(v), Ok(w)) = (self.b.level(rn), self.c.level(next)) else { break };
            let t = self.cert.big_t[k].clone();
            let mut outcome = None;
            let _ = for_each_solution(&t, &s, v.entries(), w.entries(), &mut |r| {
                self.cert.big_r.push(r);
                self.cert.t.push(next);
                let step = self.after_r();
                match step {
                    ControlFlow::Break(b) => {
                        outcome = Some(b);
                        ControlFlow::Break(())
                    }
                    ControlFlow::Continue(()) => {
                        self.cert.big_r.pop();
                        self.cert.t.pop();
                        ControlFlow::Continue(())
                    }
                }
            });
            if let Some(b) = outcome {
                return ControlFlow::Break(b);
            }
        }
        self.failed.insert(key);
        ControlFlow::Continue(())
    }

    fn run(&mut self) -> Option<bool> {
        for r1 in 1..=self.b.last_level().unwrap_or(usize::MAX).min(self.depth) {
            for t1 in 1..=self.c.last_level().unwrap_or(usize::MAX).min(self.depth) {
                let (Ok(v1), Ok(w1)) = (self.b.level(r1), self.c.level(t1)) else { continue };
                // A single R reaching the end of a finite diagram is already a certificate.
                if self.b.last_level() == Some(r1) || self.c.last_level() == Some(t1) {
                    let mut hit = None;
                    let bounds = vec![BigUint::from(u64::MAX); v1.len()];
                    let options: Vec<_> =
                        w1.entries().iter().map(|cap| bounded_rows(&bounds, v1.entries(), cap)).collect();
                    let _ = for_each_product(&options, v1.len(), &mut |r| {
                        hit = Some(r);
                        ControlFlow::Break(())
                    });
                    if let Some(r) = hit {
                        self.cert = IntertwiningCertificate {
                            r: vec![r1],
                            t: vec![t1],
                            big_r: vec![r],
                            big_t: vec![],
                            closure: None,
                        };
                        return Some(true);
                    }
                    continue;
                }
                for r2 in r1 + 1..=self.b.last_level().unwrap_or(usize::MAX).min(self.depth) {
                    let Ok(e) = self.b.telescope_matrix(r1, r2) else { break };
                    let Ok(v2) = self.b.level(r2) else { break };
                    let mut outcome = None;
                    let _ = for_each_factorization(&e, &v1, &w1, &v2, &mut |r, t| {
                        self.cert = IntertwiningCertificate {
                            r: vec![r1, r2],
                            t: vec![t1],
                            big_r: vec![r],
                            big_t: vec![t],
                            closure: None,
                        };
                        match self.after_t() {
                            ControlFlow::Break(b) => {
                                outcome = Some(b);
                                ControlFlow::Break(())
                            }
                            ControlFlow::Continue(()) => ControlFlow::Continue(()),
                        }
                    });
                    match outcome {
                        Some(true) => return Some(true),
                        Some(false) => return None,
                        None => {}
                    }
                }
            }
        }
        Some(false)
    }
}

/// Greedy certificate for UHF-shaped diagrams with equal supernatural numbers.
fn divisibility_certificate(b: &Diagram, c: &Diagram, steps: usize) -> Result<IntertwiningCertificate, IsoError> {
    let size = |d: &Diagram, n: usize| -> Result<BigUint, IsoError> { Ok(d.level(n)?.entries()[0].clone()) };
    let next_multiple = |d: &Diagram, from: usize, k: &BigUint| -> Result<usize, IsoError> {
        let mut n = from;
        while !(size(d, n)? % k).is_zero() {
            n += 1;
        }
        Ok(n)
    };
    let mut cert = IntertwiningCertificate::empty();
    let mut r = 1;
    let mut t = next_multiple(c, 1, &size(b, 1)?)?;
    for step in 0..steps {
        let (kr, mt) = (size(b, r)?, size(c, t)?);
        cert.r.push(r);
        cert.t.push(t);
        cert.big_r.push(Matrix::from_rows(vec![vec![&mt / &kr]]).unwrap());
        if step + 1 == steps {
            break;
        }
        let r2 = next_multiple(b, r + 1, &mt)?;
        cert.big_t.push(Matrix::from_rows(vec![vec![size(b, r2)? / &mt]]).unwrap());
        let t2 = next_multiple(c, t + 1, &size(b, r2)?)?;
        r = r2;
        t = t2;
    }
    cert.closure = Some(Closure::Divisibility);
    Ok(cert)
}

/// Node budget of the back-and-forth search.
pub const SEARCH_BUDGET: usize = 200_000;

/// Bounded back-and-forth search for an intertwining certificate with indices `≤ depth`.
pub fn search_intertwining(b: &Diagram, c: &Diagram, depth: usize) -> Result<IsoVerdict, IsoError> {
    match (b.is_zero(), c.is_zero()) {
        (true, true) => {
            return Ok(IsoVerdict::Found {
                certificate: IntertwiningCertificate::empty(),
            })
        }
        (true, false) | (false, true) => {
            return Ok(IsoVerdict::NonIsomorphic {
                obstruction: Obstruction::ZeroMismatch,
            })
        }
        _ => {}
    }
    let uhf = is_uhf_shape(b) && is_uhf_shape(c);
    let mut uhf_equal = false;
    if uhf {
        let (ib, ic) = (uhf_invariant(b).expect("uhf"), uhf_invariant(c).expect("uhf"));
        if ib.exact && ic.exact {
            if ib.value != ic.value {
                return Ok(IsoVerdict::NonIsomorphic {
                    obstruction: Obstruction::UhfInvariant {
                        first: ib.value.to_string(),
                        second: ic.value.to_string(),
                    },
                });
            }
            uhf_equal = true;
        }
    }
    let repeat_possible = match (b.period(), c.period()) {
        (Some(qb), Some(qc)) => (1..=depth / qb).any(|x| (1..=depth / qc).any(|y| growth_over(b, x * qb) == growth_over(c, y * qc))),
        _ => false,
    };
    let finite = b.last_level().is_some() || c.last_level().is_some();
    if repeat_possible || finite {
        let mut s = Search {
            b,
            c,
            depth,
            nodes: 0,
            budget: SEARCH_BUDGET,
            failed: HashSet::new(),
            cert: IntertwiningCertificate::empty(),
            repeat_possible,
        };
        if s.run() == Some(true) {
            debug_assert!(verify_certificate(&s.cert, b, c).unwrap_or(false));
            return Ok(IsoVerdict::Found { certificate: s.cert });
        }
    }
    if uhf_equal {
        return Ok(IsoVerdict::Found {
            certificate: divisibility_certificate(b, c, 4)?,
        });
    }
    Ok(IsoVerdict::UnknownAtBound)
}

fn first_at_least(v: &[usize], n: usize) -> Option<usize> {
    v.iter().position(|&x| x >= n)
}

/// The premorphisms `f: B → C` and `g: C → B` carried by a certificate:
/// `F_n = R_k·E_{n r_k}` with `f_n = t_k`, and `G_n = T_k·S_{n t_k}` with `g_n = r_{k+1}`,
/// where `k` is the first position with `r_k ≥ n` (resp. `t_k ≥ n`).
pub fn morphisms_from_certificate(
    cert: &IntertwiningCertificate,
    b: &Diagram,
    c: &Diagram,
) -> Result<(Premorphism, Premorphism), IsoError> {
    if !verify_certificate(cert, b, c)? {
        return Err(IsoError::InvalidCertificate);
    }
    if b.is_zero() {
        return Ok((Premorphism::zero(b.clone(), c.clone())?, Premorphism::zero(c.clone(), b.clone())?));
    }
    let k = cert.r.len();
    let mut r = cert.r.clone();
    let mut t_mats = cert.big_t.clone();
    let mut rules = (None, None);
    if let Some(Closure::Repeat { from }) = cert.closure {
        let j = from - 1;
        // T_K := T_j, with r_{K+1} = r_{j+1} + (r_K − r_j).
        t_mats.push(cert.big_t[j].clone());
        r.push(cert.r[j + 1] + cert.r[k - 1] - cert.r[j]);
        let (dr, dt) = (cert.r[k - 1] - cert.r[j], cert.t[k - 1] - cert.t[j]);
        rules = (
            Some(PeriodicRule { period: dr, shift: dt }),
            Some(PeriodicRule { period: dt, shift: dr }),
        );
    }
    let f_len = cert.r[k - 1];
    let mut f_idx = Vec::with_capacity(f_len);
    let mut f_mats = Vec::with_capacity(f_len);
    for n in 1..=f_len {
        let i = first_at_least(&cert.r, n).expect("n ≤ r_K");
        f_idx.push(cert.t[i]);
        f_mats.push(cert.big_r[i].mul(&b.telescope_matrix(n, cert.r[i])?));
    }
    let g_len = cert.t[t_mats.len() - 1];
    let mut g_idx = Vec::with_capacity(g_len);
    let mut g_mats = Vec::with_capacity(g_len);
    for n in 1..=g_len {
        let i = first_at_least(&cert.t, n).expect("n ≤ t_K");
        g_idx.push(r[i + 1]);
        g_mats.push(t_mats[i].mul(&c.telescope_matrix(n, cert.t[i])?));
    }
    let f = Premorphism::validate(PremorphismWindow {
        source: b.clone(),
        target: c.clone(),
        indices: f_idx,
        matrices: f_mats,
        periodic_rule: rules.0,
    })?;
    let g = Premorphism::validate(PremorphismWindow {
        source: c.clone(),
        target: b.clone(),
        indices: g_idx,
        matrices: g_mats,
        periodic_rule: rules.1,
    })?;
    Ok((f, g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::DiagramPresentation;
    use crate::morphism::{compose, equivalent_def29, identity_premorphism};

    fn scalar(first: u64, ratio: u64) -> Diagram {
        Diagram::validate(DiagramPresentation::periodic(
            &[&[first]],
            vec![],
            &[&[first * ratio]],
            vec![Matrix::small(&[&[ratio]])],
            Matrix::small(&[&[ratio]]),
        ))
        .unwrap()
    }

    fn mm(e: &[&[u64]], v: &[u64], w: &[u64]) -> MultiplicityMatrix {
        MultiplicityMatrix::new(Matrix::small(e), LevelVector::small(v), LevelVector::small(w)).unwrap()
    }

    #[test]
    fn factorization_of_four_through_two() {
        let got = factor_as_product(&mm(&[&[4]], &[1], &[6]), &LevelVector::small(&[2]));
        assert_eq!(got, vec![(Matrix::small(&[&[2]]), Matrix::small(&[&[2]]))]);
        // exhaustive oracle over entries ≤ 4
        let mut brute = vec![];
        for r in 0..=4u64 {
            for t in 0..=4u64 {
                if t * r == 4 && r <= 2 && t * 2 <= 6 {
                    brute.push((Matrix::small(&[&[r]]), Matrix::small(&[&[t]])));
                }
            }
        }
        assert_eq!(got, brute);
    }

    #[test]
    fn identity_factors_through_itself() {
        let e = mm(&[&[1, 0], &[0, 1]], &[1, 2], &[1, 2]);
        let got = factor_as_product(&e, &LevelVector::small(&[1, 2]));
        assert!(got.contains(&(Matrix::identity(2), Matrix::identity(2))));
        assert!(factor_as_product(&mm(&[&[2]], &[2], &[4]), &LevelVector::small(&[1])).is_empty());
    }

    fn two_presentations() -> (Diagram, Diagram, IntertwiningCertificate) {
        // B: 1, 2, 4, …   C: 1, 4, 16, …
        let b = scalar(1, 2);
        let c = scalar(1, 4);
        let cert = IntertwiningCertificate {
            r: vec![2, 4, 6],
            t: vec![2, 3, 4],
            big_r: vec![Matrix::small(&[&[2]]), Matrix::small(&[&[2]]), Matrix::small(&[&[2]])],
            big_t: vec![Matrix::small(&[&[2]]), Matrix::small(&[&[2]])],
            closure: Some(Closure::Repeat { from: 1 }),
        };
        (b, c, cert)
    }

    #[test]
    fn hand_built_certificate_verifies() {
        let (b, c, cert) = two_presentations();
        assert!(verify_certificate(&cert, &b, &c).unwrap());
        let mut bad = cert.clone();
        bad.big_t[1] = Matrix::small(&[&[3]]);
        assert!(!verify_certificate(&bad, &b, &c).unwrap());
        assert_eq!(morphisms_from_certificate(&bad, &b, &c).unwrap_err(), IsoError::InvalidCertificate);
    }

    #[test]
    fn search_finds_periodic_certificate() {
        let (b, c, _) = two_presentations();
        let v = search_intertwining(&b, &c, 12).unwrap();
        let IsoVerdict::Found { certificate } = v else { panic!("{v:?}") };
        assert!(matches!(certificate.closure, Some(Closure::Repeat { .. })));
        assert!(verify_certificate(&certificate, &b, &c).unwrap());
        let (f, g) = morphisms_from_certificate(&certificate, &b, &c).unwrap();
        let gf = compose(&g, &f).unwrap();
        let fg = compose(&f, &g).unwrap();
        assert!(equivalent_def29(&gf, &identity_premorphism(&b, 1).unwrap(), 40).unwrap().is_equivalent());
        assert!(equivalent_def29(&fg, &identity_premorphism(&c, 1).unwrap(), 40).unwrap().is_equivalent());
    }

    #[test]
    fn different_uhf_invariants() {
        let v = search_intertwining(&scalar(1, 2), &scalar(1, 3), 12).unwrap();
        assert_eq!(
            v,
            IsoVerdict::NonIsomorphic {
                obstruction: Obstruction::UhfInvariant {
                    first: "2^∞".into(),
                    second: "3^∞".into()
                }
            }
        );
    }

    #[test]
    fn incommensurable_ratios_use_divisibility() {
        let b = scalar(1, 6);
        let c = scalar(1, 12);
        let IsoVerdict::Found { certificate } = search_intertwining(&b, &c, 12).unwrap() else { panic!() };
        assert_eq!(certificate.closure, Some(Closure::Divisibility));
        assert!(verify_certificate(&certificate, &b, &c).unwrap());
    }

    #[test]
    fn diagram_is_isomorphic_to_itself() {
        let b = Diagram::validate(DiagramPresentation::periodic(
            &[&[1]],
            vec![],
            &[&[1, 1]],
            vec![Matrix::small(&[&[1, 1], &[1, 0]])],
            Matrix::small(&[&[1], &[1]]),
        ))
        .unwrap();
        let v = search_intertwining(&b, &b, 8).unwrap();
        let IsoVerdict::Found { certificate } = v else { panic!("{v:?}") };
        assert!(verify_certificate(&certificate, &b, &b).unwrap());
        let finite = Diagram::validate(DiagramPresentation::finite(
            &[&[1], &[2, 2], &[6]],
            vec![Matrix::small(&[&[2], &[1]]), Matrix::small(&[&[1, 2]])],
        ))
        .unwrap();
        assert!(search_intertwining(&finite, &finite, 3).unwrap().is_found());
    }

    #[test]
    fn zero_cases() {
        let z = Diagram::zero();
        assert!(search_intertwining(&z, &z, 3).unwrap().is_found());
        assert!(search_intertwining(&z, &scalar(1, 2), 3).unwrap().is_non_isomorphic());
    }
}
