//! Concrete finite-dimensional algebras `M_{n_1} ⊕ … ⊕ M_{n_k}` over the rationals.
//!
//! A multiplicity matrix `E: V → W` is realized by the canonical block embedding
//! `h(E)`: target block `i` is `diag(u_1^(a_i1), …, u_k^(a_ik), 0^(s_i))` where
//! `s_i = m_i − Σ_j a_ij n_j`. Composites and conjugates of such maps are kept as
//! [`StarHom`], the images of all matrix units, from which the multiplicity
//! matrix is recovered by rank computations.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::diagram::{DiagramError, LevelVector, MultiplicityMatrix};
use crate::matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FdError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("block sizes do not match the algebra")]
    ShapeMismatch,
    #[error("matrix size {0} is too large to realize concretely")]
    TooLarge(String),
}

/// Dense square-or-rectangular matrix with rational entries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigRational::one();
        }
        m
    }

    /// Matrix unit `e_ab` of size `n`.
    pub fn unit(n: usize, a: usize, b: usize) -> Self {
        let mut m = Self::zeros(n, n);
        m.data[a * n + b] = BigRational::one();
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = QMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Conjugate transpose (plain transpose over the rationals).
    pub fn adjoint(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        out
    }

    /// Rank by fraction-free (Bareiss) elimination after clearing denominators row by row.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| num_integer::lcm(acc, x.denom().clone()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        bareiss_rank(&mut m, self.cols)
    }
}

fn bareiss_rank(m: &mut [Vec<BigInt>], cols: usize) -> usize {
    let rows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            crate::matrix::write_vec(f, &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        f.write_str("]")
    }
}

/// `M_{n_1} ⊕ … ⊕ M_{n_k}` with sizes small enough to realize.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FdAlgebra {
    sizes: Vec<usize>,
}

impl FdAlgebra {
    pub fn new(sizes: &LevelVector) -> Result<Self, FdError> {
        let sizes = sizes
            .entries()
            .iter()
            .map(|x| x.to_usize().filter(|&n| n <= 1 << 12).ok_or_else(|| FdError::TooLarge(x.to_string())))
            .collect::<Result<_, _>>()?;
        Ok(Self { sizes })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn summands(&self) -> usize {
        self.sizes.len()
    }

    /// All matrix units `(j, a, b)` in lexicographic order.
    pub fn units(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(|(j, &n)| (0..n).flat_map(move |a| (0..n).map(move |b| (j, a, b))))
    }
}

/// Element of an [`FdAlgebra`]: one square block per summand.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatrixTuple {
    pub blocks: Vec<QMatrix>,
}

impl MatrixTuple {
    pub fn zero(alg: &FdAlgebra) -> Self {
        Self {
            blocks: alg.sizes.iter().map(|&n| QMatrix::zeros(n, n)).collect(),
        }
    }

    pub fn identity(alg: &FdAlgebra) -> Self {
        Self {
            blocks: alg.sizes.iter().map(|&n| QMatrix::identity(n)).collect(),
        }
    }

    /// Matrix unit `e^j_ab`.
    pub fn unit(alg: &FdAlgebra, j: usize, a: usize, b: usize) -> Self {
        let mut t = Self::zero(alg);
        t.blocks[j] = QMatrix::unit(alg.sizes[j], a, b);
        t
    }

    pub fn belongs_to(&self, alg: &FdAlgebra) -> bool {
        self.blocks.len() == alg.sizes.len()
            && self
                .blocks
                .iter()
                .zip(&alg.sizes)
                .all(|(b, &n)| b.rows == n && b.cols == n)
    }

    pub fn mul(&self, rhs: &MatrixTuple) -> MatrixTuple {
        MatrixTuple {
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn add(&self, rhs: &MatrixTuple) -> MatrixTuple {
        MatrixTuple {
            blocks: self.blocks.iter().zip(&rhs.blocks).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn adjoint(&self) -> MatrixTuple {
        MatrixTuple {
            blocks: self.blocks.iter().map(QMatrix::adjoint).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(QMatrix::is_zero)
    }
}

/// Target block `i` of `h(E)`: source blocks in index order with multiplicities, then zero padding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    /// `(source block j, copy count a_ij)`, omitting zero counts.
    pub pieces: Vec<(usize, usize)>,
    pub slack: usize,
}

/// Canonical block embedding `h(E)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockMap {
    source: FdAlgebra,
    target: FdAlgebra,
    multiplicity: MultiplicityMatrix,
    placement: Vec<Placement>,
}

fn small(x: &num_bigint::BigUint) -> Result<usize, FdError> {
    x.to_usize().ok_or_else(|| FdError::TooLarge(x.to_string()))
}

/// Builds the canonical embedding of a multiplicity matrix.
pub fn h_of(e: &MultiplicityMatrix) -> Result<BlockMap, FdError> {
    let source = FdAlgebra::new(e.domain())?;
    let target = FdAlgebra::new(e.codomain())?;
    let m = e.matrix();
    let placement = (0..m.rows())
        .map(|i| {
            let pieces = (0..m.cols())
                .filter(|&j| !m.get(i, j).is_zero())
                .map(|j| Ok((j, small(m.get(i, j))?)))
                .collect::<Result<Vec<_>, FdError>>()?;
            let used: usize = pieces.iter().map(|&(j, a)| a * source.sizes[j]).sum();
            Ok(Placement {
                pieces,
                slack: target.sizes[i] - used,
            })
        })
        .collect::<Result<Vec<_>, FdError>>()?;
    Ok(BlockMap {
        source,
        target,
        multiplicity: e.clone(),
        placement,
    })
}

impl BlockMap {
    pub fn source(&self) -> &FdAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FdAlgebra {
        &self.target
    }

    pub fn multiplicity(&self) -> &MultiplicityMatrix {
        &self.multiplicity
    }

    pub fn placement(&self) -> &[Placement] {
        &self.placement
    }

    /// Block-diagonal image of `x`.
    pub fn apply(&self, x: &MatrixTuple) -> Result<MatrixTuple, FdError> {
        if !x.belongs_to(&self.source) {
            return Err(FdError::ShapeMismatch);
        }
        let blocks = self
            .placement
            .iter()
            .zip(&self.target.sizes)
            .map(|(p, &m)| {
                let mut out = QMatrix::zeros(m, m);
                let mut offset = 0;
                for &(j, copies) in &p.pieces {
                    let b = &x.blocks[j];
                    let n = b.rows;
                    for _ in 0..copies {
                        for r in 0..n {
                            for c in 0..n {
                                let v = b.get(r, c);
                                if !v.is_zero() {
                                    out.set(offset + r, offset + c, v.clone());
                                }
                            }
                        }
                        offset += n;
                    }
                }
                out
            })
            .collect();
        Ok(MatrixTuple { blocks })
    }
}

/// A *-homomorphism given by the images of all matrix units of its source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarHom {
    source: FdAlgebra,
    target: FdAlgebra,
    /// `units[j][a·n_j + b] = φ(e^j_ab)`.
    units: Vec<Vec<MatrixTuple>>,
}

impl StarHom {
    pub fn from_block_map(h: &BlockMap) -> Self {
        let units = h
            .source
            .sizes
            .iter()
            .enumerate()
            .map(|(j, &n)| {
                (0..n * n)
                    .map(|ab| h.apply(&MatrixTuple::unit(&h.source, j, ab / n, ab % n)).expect("unit belongs to source"))
                    .collect()
            })
            .collect();
        Self {
            source: h.source.clone(),
            target: h.target.clone(),
            units,
        }
    }

    pub fn source(&self) -> &FdAlgebra {
        &self.source
    }

    pub fn target(&self) -> &FdAlgebra {
        &self.target
    }

    /// `φ(e^j_ab)`.
    pub fn unit_image(&self, j: usize, a: usize, b: usize) -> &MatrixTuple {
        &self.units[j][a * self.source.sizes[j] + b]
    }

    pub fn apply(&self, x: &MatrixTuple) -> Result<MatrixTuple, FdError> {
        if !x.belongs_to(&self.source) {
            return Err(FdError::ShapeMismatch);
        }
        let mut out = MatrixTuple::zero(&self.target);
        for (j, block) in x.blocks.iter().enumerate() {
            let n = block.rows;
            for a in 0..n {
                for b in 0..n {
                    let c = block.get(a, b);
                    if c.is_zero() {
                        continue;
                    }
                    let img = &self.units[j][a * n + b];
                    for (o, i) in out.blocks.iter_mut().zip(&img.blocks) {
                        *o = o.add(&i.scale(c));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &StarHom) -> Result<StarHom, FdError> {
        if inner.target != self.source {
            return Err(FdError::ShapeMismatch);
        }
        let units = inner
            .units
            .iter()
            .map(|us| us.iter().map(|u| self.apply(u)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(StarHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            units,
        })
    }

    /// `Ad(u) ∘ self` for a blockwise permutation `u`.
    pub fn conjugated(&self, u: &Permutation) -> Result<StarHom, FdError> {
        if !u.fits(&self.target) {
            return Err(FdError::ShapeMismatch);
        }
        let units = self
            .units
            .iter()
            .map(|us| us.iter().map(|x| u.conjugate(x)).collect())
            .collect();
        Ok(StarHom {
            source: self.source.clone(),
            target: self.target.clone(),
            units,
        })
    }
}

/// Multiplicity matrix of a *-homomorphism from the images of the minimal projections
/// `e^j_11`: entry `(i, j)` is the rank of block `i` of the `j`-th image.
pub fn multiplicity_from_unit_images(images: &[MatrixTuple]) -> Matrix {
    let rows = images.first().map_or(0, |t| t.blocks.len());
    let mut m = Matrix::zeros(rows.max(1), images.len().max(1));
    for (j, t) in images.iter().enumerate() {
        for (i, b) in t.blocks.iter().enumerate() {
            m.set(i, j, b.rank().into());
        }
    }
    m
}

/// The unique multiplicity matrix of a *-homomorphism.
pub fn recover_multiplicity(phi: &StarHom) -> Matrix {
    let images: Vec<_> = (0..phi.source.summands()).map(|j| phi.unit_image(j, 0, 0).clone()).collect();
    multiplicity_from_unit_images(&images)
}

/// Every column has a nonzero entry.
pub fn is_injective_matrix(e: &Matrix) -> bool {
    e.is_embedding()
}

/// `E·V = W`.
pub fn is_unital_matrix(e: &MultiplicityMatrix) -> bool {
    e.is_unital()
}

/// `s_i = W_i − (E·V)_i`.
pub fn slack(e: &MultiplicityMatrix) -> Vec<num_bigint::BigUint> {
    e.slack()
}

/// Blockwise permutation: `blocks[i][q]` is the image of basis vector `q` in block `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    pub blocks: Vec<Vec<usize>>,
}

impl Permutation {
    pub fn identity(alg: &FdAlgebra) -> Self {
        Self {
            blocks: alg.sizes.iter().map(|&n| (0..n).collect()).collect(),
        }
    }

    fn fits(&self, alg: &FdAlgebra) -> bool {
        self.blocks.len() == alg.sizes.len()
            && self.blocks.iter().zip(&alg.sizes).all(|(p, &n)| {
                let mut s = p.clone();
                s.sort_unstable();
                s.into_iter().eq(0..n)
            })
    }

    /// The permutation matrices `u_i` with `u_i[π(q)][q] = 1`.
    pub fn matrices(&self) -> MatrixTuple {
        MatrixTuple {
            blocks: self
                .blocks
                .iter()
                .map(|p| {
                    let mut m = QMatrix::zeros(p.len(), p.len());
                    for (q, &r) in p.iter().enumerate() {
                        m.set(r, q, BigRational::one());
                    }
                    m
                })
                .collect(),
        }
    }

    /// `u·x·uᵀ`.
    pub fn conjugate(&self, x: &MatrixTuple) -> MatrixTuple {
        MatrixTuple {
            blocks: x
                .blocks
                .iter()
                .zip(&self.blocks)
                .map(|(b, p)| {
                    let mut out = QMatrix::zeros(b.rows, b.cols);
                    for r in 0..b.rows {
                        for c in 0..b.cols {
                            out.set(p[r], p[c], b.get(r, c).clone());
                        }
                    }
                    out
                })
                .collect(),
        }
    }

    /// `u·ψ(e)·uᵀ = φ(e)` on every matrix unit `e`.
    pub fn intertwines(&self, phi: &StarHom, psi: &StarHom) -> bool {
        self.fits(&phi.target)
            && phi.source == psi.source
            && phi.target == psi.target
            && phi
                .units
                .iter()
                .flatten()
                .zip(psi.units.iter().flatten())
                .all(|(a, b)| &self.conjugate(b) == a)
    }
}

/// Basis positions `(j, copy, a)` of the ranges of `χ(e^j_aa)` inside target block `i`,
/// in lexicographic order; `None` if the images are not 0/1 partial permutations.
fn unit_positions(chi: &StarHom, i: usize) -> Option<Vec<usize>> {
    let mut out = Vec::new();
    for (j, &n) in chi.source.sizes.iter().enumerate() {
        let p11 = &chi.unit_image(j, 0, 0).blocks[i];
        let diag: Vec<usize> = (0..p11.rows).filter(|&r| !p11.get(r, r).is_zero()).collect();
        for p in diag {
            for a in 0..n {
                let col = &chi.unit_image(j, a, 0).blocks[i];
                let hits: Vec<usize> = (0..col.rows).filter(|&r| !col.get(r, p).is_zero()).collect();
                match hits.as_slice() {
                    [r] if col.get(*r, p).is_one() => out.push(*r),
                    _ => return None,
                }
            }
        }
    }
    Some(out)
}

/// A blockwise permutation `u` with `u·ψ(x)·uᵀ = φ(x)`, found by matching the positions
/// that each map assigns to copies of the source blocks. `None` when the multiplicities
/// differ or no permutation matching the unit positions exists.
pub fn find_permutation_intertwiner(phi: &StarHom, psi: &StarHom) -> Option<Permutation> {
    if phi.source != psi.source || phi.target != psi.target {
        return None;
    }
    if recover_multiplicity(phi) != recover_multiplicity(psi) {
        return None;
    }
    let mut blocks = Vec::with_capacity(phi.target.summands());
    for (i, &m) in phi.target.sizes.iter().enumerate() {
        let to = unit_positions(phi, i)?;
        let from = unit_positions(psi, i)?;
        if to.len() != from.len() {
            return None;
        }
        let mut perm = vec![usize::MAX; m];
        let mut used = vec![false; m];
        for (&q, &r) in from.iter().zip(&to) {
            if perm[q] != usize::MAX || used[r] {
                return None;
            }
            perm[q] = r;
            used[r] = true;
        }
        let mut free = (0..m).filter(|&r| !used[r]);
        for slot in perm.iter_mut().filter(|s| **s == usize::MAX) {
            *slot = free.next()?;
        }
        blocks.push(perm);
    }
    let u = Permutation { blocks };
    u.intertwines(phi, psi).then_some(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mm(e: &[&[u64]], v: &[u64], w: &[u64]) -> MultiplicityMatrix {
        MultiplicityMatrix::new(Matrix::small(e), LevelVector::small(v), LevelVector::small(w)).unwrap()
    }

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    #[test]
    fn row_layout_of_section_two_edge() {
        let h = h_of(&mm(&[&[1, 2]], &[2, 2], &[6])).unwrap();
        assert_eq!(
            h.placement(),
            &[Placement {
                pieces: vec![(0, 1), (1, 2)],
                slack: 0
            }]
        );
    }

    #[test]
    fn column_layout_pads_with_zeros() {
        let h = h_of(&mm(&[&[2], &[1]], &[1], &[2, 2])).unwrap();
        let x = MatrixTuple {
            blocks: vec![QMatrix::from_rows(vec![vec![q(5)]]).unwrap()],
        };
        let y = h.apply(&x).unwrap();
        let d = |a, b| QMatrix::from_rows(vec![vec![q(a), q(0)], vec![q(0), q(b)]]).unwrap();
        assert_eq!(y.blocks, vec![d(5, 5), d(5, 0)]);
        assert_eq!(h.placement()[1].slack, 1);
        assert_eq!(slack(h.multiplicity()), vec![0u32.into(), 1u32.into()]);
    }

    #[test]
    fn identity_block_map() {
        let h = h_of(&mm(&[&[1]], &[3], &[3])).unwrap();
        let x = MatrixTuple::unit(h.source(), 0, 1, 2);
        assert_eq!(h.apply(&x).unwrap(), x);
        assert_eq!(h.placement()[0].slack, 0);
    }

    #[test]
    fn rank_of_rational_matrix() {
        let m = QMatrix::from_rows(vec![
            vec![q(1), q(2), q(3)],
            vec![q(2), q(4), q(6)],
            vec![BigRational::new(1.into(), 2.into()), q(0), q(1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(QMatrix::identity(3).rank(), 3);
        assert_eq!(QMatrix::zeros(2, 2).rank(), 0);
    }

    #[test]
    fn recovery_inverts_h() {
        let e = mm(&[&[2, 0], &[1, 1]], &[1, 2], &[3, 3]);
        let phi = StarHom::from_block_map(&h_of(&e).unwrap());
        assert_eq!(&recover_multiplicity(&phi), e.matrix());
    }

    #[test]
    fn section_two_composites_are_conjugate() {
        let e1 = h_of(&mm(&[&[2], &[1]], &[1], &[2, 2])).unwrap();
        let e2 = h_of(&mm(&[&[0], &[2]], &[1], &[2, 2])).unwrap();
        let e3 = h_of(&mm(&[&[1, 2]], &[2, 2], &[6])).unwrap();
        let h3 = StarHom::from_block_map(&e3);
        let phi = h3.after(&StarHom::from_block_map(&e1)).unwrap();
        let psi = h3.after(&StarHom::from_block_map(&e2)).unwrap();
        assert_eq!(recover_multiplicity(&phi), Matrix::small(&[&[4]]));
        assert_eq!(recover_multiplicity(&psi), Matrix::small(&[&[4]]));
        assert_ne!(phi, psi);
        let u = find_permutation_intertwiner(&phi, &psi).unwrap();
        assert!(u.intertwines(&phi, &psi));
    }

    #[test]
    fn equal_maps_give_identity() {
        let h = StarHom::from_block_map(&h_of(&mm(&[&[1, 1]], &[1, 2], &[4])).unwrap());
        let u = find_permutation_intertwiner(&h, &h).unwrap();
        assert_eq!(u, Permutation::identity(h.target()));
    }

    #[test]
    fn different_multiplicities_have_no_intertwiner() {
        let a = StarHom::from_block_map(&h_of(&mm(&[&[1]], &[1], &[2])).unwrap());
        let b = StarHom::from_block_map(&h_of(&mm(&[&[2]], &[1], &[2])).unwrap());
        assert!(find_permutation_intertwiner(&a, &b).is_none());
    }

    #[test]
    fn zero_column_has_kernel() {
        let e = mm(&[&[1, 0]], &[1, 1], &[2]);
        let h = h_of(&e).unwrap();
        assert!(!is_injective_matrix(e.matrix()));
        assert!(h.apply(&MatrixTuple::unit(h.source(), 1, 0, 0)).unwrap().is_zero());
        assert!(!is_unital_matrix(&e));
    }
}
