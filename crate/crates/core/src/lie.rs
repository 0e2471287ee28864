//! Classical simple Lie algebras in their defining matrix representation.
//!
//! Types B, C and D are realized as the matrices `X` with `XᵀJ + JX = 0`,
//! where `J` is the anti-diagonal form: symmetric for B and D, and for C
//! skew with `+1` in the upper half and `-1` in the lower half. Diagonal
//! matrices in the algebra then form a split Cartan subalgebra.
//!
//! The basis is the null-space basis of the defining linear constraints,
//! computed by row reduction over the row-major matrix positions. Each
//! basis element has entry 1 at its own "free" position and 0 at the free
//! positions of all other basis elements, so coordinates of a member are
//! read off directly.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::multipoly::{int, Scalar};

/// Default upper bound on the rank accepted by [`build_classical`].
pub const DEFAULT_MAX_RANK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        }
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Family::A),
            "B" => Ok(Family::B),
            "C" => Ok(Family::C),
            "D" => Ok(Family::D),
            other => Err(Error::Validation(format!(
                "unknown classical type {other:?}; expected one of A, B, C, D"
            ))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Cartan type and rank of a classical simple Lie algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassicalType {
    pub family: Family,
    pub rank: usize,
}

impl ClassicalType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = if family == Family::D { 2 } else { 1 };
        if rank < min {
            return Err(Error::Config(format!(
                "type {family} requires rank >= {min}, got {rank}"
            )));
        }
        Ok(ClassicalType { family, rank })
    }

    /// Size N of the defining matrices.
    pub fn defining_size(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l + 1,
            Family::B => 2 * l + 1,
            Family::C | Family::D => 2 * l,
        }
    }

    pub fn dimension(&self) -> usize {
        let l = self.rank;
        match self.family {
            Family::A => l * (l + 2),
            Family::B | Family::C => l * (2 * l + 1),
            Family::D => l * (2 * l - 1),
        }
    }

    /// Whether the algebra preserves a symmetric (orthogonal), skew
    /// (symplectic) or no bilinear form.
    pub fn form_kind(&self) -> FormKind {
        match self.family {
            Family::A => FormKind::None,
            Family::B | Family::D => FormKind::Symmetric,
            Family::C => FormKind::Skew,
        }
    }
}

impl fmt::Display for ClassicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    None,
    Symmetric,
    Skew,
}

/// A classical Lie algebra with an explicit matrix basis.
#[derive(Clone)]
pub struct LieAlgebra {
    ty: ClassicalType,
    n: usize,
    basis: Vec<RationalMatrix>,
    free_positions: Vec<(usize, usize)>,
    form_gram: RationalMatrix,
    form_j: Option<RationalMatrix>,
}

/// Build with the default rank bound.
pub fn build_classical(ty: ClassicalType) -> Result<LieAlgebra> {
    build_classical_with_limit(ty, DEFAULT_MAX_RANK)
}

pub fn build_classical_with_limit(ty: ClassicalType, max_rank: usize) -> Result<LieAlgebra> {
    if ty.rank > max_rank {
        return Err(Error::Config(format!(
            "rank {} exceeds the supported bound {max_rank}",
            ty.rank
        )));
    }
    let n = ty.defining_size();
    let form_j = anti_diagonal_form(ty);
    let constraints = constraint_matrix(n, form_j.as_ref());
    let kernel = constraints.kernel();

    let mut basis = Vec::with_capacity(kernel.len());
    let mut free_positions = Vec::with_capacity(kernel.len());
    for v in kernel {
        // The free column is the unique position whose entry is 1 and not a
        // pivot; it is the last nonzero position of the vector.
        let free = (0..n * n)
            .rev()
            .find(|&k| !v[k].is_zero())
            .expect("nonzero kernel vector");
        debug_assert!(v[free].is_one());
        free_positions.push((free / n, free % n));
        basis.push(RationalMatrix::from_fn(n, n, |i, j| v[i * n + j].clone()));
    }
    if basis.len() != ty.dimension() {
        return Err(Error::Structural(format!(
            "basis of {ty} has {} elements, expected {}",
            basis.len(),
            ty.dimension()
        )));
    }
    let dim = basis.len();
    let form_gram = RationalMatrix::from_fn(dim, dim, |a, b| trace_form(&basis[a], &basis[b]));
    if form_gram.rank() != dim {
        return Err(Error::Structural(format!(
            "trace form of {ty} is degenerate"
        )));
    }
    Ok(LieAlgebra {
        ty,
        n,
        basis,
        free_positions,
        form_gram,
        form_j,
    })
}

fn anti_diagonal_form(ty: ClassicalType) -> Option<RationalMatrix> {
    let n = ty.defining_size();
    match ty.form_kind() {
        FormKind::None => None,
        FormKind::Symmetric => Some(RationalMatrix::from_fn(n, n, |i, j| {
            if i + j == n - 1 {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })),
        FormKind::Skew => Some(RationalMatrix::from_fn(n, n, |i, j| {
            if i + j != n - 1 {
                Scalar::zero()
            } else if i < n / 2 {
                Scalar::one()
            } else {
                -Scalar::one()
            }
        })),
    }
}

/// Linear constraints on the row-major entries of `X`.
fn constraint_matrix(n: usize, form: Option<&RationalMatrix>) -> RationalMatrix {
    let vars = n * n;
    match form {
        None => {
            // trace zero
            let mut m = RationalMatrix::zeros(1, vars);
            for i in 0..n {
                m[(0, i * n + i)] = Scalar::one();
            }
            m
        }
        Some(j) => {
            // (XᵀJ + JX)_{ab} = X_{n-1-b, a} J_{n-1-b, b} + J_{a, n-1-a} X_{n-1-a, b}
            let mut m = RationalMatrix::zeros(vars, vars);
            for a in 0..n {
                for b in 0..n {
                    let row = a * n + b;
                    let v1 = (n - 1 - b) * n + a;
                    let v2 = (n - 1 - a) * n + b;
                    m[(row, v1)] += j[(n - 1 - b, b)].clone();
                    m[(row, v2)] += j[(a, n - 1 - a)].clone();
                }
            }
            m
        }
    }
}

/// `tr(xy)`, the invariant form used throughout in place of the Killing form.
pub fn trace_form(x: &RationalMatrix, y: &RationalMatrix) -> Scalar {
    let n = x.rows();
    let mut acc = Scalar::zero();
    for i in 0..n {
        for k in 0..n {
            let a = &x[(i, k)];
            if a.is_zero() {
                continue;
            }
            let b = &y[(k, i)];
            if !b.is_zero() {
                acc += a * b;
            }
        }
    }
    acc
}

impl LieAlgebra {
    pub fn classical_type(&self) -> ClassicalType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn defining_size(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[RationalMatrix] {
        &self.basis
    }

    /// Gram matrix of the trace form on the basis.
    pub fn form_gram(&self) -> &RationalMatrix {
        &self.form_gram
    }

    /// The preserved anti-diagonal form, `None` for type A.
    pub fn invariant_form(&self) -> Option<&RationalMatrix> {
        self.form_j.as_ref()
    }

    /// Position in the defining matrix that carries basis coordinate `a`.
    pub fn coordinate_position(&self, a: usize) -> (usize, usize) {
        self.free_positions[a]
    }

    /// Coordinates of `x` in the basis, without a membership check.
    pub fn coords_unchecked(&self, x: &RationalMatrix) -> Vec<Scalar> {
        self.free_positions
            .iter()
            .map(|&(i, j)| x[(i, j)].clone())
            .collect()
    }

    /// Coordinates of `x`, or a contract violation if `x` is not a member.
    pub fn coords(&self, x: &RationalMatrix) -> Result<Vec<Scalar>> {
        let c = self.coords_unchecked(x);
        if &self.from_coords(&c) != x {
            return Err(Error::Contract(format!(
                "matrix is not an element of {}",
                self.ty
            )));
        }
        Ok(c)
    }

    pub fn contains(&self, x: &RationalMatrix) -> bool {
        x.rows() == self.n && x.cols() == self.n && self.coords(x).is_ok()
    }

    pub fn from_coords(&self, c: &[Scalar]) -> RationalMatrix {
        assert_eq!(c.len(), self.dim());
        let mut out = RationalMatrix::zeros(self.n, self.n);
        for (coef, b) in c.iter().zip(&self.basis) {
            if coef.is_zero() {
                continue;
            }
            for i in 0..self.n {
                for j in 0..self.n {
                    let v = &b[(i, j)];
                    if !v.is_zero() {
                        out[(i, j)] += coef * v;
                    }
                }
            }
        }
        out
    }

    /// `[x, y] = xy - yx` for members of the algebra.
    pub fn bracket(&self, x: &RationalMatrix, y: &RationalMatrix) -> Result<RationalMatrix> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::Contract(format!(
                "bracket arguments must lie in {}",
                self.ty
            )));
        }
        Ok(x.commutator(y))
    }

    /// Matrix of `ad x` in the basis: column `a` holds the coordinates of
    /// `[x, b_a]`.
    pub fn ad_matrix(&self, x: &RationalMatrix) -> RationalMatrix {
        let cols: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|b| self.coords_unchecked(&x.commutator(b)))
            .collect();
        RationalMatrix::from_columns(&cols, self.dim())
    }

    /// Coordinate vectors of an echelonized basis of the centralizer of `x`.
    pub fn centralizer_coords(&self, x: &RationalMatrix) -> Vec<Vec<Scalar>> {
        self.ad_matrix(x).kernel()
    }

    /// Echelonized basis of `g^x = ker(ad x)`.
    pub fn centralizer_basis(&self, x: &RationalMatrix) -> Vec<RationalMatrix> {
        self.centralizer_coords(x)
            .iter()
            .map(|c| self.from_coords(c))
            .collect()
    }

    /// Basis of an ad-h stable subspace made of ad-h eigenvectors, ordered by
    /// weight and then by kernel order. Eigenvalues are scanned over
    /// `|m| <= 2N`.
    pub fn ad_weight_basis(
        &self,
        subspace: &[RationalMatrix],
        h: &RationalMatrix,
    ) -> Result<Vec<(RationalMatrix, i64)>> {
        let k = subspace.len();
        if k == 0 {
            return Ok(Vec::new());
        }
        let dim = self.dim();
        let s_cols: Vec<Vec<Scalar>> = subspace
            .iter()
            .map(|s| self.coords(s))
            .collect::<Result<_>>()?;
        let s = RationalMatrix::from_columns(&s_cols, dim);
        if s.rank() != k {
            return Err(Error::Contract("subspace vectors are dependent".into()));
        }
        let hs_cols: Vec<Vec<Scalar>> = subspace
            .iter()
            .map(|v| self.coords_unchecked(&h.commutator(v)))
            .collect();
        let hs = RationalMatrix::from_columns(&hs_cols, dim);
        let action = s
            .solve(&hs)
            .ok_or_else(|| Error::Structural("subspace is not stable under ad h".into()))?;

        let bound = 2 * self.n as i64;
        let mut out = Vec::with_capacity(k);
        for m in -bound..=bound {
            let shifted = &action - &RationalMatrix::identity(k).scale(&int(m));
            for v in shifted.kernel() {
                let mut x = RationalMatrix::zeros(self.n, self.n);
                for (coef, b) in v.iter().zip(subspace) {
                    if !coef.is_zero() {
                        x = &x + &b.scale(coef);
                    }
                }
                out.push((x, m));
            }
        }
        if out.len() != k {
            return Err(Error::Structural(format!(
                "ad h has non-integer or non-semisimple spectrum on the subspace \
                 ({} of {k} eigenvectors found)",
                out.len()
            )));
        }
        Ok(out)
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LieAlgebra")
            .field("type", &self.ty)
            .field("dim", &self.dim())
            .field("defining_size", &self.n)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn all_small_types() -> Vec<ClassicalType> {
        let mut v = Vec::new();
        for l in 1..=4 {
            v.push(ClassicalType::new(Family::A, l).unwrap());
            v.push(ClassicalType::new(Family::B, l).unwrap());
            v.push(ClassicalType::new(Family::C, l).unwrap());
            if l >= 2 {
                v.push(ClassicalType::new(Family::D, l).unwrap());
            }
        }
        v
    }

    #[test]
    fn dimensions() {
        let sl2 = build_classical(ClassicalType::new(Family::A, 1).unwrap()).unwrap();
        assert_eq!((sl2.dim(), sl2.defining_size()), (3, 2));
        let sp4 = build_classical(ClassicalType::new(Family::C, 2).unwrap()).unwrap();
        assert_eq!((sp4.dim(), sp4.defining_size()), (10, 4));
        let so12 = build_classical(ClassicalType::new(Family::D, 6).unwrap()).unwrap();
        assert_eq!((so12.dim(), so12.defining_size()), (66, 12));
    }

    #[test]
    fn rank_bounds() {
        assert!(ClassicalType::new(Family::D, 1).is_err());
        assert!(ClassicalType::new(Family::A, 0).is_err());
        let big = ClassicalType::new(Family::A, 7).unwrap();
        assert!(matches!(build_classical(big), Err(Error::Config(_))));
        assert!(build_classical_with_limit(big, 7).is_ok());
    }

    #[test]
    fn basis_is_closed_and_forms_are_sane() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for ty in all_small_types() {
            let g = build_classical(ty).unwrap();
            assert_eq!(g.dim(), ty.dimension());
            let gram = g.form_gram();
            assert_eq!(gram, &gram.transpose());
            for b in g.basis() {
                if let Some(j) = g.invariant_form() {
                    let lhs = &b.transpose().matmul(j) + &j.matmul(b);
                    assert!(lhs.is_zero());
                } else {
                    assert!(b.trace().is_zero());
                }
            }
            for _ in 0..20 {
                let x = &g.basis()[rng.gen_range(0..g.dim())];
                let y = &g.basis()[rng.gen_range(0..g.dim())];
                assert!(g.contains(&g.bracket(x, y).unwrap()));
            }
        }
    }

    #[test]
    fn bracket_rejects_non_members() {
        let g = build_classical(ClassicalType::new(Family::A, 1).unwrap()).unwrap();
        let id = RationalMatrix::identity(2);
        assert!(matches!(
            g.bracket(&id, &g.basis()[0]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn jacobi_identity_and_form_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for ty in [
            ClassicalType::new(Family::B, 2).unwrap(),
            ClassicalType::new(Family::C, 3).unwrap(),
            ClassicalType::new(Family::D, 4).unwrap(),
            ClassicalType::new(Family::A, 3).unwrap(),
        ] {
            let g = build_classical(ty).unwrap();
            for _ in 0..50 {
                let pick = |rng: &mut ChaCha8Rng| g.basis()[rng.gen_range(0..g.dim())].clone();
                let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
                let j1 = x.commutator(&y.commutator(&z));
                let j2 = y.commutator(&z.commutator(&x));
                let j3 = z.commutator(&x.commutator(&y));
                assert!((&(&j1 + &j2) + &j3).is_zero());
                // tr([x,y] z) + tr(y [x,z]) = 0
                let lhs = trace_form(&x.commutator(&y), &z) + trace_form(&y, &x.commutator(&z));
                assert!(lhs.is_zero());
            }
        }
    }

    #[test]
    fn centralizer_of_zero_is_everything() {
        let g = build_classical(ClassicalType::new(Family::C, 2).unwrap()).unwrap();
        let zero = RationalMatrix::zeros(4, 4);
        assert_eq!(g.centralizer_basis(&zero).len(), g.dim());
    }

    #[test]
    fn sl2_centralizer_and_weights() {
        let g = build_classical(ClassicalType::new(Family::A, 1).unwrap()).unwrap();
        let e = RationalMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]);
        let f = e.transpose();
        let h = e.commutator(&f);
        assert_eq!(h, RationalMatrix::diagonal(&[int(1), int(-1)]));
        let ge = g.centralizer_basis(&e);
        assert_eq!(ge.len(), 1);
        // the single basis vector is a multiple of e
        assert!(ge[0].commutator(&e).is_zero());
        let we = g.ad_weight_basis(&ge, &h).unwrap();
        assert_eq!(we.len(), 1);
        assert_eq!(we[0].1, 2);
        let gf = g.centralizer_basis(&f);
        let wf = g.ad_weight_basis(&gf, &h).unwrap();
        assert_eq!(wf[0].1, -2);
    }

    #[test]
    fn weight_basis_rejects_unstable_subspace() {
        let g = build_classical(ClassicalType::new(Family::A, 1).unwrap()).unwrap();
        let e = RationalMatrix::from_rows(vec![vec![int(0), int(1)], vec![int(0), int(0)]]);
        let h = RationalMatrix::diagonal(&[int(1), int(-1)]);
        let mixed = &e + &e.transpose();
        assert!(matches!(
            g.ad_weight_basis(&[mixed], &h),
            Err(Error::Structural(_))
        ));
    }
}
