//! Fundamental invariants of the classical algebras: characteristic
//! polynomial coefficients and, for type D, the Pfaffian.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Deadline;
use crate::error::{Error, Result};
use crate::lie::{Family, LieAlgebra};
use crate::linalg::RationalMatrix;
use crate::multipoly::{int, Scalar, SparsePoly, TermAccumulator};

/// Square matrix with polynomial entries, row-major.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix {
    n: usize,
    arity: usize,
    entries: Vec<SparsePoly>,
}

impl PolyMatrix {
    pub fn zeros(n: usize, arity: usize) -> Self {
        PolyMatrix {
            n,
            arity,
            entries: vec![SparsePoly::zero(arity); n * n],
        }
    }

    pub fn from_fn(n: usize, arity: usize, mut f: impl FnMut(usize, usize) -> SparsePoly) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let p = f(i, j);
                assert_eq!(p.arity(), arity, "arity mismatch");
                entries.push(p);
            }
        }
        PolyMatrix { n, arity, entries }
    }

    /// `c + sum_j t_j m_j` with constant matrix `c` and one variable per `m_j`.
    pub fn affine(constant: &RationalMatrix, linear: &[RationalMatrix]) -> Self {
        let n = constant.rows();
        let arity = linear.len();
        PolyMatrix::from_fn(n, arity, |i, j| {
            let mut acc = TermAccumulator::new(arity);
            acc.add_poly(&SparsePoly::constant(arity, constant[(i, j)].clone()));
            for (v, m) in linear.iter().enumerate() {
                if !m[(i, j)].is_zero() {
                    acc.add_scaled(&SparsePoly::var(arity, v), &m[(i, j)]);
                }
            }
            acc.finish()
        })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, i: usize, j: usize) -> &SparsePoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: SparsePoly) {
        assert_eq!(p.arity(), self.arity, "arity mismatch");
        self.entries[i * self.n + j] = p;
    }

    pub fn trace(&self) -> SparsePoly {
        let mut acc = TermAccumulator::new(self.arity);
        for i in 0..self.n {
            acc.add_poly(self.get(i, i));
        }
        acc.finish()
    }

    pub fn evaluate(&self, point: &[Scalar]) -> RationalMatrix {
        RationalMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).evaluate(point))
    }

    /// Product with a constant matrix on the left.
    pub fn left_mul_const(&self, m: &RationalMatrix) -> PolyMatrix {
        PolyMatrix::from_fn(self.n, self.arity, |i, j| {
            let mut acc = TermAccumulator::new(self.arity);
            for l in 0..self.n {
                if !m[(i, l)].is_zero() {
                    acc.add_scaled(self.get(l, j), &m[(i, l)]);
                }
            }
            acc.finish()
        })
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert!(
            self.n == other.n && self.arity == other.arity,
            "arity mismatch"
        );
        let n = self.n;
        let entries: Vec<SparsePoly> = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let mut acc = TermAccumulator::new(self.arity);
                let one = Scalar::one();
                for l in 0..n {
                    let a = self.get(i, l);
                    let b = other.get(l, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_product(a, b, &one);
                    }
                }
                acc.finish()
            })
            .collect();
        PolyMatrix {
            n,
            arity: self.arity,
            entries,
        }
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &PolyMatrix) -> SparsePoly {
        let n = self.n;
        let parts: Vec<SparsePoly> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut acc = TermAccumulator::new(self.arity);
                let one = Scalar::one();
                for l in 0..n {
                    let a = self.get(i, l);
                    let b = other.get(l, i);
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_product(a, b, &one);
                    }
                }
                acc.finish()
            })
            .collect();
        let mut acc = TermAccumulator::new(self.arity);
        for p in &parts {
            acc.add_poly(p);
        }
        acc.finish()
    }

    pub fn is_skew(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == &self.get(j, i).neg()))
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_text("c")).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `X = sum_a c_a b_a` in the coordinates `c_1..c_dim` of the basis.
pub fn generic_element(g: &LieAlgebra) -> PolyMatrix {
    let zero = RationalMatrix::zeros(g.defining_size(), g.defining_size());
    PolyMatrix::affine(&zero, g.basis())
}

/// `sigma_0..sigma_max_k` with
/// `det(l - X) = l^N - sigma_1 l^(N-1) + sigma_2 l^(N-2) - ...`,
/// by the Faddeev-LeVerrier recurrence.
pub fn char_poly_coeffs(
    x: &PolyMatrix,
    max_k: usize,
    deadline: &Deadline,
) -> Result<Vec<SparsePoly>> {
    let n = x.size();
    let arity = x.arity();
    if max_k > n {
        return Err(Error::Contract(format!(
            "coefficient sigma_{max_k} requested for a {n}x{n} matrix"
        )));
    }
    let mut sigma = vec![SparsePoly::one(arity)];
    if max_k == 0 {
        return Ok(sigma);
    }
    // M_1 = I, M_k = X M_(k-1) + c_(N-k+1) I, c_(N-k) = -tr(X M_k)/k.
    let mut m = PolyMatrix::from_fn(n, arity, |i, j| {
        if i == j {
            SparsePoly::one(arity)
        } else {
            SparsePoly::zero(arity)
        }
    });
    let mut c_prev = SparsePoly::one(arity);
    for k in 1..=max_k {
        deadline.check()?;
        if k > 1 {
            m = x.mul(&m);
            for i in 0..n {
                let d = m.get(i, i).add(&c_prev);
                m.set(i, i, d);
            }
        }
        let c = x
            .trace_of_product(&m)
            .scale(&Scalar::new((-1).into(), (k as i64).into()));
        let s = if k % 2 == 0 { c.clone() } else { c.neg() };
        sigma.push(s);
        c_prev = c;
    }
    Ok(sigma)
}

/// Pfaffian by expansion along the first row, memoized over index subsets.
pub fn pfaffian(a: &PolyMatrix) -> Result<SparsePoly> {
    let n = a.size();
    if n % 2 == 1 {
        return Ok(SparsePoly::zero(a.arity()));
    }
    if n > 32 {
        return Err(Error::Config(format!(
            "Pfaffian of size {n} is not supported"
        )));
    }
    let mut memo: HashMap<u32, SparsePoly> = HashMap::new();
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    Ok(pf_rec(a, full, &mut memo))
}

fn pf_rec(a: &PolyMatrix, mask: u32, memo: &mut HashMap<u32, SparsePoly>) -> SparsePoly {
    if mask == 0 {
        return SparsePoly::one(a.arity());
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let i = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << i);
    let mut acc = TermAccumulator::new(a.arity());
    let mut idx = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let aij = a.get(i, j);
        if !aij.is_zero() {
            let sub = pf_rec(a, rest & !(1 << j), memo);
            if !sub.is_zero() {
                let sign = if idx % 2 == 0 { int(1) } else { int(-1) };
                acc.add_product(aij, &sub, &sign);
            }
        }
        idx += 1;
    }
    let p = acc.finish();
    memo.insert(mask, p.clone());
    p
}

/// Recipe for one fundamental invariant, evaluable on any polynomial matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum InvariantKind {
    /// `sigma_k`, the k-th characteristic polynomial coefficient.
    CharCoeff(usize),
    /// `Pf(J X)` for the symmetric form `J` of type D.
    Pfaffian,
}

impl InvariantKind {
    pub fn label(&self) -> String {
        match self {
            InvariantKind::CharCoeff(k) => format!("sigma_{k}"),
            InvariantKind::Pfaffian => "pfaffian".to_string(),
        }
    }
}

/// A fundamental invariant in the coordinates `c_1..c_dim`.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantPoly {
    pub kind: InvariantKind,
    pub degree: u32,
    pub poly: SparsePoly,
}

/// Recipes and degrees of a generating sequence, sorted stably by degree.
pub fn fundamental_kinds(g: &LieAlgebra) -> Vec<(InvariantKind, u32)> {
    let ty = g.classical_type();
    let l = ty.rank;
    let mut kinds: Vec<(InvariantKind, u32)> = match ty.family {
        Family::A => (2..=l + 1)
            .map(|k| (InvariantKind::CharCoeff(k), k as u32))
            .collect(),
        Family::B | Family::C => (1..=l)
            .map(|i| (InvariantKind::CharCoeff(2 * i), 2 * i as u32))
            .collect(),
        Family::D => (1..l)
            .map(|i| (InvariantKind::CharCoeff(2 * i), 2 * i as u32))
            .chain(std::iter::once((InvariantKind::Pfaffian, l as u32)))
            .collect(),
    };
    kinds.sort_by_key(|&(_, d)| d);
    kinds
}

/// Evaluate the recipes on a polynomial matrix lying in `g` identically.
pub fn evaluate_kinds(
    g: &LieAlgebra,
    kinds: &[InvariantKind],
    x: &PolyMatrix,
    deadline: &Deadline,
) -> Result<Vec<SparsePoly>> {
    let max_k = kinds
        .iter()
        .filter_map(|k| match k {
            InvariantKind::CharCoeff(k) => Some(*k),
            InvariantKind::Pfaffian => None,
        })
        .max()
        .unwrap_or(0);
    let sigma = char_poly_coeffs(x, max_k, deadline)?;
    let mut pf = None;
    kinds
        .iter()
        .map(|k| match k {
            InvariantKind::CharCoeff(k) => Ok(sigma[*k].clone()),
            InvariantKind::Pfaffian => {
                if pf.is_none() {
                    pf = Some(pfaffian_of(g, x, deadline)?);
                }
                Ok(pf.clone().unwrap())
            }
        })
        .collect()
}

fn pfaffian_of(g: &LieAlgebra, x: &PolyMatrix, deadline: &Deadline) -> Result<SparsePoly> {
    if g.classical_type().family != Family::D {
        return Err(Error::Contract(format!(
            "Pfaffian invariant requested for type {}",
            g.classical_type()
        )));
    }
    let j = g
        .invariant_form()
        .ok_or_else(|| Error::Structural("type D without an invariant form".into()))?;
    let skew = x.left_mul_const(j);
    if !skew.is_skew() {
        return Err(Error::Contract("J X is not skew-symmetric".into()));
    }
    deadline.check()?;
    pfaffian(&skew)
}

/// The Pfaffian generator of type D.
pub fn pfaffian_invariant(g: &LieAlgebra) -> Result<InvariantPoly> {
    let poly = pfaffian_of(g, &generic_element(g), &Deadline::unlimited())?;
    Ok(InvariantPoly {
        kind: InvariantKind::Pfaffian,
        degree: g.rank() as u32,
        poly,
    })
}

/// `q_1..q_l` as polynomials in the basis coordinates, sorted by degree.
pub fn fundamental_invariants(g: &LieAlgebra, deadline: &Deadline) -> Result<Vec<InvariantPoly>> {
    let kinds = fundamental_kinds(g);
    let recipes: Vec<InvariantKind> = kinds.iter().map(|&(k, _)| k).collect();
    let polys = evaluate_kinds(g, &recipes, &generic_element(g), deadline)?;
    let out: Vec<InvariantPoly> = kinds
        .into_iter()
        .zip(polys)
        .map(|((kind, degree), poly)| InvariantPoly { kind, degree, poly })
        .collect();
    for q in &out {
        if q.poly.is_zero()
            || q.poly.min_degree() != Some(q.degree)
            || q.poly.total_degree() != Some(q.degree)
        {
            return Err(Error::Structural(format!(
                "{} is not homogeneous of degree {}",
                q.kind.label(),
                q.degree
            )));
        }
    }
    Ok(out)
}

/// True when the coadjoint derivation of every basis element kills `q`.
pub fn is_ad_invariant(g: &LieAlgebra, q: &SparsePoly) -> bool {
    let dim = g.dim();
    let partials: Vec<SparsePoly> = (0..dim).map(|c| q.partial_derivative(c)).collect();
    g.basis().par_iter().all(|b| {
        // [b, x] has coordinate c equal to sum_a (ad b)[c][a] c_a.
        let ad = g.ad_matrix(b);
        let mut acc = TermAccumulator::new(dim);
        for (c, dq) in partials.iter().enumerate() {
            if dq.is_zero() {
                continue;
            }
            for a in 0..dim {
                let coeff = &ad[(c, a)];
                if !coeff.is_zero() {
                    acc.add_product(&SparsePoly::var(dim, a), dq, coeff);
                }
            }
        }
        acc.finish().is_zero()
    })
}
