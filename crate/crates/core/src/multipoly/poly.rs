use std::collections::hash_map::Entry;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use super::modular::{self, DenominatorNotInvertible};
use super::monomial::{Exp, ExponentVector, WeightVector};
use super::Scalar;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted in descending graded-lexicographic order and no
/// stored coefficient is zero, so structural equality is polynomial equality.
/// The zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    arity: usize,
    terms: Vec<(ExponentVector, Scalar)>,
}

/// Hash-map backed sum of terms, used when many products land in one result.
pub struct TermAccumulator {
    arity: usize,
    map: FxHashMap<ExponentVector, Scalar>,
}

impl TermAccumulator {
    pub fn new(arity: usize) -> Self {
        TermAccumulator {
            arity,
            map: FxHashMap::default(),
        }
    }

    pub fn with_capacity(arity: usize, cap: usize) -> Self {
        let mut map = FxHashMap::default();
        map.reserve(cap);
        TermAccumulator { arity, map }
    }

    pub fn add_term(&mut self, exps: ExponentVector, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.map.entry(exps) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn add_scaled(&mut self, p: &SparsePoly, scale: &Scalar) {
        assert_eq!(p.arity, self.arity, "arity mismatch");
        if scale.is_zero() {
            return;
        }
        for (m, c) in &p.terms {
            self.add_term(m.clone(), c * scale);
        }
    }

    pub fn add_poly(&mut self, p: &SparsePoly) {
        self.add_scaled(p, &Scalar::one())
    }

    /// Add `scale * a * b`.
    pub fn add_product(&mut self, a: &SparsePoly, b: &SparsePoly, scale: &Scalar) {
        assert_eq!(a.arity, self.arity, "arity mismatch");
        assert_eq!(b.arity, self.arity, "arity mismatch");
        if scale.is_zero() {
            return;
        }
        let scale_is_one = scale.is_one();
        for (ma, ca) in &a.terms {
            let ca = if scale_is_one { ca.clone() } else { ca * scale };
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), &ca * cb);
            }
        }
    }

    pub fn finish(self) -> SparsePoly {
        SparsePoly::from_map(self.arity, self.map)
    }
}

impl SparsePoly {
    pub fn zero(arity: usize) -> Self {
        SparsePoly {
            arity,
            terms: Vec::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Scalar::one())
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(arity);
        }
        SparsePoly {
            arity,
            terms: vec![(ExponentVector::zero(arity), c)],
        }
    }

    /// The coordinate function `x_var` (0-based).
    pub fn var(arity: usize, var: usize) -> Self {
        assert!(var < arity, "variable index {var} out of range {arity}");
        SparsePoly {
            arity,
            terms: vec![(ExponentVector::unit(arity, var), Scalar::one())],
        }
    }

    pub fn monomial(exps: ExponentVector, c: Scalar) -> Self {
        let arity = exps.len();
        if c.is_zero() {
            return Self::zero(arity);
        }
        SparsePoly {
            arity,
            terms: vec![(exps, c)],
        }
    }

    /// Build from arbitrary terms; duplicates are summed and zeros dropped.
    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, Scalar)>,
    {
        let mut acc = TermAccumulator::new(arity);
        for (m, c) in terms {
            assert_eq!(m.len(), arity, "exponent vector length != arity");
            acc.add_term(m, c);
        }
        acc.finish()
    }

    fn from_map(arity: usize, map: FxHashMap<ExponentVector, Scalar>) -> Self {
        let mut terms: Vec<_> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        SparsePoly { arity, terms }
    }

    /// Terms must already be sorted descending, distinct, and nonzero.
    fn from_sorted(arity: usize, terms: Vec<(ExponentVector, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        SparsePoly { arity, terms }
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.arity
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (descending graded-lex) order.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&ExponentVector, &Scalar)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn coefficient(&self, exps: &ExponentVector) -> Scalar {
        match self.terms.binary_search_by(|(m, _)| exps.cmp(m)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Scalar::zero(),
        }
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&ExponentVector::zero(self.arity))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.degree() == 0)
    }

    /// Largest total degree, `None` for zero.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Smallest total degree, `None` for zero.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    /// Leading term under graded-lex order.
    pub fn leading_term(&self) -> Option<(&ExponentVector, &Scalar)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    fn check_arity(&self, other: &SparsePoly) {
        assert_eq!(
            self.arity, other.arity,
            "arity mismatch: {} vs {}",
            self.arity, other.arity
        );
    }

    fn merge(&self, other: &SparsePoly, negate_other: bool) -> SparsePoly {
        self.check_arity(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (m, c) = b.next().unwrap();
                    out.push((m.clone(), if negate_other { -c } else { c.clone() }));
                }
                (Some((ma, _)), Some((mb, _))) => match ma.cmp(mb) {
                    std::cmp::Ordering::Greater => out.push(a.next().unwrap().clone()),
                    std::cmp::Ordering::Less => {
                        let (m, c) = b.next().unwrap();
                        out.push((m.clone(), if negate_other { -c } else { c.clone() }));
                    }
                    std::cmp::Ordering::Equal => {
                        let (m, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = if negate_other { ca - cb } else { ca + cb };
                        if !c.is_zero() {
                            out.push((m.clone(), c));
                        }
                    }
                },
            }
        }
        SparsePoly::from_sorted(self.arity, out)
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.merge(other, true)
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly::from_sorted(
            self.arity,
            self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        )
    }

    pub fn scale(&self, s: &Scalar) -> SparsePoly {
        if s.is_zero() {
            return SparsePoly::zero(self.arity);
        }
        SparsePoly::from_sorted(
            self.arity,
            self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        )
    }

    /// Multiply by a single term; monomial orders are preserved so no resort.
    pub fn mul_term(&self, exps: &ExponentVector, c: &Scalar) -> SparsePoly {
        assert_eq!(exps.len(), self.arity, "arity mismatch");
        if c.is_zero() {
            return SparsePoly::zero(self.arity);
        }
        SparsePoly::from_sorted(
            self.arity,
            self.terms
                .iter()
                .map(|(m, k)| (m.mul(exps), k * c))
                .collect(),
        )
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        self.check_arity(other);
        if self.is_zero() || other.is_zero() {
            return SparsePoly::zero(self.arity);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc =
            TermAccumulator::with_capacity(self.arity, self.terms.len() * other.terms.len());
        acc.add_product(self, other, &Scalar::one());
        acc.finish()
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut result = SparsePoly::one(self.arity);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder. Uses leading-term reduction under graded-lex order.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Option<SparsePoly> {
        self.check_arity(divisor);
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if divisor.terms.len() == 1 {
            let (dm, dc) = &divisor.terms[0];
            let inv = dc.recip();
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                out.push((m.div(dm)?, c * &inv));
            }
            return Some(SparsePoly::from_sorted(self.arity, out));
        }
        let (dm, dc) = divisor.leading_term().unwrap();
        let dc_inv = dc.recip();
        let mut rem = self.clone();
        let mut quotient = TermAccumulator::new(self.arity);
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(dm)?;
            let qc = rc * &dc_inv;
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quotient.add_term(qm, qc);
        }
        Some(quotient.finish())
    }

    /// Weighted degree of every term, `None` for zero if all terms agree,
    /// i.e. `Some(d)` iff the polynomial is `w`-homogeneous of degree `d`.
    pub fn homogeneous_degree(&self, weights: &WeightVector) -> Option<u64> {
        assert_eq!(weights.len(), self.arity, "weight vector length != arity");
        let mut it = self.terms.iter().map(|(m, _)| m.weighted_degree(weights));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, weights: &WeightVector, degree: u64) -> bool {
        assert_eq!(weights.len(), self.arity, "weight vector length != arity");
        self.terms
            .iter()
            .all(|(m, _)| m.weighted_degree(weights) == degree)
    }

    /// Split into `w`-homogeneous components, in increasing degree. The
    /// first entry is the initial component. Zero gives an empty list.
    pub fn weighted_components(&self, weights: &WeightVector) -> Vec<(u64, SparsePoly)> {
        assert_eq!(weights.len(), self.arity, "weight vector length != arity");
        let mut buckets: std::collections::BTreeMap<u64, Vec<(ExponentVector, Scalar)>> =
            Default::default();
        // Walking terms in canonical order keeps each bucket sorted.
        for (m, c) in &self.terms {
            buckets
                .entry(m.weighted_degree(weights))
                .or_default()
                .push((m.clone(), c.clone()));
        }
        buckets
            .into_iter()
            .map(|(d, terms)| (d, SparsePoly::from_sorted(self.arity, terms)))
            .collect()
    }

    /// Lowest standard-degree homogeneous component and its degree.
    pub fn initial_component(&self) -> Option<(u32, SparsePoly)> {
        let d = self.min_degree()?;
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .cloned()
            .collect();
        Some((d, SparsePoly::from_sorted(self.arity, terms)))
    }

    /// Homogeneous component of standard degree `d`.
    pub fn component_of_degree(&self, d: u32) -> SparsePoly {
        let terms: Vec<_> = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .cloned()
            .collect();
        SparsePoly::from_sorted(self.arity, terms)
    }

    pub fn partial_derivative(&self, var: usize) -> SparsePoly {
        assert!(var < self.arity, "variable index {var} out of range");
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.get(var);
            if e > 0 {
                terms.push((m.decrement(var), c * Scalar::from_integer(e.into())));
            }
        }
        // Differentiation is not order preserving across different exponents
        // of `var`, so renormalize.
        SparsePoly::from_terms(self.arity, terms)
    }

    /// Ring homomorphism sending variable `i` to `images[i]`.
    pub fn substitute(&self, images: &[SparsePoly]) -> SparsePoly {
        assert_eq!(images.len(), self.arity, "one image per variable required");
        let target = images.first().map(|p| p.arity).unwrap_or(0);
        assert!(
            images.iter().all(|p| p.arity == target),
            "images must share a target arity"
        );
        if self.arity == 0 {
            return SparsePoly::constant(target, self.constant_term());
        }
        let mut powers: Vec<Vec<SparsePoly>> = images
            .iter()
            .map(|p| vec![SparsePoly::one(target), p.clone()])
            .collect();
        let mut acc = TermAccumulator::new(target);
        for (m, c) in &self.terms {
            let mut prod = SparsePoly::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[v];
                while table.len() <= e as usize {
                    let next = table.last().unwrap().mul(&table[1]);
                    table.push(next);
                }
                prod = prod.mul(&table[e as usize]);
                if prod.is_zero() {
                    break;
                }
            }
            acc.add_poly(&prod);
        }
        acc.finish()
    }

    /// Exact value at a rational point.
    pub fn evaluate(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.arity, "point length != arity");
        let mut powers: Vec<Vec<Scalar>> = point
            .iter()
            .map(|x| vec![Scalar::one(), x.clone()])
            .collect();
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let table = &mut powers[v];
                while table.len() <= e as usize {
                    let next = table.last().unwrap() * &point[v];
                    table.push(next);
                }
                val *= &table[e as usize];
            }
            total += val;
        }
        total
    }

    /// Value in F_p at a point with coordinates already reduced mod `p`.
    pub fn evaluate_mod(&self, point: &[u64], p: u64) -> Result<u64, DenominatorNotInvertible> {
        self.reduce_mod(p).map(|r| r.evaluate(point))
    }

    /// Image in F_p[x].
    pub fn reduce_mod(&self, p: u64) -> Result<ModPoly, DenominatorNotInvertible> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let r = modular::reduce_scalar(c, p)?;
            if r != 0 {
                terms.push((m.exponents().to_vec(), r));
            }
        }
        Ok(ModPoly {
            arity: self.arity,
            prime: p,
            terms,
        })
    }

    /// Re-embed into a ring with `new_arity >= arity` variables, keeping the
    /// first `arity` variables in place.
    pub fn extend_arity(&self, new_arity: usize) -> SparsePoly {
        assert!(new_arity >= self.arity);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e: Vec<Exp> = m.exponents().to_vec();
                e.resize(new_arity, 0);
                (ExponentVector::new(e), c.clone())
            })
            .collect();
        // Padding with trailing zeros keeps the relative order.
        SparsePoly::from_sorted(new_arity, terms)
    }
}

/// Polynomial reduced modulo a prime, for fast repeated evaluation.
#[derive(Clone, Debug)]
pub struct ModPoly {
    arity: usize,
    prime: u64,
    terms: Vec<(Vec<Exp>, u64)>,
}

impl ModPoly {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn evaluate(&self, point: &[u64]) -> u64 {
        assert_eq!(point.len(), self.arity, "point length != arity");
        let p = self.prime;
        let mut total = 0u64;
        for (exps, c) in &self.terms {
            let mut val = *c;
            for (v, &e) in exps.iter().enumerate() {
                if e != 0 {
                    val = modular::mul_mod(val, modular::pow_mod(point[v], e as u64, p), p);
                }
            }
            total = modular::add_mod(total, val, p);
        }
        total
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("x"))
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        SparsePoly::add(self, rhs)
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        SparsePoly::sub(self, rhs)
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        SparsePoly::mul(self, rhs)
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        SparsePoly::neg(self)
    }
}
