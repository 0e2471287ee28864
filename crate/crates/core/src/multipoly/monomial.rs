use std::cmp::Ordering;
use std::fmt;

/// Exponent of a single variable.
pub type Exp = u16;

/// Exponent vector of a monomial, one slot per ring variable.
///
/// The total degree is cached so that the derived ordering is graded
/// lexicographic: first by total degree, then lexicographically by exponents.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    degree: u32,
    exps: Box<[Exp]>,
}

impl ExponentVector {
    pub fn new(exps: Vec<Exp>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        ExponentVector {
            degree,
            exps: exps.into_boxed_slice(),
        }
    }

    pub fn zero(arity: usize) -> Self {
        ExponentVector {
            degree: 0,
            exps: vec![0; arity].into_boxed_slice(),
        }
    }

    /// The monomial `x_var`.
    pub fn unit(arity: usize, var: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[var] = 1;
        ExponentVector {
            degree: 1,
            exps: exps.into_boxed_slice(),
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponents(&self) -> &[Exp] {
        &self.exps
    }

    #[inline]
    pub fn get(&self, var: usize) -> Exp {
        self.exps[var]
    }

    /// Componentwise sum (monomial product).
    pub fn mul(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        let exps: Box<[Exp]> = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
            .collect();
        ExponentVector {
            degree: self.degree + other.degree,
            exps,
        }
    }

    /// Monomial quotient `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &ExponentVector) -> Option<ExponentVector> {
        let mut exps = Vec::with_capacity(self.len());
        for (a, b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(ExponentVector {
            degree: self.degree - other.degree,
            exps: exps.into_boxed_slice(),
        })
    }

    /// Lower the exponent of `var` by one. Panics if it is zero.
    pub(crate) fn decrement(&self, var: usize) -> ExponentVector {
        let mut exps = self.exps.clone();
        exps[var] -= 1;
        ExponentVector {
            degree: self.degree - 1,
            exps,
        }
    }

    /// `x^a * x_to / x_from`; requires `a_from > 0`.
    pub fn shift(&self, from: usize, to: usize) -> ExponentVector {
        let mut exps = self.exps.clone();
        exps[from] -= 1;
        exps[to] += 1;
        ExponentVector {
            degree: self.degree,
            exps,
        }
    }

    /// Degree under a positive integer weighting.
    pub fn weighted_degree(&self, weights: &WeightVector) -> u64 {
        self.exps
            .iter()
            .zip(weights.as_slice())
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &self.exps[..])
    }
}

/// Positive integer weights, one per variable. All-ones is the standard grading.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    /// Panics if some weight is zero.
    pub fn new(weights: Vec<u32>) -> Self {
        assert!(
            weights.iter().all(|&w| w >= 1),
            "weights must be positive integers"
        );
        WeightVector(weights)
    }

    pub fn standard(arity: usize) -> Self {
        WeightVector(vec![1; arity])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}
