//! Algebraic independence of initial components and the goodness verdict.
//!
//! For homogeneous invariants `q_1..q_l`, the initial components satisfy
//! `sum_i deg ie(q_i) <= (dim g^e + l)/2`, with equality exactly when they are
//! algebraically independent. Equality is cross-checked against the generic
//! rank of their Jacobian matrix.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Deadline;
use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::multipoly::{int, rank_mod, ExponentVector, ModPoly, Scalar, SparsePoly, PRIMES};
use crate::slodowy::{degree_compositions, lowest_term, power_product, SliceRestriction};

/// Default number of modular Jacobian trials.
pub const DEFAULT_TRIALS: u32 = 8;
/// Default number of perturbation trials.
pub const DEFAULT_SEARCH_BUDGET: u32 = 32;

/// Outcome of the degree-sum criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSum {
    pub degree_sum: u32,
    pub bound: u32,
    /// `bound - degree_sum`, zero exactly at equality.
    pub gap: u32,
}

impl DegreeSum {
    pub fn equality(&self) -> bool {
        self.gap == 0
    }
}

/// `sum of degrees` against `(dim_ge + l)/2`.
pub fn degree_sum_criterion(degrees: &[u32], dim_ge: usize, rank: usize) -> Result<DegreeSum> {
    if degrees.len() != rank {
        return Err(Error::Contract(format!(
            "{} degrees given for rank {rank}",
            degrees.len()
        )));
    }
    if degrees.contains(&0) {
        return Err(Error::Contract("initial degrees must be at least 1".into()));
    }
    if (dim_ge + rank) % 2 == 1 {
        return Err(Error::Structural(format!(
            "dim g^e + rank = {dim_ge} + {rank} is odd"
        )));
    }
    let bound = ((dim_ge + rank) / 2) as u32;
    let degree_sum: u32 = degrees.iter().sum();
    if degree_sum > bound {
        return Err(Error::Structural(format!(
            "degree sum {degree_sum} exceeds (dim g^e + rank)/2 = {bound}"
        )));
    }
    Ok(DegreeSum {
        degree_sum,
        bound,
        gap: bound - degree_sum,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RankMethod {
    ModularProbabilistic,
    ExactSymbolic,
}

impl fmt::Display for RankMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RankMethod::ModularProbabilistic => "modular-probabilistic",
            RankMethod::ExactSymbolic => "exact-symbolic",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianRank {
    pub rank: usize,
    pub method: RankMethod,
    pub trials: u32,
}

fn jacobian(polys: &[SparsePoly], arity: usize) -> Vec<Vec<SparsePoly>> {
    polys
        .iter()
        .map(|p| (0..arity).map(|v| p.partial_derivative(v)).collect())
        .collect()
}

/// Largest rank of the Jacobian over `trials` random points modulo the fixed
/// primes. A prime dividing a denominator is skipped.
pub fn modular_jacobian_rank(polys: &[SparsePoly], arity: usize, trials: u32, seed: u64) -> usize {
    let jac = jacobian(polys, arity);
    let mut reduced: HashMap<u64, Option<Vec<Vec<ModPoly>>>> = HashMap::new();
    let mut plan = Vec::new();
    let mut prime_idx = 0usize;
    for trial in 0..trials {
        // one prime per trial, skipping those that hit a denominator
        let mut found = None;
        for _ in 0..PRIMES.len() {
            let p = PRIMES[prime_idx % PRIMES.len()];
            prime_idx += 1;
            let entry = reduced.entry(p).or_insert_with(|| {
                jac.iter()
                    .map(|row| {
                        row.iter()
                            .map(|d| d.reduce_mod(p).ok())
                            .collect::<Option<Vec<_>>>()
                    })
                    .collect::<Option<Vec<_>>>()
            });
            if entry.is_some() {
                found = Some(p);
                break;
            }
        }
        match found {
            Some(p) => plan.push((trial, p)),
            None => return 0,
        }
    }
    plan.par_iter()
        .map(|&(trial, p)| {
            let mods = reduced[&p].as_ref().expect("prime checked");
            let mut rng = ChaCha8Rng::seed_from_u64(
                seed ^ (0x9e37_79b9_7f4a_7c15u64.wrapping_mul(trial as u64 + 1)),
            );
            let point: Vec<u64> = (0..arity).map(|_| rng.gen_range(1..p)).collect();
            let m: Vec<Vec<u64>> = mods
                .iter()
                .map(|row| row.iter().map(|d| d.evaluate(&point)).collect())
                .collect();
            rank_mod(m, p)
        })
        .max()
        .unwrap_or(0)
}

/// Rank of the Jacobian over the rational function field, by fraction-free
/// elimination with full pivoting.
pub fn exact_jacobian_rank(
    polys: &[SparsePoly],
    arity: usize,
    deadline: &Deadline,
) -> Result<usize> {
    bareiss_rank(jacobian(polys, arity), deadline)
}

/// Fraction-free rank of a polynomial matrix.
pub fn bareiss_rank(mut m: Vec<Vec<SparsePoly>>, deadline: &Deadline) -> Result<usize> {
    let rows = m.len();
    if rows == 0 {
        return Ok(0);
    }
    let cols = m[0].len();
    let arity = m[0].first().map(|p| p.arity()).unwrap_or(0);
    let mut prev = SparsePoly::one(arity);
    let mut rank = 0;
    while rank < rows.min(cols) {
        deadline.check()?;
        let k = rank;
        // sparsest nonzero pivot in the trailing block
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, row) in m.iter().enumerate().skip(k) {
            for (j, p) in row.iter().enumerate().skip(k) {
                if !p.is_zero() && best.is_none_or(|(_, _, len)| p.len() < len) {
                    best = Some((i, j, p.len()));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        let pivot = m[k][k].clone();
        let pivot_row = m[k].clone();
        let updated: Vec<(usize, Vec<SparsePoly>)> = (k + 1..rows)
            .into_par_iter()
            .map(|i| {
                let row = &m[i];
                let mut new_row = row.clone();
                for j in k + 1..cols {
                    let num = pivot.mul(&row[j]).sub(&row[k].mul(&pivot_row[j]));
                    new_row[j] = num.div_exact(&prev).ok_or_else(|| {
                        Error::Structural("fraction-free elimination lost exactness".into())
                    })?;
                }
                new_row[k] = SparsePoly::zero(arity);
                Ok((i, new_row))
            })
            .collect::<Result<_>>()?;
        for (i, r) in updated {
            m[i] = r;
        }
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

/// Generic Jacobian rank: modular trials, then exact elimination when they
/// fall short of full rank.
pub fn jacobian_independence(
    polys: &[SparsePoly],
    arity: usize,
    trials: u32,
    seed: u64,
    deadline: &Deadline,
) -> Result<JacobianRank> {
    if polys.iter().any(|p| p.is_zero()) {
        return Err(Error::Contract(
            "Jacobian test needs nonzero polynomials".into(),
        ));
    }
    let rank = modular_jacobian_rank(polys, arity, trials, seed);
    if rank == polys.len() {
        return Ok(JacobianRank {
            rank,
            method: RankMethod::ModularProbabilistic,
            trials,
        });
    }
    let exact = exact_jacobian_rank(polys, arity, deadline)?;
    if exact < rank {
        return Err(Error::Structural(format!(
            "modular Jacobian rank {rank} exceeds exact rank {exact}"
        )));
    }
    Ok(JacobianRank {
        rank: exact,
        method: RankMethod::ExactSymbolic,
        trials,
    })
}

/// Degree-sum criterion and Jacobian rank, required to agree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndependenceResult {
    pub degree_sum: u32,
    pub bound: u32,
    pub gap: u32,
    pub jacobian_rank: usize,
    pub rank_method: RankMethod,
    pub trials: u32,
}

impl IndependenceResult {
    pub fn independent(&self) -> bool {
        self.gap == 0
    }
}

pub fn independence(
    initials: &[SparsePoly],
    dim_ge: usize,
    rank: usize,
    trials: u32,
    seed: u64,
    deadline: &Deadline,
) -> Result<IndependenceResult> {
    let degrees: Vec<u32> = initials
        .iter()
        .map(|p| {
            p.total_degree()
                .ok_or_else(|| Error::Contract("initial component is zero".into()))
        })
        .collect::<Result<_>>()?;
    let ds = degree_sum_criterion(&degrees, dim_ge, rank)?;
    let jr = jacobian_independence(initials, dim_ge, trials, seed, deadline)?;
    if ds.equality() != (jr.rank == rank) {
        return Err(Error::Structural(format!(
            "degree sum {} vs bound {} disagrees with Jacobian rank {} of {rank}",
            ds.degree_sum, ds.bound, jr.rank
        )));
    }
    Ok(IndependenceResult {
        degree_sum: ds.degree_sum,
        bound: ds.bound,
        gap: ds.gap,
        jacobian_rank: jr.rank,
        rank_method: jr.method,
        trials: jr.trials,
    })
}

/// For each even Slodowy degree `2D <= cap`, the monomials in the initials of
/// Slodowy degree `2D` are linearly independent, so their count matches the
/// coefficient of `T^(2D)` in `prod_i 1/(1 - T^(2 d_i))`.
pub fn hilbert_truncation_check(initials: &[SparsePoly], degrees: &[u32], cap: u32) -> bool {
    if initials.is_empty() {
        return true;
    }
    assert_eq!(initials.len(), degrees.len());
    let arity = initials[0].arity();
    (1..=cap / 2).all(|total| {
        let monos: Vec<SparsePoly> = degree_compositions(degrees, total)
            .iter()
            .map(|a| power_product(initials, a, arity))
            .collect();
        span_rank(&monos) == monos.len()
    })
}

/// Dimension of the linear span of `polys`.
pub fn span_rank(polys: &[SparsePoly]) -> usize {
    let mut index: HashMap<&ExponentVector, usize> = HashMap::new();
    for p in polys {
        for (e, _) in p.terms() {
            let n = index.len();
            index.entry(e).or_insert(n);
        }
    }
    let cols = index.len();
    // modular rank is a lower bound; full modular rank is exact
    let p = PRIMES[0];
    let modular: Option<Vec<Vec<u64>>> = polys
        .iter()
        .map(|poly| {
            let mut row = vec![0u64; cols];
            for (e, c) in poly.terms() {
                row[index[e]] = crate::multipoly::reduce_scalar(c, p).ok()?;
            }
            Some(row)
        })
        .collect();
    if let Some(m) = modular {
        let r = rank_mod(m, p);
        if r == polys.len() {
            return r;
        }
    }
    let m = RationalMatrix::from_fn(polys.len(), cols.max(1), |_, _| Scalar::zero());
    let mut m = m;
    for (i, poly) in polys.iter().enumerate() {
        for (e, c) in poly.terms() {
            m[(i, index[e])] = c.clone();
        }
    }
    m.rank()
}

/// A member of a generating sequence: `sum_k c_k q^(a_k)` over the standard
/// generators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Combination {
    pub source_degree: u32,
    pub terms: Vec<CombinationTerm>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CombinationTerm {
    #[serde(with = "scalar_text")]
    pub coefficient: Scalar,
    pub exponents: Vec<u32>,
}

impl Combination {
    pub fn standard(index: usize, rank: usize, degree: u32) -> Self {
        let mut exponents = vec![0; rank];
        exponents[index] = 1;
        Combination {
            source_degree: degree,
            terms: vec![CombinationTerm {
                coefficient: Scalar::one(),
                exponents,
            }],
        }
    }

    /// Text such as `1/1*q3 + -2/1*q1^2`, generators named `q1..ql`.
    pub fn to_text(&self) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let mut s = format!("{}/{}", t.coefficient.numer(), t.coefficient.denom());
                for (i, &a) in t.exponents.iter().enumerate() {
                    match a {
                        0 => {}
                        1 => s.push_str(&format!("*q{}", i + 1)),
                        _ => s.push_str(&format!("*q{}^{a}", i + 1)),
                    }
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

/// A candidate generating sequence and the slice data of its members.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub combinations: Vec<Combination>,
    pub kappas: Vec<SparsePoly>,
    pub initials: Vec<SparsePoly>,
    pub initial_degrees: Vec<u32>,
}

/// Products of restricted generators, cached by exponent vector.
struct ProductCache<'a> {
    kappas: &'a [SparsePoly],
    arity: usize,
    cache: HashMap<Vec<u32>, SparsePoly>,
}

impl<'a> ProductCache<'a> {
    fn new(kappas: &'a [SparsePoly], arity: usize) -> Self {
        ProductCache {
            kappas,
            arity,
            cache: HashMap::new(),
        }
    }

    fn prefetch(&mut self, alphas: &[Vec<u32>]) {
        let missing: Vec<&Vec<u32>> = alphas
            .iter()
            .filter(|a| !self.cache.contains_key(*a))
            .collect();
        let computed: Vec<(Vec<u32>, SparsePoly)> = missing
            .par_iter()
            .map(|a| ((*a).clone(), power_product(self.kappas, a, self.arity)))
            .collect();
        self.cache.extend(computed);
    }

    fn get(&self, alpha: &[u32]) -> &SparsePoly {
        &self.cache[alpha]
    }
}

/// The admissible corrections of a generator of degree `d` in position `i`:
/// products of strictly lower-degree generators of total degree `d`, and
/// same-degree generators of smaller index.
fn correction_family(degrees: &[u32], i: usize) -> Vec<Vec<u32>> {
    let d = degrees[i];
    let l = degrees.len();
    let mut out: Vec<Vec<u32>> = degree_compositions(degrees, d)
        .into_iter()
        .filter(|a| (0..l).all(|j| a[j] == 0 || degrees[j] < d))
        .collect();
    for j in 0..i {
        if degrees[j] == d {
            let mut a = vec![0; l];
            a[j] = 1;
            out.push(a);
        }
    }
    out
}

/// Echelon rows tracked with the combination that produced them.
struct TrackedEchelon {
    rows: Vec<(SparsePoly, Vec<Scalar>)>,
}

impl TrackedEchelon {
    fn new() -> Self {
        TrackedEchelon { rows: Vec::new() }
    }

    fn reduce(&self, v: &mut SparsePoly, combo: &mut [Scalar]) {
        for (r, rc) in &self.rows {
            let (pe, _) = lowest_term(r).expect("nonzero row");
            let c = v.coefficient(pe);
            if !c.is_zero() {
                *v = v.sub(&r.scale(&c));
                for (x, y) in combo.iter_mut().zip(rc) {
                    *x -= &c * y;
                }
            }
        }
    }

    /// Inserts `v` after reduction; returns the new row index, or `None` if
    /// `v` lies in the span.
    fn insert(&mut self, mut v: SparsePoly, mut combo: Vec<Scalar>) -> Option<usize> {
        self.reduce(&mut v, &mut combo);
        if v.is_zero() {
            return None;
        }
        let (pe, c) = lowest_term(&v).expect("nonzero");
        let pe = pe.clone();
        let inv = Scalar::one() / c;
        let v = v.scale(&inv);
        let combo: Vec<Scalar> = combo.iter().map(|x| x * &inv).collect();
        for (r, rc) in self.rows.iter_mut() {
            let c = r.coefficient(&pe);
            if !c.is_zero() {
                *r = r.sub(&v.scale(&c));
                for (x, y) in rc.iter_mut().zip(&combo) {
                    *x -= &c * y;
                }
            }
        }
        self.rows.push((v, combo));
        Some(self.rows.len() - 1)
    }
}

fn candidate_from(combinations: Vec<Combination>, kappas: Vec<SparsePoly>) -> Result<Candidate> {
    let mut initials = Vec::with_capacity(kappas.len());
    let mut initial_degrees = Vec::with_capacity(kappas.len());
    for k in &kappas {
        let (d, init) = k
            .initial_component()
            .ok_or_else(|| Error::Structural("candidate generator restricts to zero".into()))?;
        initials.push(init);
        initial_degrees.push(d);
    }
    Ok(Candidate {
        combinations,
        kappas,
        initials,
        initial_degrees,
    })
}

/// The generating sequence with the largest initial degrees: per degree,
/// generators are reduced modulo the span of products of lower-degree
/// generators and mixed among themselves so that all initial components are
/// linearly independent of each other and of that span.
pub fn maximal_sequence(restrictions: &[SliceRestriction], arity: usize) -> Result<Candidate> {
    let l = restrictions.len();
    let degrees: Vec<u32> = restrictions.iter().map(|r| r.source_degree).collect();
    let kappas: Vec<SparsePoly> = restrictions.iter().map(|r| r.kappa.clone()).collect();
    let mut cache = ProductCache::new(&kappas, arity);
    let mut combos: Vec<Option<Combination>> = vec![None; l];
    let mut out_kappas: Vec<Option<SparsePoly>> = vec![None; l];

    let mut distinct = degrees.clone();
    distinct.dedup();
    for &d in &distinct {
        let block: Vec<usize> = (0..l).filter(|&i| degrees[i] == d).collect();
        let lower: Vec<Vec<u32>> = degree_compositions(&degrees, d)
            .into_iter()
            .filter(|a| (0..l).all(|j| a[j] == 0 || degrees[j] < d))
            .collect();
        cache.prefetch(&lower);
        let width = lower.len() + block.len();
        let mut labels: Vec<Vec<u32>> = lower.clone();
        for &i in &block {
            let mut a = vec![0; l];
            a[i] = 1;
            labels.push(a);
        }
        let unit = |k: usize| {
            let mut c = vec![Scalar::zero(); width];
            c[k] = Scalar::one();
            c
        };
        let mut ech = TrackedEchelon::new();
        for (k, a) in lower.iter().enumerate() {
            ech.insert(cache.get(a).clone(), unit(k));
        }
        let base = ech.rows.len();
        let mut block_rows = Vec::new();
        for (b, &i) in block.iter().enumerate() {
            match ech.insert(kappas[i].clone(), unit(lower.len() + b)) {
                Some(idx) => block_rows.push(idx),
                None => {
                    return Err(Error::Structural(format!(
                        "restriction of generator q{} is dependent on other invariants",
                        i + 1
                    )))
                }
            }
        }
        debug_assert!(block_rows.iter().all(|&r| r >= base));
        // rows inserted for the block, assigned to block positions in order
        for (&i, &r) in block.iter().zip(&block_rows) {
            let (poly, combo) = &ech.rows[r];
            // unit coefficient on the first block generator involved
            let lead = combo[lower.len()..]
                .iter()
                .find(|c| !c.is_zero())
                .expect("block row involves a block generator");
            let inv = Scalar::one() / lead;
            let poly = poly.scale(&inv);
            let combo: Vec<Scalar> = combo.iter().map(|c| c * &inv).collect();
            let mut terms: Vec<CombinationTerm> = combo
                .iter()
                .zip(&labels)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, a)| CombinationTerm {
                    coefficient: c.clone(),
                    exponents: a.clone(),
                })
                .collect();
            // single generators first, then products
            terms.sort_by_key(|t| t.exponents.iter().sum::<u32>() != 1);
            combos[i] = Some(Combination {
                source_degree: d,
                terms,
            });
            out_kappas[i] = Some(poly.clone());
        }
    }
    candidate_from(
        combos
            .into_iter()
            .map(|c| c.expect("every position filled"))
            .collect(),
        out_kappas
            .into_iter()
            .map(|k| k.expect("every position filled"))
            .collect(),
    )
}

fn random_nonzero(rng: &mut ChaCha8Rng) -> i64 {
    let v = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// `q_i + sum_a c_a q^a` over the correction family with random coefficients
/// in `{-3..3} \ {0}`.
fn random_candidate(
    restrictions: &[SliceRestriction],
    cache: &ProductCache<'_>,
    families: &[Vec<Vec<u32>>],
    rng: &mut ChaCha8Rng,
) -> Result<Candidate> {
    let l = restrictions.len();
    let mut combos = Vec::with_capacity(l);
    let mut kappas = Vec::with_capacity(l);
    for (i, r) in restrictions.iter().enumerate() {
        let mut combo = Combination::standard(i, l, r.source_degree);
        let mut kappa = r.kappa.clone();
        for a in &families[i] {
            let c = int(random_nonzero(rng));
            kappa = kappa.add(&cache.get(a).scale(&c));
            combo.terms.push(CombinationTerm {
                coefficient: c,
                exponents: a.clone(),
            });
        }
        combos.push(combo);
        kappas.push(kappa);
    }
    candidate_from(combos, kappas)
}

/// Result of a perturbation search.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub candidate: Candidate,
    /// 1-based trial that produced the candidate.
    pub trial: u32,
}

/// Searches other generating sequences for one whose initial degrees reach
/// the bound. Trial 1 is the maximal sequence; later trials use random
/// corrections. Returns the first success within `budget` trials.
pub fn perturbation_search(
    restrictions: &[SliceRestriction],
    arity: usize,
    dim_ge: usize,
    budget: u32,
    seed: u64,
    deadline: &Deadline,
) -> Result<Option<SearchOutcome>> {
    if budget == 0 || restrictions.is_empty() {
        return Ok(None);
    }
    let l = restrictions.len();
    let degrees: Vec<u32> = restrictions.iter().map(|r| r.source_degree).collect();
    let standard_degrees: Vec<u32> = restrictions.iter().map(|r| r.initial_degree).collect();
    if degree_sum_criterion(&standard_degrees, dim_ge, l)?.equality() {
        let combinations = (0..l)
            .map(|i| Combination::standard(i, l, degrees[i]))
            .collect();
        let kappas = restrictions.iter().map(|r| r.kappa.clone()).collect();
        return Ok(Some(SearchOutcome {
            candidate: candidate_from(combinations, kappas)?,
            trial: 0,
        }));
    }
    let reaches = |c: &Candidate| -> Result<bool> {
        Ok(degree_sum_criterion(&c.initial_degrees, dim_ge, l)?.equality())
    };
    deadline.check()?;
    let best = maximal_sequence(restrictions, arity)?;
    if reaches(&best)? {
        return Ok(Some(SearchOutcome {
            candidate: best,
            trial: 1,
        }));
    }
    let kappas: Vec<SparsePoly> = restrictions.iter().map(|r| r.kappa.clone()).collect();
    let families: Vec<Vec<Vec<u32>>> = (0..l).map(|i| correction_family(&degrees, i)).collect();
    let mut cache = ProductCache::new(&kappas, arity);
    let all: Vec<Vec<u32>> = families.iter().flatten().cloned().collect();
    cache.prefetch(&all);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 2..=budget {
        deadline.check()?;
        let cand = random_candidate(restrictions, &cache, &families, &mut rng)?;
        if reaches(&cand)? {
            return Ok(Some(SearchOutcome {
                candidate: cand,
                trial,
            }));
        }
    }
    Ok(None)
}

/// Serde adapter for scalars as `num/den` text.
pub mod scalar_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::multipoly::Scalar;

    pub fn serialize<S: Serializer>(c: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", c.numer(), c.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let text = String::deserialize(d)?;
        let (n, den) = text
            .split_once('/')
            .ok_or_else(|| serde::de::Error::custom(format!("bad rational {text:?}")))?;
        let n = n.parse().map_err(serde::de::Error::custom)?;
        let den: num_bigint::BigInt = den.parse().map_err(serde::de::Error::custom)?;
        if den == 0.into() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Scalar::new(n, den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(arity: usize, i: usize) -> SparsePoly {
        SparsePoly::var(arity, i)
    }

    #[test]
    fn degree_sum_examples() {
        let ds = degree_sum_criterion(&[1], 1, 1).unwrap();
        assert_eq!((ds.degree_sum, ds.bound, ds.equality()), (1, 1, true));
        let ds = degree_sum_criterion(&[2, 3], 8, 2).unwrap();
        assert_eq!((ds.bound, ds.equality()), (5, true));
        let ds = degree_sum_criterion(&[1, 2], 8, 2).unwrap();
        assert_eq!(ds.gap, 2);
        assert!(matches!(
            degree_sum_criterion(&[1], 2, 1),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            degree_sum_criterion(&[3, 3], 8, 2),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn jacobian_examples() {
        let d = Deadline::unlimited();
        let r = jacobian_independence(&[t(2, 0), t(2, 1)], 2, 8, 1, &d).unwrap();
        assert_eq!((r.rank, r.method), (2, RankMethod::ModularProbabilistic));
        let r = jacobian_independence(&[t(1, 0), t(1, 0).pow(2)], 1, 8, 1, &d).unwrap();
        assert_eq!((r.rank, r.method), (1, RankMethod::ExactSymbolic));
        let s = t(2, 0).add(&t(2, 1));
        let p = t(2, 0).mul(&t(2, 1));
        let q = t(2, 0).pow(2).add(&t(2, 1).pow(2));
        let r = jacobian_independence(&[s, p, q], 2, 8, 1, &d).unwrap();
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn exact_rank_oracle() {
        // hand-computed 3x2 Jacobian of (t1+t2, t1 t2, t1^2+t2^2) has rank 2
        let s = t(2, 0).add(&t(2, 1));
        let p = t(2, 0).mul(&t(2, 1));
        let q = t(2, 0).pow(2).add(&t(2, 1).pow(2));
        assert_eq!(
            exact_jacobian_rank(&[s.clone(), p.clone(), q], 2, &Deadline::unlimited()).unwrap(),
            2
        );
        assert_eq!(
            exact_jacobian_rank(&[s, p], 2, &Deadline::unlimited()).unwrap(),
            2
        );
        let a = t(3, 0).mul(&t(3, 1));
        let b = a.pow(2).add(&a);
        assert_eq!(
            exact_jacobian_rank(&[a, b], 3, &Deadline::unlimited()).unwrap(),
            1
        );
    }

    #[test]
    fn hilbert_examples() {
        // sl2 regular: one initial -t of Slodowy degree 4
        let init = t(1, 0).neg();
        assert!(hilbert_truncation_check(
            std::slice::from_ref(&init),
            &[2],
            8
        ));
        assert!(hilbert_truncation_check(&[], &[], 8));
        // dependent pair of equal degree fails at 2 * min d
        assert!(!hilbert_truncation_check(
            &[init.clone(), init.scale(&int(2))],
            &[2, 2],
            4
        ));
        assert!(hilbert_truncation_check(&[init.clone(), init], &[2, 2], 3));
        assert!(hilbert_truncation_check(
            &[t(2, 0), t(2, 1).pow(2)],
            &[1, 2],
            12
        ));
    }

    #[test]
    fn combination_text_and_serde() {
        let c = Combination {
            source_degree: 4,
            terms: vec![
                CombinationTerm {
                    coefficient: int(1),
                    exponents: vec![0, 1],
                },
                CombinationTerm {
                    coefficient: Scalar::new((-3).into(), 2.into()),
                    exponents: vec![2, 0],
                },
            ],
        };
        assert_eq!(c.to_text(), "1/1*q2 + -3/2*q1^2");
        let json = serde_json::to_string(&c).unwrap();
        let back: Combination = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn correction_families() {
        // degrees 2,4,6,6: q4 may absorb q3 and the products of degree 6
        let fam = correction_family(&[2, 4, 6, 6], 3);
        assert!(fam.contains(&vec![0, 0, 1, 0]));
        assert!(fam.contains(&vec![3, 0, 0, 0]));
        assert!(fam.contains(&vec![1, 1, 0, 0]));
        assert_eq!(fam.len(), 3);
        assert!(correction_family(&[2, 3], 0).is_empty());
    }

    #[test]
    fn budget_zero_is_empty() {
        assert_eq!(
            perturbation_search(&[], 1, 1, 0, 0, &Deadline::unlimited()).unwrap(),
            None
        );
    }
}
