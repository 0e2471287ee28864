//! Nilpotent orbits of the classical algebras, labeled by partitions, and
//! their standard sl2-triples.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{ClassicalType, Family, FormKind, LieAlgebra};
use crate::linalg::RationalMatrix;
use crate::multipoly::{frac, int, Scalar};

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Parts are sorted into weakly decreasing order; zero parts are rejected.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Validation("partition has no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::Validation("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// All parts equal to one: the zero orbit.
    pub fn trivial(n: usize) -> Self {
        Partition(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.0.iter().filter(|&&p| p == part).count()
    }

    pub fn is_zero_orbit(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }

    pub fn is_very_even(&self) -> bool {
        self.0.iter().all(|&p| p % 2 == 0)
    }

    /// Transposed partition.
    pub fn dual(&self) -> Partition {
        let largest = self.0[0];
        Partition(
            (1..=largest)
                .map(|i| self.0.iter().filter(|&&p| p >= i).count())
                .collect(),
        )
    }

    /// Checks the size and the parity rule of `ty`. The error message names
    /// the violated rule.
    pub fn validate_for(&self, ty: ClassicalType) -> Result<()> {
        let n = ty.defining_size();
        if self.total() != n {
            return Err(Error::Validation(format!(
                "partition {self} has total {}, but type {ty} needs a partition of {n}",
                self.total()
            )));
        }
        let (parity, rule) = match ty.family {
            Family::A => return Ok(()),
            Family::B | Family::D => (0, "every even part must have even multiplicity"),
            Family::C => (1, "every odd part must have even multiplicity"),
        };
        for (&part, count) in self.counts().iter() {
            if part % 2 == parity && count % 2 == 1 {
                return Err(Error::Validation(format!(
                    "partition {self} is not valid for type {}: {rule} \
                     (part {part} occurs {count} time{})",
                    ty.family,
                    if *count == 1 { "" } else { "s" }
                )));
            }
        }
        Ok(())
    }

    fn counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;
    /// Comma separated parts, e.g. `5,3,2,2`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Validation(format!("bad partition part {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Partition {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// A nilpotent orbit label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitLabel {
    pub partition: Partition,
    /// Type D partitions with only even parts label two orbits; one
    /// representative is built.
    pub very_even: bool,
}

/// Valid partitions for `ty`, in reverse lexicographic order.
pub fn enumerate_partitions(ty: ClassicalType) -> Vec<OrbitLabel> {
    let n = ty.defining_size();
    let mut all = Vec::new();
    let mut current = Vec::new();
    partitions_rec(n, n, &mut current, &mut all);
    all.into_iter()
        .filter_map(|parts| {
            let p = Partition(parts);
            p.validate_for(ty).ok()?;
            let very_even = ty.family == Family::D && p.is_very_even();
            Some(OrbitLabel {
                partition: p,
                very_even,
            })
        })
        .collect()
}

fn partitions_rec(rest: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rest == 0 {
        out.push(current.clone());
        return;
    }
    for part in (1..=rest.min(max)).rev() {
        current.push(part);
        partitions_rec(rest - part, part, current, out);
        current.pop();
    }
}

/// `(e, h, f)` with `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Triple {
    pub e: RationalMatrix,
    pub h: RationalMatrix,
    pub f: RationalMatrix,
}

impl Sl2Triple {
    /// Exact check of the three bracket relations.
    pub fn relations_hold(&self) -> bool {
        self.h.commutator(&self.e) == self.e.scale(&int(2))
            && self.h.commutator(&self.f) == self.f.scale(&int(-2))
            && self.e.commutator(&self.f) == self.h
    }
}

/// sl2-weights of the defining representation, largest first.
pub fn defining_weights(partition: &Partition) -> Vec<i64> {
    let mut w: Vec<i64> = partition
        .parts()
        .iter()
        .flat_map(|&k| chain_weights(k))
        .collect();
    w.sort_unstable_by(|a, b| b.cmp(a));
    w
}

fn chain_weights(k: usize) -> impl Iterator<Item = i64> {
    let k = k as i64;
    (0..k).map(move |i| k - 1 - 2 * i)
}

/// Builds `e` from Jordan chains laid out on the anti-diagonal form, takes
/// `h` diagonal with the sl2-weights in decreasing order, and solves for `f`.
pub fn standard_triple(g: &LieAlgebra, partition: &Partition) -> Result<Sl2Triple> {
    let ty = g.classical_type();
    partition.validate_for(ty)?;
    let n = g.defining_size();
    let weights = defining_weights(partition);
    let h = RationalMatrix::diagonal(&weights.iter().map(|&w| int(w)).collect::<Vec<_>>());

    let layout = ChainLayout::new(&weights, g.invariant_form(), ty.form_kind(), partition)?;
    let e = layout.raising_operator(n)?;

    if !g.contains(&e) || !g.contains(&h) {
        return Err(Error::Structural(format!(
            "standard nilpotent for {partition} does not lie in {ty}"
        )));
    }
    if h.commutator(&e) != e.scale(&int(2)) {
        return Err(Error::Structural("[h,e] != 2e".into()));
    }

    let f = solve_lowering(g, &e, &h)?;
    let triple = Sl2Triple { e, h, f };
    if !triple.relations_hold() {
        return Err(Error::Structural(format!(
            "sl2 relations fail for partition {partition}"
        )));
    }
    Ok(triple)
}

/// Solve `[e,f] = h`, `[h,f] = -2f` for `f` in the algebra.
fn solve_lowering(
    g: &LieAlgebra,
    e: &RationalMatrix,
    h: &RationalMatrix,
) -> Result<RationalMatrix> {
    let dim = g.dim();
    let ad_e = g.ad_matrix(e);
    let ad_h = g.ad_matrix(h);
    let h_coords = g.coords(h)?;
    let system = RationalMatrix::from_fn(2 * dim, dim, |i, j| {
        if i < dim {
            ad_e[(i, j)].clone()
        } else if i - dim == j {
            &ad_h[(i - dim, j)] + int(2)
        } else {
            ad_h[(i - dim, j)].clone()
        }
    });
    let rhs: Vec<Scalar> = h_coords
        .into_iter()
        .chain(std::iter::repeat_n(Scalar::zero(), dim))
        .collect();
    let x = system.solve_vec(&rhs).ok_or_else(|| {
        Error::Structural("no f completes the triple; the linear system is inconsistent".into())
    })?;
    Ok(g.from_coords(&x))
}

/// Jordan chains of the defining space, each a list of vectors from the
/// highest weight down.
struct ChainLayout {
    chains: Vec<Vec<Vec<Scalar>>>,
}

impl ChainLayout {
    fn new(
        weights: &[i64],
        form: Option<&RationalMatrix>,
        kind: FormKind,
        partition: &Partition,
    ) -> Result<Self> {
        let n = weights.len();
        let mut blocks: BTreeMap<i64, VecDeque<usize>> = BTreeMap::new();
        for (pos, &w) in weights.iter().enumerate() {
            blocks.entry(w).or_default().push_back(pos);
        }
        // Mirrored weight-0 slots (p, n-1-p) with p in the lower half.
        let mut zero_slots: VecDeque<usize> = blocks
            .get(&0)
            .map(|b| b.iter().copied().filter(|&p| p < n - 1 - p).collect())
            .unwrap_or_default();
        let unit = |p: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[p] = Scalar::one();
            v
        };
        let scaled_unit = |p: usize, s: Scalar| {
            let mut v = vec![Scalar::zero(); n];
            v[p] = s;
            v
        };
        let mut take = |w: i64| -> Result<usize> {
            blocks
                .get_mut(&w)
                .and_then(|b| b.pop_front())
                .ok_or_else(|| Error::Structural(format!("no free position of weight {w}")))
        };

        let Some(form) = form else {
            // Type A: each part is a chain on positions of matching weight.
            let mut chains = Vec::new();
            for &k in partition.parts() {
                let mut chain = Vec::with_capacity(k);
                for w in chain_weights(k) {
                    chain.push(unit(take(w)?));
                }
                chains.push(chain);
            }
            return Ok(ChainLayout { chains });
        };

        let mirror = |p: usize| n - 1 - p;
        let eps = |p: usize| form[(p, n - 1 - p)].clone();
        let symmetric = kind == FormKind::Symmetric;
        let delta = if symmetric { int(1) } else { int(-1) };
        let center = (n % 2 == 1).then_some(n / 2);

        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for &k in partition.parts() {
            *counts.entry(k).or_insert(0) += 1;
        }
        let mut paired = Vec::new();
        let mut single = Vec::new();
        for (&k, &m) in counts.iter().rev() {
            for _ in 0..m / 2 {
                paired.push(k);
            }
            if m % 2 == 1 {
                single.push(k);
            }
        }

        let mut chains = Vec::new();
        for k in paired {
            // b_w = <C(w), C'(-w)> alternates in sign, b_{1-k} = 1.
            let low = 1 - k as i64;
            let b = |w: i64| {
                if ((w - low) / 2) % 2 == 0 {
                    int(1)
                } else {
                    int(-1)
                }
            };
            let mut c: BTreeMap<i64, Vec<Scalar>> = BTreeMap::new();
            let mut c2: BTreeMap<i64, Vec<Scalar>> = BTreeMap::new();
            for w in chain_weights(k).filter(|&w| w > 0) {
                let p1 = take(w)?;
                c.insert(w, unit(p1));
                c2.insert(-w, scaled_unit(mirror(p1), b(w) * eps(p1)));
                let p2 = take(w)?;
                c2.insert(w, unit(p2));
                c.insert(-w, scaled_unit(mirror(p2), &delta * b(-w) * eps(p2)));
            }
            if k % 2 == 1 {
                let p = zero_slots
                    .pop_front()
                    .ok_or_else(|| Error::Structural("no weight-0 slot for a chain pair".into()))?;
                c.insert(0, unit(p));
                c2.insert(0, scaled_unit(mirror(p), b(0) * eps(p)));
            }
            chains.push(c.into_values().rev().collect());
            chains.push(c2.into_values().rev().collect());
        }

        // Weight-0 vectors of self-dual odd chains: e_p ± e_{p'}/2 share a
        // slot, the center position takes the last one.
        let mut pending_half: Option<usize> = None;
        for k in single {
            let mut c: BTreeMap<i64, Vec<Scalar>> = BTreeMap::new();
            let base = if k % 2 == 1 {
                let (u, norm) = if let Some(p) = pending_half.take() {
                    let mut u = unit(p);
                    u[mirror(p)] = frac(-1, 2) * eps(p);
                    (u, int(-1))
                } else if let Some(p) = zero_slots.pop_front() {
                    pending_half = Some(p);
                    let mut u = unit(p);
                    u[mirror(p)] = frac(1, 2) * eps(p);
                    (u, int(1))
                } else if let Some(p) = center {
                    (unit(p), eps(p))
                } else {
                    return Err(Error::Structural("no weight-0 position left".into()));
                };
                c.insert(0, u);
                norm
            } else {
                int(1)
            };
            let w0: i64 = if k % 2 == 1 { 0 } else { 1 };
            for w in chain_weights(k).filter(|&w| w > 0) {
                let a = if ((w - w0) / 2) % 2 == 0 {
                    base.clone()
                } else {
                    -base.clone()
                };
                let p = take(w)?;
                c.insert(w, unit(p));
                c.insert(-w, scaled_unit(mirror(p), a * eps(p)));
            }
            chains.push(c.into_values().rev().collect());
        }
        if pending_half.is_some() {
            return Err(Error::Structural("unbalanced weight-0 slot".into()));
        }
        Ok(ChainLayout { chains })
    }

    /// The nilpotent sending each chain vector to the next one up.
    fn raising_operator(&self, n: usize) -> Result<RationalMatrix> {
        let columns: Vec<Vec<Scalar>> = self.chains.iter().flatten().cloned().collect();
        if columns.len() != n {
            return Err(Error::Structural(
                "chains do not span the defining space".into(),
            ));
        }
        let basis = RationalMatrix::from_columns(&columns, n);
        let inv = basis
            .inverse()
            .ok_or_else(|| Error::Structural("chain vectors are dependent".into()))?;
        let mut shift = RationalMatrix::zeros(n, n);
        let mut offset = 0;
        for chain in &self.chains {
            for i in 1..chain.len() {
                shift[(offset + i - 1, offset + i)] = Scalar::one();
            }
            offset += chain.len();
        }
        Ok(basis.matmul(&shift).matmul(&inv))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_classical;

    fn ty(f: Family, l: usize) -> ClassicalType {
        ClassicalType::new(f, l).unwrap()
    }

    fn parts(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn enumerate_sl2() {
        let ps: Vec<_> = enumerate_partitions(ty(Family::A, 1))
            .into_iter()
            .map(|o| o.partition)
            .collect();
        assert_eq!(ps, vec![parts(&[2]), parts(&[1, 1])]);
    }

    #[test]
    fn enumerate_sp4_excludes_odd_singletons() {
        let ps: Vec<_> = enumerate_partitions(ty(Family::C, 2))
            .into_iter()
            .map(|o| o.partition)
            .collect();
        assert_eq!(
            ps,
            vec![
                parts(&[4]),
                parts(&[2, 2]),
                parts(&[2, 1, 1]),
                parts(&[1, 1, 1, 1])
            ]
        );
    }

    #[test]
    fn so12_contains_5322() {
        let orbits = enumerate_partitions(ty(Family::D, 6));
        let target = parts(&[5, 3, 2, 2]);
        let o = orbits.iter().find(|o| o.partition == target).unwrap();
        assert!(!o.very_even);
        assert!(orbits
            .iter()
            .any(|o| o.very_even && o.partition == parts(&[2, 2, 2, 2, 2, 2])));
    }

    #[test]
    fn parity_violation_names_rule() {
        let err = parts(&[3, 1]).validate_for(ty(Family::C, 2)).unwrap_err();
        let msg = err.to_string();
        assert!(
            msg.contains("every odd part must have even multiplicity"),
            "{msg}"
        );
        let err = parts(&[2, 1]).validate_for(ty(Family::B, 1)).unwrap_err();
        assert!(err
            .to_string()
            .contains("every even part must have even multiplicity"));
        assert!(parts(&[2, 2]).validate_for(ty(Family::A, 1)).is_err());
    }

    #[test]
    fn parse_and_display() {
        let p: Partition = "5,3,2,2".parse().unwrap();
        assert_eq!(p.to_string(), "5,3,2,2");
        assert_eq!("2,5".parse::<Partition>().unwrap(), parts(&[5, 2]));
        assert!("5,x".parse::<Partition>().is_err());
        assert!("0,2".parse::<Partition>().is_err());
        assert_eq!(parts(&[5, 3, 2, 2]).dual(), parts(&[4, 4, 2, 1, 1]));
    }

    #[test]
    fn sl2_regular_triple() {
        let g = build_classical(ty(Family::A, 1)).unwrap();
        let t = standard_triple(&g, &parts(&[2])).unwrap();
        assert_eq!(t.h, RationalMatrix::diagonal(&[int(1), int(-1)]));
        assert!(t.relations_hold());
    }

    #[test]
    fn zero_orbit_triple() {
        for t in [
            ty(Family::A, 2),
            ty(Family::B, 2),
            ty(Family::C, 2),
            ty(Family::D, 3),
        ] {
            let g = build_classical(t).unwrap();
            let n = g.defining_size();
            let tr = standard_triple(&g, &Partition::trivial(n)).unwrap();
            assert!(tr.e.is_zero() && tr.h.is_zero() && tr.f.is_zero());
            assert_eq!(g.centralizer_basis(&tr.e).len(), g.dim());
        }
    }

    #[test]
    fn every_small_partition_gives_a_triple() {
        let mut types = Vec::new();
        for l in 1..=4 {
            types.push(ty(Family::A, l));
            types.push(ty(Family::B, l));
            types.push(ty(Family::C, l));
            if l >= 2 {
                types.push(ty(Family::D, l));
            }
        }
        for t in types {
            let g = build_classical(t).unwrap();
            let n = g.defining_size();
            for orbit in enumerate_partitions(t) {
                let p = &orbit.partition;
                let tr = standard_triple(&g, p).unwrap_or_else(|e| panic!("{t} {p}: {e}"));
                // bracket relations through the algebra's checked bracket
                assert_eq!(g.bracket(&tr.h, &tr.e).unwrap(), tr.e.scale(&int(2)));
                assert_eq!(g.bracket(&tr.h, &tr.f).unwrap(), tr.f.scale(&int(-2)));
                assert_eq!(g.bracket(&tr.e, &tr.f).unwrap(), tr.h);
                assert!(tr.e.pow(n as u32).is_zero());
                assert!(tr.f.pow(n as u32).is_zero());
                // Jordan type of e: rank of e^k = sum over parts of max(part - k, 0)
                for k in 1..=p.parts()[0] {
                    let expected: usize = p.parts().iter().map(|&q| q.saturating_sub(k)).sum();
                    assert_eq!(tr.e.pow(k as u32).rank(), expected, "{t} {p} k={k}");
                }
                let ge = g.centralizer_basis(&tr.e).len();
                let gf = g.centralizer_basis(&tr.f).len();
                assert_eq!(ge, gf);
                assert_eq!(ge, g.dim() - g.ad_matrix(&tr.e).rank());
                assert_eq!(ge % 2, t.rank % 2, "{t} {p}: dim g^e parity");
            }
        }
    }
}
