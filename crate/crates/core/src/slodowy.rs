//! Slodowy slice `e + g^f`, restriction of invariants to it, and the
//! gradings on its coordinate ring `S(g^e) = k[g^f]`.

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Deadline;
use crate::error::{Error, Result};
use crate::invariants::{
    evaluate_kinds, fundamental_kinds, InvariantKind, InvariantPoly, PolyMatrix,
};
use crate::lie::{trace_form, LieAlgebra};
use crate::linalg::RationalMatrix;
use crate::multipoly::{Scalar, SparsePoly, TermAccumulator, WeightVector};
use crate::nilpotent::Sl2Triple;

/// Coordinates on the slice: `t_j` is the coefficient of `z_j` in
/// `e + sum_j t_j z_j`.
#[derive(Clone, Debug)]
pub struct SliceChart {
    pub triple: Sl2Triple,
    /// Basis `x_i` of `g^e` with `[h, x_i] = n_i x_i`.
    pub e_basis: Vec<(RationalMatrix, u32)>,
    /// Basis `z_j` of `g^f` with `[h, z_j] = -m_j z_j`.
    pub f_basis: Vec<(RationalMatrix, u32)>,
    /// `m_j + 2` for `t_j`.
    pub slodowy_weights: WeightVector,
    /// `pairing[i][j] = tr(x_i z_j)`.
    pub pairing: RationalMatrix,
    pairing_inv: RationalMatrix,
    /// Matrix of `z -> pi([x_i, z])` on `g^f`, one per `x_i`.
    coadjoint: Vec<RationalMatrix>,
}

impl SliceChart {
    /// `r = dim g^e`.
    pub fn dim(&self) -> usize {
        self.f_basis.len()
    }

    /// Slice point over `t`: `e + sum_j t_j z_j` with polynomial entries.
    pub fn slice_matrix(&self) -> PolyMatrix {
        let z: Vec<RationalMatrix> = self.f_basis.iter().map(|(z, _)| z.clone()).collect();
        PolyMatrix::affine(&self.triple.e, &z)
    }

    /// Coefficients of `pi(y)` in the `z_j`, where `pi` projects along `[e,g]`.
    pub fn project(&self, y: &RationalMatrix) -> Vec<Scalar> {
        let pairs: Vec<Scalar> = self.e_basis.iter().map(|(x, _)| trace_form(x, y)).collect();
        self.pairing_inv.mul_vec(&pairs)
    }

    /// Matrix `A` of `z -> pi([x_i, z])`: `pi([x_i, z_k]) = sum_j A[j][k] z_j`.
    pub fn coadjoint_matrix(&self, i: usize) -> &RationalMatrix {
        &self.coadjoint[i]
    }

    /// `D_i p = sum_j (sum_k A_i[j][k] t_k) dp/dt_j`.
    pub fn derivation(&self, i: usize, p: &SparsePoly) -> SparsePoly {
        let r = self.dim();
        let a = &self.coadjoint[i];
        let rows: Vec<Vec<(usize, &Scalar)>> = (0..r)
            .map(|j| {
                (0..r)
                    .filter(|&k| !a[(j, k)].is_zero())
                    .map(|k| (k, &a[(j, k)]))
                    .collect()
            })
            .collect();
        let mut acc = TermAccumulator::with_capacity(r, p.len());
        for (m, c) in p.terms() {
            for (j, row) in rows.iter().enumerate() {
                let e = m.get(j);
                if e == 0 || row.is_empty() {
                    continue;
                }
                let ce = c * Scalar::from_integer(e.into());
                for &(k, akj) in row {
                    acc.add_term(m.shift(j, k), &ce * akj);
                }
            }
        }
        acc.finish()
    }
}

/// Builds the chart. Bases are ordered by weight, then by kernel order.
pub fn slice_chart(g: &LieAlgebra, triple: &Sl2Triple) -> Result<SliceChart> {
    let ge = g.centralizer_basis(&triple.e);
    let gf = g.centralizer_basis(&triple.f);
    if ge.len() != gf.len() {
        return Err(Error::Structural(format!(
            "dim g^e = {} but dim g^f = {}",
            ge.len(),
            gf.len()
        )));
    }
    let e_basis = g
        .ad_weight_basis(&ge, &triple.h)?
        .into_iter()
        .map(|(x, n)| {
            u32::try_from(n)
                .map(|n| (x, n))
                .map_err(|_| Error::Structural(format!("negative ad h weight {n} on g^e")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut f_basis = g
        .ad_weight_basis(&gf, &triple.h)?
        .into_iter()
        .map(|(z, w)| {
            u32::try_from(-w)
                .map(|m| (z, m))
                .map_err(|_| Error::Structural(format!("positive ad h weight {w} on g^f")))
        })
        .collect::<Result<Vec<_>>>()?;
    // most negative ad h weight comes first from the scan; order by m ascending
    f_basis.sort_by_key(|&(_, m)| m);

    let r = e_basis.len();
    let pairing = RationalMatrix::from_fn(r, r, |i, j| trace_form(&e_basis[i].0, &f_basis[j].0));
    let pairing_inv = pairing.inverse().ok_or_else(|| {
        Error::Structural("trace form pairing of g^e and g^f is degenerate".into())
    })?;
    let slodowy_weights = WeightVector::new(f_basis.iter().map(|&(_, m)| m + 2).collect());

    let mut chart = SliceChart {
        triple: triple.clone(),
        e_basis,
        f_basis,
        slodowy_weights,
        pairing,
        pairing_inv,
        coadjoint: Vec::new(),
    };
    let coadjoint: Vec<RationalMatrix> = chart
        .e_basis
        .iter()
        .map(|(x, _)| {
            let cols: Vec<Vec<Scalar>> = chart
                .f_basis
                .iter()
                .map(|(z, _)| chart.project(&x.commutator(z)))
                .collect();
            RationalMatrix::from_columns(&cols, r)
        })
        .collect();
    chart.coadjoint = coadjoint;
    Ok(chart)
}

/// `kappa(q)` and its initial component.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SliceRestriction {
    pub kind: InvariantKind,
    pub source_degree: u32,
    #[serde(with = "poly_text")]
    pub kappa: SparsePoly,
    #[serde(with = "poly_text")]
    pub initial: SparsePoly,
    pub initial_degree: u32,
}

impl SliceRestriction {
    /// Splits `kappa` and checks Slodowy homogeneity of degree `2d` and the
    /// initial degree range.
    pub fn new(
        kind: InvariantKind,
        source_degree: u32,
        kappa: SparsePoly,
        chart: &SliceChart,
    ) -> Result<Self> {
        let label = kind.label();
        if kappa.is_zero() {
            return Err(Error::Structural(format!(
                "restriction of {label} to the slice is zero"
            )));
        }
        let slodowy = 2 * source_degree as u64;
        if !kappa.is_homogeneous_of(&chart.slodowy_weights, slodowy) {
            return Err(Error::Structural(format!(
                "restriction of {label} is not Slodowy-homogeneous of degree {slodowy}"
            )));
        }
        let (initial_degree, initial) = kappa
            .initial_component()
            .expect("nonzero polynomial has an initial component");
        let e_is_zero = chart.triple.e.is_zero();
        if initial_degree > source_degree || (!e_is_zero && initial_degree == 0) {
            return Err(Error::Structural(format!(
                "initial degree {initial_degree} of {label} outside 1..={source_degree}"
            )));
        }
        Ok(SliceRestriction {
            kind,
            source_degree,
            kappa,
            initial,
            initial_degree,
        })
    }
}

/// Restrictions of the fundamental invariants, evaluated directly on the
/// slice matrix.
pub fn restrict_invariants(
    g: &LieAlgebra,
    chart: &SliceChart,
    deadline: &Deadline,
) -> Result<Vec<SliceRestriction>> {
    let kinds = fundamental_kinds(g);
    let recipes: Vec<InvariantKind> = kinds.iter().map(|&(k, _)| k).collect();
    let x = chart.slice_matrix();
    let kappas = evaluate_kinds(g, &recipes, &x, deadline)?;
    kinds
        .into_iter()
        .zip(kappas)
        .map(|((kind, d), kappa)| SliceRestriction::new(kind, d, kappa, chart))
        .collect()
}

/// Affine images of the basis coordinates `c_a` over the slice.
pub fn slice_coordinate_images(g: &LieAlgebra, chart: &SliceChart) -> Vec<SparsePoly> {
    let r = chart.dim();
    let e = g.coords_unchecked(&chart.triple.e);
    let zs: Vec<Vec<Scalar>> = chart
        .f_basis
        .iter()
        .map(|(z, _)| g.coords_unchecked(z))
        .collect();
    (0..g.dim())
        .map(|a| {
            let mut acc = TermAccumulator::new(r);
            acc.add_poly(&SparsePoly::constant(r, e[a].clone()));
            for (j, z) in zs.iter().enumerate() {
                if !z[a].is_zero() {
                    acc.add_scaled(&SparsePoly::var(r, j), &z[a]);
                }
            }
            acc.finish()
        })
        .collect()
}

/// `kappa(q)` by substituting the slice into `q`'s basis coordinates.
pub fn restrict_to_slice(
    g: &LieAlgebra,
    q: &InvariantPoly,
    chart: &SliceChart,
) -> Result<SliceRestriction> {
    if q.poly.arity() != g.dim() {
        return Err(Error::Contract(
            "invariant and chart come from different algebras".into(),
        ));
    }
    let kappa = q.poly.substitute(&slice_coordinate_images(g, chart));
    SliceRestriction::new(q.kind, q.degree, kappa, chart)
}

/// True iff every `x_i` in `g^e` annihilates `p` under the coadjoint action.
pub fn ge_invariance_check(p: &SparsePoly, chart: &SliceChart) -> Result<bool> {
    if p.arity() != chart.dim() {
        return Err(Error::Contract(format!(
            "polynomial has {} variables, chart has {}",
            p.arity(),
            chart.dim()
        )));
    }
    Ok((0..chart.e_basis.len())
        .into_par_iter()
        .all(|i| chart.derivation(i, p).is_zero()))
}

/// One element of the associated graded algebra found by the probe.
#[derive(Clone, Debug, PartialEq)]
pub struct FiltrationElement {
    /// Standard degree in `S(g)` of the combination.
    pub source_degree: u32,
    pub initial: SparsePoly,
    pub initial_degree: u32,
}

/// Exponent vectors `a` with `sum_i a_i d_i = total`, in lexicographic order.
pub fn degree_compositions(degrees: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn rec(degrees: &[u32], idx: usize, rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx == degrees.len() {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let d = degrees[idx];
        let max = rest.checked_div(d).unwrap_or(0);
        for a in (0..=max).rev() {
            cur.push(a);
            rec(degrees, idx + 1, rest - a * d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(degrees, 0, total, &mut Vec::new(), &mut out);
    out
}

/// `prod_i p_i^(a_i)`.
pub fn power_product(polys: &[SparsePoly], exps: &[u32], arity: usize) -> SparsePoly {
    let mut acc = SparsePoly::one(arity);
    for (p, &a) in polys.iter().zip(exps) {
        if a > 0 {
            acc = acc.mul(&p.pow(a));
        }
    }
    acc
}

/// Echelon form of a family of polynomials that keeps initial components
/// independent: each output row has a distinct lowest monomial, and every
/// combination of the inputs has its initial degree among those of the rows
/// it involves. Rows come out by increasing initial degree.
pub fn initial_echelon(polys: &[SparsePoly], arity: usize) -> Vec<SparsePoly> {
    let mut rows: Vec<SparsePoly> = Vec::new();
    for p in polys {
        let mut v = p.clone();
        reduce_against(&mut v, &rows);
        if v.is_zero() {
            continue;
        }
        v = normalize_lowest(&v);
        // keep earlier rows reduced against the new pivot
        let (pe, _) = lowest_term(&v).expect("nonzero");
        let pe = pe.clone();
        for r in rows.iter_mut() {
            let c = r.coefficient(&pe);
            if !c.is_zero() {
                *r = r.sub(&v.scale(&c));
            }
        }
        rows.push(v);
    }
    rows.sort_by(|a, b| lowest_term(a).unwrap().0.cmp(lowest_term(b).unwrap().0));
    debug_assert!(rows.iter().all(|r| r.arity() == arity));
    rows
}

/// Subtract multiples of echelon rows so that `v` vanishes on their pivots.
pub fn reduce_against(v: &mut SparsePoly, rows: &[SparsePoly]) {
    for r in rows {
        let (pe, _) = lowest_term(r).expect("echelon rows are nonzero");
        let c = v.coefficient(pe);
        if !c.is_zero() {
            *v = v.sub(&r.scale(&c));
        }
    }
}

/// Smallest monomial in graded-lex order.
pub fn lowest_term(p: &SparsePoly) -> Option<(&crate::multipoly::ExponentVector, &Scalar)> {
    p.terms().last()
}

fn normalize_lowest(p: &SparsePoly) -> SparsePoly {
    let (_, c) = lowest_term(p).expect("nonzero");
    let inv = Scalar::one() / c;
    p.scale(&inv)
}

/// Probe of the graded algebra associated with the standard-degree
/// filtration on `kappa(S(g)^g)`: for every source degree up to
/// `degree_cap`, an echelon basis of the restrictions of invariant monomials,
/// reported through initial components.
pub fn initial_filtration_probe(
    restrictions: &[SliceRestriction],
    chart: &SliceChart,
    degree_cap: u32,
) -> Vec<FiltrationElement> {
    if restrictions.is_empty() {
        return Vec::new();
    }
    let r = chart.dim();
    let kappas: Vec<SparsePoly> = restrictions.iter().map(|s| s.kappa.clone()).collect();
    let degrees: Vec<u32> = restrictions.iter().map(|s| s.source_degree).collect();
    let min_d = *degrees.iter().min().unwrap();
    let mut out = Vec::new();
    for total in min_d.max(1)..=degree_cap {
        let monos: Vec<SparsePoly> = degree_compositions(&degrees, total)
            .par_iter()
            .map(|a| power_product(&kappas, a, r))
            .collect();
        for row in initial_echelon(&monos, r) {
            let (deg, initial) = row.initial_component().expect("nonzero");
            out.push(FiltrationElement {
                source_degree: total,
                initial,
                initial_degree: deg,
            });
        }
    }
    out
}

/// Serde adapter storing polynomials in canonical text with `t` variables.
pub mod poly_text {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::multipoly::SparsePoly;

    #[derive(Serialize, Deserialize)]
    struct Repr {
        arity: usize,
        text: String,
    }

    pub fn serialize<S: Serializer>(p: &SparsePoly, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            arity: p.arity(),
            text: p.to_text("t"),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<SparsePoly, D::Error> {
        let r = Repr::deserialize(d)?;
        SparsePoly::parse_text(&r.text, "t", r.arity).map_err(serde::de::Error::custom)
    }
}
