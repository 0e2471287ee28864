//! Property tests over random orbits, partitions and polynomials.

use nilgood::budget::Deadline;
use nilgood::criterion::{exact_jacobian_rank, modular_jacobian_rank};
use nilgood::lie::{build_classical, ClassicalType, Family};
use nilgood::linalg::RationalMatrix;
use nilgood::multipoly::{int, Exp, ExponentVector, Scalar, SparsePoly};
use nilgood::nilpotent::{defining_weights, enumerate_partitions, standard_triple, Partition};
use nilgood::pipeline::{check_orbit, CheckOptions};
use nilgood::report::{report_from_json, to_json};
use nilgood::slodowy::slice_chart;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn family(i: u8) -> Family {
    [Family::A, Family::B, Family::C, Family::D][i as usize % 4]
}

/// A valid (type, partition) pair at rank <= `max_rank`.
fn orbit(max_rank: usize) -> impl Strategy<Value = (ClassicalType, Partition)> {
    (0u8..4, 1usize..=max_rank, any::<prop::sample::Index>()).prop_map(|(f, l, idx)| {
        let fam = family(f);
        let l = if fam == Family::D { l.max(2) } else { l };
        let ty = ClassicalType::new(fam, l).unwrap();
        let orbits = enumerate_partitions(ty);
        (ty, idx.get(&orbits).partition.clone())
    })
}

fn partition() -> impl Strategy<Value = Partition> {
    prop::collection::vec(1usize..7, 1..6).prop_map(|v| Partition::new(v).unwrap())
}

fn small_poly(arity: usize) -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec((prop::collection::vec(0 as Exp..3, arity), -3i64..=3), 1..4).prop_map(
        move |terms| {
            SparsePoly::from_terms(
                arity,
                terms
                    .into_iter()
                    .map(|(e, c)| (ExponentVector::new(e), int(c))),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partition_text_round_trip(p in partition()) {
        let back: Partition = p.to_string().parse().unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(p.dual().dual(), p.clone());
        prop_assert_eq!(p.dual().total(), p.total());
    }

    #[test]
    fn validity_matches_enumeration(p in partition(), f in 0u8..4) {
        let fam = family(f);
        let n = p.total();
        let ty = match fam {
            Family::A if n >= 2 => ClassicalType::new(fam, n - 1).ok(),
            Family::B if n % 2 == 1 && n >= 3 => ClassicalType::new(fam, n / 2).ok(),
            Family::C if n % 2 == 0 => ClassicalType::new(fam, n / 2).ok(),
            Family::D if n % 2 == 0 && n >= 4 => ClassicalType::new(fam, n / 2).ok(),
            _ => None,
        };
        if let Some(ty) = ty {
            let listed = enumerate_partitions(ty).iter().any(|o| o.partition == p);
            prop_assert_eq!(p.validate_for(ty).is_ok(), listed);
        }
    }

    #[test]
    fn modular_rank_matches_exact(polys in prop::collection::vec(small_poly(3), 1..4)) {
        let polys: Vec<SparsePoly> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        prop_assume!(!polys.is_empty());
        let modular = modular_jacobian_rank(&polys, 3, 8, 1);
        let exact = exact_jacobian_rank(&polys, 3, &Deadline::unlimited()).unwrap();
        prop_assert!(modular <= exact);
        prop_assert_eq!(modular, exact);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn h_spectrum_matches_partition((ty, p) in orbit(3)) {
        let g = build_classical(ty).unwrap();
        let t = standard_triple(&g, &p).unwrap();
        prop_assert!(t.relations_hold());
        let n = g.defining_size();
        let weights = defining_weights(&p);
        prop_assert_eq!(weights.len(), n);
        let mut distinct = weights.clone();
        distinct.sort();
        distinct.dedup();
        for w in distinct {
            let mult = weights.iter().filter(|&&x| x == w).count();
            let shifted = RationalMatrix::from_fn(n, n, |i, j| {
                let d = if i == j { Scalar::from_integer(w.into()) } else { Scalar::zero() };
                t.h[(i, j)].clone() - d
            });
            prop_assert_eq!(shifted.rank(), n - mult, "weight {}", w);
        }
        prop_assert!(t.e.pow(p.parts()[0] as u32).is_zero());
    }

    #[test]
    fn chart_duality_and_weight_basis((ty, p) in orbit(3)) {
        let g = build_classical(ty).unwrap();
        let t = standard_triple(&g, &p).unwrap();
        let chart = slice_chart(&g, &t).unwrap();
        let r = chart.dim();
        prop_assert_eq!(g.centralizer_basis(&t.e).len(), r);
        prop_assert_eq!((r + ty.rank) % 2, 0);
        for (k, (z, m)) in chart.f_basis.iter().enumerate() {
            let coords = chart.project(z);
            for (j, c) in coords.iter().enumerate() {
                prop_assert_eq!(c.is_one(), j == k);
                prop_assert!(j == k || c.is_zero());
            }
            let hz = g.bracket(&t.h, z).unwrap();
            prop_assert_eq!(hz, z.scale(&Scalar::from_integer((-(*m as i64)).into())));
        }
        let coords: Vec<Vec<Scalar>> = chart.e_basis.iter().map(|(x, _)| g.coords(x).unwrap()).collect();
        let m = RationalMatrix::from_rows(coords);
        prop_assert_eq!(if r == 0 { 0 } else { m.rank() }, r);
        for (x, _) in &chart.e_basis {
            prop_assert!(g.bracket(&t.e, x).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn reports_are_deterministic((ty, p) in orbit(2), seed in 0u64..1000) {
        let opts = CheckOptions { seed, ..CheckOptions::default() };
        let a = to_json(&check_orbit(ty, &p, &opts, None).unwrap()).unwrap();
        let b = to_json(&check_orbit(ty, &p, &opts, None).unwrap()).unwrap();
        prop_assert_eq!(&a, &b);
        let parsed = report_from_json(&a).unwrap();
        prop_assert_eq!(to_json(&parsed).unwrap(), a);
    }
}
