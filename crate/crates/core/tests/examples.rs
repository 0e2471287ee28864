//! Worked examples with frozen expected values.

use nilgood::budget::Deadline;
use nilgood::criterion::{
    degree_sum_criterion, exact_jacobian_rank, hilbert_truncation_check, jacobian_independence,
    maximal_sequence, modular_jacobian_rank, perturbation_search, span_rank, RankMethod,
};
use nilgood::lie::{build_classical, ClassicalType, Family};
use nilgood::multipoly::{frac, int, SparsePoly};
use nilgood::nilpotent::{standard_triple, Partition};
use nilgood::slodowy::{
    initial_filtration_probe, restrict_invariants, slice_chart, SliceChart, SliceRestriction,
};

fn t(arity: usize, i: usize) -> SparsePoly {
    SparsePoly::var(arity, i)
}

fn orbit(f: Family, l: usize, p: &str) -> (SliceChart, Vec<SliceRestriction>) {
    let g = build_classical(ClassicalType::new(f, l).unwrap()).unwrap();
    let p: Partition = p.parse().unwrap();
    let chart = slice_chart(&g, &standard_triple(&g, &p).unwrap()).unwrap();
    let rs = restrict_invariants(&g, &chart, &Deadline::unlimited()).unwrap();
    (chart, rs)
}

#[test]
fn jacobian_rank_examples() {
    let d = Deadline::unlimited();
    let a = [t(2, 0), t(2, 1)];
    assert_eq!(jacobian_independence(&a, 2, 8, 0, &d).unwrap().rank, 2);

    let b = [t(1, 0), t(1, 0).pow(2)];
    let jr = jacobian_independence(&b, 1, 8, 0, &d).unwrap();
    assert_eq!((jr.rank, jr.method), (1, RankMethod::ExactSymbolic));

    let s = &t(2, 0) + &t(2, 1);
    let p = &t(2, 0) * &t(2, 1);
    let q = &t(2, 0).pow(2) + &t(2, 1).pow(2);
    let c = [s, p, q];
    assert_eq!(modular_jacobian_rank(&c, 2, 8, 0), 2);
    assert_eq!(exact_jacobian_rank(&c, 2, &d).unwrap(), 2);
}

#[test]
fn degree_sum_examples() {
    let sl2 = degree_sum_criterion(&[1], 1, 1).unwrap();
    assert_eq!((sl2.bound, sl2.gap), (1, 0));
    let zero_sl3 = degree_sum_criterion(&[2, 3], 8, 2).unwrap();
    assert_eq!((zero_sl3.bound, zero_sl3.gap), (5, 0));
    assert!(degree_sum_criterion(&[1], 2, 1).is_err());
}

#[test]
fn hilbert_truncation_examples() {
    let (_, rs) = orbit(Family::A, 1, "2");
    let initials: Vec<SparsePoly> = rs.iter().map(|r| r.initial.clone()).collect();
    assert!(hilbert_truncation_check(&initials, &[2], 8));
    // two copies of t: one monomial too few at Slodowy degree 2 min d_i
    let dependent = [t(1, 0), t(1, 0)];
    assert!(!hilbert_truncation_check(&dependent, &[1, 1], 2));
    assert!(hilbert_truncation_check(&[], &[], 8));
}

#[test]
fn sl4_two_two_has_no_cancelling_multiple() {
    // ^e q_4 contains a monomial absent from (^e q_2)^2, so q_4 + c q_2^2
    // keeps initial degree 2 for every c.
    let (chart, rs) = orbit(Family::A, 3, "2,2");
    let degrees: Vec<u32> = rs.iter().map(|r| r.initial_degree).collect();
    assert_eq!(degrees, vec![1, 2, 2]);
    let (q2, q4) = (&rs[0], &rs[2]);
    let sq = q2.initial.pow(2);
    assert_eq!(sq.total_degree(), Some(2));
    assert_eq!(span_rank(&[q4.initial.clone(), sq.clone()]), 2);
    let r = chart.dim();
    for c in [-3, -2, -1, 1, 2, 3]
        .map(int)
        .into_iter()
        .chain([frac(-1, 4), frac(1, 4)])
    {
        let combo = &q4.kappa + &q2.kappa.pow(2).scale(&c);
        assert_eq!(combo.initial_component().unwrap().0, 2, "c = {c}");
        assert_eq!(combo.arity(), r);
    }
    let maximal = maximal_sequence(&rs, r).unwrap();
    assert_eq!(maximal.initial_degrees, vec![1, 2, 2]);
}

#[test]
fn so7_cancellation_raises_initial_degree() {
    // q_4 - 1/4 q_2^2 cancels the degree 2 part on B3 (2,2,1,1,1).
    let (chart, rs) = orbit(Family::B, 3, "2,2,1,1,1");
    let degrees: Vec<u32> = rs.iter().map(|r| r.initial_degree).collect();
    assert_eq!(degrees, vec![1, 2, 4]);
    let (q2, q4) = (&rs[0], &rs[1]);
    let sq = q2.kappa.pow(2);
    let special = frac(-1, 4);
    let combo = &q4.kappa + &sq.scale(&special);
    assert_eq!(combo.initial_component().unwrap().0, 3);
    for c in [-1, 1, 2]
        .map(int)
        .into_iter()
        .chain([frac(-1, 2), frac(1, 4)])
    {
        let other = &q4.kappa + &sq.scale(&c);
        assert_eq!(other.initial_component().unwrap().0, 2, "c = {c}");
    }
    let r = chart.dim();
    let maximal = maximal_sequence(&rs, r).unwrap();
    assert_eq!(maximal.initial_degrees, vec![1, 3, 4]);
    assert_eq!(maximal.combinations[1].to_text(), "1/1*q2 + -1/4*q1^2");

    // the filtration probe sees the raised element in source degree 4
    let probe = initial_filtration_probe(&rs, &chart, 4);
    assert!(probe
        .iter()
        .any(|e| e.source_degree == 4 && e.initial_degree == 3));
}

#[test]
fn search_edge_cases() {
    let d = Deadline::unlimited();
    let (chart, rs) = orbit(Family::B, 3, "2,2,1,1,1");
    let r = chart.dim();
    assert!(perturbation_search(&rs, r, r, 0, 0, &d).unwrap().is_none());
    let found = perturbation_search(&rs, r, r, 32, 0, &d).unwrap().unwrap();
    assert_eq!(found.trial, 1);
    assert_eq!(found.candidate.initial_degrees.iter().sum::<u32>(), 8);

    let (chart, rs) = orbit(Family::A, 2, "3");
    let r = chart.dim();
    let same = perturbation_search(&rs, r, r, 32, 0, &d).unwrap().unwrap();
    assert_eq!(same.trial, 0);
    let kappas: Vec<SparsePoly> = rs.iter().map(|r| r.kappa.clone()).collect();
    assert_eq!(same.candidate.kappas, kappas);
}

#[test]
fn so12_maximal_sequence_misses_the_bound() {
    let (chart, rs) = orbit(Family::D, 6, "5,3,2,2");
    let r = chart.dim();
    assert_eq!(r, 18);
    let standard: u32 = rs.iter().map(|s| s.initial_degree).sum();
    let maximal: u32 = maximal_sequence(&rs, r)
        .unwrap()
        .initial_degrees
        .iter()
        .sum();
    assert_eq!((standard, maximal), (11, 11));
    let bound = degree_sum_criterion(&[1; 6], r, 6).unwrap().bound;
    assert_eq!(bound, 12);
}
