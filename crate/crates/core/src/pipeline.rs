//! End-to-end orbit check: triple, slice, restriction, criterion, verdict.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Deadline;
use crate::cache::Cache;
use crate::criterion::{
    hilbert_truncation_check, independence, maximal_sequence, perturbation_search, Candidate,
    Combination, IndependenceResult, DEFAULT_SEARCH_BUDGET, DEFAULT_TRIALS,
};
use crate::error::{Error, Result};
use crate::lie::{build_classical_with_limit, ClassicalType, Family, LieAlgebra, DEFAULT_MAX_RANK};
use crate::nilpotent::{standard_triple, Partition};
use crate::slodowy::{
    ge_invariance_check, restrict_invariants, slice_chart, SliceChart, SliceRestriction,
};

/// Identification of `g` with its dual used for all slice coordinates.
pub const NORMALIZATION: &str = "trace-form";

/// Knobs of a single orbit check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub seed: u64,
    /// Modular Jacobian trials.
    pub trials: u32,
    /// Perturbation trials; zero disables the search.
    pub search_budget: u32,
    /// Wall-clock budget in seconds; zero is unlimited.
    pub time_budget_secs: u64,
    /// Slodowy degree cap of the Hilbert series check; zero picks `2 max d_i`.
    pub hilbert_cap: u32,
    /// Include restricted polynomials in the report.
    pub include_polynomials: bool,
    /// Include cache and timing diagnostics in the report.
    pub include_diagnostics: bool,
    pub max_rank: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            seed: 0,
            trials: DEFAULT_TRIALS,
            search_budget: DEFAULT_SEARCH_BUDGET,
            time_budget_secs: 0,
            hilbert_cap: 0,
            include_polynomials: false,
            include_diagnostics: false,
            max_rank: DEFAULT_MAX_RANK,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum Verdict {
    /// Some generating sequence has independent initial components.
    GoodCertified,
    /// The standard sequence fails and the search was disabled.
    NotCertifiedStandard,
    /// Every searched sequence fails.
    LikelyNotGood { search_trials: u32 },
}

impl Verdict {
    /// Process exit code of `check`.
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::GoodCertified => 0,
            Verdict::LikelyNotGood { .. } => 10,
            Verdict::NotCertifiedStandard => 11,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::GoodCertified => f.write_str("GoodCertified"),
            Verdict::NotCertifiedStandard => f.write_str("NotCertifiedStandard"),
            Verdict::LikelyNotGood { search_trials } => write!(f, "LikelyNotGood({search_trials})"),
        }
    }
}

/// One generator of the reported sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorRow {
    /// Standard generator this row replaces.
    pub label: String,
    pub degree: u32,
    pub slodowy_degree: u32,
    pub standard_initial_degree: u32,
    pub initial_degree: u32,
    /// The generator in terms of the standard ones, `q1..ql`.
    pub combination: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchSummary {
    pub budget: u32,
    /// Trial that succeeded, zero when the standard sequence already does.
    pub found_at_trial: Option<u32>,
    /// Largest initial degree sum over all homogeneous generating sequences.
    pub maximal_degree_sum: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checks {
    pub slodowy_homogeneous: bool,
    pub initials_ge_invariant: bool,
    /// Only run on certified sequences.
    pub hilbert_truncation: Option<bool>,
    pub hilbert_cap: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialDump {
    pub label: String,
    pub kappa: String,
    pub initial: String,
}

/// Run-dependent data, excluded from reports unless requested.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub cache_hit: bool,
    pub restriction_ms: u64,
    pub criterion_ms: u64,
    pub total_ms: u64,
}

/// Full result for one orbit. Field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoodnessReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub partition: String,
    pub very_even: bool,
    pub normalization: String,
    pub dim_g: usize,
    pub dim_ge: usize,
    pub bound: u32,
    pub generators: Vec<GeneratorRow>,
    pub degrees: Vec<u32>,
    pub standard_degrees: Vec<u32>,
    pub independence: IndependenceResult,
    pub search: Option<SearchSummary>,
    pub verdict: Verdict,
    pub checks: Checks,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub polynomials: Option<Vec<PolynomialDump>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diagnostics: Option<Diagnostics>,
}

/// Everything computed before the verdict.
pub struct OrbitData {
    pub algebra: LieAlgebra,
    pub chart: SliceChart,
    pub restrictions: Vec<SliceRestriction>,
    pub cache_hit: bool,
}

/// Algebra, triple, chart and restricted invariants of an orbit.
pub fn orbit_data(
    ty: ClassicalType,
    partition: &Partition,
    opts: &CheckOptions,
    cache: Option<&Cache>,
    deadline: &Deadline,
) -> Result<OrbitData> {
    let g = build_classical_with_limit(ty, opts.max_rank)?;
    let triple = standard_triple(&g, partition)?;
    deadline.check()?;
    let chart = slice_chart(&g, &triple)?;
    deadline.check()?;
    let cached = match cache {
        Some(c) => c.load(ty, partition, &chart)?,
        None => None,
    };
    let (restrictions, cache_hit) = match cached {
        Some(rs) => (rs, true),
        None => {
            let rs = restrict_invariants(&g, &chart, deadline)?;
            if let Some(c) = cache {
                c.store(ty, partition, &rs)?;
            }
            (rs, false)
        }
    };
    Ok(OrbitData {
        algebra: g,
        chart,
        restrictions,
        cache_hit,
    })
}

/// Runs the whole pipeline on one orbit.
pub fn check_orbit(
    ty: ClassicalType,
    partition: &Partition,
    opts: &CheckOptions,
    cache: Option<&Cache>,
) -> Result<GoodnessReport> {
    let start = Instant::now();
    let deadline = Deadline::after_secs(opts.time_budget_secs);
    let data = orbit_data(ty, partition, opts, cache, &deadline)?;
    let restriction_ms = start.elapsed().as_millis() as u64;
    let mid = Instant::now();
    let mut report = goodness_verdict(ty, partition, &data, opts, &deadline)?;
    if opts.include_diagnostics {
        report.diagnostics = Some(Diagnostics {
            cache_hit: data.cache_hit,
            restriction_ms,
            criterion_ms: mid.elapsed().as_millis() as u64,
            total_ms: start.elapsed().as_millis() as u64,
        });
    }
    Ok(report)
}

fn standard_candidate(restrictions: &[SliceRestriction]) -> Candidate {
    let l = restrictions.len();
    Candidate {
        combinations: restrictions
            .iter()
            .enumerate()
            .map(|(i, r)| Combination::standard(i, l, r.source_degree))
            .collect(),
        kappas: restrictions.iter().map(|r| r.kappa.clone()).collect(),
        initials: restrictions.iter().map(|r| r.initial.clone()).collect(),
        initial_degrees: restrictions.iter().map(|r| r.initial_degree).collect(),
    }
}

/// Criterion on the standard sequence, search when it fails, and the report.
pub fn goodness_verdict(
    ty: ClassicalType,
    partition: &Partition,
    data: &OrbitData,
    opts: &CheckOptions,
    deadline: &Deadline,
) -> Result<GoodnessReport> {
    let l = ty.rank;
    let r = data.chart.dim();
    let rs = &data.restrictions;
    let standard = standard_candidate(rs);

    let all_invariant = |c: &Candidate| -> Result<bool> {
        let checks: Vec<bool> = c
            .initials
            .par_iter()
            .map(|p| {
                deadline.check()?;
                ge_invariance_check(p, &data.chart)
            })
            .collect::<Result<_>>()?;
        Ok(checks.into_iter().all(|b| b))
    };
    if !all_invariant(&standard)? {
        return Err(Error::Structural(
            "an initial component is not invariant under the centralizer".into(),
        ));
    }

    deadline.check()?;
    let std_ind = independence(&standard.initials, r, l, opts.trials, opts.seed, deadline)?;
    let (verdict, reported, ind, search) = if std_ind.independent() {
        (Verdict::GoodCertified, standard.clone(), std_ind, None)
    } else if opts.search_budget == 0 {
        (
            Verdict::NotCertifiedStandard,
            standard.clone(),
            std_ind,
            None,
        )
    } else {
        let maximal: u32 = maximal_sequence(rs, r)?.initial_degrees.iter().sum();
        let found = perturbation_search(rs, r, r, opts.search_budget, opts.seed, deadline)?;
        match found {
            Some(out) => {
                let ind = independence(
                    &out.candidate.initials,
                    r,
                    l,
                    opts.trials,
                    opts.seed,
                    deadline,
                )?;
                let summary = SearchSummary {
                    budget: opts.search_budget,
                    found_at_trial: Some(out.trial),
                    maximal_degree_sum: maximal,
                };
                (Verdict::GoodCertified, out.candidate, ind, Some(summary))
            }
            None => {
                let summary = SearchSummary {
                    budget: opts.search_budget,
                    found_at_trial: None,
                    maximal_degree_sum: maximal,
                };
                let v = Verdict::LikelyNotGood {
                    search_trials: opts.search_budget,
                };
                (v, standard.clone(), std_ind, Some(summary))
            }
        }
    };
    if verdict == Verdict::GoodCertified && !ind.independent() {
        return Err(Error::Structural(
            "certified sequence is not independent".into(),
        ));
    }
    if reported.initials != standard.initials && !all_invariant(&reported)? {
        return Err(Error::Structural(
            "an initial component of the reported sequence is not invariant".into(),
        ));
    }

    deadline.check()?;
    let source_degrees: Vec<u32> = rs.iter().map(|r| r.source_degree).collect();
    let (hilbert, hilbert_cap) = if ind.independent() {
        let cap = if opts.hilbert_cap == 0 {
            2 * source_degrees.iter().copied().max().unwrap_or(0)
        } else {
            opts.hilbert_cap
        };
        let ok = hilbert_truncation_check(&reported.initials, &source_degrees, cap);
        deadline.check()?;
        if !ok {
            return Err(Error::Structural(
                "Hilbert series of independent initials does not match".into(),
            ));
        }
        (Some(ok), Some(cap))
    } else {
        (None, None)
    };

    let generators = rs
        .iter()
        .enumerate()
        .map(|(i, s)| GeneratorRow {
            label: s.kind.label(),
            degree: s.source_degree,
            slodowy_degree: 2 * s.source_degree,
            standard_initial_degree: s.initial_degree,
            initial_degree: reported.initial_degrees[i],
            combination: reported.combinations[i].to_text(),
        })
        .collect();
    let polynomials = opts.include_polynomials.then(|| {
        rs.iter()
            .enumerate()
            .map(|(i, s)| PolynomialDump {
                label: s.kind.label(),
                kappa: reported.kappas[i].to_text("t"),
                initial: reported.initials[i].to_text("t"),
            })
            .collect()
    });

    Ok(GoodnessReport {
        ty: ty.to_string(),
        rank: l,
        partition: partition.to_string(),
        very_even: ty.family == Family::D && partition.is_very_even(),
        normalization: NORMALIZATION.to_string(),
        dim_g: data.algebra.dim(),
        dim_ge: r,
        bound: ind.bound,
        generators,
        degrees: reported.initial_degrees.clone(),
        standard_degrees: standard.initial_degrees.clone(),
        independence: ind,
        search,
        verdict,
        checks: Checks {
            slodowy_homogeneous: true,
            initials_ge_invariant: true,
            hilbert_truncation: hilbert,
            hilbert_cap,
        },
        seed: opts.seed,
        polynomials,
        diagnostics: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(f: Family, l: usize, p: &str, budget: u32) -> GoodnessReport {
        let ty = ClassicalType::new(f, l).unwrap();
        let opts = CheckOptions {
            search_budget: budget,
            ..CheckOptions::default()
        };
        check_orbit(ty, &p.parse().unwrap(), &opts, None).unwrap()
    }

    #[test]
    fn sl2_cases() {
        let r = run(Family::A, 1, "2", 32);
        assert_eq!(
            (r.verdict, r.degrees.clone()),
            (Verdict::GoodCertified, vec![1])
        );
        let r = run(Family::A, 1, "1,1", 32);
        assert_eq!(
            (r.verdict, r.degrees.clone()),
            (Verdict::GoodCertified, vec![2])
        );
        assert_eq!(r.bound, 2);
    }

    #[test]
    fn search_disabled_vs_enabled() {
        // standard generators of so7 at (2,2,1,1,1) miss the bound by one
        let r = run(Family::B, 3, "2,2,1,1,1", 0);
        assert_eq!(r.verdict, Verdict::NotCertifiedStandard);
        assert_eq!(r.independence.gap, 1);
        let r = run(Family::B, 3, "2,2,1,1,1", 32);
        assert_eq!(r.verdict, Verdict::GoodCertified);
        assert_eq!(r.search.as_ref().unwrap().found_at_trial, Some(1));
        assert_eq!(r.independence.degree_sum, r.bound);
    }

    #[test]
    fn verdict_exit_codes() {
        assert_eq!(Verdict::GoodCertified.exit_code(), 0);
        assert_eq!(Verdict::LikelyNotGood { search_trials: 3 }.exit_code(), 10);
        assert_eq!(Verdict::NotCertifiedStandard.exit_code(), 11);
    }
}
