//! Human and JSON rendering of reports and scans.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pipeline::{GoodnessReport, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Json,
}

/// Pretty JSON with keys in declaration order and a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s =
        serde_json::to_string_pretty(value).map_err(|e| Error::Structural(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn report_from_json(text: &str) -> Result<GoodnessReport> {
    serde_json::from_str(text).map_err(|e| Error::Validation(format!("bad report JSON: {e}")))
}

pub fn render_report(r: &GoodnessReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => to_json(r),
        OutputFormat::Human => Ok(human_report(r)),
    }
}

/// Aligned table of degrees followed by the criterion and the verdict.
pub fn human_report(r: &GoodnessReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "type {}  partition {}  (dim g = {}, dim g^e = {}, rank ℓ = {})",
        r.ty, r.partition, r.dim_g, r.dim_ge, r.rank
    );
    let _ = writeln!(s, "normalization: {}", r.normalization);
    if r.very_even {
        let _ = writeln!(
            s,
            "very even: yes (one of the two orbits with this partition was checked)"
        );
    }
    let _ = writeln!(s);
    let headers = [
        "i",
        "generator",
        "d_i",
        "std deg ^e q_i",
        "deg ^e q_i",
        "Slodowy 2d_i",
    ];
    let rows: Vec<[String; 6]> = r
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            [
                (i + 1).to_string(),
                g.label.clone(),
                g.degree.to_string(),
                g.standard_initial_degree.to_string(),
                g.initial_degree.to_string(),
                g.slodowy_degree.to_string(),
            ]
        })
        .collect();
    let widths: Vec<usize> = (0..headers.len())
        .map(|c| {
            rows.iter()
                .map(|row| row[c].chars().count())
                .chain(std::iter::once(headers[c].chars().count()))
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| -> String {
        let mut out = String::from(" ");
        for (c, cell) in cells.iter().enumerate() {
            let pad = widths[c] - cell.chars().count();
            if c == 1 {
                out.push(' ');
                out.push_str(cell);
                out.push_str(&" ".repeat(pad));
            } else {
                out.push(' ');
                out.push_str(&" ".repeat(pad));
                out.push_str(cell);
            }
            out.push(' ');
        }
        out.trim_end().to_string()
    };
    let header_cells: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    let _ = writeln!(s, "{}", line(&header_cells));
    for row in &rows {
        let _ = writeln!(s, "{}", line(row));
    }
    if r.degrees != r.standard_degrees {
        let _ = writeln!(s);
        let _ = writeln!(s, "generating sequence:");
        for (i, g) in r.generators.iter().enumerate() {
            let _ = writeln!(s, "  q'{} = {}", i + 1, g.combination);
        }
    }
    let _ = writeln!(s);
    let ind = &r.independence;
    let _ = writeln!(s, "degree sum = {}", ind.degree_sum);
    let _ = writeln!(s, "bound = (dim g^e + ℓ)/2 = {}", ind.bound);
    let _ = writeln!(
        s,
        "jacobian rank = {} of {} ({}, {} trials)",
        ind.jacobian_rank, r.rank, ind.rank_method, ind.trials
    );
    if let Some(search) = &r.search {
        let found = match search.found_at_trial {
            Some(t) => format!("bound reached at trial {t}"),
            None => "no sequence reaches the bound".to_string(),
        };
        let _ = writeln!(
            s,
            "search: budget {}, maximal degree sum {}, {found}",
            search.budget, search.maximal_degree_sum
        );
    }
    if let (Some(ok), Some(cap)) = (r.checks.hilbert_truncation, r.checks.hilbert_cap) {
        let _ = writeln!(
            s,
            "hilbert series check up to Slodowy degree {cap}: {}",
            if ok { "pass" } else { "FAIL" }
        );
    }
    let _ = writeln!(s, "verdict: {}", r.verdict);
    if let Some(polys) = &r.polynomials {
        let _ = writeln!(s);
        for p in polys {
            let _ = writeln!(s, "kappa({}) = {}", p.label, p.kappa);
            let _ = writeln!(s, "^e {} = {}", p.label, p.initial);
        }
    }
    if let Some(d) = &r.diagnostics {
        let _ = writeln!(
            s,
            "cache hit: {}, restriction {} ms, criterion {} ms, total {} ms",
            d.cache_hit, d.restriction_ms, d.criterion_ms, d.total_ms
        );
    }
    s
}

/// Statements behind the verdict, appended to the report by `explain`.
pub fn explanation(r: &GoodnessReport) -> String {
    let mut s = human_report(r);
    let _ = writeln!(s);
    let _ = writeln!(s, "why:");
    let lines = [
        "* kappa(q) = q(e + sum_j t_j z_j) is the restriction of q to the Slodowy slice e + g^f,",
        "  in coordinates t_j along a basis z_j of g^f with ad h weight -m_j.",
        "* kappa(q) of a degree d invariant is homogeneous of degree 2d when t_j has weight m_j + 2",
        "  (checked on every run).",
        "* ^e q, the lowest standard-degree part of kappa(q), is invariant under g^e (checked).",
        "* For homogeneous invariants q_1..q_l: sum_i deg ^e q_i <= (dim g^e + l)/2, with equality",
        "  if and only if the ^e q_i are algebraically independent (cross-checked by Jacobian rank).",
        "* e is good if and only if some homogeneous generating sequence of the invariants of g has",
        "  algebraically independent initial components; one such sequence certifies goodness.",
        "* Every homogeneous generating sequence differs from the standard one by same-degree mixing",
        "  and products of lower-degree generators; search trial 1 maximizes the initial degrees",
        "  over all of them by exact elimination.",
    ];
    for l in lines {
        let _ = writeln!(s, "{l}");
    }
    let verdict_line = match r.verdict {
        Verdict::GoodCertified => "verdict GoodCertified: the reported sequence reaches the bound.".to_string(),
        Verdict::NotCertifiedStandard => {
            "verdict NotCertifiedStandard: the standard sequence misses the bound and the search was disabled."
                .to_string()
        }
        Verdict::LikelyNotGood { search_trials } => format!(
            "verdict LikelyNotGood: {search_trials} search trials, none reaches the bound."
        ),
    };
    let _ = writeln!(s, "{verdict_line}");
    s
}

/// Outcome of one orbit within a scan.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ScanOutcome {
    Done { report: Box<GoodnessReport> },
    Skipped { reason: String },
    Error { message: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRow {
    pub partition: String,
    pub very_even: bool,
    pub outcome: ScanOutcome,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSummary {
    pub total: usize,
    pub good_certified: usize,
    pub not_certified_standard: usize,
    pub likely_not_good: usize,
    pub skipped: usize,
    pub errors: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    #[serde(rename = "type")]
    pub ty: String,
    pub rank: usize,
    pub rows: Vec<ScanRow>,
    pub summary: ScanSummary,
}

impl ScanReport {
    pub fn new(ty: String, rank: usize, rows: Vec<ScanRow>) -> Self {
        let mut summary = ScanSummary {
            total: rows.len(),
            ..ScanSummary::default()
        };
        for row in &rows {
            match &row.outcome {
                ScanOutcome::Done { report } => match report.verdict {
                    Verdict::GoodCertified => summary.good_certified += 1,
                    Verdict::NotCertifiedStandard => summary.not_certified_standard += 1,
                    Verdict::LikelyNotGood { .. } => summary.likely_not_good += 1,
                },
                ScanOutcome::Skipped { .. } => summary.skipped += 1,
                ScanOutcome::Error { .. } => summary.errors += 1,
            }
        }
        ScanReport {
            ty,
            rank,
            rows,
            summary,
        }
    }
}

pub fn render_scan(scan: &ScanReport, format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => to_json(scan),
        OutputFormat::Human => Ok(human_scan(scan)),
    }
}

fn human_scan(scan: &ScanReport) -> String {
    let mut rows: Vec<[String; 5]> = vec![[
        "partition".into(),
        "dim g^e".into(),
        "deg ^e q_i".into(),
        "sum/bound".into(),
        "verdict".into(),
    ]];
    for row in &scan.rows {
        let label = if row.very_even {
            format!("{} (very even)", row.partition)
        } else {
            row.partition.clone()
        };
        let cells = match &row.outcome {
            ScanOutcome::Done { report } => [
                label,
                report.dim_ge.to_string(),
                format!("{:?}", report.degrees),
                format!("{}/{}", report.independence.degree_sum, report.bound),
                report.verdict.to_string(),
            ],
            ScanOutcome::Skipped { reason } => [
                label,
                "-".into(),
                "-".into(),
                "-".into(),
                format!("skipped: {reason}"),
            ],
            ScanOutcome::Error { message } => [
                label,
                "-".into(),
                "-".into(),
                "-".into(),
                format!("error: {message}"),
            ],
        };
        rows.push(cells);
    }
    let widths: Vec<usize> = (0..4)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut s = format!("scan of type {} (rank {})\n", scan.ty, scan.rank);
    for r in &rows {
        let mut line = String::from(" ");
        for c in 0..4 {
            line.push_str(&format!(" {:<w$}", r[c], w = widths[c]));
        }
        line.push_str(&format!("  {}", r[4]));
        let _ = writeln!(s, "{}", line.trim_end());
    }
    let m = &scan.summary;
    let _ = writeln!(
        s,
        "total {}: GoodCertified {}, NotCertifiedStandard {}, LikelyNotGood {}, skipped {}, errors {}",
        m.total, m.good_certified, m.not_certified_standard, m.likely_not_good, m.skipped, m.errors
    );
    s
}
