//! Report rendering: structured JSON documents and human-readable text.

use serde::Serialize;

use triadic::deviation::{Classification, InconsistencyReport};
use triadic::matrix::PcMatrix;
use triadic::scalar::{NumericMode, Scalar};
use triadic::verify::AxiomReport;

/// Text mode lists at most this many per-triad rows; structured output
/// is never truncated.
const TEXT_ROW_CAP: usize = 10_000;

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}

#[derive(Serialize)]
pub struct MatrixSummary {
    pub n: usize,
    pub reciprocal: bool,
    pub consistent: bool,
    pub tolerance: f64,
}

#[derive(Serialize)]
pub struct TriadRow {
    pub indices: (usize, usize, usize),
    pub a: String,
    pub b: String,
    pub c: String,
    pub value: String,
}

#[derive(Serialize)]
pub struct AnalyzeDoc {
    pub command: &'static str,
    pub target: String,
    pub scalar: NumericMode,
    pub matrix: MatrixSummary,
    pub score: String,
    pub score_approx: f64,
    pub worst: Option<(usize, usize, usize)>,
    pub no_triads: bool,
    pub per_triad: Vec<TriadRow>,
}

fn triad_rows<T: Scalar>(
    matrix: &PcMatrix<T>,
    report: &InconsistencyReport<T>,
    cap: Option<usize>,
) -> Vec<TriadRow> {
    let take = cap.unwrap_or(report.per_triad.len());
    report
        .per_triad
        .iter()
        .take(take)
        .map(|ts| {
            let (i, j, k) = ts.indices;
            let t = matrix.triad_at(i, j, k);
            TriadRow {
                indices: ts.indices,
                a: t.values.0.render(),
                b: t.values.1.render(),
                c: t.values.2.render(),
                value: ts.value.render(),
            }
        })
        .collect()
}

pub fn analyze_document<T: Scalar>(
    matrix: &PcMatrix<T>,
    consistent: bool,
    tolerance: f64,
    report: &InconsistencyReport<T>,
    scalar: NumericMode,
) -> AnalyzeDoc {
    AnalyzeDoc {
        command: "analyze",
        target: report.indicator.clone(),
        scalar,
        matrix: MatrixSummary {
            n: matrix.n(),
            reciprocal: matrix.is_reciprocal(),
            consistent,
            tolerance,
        },
        score: report.score.render(),
        score_approx: report.score.approx_f64(),
        worst: report.worst,
        no_triads: report.no_triads,
        per_triad: triad_rows(matrix, report, None),
    }
}

pub fn analyze_text<T: Scalar>(
    matrix: &PcMatrix<T>,
    consistent: bool,
    tolerance: f64,
    report: &InconsistencyReport<T>,
    scalar: NumericMode,
) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "matrix: {n}x{n}  reciprocal: {rec}  consistent: {cons}  (mode {scalar}, tol {tol})\n",
        n = matrix.n(),
        rec = yes_no(matrix.is_reciprocal()),
        cons = yes_no(consistent),
        tol = tolerance.render(),
    ));
    out.push_str(&format!("indicator: {}\n", report.indicator));
    if report.no_triads {
        out.push_str("no triads (n < 3); score 0 by convention\n");
    } else {
        out.push_str("per-triad values:\n");
        for row in triad_rows(matrix, report, Some(TEXT_ROW_CAP)) {
            let (i, j, k) = row.indices;
            out.push_str(&format!(
                "  ({i},{j},{k})  a={}  b={}  c={}  value={}\n",
                row.a, row.b, row.c, row.value
            ));
        }
        let total = report.per_triad.len();
        if total > TEXT_ROW_CAP {
            out.push_str(&format!(
                "  ... truncated: showing {TEXT_ROW_CAP} of {total} triads\n"
            ));
        }
    }
    out.push_str(&format!("score: {}\n", report.score.render()));
    if let Some((i, j, k)) = report.worst {
        out.push_str(&format!("worst triad: ({i},{j},{k})\n"));
    }
    out
}

pub fn axioms_text(report: &AxiomReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "target: {}  (mode {})\n",
        report.target, report.scalar
    ));
    let (lo, hi) = report.plan.domain;
    out.push_str(&format!(
        "plan: seed={} count={} domain=[{}, {}] mode={} tol={}\n",
        report.plan.seed,
        report.plan.count,
        lo.render(),
        hi.render(),
        sample_mode_name(&report.plan),
        report.plan.tolerance.render(),
    ));
    for rec in &report.axioms {
        out.push_str(&format!(
            "  {:<22} checked={:<8} violations={}\n",
            rec.axiom, rec.checked, rec.violations
        ));
        if let Some(w) = &rec.first_witness {
            out.push_str(&format!(
                "    first witness: ({}) sides {} vs {} (stream index {})\n",
                w.inputs.join(", "),
                w.lhs,
                w.rhs,
                w.stream_index
            ));
        }
    }
    out.push_str(&format!(
        "verdict: {}\n",
        if report.is_pass() { "pass" } else { "fail" }
    ));
    out
}

fn sample_mode_name(plan: &triadic::verify::SamplePlan) -> &'static str {
    match plan.mode {
        triadic::verify::SampleMode::UniformLog => "uniform-log",
        triadic::verify::SampleMode::UniformLinear => "uniform-linear",
        triadic::verify::SampleMode::StructuredGrid => "structured-grid",
    }
}

pub fn classify_text(c: &Classification) -> String {
    let mut out = String::new();
    out.push_str(&format!("target: {}  (mode {})\n", c.target, c.scalar));
    out.push_str(&format!("deviation: {}\n", yes_no(c.is_deviation)));
    for fc in &c.witnesses {
        out.push_str(&format!(
            "  violated {}: ({}) sides {} vs {}\n",
            fc.condition,
            fc.witness.inputs.join(", "),
            fc.witness.lhs,
            fc.witness.rhs
        ));
    }
    out.push_str(&format!(
        "bounded: {} ({})\n",
        yes_no(c.is_bounded),
        c.bound_verdict.name()
    ));
    out.push_str(&format!("indicator: {}\n", yes_no(c.is_indicator)));
    out.push_str(&format!(
        "max value observed: {} (~{})\n",
        c.max_observed,
        c.max_observed_approx.render()
    ));
    out.push_str("growth schedule (1, 10^k, 1):\n");
    for p in &c.probe.points {
        out.push_str(&format!("  k={:<3} value={}\n", p.exponent, p.value));
    }
    if let Some(k) = c.probe.first_exponent_exceeding_million {
        out.push_str(&format!("exceeds 1e6 from k={k}\n"));
    }
    if c.probe.overflowed {
        out.push_str("float overflow in schedule: evidence of unboundedness\n");
    }
    out
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
