//! Randomized and structured falsification of metric axioms and
//! triad-deviation conditions.
//!
//! Nothing in the catalog is trusted: every claimed metric is run against
//! the metric axioms and every claimed deviation against the deviation
//! conditions, over a deterministic seeded sample stream. A violation is
//! recorded as a witness whose inputs are stored as exact tokens, so
//! re-evaluating the single check reproduces the violation bit for bit.
//!
//! Sample streams are deterministic per `(seed, plan)`: every axiom draws
//! from its own ChaCha substream, and structured probes (a small integer
//! grid, plus a known hard 5-tuple for the generalized triangle) are
//! prepended ahead of the random tail. "First witness" therefore means
//! first in a reproducible stream, not first found by a racing worker.
//!
//! Tolerance discipline in float mode: inequality checks get slack only
//! on the violating side, scaled by the magnitude of the compared values
//! so that unbounded deviations (values up to 1e6 and beyond, where
//! 1 ulp alone exceeds any fixed absolute slack) do not drown the check
//! in rounding noise. Exact mode ignores tolerances entirely.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::deviation::TriadDeviation;
use crate::metric::{DeclaredBound, Metric};
use crate::scalar::{NumericMode, Scalar};

/// Relative separation required of a float-mode sample before the
/// "nonzero deviation off the consistent surface" direction is checked:
/// only triples with `|ac - b| >= margin * b` are eligible.
pub const ZERO_SEPARATION_MARGIN: f64 = 1e-6;

/// Default slack for float-mode inequality checks.
pub const DEFAULT_CHECK_TOLERANCE: f64 = 1e-12;

/// Default sampling domain, log-uniform per coordinate.
pub const DEFAULT_DOMAIN: (f64, f64) = (1e-3, 1e3);

/// Values of the structured probe grid; tuples over it are enumerated
/// lexicographically, which puts every ordering pattern of a triple
/// (all six, including the three the ratio-metric triangle proof cases
/// split on) into the stream head.
const GRID: [u64; 3] = [1, 2, 3];

/// The known generalized-triangle breaker, probed first.
const HARD_FIVE_TUPLE: [u64; 5] = [1, 3, 5, 1, 2];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error("domain lower bound must be positive, got {0}")]
    NonPositiveLower(f64),
    #[error("domain upper bound {hi} must exceed lower bound {lo}")]
    EmptyDomain { lo: f64, hi: f64 },
    #[error("sample count must be at least 1")]
    ZeroCount,
    #[error("tolerance must be non-negative, got {0}")]
    NegativeTolerance(f64),
}

/// How the random tail of a sample stream is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SampleMode {
    /// Exponent uniform over the domain; the default for ratio data.
    #[serde(rename = "uniform-log")]
    UniformLog,
    #[serde(rename = "uniform-linear")]
    UniformLinear,
    /// Structured probes only, no random tail.
    #[serde(rename = "structured-grid")]
    StructuredGrid,
}

/// A reproducible sampling plan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SamplePlan {
    pub seed: u64,
    pub count: u64,
    /// `[lo, hi]` interval for every coordinate, `lo > 0`.
    pub domain: (f64, f64),
    pub mode: SampleMode,
    /// Float-mode slack on inequality checks; ignored in rational mode.
    pub tolerance: f64,
}

impl SamplePlan {
    pub fn new(
        seed: u64,
        count: u64,
        domain: (f64, f64),
        mode: SampleMode,
        tolerance: f64,
    ) -> Result<Self, PlanError> {
        if domain.0 <= 0.0 {
            return Err(PlanError::NonPositiveLower(domain.0));
        }
        if domain.1 <= domain.0 {
            return Err(PlanError::EmptyDomain {
                lo: domain.0,
                hi: domain.1,
            });
        }
        if count == 0 {
            return Err(PlanError::ZeroCount);
        }
        if tolerance < 0.0 {
            return Err(PlanError::NegativeTolerance(tolerance));
        }
        Ok(SamplePlan {
            seed,
            count,
            domain,
            mode,
            tolerance,
        })
    }

    /// Log-uniform plan over the default domain with default tolerance.
    pub fn uniform_log(seed: u64, count: u64) -> Self {
        Self::new(
            seed,
            count,
            DEFAULT_DOMAIN,
            SampleMode::UniformLog,
            DEFAULT_CHECK_TOLERANCE,
        )
        .expect("default plan is valid")
    }

    /// Structured probes only.
    pub fn structured(tolerance: f64) -> Self {
        SamplePlan {
            seed: 0,
            count: 1,
            domain: DEFAULT_DOMAIN,
            mode: SampleMode::StructuredGrid,
            tolerance,
        }
    }
}

/// Metric axioms checked by [`check_metric_axioms`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetricAxiom {
    /// `d(x, x) = 0`.
    IdentityZero,
    /// `d(x, y) > 0` for `x != y`.
    PositiveDistinct,
    /// `d(x, y) = d(y, x)`.
    Symmetry,
    /// `d(x, z) <= d(x, y) + d(y, z)`.
    Triangle,
    /// `d < 1` (or `<= 1` where the bound is attained) when declared.
    Bound,
}

impl MetricAxiom {
    pub fn name(self) -> &'static str {
        match self {
            MetricAxiom::IdentityZero => "identity-zero",
            MetricAxiom::PositiveDistinct => "positive-distinct",
            MetricAxiom::Symmetry => "symmetry",
            MetricAxiom::Triangle => "triangle",
            MetricAxiom::Bound => "bound",
        }
    }

    fn arity(self) -> usize {
        match self {
            MetricAxiom::IdentityZero => 1,
            MetricAxiom::Triangle => 3,
            _ => 2,
        }
    }

    fn stream(self) -> u64 {
        match self {
            MetricAxiom::IdentityZero => 1,
            MetricAxiom::PositiveDistinct => 2,
            MetricAxiom::Symmetry => 3,
            MetricAxiom::Triangle => 4,
            MetricAxiom::Bound => 5,
        }
    }
}

/// Deviation conditions checked by [`check_deviation_conditions`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeviationCondition {
    /// `td(a, a*c, c) = 0`: zero on the consistent surface.
    ZeroForward,
    /// `td(a, b, c) > 0` off the consistent surface.
    ZeroReverse,
    /// `td(a, b, c) = td(b, a*c, 1)`.
    Commutation,
    /// `td(a, d*e, c) <= td(a, b, c) + td(d, b, e)`.
    GeneralizedTriangle,
    /// `td(a, b, c) = td(c, b, a)`.
    OuterSymmetry,
}

impl DeviationCondition {
    pub const ALL: [DeviationCondition; 5] = [
        DeviationCondition::ZeroForward,
        DeviationCondition::ZeroReverse,
        DeviationCondition::Commutation,
        DeviationCondition::GeneralizedTriangle,
        DeviationCondition::OuterSymmetry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            DeviationCondition::ZeroForward => "zero-forward",
            DeviationCondition::ZeroReverse => "zero-reverse",
            DeviationCondition::Commutation => "commutation",
            DeviationCondition::GeneralizedTriangle => "generalized-triangle",
            DeviationCondition::OuterSymmetry => "symmetry",
        }
    }

    /// Maps a CLI condition name to the checks it covers; `zero` covers
    /// both directions.
    pub fn from_query(name: &str) -> Option<Vec<DeviationCondition>> {
        match name.to_ascii_lowercase().as_str() {
            "zero" => Some(vec![
                DeviationCondition::ZeroForward,
                DeviationCondition::ZeroReverse,
            ]),
            "commutation" => Some(vec![DeviationCondition::Commutation]),
            "generalized-triangle" => Some(vec![DeviationCondition::GeneralizedTriangle]),
            "symmetry" => Some(vec![DeviationCondition::OuterSymmetry]),
            _ => None,
        }
    }

    /// Number of values drawn per sample (the consistent-surface check
    /// draws two and constructs the third).
    fn draw_arity(self) -> usize {
        match self {
            DeviationCondition::ZeroForward => 2,
            DeviationCondition::GeneralizedTriangle => 5,
            _ => 3,
        }
    }

    fn stream(self) -> u64 {
        match self {
            DeviationCondition::ZeroForward => 11,
            DeviationCondition::ZeroReverse => 12,
            DeviationCondition::Commutation => 13,
            DeviationCondition::GeneralizedTriangle => 14,
            DeviationCondition::OuterSymmetry => 15,
        }
    }
}

const STREAM_VALUE_SCAN: u64 = 21;

/// A violating input tuple, stored exactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// Input values as exact tokens; parsing them back reproduces the
    /// violation.
    pub inputs: Vec<String>,
    /// Evaluated side that broke the relation.
    pub lhs: String,
    /// The side it was compared against.
    pub rhs: String,
    /// Position in the deterministic sample stream (structured probes
    /// first, then the random tail).
    pub stream_index: u64,
}

/// Outcome of checking one axiom or condition over a stream.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomRecord {
    pub axiom: String,
    pub checked: u64,
    pub violations: u64,
    pub first_witness: Option<Witness>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
}

/// Full report for one target under one plan. Serializes with stable
/// field names; two runs with the same plan produce identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxiomReport {
    pub target: String,
    pub scalar: NumericMode,
    pub plan: SamplePlan,
    pub axioms: Vec<AxiomRecord>,
    pub verdict: Verdict,
}

impl AxiomReport {
    pub fn is_pass(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

struct ValueStream {
    rng: ChaCha8Rng,
    lo: f64,
    hi: f64,
    log_lo: f64,
    log_span: f64,
    linear: bool,
}

impl ValueStream {
    fn new(plan: &SamplePlan, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
        rng.set_stream(stream);
        let (lo, hi) = plan.domain;
        ValueStream {
            rng,
            lo,
            hi,
            log_lo: lo.log10(),
            log_span: hi.log10() - lo.log10(),
            linear: plan.mode == SampleMode::UniformLinear,
        }
    }

    fn next<T: Scalar>(&mut self) -> T {
        // 53 uniform bits -> [0, 1)
        let u = (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        let x = if self.linear {
            self.lo + u * (self.hi - self.lo)
        } else {
            10f64.powf(self.log_lo + u * self.log_span)
        };
        T::from_f64_exact(x)
    }

    fn tuple<T: Scalar>(&mut self, arity: usize) -> Vec<T> {
        (0..arity).map(|_| self.next()).collect()
    }
}

/// Lexicographic tuples over the probe grid.
fn grid_tuples<T: Scalar>(arity: usize) -> Vec<Vec<T>> {
    let mut out = Vec::with_capacity(GRID.len().pow(arity as u32));
    let mut idx = vec![0usize; arity];
    loop {
        out.push(idx.iter().map(|&i| T::from_u64(GRID[i])).collect());
        let mut pos = arity;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < GRID.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn structured_tuples<T: Scalar>(arity: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    if arity == 5 {
        out.push(HARD_FIVE_TUPLE.iter().map(|&v| T::from_u64(v)).collect());
    }
    out.extend(grid_tuples::<T>(arity));
    out
}

// ---------------------------------------------------------------------------
// Comparison helpers
// ---------------------------------------------------------------------------

fn slack(tol: f64, lhs: f64, rhs: f64) -> f64 {
    tol * lhs.abs().max(rhs.abs()).max(1.0)
}

/// `lhs > rhs` beyond slack: the inequality-check violation test.
fn exceeds<T: Scalar>(lhs: &T, rhs: &T, tol: f64) -> bool {
    if T::EXACT {
        lhs > rhs
    } else {
        let l = lhs.approx_f64();
        let r = rhs.approx_f64();
        l > r + slack(tol, l, r)
    }
}

/// `lhs != rhs` beyond slack: the equality-check violation test.
fn differs<T: Scalar>(lhs: &T, rhs: &T, tol: f64) -> bool {
    if T::EXACT {
        lhs != rhs
    } else {
        let l = lhs.approx_f64();
        let r = rhs.approx_f64();
        (l - r).abs() > slack(tol, l, r)
    }
}

// ---------------------------------------------------------------------------
// Single checks (shared by the streaming harness and witness re-evaluation)
// ---------------------------------------------------------------------------

/// Re-evaluates one metric axiom at a concrete input tuple. Returns the
/// evaluated `(lhs, rhs)` of the broken relation, or `None` when the
/// axiom holds (or the tuple is ineligible, e.g. equal points for the
/// positivity direction).
pub fn metric_violation<T: Scalar>(
    metric: &Metric,
    axiom: MetricAxiom,
    inputs: &[T],
    tolerance: f64,
) -> Option<(T, T)> {
    match axiom {
        MetricAxiom::IdentityZero => {
            let x = &inputs[0];
            let v = metric.eval_unchecked(x, x);
            exceeds(&v, &T::zero(), tolerance).then(|| (v, T::zero()))
        }
        MetricAxiom::PositiveDistinct => {
            let (x, y) = (&inputs[0], &inputs[1]);
            if x == y {
                return None;
            }
            let v = metric.eval_unchecked(x, y);
            (v <= T::zero()).then(|| (v, T::zero()))
        }
        MetricAxiom::Symmetry => {
            let (x, y) = (&inputs[0], &inputs[1]);
            let lhs = metric.eval_unchecked(x, y);
            let rhs = metric.eval_unchecked(y, x);
            differs(&lhs, &rhs, tolerance).then_some((lhs, rhs))
        }
        MetricAxiom::Triangle => {
            let (x, y, z) = (&inputs[0], &inputs[1], &inputs[2]);
            let lhs = metric.eval_unchecked(x, z);
            let rhs = metric.eval_unchecked(x, y) + metric.eval_unchecked(y, z);
            exceeds(&lhs, &rhs, tolerance).then_some((lhs, rhs))
        }
        MetricAxiom::Bound => {
            let (x, y) = (&inputs[0], &inputs[1]);
            let v = metric.eval_unchecked(x, y);
            let broken = match metric.declared_bound() {
                DeclaredBound::None => false,
                DeclaredBound::OneExclusive => v >= T::one(),
                DeclaredBound::OneInclusive => v > T::one(),
            };
            broken.then(|| (v, T::one()))
        }
    }
}

/// Re-evaluates one deviation condition at a concrete input tuple; see
/// [`metric_violation`] for the contract. The consistent-surface tuple
/// is given as the full `(a, b, c)` with `b` already equal to the
/// constructed product.
pub fn deviation_violation<T: Scalar>(
    td: &TriadDeviation,
    condition: DeviationCondition,
    inputs: &[T],
    tolerance: f64,
) -> Option<(T, T)> {
    match condition {
        DeviationCondition::ZeroForward => {
            let (a, b, c) = (&inputs[0], &inputs[1], &inputs[2]);
            let v = td.eval_unchecked(a, b, c);
            exceeds(&v, &T::zero(), tolerance).then(|| (v, T::zero()))
        }
        DeviationCondition::ZeroReverse => {
            let (a, b, c) = (&inputs[0], &inputs[1], &inputs[2]);
            let ac = a.clone() * c.clone();
            let eligible = if T::EXACT {
                ac != *b
            } else {
                (ac.clone() - b.clone()).abs().approx_f64()
                    >= ZERO_SEPARATION_MARGIN * b.approx_f64()
            };
            if !eligible {
                return None;
            }
            let v = td.eval_unchecked(a, b, c);
            (v <= T::zero()).then(|| (v, T::zero()))
        }
        DeviationCondition::Commutation => {
            let (a, b, c) = (&inputs[0], &inputs[1], &inputs[2]);
            let lhs = td.eval_unchecked(a, b, c);
            let ac = a.clone() * c.clone();
            let rhs = td.eval_unchecked(b, &ac, &T::one());
            differs(&lhs, &rhs, tolerance).then_some((lhs, rhs))
        }
        DeviationCondition::GeneralizedTriangle => {
            let (a, b, c, d, e) = (&inputs[0], &inputs[1], &inputs[2], &inputs[3], &inputs[4]);
            let de = d.clone() * e.clone();
            let lhs = td.eval_unchecked(a, &de, c);
            let rhs = td.eval_unchecked(a, b, c) + td.eval_unchecked(d, b, e);
            exceeds(&lhs, &rhs, tolerance).then_some((lhs, rhs))
        }
        DeviationCondition::OuterSymmetry => {
            let (a, b, c) = (&inputs[0], &inputs[1], &inputs[2]);
            let lhs = td.eval_unchecked(a, b, c);
            let rhs = td.eval_unchecked(c, b, a);
            differs(&lhs, &rhs, tolerance).then_some((lhs, rhs))
        }
    }
}

// ---------------------------------------------------------------------------
// Streaming runners
// ---------------------------------------------------------------------------

struct RecordBuilder {
    axiom: &'static str,
    checked: u64,
    violations: u64,
    first_witness: Option<Witness>,
}

impl RecordBuilder {
    fn new(axiom: &'static str) -> Self {
        RecordBuilder {
            axiom,
            checked: 0,
            violations: 0,
            first_witness: None,
        }
    }

    fn observe<T: Scalar>(
        &mut self,
        inputs: &[T],
        outcome: Option<(T, T)>,
        eligible: bool,
        stream_index: u64,
    ) {
        if eligible {
            self.checked += 1;
        }
        if let Some((lhs, rhs)) = outcome {
            self.violations += 1;
            if self.first_witness.is_none() {
                self.first_witness = Some(Witness {
                    inputs: inputs.iter().map(Scalar::render).collect(),
                    lhs: lhs.render(),
                    rhs: rhs.render(),
                    stream_index,
                });
            }
        }
    }

    fn finish(self) -> AxiomRecord {
        AxiomRecord {
            axiom: self.axiom.to_string(),
            checked: self.checked,
            violations: self.violations,
            first_witness: self.first_witness,
        }
    }
}

fn run_metric_axiom<T: Scalar>(
    metric: &Metric,
    axiom: MetricAxiom,
    plan: &SamplePlan,
) -> AxiomRecord {
    let mut rec = RecordBuilder::new(axiom.name());
    let arity = axiom.arity();
    let mut index = 0u64;

    let step = |inputs: &[T], rec: &mut RecordBuilder, index: &mut u64| {
        let eligible = match axiom {
            MetricAxiom::PositiveDistinct => inputs[0] != inputs[1],
            _ => true,
        };
        let outcome = metric_violation(metric, axiom, inputs, plan.tolerance);
        rec.observe(inputs, outcome, eligible, *index);
        *index += 1;
    };

    for tuple in structured_tuples::<T>(arity) {
        step(&tuple, &mut rec, &mut index);
    }
    if plan.mode != SampleMode::StructuredGrid {
        let mut stream = ValueStream::new(plan, axiom.stream());
        for _ in 0..plan.count {
            let tuple = stream.tuple::<T>(arity);
            step(&tuple, &mut rec, &mut index);
        }
    }
    rec.finish()
}

fn run_deviation_condition<T: Scalar>(
    td: &TriadDeviation,
    condition: DeviationCondition,
    plan: &SamplePlan,
) -> AxiomRecord {
    let mut rec = RecordBuilder::new(condition.name());
    let arity = condition.draw_arity();
    let mut index = 0u64;

    let step = |drawn: &[T], rec: &mut RecordBuilder, index: &mut u64| {
        // the consistent-surface check draws (a, c) and constructs b = a*c
        let inputs: Vec<T> = if condition == DeviationCondition::ZeroForward {
            let b = drawn[0].clone() * drawn[1].clone();
            vec![drawn[0].clone(), b, drawn[1].clone()]
        } else {
            drawn.to_vec()
        };
        let eligible = match condition {
            DeviationCondition::ZeroReverse => {
                let ac = inputs[0].clone() * inputs[2].clone();
                if T::EXACT {
                    ac != inputs[1]
                } else {
                    (ac - inputs[1].clone()).abs().approx_f64()
                        >= ZERO_SEPARATION_MARGIN * inputs[1].approx_f64()
                }
            }
            _ => true,
        };
        let outcome = deviation_violation(td, condition, &inputs, plan.tolerance);
        rec.observe(&inputs, outcome, eligible, *index);
        *index += 1;
    };

    for tuple in structured_tuples::<T>(arity) {
        step(&tuple, &mut rec, &mut index);
    }
    if plan.mode != SampleMode::StructuredGrid {
        let mut stream = ValueStream::new(plan, condition.stream());
        for _ in 0..plan.count {
            let tuple = stream.tuple::<T>(arity);
            step(&tuple, &mut rec, &mut index);
        }
    }
    rec.finish()
}

fn verdict_of(records: &[AxiomRecord]) -> Verdict {
    if records.iter().all(|r| r.violations == 0) {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

/// Checks identity of indiscernibles (both directions), symmetry, the
/// triangle inequality, and the declared bound if any, over the plan's
/// streams. Failures land in the report, never in an error.
pub fn check_metric_axioms<T: Scalar>(metric: &Metric, plan: &SamplePlan) -> AxiomReport {
    let mut axioms = vec![
        run_metric_axiom::<T>(metric, MetricAxiom::IdentityZero, plan),
        run_metric_axiom::<T>(metric, MetricAxiom::PositiveDistinct, plan),
        run_metric_axiom::<T>(metric, MetricAxiom::Symmetry, plan),
        run_metric_axiom::<T>(metric, MetricAxiom::Triangle, plan),
    ];
    if metric.declared_bound().is_some() {
        axioms.push(run_metric_axiom::<T>(metric, MetricAxiom::Bound, plan));
    }
    let verdict = verdict_of(&axioms);
    AxiomReport {
        target: metric.name(),
        scalar: T::MODE,
        plan: plan.clone(),
        axioms,
        verdict,
    }
}

/// Checks the deviation conditions: zero on (and only on) the consistent
/// surface, commutation, the generalized triangle inequality, and outer
/// symmetry.
pub fn check_deviation_conditions<T: Scalar>(
    td: &TriadDeviation,
    plan: &SamplePlan,
) -> AxiomReport {
    let axioms: Vec<AxiomRecord> = DeviationCondition::ALL
        .iter()
        .map(|&c| run_deviation_condition::<T>(td, c, plan))
        .collect();
    let verdict = verdict_of(&axioms);
    AxiomReport {
        target: td.name(),
        scalar: T::MODE,
        plan: plan.clone(),
        axioms,
        verdict,
    }
}

/// First violating tuple of one condition under the plan's deterministic
/// stream, or `None`.
pub fn find_counterexample<T: Scalar>(
    td: &TriadDeviation,
    condition: DeviationCondition,
    plan: &SamplePlan,
) -> Option<Witness> {
    run_deviation_condition::<T>(td, condition, plan).first_witness
}

/// First violating tuple of one metric axiom, or `None`.
pub fn find_metric_counterexample<T: Scalar>(
    metric: &Metric,
    axiom: MetricAxiom,
    plan: &SamplePlan,
) -> Option<Witness> {
    run_metric_axiom::<T>(metric, axiom, plan).first_witness
}

// ---------------------------------------------------------------------------
// Boundedness probing
// ---------------------------------------------------------------------------

/// One point of the growth schedule `(1, 10^k, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbePoint {
    pub exponent: u32,
    /// The middle argument `10^k` as a token.
    pub argument: String,
    /// `td(1, 10^k, 1)` as a token; `"overflow"` if not finite.
    pub value: String,
    pub value_approx: f64,
}

/// Growth-schedule evidence about boundedness. Float overflow counts as
/// evidence of unboundedness, not as a failure.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundProbe {
    pub target: String,
    pub scalar: NumericMode,
    pub points: Vec<ProbePoint>,
    /// Largest finite value over the schedule, as a token.
    pub max_value: String,
    pub max_value_approx: f64,
    pub exceeds_one: bool,
    /// Smallest exponent whose value exceeds `10^6`, if any.
    pub first_exponent_exceeding_million: Option<u32>,
    pub overflowed: bool,
}

impl BoundProbe {
    pub fn exceeds_million(&self) -> bool {
        self.first_exponent_exceeding_million.is_some() || self.overflowed
    }
}

/// Evaluates `td(1, 10^k, 1)` for each scheduled exponent.
pub fn probe_bound<T: Scalar>(td: &TriadDeviation, exponents: &[u32]) -> BoundProbe {
    assert!(!exponents.is_empty(), "growth schedule must be non-empty");
    let one = T::one();
    let million = T::from_u64(1_000_000);
    let ten = T::from_u64(10);

    let mut points = Vec::with_capacity(exponents.len());
    let mut max_value: Option<T> = None;
    let mut exceeds_one = false;
    let mut first_million: Option<u32> = None;
    let mut overflowed = false;

    for &k in exponents {
        let arg = crate::scalar::pow_u32(&ten, k);
        let v = td.eval_unchecked(&one, &arg, &one);
        if !v.is_finite_val() {
            overflowed = true;
            if first_million.is_none() {
                first_million = Some(k);
            }
            points.push(ProbePoint {
                exponent: k,
                argument: arg.render(),
                value: "overflow".to_string(),
                value_approx: f64::INFINITY,
            });
            continue;
        }
        if v > one {
            exceeds_one = true;
        }
        if v > million && first_million.is_none() {
            first_million = Some(k);
        }
        points.push(ProbePoint {
            exponent: k,
            argument: arg.render(),
            value: v.render(),
            value_approx: v.approx_f64(),
        });
        if max_value.as_ref().is_none_or(|m| v > *m) {
            max_value = Some(v);
        }
    }

    let max_value = max_value.unwrap_or_else(T::zero);
    BoundProbe {
        target: td.name(),
        scalar: T::MODE,
        points,
        max_value: max_value.render(),
        max_value_approx: max_value.approx_f64(),
        exceeds_one,
        first_exponent_exceeding_million: first_million,
        overflowed,
    }
}

/// Evidence from scanning indicator values over random triads.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValueScan {
    pub target: String,
    pub samples: u64,
    pub max_value: String,
    pub max_value_approx: f64,
    pub exceeded_one: bool,
}

/// Tracks the largest value of `td` over structured and random triads.
pub fn scan_values<T: Scalar>(td: &TriadDeviation, plan: &SamplePlan) -> ValueScan {
    let mut max: Option<T> = None;
    let mut samples = 0u64;
    let mut feed = |t: &[T]| {
        let v = td.eval_unchecked(&t[0], &t[1], &t[2]);
        if max.as_ref().is_none_or(|m| v > *m) {
            max = Some(v);
        }
        samples += 1;
    };
    for tuple in structured_tuples::<T>(3) {
        feed(&tuple);
    }
    if plan.mode != SampleMode::StructuredGrid {
        let mut stream = ValueStream::new(plan, STREAM_VALUE_SCAN);
        for _ in 0..plan.count {
            let tuple = stream.tuple::<T>(3);
            feed(&tuple);
        }
    }
    let max = max.unwrap_or_else(T::zero);
    ValueScan {
        target: td.name(),
        samples,
        max_value: max.render(),
        max_value_approx: max.approx_f64(),
        exceeded_one: max > T::one(),
    }
}
