//! Toolkit for pairwise-comparisons (PC) matrices and triad-based
//! inconsistency analysis.
//!
//! The crate has four parts:
//!
//! * [`matrix`] — PC matrix validation, triad enumeration, consistency
//!   checks, and reconstruction of consistent matrices from minimal input;
//! * [`metric`] — a catalog of distances on the positive reals;
//! * [`deviation`] — triad deviations induced from those metrics, the
//!   named indicators `DI`/`EI`/`I1`/`Kii`/`PL`, matrix-level scoring and
//!   deviation/bounded/indicator classification;
//! * [`verify`] — a seeded falsification harness that checks the metric
//!   axioms and deviation conditions statistically and records exact,
//!   replayable witnesses for whatever breaks.
//!
//! Every computation runs in one of two numeric modes: exact rationals
//! (arbitrary precision, equality means equality) or `f64` (fast, used
//! for large randomized suites). Generic code takes a [`scalar::Scalar`]
//! type parameter; pick [`scalar::Rational`] or `f64` per run.
//!
//! All operations are pure functions of immutable inputs and safe to call
//! concurrently.

pub mod deviation;
pub mod matrix;
pub mod metric;
pub mod scalar;
pub mod verify;

pub use deviation::{
    classify, evaluate_named, induce_deviation, kii, matrix_inconsistency, pl, BoundVerdict,
    Classification, ClassifyConfig, InconsistencyReport, KiiForm, TriadDeviation, TriadScore,
};
pub use matrix::{parse_matrix_text, PcMatrix, Triad, Weights, DEFAULT_TOL};
pub use metric::{DeclaredBound, DomainError, Metric};
pub use scalar::{NumericMode, Rational, Scalar};
pub use verify::{
    check_deviation_conditions, check_metric_axioms, find_counterexample,
    find_metric_counterexample, probe_bound, scan_values, AxiomReport, BoundProbe,
    DeviationCondition, MetricAxiom, SampleMode, SamplePlan, Witness,
};
