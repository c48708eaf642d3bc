//! Triad deviations and inconsistency indicators.
//!
//! A triad deviation is a ternary map `td(a, b, c) = d(a*c, b)` for some
//! metric `d`; it measures how far a triad is from the consistency
//! condition `a*c = b`. The named family:
//!
//! * `DI`  — induced by the discrete metric; zero-or-one verdict
//! * `EI`  — induced by `|x - y|`; unbounded
//! * `I1`  — induced by `|x - y| / (1 + |x - y|)`; values in `[0, 1)`
//! * `Kii` — `1 - min(b/(ac), ac/b)`, the distance-based indicator;
//!   pointwise equal to the deviation induced by the `ratio` metric
//! * `PL`  — `b/(ac) + ac/b - 2`; cataloged for comparison, but it is
//!   unbounded and violates the generalized triangle inequality, so it
//!   is *not* a triad deviation
//!
//! Indicators are evaluated per triad; the matrix-level score aggregates
//! by maximum over all triads, which is plumbing on top of the per-triad
//! math, not part of it.

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{PcMatrix, Triad};
use crate::metric::{DeclaredBound, DomainError, Metric};
use crate::scalar::{min2, NumericMode, Scalar};
use crate::verify::{
    check_deviation_conditions, probe_bound, scan_values, AxiomReport, BoundProbe, SamplePlan,
    Witness,
};

/// Which of the three equivalent Kii formulas to evaluate.
///
/// The forms agree pointwise; keeping all three lets the harness check
/// that claim numerically instead of trusting it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KiiForm {
    /// `min(|1 - b/(ac)|, |1 - ac/b|)`, the original form.
    MinAbs,
    /// `1 - min(b/(ac), ac/b)`, the simplified canonical form.
    #[default]
    OneMinusMin,
    /// `1 - e^{-|ln(b/(ac))|}`. Floats take the literal transcendental
    /// route; the exact backend evaluates it through the identity
    /// `e^{-|ln r|} = min(r, 1/r)`.
    Exponential,
}

impl KiiForm {
    pub const ALL: [KiiForm; 3] = [KiiForm::MinAbs, KiiForm::OneMinusMin, KiiForm::Exponential];

    pub fn name(self) -> &'static str {
        match self {
            KiiForm::MinAbs => "min-abs",
            KiiForm::OneMinusMin => "one-minus-min",
            KiiForm::Exponential => "exponential",
        }
    }

    pub fn from_name(name: &str) -> Option<KiiForm> {
        match name.to_ascii_lowercase().as_str() {
            "min-abs" => Some(KiiForm::MinAbs),
            "one-minus-min" => Some(KiiForm::OneMinusMin),
            "exponential" => Some(KiiForm::Exponential),
            _ => None,
        }
    }
}

/// A named ternary candidate: either a deviation induced from a metric,
/// or an explicit formula.
#[derive(Debug, Clone, PartialEq)]
pub enum TriadDeviation {
    /// `td(a, b, c) = d(a*c, b)` for the wrapped metric `d`.
    Induced(Metric),
    /// The distance-based indicator in one of its three forms.
    Kii(KiiForm),
    /// `b/(ac) + ac/b - 2`; not a deviation, kept as the counterexample.
    Pl,
}

/// The deviation induced by a metric via `td(a, b, c) = d(a*c, b)`.
pub fn induce_deviation(metric: Metric) -> TriadDeviation {
    TriadDeviation::Induced(metric)
}

impl TriadDeviation {
    pub fn name(&self) -> String {
        match self {
            TriadDeviation::Induced(Metric::Discrete) => "DI".to_string(),
            TriadDeviation::Induced(Metric::Euclidean) => "EI".to_string(),
            TriadDeviation::Induced(Metric::D1) => "I1".to_string(),
            TriadDeviation::Induced(Metric::BoundedRatio) => "Kii".to_string(),
            TriadDeviation::Induced(m) => format!("induced({})", m.name()),
            TriadDeviation::Kii(_) => "Kii".to_string(),
            TriadDeviation::Pl => "PL".to_string(),
        }
    }

    /// Looks up an indicator by its report name: `DI`, `EI`, `I1`, `Kii`,
    /// or `PL`.
    pub fn from_name(name: &str) -> Option<TriadDeviation> {
        match name.to_ascii_lowercase().as_str() {
            "di" => Some(TriadDeviation::Induced(Metric::Discrete)),
            "ei" => Some(TriadDeviation::Induced(Metric::Euclidean)),
            "i1" => Some(TriadDeviation::Induced(Metric::D1)),
            "kii" => Some(TriadDeviation::Kii(KiiForm::default())),
            "pl" => Some(TriadDeviation::Pl),
            _ => None,
        }
    }

    /// Where the formula comes from, as recorded in reports.
    pub fn origin(&self) -> String {
        match self {
            TriadDeviation::Induced(m) => format!("induced-from-metric({})", m.name()),
            _ => "explicit-formula".to_string(),
        }
    }

    pub fn declared_bound(&self) -> DeclaredBound {
        match self {
            TriadDeviation::Induced(m) => m.declared_bound(),
            TriadDeviation::Kii(_) => DeclaredBound::OneExclusive,
            TriadDeviation::Pl => DeclaredBound::None,
        }
    }

    /// Evaluates the deviation, rejecting non-positive arguments.
    pub fn eval<T: Scalar>(&self, a: &T, b: &T, c: &T) -> Result<T, DomainError> {
        if !a.is_strictly_positive() || !b.is_strictly_positive() || !c.is_strictly_positive() {
            return Err(DomainError);
        }
        Ok(self.eval_unchecked(a, b, c))
    }

    /// Evaluation on arguments already known to be positive.
    pub(crate) fn eval_unchecked<T: Scalar>(&self, a: &T, b: &T, c: &T) -> T {
        match self {
            TriadDeviation::Induced(m) => {
                let ac = a.clone() * c.clone();
                m.eval_unchecked(&ac, b)
            }
            TriadDeviation::Kii(form) => kii_unchecked(a, b, c, *form),
            TriadDeviation::Pl => {
                let ac = a.clone() * c.clone();
                b.clone() / ac.clone() + ac / b.clone() - (T::one() + T::one())
            }
        }
    }
}

fn kii_unchecked<T: Scalar>(a: &T, b: &T, c: &T, form: KiiForm) -> T {
    let ac = a.clone() * c.clone();
    match form {
        KiiForm::MinAbs => {
            let r = b.clone() / ac.clone();
            let q = ac / b.clone();
            min2((T::one() - r).abs(), (T::one() - q).abs())
        }
        KiiForm::OneMinusMin => {
            let r = b.clone() / ac.clone();
            let q = ac / b.clone();
            T::one() - min2(r, q)
        }
        KiiForm::Exponential => {
            let r = b.clone() / ac;
            T::one() - T::exp_neg_abs_ln(&r)
        }
    }
}

/// The distance-based inconsistency indicator for one triad, in the
/// requested form. Zero exactly when `a*c = b`; values lie in `[0, 1)`.
pub fn kii<T: Scalar>(a: &T, b: &T, c: &T, form: KiiForm) -> Result<T, DomainError> {
    TriadDeviation::Kii(form).eval(a, b, c)
}

/// The `PL` index `b/(ac) + ac/b - 2` for one triad. Zero exactly when
/// `a*c = b`, but unbounded and not a triad deviation.
pub fn pl<T: Scalar>(a: &T, b: &T, c: &T) -> Result<T, DomainError> {
    TriadDeviation::Pl.eval(a, b, c)
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("unknown indicator `{0}`; expected one of DI, EI, I1, Kii, PL")]
    UnknownIndicator(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
}

/// Evaluates a named indicator on one triad.
pub fn evaluate_named<T: Scalar>(name: &str, triad: &Triad<T>) -> Result<T, EvalError> {
    let td = TriadDeviation::from_name(name)
        .ok_or_else(|| EvalError::UnknownIndicator(name.to_string()))?;
    let (a, b, c) = &triad.values;
    Ok(td.eval(a, b, c)?)
}

/// Per-triad indicator value inside a matrix report.
#[derive(Debug, Clone, PartialEq)]
pub struct TriadScore<T> {
    pub indices: (usize, usize, usize),
    pub value: T,
}

/// Matrix-level inconsistency: the maximum indicator value over all
/// triads, the first triad attaining it, and the complete per-triad map.
#[derive(Debug, Clone, PartialEq)]
pub struct InconsistencyReport<T> {
    pub indicator: String,
    pub score: T,
    /// Index triple of the lexicographically first maximizing triad;
    /// absent when the matrix has no triads.
    pub worst: Option<(usize, usize, usize)>,
    pub per_triad: Vec<TriadScore<T>>,
    /// Set for `n < 3`, where the score is zero by convention.
    pub no_triads: bool,
}

/// Evaluates an indicator over every triad of the matrix.
///
/// Deterministic: triads are visited in lexicographic index order and
/// ties on the maximum keep the first triad seen.
pub fn matrix_inconsistency<T: Scalar>(
    matrix: &PcMatrix<T>,
    td: &TriadDeviation,
) -> InconsistencyReport<T> {
    let mut per_triad = Vec::new();
    let mut best: Option<((usize, usize, usize), T)> = None;
    for triad in matrix.triads() {
        let (a, b, c) = &triad.values;
        let value = td.eval_unchecked(a, b, c);
        match &best {
            Some((_, top)) if value <= *top => {}
            _ => best = Some((triad.indices, value.clone())),
        }
        per_triad.push(TriadScore {
            indices: triad.indices,
            value,
        });
    }
    match best {
        Some((indices, score)) => InconsistencyReport {
            indicator: td.name(),
            score,
            worst: Some(indices),
            per_triad,
            no_triads: false,
        },
        None => InconsistencyReport {
            indicator: td.name(),
            score: T::zero(),
            worst: None,
            per_triad,
            no_triads: true,
        },
    }
}

/// Statistical verdict on boundedness. Sampling can show unboundedness
/// convincingly but can only ever gather evidence *for* a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundVerdict {
    #[serde(rename = "bounded-evidence")]
    BoundedEvidence,
    #[serde(rename = "unbounded-evidence")]
    UnboundedEvidence,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

impl BoundVerdict {
    pub fn name(self) -> &'static str {
        match self {
            BoundVerdict::BoundedEvidence => "bounded-evidence",
            BoundVerdict::UnboundedEvidence => "unbounded-evidence",
            BoundVerdict::Inconclusive => "inconclusive",
        }
    }
}

/// A deviation condition that failed, with its first witness.
#[derive(Debug, Clone, Serialize)]
pub struct FailedCondition {
    pub condition: String,
    pub witness: Witness,
}

/// Outcome of classifying a ternary candidate as deviation / bounded /
/// indicator, with the evidence that backs each call.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub target: String,
    pub scalar: NumericMode,
    /// Conditions (zero, commutation, generalized triangle, symmetry)
    /// unfalsified over the sampled stream.
    pub is_deviation: bool,
    pub is_bounded: bool,
    /// Bounded deviation never observed above 1.
    pub is_indicator: bool,
    pub bound_verdict: BoundVerdict,
    /// Largest value seen across the growth schedule and random scan.
    pub max_observed: String,
    pub max_observed_approx: f64,
    pub witnesses: Vec<FailedCondition>,
    pub conditions: AxiomReport,
    pub probe: BoundProbe,
}

/// Sampling configuration for [`classify`].
#[derive(Debug, Clone)]
pub struct ClassifyConfig {
    pub plan: SamplePlan,
    /// Exponents `k` probed as `(1, 10^k, 1)`.
    pub growth_exponents: Vec<u32>,
}

impl ClassifyConfig {
    pub fn new(plan: SamplePlan) -> Self {
        ClassifyConfig {
            plan,
            growth_exponents: (0..=12).collect(),
        }
    }
}

/// Runs the condition checks, the growth-schedule probe, and a random
/// value scan, then assembles the deviation / bounded / indicator calls.
///
/// Boundedness reporting is evidence, never proof: the verdict is
/// "unbounded" once a value exceeds `10^6` (or overflows), "bounded" when
/// nothing above 1 was ever seen, and inconclusive in between.
pub fn classify<T: Scalar>(td: &TriadDeviation, config: &ClassifyConfig) -> Classification {
    let conditions = check_deviation_conditions::<T>(td, &config.plan);
    let probe = probe_bound::<T>(td, &config.growth_exponents);
    let scan = scan_values::<T>(td, &config.plan);

    let is_deviation = conditions.is_pass();
    let witnesses = conditions
        .axioms
        .iter()
        .filter(|rec| rec.violations > 0)
        .filter_map(|rec| {
            rec.first_witness.as_ref().map(|w| FailedCondition {
                condition: rec.axiom.clone(),
                witness: w.clone(),
            })
        })
        .collect();

    let million = T::from_u64(1_000_000);
    let scan_max = T::parse_token(&scan.max_value).expect("scan renders valid tokens");
    let probe_max = T::parse_token(&probe.max_value).expect("probe renders valid tokens");
    let max_observed = if scan_max > probe_max {
        scan_max
    } else {
        probe_max
    };

    let bound_verdict = if probe.overflowed || max_observed > million {
        BoundVerdict::UnboundedEvidence
    } else if max_observed <= T::one() {
        BoundVerdict::BoundedEvidence
    } else {
        BoundVerdict::Inconclusive
    };
    let is_bounded = bound_verdict == BoundVerdict::BoundedEvidence;
    let is_indicator = is_deviation && is_bounded;

    Classification {
        target: td.name(),
        scalar: T::MODE,
        is_deviation,
        is_bounded,
        is_indicator,
        bound_verdict,
        max_observed: max_observed.render(),
        max_observed_approx: max_observed.approx_f64(),
        witnesses,
        conditions,
        probe,
    }
}
