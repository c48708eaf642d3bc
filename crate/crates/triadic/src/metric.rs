//! Catalog of binary distance candidates on the positive reals.
//!
//! Four of them are genuine metrics used to induce triad deviations:
//!
//! * `discrete`  — 0 if `x = y`, else 1
//! * `euclidean` — `|x - y|`
//! * `d1`        — `|x - y| / (1 + |x - y|)`
//! * `ratio`     — `1 - min(x/y, y/x)`
//!
//! `sqdiff`, `(x - y)^2`, is a deliberate non-metric kept as a negative
//! control for the verification harness: it breaks the triangle
//! inequality at `(1, 2, 3)`. Nothing here is *assumed* to be a metric;
//! the axioms are checked statistically by [`crate::verify`].

use thiserror::Error;

use crate::deviation::TriadDeviation;
use crate::scalar::{min2, Scalar};

/// An argument outside the strictly positive domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("non-positive argument")]
pub struct DomainError;

/// Declared upper bound of a distance or deviation, if any.
///
/// `OneExclusive` means the declared codomain is `[0, 1)`;
/// `OneInclusive` means the bound 1 is attained (the discrete metric).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeclaredBound {
    None,
    OneExclusive,
    OneInclusive,
}

impl DeclaredBound {
    pub fn is_some(self) -> bool {
        !matches!(self, DeclaredBound::None)
    }
}

/// A named binary distance candidate on the positive reals.
#[derive(Debug, Clone, PartialEq)]
pub enum Metric {
    Discrete,
    Euclidean,
    D1,
    BoundedRatio,
    SquaredDiff,
    /// `d(x, y) = td(x, y, 1)`, the metric induced by a triad deviation.
    Induced(Box<TriadDeviation>),
}

impl Metric {
    /// The metric induced by a triad deviation via `d(x, y) = td(x, y, 1)`.
    /// If `td` fails the deviation conditions, the result is not a metric;
    /// that misuse surfaces as axiom failures in the verification harness,
    /// never as an error here.
    pub fn induced_from(td: TriadDeviation) -> Metric {
        Metric::Induced(Box::new(td))
    }

    pub fn name(&self) -> String {
        match self {
            Metric::Discrete => "discrete".to_string(),
            Metric::Euclidean => "euclidean".to_string(),
            Metric::D1 => "d1".to_string(),
            Metric::BoundedRatio => "ratio".to_string(),
            Metric::SquaredDiff => "sqdiff".to_string(),
            Metric::Induced(td) => format!("induced({})", td.name()),
        }
    }

    /// Looks up a cataloged metric by its CLI name.
    pub fn from_name(name: &str) -> Option<Metric> {
        match name.to_ascii_lowercase().as_str() {
            "discrete" => Some(Metric::Discrete),
            "euclidean" => Some(Metric::Euclidean),
            "d1" => Some(Metric::D1),
            "ratio" => Some(Metric::BoundedRatio),
            "sqdiff" => Some(Metric::SquaredDiff),
            _ => None,
        }
    }

    pub fn declared_bound(&self) -> DeclaredBound {
        match self {
            Metric::Discrete => DeclaredBound::OneInclusive,
            Metric::Euclidean => DeclaredBound::None,
            Metric::D1 => DeclaredBound::OneExclusive,
            Metric::BoundedRatio => DeclaredBound::OneExclusive,
            Metric::SquaredDiff => DeclaredBound::None,
            Metric::Induced(td) => td.declared_bound(),
        }
    }

    /// Evaluates the distance, rejecting non-positive arguments.
    pub fn eval<T: Scalar>(&self, x: &T, y: &T) -> Result<T, DomainError> {
        if !x.is_strictly_positive() || !y.is_strictly_positive() {
            return Err(DomainError);
        }
        Ok(self.eval_unchecked(x, y))
    }

    /// Evaluation on arguments already known to be positive.
    ///
    /// Equality inside the discrete metric is exact representation
    /// equality in both numeric modes; a tolerance would break the
    /// "zero only at equal points" direction of the identity axiom.
    pub(crate) fn eval_unchecked<T: Scalar>(&self, x: &T, y: &T) -> T {
        match self {
            Metric::Discrete => {
                if x == y {
                    T::zero()
                } else {
                    T::one()
                }
            }
            Metric::Euclidean => (x.clone() - y.clone()).abs(),
            Metric::D1 => {
                let t = (x.clone() - y.clone()).abs();
                t.clone() / (T::one() + t)
            }
            Metric::BoundedRatio => {
                let r = x.clone() / y.clone();
                let q = y.clone() / x.clone();
                T::one() - min2(r, q)
            }
            Metric::SquaredDiff => {
                let d = x.clone() - y.clone();
                d.clone() * d
            }
            Metric::Induced(td) => td.eval_unchecked(x, y, &T::one()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    #[test]
    fn discrete_examples() {
        assert_eq!(Metric::Discrete.eval(&3.0, &3.0).unwrap(), 0.0);
        assert_eq!(Metric::Discrete.eval(&3.0, &5.0).unwrap(), 1.0);
        // equal values compare equal in either numeric mode
        let half = Rational::parse_token("1/2").unwrap();
        let dec = Rational::parse_token("0.5").unwrap();
        assert_eq!(Metric::Discrete.eval(&half, &dec).unwrap(), ratio(0, 1));
        assert_eq!(
            Metric::Discrete
                .eval(&f64::parse_token("1/2").unwrap(), &0.5)
                .unwrap(),
            0.0
        );
    }

    #[test]
    fn euclidean_examples() {
        assert_eq!(Metric::Euclidean.eval(&5.0, &3.0).unwrap(), 2.0);
        assert_eq!(Metric::Euclidean.eval(&7.25, &7.25).unwrap(), 0.0);
        assert_eq!(Metric::Euclidean.eval(&1.0, &1e6).unwrap(), 999_999.0);
    }

    #[test]
    fn d1_examples() {
        assert_eq!(
            Metric::D1.eval(&ratio(1, 1), &ratio(3, 1)).unwrap(),
            ratio(2, 3)
        );
        assert_eq!(
            Metric::D1.eval(&ratio(4, 7), &ratio(4, 7)).unwrap(),
            ratio(0, 1)
        );
        assert_eq!(
            Metric::D1.eval(&ratio(1, 1), &ratio(1_000_000, 1)).unwrap(),
            ratio(999_999, 1_000_000)
        );
    }

    #[test]
    fn bounded_ratio_examples() {
        assert_eq!(
            Metric::BoundedRatio
                .eval(&ratio(2, 1), &ratio(2, 1))
                .unwrap(),
            ratio(0, 1)
        );
        assert_eq!(
            Metric::BoundedRatio
                .eval(&ratio(1, 1), &ratio(2, 1))
                .unwrap(),
            ratio(1, 2)
        );
        assert_eq!(
            Metric::BoundedRatio
                .eval(&ratio(2, 1), &ratio(1, 1))
                .unwrap(),
            ratio(1, 2)
        );
    }

    #[test]
    fn rejects_non_positive_arguments() {
        assert_eq!(Metric::Euclidean.eval(&0.0, &1.0), Err(DomainError));
        assert_eq!(Metric::BoundedRatio.eval(&1.0, &-2.0), Err(DomainError));
    }

    #[test]
    fn name_round_trip() {
        for name in ["discrete", "euclidean", "d1", "ratio", "sqdiff"] {
            assert_eq!(Metric::from_name(name).unwrap().name(), name);
        }
        assert!(Metric::from_name("no-such-metric").is_none());
    }

    #[test]
    fn metric_induced_from_deviations() {
        use crate::deviation::{induce_deviation, KiiForm, TriadDeviation};

        // the metric induced from the ratio-induced deviation is the
        // ratio metric again: d(x*1, y) = d(x, y)
        let round = Metric::induced_from(induce_deviation(Metric::BoundedRatio));
        assert_eq!(
            round.eval(&ratio(3, 7), &ratio(2, 5)).unwrap(),
            Metric::BoundedRatio
                .eval(&ratio(3, 7), &ratio(2, 5))
                .unwrap()
        );

        let from_kii = Metric::induced_from(TriadDeviation::Kii(KiiForm::default()));
        assert_eq!(
            from_kii.eval(&ratio(1, 1), &ratio(2, 1)).unwrap(),
            ratio(1, 2),
            "Kii(1, 2, 1) = 1/2"
        );
        assert_eq!(from_kii.name(), "induced(Kii)");
        assert_eq!(from_kii.declared_bound(), DeclaredBound::OneExclusive);

        let from_ei = Metric::induced_from(TriadDeviation::from_name("EI").unwrap());
        assert_eq!(from_ei.eval(&5.0, &3.0).unwrap(), 2.0, "|x*1 - y|");
    }
}
