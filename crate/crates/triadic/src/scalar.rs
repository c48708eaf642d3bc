//! Numeric backends for the toolkit.
//!
//! Every quantity in a run is either an exact [`Rational`] or an `f64`;
//! the two are never mixed inside one matrix or one report. Generic code
//! is written against the [`Scalar`] trait and instantiated per run.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exact arbitrary-precision fraction, the rational-mode scalar.
pub type Rational = BigRational;

/// Which scalar backend a run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericMode {
    Rational,
    Float,
}

impl NumericMode {
    pub fn name(self) -> &'static str {
        match self {
            NumericMode::Rational => "rational",
            NumericMode::Float => "float",
        }
    }
}

impl fmt::Display for NumericMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Failure to read a numeric token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberParseError {
    #[error("empty numeric token")]
    Empty,
    #[error("invalid numeric token `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("non-finite value `{0}`")]
    NonFinite(String),
}

/// Arithmetic domain shared by the exact and floating backends.
///
/// `EXACT` backends compare with `==`; float code paths take a tolerance.
/// Tokens produced by [`Scalar::render`] parse back to the identical value,
/// which is what makes recorded witnesses replayable.
pub trait Scalar: Num + Signed + Clone + PartialOrd + fmt::Debug + Send + Sync + 'static {
    /// True when arithmetic is exact and equality checks need no tolerance.
    const EXACT: bool;

    /// Name of the backend, as reported in structured output.
    const MODE: NumericMode;

    fn from_u64(v: u64) -> Self;

    /// Embeds a finite `f64` exactly (every finite float is a rational).
    fn from_f64_exact(v: f64) -> Self;

    /// Strictly greater than zero. Unlike `Signed::is_positive`, floats
    /// reject `+0.0` here; the domain everywhere is the positive reals.
    fn is_strictly_positive(&self) -> bool;

    /// Multiplicative inverse. Caller guarantees the value is nonzero.
    fn recip(&self) -> Self;

    /// `e^{-|ln r|}` for positive `r`.
    ///
    /// Floats evaluate the transcendental route literally; the exact
    /// backend uses the identity `e^{-|ln r|} = min(r, 1/r)`, which is the
    /// only way to stay exact.
    fn exp_neg_abs_ln(r: &Self) -> Self;

    /// Lossy view for magnitude decisions (slack scaling, trace output).
    fn approx_f64(&self) -> f64;

    /// True unless the value is a float infinity or NaN.
    fn is_finite_val(&self) -> bool;

    /// Parses a decimal literal, scientific literal, or `p/q` fraction.
    fn parse_token(tok: &str) -> Result<Self, NumberParseError>;

    /// Renders a token that [`Scalar::parse_token`] maps back to `self`
    /// exactly: `p/q` (or a plain integer) for rationals, the shortest
    /// round-trip decimal for floats.
    fn render(&self) -> String;
}

impl Scalar for f64 {
    const EXACT: bool = false;
    const MODE: NumericMode = NumericMode::Float;

    fn from_u64(v: u64) -> Self {
        v as f64
    }

    fn from_f64_exact(v: f64) -> Self {
        v
    }

    fn is_strictly_positive(&self) -> bool {
        *self > 0.0
    }

    fn recip(&self) -> Self {
        1.0 / self
    }

    fn exp_neg_abs_ln(r: &Self) -> Self {
        (-r.ln().abs()).exp()
    }

    fn approx_f64(&self) -> f64 {
        *self
    }

    fn is_finite_val(&self) -> bool {
        self.is_finite()
    }

    fn parse_token(tok: &str) -> Result<Self, NumberParseError> {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(NumberParseError::Empty);
        }
        let value = if let Some((p, q)) = tok.split_once('/') {
            let p: f64 = parse_finite_f64(p, tok)?;
            let q: f64 = parse_finite_f64(q, tok)?;
            if q == 0.0 {
                return Err(NumberParseError::ZeroDenominator(tok.to_string()));
            }
            p / q
        } else {
            parse_finite_f64(tok, tok)?
        };
        if !value.is_finite() {
            return Err(NumberParseError::NonFinite(tok.to_string()));
        }
        Ok(value)
    }

    fn render(&self) -> String {
        format!("{self}")
    }
}

fn parse_finite_f64(part: &str, whole: &str) -> Result<f64, NumberParseError> {
    let v: f64 = part
        .trim()
        .parse()
        .map_err(|_| NumberParseError::Invalid(whole.to_string()))?;
    if v.is_nan() {
        return Err(NumberParseError::NonFinite(whole.to_string()));
    }
    Ok(v)
}

impl Scalar for Rational {
    const EXACT: bool = true;
    const MODE: NumericMode = NumericMode::Rational;

    fn from_u64(v: u64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_f64_exact(v: f64) -> Self {
        Rational::from_float(v).expect("finite float converts to a rational exactly")
    }

    fn is_strictly_positive(&self) -> bool {
        self.is_positive()
    }

    fn recip(&self) -> Self {
        Rational::recip(self)
    }

    fn exp_neg_abs_ln(r: &Self) -> Self {
        if r >= &Rational::one() {
            Rational::recip(r)
        } else {
            r.clone()
        }
    }

    fn approx_f64(&self) -> f64 {
        self.to_f64().unwrap_or(f64::INFINITY)
    }

    fn is_finite_val(&self) -> bool {
        true
    }

    fn parse_token(tok: &str) -> Result<Self, NumberParseError> {
        let tok = tok.trim();
        if tok.is_empty() {
            return Err(NumberParseError::Empty);
        }
        if let Some((p, q)) = tok.split_once('/') {
            let p = parse_decimal_rational(p, tok)?;
            let q = parse_decimal_rational(q, tok)?;
            if q.is_zero() {
                return Err(NumberParseError::ZeroDenominator(tok.to_string()));
            }
            Ok(p / q)
        } else {
            parse_decimal_rational(tok, tok)
        }
    }

    fn render(&self) -> String {
        if self.denom().is_one() {
            format!("{}", self.numer())
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

/// Parses `[+-]digits[.digits][eE[+-]digits]` into an exact rational.
fn parse_decimal_rational(part: &str, whole: &str) -> Result<Rational, NumberParseError> {
    let part = part.trim();
    let invalid = || NumberParseError::Invalid(whole.to_string());

    let (mantissa, exponent) = match part.split_once(['e', 'E']) {
        Some((m, e)) => {
            let exp: i64 = e.parse().map_err(|_| invalid())?;
            (m, exp)
        }
        None => (part, 0),
    };

    let (sign, digits_part) = match mantissa.strip_prefix('-') {
        Some(rest) => (Sign::Minus, rest),
        None => (Sign::Plus, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };

    let (int_part, frac_part) = match digits_part.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits_part, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(invalid());
    }

    let digits: String = [int_part, frac_part].concat();
    let mut numer = BigInt::from_str_radix(&digits, 10).map_err(|_| invalid())?;
    if sign == Sign::Minus {
        numer = -numer;
    }

    let scale = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    Ok(if scale >= 0 {
        Rational::from_integer(numer * pow_bigint(&ten, scale as u64))
    } else {
        Rational::new(numer, pow_bigint(&ten, (-scale) as u64))
    })
}

fn pow_bigint(base: &BigInt, exp: u64) -> BigInt {
    let mut out = BigInt::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// Smaller of two values under the scalar's order.
pub fn min2<T: PartialOrd>(a: T, b: T) -> T {
    if b < a {
        b
    } else {
        a
    }
}

/// Larger of two values under the scalar's order.
pub fn max2<T: PartialOrd>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// `base^exp` by repeated multiplication; works for both backends.
pub fn pow_u32<T: Scalar>(base: &T, exp: u32) -> T {
    let mut out = T::one();
    for _ in 0..exp {
        out = out * base.clone();
    }
    out
}

/// Parses a rational from an integer pair, mostly for tests and literals.
pub fn ratio(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parses_fractions_and_decimals() {
        assert_eq!(Rational::parse_token("1/2").unwrap(), ratio(1, 2));
        assert_eq!(Rational::parse_token("0.5").unwrap(), ratio(1, 2));
        assert_eq!(Rational::parse_token("1.25").unwrap(), ratio(5, 4));
        assert_eq!(Rational::parse_token("3").unwrap(), ratio(3, 1));
        assert_eq!(Rational::parse_token("1.5e-3").unwrap(), ratio(3, 2000));
        assert_eq!(Rational::parse_token("2E2").unwrap(), ratio(200, 1));
        assert_eq!(Rational::parse_token("13/30").unwrap(), ratio(13, 30));
    }

    #[test]
    fn rational_rejects_garbage() {
        assert!(Rational::parse_token("").is_err());
        assert!(Rational::parse_token("abc").is_err());
        assert!(Rational::parse_token("1/0").is_err());
        assert!(Rational::parse_token("1.2.3").is_err());
        assert!(Rational::parse_token(".").is_err());
    }

    #[test]
    fn float_parses_fractions() {
        assert_eq!(f64::parse_token("1/2").unwrap(), 0.5);
        assert_eq!(f64::parse_token("3").unwrap(), 3.0);
        assert!(f64::parse_token("1/0").is_err());
        assert!(f64::parse_token("1e999").is_err());
        assert!(f64::parse_token("nan").is_err());
    }

    #[test]
    fn render_round_trips_exactly() {
        let r = ratio(-13, 30);
        assert_eq!(Rational::parse_token(&r.render()).unwrap(), r);
        assert_eq!(ratio(6, 1).render(), "6");
        assert_eq!(ratio(9, 10).render(), "9/10");

        for &v in &[0.1, 1.0 / 3.0, 1e-3, 999999.0, 1.0 - 1e-12] {
            assert_eq!(f64::parse_token(&v.render()).unwrap(), v);
        }
    }

    #[test]
    fn exact_float_embedding() {
        let v = 0.1_f64;
        let r = Rational::from_f64_exact(v);
        assert_eq!(r.approx_f64(), v);
        assert_ne!(r, ratio(1, 10), "0.1 is not exactly 1/10 in binary");
    }

    #[test]
    fn exp_neg_abs_ln_matches_min_identity() {
        assert_eq!(Rational::exp_neg_abs_ln(&ratio(2, 1)), ratio(1, 2));
        assert_eq!(Rational::exp_neg_abs_ln(&ratio(1, 2)), ratio(1, 2));
        assert_eq!(Rational::exp_neg_abs_ln(&ratio(1, 1)), ratio(1, 1));
        let f = f64::exp_neg_abs_ln(&2.0);
        assert!((f - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pow_helpers() {
        assert_eq!(pow_u32(&10.0_f64, 3), 1000.0);
        assert_eq!(
            pow_u32(&Rational::from_u64(10), 12),
            ratio(1_000_000_000_000, 1)
        );
    }
}
