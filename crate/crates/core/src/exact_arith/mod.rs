//! Exact scalars: arbitrary-precision rationals and algebraic numbers held
//! as residues modulo a squarefree factor of a characteristic polynomial.

mod algebraic;
mod approx;

pub use algebraic::{alg_arith, AlgOp, AlgValue, FactorHandle, SurdForm, SurdValue};
pub(crate) use approx::aberth as float_roots;
pub use approx::{DecimalInterval, RootApprox};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Reduced fraction with a positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat_normalize(numerator: impl Into<BigInt>, denominator: impl Into<BigInt>) -> Result<Rational> {
    let den = denominator.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(Rational::new(numerator.into(), den))
}

/// Shorthand for small literals; panics on a zero denominator.
pub fn rat(numerator: i64, denominator: i64) -> Rational {
    rat_normalize(numerator, denominator).expect("nonzero denominator")
}

/// Parses `"p"` or `"p/q"` (surrounding whitespace allowed).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    let parse_int = |s: &str| -> Result<BigInt> {
        let s = s.trim();
        let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        s.parse::<BigInt>().map_err(|_| bad())
    };
    match text.split_once('/') {
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(parse_int(n)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(text)?)),
    }
}
