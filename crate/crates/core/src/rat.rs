//! Exact rational scalars. Nothing in this crate touches floating point.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;
use std::str::FromStr;

/// Arbitrary-precision rational with positive reduced denominator.
pub type Rat = BigRational;

/// Shorthand for small literals.
pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_u64(n: u64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("invalid rational literal `{0}`: expected `p` or `p/q` with q != 0")]
pub struct ParseRatError(pub String);

/// Parses `p` or `p/q`. Decimal floats are rejected.
pub fn parse_rat(text: &str) -> Result<Rat, ParseRatError> {
    let text = text.trim();
    let bad = || ParseRatError(text.to_string());
    match text.split_once('/') {
        None => BigInt::from_str(text)
            .map(Rat::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rat::new(p, q))
        }
    }
}

/// Canonical text form: `p` for integers, `p/q` otherwise (q > 0, reduced).
pub fn render_rat(r: &Rat) -> String {
    r.to_string()
}

pub fn floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-4/2").unwrap(), rat_int(-2));
        assert_eq!(parse_rat(" 7 ").unwrap(), rat_int(7));
        assert_eq!(render_rat(&rat(1, 2)), "1/2");
        assert_eq!(render_rat(&rat(-6, 4)), "-3/2");
        assert_eq!(render_rat(&rat_int(5)), "5");
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn floor_matches_integer_division_on_nonnegatives() {
        assert_eq!(floor_int(&rat(21, 10)), BigInt::from(2));
        assert_eq!(floor_int(&rat(20, 10)), BigInt::from(2));
        assert_eq!(floor_int(&rat(-1, 2)), BigInt::from(-1));
    }
}
