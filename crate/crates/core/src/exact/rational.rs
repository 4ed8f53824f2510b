//! Arbitrary-precision rationals.
//!
//! `Rational` is `num_rational::BigRational`: always in lowest terms with a
//! positive denominator, so equality is plain data comparison. The string
//! form is `p/q`, or just `p` for integers, matching the file formats used
//! by the catalog.

use crate::error::{Error, Result};
use num_bigint::BigInt;

pub type Rational = num_rational::BigRational;

/// Integer as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` as a rational, reduced.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    s.trim().parse::<Rational>().map_err(|e| Error::Parse {
        location: format!("rational `{s}`"),
        message: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn string_round_trip() {
        for s in ["3200/63", "-7/25", "0", "5", "-1/2"] {
            let q = parse_rational(s).unwrap();
            assert_eq!(q.to_string(), s);
        }
        // reduction and sign normalization
        assert_eq!(parse_rational("4/6").unwrap(), ratio(2, 3));
        assert_eq!(parse_rational("1/-2").unwrap(), ratio(-1, 2));
    }

    #[test]
    fn exactness() {
        let a = ratio(1, 3);
        let b = ratio(1, 6);
        assert_eq!(&a + &b, ratio(1, 2));
        assert!((&a - &a).is_zero());
    }
}
