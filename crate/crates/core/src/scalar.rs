//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use thiserror::Error;

/// The coefficient field of every chain, cochain and matrix in the crate.
pub type Scalar = BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("malformed rational literal `{0}`")]
pub struct ParseScalarError(pub String);

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn sign(negative: bool) -> Scalar {
    if negative {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// `(-1)^e` as a scalar.
pub fn parity(e: i64) -> Scalar {
    sign(e.rem_euclid(2) == 1)
}

/// Formats as `"p/q"`, or `"p"` for integers.
pub fn format(q: &Scalar) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse(s: &str) -> Result<Scalar, ParseScalarError> {
    let err = || ParseScalarError(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Scalar::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| err())?;
            Ok(Scalar::from_integer(p))
        }
    }
}

pub fn is_unit(q: &Scalar) -> bool {
    q.denom().is_one() && q.numer().abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(format(&parse("6/4").unwrap()), "3/2");
        assert_eq!(format(&parse("-7").unwrap()), "-7");
        assert_eq!(format(&parse(" 2 / -4 ").unwrap()), "-1/2");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn parity_signs() {
        assert_eq!(parity(0), int(1));
        assert_eq!(parity(-3), int(-1));
        assert!(is_unit(&int(-1)));
        assert!(!is_unit(&int(2)));
    }
}
