//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn half() -> Scalar {
    frac(1, 2)
}

/// `(-1)^k` as a scalar.
pub fn sign(k: u32) -> Scalar {
    if k.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

pub fn pow(x: &Scalar, k: u32) -> Scalar {
    let mut acc = Scalar::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse(text: &str) -> Result<Scalar, Error> {
    let t = text.trim();
    let bad = || Error::Parse(format!("invalid rational `{t}`"));
    match t.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{t}`")));
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = t.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// Formats as an integer string when possible, else `p/q`.
pub fn format(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Always `p/q`, used by the JSON schema.
pub fn format_pq(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn is_negative(x: &Scalar) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse("-4").unwrap(), int(-4));
        assert_eq!(format(&frac(-2, 4)), "-1/2");
        assert_eq!(format(&int(7)), "7");
        assert_eq!(format_pq(&int(7)), "7/1");
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn signs_and_powers() {
        assert_eq!(sign(3), int(-1));
        assert_eq!(pow(&frac(-3, 2), 2), frac(9, 4));
    }
}
