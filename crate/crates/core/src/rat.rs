//! Exact rational scalars: the coefficient field of every polynomial in the
//! crate, plus the Pochhammer products the closed forms are written in.
//!
//! `Rational` is `num_rational::BigRational`, which already maintains the
//! canonical form we need (gcd-reduced, positive denominator).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational scalar.
pub type Rational = BigRational;

/// Shorthand for small rational constants.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses an exact rational string: an optional sign, an integer, optionally
/// followed by `/` and a positive integer. Decimal points are rejected so the
/// exact layer stays exact end to end.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.contains('.') {
        return Err(Error::Config(format!(
            "'{s}': decimal input rejected; use an exact rational like 1/2"
        )));
    }
    let mk_err = || Error::Config(format!("'{s}' is not an exact rational (expected p or p/q)"));
    match s.split_once('/') {
        None => {
            let n: BigInt = s.parse().map_err(|_| mk_err())?;
            Ok(Rational::from_integer(n))
        }
        Some((num, den)) => {
            let n: BigInt = num.parse().map_err(|_| mk_err())?;
            let d: BigInt = den.parse().map_err(|_| mk_err())?;
            if d.is_zero() {
                return Err(Error::Config(format!("'{s}': zero denominator")));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Rising factorial (x)_k = x (x+1) ... (x+k-1); (x)_0 = 1.
pub fn pochhammer(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

/// Like [`pochhammer`] but fails with the vanishing factor named, for closed
/// forms that divide by the product.
pub fn pochhammer_nonzero(x: &Rational, k: u32, name: &str) -> Result<Rational> {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for i in 0..k {
        if term.is_zero() {
            return Err(Error::DegenerateParameter {
                factor: format!("({name})_{k} [term {name}+{i} = 0]"),
            });
        }
        acc *= &term;
        term += Rational::one();
    }
    Ok(acc)
}

/// n! as a rational.
pub fn factorial(n: u32) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// Binomial coefficient C(n, k) as a rational.
pub fn binomial(n: u32, k: u32) -> Rational {
    if k > n {
        return Rational::zero();
    }
    let k = k.min(n - k);
    let mut acc = Rational::one();
    for i in 0..k {
        acc *= int((n - i) as i64);
        acc /= int((i + 1) as i64);
    }
    acc
}

/// Exact check for integrality.
pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// The integer value, when [`is_integer`] holds and it fits in i64.
pub fn to_i64(x: &Rational) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Rational to double, via a correctly-rounded big-integer quotient.
pub fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        if x.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_accepts_exact_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational(" 2/6 ").unwrap(), rat(1, 3));
    }

    #[test]
    fn parse_rejects_decimals() {
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(&rat(1, 2), 0), int(1));
        // (1/2)_3 = 1/2 * 3/2 * 5/2 = 15/8
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
        assert_eq!(factorial(5), int(120));
        assert_eq!(binomial(7, 3), int(35));
    }

    #[test]
    fn pochhammer_nonzero_names_factor() {
        let err = pochhammer_nonzero(&int(-2), 4, "alpha+1").unwrap_err();
        match err {
            Error::DegenerateParameter { factor } => assert!(factor.contains("alpha+1")),
            other => panic!("unexpected error {other:?}"),
        }
    }
}
