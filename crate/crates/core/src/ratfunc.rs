//! Rational functions: quotients of Laurent polynomials in canonical form.
//!
//! Canonical form: the denominator is an ordinary polynomial (lowest exponent
//! 0) with a nonzero constant term, monic in its highest power, and coprime to
//! the numerator after clearing z-powers. All z-power content lives in the
//! numerator, which stays a Laurent polynomial. Equality is then structural.

use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::laurent::{dense_divrem, dense_gcd, dense_trim, LaurentPoly};
use crate::rat::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunc {
    /// Builds `num/den` in canonical form. Panics if `den = 0` (a structural
    /// misuse, not a data error).
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let (nlow, mut ndense) = num.to_dense().expect("nonzero");
        let (dlow, mut ddense) = den.to_dense().expect("nonzero");
        dense_trim(&mut ndense);
        dense_trim(&mut ddense);
        let g = dense_gcd(&ndense, &ddense);
        if g.len() > 1 {
            ndense = dense_divrem(&ndense, &g).0;
            ddense = dense_divrem(&ddense, &g).0;
        }
        // make the denominator monic, folding the scale into the numerator
        let lead = ddense.last().expect("nonzero").clone();
        if !lead.is_one() {
            for c in &mut ddense {
                *c /= &lead;
            }
            for c in &mut ndense {
                *c /= &lead;
            }
        }
        Self {
            num: LaurentPoly::from_dense(nlow - dlow, ndense),
            den: LaurentPoly::from_dense(0, ddense),
        }
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_laurent(LaurentPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    /// `z^k`.
    pub fn zpow(k: i64) -> Self {
        Self::from_laurent(LaurentPoly::zpow(k))
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is 1 (the value is a Laurent polynomial).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// The Laurent-polynomial value, when [`is_laurent`](Self::is_laurent).
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    /// True when the value is a rational constant.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Division; panics if `other = 0`.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        Self::new(self.den.clone(), self.num.clone())
    }

    /// d/dz via the quotient rule.
    pub fn derivative(&self) -> Self {
        let n = self.num.derivative().mul(&self.den).sub(&self.num.mul(&self.den.derivative()));
        Self::new(n, self.den.mul(&self.den))
    }

    /// Substitutes z -> 1/z exactly.
    pub fn subst_inv(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self::new(self.num.subst_inv(), self.den.subst_inv())
    }

    /// Order of vanishing at z = 1: root multiplicity of the numerator minus
    /// that of the denominator (negative for a pole).
    pub fn order_at_one(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        self.num.order_at_one() as i64 - self.den.order_at_one() as i64
    }

    pub fn eval_rational(&self, x: &Rational) -> Option<Rational> {
        let d = self.den.eval_rational(x)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval_rational(x)? / d)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.num.eval_complex(z) / self.den.eval_complex(z)
    }
}

impl fmt::Debug for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
