//! Quasi-rational functions: a gauge `(-z)^a (1-z)^b` with rational exponents
//! times a rational function. This is the smallest class containing the
//! eigenfunction gauges, the weights and the state-deletion kernels, and it is
//! closed under d/dz, under multiplication, and under z -> 1/z on the unit
//! circle.
//!
//! Canonicalization rule: integer gauge exponents are always absorbed into
//! the rational part (via `(-z)^k = (-1)^k z^k` and multiplication by
//! `(1-z)^k`), so two representations of the same function compare equal.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rat::{self, Rational};
use crate::ratfunc::RationalFunc;

#[derive(Clone)]
pub struct QuasiRationalFunc {
    /// Exponent of `(-z)^a`.
    a: Rational,
    /// Exponent of `(1-z)^b`.
    b: Rational,
    /// Rational part.
    r: RationalFunc,
}

/// Equality of the represented functions. Gauge exponents may legitimately
/// differ by integers between two representations (`(-z)^(a+1) r` versus
/// `(-z)^a (-z r)`), so comparison aligns the offsets exactly instead of
/// comparing fields.
impl PartialEq for QuasiRationalFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let da = &self.a - &other.a;
        let db = &self.b - &other.b;
        let (Some(da), Some(db)) = (rat::to_i64(&da), rat::to_i64(&db)) else {
            return false;
        };
        self.r.mul(&integer_gauge_factor(da, db)) == other.r
    }
}

impl Eq for QuasiRationalFunc {}

/// `(-z)^da (1-z)^db` as a rational function, for integer exponents.
fn integer_gauge_factor(da: i64, db: i64) -> RationalFunc {
    let mut f = RationalFunc::zpow(da);
    if da % 2 != 0 {
        f = f.neg();
    }
    if db != 0 {
        let one_minus_z = RationalFunc::from_laurent(LaurentPoly::from_pairs([
            (0, Rational::one()),
            (1, -Rational::one()),
        ]));
        let base = if db > 0 { one_minus_z } else { one_minus_z.recip() };
        for _ in 0..db.unsigned_abs() {
            f = f.mul(&base);
        }
    }
    f
}

impl QuasiRationalFunc {
    /// `(-z)^a (1-z)^b r`, canonicalized.
    pub fn new(a: Rational, b: Rational, r: RationalFunc) -> Self {
        let mut f = Self { a, b, r };
        f.canonicalize();
        f
    }

    pub fn from_rational(r: RationalFunc) -> Self {
        Self::new(Rational::zero(), Rational::zero(), r)
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        Self::from_rational(RationalFunc::from_laurent(p))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_rational(RationalFunc::constant(c))
    }

    pub fn zero() -> Self {
        Self {
            a: Rational::zero(),
            b: Rational::zero(),
            r: RationalFunc::zero(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(RationalFunc::one())
    }

    /// Pure gauge `(-z)^a (1-z)^b`.
    pub fn gauge(a: Rational, b: Rational) -> Self {
        Self::new(a, b, RationalFunc::one())
    }

    /// Absorbs integer gauge exponents into the rational part (via
    /// `(-z)^k = (-1)^k z^k` and multiplication by `(1-z)^k`), so a function
    /// with trivial gauge is stored as a plain rational function.
    fn canonicalize(&mut self) {
        if self.r.is_zero() {
            self.a = Rational::zero();
            self.b = Rational::zero();
            self.r = RationalFunc::zero();
            return;
        }
        let ka = rat::to_i64(&self.a);
        let kb = rat::to_i64(&self.b);
        if ka == Some(0) && kb == Some(0) {
            return;
        }
        if let Some(ka) = ka {
            if let Some(kb) = kb {
                self.r = self.r.mul(&integer_gauge_factor(ka, kb));
                self.a = Rational::zero();
                self.b = Rational::zero();
                return;
            }
        }
        if let Some(ka) = ka {
            self.r = self.r.mul(&integer_gauge_factor(ka, 0));
            self.a = Rational::zero();
        } else if let Some(kb) = kb {
            self.r = self.r.mul(&integer_gauge_factor(0, kb));
            self.b = Rational::zero();
        }
    }

    pub fn gauge_a(&self) -> &Rational {
        &self.a
    }

    pub fn gauge_b(&self) -> &Rational {
        &self.b
    }

    pub fn rational_part(&self) -> &RationalFunc {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.r.is_one()
    }

    /// True when the function is rational (no fractional gauge left).
    pub fn is_rational(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// The rational value, when no fractional gauge is left.
    pub fn as_rational(&self) -> Result<&RationalFunc> {
        if self.is_rational() {
            Ok(&self.r)
        } else {
            Err(Error::GaugeMismatch {
                what: format!("(-z)^{} (1-z)^{}", self.a, self.b),
            })
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            &self.a + &other.a,
            &self.b + &other.b,
            self.r.mul(&other.r),
        )
    }

    pub fn mul_rational(&self, f: &RationalFunc) -> Self {
        Self::new(self.a.clone(), self.b.clone(), self.r.mul(f))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.a.clone(), self.b.clone(), self.r.scale(c))
    }

    pub fn neg(&self) -> Self {
        Self {
            a: self.a.clone(),
            b: self.b.clone(),
            r: self.r.neg(),
        }
    }

    /// Division; panics if `other` is zero.
    pub fn div(&self, other: &Self) -> Self {
        Self::new(
            &self.a - &other.a,
            &self.b - &other.b,
            self.r.div(&other.r),
        )
    }

    pub fn recip(&self) -> Self {
        Self::new(-self.a.clone(), -self.b.clone(), self.r.recip())
    }

    /// Sum; defined only for equal gauges (or a zero operand).
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.a != other.a || self.b != other.b {
            return Err(Error::GaugeMismatch {
                what: format!(
                    "sum of gauges ({}, {}) and ({}, {})",
                    self.a, self.b, other.a, other.b
                ),
            });
        }
        Ok(Self::new(
            self.a.clone(),
            self.b.clone(),
            self.r.add(&other.r),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// The rational log-derivative contribution of the gauge: a/z + b/(z-1).
    fn gauge_logderiv(&self) -> RationalFunc {
        let z = LaurentPoly::zpow(1);
        let z_minus_1 = LaurentPoly::from_pairs([(1, Rational::one()), (0, -Rational::one())]);
        let term_a = RationalFunc::new(LaurentPoly::constant(self.a.clone()), z);
        let term_b = RationalFunc::new(LaurentPoly::constant(self.b.clone()), z_minus_1);
        term_a.add(&term_b)
    }

    /// d/dz, using d/dz (-z)^a = (a/z)(-z)^a and
    /// d/dz (1-z)^b = (b/(z-1))(1-z)^b. Gauge exponents are preserved.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let r = self.r.derivative().add(&self.r.mul(&self.gauge_logderiv()));
        Self::new(self.a.clone(), self.b.clone(), r)
    }

    /// f'/f as an exact rational function. Panics on zero.
    pub fn logderiv(&self) -> RationalFunc {
        assert!(!self.is_zero(), "log-derivative of zero");
        self.r.derivative().div(&self.r).add(&self.gauge_logderiv())
    }

    /// Substitutes z -> 1/z. On the unit circle with the paper's branches
    /// this is exact: `(-z^{-1})^a = (-z)^{-a}` and
    /// `(1-z^{-1})^b = (1-z)^b (-z)^{-b}`, so the gauge maps
    /// `(a, b) -> (-a-b, b)` while the rational part transforms exactly.
    pub fn subst_inv(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self::new(
            -(&self.a + &self.b),
            self.b.clone(),
            self.r.subst_inv(),
        )
    }

    /// Total exponent of (1-z) at z = 1: gauge exponent plus the order of the
    /// rational part. Governs integrability on the circle.
    pub fn exponent_at_one(&self) -> Rational {
        &self.b + rat::int(self.r.order_at_one())
    }

    /// Ray normalization: rational part scaled so the numerator is monic in
    /// its highest stored power. Used when comparing eigenfunctions that are
    /// only defined up to a constant.
    pub fn normalize_ray(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.r.num().leading_coeff();
        self.scale(&(Rational::one() / lc))
    }

    /// True when the two functions agree up to a nonzero constant factor
    /// (eigenfunctions are rays).
    pub fn eq_up_to_scalar(&self, other: &Self) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let q = self.div(other);
        q.is_rational() && q.rational_part().is_constant()
    }

    /// Splits f'/f = P/Q for a pure gauge (rational part 1), with Q
    /// normalized to one of {1, 1-z, z, z(z-1)} depending on which exponents
    /// are active.
    pub fn logderiv_split(&self) -> Result<(LaurentPoly, LaurentPoly)> {
        if !self.r.is_one() {
            return Err(Error::NotPureGauge);
        }
        Ok(gauge_split(&self.a, &self.b))
    }
}

/// The (P, Q) pair with f'/f = P/Q for the gauge `(-z)^a (1-z)^b`, using the
/// normalization Q in {1, 1-z, z, z(z-1)}:
///
/// * a = 0, b = 0: (0, 1)
/// * a = 0, b != 0: (-b, 1-z)
/// * a != 0, b = 0: (a, z)
/// * both nonzero: ((a+b) z - a, z(z-1))
pub fn gauge_split(a: &Rational, b: &Rational) -> (LaurentPoly, LaurentPoly) {
    let one = Rational::one();
    match (a.is_zero(), b.is_zero()) {
        (true, true) => (LaurentPoly::zero(), LaurentPoly::one()),
        (true, false) => (
            LaurentPoly::constant(-b.clone()),
            LaurentPoly::from_pairs([(0, one.clone()), (1, -one)]),
        ),
        (false, true) => (LaurentPoly::constant(a.clone()), LaurentPoly::zpow(1)),
        (false, false) => (
            LaurentPoly::from_pairs([(1, a + b), (0, -a.clone())]),
            LaurentPoly::from_pairs([(2, one.clone()), (1, -one)]),
        ),
    }
}

impl fmt::Debug for QuasiRationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QuasiRationalFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a.is_zero() && self.b.is_zero() {
            return write!(f, "{}", self.r);
        }
        if !self.a.is_zero() {
            write!(f, "(-z)^({}) ", self.a)?;
        }
        if !self.b.is_zero() {
            write!(f, "(1-z)^({}) ", self.b)?;
        }
        write!(f, "[{}]", self.r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn qrf(a: (i64, i64), b: (i64, i64)) -> QuasiRationalFunc {
        QuasiRationalFunc::gauge(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn identity_multiplication() {
        let f = qrf((1, 2), (1, 3));
        assert_eq!(QuasiRationalFunc::one().mul(&f), f);
    }

    #[test]
    fn integer_gauge_absorption() {
        // (-z)^(1/2) * (-z)^(1/2) = -z after absorption
        let h = qrf((1, 2), (0, 1));
        let prod = h.mul(&h);
        assert!(prod.is_rational());
        assert_eq!(prod.rational_part(), &RationalFunc::zpow(1).neg());
    }

    #[test]
    fn weight_times_inverse_is_one() {
        // w = (-z)^(-1/3) (1-z)^(1/2+1/3)
        let w = QuasiRationalFunc::gauge(rat(-1, 3), rat(5, 6));
        assert!(w.mul(&w.recip()).is_one());
    }

    #[test]
    fn derivative_of_plain_power() {
        let f = QuasiRationalFunc::from_laurent(LaurentPoly::zpow(4));
        let expect = QuasiRationalFunc::from_laurent(LaurentPoly::monomial(3, int(4)));
        assert_eq!(f.derivative(), expect);
    }

    #[test]
    fn derivative_of_gauges_matches_chain_rule() {
        // xi2 = (1-z)^(-a-b): f'/f = (a+b)/(1-z)
        let ab = rat(5, 6);
        let xi2 = QuasiRationalFunc::gauge(int(0), -ab.clone());
        let ld = xi2.logderiv();
        // (a+b)/(1-z) = -(a+b)/(z-1)
        let expect = RationalFunc::new(
            LaurentPoly::constant(ab),
            LaurentPoly::from_pairs([(0, int(1)), (1, int(-1))]),
        );
        assert_eq!(ld, expect);

        // xi3 = (-z)^(-1-a): f'/f = (-1-a)/z
        let xi3 = QuasiRationalFunc::gauge(rat(-3, 2), int(0));
        let expect = RationalFunc::new(LaurentPoly::constant(rat(-3, 2)), LaurentPoly::zpow(1));
        assert_eq!(xi3.logderiv(), expect);
    }

    #[test]
    fn logderiv_split_four_normalizations() {
        let (p, q) = QuasiRationalFunc::one().logderiv_split().unwrap();
        assert!(p.is_zero());
        assert!(q.is_one());

        // xi2 with alpha = 1/2, beta = 1/3: b = -5/6 -> (5/6, 1-z)
        let (p, q) = qrf((0, 1), (-5, 6)).logderiv_split().unwrap();
        assert_eq!(p, LaurentPoly::constant(rat(5, 6)));
        assert_eq!(q, LaurentPoly::from_pairs([(0, int(1)), (1, int(-1))]));

        // xi4 with alpha = 1/2, beta = 1/3: a = beta-1 = -2/3, b = -5/6
        // expect P = (a+b) z - a = -(3/2) z + 2/3, Q = z(z-1)
        let (p, q) = qrf((-2, 3), (-5, 6)).logderiv_split().unwrap();
        assert_eq!(p, LaurentPoly::from_pairs([(1, rat(-3, 2)), (0, rat(2, 3))]));
        assert_eq!(q, LaurentPoly::from_pairs([(2, int(1)), (1, int(-1))]));
    }

    #[test]
    fn logderiv_split_rejects_nontrivial_rational_part() {
        let f = QuasiRationalFunc::new(rat(1, 2), int(0), RationalFunc::zpow(1));
        assert_eq!(f.logderiv_split().unwrap_err(), Error::NotPureGauge);
    }

    #[test]
    fn subst_inv_gauge_map() {
        // w1 = (1-z)^(al+be) (-z)^(-1-al); w1(1/z) = -z w(z) with
        // w = (-z)^(-be) (1-z)^(al+be)   [checked here for al=1/2, be=1/3]
        let al = rat(1, 2);
        let be = rat(1, 3);
        let w1 = QuasiRationalFunc::gauge(-(&al) - int(1), &al + &be);
        let w = QuasiRationalFunc::gauge(-be.clone(), &al + &be);
        let minus_z = QuasiRationalFunc::from_rational(RationalFunc::zpow(1).neg());
        assert_eq!(w1.subst_inv(), minus_z.mul(&w));
    }

    #[test]
    fn exponent_at_one_combines_gauge_and_rational_order() {
        let one_minus_z = RationalFunc::from_laurent(LaurentPoly::from_pairs([
            (0, int(1)),
            (1, int(-1)),
        ]));
        let f = QuasiRationalFunc::new(int(0), rat(-1, 2), one_minus_z.recip());
        assert_eq!(f.exponent_at_one(), rat(-3, 2));
    }
}
