//! The Hendriksen-van Rossum polynomial universe: the polynomials themselves,
//! their three-term recurrence, the GEVP pencil and its circle adjoint, the
//! weight, norms and moments, the Christoffel-Darboux analog, and the four
//! primal / four adjoint quasi-Laurent eigenfunction families.

use num_traits::{One, Zero};

use crate::diffop::{DiffOp2, Pencil};
use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::laurent::LaurentPoly;
use crate::quasi::{gauge_split, QuasiRationalFunc};
use crate::rat::{self, binomial, pochhammer, pochhammer_nonzero, Rational};
use crate::ratfunc::RationalFunc;

/// HR parameter pair (alpha, beta), both exact rationals fixed per family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HrParams {
    alpha: Rational,
    beta: Rational,
}

impl HrParams {
    pub fn new(alpha: Rational, beta: Rational) -> Self {
        Self { alpha, beta }
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    /// alpha > -1, beta > -1, alpha + beta > -1: positivity of every h_n.
    pub fn positive_definite(&self) -> bool {
        let m1 = -Rational::one();
        self.alpha > m1 && self.beta > m1 && &self.alpha + &self.beta > m1
    }

    /// alpha > -1, beta > -1, -1/2 < alpha + beta < 1/2: square-integrability
    /// of all eight eigenfunction families.
    pub fn l2_strong(&self) -> bool {
        let half = rat::rat(1, 2);
        let s = &self.alpha + &self.beta;
        self.positive_definite() && s < half && s > -half
    }

    /// The biorthogonal-partner parameter swap (alpha, beta) -> (beta-1, alpha+1).
    pub fn partner_swap(&self) -> Self {
        Self {
            alpha: &self.beta - Rational::one(),
            beta: &self.alpha + Rational::one(),
        }
    }

    /// The GEVP pencil: `L1 = z(1-z) d^2 + (1-beta-(2+alpha)z) d`,
    /// `L2 = (1-z) d - (alpha+1) I`.
    pub fn pencil(&self) -> Pencil {
        let one = Rational::one();
        let a1 = RationalFunc::from_laurent(LaurentPoly::from_pairs([
            (1, one.clone()),
            (2, -one.clone()),
        ]));
        let b1 = RationalFunc::from_laurent(LaurentPoly::from_pairs([
            (0, &one - &self.beta),
            (1, -(rat::int(2) + &self.alpha)),
        ]));
        let b2 = RationalFunc::from_laurent(LaurentPoly::from_pairs([
            (0, one.clone()),
            (1, -one.clone()),
        ]));
        let c2 = RationalFunc::constant(-(&self.alpha + &one));
        Pencil::new(
            DiffOp2::new(a1, b1, RationalFunc::zero()),
            DiffOp2::new(RationalFunc::zero(), b2, c2),
        )
    }

    /// Circle-adjoint pencil (the operators of the adjoint GEVP).
    pub fn adjoint_pencil(&self) -> Pencil {
        self.pencil().circle_adjoint()
    }

    /// The biorthogonality weight `w = (-z)^(-beta) (1-z)^(alpha+beta)`.
    pub fn weight(&self) -> QuasiRationalFunc {
        QuasiRationalFunc::gauge(-self.beta.clone(), &self.alpha + &self.beta)
    }

    /// Convergence verdict for the classical weight: `alpha + beta > -1`.
    pub fn weight_condition(&self) -> Result<()> {
        let s = &self.alpha + &self.beta;
        if s <= -Rational::one() {
            return Err(Error::DivergentWeight {
                condition: "cond_conv_w".into(),
                detail: format!("alpha + beta = {s} <= -1"),
            });
        }
        Ok(())
    }

    /// `h_n = Gamma(n+1) Gamma(n+alpha+beta+1) / (Gamma(n+alpha+1) Gamma(n+beta+1))`,
    /// the resolved infinite-Pochhammer ratio of the weight display.
    pub fn norm(&self, n: u32) -> Result<f64> {
        let al = rat::to_f64(&self.alpha);
        let be = rat::to_f64(&self.beta);
        let nf = n as f64;
        Ok(gamma(nf + 1.0)? * gamma(nf + al + be + 1.0)?
            / (gamma(nf + al + 1.0)? * gamma(nf + be + 1.0)?))
    }

    /// `h~_n = (1)_n (alpha+beta+1)_n / ((alpha+1)_n (beta+1)_n)`, the exact
    /// Christoffel-Darboux constants.
    pub fn h_tilde(&self, n: u32) -> Result<Rational> {
        let one = Rational::one();
        let num = pochhammer(&one, n) * pochhammer(&(&self.alpha + &self.beta + &one), n);
        let d1 = pochhammer_nonzero(&(&self.alpha + &one), n, "alpha+1")?;
        let d2 = pochhammer_nonzero(&(&self.beta + &one), n, "beta+1")?;
        Ok(num / (d1 * d2))
    }

    /// Closed-form moment `c_n` for n >= 0:
    /// `sin(beta pi) Gamma(n-beta) / (sin((alpha+beta) pi) Gamma(-(alpha+beta)) Gamma(1+n+alpha))`.
    ///
    /// Errors when alpha+beta or beta is an integer (the sines vanish and the
    /// display degenerates); callers fall back to quadrature there.
    pub fn moment_closed(&self, n: u32) -> Result<f64> {
        let s = &self.alpha + &self.beta;
        if rat::is_integer(&s) {
            return Err(Error::DegenerateParameter {
                factor: "sin((alpha+beta) pi) (integer alpha+beta)".into(),
            });
        }
        if rat::is_integer(&self.beta) {
            return Err(Error::DegenerateParameter {
                factor: "sin(beta pi) (integer beta)".into(),
            });
        }
        let al = rat::to_f64(&self.alpha);
        let be = rat::to_f64(&self.beta);
        let sf = rat::to_f64(&s);
        let pi = std::f64::consts::PI;
        Ok((be * pi).sin() * gamma(n as f64 - be)?
            / ((sf * pi).sin() * gamma(-sf)? * gamma(1.0 + n as f64 + al)?))
    }

    /// Exact value of `(1/2pi) integral |phi^(1,n)|^2`: the closed sum
    /// `((beta)_n/(alpha+1)_n)^2 sum_k ((-n)_k (alpha+1)_k / (k! (1-beta-n)_k))^2`.
    pub fn sq_norm_phi1(&self, n: u32) -> Result<Rational> {
        let one = Rational::one();
        let pre = pochhammer(&self.beta, n)
            / pochhammer_nonzero(&(&self.alpha + &one), n, "alpha+1")?;
        let mut sum = Rational::zero();
        let shifted = &one - &self.beta - rat::int(n as i64);
        for k in 0..=n {
            let num = pochhammer(&rat::int(-(n as i64)), k)
                * pochhammer(&(&self.alpha + &one), k);
            let den = rat::factorial(k) * pochhammer_nonzero(&shifted, k, "1-beta-n")?;
            let term = num / den;
            sum += &term * &term;
        }
        Ok(&pre * &pre * sum)
    }
}

/// Monic HR polynomial `P_n(z; alpha, beta)`, computed from the terminating
/// hypergeometric series in the simplified form
/// `sum_k C(n,k) (beta)_{n-k} / (alpha+k+1)_{n-k} z^k`.
///
/// Requires `(alpha+1)_n != 0`; no condition on beta is needed in this form.
pub fn hr_poly(n: u32, alpha: &Rational, beta: &Rational) -> Result<LaurentPoly> {
    pochhammer_nonzero(&(alpha + Rational::one()), n, "alpha+1")?;
    let mut p = LaurentPoly::zero();
    for k in 0..=n {
        let num = binomial(n, k) * pochhammer(beta, n - k);
        let den = pochhammer(&(alpha + rat::int(k as i64 + 1)), n - k);
        p.add_term(k as i64, num / den);
    }
    Ok(p)
}

/// `P_n(z^{-1}; alpha, beta)` as a Laurent polynomial in negative powers.
pub fn hr_poly_inv(n: u32, alpha: &Rational, beta: &Rational) -> Result<LaurentPoly> {
    Ok(hr_poly(n, alpha, beta)?.subst_inv())
}

/// Biorthogonal partner `Q_n(z; alpha, beta) = P_n(z; beta, alpha)`.
pub fn hr_partner(n: u32, p: &HrParams) -> Result<LaurentPoly> {
    hr_poly(n, &p.beta, &p.alpha)
}

/// Three-term recurrence coefficients
/// `d_n = -(n+beta)/(n+alpha+1)`, `b_n = -n(n+alpha+beta)/((n+alpha)(n+alpha+1))`.
pub fn recurrence_coeffs(n: u32, p: &HrParams) -> Result<(Rational, Rational)> {
    let nn = rat::int(n as i64);
    let one = Rational::one();
    let den1 = &nn + &p.alpha + &one;
    if den1.is_zero() {
        return Err(Error::DegenerateParameter {
            factor: format!("n+alpha+1 at n = {n}"),
        });
    }
    let d = -((&nn + &p.beta) / &den1);
    let b = if n == 0 {
        Rational::zero()
    } else {
        let den0 = &nn + &p.alpha;
        if den0.is_zero() {
            return Err(Error::DegenerateParameter {
                factor: format!("n+alpha at n = {n}"),
            });
        }
        -(&nn * (&nn + &p.alpha + &p.beta) / (den0 * den1))
    };
    Ok((d, b))
}

/// Which side of the GEVP a family solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Primal,
    Adjoint,
}

/// One of the eight quasi-Laurent eigenfunction families: gauge factor,
/// (Laurent-)polynomial part and eigenvalue sequence.
#[derive(Clone, Debug)]
pub struct EigenFamily {
    pub j: u8,
    pub side: Side,
    params: HrParams,
    gauge_a: Rational,
    gauge_b: Rational,
    /// Extra integer z-power in the gauge (w_4 = z^{-1}).
    zshift: i64,
    poly_alpha: Rational,
    poly_beta: Rational,
    /// Laurent part takes argument z^{-1}.
    inverted: bool,
    eigen_sign: i64,
    eigen_shift: Rational,
}

/// Builds one of the four primal or four adjoint families.
///
/// Primal gauges and eigenvalues:
/// `(1, P_n(z), n)`, `((1-z)^(-a-b), P_n(z;-b,-a), n-a-b)`,
/// `((-z)^(-1-a), P_n(1/z), -n-1-a-b)`, `((-z)^(b-1)(1-z)^(-a-b), P_n(1/z;-b,-a), -n-1)`.
///
/// Adjoint gauges and eigenvalues:
/// `((1-z)^(a+b)(-z)^(-1-a), P_n(z;b-1,a+1), n)`, `((-z)^(-1-a), P_n(z;-a-1,-b+1), n-a-b)`,
/// `((1-z)^(a+b)(-z)^(-1-a-b), P_n(1/z;b-1,a+1), -n-1-a-b)`, `(1/z, P_n(1/z;-a-1,-b+1), -n-1)`.
pub fn eigen_family(j: u8, side: Side, p: &HrParams) -> EigenFamily {
    assert!((1..=4).contains(&j), "family index must be 1..=4");
    let one = Rational::one();
    let zero = Rational::zero();
    let al = p.alpha.clone();
    let be = p.beta.clone();
    let sum = &al + &be;
    let (gauge_a, gauge_b, zshift, pa, pb, eigen_sign, eigen_shift) = match (side, j) {
        (Side::Primal, 1) => (zero.clone(), zero.clone(), 0, al, be, 1, Rational::zero()),
        (Side::Primal, 2) => (zero.clone(), -&sum, 0, -be, -al, 1, -sum),
        (Side::Primal, 3) => (-&al - &one, zero.clone(), 0, al, be, -1, -&sum - &one),
        (Side::Primal, 4) => (&be - &one, -&sum, 0, -be, -al, -1, -one),
        (Side::Adjoint, 1) => (-&al - &one, sum.clone(), 0, &be - &one, &al + &one, 1, zero),
        (Side::Adjoint, 2) => (-&al - &one, zero.clone(), 0, -&al - &one, -&be + &one, 1, -sum),
        (Side::Adjoint, 3) => {
            (-&sum - &one, sum.clone(), 0, &be - &one, &al + &one, -1, -&sum - &one)
        }
        (Side::Adjoint, 4) => (zero.clone(), zero, -1, -&al - &one, -&be + &one, -1, -one),
        _ => unreachable!(),
    };
    let inverted = j >= 3;
    EigenFamily {
        j,
        side,
        params: p.clone(),
        gauge_a,
        gauge_b,
        zshift,
        poly_alpha: pa,
        poly_beta: pb,
        inverted,
        eigen_sign,
        eigen_shift,
    }
}

impl EigenFamily {
    pub fn params(&self) -> &HrParams {
        &self.params
    }

    /// The gauge factor xi_j (primal) or w_j (adjoint).
    pub fn gauge(&self) -> QuasiRationalFunc {
        let g = QuasiRationalFunc::gauge(self.gauge_a.clone(), self.gauge_b.clone());
        if self.zshift == 0 {
            g
        } else {
            g.mul_rational(&RationalFunc::zpow(self.zshift))
        }
    }

    /// The structural pair (P^(j), Q^(j)) with xi_j'/xi_j = P/Q and
    /// Q in {1, 1-z, z, z(z-1)}. Attached to the family index rather than
    /// recomputed from canonicalized exponents, so it stays correct when a
    /// gauge exponent happens to be an integer.
    pub fn structural_split(&self) -> (LaurentPoly, LaurentPoly) {
        match self.j {
            1 => gauge_split(&Rational::zero(), &Rational::zero()),
            2 => {
                let b = -(&self.params.alpha + &self.params.beta);
                (
                    LaurentPoly::constant(-&b),
                    LaurentPoly::from_pairs([(0, Rational::one()), (1, -Rational::one())]),
                )
            }
            3 => (
                LaurentPoly::constant(-&self.params.alpha - Rational::one()),
                LaurentPoly::zpow(1),
            ),
            4 => {
                let a = &self.params.beta - Rational::one();
                let b = -(&self.params.alpha + &self.params.beta);
                (
                    LaurentPoly::from_pairs([(1, &a + &b), (0, -a)]),
                    LaurentPoly::from_pairs([(2, Rational::one()), (1, -Rational::one())]),
                )
            }
            _ => unreachable!(),
        }
    }

    /// The (Laurent-)polynomial part p^(j)_n or p~^(j)_n.
    pub fn laurent_part(&self, n: u32) -> Result<LaurentPoly> {
        let p = hr_poly(n, &self.poly_alpha, &self.poly_beta)?;
        Ok(if self.inverted { p.subst_inv() } else { p })
    }

    /// theta^(j)_n (primal) or mu^(j)_n (adjoint); the two coincide.
    pub fn eigenvalue(&self, n: u32) -> Rational {
        rat::int(self.eigen_sign * n as i64) + &self.eigen_shift
    }

    /// The full eigenfunction `gauge * laurent_part`.
    pub fn eigenfunction(&self, n: u32) -> Result<QuasiRationalFunc> {
        Ok(self
            .gauge()
            .mul(&QuasiRationalFunc::from_laurent(self.laurent_part(n)?)))
    }
}

/// Moment `c_n` of the classical weight: the closed form for n >= 0 (falling
/// back to quadrature when it degenerates), quadrature for n < 0.
pub fn hr_moment(p: &HrParams, n: i64, level: u32) -> Result<num_complex::Complex64> {
    p.weight_condition()?;
    if n >= 0 {
        if let Ok(v) = p.moment_closed(n as u32) {
            return Ok(num_complex::Complex64::new(v, 0.0));
        }
    }
    crate::quad::moment_quadrature(n, &p.weight(), &crate::quad::de_rule(level))
}

/// Exact Pearson identity check: `w'/w = (B1 - A1')/A1 = -(alpha z + beta)/(z(1-z))`.
pub fn pearson_check(p: &HrParams) -> bool {
    let w = p.weight();
    let lhs = w.logderiv();
    let pencil = p.pencil();
    let rhs = pencil.l1.b.sub(&pencil.l1.a.derivative()).div(&pencil.l1.a);
    let closed = RationalFunc::new(
        LaurentPoly::from_pairs([(1, -p.alpha.clone()), (0, -p.beta.clone())]),
        LaurentPoly::from_pairs([(1, Rational::one()), (2, -Rational::one())]),
    );
    lhs == rhs && lhs == closed
}

/// Exact Christoffel-Darboux check at rational points x, y:
/// `[P_{n+1}(x) Q_n(1/y) - (x/y)^n P_{n+1}(y) Q_n(1/x)] / h~_n
///  = (x-y) sum_{k<=n} P_k(x) Q_k(1/y) / h~_k`.
pub fn cd_identity_check(n: u32, x: &Rational, y: &Rational, p: &HrParams) -> Result<bool> {
    if x.is_zero() || y.is_zero() {
        return Err(Error::Config("CD check needs x, y != 0".into()));
    }
    let ev = |q: &LaurentPoly, at: &Rational| q.eval_rational(at).expect("nonzero point");
    let pn1 = hr_poly(n + 1, &p.alpha, &p.beta)?;
    let qn = hr_partner(n, p)?;
    let xi = x.recip();
    let yi = y.recip();
    let ratio = {
        let mut acc = Rational::one();
        for _ in 0..n {
            acc *= x / y;
        }
        acc
    };
    let ht_n = p.h_tilde(n)?;
    if ht_n.is_zero() {
        return Err(Error::DegenerateParameter {
            factor: format!("h~_{n} = 0"),
        });
    }
    let lhs = (ev(&pn1, x) * ev(&qn, &yi) - ratio * ev(&pn1, y) * ev(&qn, &xi)) / ht_n;
    let mut rhs = Rational::zero();
    for k in 0..=n {
        let ht = p.h_tilde(k)?;
        if ht.is_zero() {
            return Err(Error::DegenerateParameter {
                factor: format!("h~_{k} = 0"),
            });
        }
        rhs += ev(&hr_poly(k, &p.alpha, &p.beta)?, x) * ev(&hr_partner(k, p)?, &yi) / ht;
    }
    rhs *= x - y;
    Ok(lhs == rhs)
}

/// Exact checks of the four parameter-shift formulas:
///
/// 1. `z^n P_n(1/z; a, b) = ((b)_n/(a+1)_n) P_n(z; b-1, a+1)`
/// 2. `P_n'(z) = n P_{n-1}(z; a+1, b)`
/// 3. `z (b+n-1) P_n'(z;b-1,a+1) = n (b+n-1) P_n(z;b-1,a+1) - n (1+a) P_{n-1}(z;b-1,a+2)`
/// 4. `z^2 P_n(1/z;-b,-a) P_n'(z;-a-1,-b+1) = n z P_n(1/z;-b,-a) P_n(z;-a-1,-b+1)
///     - n P_{n-1}(1/z;-b+1,-a) P_n(z;-a-1,-b+1)`
///
/// (3 and 4 are the displayed log-derivative relations with denominators
/// cleared.)
pub fn lemma31_check(n: u32, p: &HrParams) -> Result<[bool; 4]> {
    let one = Rational::one();
    let al = &p.alpha;
    let be = &p.beta;

    let lhs1 = hr_poly_inv(n, al, be)?.mul_zpow(n as i64);
    let c = pochhammer(be, n) / pochhammer_nonzero(&(al + &one), n, "alpha+1")?;
    let rhs1 = hr_poly(n, &(be - &one), &(al + &one))?.scale(&c);
    let ok1 = lhs1 == rhs1;

    let lhs2 = hr_poly(n, al, be)?.derivative();
    let rhs2 = if n == 0 {
        LaurentPoly::zero()
    } else {
        hr_poly(n - 1, &(al + &one), be)?.scale(&rat::int(n as i64))
    };
    let ok2 = lhs2 == rhs2;

    let ok3 = if n == 0 {
        hr_poly(0, &(be - &one), &(al + &one))?.derivative().is_zero()
    } else {
        let shift = be + rat::int(n as i64 - 1);
        let pn = hr_poly(n, &(be - &one), &(al + &one))?;
        let lhs = pn.derivative().mul_zpow(1).scale(&shift);
        let t1 = pn.scale(&(&shift * rat::int(n as i64)));
        let t2 = hr_poly(n - 1, &(be - &one), &(al + rat::int(2)))?
            .scale(&((al + &one) * rat::int(n as i64)));
        lhs == t1.sub(&t2)
    };

    let ok4 = if n == 0 {
        true
    } else {
        let pn_inv = hr_poly_inv(n, &-be.clone(), &-al.clone())?;
        let pn = hr_poly(n, &(-al.clone() - &one), &(-be.clone() + &one))?;
        let lhs = pn_inv.mul(&pn.derivative()).mul_zpow(2);
        let t1 = pn_inv.mul(&pn).mul_zpow(1).scale(&rat::int(n as i64));
        let t2 = hr_poly_inv(n - 1, &(-be.clone() + &one), &-al.clone())?
            .mul(&pn)
            .scale(&rat::int(n as i64));
        lhs == t1.sub(&t2)
    };

    Ok([ok1, ok2, ok3, ok4])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};

    fn params(a: (i64, i64), b: (i64, i64)) -> HrParams {
        HrParams::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    /// Independent oracle: build P_n by the three-term recurrence, which is
    /// manifestly monic.
    fn hr_poly_by_recurrence(n: u32, p: &HrParams) -> LaurentPoly {
        let mut prev = LaurentPoly::one();
        if n == 0 {
            return prev;
        }
        let (d0, _) = recurrence_coeffs(0, p).unwrap();
        let mut cur = LaurentPoly::from_pairs([(1, Rational::one()), (0, -d0)]);
        for m in 1..n {
            let (d, b) = recurrence_coeffs(m, p).unwrap();
            // P_{m+1} = z (P_m + b_m P_{m-1}) - d_m P_m
            let next = cur.add(&prev.scale(&b)).mul_zpow(1).sub(&cur.scale(&d));
            prev = cur;
            cur = next;
        }
        cur
    }

    #[test]
    fn base_cases() {
        let p = params((1, 2), (1, 3));
        assert_eq!(hr_poly(0, p.alpha(), p.beta()).unwrap(), LaurentPoly::one());
        // P_1 = z + beta/(alpha+1) = z + (1/3)/(3/2) = z + 2/9
        let p1 = hr_poly(1, p.alpha(), p.beta()).unwrap();
        assert_eq!(p1, LaurentPoly::from_pairs([(1, int(1)), (0, rat(2, 9))]));
        // partner: Q_1 = z + alpha/(beta+1) = z + (1/2)/(4/3) = z + 3/8
        let q1 = hr_partner(1, &p).unwrap();
        assert_eq!(q1, LaurentPoly::from_pairs([(1, int(1)), (0, rat(3, 8))]));
    }

    #[test]
    fn series_matches_recurrence_oracle_and_is_monic() {
        let p = params((1, 2), (1, 3));
        for n in 0..=10 {
            let series = hr_poly(n, p.alpha(), p.beta()).unwrap();
            assert_eq!(series, hr_poly_by_recurrence(n, &p), "n = {n}");
            assert!(series.leading_coeff().is_one(), "monic at n = {n}");
            assert_eq!(series.degree(), Some(n as i64));
        }
    }

    #[test]
    fn recurrence_coefficient_values() {
        let p = params((1, 1), (1, 1));
        let (d1, b1) = recurrence_coeffs(1, &p).unwrap();
        assert_eq!(d1, rat(-2, 3));
        assert_eq!(b1, rat(-1, 2));
        let (_, b0) = recurrence_coeffs(0, &p).unwrap();
        assert!(b0.is_zero());
    }

    #[test]
    fn partner_is_parameter_swap() {
        let p = params((2, 5), (1, 3));
        for n in 0..=8 {
            assert_eq!(
                hr_partner(n, &p).unwrap(),
                hr_poly(n, p.beta(), p.alpha()).unwrap()
            );
        }
    }

    #[test]
    fn operators_shift_parameters() {
        // L1 P_n = -n(n+alpha+1) P_n(z; alpha+1, beta-1), and the L2 analog
        let p = params((1, 2), (1, 3));
        let pencil = p.pencil();
        let n = 3u32;
        let pn = QuasiRationalFunc::from_laurent(hr_poly(n, p.alpha(), p.beta()).unwrap());
        let shifted = hr_poly(
            n,
            &(p.alpha() + Rational::one()),
            &(p.beta() - Rational::one()),
        )
        .unwrap();
        let c1 = -(int(n as i64) * (int(n as i64) + p.alpha() + Rational::one()));
        assert_eq!(
            pencil.l1.apply(&pn),
            QuasiRationalFunc::from_laurent(shifted.scale(&c1))
        );
        let c2 = -(int(n as i64) + p.alpha() + Rational::one());
        assert_eq!(
            pencil.l2.apply(&pn),
            QuasiRationalFunc::from_laurent(shifted.scale(&c2))
        );
    }

    #[test]
    fn gevp_residuals_vanish_only_at_the_right_eigenvalue() {
        let p = params((2, 5), (1, 3));
        let pencil = p.pencil();
        for n in 0..=8u32 {
            let pn = QuasiRationalFunc::from_laurent(hr_poly(n, p.alpha(), p.beta()).unwrap());
            assert!(pencil.residual(&int(n as i64), &pn).is_zero(), "n = {n}");
        }
        let p1 = QuasiRationalFunc::from_laurent(hr_poly(1, p.alpha(), p.beta()).unwrap());
        assert!(!pencil.residual(&int(2), &p1).is_zero());
    }

    #[test]
    fn all_eight_families_solve_their_gevp() {
        let p = params((1, 2), (1, 3));
        let pencil = p.pencil();
        let adjoint = p.adjoint_pencil();
        for j in 1..=4u8 {
            let fam = eigen_family(j, Side::Primal, &p);
            for n in [0u32, 1, 2, 4] {
                let phi = fam.eigenfunction(n).unwrap();
                let res = pencil.residual(&fam.eigenvalue(n), &phi);
                assert!(res.is_zero(), "primal j = {j}, n = {n}: {res}");
            }
            let fam = eigen_family(j, Side::Adjoint, &p);
            for n in [0u32, 1, 3] {
                let phi = fam.eigenfunction(n).unwrap();
                let res = adjoint.residual(&fam.eigenvalue(n), &phi);
                assert!(res.is_zero(), "adjoint j = {j}, n = {n}");
            }
        }
    }

    #[test]
    fn type4_eigenvalue_example() {
        // primal j=4, n=1, (alpha,beta)=(1/2,1/3): residual at lambda=-2 is 0
        let p = params((1, 2), (1, 3));
        let fam = eigen_family(4, Side::Primal, &p);
        assert_eq!(fam.eigenvalue(1), int(-2));
        let phi = fam.eigenfunction(1).unwrap();
        assert!(p.pencil().residual(&int(-2), &phi).is_zero());
    }

    #[test]
    fn weight_trivial_and_pearson() {
        let p0 = params((0, 1), (0, 1));
        assert!(p0.weight().is_one());
        assert!(pearson_check(&params((1, 2), (1, 3))));
        assert!(pearson_check(&params((3, 4), (-1, 5))));
    }

    #[test]
    fn w1_relation_to_weight() {
        // w_1(1/z) = -z w(z)
        let p = params((1, 2), (1, 3));
        let w1 = eigen_family(1, Side::Adjoint, &p).gauge();
        let minus_z = QuasiRationalFunc::from_rational(RationalFunc::zpow(1).neg());
        assert_eq!(w1.subst_inv(), minus_z.mul(&p.weight()));
    }

    #[test]
    fn norm_and_h_tilde() {
        let p0 = params((0, 1), (0, 1));
        assert!((p0.norm(0).unwrap() - 1.0).abs() < 1e-14);

        // h~_n = const * h_n with const independent of n
        let p = params((1, 2), (1, 3));
        let c0 = rat::to_f64(&p.h_tilde(0).unwrap()) / p.norm(0).unwrap();
        for n in 1..=8 {
            let c = rat::to_f64(&p.h_tilde(n).unwrap()) / p.norm(n).unwrap();
            assert!((c - c0).abs() < 1e-10 * c0.abs(), "n = {n}");
        }
    }

    #[test]
    fn eigenvalue_window_partition() {
        // {theta^(1)_n} U {theta^(4)_n} covers Z with no collision
        let p = params((1, 2), (1, 3));
        let f1 = eigen_family(1, Side::Primal, &p);
        let f4 = eigen_family(4, Side::Primal, &p);
        let nmax = 6u32;
        let mut seen: Vec<i64> = Vec::new();
        for n in 0..=nmax {
            seen.push(rat::to_i64(&f1.eigenvalue(n)).unwrap());
            seen.push(rat::to_i64(&f4.eigenvalue(n)).unwrap());
        }
        seen.sort_unstable();
        let expect: Vec<i64> = (-(nmax as i64) - 1..=nmax as i64).collect();
        assert_eq!(seen, expect);
    }

    #[test]
    fn cd_formula_exact() {
        let p = params((1, 2), (1, 3));
        assert!(cd_identity_check(0, &int(2), &int(3), &p).unwrap());
        assert!(cd_identity_check(3, &rat(1, 2), &int(-2), &p).unwrap());
        // x = y: both sides zero, trivially equal
        assert!(cd_identity_check(2, &int(2), &int(2), &p).unwrap());
        assert!(cd_identity_check(1, &int(0), &int(1), &p).is_err());
    }

    #[test]
    fn lemma31_all_four() {
        let p = params((1, 2), (1, 3));
        assert_eq!(lemma31_check(1, &p).unwrap(), [true; 4]);
        assert_eq!(lemma31_check(3, &p).unwrap(), [true; 4]);
        let p2 = params((2, 5), (1, 3));
        assert_eq!(lemma31_check(2, &p2).unwrap(), [true; 4]);
    }

    #[test]
    fn moment_closed_form_rejects_integer_sum() {
        let p = params((1, 2), (1, 2)); // alpha+beta = 1
        assert!(p.moment_closed(0).is_err());
    }
}
