//! Branch-correct evaluation of quasi-rational functions on the unit circle
//! and double-exponential quadrature for the biorthogonality integrals.
//!
//! The integrands are smooth on (0, 2pi) except for algebraic singularities
//! at the single circle point z = 1, seen from both interval endpoints. The
//! double-exponential map `x = pi (1 + tanh((pi/2) sinh t))` clusters nodes
//! there and converges at near-spectral rate without per-parameter rule
//! construction.

use num_complex::Complex64;
use num_traits::One;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quasi::QuasiRationalFunc;
use crate::rat::{self, Rational};

/// A point `z = e^{ix}` with `x` strictly inside (0, 2pi). The distances to
/// both endpoints are carried separately so that `sin(x/2)` and the branch
/// phases stay accurate when a node is exponentially close to the
/// singularity.
#[derive(Clone, Copy, Debug)]
pub struct CirclePoint {
    /// Angle in (0, 2pi).
    pub x: f64,
    /// Distance to the left endpoint (= x, computed stably).
    pub gap_left: f64,
    /// Distance to the right endpoint (= 2pi - x, computed stably).
    pub gap_right: f64,
    /// `e^{ix}`.
    pub z: Complex64,
}

impl CirclePoint {
    pub fn from_angle(x: f64) -> Self {
        assert!(
            x > 0.0 && x < 2.0 * std::f64::consts::PI,
            "angle must lie strictly inside (0, 2pi)"
        );
        Self::from_gaps(x, 2.0 * std::f64::consts::PI - x)
    }

    fn from_gaps(gap_left: f64, gap_right: f64) -> Self {
        // build z from whichever endpoint is closer, so the argument of the
        // trig functions is small where precision matters
        let z = if gap_left <= gap_right {
            Complex64::new(gap_left.cos(), gap_left.sin())
        } else {
            Complex64::new(gap_right.cos(), -gap_right.sin())
        };
        Self {
            x: gap_left,
            gap_left,
            gap_right,
            z,
        }
    }

    /// `2 sin(x/2) = |1 - z|`, exact at both endpoints.
    fn two_sin_half(&self) -> f64 {
        2.0 * (self.gap_left.min(self.gap_right) / 2.0).sin()
    }
}

/// Quadrature scheme tag.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    DoubleExponential,
    UniformTrapezoid,
}

/// Nodes and weights for integrals `(1/2pi) int_0^{2pi} f(e^{ix}) dx`.
#[derive(Clone, Debug)]
pub struct QuadratureRule {
    pub scheme: Scheme,
    pub level: u32,
    nodes: Vec<(CirclePoint, f64)>,
}

impl QuadratureRule {
    pub fn nodes(&self) -> &[(CirclePoint, f64)] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Double-exponential (tanh-sinh type) rule on (0, 2pi) with roughly
/// `2^level` nodes. Deterministic for a given level.
///
/// Levels outside [4, 12] are a caller bug.
pub fn de_rule(level: u32) -> QuadratureRule {
    assert!((4..=12).contains(&level), "DE level must be in [4, 12]");
    const T_MAX: f64 = 7.0;
    let h = 2.0 * T_MAX / 2f64.powi(level as i32);
    let steps = (2.0 * T_MAX / h).round() as i64;
    let mut nodes = Vec::with_capacity(steps as usize + 1);
    for i in 0..=steps {
        let t = -T_MAX + i as f64 * h;
        let s = std::f64::consts::FRAC_PI_2 * t.sinh();
        // x = pi(1 + tanh s); gaps via the logistic form, stable at both ends
        let gap_left = 2.0 * std::f64::consts::PI / (1.0 + (-2.0 * s).exp());
        let gap_right = 2.0 * std::f64::consts::PI / (1.0 + (2.0 * s).exp());
        // w = h pi (pi/2) cosh t / cosh^2 s, computed without overflow:
        // sech^2 s = 4 e^{-2|s|} / (1 + e^{-2|s|})^2
        let e = (-2.0 * s.abs()).exp();
        let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
        let w = h * std::f64::consts::PI * std::f64::consts::FRAC_PI_2 * t.cosh() * sech2;
        if w > 0.0 && gap_left > 0.0 && gap_right > 0.0 {
            nodes.push((CirclePoint::from_gaps(gap_left, gap_right), w));
        }
    }
    QuadratureRule {
        scheme: Scheme::DoubleExponential,
        level,
        nodes,
    }
}

/// Uniform midpoint-trapezoid rule with `count` nodes, excluding the
/// endpoints. Spectrally accurate for smooth periodic integrands.
pub fn uniform_rule(count: usize) -> QuadratureRule {
    assert!(count > 0);
    let h = 2.0 * std::f64::consts::PI / count as f64;
    let nodes = (0..count)
        .map(|i| {
            let x = (i as f64 + 0.5) * h;
            (CirclePoint::from_angle(x), h)
        })
        .collect();
    QuadratureRule {
        scheme: Scheme::UniformTrapezoid,
        level: 0,
        nodes,
    }
}

/// A quasi-rational function preprocessed for evaluation on the circle: the
/// exact (z-1)-multiplicities of the numerator and denominator are moved into
/// the branch exponent, so no polynomial evaluation ever cancels near the
/// singular point z = 1.
#[derive(Clone, Debug)]
pub struct PreparedEval {
    zero: bool,
    /// Exponent of (-z)^a.
    a: f64,
    /// Effective (1-z) exponent: gauge b plus the integer order moved out of
    /// the rational part.
    b: f64,
    /// Sign from rewriting `(z-1)^k = (-1)^k (1-z)^k`.
    sign: f64,
    num: Vec<(i64, f64)>,
    den: Vec<(i64, f64)>,
    den_text: String,
}

impl PreparedEval {
    pub fn new(f: &QuasiRationalFunc) -> Self {
        if f.is_zero() {
            return Self {
                zero: true,
                a: 0.0,
                b: 0.0,
                sign: 1.0,
                num: vec![],
                den: vec![],
                den_text: String::new(),
            };
        }
        let (kn, num) = f.rational_part().num().factor_root_one();
        let (kd, den) = f.rational_part().den().factor_root_one();
        let shift = kn as i64 - kd as i64;
        let to_terms = |p: &LaurentPoly| -> Vec<(i64, f64)> {
            p.iter().map(|(k, c)| (*k, rat::to_f64(c))).collect()
        };
        Self {
            zero: false,
            a: rat::to_f64(f.gauge_a()),
            b: rat::to_f64(f.gauge_b()) + shift as f64,
            sign: if shift % 2 == 0 { 1.0 } else { -1.0 },
            num: to_terms(&num),
            den: to_terms(&den),
            den_text: format!("{}", f.rational_part().den()),
        }
    }

    pub fn eval(&self, pt: &CirclePoint) -> Result<Complex64> {
        if self.zero {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let horner = |terms: &[(i64, f64)]| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, c) in terms {
                acc += *c * zpow(pt.z, *k);
            }
            acc
        };
        let den = horner(&self.den);
        if den == Complex64::new(0.0, 0.0) || !den.is_finite() {
            return Err(Error::PoleOnCircle {
                x: pt.x,
                factor: format!("denominator {}", self.den_text),
            });
        }
        let mut value = self.sign * horner(&self.num) / den;
        let phase = pt.x - std::f64::consts::PI;
        if self.a != 0.0 {
            value *= Complex64::from_polar(1.0, self.a * phase);
        }
        if self.b != 0.0 {
            let m = pt.two_sin_half();
            if m == 0.0 && self.b < 0.0 {
                return Err(Error::PoleOnCircle {
                    x: pt.x,
                    factor: format!("(1-z)^({})", self.b),
                });
            }
            value *= Complex64::from_polar(m.powf(self.b), self.b * phase / 2.0);
        }
        Ok(value)
    }
}

fn zpow(z: Complex64, k: i64) -> Complex64 {
    if k >= 0 {
        z.powu(k as u32)
    } else {
        z.conj().powu((-k) as u32)
    }
}

/// Evaluates a quasi-rational function at `z = e^{ix}` with the branches
/// `(-z)^a = e^{i a (x - pi)}` (arg(-z) = x - pi in (-pi, pi)) and
/// `(1-z)^b = (2 sin(x/2))^b e^{i b (x-pi)/2}` (arg(1-z) = (x-pi)/2).
pub fn eval_on_circle(f: &QuasiRationalFunc, pt: &CirclePoint) -> Result<Complex64> {
    PreparedEval::new(f).eval(pt)
}

/// `(1/2pi) int_0^{2pi} f(e^{ix}) dx` by the given rule, with the
/// integrability pre-check on the exact gauge exponent at z = 1.
pub fn circle_average(f: &QuasiRationalFunc, rule: &QuadratureRule) -> Result<Complex64> {
    check_integrable(f)?;
    let prepared = PreparedEval::new(f);
    let mut acc = Complex64::new(0.0, 0.0);
    for (pt, w) in &rule.nodes {
        acc += prepared.eval(pt)? * *w;
    }
    Ok(acc / (2.0 * std::f64::consts::PI))
}

/// The bilinear form `<f, g> = (1/2pi) int f(e^{ix}) g(e^{-ix}) dx`.
///
/// `g(e^{-ix})` is evaluated through the exact z -> 1/z transform, which
/// stays inside the quasi-rational class and matches the branch choices on
/// the circle.
pub fn bilinear_form(
    f: &QuasiRationalFunc,
    g: &QuasiRationalFunc,
    rule: &QuadratureRule,
) -> Result<Complex64> {
    circle_average(&f.mul(&g.subst_inv()), rule)
}

/// Divergence pre-check: the combined (1-z)-exponent at the singular point
/// must exceed -1. Reads only exact data (gauge exponent plus the rational
/// part's order at z = 1), so divergent requests fail before any quadrature.
pub fn check_integrable(f: &QuasiRationalFunc) -> Result<()> {
    if f.is_zero() {
        return Ok(());
    }
    let expo = f.exponent_at_one();
    if expo <= -Rational::one() {
        return Err(Error::DivergentWeight {
            condition: "(1-z)-exponent > -1".into(),
            detail: format!("combined exponent at z=1 is {expo}"),
        });
    }
    Ok(())
}

/// Gram matrix `G[m][n] = <P_m, wbar Q_n>` with `wbar` the z -> 1/z image of
/// the weight. Entries are independent; evaluation is kept deterministic.
pub fn gram_matrix(
    ps: &[LaurentPoly],
    qs: &[LaurentPoly],
    weight: &QuasiRationalFunc,
    rule: &QuadratureRule,
) -> Result<Vec<Vec<Complex64>>> {
    let wbar = weight.subst_inv();
    let mut out = Vec::with_capacity(ps.len());
    for pm in ps {
        let f = QuasiRationalFunc::from_laurent(pm.clone());
        let mut row = Vec::with_capacity(qs.len());
        for qn in qs {
            let g = wbar.mul(&QuasiRationalFunc::from_laurent(qn.clone()));
            row.push(bilinear_form(&f, &g, rule)?);
        }
        out.push(row);
    }
    Ok(out)
}

/// Moment `c_n = (1/2pi) int e^{inx} w(e^{ix}) dx` by quadrature (used
/// directly for n < 0 and as the oracle for the closed form).
pub fn moment_quadrature(
    n: i64,
    weight: &QuasiRationalFunc,
    rule: &QuadratureRule,
) -> Result<Complex64> {
    let zn = QuasiRationalFunc::from_laurent(LaurentPoly::zpow(n));
    circle_average(&zn.mul(weight), rule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{int, rat};
    use crate::ratfunc::RationalFunc;

    #[test]
    fn rule_is_deterministic_and_sized() {
        let r1 = de_rule(8);
        let r2 = de_rule(8);
        assert_eq!(r1.len(), r2.len());
        for ((p1, w1), (p2, w2)) in r1.nodes().iter().zip(r2.nodes()) {
            assert_eq!(p1.x, p2.x);
            assert_eq!(w1, w2);
        }
    }

    #[test]
    fn constant_integrates_to_one() {
        let one = QuasiRationalFunc::one();
        for level in [6, 9, 12] {
            let v = circle_average(&one, &de_rule(level)).unwrap();
            assert!((v.re - 1.0).abs() < 1e-12, "level {level}: {v}");
            assert!(v.im.abs() < 1e-14);
        }
    }

    #[test]
    fn oscillatory_integrand_vanishes() {
        // (1/2pi) int e^{ix} dx = 0
        let f = QuasiRationalFunc::from_laurent(LaurentPoly::zpow(1));
        let v = circle_average(&f, &de_rule(9)).unwrap();
        assert!(v.norm() < 1e-12, "{v}");
    }

    #[test]
    fn endpoint_singular_integrand_self_converges() {
        // int (2 sin(x/2))^(-1/2) dx/2pi: levels 8 and 10 agree to 1e-10
        let f = QuasiRationalFunc::gauge(int(0), rat(-1, 2));
        let v8 = circle_average(&f, &de_rule(8)).unwrap();
        let v10 = circle_average(&f, &de_rule(10)).unwrap();
        assert!((v8 - v10).norm() < 1e-10, "{v8} vs {v10}");
        // the (1-z)^(-1/2) branch phases cancel against nothing; value is
        // real and positive
        assert!(v10.im.abs() < 1e-12 && v10.re > 0.0);
    }

    #[test]
    fn branch_matches_integer_powers() {
        // (1-z)^1 via gauge equals the polynomial 1 - z pointwise
        let gauge = QuasiRationalFunc::gauge(int(0), rat(1, 2));
        let squared = gauge.mul(&gauge);
        let poly = QuasiRationalFunc::from_laurent(LaurentPoly::from_pairs([
            (0, int(1)),
            (1, int(-1)),
        ]));
        for x in [0.3, std::f64::consts::PI / 2.0, std::f64::consts::PI, 4.0, 6.0] {
            let pt = CirclePoint::from_angle(x);
            let a = eval_on_circle(&squared, &pt).unwrap();
            let b = eval_on_circle(&poly, &pt).unwrap();
            assert!((a - b).norm() < 1e-13, "x = {x}: {a} vs {b}");
        }
        // x = pi: 1 - e^{i pi} = 2
        let pt = CirclePoint::from_angle(std::f64::consts::PI);
        let v = eval_on_circle(&poly, &pt).unwrap();
        assert!((v - Complex64::new(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn half_power_branch_value() {
        // (-z)^(1/2) at x = pi/2: exp(i (1/2)(-pi/2)) = e^{-i pi/4}
        let f = QuasiRationalFunc::gauge(rat(1, 2), int(0));
        let pt = CirclePoint::from_angle(std::f64::consts::FRAC_PI_2);
        let v = eval_on_circle(&f, &pt).unwrap();
        let want = Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4);
        assert!((v - want).norm() < 1e-14);
    }

    #[test]
    fn conjugation_against_inverse_transform() {
        // for real rational coefficients, g(e^{-ix}) = conj(g(e^{ix}))
        let g = QuasiRationalFunc::new(
            rat(-1, 3),
            rat(5, 6),
            RationalFunc::new(
                LaurentPoly::from_pairs([(2, int(1)), (0, rat(1, 4))]),
                LaurentPoly::from_pairs([(1, int(1)), (0, int(3))]),
            ),
        );
        let ginv = g.subst_inv();
        for x in [0.7, 2.0, 3.9, 5.5] {
            let pt = CirclePoint::from_angle(x);
            let direct = eval_on_circle(&g, &pt).unwrap().conj();
            let via_inv = eval_on_circle(&ginv, &pt).unwrap();
            assert!((direct - via_inv).norm() < 1e-12, "x = {x}");
        }
    }

    #[test]
    fn divergent_exponent_rejected_before_quadrature() {
        // (1-z)^(-3/2) is not integrable
        let f = QuasiRationalFunc::gauge(int(0), rat(-3, 2));
        let err = circle_average(&f, &de_rule(6)).unwrap_err();
        assert!(matches!(err, Error::DivergentWeight { .. }));
        // rational pole at z = 1 counts too: 1/(1-z) times (1-z)^(-1/2)
        let f = QuasiRationalFunc::new(
            int(0),
            rat(1, 2),
            RationalFunc::new(
                LaurentPoly::one(),
                LaurentPoly::from_pairs([(0, int(1)), (1, int(-1))])
                    .mul(&LaurentPoly::from_pairs([(0, int(1)), (1, int(-1))])),
            ),
        );
        assert!(circle_average(&f, &de_rule(6)).is_err());
    }

    #[test]
    fn bilinear_form_unit() {
        let one = QuasiRationalFunc::one();
        let v = bilinear_form(&one, &one, &de_rule(8)).unwrap();
        assert!((v.re - 1.0).abs() < 1e-12 && v.im.abs() < 1e-14);
    }
}
