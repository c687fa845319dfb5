//! Property tests for the exact algebra layer.

use proptest::prelude::*;

use xhr_core::laurent::LaurentPoly;
use xhr_core::quasi::QuasiRationalFunc;
use xhr_core::rat::{int, rat, Rational};
use xhr_core::ratfunc::RationalFunc;
use xhr_core::diffop::DiffOp2;

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| rat(n, d))
}

fn arb_laurent(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-6i64..=6), arb_rational()), 0..=max_terms)
        .prop_map(LaurentPoly::from_pairs)
}

fn arb_laurent_nonzero(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    arb_laurent(max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

/// Gauge exponents with denominator up to 4 (integer values included, so the
/// absorption rule is exercised too).
fn arb_gauge() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn arb_laurent_small() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(((-3i64..=3), (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))), 1..=3)
        .prop_map(LaurentPoly::from_pairs)
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn arb_quasi() -> impl Strategy<Value = QuasiRationalFunc> {
    (arb_gauge(), arb_gauge(), arb_laurent_small(), arb_laurent_small())
        .prop_map(|(a, b, n, d)| QuasiRationalFunc::new(a, b, RationalFunc::new(n, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn multiply_then_divide_round_trips(p in arb_laurent(5), q in arb_laurent_nonzero(4)) {
        let f = RationalFunc::new(p.mul(&q), q);
        prop_assert_eq!(f, RationalFunc::from_laurent(p));
    }

    #[test]
    fn degree_is_additive(p in arb_laurent_nonzero(5), q in arb_laurent_nonzero(5)) {
        let d = p.mul(&q).degree().unwrap();
        prop_assert_eq!(d, p.degree().unwrap() + q.degree().unwrap());
        let l = p.mul(&q).low_degree().unwrap();
        prop_assert_eq!(l, p.low_degree().unwrap() + q.low_degree().unwrap());
    }

    #[test]
    fn leibniz_rule(f in arb_quasi(), g in arb_quasi()) {
        let lhs = f.mul(&g).derivative();
        let rhs = f.derivative().mul(&g).add(&f.mul(&g.derivative())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn integer_gauges_absorb(k in -5i64..=5, m in -5i64..=5, r in arb_laurent_nonzero(4)) {
        // (-z)^k (1-z)^m r built through the gauge equals the plain rational
        let via_gauge = QuasiRationalFunc::new(int(k), int(m), RationalFunc::from_laurent(r.clone()));
        prop_assert!(via_gauge.is_rational());

        let mut plain = RationalFunc::from_laurent(r);
        let minus_z = RationalFunc::zpow(1).neg();
        for _ in 0..k.abs() {
            plain = if k > 0 { plain.mul(&minus_z) } else { plain.div(&minus_z) };
        }
        let one_minus_z = RationalFunc::from_laurent(LaurentPoly::from_pairs([
            (0, int(1)),
            (1, int(-1)),
        ]));
        for _ in 0..m.abs() {
            plain = if m > 0 { plain.mul(&one_minus_z) } else { plain.div(&one_minus_z) };
        }
        prop_assert_eq!(via_gauge, QuasiRationalFunc::from_rational(plain));
    }

    #[test]
    fn quotient_recovers_gauge_offsets(f in arb_quasi(), k in -4i64..=4) {
        // shifting a gauge exponent by an integer while dividing the rational
        // part accordingly leaves the function equal
        let shifted = QuasiRationalFunc::new(
            f.gauge_a() + int(k),
            f.gauge_b().clone(),
            {
                let mut r = f.rational_part().clone();
                let minus_z = RationalFunc::zpow(1).neg();
                for _ in 0..k.abs() {
                    r = if k > 0 { r.div(&minus_z) } else { r.mul(&minus_z) };
                }
                r
            },
        );
        prop_assert_eq!(&shifted, &f);
        prop_assert!(shifted.eq_up_to_scalar(&f));
    }

    #[test]
    fn double_circle_adjoint_is_identity(
        a in arb_laurent(3),
        b in arb_laurent(3),
        c in arb_laurent(3),
    ) {
        let op = DiffOp2::new(
            RationalFunc::from_laurent(a),
            RationalFunc::from_laurent(b),
            RationalFunc::from_laurent(c),
        );
        prop_assert_eq!(op.circle_adjoint().circle_adjoint(), op);
    }

    #[test]
    fn subst_inv_is_an_involution(f in arb_quasi()) {
        prop_assert_eq!(f.subst_inv().subst_inv(), f);
    }
}
