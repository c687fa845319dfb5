//! Quadrature-level invariants that complement the exact suites: the PLP
//! biorthogonal-partner identity, the square-integrability closed sums, and
//! self-convergence of the double-exponential rule.

use num_complex::Complex64;

use xhr_core::hr::HrParams;
use xhr_core::quad::{circle_average, de_rule};
use xhr_core::quasi::QuasiRationalFunc;
use xhr_core::rat::rat;
use xhr_core::verify;

fn params() -> HrParams {
    HrParams::new(rat(1, 2), rat(1, 3))
}

#[test]
fn plp_partner_identity() {
    let rep = verify::suite_plp(&params(), 5, 9, 1e-9);
    assert!(rep.all_passed(), "{:?}", rep.failures);
}

#[test]
fn square_integrability_closed_sum() {
    // needs the strong condition -1/2 < alpha+beta < 1/2
    let p = HrParams::new(rat(1, 5), rat(1, 4));
    assert!(p.l2_strong());
    let rep = verify::suite_square_integrability(&p, 6, 9, 1e-9);
    assert!(rep.all_passed(), "{:?}", rep.failures);
}

#[test]
fn de_rule_self_convergence_is_monotone_at_the_tail() {
    // h_0 = <1, wbar> for the classical weight: successive levels converge;
    // final two agree to 1e-10 relative
    let p = params();
    let w = p.weight();
    let integrand = QuasiRationalFunc::one().mul(&w.subst_inv().subst_inv());
    let values: Vec<Complex64> = (7..=11)
        .map(|lv| circle_average(&integrand, &de_rule(lv)).unwrap())
        .collect();
    let h0 = p.norm(0).unwrap();
    let errs: Vec<f64> = values
        .iter()
        .map(|v| (v - Complex64::new(h0, 0.0)).norm() / h0.abs())
        .collect();
    for w in errs.windows(2) {
        assert!(w[1] <= w[0] * 1.5 + 1e-14, "not converging: {errs:?}");
    }
    let last_two = (values[values.len() - 1] - values[values.len() - 2]).norm()
        / values[values.len() - 1].norm();
    assert!(last_two < 1e-10, "{last_two:e}");
}

#[test]
fn singular_integrand_agrees_across_levels() {
    // the spec's self-convergence oracle: (2 sin(x/2))^(-1/2)
    let f = QuasiRationalFunc::gauge(rat(0, 1), rat(-1, 2));
    let v8 = circle_average(&f, &de_rule(8)).unwrap();
    let v10 = circle_average(&f, &de_rule(10)).unwrap();
    assert!((v8 - v10).norm() < 1e-10);
}
