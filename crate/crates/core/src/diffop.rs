//! Second-order operator pencils, first-order factor operators, circle
//! adjoints, and the Darboux factorization / transformed-pencil builders.
//!
//! Operators store expanded canonical coefficients so that operator equality
//! reduces to rational-function equality. First-order factors keep the
//! `pre . d/dz (post . )  +  c` shape they are defined with and expand on
//! demand.

use num_traits::One;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quasi::QuasiRationalFunc;
use crate::rat::Rational;
use crate::ratfunc::RationalFunc;

/// `A(z) d^2/dz^2 + B(z) d/dz + C(z) I` with rational-function coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp2 {
    pub a: RationalFunc,
    pub b: RationalFunc,
    pub c: RationalFunc,
}

impl DiffOp2 {
    pub fn new(a: RationalFunc, b: RationalFunc, c: RationalFunc) -> Self {
        Self { a, b, c }
    }

    pub fn zero() -> Self {
        Self {
            a: RationalFunc::zero(),
            b: RationalFunc::zero(),
            c: RationalFunc::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    /// Multiplication operator `g I`.
    pub fn mul_op(g: RationalFunc) -> Self {
        Self {
            a: RationalFunc::zero(),
            b: RationalFunc::zero(),
            c: g,
        }
    }

    /// Exact application: `A f'' + B f' + C f`.
    pub fn apply(&self, f: &QuasiRationalFunc) -> QuasiRationalFunc {
        let f1 = f.derivative();
        let f2 = f1.derivative();
        let t2 = f2.mul_rational(&self.a);
        let t1 = f1.mul_rational(&self.b);
        let t0 = f.mul_rational(&self.c);
        t2.add(&t1)
            .and_then(|s| s.add(&t0))
            .expect("derivatives preserve the gauge")
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            a: self.a.scale(c),
            b: self.b.scale(c),
            c: self.c.scale(c),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            a: self.a.add(&other.a),
            b: self.b.add(&other.b),
            c: self.c.add(&other.c),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            a: self.a.sub(&other.a),
            b: self.b.sub(&other.b),
            c: self.c.sub(&other.c),
        }
    }

    /// Left multiplication by a rational function: `g L` scales every
    /// coefficient.
    pub fn mul_rational(&self, g: &RationalFunc) -> Self {
        Self {
            a: self.a.mul(g),
            b: self.b.mul(g),
            c: self.c.mul(g),
        }
    }

    /// The conjugate-adjoint on the unit circle:
    /// `C I -> C(1/z) I`, `B d -> z d B(1/z) z I`, `A d^2 -> z^2 d^2 A(1/z) z^2 I`,
    /// expanded into canonical form by the product rule.
    pub fn circle_adjoint(&self) -> Self {
        let z2 = RationalFunc::zpow(2);
        let z1 = RationalFunc::zpow(1);

        let mut a = RationalFunc::zero();
        let mut b = RationalFunc::zero();
        let mut c = self.c.subst_inv();

        if !self.a.is_zero() {
            // f -> z^2 (u f)'' with u = A(1/z) z^2
            let u = self.a.subst_inv().mul(&z2);
            let u1 = u.derivative();
            let u2 = u1.derivative();
            a = a.add(&z2.mul(&u));
            b = b.add(&z2.mul(&u1).scale(&Rational::from_integer(2.into())));
            c = c.add(&z2.mul(&u2));
        }
        if !self.b.is_zero() {
            // f -> z (v f)' with v = B(1/z) z
            let v = self.b.subst_inv().mul(&z1);
            b = b.add(&z1.mul(&v));
            c = c.add(&z1.mul(&v.derivative()));
        }
        Self { a, b, c }
    }
}

/// Operator pencil `(L1, L2)` of the generalized eigenvalue problem
/// `L1 psi = lambda L2 psi`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    pub l1: DiffOp2,
    pub l2: DiffOp2,
}

impl Pencil {
    pub fn new(l1: DiffOp2, l2: DiffOp2) -> Self {
        assert!(!(l1.is_zero() && l2.is_zero()), "zero pencil");
        Self { l1, l2 }
    }

    /// `(L1 - lambda L2) f`, exactly. Zero iff `(lambda, f)` is an eigenpair.
    pub fn residual(&self, lambda: &Rational, f: &QuasiRationalFunc) -> QuasiRationalFunc {
        self.l1
            .apply(f)
            .sub(&self.l2.apply(f).scale(lambda))
            .expect("same gauge")
    }

    pub fn circle_adjoint(&self) -> Self {
        Self {
            l1: self.l1.circle_adjoint(),
            l2: self.l2.circle_adjoint(),
        }
    }
}

/// First-order factor operator `f -> pre . (post . f)' + c . f`.
///
/// This shape covers the Darboux factors F and G_j, their circle adjoints and
/// the M operators of the multi-step transform. For every operator built in
/// this crate the gauges of `pre` and `post` cancel, so the expanded
/// coefficient form is rational.
#[derive(Clone, Debug)]
pub struct DiffOp1 {
    pre: QuasiRationalFunc,
    post: QuasiRationalFunc,
    c: RationalFunc,
}

impl DiffOp1 {
    pub fn new(pre: QuasiRationalFunc, post: QuasiRationalFunc, c: RationalFunc) -> Self {
        assert!(!post.is_zero(), "inner multiplier must be nonzero");
        Self { pre, post, c }
    }

    pub fn apply(&self, f: &QuasiRationalFunc) -> QuasiRationalFunc {
        let inner = self.post.mul(f).derivative();
        self.pre
            .mul(&inner)
            .add(&f.mul_rational(&self.c))
            .expect("pre and post gauges cancel")
    }

    /// Expanded coefficients `(a, b)` with `self = a d/dz + b I`. Errors when
    /// the pre/post gauges do not cancel.
    pub fn expanded(&self) -> Result<(RationalFunc, RationalFunc)> {
        let a = self.pre.mul(&self.post);
        let b = self.pre.mul(&self.post.derivative());
        let a = a.as_rational()?.clone();
        let b = b.as_rational()?.add(&self.c);
        Ok((a, b))
    }

    /// From expanded form `a d/dz + b I`.
    pub fn from_coeffs(a: RationalFunc, b: RationalFunc) -> Self {
        Self {
            pre: QuasiRationalFunc::from_rational(a),
            post: QuasiRationalFunc::one(),
            c: b,
        }
    }

    /// `self` applied after `other`, expanded to a second-order operator: for
    /// `self = s d + t` and `other = u d + v`,
    /// `A = s u`, `B = s u' + s v + t u`, `C = s v' + t v`.
    pub fn compose(&self, other: &Self) -> Result<DiffOp2> {
        let (s, t) = self.expanded()?;
        let (u, v) = other.expanded()?;
        let a = s.mul(&u);
        let b = s.mul(&u.derivative()).add(&s.mul(&v)).add(&t.mul(&u));
        let c = s.mul(&v.derivative()).add(&t.mul(&v));
        Ok(DiffOp2::new(a, b, c))
    }

    /// Circle adjoint of a first-order operator:
    /// `(a d + b)* f = z ( a(1/z) z f )' + b(1/z) f`.
    pub fn circle_adjoint(&self) -> Result<Self> {
        let (a, b) = self.expanded()?;
        let z1 = RationalFunc::zpow(1);
        Ok(Self {
            pre: QuasiRationalFunc::from_rational(z1.clone()),
            post: QuasiRationalFunc::from_rational(a.subst_inv().mul(&z1)),
            c: b.subst_inv(),
        })
    }
}

/// The factor operators of the Darboux decomposition
/// `L_j = phi_tilde_j (G_j F + I)` for a seed eigenpair `(phi, kappa)` and a
/// decoupling factor `eps`.
#[derive(Clone, Debug)]
pub struct DarbouxOps {
    pub f: DiffOp1,
    pub g1: DiffOp1,
    pub g2: DiffOp1,
    /// `phi_tilde_2 = (L2 phi)/phi`; `phi_tilde_1 = kappa phi_tilde_2`.
    pub phi_tilde2: RationalFunc,
    pub kappa: Rational,
}

/// Builds F, G1, G2 and `phi_tilde_2` for a verified eigenpair seed.
///
/// `F = (phi/eps) d (1/phi)`, `G_j = (1/(phi_tilde_j phi)) (A_j d + B_j) phi eps`.
pub fn darboux_ops(
    pencil: &Pencil,
    seed: &QuasiRationalFunc,
    kappa: &Rational,
    eps: &RationalFunc,
) -> Result<DarbouxOps> {
    if seed.is_zero() {
        return Err(Error::NotAnEigenpair {
            eigenvalue: kappa.to_string(),
        });
    }
    if eps.is_zero() {
        return Err(Error::DivisionByZero("decoupling factor".into()));
    }
    if !pencil.residual(kappa, seed).is_zero() {
        return Err(Error::NotAnEigenpair {
            eigenvalue: kappa.to_string(),
        });
    }
    let phi_tilde2 = pencil.l2.apply(seed).div(seed).as_rational()?.clone();
    if phi_tilde2.is_zero() {
        return Err(Error::SeedAnnihilated);
    }
    let phi_tilde1 = phi_tilde2.scale(kappa);
    if phi_tilde1.is_zero() {
        // kappa = 0 leaves L1 = phi_tilde1 (...) degenerate
        return Err(Error::SeedAnnihilated);
    }

    let f = DiffOp1::new(
        seed.mul_rational(&eps.recip()),
        seed.recip(),
        RationalFunc::zero(),
    );
    let g = |a_j: &RationalFunc, b_j: &RationalFunc, tphi: &RationalFunc| {
        DiffOp1::new(
            seed.recip().mul_rational(&a_j.div(tphi)),
            seed.mul_rational(eps),
            b_j.mul(eps).div(tphi),
        )
    };
    let g1 = g(&pencil.l1.a, &pencil.l1.b, &phi_tilde1);
    let g2 = g(&pencil.l2.a, &pencil.l2.b, &phi_tilde2);
    Ok(DarbouxOps {
        f,
        g1,
        g2,
        phi_tilde2,
        kappa: kappa.clone(),
    })
}

/// The Darboux transformed pencil `(L1_hat, L2_hat)` with
/// `L1_hat = kappa (F G1 + I)` and `L2_hat = F G2 + I`, built by expanding the
/// operator compositions symbolically.
pub fn transformed_pencil(
    pencil: &Pencil,
    seed: &QuasiRationalFunc,
    kappa: &Rational,
    eps: &RationalFunc,
) -> Result<Pencil> {
    let ops = darboux_ops(pencil, seed, kappa, eps)?;
    transformed_pencil_from_ops(&ops)
}

pub fn transformed_pencil_from_ops(ops: &DarbouxOps) -> Result<Pencil> {
    let identity = DiffOp2::mul_op(RationalFunc::one());
    let l1 = ops.f.compose(&ops.g1)?.add(&identity).scale(&ops.kappa);
    let l2 = ops.f.compose(&ops.g2)?.add(&identity);
    Ok(Pencil::new(l1, l2))
}

/// Closed-form coefficients of the transformed operators:
///
/// `A_hat = A/pt`,
/// `B_hat = B/pt + 2 (eps'/eps)(A/pt) + (A/pt)'`,
/// `C_hat = 1 + (B/pt)' + (B/pt)(eps'/eps - phi'/phi) - 2 (A/pt)(phi'/phi)^2`
/// `        + (A/pt)'(eps'/eps + phi'/phi) + (A/pt)(eps''/eps + phi''/phi)`,
///
/// with `pt = phi_tilde_j`. The overall kappa of the first operator is
/// included, matching [`transformed_pencil`] exactly.
pub fn transformed_pencil_closed_form(
    pencil: &Pencil,
    seed: &QuasiRationalFunc,
    kappa: &Rational,
    eps: &RationalFunc,
) -> Result<Pencil> {
    let ops = darboux_ops(pencil, seed, kappa, eps)?;
    let s = seed.logderiv();
    let t = eps.derivative().div(eps);
    let s2 = s.mul(&s);
    // phi''/phi = s' + s^2, eps''/eps = t' + t^2
    let phi2 = s.derivative().add(&s2);
    let eps2 = t.derivative().add(&t.mul(&t));
    let two = Rational::one() + Rational::one();

    let build = |a_j: &RationalFunc, b_j: &RationalFunc, tphi: &RationalFunc| {
        let u = a_j.div(tphi);
        let v = b_j.div(tphi);
        let a_hat = u.clone();
        let b_hat = v.add(&t.mul(&u).scale(&two)).add(&u.derivative());
        let c_hat = RationalFunc::one()
            .add(&v.derivative())
            .add(&v.mul(&t.sub(&s)))
            .sub(&u.mul(&s2).scale(&two))
            .add(&u.derivative().mul(&t.add(&s)))
            .add(&u.mul(&eps2.add(&phi2)));
        DiffOp2::new(a_hat, b_hat, c_hat)
    };
    let phi_tilde1 = ops.phi_tilde2.scale(kappa);
    let l1 = build(&pencil.l1.a, &pencil.l1.b, &phi_tilde1).scale(kappa);
    let l2 = build(&pencil.l2.a, &pencil.l2.b, &ops.phi_tilde2);
    Ok(Pencil::new(l1, l2))
}

/// `z^k` basis elements used by the intertwining checks.
pub fn zpow_basis(range: std::ops::RangeInclusive<i64>) -> Vec<QuasiRationalFunc> {
    range
        .map(|k| QuasiRationalFunc::from_laurent(LaurentPoly::zpow(k)))
        .collect()
}
