//! Exceptional HR construction: single-step Darboux transforms of the HR
//! GEVP seeded by the four quasi-Laurent eigenfunction families, the
//! resulting four exceptional polynomial systems with partners, weights and
//! norms, state deletion/addition, and the multi-step Wronskian machinery.

use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::diffop::{darboux_ops, transformed_pencil_from_ops, DarbouxOps, DiffOp1, Pencil};
use crate::error::{Error, Result};
use crate::hr::{eigen_family, hr_poly, EigenFamily, HrParams, Side};
use crate::laurent::LaurentPoly;
use crate::quasi::QuasiRationalFunc;
use crate::rat::{self, pochhammer_nonzero, Rational};
use crate::ratfunc::RationalFunc;

/// A seed choice `phi = phi^(j0,l0)` for a single-step transform.
#[derive(Clone, Debug)]
pub struct SeedSpec {
    pub j0: u8,
    pub l0: u32,
    pub params: HrParams,
}

impl SeedSpec {
    pub fn new(j0: u8, l0: u32, params: HrParams) -> Result<Self> {
        if !(1..=4).contains(&j0) {
            return Err(Error::Config(format!("seed type {j0} not in 1..=4")));
        }
        if l0 == 0 {
            return Err(Error::Config("seed degree l0 must be >= 1".into()));
        }
        Ok(Self { j0, l0, params })
    }

    pub fn family(&self) -> EigenFamily {
        eigen_family(self.j0, Side::Primal, &self.params)
    }

    /// The seed eigenfunction `phi^(j0,l0)`.
    pub fn seed_function(&self) -> Result<QuasiRationalFunc> {
        self.family().eigenfunction(self.l0)
    }

    /// Its eigenvalue `kappa = theta^(j0)_{l0}`.
    pub fn kappa(&self) -> Rational {
        self.family().eigenvalue(self.l0)
    }

    /// Weight-denominator verdict: the exceptional weight must have no zero
    /// on the unit circle, which for real parameters reduces to
    /// `alpha + beta != -N` (types 1, 3) or `+N` (types 2, 4) for
    /// `1 <= N <= l0`, together with `beta != alpha + 1`.
    pub fn weight_condition(&self) -> Result<()> {
        let s = self.params.alpha() + self.params.beta();
        let name = format!("cond_X1w_{}", self.j0);
        if self.params.beta() == &(self.params.alpha() + Rational::one()) {
            return Err(Error::DivergentWeight {
                condition: name,
                detail: "beta = alpha + 1".into(),
            });
        }
        if let Some(k) = rat::to_i64(&s) {
            let banned = if self.j0 == 1 || self.j0 == 3 {
                -(self.l0 as i64)..=-1
            } else {
                1..=self.l0 as i64
            };
            if banned.contains(&k) {
                return Err(Error::DivergentWeight {
                    condition: name,
                    detail: format!("alpha + beta = {k}"),
                });
            }
        }
        Ok(())
    }
}

/// `eps^(j0,l0) = 1 / (Q^(j0)(z) p^(j0)_{l0}(z))`, the decoupling factor that
/// makes the transformed eigenfunctions (Laurent) polynomials.
pub fn decoupling_factor(seed: &SeedSpec) -> Result<RationalFunc> {
    let fam = seed.family();
    let (_, q) = fam.structural_split();
    let p = fam.laurent_part(seed.l0)?;
    Ok(RationalFunc::new(LaurentPoly::one(), q.mul(&p)))
}

/// One of the four exceptional HR families, with lazily built and cached
/// polynomials and partners.
#[derive(Debug)]
pub struct ExceptionalFamily {
    seed: SeedSpec,
    poly_cache: Mutex<HashMap<i64, LaurentPoly>>,
    partner_cache: Mutex<HashMap<i64, LaurentPoly>>,
}

impl ExceptionalFamily {
    pub fn new(seed: SeedSpec) -> Self {
        Self {
            seed,
            poly_cache: Mutex::new(HashMap::new()),
            partner_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn seed(&self) -> &SeedSpec {
        &self.seed
    }

    /// Smallest index: `-l0-1` for type 4 (state addition), 0 otherwise.
    pub fn min_index(&self) -> i64 {
        if self.seed.j0 == 4 {
            -(self.seed.l0 as i64) - 1
        } else {
            0
        }
    }

    /// Index-set membership: type 1 deletes `n = l0`, type 4 adds `n = -l0-1`.
    pub fn contains(&self, n: i64) -> bool {
        match self.seed.j0 {
            1 => n >= 0 && n != self.seed.l0 as i64,
            2 | 3 => n >= 0,
            4 => n >= 0 || n == -(self.seed.l0 as i64) - 1,
            _ => unreachable!(),
        }
    }

    /// All valid indices up to and including `n_max`, in order.
    pub fn indices_up_to(&self, n_max: i64) -> Vec<i64> {
        (self.min_index()..=n_max)
            .filter(|n| self.contains(*n))
            .collect()
    }

    /// The first `count` valid indices.
    pub fn index_window(&self, count: usize) -> Vec<i64> {
        (self.min_index()..)
            .filter(|n| self.contains(*n))
            .take(count)
            .collect()
    }

    /// Degree of `P^(j0,l0,n)`: `n+l0-1`, `n+l0`, `n+l0`, `n+l0+1` for types
    /// 1..4 (also covering the added state, where `n+l0+1 = 0`).
    pub fn degree(&self, n: i64) -> Result<i64> {
        self.check_index(n)?;
        let l0 = self.seed.l0 as i64;
        Ok(match self.seed.j0 {
            1 => n + l0 - 1,
            2 | 3 => n + l0,
            4 => n + l0 + 1,
            _ => unreachable!(),
        })
    }

    fn check_index(&self, n: i64) -> Result<()> {
        if self.contains(n) {
            Ok(())
        } else {
            Err(Error::IndexOutOfSet {
                j0: self.seed.j0,
                l0: self.seed.l0,
                n,
            })
        }
    }

    /// `P^(j0,l0,n)`: the normalized Darboux-transformed eigenfunction, made
    /// a polynomial by the `z^{l0}` scaling for types 3 and 4.
    ///
    /// Two independent routes are computed and compared exactly — the
    /// Wronskian-shaped normalization and the closed forms in terms of
    /// parameter-shifted HR polynomials — and any mismatch is a hard error.
    pub fn poly(&self, n: i64) -> Result<LaurentPoly> {
        self.check_index(n)?;
        if let Some(p) = self.poly_cache.lock().unwrap().get(&n) {
            return Ok(p.clone());
        }
        let p = build_exceptional_poly(self.seed.j0, self.seed.l0, n, &self.seed.params)?;
        self.poly_cache.lock().unwrap().insert(n, p.clone());
        Ok(p)
    }

    /// Biorthogonal partner `Q^(j0,l0,n)(z) = P^(j0,l0,n)(z; beta-1, alpha+1)`.
    pub fn partner(&self, n: i64) -> Result<LaurentPoly> {
        self.check_index(n)?;
        if let Some(p) = self.partner_cache.lock().unwrap().get(&n) {
            return Ok(p.clone());
        }
        let swapped = self.seed.params.partner_swap();
        let p = build_exceptional_poly(self.seed.j0, self.seed.l0, n, &swapped)?;
        self.partner_cache.lock().unwrap().insert(n, p.clone());
        Ok(p)
    }

    /// The exceptional weight `w^(j0,l0)` of the biorthogonality relation.
    pub fn weight(&self) -> Result<QuasiRationalFunc> {
        self.seed.weight_condition()?;
        let p = &self.seed.params;
        let al = p.alpha();
        let be = p.beta();
        let one = Rational::one();
        let l0 = self.seed.l0;
        let w = p.weight();
        let z_minus_1 = LaurentPoly::from_pairs([(1, one.clone()), (0, -one.clone())]);
        let one_minus_z = z_minus_1.neg();
        // (prefactor, squared polynomial, numerator, extra denominator factor)
        let (pre, sq, numer, extra_den): (Rational, LaurentPoly, LaurentPoly, LaurentPoly) =
            match self.seed.j0 {
                1 => (
                    pochhammer_nonzero(be, l0, "beta")?
                        / pochhammer_nonzero(&(al + &one), l0, "1+alpha")?,
                    hr_poly(l0, al, be)?,
                    z_minus_1.mul_zpow(l0 as i64),
                    LaurentPoly::one(),
                ),
                2 => (
                    pochhammer_nonzero(&-al.clone(), l0, "-alpha")?
                        / pochhammer_nonzero(&(&one - be), l0, "1-beta")?,
                    hr_poly(l0, &-be.clone(), &-al.clone())?,
                    LaurentPoly::zpow(1 + l0 as i64),
                    one_minus_z.clone(),
                ),
                3 => (
                    pochhammer_nonzero(&(al + &one), l0, "1+alpha")?
                        / pochhammer_nonzero(be, l0, "beta")?,
                    hr_poly(l0, &(be - &one), &(al + &one))?,
                    z_minus_1.mul_zpow(l0 as i64),
                    LaurentPoly::one(),
                ),
                4 => (
                    pochhammer_nonzero(&(&one - be), l0, "1-beta")?
                        / pochhammer_nonzero(&-al.clone(), l0, "-alpha")?,
                    hr_poly(l0, &(-al.clone() - &one), &(&one - be))?,
                    LaurentPoly::zpow(1 + l0 as i64),
                    one_minus_z.clone(),
                ),
                _ => unreachable!(),
            };
        let den = sq.mul(&sq).mul(&extra_den);
        Ok(w.mul_rational(&RationalFunc::new(numer, den)).scale(&pre))
    }

    /// The exact rational factor `h^(j0,l0)_n / h_n`:
    /// `-(n+beta)(n-l0)`, `-(n+beta)(n-l0+alpha+beta)`,
    /// `-(n+beta)(n+l0+1+alpha+beta)`, `-(n+beta)(n+l0+1)` for types 1..4.
    pub fn norm_factor(&self, n: i64) -> Result<Rational> {
        self.check_index(n)?;
        if self.seed.j0 == 4 && n == self.min_index() {
            return Err(Error::Config(
                "state-addition norm has no closed form; evaluate by quadrature".into(),
            ));
        }
        let be = self.seed.params.beta();
        let nn = rat::int(n);
        Ok(-((&nn + be) * self.transport_ratio(n)?))
    }

    /// `h^(j0,l0)_n / (-(n+beta) h_n) = theta_n - theta^(j0)_{l0}` as an
    /// exact rational.
    pub fn transport_ratio(&self, n: i64) -> Result<Rational> {
        self.check_index(n)?;
        let nn = rat::int(n);
        let al = self.seed.params.alpha();
        let be = self.seed.params.beta();
        let l0 = rat::int(self.seed.l0 as i64);
        let one = Rational::one();
        Ok(match self.seed.j0 {
            1 => &nn - &l0,
            2 => &nn - &l0 + al + be,
            3 => &nn + &l0 + &one + al + be,
            4 => &nn + &l0 + &one,
            _ => unreachable!(),
        })
    }

    /// `h^(j0,l0)_n` as a double (norm factor times the Gamma-ratio h_n).
    pub fn norm(&self, n: i64) -> Result<f64> {
        let factor = self.norm_factor(n)?;
        let hn = self.seed.params.norm(u32::try_from(n).expect("closed-form index"))?;
        Ok(rat::to_f64(&factor) * hn)
    }

    /// The non-vanishing eigenfunction at the seed eigenvalue: the kernel of
    /// the backward operator `kappa (G1 - G2)`, normalized up to a real
    /// scalar (unimodular constant prefactors dropped, rational part monic).
    ///
    /// Built as `(1/(eps phi)) exp{int (kappa B2 - B1)/A1 dz}`, which for the
    /// HR pencil integrates to `z^(kappa-1+beta) (1-z)^(-1-alpha-beta)` times
    /// `Q^(j0)/xi_{j0}`.
    pub fn state_function(&self) -> Result<QuasiRationalFunc> {
        let p = &self.seed.params;
        let kappa = self.seed.kappa();
        let one = Rational::one();
        let c0 = &kappa - &one + p.beta();
        let b = -(&one + p.alpha() + p.beta());
        let core = QuasiRationalFunc::gauge(c0, b);
        let fam = self.seed.family();
        let (_, q) = fam.structural_split();
        let v = core
            .mul_rational(&RationalFunc::from_laurent(q))
            .div(&fam.gauge());
        Ok(v.normalize_ray())
    }

    /// The Darboux factor operators for this seed (F, G1, G2 and
    /// `phi_tilde_2`), with the canonical decoupling factor.
    pub fn darboux(&self) -> Result<DarbouxOps> {
        let pencil = self.seed.params.pencil();
        let phi = self.seed.seed_function()?;
        let eps = decoupling_factor(&self.seed)?;
        darboux_ops(&pencil, &phi, &self.seed.kappa(), &eps)
    }

    /// The transformed pencil `(L1_hat, L2_hat)`.
    pub fn transformed_pencil(&self) -> Result<Pencil> {
        transformed_pencil_from_ops(&self.darboux()?)
    }

    /// The raw transformed eigenfunction `psi_hat^(j0,l0,n)` (without the
    /// `z^{l0}` polynomial scaling), canonically zero at the deleted state.
    pub fn hpsi(&self, n: u32) -> Result<LaurentPoly> {
        hpsi_route(self.seed.j0, self.seed.l0, n, &self.seed.params)
    }
}

/// Route 1: the normalized Wronskian-shaped construction
/// `Q^(j0)(p_{l0} P_n' - p_{l0}' P_n) - P^(j0) p_{l0} P_n`.
fn hpsi_route(j0: u8, l0: u32, n: u32, params: &HrParams) -> Result<LaurentPoly> {
    let fam = eigen_family(j0, Side::Primal, params);
    let (pg, qg) = fam.structural_split();
    let p_l0 = fam.laurent_part(l0)?;
    let pn = hr_poly(n, params.alpha(), params.beta())?;
    let wronskian = p_l0.mul(&pn.derivative()).sub(&p_l0.derivative().mul(&pn));
    Ok(qg.mul(&wronskian).sub(&pg.mul(&p_l0).mul(&pn)))
}

/// Route 2: the closed forms in terms of parameter-shifted HR polynomials.
fn closed_route(j0: u8, l0: u32, n: u32, params: &HrParams) -> Result<LaurentPoly> {
    let al = params.alpha();
    let be = params.beta();
    let one = Rational::one();
    let nn = rat::int(n as i64);
    let ll = rat::int(l0 as i64);
    let pn = hr_poly(n, al, be)?;
    let pn1 = if n == 0 {
        LaurentPoly::zero()
    } else {
        hr_poly(n - 1, &(al + &one), be)?
    };
    let one_minus_z = LaurentPoly::from_pairs([(0, one.clone()), (1, -one.clone())]);
    let z_minus_1 = one_minus_z.neg();
    Ok(match j0 {
        1 => hr_poly(l0, al, be)?
            .mul(&pn1)
            .scale(&nn)
            .sub(&hr_poly(l0 - 1, &(al + &one), be)?.mul(&pn).scale(&ll)),
        2 => {
            let bracket = hr_poly(l0, &-be.clone(), &-al.clone())?
                .mul(&pn1)
                .scale(&nn)
                .sub(&hr_poly(l0 - 1, &(&one - be), &-al.clone())?.mul(&pn).scale(&ll));
            one_minus_z.mul(&bracket).sub(
                &hr_poly(l0, &-be.clone(), &-al.clone())?
                    .mul(&pn)
                    .scale(&(al + be)),
            )
        }
        3 => {
            let pre = pochhammer_nonzero(be, l0, "beta")?
                / pochhammer_nonzero(&(al + &one), l0, "alpha+1")?;
            let shift_den = be + &ll - &one;
            if shift_den.is_zero() {
                return Err(Error::DegenerateParameter {
                    factor: "beta+l0-1".into(),
                });
            }
            let t1 = hr_poly(l0, &(be - &one), &(al + &one))?
                .mul(&pn1)
                .mul_zpow(1)
                .scale(&nn);
            let t2 = hr_poly(l0 - 1, &(be - &one), &(al + rat::int(2)))?
                .mul(&pn)
                .scale(&((al + &one) * &ll / shift_den));
            let t3 = hr_poly(l0, &(be - &one), &(al + &one))?
                .mul(&pn)
                .scale(&(al + &one));
            t1.add(&t2).add(&t3).scale(&pre)
        }
        4 => {
            let pre = pochhammer_nonzero(&-al.clone(), l0, "-alpha")?
                / pochhammer_nonzero(&(&one - be), l0, "1-beta")?;
            let shift_den = -al.clone() + &ll - &one;
            if shift_den.is_zero() {
                return Err(Error::DegenerateParameter {
                    factor: "-alpha+l0-1".into(),
                });
            }
            let pl0 = hr_poly(l0, &(-al.clone() - &one), &(&one - be))?;
            let t1 = pl0.mul(&pn1).mul_zpow(1).scale(&nn);
            let t2 = hr_poly(l0 - 1, &(-al.clone() - &one), &(rat::int(2) - be))?
                .mul(&pn)
                .scale(&((&one - be) * &ll / shift_den));
            let bracket = z_minus_1.mul(&t1.add(&t2));
            let last = pl0.mul(&pn).mul(&LaurentPoly::from_pairs([
                (0, &one - be),
                (1, -(&one + al)),
            ]));
            bracket.sub(&last).scale(&pre)
        }
        _ => unreachable!(),
    })
}

/// Builds `P^(j0,l0,n)` by both routes and compares them exactly.
fn build_exceptional_poly(j0: u8, l0: u32, n: i64, params: &HrParams) -> Result<LaurentPoly> {
    if j0 == 4 && n == -(l0 as i64) - 1 {
        // the added state: P^(4,l0,-l0-1) = 1 by normalization
        return Ok(LaurentPoly::one());
    }
    let n = u32::try_from(n).expect("index checked");
    let route1 = {
        let raw = hpsi_route(j0, l0, n, params)?;
        if j0 >= 3 {
            raw.mul_zpow(l0 as i64)
        } else {
            raw
        }
    };
    let route2 = closed_route(j0, l0, n, params)?;
    if route1 != route2 {
        return Err(Error::SelfCheck(format!(
            "type-{j0} l0={l0} n={n}: normalized transform and closed form disagree"
        )));
    }
    Ok(route1)
}

/// Exact l0 = 1 coincidence identities between the four types:
/// `P^(4,1,n)(z) = [alpha(alpha+n+1)/((n+1)(beta-1))] P^(1,1,n+2)(z; alpha-1, beta-1)` and
/// `P^(2,1,n)(z) = -[alpha(alpha+beta+n-1)/((alpha+n)(beta-1))] P^(3,1,n)(z; alpha-1, beta-1)`.
pub fn l0_one_coincidences(params: &HrParams, n_max: u32) -> Result<()> {
    let al = params.alpha();
    let be = params.beta();
    let one = Rational::one();
    if be == &one {
        return Err(Error::DegenerateParameter {
            factor: "beta-1".into(),
        });
    }
    if al.is_zero() {
        return Err(Error::DegenerateParameter {
            factor: "alpha".into(),
        });
    }
    let shifted = HrParams::new(al - &one, be - &one);
    for n in 0..=n_max {
        let nn = rat::int(n as i64);
        if (al + &nn).is_zero() {
            return Err(Error::DegenerateParameter {
                factor: format!("alpha+n at n = {n}"),
            });
        }
        let lhs = build_exceptional_poly(4, 1, n as i64, params)?;
        let c = al * (al + &nn + &one) / ((&nn + &one) * (be - &one));
        let rhs = build_exceptional_poly(1, 1, n as i64 + 2, &shifted)?.scale(&c);
        if lhs != rhs {
            return Err(Error::SelfCheck(format!("type 4/1 coincidence fails at n = {n}")));
        }

        let lhs = build_exceptional_poly(2, 1, n as i64, params)?;
        let c = -(al * (al + be + &nn - &one) / ((al + &nn) * (be - &one)));
        let rhs = build_exceptional_poly(3, 1, n as i64, &shifted)?.scale(&c);
        if lhs != rhs {
            return Err(Error::SelfCheck(format!("type 2/3 coincidence fails at n = {n}")));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// multi-step transforms
// ---------------------------------------------------------------------------

/// One stage of a multi-step transform: the pencil it acts on, the stage seed
/// (already transformed by the earlier stages), and the factor operators.
#[derive(Debug)]
struct Stage {
    seed_original: QuasiRationalFunc,
    kappa: Rational,
    eps: RationalFunc,
    eps_fallback: bool,
    ops: DarbouxOps,
}

/// An N-step Darboux transform (N <= 3) seeded by primal eigenfunctions
/// `phi^(k_j, l_j)`; stage j uses the chain-transformed seed
/// `F^(j-1) ... F^(0) [phi^(k_j,l_j)]`.
#[derive(Debug)]
pub struct Multistep {
    params: HrParams,
    stages: Vec<Stage>,
}

impl Multistep {
    pub fn new(params: &HrParams, seeds: &[(u8, u32)]) -> Result<Self> {
        if seeds.is_empty() || seeds.len() > 3 {
            return Err(Error::Config(format!(
                "multi-step supports 1..=3 seeds, got {}",
                seeds.len()
            )));
        }
        // dependent seeds make the Wronskian denominator vanish
        let originals: Vec<QuasiRationalFunc> = seeds
            .iter()
            .map(|(j, l)| SeedSpec::new(*j, *l, params.clone())?.seed_function())
            .collect::<Result<_>>()?;
        if wronskian(&originals)?.is_zero() {
            return Err(Error::WronskianVanishes);
        }

        let mut stages: Vec<Stage> = Vec::with_capacity(seeds.len());
        let mut pencil = params.pencil();
        for (idx, (j, l)) in seeds.iter().enumerate() {
            let spec = SeedSpec::new(*j, *l, params.clone())?;
            let kappa = spec.kappa();
            // transform the seed through all earlier stages
            let mut seed_fn = spec.seed_function()?;
            for earlier in &stages[..idx] {
                seed_fn = earlier.ops.f.apply(&seed_fn);
            }
            if seed_fn.is_zero() {
                return Err(Error::WronskianVanishes);
            }
            // stage decoupling factor: reuse the closed recipe when the
            // transformed seed is still gauge times a Laurent polynomial,
            // otherwise fall back to eps = 1
            let (eps, eps_fallback) = stage_eps(&spec, &seed_fn);
            let ops = darboux_ops(&pencil, &seed_fn, &kappa, &eps)?;
            pencil = transformed_pencil_from_ops(&ops)?;
            stages.push(Stage {
                seed_original: originals[idx].clone(),
                kappa,
                eps,
                eps_fallback,
                ops,
            });
        }
        Ok(Self {
            params: params.clone(),
            stages,
        })
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn kappas(&self) -> Vec<Rational> {
        self.stages.iter().map(|s| s.kappa.clone()).collect()
    }

    /// True when any stage fell back to eps = 1 (seed not gauge times
    /// Laurent polynomial) — outside the scope the construction covers
    /// explicitly.
    pub fn has_eps_fallback(&self) -> bool {
        self.stages.iter().any(|s| s.eps_fallback)
    }

    pub fn params(&self) -> &HrParams {
        &self.params
    }

    /// `psi^(N) = F^(N-1) ... F^(0) psi`, one factor at a time.
    pub fn transform_sequential(&self, psi: &QuasiRationalFunc) -> QuasiRationalFunc {
        let mut out = psi.clone();
        for stage in &self.stages {
            out = stage.ops.f.apply(&out);
        }
        out
    }

    /// The same transform as a Wronskian quotient of the original seeds:
    /// `(prod eps_j)^(-1) Wr[phi_0, ..., phi_{N-1}, psi] / Wr[phi_0, ..., phi_{N-1}]`.
    pub fn transform_wronskian(&self, psi: &QuasiRationalFunc) -> Result<QuasiRationalFunc> {
        let mut fns: Vec<QuasiRationalFunc> =
            self.stages.iter().map(|s| s.seed_original.clone()).collect();
        let bottom = wronskian(&fns)?;
        if bottom.is_zero() {
            return Err(Error::WronskianVanishes);
        }
        fns.push(psi.clone());
        let top = wronskian(&fns)?;
        let mut eps_prod = RationalFunc::one();
        for stage in &self.stages {
            eps_prod = eps_prod.mul(&stage.eps);
        }
        Ok(top.div(&bottom).mul_rational(&eps_prod.recip()))
    }

    /// `L2bar*^(N) [psi^(N)*]` via the M-operator products: all stages use
    /// the eigenvalue `lambda` of `psi*` except the last, which uses its own
    /// `kappa`. Rejects `lambda` colliding with any stage eigenvalue.
    pub fn adjoint_partner_product(
        &self,
        psi_ast: &QuasiRationalFunc,
        lambda: &Rational,
    ) -> Result<QuasiRationalFunc> {
        for (j, stage) in self.stages.iter().enumerate() {
            if &stage.kappa == lambda {
                return Err(Error::EigenvalueCollision {
                    lambda: lambda.to_string(),
                    stage: j,
                });
            }
        }
        let mut g = psi_ast.clone();
        let last = self.stages.len() - 1;
        for (j, stage) in self.stages.iter().enumerate() {
            let lam = if j == last { &stage.kappa } else { lambda };
            g = apply_m_operator(stage, lam, &g)?;
        }
        Ok(g)
    }
}

/// Stage decoupling factor: `1/(Q^(k_j) r)` when the transformed seed is the
/// family gauge times a Laurent polynomial r, else the identity.
fn stage_eps(spec: &SeedSpec, seed_fn: &QuasiRationalFunc) -> (RationalFunc, bool) {
    let fam = spec.family();
    let (_, q) = fam.structural_split();
    let ratio = seed_fn.div(&fam.gauge());
    match ratio.as_rational() {
        Ok(r) if r.is_laurent() => {
            let den = q.mul(r.num());
            (RationalFunc::new(LaurentPoly::one(), den), false)
        }
        _ => (RationalFunc::one(), true),
    }
}

/// `M_lambda = (kappa G1bar* - lambda G2bar*) phi_tilde(1/z)` applied to g,
/// with the barred operators the circle adjoints of the stage G factors.
fn apply_m_operator(
    stage: &Stage,
    lambda: &Rational,
    g: &QuasiRationalFunc,
) -> Result<QuasiRationalFunc> {
    let g1s: DiffOp1 = stage.ops.g1.circle_adjoint()?;
    let g2s: DiffOp1 = stage.ops.g2.circle_adjoint()?;
    let h = g.mul_rational(&stage.ops.phi_tilde2.subst_inv());
    g1s.apply(&h)
        .scale(&stage.kappa)
        .sub(&g2s.apply(&h).scale(lambda))
}

/// Wronski determinant of quasi-rational functions. Each column carries its
/// own gauge (derivatives preserve gauges), so the determinant factors as the
/// product of the gauges times a rational determinant.
pub fn wronskian(fns: &[QuasiRationalFunc]) -> Result<QuasiRationalFunc> {
    let n = fns.len();
    if n == 0 {
        return Ok(QuasiRationalFunc::one());
    }
    let mut gauge_a = Rational::zero();
    let mut gauge_b = Rational::zero();
    let mut columns: Vec<Vec<RationalFunc>> = Vec::with_capacity(n);
    for f in fns {
        if f.is_zero() {
            return Ok(QuasiRationalFunc::zero());
        }
        gauge_a += f.gauge_a();
        gauge_b += f.gauge_b();
        let mut col = Vec::with_capacity(n);
        let mut cur = f.clone();
        for _ in 0..n {
            col.push(cur.rational_part().clone());
            cur = cur.derivative();
        }
        columns.push(col);
    }
    let det = rational_det(&columns, &(0..n).collect::<Vec<_>>(), 0)?;
    Ok(QuasiRationalFunc::new(gauge_a, gauge_b, det))
}

/// Laplace expansion over the first remaining row; fine for N <= 4.
fn rational_det(cols: &[Vec<RationalFunc>], active: &[usize], row: usize) -> Result<RationalFunc> {
    if active.len() == 1 {
        return Ok(cols[active[0]][row].clone());
    }
    let mut acc = RationalFunc::zero();
    for (pos, &ci) in active.iter().enumerate() {
        let minor: Vec<usize> = active
            .iter()
            .copied()
            .filter(|&c| c != ci)
            .collect();
        let sub = rational_det(cols, &minor, row + 1)?;
        let term = cols[ci][row].mul(&sub);
        acc = if pos % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    Ok(acc)
}
