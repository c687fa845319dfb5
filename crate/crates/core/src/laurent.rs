//! Laurent polynomials over the exact rationals.
//!
//! Coefficients are keyed by (possibly negative) integer exponent; zero
//! coefficients are never stored, and the zero polynomial is the empty map.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::rat::{self, Rational};

/// A Laurent polynomial `sum c_k z^k` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(0, c)
    }

    /// `c z^k`.
    pub fn monomial(k: i64, c: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    /// `z^k`.
    pub fn zpow(k: i64) -> Self {
        Self::monomial(k, Rational::one())
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, Rational)>>(pairs: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in pairs {
            p.add_term(k, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(0).is_one()
    }

    /// True when the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty() || (self.coeffs.len() == 1 && self.coeffs.contains_key(&0))
    }

    /// Max exponent; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Min exponent; `None` for the zero polynomial.
    pub fn low_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn coeff(&self, k: i64) -> Rational {
        self.coeffs.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of the highest stored power; zero polynomial gives 0.
    pub fn leading_coeff(&self) -> Rational {
        self.degree().map(|d| self.coeff(d)).unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, k: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(k).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(*k, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &other.coeffs {
                out.add_term(k1 + k2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiplies by `z^k`.
    pub fn mul_zpow(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// d/dz.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.coeffs {
            if *k != 0 {
                out.add_term(k - 1, c * rat::int(*k));
            }
        }
        out
    }

    /// Substitutes z -> 1/z (exponent negation).
    pub fn subst_inv(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (-k, c.clone())).collect(),
        }
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Self {
        let lc = self.leading_coeff();
        if lc.is_zero() || lc.is_one() {
            self.clone()
        } else {
            self.scale(&(Rational::one() / lc))
        }
    }

    pub fn eval_rational(&self, x: &Rational) -> Option<Rational> {
        if x.is_zero() && self.low_degree().map(|l| l < 0).unwrap_or(false) {
            return None;
        }
        let mut acc = Rational::zero();
        for (k, c) in &self.coeffs {
            acc += c * rational_pow(x, *k);
        }
        Some(acc)
    }

    /// Evaluation at a complex point. Negative powers use `1/z`; on the unit
    /// circle callers should prefer passing `z` with `|z| = 1` so that the
    /// inverse is the conjugate to machine precision.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in &self.coeffs {
            acc += rat::to_f64(c) * complex_zpow(z, *k);
        }
        acc
    }

    /// Multiplicity of the root at z = 1 (0 if P(1) != 0). Zero polynomial
    /// reports 0.
    pub fn order_at_one(&self) -> u32 {
        self.factor_root_one().0
    }

    /// Writes `p = (z-1)^k q` with `q(1) != 0`, by exact synthetic division.
    /// Returns `(k, q)`; the zero polynomial gives `(0, 0)`.
    pub fn factor_root_one(&self) -> (u32, Self) {
        if self.is_zero() {
            return (0, Self::zero());
        }
        let mut p = self.clone();
        let mut ord = 0;
        loop {
            let value: Rational = p.coeffs.values().cloned().sum();
            if !value.is_zero() {
                return (ord, p);
            }
            let (low, dense) = p.to_dense().expect("nonzero");
            let mut q = vec![Rational::zero(); dense.len() - 1];
            let mut carry = Rational::zero();
            for i in (0..dense.len()).rev() {
                let v = &dense[i] + &carry;
                if i == 0 {
                    debug_assert!(v.is_zero());
                    break;
                }
                q[i - 1] = v.clone();
                carry = v;
            }
            p = Self::from_dense(low, q);
            ord += 1;
        }
    }

    /// Dense form: `(low, coeffs)` with `coeffs[i]` the coefficient of
    /// `z^(low+i)` and a nonzero last entry. `None` for zero.
    pub fn to_dense(&self) -> Option<(i64, Vec<Rational>)> {
        let low = self.low_degree()?;
        let high = self.degree()?;
        let mut v = vec![Rational::zero(); (high - low + 1) as usize];
        for (k, c) in &self.coeffs {
            v[(k - low) as usize] = c.clone();
        }
        Some((low, v))
    }

    pub fn from_dense(low: i64, coeffs: Vec<Rational>) -> Self {
        Self::from_pairs(coeffs.into_iter().enumerate().map(|(i, c)| (low + i as i64, c)))
    }
}

fn rational_pow(x: &Rational, k: i64) -> Rational {
    let mut acc = Rational::one();
    let base = if k >= 0 { x.clone() } else { x.recip() };
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

fn complex_zpow(z: Complex64, k: i64) -> Complex64 {
    if k >= 0 {
        z.powu(k as u32)
    } else {
        // on |z| = 1 the inverse is the conjugate; fall back to division
        // elsewhere
        let zi = if (z.norm_sqr() - 1.0).abs() < 1e-12 { z.conj() } else { z.inv() };
        zi.powu((-k) as u32)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().rev() {
            if first {
                first = false;
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            match (*k, a.is_one()) {
                (0, _) => write!(f, "{}", rat::format_rational(&a))?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{} z", rat::format_rational(&a))?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{} z^{k}", rat::format_rational(&a))?,
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// dense ordinary-polynomial helpers (constant term first, no trailing zeros)
// ---------------------------------------------------------------------------

pub(crate) fn dense_trim(v: &mut Vec<Rational>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}


/// Euclidean division a = q b + r, deg r < deg b. Panics on b = 0.
pub(crate) fn dense_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r: Vec<Rational> = a.to_vec();
    dense_trim(&mut r);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    let lead = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        q[shift] = c.clone();
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        dense_trim(&mut r);
    }
    dense_trim(&mut q);
    (q, r)
}

/// Monic gcd over Q[z].
pub(crate) fn dense_gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    dense_trim(&mut x);
    dense_trim(&mut y);
    while !y.is_empty() {
        let (_, r) = dense_divrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(lead) = x.last().cloned() {
        for c in &mut x {
            *c /= &lead;
        }
    }
    x
}
