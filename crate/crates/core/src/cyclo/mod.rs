//! Exact cyclotomic numbers.
//!
//! A [`Cyclotomic`] is an element of the union of the cyclotomic fields
//! `Q_n = Q(ζ_n)`, stored in the canonical integral basis of `Q_n` where `n`
//! is the element's *conductor* (the least order whose field contains it).
//! Every operation returns a canonically reduced result, so structural
//! equality is semantic equality, the stored order is never `≡ 2 (mod 4)`,
//! and [`Cyclotomic::conductor`] is a constant-time lookup.

mod basis;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

use crate::arith::{crt, gcd, lcm, p_part, valuation};
use basis::{accumulate, field_info, reduce};

/// Exact rational scalar (arbitrary-precision, always in lowest terms).
pub type Rational = num::BigRational;

/// Errors from cyclotomic operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("galois exponent {k} is not invertible modulo {n}")]
    NonInvertibleGalois { k: u64, n: u64 },
    #[error("order {order} does not divide ambient order {ambient}")]
    OrderMismatch { order: u64, ambient: u64 },
    #[error("invalid root of unity order 0")]
    ZeroOrder,
    #[error("parse error: {0}")]
    Parse(String),
}

/// An exact cyclotomic number in reduced canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cyclotomic {
    /// The conductor: minimal `n` with `self ∈ Q_n`; never `≡ 2 (mod 4)`.
    order: u64,
    /// Coefficients over the canonical basis exponents of `Q_order`;
    /// zero coefficients are never stored.
    coeffs: BTreeMap<u64, Rational>,
}

impl Cyclotomic {
    /// The zero element (conductor 1, empty support).
    pub fn zero() -> Self {
        Cyclotomic { order: 1, coeffs: BTreeMap::new() }
    }

    /// The unit element.
    pub fn one() -> Self {
        Cyclotomic::from_rational(Rational::one())
    }

    /// Embed a rational number.
    pub fn from_rational(r: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0u64, r);
        }
        Cyclotomic { order: 1, coeffs }
    }

    /// Embed an integer.
    pub fn from_integer(k: i64) -> Self {
        Cyclotomic::from_rational(Rational::from_integer(BigInt::from(k)))
    }

    /// The primitive root of unity power `ζ_n^k` (`k` may be negative).
    ///
    /// Errors if `n = 0`. The result is reduced: `root_of_unity(6, 1)` has
    /// conductor 3.
    pub fn root_of_unity(n: u64, k: i64) -> Result<Self, CycloError> {
        if n == 0 {
            return Err(CycloError::ZeroOrder);
        }
        let k = k.rem_euclid(n as i64) as u64;
        let d = gcd(n, k.max(1));
        let (mut n1, mut k1) = if k == 0 { (1, 0) } else { (n / d, k / d) };
        let mut sign_flip = false;
        if n1 % 4 == 2 {
            // ζ_{2m}^k = (-1)^k ζ_m^{k (m+1)/2} for odd m.
            let m = n1 / 2;
            sign_flip = k1 % 2 == 1;
            k1 = ((k1 as u128 * ((m as u128 + 1) / 2)) % m as u128) as u64;
            n1 = m;
        }
        let info = field_info(n1);
        let mut acc = BTreeMap::new();
        let c = if sign_flip { -Rational::one() } else { Rational::one() };
        accumulate(&info, &mut acc, k1, &c);
        let (order, coeffs) = reduce(n1, acc);
        Ok(Cyclotomic { order, coeffs })
    }

    /// Build `Σ c_e · ζ_order^e` from arbitrary (exponent, coefficient)
    /// terms, canonically reduced once at the end. This is the fast path for
    /// assembling character values from root-of-unity multiplicities.
    pub fn from_terms<I>(order: u64, terms: I) -> Result<Self, CycloError>
    where
        I: IntoIterator<Item = (u64, Rational)>,
    {
        if order == 0 {
            return Err(CycloError::ZeroOrder);
        }
        let (n, shift) = if order % 4 == 2 { (order / 2, true) } else { (order, false) };
        let info = field_info(n);
        let mut acc = BTreeMap::new();
        for (e, c) in terms {
            let e = e % order;
            if shift {
                // ζ_{2m}^e = (-1)^e ζ_m^{e(m+1)/2}
                let m = n;
                let e2 = ((e as u128 * ((m as u128 + 1) / 2)) % m as u128) as u64;
                let c2 = if e % 2 == 1 { -c } else { c };
                accumulate(&info, &mut acc, e2, &c2);
            } else {
                accumulate(&info, &mut acc, e, &c);
            }
        }
        let (order, coeffs) = reduce(n, acc);
        Ok(Cyclotomic { order, coeffs })
    }

    /// The conductor: the least `f` with `self ∈ Q_f`. Never `≡ 2 (mod 4)`.
    pub fn conductor(&self) -> u64 {
        self.order
    }

    /// The `p`-rationality level of this value: `v_p(conductor)`.
    pub fn level(&self, p: u64) -> u32 {
        valuation(self.order, p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Is this a rational number (conductor 1)?
    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    /// The rational value, if this is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.order != 1 {
            return None;
        }
        Some(self.coeffs.get(&0).cloned().unwrap_or_else(Rational::zero))
    }

    /// The value as a nonnegative integer, if it is one (used to validate
    /// multiplicities).
    pub fn as_nonneg_integer(&self) -> Option<u64> {
        let r = self.as_rational()?;
        if !r.is_integer() || r.is_negative() {
            return None;
        }
        use num::ToPrimitive;
        r.to_integer().to_u64()
    }

    /// Support as (exponent, coefficient) pairs over the canonical basis of
    /// the conductor field.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    /// Apply the Galois automorphism `σ_k : ζ_n ↦ ζ_n^k` of `Q_n`
    /// (`n` = conductor of `self`; `k` is taken mod `n` and must be
    /// invertible).
    pub fn galois(&self, k: u64) -> Result<Self, CycloError> {
        let n = self.order;
        if n == 1 {
            return Ok(self.clone());
        }
        let k = k % n;
        if gcd(k, n) != 1 {
            return Err(CycloError::NonInvertibleGalois { k, n });
        }
        let info = field_info(n);
        let mut acc = BTreeMap::new();
        for (&e, c) in &self.coeffs {
            let e2 = ((e as u128 * k as u128) % n as u128) as u64;
            accumulate(&info, &mut acc, e2, c);
        }
        let (order, coeffs) = reduce(n, acc);
        debug_assert_eq!(order, n, "Galois action must preserve the conductor");
        Ok(Cyclotomic { order, coeffs })
    }

    /// Complex conjugation (`σ_{-1}`).
    pub fn conjugate(&self) -> Self {
        let n = self.order;
        if n == 1 {
            return self.clone();
        }
        self.galois(n - 1).expect("-1 is always invertible")
    }

    /// The automorphism `σ_α` of `Q_n` for the prime `p`: identity on
    /// `p'`-order roots of unity, `ξ ↦ ξ^{1 + p^α}` on `p`-power-order roots.
    ///
    /// `n` is the ambient order (the conductor of `self` must divide it);
    /// `α ≥ 1`. Writing `n = p^a · m` with `p ∤ m`, this is `σ_k` for the
    /// unique `k` with `k ≡ 1 (mod m)` and `k ≡ 1 + p^α (mod p^a)`.
    pub fn sigma_alpha(&self, p: u64, alpha: u32, ambient: u64) -> Result<Self, CycloError> {
        assert!(alpha >= 1, "sigma_alpha requires alpha >= 1");
        if ambient % self.order != 0 {
            return Err(CycloError::OrderMismatch { order: self.order, ambient });
        }
        let pa = p_part(ambient, p);
        if pa == 1 {
            return Ok(self.clone());
        }
        let m = ambient / pa;
        let one_plus = (1 + crate::arith::pow_mod(p, alpha as u64, pa)) % pa;
        let k = crt(1 % m, m, one_plus, pa);
        self.galois(k % self.order)
    }

    /// Multiplicative inverse. Errors on zero.
    ///
    /// Computed via the field norm: `z^{-1} = (∏_{σ ≠ id} σ(z)) / N(z)`.
    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let n = self.order;
        if n == 1 {
            let r = self.as_rational().unwrap();
            return Ok(Cyclotomic::from_rational(r.recip()));
        }
        let mut prod = Cyclotomic::one();
        for k in 2..n {
            if gcd(k, n) == 1 {
                prod = &prod * &self.galois(k)?;
            }
        }
        let norm = self * &prod;
        let norm_r = norm
            .as_rational()
            .expect("product over the full Galois orbit is rational");
        debug_assert!(!norm_r.is_zero());
        Ok(&prod * &Cyclotomic::from_rational(norm_r.recip()))
    }

    /// Scale by a rational.
    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Cyclotomic::zero();
        }
        let coeffs: BTreeMap<u64, Rational> =
            self.coeffs.iter().map(|(&e, c)| (e, c * r)).collect();
        // Scaling by a nonzero rational preserves the conductor.
        Cyclotomic { order: self.order, coeffs }
    }

    /// Floating complex embedding `Σ c_e e^{2πi e / n}` (diagnostic only:
    /// all exported arithmetic is exact).
    pub fn to_complex_f64(&self) -> (f64, f64) {
        use num::ToPrimitive;
        let tau = std::f64::consts::TAU;
        let (mut re, mut im) = (0.0, 0.0);
        for (&e, c) in &self.coeffs {
            let cf = c.to_f64().expect("rational out of f64 range");
            let ang = tau * e as f64 / self.order as f64;
            re += cf * ang.cos();
            im += cf * ang.sin();
        }
        (re, im)
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        let n = lcm(self.order, other.order);
        debug_assert!(n % 4 != 2);
        let info = field_info(n);
        let mut acc = BTreeMap::new();
        let s1 = n / self.order;
        for (&e, c) in &self.coeffs {
            accumulate(&info, &mut acc, e * s1, c);
        }
        let s2 = n / other.order;
        for (&e, c) in &other.coeffs {
            let c = if negate_other { -c } else { c.clone() };
            accumulate(&info, &mut acc, e * s2, &c);
        }
        let (order, coeffs) = reduce(n, acc);
        Cyclotomic { order, coeffs }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Cyclotomic::zero();
        }
        let n = lcm(self.order, other.order);
        let info = field_info(n);
        let s1 = (n / self.order) as u128;
        let s2 = (n / other.order) as u128;
        let mut acc = BTreeMap::new();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &other.coeffs {
                let e = ((e1 as u128 * s1 + e2 as u128 * s2) % n as u128) as u64;
                accumulate(&info, &mut acc, e, &(c1 * c2));
            }
        }
        let (order, coeffs) = reduce(n, acc);
        Cyclotomic { order, coeffs }
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $impl_fn:expr) => {
        impl std::ops::$trait for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                let f: fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic = $impl_fn;
                f(self, rhs)
            }
        }
        impl std::ops::$trait for Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: Cyclotomic) -> Cyclotomic {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

impl_binop!(Add, add, |a, b| a.add_impl(b, false));
impl_binop!(Sub, sub, |a, b| a.add_impl(b, true));
impl_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl std::ops::Div for &Cyclotomic {
    type Output = Cyclotomic;
    /// Panics on division by zero; use [`Cyclotomic::inverse`] for a
    /// fallible version.
    fn div(self, rhs: &Cyclotomic) -> Cyclotomic {
        self * &rhs.inverse().expect("division by zero")
    }
}

impl std::ops::Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        let coeffs: BTreeMap<u64, Rational> =
            self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect();
        Cyclotomic { order: self.order, coeffs }
    }
}

impl std::ops::Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", parse::render(self))
    }
}

impl FromStr for Cyclotomic {
    type Err = CycloError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}
