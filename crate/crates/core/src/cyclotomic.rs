//! Exact arithmetic in the cyclotomic field `Q(ζ_n)`.
//!
//! An element is a rational polynomial in `ζ` reduced modulo the n-th
//! cyclotomic polynomial, so equality is coefficient equality and every
//! nonzero element is invertible. Conductor 1 is the rational subfield;
//! rationals are promoted when they meet a larger conductor, which lets
//! `zero()` and `one()` exist without knowing `n`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::heisenberg::euler_phi;
use crate::linalg::{Field, IntegralDomain, Matrix};

/// Integer coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomials are indexed from 1");
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache lock").get(&n) {
        return p.as_ref().clone();
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = divide_monic(&num, &cyclotomic_polynomial(d));
    }
    cache.lock().expect("cache lock").insert(n, Arc::new(num.clone()));
    num
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i64; rem.len() - dd];
    for deg in (dd..rem.len()).rev() {
        let c = rem[deg];
        quot[deg - dd] = c;
        for (m, &dc) in den.iter().enumerate() {
            rem[deg - dd + m] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "non-exact cyclotomic division");
    quot
}

/// An element of `Q(ζ_n)`.
#[derive(Clone)]
pub struct CycScalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Reduces a polynomial of any degree modulo the monic `Φ_n`.
fn reduce_mod(poly: &mut Vec<BigRational>, phi: &[i64]) {
    let deg = phi.len() - 1;
    for top in (deg..poly.len()).rev() {
        let c = std::mem::replace(&mut poly[top], BigRational::zero());
        if c.is_zero() {
            continue;
        }
        for (m, &pc) in phi.iter().enumerate().take(deg) {
            if pc != 0 {
                poly[top - deg + m] -= &c * rat(pc);
            }
        }
    }
    poly.truncate(deg);
    poly.resize(deg, BigRational::zero());
}

impl CycScalar {
    pub fn from_rational(q: BigRational) -> Self {
        CycScalar {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_integer(x: i64) -> Self {
        Self::from_rational(rat(x))
    }

    /// Builds `Σ c_k ζ^k` and reduces it.
    pub fn from_poly(conductor: u32, poly: Vec<BigRational>) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let mut poly = poly;
        let phi = cyclotomic_polynomial(conductor);
        if poly.len() < phi.len() {
            poly.resize(phi.len(), BigRational::zero());
        }
        reduce_mod(&mut poly, &phi);
        CycScalar {
            conductor,
            coeffs: poly,
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients in the power basis `1, ζ, …, ζ^{φ(n)-1}`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Re-expresses `self` in `Q(ζ_m)`; valid when `m` is a multiple of
    /// the conductor.
    pub fn promote(&self, m: u32) -> Result<Self> {
        if m == self.conductor {
            return Ok(self.clone());
        }
        if !m.is_multiple_of(self.conductor) {
            return Err(Error::ConductorMismatch {
                left: self.conductor,
                right: m,
            });
        }
        let step = (m / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); step * self.coeffs.len()];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[k * step] = c.clone();
        }
        Ok(Self::from_poly(m, poly))
    }

    fn common(&self, other: &Self) -> Result<(Self, Self)> {
        match (self.conductor, other.conductor) {
            (a, b) if a == b => Ok((self.clone(), other.clone())),
            (1, b) => Ok((self.promote(b)?, other.clone())),
            (a, 1) => Ok((self.clone(), other.promote(a)?)),
            (a, b) => Err(Error::ConductorMismatch { left: a, right: b }),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let (x, y) = self.common(other)?;
        let coeffs = x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycScalar {
            conductor: x.conductor,
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let (x, y) = self.common(other)?;
        if x.conductor == 1 {
            return Ok(Self::from_rational(&x.coeffs[0] * &y.coeffs[0]));
        }
        let mut prod = vec![BigRational::zero(); x.coeffs.len() + y.coeffs.len() - 1];
        for (p, a) in x.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in y.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[p + q] += a * b;
                }
            }
        }
        Ok(Self::from_poly(x.conductor, prod))
    }

    /// The Galois automorphism `ζ ↦ ζ^t` (`t` coprime to the conductor).
    pub fn galois(&self, t: i64) -> Self {
        let n = self.conductor as i64;
        let mut poly = vec![BigRational::zero(); n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            let e = (k as i64 * t).rem_euclid(n) as usize;
            poly[e] += c;
        }
        Self::from_poly(self.conductor, poly)
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Multiplicative inverse by the extended Euclidean algorithm in
    /// `Q[x]` against `Φ_n`.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.conductor == 1 {
            return Some(Self::from_rational(self.coeffs[0].recip()));
        }
        let phi: Vec<BigRational> = cyclotomic_polynomial(self.conductor).into_iter().map(rat).collect();
        // Invariant: s_i · self ≡ r_i (mod Φ_n).
        let (mut r0, mut r1) = (phi, trim(self.coeffs.clone()));
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = r1[0].recip();
        let inv: Vec<BigRational> = s1.into_iter().map(|x| x * &c).collect();
        Some(Self::from_poly(self.conductor, inv))
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Division with remainder; `den` must be nonzero and trimmed.
fn poly_divrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = trim(num.to_vec());
    let dd = den.len() - 1;
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let lead = den[dd].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - dd];
    while rem.len() >= den.len() {
        let deg = rem.len() - 1;
        let c = &rem[deg] * &lead;
        for (m, d) in den.iter().enumerate() {
            rem[deg - dd + m] -= &c * d;
        }
        quot[deg - dd] = c;
        rem = trim(rem);
    }
    (trim(quot), rem)
}

/// Canonical representative of `ζ_n^k`.
pub fn zeta_power(n: u32, k: i64) -> CycScalar {
    let e = k.rem_euclid(n as i64) as usize;
    let mut poly = vec![BigRational::zero(); e + 1];
    poly[e] = BigRational::one();
    CycScalar::from_poly(n, poly)
}

/// Matrices over `Q(ζ_n)`; rational matrices use conductor 1 entries.
pub type ExactMatrix = Matrix<CycScalar>;

impl PartialEq for CycScalar {
    /// Compares values, promoting rationals to the other conductor.
    fn eq(&self, other: &Self) -> bool {
        match self.common(other) {
            Ok((x, y)) => x.coeffs == y.coeffs,
            Err(_) => self.is_rational() && other.is_rational() && self.coeffs[0] == other.coeffs[0],
        }
    }
}

impl Eq for CycScalar {}

impl Zero for CycScalar {
    fn zero() -> Self {
        Self::from_integer(0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for CycScalar {
    fn one() -> Self {
        Self::from_integer(1)
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    /// Panics on incompatible conductors.
    fn add(self, rhs: CycScalar) -> CycScalar {
        self.checked_add(&rhs).expect("cyclotomic conductors differ")
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: CycScalar) -> CycScalar {
        self.checked_add(&-rhs).expect("cyclotomic conductors differ")
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        self.checked_mul(&rhs).expect("cyclotomic conductors differ")
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        CycScalar {
            conductor: self.conductor,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl IntegralDomain for CycScalar {
    fn exact_div(&self, d: &Self) -> Self {
        self.clone() * d.inverse().expect("division by zero in Q(ζ)")
    }
}

impl Field for CycScalar {
    fn inv(&self) -> Option<Self> {
        self.inverse()
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            wrote = true;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z{}", self.conductor)?;
                    } else {
                        write!(f, "z{}^{k}", self.conductor)?;
                    }
                }
            }
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("CycScalar", 2)?;
        st.serialize_field("conductor", &self.conductor)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

/// `φ(n)`, the degree of `Q(ζ_n)`.
pub fn field_degree(n: u32) -> usize {
    euler_phi(n) as usize
}
