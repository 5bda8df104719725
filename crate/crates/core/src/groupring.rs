//! Group rings `C[H_n]` and `C[H]` over an arbitrary coefficient ring.
//!
//! The integral case (`C = BigInt`) carries the Σ-elements and the
//! entries of the Q matrix; the integral Heisenberg group (modulus 0)
//! carries the Burau matrices.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::heisenberg::HeisElement;
use crate::linalg::{Matrix, Ring};

/// Finite formal combination `Σ c_g g` with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupRingElem<C> {
    modulus: u32,
    terms: BTreeMap<HeisElement, C>,
}

impl<C: Ring> GroupRingElem<C> {
    pub fn zero(modulus: u32) -> Self {
        GroupRingElem {
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(modulus: u32) -> Self {
        Self::monomial(HeisElement::identity(modulus), C::one())
    }

    pub fn monomial(g: HeisElement, c: C) -> Self {
        let mut out = Self::zero(g.modulus());
        out.add_term(g, c);
        out
    }

    pub fn from_element(g: HeisElement) -> Self {
        Self::monomial(g, C::one())
    }

    pub fn from_terms(modulus: u32, terms: impl IntoIterator<Item = (HeisElement, C)>) -> Result<Self> {
        let mut out = Self::zero(modulus);
        for (g, c) in terms {
            if g.modulus() != modulus {
                return Err(Error::ModulusMismatch {
                    left: modulus,
                    right: g.modulus(),
                });
            }
            out.add_term(g, c);
        }
        Ok(out)
    }

    /// `Σ_{m=0}^{count-1} g^m`.
    pub fn geometric_sum(g: HeisElement, count: u64) -> Self {
        let mut out = Self::zero(g.modulus());
        let mut x = HeisElement::identity(g.modulus());
        for _ in 0..count {
            out.add_term(x, C::one());
            x = x * g;
        }
        out
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HeisElement, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, g: &HeisElement) -> C {
        self.terms.get(g).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, g: HeisElement, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(*g, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_coefficients(|c| -c.clone())
    }

    pub fn scale(&self, s: &C) -> Self {
        self.map_coefficients(|c| s.clone() * c.clone())
    }

    fn map_coefficients(&self, mut f: impl FnMut(&C) -> C) -> Self {
        let mut out = Self::zero(self.modulus);
        for (g, c) in &self.terms {
            out.add_term(*g, f(c));
        }
        out
    }

    /// Convolution product, the bilinear extension of group composition.
    pub fn ring_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.modulus);
        for (g, c) in &self.terms {
            for (h, d) in &other.terms {
                out.add_term(*g * *h, c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    /// `self · g`.
    pub fn mul_element(&self, g: &HeisElement) -> Result<Self> {
        self.ring_mul(&Self::from_element(*g))
    }

    /// `g · self`.
    pub fn element_mul(&self, g: &HeisElement) -> Result<Self> {
        Self::from_element(*g).ring_mul(self)
    }

    /// Sum of coefficients.
    pub fn augmentation(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Applies a map on group elements, extended linearly; the image
    /// elements must share `modulus`.
    pub fn map_elements(&self, modulus: u32, mut f: impl FnMut(&HeisElement) -> HeisElement) -> Result<Self> {
        Self::from_terms(modulus, self.terms.iter().map(|(g, c)| (f(g), c.clone())))
    }

    /// Reduction `Z[H] → Z[H_n]`.
    pub fn reduce(&self, n: u32) -> Self {
        let mut out = Self::zero(n);
        for (g, c) in &self.terms {
            out.add_term(g.reduce(n), c.clone());
        }
        out
    }

    /// Matrix of `x ↦ self · x` on `C[H_n]` in the `(j, k, i)` basis.
    pub fn left_mul_matrix(&self) -> Matrix<C> {
        let n = self.modulus;
        assert!(n > 0, "left multiplication matrices need a finite group");
        let size = (n as usize).pow(3);
        let mut out: Matrix<C> = Matrix::zeros(size, size);
        for h in HeisElement::all(n) {
            for (g, c) in &self.terms {
                let row = (*g * h).index();
                out[(row, h.index())] = out[(row, h.index())].clone() + c.clone();
            }
        }
        out
    }

    /// Coefficient vector in the `(j, k, i)` basis.
    pub fn to_vector(&self) -> Vec<C> {
        let n = self.modulus;
        assert!(n > 0, "coefficient vectors need a finite group");
        let mut v = vec![C::zero(); (n as usize).pow(3)];
        for (g, c) in &self.terms {
            v[g.index()] = c.clone();
        }
        v
    }
}

/// Integral group ring elements.
pub type RingElem = GroupRingElem<BigInt>;

impl<C: Ring + fmt::Display> fmt::Display for GroupRingElem<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (g, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*[{g}]")?;
        }
        Ok(())
    }
}

impl Serialize for GroupRingElem<BigInt> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            elem: &'a HeisElement,
            coeff: serde_json::Value,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (g, c) in &self.terms {
            let coeff = match c.to_i64() {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(c.to_string()),
            };
            seq.serialize_element(&Term { elem: g, coeff })?;
        }
        seq.end()
    }
}

/// `(Σ1, Σ2, Σ3*)`: the power sums of `α`, `β` and `αβ`, the last running
/// over the full order of `αβ` (`n` terms for odd `n`, `2n` for even).
pub fn sigma_elements(n: u32) -> (RingElem, RingElem, RingElem) {
    let s1 = RingElem::geometric_sum(HeisElement::alpha(n), n as u64);
    let s2 = RingElem::geometric_sum(HeisElement::beta(n), n as u64);
    (s1, s2, sigma3_star(n))
}

/// `Σ3 = 1 + αβ + … + (αβ)^{n-1}`.
pub fn sigma3(n: u32) -> RingElem {
    RingElem::geometric_sum(HeisElement::alpha(n) * HeisElement::beta(n), n as u64)
}

pub fn sigma3_star(n: u32) -> RingElem {
    let e3 = if n.is_multiple_of(2) { 2 * n } else { n };
    RingElem::geometric_sum(HeisElement::alpha(n) * HeisElement::beta(n), e3 as u64)
}

/// `Σ_g g`, the sum of all elements of `H_n`.
pub fn norm_element(n: u32) -> RingElem {
    RingElem::from_terms(n, HeisElement::all(n).into_iter().map(|g| (g, BigInt::from(1))))
        .expect("all elements share the modulus")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(n: u32, i: i64, j: i64, k: i64) -> RingElem {
        RingElem::from_element(HeisElement::new(n, i, j, k))
    }

    #[test]
    fn product_example() {
        let n = 5;
        let one = RingElem::one(n);
        let a = one.add(&el(n, 1, 0, 0)).unwrap();
        let b = one.add(&el(n, 0, 1, 0)).unwrap();
        let expected = RingElem::from_terms(
            n,
            [(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)]
                .into_iter()
                .map(|(i, j, k)| (HeisElement::new(n, i, j, k), BigInt::from(1))),
        )
        .unwrap();
        assert_eq!(a.ring_mul(&b).unwrap(), expected);
        assert_eq!(a.ring_mul(&one).unwrap(), a);
    }

    #[test]
    fn augmentations() {
        assert_eq!(sigma_elements(5).0.augmentation(), BigInt::from(5));
        assert_eq!(RingElem::zero(3).augmentation(), BigInt::from(0));
        assert_eq!(sigma3_star(4).augmentation(), BigInt::from(8));
    }

    #[test]
    fn sigma_shapes() {
        assert_eq!(sigma3_star(3).len(), 3);
        assert_eq!(sigma3_star(4).len(), 8);
        for n in 2..=8u32 {
            let tau_half = el(n, 0, 0, n as i64 / 2);
            if n % 2 == 0 {
                let factored = RingElem::one(n).add(&tau_half).unwrap().ring_mul(&sigma3(n)).unwrap();
                assert_eq!(factored, sigma3_star(n));
            } else {
                assert_eq!(sigma3(n), sigma3_star(n));
            }
        }
    }

    #[test]
    fn mismatch_is_an_error() {
        assert!(RingElem::one(3).ring_mul(&RingElem::one(4)).is_err());
    }

    #[test]
    fn left_multiplication_is_a_representation() {
        let n = 3;
        let (s1, s2, _) = sigma_elements(n);
        let prod = s1.ring_mul(&s2).unwrap();
        assert_eq!(prod.left_mul_matrix(), s1.left_mul_matrix().mul_matrix(&s2.left_mul_matrix()));
        let v = s2.to_vector();
        assert_eq!(s1.left_mul_matrix().mul_vec(&v), prod.to_vector());
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&el(3, 1, 0, 0).scale(&BigInt::from(-2))).unwrap();
        assert_eq!(json, r#"[{"elem":"b^0 t^0 a^1 @3","coeff":-2}]"#);
    }
}
