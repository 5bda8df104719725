//! The Heisenberg group mod n and the integral Heisenberg group.
//!
//! Elements are kept in the normal form `β^j τ^k α^i`, where `τ = [α, β]`
//! is central. This matches the unitriangular matrix with `x = i`,
//! `y = j`, `z = k`, and the product law is
//! `(i1, j1, k1)(i2, j2, k2) = (i1 + i2, j1 + j2, k1 + k2 + i1·j2)`.
//! Modulus 0 denotes the integral group, with no reduction.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::FreeWord;

/// Largest modulus for which conjugacy classes are enumerated by default.
pub const DEFAULT_CLASS_CAP: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeisElement {
    modulus: u32,
    i: i64,
    j: i64,
    k: i64,
}

impl HeisElement {
    /// Builds `β^j τ^k α^i`, reducing exponents when `modulus > 0`.
    pub fn new(modulus: u32, i: i64, j: i64, k: i64) -> Self {
        let r = |x: i64| {
            if modulus == 0 {
                x
            } else {
                x.rem_euclid(modulus as i64)
            }
        };
        HeisElement {
            modulus,
            i: r(i),
            j: r(j),
            k: r(k),
        }
    }

    pub fn identity(modulus: u32) -> Self {
        Self::new(modulus, 0, 0, 0)
    }

    pub fn alpha(modulus: u32) -> Self {
        Self::new(modulus, 1, 0, 0)
    }

    pub fn beta(modulus: u32) -> Self {
        Self::new(modulus, 0, 1, 0)
    }

    pub fn tau(modulus: u32) -> Self {
        Self::new(modulus, 0, 0, 1)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Exponent of `α`.
    pub fn i(&self) -> i64 {
        self.i
    }

    /// Exponent of `β`.
    pub fn j(&self) -> i64 {
        self.j
    }

    /// Exponent of `τ`.
    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn is_identity(&self) -> bool {
        self.i == 0 && self.j == 0 && self.k == 0
    }

    pub fn is_central(&self) -> bool {
        self.i == 0 && self.j == 0
    }

    pub fn compose(&self, other: &HeisElement) -> Result<HeisElement> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(HeisElement::new(
            self.modulus,
            self.i + other.i,
            self.j + other.j,
            self.k + other.k + self.i * other.j,
        ))
    }

    pub fn inverse(&self) -> HeisElement {
        HeisElement::new(self.modulus, -self.i, -self.j, -self.k + self.i * self.j)
    }

    pub fn pow(&self, e: i64) -> HeisElement {
        let base = if e < 0 { self.inverse() } else { *self };
        let mut out = HeisElement::identity(self.modulus);
        let mut sq = base;
        let mut m = e.unsigned_abs();
        while m > 0 {
            if m & 1 == 1 {
                out = out * sq;
            }
            sq = sq * sq;
            m >>= 1;
        }
        out
    }

    /// Least `m ≥ 1` with `g^m = 1`.
    pub fn order(&self) -> Result<u64> {
        if self.is_identity() {
            return Ok(1);
        }
        if self.modulus == 0 {
            return Err(Error::InfiniteOrder);
        }
        let mut g = *self;
        let mut m = 1;
        while !g.is_identity() {
            g = g * *self;
            m += 1;
        }
        Ok(m)
    }

    /// The unitriangular matrix `[[1, i, k], [0, 1, j], [0, 0, 1]]`.
    pub fn to_matrix(&self) -> [[i64; 3]; 3] {
        [[1, self.i, self.k], [0, 1, self.j], [0, 0, 1]]
    }

    /// Position in the `(j, k, i)` lexicographic enumeration of `H_n`.
    pub fn index(&self) -> usize {
        assert!(self.modulus > 0, "the integral group has no finite enumeration");
        let n = self.modulus as usize;
        (self.j as usize * n + self.k as usize) * n + self.i as usize
    }

    pub fn from_index(n: u32, idx: usize) -> HeisElement {
        let nn = n as usize;
        let i = idx % nn;
        let k = (idx / nn) % nn;
        let j = idx / (nn * nn);
        HeisElement::new(n, i as i64, j as i64, k as i64)
    }

    /// All `n³` elements in `(j, k, i)` lexicographic order.
    pub fn all(n: u32) -> Vec<HeisElement> {
        let size = (n as usize).pow(3);
        (0..size).map(|idx| HeisElement::from_index(n, idx)).collect()
    }

    /// Reduces an integral element mod `n`.
    pub fn reduce(&self, n: u32) -> HeisElement {
        HeisElement::new(n, self.i, self.j, self.k)
    }
}

impl Mul for HeisElement {
    type Output = HeisElement;

    /// Panics on modulus mismatch.
    fn mul(self, rhs: HeisElement) -> HeisElement {
        self.compose(&rhs).expect("Heisenberg modulus mismatch")
    }
}

impl PartialOrd for HeisElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HeisElement {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.modulus, self.j, self.k, self.i).cmp(&(other.modulus, other.j, other.k, other.i))
    }
}

impl fmt::Display for HeisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b^{} t^{} a^{} @{}", self.j, self.k, self.i, self.modulus)
    }
}

impl FromStr for HeisElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `b^j t^k a^i @n`, got `{s}`"));
        let toks: Vec<&str> = s.split_whitespace().collect();
        if toks.len() != 4 {
            return Err(bad());
        }
        let exp = |tok: &str, prefix: &str| -> Result<i64> {
            tok.strip_prefix(prefix).and_then(|e| e.parse().ok()).ok_or_else(bad)
        };
        let j = exp(toks[0], "b^")?;
        let k = exp(toks[1], "t^")?;
        let i = exp(toks[2], "a^")?;
        let n: u32 = toks[3].strip_prefix('@').and_then(|e| e.parse().ok()).ok_or_else(bad)?;
        Ok(HeisElement::new(n, i, j, k))
    }
}

impl Serialize for HeisElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HeisElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Image of a rank-2 word under `a ↦ α`, `b ↦ β`.
pub fn project_word(w: &FreeWord, n: u32) -> Result<HeisElement> {
    if w.rank() != 2 {
        return Err(Error::RankMismatch {
            left: w.rank(),
            right: 2,
        });
    }
    let gens = [HeisElement::alpha(n), HeisElement::beta(n)];
    Ok(w.syllables()
        .iter()
        .fold(HeisElement::identity(n), |acc, &(g, e)| acc * gens[g].pow(e)))
}

/// `w ∈ R_Heis_n` iff its image in `H_n` is trivial.
pub fn in_kernel(w: &FreeWord, n: u32) -> bool {
    project_word(w, n).map(|h| h.is_identity()).unwrap_or(false)
}

/// Brute-force conjugacy classes of `H_n`, each sorted, ordered by least element.
pub fn conjugacy_classes(n: u32) -> Result<Vec<Vec<HeisElement>>> {
    conjugacy_classes_capped(n, DEFAULT_CLASS_CAP)
}

pub fn conjugacy_classes_capped(n: u32, cap: u32) -> Result<Vec<Vec<HeisElement>>> {
    if !(2..=cap).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as u64,
            min: 2,
            max: cap as u64,
        });
    }
    let elems = HeisElement::all(n);
    let mut seen = vec![false; elems.len()];
    let mut classes = Vec::new();
    for g in &elems {
        if seen[g.index()] {
            continue;
        }
        let class: BTreeSet<HeisElement> = elems.iter().map(|x| *x * *g * x.inverse()).collect();
        for c in &class {
            seen[c.index()] = true;
        }
        classes.push(class.into_iter().collect());
    }
    Ok(classes)
}

/// `Σ_{j<n} gcd(n, j)²`, the number of irreducible characters.
pub fn class_count_by_gcd_squares(n: u32) -> u64 {
    (0..n).map(|j| (n.gcd(&j) as u64).pow(2)).sum()
}

/// `Σ_{i,j<n} gcd(n, j, i)`, one class per `k < gcd(n, j, i)`.
pub fn class_count_by_triple_gcd(n: u32) -> u64 {
    (0..n)
        .flat_map(|i| (0..n).map(move |j| n.gcd(&j).gcd(&i) as u64))
        .sum()
}

/// `Σ_{d | n} d² φ(n/d)`.
pub fn class_count_by_totient(n: u32) -> u64 {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .map(|d| (d as u64).pow(2) * euler_phi(n / d))
        .sum()
}

pub fn euler_phi(n: u32) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::f2;

    fn mat_mul(x: [[i64; 3]; 3], y: [[i64; 3]; 3], n: i64) -> [[i64; 3]; 3] {
        let mut out = [[0; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                out[r][c] = (0..3).map(|m| x[r][m] * y[m][c]).sum::<i64>().rem_euclid(n);
            }
        }
        out
    }

    #[test]
    fn compose_matches_matrix_model() {
        for n in [3u32, 4] {
            for g in HeisElement::all(n) {
                for h in HeisElement::all(n) {
                    let lhs = (g * h).to_matrix();
                    assert_eq!(lhs, mat_mul(g.to_matrix(), h.to_matrix(), n as i64));
                }
            }
        }
    }

    #[test]
    fn compose_examples() {
        let (a, b, t) = (HeisElement::alpha(5), HeisElement::beta(5), HeisElement::tau(5));
        assert_eq!(a * b, HeisElement::new(5, 1, 1, 1));
        let g = HeisElement::new(5, 2, 3, 4);
        assert_eq!(g * HeisElement::identity(5), g);
        assert_eq!(t * a, a * t);
        assert!(a.compose(&HeisElement::alpha(4)).is_err());
    }

    #[test]
    fn presentation_relations() {
        for n in 2..=8 {
            let (a, b, t) = (HeisElement::alpha(n), HeisElement::beta(n), HeisElement::tau(n));
            assert!(a.pow(n as i64).is_identity());
            assert!(b.pow(n as i64).is_identity());
            assert!(t.pow(n as i64).is_identity());
            assert_eq!(a * b * a.inverse() * b.inverse(), t);
            for g in HeisElement::all(n) {
                assert_eq!(g * t, t * g);
                assert!((g * g.inverse()).is_identity());
            }
        }
    }

    #[test]
    fn projections() {
        assert_eq!(project_word(&f2::t(), 3).unwrap(), HeisElement::tau(3));
        let ab = f2::a() * f2::b();
        for n in 2..=8u32 {
            let img = project_word(&ab.pow(n as i64), n).unwrap();
            if n % 2 == 0 {
                assert_eq!(img, HeisElement::tau(n).pow(n as i64 / 2));
            } else {
                assert!(img.is_identity());
            }
        }
        assert!(project_word(&FreeWord::identity(3), 3).is_err());
    }

    #[test]
    fn orders() {
        let ab = |n| HeisElement::alpha(n) * HeisElement::beta(n);
        assert_eq!(ab(4).order().unwrap(), 8);
        assert_eq!(ab(3).order().unwrap(), 3);
        assert_eq!(HeisElement::identity(5).order().unwrap(), 1);
        assert_eq!(HeisElement::identity(0).order().unwrap(), 1);
        assert_eq!(HeisElement::alpha(0).order(), Err(Error::InfiniteOrder));
    }

    #[test]
    fn class_counts() {
        assert_eq!(conjugacy_classes(3).unwrap().len(), 11);
        assert_eq!(conjugacy_classes(2).unwrap().len(), 5);
        for n in 2..=8 {
            let classes = conjugacy_classes(n).unwrap();
            let count = classes.len() as u64;
            assert_eq!(count, class_count_by_gcd_squares(n));
            assert_eq!(count, class_count_by_triple_gcd(n));
            assert_eq!(count, class_count_by_totient(n));
            assert_eq!(classes.iter().map(Vec::len).sum::<usize>(), (n as usize).pow(3));
            let singletons: Vec<_> = classes.iter().filter(|c| c.len() == 1).collect();
            assert_eq!(singletons.len(), n as usize);
            assert!(singletons.iter().all(|c| c[0].is_central()));
        }
        assert!(conjugacy_classes(9).is_err());
        assert!(conjugacy_classes(1).is_err());
    }

    #[test]
    fn string_format() {
        let g = HeisElement::new(4, 1, 2, 3);
        assert_eq!(g.to_string(), "b^2 t^3 a^1 @4");
        assert_eq!("b^2 t^3 a^1 @4".parse::<HeisElement>().unwrap(), g);
        let h = HeisElement::new(0, -1, 0, -2);
        assert_eq!(h.to_string().parse::<HeisElement>().unwrap(), h);
        assert!("b^2 t^3".parse::<HeisElement>().is_err());
    }

    #[test]
    fn enumeration_is_lexicographic_in_jki() {
        let all = HeisElement::all(3);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        for (idx, g) in all.iter().enumerate() {
            assert_eq!(g.index(), idx);
        }
    }
}
