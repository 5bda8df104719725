//! Reduced words in free groups of small rank, endomorphisms given by
//! image tables, and Fox derivatives.
//!
//! Generators are indexed from 0. Rank-2 words print with the letters
//! `a`, `b`; every other rank uses `x1`, `x2`, ... so that the relator
//! words of the triangle presentation read `x1 x2 x3`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A freely reduced word, stored as syllables `(generator, exponent)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    syllables: Vec<(usize, i64)>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            syllables: Vec::new(),
        }
    }

    /// The word `x_gen^exp`.
    pub fn power_of_generator(rank: usize, gen: usize, exp: i64) -> Result<Self> {
        Self::from_syllables(rank, [(gen, exp)])
    }

    pub fn generator(rank: usize, gen: usize) -> Result<Self> {
        Self::power_of_generator(rank, gen, 1)
    }

    /// Builds a word from arbitrary syllables, reducing as it goes.
    pub fn from_syllables(rank: usize, syllables: impl IntoIterator<Item = (usize, i64)>) -> Result<Self> {
        let mut w = FreeWord::identity(rank);
        for (g, e) in syllables {
            if g >= rank {
                return Err(Error::InvalidGenerator { index: g, rank });
            }
            w.push(g, e);
        }
        Ok(w)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of letters (sum of absolute exponents).
    pub fn len(&self) -> usize {
        self.syllables.iter().map(|&(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Letters of the word as `(generator, +1 | -1)`.
    pub fn letters(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.syllables
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize))
    }

    fn push(&mut self, g: usize, e: i64) {
        if e == 0 {
            return;
        }
        match self.syllables.last_mut() {
            Some(last) if last.0 == g => {
                last.1 += e;
                if last.1 == 0 {
                    self.syllables.pop();
                }
            }
            _ => self.syllables.push((g, e)),
        }
    }

    fn check_rank(&self, other: &FreeWord) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    /// Reduced concatenation `self · other`.
    pub fn multiply(&self, other: &FreeWord) -> Result<FreeWord> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for &(g, e) in &other.syllables {
            out.push(g, e);
        }
        Ok(out)
    }

    pub fn invert(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> FreeWord {
        let base = if k < 0 { self.invert() } else { self.clone() };
        let mut out = FreeWord::identity(self.rank);
        for _ in 0..k.unsigned_abs() {
            out = &out * &base;
        }
        out
    }

    /// `by · self · by⁻¹`, written `self^by`.
    pub fn conjugate(&self, by: &FreeWord) -> Result<FreeWord> {
        self.check_rank(by)?;
        Ok(&(by * self) * &by.invert())
    }

    /// `[self, other] = self · other · self⁻¹ · other⁻¹`.
    pub fn commutator(&self, other: &FreeWord) -> Result<FreeWord> {
        self.check_rank(other)?;
        Ok(&(&(self * other) * &self.invert()) * &other.invert())
    }

    /// Substitutes `images[g]` for each generator `g`.
    pub fn apply_endomorphism(&self, images: &[FreeWord]) -> Result<FreeWord> {
        if images.len() != self.rank {
            return Err(Error::RankMismatch {
                left: images.len(),
                right: self.rank,
            });
        }
        let target = images.first().map_or(self.rank, |w| w.rank);
        if let Some(bad) = images.iter().find(|w| w.rank != target) {
            return Err(Error::RankMismatch {
                left: target,
                right: bad.rank,
            });
        }
        let mut out = FreeWord::identity(target);
        for &(g, e) in &self.syllables {
            out = &out * &images[g].pow(e);
        }
        Ok(out)
    }

    /// Fox derivative with respect to generator `gen`, as an element of
    /// the integral group ring of the free group.
    pub fn fox_derivative(&self, gen: usize) -> Result<FormalSum> {
        if gen >= self.rank {
            return Err(Error::InvalidGenerator {
                index: gen,
                rank: self.rank,
            });
        }
        let mut out = FormalSum::zero(self.rank);
        let mut prefix = FreeWord::identity(self.rank);
        for (g, sign) in self.letters() {
            if sign > 0 {
                if g == gen {
                    out.add_term(BigInt::one(), prefix.clone());
                }
                prefix.push(g, 1);
            } else {
                prefix.push(g, -1);
                if g == gen {
                    out.add_term(-BigInt::one(), prefix.clone());
                }
            }
        }
        Ok(out)
    }

    /// Parses the plain syllable format, e.g. `a^3 b^-1 a` or `x1 x3^2`;
    /// `1` is the identity.
    pub fn parse(rank: usize, s: &str) -> Result<FreeWord> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(FreeWord::identity(rank));
        }
        let mut w = FreeWord::identity(rank);
        for tok in s.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((name, exp)) => (
                    name,
                    exp.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?,
                ),
                None => (tok, 1),
            };
            let g = generator_index(rank, name).ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
            w.push(g, exp);
        }
        Ok(w)
    }
}

fn generator_name(rank: usize, g: usize) -> String {
    if rank == 2 {
        ["a", "b"][g].to_string()
    } else {
        format!("x{}", g + 1)
    }
}

fn generator_index(rank: usize, name: &str) -> Option<usize> {
    let g = if rank == 2 {
        match name {
            "a" => 0,
            "b" => 1,
            _ => return None,
        }
    } else {
        name.strip_prefix('x')?.parse::<usize>().ok()?.checked_sub(1)?
    };
    (g < rank).then_some(g)
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (idx, &(g, e)) in self.syllables.iter().enumerate() {
            if idx > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", generator_name(self.rank, g))?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Panics on rank mismatch; use [`FreeWord::multiply`] for a checked product.
impl Mul for &FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: &FreeWord) -> FreeWord {
        self.multiply(rhs).expect("free word rank mismatch")
    }
}

impl Mul for FreeWord {
    type Output = FreeWord;

    fn mul(self, rhs: FreeWord) -> FreeWord {
        &self * &rhs
    }
}

/// Finite integer combination of reduced words, kept collected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSum {
    rank: usize,
    terms: BTreeMap<FreeWord, BigInt>,
}

impl FormalSum {
    pub fn zero(rank: usize) -> Self {
        FormalSum {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_word(w: FreeWord) -> Self {
        let mut s = FormalSum::zero(w.rank());
        s.add_term(BigInt::one(), w);
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, coeff: BigInt, w: FreeWord) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &FreeWord) -> BigInt {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &FormalSum) -> FormalSum {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(c.clone(), w.clone());
        }
        out
    }

    /// `w · self`
    pub fn left_mul(&self, w: &FreeWord) -> FormalSum {
        let mut out = FormalSum::zero(self.rank);
        for (u, c) in &self.terms {
            out.add_term(c.clone(), w * u);
        }
        out
    }

    /// Sum of absolute coefficients; a cheap size measure for tests.
    pub fn weight(&self) -> BigInt {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (w, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}*({w})")?;
        }
        Ok(())
    }
}

/// Named words of the rank-2 free group `⟨a, b⟩`.
pub mod f2 {
    use super::FreeWord;

    pub fn a() -> FreeWord {
        FreeWord::generator(2, 0).unwrap()
    }

    pub fn b() -> FreeWord {
        FreeWord::generator(2, 1).unwrap()
    }

    /// `T = [a, b]`
    pub fn t() -> FreeWord {
        a().commutator(&b()).unwrap()
    }

    /// `a^i b^j`
    pub fn ab_power(i: i64, j: i64) -> FreeWord {
        a().pow(i) * b().pow(j)
    }
}
