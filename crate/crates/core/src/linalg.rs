//! Scalar traits and dense matrices over exact rings.
//!
//! Everything here is generic over the scalar: integers (`BigInt`,
//! `i64`), rationals, the cyclotomic field and small prime fields share
//! one fraction-free elimination routine.

use std::fmt::{self, Debug};
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative or non-commutative ring with unit, by value.
pub trait Ring:
    Clone + Debug + PartialEq + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone + Debug + PartialEq + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>
{
}

/// Integral domain with exact division (`a.exact_div(b)` is only called
/// when `b` divides `a`).
pub trait IntegralDomain: Ring {
    fn exact_div(&self, d: &Self) -> Self;
}

pub trait Field: IntegralDomain {
    fn inv(&self) -> Option<Self>;
}

impl IntegralDomain for BigInt {
    fn exact_div(&self, d: &Self) -> Self {
        debug_assert!((self % d).is_zero(), "inexact integer division");
        self / d
    }
}

impl IntegralDomain for i64 {
    fn exact_div(&self, d: &Self) -> Self {
        debug_assert_eq!(self % d, 0, "inexact integer division");
        self / d
    }
}

impl IntegralDomain for i128 {
    fn exact_div(&self, d: &Self) -> Self {
        debug_assert_eq!(self % d, 0, "inexact integer division");
        self / d
    }
}

impl IntegralDomain for BigRational {
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

/// The prime field `Z/P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(x: i64) -> Self {
        Fp(x.rem_euclid(P as i64) as u64)
    }

    pub fn from_bigint(x: &BigInt) -> Self {
        let p = BigInt::from(P);
        let r = x.mod_floor(&p);
        Fp(r.try_into().expect("residue fits in u64"))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut out = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                out = out * base;
            }
            base = base * base;
            e >>= 1;
        }
        out
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.0, P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u128 * rhs.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> IntegralDomain for Fp<P> {
    fn exact_div(&self, d: &Self) -> Self {
        *self * d.inv().expect("division by zero in Fp")
    }
}

impl<const P: u64> Field for Fp<P> {
    fn inv(&self) -> Option<Self> {
        (self.0 != 0).then(|| self.pow(P - 2))
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Debug> Debug for Matrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
        }
        Ok(())
    }
}

impl<S> Matrix<S> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn map<T>(&self, f: impl FnMut(&S) -> T) -> Matrix<T> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn into_rows(self) -> Vec<Vec<S>> {
        let cols = self.cols;
        let mut out = Vec::with_capacity(self.rows);
        let mut it = self.data.into_iter();
        for _ in 0..self.rows {
            out.push(it.by_ref().take(cols).collect());
        }
        out
    }
}

impl<S: Clone> Matrix<S> {
    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn column(&self, c: usize) -> Vec<S> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }
}

impl<S: Clone + Zero> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![S::zero(); rows * cols],
        }
    }

    /// Places `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix<S>) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<S: Clone + Zero + One> Matrix<S> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { S::one() } else { S::zero() })
    }
}

impl<S: Ring> Matrix<S> {
    pub fn mul_matrix(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out: Matrix<S> = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for m in 0..self.cols {
                let x = &self[(r, m)];
                if x.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let y = &other[(m, c)];
                    if !y.is_zero() {
                        out[(r, c)] = out[(r, c)].clone() + x.clone() * y.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        assert_eq!(self.cols, v.len(), "matrix/vector shape mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                    .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
            })
            .collect()
    }

    pub fn add_matrix(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(self.rows, self.cols, |r, c| self[(r, c)].clone() + other[(r, c)].clone())
    }

    pub fn scale(&self, s: &S) -> Matrix<S> {
        self.map(|x| s.clone() * x.clone())
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (r, c): (usize, usize)) -> &S {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut S {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Fraction-free (Bareiss) forward elimination. Returns the rank and the
/// determinant sign bookkeeping needed by [`determinant`].
fn bareiss<D: IntegralDomain>(m: &mut Matrix<D>) -> (usize, bool, D) {
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = D::one();
    let mut rank = 0;
    let mut negated = false;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !m[(r, c)].is_zero()) else {
            continue;
        };
        if p != rank {
            for cc in 0..cols {
                m.data.swap(p * cols + cc, rank * cols + cc);
            }
            negated = !negated;
        }
        let pivot = m[(rank, c)].clone();
        for r in rank + 1..rows {
            let lead = m[(r, c)].clone();
            for cc in c + 1..cols {
                let v = pivot.clone() * m[(r, cc)].clone() - lead.clone() * m[(rank, cc)].clone();
                m[(r, cc)] = v.exact_div(&prev);
            }
            m[(r, c)] = D::zero();
        }
        prev = pivot;
        rank += 1;
    }
    (rank, negated, prev)
}

/// Rank over the fraction field of `D`.
pub fn exact_rank<D: IntegralDomain>(m: &Matrix<D>) -> usize {
    let mut work = m.clone();
    bareiss(&mut work).0
}

/// Determinant of a square matrix, computed fraction-free.
pub fn determinant<D: IntegralDomain>(m: &Matrix<D>) -> D {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    if m.rows == 0 {
        return D::one();
    }
    let mut work = m.clone();
    let (rank, negated, last) = bareiss(&mut work);
    if rank < m.rows {
        return D::zero();
    }
    if negated {
        -last
    } else {
        last
    }
}

/// Rank of an integer matrix reduced mod the prime `P`.
pub fn rank_mod_p<const P: u64>(m: &Matrix<BigInt>) -> usize {
    exact_rank(&m.map(Fp::<P>::from_bigint))
}
