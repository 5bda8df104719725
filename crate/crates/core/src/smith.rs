//! Smith normal form over the integers.
//!
//! The elimination is generic over a checked integer type. Fixed-width
//! integers are tried first; on overflow the computation is repeated with
//! `BigInt`. Pivots are always the smallest nonzero entry available,
//! which keeps coefficient growth modest on the sparse 0/±1 matrices
//! that appear here.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub trait SnfInt: Clone + Debug + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul {}

impl<T: Clone + Debug + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul> SnfInt for T {}

/// Diagonal form `U · M · V = D` of an integer matrix. Only the left
/// transform is kept: it is what maps ambient coordinates to quotient
/// coordinates.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    rows: usize,
    diagonal: Vec<T>,
    left: Option<Matrix<T>>,
    left_inverse: Option<Matrix<T>>,
}

impl<T: SnfInt> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Nonzero diagonal entries in elimination order (not yet a divisor chain).
    pub fn diagonal(&self) -> &[T] {
        &self.diagonal
    }

    /// Invariant factors `d_1 | d_2 | …`, all positive.
    pub fn invariant_factors(&self) -> Vec<T> {
        let mut d: Vec<T> = self.diagonal.iter().map(Signed::abs).collect();
        for a in 0..d.len() {
            for b in a + 1..d.len() {
                let g = d[a].gcd(&d[b]);
                let l = d[a].lcm(&d[b]);
                d[a] = g;
                d[b] = l;
            }
        }
        d
    }

    /// Invariant factors greater than one: the torsion of `Z^rows / colspan`.
    pub fn torsion(&self) -> Vec<T> {
        self.invariant_factors().into_iter().filter(|d| !d.is_one()).collect()
    }

    pub fn left(&self) -> Option<&Matrix<T>> {
        self.left.as_ref()
    }

    pub fn left_inverse(&self) -> Option<&Matrix<T>> {
        self.left_inverse.as_ref()
    }

    /// Rank of the free part of the cokernel.
    pub fn corank(&self) -> usize {
        self.rows - self.diagonal.len()
    }
}

struct Work<T> {
    a: Vec<Vec<T>>,
    u: Option<Vec<Vec<T>>>,
    uinv: Option<Vec<Vec<T>>>,
}

fn axpy<T: SnfInt>(dst: &mut [T], src: &[T], q: &T) -> Option<()> {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d = d.checked_sub(&s.checked_mul(q)?)?;
        }
    }
    Some(())
}

impl<T: SnfInt> Work<T> {
    /// `row_r -= q · row_t`.
    fn row_sub(&mut self, r: usize, t: usize, q: &T) -> Option<()> {
        let (dst, src) = pair_mut(&mut self.a, r, t);
        axpy(dst, src, q)?;
        if let Some(u) = &mut self.u {
            let (dst, src) = pair_mut(u, r, t);
            axpy(dst, src, q)?;
        }
        if let Some(ui) = &mut self.uinv {
            // Column t += q · column r.
            for row in ui.iter_mut() {
                if !row[r].is_zero() {
                    row[t] = row[t].checked_add(&row[r].checked_mul(q)?)?;
                }
            }
        }
        Some(())
    }

    fn row_swap(&mut self, r: usize, t: usize) {
        if r == t {
            return;
        }
        self.a.swap(r, t);
        if let Some(u) = &mut self.u {
            u.swap(r, t);
        }
        if let Some(ui) = &mut self.uinv {
            for row in ui.iter_mut() {
                row.swap(r, t);
            }
        }
    }

    fn row_negate(&mut self, t: usize) {
        for x in self.a[t].iter_mut() {
            *x = -x.clone();
        }
        if let Some(u) = &mut self.u {
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
        if let Some(ui) = &mut self.uinv {
            for row in ui.iter_mut() {
                row[t] = -row[t].clone();
            }
        }
    }

    /// `col_c -= q · col_t`.
    fn col_sub(&mut self, c: usize, t: usize, q: &T) -> Option<()> {
        for row in self.a.iter_mut() {
            if !row[t].is_zero() {
                row[c] = row[c].checked_sub(&row[t].checked_mul(q)?)?;
            }
        }
        Some(())
    }

    fn col_swap(&mut self, c: usize, t: usize) {
        if c != t {
            for row in self.a.iter_mut() {
                row.swap(c, t);
            }
        }
    }
}

fn pair_mut<T>(v: &mut [Vec<T>], r: usize, t: usize) -> (&mut [T], &[T]) {
    assert_ne!(r, t);
    if r < t {
        let (lo, hi) = v.split_at_mut(t);
        (&mut lo[r], &hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(r);
        (&mut hi[0], &lo[t])
    }
}

fn identity_rows<T: SnfInt>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|r| (0..n).map(|c| if r == c { T::one() } else { T::zero() }).collect())
        .collect()
}

/// Diagonalizes `m`. Returns `None` if an intermediate value overflows `T`.
pub fn smith_form<T: SnfInt>(m: &Matrix<T>, with_transform: bool) -> Option<SmithForm<T>> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone().into_rows(),
        u: with_transform.then(|| identity_rows(rows)),
        uinv: with_transform.then(|| identity_rows(rows)),
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for r in t..rows {
            for c in t..cols {
                let x = &w.a[r][c];
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| x.abs() < w.a[br][bc].abs()) {
                    best = Some((r, c));
                    if x.is_one() || (-x.clone()).is_one() {
                        break;
                    }
                }
            }
            if best.is_some_and(|(br, bc)| w.a[br][bc].abs().is_one()) {
                break;
            }
        }
        let Some((pr, pc)) = best else { break };
        w.row_swap(pr, t);
        w.col_swap(pc, t);
        loop {
            let pivot = w.a[t][t].clone();
            for r in t + 1..rows {
                if !w.a[r][t].is_zero() {
                    let q = w.a[r][t].div_floor(&pivot);
                    w.row_sub(r, t, &q)?;
                }
            }
            for c in t + 1..cols {
                if !w.a[t][c].is_zero() {
                    let q = w.a[t][c].div_floor(&pivot);
                    w.col_sub(c, t, &q)?;
                }
            }
            // Any remainder is smaller than the pivot; promote it.
            let mut next: Option<(usize, usize)> = None;
            for r in t + 1..rows {
                if !w.a[r][t].is_zero() && next.is_none_or(|(a, b)| w.a[r][t].abs() < w.a[a][b].abs()) {
                    next = Some((r, t));
                }
            }
            for c in t + 1..cols {
                if !w.a[t][c].is_zero() && next.is_none_or(|(a, b)| w.a[t][c].abs() < w.a[a][b].abs()) {
                    next = Some((t, c));
                }
            }
            match next {
                None => break,
                Some((r, c)) => {
                    w.row_swap(r, t);
                    w.col_swap(c, t);
                }
            }
        }
        if w.a[t][t].is_negative() {
            w.row_negate(t);
        }
        diagonal.push(w.a[t][t].clone());
        t += 1;
    }
    Some(SmithForm {
        rows,
        diagonal,
        left: w.u.map(|u| Matrix::from_rows(&u)),
        left_inverse: w.uinv.map(|u| Matrix::from_rows(&u)),
    })
}

/// Smith form of a `BigInt` matrix, trying `i128` arithmetic first.
pub fn smith_form_int(m: &Matrix<BigInt>, with_transform: bool) -> SmithForm<BigInt> {
    if let Some(small) = m.iter_all(|x| x.to_i128()) {
        if let Some(sf) = smith_form::<i128>(&small, with_transform) {
            let lift = |x: &i128| BigInt::from(*x);
            return SmithForm {
                rows: sf.rows,
                diagonal: sf.diagonal.iter().map(lift).collect(),
                left: sf.left.as_ref().map(|u| u.map(lift)),
                left_inverse: sf.left_inverse.as_ref().map(|u| u.map(lift)),
            };
        }
    }
    smith_form::<BigInt>(m, with_transform).expect("BigInt arithmetic cannot overflow")
}

/// Integer rank and invariant factors, refusing matrices wider than `budget`.
pub fn rank_with_budget(m: &Matrix<BigInt>, budget: usize) -> Result<(usize, Vec<BigInt>)> {
    if m.cols() > budget {
        return Err(Error::BudgetExceeded {
            cols: m.cols(),
            budget,
        });
    }
    let sf = smith_form_int(m, false);
    Ok((sf.rank(), sf.invariant_factors()))
}

impl<S> Matrix<S> {
    /// Converts every entry, failing if any conversion fails.
    pub fn iter_all<T>(&self, mut f: impl FnMut(&S) -> Option<T>) -> Option<Matrix<T>> {
        let mut rows = Vec::with_capacity(self.rows());
        for r in 0..self.rows() {
            rows.push(self.row(r).iter().map(&mut f).collect::<Option<Vec<T>>>()?);
        }
        Some(Matrix::from_rows_owned(rows, self.cols()))
    }
}

impl<T> Matrix<T> {
    pub(crate) fn from_rows_owned(rows: Vec<Vec<T>>, cols: usize) -> Matrix<T> {
        let r = rows.len();
        let mut it = rows.into_iter().flatten();
        Matrix::from_fn(r, cols, |_, _| it.next().expect("row length matches"))
    }
}
