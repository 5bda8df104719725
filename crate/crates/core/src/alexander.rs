//! The presentation matrix `Q` of the Alexander module, its ranks over
//! `Z` and over each character block, and the homology multiplicities.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::{labels, represent, CharLabel};
use crate::cyclotomic::ExactMatrix;
use crate::error::{Error, Result};
use crate::groupring::{sigma3_star, RingElem};
use crate::heisenberg::{project_word, HeisElement};
use crate::linalg::{exact_rank, Matrix};
use crate::smith::rank_with_budget;
use crate::words::{FormalSum, FreeWord};

/// Column budget for the integral Smith form of `flatten(Q)`.
pub const DEFAULT_SNF_BUDGET: usize = 2500;

/// `Q` as a 3×4 array over `Z[H_n]`; column `q` holds the projected Fox
/// derivatives of the `q`-th relator of
/// `⟨x₁, x₂, x₃ | x₁^{e₁}, x₂^{e₂}, x₃^{e₃}, x₁x₂x₃⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    pub n: u32,
    pub e: [u32; 3],
    pub entries: [[RingElem; 4]; 3],
}

pub fn exponents(n: u32) -> [u32; 3] {
    [n, n, if n.is_multiple_of(2) { 2 * n } else { n }]
}

/// The closed form `[[Σ1,0,0,1],[0,Σ2,0,α],[0,0,Σ3*,αβ]]`.
pub fn q_matrix(n: u32) -> QMatrix {
    let (alpha, beta) = (HeisElement::alpha(n), HeisElement::beta(n));
    let z = || RingElem::zero(n);
    let s1 = RingElem::geometric_sum(alpha, n as u64);
    let s2 = RingElem::geometric_sum(beta, n as u64);
    QMatrix {
        n,
        e: exponents(n),
        entries: [
            [s1, z(), z(), RingElem::one(n)],
            [z(), s2, z(), RingElem::from_element(alpha)],
            [z(), z(), sigma3_star(n), RingElem::from_element(alpha * beta)],
        ],
    }
}

/// `ψπ` on `F_3`: `x₁ ↦ α`, `x₂ ↦ β`, `x₃ ↦ (αβ)⁻¹`.
fn project_f3(w: &FreeWord, n: u32) -> Result<HeisElement> {
    let a = FreeWord::generator(2, 0)?;
    let b = FreeWord::generator(2, 1)?;
    let c = (&a * &b).invert();
    project_word(&w.apply_endomorphism(&[a, b, c])?, n)
}

fn project_sum(s: &FormalSum, n: u32) -> Result<RingElem> {
    let mut terms = Vec::new();
    for (w, c) in s.terms() {
        terms.push((project_f3(w, n)?, c.clone()));
    }
    RingElem::from_terms(n, terms)
}

/// `Q` recomputed from Fox derivatives of the relators.
pub fn q_matrix_fox(n: u32) -> Result<QMatrix> {
    let e = exponents(n);
    let x = |g| FreeWord::generator(3, g);
    let relators = [
        x(0)?.pow(e[0] as i64),
        x(1)?.pow(e[1] as i64),
        x(2)?.pow(e[2] as i64),
        &(&x(0)? * &x(1)?) * &x(2)?,
    ];
    let mut entries: [[RingElem; 4]; 3] = std::array::from_fn(|_| std::array::from_fn(|_| RingElem::zero(n)));
    for (p, row) in entries.iter_mut().enumerate() {
        for (q, r) in relators.iter().enumerate() {
            row[q] = project_sum(&r.fox_derivative(p)?, n)?;
        }
    }
    Ok(QMatrix { n, e, entries })
}

/// The integer matrix of `Q` acting on `Z[H_n]^4 → Z[H_n]^3`, each entry
/// replaced by its left-multiplication operator.
pub fn flatten(q: &QMatrix) -> Matrix<BigInt> {
    let size = (q.n as usize).pow(3);
    let mut out: Matrix<BigInt> = Matrix::zeros(3 * size, 4 * size);
    for (p, row) in q.entries.iter().enumerate() {
        for (c, entry) in row.iter().enumerate() {
            if !entry.is_zero() {
                out.set_block(p * size, c * size, &entry.left_mul_matrix());
            }
        }
    }
    out
}

/// Rank and invariant factors over `Z`, refusing matrices wider than
/// `budget` columns.
pub fn rank_z(m: &Matrix<BigInt>, budget: usize) -> Result<(usize, Vec<BigInt>)> {
    rank_with_budget(m, budget)
}

/// `ρ_χ(Q)`, a `3d × 4d` matrix over `Q(ζ_n)`.
pub fn block_matrix(q: &QMatrix, label: &CharLabel) -> ExactMatrix {
    let d = label.degree() as usize;
    let mut out: ExactMatrix = Matrix::zeros(3 * d, 4 * d);
    for (p, row) in q.entries.iter().enumerate() {
        for (c, entry) in row.iter().enumerate() {
            if !entry.is_zero() {
                out.set_block(p * d, c * d, &represent(label, entry));
            }
        }
    }
    out
}

pub fn block_rank(q: &QMatrix, label: &CharLabel) -> usize {
    exact_rank(&block_matrix(q, label))
}

/// The bracket sum `z_j(i, s)`; congruences modulo 1 always hold. Any
/// integers are accepted, including non-labels.
pub fn z_function(n: u32, i: i64, j: i64, s: i64) -> i64 {
    let n = n as i64;
    let d = num_integer::Integer::gcd(&n, &j);
    let mut z = i64::from(i == 0 || s == 0) + i64::from(i == 0 && s == 0);
    if n % 2 == 1 {
        z += i64::from((i + s).rem_euclid(d) == 0);
    } else if j.rem_euclid(2) == 0 {
        let j_prime = if (n / d) % 2 == 0 { -j / 2 } else { 0 };
        z += i64::from((i + s - j_prime).rem_euclid(d) == 0);
    }
    z
}

fn z_of(l: &CharLabel) -> i64 {
    z_function(l.n, l.i as i64, l.j as i64, l.s as i64)
}

/// `c_{ijs}`: `d + z` off the trivial label, `3` at it.
pub fn c_closed(l: &CharLabel) -> i64 {
    if l.is_trivial() {
        3
    } else {
        l.degree() as i64 + z_of(l)
    }
}

/// `a_{ijs} = 3d − c_{ijs}`.
pub fn a_closed(l: &CharLabel) -> i64 {
    3 * l.degree() as i64 - c_closed(l)
}

/// `h_{ijs} = d − z` off the trivial label, `0` at it.
pub fn h_closed(l: &CharLabel) -> i64 {
    if l.is_trivial() {
        0
    } else {
        l.degree() as i64 - z_of(l)
    }
}

/// One row of the multiplicity table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HRow {
    pub i: u32,
    pub j: u32,
    pub s: u32,
    pub degree: u32,
    pub block_rank: usize,
    pub h: i64,
}

/// Multiplicities of each `χ` in `H_1(X, F)`, computed from the closed
/// form and from the block ranks through the Crowell sequence
/// (`h = 3d − rank − d + [χ trivial]`); the two must agree.
pub fn homology_multiplicities(n: u32, parallel: bool) -> Result<Vec<HRow>> {
    let q = q_matrix(n);
    let ls = labels(n);
    let ranks: Vec<usize> = if parallel {
        ls.par_iter().map(|l| block_rank(&q, l)).collect()
    } else {
        ls.iter().map(|l| block_rank(&q, l)).collect()
    };
    let mut out = Vec::with_capacity(ls.len());
    for (l, rank) in ls.iter().zip(ranks) {
        let d = l.degree() as i64;
        let oracle = 3 * d - rank as i64 - d + i64::from(l.is_trivial());
        let closed = h_closed(l);
        if oracle != closed {
            return Err(Error::Verification(format!(
                "n = {n}, {l}: closed form gives {closed}, block rank {rank} gives {oracle}"
            )));
        }
        out.push(HRow {
            i: l.i,
            j: l.j,
            s: l.s,
            degree: l.degree(),
            block_rank: rank,
            h: closed,
        });
    }
    Ok(out)
}

/// `Σ h·degree`, the first Betti number.
pub fn betti_from_table(rows: &[HRow]) -> i64 {
    rows.iter().map(|r| r.h * r.degree as i64).sum()
}

/// `rank_Z Q` in closed form.
pub fn rank_q_closed(n: u32) -> usize {
    let n = n as usize;
    if n.is_multiple_of(2) {
        n.pow(3) + 5 * n * n / 2 - 1
    } else {
        n.pow(3) + 3 * n * n - 1
    }
}

/// `rank_Z A_ψ` from the closed form.
pub fn alexander_rank_closed(n: u32) -> usize {
    let n = n as usize;
    if n.is_multiple_of(2) {
        2 * n.pow(3) - 5 * n * n / 2 + 1
    } else {
        2 * n.pow(3) - 3 * n * n + 1
    }
}

/// `rank_Z Q` as `Σ degree·block_rank`, with no Smith form.
pub fn rank_q_by_blocks(n: u32, parallel: bool) -> usize {
    let q = q_matrix(n);
    let ls = labels(n);
    let f = |l: &CharLabel| l.degree() as usize * block_rank(&q, l);
    if parallel {
        ls.par_iter().map(f).sum()
    } else {
        ls.iter().map(f).sum()
    }
}

/// `3n³ − rank_Z flatten(Q)`.
pub fn alexander_rank(n: u32, budget: usize) -> Result<usize> {
    let (rank, _) = rank_z(&flatten(&q_matrix(n)), budget)?;
    Ok(3 * (n as usize).pow(3) - rank)
}

/// The two summands of `im Q`: the diagonal part `(Σ1 r1, Σ2 r2, Σ3* r3)`
/// and the column `(r4, α r4, αβ r4)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageSummands {
    pub n: u32,
    pub first_rank: usize,
    pub second_rank: usize,
    pub sum_rank: usize,
    pub intersection_rank: usize,
    /// `(N, N, N)` with `N` the norm element lies in both summands.
    pub norm_in_both: bool,
}

fn with_column(m: &Matrix<BigInt>, v: &[BigInt]) -> Matrix<BigInt> {
    Matrix::from_fn(m.rows(), m.cols() + 1, |r, c| if c < m.cols() { m[(r, c)].clone() } else { v[r].clone() })
}

/// Ranks of both summands and of their intersection. Since `(N, N, N)` is
/// primitive, an intersection of rank one containing it is exactly `Z·(N, N, N)`.
pub fn image_summands(n: u32, budget: usize) -> Result<ImageSummands> {
    let q = q_matrix(n);
    let size = (n as usize).pow(3);
    let full = flatten(&q);
    let first = Matrix::from_fn(3 * size, 3 * size, |r, c| full[(r, c)].clone());
    let second = Matrix::from_fn(3 * size, size, |r, c| full[(r, 3 * size + c)].clone());
    let rank = |m: &Matrix<BigInt>| rank_z(m, budget).map(|(r, _)| r);
    let (first_rank, second_rank, sum_rank) = (rank(&first)?, rank(&second)?, rank(&full)?);
    let norm = vec![BigInt::from(1); 3 * size];
    let norm_in_both = rank(&with_column(&first, &norm))? == first_rank
        && rank(&with_column(&second, &norm))? == second_rank;
    Ok(ImageSummands {
        n,
        first_rank,
        second_rank,
        sum_rank,
        intersection_rank: first_rank + second_rank - sum_rank,
        norm_in_both,
    })
}
