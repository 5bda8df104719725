//! Reidemeister–Schreier rewriting for `R_Heis = ker(F_2 → H_n)`.
//!
//! The transversal comes from a breadth-first search of the Cayley graph
//! of `H_n` with edge order `a, b, a⁻¹, b⁻¹`, so it is prefix-closed.
//! Every non-tree edge `(h, x)` gives a free generator
//! `γ(h, x) = t_h · x · t_{hx}⁻¹`; there are `n³ + 1` of them, ordered by
//! the `(j, k, i)` enumeration of `h` and then `x = a, b`.

use std::collections::VecDeque;
use std::sync::OnceLock;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::groupring::RingElem;
use crate::heisenberg::{project_word, HeisElement};
use crate::linalg::Matrix;
use crate::words::f2::{a, b, t};
use crate::words::FreeWord;

/// Default largest modulus for full rewriting workloads.
pub const DEFAULT_SCHREIER_CAP: u32 = 6;

/// Edge order of the breadth-first search.
const MOVES: [(usize, i64); 4] = [(0, 1), (1, 1), (0, -1), (1, -1)];

type SparseColumns = Vec<Vec<(usize, i64)>>;

#[derive(Debug)]
pub struct SchreierSystem {
    n: u32,
    transversal: Vec<FreeWord>,
    table: Vec<[usize; 4]>,
    generators: Vec<FreeWord>,
    slots: Vec<[Option<usize>; 2]>,
    conj: Vec<OnceLock<SparseColumns>>,
}

fn letter(g: usize, n: u32) -> HeisElement {
    if g == 0 {
        HeisElement::alpha(n)
    } else {
        HeisElement::beta(n)
    }
}

pub fn build_system(n: u32) -> Result<SchreierSystem> {
    build_system_capped(n, DEFAULT_SCHREIER_CAP)
}

pub fn build_system_capped(n: u32, cap: u32) -> Result<SchreierSystem> {
    if n < 2 || n > cap {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as u64,
            min: 2,
            max: cap as u64,
        });
    }
    let size = (n as usize).pow(3);
    let mut transversal: Vec<Option<FreeWord>> = vec![None; size];
    let mut table = vec![[usize::MAX; 4]; size];
    let mut tree = vec![[false; 2]; size];
    transversal[0] = Some(FreeWord::identity(2));
    let mut queue = VecDeque::from([HeisElement::identity(n)]);
    while let Some(h) = queue.pop_front() {
        let hw = transversal[h.index()].clone().expect("visited states have words");
        for (slot, &(g, e)) in MOVES.iter().enumerate() {
            let x = letter(g, n).pow(e);
            let h2 = h * x;
            table[h.index()][slot] = h2.index();
            if transversal[h2.index()].is_none() {
                let step = FreeWord::power_of_generator(2, g, e).expect("rank-2 letter");
                transversal[h2.index()] = Some(&hw * &step);
                queue.push_back(h2);
                if e > 0 {
                    tree[h.index()][g] = true;
                } else {
                    tree[h2.index()][g] = true;
                }
            }
        }
    }
    let transversal: Vec<FreeWord> = transversal.into_iter().map(|w| w.expect("H_n is generated by α, β")).collect();
    let mut generators = Vec::new();
    let mut slots = vec![[None; 2]; size];
    for h in 0..size {
        for g in 0..2 {
            if !tree[h][g] {
                slots[h][g] = Some(generators.len());
                let target = table[h][g];
                let x = FreeWord::generator(2, g).expect("rank-2 letter");
                generators.push(&(&transversal[h] * &x) * &transversal[target].invert());
            }
        }
    }
    Ok(SchreierSystem {
        n,
        transversal,
        table,
        generators,
        slots,
        conj: (0..size).map(|_| OnceLock::new()).collect(),
    })
}

impl SchreierSystem {
    pub fn n(&self) -> u32 {
        self.n
    }

    /// Number of free generators of `R_Heis`.
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[FreeWord] {
        &self.generators
    }

    /// Transversal words indexed by the `(j, k, i)` enumeration.
    pub fn transversal(&self) -> &[FreeWord] {
        &self.transversal
    }

    pub fn transversal_word(&self, h: &HeisElement) -> &FreeWord {
        &self.transversal[h.index()]
    }

    /// Successor of coset `h` under the moves `a, b, a⁻¹, b⁻¹`.
    pub fn coset_table(&self) -> &[[usize; 4]] {
        &self.table
    }

    fn walk(&self, w: &FreeWord, mut visit: impl FnMut(usize, i64)) -> Result<()> {
        if w.rank() != 2 {
            return Err(Error::RankMismatch { left: 2, right: w.rank() });
        }
        let mut h = 0usize;
        for (g, sign) in w.letters() {
            if sign > 0 {
                if let Some(m) = self.slots[h][g] {
                    visit(m, 1);
                }
                h = self.table[h][g];
            } else {
                h = self.table[h][g + 2];
                if let Some(m) = self.slots[h][g] {
                    visit(m, -1);
                }
            }
        }
        if h != 0 {
            return Err(Error::NotInSubgroup {
                image: HeisElement::from_index(self.n, h).to_string(),
            });
        }
        Ok(())
    }

    /// Abelianized coordinates of `w ∈ R_Heis` in the Schreier basis.
    pub fn rewrite(&self, w: &FreeWord) -> Result<Vec<i64>> {
        let mut v = vec![0i64; self.rank()];
        self.walk(w, |m, s| v[m] += s)?;
        Ok(v)
    }

    /// `w` as a sequence of signed Schreier generators (non-abelian).
    pub fn rewrite_sequence(&self, w: &FreeWord) -> Result<Vec<(usize, i64)>> {
        let mut seq = Vec::new();
        self.walk(w, |m, s| seq.push((m, s)))?;
        Ok(seq)
    }

    /// Rebuilds the word from a generator sequence.
    pub fn evaluate_sequence(&self, seq: &[(usize, i64)]) -> FreeWord {
        seq.iter()
            .fold(FreeWord::identity(2), |acc, &(m, s)| &acc * &self.generators[m].pow(s))
    }

    fn conj_columns(&self, h: &HeisElement) -> &SparseColumns {
        self.conj[h.index()].get_or_init(|| {
            let th = &self.transversal[h.index()];
            self.generators
                .iter()
                .map(|g| {
                    let v = self
                        .rewrite(&g.conjugate(th).expect("rank-2 words"))
                        .expect("R_Heis is normal");
                    v.into_iter().enumerate().filter(|&(_, x)| x != 0).collect()
                })
                .collect()
        })
    }

    /// Matrix of `x ↦ t_h x t_h⁻¹` on the abelianization. This is a left
    /// action: `M_{gh} = M_g M_h`.
    pub fn conjugation_matrix(&self, h: &HeisElement) -> Matrix<i64> {
        let cols = self.conj_columns(h);
        let mut m: Matrix<i64> = Matrix::zeros(self.rank(), self.rank());
        for (c, col) in cols.iter().enumerate() {
            for &(r, x) in col {
                m[(r, c)] = x;
            }
        }
        m
    }

    /// `M_h v`.
    pub fn act(&self, h: &HeisElement, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.rank()];
        for (col, &c) in self.conj_columns(h).iter().zip(v) {
            if c != 0 {
                for &(r, x) in col {
                    out[r] += c * x;
                }
            }
        }
        out
    }

    /// `Σ c_g M_g v` for a group ring element `Σ c_g g` of `Z[H_n]`.
    pub fn act_ring(&self, r: &RingElem, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.rank()];
        for (g, c) in r.terms() {
            let c: i64 = c.try_into().expect("small group ring coefficients");
            add_scaled(&mut out, &self.act(g, v), c);
        }
        out
    }

    /// Coordinates of the class `w^h` for a word `w ∈ R_Heis`.
    pub fn conjugate_class(&self, w: &FreeWord, h: &HeisElement) -> Result<Vec<i64>> {
        Ok(self.act(h, &self.rewrite(w)?))
    }

    /// Transversal words, generator words and the coset table.
    pub fn to_json(&self) -> Value {
        json!({
            "n": self.n,
            "transversal": self.transversal.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "generators": self.generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "coset_table": self.table,
        })
    }
}

pub(crate) fn add_scaled(acc: &mut [i64], v: &[i64], c: i64) {
    for (x, y) in acc.iter_mut().zip(v) {
        *x += c * y;
    }
}

fn sum(vs: &[Vec<i64>]) -> Vec<i64> {
    let mut out = vec![0i64; vs.first().map_or(0, Vec::len)];
    for v in vs {
        add_scaled(&mut out, v, 1);
    }
    out
}

fn scaled(v: &[i64], c: i64) -> Vec<i64> {
    v.iter().map(|x| c * x).collect()
}

fn elem(w: &FreeWord, n: u32) -> HeisElement {
    project_word(w, n).expect("rank-2 word")
}

/// The `n³ + 1` words of the explicit Z-basis of `R_Heis^ab`:
/// `(a^n)^{b^i T^k}`, `(b^n)^{a^i T^k}`, `[a,T]^{a^i T^k}` for `i ≤ n−3`
/// together with `[a,T]^{a^{n−2}}`, and `[b,T]^{a^i b^j T^k}` for
/// `i ≤ n−2`, `j ≤ n−3`.
pub fn explicit_basis(n: u32) -> Result<Vec<FreeWord>> {
    if n < 3 {
        return Err(Error::OutOfRange {
            what: "n",
            value: n as u64,
            min: 3,
            max: u32::MAX as u64,
        });
    }
    let n = n as i64;
    let (a, b, tt) = (a(), b(), t());
    let an = a.pow(n);
    let bn = b.pow(n);
    let at = a.commutator(&tt)?;
    let bt = b.commutator(&tt)?;
    let mut out = Vec::new();
    for k in 0..n {
        for i in 0..n {
            out.push(an.conjugate(&(&b.pow(i) * &tt.pow(k)))?);
        }
    }
    for k in 0..n {
        for i in 0..n {
            out.push(bn.conjugate(&(&a.pow(i) * &tt.pow(k)))?);
        }
    }
    for k in 0..n {
        for i in 0..n - 2 {
            out.push(at.conjugate(&(&a.pow(i) * &tt.pow(k)))?);
        }
    }
    out.push(at.conjugate(&a.pow(n - 2))?);
    for k in 0..n {
        for i in 0..n - 1 {
            for j in 0..n - 2 {
                out.push(bt.conjugate(&(&(&a.pow(i) * &b.pow(j)) * &tt.pow(k)))?);
            }
        }
    }
    Ok(out)
}

/// Square matrix whose rows are the rewrites of `words`.
pub fn coordinate_matrix(sys: &SchreierSystem, words: &[FreeWord]) -> Result<Matrix<BigInt>> {
    let rows = words
        .iter()
        .map(|w| Ok(sys.rewrite(w)?.into_iter().map(BigInt::from).collect()))
        .collect::<Result<Vec<Vec<BigInt>>>>()?;
    Ok(Matrix::from_rows(&rows))
}

/// The generator sets `A_1, …, A_4` obtained by going through the Fermat
/// subgroup with transversal `{T^k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStepReport {
    pub sizes: [usize; 4],
    pub expected_sizes: [usize; 4],
    pub total: usize,
    pub all_in_subgroup: bool,
    /// Whether the rewrites of the union form a Z-basis of the abelianization.
    pub unimodular: bool,
}

pub fn two_step_sets(n: u32) -> [Vec<FreeWord>; 4] {
    let n = n as i64;
    let (a, b, tt) = (a(), b(), t());
    let (an, bn) = (a.pow(n), b.pow(n));
    let mut sets: [Vec<FreeWord>; 4] = Default::default();
    for i in 0..n {
        for k in 0..n {
            let ti = tt.pow(k);
            sets[0].push(an.conjugate(&b.pow(i)).unwrap().conjugate(&ti).unwrap());
            sets[1].push(bn.conjugate(&a.pow(i)).unwrap().conjugate(&ti).unwrap());
        }
    }
    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let tij = tt.conjugate(&(&a.pow(i) * &b.pow(j))).unwrap();
            sets[2].push(&tt.pow(n - 1) * &tij);
            if (i, j) != (0, 0) {
                for k in 0..n - 1 {
                    sets[3].push(&(&tt.pow(k) * &tij) * &tt.pow(-(k + 1)));
                }
            }
        }
    }
    sets
}

pub fn verify_two_step(sys: &SchreierSystem) -> Result<TwoStepReport> {
    let n = sys.n() as usize;
    let sets = two_step_sets(sys.n());
    let sizes = [sets[0].len(), sets[1].len(), sets[2].len(), sets[3].len()];
    let m = n - 1;
    let expected_sizes = [n * n, n * n, m * m, m * m * m - m];
    let all: Vec<FreeWord> = sets.concat();
    let all_in_subgroup = all.iter().all(|w| elem(w, sys.n()).is_identity());
    let unimodular = all_in_subgroup && all.len() == sys.rank() && {
        let det = crate::linalg::determinant(&coordinate_matrix(sys, &all)?);
        det == BigInt::from(1) || det == BigInt::from(-1)
    };
    Ok(TwoStepReport {
        sizes,
        expected_sizes,
        total: all.len(),
        all_in_subgroup,
        unimodular,
    })
}

/// Outcome of one abelianized identity check.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub holds: bool,
}

/// Sum over the `(ab)^n` decomposition terms
/// `−Σ_{i=1}^{n−1} Σ_{j<i} [a^i b^{i−1−j}, T]^{τ^{n−1−i(i−1)/2−j}}`.
fn ab_power_commutator_part(sys: &SchreierSystem) -> Result<Vec<i64>> {
    let n = sys.n() as i64;
    let mut out = vec![0i64; sys.rank()];
    for i in 1..n {
        for j in 0..i {
            let e = n - 1 - i * (i - 1) / 2 - j;
            let c = (&a().pow(i) * &b().pow(i - 1 - j)).commutator(&t())?;
            let tau = HeisElement::tau(sys.n()).pow(e);
            add_scaled(&mut out, &sys.conjugate_class(&c, &tau)?, -1);
        }
    }
    Ok(out)
}

/// The decompositions of `T^n`, `T^{−n}`, `[a^i b^j, T]` and of `(ab)^n`
/// (odd `n`) or `(ab)^n T^{−n/2}` (even `n`) as exact identities in the
/// abelianization. For even `n` the printed coefficient `n/2 − 1` of
/// `T^{−n}` is checked alongside the value `n/2` that the nested
/// conjugation count actually produces, and the `τ^{n/2}`-symmetrization
/// is checked both with and without the `T^{−n}` term it leaves over.
pub fn decomposition_identities(sys: &SchreierSystem) -> Result<Vec<IdentityCheck>> {
    let nn = sys.n();
    let n = nn as i64;
    let (a, b, tt) = (a(), b(), t());
    let (an, bn) = (a.pow(n), b.pow(n));
    let at = a.commutator(&tt)?;
    let bt = b.commutator(&tt)?;
    let rw = |w: &FreeWord| sys.rewrite(w);
    let h = |w: &FreeWord| elem(w, nn);
    let mut checks = Vec::new();

    let mut rhs = vec![rw(&an)?, scaled(&sys.act(&h(&b), &rw(&an)?), -1)];
    for k in 0..n - 1 {
        for i in 0..n - 1 - k {
            rhs.push(scaled(&sys.act(&h(&(&tt.pow(k) * &a.pow(i))), &rw(&at)?), -1));
        }
    }
    checks.push(IdentityCheck {
        name: "T^n".into(),
        holds: rw(&tt.pow(n))? == sum(&rhs),
    });

    let bti = b.commutator(&tt.invert())?;
    let mut rhs = vec![rw(&bn)?, scaled(&sys.act(&h(&a), &rw(&bn)?), -1)];
    for k in 0..n - 1 {
        for j in 0..n - 1 - k {
            rhs.push(scaled(&sys.act(&h(&(&tt.pow(-k) * &b.pow(j))), &rw(&bti)?), -1));
        }
    }
    checks.push(IdentityCheck {
        name: "T^-n".into(),
        holds: rw(&tt.pow(-n))? == sum(&rhs),
    });

    let mut all = true;
    for i in 0..n {
        for j in 0..n {
            let lhs = rw(&(&a.pow(i) * &b.pow(j)).commutator(&tt)?)?;
            let mut rhs = vec![vec![0i64; sys.rank()]];
            for l in 0..j {
                rhs.push(sys.act(&h(&(&a.pow(i) * &b.pow(l))), &rw(&bt)?));
            }
            for l in 0..i {
                rhs.push(sys.act(&h(&a.pow(l)), &rw(&at)?));
            }
            all &= lhs == sum(&rhs);
        }
    }
    checks.push(IdentityCheck {
        name: "[a^i b^j, T]".into(),
        holds: all,
    });

    let ab = &a * &b;
    let part = ab_power_commutator_part(sys)?;
    let t_minus_n = rw(&tt.pow(-n))?;
    if n % 2 == 1 {
        let rhs = sum(&[part, scaled(&t_minus_n, (n - 1) / 2), rw(&an)?, rw(&bn)?]);
        checks.push(IdentityCheck {
            name: "(ab)^n, odd n".into(),
            holds: rw(&ab.pow(n))? == rhs,
        });
    } else {
        let x = rw(&(&ab.pow(n) * &tt.pow(-n / 2)))?;
        let half = HeisElement::tau(nn).pow(n / 2);
        let tail = [sys.act(&half, &rw(&an)?), sys.act(&half, &rw(&bn)?)];
        for (name, c) in [
            ("(ab)^n T^(-n/2), even n, coefficient n/2", n / 2),
            ("(ab)^n T^(-n/2), even n, printed coefficient n/2-1", n / 2 - 1),
        ] {
            let rhs = sum(&[part.clone(), scaled(&t_minus_n, c), tail[0].clone(), tail[1].clone()]);
            checks.push(IdentityCheck {
                name: name.into(),
                holds: x == rhs,
            });
        }
        let sym = sum(&[x.clone(), sys.act(&half, &x)]);
        let ab2n = rw(&ab.pow(2 * n))?;
        checks.push(IdentityCheck {
            name: "tau^(n/2) symmetrization = (ab)^(2n) + T^-n".into(),
            holds: sym == sum(&[ab2n.clone(), t_minus_n.clone()]),
        });
        checks.push(IdentityCheck {
            name: "tau^(n/2) symmetrization = (ab)^(2n) as printed".into(),
            holds: sym == ab2n,
        });
    }
    Ok(checks)
}
