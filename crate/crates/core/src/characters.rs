//! Irreducible characters of `H_n` and their monomial representations.
//!
//! `χ_{ijs}` is induced from the linear character
//! `β^m τ^λ α^μ ↦ ζ^{μi + λj + ms}` of `G_{ij} = ⟨α, τ⟩·⟨β^{n/d}⟩`,
//! `d = gcd(n, j)`, with coset representatives `β^ν`, `0 ≤ ν < n/d`.
//! `ζ` is the class of `x` in `Q[x]/Φ_n`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::cyclotomic::{zeta_power, CycScalar, ExactMatrix};
use crate::groupring::{sigma3_star, RingElem};
use crate::heisenberg::HeisElement;
use crate::linalg::{exact_rank, Matrix};

/// `gcd(n, j)` with `gcd(n, 0) = n`.
pub fn d_of(n: u32, j: u32) -> u32 {
    n.gcd(&j)
}

/// Label `(i, j, s)` of `χ_{ijs}` for the modulus `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CharLabel {
    #[serde(skip)]
    pub n: u32,
    pub i: u32,
    pub j: u32,
    pub s: u32,
}

impl CharLabel {
    /// Validating constructor: `0 ≤ j < n`, `0 ≤ i, s < gcd(n, j)`.
    pub fn new(n: u32, i: u32, j: u32, s: u32) -> crate::Result<Self> {
        let d = d_of(n, j);
        if j >= n || i >= d || s >= d {
            return Err(crate::Error::Domain(format!("({i},{j},{s}) is not a character label for n = {n}")));
        }
        Ok(CharLabel { n, i, j, s })
    }

    pub fn d(&self) -> u32 {
        d_of(self.n, self.j)
    }

    pub fn degree(&self) -> u32 {
        self.n / self.d()
    }

    pub fn is_trivial(&self) -> bool {
        self.i == 0 && self.j == 0 && self.s == 0
    }

    /// Label of the character `ζ ↦ ζ^t` applied to `χ`, for `t` coprime to `n`.
    pub fn galois(&self, t: i64) -> CharLabel {
        let d = self.d() as i64;
        CharLabel {
            n: self.n,
            i: (self.i as i64 * t).rem_euclid(d) as u32,
            j: (self.j as i64 * t).rem_euclid(self.n as i64) as u32,
            s: (self.s as i64 * t).rem_euclid(d) as u32,
        }
    }
}

impl fmt::Display for CharLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi_({},{},{})", self.i, self.j, self.s)
    }
}

/// All labels, ordered by `j`, then `i`, then `s`.
pub fn labels(n: u32) -> Vec<CharLabel> {
    let mut out = Vec::new();
    for j in 0..n {
        let d = d_of(n, j);
        for i in 0..d {
            for s in 0..d {
                out.push(CharLabel { n, i, j, s });
            }
        }
    }
    out
}

/// `Σ_j gcd(n, j)²`.
pub fn label_count(n: u32) -> u64 {
    (0..n).map(|j| (d_of(n, j) as u64).pow(2)).sum()
}

/// Closed-form value `χ_{ijs}(β^m τ^λ α^μ)`.
pub fn character_value(label: &CharLabel, g: &HeisElement) -> CycScalar {
    let n = label.n;
    assert_eq!(g.modulus(), n, "element and label moduli differ");
    let e = label.degree() as i64;
    let (mu, m, lambda) = (g.i(), g.j(), g.k());
    if m % e != 0 || mu % e != 0 {
        return CycScalar::zero();
    }
    let exp = mu * label.i as i64 + m * label.s as i64 + lambda * label.j as i64;
    zeta_power(n, exp) * CycScalar::from_integer(e)
}

/// A class function as values over `HeisElement::all(n)`.
pub type ClassFunction = Vec<CycScalar>;

pub fn character(label: &CharLabel) -> ClassFunction {
    HeisElement::all(label.n).iter().map(|g| character_value(label, g)).collect()
}

/// `(1/n³) Σ_g χ1(g)·conj(χ2(g))`.
pub fn inner_product(n: u32, chi1: &[CycScalar], chi2: &[CycScalar]) -> CycScalar {
    let order = (n as i64).pow(3);
    assert!(chi1.len() == order as usize && chi2.len() == order as usize, "class functions have the wrong length");
    let sum = chi1
        .iter()
        .zip(chi2)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(CycScalar::zero(), |acc, (x, y)| acc + x.clone() * y.conj());
    sum * CycScalar::from_rational(BigRational::new(BigInt::from(1), BigInt::from(order)))
}

/// `ρ_χ(g)`: the monomial matrix with entry `(ν', ν)` given by
/// `g β^ν = β^{ν'} h`, `h ∈ G_{ij}`.
pub fn irrep_matrix(label: &CharLabel, g: &HeisElement) -> ExactMatrix {
    let n = label.n as i64;
    let e = label.degree() as i64;
    let (mu, m, lambda) = (g.i(), g.j(), g.k());
    let mut out: ExactMatrix = Matrix::zeros(e as usize, e as usize);
    for nu in 0..e {
        let total = m + nu;
        let target = total % e;
        let q = total / e;
        let exp = mu * label.i as i64 + (lambda + mu * nu) * label.j as i64 + (e * q % n) * label.s as i64;
        out[(target as usize, nu as usize)] = zeta_power(label.n, exp);
    }
    out
}

/// `ρ_χ(g)` for every `g`, indexed by `HeisElement::index`.
pub fn irrep_matrices(label: &CharLabel) -> Vec<ExactMatrix> {
    HeisElement::all(label.n).iter().map(|g| irrep_matrix(label, g)).collect()
}

/// Linear extension of `ρ_χ` to `Z[H_n]`.
pub fn represent(label: &CharLabel, r: &RingElem) -> ExactMatrix {
    let e = label.degree() as usize;
    let mut out: ExactMatrix = Matrix::zeros(e, e);
    for (g, c) in r.terms() {
        let c = CycScalar::from_integer(c.to_i64().expect("coefficient fits in i64"));
        out = out.add_matrix(&irrep_matrix(label, g).scale(&c));
    }
    out
}

/// Which of the three Σ-modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sigma {
    /// `Σ1 = 1 + α + … + α^{n-1}`
    One,
    /// `Σ2 = 1 + β + … + β^{n-1}`
    Two,
    /// `Σ3*`, the sum over the full cyclic group `⟨αβ⟩`.
    ThreeStar,
}

impl Sigma {
    pub const ALL: [Sigma; 3] = [Sigma::One, Sigma::Two, Sigma::ThreeStar];

    pub fn generator(self, n: u32) -> HeisElement {
        match self {
            Sigma::One => HeisElement::alpha(n),
            Sigma::Two => HeisElement::beta(n),
            Sigma::ThreeStar => HeisElement::alpha(n) * HeisElement::beta(n),
        }
    }

    pub fn element(self, n: u32) -> RingElem {
        match self {
            Sigma::ThreeStar => sigma3_star(n),
            _ => RingElem::geometric_sum(self.generator(n), n as u64),
        }
    }
}

/// Whether `χ` occurs in `Σ·F[H_n]` according to the displayed
/// decompositions. The third case uses `i + s ≡ j′ (mod d)`, with
/// `j′ = 0` for odd `n`, and for even `n` requires `j` even, with
/// `j′ = 0` if `n/d` is odd and `j′ = −j/2` if `n/d` is even.
pub fn sigma_contains(which: Sigma, label: &CharLabel) -> bool {
    let (n, d) = (label.n as i64, label.d() as i64);
    let (i, j, s) = (label.i as i64, label.j as i64, label.s as i64);
    match which {
        Sigma::One => i == 0,
        Sigma::Two => s == 0,
        Sigma::ThreeStar => {
            if n % 2 == 1 {
                (i + s).rem_euclid(d) == 0
            } else if j % 2 == 1 {
                false
            } else {
                let j_prime = if (n / d) % 2 == 0 { -j / 2 } else { 0 };
                (i + s - j_prime).rem_euclid(d) == 0
            }
        }
    }
}

/// The label multiset of `Σ·F[H_n]` from the displayed decompositions.
pub fn sigma_module_decomposition(n: u32, which: Sigma) -> Vec<CharLabel> {
    labels(n).into_iter().filter(|l| sigma_contains(which, l)).collect()
}

/// Multiplicity of `χ` in `Σ·F[H_n]` as the rank of `ρ_χ(Σ)`.
pub fn sigma_multiplicity_by_rank(which: Sigma, label: &CharLabel) -> usize {
    exact_rank(&represent(label, &which.element(label.n)))
}

/// Character of `Ind_{⟨x⟩}^{H_n} 1`, through the class partition:
/// the value at `g` is `|C(g)|·|cl(g) ∩ ⟨x⟩| / |⟨x⟩|`.
pub fn permutation_character(x: &HeisElement) -> ClassFunction {
    let n = x.modulus();
    let order = (n as usize).pow(3);
    let sub: Vec<bool> = {
        let mut mark = vec![false; order];
        let mut y = HeisElement::identity(n);
        loop {
            mark[y.index()] = true;
            y = y * *x;
            if y.is_identity() {
                break;
            }
        }
        mark
    };
    let sub_order = sub.iter().filter(|&&b| b).count();
    let mut values = vec![CycScalar::zero(); order];
    for class in class_partition(n) {
        let hits = class.iter().filter(|g| sub[g.index()]).count();
        let centralizer = order / class.len();
        let v = BigRational::new(BigInt::from(centralizer * hits), BigInt::from(sub_order));
        for g in &class {
            values[g.index()] = CycScalar::from_rational(v.clone());
        }
    }
    values
}

/// Conjugacy classes via the normal form: `β^j τ^k α^i` is conjugate to
/// `β^j τ^{k'} α^i` iff `k ≡ k' (mod gcd(n, i, j))`.
fn class_partition(n: u32) -> Vec<Vec<HeisElement>> {
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let g = n.gcd(&i).gcd(&j);
            for k0 in 0..g {
                out.push(
                    (0..n / g)
                        .map(|t| HeisElement::new(n, i as i64, j as i64, (k0 + t * g) as i64))
                        .collect(),
                );
            }
        }
    }
    out
}

/// Class representatives `β^j τ^k α^i` with `k < gcd(n, i, j)`, in
/// `(j, i, k)` order.
pub fn class_representatives(n: u32) -> Vec<HeisElement> {
    class_partition(n).into_iter().map(|c| c[0]).collect()
}

/// `F[H_n] = ⊕ (n/d_j) χ_{ijs}`: each label paired with its degree.
pub fn regular_rep_decomposition(n: u32) -> Vec<(CharLabel, u32)> {
    labels(n).into_iter().map(|l| (l, l.degree())).collect()
}

/// Character table on class representatives.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub n: u32,
    pub labels: Vec<CharLabel>,
    pub degrees: Vec<u32>,
    pub classes: Vec<HeisElement>,
    pub values: Vec<Vec<CycScalar>>,
}

pub fn character_table(n: u32) -> CharacterTable {
    let ls = labels(n);
    let classes = class_representatives(n);
    let values = ls
        .iter()
        .map(|l| classes.iter().map(|g| character_value(l, g)).collect())
        .collect();
    CharacterTable {
        n,
        degrees: ls.iter().map(CharLabel::degree).collect(),
        labels: ls,
        classes,
        values,
    }
}

impl fmt::Display for CharacterTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = std::iter::once("label".to_string())
            .chain(std::iter::once("deg".to_string()))
            .chain(self.classes.iter().map(|g| format!("({},{},{})", g.i(), g.j(), g.k())))
            .collect();
        let mut rows = vec![head];
        for (l, vals) in self.labels.iter().zip(&self.values) {
            let mut row = vec![format!("({},{},{})", l.i, l.j, l.s), l.degree().to_string()];
            row.extend(vals.iter().map(ToString::to_string));
            rows.push(row);
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
            .collect();
        writeln!(f, "H_{} characters; columns are classes b^j t^k a^i as (i,j,k), z{} = exp(2 pi i/{})", self.n, self.n, self.n)?;
        for row in rows {
            let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
            writeln!(f, "{}", cells.join("  ").trim_end())?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn label_examples() {
        assert_eq!(labels(3).len(), 11);
        assert_eq!(labels(2).len(), 5);
        let l = CharLabel::new(3, 1, 0, 1).unwrap();
        assert_eq!(l.degree(), 1);
        assert_eq!(CharLabel::new(3, 0, 1, 0).unwrap().degree(), 3);
        assert!(CharLabel::new(3, 1, 1, 0).is_err());
    }

    #[test]
    fn trivial_and_central_values() {
        let n = 3;
        let triv = CharLabel::new(n, 0, 0, 0).unwrap();
        assert!(character(&triv).iter().all(One::is_one));
        let l = CharLabel::new(n, 0, 1, 0).unwrap();
        assert_eq!(character_value(&l, &HeisElement::identity(n)), CycScalar::from_integer(3));
        let tau = HeisElement::tau(n);
        assert_eq!(character_value(&l, &tau), zeta_power(3, 1) * CycScalar::from_integer(3));
        let rho = irrep_matrix(&l, &tau);
        assert_eq!(rho, Matrix::identity(3).scale(&zeta_power(3, 1)));
    }

    #[test]
    fn traces_and_homomorphism_n4() {
        let n = 4;
        let all = HeisElement::all(n);
        for l in labels(n) {
            let mats = irrep_matrices(&l);
            for g in &all {
                assert_eq!(mats[g.index()].trace(), character_value(&l, g), "{l} at {g}");
            }
            for (g, h) in [(all[5], all[17]), (all[63], all[22]), (all[9], all[40])] {
                assert_eq!(mats[g.index()].mul_matrix(&mats[h.index()]), mats[(g * h).index()]);
            }
        }
    }

    #[test]
    fn orthonormal_n3() {
        let n = 3;
        let chars: Vec<_> = labels(n).iter().map(character).collect();
        for (a, x) in chars.iter().enumerate() {
            for (b, y) in chars.iter().enumerate() {
                let expected = CycScalar::from_integer(i64::from(a == b));
                assert_eq!(inner_product(n, x, y), expected);
            }
        }
    }

    #[test]
    fn galois_permutes_labels() {
        let l = CharLabel::new(3, 1, 0, 1).unwrap();
        assert_eq!(l.galois(2), CharLabel::new(3, 2, 0, 2).unwrap());
        let galois_values: Vec<_> = character(&l).iter().map(|v| v.galois(2)).collect();
        assert_eq!(galois_values, character(&l.galois(2)));
    }

    #[test]
    fn table_shape() {
        let t = character_table(3);
        assert_eq!(t.classes.len(), 11);
        assert!(t.to_string().contains("(0,1,0)"));
    }
}
