//! Genus and ramification of the Heisenberg cover of `P¹ − {0, 1, ∞}`.

use serde::Serialize;

use crate::heisenberg::HeisElement;

/// Genus of the closed curve: `n²(n−3)/2 + 1` for odd `n`, plus `n²/4`
/// for even `n`.
pub fn genus(n: u32) -> i64 {
    let n = n as i64;
    let base = n * n * (n - 3) / 2 + 1;
    if n % 2 == 0 {
        base + n * n / 4
    } else {
        base
    }
}

/// Ramification data over `0`, `1`, `∞`: the local monodromies are `α`,
/// `β` and `αβ`, so each fibre has `n³/e` points of index `e = ord`.
pub fn fibres(n: u32) -> [(u64, u64); 3] {
    let order = (n as u64).pow(3);
    let (a, b) = (HeisElement::alpha(n), HeisElement::beta(n));
    [a, b, a * b].map(|g| {
        let e = g.order().expect("finite group");
        (order / e, e)
    })
}

/// Recomputes `2g − 2 = −2n³ + Σ #fibre·(e − 1)` and compares with
/// [`genus`].
pub fn riemann_hurwitz_check(n: u32) -> bool {
    let order = (n as i64).pow(3);
    let ramification: i64 = fibres(n).iter().map(|&(pts, e)| pts as i64 * (e as i64 - 1)).sum();
    let two_g_minus_2 = -2 * order + ramification;
    two_g_minus_2 % 2 == 0 && two_g_minus_2 / 2 + 1 == genus(n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverProfile {
    pub n: u32,
    pub ramified: bool,
    pub genus: i64,
    /// Number of punctures, `3n²` or `5n²/2`.
    pub branch_class_count: u64,
    pub infinity_index: u64,
}

impl CoverProfile {
    pub fn new(n: u32) -> Self {
        let f = fibres(n);
        CoverProfile {
            n,
            ramified: n.is_multiple_of(2),
            genus: genus(n),
            branch_class_count: f.iter().map(|p| p.0).sum(),
            infinity_index: f[2].1,
        }
    }

    /// `2g + m − 1 = n³ + 1`, the rank of the open curve's group.
    pub fn euler_identity_holds(&self) -> bool {
        2 * self.genus + self.branch_class_count as i64 - 1 == (self.n as i64).pow(3) + 1
    }
}
