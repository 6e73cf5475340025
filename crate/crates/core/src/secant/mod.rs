//! Symmetric powers of half-spin modules and the low-degree equations of
//! the secant variety of the spinor variety.

pub mod audit;
pub mod cubic;
pub mod fixtures;
pub mod freudenthal;
pub mod quartic;

pub use audit::{corollary_c_audit, CAudit};
pub use cubic::{cubic_ideal, s3_halfspin, sigma_ring_deg3, tangent_kernel, tangent_ring};
pub use fixtures::TriangularTable;
pub use freudenthal::{grassmannian_m, theorem5_check, FreudenthalFamily, Theorem5Report};
pub use quartic::{
    not_induced_by_cubics, quartic_ideal, quartic_recursion_check, s4_halfspin, sigma_ring_deg4,
    QuarticTable,
};

use crate::error::{Error, Result};
use crate::weyl::{Family, RootDatum, Weight};

/// Largest rank accepted for `S³Δ₊`.
pub const S3_MAX_RANK: usize = 16;
/// Largest rank accepted for `S⁴Δ₊`.
pub const S4_MAX_RANK: usize = 20;

pub(crate) fn spin_datum(n: usize, min: usize, max: usize) -> Result<RootDatum> {
    if !(min..=max).contains(&n) {
        return Err(Error::RankOutOfRange { rank: n, min, max });
    }
    RootDatum::new(Family::D, n)
}

/// `θ_{n-i} + θ_{n-j}` in type `D_n`. This is the one place where the
/// θ-indexing of the tables is turned into weights.
pub fn theta_weight(n: usize, i: usize, j: usize) -> Weight {
    assert!(i <= n && j <= n, "θ index out of range");
    Weight::theta(n, n - i).add(&Weight::theta(n, n - j))
}

/// `2ω_{n-1} + θ_{n-i}`. For `i ≥ 1` this is the mirror of `θ_n + θ_{n-i}`.
pub fn mirror_theta_weight(n: usize, i: usize) -> Weight {
    assert!(i <= n, "θ index out of range");
    let mut w = Weight(vec![2; n]);
    w.0[n - 1] = -2;
    w.add(&Weight::theta(n, n - i))
}

pub(crate) fn mirror(w: &Weight) -> Weight {
    let mut v = w.0.clone();
    if let Some(last) = v.last_mut() {
        *last = -*last;
    }
    Weight(v)
}

/// Where a weight sits in the quartic table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaSlot {
    /// `θ_{n-i} + θ_{n-j}` with `i ≤ j`.
    E(usize, usize),
    /// `2ω_{n-1} + θ_{n-i}`, `i ≥ 1`.
    F(usize),
}

/// Inverse of [`theta_weight`] and [`mirror_theta_weight`]. Note that
/// `2ω_{n-1} + θ_n = θ_{n-1} + θ_{n-1}` is reported as `E(1, 1)`.
pub fn theta_slot(w: &Weight) -> Option<ThetaSlot> {
    let n = w.len();
    let c = w.coords();
    if n > 0 && c[n - 1] < 0 {
        return match theta_slot(&mirror(w))? {
            ThetaSlot::E(0, i) if i >= 1 => Some(ThetaSlot::F(i)),
            _ => None,
        };
    }
    if c.iter().any(|x| ![0, 2, 4].contains(x)) || c.windows(2).any(|p| p[0] < p[1]) {
        return None;
    }
    let fours = c.iter().filter(|x| **x == 4).count();
    let nonzero = c.iter().filter(|x| **x != 0).count();
    Some(ThetaSlot::E(n - nonzero, n - fours))
}

/// `ω_n + ω_k` for `0 ≤ k ≤ n-2`, with `ω_0 = 0`.
pub(crate) fn spin_plus(datum: &RootDatum, top: usize, k: usize) -> Weight {
    let base = datum.fundamental(top);
    if k == 0 {
        base
    } else {
        base.add(&datum.fundamental(k))
    }
}
