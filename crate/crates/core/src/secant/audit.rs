//! The dimension identity for `S³Δ₊`:
//! `(2^{n-1}+1)(2^{n-2}+1)/3 = Σ_p c_p (C(2n,n-p) − C(2n,n-p-1))`.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{binomial, IntPoly, IntegerSeries};

/// Largest rank used by the audit; the arithmetic is exact at any size.
pub const AUDIT_MAX_RANK: usize = 40;

/// Left side of the identity. Integral for `n ≥ 2`.
pub fn identity_lhs(n: usize) -> BigInt {
    let one = BigInt::from(1);
    let a = (&one << (n - 1)) + 1;
    let b = (&one << (n - 2)) + 1;
    a * b / 3
}

/// `C(2n, n-p) − C(2n, n-p-1)`, the dimension of `V_{ω_n+ω_{n-p}}` over `2^{n-1}`.
pub fn identity_coefficient(n: usize, p: usize) -> BigInt {
    let (n, p) = (n as i64, p as i64);
    binomial(2 * n, n - p) - binomial(2 * n, n - p - 1)
}

/// Right side for a given coefficient list (missing entries are zero).
pub fn identity_rhs(n: usize, c: &[i64]) -> BigInt {
    (0..=n)
        .map(|p| identity_coefficient(n, p) * BigInt::from(c.get(p).copied().unwrap_or(0)))
        .sum()
}

/// `(1+x⁹)/((1−x²)(1−x³))`.
pub fn printed_c_series() -> IntegerSeries {
    IntegerSeries::new(
        IntPoly::one().add(&IntPoly::monomial(9)),
        IntPoly::one_minus_power(2).mul(&IntPoly::one_minus_power(3)),
    )
    .expect("valid series")
}

/// `(1+x⁹)/((1−x⁴)(1−x⁶))`, i.e. `c_{2j} = a_j`, `c_{2j+1} = a_{j-4}`.
pub fn derived_c_series() -> IntegerSeries {
    IntegerSeries::new(
        IntPoly::one().add(&IntPoly::monomial(9)),
        IntPoly::one_minus_power(4).mul(&IntPoly::one_minus_power(6)),
    )
    .expect("valid series")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRow {
    pub n: usize,
    pub lhs: String,
    pub printed_rhs: String,
    pub derived_rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CAudit {
    pub n_min: usize,
    pub n_max: usize,
    /// Every nonnegative solution `c_0..c_{n_max}` of the identities on the range.
    pub solutions: Vec<Vec<i64>>,
    pub printed: Vec<i64>,
    pub derived: Vec<i64>,
    /// Ranks where the printed series fails the identity.
    pub printed_failures: Vec<usize>,
    pub derived_failures: Vec<usize>,
    pub rows: Vec<IdentityRow>,
}

impl CAudit {
    /// The solution is unique and equals the derived series.
    pub fn derived_is_unique(&self) -> bool {
        self.solutions.len() == 1
            && self.solutions[0] == self.derived
            && self.derived_failures.is_empty()
    }
}

/// Solve the identities for `n = 2..=n_max` in increasing `n`. Each new `n`
/// brings one new unknown `c_n` with coefficient 1; the equation at `n = 2`
/// leaves `c_0, c_1` free, and every nonnegative choice is followed through.
pub fn corollary_c_audit(n_max: usize) -> Result<CAudit> {
    if !(2..=AUDIT_MAX_RANK).contains(&n_max) {
        return Err(Error::RankOutOfRange {
            rank: n_max,
            min: 2,
            max: AUDIT_MAX_RANK,
        });
    }
    let lhs2 = identity_lhs(2);
    let mut solutions = Vec::new();
    let mut c0 = 0i64;
    while identity_coefficient(2, 0) * c0 <= lhs2 {
        let mut c1 = 0i64;
        loop {
            let used = identity_coefficient(2, 0) * c0 + identity_coefficient(2, 1) * c1;
            if used > lhs2 {
                break;
            }
            if let Some(sol) = extend(vec![c0, c1], n_max) {
                solutions.push(sol);
            }
            c1 += 1;
        }
        c0 += 1;
    }

    let printed = printed_c_series().coeffs(n_max + 1);
    let derived = derived_c_series().coeffs(n_max + 1);
    let mut rows = Vec::new();
    let mut printed_failures = Vec::new();
    let mut derived_failures = Vec::new();
    for n in 2..=n_max {
        let lhs = identity_lhs(n);
        let p = identity_rhs(n, &printed);
        let d = identity_rhs(n, &derived);
        if p != lhs {
            printed_failures.push(n);
        }
        if d != lhs {
            derived_failures.push(n);
        }
        rows.push(IdentityRow {
            n,
            lhs: lhs.to_string(),
            printed_rhs: p.to_string(),
            derived_rhs: d.to_string(),
        });
    }
    Ok(CAudit {
        n_min: 2,
        n_max,
        solutions,
        printed,
        derived,
        printed_failures,
        derived_failures,
        rows,
    })
}

/// Forward solve from `c_0, c_1`; `None` as soon as a coefficient is negative.
fn extend(mut c: Vec<i64>, n_max: usize) -> Option<Vec<i64>> {
    for n in 2..=n_max {
        let partial: BigInt = (0..n)
            .map(|p| identity_coefficient(n, p) * BigInt::from(c[p]))
            .sum();
        let next = identity_lhs(n) - partial;
        if next.is_negative() {
            return None;
        }
        c.push(next.to_i64()?);
    }
    Some(c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(identity_lhs(2), BigInt::from(2));
        assert_eq!(identity_lhs(3), BigInt::from(5));
        let coeffs: Vec<BigInt> = (0..=3).map(|p| identity_coefficient(3, p)).collect();
        assert_eq!(coeffs, [5, 9, 5, 1].map(BigInt::from));
        assert_eq!(identity_rhs(3, &[1, 0, 1, 1]), BigInt::from(11));
    }

    #[test]
    fn series_heads() {
        assert_eq!(
            derived_c_series().coeffs(14),
            vec![1, 0, 0, 0, 1, 0, 1, 0, 1, 1, 1, 0, 2, 1]
        );
        assert_eq!(printed_c_series().coeffs(4), vec![1, 0, 1, 1]);
    }
}
