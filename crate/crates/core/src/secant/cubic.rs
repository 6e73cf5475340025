//! `S³Δ₊`, cubics on the secant variety and the tangent-variety comparison.

use super::{spin_datum, spin_plus, S3_MAX_RANK};
use crate::error::{Error, Result};
use crate::exact::IntegerSeries;
use crate::weyl::{power_decomposition, Decomposition, PowerKind, RootDatum, Weight};

/// `S³Δ₊` of `D_n` by plethysm.
pub fn s3_halfspin(n: usize) -> Result<Decomposition> {
    let datum = spin_datum(n, 4, S3_MAX_RANK)?;
    let dec = power_decomposition(&datum, &datum.fundamental(n), 3, PowerKind::Sym)?;
    Ok(dec.with_label(format!("S3 halfspin D{n}")))
}

/// The closed form `V_{3ω_n} ⊕ a_j V_{ω_n+ω_{n-2j}} ⊕ a_{j-4} V_{ω_{n-1}+ω_{n-2j-1}}`.
pub fn s3_formula(n: usize) -> Result<Decomposition> {
    let datum = spin_datum(n, 4, usize::MAX)?;
    let mut a = IntegerSeries::cubic_a();
    let mut out = Decomposition::irreducible(&datum, &datum.fundamental(n).scale(3));
    for j in (1..).take_while(|j| 2 * j <= n) {
        out.add(spin_plus(&datum, n, n - 2 * j), a.coeff(j as i64));
    }
    for j in (4..).take_while(|j| 2 * j < n) {
        out.add(
            spin_plus(&datum, n - 1, n - 2 * j - 1),
            a.coeff(j as i64 - 4),
        );
    }
    Ok(out)
}

/// `V_{3ω_n} ⊕ ⊕_{i>1} V_{ω_n+ω_{n-2i}}`.
pub fn sigma_ring_deg3(n: usize) -> Result<Decomposition> {
    let datum = spin_datum(n, 4, usize::MAX)?;
    let mut out = Decomposition::irreducible(&datum, &datum.fundamental(n).scale(3));
    for i in (2..).take_while(|i| 2 * i <= n) {
        out.add(spin_plus(&datum, n, n - 2 * i), 1);
    }
    Ok(out.with_label(format!("C[sigma]_3 D{n}")))
}

/// `S³Δ₊ − C[σ(S₊)]₃`, checked to be a genuine module.
pub fn cubic_ideal(n: usize) -> Result<Decomposition> {
    let ideal = s3_halfspin(n)?.minus(&sigma_ring_deg3(n)?)?;
    genuine(ideal).map(|d| d.with_label(format!("I3 D{n}")))
}

/// `⊕_{j≥6} a_{j-6} V_{ω_n+ω_{n-2j}} ⊕ ⊕_{j≥4} a_{j-4} V_{ω_{n-1}+ω_{n-2j-1}}`.
pub fn cubic_ideal_formula(n: usize) -> Result<Decomposition> {
    let datum = spin_datum(n, 4, usize::MAX)?;
    let mut a = IntegerSeries::cubic_a();
    let mut out = Decomposition::new(&datum);
    for j in (6..).take_while(|j| 2 * j <= n) {
        out.add(spin_plus(&datum, n, n - 2 * j), a.coeff(j as i64 - 6));
    }
    for j in (4..).take_while(|j| 2 * j < n) {
        out.add(
            spin_plus(&datum, n - 1, n - 2 * j - 1),
            a.coeff(j as i64 - 4),
        );
    }
    Ok(out)
}

pub(crate) fn genuine(d: Decomposition) -> Result<Decomposition> {
    if let Some((w, m)) = d.components().iter().find(|(_, m)| **m < 0) {
        return Err(Error::NegativeMultiplicity {
            weight: d.datum().format_weight(w),
            mult: *m,
        });
    }
    Ok(d)
}

/// Tuples `a = (a_1, .., a_r)` with `2Σa_p ≤ Σ p a_p ≤ d`.
fn tangent_tuples(r: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(p: usize, r: usize, budget: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p > r {
            out.push(cur.clone());
            return;
        }
        let mut a = 0;
        while a * p <= budget {
            cur.push(a);
            go(p + 1, r, budget - a * p, cur, out);
            cur.pop();
            a += 1;
        }
    }
    let mut all = Vec::new();
    go(1, r, d, &mut Vec::new(), &mut all);
    all.retain(|a| {
        let total: usize = a.iter().sum();
        let weighted: usize = a.iter().enumerate().map(|(i, x)| (i + 1) * x).sum();
        2 * total <= weighted
    });
    all
}

/// `C[τ(S₊)]_d = ⊕ V_{(d-2Σa_p)ω_n + Σ a_p ω_{n-2p}}`.
pub fn tangent_ring(n: usize, d: usize) -> Result<Decomposition> {
    if n < 2 * d {
        return Err(Error::OutOfRange(format!(
            "tangent ring needs n ≥ 2d, got n={n}, d={d}"
        )));
    }
    let datum = spin_datum(n, 4, usize::MAX)?;
    let mut out = Decomposition::new(&datum);
    for a in tangent_tuples(n / 2, d) {
        let total: usize = a.iter().sum();
        let mut w = datum.fundamental(n).scale((d - 2 * total) as i64);
        for (idx, &ap) in a.iter().enumerate() {
            let k = n - 2 * (idx + 1);
            if ap > 0 && k > 0 {
                w = w.add(&datum.fundamental(k).scale(ap as i64));
            }
        }
        out.add(w, 1);
    }
    Ok(out.with_label(format!("C[tau]_{d} D{n}")))
}

/// Kernel of `C[σ(S₊)]_d → C[τ(S₊)]_d` for `d ∈ {3, 4}`.
pub fn tangent_kernel(n: usize, d: usize) -> Result<Decomposition> {
    let sigma = match d {
        3 => sigma_ring_deg3(n)?,
        4 => super::quartic::sigma_ring_deg4(n)?,
        _ => {
            return Err(Error::OutOfRange(format!(
                "tangent comparison in degree {d}"
            )))
        }
    };
    genuine(sigma.minus(&tangent_ring(n, d)?)?)
}

/// `⊕_{p>3} V_{ω_n+ω_{n-2p}}`.
pub fn tangent_kernel3_formula(datum: &RootDatum) -> Decomposition {
    let n = datum.rank();
    let mut out = Decomposition::new(datum);
    for p in (4..).take_while(|p| 2 * p <= n) {
        out.add(spin_plus(datum, n, n - 2 * p), 1);
    }
    out
}

/// Dimension of `S³` of a space of dimension `2^{n-1}`.
pub fn s3_dimension(n: usize) -> num_bigint::BigInt {
    let d = num_bigint::BigInt::from(1u64) << (n - 1);
    &d * (&d + 1) * (&d + 2) / 6
}

#[allow(dead_code)]
fn weight_list(d: &Decomposition) -> Vec<(Weight, i64)> {
    d.sorted()
}
