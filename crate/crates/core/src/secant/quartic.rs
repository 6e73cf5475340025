//! `S⁴Δ₊` in θ-coordinates, its recursions, and quartics on the secant variety.

use std::collections::BTreeMap;

use serde::Serialize;

use super::cubic::{cubic_ideal, genuine};
use super::{mirror_theta_weight, spin_datum, theta_slot, theta_weight, ThetaSlot, S4_MAX_RANK};
use crate::error::{Error, Result};
use crate::exact::{binomial, IntegerSeries};
use crate::weyl::{power_decomposition, tensor_minuscule, Decomposition, PowerKind, Weight};

/// Multiplicities `e_{i,j}` of `V_{θ_{n-i}+θ_{n-j}}` and `f_i` of
/// `V_{2ω_{n-1}+θ_{n-i}}`. Only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuarticTable {
    pub rank: usize,
    pub e: BTreeMap<(usize, usize), u64>,
    pub f: BTreeMap<usize, u64>,
}

impl QuarticTable {
    pub fn empty(rank: usize) -> Self {
        QuarticTable {
            rank,
            e: BTreeMap::new(),
            f: BTreeMap::new(),
        }
    }

    /// Reindex a decomposition whose components all have θ-form.
    pub fn from_decomposition(dec: &Decomposition) -> Result<Self> {
        let n = dec.datum().rank();
        let mut t = QuarticTable::empty(n);
        for (w, &m) in dec.components() {
            if m < 0 {
                return Err(Error::NegativeMultiplicity {
                    weight: dec.datum().format_weight(w),
                    mult: m,
                });
            }
            if m == 0 {
                continue;
            }
            match theta_slot(w) {
                Some(ThetaSlot::E(i, j)) => *t.e.entry((i, j)).or_default() += m as u64,
                Some(ThetaSlot::F(i)) => *t.f.entry(i).or_default() += m as u64,
                None => {
                    return Err(Error::InvalidArgument(format!(
                        "{} is not of the form θ+θ",
                        dec.datum().format_weight(w)
                    )))
                }
            }
        }
        t.check_invariants()?;
        Ok(t)
    }

    pub fn e(&self, i: usize, j: usize) -> u64 {
        let key = if i <= j { (i, j) } else { (j, i) };
        self.e.get(&key).copied().unwrap_or(0)
    }

    pub fn f(&self, i: usize) -> u64 {
        self.f.get(&i).copied().unwrap_or(0)
    }

    /// `e'_{0,j} = e_{0,j} + f_j`.
    pub fn e_prime(&self, j: usize) -> u64 {
        self.e(0, j) + self.f(j)
    }

    pub fn set_e(&mut self, i: usize, j: usize, v: u64) {
        let key = if i <= j { (i, j) } else { (j, i) };
        if v == 0 {
            self.e.remove(&key);
        } else {
            self.e.insert(key, v);
        }
    }

    /// Parity vanishing and index bounds.
    pub fn check_invariants(&self) -> Result<()> {
        for &(i, j) in self.e.keys() {
            if i > j || j > self.rank || (i + j) % 2 == 1 {
                return Err(Error::InvalidArgument(format!(
                    "e[{i},{j}] breaks the table invariants"
                )));
            }
        }
        for &i in self.f.keys() {
            if i == 0 || i > self.rank || i % 2 == 1 {
                return Err(Error::InvalidArgument(format!(
                    "f[{i}] breaks the table invariants"
                )));
            }
        }
        Ok(())
    }

    /// Back to a decomposition of `D_n`.
    pub fn to_decomposition(&self) -> Result<Decomposition> {
        let datum = spin_datum(self.rank, 4, usize::MAX)?;
        let mut out = Decomposition::new(&datum);
        for (&(i, j), &m) in &self.e {
            out.add(theta_weight(self.rank, i, j), m as i64);
        }
        for (&i, &m) in &self.f {
            out.add(mirror_theta_weight(self.rank, i), m as i64);
        }
        Ok(out)
    }
}

/// `S⁴Δ₊` of `D_n` as a quartic table.
pub fn s4_halfspin(n: usize) -> Result<QuarticTable> {
    QuarticTable::from_decomposition(&s4_decomposition(n)?)
}

pub fn s4_decomposition(n: usize) -> Result<Decomposition> {
    let datum = spin_datum(n, 4, S4_MAX_RANK)?;
    let dec = power_decomposition(&datum, &datum.fundamental(n), 4, PowerKind::Sym)?;
    Ok(dec.with_label(format!("S4 halfspin D{n}")))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RecursionFamily {
    Diagonal,
    Row,
    Interior,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecursionViolation {
    pub family: RecursionFamily,
    pub i: usize,
    pub j: usize,
    pub lhs: i64,
    pub rhs: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RecursionReport {
    pub checked: usize,
    pub violations: Vec<RecursionViolation>,
}

impl RecursionReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, family: RecursionFamily, i: usize, j: usize, lhs: i64, rhs: i64) {
        self.checked += 1;
        if lhs != rhs {
            self.violations.push(RecursionViolation {
                family,
                i,
                j,
                lhs,
                rhs,
            });
        }
    }
}

/// Check the three recursion families on every relation whose entries all
/// have indices `≤ n`.
pub fn quartic_recursion_check(t: &QuarticTable) -> RecursionReport {
    let n = t.rank;
    let e = |i: usize, j: usize| t.e(i, j) as i64;
    let mut report = RecursionReport::default();

    for i in 0..n {
        let lhs = if i > 0 { e(i - 1, i - 1) } else { 0 } + e(i, i) + e(i + 1, i + 1);
        let rhs = (i / 4) as i64 + i64::from(i == 0) + i64::from(i % 2 == 1);
        report.record(RecursionFamily::Diagonal, i, i, lhs, rhs);
    }

    // the relation is stated for i ≥ 1; at i = 0 the right side would be 0
    for i in (1..).take_while(|i| 2 * i < n) {
        let lhs = t.e_prime(2 * i) as i64 + e(1, 2 * i - 1) + e(1, 2 * i + 1);
        let rhs = binomial((i / 2 + 1) as i64, 2)
            .try_into()
            .expect("small binomial");
        report.record(RecursionFamily::Row, 0, 2 * i, lhs, rhs);
    }

    let mut a = IntegerSeries::cubic_a();
    let mut b = IntegerSeries::cubic_b();
    for j in 2..n {
        for i in 1..j {
            if (i + j) % 2 == 0 {
                continue;
            }
            let first = if i == 1 {
                t.e_prime(j) as i64
            } else {
                e(i - 1, j)
            };
            let lhs = first + e(i, j - 1) + e(i + 1, j) + e(i, j + 1);
            let rhs: i64 = (0..=j / 2)
                .filter(|p| i <= 2 * p && 2 * p <= j)
                .map(|p| a.coeff(p as i64))
                .sum::<i64>()
                + (0..=j / 2)
                    .filter(|p| i <= 2 * p + 1 && 2 * p < j)
                    .map(|p| b.coeff(p as i64))
                    .sum::<i64>();
            report.record(RecursionFamily::Interior, i, j, lhs, rhs);
        }
    }
    report
}

/// `C[σ(S₊)]₄` in θ-coordinates.
pub fn sigma_ring_deg4_table(n: usize) -> QuarticTable {
    let mut t = QuarticTable::empty(n);
    for p in (0..).take_while(|p| 2 * p <= n) {
        if p != 1 {
            t.set_e(0, 2 * p, 1);
        }
        for q in 1..=p {
            if (p - q) % 2 == 0 && (p, q) != (1, 1) {
                t.set_e(2 * q, 2 * p, 1);
            }
        }
    }
    t
}

pub fn sigma_ring_deg4(n: usize) -> Result<Decomposition> {
    spin_datum(n, 4, usize::MAX)?;
    Ok(sigma_ring_deg4_table(n)
        .to_decomposition()?
        .with_label(format!("C[sigma]_4 D{n}")))
}

/// `S⁴Δ₊ − C[σ(S₊)]₄`.
pub fn quartic_ideal(n: usize) -> Result<Decomposition> {
    let ideal = s4_decomposition(n)?.minus(&sigma_ring_deg4(n)?)?;
    genuine(ideal).map(|d| d.with_label(format!("I4 D{n}")))
}

/// The kernel of `C[σ]₄ → C[τ]₄` as printed: the `p+q>4` band and
/// `θ_n+θ_{n-2p}` for `p>4`.
pub fn tangent_kernel4_formula(n: usize) -> QuarticTable {
    let mut t = QuarticTable::empty(n);
    for p in (1..).take_while(|p| 2 * p <= n) {
        if p > 4 {
            t.set_e(0, 2 * p, 1);
        }
        for q in 1..=p {
            if (p - q) % 2 == 0 && p + q > 4 {
                t.set_e(2 * q, 2 * p, 1);
            }
        }
    }
    t
}

/// Certificate that a component of `I₄` does not come from `I₃ ⊗ Δ₊`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionWitness {
    pub rank: usize,
    pub target: String,
    /// Multiplicity of the target in `I₄`.
    pub ideal_mult: i64,
    /// Multiplicity of the target in `I₃ ⊗ Δ₊`.
    pub product_mult: i64,
    /// Components of `I₃` that were multiplied.
    pub cubic_components: Vec<String>,
    pub holds: bool,
}

/// `I₃ ⊗ Δ₊`, one minuscule expansion per component.
pub fn cubic_products(n: usize) -> Result<Decomposition> {
    let i3 = cubic_ideal(n)?;
    let mut out = Decomposition::new(i3.datum());
    for (w, &m) in i3.components() {
        out = out.plus(&tensor_minuscule(i3.datum(), w, true)?.scaled(m))?;
    }
    Ok(out)
}

/// Is `target` in `I₄` with multiplicity one and absent from `I₃ ⊗ Δ₊`?
pub fn induction_witness(n: usize, target: &Weight) -> Result<InductionWitness> {
    let i4 = quartic_ideal(n)?;
    let products = cubic_products(n)?;
    let i3 = cubic_ideal(n)?;
    let ideal_mult = i4.get(target);
    let product_mult = products.get(target);
    Ok(InductionWitness {
        rank: n,
        target: i4.datum().format_weight(target),
        ideal_mult,
        product_mult,
        cubic_components: i3
            .sorted()
            .iter()
            .map(|(w, _)| i3.datum().format_weight(w))
            .collect(),
        holds: ideal_mult == 1 && product_mult == 0,
    })
}

/// The witness for `V_{ω_{n-3}+ω_{n-7}}`.
pub fn not_induced_by_cubics(n: usize) -> Result<InductionWitness> {
    if !(10..=S4_MAX_RANK).contains(&n) {
        return Err(Error::RankOutOfRange {
            rank: n,
            min: 10,
            max: S4_MAX_RANK,
        });
    }
    induction_witness(n, &theta_weight(n, 3, 7))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_table_small() {
        let t = sigma_ring_deg4_table(8);
        let mut keys: Vec<_> = t.e.keys().copied().collect();
        keys.sort();
        assert_eq!(
            keys,
            vec![
                (0, 0),
                (0, 4),
                (0, 6),
                (0, 8),
                (2, 6),
                (4, 4),
                (4, 8),
                (6, 6),
                (8, 8)
            ]
        );
    }

    #[test]
    fn invariants_reject_odd_entries() {
        let mut t = QuarticTable::empty(6);
        t.set_e(1, 2, 1);
        assert!(t.check_invariants().is_err());
        let mut t = QuarticTable::empty(6);
        t.f.insert(3, 1);
        assert!(t.check_invariants().is_err());
    }

    #[test]
    fn table_round_trip() {
        let t = s4_halfspin(6).unwrap();
        assert_eq!(
            QuarticTable::from_decomposition(&t.to_decomposition().unwrap()).unwrap(),
            t
        );
    }
}
