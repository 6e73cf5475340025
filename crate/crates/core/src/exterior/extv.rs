//! `∧V ≅ Cl(V)` on the ordered symbols `e_1 < .. < e_n < f_1 < .. < f_n`.
//!
//! Bit `k` of a monomial is `e_{k+1}` and bit `n + k` is `f_{k+1}`. The
//! Clifford product is transported through the symmetrization isomorphism, so
//! a degree-1 symbol `v` acts by `ψ(v) = o(v) + i(v)` with `i(e_k) f_k = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use num_traits::Zero;

use super::index_set::{merge_sign, sign_below, IndexSet};
use super::spin::{check_rank, SpinElem};
use crate::error::Result;
use crate::exact::{rat, Rational};

#[derive(Clone, PartialEq, Eq)]
pub struct ExtVElem {
    rank: usize,
    terms: BTreeMap<IndexSet, Rational>,
}

impl ExtVElem {
    pub fn zero(rank: usize) -> Self {
        assert!(rank <= 32, "rank {rank} exceeds the 64-symbol limit");
        ExtVElem {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::monomial(rank, IndexSet::EMPTY, rat(1))
    }

    pub fn monomial(rank: usize, set: IndexSet, coeff: Rational) -> Self {
        let mut x = Self::zero(rank);
        x.add_term(set, coeff);
        x
    }

    /// `e_A ∧ f_B` with 1-based index lists.
    pub fn ef(rank: usize, e: &[usize], f: &[usize]) -> Self {
        Self::monomial(
            rank,
            ef_bits(
                rank,
                IndexSet::from_one_based(e),
                IndexSet::from_one_based(f),
            ),
            rat(1),
        )
    }

    /// The vacuum `f_1 ∧ .. ∧ f_n`.
    pub fn vacuum(rank: usize) -> Self {
        Self::monomial(
            rank,
            ef_bits(rank, IndexSet::EMPTY, IndexSet::full(rank)),
            rat(1),
        )
    }

    /// `∧E ⊂ ∧V`.
    pub fn from_spin(s: &SpinElem) -> Self {
        let mut x = Self::zero(s.rank());
        for (k, v) in s.terms() {
            x.add_term(*k, v.clone());
        }
        x
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (IndexSet, Rational)>) -> Self {
        let mut x = Self::zero(rank);
        for (k, v) in terms {
            x.add_term(k, v);
        }
        x
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &BTreeMap<IndexSet, Rational> {
        &self.terms
    }

    pub fn coeff(&self, set: IndexSet) -> Rational {
        self.terms.get(&set).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    // `is_zero` is the emptiness test for a linear combination
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, set: IndexSet, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(set).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&set);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.rank, self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn degree_part(&self, k: usize) -> Self {
        ExtVElem {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| s.len() == k)
                .map(|(s, v)| (*s, v.clone()))
                .collect(),
        }
    }

    /// Degrees carrying a nonzero component.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|k| k.len()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// `Some(c)` with `self = c * other`.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.terms.len() != other.terms.len() || other.is_zero() {
            return None;
        }
        let (k0, v0) = other.terms.iter().next()?;
        let c = self.terms.get(k0)? / v0;
        other
            .terms
            .iter()
            .all(|(k, v)| self.terms.get(k) == Some(&(v * &c)))
            .then_some(c)
    }

    /// Wedge product.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        let mut out = Self::zero(self.rank);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.intersection(*b).is_empty() {
                    let c = x * y;
                    out.add_term(
                        a.union(*b),
                        if merge_sign(a.bits(), b.bits()) > 0 {
                            c
                        } else {
                            -c
                        },
                    );
                }
            }
        }
        Ok(out)
    }

    /// `ψ(s) = o(s) + i(s)` for a single symbol `s` (bit position).
    pub fn psi_symbol(&self, sym: usize) -> Self {
        let mut out = Self::zero(self.rank);
        for (set, c) in &self.terms {
            if !set.contains(sym) {
                let sgn = sign_below(set.bits(), sym);
                out.add_term(
                    set.insert(sym),
                    if sgn > 0 { c.clone() } else { -c.clone() },
                );
            }
            let partner = partner(self.rank, sym);
            if set.contains(partner) {
                let sgn = sign_below(set.bits(), partner);
                out.add_term(
                    set.remove(partner),
                    if sgn > 0 { c.clone() } else { -c.clone() },
                );
            }
        }
        out
    }
}

impl fmt::Debug for ExtVElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{v}*{}", monomial_label(self.rank, *k))?;
        }
        Ok(())
    }
}

/// Human-readable monomial such as `e1^e2^f1`, or `1` for the empty set.
pub fn monomial_label(rank: usize, set: IndexSet) -> String {
    if set.is_empty() {
        return "1".into();
    }
    set.iter()
        .map(|b| {
            if b < rank {
                format!("e{}", b + 1)
            } else {
                format!("f{}", b - rank + 1)
            }
        })
        .collect::<Vec<_>>()
        .join("^")
}

impl Add for &ExtVElem {
    type Output = ExtVElem;
    fn add(self, rhs: &ExtVElem) -> ExtVElem {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Sub for &ExtVElem {
    type Output = ExtVElem;
    fn sub(self, rhs: &ExtVElem) -> ExtVElem {
        self + &rhs.scale(&rat(-1))
    }
}

/// Combine an e-set and an f-set into one ∧V monomial key.
pub fn ef_bits(rank: usize, e: IndexSet, f: IndexSet) -> IndexSet {
    IndexSet(e.bits() | (f.bits() << rank))
}

/// Split a ∧V monomial key into its e-set and f-set.
pub fn split_bits(rank: usize, set: IndexSet) -> (IndexSet, IndexSet) {
    let mask = IndexSet::full(rank).bits();
    (
        IndexSet(set.bits() & mask),
        IndexSet(set.bits() >> rank & mask),
    )
}

fn partner(rank: usize, sym: usize) -> usize {
    if sym < rank {
        sym + rank
    } else {
        sym - rank
    }
}

/// Clifford product, computed from the recursion
/// `θ(s ∧ M) = ψ(s) θ(M) - θ(i(s) M)` for the first symbol `s` of a monomial.
pub fn clifford_mul(a: &ExtVElem, b: &ExtVElem) -> Result<ExtVElem> {
    check_rank(a.rank, b.rank)?;
    let mut out = ExtVElem::zero(a.rank);
    for (m, c) in &a.terms {
        let prod = left_mul_monomial(a.rank, *m, b);
        for (k, v) in prod.terms {
            out.add_term(k, v * c);
        }
    }
    Ok(out)
}

fn left_mul_monomial(rank: usize, m: IndexSet, b: &ExtVElem) -> ExtVElem {
    if m.is_empty() {
        return b.clone();
    }
    let first = m.iter().next().unwrap();
    let rest = m.remove(first);
    let mut out = left_mul_monomial(rank, rest, b).psi_symbol(first);
    let p = partner(rank, first);
    if rest.contains(p) {
        let sgn = sign_below(rest.bits(), p);
        let correction = left_mul_monomial(rank, rest.remove(p), b);
        for (k, v) in correction.terms {
            out.add_term(k, if sgn > 0 { -v } else { v });
        }
    }
    out
}

/// Local factor at one index: 0 = 1, 1 = e, 2 = f, 3 = e∧f.
#[inline]
fn local(rank: usize, m: u64, k: usize) -> u8 {
    ((m >> k & 1) | ((m >> (rank + k) & 1) << 1)) as u8
}

/// Sign relating the canonical order of a monomial to the order grouped by
/// index (`e_1 f_1 e_2 f_2 ..`).
#[inline]
fn grouping_sign(rank: usize, m: u64) -> i64 {
    let mask = (1u64 << rank) - 1;
    let e = m & mask;
    let mut f = (m >> rank) & mask;
    let mut inv = 0u32;
    while f != 0 {
        let b = f.trailing_zeros();
        f &= f - 1;
        inv += (e >> (b + 1)).count_ones();
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Products of local factors in the rank-one Clifford algebra, as
/// `(factor, sign)` pairs, with `w = e∧f = ef - 1`.
const LOCAL_TABLE: [[&[(u8, i8)]; 4]; 4] = [
    [&[(0, 1)], &[(1, 1)], &[(2, 1)], &[(3, 1)]],
    [&[(1, 1)], &[], &[(3, 1), (0, 1)], &[(1, -1)]],
    [&[(2, 1)], &[(0, 1), (3, -1)], &[], &[(2, 1)]],
    [&[(3, 1)], &[(1, 1)], &[(2, -1)], &[(0, 1)]],
];

/// Clifford product of two ∧V monomials, factor by factor over the indices.
/// Calls `emit(monomial, sign)` once per resulting term.
pub fn mul_monomials(rank: usize, a: u64, b: u64, mut emit: impl FnMut(u64, i64)) {
    // Koszul sign of interleaving the grouped factors of a and b
    let mut koszul = 0u32;
    let mut odd_a_above = 0u32;
    for k in (0..rank).rev() {
        let lb = local(rank, b, k);
        if lb == 1 || lb == 2 {
            koszul += odd_a_above;
        }
        let la = local(rank, a, k);
        if la == 1 || la == 2 {
            odd_a_above += 1;
        }
    }
    let base = grouping_sign(rank, a)
        * grouping_sign(rank, b)
        * if koszul.is_multiple_of(2) { 1 } else { -1 };
    expand(rank, a, b, 0, 0, base, &mut emit);
}

fn expand(
    rank: usize,
    a: u64,
    b: u64,
    k: usize,
    acc: u64,
    sign: i64,
    emit: &mut impl FnMut(u64, i64),
) {
    if k == rank {
        emit(acc, sign * grouping_sign(rank, acc));
        return;
    }
    let products = LOCAL_TABLE[local(rank, a, k) as usize][local(rank, b, k) as usize];
    for &(factor, s) in products {
        let bits = (factor as u64 & 1) << k | ((factor as u64) >> 1) << (rank + k);
        expand(rank, a, b, k + 1, acc | bits, sign * s as i64, emit);
    }
}

/// Clifford product through [`mul_monomials`].
pub fn clifford_mul_fast(a: &ExtVElem, b: &ExtVElem) -> Result<ExtVElem> {
    check_rank(a.rank, b.rank)?;
    let mut out = ExtVElem::zero(a.rank);
    for (x, cx) in &a.terms {
        for (y, cy) in &b.terms {
            let c = cx * cy;
            mul_monomials(a.rank, x.bits(), y.bits(), |m, s| {
                out.add_term(IndexSet(m), if s > 0 { c.clone() } else { -c.clone() })
            });
        }
    }
    Ok(out)
}
