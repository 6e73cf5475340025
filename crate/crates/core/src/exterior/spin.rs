use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::index_set::{sign_below, IndexSet};
use crate::error::{Error, Result};
use crate::exact::{rat, ratio, Rational};
use crate::linalg::{Echelon, SparseRow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn of_len(len: usize) -> Parity {
        if len.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::Mixed => Parity::Mixed,
        }
    }
}

/// Element of the exterior algebra of `E = <e_1, .., e_n>`, which carries
/// both half-spin representations.
#[derive(Clone, PartialEq, Eq)]
pub struct SpinElem {
    rank: usize,
    terms: BTreeMap<IndexSet, Rational>,
}

impl SpinElem {
    pub fn zero(rank: usize) -> Self {
        SpinElem {
            rank,
            terms: BTreeMap::new(),
        }
    }

    /// The vacuum `1 = e_∅`.
    pub fn one(rank: usize) -> Self {
        Self::monomial(rank, IndexSet::EMPTY, rat(1))
    }

    pub fn monomial(rank: usize, set: IndexSet, coeff: Rational) -> Self {
        let mut s = Self::zero(rank);
        s.add_term(set, coeff);
        s
    }

    /// `e_I` from 1-based indices.
    pub fn basis(rank: usize, idx: &[usize]) -> Self {
        Self::monomial(rank, IndexSet::from_one_based(idx), rat(1))
    }

    /// `e_1 ∧ .. ∧ e_n`.
    pub fn top(rank: usize) -> Self {
        Self::monomial(rank, IndexSet::full(rank), rat(1))
    }

    pub fn from_terms(rank: usize, terms: impl IntoIterator<Item = (IndexSet, Rational)>) -> Self {
        let mut s = Self::zero(rank);
        for (k, v) in terms {
            s.add_term(k, v);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn add_term(&mut self, set: IndexSet, coeff: Rational) {
        debug_assert!(set.is_subset(IndexSet::full(self.rank)));
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(set).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&set);
        }
    }

    pub fn terms(&self) -> &BTreeMap<IndexSet, Rational> {
        &self.terms
    }

    pub fn coeff(&self, set: IndexSet) -> Rational {
        self.terms.get(&set).cloned().unwrap_or_else(Rational::zero)
    }

    // `is_zero` is the emptiness test for a linear combination
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common parity of the stored degrees. The zero element reports `Even`.
    pub fn parity(&self) -> Parity {
        let mut it = self.terms.keys().map(|k| Parity::of_len(k.len()));
        let Some(first) = it.next() else {
            return Parity::Even;
        };
        if it.all(|p| p == first) {
            first
        } else {
            Parity::Mixed
        }
    }

    /// True iff the element lies in `Δ₊`, i.e. every degree has the parity of `n`.
    pub fn in_plus(&self) -> bool {
        self.terms.keys().all(|k| k.len() % 2 == self.rank % 2)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        SpinElem {
            rank: self.rank,
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Component of degree `k`.
    pub fn degree_part(&self, k: usize) -> Self {
        SpinElem {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| s.len() == k)
                .map(|(s, v)| (*s, v.clone()))
                .collect(),
        }
    }

    /// Exterior multiplication `e_k ∧ s` (0-based `k`).
    pub fn wedge_e(&self, k: usize) -> Self {
        let mut out = Self::zero(self.rank);
        for (set, c) in &self.terms {
            if !set.contains(k) {
                let sgn = sign_below(set.bits(), k);
                out.add_term(set.insert(k), if sgn > 0 { c.clone() } else { -c.clone() });
            }
        }
        out
    }

    /// Plain contraction `i(f_k) s` with `i(f_k) e_k = 1` (0-based `k`).
    pub fn contract_f(&self, k: usize) -> Self {
        let mut out = Self::zero(self.rank);
        for (set, c) in &self.terms {
            if set.contains(k) {
                let sgn = sign_below(set.bits(), k);
                out.add_term(set.remove(k), if sgn > 0 { c.clone() } else { -c.clone() });
            }
        }
        out
    }

    /// Wedge product in `∧E`.
    pub fn wedge(&self, other: &Self) -> Result<Self> {
        check_rank(self.rank, other.rank)?;
        let mut out = Self::zero(self.rank);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if a.intersection(*b).is_empty() {
                    let sgn = super::index_set::merge_sign(a.bits(), b.bits());
                    let c = x * y;
                    out.add_term(a.union(*b), if sgn > 0 { c } else { -c });
                }
            }
        }
        Ok(out)
    }

    /// Rescale so that the lexicographically least term has coefficient 1.
    pub fn normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(lead) => self.scale(&lead.recip()),
            None => self.clone(),
        }
    }

    /// `Some(c)` with `self = c * other`, if the two are proportional.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.rank != other.rank || self.terms.len() != other.terms.len() || other.is_zero() {
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
}

impl fmt::Debug for SpinElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{v}*e{k:?}")?;
        }
        Ok(())
    }
}

impl Add for &SpinElem {
    type Output = SpinElem;
    fn add(self, rhs: &SpinElem) -> SpinElem {
        assert_eq!(self.rank, rhs.rank, "rank mismatch");
        let mut out = self.clone();
        for (k, v) in &rhs.terms {
            out.add_term(*k, v.clone());
        }
        out
    }
}

impl Sub for &SpinElem {
    type Output = SpinElem;
    fn sub(self, rhs: &SpinElem) -> SpinElem {
        self + &(-rhs)
    }
}

impl Neg for &SpinElem {
    type Output = SpinElem;
    fn neg(self) -> SpinElem {
        self.scale(&rat(-1))
    }
}

pub(crate) fn check_rank(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RankMismatch(a, b))
    }
}

/// Vector of `V = E ⊕ F` with `q(e_i, f_j) = δ_ij` and `E`, `F` isotropic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VVector {
    pub e: Vec<Rational>,
    pub f: Vec<Rational>,
}

impl VVector {
    pub fn zero(rank: usize) -> Self {
        VVector {
            e: vec![Rational::zero(); rank],
            f: vec![Rational::zero(); rank],
        }
    }

    /// `e_i`, 1-based.
    pub fn e(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.e[i - 1] = rat(1);
        v
    }

    /// `f_i`, 1-based.
    pub fn f(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.f[i - 1] = rat(1);
        v
    }

    pub fn rank(&self) -> usize {
        self.e.len()
    }

    pub fn q(&self, w: &VVector) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.rank() {
            acc += &self.e[i] * &w.f[i] + &self.f[i] * &w.e[i];
        }
        acc
    }

    pub fn add(&self, w: &VVector) -> VVector {
        VVector {
            e: self.e.iter().zip(&w.e).map(|(a, b)| a + b).collect(),
            f: self.f.iter().zip(&w.f).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> VVector {
        VVector {
            e: self.e.iter().map(|a| a * c).collect(),
            f: self.f.iter().map(|a| a * c).collect(),
        }
    }

    /// Coordinates as a sparse row: `e_i` in column `i`, `f_i` in column `n + i`.
    pub fn as_row(&self) -> SparseRow {
        let n = self.rank();
        self.e
            .iter()
            .enumerate()
            .chain(self.f.iter().enumerate().map(|(i, c)| (i + n, c)))
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.clone()))
            .collect()
    }
}

/// Spin action `v.s = v' ∧ s + 2 i(v'') s`.
pub fn clifford_act(v: &VVector, s: &SpinElem) -> Result<SpinElem> {
    check_rank(v.rank(), s.rank())?;
    let mut out = SpinElem::zero(s.rank());
    let two = rat(2);
    for (set, c) in s.terms() {
        for k in 0..s.rank() {
            let sgn = sign_below(set.bits(), k);
            if !v.e[k].is_zero() && !set.contains(k) {
                let t = &v.e[k] * c;
                out.add_term(set.insert(k), if sgn > 0 { t } else { -t });
            }
            if !v.f[k].is_zero() && set.contains(k) {
                let t = &v.f[k] * c * &two;
                out.add_term(set.remove(k), if sgn > 0 { t } else { -t });
            }
        }
    }
    Ok(out)
}

/// Sign of reversing a word of `len` anticommuting letters.
pub fn reversal_sign(len: usize) -> i64 {
    if (len * len.saturating_sub(1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Main anti-automorphism restricted to `∧E`.
pub fn alpha(s: &SpinElem) -> SpinElem {
    SpinElem::from_terms(
        s.rank(),
        s.terms().iter().map(|(k, v)| {
            (
                *k,
                if reversal_sign(k.len()) > 0 {
                    v.clone()
                } else {
                    -v.clone()
                },
            )
        }),
    )
}

/// Invariant form on `∧E`: the top coefficient of `α(u) ∧ v`.
pub fn spin_pairing(u: &SpinElem, v: &SpinElem) -> Result<Rational> {
    check_rank(u.rank(), v.rank())?;
    let (pu, pv) = (u.parity(), v.parity());
    let n = u.rank();
    // degrees must add up to n
    let compatible = match (pu, pv) {
        (Parity::Mixed, _) | (_, Parity::Mixed) => false,
        _ => u.is_zero() || v.is_zero() || (pu == pv) == n.is_multiple_of(2),
    };
    if !compatible {
        return Err(Error::ParityMismatch(format!(
            "{pu:?} and {pv:?} at rank {n}"
        )));
    }
    let mut acc = Rational::zero();
    for (a, x) in alpha(u).terms() {
        let b = a.complement(n);
        if let Some(y) = v.terms().get(&b) {
            let sgn = super::index_set::merge_sign(a.bits(), b.bits());
            let t = x * y;
            acc += if sgn > 0 { t } else { -t };
        }
    }
    Ok(acc)
}

/// `Π_{i=1}^m (1 + e_{2i-1} ∧ e_{2i})` at rank `2m`.
pub fn build_u_g(m: usize) -> SpinElem {
    let n = 2 * m;
    let mut out = SpinElem::one(n);
    for i in 0..m {
        let factor = &SpinElem::one(n) + &SpinElem::basis(n, &[2 * i + 1, 2 * i + 2]);
        out = out.wedge(&factor).expect("same rank");
    }
    out
}

/// Like [`build_u_g`] but taking the rank, rejecting odd values.
pub fn u_g_for_rank(n: usize) -> Result<SpinElem> {
    if n % 2 == 1 || n == 0 {
        return Err(Error::OddRank(n));
    }
    Ok(build_u_g(n / 2))
}

/// Frame `e_i (i ∈ I), f_j (j ∉ I)` of the subspace whose spinor is `e_I`.
pub fn coordinate_frame(rank: usize, set: IndexSet) -> Vec<VVector> {
    (0..rank)
        .map(|i| {
            if set.contains(i) {
                VVector::e(rank, i + 1)
            } else {
                VVector::f(rank, i + 1)
            }
        })
        .collect()
}

/// Frame `e_{2i} - f_{2i-1}/2, e_{2i-1} + f_{2i}/2` annihilating [`build_u_g`]
/// under the spin action.
pub fn u_g_frame(m: usize) -> Vec<VVector> {
    let n = 2 * m;
    let half = ratio(1, 2);
    let mut frame = Vec::with_capacity(n);
    for i in 1..=m {
        let (a, b) = (2 * i - 1, 2 * i);
        frame.push(VVector::e(n, b).add(&VVector::f(n, a).scale(&-half.clone())));
        frame.push(VVector::e(n, a).add(&VVector::f(n, b).scale(&half)));
    }
    frame
}

/// Frame `e_i + Σ_j u_ij f_j`. Its spinor under the spin action is the
/// Pfaffian spinor of the matrix with entries `(-1)^(i+j+1) 2 u_ij`.
pub fn skew_frame(rows: &[Vec<Rational>]) -> Vec<VVector> {
    let n = rows.len();
    (0..n)
        .map(|i| {
            let mut v = VVector::e(n, i + 1);
            v.f = rows[i].clone();
            v
        })
        .collect()
}

/// Spinor line of a maximal isotropic subspace, as the joint kernel of the
/// frame vectors acting on `∧E`. Normalized so the least term has coefficient 1.
pub fn pure_spinor_of_subspace(frame: &[VVector]) -> Result<SpinElem> {
    let n = frame
        .first()
        .map(|v| v.rank())
        .ok_or(Error::RankDeficient {
            rank: 0,
            expected: 0,
        })?;
    for v in frame {
        check_rank(n, v.rank())?;
    }
    for (a, v) in frame.iter().enumerate() {
        for (b, w) in frame.iter().enumerate().skip(a) {
            if !v.q(w).is_zero() {
                return Err(Error::NotIsotropic(a + 1, b + 1));
            }
        }
    }
    let rank = crate::linalg::rank_of(frame.iter().map(|v| v.as_row()));
    if rank != n || frame.len() != n {
        return Err(Error::RankDeficient { rank, expected: n });
    }

    let mut found: Vec<SpinElem> = Vec::new();
    for parity in [0usize, 1] {
        let columns: Vec<IndexSet> = (0..=n)
            .filter(|k| k % 2 == parity)
            .flat_map(|k| IndexSet::subsets_of_size(n, k))
            .collect();
        let mut rows: BTreeMap<(usize, IndexSet), SparseRow> = BTreeMap::new();
        for (col, set) in columns.iter().enumerate() {
            let basis = SpinElem::monomial(n, *set, rat(1));
            for (h, v) in frame.iter().enumerate() {
                for (out, c) in clifford_act(v, &basis)?.terms() {
                    rows.entry((h, *out)).or_default().push((col, c.clone()));
                }
            }
        }
        let mut ech = Echelon::new();
        for (_, row) in rows {
            ech.insert(row);
            if ech.rank() == columns.len() {
                break;
            }
        }
        for v in ech.nullspace(columns.len()) {
            found.push(SpinElem::from_terms(
                n,
                v.into_iter().enumerate().map(|(i, c)| (columns[i], c)),
            ));
        }
    }
    if found.len() != 1 {
        return Err(Error::KernelDimension(found.len()));
    }
    Ok(found.pop().unwrap().normalized())
}

/// `q`-orthogonality and rank of a frame, without solving for the spinor.
pub fn is_maximal_isotropic(frame: &[VVector]) -> bool {
    let n = match frame.first() {
        Some(v) => v.rank(),
        None => return false,
    };
    frame.len() == n
        && frame.iter().all(|v| frame.iter().all(|w| v.q(w).is_zero()))
        && crate::linalg::rank_of(frame.iter().map(|v| v.as_row())) == n
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_action_examples() {
        let s = clifford_act(&VVector::e(3, 1), &SpinElem::one(3)).unwrap();
        assert_eq!(s, SpinElem::basis(3, &[1]));
        let s = clifford_act(&VVector::f(3, 1), &SpinElem::basis(3, &[1])).unwrap();
        assert_eq!(s, SpinElem::one(3).scale(&rat(2)));
        let s = clifford_act(&VVector::f(3, 2), &SpinElem::basis(3, &[1, 2])).unwrap();
        assert_eq!(s, SpinElem::basis(3, &[1]).scale(&rat(-2)));
        assert!(matches!(
            clifford_act(&VVector::e(2, 1), &SpinElem::one(3)),
            Err(Error::RankMismatch(2, 3))
        ));
    }

    #[test]
    fn alpha_signs() {
        assert_eq!(alpha(&SpinElem::basis(4, &[1])), SpinElem::basis(4, &[1]));
        assert_eq!(
            alpha(&SpinElem::basis(4, &[1, 2])),
            SpinElem::basis(4, &[1, 2]).scale(&rat(-1))
        );
        assert_eq!(
            alpha(&SpinElem::basis(4, &[1, 2, 3, 4])),
            SpinElem::basis(4, &[1, 2, 3, 4])
        );
    }

    #[test]
    fn u_g_expansion() {
        assert_eq!(
            build_u_g(1),
            &SpinElem::one(2) + &SpinElem::basis(2, &[1, 2])
        );
        let g2 = build_u_g(2);
        let expected = SpinElem::from_terms(
            4,
            [
                (IndexSet::EMPTY, rat(1)),
                (IndexSet::from_one_based(&[1, 2]), rat(1)),
                (IndexSet::from_one_based(&[3, 4]), rat(1)),
                (IndexSet::from_one_based(&[1, 2, 3, 4]), rat(1)),
            ],
        );
        assert_eq!(g2, expected);
        assert_eq!(build_u_g(5).len(), 32);
        assert!(matches!(u_g_for_rank(5), Err(Error::OddRank(5))));
    }

    #[test]
    fn coordinate_subspaces() {
        for n in 1..=5 {
            for bits in 0..(1u64 << n) {
                let set = IndexSet(bits);
                let s = pure_spinor_of_subspace(&coordinate_frame(n, set)).unwrap();
                assert_eq!(s, SpinElem::monomial(n, set, rat(1)));
            }
        }
        let f_frame: Vec<_> = (1..=4).map(|i| VVector::f(4, i)).collect();
        assert_eq!(pure_spinor_of_subspace(&f_frame).unwrap(), SpinElem::one(4));
    }

    #[test]
    fn u_g_frame_annihilates() {
        for m in 1..=3 {
            let frame = u_g_frame(m);
            assert!(is_maximal_isotropic(&frame));
            let spinor = pure_spinor_of_subspace(&frame).unwrap();
            assert_eq!(spinor, build_u_g(m));
        }
    }

    #[test]
    fn frame_errors() {
        let bad = vec![VVector::e(2, 1), VVector::f(2, 1)];
        assert!(matches!(
            pure_spinor_of_subspace(&bad),
            Err(Error::NotIsotropic(1, 2))
        ));
        let deficient = vec![VVector::e(2, 1), VVector::e(2, 1)];
        assert!(matches!(
            pure_spinor_of_subspace(&deficient),
            Err(Error::RankDeficient {
                rank: 1,
                expected: 2
            })
        ));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(
            spin_pairing(&SpinElem::one(4), &build_u_g(2)).unwrap(),
            rat(1)
        );
        let n = 4;
        for a in 0..16u64 {
            for b in 0..16u64 {
                if (a.count_ones() + b.count_ones()) % 2 != 0 {
                    continue;
                }
                let p = spin_pairing(
                    &SpinElem::monomial(n, IndexSet(a), rat(1)),
                    &SpinElem::monomial(n, IndexSet(b), rat(1)),
                )
                .unwrap();
                if b != (!a & 15) {
                    assert!(p.is_zero());
                } else {
                    assert!(!p.is_zero());
                }
            }
        }
        assert!(spin_pairing(&SpinElem::one(4), &SpinElem::basis(4, &[1])).is_err());
    }
}
