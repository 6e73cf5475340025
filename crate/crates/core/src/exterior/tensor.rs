//! Tensors in `∧V ⊗ ∧E` and `∧V ⊗ ∧V`, with the equivariant maps used in the
//! cubic and quartic computations.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;

use super::extv::{ef_bits, monomial_label, split_bits, ExtVElem};
use super::index_set::{merge_sign, sign_below, subsets_of, IndexSet};
use super::spin::{clifford_act, spin_pairing, SpinElem, VVector};
use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

/// What the second tensor factor is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RightSlot {
    /// `∧E`, a spin module.
    Spin,
    /// Another copy of `∧V`.
    ExtV,
}

#[derive(Clone, PartialEq, Eq)]
pub struct TensorElem {
    rank: usize,
    right: RightSlot,
    terms: BTreeMap<(IndexSet, IndexSet), Rational>,
}

impl TensorElem {
    pub fn zero(rank: usize, right: RightSlot) -> Self {
        TensorElem {
            rank,
            right,
            terms: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn right_slot(&self) -> RightSlot {
        self.right
    }

    pub fn terms(&self) -> &BTreeMap<(IndexSet, IndexSet), Rational> {
        &self.terms
    }

    // `is_zero` is the emptiness test for a linear combination
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, left: IndexSet, right: IndexSet, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self
            .terms
            .entry((left, right))
            .or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&(left, right));
        }
    }

    fn add_signed(&mut self, left: IndexSet, right: IndexSet, sign: i64, coeff: &Rational) {
        self.add_term(
            left,
            right,
            if sign > 0 {
                coeff.clone()
            } else {
                -coeff.clone()
            },
        );
    }

    /// `ω ⊗ s` for ∧V and ∧E elements.
    pub fn from_spin_product(omega: &ExtVElem, s: &SpinElem) -> Self {
        let mut t = Self::zero(omega.rank(), RightSlot::Spin);
        for (a, x) in omega.terms() {
            for (b, y) in s.terms() {
                t.add_term(*a, *b, x * y);
            }
        }
        t
    }

    /// `ω ⊗ η` for two ∧V elements.
    pub fn from_extv_product(omega: &ExtVElem, eta: &ExtVElem) -> Self {
        let mut t = Self::zero(omega.rank(), RightSlot::ExtV);
        for (a, x) in omega.terms() {
            for (b, y) in eta.terms() {
                t.add_term(*a, *b, x * y);
            }
        }
        t
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.rank, self.right);
        for ((a, b), v) in &self.terms {
            out.add_term(*a, *b, v * c);
        }
        out
    }

    /// The common `(left degree, right degree)`, if all terms share one.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|(a, b)| (a.len(), b.len()));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Left degree with right parity, the grading used on `∧V ⊗ Δ±`.
    pub fn bidegree_mod2(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys().map(|(a, b)| (a.len(), b.len() % 2));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
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

    /// Coefficients `(a, b)` with `self = a x + b y`, when such exist.
    pub fn as_combination(&self, x: &Self, y: &Self) -> Option<(Rational, Rational)> {
        // x and y have disjoint supports in every use here
        let mut a = None;
        let mut b = None;
        for (k, v) in &self.terms {
            if let Some(xv) = x.terms.get(k) {
                a.get_or_insert_with(|| v / xv);
            } else {
                let yv = y.terms.get(k)?;
                b.get_or_insert_with(|| v / yv);
            }
        }
        let a = a.unwrap_or_else(Rational::zero);
        let b = b.unwrap_or_else(Rational::zero);
        let candidate = &x.scale(&a) + &y.scale(&b);
        (candidate == *self).then_some((a, b))
    }
}

impl Add for &TensorElem {
    type Output = TensorElem;
    fn add(self, rhs: &TensorElem) -> TensorElem {
        assert_eq!(
            (self.rank, self.right),
            (rhs.rank, rhs.right),
            "incompatible tensors"
        );
        let mut out = self.clone();
        for ((a, b), v) in &rhs.terms {
            out.add_term(*a, *b, v.clone());
        }
        out
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, ((a, b), v)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let right = match self.right {
                RightSlot::Spin => format!("e{b:?}"),
                RightSlot::ExtV => monomial_label(self.rank, *b),
            };
            write!(f, "{v}*{}(x){right}", monomial_label(self.rank, *a))?;
        }
        Ok(())
    }
}

/// `Σ e_I ∧ f_I ∧ f_J ⊗ e_J` over disjoint `I, J` with `|I| = (n - a - b)/2`
/// and `|J| = b`; it lies in `∧^{n-a} V ⊗ ∧^b E`.
pub fn psi(n: usize, a: usize, b: usize) -> Result<TensorElem> {
    if a + b > n || (n - a - b) % 2 == 1 {
        return Err(Error::OutOfRange(format!("psi({a},{b}) at rank {n}")));
    }
    let size_i = (n - a - b) / 2;
    let mut t = TensorElem::zero(n, RightSlot::Spin);
    let one = rat(1);
    for j in IndexSet::subsets_of_size(n, b) {
        for i in subsets_of(j.complement(n), size_i) {
            let left = ef_bits(n, i, i.union(j));
            t.add_signed(left, j, merge_sign(i.bits(), j.bits()), &one);
        }
    }
    Ok(t)
}

/// The tensor `ψ_{2i,2j}` for `n = 2m`.
pub fn psi_tensor(n: usize, i: usize, j: usize) -> Result<TensorElem> {
    if n % 2 == 1 {
        return Err(Error::OddRank(n));
    }
    if i + j > n / 2 {
        return Err(Error::OutOfRange(format!(
            "i + j = {} exceeds m = {}",
            i + j,
            n / 2
        )));
    }
    psi(n, 2 * i, 2 * j)
}

/// Scale of the contraction `V ⊗ Δ∓ → Δ±` inside [`kappa_apply`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContractionScale {
    /// `i(f_k) e_k = 1`.
    Plain,
    /// The spin-action normalization `i(f_k) e_k = 2`.
    Doubled,
}

impl ContractionScale {
    pub fn factor(self) -> i64 {
        match self {
            ContractionScale::Plain => 1,
            ContractionScale::Doubled => 2,
        }
    }
}

/// `κ_i : ∧^{n-2i-1}V ⊗ Δ₋ → ∧^{n-2i}V ⊗ Δ₊`,
/// `ω ⊗ s ↦ Σ_k (e_k ∧ ω) ⊗ c·i(f_k)s + (f_k ∧ ω) ⊗ (e_k ∧ s)`.
pub fn kappa_apply(i: usize, x: &TensorElem, scale: ContractionScale) -> Result<TensorElem> {
    let n = x.rank;
    if x.right != RightSlot::Spin || 2 * i + 1 > n {
        return Err(Error::Bidegree(format!("kappa_{i} at rank {n}")));
    }
    let want = (n - 2 * i - 1, (n + 1) % 2);
    if let Some(got) = x.bidegree_mod2() {
        if got != want {
            return Err(Error::Bidegree(format!("expected {want:?}, got {got:?}")));
        }
    }
    let c = rat(scale.factor());
    let mut out = TensorElem::zero(n, RightSlot::Spin);
    for ((omega, s), v) in &x.terms {
        for k in 0..n {
            if s.contains(k) && !omega.contains(k) {
                let sign = sign_below(omega.bits(), k) * sign_below(s.bits(), k);
                out.add_signed(omega.insert(k), s.remove(k), sign, &(v * &c));
            }
            let fk = n + k;
            if !s.contains(k) && !omega.contains(fk) {
                let sign = sign_below(omega.bits(), fk) * sign_below(s.bits(), k);
                out.add_signed(omega.insert(fk), s.insert(k), sign, v);
            }
        }
    }
    Ok(out)
}

/// One basic step of the `α` family on `∧V ⊗ ∧V`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaStep {
    /// Split one vector off the left factor and wedge it into the right.
    Wedge,
    /// Split one vector off the left factor and contract the right with it.
    Contract,
}

/// Contraction by one ∧V symbol through `q`.
fn contract_symbol(rank: usize, sym: usize, m: IndexSet) -> Option<(IndexSet, i64)> {
    let partner = if sym < rank { sym + rank } else { sym - rank };
    m.contains(partner)
        .then(|| (m.remove(partner), sign_below(m.bits(), partner)))
}

pub fn alpha_step(x: &TensorElem, step: AlphaStep) -> Result<TensorElem> {
    if x.right != RightSlot::ExtV {
        return Err(Error::Bidegree("alpha maps act on ∧V ⊗ ∧V".into()));
    }
    let n = x.rank;
    let mut out = TensorElem::zero(n, RightSlot::ExtV);
    for ((omega, eta), v) in &x.terms {
        let len = omega.len();
        for (pos, sym) in omega.iter().enumerate() {
            // ω = ± (ω without sym) ∧ sym
            let split_sign = if (len - 1 - pos) % 2 == 0 { 1 } else { -1 };
            let rest = omega.remove(sym);
            match step {
                AlphaStep::Wedge => {
                    if !eta.contains(sym) {
                        let sign = split_sign * sign_below(eta.bits(), sym);
                        out.add_signed(rest, eta.insert(sym), sign, v);
                    }
                }
                AlphaStep::Contract => {
                    if let Some((m, s)) = contract_symbol(n, sym, *eta) {
                        out.add_signed(rest, m, split_sign * s, v);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Steps taken by [`alpha_pq_rs`]: `(wedges, contractions)`.
pub fn alpha_step_counts(p: usize, q: usize, r: usize, s: usize) -> Result<(usize, usize)> {
    let (p, q, r, s) = (p as i64, q as i64, r as i64, s as i64);
    if r > p || (p + q - r - s) % 2 != 0 || (q - s).abs() > p - r {
        return Err(Error::Inadmissible(format!("({p},{q}) -> ({r},{s})")));
    }
    let wedges = (p - r + s - q) / 2;
    let contracts = (p - r - s + q) / 2;
    Ok((wedges as usize, contracts as usize))
}

/// `α_{p,q}^{r,s}`, taking all wedge steps first.
pub fn alpha_pq_rs(x: &TensorElem, r: usize, s: usize) -> Result<TensorElem> {
    let (p, q) = x
        .bidegree()
        .ok_or_else(|| Error::Bidegree("inhomogeneous or zero input".into()))?;
    let (w, c) = alpha_step_counts(p, q, r, s)?;
    let steps: Vec<AlphaStep> = std::iter::repeat_n(AlphaStep::Wedge, w)
        .chain(std::iter::repeat_n(AlphaStep::Contract, c))
        .collect();
    alpha_path(x, &steps)
}

pub fn alpha_path(x: &TensorElem, steps: &[AlphaStep]) -> Result<TensorElem> {
    steps
        .iter()
        .try_fold(x.clone(), |acc, step| alpha_step(&acc, *step))
}

/// Clifford action of a ∧V element on a spinor through the symmetrization map.
pub fn act_on_spinor(a: &ExtVElem, s: &SpinElem) -> Result<SpinElem> {
    super::spin::check_rank(a.rank(), s.rank())?;
    let mut out = SpinElem::zero(s.rank());
    for (m, c) in a.terms() {
        out = &out + &act_monomial(a.rank(), *m, s)?.scale(c);
    }
    Ok(out)
}

fn symbol_vector(rank: usize, sym: usize) -> VVector {
    if sym < rank {
        VVector::e(rank, sym + 1)
    } else {
        VVector::f(rank, sym - rank + 1)
    }
}

fn act_monomial(rank: usize, m: IndexSet, s: &SpinElem) -> Result<SpinElem> {
    let Some(first) = m.iter().next() else {
        return Ok(s.clone());
    };
    let rest = m.remove(first);
    let mut out = clifford_act(&symbol_vector(rank, first), &act_monomial(rank, rest, s)?)?;
    if let Some((reduced, sign)) = contract_symbol(rank, first, rest) {
        let corr = act_monomial(rank, reduced, s)?;
        out = if sign > 0 { &out - &corr } else { &out + &corr };
    }
    Ok(out)
}

/// Comultiplication `∧^{a+b} V → ∧^a V ⊗ ∧^b V` followed by the Clifford
/// action of the second factor on `s`.
pub fn split_and_act(omega: &ExtVElem, left_degree: usize, s: &SpinElem) -> Result<TensorElem> {
    let n = omega.rank();
    let mut out = TensorElem::zero(n, RightSlot::Spin);
    for (m, c) in omega.terms() {
        if m.len() < left_degree {
            continue;
        }
        for left in subsets_of(*m, left_degree) {
            let right = m.difference(left);
            let sign = merge_sign(left.bits(), right.bits());
            let acted = act_monomial(n, right, s)?;
            for (k, v) in acted.terms() {
                let coeff = c * v;
                out.add_signed(left, *k, sign, &coeff);
            }
        }
    }
    Ok(out)
}

/// Pairing on `∧^k V` induced by `q`: `<x_1..x_k, y_1..y_k> = det q(x_a, y_b)`.
pub fn wedge_pairing(a: &ExtVElem, b: &ExtVElem) -> Rational {
    let n = a.rank();
    let mut acc = Rational::zero();
    for (x, cx) in a.terms() {
        let (xe, xf) = split_bits(n, *x);
        // the only monomial pairing nontrivially with x swaps its e and f parts
        let y = ef_bits(n, xf, xe);
        if let Some(cy) = b.terms().get(&y) {
            acc += cx * cy * rat(monomial_pairing_sign(n, *x));
        }
    }
    acc
}

/// `det q(x_a, y_b)` for a monomial `x` against its partner monomial.
fn monomial_pairing_sign(n: usize, x: IndexSet) -> i64 {
    let syms: Vec<usize> = x.iter().collect();
    let partners: Vec<usize> = syms
        .iter()
        .map(|&s| if s < n { s + n } else { s - n })
        .collect();
    let mut sorted = partners.clone();
    sorted.sort_unstable();
    // permutation taking the sorted partner order to the order of x
    let perm: Vec<usize> = partners
        .iter()
        .map(|p| sorted.iter().position(|q| q == p).unwrap())
        .collect();
    let mut inv = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Full pairing of `x ∈ ∧V ⊗ ∧E` against `ω ⊗ s`.
pub fn tensor_pairing(x: &TensorElem, omega: &ExtVElem, s: &SpinElem) -> Result<Rational> {
    let n = x.rank;
    let mut acc = Rational::zero();
    for ((a, b), v) in &x.terms {
        let left = wedge_pairing(&ExtVElem::monomial(n, *a, rat(1)), omega);
        if left.is_zero() {
            continue;
        }
        let right = spin_pairing(&SpinElem::monomial(n, *b, rat(1)), s)?;
        acc += v * left * right;
    }
    Ok(acc)
}

/// `g_1 ∧ .. ∧ g_k` as a ∧V element.
pub fn wedge_of_vectors(vectors: &[VVector]) -> ExtVElem {
    let n = vectors.first().map(|v| v.rank()).unwrap_or(0);
    let mut acc = ExtVElem::one(n);
    for v in vectors {
        let mut vec = ExtVElem::zero(n);
        for (col, c) in v.as_row() {
            vec.add_term(IndexSet::EMPTY.insert(col), c);
        }
        acc = acc.wedge(&vec).expect("same rank");
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_small_cases() {
        let t = psi_tensor(4, 2, 0).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(
            t.terms().keys().next(),
            Some(&(IndexSet::EMPTY, IndexSet::EMPTY))
        );
        // ψ_{2i,0} = Σ e_I ∧ f_I ⊗ 1
        let t = psi_tensor(6, 1, 0).unwrap();
        assert_eq!(t.len(), 15);
        for ((a, b), v) in t.terms() {
            assert!(b.is_empty());
            let (e, f) = split_bits(6, *a);
            assert_eq!(e, f);
            assert_eq!(*v, rat(1));
        }
        assert!(matches!(psi_tensor(5, 1, 0), Err(Error::OddRank(5))));
        assert!(matches!(psi_tensor(4, 2, 1), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn alpha_single_steps() {
        let n = 3;
        let v = ExtVElem::ef(n, &[2], &[]);
        let x = TensorElem::from_extv_product(&v, &ExtVElem::one(n));
        let y = alpha_pq_rs(&x, 0, 1).unwrap();
        assert_eq!(y, TensorElem::from_extv_product(&ExtVElem::one(n), &v));

        let w = ExtVElem::ef(n, &[], &[2]);
        let x = TensorElem::from_extv_product(&v, &w);
        let y = alpha_pq_rs(&x, 0, 0).unwrap();
        assert_eq!(
            y,
            TensorElem::from_extv_product(&ExtVElem::one(n), &ExtVElem::one(n))
        );
        assert!(matches!(alpha_pq_rs(&x, 0, 3), Err(Error::Inadmissible(_))));
        assert!(matches!(
            alpha_step_counts(1, 1, 0, 1),
            Err(Error::Inadmissible(_))
        ));
    }

    #[test]
    fn kappa_rejects_wrong_bidegree() {
        let t = psi_tensor(4, 1, 0).unwrap();
        assert!(matches!(
            kappa_apply(1, &t, ContractionScale::Plain),
            Err(Error::Bidegree(_))
        ));
    }

    #[test]
    fn act_matches_vector_action_on_degree_one() {
        let n = 3;
        let s = &SpinElem::basis(n, &[1, 2]) + &SpinElem::basis(n, &[3]);
        for sym in 0..2 * n {
            let a = ExtVElem::monomial(n, IndexSet::EMPTY.insert(sym), rat(1));
            assert_eq!(
                act_on_spinor(&a, &s).unwrap(),
                clifford_act(&symbol_vector(n, sym), &s).unwrap()
            );
        }
    }

    #[test]
    fn wedge_pairing_is_determinant() {
        let n = 2;
        // <e1 ∧ e2, f1 ∧ f2> = det [[1, 0], [0, 1]]
        let a = ExtVElem::ef(n, &[1, 2], &[]);
        let b = ExtVElem::ef(n, &[], &[1, 2]);
        assert_eq!(wedge_pairing(&a, &b), rat(1));
        // <e1 ∧ f1, e1 ∧ f1> = det [[0, 1], [1, 0]] = -1
        let c = ExtVElem::ef(n, &[1], &[1]);
        assert_eq!(wedge_pairing(&c, &c), rat(-1));
    }
}
