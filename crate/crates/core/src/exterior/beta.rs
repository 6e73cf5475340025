//! The pairing `β(u, v) = u f α(v)` and the purity test built on it.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::extv::{ef_bits, ExtVElem};
use super::index_set::IndexSet;
use super::spin::{check_rank, reversal_sign, Parity, SpinElem};
use crate::error::{Error, Result};
use crate::exact::{lcm_denominators, Rational};

const LOCAL_TABLE: [[&[(u8, i8)]; 4]; 4] = [
    [&[(0, 1)], &[(1, 1)], &[(2, 1)], &[(3, 1)]],
    [&[(1, 1)], &[], &[(3, 1), (0, 1)], &[(1, -1)]],
    [&[(2, 1)], &[(0, 1), (3, -1)], &[], &[(2, 1)]],
    [&[(3, 1)], &[(1, 1)], &[(2, -1)], &[(0, 1)]],
];

#[inline]
fn odd_mask(rank: usize, m: u64) -> u64 {
    let mask = (1u64 << rank) - 1;
    (m & mask) ^ (m >> rank & mask)
}

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
    1 - 2 * (inv % 2) as i64
}

/// Clifford product of several ∧V monomials, computed index by index.
/// `emit(monomial, sign)` is called once per term of the result.
pub fn mul_monomial_chain(rank: usize, factors: &[u64], mut emit: impl FnMut(u64, i64)) {
    let mut sign = 1i64;
    let mut prev_odd = 0u64;
    for (idx, &m) in factors.iter().enumerate() {
        sign *= grouping_sign(rank, m);
        let odd = odd_mask(rank, m);
        if idx > 0 {
            let mut rest = odd;
            let mut count = 0u32;
            while rest != 0 {
                let k = rest.trailing_zeros();
                rest &= rest - 1;
                count += (prev_odd >> (k + 1)).count_ones();
            }
            if count % 2 == 1 {
                sign = -sign;
            }
        }
        prev_odd ^= odd;
    }
    chain_expand(rank, factors, 0, 0, sign, &mut emit);
}

fn chain_expand(
    rank: usize,
    factors: &[u64],
    k: usize,
    acc: u64,
    sign: i64,
    emit: &mut impl FnMut(u64, i64),
) {
    if k == rank {
        emit(acc, sign * grouping_sign(rank, acc));
        return;
    }
    // local products at index k, as (factor, sign); at most 2^(len-1) entries
    let mut cur: Vec<(u8, i8)> = vec![(0, 1)];
    for &m in factors {
        let l = ((m >> k & 1) | ((m >> (rank + k) & 1) << 1)) as usize;
        let mut next = Vec::with_capacity(cur.len() * 2);
        for &(x, s) in &cur {
            for &(y, t) in LOCAL_TABLE[x as usize][l] {
                next.push((y, s * t));
            }
        }
        cur = next;
        if cur.is_empty() {
            return;
        }
    }
    for (factor, s) in cur {
        let bits = ((factor as u64) & 1) << k | ((factor as u64) >> 1) << (rank + k);
        chain_expand(rank, factors, k + 1, acc | bits, sign * s as i64, emit);
    }
}

/// Coefficient of one monomial in the Clifford product of several monomials.
pub fn chain_coefficient(rank: usize, factors: &[u64], target: u64) -> i64 {
    let mut sign = 1i64;
    let mut prev_odd = 0u64;
    for (idx, &m) in factors.iter().enumerate() {
        sign *= grouping_sign(rank, m);
        let odd = odd_mask(rank, m);
        if idx > 0 {
            let mut rest = odd;
            let mut count = 0u32;
            while rest != 0 {
                let k = rest.trailing_zeros();
                rest &= rest - 1;
                count += (prev_odd >> (k + 1)).count_ones();
            }
            if count % 2 == 1 {
                sign = -sign;
            }
        }
        prev_odd ^= odd;
    }
    let mut total = sign * grouping_sign(rank, target);
    let mut cur: Vec<(u8, i64)> = Vec::with_capacity(8);
    let mut next: Vec<(u8, i64)> = Vec::with_capacity(8);
    for k in 0..rank {
        let want = ((target >> k & 1) | ((target >> (rank + k) & 1) << 1)) as u8;
        cur.clear();
        cur.push((0, 1));
        for &m in factors {
            let l = ((m >> k & 1) | ((m >> (rank + k) & 1) << 1)) as usize;
            next.clear();
            for &(x, s) in &cur {
                for &(y, t) in LOCAL_TABLE[x as usize][l] {
                    next.push((y, s * t as i64));
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        let c: i64 = cur.iter().filter(|(y, _)| *y == want).map(|(_, s)| s).sum();
        if c == 0 {
            return 0;
        }
        total *= c;
    }
    total
}

/// Coefficient of `target` in `β(e_I, e_J)`.
pub fn beta_coefficient(rank: usize, i: IndexSet, j: IndexSet, target: IndexSet) -> i64 {
    let vac = ef_bits(rank, IndexSet::EMPTY, IndexSet::full(rank)).bits();
    reversal_sign(j.len()) * chain_coefficient(rank, &[i.bits(), vac, j.bits()], target.bits())
}

/// `β(e_I, e_J)` as a list of signed ∧V monomials with integer coefficients.
pub fn beta_monomials(rank: usize, i: IndexSet, j: IndexSet) -> Vec<(u64, i64)> {
    let vac = ef_bits(rank, IndexSet::EMPTY, IndexSet::full(rank)).bits();
    let rev = reversal_sign(j.len());
    let mut acc: HashMap<u64, i64> = HashMap::new();
    mul_monomial_chain(rank, &[i.bits(), vac, j.bits()], |m, s| {
        *acc.entry(m).or_insert(0) += s * rev
    });
    let mut out: Vec<(u64, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    out.sort_unstable();
    out
}

fn check_homogeneous(s: &SpinElem) -> Result<()> {
    if s.parity() == Parity::Mixed {
        Err(Error::ParityMismatch("spinor has mixed parity".into()))
    } else {
        Ok(())
    }
}

/// `β(u, v) = u · f · α(v)` in ∧V coordinates, `f = f_1 ⋯ f_n`.
pub fn beta(u: &SpinElem, v: &SpinElem) -> Result<ExtVElem> {
    check_rank(u.rank(), v.rank())?;
    check_homogeneous(u)?;
    check_homogeneous(v)?;
    let n = u.rank();
    let mut out = ExtVElem::zero(n);
    for (i, x) in u.terms() {
        for (j, y) in v.terms() {
            let c = x * y;
            for (m, s) in beta_monomials(n, *i, *j) {
                out.add_term(IndexSet(m), &c * Rational::from_integer(BigInt::from(s)));
            }
        }
    }
    Ok(out)
}

/// Degree-`k` component of `β(u, v)`.
pub fn beta_k(u: &SpinElem, v: &SpinElem, k: usize) -> Result<ExtVElem> {
    Ok(beta(u, v)?.degree_part(k))
}

/// Primitive integer multiple of a spinor's coefficients.
fn integral_coeffs(u: &SpinElem) -> Vec<(IndexSet, BigInt)> {
    let l = lcm_denominators(u.terms().values());
    u.terms()
        .iter()
        .map(|(k, v)| (*k, (v * Rational::from_integer(l.clone())).to_integer()))
        .collect()
}

/// Pure iff every component `β_k(u, u)` with `k < n` vanishes.
pub fn is_pure(u: &SpinElem) -> Result<bool> {
    if u.is_zero() {
        return Err(Error::ZeroInput);
    }
    check_homogeneous(u)?;
    Ok(lowest_pairing_defect(u).is_none())
}

/// Lowest degree `k < n` with `β_k(u, u) ≠ 0`, read off the full expansion.
pub fn lowest_beta_defect(u: &SpinElem) -> Option<usize> {
    low_beta_square(u).iter().map(|(m, _)| m.len()).min()
}

/// Lowest length `k < n` of a Clifford monomial `X = e_I f_J` with
/// `⟨u, X·u⟩ ≠ 0`.
///
/// Monomials of length at most `k` span the same filtration step as
/// `∧^{≤k} V`, and `β(u, u)` pairs with `X` through `⟨u, X·u⟩`, so this agrees
/// with [`lowest_beta_defect`]. It avoids Clifford products entirely: each
/// pair of support monomials `(S, T)` only meets the `X` sending `e_S` to
/// `e_{T^c}`, and those are indexed by subsets of `S \ T`.
pub fn lowest_pairing_defect(u: &SpinElem) -> Option<usize> {
    let n = u.rank();
    let coeffs = integral_coeffs(u);
    let small: Option<Vec<i128>> = coeffs.iter().map(|(_, c)| c.to_i128()).collect();
    if let Some(small) = small {
        let mut acc: HashMap<u64, i128> = HashMap::new();
        let mut overflow = false;
        pairing_terms(n, &coeffs, |key, sign, s, t| {
            let term = small[s]
                .checked_mul(small[t])
                .and_then(|v| v.checked_mul(sign as i128));
            let e = acc.entry(key).or_insert(0);
            match term.and_then(|v| e.checked_add(v)) {
                Some(v) => *e = v,
                None => overflow = true,
            }
        });
        if !overflow {
            return acc
                .into_iter()
                .filter(|(_, v)| *v != 0)
                .map(|(k, _)| k.count_ones() as usize)
                .min();
        }
    }
    let mut acc: HashMap<u64, BigInt> = HashMap::new();
    pairing_terms(n, &coeffs, |key, sign, s, t| {
        let term = &coeffs[s].1 * &coeffs[t].1;
        let e = acc.entry(key).or_insert_with(BigInt::zero);
        if sign > 0 {
            *e += term;
        } else {
            *e -= term;
        }
    });
    acc.into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, _)| k.count_ones() as usize)
        .min()
}

/// Calls `emit(key, sign, s, t)` for every contribution of
/// `u_S u_T` to `⟨u, X·u⟩` with `X` of length below `n`.
///
/// `key` packs `I` in the low `n` bits and `J` above. Powers of 2 from the
/// contractions depend only on `X` and are dropped.
fn pairing_terms(
    n: usize,
    coeffs: &[(IndexSet, BigInt)],
    mut emit: impl FnMut(u64, i64, usize, usize),
) {
    let full = (1u64 << n) - 1;
    for (s_idx, (s, _)) in coeffs.iter().enumerate() {
        let s = s.bits();
        for (t_idx, (t, _)) in coeffs.iter().enumerate() {
            let t = t.bits();
            let tc = full & !t;
            let base_i = tc & !s;
            let base_j = s & t;
            let base_len = (base_i.count_ones() + base_j.count_ones()) as usize;
            if base_len >= n {
                continue;
            }
            let pair_sign =
                reversal_sign(t.count_ones() as usize) * super::index_set::merge_sign(t, tc);
            let free = s & !t;
            let mut sub = free;
            loop {
                if base_len + 2 * (sub.count_ones() as usize) < n {
                    let (i, j) = (base_i | sub, base_j | sub);
                    let mut cur = s;
                    let mut sign = pair_sign;
                    for (bits, wedge) in [(j, false), (i, true)] {
                        let mut rest = bits;
                        while rest != 0 {
                            let b = 63 - rest.leading_zeros() as usize;
                            rest &= !(1u64 << b);
                            sign *= super::index_set::sign_below(cur, b);
                            cur ^= 1u64 << b;
                            debug_assert_eq!(cur & (1u64 << b) != 0, wedge);
                        }
                    }
                    debug_assert_eq!(cur, tc);
                    emit(i | (j << n), sign, s_idx, t_idx);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & free;
            }
        }
    }
}

/// Nonzero coefficients of `β_k(u, u)` for `k < n`, keyed by monomial.
pub fn low_beta_square(u: &SpinElem) -> Vec<(IndexSet, BigInt)> {
    let n = u.rank();
    let coeffs = integral_coeffs(u);
    let max_bits = coeffs.iter().map(|(_, c)| c.bits()).max().unwrap_or(0);
    let len_bits = 64 - (coeffs.len() as u64).leading_zeros() as u64;
    let bound = 2 * max_bits + n as u64 + 2 * len_bits + 2;
    let vac = ef_bits(n, IndexSet::EMPTY, IndexSet::full(n)).bits();

    if bound < 120 && n <= 10 {
        let small: Vec<(IndexSet, i128)> = coeffs
            .iter()
            .map(|(k, c)| (*k, c.to_i128().unwrap()))
            .collect();
        let mut acc = vec![0i128; 1usize << (2 * n)];
        for (i, x) in &small {
            for (j, y) in &small {
                let c = x * y * reversal_sign(j.len()) as i128;
                mul_monomial_chain(n, &[i.bits(), vac, j.bits()], |m, s| {
                    if (m.count_ones() as usize) < n {
                        acc[m as usize] += c * s as i128;
                    }
                });
            }
        }
        return acc
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(m, c)| (IndexSet(m as u64), BigInt::from(*c)))
            .collect();
    }

    let mut acc: HashMap<u64, BigInt> = HashMap::new();
    for (i, x) in &coeffs {
        for (j, y) in &coeffs {
            let c = x * y * BigInt::from(reversal_sign(j.len()));
            mul_monomial_chain(n, &[i.bits(), vac, j.bits()], |m, s| {
                if (m.count_ones() as usize) < n {
                    let e = acc.entry(m).or_insert_with(BigInt::zero);
                    if s > 0 {
                        *e += &c;
                    } else {
                        *e -= &c;
                    }
                }
            });
        }
    }
    let mut out: Vec<(IndexSet, BigInt)> = acc
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(m, c)| (IndexSet(m), c))
        .collect();
    out.sort_by_key(|(m, _)| *m);
    out
}

/// Largest power of two dividing `c` (`None` for zero).
pub fn two_adic_valuation(c: &BigInt) -> Option<u64> {
    if c.is_zero() {
        None
    } else {
        c.abs().trailing_zeros()
    }
}

#[cfg(test)]
mod tests {
    use super::super::extv::{clifford_mul, ExtVElem};
    use super::super::spin::{alpha, build_u_g};
    use super::*;
    use crate::exact::rat;

    fn beta_by_recursion(u: &SpinElem, v: &SpinElem) -> ExtVElem {
        let n = u.rank();
        let left = clifford_mul(&ExtVElem::from_spin(u), &ExtVElem::vacuum(n)).unwrap();
        clifford_mul(&left, &ExtVElem::from_spin(&alpha(v))).unwrap()
    }

    #[test]
    fn pairing_defect_matches_beta_defect() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut seen = std::collections::BTreeSet::new();
        for n in 1..=7usize {
            for trial in 0..12 {
                let parity = trial % 2;
                let support: Vec<IndexSet> = (0u64..1 << n)
                    .map(IndexSet)
                    .filter(|s| s.len() % 2 == parity)
                    .collect();
                // sparse supports reach every defect degree, dense ones are generic
                let keep = 1 + trial % support.len().min(4);
                let mut u = SpinElem::zero(n);
                for _ in 0..keep {
                    let s = support[rng.gen_range(0..support.len())];
                    u.add_term(s, rat(rng.gen_range(1..=3)));
                }
                if trial == 11 {
                    u = SpinElem::from_terms(
                        n,
                        support.iter().map(|s| (*s, rat(rng.gen_range(-2..=2)))),
                    );
                }
                if u.is_zero() {
                    continue;
                }
                let defect = lowest_pairing_defect(&u);
                assert_eq!(defect, lowest_beta_defect(&u), "n={n} {u:?}");
                seen.insert(defect);
            }
        }
        assert!(seen.len() >= 4, "{seen:?}");
        let u = build_u_g(3);
        assert_eq!(lowest_pairing_defect(&u), None);
    }

    #[test]
    fn chain_matches_recursive_product_on_pairs() {
        for n in 1..=4usize {
            for i in 0..(1u64 << n) {
                for j in 0..(1u64 << n) {
                    let u = SpinElem::monomial(n, IndexSet(i), rat(1));
                    let v = SpinElem::monomial(n, IndexSet(j), rat(1));
                    assert_eq!(
                        beta(&u, &v).unwrap(),
                        beta_by_recursion(&u, &v),
                        "n={n} I={i:b} J={j:b}"
                    );
                }
            }
        }
    }

    #[test]
    fn single_coefficients_match_full_products() {
        for n in 1..=4usize {
            for i in 0..(1u64 << n) {
                for j in 0..(1u64 << n) {
                    let full: HashMap<u64, i64> = beta_monomials(n, IndexSet(i), IndexSet(j))
                        .into_iter()
                        .collect();
                    for t in 0..(1u64 << (2 * n)) {
                        let got = beta_coefficient(n, IndexSet(i), IndexSet(j), IndexSet(t));
                        assert_eq!(got, full.get(&t).copied().unwrap_or(0));
                    }
                }
            }
        }
    }

    #[test]
    fn beta_of_pure_is_top_form() {
        for n in 1..=5 {
            let u = SpinElem::top(n);
            let b = beta(&u, &u).unwrap();
            assert_eq!(b.degrees(), vec![n]);
            assert_eq!(b.len(), 1);
        }
    }

    #[test]
    fn purity_examples() {
        for m in 1..=4 {
            assert!(is_pure(&build_u_g(m)).unwrap());
        }
        let n = 4;
        let secant = &SpinElem::top(n) + &SpinElem::one(n);
        assert!(!is_pure(&secant).unwrap());
        assert!(is_pure(&SpinElem::basis(5, &[1, 3, 4])).unwrap());
        assert!(matches!(is_pure(&SpinElem::zero(3)), Err(Error::ZeroInput)));
        let mixed = &SpinElem::one(3) + &SpinElem::basis(3, &[1]);
        assert!(matches!(is_pure(&mixed), Err(Error::ParityMismatch(_))));
    }

    #[test]
    fn scalar_part_detects_secant_point() {
        // u_E + u_F at n = 4 is not pure, and the obstruction sits in degree 0
        let n = 4;
        let u = &SpinElem::top(n) + &SpinElem::one(n);
        let low = low_beta_square(&u);
        assert!(low.iter().any(|(m, _)| m.is_empty()));
    }
}
