use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinsec::exact::{rat, Rational};
use spinsec::exterior::beta::{beta_monomials, two_adic_valuation};
use spinsec::exterior::extv::{clifford_mul_fast, ef_bits};
use spinsec::exterior::index_set::all_subsets;
use spinsec::exterior::spin::u_g_frame;
use spinsec::exterior::tensor::{
    act_on_spinor, alpha_path, psi, split_and_act, tensor_pairing, wedge_of_vectors, wedge_pairing,
    AlphaStep, RightSlot,
};
use spinsec::exterior::*;

fn random_spinor(rng: &mut ChaCha8Rng, n: usize, parity: usize) -> SpinElem {
    let terms = (0u64..1 << n)
        .map(IndexSet)
        .filter(|s| s.len() % 2 == parity)
        .map(|s| (s, rat(rng.gen_range(-3..=3))));
    SpinElem::from_terms(n, terms)
}

fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> VVector {
    let mut v = VVector::zero(n);
    for i in 0..n {
        v = v.add(&VVector::e(n, i + 1).scale(&rat(rng.gen_range(-2..=2))));
        v = v.add(&VVector::f(n, i + 1).scale(&rat(rng.gen_range(-2..=2))));
    }
    v
}

fn random_extv(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> ExtVElem {
    ExtVElem::from_terms(
        n,
        (0..terms).map(|_| {
            (
                IndexSet(rng.gen_range(0..1u64 << (2 * n))),
                rat(rng.gen_range(-2..=2)),
            )
        }),
    )
}

fn u_e(n: usize) -> SpinElem {
    SpinElem::top(n)
}

fn u_f(n: usize) -> SpinElem {
    SpinElem::one(n)
}

/// `Σ_{|K|=k} e_K ∧ f_K`.
fn diagonal_form(n: usize, k: usize) -> ExtVElem {
    ExtVElem::from_terms(
        n,
        IndexSet::subsets_of_size(n, k)
            .into_iter()
            .map(|s| (ef_bits(n, s, s), rat(1))),
    )
}

#[test]
fn module_relation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 1..=5 {
        for _ in 0..20 {
            let (v, w) = (random_vector(&mut rng, n), random_vector(&mut rng, n));
            let parity = rng.gen_range(0..2);
            let s = random_spinor(&mut rng, n, parity);
            let lhs = &clifford_act(&v, &clifford_act(&w, &s).unwrap()).unwrap()
                + &clifford_act(&w, &clifford_act(&v, &s).unwrap()).unwrap();
            assert_eq!(lhs, s.scale(&(rat(2) * v.q(&w))));
        }
    }
}

#[test]
fn clifford_vectors_square_to_the_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for n in 1..=4 {
        for _ in 0..10 {
            let v = random_vector(&mut rng, n);
            let mut x = ExtVElem::zero(n);
            for (col, c) in v.as_row() {
                x.add_term(IndexSet::EMPTY.insert(col), c);
            }
            let sq = clifford_mul(&x, &x).unwrap();
            assert_eq!(sq, ExtVElem::one(n).scale(&v.q(&v)));
        }
    }
}

#[test]
fn wedge_algebra_acts_through_the_vacuum() {
    // on the vacuum 1 the action of an e-monomial is the monomial itself
    for n in 1..=5 {
        for s in (0u64..1 << n).map(IndexSet) {
            let x = ExtVElem::monomial(n, ef_bits(n, s, IndexSet::EMPTY), rat(1));
            assert_eq!(
                act_on_spinor(&x, &u_f(n)).unwrap(),
                SpinElem::monomial(n, s, rat(1))
            );
        }
    }
}

#[test]
fn beta_symmetry_and_vanishing() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 2..=6 {
        for parity in 0..2 {
            let u = random_spinor(&mut rng, n, parity);
            let v = random_spinor(&mut rng, n, parity);
            let uv = beta(&u, &v).unwrap();
            let vu = beta(&v, &u).unwrap();
            for k in 0..=2 * n {
                let a = uv.degree_part(k);
                let b = vu.degree_part(k);
                if (n + k) % 2 == 1 {
                    assert!(a.is_zero(), "n={n} k={k}");
                } else if (n as i64 - k as i64).rem_euclid(4) == 0 {
                    assert_eq!(a, b, "n={n} k={k}");
                } else {
                    assert_eq!(a, b.scale(&rat(-1)), "n={n} k={k}");
                }
            }
        }
    }
}

/// `y ∧ β_{2n-k} = ε <y, β_k> vol`, where `ε` depends only on `k` and on the
/// parity of the arguments.
#[test]
fn beta_duality_between_complementary_degrees() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for n in 2..=5 {
        let vol = IndexSet::full(2 * n);
        for k in (0..=n).filter(|k| (n + k) % 2 == 0) {
            for parity in 0..2 {
                let mut eps: Option<Rational> = None;
                for _ in 0..3 {
                    let u = random_spinor(&mut rng, n, parity);
                    let v = random_spinor(&mut rng, n, parity);
                    let b = beta(&u, &v).unwrap();
                    let low = b.degree_part(k);
                    let high = b.degree_part(2 * n - k);
                    for y in IndexSet::subsets_of_size(2 * n, k) {
                        let y = ExtVElem::monomial(n, y, rat(1));
                        let top = y.wedge(&high).unwrap().coeff(vol);
                        let pair = wedge_pairing(&y, &low);
                        if pair.is_zero() {
                            assert!(top.is_zero());
                            continue;
                        }
                        let r = top / pair;
                        assert!(r == rat(1) || r == rat(-1));
                        assert_eq!(*eps.get_or_insert(r.clone()), r, "n={n} k={k}");
                    }
                }
            }
        }
    }
}

#[test]
fn beta_of_the_two_coordinate_spinors() {
    for n in [2usize, 4, 6, 8] {
        let b = beta(&u_e(n), &u_f(n)).unwrap();
        for k in 0..=n {
            let part = b.degree_part(2 * k);
            let c = part.ratio_to(&diagonal_form(n, k)).expect("proportional");
            assert!(!c.is_zero(), "n={n} k={k}");
        }
        for d in (1..2 * n).step_by(2) {
            assert!(b.degree_part(d).is_zero());
        }
    }
}

#[test]
fn beta_of_monomials_support_and_valuation() {
    for n in 1..=5usize {
        let full = IndexSet::full(n);
        for i in all_subsets(full) {
            for j in all_subsets(full) {
                let got = beta_monomials(n, i, j);
                let common = i.intersection(j);
                let outside = full.difference(i.union(j));
                let mut support: Vec<IndexSet> = all_subsets(i.symmetric_difference(j))
                    .map(|r| ef_bits(n, common.union(r), outside.union(r)))
                    .collect();
                support.sort();
                let mut seen: Vec<IndexSet> = got.iter().map(|(m, _)| IndexSet(*m)).collect();
                seen.sort();
                assert_eq!(seen, support, "n={n} I={i:?} J={j:?}");
                for (_, c) in got {
                    assert_eq!(c.abs(), 1 << common.len());
                    assert_eq!(
                        two_adic_valuation(&num_bigint::BigInt::from(c)),
                        Some(common.len() as u64)
                    );
                }
            }
        }
    }
}

#[test]
fn clifford_product_against_definition() {
    // e_I ∧ f_J coordinates: a·b computed two ways
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for n in 1..=4 {
        for _ in 0..20 {
            let a = random_extv(&mut rng, n, 3);
            let b = random_extv(&mut rng, n, 3);
            assert_eq!(
                clifford_mul(&a, &b).unwrap(),
                clifford_mul_fast(&a, &b).unwrap()
            );
        }
    }
}

#[test]
fn alpha_steps_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for n in 2..=5 {
        for p in 2..=2 * n {
            for q in 0..2 * n {
                let mut x = spinsec::exterior::TensorElem::zero(n, RightSlot::ExtV);
                for _ in 0..4 {
                    let left = IndexSet::subsets_of_size(2 * n, p);
                    let right = IndexSet::subsets_of_size(2 * n, q);
                    let a = left[rng.gen_range(0..left.len())];
                    let b = right[rng.gen_range(0..right.len())];
                    x.add_term(a, b, rat(rng.gen_range(1..=3)));
                }
                let wc = alpha_path(&x, &[AlphaStep::Wedge, AlphaStep::Contract]).unwrap();
                let cw = alpha_path(&x, &[AlphaStep::Contract, AlphaStep::Wedge]).unwrap();
                assert_eq!(wc, cw, "n={n} p={p} q={q}");
            }
        }
    }
}

#[test]
fn alpha_single_step_examples() {
    let n = 2;
    let v = ef_bits(n, IndexSet::from_one_based(&[1]), IndexSet::EMPTY);
    let w = ef_bits(n, IndexSet::EMPTY, IndexSet::from_one_based(&[1]));
    let mut x = spinsec::exterior::TensorElem::zero(n, RightSlot::ExtV);
    x.add_term(v, IndexSet::EMPTY, rat(1));
    let moved = alpha_pq_rs(&x, 0, 1).unwrap();
    assert_eq!(moved.terms().get(&(IndexSet::EMPTY, v)), Some(&rat(1)));
    let mut y = spinsec::exterior::TensorElem::zero(n, RightSlot::ExtV);
    y.add_term(v, w, rat(1));
    let contracted = alpha_pq_rs(&y, 0, 0).unwrap();
    assert_eq!(
        contracted.terms().get(&(IndexSet::EMPTY, IndexSet::EMPTY)),
        Some(&rat(1))
    );
    assert_eq!(contracted.len(), 1);
}

/// `κ_i(ψ_{2i+1,2j-1}) = (-1)^{m-i-j} c (m-i-j+1) ψ_{2i,2j-2} + 2j ψ_{2i,2j}`
/// where `c` is the contraction factor.
#[test]
fn kappa_identity() {
    for n in [4usize, 6, 8] {
        let m = n / 2;
        for scale in [ContractionScale::Plain, ContractionScale::Doubled] {
            for i in 0..m {
                for j in 1..=m - i {
                    let x = psi(n, 2 * i + 1, 2 * j - 1).unwrap();
                    let got = kappa_apply(i, &x, scale).unwrap();
                    let low = psi_tensor(n, i, j - 1).unwrap();
                    let high = if i + j <= m {
                        psi_tensor(n, i, j).unwrap()
                    } else {
                        TensorElem::zero(n, RightSlot::Spin)
                    };
                    let sign = if (m - i - j) % 2 == 0 { 1 } else { -1 };
                    let a = rat(sign * scale.factor() * (m - i - j + 1) as i64);
                    let b = rat(2 * j as i64);
                    assert_eq!(
                        got,
                        &low.scale(&a) + &high.scale(&b),
                        "n={n} i={i} j={j} {scale:?}"
                    );
                }
            }
        }
    }
}

#[test]
fn kappa_is_linear() {
    let n = 6;
    let x = psi(n, 3, 1).unwrap();
    let y = psi(n, 3, 3).unwrap();
    let lhs = kappa_apply(1, &(&x + &y.scale(&rat(5))), ContractionScale::Plain).unwrap();
    let rhs = &kappa_apply(1, &x, ContractionScale::Plain).unwrap()
        + &kappa_apply(1, &y, ContractionScale::Plain)
            .unwrap()
            .scale(&rat(5));
    assert_eq!(lhs, rhs);
}

#[test]
fn psi_term_counts() {
    let n = 6;
    let m = n / 2;
    for i in 0..=m {
        for j in 0..=m - i {
            let t = psi_tensor(n, i, j).unwrap();
            // choose J of size 2j, then I of size m-i-j from the rest
            let want = spinsec::binomial(n as i64, 2 * j as i64)
                * spinsec::binomial((n - 2 * j) as i64, (m - i - j) as i64);
            assert_eq!(num_bigint::BigInt::from(t.len()), want);
            assert_eq!(t.bidegree(), Some((n - 2 * i, 2 * j)));
        }
    }
    let t = psi_tensor(4, 2, 0).unwrap();
    assert_eq!(t.len(), 1);
    assert_eq!(
        t.terms().get(&(IndexSet::EMPTY, IndexSet::EMPTY)),
        Some(&rat(1))
    );
}

/// Splitting `β_d(u_E, u_F)` and acting on `u_F` stays inside the span of the
/// `ψ_{2i,2j'}`, with a nonzero coefficient on the top one.
#[test]
fn route_lands_in_psi_span() {
    for n in [4usize, 6, 8] {
        let m = n / 2;
        let b = beta(&u_e(n), &u_f(n)).unwrap();
        for i in 0..=m {
            for j in 0..=m - i {
                let d = n - 2 * i + 2 * j;
                let image = split_and_act(&b.degree_part(d), n - 2 * i, &u_f(n)).unwrap();
                let mut residual = image.clone();
                let mut top = Rational::zero();
                for jj in 0..=j {
                    let p = psi_tensor(n, i, jj).unwrap();
                    let (key, val) = p.terms().iter().next().unwrap();
                    let c = residual
                        .terms()
                        .get(key)
                        .cloned()
                        .unwrap_or_else(Rational::zero)
                        / val;
                    if jj == j {
                        top = c.clone();
                    }
                    residual = &residual + &p.scale(&-c);
                }
                assert!(residual.is_zero(), "n={n} i={i} j={j}");
                assert!(!top.is_zero(), "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn psi_pairs_nontrivially_with_an_isotropic_frame() {
    for n in [4usize, 6, 8] {
        let m = n / 2;
        let frame = u_g_frame(m);
        let u_g = build_u_g(m);
        for i in 0..m {
            let target = psi_tensor(n, i, 0).unwrap();
            let k = n - 2 * i;
            let witness = (0u64..1 << n)
                .map(IndexSet)
                .filter(|s| s.len() == k)
                .find(|s| {
                    let g: Vec<VVector> = s.iter().map(|idx| frame[idx].clone()).collect();
                    !tensor_pairing(&target, &wedge_of_vectors(&g), &u_g)
                        .unwrap()
                        .is_zero()
                });
            assert!(witness.is_some(), "n={n} i={i}");
        }
    }
}

#[test]
fn spin_pairing_is_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let n = 4;
    let mut generators = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a < b {
                generators.push(ef_bits(
                    n,
                    IndexSet::from_zero_based([a, b]),
                    IndexSet::EMPTY,
                ));
                generators.push(ef_bits(
                    n,
                    IndexSet::EMPTY,
                    IndexSet::from_zero_based([a, b]),
                ));
            }
            generators.push(ef_bits(
                n,
                IndexSet::from_zero_based([a]),
                IndexSet::from_zero_based([b]),
            ));
        }
    }
    for parity in 0..2 {
        for _ in 0..5 {
            let u = random_spinor(&mut rng, n, parity);
            let v = random_spinor(&mut rng, n, (parity + n) % 2);
            for g in &generators {
                let x = ExtVElem::monomial(n, *g, rat(1));
                let xu = act_on_spinor(&x, &u).unwrap();
                let xv = act_on_spinor(&x, &v).unwrap();
                let total = spin_pairing(&xu, &v).unwrap() + spin_pairing(&u, &xv).unwrap();
                assert!(total.is_zero(), "{g:?}");
            }
        }
    }
}

#[test]
fn pairing_with_the_isotropic_spinor() {
    for m in 1..=4 {
        let u_g = build_u_g(m);
        assert!(spin_pairing(&u_f(2 * m), &u_g).unwrap().is_one());
        assert!(is_pure(&u_g).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clifford_product_is_associative(n in 1usize..=6, a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let mask = (1u64 << (2 * n)) - 1;
        let x = ExtVElem::monomial(n, IndexSet(a & mask), rat(1));
        let y = ExtVElem::monomial(n, IndexSet(b & mask), rat(1));
        let z = ExtVElem::monomial(n, IndexSet(c & mask), rat(1));
        let left = clifford_mul(&clifford_mul(&x, &y).unwrap(), &z).unwrap();
        let right = clifford_mul(&x, &clifford_mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn coordinate_spinors_are_pure(n in 1usize..=8, bits in any::<u64>()) {
        let s = IndexSet(bits & ((1u64 << n) - 1));
        prop_assert!(is_pure(&SpinElem::monomial(n, s, rat(1))).unwrap());
    }
}
