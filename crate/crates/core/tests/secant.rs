use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use spinsec::secant::audit::{
    corollary_c_audit, derived_c_series, identity_coefficient, identity_lhs, identity_rhs,
    printed_c_series,
};
use spinsec::secant::cubic::{
    cubic_ideal_formula, s3_dimension, s3_formula, tangent_kernel3_formula,
};
use spinsec::secant::fixtures::{printed_e_table, printed_i4_table};
use spinsec::secant::freudenthal::{
    cgr_audit, grassmannian_diagonal, grassmannian_rule_corrected, grassmannian_rule_printed,
    GrassmannianCubes,
};
use spinsec::secant::quartic::{
    cubic_products, induction_witness, s4_decomposition, tangent_kernel4_formula,
};
use spinsec::secant::*;
use spinsec::weyl::{tensor_minuscule, Decomposition, Family, RootDatum, Weight};
use spinsec::{binomial, IntPoly, IntegerSeries};

fn d(n: usize) -> RootDatum {
    RootDatum::new(Family::D, n).unwrap()
}

fn omega(datum: &RootDatum, k: usize) -> Weight {
    if k == 0 {
        Weight::zero(datum.dim())
    } else {
        datum.fundamental(k)
    }
}

fn listing(datum: &RootDatum, items: &[(&[usize], i64)]) -> Decomposition {
    let mut out = Decomposition::new(datum);
    for (ks, m) in items {
        let w = ks.iter().fold(Weight::zero(datum.dim()), |acc, &k| {
            acc.add(&omega(datum, k))
        });
        out.add(w, *m);
    }
    out
}

fn sym_dim(base: BigInt, k: u32) -> BigInt {
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc *= &base + i;
    }
    acc / (1..=k).product::<u32>()
}

#[test]
fn cubes_match_closed_formula() {
    for n in 4..=12 {
        let s3 = s3_halfspin(n).unwrap();
        assert_eq!(
            s3,
            s3_formula(n)
                .unwrap()
                .with_label(format!("S3 halfspin D{n}")),
            "n={n}"
        );
        assert_eq!(s3.dim(), s3_dimension(n));
        assert_eq!(s3.dim(), sym_dim(BigInt::from(1) << (n - 1), 3));
    }
}

#[test]
fn cube_examples() {
    let n9 = d(9);
    let expected = listing(
        &n9,
        &[
            (&[9, 9, 9], 1),
            (&[9, 5], 1),
            (&[9, 3], 1),
            (&[9, 1], 1),
            (&[8], 1),
        ],
    );
    assert_eq!(s3_halfspin(9).unwrap().components(), expected.components());
    let n7 = d(7);
    let expected = listing(&n7, &[(&[7, 7, 7], 1), (&[7, 3], 1), (&[7, 1], 1)]);
    assert_eq!(s3_halfspin(7).unwrap().components(), expected.components());
}

#[test]
fn cube_multiplicities_stable_in_rank() {
    // a_j read off at rank n is the multiplicity of ω_n+ω_{n-2j}
    let mut a = IntegerSeries::cubic_a();
    for n in 6..=12 {
        let s3 = s3_halfspin(n).unwrap();
        let datum = d(n);
        for j in (1..).take_while(|j| 2 * j < n) {
            let w = datum.fundamental(n).add(&datum.fundamental(n - 2 * j));
            assert_eq!(s3.get(&w), a.coeff(j as i64), "n={n} j={j}");
        }
    }
}

#[test]
fn cubic_ideal_examples() {
    for n in 4..=8 {
        assert!(cubic_ideal(n).unwrap().is_empty(), "n={n}");
    }
    let n9 = d(9);
    assert_eq!(
        cubic_ideal(9).unwrap().components(),
        listing(&n9, &[(&[8], 1)]).components()
    );
    let n10 = d(10);
    assert_eq!(
        cubic_ideal(10).unwrap().components(),
        listing(&n10, &[(&[9, 1], 1)]).components()
    );
    for n in 4..=14 {
        let ideal = cubic_ideal(n).unwrap();
        assert_eq!(
            ideal.components(),
            cubic_ideal_formula(n).unwrap().components(),
            "n={n}"
        );
        assert_eq!(ideal.is_empty(), n <= 8);
        let sigma = sigma_ring_deg3(n).unwrap();
        assert!(s3_halfspin(n).unwrap().minus(&sigma).unwrap().is_genuine());
    }
}

#[test]
fn cubic_tangent_kernel() {
    for n in 6..=14 {
        let k = tangent_kernel(n, 3).unwrap();
        let datum = d(n);
        assert_eq!(
            k.components(),
            tangent_kernel3_formula(&datum).components(),
            "n={n}"
        );
        for w in k.components().keys() {
            let p = (1..=n / 2).find(|p| datum.fundamental(n).add(&omega(&datum, n - 2 * p)) == *w);
            assert!(matches!(p, Some(p) if p > 3));
        }
    }
    assert_eq!(
        tangent_kernel(9, 3).unwrap().components(),
        listing(&d(9), &[(&[9, 1], 1)]).components()
    );
}

#[test]
fn quartic_tangent_kernel() {
    for n in 8..=16 {
        let k = tangent_kernel(n, 4).unwrap();
        let formula = tangent_kernel4_formula(n).to_decomposition().unwrap();
        assert_eq!(k.components(), formula.components(), "n={n}");
    }
    let k = tangent_kernel(14, 4).unwrap();
    assert_eq!(k.get(&theta_weight(14, 0, 10)), 1);
    for w in k.components().keys() {
        match theta_slot(w) {
            Some(ThetaSlot::E(i, j)) if i > 0 => {
                assert!(i % 2 == 0 && j % 2 == 0 && (i + j) / 2 > 4)
            }
            Some(ThetaSlot::E(0, j)) => assert!(j / 2 > 4),
            other => panic!("unexpected slot {other:?}"),
        }
    }
}

#[test]
fn quartic_dimensions_and_parity() {
    for n in 4..=12 {
        let dec = s4_decomposition(n).unwrap();
        assert_eq!(dec.dim(), sym_dim(BigInt::from(1) << (n - 1), 4), "n={n}");
        let t = QuarticTable::from_decomposition(&dec).unwrap();
        t.check_invariants().unwrap();
        assert_eq!(t.e(0, 0), 1);
    }
}

#[test]
fn quartic_first_row_and_diagonal() {
    let t = s4_halfspin(10).unwrap();
    let row: Vec<u64> = (0..=10).map(|j| t.e(0, j)).collect();
    assert_eq!(row, vec![1, 0, 0, 0, 1, 0, 1, 0, 2, 0, 1]);
    let diag: Vec<i64> = (0..=10).map(|i| t.e(i, i) as i64).collect();
    let series = IntegerSeries::new(
        IntPoly::one().add(&IntPoly::monomial(9)),
        IntPoly::one_minus_power(4).mul(&IntPoly::one_minus_power(6)),
    )
    .unwrap()
    .coeffs(11);
    assert_eq!(diag, series);
}

#[test]
fn printed_tables_on_computable_triangles() {
    let e = printed_e_table();
    let i4 = printed_i4_table();
    for n in 7..=16 {
        let t = s4_halfspin(n).unwrap();
        assert_eq!(e.diff(&t.e, n), vec![], "e-table n={n}");
        let it = QuarticTable::from_decomposition(&quartic_ideal(n).unwrap()).unwrap();
        assert_eq!(i4.diff(&it.e, n), vec![], "I4-table n={n}");
    }
}

#[test]
fn printed_tables_in_full() {
    let t = s4_halfspin(20).unwrap();
    assert_eq!(printed_e_table().diff(&t.e, 20), vec![]);
    assert_eq!(t.f, BTreeMap::from([(16, 1), (20, 1)]));
    assert!(quartic_recursion_check(&t).ok());
    let it = QuarticTable::from_decomposition(&quartic_ideal(20).unwrap()).unwrap();
    assert_eq!(printed_i4_table().diff(&it.e, 20), vec![]);
    assert_eq!(it.f, t.f);
}

#[test]
fn quartic_entries_stable_in_rank() {
    let tables: Vec<QuarticTable> = (7..=14).map(|n| s4_halfspin(n).unwrap()).collect();
    for pair in tables.windows(2) {
        let (small, big) = (&pair[0], &pair[1]);
        for j in 0..=small.rank {
            for i in 0..=j {
                assert_eq!(small.e(i, j), big.e(i, j), "({i},{j}) at n={}", small.rank);
            }
            assert_eq!(small.f(j), big.f(j));
        }
    }
    for t in &tables {
        assert!((1..=10.min(t.rank)).all(|i| t.f(i) == 0));
    }
    assert_eq!(s4_halfspin(16).unwrap().f, BTreeMap::from([(16, 1)]));
}

#[test]
fn recursions_hold_and_detect_mutation() {
    for n in 7..=16 {
        let t = s4_halfspin(n).unwrap();
        let report = quartic_recursion_check(&t);
        assert!(report.ok(), "n={n}: {:?}", report.violations);
        assert!(report.checked > 0);
    }
    let mut t = s4_halfspin(9).unwrap();
    t.set_e(2, 4, t.e(2, 4) + 1);
    let report = quartic_recursion_check(&t);
    assert!(!report.ok());
    assert!(report.violations.iter().any(|v| v.i <= 3 && v.j <= 5));
    let mut t = s4_halfspin(9).unwrap();
    t.set_e(4, 4, t.e(4, 4) + 1);
    assert!(quartic_recursion_check(&t)
        .violations
        .iter()
        .any(|v| v.family == spinsec::secant::quartic::RecursionFamily::Diagonal));
}

#[test]
fn quartic_ideal_examples() {
    let n7 = d(7);
    assert_eq!(
        quartic_ideal(7).unwrap().components(),
        listing(&n7, &[(&[4], 1)]).components()
    );
    let n8 = d(8);
    assert_eq!(
        quartic_ideal(8).unwrap().components(),
        listing(&n8, &[(&[1, 5], 1), (&[8, 8], 1)]).components()
    );
    // ω₈ in the printed list is ∧⁸V = θ₈ = ω₈+ω₉
    let n9 = d(9);
    assert_eq!(
        quartic_ideal(9).unwrap().components(),
        listing(
            &n9,
            &[
                (&[2, 6], 1),
                (&[1, 9, 9], 1),
                (&[8, 9], 1),
                (&[6], 1),
                (&[4], 1),
                (&[], 1)
            ]
        )
        .components()
    );
}

#[test]
fn quartic_ideal_odd_part_and_containment() {
    for n in 7..=14 {
        let s4 = s4_halfspin(n).unwrap();
        let sigma = sigma_ring_deg4(n).unwrap();
        assert!(s4
            .to_decomposition()
            .unwrap()
            .minus(&sigma)
            .unwrap()
            .is_genuine());
        let ideal = QuarticTable::from_decomposition(&quartic_ideal(n).unwrap()).unwrap();
        assert_eq!(ideal.f, s4.f, "n={n}");
    }
}

#[test]
fn quartics_not_induced_by_cubics() {
    for n in 10..=13 {
        let w = not_induced_by_cubics(n).unwrap();
        assert!(w.holds, "n={n}: {w:?}");
        assert_eq!((w.ideal_mult, w.product_mult), (1, 0));
        let control = induction_witness(n, &theta_weight(n, 1, 9)).unwrap();
        assert!(!control.holds);
        assert!(control.product_mult >= 1);
    }
    assert!(not_induced_by_cubics(9).is_err());
}

#[test]
fn cubic_products_never_reach_target() {
    for n in 10..=14 {
        let datum = d(n);
        let target = theta_weight(n, 3, 7);
        for p in (4..).take_while(|p| 2 * p < n) {
            let a = datum.fundamental(n).add(&omega(&datum, n - 2 * p));
            let b = datum.fundamental(n - 1).add(&omega(&datum, n - 2 * p - 1));
            for w in [a, b] {
                assert_eq!(
                    tensor_minuscule(&datum, &w, true).unwrap().get(&target),
                    0,
                    "n={n} p={p}"
                );
            }
        }
        assert_eq!(cubic_products(n).unwrap().get(&target), 0);
    }
}

#[test]
fn theorem5_all_families() {
    for family in [
        FreudenthalFamily::C,
        FreudenthalFamily::A,
        FreudenthalFamily::D,
    ] {
        for n in 2..=5 {
            let r = theorem5_check(family, n).unwrap();
            assert!(r.ok(), "{family}{n}: {r:?}");
        }
    }
    let c3 = theorem5_check(FreudenthalFamily::C, 3).unwrap();
    assert_eq!(c3.module_dim, "14");
    assert_eq!(c3.multiplicities, vec![1, 0, 1, 1]);
    let d4 = theorem5_check(FreudenthalFamily::D, 2).unwrap();
    assert_eq!(d4.group, "D4");
    assert!(d4.square_ok);
}

#[test]
fn grassmannian_diagonal_against_oracle() {
    let cubes = GrassmannianCubes::compute(7).unwrap();
    assert!(cubes.stray.is_empty());
    for a in 0..=7 {
        assert_eq!(cubes.m(a, a), grassmannian_diagonal(a), "a={a}");
    }
    assert_eq!(grassmannian_m(0, 0, Some(3)).unwrap(), 1);
    let diag: Vec<i64> = (0..=12).map(grassmannian_diagonal).collect();
    assert_eq!(diag, vec![1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3]);
}

#[test]
fn grassmannian_printed_rule_audit() {
    assert_eq!(grassmannian_m(0, 0, None).unwrap(), 0);
    let audit = cgr_audit(7).unwrap();
    assert!(audit.diagonal_mismatches.is_empty());
    assert!(audit.corrected_mismatches.is_empty());
    let cells: Vec<(usize, usize)> = audit.mismatches.iter().map(|m| (m.a, m.b)).collect();
    for cell in [(0, 0), (2, 2), (1, 2), (2, 1)] {
        assert!(cells.contains(&cell), "{cell:?}");
    }
    let six = GrassmannianCubes::compute(6).unwrap();
    let seven = GrassmannianCubes::compute(7).unwrap();
    for (&(a, b), &m) in &six.table {
        if a.max(b) < 6 {
            assert_eq!(seven.m(a, b), m, "({a},{b})");
        }
    }
    assert!(grassmannian_m(3, 7, None).is_err());
    assert_eq!(
        grassmannian_rule_printed(3, 3),
        grassmannian_rule_corrected(3, 3)
    );
}

#[test]
fn corollary_c_identity_audit() {
    assert_eq!(identity_lhs(2), BigInt::from(2));
    let audit = corollary_c_audit(14).unwrap();
    assert!(audit.derived_is_unique());
    assert!(audit.printed_failures.contains(&3));
    let row3 = &audit.rows[1];
    assert_eq!((row3.lhs.as_str(), row3.printed_rhs.as_str()), ("5", "11"));
    assert!(corollary_c_audit(1).is_err());
}

#[test]
fn c_series_from_cube_decomposition() {
    // independent route: read c_p off S³Δ₊ and check the dimension identity
    for n in 4..=12 {
        let datum = d(n);
        let s3 = s3_halfspin(n).unwrap();
        let mut c = vec![0i64; n + 1];
        for (w, &m) in s3.components() {
            let p = if *w == datum.fundamental(n).scale(3) {
                0
            } else {
                (0..=n)
                    .find(|&p| {
                        (p % 2 == 0 && *w == datum.fundamental(n).add(&omega(&datum, n - p)))
                            || (p % 2 == 1
                                && *w == datum.fundamental(n - 1).add(&omega(&datum, n - p)))
                    })
                    .expect("component of the expected shape")
            };
            c[p] += m;
        }
        assert_eq!(identity_rhs(n, &c), identity_lhs(n), "n={n}");
        let mut derived = derived_c_series();
        for (p, cp) in c.iter().enumerate().take(n + 1) {
            assert_eq!(*cp, derived.coeff(p as i64), "n={n} p={p}");
        }
        let manual: BigInt = (0..=n)
            .map(|p| identity_coefficient(n, p) * BigInt::from(c[p]))
            .sum();
        assert_eq!(manual * (BigInt::from(1) << (n - 1)), s3.dim());
    }
    let mut printed = printed_c_series();
    let rhs: BigInt = (0..=3)
        .map(|p| identity_coefficient(3, p) * BigInt::from(printed.coeff(p as i64)))
        .sum();
    assert_eq!(rhs, BigInt::from(11));
    assert_eq!(binomial(6, 3) - binomial(6, 2), BigInt::from(5));
}

proptest! {
    #[test]
    fn theta_slot_round_trip(n in 4usize..14, i in 0usize..14, j in 0usize..14) {
        let (i, j) = (i.min(j).min(n), j.max(i).min(n));
        let w = theta_weight(n, i, j);
        prop_assert_eq!(theta_slot(&w), Some(ThetaSlot::E(i, j)));
        prop_assert!(d(n).is_dominant(&w));
    }

    #[test]
    fn mirror_slots(n in 4usize..14, i in 1usize..14) {
        let i = i.min(n);
        let w = mirror_theta_weight(n, i);
        prop_assert!(d(n).is_dominant(&w));
        prop_assert_eq!(theta_slot(&w), Some(ThetaSlot::F(i)));
    }
}
