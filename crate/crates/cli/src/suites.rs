//! Verification suites for `spinsec verify`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use spinsec::exact::{rat, ratio};
use spinsec::exterior::beta::{lowest_beta_defect, lowest_pairing_defect};
use spinsec::exterior::extv::ef_bits;
use spinsec::exterior::tensor::{psi, RightSlot};
use spinsec::exterior::{
    beta, is_pure, kappa_apply, psi_tensor, ContractionScale, ExtVElem, IndexSet, SpinElem,
    TensorElem,
};
use spinsec::pfaffian::{all_relations, evaluate_with, spinor_of_skew, SkewMatrix, SubPfaffians};
use spinsec::secant::cubic::{cubic_ideal_formula, s3_formula};
use spinsec::secant::fixtures::{printed_e_table, printed_i4_table};
use spinsec::secant::freudenthal::{grassmannian_diagonal, FreudenthalFamily, GrassmannianCubes};
use spinsec::secant::*;
use spinsec::toy::{
    decompose_gl2, localization_char, localization_char_fixed_points, q_formula, sigma_ring_gl2,
    symmetric_power_char,
};
use spinsec::weyl::{Decomposition, Family, RootDatum};

use crate::registry::{SuiteContext, VerifySuite};
use crate::report::{timed, Check, Timed};

pub fn all() -> Vec<Box<dyn VerifySuite>> {
    vec![
        Box::new(Pfaffian),
        Box::new(Beta),
        Box::new(Cubics),
        Box::new(Quartics),
        Box::new(Freudenthal),
        Box::new(Toy),
    ]
}

/// Ranks `lo..=min(max, cap)`, plus a skipped check when the request exceeds `cap`.
fn ranks(suite: &str, ctx: &SuiteContext, lo: usize, cap: usize) -> (Vec<usize>, Vec<Timed>) {
    let top = ctx.max_rank.min(cap);
    let mut skipped = Vec::new();
    if ctx.max_rank > cap {
        skipped.push(timed(|| {
            Check::skipped(
                format!("{suite}/ranks-above-{cap}"),
                format!(
                    "ranks {}..={} exceed the suite cap {cap}",
                    cap + 1,
                    ctx.max_rank
                ),
            )
        }));
    }
    if top < lo {
        skipped.push(timed(|| {
            Check::skipped(
                format!("{suite}/ranks"),
                format!("needs max-rank ≥ {lo}, got {}", ctx.max_rank),
            )
        }));
    }
    ((lo..=top).collect(), skipped)
}

/// Independent stream per rank, so the rank range does not shift the draws.
fn rng_for(seed: u64, suite: u64, n: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (suite << 56) ^ ((n as u64) << 40))
}

struct Pfaffian;

impl VerifySuite for Pfaffian {
    fn name(&self) -> &'static str {
        "pfaffian"
    }

    fn summary(&self) -> &'static str {
        "Pfaffian spinors are pure and satisfy every quadratic relation"
    }

    fn run(&self, ctx: &SuiteContext) -> Vec<Timed> {
        let (ns, mut out) = ranks("pfaffian", ctx, 2, 10);
        for n in ns {
            let mut rng = rng_for(ctx.seed, 1, n);
            let mats: Vec<SkewMatrix> = (0..ctx.trials)
                .map(|_| {
                    SkewMatrix::from_upper(n, |_, _| {
                        ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5))
                    })
                })
                .collect();
            out.push(timed(|| {
                let impure: spinsec::Result<Vec<bool>> = mats
                    .par_iter()
                    .map(|a| is_pure(&spinor_of_skew(a)).map(|p| !p))
                    .collect();
                Check::from_result(
                    format!("pfaffian/pure/n={n}"),
                    impure.map(|v| {
                        let bad = v.iter().filter(|b| **b).count();
                        (bad == 0, format!("{bad} of {} spinors impure", v.len()))
                    }),
                )
            }));
            out.push(timed(|| {
                let rels = all_relations(n);
                let nonzero: usize = mats
                    .par_iter()
                    .map(|a| {
                        let table = SubPfaffians::build(a);
                        rels.iter()
                            .filter(|r| !evaluate_with(r, &table).is_zero())
                            .count()
                    })
                    .sum();
                Check::new(
                    format!("pfaffian/relations/n={n}"),
                    nonzero == 0 && (n < 4 || !rels.is_empty()),
                    format!(
                        "{} relations on {} matrices, {nonzero} nonzero values",
                        rels.len(),
                        mats.len()
                    ),
                )
            }));
        }
        out
    }
}

struct Beta;

fn diagonal_form(n: usize, k: usize) -> ExtVElem {
    ExtVElem::from_terms(
        n,
        IndexSet::subsets_of_size(n, k)
            .into_iter()
            .map(|s| (ef_bits(n, s, s), rat(1))),
    )
}

/// Mismatches of `κ_i(ψ_{2i+1,2j-1}) = a ψ_{2i,2j-2} + b ψ_{2i,2j}` over the
/// admissible `(i, j)` at rank `n`, for the coefficient rule `form(m, i, j, c)`.
fn kappa_failures(
    n: usize,
    scale: ContractionScale,
    form: impl Fn(usize, usize, usize, i64) -> (i64, i64),
) -> spinsec::Result<(usize, usize)> {
    let m = n / 2;
    let (mut checked, mut failed) = (0, 0);
    for i in 0..m {
        for j in 1..=m - i {
            let got = kappa_apply(i, &psi(n, 2 * i + 1, 2 * j - 1)?, scale)?;
            let low = psi_tensor(n, i, j - 1)?;
            let high = if i + j <= m {
                psi_tensor(n, i, j)?
            } else {
                TensorElem::zero(n, RightSlot::Spin)
            };
            let (a, b) = form(m, i, j, scale.factor());
            checked += 1;
            if got != &low.scale(&rat(a)) + &high.scale(&rat(b)) {
                failed += 1;
            }
        }
    }
    Ok((checked, failed))
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl VerifySuite for Beta {
    fn name(&self) -> &'static str {
        "beta"
    }

    fn summary(&self) -> &'static str {
        "β of the coordinate spinors, purity test against its oracle, κ relations"
    }

    fn run(&self, ctx: &SuiteContext) -> Vec<Timed> {
        let (ns, mut out) = ranks("beta", ctx, 1, 10);
        for &n in ns.iter().filter(|n| *n % 2 == 0) {
            out.push(timed(|| {
                let r = beta(&SpinElem::top(n), &SpinElem::one(n)).map(|b| {
                    let even = (0..=n).all(|k| {
                        b.degree_part(2 * k)
                            .ratio_to(&diagonal_form(n, k))
                            .is_some_and(|c| !c.is_zero())
                    });
                    let odd = (1..2 * n).step_by(2).all(|d| b.degree_part(d).is_zero());
                    (
                        even && odd,
                        format!("β_2k ∝ Σ e_K∧f_K for k ≤ {n}: {even}; odd parts zero: {odd}"),
                    )
                });
                Check::from_result(format!("beta/coordinate-pair/n={n}"), r)
            }));
        }
        for &n in ns.iter().filter(|n| **n <= 7) {
            let mut rng = rng_for(ctx.seed, 2, n);
            let spinors: Vec<SpinElem> = (0..ctx.trials)
                .map(|t| {
                    let parity = t % 2;
                    let support: Vec<IndexSet> = (0u64..1 << n)
                        .map(IndexSet)
                        .filter(|s| s.len() % 2 == parity)
                        .collect();
                    let mut u = SpinElem::zero(n);
                    while u.is_zero() {
                        for _ in 0..1 + t % 4 {
                            let s = support[rng.gen_range(0..support.len())];
                            u.add_term(s, rat(rng.gen_range(1..=3)));
                        }
                    }
                    u
                })
                .collect();
            out.push(timed(|| {
                let bad = spinors
                    .par_iter()
                    .filter(|u| lowest_pairing_defect(u) != lowest_beta_defect(u))
                    .count();
                Check::new(
                    format!("beta/purity-oracle/n={n}"),
                    bad == 0,
                    format!(
                        "{bad} of {} spinors disagree between the two purity routes",
                        spinors.len()
                    ),
                )
            }));
        }
        for n in [4usize, 6, 8].into_iter().filter(|n| *n <= ctx.max_rank) {
            out.push(timed(|| {
                let derived = |m: usize, i: usize, j: usize, c: i64| {
                    (sign(m - i - j) * c * (m - i - j + 1) as i64, 2 * j as i64)
                };
                let stated = |m: usize, i: usize, j: usize, _: i64| {
                    (sign(m - i - j) * (2 * j as i64 - 1), (m + i + 1 - j) as i64)
                };
                let r = (|| {
                    let (checked, plain) = kappa_failures(n, ContractionScale::Plain, derived)?;
                    let (_, doubled) = kappa_failures(n, ContractionScale::Doubled, derived)?;
                    let (_, stated) = kappa_failures(n, ContractionScale::Plain, stated)?;
                    Ok((
                        plain == 0 && doubled == 0,
                        format!(
                            "derived constants hold on {checked} pairs under both contraction scales; \
                             the (2j−1, m+i−j+1) constants disagree on {stated}"
                        ),
                    ))
                })();
                Check::from_result(format!("beta/kappa/n={n}"), r)
            }));
        }
        out
    }
}

struct Cubics;

impl VerifySuite for Cubics {
    fn name(&self) -> &'static str {
        "cubics"
    }

    fn summary(&self) -> &'static str {
        "S³Δ₊ against the a_j series and the cubic ideal I₃"
    }

    fn run(&self, ctx: &SuiteContext) -> Vec<Timed> {
        let (ns, mut out) = ranks("cubics", ctx, 4, S3_MAX_RANK);
        let results: Vec<Vec<Timed>> = ns
            .par_iter()
            .map(|&n| {
                let formula = timed(|| {
                    let r = (|| {
                        let got = s3_halfspin(n)?;
                        let want = s3_formula(n)?;
                        Ok((
                            got.components() == want.components(),
                            format!("{} components", got.len()),
                        ))
                    })();
                    Check::from_result(format!("cubics/formula/n={n}"), r)
                });
                let ideal = timed(|| {
                    let r = (|| {
                        let got = cubic_ideal(n)?;
                        let datum = RootDatum::new(Family::D, n)?;
                        let mut ok = got.components() == cubic_ideal_formula(n)?.components()
                            && got.is_empty() == (n <= 8);
                        if n == 9 {
                            ok &= got.components()
                                == Decomposition::irreducible(&datum, &datum.fundamental(8))
                                    .components();
                        }
                        Ok((ok, format!("I3 = {}", got.format())))
                    })();
                    Check::from_result(format!("cubics/ideal/n={n}"), r)
                });
                vec![formula, ideal]
            })
            .collect();
        out.extend(results.into_iter().flatten());
        out
    }
}

struct Quartics;

impl VerifySuite for Quartics {
    fn name(&self) -> &'static str {
        "quartics"
    }

    fn summary(&self) -> &'static str {
        "S⁴Δ₊ and I₄ against the shipped tables, and the table recursions"
    }

    fn run(&self, ctx: &SuiteContext) -> Vec<Timed> {
        let (ns, mut out) = ranks("quartics", ctx, 7, ctx.quartic_max_rank);
        let e_fixture = printed_e_table();
        let i4_fixture = printed_i4_table();
        for n in ns {
            let table = s4_halfspin(n);
            out.push(timed(|| {
                let r = table.clone().map(|t| {
                    let diff = e_fixture.diff(&t.e, n);
                    let f_zero = (1..=n.min(10)).all(|i| t.f(i) == 0);
                    (
                        diff.is_empty() && f_zero,
                        format!(
                            "{} cells differ from the fixture; f_i = 0 for i ≤ 10: {f_zero}",
                            diff.len()
                        ),
                    )
                });
                Check::from_result(format!("quartics/table/n={n}"), r)
            }));
            out.push(timed(|| {
                let r = table.clone().map(|t| {
                    let rep = quartic_recursion_check(&t);
                    (
                        rep.ok(),
                        format!(
                            "{} relations, {} violated",
                            rep.checked,
                            rep.violations.len()
                        ),
                    )
                });
                Check::from_result(format!("quartics/recursions/n={n}"), r)
            }));
            out.push(timed(|| {
                let r = (|| {
                    let t = QuarticTable::from_decomposition(&quartic_ideal(n)?)?;
                    let diff = i4_fixture.diff(&t.e, n);
                    Ok((
                        diff.is_empty(),
                        format!("{} cells differ from the fixture", diff.len()),
                    ))
                })();
                Check::from_result(format!("quartics/ideal/n={n}"), r)
            }));
        }
        out
    }
}

struct Freudenthal;

impl VerifySuite for Freudenthal {
    fn name(&self) -> &'static str {
        "freudenthal"
    }

    fn summary(&self) -> &'static str {
        "squares, products and cubes along the C, A, D Freudenthal series"
    }

    fn run(&self, ctx: &SuiteContext) -> Vec<Timed> {
        let (ns, mut out) = ranks("freudenthal", ctx, 2, 5);
        let jobs: Vec<(FreudenthalFamily, usize)> = [
            FreudenthalFamily::C,
            FreudenthalFamily::A,
            FreudenthalFamily::D,
        ]
        .into_iter()
        .flat_map(|f| ns.iter().map(move |&n| (f, n)))
        .collect();
        let results: Vec<Timed> = jobs
            .par_iter()
            .map(|&(family, n)| {
                timed(|| {
                    let r = theorem5_check(family, n).map(|rep| {
                        (
                            rep.ok(),
                            format!(
                                "{}: square {}, product {}, series {}",
                                rep.group, rep.square_ok, rep.product_ok, rep.series_ok
                            ),
                        )
                    });
                    Check::from_result(format!("freudenthal/{family}/n={n}"), r)
                })
            })
            .collect();
        out.extend(results);
        for n in ns.into_iter().filter(|n| *n >= 3) {
            out.push(timed(|| {
                let r = GrassmannianCubes::compute(n).map(|c| {
                    let bad: Vec<usize> = (0..=n)
                        .filter(|&a| c.m(a, a) != grassmannian_diagonal(a))
                        .collect();
                    (
                        bad.is_empty(),
                        format!("diagonal closed form fails at {bad:?}"),
                    )
                });
                Check::from_result(format!("freudenthal/grassmannian-diagonal/n={n}"), r)
            }));
        }
        out
    }
}

struct Toy;

fn toy_rank(n: usize) -> spinsec::Result<(bool, String)> {
    let mut mismatches = 0;
    let mut routes = true;
    let mut induction = true;
    for k in 0..=6 {
        let chr = localization_char(n, k)?;
        routes &= chr == localization_char_fixed_points(n, k)?;
        let d = sigma_ring_gl2(n, k)?;
        let q = |s: i64| {
            if s < 0 {
                0
            } else {
                d.multiplicity((n * k) as i64 - 2 * s, s)
            }
        };
        for s in 0..=(n * k / 2) {
            if q(s as i64) != q_formula(n, s, k)? {
                mismatches += 1;
            }
        }
        let ni = n as i64;
        for s in 1..=(n * k / 2) as i64 {
            let rhs = i64::from(s <= k as i64)
                - i64::from((s - 1) % ni == 0)
                - i64::from((s - 2).rem_euclid(ni) == 0);
            induction &= q(s) - q(s - 2) == rhs;
        }
    }
    Ok((
        mismatches == 0 && routes && induction,
        format!("q-formula mismatches {mismatches}; localization routes agree: {routes}; induction: {induction}"),
    ))
}

impl VerifySuite for Toy {
    fn name(&self) -> &'static str {
        "toy"
    }

    fn summary(&self) -> &'static str {
        "GL₂ characters of the secant variety of the rational normal curve"
    }

    fn run(&self, ctx: &SuiteContext) -> Vec<Timed> {
        let (ns, mut out) = ranks("toy", ctx, 2, 8);
        let results: Vec<Timed> = ns
            .par_iter()
            .map(|&n| timed(|| Check::from_result(format!("toy/q-formula/n={n}"), toy_rank(n))))
            .collect();
        out.extend(results);
        if ctx.max_rank >= 3 {
            out.push(timed(|| {
                let r = (|| {
                    for k in 0..=6 {
                        if decompose_gl2(&symmetric_power_char(3, k))? != sigma_ring_gl2(3, k)? {
                            return Ok((false, format!("differs at k={k}")));
                        }
                    }
                    Ok((
                        true,
                        "S^k(S³U) equals the secant ring for k ≤ 6".to_string(),
                    ))
                })();
                Check::from_result("toy/plethysm/n=3", r)
            }));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    fn ctx(max_rank: usize) -> SuiteContext {
        SuiteContext {
            max_rank,
            trials: 4,
            seed: 1,
            quartic_max_rank: 10,
        }
    }

    #[test]
    fn small_runs_pass() {
        for suite in all() {
            let checks = suite.run(&ctx(5));
            assert!(!checks.is_empty(), "{}", suite.name());
            for t in checks {
                assert_ne!(t.check.status, Status::Fail, "{:?}", t.check);
            }
        }
    }

    #[test]
    fn caps_produce_skips() {
        let checks = Toy.run(&ctx(9));
        assert!(checks
            .iter()
            .any(|t| t.check.status == Status::Skipped && t.check.name == "toy/ranks-above-8"));
        let checks = Quartics.run(&ctx(5));
        assert_eq!(checks.len(), 1);
        assert_eq!(checks[0].check.status, Status::Skipped);
    }
}
