//! Table generators for `spinsec table`.

use spinsec::secant::fixtures::{printed_e_table, printed_i4_table, TriangularTable};
use spinsec::secant::freudenthal::{
    cgr_audit, grassmannian_diagonal, grassmannian_rule_corrected, grassmannian_rule_printed,
};
use spinsec::secant::*;
use spinsec::weyl::RootDatum;
use spinsec::{Error, IntegerSeries};

use crate::config::Config;
use crate::registry::{DiffEntry, Table, TableGenerator};

pub fn all() -> Vec<Box<dyn TableGenerator>> {
    vec![
        Box::new(EQuartic),
        Box::new(IdealQuartic),
        Box::new(ASeries),
        Box::new(CAuditTable),
        Box::new(CgrAuditTable),
    ]
}

fn check_rank(rank: usize, min: usize, max: usize) -> spinsec::Result<()> {
    if (min..=max).contains(&rank) {
        Ok(())
    } else {
        Err(Error::RankOutOfRange { rank, min, max })
    }
}

/// Upper triangle `e_{i,j}`, `i ≤ j ≤ n`, then one row of `f_i`.
fn triangle(t: &QuarticTable) -> (Vec<String>, Vec<Vec<String>>) {
    let n = t.rank;
    let mut header = vec!["i\\j".to_string()];
    header.extend((0..=n).map(|j| j.to_string()));
    let mut rows: Vec<Vec<String>> = (0..=n)
        .map(|i| {
            let mut row = vec![i.to_string()];
            row.extend((0..=n).map(|j| {
                if j < i {
                    String::new()
                } else {
                    t.e(i, j).to_string()
                }
            }));
            row
        })
        .collect();
    let mut f = vec!["f".to_string(), String::new()];
    f.extend((1..=n).map(|i| t.f(i).to_string()));
    rows.push(f);
    (header, rows)
}

fn fixture_diff(fixture: &TriangularTable, t: &QuarticTable) -> Vec<DiffEntry> {
    fixture
        .diff(&t.e, t.rank)
        .into_iter()
        .map(|(i, j, printed, computed)| DiffEntry {
            cell: format!("e({i},{j})"),
            fixture: printed.to_string(),
            computed: computed.to_string(),
        })
        .collect()
}

struct EQuartic;

impl TableGenerator for EQuartic {
    fn name(&self) -> &'static str {
        "e-quartic"
    }

    fn summary(&self) -> &'static str {
        "multiplicities e_{i,j}, f_i of S⁴Δ₊"
    }

    fn default_rank(&self) -> usize {
        10
    }

    fn generate(&self, rank: usize, cfg: &Config) -> spinsec::Result<Table> {
        check_rank(rank, 4, cfg.quartic_max_rank)?;
        let t = s4_halfspin(rank)?;
        let (header, rows) = triangle(&t);
        let rec = quartic_recursion_check(&t);
        Ok(Table {
            title: format!("S4 of the half-spin module, D{rank}: e(i,j) = mult of θ(n-i)+θ(n-j)"),
            header,
            rows,
            diff: Some(fixture_diff(&printed_e_table(), &t)),
            notes: vec![format!(
                "recursions: {} checked, {} violated",
                rec.checked,
                rec.violations.len()
            )],
        })
    }
}

struct IdealQuartic;

impl TableGenerator for IdealQuartic {
    fn name(&self) -> &'static str {
        "i4"
    }

    fn summary(&self) -> &'static str {
        "the quartic part I₄ of the ideal of the secant variety"
    }

    fn default_rank(&self) -> usize {
        8
    }

    fn generate(&self, rank: usize, cfg: &Config) -> spinsec::Result<Table> {
        check_rank(rank, 4, cfg.quartic_max_rank)?;
        let ideal = quartic_ideal(rank)?;
        let t = QuarticTable::from_decomposition(&ideal)?;
        let (header, rows) = triangle(&t);
        Ok(Table {
            title: format!("I4 of the secant variety, D{rank}"),
            header,
            rows,
            diff: Some(fixture_diff(&printed_i4_table(), &t)),
            notes: vec![format!("I4 = {}", ideal.format())],
        })
    }
}

struct ASeries;

impl TableGenerator for ASeries {
    fn name(&self) -> &'static str {
        "a-series"
    }

    fn summary(&self) -> &'static str {
        "a_j from 1/((1-x²)(1-x³)) against multiplicities in S³Δ₊"
    }

    fn default_rank(&self) -> usize {
        12
    }

    fn generate(&self, rank: usize, _: &Config) -> spinsec::Result<Table> {
        let s3 = s3_halfspin(rank)?;
        let datum = s3.datum().clone();
        let omega = |k: usize| {
            if k == 0 {
                spinsec::weyl::Weight::zero(datum.dim())
            } else {
                datum.fundamental(k)
            }
        };
        let mut a = IntegerSeries::cubic_a();
        let mut rows = Vec::new();
        let mut diff = Vec::new();
        for j in 0..=rank / 2 {
            let even = if j == 0 {
                datum.fundamental(rank).scale(3)
            } else {
                datum.fundamental(rank).add(&omega(rank - 2 * j))
            };
            let mut row = vec![
                j.to_string(),
                a.coeff(j as i64).to_string(),
                s3.get(&even).to_string(),
            ];
            if a.coeff(j as i64) != s3.get(&even) {
                diff.push(DiffEntry {
                    cell: format!("even j={j}"),
                    fixture: a.coeff(j as i64).to_string(),
                    computed: s3.get(&even).to_string(),
                });
            }
            if 2 * j < rank {
                let odd = datum.fundamental(rank - 1).add(&omega(rank - 2 * j - 1));
                let want = a.coeff(j as i64 - 4);
                row.push(want.to_string());
                row.push(s3.get(&odd).to_string());
                if want != s3.get(&odd) {
                    diff.push(DiffEntry {
                        cell: format!("odd j={j}"),
                        fixture: want.to_string(),
                        computed: s3.get(&odd).to_string(),
                    });
                }
            } else {
                row.extend([String::new(), String::new()]);
            }
            rows.push(row);
        }
        Ok(Table {
            title: format!(
                "cubic series against S3 of the half-spin module, {}",
                datum.name()
            ),
            header: [
                "j",
                "a_j",
                "mult w_n+w_(n-2j)",
                "a_(j-4)",
                "mult w_(n-1)+w_(n-2j-1)",
            ]
            .map(String::from)
            .to_vec(),
            rows,
            diff: Some(diff),
            notes: vec![format!("S3 = {}", s3.format())],
        })
    }
}

struct CAuditTable;

impl TableGenerator for CAuditTable {
    fn name(&self) -> &'static str {
        "c-audit"
    }

    fn summary(&self) -> &'static str {
        "series c_p forced by the dimension identity, against the closed form on file"
    }

    fn default_rank(&self) -> usize {
        12
    }

    fn generate(&self, rank: usize, _: &Config) -> spinsec::Result<Table> {
        let audit = corollary_c_audit(rank)?;
        let rows = audit
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.n.to_string(),
                    r.lhs.clone(),
                    r.printed_rhs.clone(),
                    r.derived_rhs.clone(),
                ]
            })
            .collect();
        let diff = audit
            .rows
            .iter()
            .filter(|r| r.printed_rhs != r.lhs)
            .map(|r| DiffEntry {
                cell: format!("n={}", r.n),
                fixture: r.printed_rhs.clone(),
                computed: r.lhs.clone(),
            })
            .collect();
        let fmt = |c: &[i64]| c.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        Ok(Table {
            title: format!(
                "dimension identity for c_p, n = {}..{}",
                audit.n_min, audit.n_max
            ),
            header: [
                "n",
                "lhs",
                "rhs with (1+x^9)/((1-x^2)(1-x^3))",
                "rhs with derived c",
            ]
            .map(String::from)
            .to_vec(),
            rows,
            diff: Some(diff),
            notes: vec![
                format!(
                    "derived c = {} = (1+x^9)/((1-x^4)(1-x^6))",
                    fmt(&audit.derived)
                ),
                format!(
                    "nonnegative solutions on the range: {}",
                    audit.solutions.len()
                ),
                format!("derived series fails at {:?}", audit.derived_failures),
                format!("the series on file fails at {:?}", audit.printed_failures),
            ],
        })
    }
}

struct CgrAuditTable;

impl TableGenerator for CgrAuditTable {
    fn name(&self) -> &'static str {
        "cgr-audit"
    }

    fn summary(&self) -> &'static str {
        "m_(a,b) in S³ of ∧ⁿC²ⁿ against the floor/ceil rule on file"
    }

    fn default_rank(&self) -> usize {
        4
    }

    fn generate(&self, rank: usize, _: &Config) -> spinsec::Result<Table> {
        let audit = cgr_audit(rank)?;
        let cubes = spinsec::secant::freudenthal::GrassmannianCubes::compute(rank)?;
        let datum = RootDatum::new(spinsec::weyl::Family::A, 2 * rank - 1)?;
        let rows = cubes
            .table
            .iter()
            .map(|(&(a, b), &m)| {
                vec![
                    a.to_string(),
                    b.to_string(),
                    m.to_string(),
                    grassmannian_rule_printed(a, b).to_string(),
                    grassmannian_rule_corrected(a, b).to_string(),
                    if a == b {
                        grassmannian_diagonal(a).to_string()
                    } else {
                        String::new()
                    },
                ]
            })
            .collect();
        let diff = audit
            .mismatches
            .iter()
            .map(|m| DiffEntry {
                cell: format!("m({},{})", m.a, m.b),
                fixture: m.printed.to_string(),
                computed: m.oracle.to_string(),
            })
            .collect();
        Ok(Table {
            title: format!("cubes of the Grassmannian module, {}", datum.name()),
            header: [
                "a",
                "b",
                "oracle",
                "rule on file",
                "corrected rule",
                "diagonal form",
            ]
            .map(String::from)
            .to_vec(),
            rows,
            diff: Some(diff),
            notes: vec![
                format!("{} cells checked", audit.checked),
                format!(
                    "corrected rule mismatches: {:?}",
                    audit.corrected_mismatches
                ),
                format!(
                    "diagonal closed form mismatches: {:?}",
                    audit.diagonal_mismatches
                ),
            ],
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e_quartic_rank_ten_is_clean() {
        let t = EQuartic.generate(10, &Config::default()).unwrap();
        assert_eq!(t.diff.as_ref().map(Vec::len), Some(0));
        assert_eq!(t.rows[0][1..=11].join(","), "1,0,0,0,1,0,1,0,2,0,1");
        assert!(EQuartic.generate(11, &Config::default()).is_err());
    }

    #[test]
    fn audits_report_the_file_side() {
        let c = CAuditTable.generate(12, &Config::default()).unwrap();
        assert!(c
            .diff
            .unwrap()
            .iter()
            .any(|d| d.cell == "n=3" && d.fixture == "11" && d.computed == "5"));
        let g = CgrAuditTable.generate(3, &Config::default()).unwrap();
        assert!(!g.diff.unwrap().is_empty());
        let a = ASeries.generate(12, &Config::default()).unwrap();
        assert_eq!(a.diff.map(|d| d.len()), Some(0));
    }
}
