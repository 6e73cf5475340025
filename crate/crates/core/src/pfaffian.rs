//! Pfaffians, the Pfaffian parametrization of pure spinors, and quadratic
//! relations between sub-Pfaffians extracted from `β(u, u)`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{lcm_denominators, rat, Rational};
use crate::exterior::beta::beta_coefficient;
use crate::exterior::extv::{ef_bits, split_bits};
use crate::exterior::index_set::{all_subsets, IndexSet};
use crate::exterior::SpinElem;

/// Exact skew-symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewMatrix {
    n: usize,
    entries: Vec<Vec<Rational>>,
}

impl SkewMatrix {
    pub fn zeros(n: usize) -> Self {
        SkewMatrix {
            n,
            entries: vec![vec![Rational::zero(); n]; n],
        }
    }

    /// Build from the entries above the diagonal, `f(i, j)` for `i < j` (0-based).
    pub fn from_upper(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = f(i, j);
                m.entries[j][i] = -v.clone();
                m.entries[i][j] = v;
            }
        }
        m
    }

    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidArgument(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for j in 0..n {
                if row[j] != -entries[j][i].clone() {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({i},{j}) breaks skew symmetry"
                    )));
                }
            }
        }
        Ok(SkewMatrix { n, entries })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn scale(&self, c: &Rational) -> Self {
        SkewMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        }
    }
}

/// Table of every even-size principal sub-Pfaffian.
#[derive(Clone, Debug)]
pub struct SubPfaffians {
    n: usize,
    values: HashMap<IndexSet, Rational>,
    // dense numerators over one common denominator, indexed by subset bits,
    // present when every numerator fits in an i64
    small: Option<(Vec<i64>, BigInt)>,
}

impl SubPfaffians {
    /// First-row expansion, memoized layer by layer over subset size.
    pub fn build(a: &SkewMatrix) -> Self {
        let n = a.n;
        let mut values: HashMap<IndexSet, Rational> = HashMap::new();
        values.insert(IndexSet::EMPTY, Rational::one());
        for size in (2..=n).step_by(2) {
            for k in IndexSet::subsets_of_size(n, size) {
                let mut members = k.iter();
                let first = members.next().unwrap();
                let mut acc = Rational::zero();
                for (pos, j) in members.enumerate() {
                    let entry = a.get(first, j);
                    if entry.is_zero() {
                        continue;
                    }
                    let minor = &values[&k.remove(first).remove(j)];
                    let term = entry * minor;
                    // position of j inside k is pos + 1
                    if pos % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
                values.insert(k, acc);
            }
        }
        let small = Self::dense_small(n, &values);
        SubPfaffians { n, values, small }
    }

    fn dense_small(n: usize, values: &HashMap<IndexSet, Rational>) -> Option<(Vec<i64>, BigInt)> {
        if n > 24 {
            return None;
        }
        let denom = lcm_denominators(values.values());
        let mut dense = vec![0i64; 1usize << n];
        for (k, v) in values {
            dense[k.bits() as usize] = (v * Rational::from_integer(denom.clone()))
                .to_integer()
                .to_i64()?;
        }
        Some((dense, denom))
    }

    /// `Pf_K`; zero for odd `|K|`, one for `K = ∅`.
    pub fn get(&self, k: IndexSet) -> Rational {
        if k.len() % 2 == 1 {
            return Rational::zero();
        }
        self.values.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn size(&self) -> usize {
        self.n
    }
}

pub fn pfaffian(a: &SkewMatrix) -> Rational {
    if a.n % 2 == 1 {
        return Rational::zero();
    }
    sub_pfaffian(a, IndexSet::full(a.n))
}

/// Pfaffian of the principal submatrix on `k`.
pub fn sub_pfaffian(a: &SkewMatrix, k: IndexSet) -> Rational {
    if k.len() % 2 == 1 {
        return Rational::zero();
    }
    fn rec(a: &SkewMatrix, k: IndexSet, memo: &mut HashMap<IndexSet, Rational>) -> Rational {
        if k.is_empty() {
            return Rational::one();
        }
        if let Some(v) = memo.get(&k) {
            return v.clone();
        }
        let mut members = k.iter();
        let first = members.next().unwrap();
        let mut acc = Rational::zero();
        for (pos, j) in members.enumerate() {
            if a.get(first, j).is_zero() {
                continue;
            }
            let term = a.get(first, j) * rec(a, k.remove(first).remove(j), memo);
            if pos % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        memo.insert(k, acc.clone());
        acc
    }
    rec(a, k, &mut HashMap::new())
}

/// `Σ_{|K| even} Pf_K(u) e_{K^c}`; the coefficient of `e_1 ∧ .. ∧ e_n` is 1.
pub fn spinor_of_skew(a: &SkewMatrix) -> SpinElem {
    let n = a.n;
    let table = SubPfaffians::build(a);
    let mut s = SpinElem::zero(n);
    for (k, v) in &table.values {
        s.add_term(k.complement(n), v.clone());
    }
    s
}

/// A quadratic relation `Σ c Pf_{K1} Pf_{K2} = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PfaffianRelation {
    pub n: usize,
    /// Index common to both factors of every term.
    #[serde(rename = "S", with = "one_based")]
    pub s: IndexSet,
    #[serde(rename = "R", with = "one_based")]
    pub r: IndexSet,
    #[serde(rename = "T", with = "one_based")]
    pub t: IndexSet,
    /// Degree of the `β` component the relation was read from.
    pub degree: usize,
    pub terms: Vec<RelationTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTerm {
    #[serde(rename = "K1", with = "one_based")]
    pub k1: IndexSet,
    #[serde(rename = "K2", with = "one_based")]
    pub k2: IndexSet,
    #[serde(rename = "c")]
    pub coeff: i64,
}

mod one_based {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exterior::IndexSet;

    pub fn serialize<S: Serializer>(set: &IndexSet, ser: S) -> Result<S::Ok, S::Error> {
        set.to_one_based().serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<IndexSet, D::Error> {
        let v: Vec<usize> = Vec::deserialize(de)?;
        if v.iter().any(|&i| i == 0 || i > 64) {
            return Err(serde::de::Error::custom("indices must lie in 1..=64"));
        }
        Ok(IndexSet::from_one_based(&v))
    }
}

impl PfaffianRelation {
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The ∧V monomial whose `β(u,u)` coefficient gives the relation for `(S, R, T)`.
pub fn relation_monomial(n: usize, s: IndexSet, r: IndexSet, t: IndexSet) -> Result<IndexSet> {
    let full = IndexSet::full(n);
    if !s.union(r).union(t).is_subset(full)
        || !s.intersection(r).is_empty()
        || !s.intersection(t).is_empty()
        || !r.intersection(t).is_empty()
    {
        return Err(Error::InvalidArgument(
            "S, R, T must be disjoint subsets of 1..n".into(),
        ));
    }
    let common = s.union(r).union(t).complement(n);
    Ok(ef_bits(n, common.union(r), s.union(r)))
}

/// Reads off the coefficient of `monomial` in `β(u, u)` for the Pfaffian
/// spinor `u` of a symbolic skew matrix, as a bilinear form in sub-Pfaffians.
pub fn quadratic_relations(n: usize, monomial: IndexSet) -> Result<PfaffianRelation> {
    if n == 0 || n > 16 {
        return Err(Error::RankOutOfRange {
            rank: n,
            min: 1,
            max: 16,
        });
    }
    let k = monomial.len();
    if !monomial.is_subset(IndexSet::full(2 * n)) {
        return Err(Error::OutOfRange(format!("monomial outside rank {n}")));
    }
    if k >= n || (n - k) % 2 == 1 {
        return Err(Error::OutOfRange(format!(
            "degree {k} gives no equation at rank {n}"
        )));
    }
    let (a, b) = split_bits(n, monomial);
    let common = a.difference(b);
    let s = b.difference(a);
    let r = a.intersection(b);
    let t = a.union(b).complement(n);
    let free = r.union(t);

    let mut coeffs: BTreeMap<(IndexSet, IndexSet), i64> = BTreeMap::new();
    for d in all_subsets(free) {
        let i = common.union(d);
        let j = common.union(free.difference(d));
        if i.len() % 2 != n % 2 || j.len() % 2 != n % 2 {
            continue;
        }
        let c = beta_coefficient(n, i, j, monomial);
        if c == 0 {
            continue;
        }
        let (k1, k2) = (i.complement(n), j.complement(n));
        let key = if k1 <= k2 { (k1, k2) } else { (k2, k1) };
        *coeffs.entry(key).or_insert(0) += c;
    }
    coeffs.retain(|_, c| *c != 0);
    if coeffs.is_empty() {
        return Err(Error::TrivialRelation(format!(
            "S={:?} R={:?} T={:?} (|T|-|R| = {})",
            s,
            r,
            t,
            t.len() as i64 - r.len() as i64
        )));
    }
    let g = coeffs.values().fold(0i64, |acc, c| acc.gcd(c));
    let lead_sign = coeffs.values().next().map(|c| c.signum()).unwrap_or(1);
    let terms = coeffs
        .into_iter()
        .map(|((k1, k2), c)| RelationTerm {
            k1,
            k2,
            coeff: c / g * lead_sign,
        })
        .collect();
    Ok(PfaffianRelation {
        n,
        s,
        r,
        t,
        degree: k,
        terms,
    })
}

/// Relation for `(S, R, T)` given directly.
pub fn relation_for(n: usize, s: IndexSet, r: IndexSet, t: IndexSet) -> Result<PfaffianRelation> {
    quadratic_relations(n, relation_monomial(n, s, r, t)?)
}

/// Every nontrivial relation at rank `n`, one per `β` monomial of degree `< n`.
pub fn all_relations(n: usize) -> Vec<PfaffianRelation> {
    let mut out = Vec::new();
    for deg in (0..n).filter(|d| (n - d).is_multiple_of(2)) {
        for m in IndexSet::subsets_of_size(2 * n, deg) {
            if let Ok(rel) = quadratic_relations(n, m) {
                out.push(rel);
            }
        }
    }
    out
}

/// `Σ c Pf_{K1}(A) Pf_{K2}(A)`.
pub fn verify_relation(rel: &PfaffianRelation, a: &SkewMatrix) -> Result<Rational> {
    if a.size() != rel.n {
        return Err(Error::RankMismatch(rel.n, a.size()));
    }
    let table = SubPfaffians::build(a);
    Ok(evaluate_with(rel, &table))
}

pub fn evaluate_with(rel: &PfaffianRelation, table: &SubPfaffians) -> Rational {
    if let Some((dense, denom)) = &table.small {
        let at = |k: IndexSet| dense[k.bits() as usize];
        let exact = rel.terms.iter().try_fold(0i128, |acc, t| {
            let p = (at(t.k1) as i128).checked_mul(at(t.k2) as i128)?;
            acc.checked_add(p.checked_mul(t.coeff as i128)?)
        });
        let numer = exact.map(BigInt::from).unwrap_or_else(|| {
            rel.terms
                .iter()
                .map(|t| BigInt::from(at(t.k1)) * at(t.k2) * t.coeff)
                .sum()
        });
        return Rational::new(numer, denom * denom);
    }
    rel.terms.iter().fold(Rational::zero(), |acc, t| {
        acc + table.get(t.k1) * table.get(t.k2) * rat(t.coeff)
    })
}

/// Whether `|T| - |R|` is a positive multiple of 4, the shape of a nontrivial relation.
pub fn expects_nontrivial(r: IndexSet, t: IndexSet) -> bool {
    let d = t.len() as i64 - r.len() as i64;
    d > 0 && d % 4 == 0
}

/// Integer content helper for relation rows.
pub fn primitive(values: &[BigInt]) -> Vec<BigInt> {
    let g = values
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
        .abs();
    if g.is_zero() {
        return values.to_vec();
    }
    values.iter().map(|v| v / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn generic4() -> SkewMatrix {
        let vals = [[0, 2, 3, 5], [0, 0, 7, 11], [0, 0, 0, 13], [0, 0, 0, 0]];
        SkewMatrix::from_upper(4, |i, j| rat(vals[i][j]))
    }

    #[test]
    fn small_pfaffians() {
        let a = SkewMatrix::from_upper(2, |_, _| ratio(3, 7));
        assert_eq!(pfaffian(&a), ratio(3, 7));
        // u12 u34 - u13 u24 + u14 u23
        assert_eq!(pfaffian(&generic4()), rat(2 * 13 - 3 * 11 + 5 * 7));
        assert_eq!(pfaffian(&SkewMatrix::zeros(0)), rat(1));
        assert_eq!(pfaffian(&SkewMatrix::zeros(3)), rat(0));
    }

    #[test]
    fn sub_pfaffian_conventions() {
        let a = generic4();
        assert_eq!(sub_pfaffian(&a, IndexSet::from_one_based(&[1, 2])), rat(2));
        assert_eq!(sub_pfaffian(&a, IndexSet::EMPTY), rat(1));
        assert_eq!(
            sub_pfaffian(&a, IndexSet::from_one_based(&[1, 2, 3])),
            rat(0)
        );
        let table = SubPfaffians::build(&a);
        for k in all_subsets(IndexSet::full(4)) {
            assert_eq!(table.get(k), sub_pfaffian(&a, k));
        }
    }

    #[test]
    fn spinor_of_small_matrices() {
        assert_eq!(spinor_of_skew(&SkewMatrix::zeros(5)), SpinElem::top(5));
        let a = SkewMatrix::from_upper(2, |_, _| rat(4));
        assert_eq!(
            spinor_of_skew(&a),
            &SpinElem::top(2) + &SpinElem::one(2).scale(&rat(4))
        );
    }

    #[test]
    fn four_by_four_relation() {
        let rel = relation_for(4, IndexSet::EMPTY, IndexSet::EMPTY, IndexSet::full(4)).unwrap();
        let mut got: Vec<(Vec<usize>, Vec<usize>, i64)> = rel
            .terms
            .iter()
            .map(|t| (t.k1.to_one_based(), t.k2.to_one_based(), t.coeff))
            .collect();
        got.sort();
        // Pf_∅ Pf_1234 - Pf_12 Pf_34 + Pf_13 Pf_24 - Pf_14 Pf_23, up to a global sign
        let sign = got.iter().find(|t| t.0.is_empty()).unwrap().2;
        let expect = |k1: &[usize], k2: &[usize]| {
            got.iter().find(|t| t.0 == k1 && t.1 == k2).unwrap().2 * sign
        };
        assert_eq!(expect(&[], &[1, 2, 3, 4]), 1);
        assert_eq!(expect(&[1, 2], &[3, 4]), -1);
        assert_eq!(expect(&[1, 3], &[2, 4]), 1);
        assert_eq!(expect(&[1, 4], &[2, 3]), -1);
        assert_eq!(got.len(), 4);
        assert_eq!(verify_relation(&rel, &generic4()).unwrap(), rat(0));
    }

    #[test]
    fn trivial_relations_are_reported() {
        // |T| - |R| = 2
        let err = relation_for(
            4,
            IndexSet::EMPTY,
            IndexSet::EMPTY,
            IndexSet::from_one_based(&[1, 2]),
        )
        .unwrap_err();
        assert!(matches!(err, Error::TrivialRelation(_)));
        assert!(!expects_nontrivial(
            IndexSet::EMPTY,
            IndexSet::from_one_based(&[1, 2])
        ));
    }

    #[test]
    fn relation_errors() {
        assert!(matches!(
            quadratic_relations(4, IndexSet::from_one_based(&[1, 2, 3, 4])),
            Err(Error::OutOfRange(_))
        ));
        assert!(relation_for(
            4,
            IndexSet::from_one_based(&[1]),
            IndexSet::from_one_based(&[1]),
            IndexSet::EMPTY
        )
        .is_err());
        let rel = PfaffianRelation {
            n: 4,
            s: IndexSet::EMPTY,
            r: IndexSet::EMPTY,
            t: IndexSet::EMPTY,
            degree: 0,
            terms: vec![],
        };
        assert_eq!(verify_relation(&rel, &generic4()).unwrap(), rat(0));
        assert!(verify_relation(&rel, &SkewMatrix::zeros(3)).is_err());
    }

    #[test]
    fn relation_json_shape() {
        let rel = relation_for(4, IndexSet::EMPTY, IndexSet::EMPTY, IndexSet::full(4)).unwrap();
        let json = serde_json::to_value(&rel).unwrap();
        assert_eq!(json["T"], serde_json::json!([1, 2, 3, 4]));
        assert!(json["terms"][0]["K1"].is_array());
        let back: PfaffianRelation = serde_json::from_value(json).unwrap();
        assert_eq!(back, rel);
    }
}
