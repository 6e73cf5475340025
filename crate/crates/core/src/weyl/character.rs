//! Weyl-orbit-compressed characters: Freudenthal multiplicities, products,
//! Adams operations and plethysms by power sums.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::Zero;

use super::datum::{RootDatum, Weight};
use super::decomp::Decomposition;
use crate::error::{Error, Result};

/// A character as dominant weight → multiplicity; each key stands for its orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantCharacter {
    datum: RootDatum,
    mults: BTreeMap<Weight, i64>,
}

impl DominantCharacter {
    pub fn zero(datum: &RootDatum) -> Self {
        DominantCharacter {
            datum: datum.clone(),
            mults: BTreeMap::new(),
        }
    }

    pub fn trivial(datum: &RootDatum) -> Self {
        let mut c = Self::zero(datum);
        c.mults.insert(Weight::zero(datum.dim()), 1);
        c
    }

    pub fn from_mults(datum: &RootDatum, mults: BTreeMap<Weight, i64>) -> Result<Self> {
        for w in mults.keys() {
            datum.check_dominant(w)?;
        }
        let mut c = Self::zero(datum);
        for (w, m) in mults {
            c.add_to(w, m);
        }
        Ok(c)
    }

    /// Keeps only the dominant weights of a full weight multiset.
    pub fn from_weights(
        datum: &RootDatum,
        weights: impl IntoIterator<Item = (Weight, i64)>,
    ) -> Self {
        let mut c = Self::zero(datum);
        for (w, m) in weights {
            if datum.is_dominant(&w) {
                c.add_to(w, m);
            }
        }
        c
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn mults(&self) -> &BTreeMap<Weight, i64> {
        &self.mults
    }

    pub fn mult(&self, w: &Weight) -> i64 {
        self.mults
            .get(&self.datum.dominant(w))
            .copied()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    fn add_to(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.mults.entry(w.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mults.remove(&w);
        }
    }

    /// `Σ mult · |orbit|`.
    pub fn dim(&self) -> BigInt {
        self.mults.iter().fold(BigInt::zero(), |acc, (w, m)| {
            acc + self.datum.orbit_size(w) * m
        })
    }

    /// Every weight with its multiplicity.
    pub fn expand(&self) -> Vec<(Weight, i64)> {
        let mut out = Vec::new();
        for (w, m) in &self.mults {
            for x in self.datum.orbit(w) {
                out.push((x, *m));
            }
        }
        out
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.datum == other.datum {
            Ok(())
        } else {
            Err(Error::DatumMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut c = self.clone();
        for (w, m) in &other.mults {
            c.add_to(w.clone(), *m);
        }
        Ok(c)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut c = Self::zero(&self.datum);
        if k != 0 {
            c.mults = self.mults.iter().map(|(w, m)| (w.clone(), m * k)).collect();
        }
        c
    }

    /// Adams operation: every weight multiplied by `k`.
    pub fn adams(&self, k: i64) -> Self {
        assert!(k > 0, "Adams operation needs a positive index");
        let mut c = Self::zero(&self.datum);
        c.mults = self
            .mults
            .iter()
            .map(|(w, m)| (self.datum.normalize(w.scale(k)), *m))
            .collect();
        c
    }

    fn exact_div(&self, k: i64) -> Result<Self> {
        let mut c = Self::zero(&self.datum);
        for (w, m) in &self.mults {
            if m % k != 0 {
                return Err(Error::NonIntegral(format!(
                    "multiplicity {m} at {w} not divisible by {k}"
                )));
            }
            c.add_to(w.clone(), m / k);
        }
        Ok(c)
    }
}

/// Dominant weights of `V_λ`, walking down by positive roots.
pub fn dominant_weights_below(datum: &RootDatum, lambda: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::new();
    let mut stack = vec![lambda.clone()];
    seen.insert(lambda.clone());
    while let Some(mu) = stack.pop() {
        for a in datum.positive_roots() {
            let next = datum.normalize(mu.sub(a));
            if datum.is_dominant(&next) && !seen.contains(&next) {
                seen.insert(next.clone());
                stack.push(next);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort_by(|a, b| datum.height(b).cmp(&datum.height(a)).then_with(|| b.cmp(a)));
    out
}

/// Freudenthal's recursion for the dominant multiplicities of `V_λ`.
pub fn freudenthal_char(datum: &RootDatum, lambda: &Weight) -> Result<DominantCharacter> {
    datum.check_dominant(lambda)?;
    let weights = dominant_weights_below(datum, lambda);
    let lr = lambda.add(datum.rho());
    let lr2 = datum.ip(&lr, &lr);
    let mut mult: HashMap<Weight, i64> = HashMap::new();
    mult.insert(lambda.clone(), 1);
    for mu in weights.iter().skip(1) {
        let mr = mu.add(datum.rho());
        let denom = lr2 - datum.ip(&mr, &mr);
        let mut num = 0i64;
        for a in datum.positive_roots() {
            let mut nu = mu.add(a);
            while let Some(&m) = mult.get(&datum.dominant(&nu)) {
                num += m * datum.ip(&nu, a);
                nu = nu.add(a);
            }
        }
        debug_assert!(
            denom > 0 && (2 * num) % denom == 0,
            "Freudenthal division at {mu}"
        );
        let m = 2 * num / denom;
        if m != 0 {
            mult.insert(mu.clone(), m);
        }
    }
    let mut c = DominantCharacter::zero(datum);
    for (w, m) in mult {
        c.add_to(w, m);
    }
    Ok(c)
}

/// Pointwise product; the orbits of the factor with fewer weights are expanded.
pub fn char_mul(c1: &DominantCharacter, c2: &DominantCharacter) -> Result<DominantCharacter> {
    c1.check_same(c2)?;
    let (big, small) = if c1.dim() >= c2.dim() {
        (c1, c2)
    } else {
        (c2, c1)
    };
    let datum = &c1.datum;
    let small_weights = small.expand();
    let mut candidates: HashSet<Weight> = HashSet::new();
    for nu in big.mults.keys() {
        for (w, _) in &small_weights {
            candidates.insert(datum.dominant(&datum.normalize(nu.add(w))));
        }
    }
    let mut out = DominantCharacter::zero(datum);
    for kappa in candidates {
        let mut m = 0i64;
        for (w, c) in &small_weights {
            let rest = datum.normalize(kappa.sub(w));
            let b = big.mult(&rest);
            if b != 0 {
                m += b * c;
            }
        }
        out.add_to(kappa, m);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerKind {
    Sym,
    Ext,
}

/// Partitions of `k` as multiplicity vectors, with `k! / z_π` and the sign of `π`.
pub(crate) fn power_sum_terms(k: usize) -> Vec<(Vec<usize>, i64, i64)> {
    fn parts(k: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(k)).rev() {
            cur.push(p);
            parts(k - p, p, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    parts(k, k, &mut Vec::new(), &mut all);
    let fact = |n: usize| (1..=n as i64).product::<i64>();
    all.into_iter()
        .map(|p| {
            let mut z = 1i64;
            for i in 1..=k {
                let m = p.iter().filter(|&&x| x == i).count();
                z *= (i as i64).pow(m as u32) * fact(m);
            }
            let sign = if (k - p.len()).is_multiple_of(2) {
                1
            } else {
                -1
            };
            (p, fact(k) / z, sign)
        })
        .collect()
}

/// Character of `S^k V` or `∧^k V` from power sums of `c`.
pub fn power_op(c: &DominantCharacter, k: usize, kind: PowerKind) -> Result<DominantCharacter> {
    if !(1..=6).contains(&k) {
        return Err(Error::OutOfRange(format!("power {k} outside 1..=6")));
    }
    let mut total = DominantCharacter::zero(&c.datum);
    for (parts, coeff, sign) in power_sum_terms(k) {
        let mut term = DominantCharacter::trivial(&c.datum);
        for &p in &parts {
            term = char_mul(&term, &c.adams(p as i64))?;
        }
        let s = if kind == PowerKind::Ext { sign } else { 1 };
        total = total.add(&term.scale(coeff * s))?;
    }
    let fact: i64 = (1..=k as i64).product();
    total.exact_div(fact)
}

/// Highest-weight peeling: repeatedly subtract the character of the
/// largest remaining dominant weight.
pub fn decompose(c: &DominantCharacter) -> Result<Decomposition> {
    let datum = &c.datum;
    let mut rest = c.clone();
    let mut out = Decomposition::new(datum);
    while let Some(top) = rest
        .mults
        .keys()
        .max_by(|a, b| datum.height(a).cmp(&datum.height(b)).then_with(|| a.cmp(b)))
        .cloned()
    {
        let m = rest.mults[&top];
        if m < 0 {
            return Err(Error::NegativeMultiplicity {
                weight: datum.format_weight(&top),
                mult: m,
            });
        }
        let irr = freudenthal_char(datum, &top)?;
        rest = rest.sub(&irr.scale(m))?;
        out.add(top, m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::datum::Family;
    use super::*;

    fn d(n: usize) -> RootDatum {
        RootDatum::new(Family::D, n).unwrap()
    }

    #[test]
    fn freudenthal_small_cases() {
        let d4 = d(4);
        let vec = freudenthal_char(&d4, &d4.fundamental(1)).unwrap();
        assert_eq!(vec.mults().len(), 1);
        assert_eq!(vec.dim(), BigInt::from(8));
        let adj = freudenthal_char(&d4, &d4.fundamental(2)).unwrap();
        assert_eq!(adj.mult(&Weight::zero(4)), 4);
        assert_eq!(adj.dim(), BigInt::from(28));
        let d5 = d(5);
        let spin = freudenthal_char(&d5, &d5.fundamental(5)).unwrap();
        assert_eq!(spin.mults().len(), 1);
    }

    #[test]
    fn freudenthal_dimension_matches_weyl() {
        for fam in [Family::A, Family::B, Family::C, Family::D] {
            let datum = RootDatum::new(fam, 4).unwrap();
            for labels in [
                [1, 0, 0, 0],
                [0, 1, 0, 1],
                [1, 1, 0, 0],
                [0, 0, 0, 2],
                [2, 0, 1, 0],
                [1, 1, 1, 1],
            ] {
                let w = datum.from_dynkin(&labels).unwrap();
                let ch = freudenthal_char(&datum, &w).unwrap();
                assert_eq!(ch.dim(), datum.dim_irrep(&w).unwrap(), "{fam} {labels:?}");
            }
        }
    }

    #[test]
    fn products_and_identity() {
        let d4 = d(4);
        let p = freudenthal_char(&d4, &d4.fundamental(4)).unwrap();
        let m = freudenthal_char(&d4, &d4.fundamental(3)).unwrap();
        assert_eq!(char_mul(&p, &m).unwrap().dim(), BigInt::from(64));
        let t = DominantCharacter::trivial(&d4);
        assert_eq!(char_mul(&p, &t).unwrap(), p);
        let other = DominantCharacter::trivial(&d(5));
        assert_eq!(char_mul(&p, &other).unwrap_err(), Error::DatumMismatch);
    }

    #[test]
    fn square_splits_into_sym_and_ext() {
        let d5 = d(5);
        let c = freudenthal_char(&d5, &d5.fundamental(5)).unwrap();
        let sq = char_mul(&c, &c).unwrap();
        let s2 = power_op(&c, 2, PowerKind::Sym).unwrap();
        let e2 = power_op(&c, 2, PowerKind::Ext).unwrap();
        assert_eq!(s2.add(&e2).unwrap(), sq);
        assert_eq!(s2.dim(), BigInt::from(136));
    }

    #[test]
    fn plethysm_examples() {
        let d5 = d(5);
        let vecc = freudenthal_char(&d5, &d5.fundamental(1)).unwrap();
        let s2 = decompose(&power_op(&vecc, 2, PowerKind::Sym).unwrap()).unwrap();
        assert_eq!(s2.format(), "V(2ω1) + V(0)");
        let d4 = d(4);
        let spin = freudenthal_char(&d4, &d4.fundamental(4)).unwrap();
        let e2 = decompose(&power_op(&spin, 2, PowerKind::Ext).unwrap()).unwrap();
        assert_eq!(e2.format(), "V(ω2)");
        let spin5 = freudenthal_char(&d5, &d5.fundamental(5)).unwrap();
        let s2 = decompose(&power_op(&spin5, 2, PowerKind::Sym).unwrap()).unwrap();
        assert_eq!(s2.format(), "V(2ω5) + V(ω1)");
    }

    #[test]
    fn decompose_rejects_virtual_characters() {
        let d4 = d(4);
        let v = freudenthal_char(&d4, &d4.fundamental(1)).unwrap().scale(-1);
        assert!(matches!(
            decompose(&v),
            Err(Error::NegativeMultiplicity { .. })
        ));
        let half = DominantCharacter::trivial(&d4).scale(3);
        assert!(half.exact_div(2).is_err());
    }

    #[test]
    fn power_sum_coefficients() {
        let terms = power_sum_terms(3);
        let total: i64 = terms.iter().map(|(_, c, _)| c).sum();
        assert_eq!(total, 6);
        assert_eq!(power_sum_terms(4).len(), 5);
    }
}
