//! Decompositions into irreducibles, and the Brauer–Klimyk rule used for
//! tensor products and plethysms at larger rank.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::character::{freudenthal_char, power_sum_terms, DominantCharacter, PowerKind};
use super::datum::{Family, RootDatum, Weight};
use crate::error::{Error, Result};

/// Highest weight → multiplicity. Intermediate values may be virtual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    datum: RootDatum,
    components: BTreeMap<Weight, i64>,
    pub label: Option<String>,
}

/// One line of a decomposition in serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentRecord {
    pub weight: String,
    pub dynkin: Vec<i64>,
    pub multiplicity: i64,
    pub dimension: String,
}

impl Decomposition {
    pub fn new(datum: &RootDatum) -> Self {
        Decomposition {
            datum: datum.clone(),
            components: BTreeMap::new(),
            label: None,
        }
    }

    pub fn irreducible(datum: &RootDatum, lambda: &Weight) -> Self {
        let mut d = Self::new(datum);
        d.add(lambda.clone(), 1);
        d
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn add(&mut self, lambda: Weight, m: i64) {
        if m == 0 {
            return;
        }
        let e = self.components.entry(lambda.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.components.remove(&lambda);
        }
    }

    pub fn components(&self) -> &BTreeMap<Weight, i64> {
        &self.components
    }

    pub fn get(&self, lambda: &Weight) -> i64 {
        self.components.get(lambda).copied().unwrap_or(0)
    }

    /// Multiplicity of the irreducible with these Dynkin labels.
    pub fn get_dynkin(&self, labels: &[i64]) -> i64 {
        self.datum
            .from_dynkin(labels)
            .map(|w| self.get(&w))
            .unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_genuine(&self) -> bool {
        self.components.values().all(|m| *m > 0)
    }

    pub fn dim(&self) -> BigInt {
        self.components.iter().fold(BigInt::zero(), |acc, (w, m)| {
            acc + self.datum.dim_irrep(w).expect("dominant component") * m
        })
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        if self.datum != other.datum {
            return Err(Error::DatumMismatch);
        }
        let mut out = self.clone();
        for (w, m) in &other.components {
            out.add(w.clone(), *m);
        }
        Ok(out)
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.plus(&other.scaled(-1))
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = Self::new(&self.datum);
        for (w, m) in &self.components {
            out.add(w.clone(), m * k);
        }
        out.label = self.label.clone();
        out
    }

    /// Components ordered from the highest weight down.
    pub fn sorted(&self) -> Vec<(Weight, i64)> {
        let mut v: Vec<(Weight, i64)> = self
            .components
            .iter()
            .map(|(w, m)| (w.clone(), *m))
            .collect();
        v.sort_by(|(a, _), (b, _)| {
            self.datum
                .height(b)
                .cmp(&self.datum.height(a))
                .then_with(|| b.cmp(a))
        });
        v
    }

    /// `2 V(ω9+ω5) + V(ω8)`.
    pub fn format(&self) -> String {
        if self.components.is_empty() {
            return "0".into();
        }
        self.sorted()
            .iter()
            .map(|(w, m)| {
                let v = format!("V({})", self.datum.format_weight(w));
                if *m == 1 {
                    v
                } else {
                    format!("{m} {v}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn records(&self) -> Vec<ComponentRecord> {
        self.sorted()
            .into_iter()
            .map(|(w, m)| ComponentRecord {
                weight: self.datum.format_weight(&w),
                dynkin: self.datum.to_dynkin(&w),
                multiplicity: m,
                dimension: self
                    .datum
                    .dim_irrep(&w)
                    .map(|d| d.to_string())
                    .unwrap_or_default(),
            })
            .collect()
    }

    /// Sum of Freudenthal characters of the components.
    pub fn character(&self) -> Result<DominantCharacter> {
        let mut c = DominantCharacter::zero(&self.datum);
        for (w, m) in &self.components {
            c = c.add(&freudenthal_char(&self.datum, w)?.scale(*m))?;
        }
        Ok(c)
    }
}

/// Tensors every component with a Weyl-invariant weight multiset:
/// `V_λ ⊗ M = Σ_{μ ∈ M} ε(w) V_{w(λ+μ+ρ)−ρ}`.
pub fn brauer_klimyk(d: &Decomposition, weights: &[(Weight, i64)]) -> Decomposition {
    let datum = &d.datum;
    let rho = datum.rho();
    let mut out = Decomposition::new(datum);
    for (lambda, m) in &d.components {
        let shifted = lambda.add(rho);
        for (mu, c) in weights {
            let (dom, sign) = datum.to_dominant(&shifted.add(mu));
            if datum.is_regular_dominant(&dom) {
                out.add(datum.normalize(dom.sub(rho)), sign * m * c);
            }
        }
    }
    out
}

/// Decomposition of the module with the given full weight multiset.
pub fn decompose_weights(datum: &RootDatum, weights: &[(Weight, i64)]) -> Decomposition {
    brauer_klimyk(
        &Decomposition::irreducible(datum, &Weight::zero(datum.dim())),
        weights,
    )
}

/// All weights of `V_λ` with multiplicity.
pub fn irrep_weights(datum: &RootDatum, lambda: &Weight) -> Result<Vec<(Weight, i64)>> {
    Ok(freudenthal_char(datum, lambda)?.expand())
}

/// `V_λ ⊗ V_μ`, expanding the smaller factor.
pub fn tensor(datum: &RootDatum, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
    datum.check_dominant(lambda)?;
    datum.check_dominant(mu)?;
    let (big, small) = if datum.dim_irrep(lambda)? >= datum.dim_irrep(mu)? {
        (lambda, mu)
    } else {
        (mu, lambda)
    };
    let w = irrep_weights(datum, small)?;
    Ok(brauer_klimyk(&Decomposition::irreducible(datum, big), &w))
}

/// `V_λ ⊗ Δ_±` in type D: one copy of each `V_{λ+μ}` with `μ` a weight of
/// the half-spin module and `λ+μ` dominant.
pub fn tensor_minuscule(datum: &RootDatum, lambda: &Weight, plus: bool) -> Result<Decomposition> {
    if datum.family() != Family::D {
        return Err(Error::InvalidArgument(
            "minuscule spin rule needs type D".into(),
        ));
    }
    datum.check_dominant(lambda)?;
    let n = datum.rank();
    let spin = datum.fundamental(if plus { n } else { n - 1 });
    let mut out = Decomposition::new(datum);
    for mu in datum.orbit(&spin) {
        let v = lambda.add(&mu);
        if datum.is_dominant(&v) {
            out.add(v, 1);
        }
    }
    Ok(out)
}

/// `S^k V_λ` or `∧^k V_λ` by power sums, every product done by Brauer–Klimyk.
pub fn power_decomposition(
    datum: &RootDatum,
    lambda: &Weight,
    k: usize,
    kind: PowerKind,
) -> Result<Decomposition> {
    if !(1..=6).contains(&k) {
        return Err(Error::OutOfRange(format!("power {k} outside 1..=6")));
    }
    let base = irrep_weights(datum, lambda)?;
    let scaled = |p: usize| -> Vec<(Weight, i64)> {
        base.iter()
            .map(|(w, m)| (datum.normalize(w.scale(p as i64)), *m))
            .collect()
    };
    let adams: Vec<Vec<(Weight, i64)>> = (0..=k).map(scaled).collect();
    let trivial = Decomposition::irreducible(datum, &Weight::zero(datum.dim()));
    let mut total = Decomposition::new(datum);
    for (parts, coeff, sign) in power_sum_terms(k) {
        let mut term = trivial.clone();
        for &p in &parts {
            term = brauer_klimyk(&term, &adams[p]);
        }
        let s = if kind == PowerKind::Ext { sign } else { 1 };
        total = total.plus(&term.scaled(coeff * s))?;
    }
    let fact: i64 = (1..=k as i64).product();
    let mut out = Decomposition::new(datum);
    for (w, m) in total.components {
        if m % fact != 0 {
            return Err(Error::NonIntegral(format!(
                "multiplicity {m} at {} not divisible by {fact}",
                w
            )));
        }
        if m < 0 {
            return Err(Error::NegativeMultiplicity {
                weight: datum.format_weight(&w),
                mult: m / fact,
            });
        }
        out.add(w, m / fact);
    }
    Ok(out)
}
