//! Classical root data in doubled ε-coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
        };
        write!(f, "{c}")
    }
}

/// A weight stored as twice its ε-coordinates. In type `A_r` there are
/// `r + 1` coordinates, normalized so the last one is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(len: usize) -> Self {
        Weight(vec![0; len])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }

    /// `θ_i = ε_1 + ⋯ + ε_i` in doubled coordinates.
    pub fn theta(len: usize, i: usize) -> Weight {
        Weight((0..len).map(|k| if k < i { 2 } else { 0 }).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if c % 2 == 0 {
                write!(f, "{}", c / 2)?;
            } else {
                write!(f, "{c}/2")?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DatumSpec", into = "DatumSpec")]
pub struct RootDatum {
    family: Family,
    rank: usize,
    simple: Vec<Weight>,
    positive: Vec<Weight>,
    rho: Weight,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
struct DatumSpec {
    family: Family,
    rank: usize,
}

impl TryFrom<DatumSpec> for RootDatum {
    type Error = Error;

    fn try_from(s: DatumSpec) -> Result<Self> {
        RootDatum::new(s.family, s.rank)
    }
}

impl From<RootDatum> for DatumSpec {
    fn from(d: RootDatum) -> Self {
        DatumSpec {
            family: d.family,
            rank: d.rank,
        }
    }
}

impl RootDatum {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let min = match family {
            Family::A | Family::B | Family::C => 1,
            Family::D => 2,
        };
        if rank < min || rank > 40 {
            return Err(Error::RankOutOfRange { rank, min, max: 40 });
        }
        let len = if family == Family::A { rank + 1 } else { rank };
        let unit = |pairs: &[(usize, i64)]| {
            let mut v = vec![0i64; len];
            for &(i, c) in pairs {
                v[i] += 2 * c;
            }
            Weight(v)
        };
        let mut simple: Vec<Weight> = (0..rank.min(len - 1))
            .map(|i| unit(&[(i, 1), (i + 1, -1)]))
            .collect();
        match family {
            Family::A => {}
            Family::B => simple.push(unit(&[(rank - 1, 1)])),
            Family::C => simple.push(unit(&[(rank - 1, 2)])),
            Family::D => simple.push(unit(&[(rank - 2, 1), (rank - 1, 1)])),
        }
        let mut positive = Vec::new();
        for i in 0..len {
            for j in i + 1..len {
                positive.push(unit(&[(i, 1), (j, -1)]));
                if family != Family::A {
                    positive.push(unit(&[(i, 1), (j, 1)]));
                }
            }
            match family {
                Family::B => positive.push(unit(&[(i, 1)])),
                Family::C => positive.push(unit(&[(i, 2)])),
                _ => {}
            }
        }
        let rho = Weight(match family {
            Family::A => (0..len).map(|i| 2 * (rank - i) as i64).collect(),
            Family::B => (0..len).map(|i| 2 * (rank - i) as i64 - 1).collect(),
            Family::C => (0..len).map(|i| 2 * (rank - i) as i64).collect(),
            Family::D => (0..len).map(|i| 2 * (rank - 1 - i) as i64).collect(),
        });
        Ok(RootDatum {
            family,
            rank,
            simple,
            positive,
            rho,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of stored coordinates.
    pub fn dim(&self) -> usize {
        self.rho.len()
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }

    /// Invariant form, scaled to stay integral (by `r + 1` in type A).
    pub fn ip(&self, x: &Weight, y: &Weight) -> i64 {
        let dot: i64 = x.0.iter().zip(&y.0).map(|(a, b)| a * b).sum();
        if self.family == Family::A {
            let sx: i64 = x.0.iter().sum();
            let sy: i64 = y.0.iter().sum();
            dot * self.dim() as i64 - sx * sy
        } else {
            dot
        }
    }

    /// `2 (α_i, α_j) / (α_j, α_j)` from the stored simple roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple
            .iter()
            .map(|a| {
                self.simple
                    .iter()
                    .map(|b| 2 * self.ip(a, b) / self.ip(b, b))
                    .collect()
            })
            .collect()
    }

    /// Fundamental weight `ω_i`, 1-based.
    pub fn fundamental(&self, i: usize) -> Weight {
        assert!(
            (1..=self.rank).contains(&i),
            "fundamental weight index {i} out of range"
        );
        let len = self.dim();
        let n = self.rank;
        match self.family {
            Family::A | Family::C => Weight::theta(len, i),
            Family::B if i == n => Weight(vec![1; len]),
            Family::B => Weight::theta(len, i),
            Family::D if i == n => Weight(vec![1; len]),
            Family::D if i == n - 1 => {
                let mut v = vec![1; len];
                v[len - 1] = -1;
                Weight(v)
            }
            Family::D => Weight::theta(len, i),
        }
    }

    /// `Σ a_i ω_i`.
    pub fn from_dynkin(&self, labels: &[i64]) -> Result<Weight> {
        if labels.len() != self.rank {
            return Err(Error::InvalidArgument(format!(
                "{} Dynkin labels for rank {}",
                labels.len(),
                self.rank
            )));
        }
        let mut w = Weight::zero(self.dim());
        for (i, &a) in labels.iter().enumerate() {
            if a != 0 {
                w = w.add(&self.fundamental(i + 1).scale(a));
            }
        }
        Ok(w)
    }

    /// Dynkin labels `(λ, α_i^∨)`.
    pub fn to_dynkin(&self, w: &Weight) -> Vec<i64> {
        self.simple
            .iter()
            .map(|a| 2 * self.ip(w, a) / self.ip(a, a))
            .collect()
    }

    /// Parses `ω1+2ω3`, `w1+2w3` or `0` into a weight.
    pub fn parse_weight(&self, text: &str) -> Result<Weight> {
        let mut labels = vec![0i64; self.rank];
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned == "0" || cleaned.is_empty() {
            return Ok(Weight::zero(self.dim()));
        }
        for part in cleaned.split('+') {
            let (coef, idx) = part.split_once(['ω', 'w']).ok_or_else(|| {
                Error::InvalidArgument(format!("cannot parse weight term {part:?}"))
            })?;
            let coef: i64 = if coef.is_empty() {
                1
            } else {
                coef.parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad coefficient in {part:?}")))?
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad index in {part:?}")))?;
            if idx == 0 || idx > self.rank {
                return Err(Error::OutOfRange(format!("ω{idx} at rank {}", self.rank)));
            }
            labels[idx - 1] += coef;
        }
        self.from_dynkin(&labels)
    }

    /// `ω9+ω5`, `3ω9`, `0`.
    pub fn format_weight(&self, w: &Weight) -> String {
        let parts: Vec<String> = self
            .to_dynkin(w)
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0)
            .map(|(i, a)| {
                if *a == 1 {
                    format!("ω{}", i + 1)
                } else {
                    format!("{a}ω{}", i + 1)
                }
            })
            .rev()
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    pub fn normalize(&self, mut w: Weight) -> Weight {
        if self.family == Family::A {
            if let Some(&last) = w.0.last() {
                if last != 0 {
                    w.0.iter_mut().for_each(|c| *c -= last);
                }
            }
        }
        w
    }

    /// Lies in the weight lattice.
    pub fn is_integral(&self, w: &Weight) -> bool {
        if w.len() != self.dim() {
            return false;
        }
        match self.family {
            Family::A | Family::C => w.0.iter().all(|c| c % 2 == 0),
            Family::B | Family::D => {
                w.0.iter().all(|c| c % 2 == 0) || w.0.iter().all(|c| c % 2 != 0)
            }
        }
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        let c = &w.0;
        let decreasing = |upto: usize| (1..upto).all(|i| c[i - 1] >= c[i]);
        match self.family {
            Family::A => decreasing(c.len()),
            Family::B | Family::C => decreasing(c.len()) && c[c.len() - 1] >= 0,
            Family::D => {
                let n = c.len();
                decreasing(n - 1) && c[n - 2] >= c[n - 1].abs()
            }
        }
    }

    /// Strictly inside the dominant chamber.
    pub fn is_regular_dominant(&self, w: &Weight) -> bool {
        let c = &w.0;
        let decreasing = |upto: usize| (1..upto).all(|i| c[i - 1] > c[i]);
        match self.family {
            Family::A => decreasing(c.len()),
            Family::B | Family::C => decreasing(c.len()) && c[c.len() - 1] > 0,
            Family::D => {
                let n = c.len();
                decreasing(n - 1) && c[n - 2] > c[n - 1].abs()
            }
        }
    }

    pub fn check_dominant(&self, w: &Weight) -> Result<()> {
        if self.is_integral(w) && self.is_dominant(w) {
            Ok(())
        } else {
            Err(Error::NotDominant(format!("{w} in {}", self.name())))
        }
    }

    /// The dominant representative of the orbit of `w`, with the determinant
    /// of a Weyl group element carrying `w` there.
    pub fn to_dominant(&self, w: &Weight) -> (Weight, i64) {
        let mut c = w.0.clone();
        let mut sign = 1i64;
        let mut negatives = 0usize;
        if self.family != Family::A {
            for x in c.iter_mut() {
                if *x < 0 {
                    *x = -*x;
                    negatives += 1;
                }
            }
        }
        // insertion sort, descending, counting transpositions
        for i in 1..c.len() {
            let mut j = i;
            while j > 0 && c[j - 1] < c[j] {
                c.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        match self.family {
            Family::A => return (self.normalize(Weight(c)), sign),
            Family::B | Family::C => {
                if negatives % 2 == 1 {
                    sign = -sign;
                }
            }
            Family::D => {
                if negatives % 2 == 1 {
                    let last = c.len() - 1;
                    c[last] = -c[last];
                }
            }
        }
        (Weight(c), sign)
    }

    pub fn dominant(&self, w: &Weight) -> Weight {
        self.to_dominant(w).0
    }

    /// Number of distinct elements in the Weyl orbit of dominant `w`.
    pub fn orbit_size(&self, w: &Weight) -> BigInt {
        let mut abs: Vec<i64> = match self.family {
            Family::A => w.0.clone(),
            _ => w.0.iter().map(|c| c.abs()).collect(),
        };
        abs.sort_unstable();
        let mut size = factorial(abs.len());
        let mut i = 0;
        while i < abs.len() {
            let mut j = i;
            while j < abs.len() && abs[j] == abs[i] {
                j += 1;
            }
            size /= factorial(j - i);
            i = j;
        }
        let nonzero = abs.iter().filter(|c| **c != 0).count();
        match self.family {
            Family::A => size,
            Family::B | Family::C => size << nonzero,
            Family::D => {
                if nonzero == abs.len() && nonzero > 0 {
                    size << (nonzero - 1)
                } else {
                    size << nonzero
                }
            }
        }
    }

    /// All weights in the Weyl orbit of `w`.
    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let (dom, _) = self.to_dominant(w);
        let mut perms = Vec::new();
        let mut abs: Vec<i64> = match self.family {
            Family::A => dom.0.clone(),
            _ => dom.0.iter().map(|c| c.abs()).collect(),
        };
        abs.sort_unstable();
        loop {
            perms.push(abs.clone());
            if !next_permutation(&mut abs) {
                break;
            }
        }
        if self.family == Family::A {
            return perms
                .into_iter()
                .map(|p| self.normalize(Weight(p)))
                .collect();
        }
        let negative_parity = dom.0.iter().filter(|c| **c < 0).count() % 2;
        let has_zero = dom.0.contains(&0);
        let mut out = Vec::new();
        for p in perms {
            let nz: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
            for mask in 0u64..(1u64 << nz.len()) {
                if self.family == Family::D
                    && !has_zero
                    && (mask.count_ones() as usize) % 2 != negative_parity
                {
                    continue;
                }
                let mut v = p.clone();
                for (b, &i) in nz.iter().enumerate() {
                    if mask >> b & 1 == 1 {
                        v[i] = -v[i];
                    }
                }
                out.push(Weight(v));
            }
        }
        out
    }

    /// Weyl dimension formula.
    pub fn dim_irrep(&self, lambda: &Weight) -> Result<BigInt> {
        self.check_dominant(lambda)?;
        let shifted = lambda.add(&self.rho);
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for a in &self.positive {
            num *= self.ip(&shifted, a);
            den *= self.ip(&self.rho, a);
        }
        debug_assert!((&num % &den).is_zero());
        Ok(num / den)
    }

    /// Sum of `(λ, ρ)`-style height; strictly drops along positive roots.
    pub fn height(&self, w: &Weight) -> i64 {
        self.ip(w, &self.rho)
    }
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
