//! Secant variety of the rational normal curve: `GL₂` characters of its
//! coordinate ring from fixed-point localization on `P(S²U)`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{floor_div, rat, Rational};

/// Sparse Laurent polynomial in `x, y` with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivariatePolynomial {
    terms: BTreeMap<(i64, i64), Rational>,
}

impl BivariatePolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 0, rat(1))
    }

    pub fn monomial(a: i64, b: i64, c: Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, rat(1))
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, rat(1))
    }

    pub fn add_term(&mut self, a: i64, b: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((a, b)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(i64, i64), Rational> {
        &self.terms
    }

    pub fn coeff(&self, a: i64, b: i64) -> Rational {
        self.terms
            .get(&(a, b))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(a, b), v) in &self.terms {
            out.add_term(a, b, v * c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            for (&(a2, b2), c2) in &other.terms {
                out.add_term(a + a2, b + b2, c * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// `p(y, x)`.
    pub fn swap(&self) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(b, a, c.clone());
        }
        out
    }

    /// `p(x^m, y^m)`.
    pub fn dilate(&self, m: i64) -> Self {
        let mut out = Self::zero();
        for (&(a, b), c) in &self.terms {
            out.add_term(a * m, b * m, c.clone());
        }
        out
    }

    /// No negative exponents.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a >= 0 && b >= 0)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms
            .iter()
            .map(|(&(a, b), c)| c * pow_rat(x, a) * pow_rat(y, b))
            .fold(Rational::zero(), |acc, v| acc + v)
    }

    /// `p(t, t)` as a polynomial in `t`; zero exactly when `x − y` divides `p`.
    pub fn diagonal(&self) -> BTreeMap<i64, Rational> {
        let mut out: BTreeMap<i64, Rational> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            *out.entry(a + b).or_insert_with(Rational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn divisible_by_x_minus_y(&self) -> bool {
        self.diagonal().is_empty()
    }

    /// Exact quotient by `x − λy`, done degree by degree.
    pub fn div_linear(&self, lambda: i64) -> Result<Self> {
        let lambda = rat(lambda);
        let mut by_degree: BTreeMap<i64, BTreeMap<i64, Rational>> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            by_degree.entry(a + b).or_default().insert(a, c.clone());
        }
        let mut out = Self::zero();
        for (deg, row) in by_degree {
            let lo = *row.keys().next().expect("nonempty");
            let hi = *row.keys().last().expect("nonempty");
            // c_a = b_{a-1} − λ b_a, solved upward from b_{lo-1} = 0
            let mut prev = Rational::zero();
            for a in lo..hi {
                let c = row.get(&a).cloned().unwrap_or_else(Rational::zero);
                let cur = (&prev - c) / &lambda;
                out.add_term(a, deg - 1 - a, cur.clone());
                prev = cur;
            }
            let top = row.get(&hi).cloned().unwrap_or_else(Rational::zero);
            if top != prev {
                return Err(Error::InexactDivision(format!(
                    "remainder in degree {deg} when dividing by x − ({lambda})y"
                )));
            }
        }
        Ok(out)
    }

    /// Exact quotient by `(x − y)(x² − y²) = (x − y)²(x + y)`.
    pub fn div_secant_denominator(&self) -> Result<Self> {
        self.div_linear(1)?.div_linear(1)?.div_linear(-1)
    }
}

fn pow_rat(x: &Rational, e: i64) -> Rational {
    let base = if e < 0 { x.recip() } else { x.clone() };
    (0..e.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

impl fmt::Display for BivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&(a, b), c)) in self.terms.iter().rev().enumerate() {
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = c.abs();
            let unit = mag.is_one();
            if !unit || (a == 0 && b == 0) {
                write!(f, "{mag}")?;
            }
            if a != 0 {
                write!(f, "x")?;
                if a != 1 {
                    write!(f, "^{a}")?;
                }
            }
            if b != 0 {
                write!(f, "y")?;
                if b != 1 {
                    write!(f, "^{b}")?;
                }
            }
        }
        Ok(())
    }
}

/// `h_k(x, y)`, the sum of the degree-`k` monomials.
pub fn complete_homogeneous(k: usize) -> BivariatePolynomial {
    let mut p = BivariatePolynomial::zero();
    for i in 0..=k as i64 {
        p.add_term(i, k as i64 - i, rat(1));
    }
    p
}

fn check_toy_args(n: usize, _k: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange(
            "the curve degree n must be at least 1".into(),
        ));
    }
    Ok(())
}

/// Coefficient of `t^k` in `P'_n(t,x,y)`, expanded from the three geometric series.
pub fn p_prime_coefficient(n: usize, k: usize) -> BivariatePolynomial {
    let (n, k) = (n as i64, k as i64);
    let mut out = BivariatePolynomial::zero();
    // x³ / ((1 − t xⁿ)(1 − t x^{n-1} y)) and its mirror
    for b in 0..=k {
        let a = k - b;
        out.add_term(3 + n * a + (n - 1) * b, b, rat(1));
        out.add_term(b, 3 + n * a + (n - 1) * b, rat(1));
    }
    // − xy(x + y) / ((1 − t xⁿ)(1 − t yⁿ))
    for b in 0..=k {
        let a = k - b;
        out.add_term(2 + n * a, 1 + n * b, rat(-1));
        out.add_term(1 + n * a, 2 + n * b, rat(-1));
    }
    out
}

/// Character of `C[σ(V)]_k` for the degree-`n` rational normal curve:
/// the `t^k` coefficient of `P'_n / ((x−y)(x²−y²))`.
pub fn localization_char(n: usize, k: usize) -> Result<BivariatePolynomial> {
    check_toy_args(n, k)?;
    let q = p_prime_coefficient(n, k).div_secant_denominator()?;
    if !q.is_polynomial() {
        return Err(Error::InexactDivision(
            "negative exponent in the quotient".into(),
        ));
    }
    Ok(q)
}

/// The same character from the three fixed points `[e²], [ef], [f²]`,
/// numerators summed over the common denominator `(x−y)(x²−y²)` first.
pub fn localization_char_fixed_points(n: usize, k: usize) -> Result<BivariatePolynomial> {
    check_toy_args(n, k)?;
    let h = complete_homogeneous(k);
    let shift = (k * (n - 1) + 3) as i64;
    let at_e2 = BivariatePolynomial::monomial(0, shift, rat(1)).mul(&h);
    let at_f2 = BivariatePolynomial::monomial(shift, 0, rat(1)).mul(&h);
    let xy_sum = BivariatePolynomial::monomial(2, 1, rat(1)).add(&BivariatePolynomial::monomial(
        1,
        2,
        rat(1),
    ));
    let at_ef = xy_sum.mul(&h.dilate(n as i64));
    at_e2.add(&at_f2).sub(&at_ef).div_secant_denominator()
}

/// Sum of the three fixed-point contributions evaluated at a torus element,
/// with the denominators `det(1 − g⁻¹, T_p)` exactly as they arise.
pub fn fixed_point_trace(n: usize, k: usize, x: &Rational, y: &Rational) -> Result<Rational> {
    check_toy_args(n, k)?;
    if x.is_zero() || y.is_zero() || x == y || *x == -y.clone() {
        return Err(Error::InvalidArgument(
            "torus element must be regular".into(),
        ));
    }
    let one = Rational::one();
    let h = complete_homogeneous(k);
    let hk = h.eval(x, y);
    let hkn = h.dilate(n as i64).eval(x, y);
    let e = (k * (n - 1)) as i64;
    let rx = x / y;
    let ry = y / x;
    let t1 = pow_rat(y, e) * &hk / ((&one - &rx) * (&one - &rx * &rx));
    let t2 = pow_rat(x, e) * &hk / ((&one - &ry) * (&one - &ry * &ry));
    let t3 = hkn / ((&one - &rx) * (&one - &ry));
    Ok(t1 + t2 + t3)
}

/// `S^pU ⊗ (det U)^q` with a multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct GlTwoTerm {
    pub p: i64,
    pub q: i64,
    pub mult: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GLTwoDecomp {
    /// Sorted by `q`, then `p`.
    pub terms: Vec<GlTwoTerm>,
}

/// `(x^{p+q+1} y^q − x^q y^{p+q+1}) / (x − y)`.
pub fn gl2_character(p: i64, q: i64) -> BivariatePolynomial {
    let mut out = BivariatePolynomial::zero();
    for i in 0..=p {
        out.add_term(q + i, q + p - i, rat(1));
    }
    out
}

impl GLTwoDecomp {
    pub fn from_terms(mut terms: Vec<GlTwoTerm>) -> Self {
        terms.retain(|t| t.mult != 0);
        terms.sort_by_key(|t| (t.q, t.p));
        GLTwoDecomp { terms }
    }

    pub fn multiplicity(&self, p: i64, q: i64) -> i64 {
        self.terms
            .iter()
            .filter(|t| t.p == p && t.q == q)
            .map(|t| t.mult)
            .sum()
    }

    pub fn character(&self) -> BivariatePolynomial {
        self.terms
            .iter()
            .fold(BivariatePolynomial::zero(), |acc, t| {
                acc.add(&gl2_character(t.p, t.q).scale(&rat(t.mult)))
            })
    }

    pub fn dim(&self) -> i64 {
        self.terms.iter().map(|t| t.mult * (t.p + 1)).sum()
    }

    pub fn format(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|t| {
                let m = if t.mult == 1 {
                    String::new()
                } else {
                    format!("{}·", t.mult)
                };
                match t.q {
                    0 => format!("{m}S^{}U", t.p),
                    1 => format!("{m}S^{}U⊗det", t.p),
                    q => format!("{m}S^{}U⊗det^{q}", t.p),
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Peel off highest weights one at a time.
pub fn decompose_gl2(poly: &BivariatePolynomial) -> Result<GLTwoDecomp> {
    let mut rest = poly.clone();
    let mut terms = Vec::new();
    while let Some((&(a, b), c)) = rest.terms().iter().max_by_key(|(&(a, b), _)| (a - b, a)) {
        if a < b {
            return Err(Error::InvalidArgument(format!(
                "x^{a}y^{b} cannot be a highest weight"
            )));
        }
        if !c.is_integer() {
            return Err(Error::NonIntegral(format!("coefficient {c} at x^{a}y^{b}")));
        }
        let mult = c
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::OutOfRange("multiplicity".into()))?;
        if mult < 0 {
            return Err(Error::NegativeMultiplicity {
                weight: format!("S^{}U⊗det^{b}", a - b),
                mult,
            });
        }
        rest = rest.sub(&gl2_character(a - b, b).scale(&rat(mult)));
        terms.push(GlTwoTerm {
            p: a - b,
            q: b,
            mult,
        });
    }
    Ok(GLTwoDecomp::from_terms(terms))
}

/// `C[σ(V)]_k` as a `GL(U)`-module.
pub fn sigma_ring_gl2(n: usize, k: usize) -> Result<GLTwoDecomp> {
    decompose_gl2(&localization_char(n, k)?)
}

/// `min(⌊s/2⌋, ⌊(k−ε)/2⌋) − ⌊(s−1)/n⌋`, floors toward −∞.
pub fn q_formula(n: usize, s: usize, k: usize) -> Result<i64> {
    if n == 0 || 2 * s > n * k {
        return Err(Error::OutOfRange(format!(
            "need nk ≥ 2s, got n={n} s={s} k={k}"
        )));
    }
    let (n, s, k) = (n as i64, s as i64, k as i64);
    let eps = s % 2;
    Ok((s / 2).min(floor_div(k - eps, 2)) - floor_div(s - 1, n))
}

/// `⊕_{s ≤ k, s ≠ 1} S^{kn−2s}U ⊗ (det U)^s`.
pub fn tau_ring_gl2(n: usize, k: usize) -> Result<GLTwoDecomp> {
    if n * k < 2 * k || n == 0 {
        return Err(Error::OutOfRange(format!("need nk ≥ 2k, got n={n} k={k}")));
    }
    let terms = (0..=k)
        .filter(|&s| s != 1)
        .map(|s| GlTwoTerm {
            p: (k * n - 2 * s) as i64,
            q: s as i64,
            mult: 1,
        })
        .collect();
    Ok(GLTwoDecomp::from_terms(terms))
}

/// Character of `S^k(S^nU)` by counting multisets of weights.
pub fn symmetric_power_char(n: usize, k: usize) -> BivariatePolynomial {
    // ways[j][e]: multisets of size j from {0..=i} with y-exponent sum e
    let max_e = n * k;
    let mut ways = vec![vec![0u64; max_e + 1]; k + 1];
    ways[0][0] = 1;
    for i in 0..=n {
        for j in 1..=k {
            for e in i..=max_e {
                ways[j][e] += ways[j - 1][e - i];
            }
        }
    }
    let mut out = BivariatePolynomial::zero();
    for (e, &w) in ways[k].iter().enumerate() {
        out.add_term((max_e - e) as i64, e as i64, rat(w as i64));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_division() {
        let x = BivariatePolynomial::x();
        let y = BivariatePolynomial::y();
        let p = x.pow(3).sub(&y.pow(3));
        let q = p.div_linear(1).unwrap();
        assert_eq!(q, x.pow(2).add(&x.mul(&y)).add(&y.pow(2)));
        assert!(x.add(&y).div_linear(1).is_err());
        assert_eq!(
            x.add(&y).div_linear(-1).unwrap(),
            BivariatePolynomial::one()
        );
        assert!(p.divisible_by_x_minus_y());
    }

    #[test]
    fn degree_zero_and_one() {
        for n in 1..6 {
            assert_eq!(localization_char(n, 0).unwrap(), BivariatePolynomial::one());
            assert_eq!(localization_char(n, 1).unwrap(), complete_homogeneous(n));
        }
    }

    #[test]
    fn decompose_small() {
        let x = BivariatePolynomial::x();
        let y = BivariatePolynomial::y();
        let d = decompose_gl2(&x.add(&y)).unwrap();
        assert_eq!(
            d.terms,
            vec![GlTwoTerm {
                p: 1,
                q: 0,
                mult: 1
            }]
        );
        let s2 = complete_homogeneous(2);
        assert_eq!(
            decompose_gl2(&s2).unwrap().terms,
            vec![GlTwoTerm {
                p: 2,
                q: 0,
                mult: 1
            }]
        );
        let sq = x.add(&y).pow(2);
        assert_eq!(
            decompose_gl2(&sq).unwrap().terms,
            vec![
                GlTwoTerm {
                    p: 2,
                    q: 0,
                    mult: 1
                },
                GlTwoTerm {
                    p: 0,
                    q: 1,
                    mult: 1
                }
            ]
        );
        assert!(decompose_gl2(&x).is_err());
        assert!(decompose_gl2(&x.pow(2).sub(&x.mul(&y))).is_err());
    }

    #[test]
    fn q_formula_floor_convention() {
        for n in 1..6 {
            for k in 0..5 {
                assert_eq!(q_formula(n, 0, k).unwrap(), 1);
            }
        }
        assert!(q_formula(3, 4, 2).is_err());
    }

    #[test]
    fn display() {
        let p = complete_homogeneous(2).sub(&BivariatePolynomial::monomial(0, 0, rat(3)));
        assert_eq!(p.to_string(), "x^2 + xy + y^2 - 3");
    }
}
