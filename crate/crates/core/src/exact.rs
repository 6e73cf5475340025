//! Exact arithmetic helpers: rationals, binomials and integer power series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational number. All coefficients in the crate use this type.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `C(n, k)` with `C(n, k) = 0` whenever `k < 0` or `k > n >= 0`.
///
/// For negative `n` the generalized binomial `n(n-1)...(n-k+1)/k!` is used.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    if n >= 0 && k > n {
        return BigInt::zero();
    }
    let k = if n >= 0 && k > n - k { n - k } else { k };
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// Integer polynomial in one variable, dense, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly(pub Vec<i64>);

impl IntPoly {
    pub fn new(coeffs: Vec<i64>) -> Self {
        let mut p = IntPoly(coeffs);
        p.trim();
        p
    }

    pub fn one() -> Self {
        IntPoly(vec![1])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        IntPoly(c)
    }

    /// `1 - x^k`
    pub fn one_minus_power(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[0] = 1;
        c[k] -= 1;
        IntPoly::new(c)
    }

    fn trim(&mut self) {
        while self.0.len() > 1 && *self.0.last().unwrap() == 0 {
            self.0.pop();
        }
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.0.is_empty() || other.0.is_empty() {
            return IntPoly(vec![0]);
        }
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let len = self.0.len().max(other.0.len());
        IntPoly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn product(factors: &[IntPoly]) -> IntPoly {
        factors.iter().fold(IntPoly::one(), |acc, f| acc.mul(f))
    }
}

/// First `count` coefficients of the formal expansion of `numer / denom`.
///
/// The denominator must have constant term `±1`; coefficients follow from the
/// linear recurrence `c_j = (a_j - sum_{i>=1} d_i c_{j-i}) / d_0`.
pub fn series_coeffs(numer: &IntPoly, denom: &IntPoly, count: usize) -> Result<Vec<i64>> {
    let d0 = denom.coeff(0);
    if d0 != 1 && d0 != -1 {
        return Err(Error::NonInvertibleSeries(d0));
    }
    if count == 0 {
        return Err(Error::InvalidArgument(
            "series_coeffs: count must be positive".into(),
        ));
    }
    let mut out: Vec<i64> = Vec::with_capacity(count);
    for j in 0..count {
        let mut acc = numer.coeff(j);
        for i in 1..denom.0.len().min(j + 1) {
            acc -= denom.coeff(i) * out[j - i];
        }
        out.push(acc * d0);
    }
    Ok(out)
}

/// A rational generating function `numer / denom` with cached coefficients.
#[derive(Clone, Debug)]
pub struct IntegerSeries {
    numer: IntPoly,
    denom: IntPoly,
    cache: Vec<i64>,
}

impl IntegerSeries {
    pub fn new(numer: IntPoly, denom: IntPoly) -> Result<Self> {
        let cache = series_coeffs(&numer, &denom, 1)?;
        Ok(IntegerSeries {
            numer,
            denom,
            cache,
        })
    }

    /// `1 / ((1 - x^2)(1 - x^3))`, the generating function of the `a_j`.
    pub fn cubic_a() -> Self {
        Self::new(
            IntPoly::one(),
            IntPoly::one_minus_power(2).mul(&IntPoly::one_minus_power(3)),
        )
        .expect("valid series")
    }

    /// `x^4 / ((1 - x^2)(1 - x^3))`.
    pub fn cubic_b() -> Self {
        Self::new(
            IntPoly::monomial(4),
            IntPoly::one_minus_power(2).mul(&IntPoly::one_minus_power(3)),
        )
        .expect("valid series")
    }

    pub fn numerator(&self) -> &IntPoly {
        &self.numer
    }

    pub fn denominator(&self) -> &IntPoly {
        &self.denom
    }

    /// Coefficient of `x^j`; negative `j` gives 0.
    pub fn coeff(&mut self, j: i64) -> i64 {
        if j < 0 {
            return 0;
        }
        let j = j as usize;
        if j >= self.cache.len() {
            self.cache = series_coeffs(&self.numer, &self.denom, (j + 1).max(2 * self.cache.len()))
                .expect("denominator validated at construction");
        }
        self.cache[j]
    }

    pub fn coeffs(&mut self, count: usize) -> Vec<i64> {
        if count > 0 {
            self.coeff(count as i64 - 1);
        }
        self.cache[..count].to_vec()
    }
}

/// Floor division toward negative infinity.
pub fn floor_div(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

pub fn ceil_div(a: i64, b: i64) -> i64 {
    -floor_div(-a, b)
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Least common multiple of the denominators, used to clear a vector projectively.
pub fn lcm_denominators<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

pub fn gcd_numerators<'a>(values: impl Iterator<Item = &'a BigInt>) -> BigInt {
    use num_integer::Integer;
    values.fold(BigInt::zero(), |acc, v| acc.gcd(v)).abs()
}
