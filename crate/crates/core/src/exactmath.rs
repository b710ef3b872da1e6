//! Exact integer and rational combinatorics.
//!
//! Everything here works on [`BigInt`] and [`BigRational`]; there is no
//! floating point anywhere in this module.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact rational number used throughout the crate.
pub type Rational = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// `base^exp` for a possibly negative exponent.
pub fn rat_pow(base: u32, exp: i64) -> Rational {
    let b = BigInt::from(base);
    let mag = num_traits::pow(b, exp.unsigned_abs() as usize);
    if exp >= 0 {
        Rational::from_integer(mag)
    } else {
        Rational::new(BigInt::one(), mag)
    }
}

/// Binomial coefficient `C(n, k)`; zero whenever `k < 0`, `k > n` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        // acc * (n - i) is always divisible by (i + 1) at this point.
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Krawtchouk polynomial `K_m(l, n) = Σ_β (-1)^β C(n-l, m-β) C(l, β)`.
pub fn krawtchouk(m: i64, l: i64, n: i64) -> Result<BigInt> {
    if n < 0 || m < 0 || l < 0 || m > n || l > n {
        return Err(Error::domain(format!(
            "krawtchouk requires 0 <= m, l <= n, got m={m}, l={l}, n={n}"
        )));
    }
    Ok(krawtchouk_unchecked(m, l, n))
}

fn krawtchouk_unchecked(m: i64, l: i64, n: i64) -> BigInt {
    let mut acc = BigInt::zero();
    for beta in 0..=m {
        let term = binomial(n - l, m - beta) * binomial(l, beta);
        if beta.is_odd() {
            acc -= term;
        } else {
            acc += term;
        }
    }
    acc
}

/// All Krawtchouk values `K_m(l, n)` for one length `n`, indexed `[m][l]`.
#[derive(Debug, Clone)]
pub struct KrawtchoukTable {
    n: usize,
    rows: Vec<Vec<BigInt>>,
}

impl KrawtchoukTable {
    pub fn new(n: usize) -> Self {
        let ni = n as i64;
        let rows = (0..=ni)
            .map(|m| (0..=ni).map(|l| krawtchouk_unchecked(m, l, ni)).collect())
            .collect();
        KrawtchoukTable { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, m: usize, l: usize) -> &BigInt {
        &self.rows[m][l]
    }
}

/// Homogeneous bivariate polynomial `Σ_j coeffs[j] x^(n-j) y^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BivariateForm {
    coeffs: Vec<Rational>,
}

impl BivariateForm {
    /// Builds a form of degree `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("a bivariate form needs at least one coefficient"));
        }
        Ok(BivariateForm { coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn evaluate(&self, x: &Rational, y: &Rational) -> Rational {
        let n = self.degree();
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * num_traits::pow(x.clone(), n - j) * num_traits::pow(y.clone(), j))
            .sum()
    }

    /// Expands `F(a·x + b·y, c·x + e·y)` exactly; the degree is preserved.
    pub fn substitute(&self, a: &Rational, b: &Rational, c: &Rational, e: &Rational) -> Self {
        let n = self.degree();
        // powers of the two linear forms, as coefficient vectors in y-degree
        let first = linear_powers(a, b, n);
        let second = linear_powers(c, e, n);
        let mut out = vec![Rational::zero(); n + 1];
        for (j, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let p = &first[n - j];
            let q = &second[j];
            for (i, pi) in p.iter().enumerate() {
                if pi.is_zero() {
                    continue;
                }
                let scaled = coeff * pi;
                for (l, ql) in q.iter().enumerate() {
                    if !ql.is_zero() {
                        out[i + l] += &scaled * ql;
                    }
                }
            }
        }
        BivariateForm { coeffs: out }
    }
}

/// `(u·x + v·y)^t` for `t = 0..=max`, each as coefficients of `x^(t-i) y^i`.
fn linear_powers(u: &Rational, v: &Rational, max: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(vec![Rational::one()]);
    for t in 1..=max {
        let prev: &Vec<Rational> = &out[t - 1];
        let mut next = vec![Rational::zero(); t + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i] += c * u;
            next[i + 1] += c * v;
        }
        out.push(next);
    }
    out
}

/// Free-standing form of [`BivariateForm::substitute`].
pub fn substitute(
    form: &BivariateForm,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    e: &Rational,
) -> BivariateForm {
    form.substitute(a, b, c, e)
}

/// Renders a rational as `p/q`, or `p` when integral.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(Rational::new(p, q))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Least common multiple of all denominators.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}
