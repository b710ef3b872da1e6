//! Quantum weight enumerators and the closed-form QMDS distributions.
//!
//! A [`WeightDistribution`] always carries the trace convention it was
//! computed under, so that two distributions are only ever compared when
//! they describe the same normalisation of the code projector.
//!
//! Conventions:
//! * Shor-Laflamme weights use an error basis with `tr(E† E) = D^n`, so
//!   `A_0 = tr(Π)^2` and `B_0 = tr(Π^2)`.
//! * Unitary weights sum purities of reductions, `A'_j = Σ_{|S|=j} tr[tr_{S^c}(Π)^2]`.
//! * Closed-form QMDS enumerators use `tr(Π) = D^k`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactmath::{
    binomial, common_denominator, format_rational, rat, rat_pow, BivariateForm, KrawtchoukTable,
    Rational,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WeightKind {
    /// Shor-Laflamme primary weights `A_j`.
    SlPrimary,
    /// Shor-Laflamme dual weights `B_j`.
    SlDual,
    /// Unitary weights `A'_j`.
    UnitaryPrimary,
    /// Unitary dual weights `B'_j`.
    UnitaryDual,
    /// Shadow coefficients `S_j`.
    Shadow,
}

impl WeightKind {
    pub fn as_str(self) -> &'static str {
        match self {
            WeightKind::SlPrimary => "sl-primary",
            WeightKind::SlDual => "sl-dual",
            WeightKind::UnitaryPrimary => "unitary-primary",
            WeightKind::UnitaryDual => "unitary-dual",
            WeightKind::Shadow => "shadow",
        }
    }

    fn is_sl(self) -> bool {
        matches!(self, WeightKind::SlPrimary | WeightKind::SlDual)
    }

}

impl fmt::Display for WeightKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Weight sequence indexed `0..=n` together with its kind and trace convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    local_dim: u32,
    kind: WeightKind,
    trace: Rational,
    values: Vec<Rational>,
}

impl WeightDistribution {
    pub fn new(
        local_dim: u32,
        kind: WeightKind,
        trace: Rational,
        values: Vec<Rational>,
    ) -> Result<Self> {
        if local_dim < 2 {
            return Err(Error::domain(format!("local dimension must be >= 2, got {local_dim}")));
        }
        if values.is_empty() {
            return Err(Error::domain("a weight distribution needs n+1 >= 1 entries"));
        }
        Ok(WeightDistribution { local_dim, kind, trace, values })
    }

    /// Convenience constructor from integer weights.
    pub fn from_integers(
        local_dim: u32,
        kind: WeightKind,
        trace: i64,
        values: &[i64],
    ) -> Result<Self> {
        Self::new(local_dim, kind, rat(trace), values.iter().map(|&v| rat(v)).collect())
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn local_dim(&self) -> u32 {
        self.local_dim
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn trace(&self) -> &Rational {
        &self.trace
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn sum(&self) -> Rational {
        self.values.iter().sum()
    }

    /// Index and value of the first negative entry.
    pub fn first_negative(&self) -> Option<(usize, &Rational)> {
        self.values.iter().enumerate().find(|(_, v)| v.is_negative())
    }

    pub fn as_form(&self) -> BivariateForm {
        BivariateForm::new(self.values.clone()).expect("non-empty by construction")
    }

    fn with_values(&self, kind: WeightKind, values: Vec<Rational>) -> Self {
        WeightDistribution { local_dim: self.local_dim, kind, trace: self.trace.clone(), values }
    }

    /// Values rendered as `p/q` strings joined by commas.
    pub fn to_csv_line(&self) -> String {
        self.values.iter().map(format_rational).collect::<Vec<_>>().join(",")
    }
}

/// Parameters `(n, k, d)_D` with `K = D^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeParams {
    pub n: u32,
    /// `log_D K`, exact.
    pub k: Rational,
    pub d: u32,
    pub local_dim: u32,
}

impl CodeParams {
    pub fn new(n: u32, k: Rational, d: u32, local_dim: u32) -> Result<Self> {
        if local_dim < 2 {
            return Err(Error::domain(format!("local dimension must be >= 2, got {local_dim}")));
        }
        if k.is_negative() || k > rat(n as i64) {
            return Err(Error::domain(format!("need 0 <= k <= n, got k={k}, n={n}")));
        }
        if d < 1 || d > n {
            return Err(Error::domain(format!("need 1 <= d <= n, got d={d}, n={n}")));
        }
        Ok(CodeParams { n, k, d, local_dim })
    }

    /// Integer-`k` shorthand.
    pub fn with_k(n: u32, k: u32, d: u32, local_dim: u32) -> Result<Self> {
        Self::new(n, rat(k as i64), d, local_dim)
    }

    /// QMDS parameters of the family `n + k = sum` at distance `d`.
    pub fn qmds_member(sum: u32, d: u32, local_dim: u32) -> Result<Self> {
        if sum % 2 != 0 {
            return Err(Error::domain(format!("n+k must be even, got {sum}")));
        }
        let alpha = sum / 2;
        if d < 1 || d > alpha + 1 {
            return Err(Error::domain(format!("family n+k={sum} has 1 <= d <= {}", alpha + 1)));
        }
        Self::with_k(alpha + d - 1, alpha + 1 - d, d, local_dim)
    }

    /// Parameters from an explicit dimension `K`; `K` must be an integer power of `D`.
    pub fn with_dimension(n: u32, dimension: &BigInt, d: u32, local_dim: u32) -> Result<Self> {
        let k = integer_log(dimension, local_dim).ok_or_else(|| {
            Error::domain(format!("K={dimension} is not a power of D={local_dim}"))
        })?;
        Self::with_k(n, k, d, local_dim)
    }

    /// `k` if it is a non-negative integer.
    pub fn k_int(&self) -> Option<u32> {
        if self.k.is_integer() {
            self.k.to_integer().to_u32()
        } else {
            None
        }
    }

    /// `K = D^k` when `k` is an integer.
    pub fn dimension(&self) -> Option<BigInt> {
        self.k_int().map(|k| num_traits::pow(BigInt::from(self.local_dim), k as usize))
    }

    /// `α = (n + k) / 2`.
    pub fn alpha(&self) -> Rational {
        (rat(self.n as i64) + &self.k) / rat(2)
    }

    /// `k = n - 2d + 2` with integer `k >= 0`.
    pub fn is_qmds_form(&self) -> bool {
        let target = self.n as i64 - 2 * self.d as i64 + 2;
        target >= 0 && self.k == rat(target)
    }

    /// Pure-state parameters `((n, 1, ⌊n/2⌋ + 1))_D`.
    pub fn is_ame_form(&self) -> bool {
        self.k.is_zero() && self.d == self.n / 2 + 1
    }

    pub fn n_plus_k(&self) -> Option<u32> {
        self.k_int().map(|k| self.n + k)
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{},{}]]_{}", self.n, format_rational(&self.k), self.d, self.local_dim)
    }
}

/// `log_base(value)` when `value` is an exact power of `base`.
pub fn integer_log(value: &BigInt, base: u32) -> Option<u32> {
    if !value.is_positive() {
        return None;
    }
    let base = BigInt::from(base);
    let mut acc = BigInt::one();
    let mut k = 0u32;
    while &acc < value {
        acc *= &base;
        k += 1;
    }
    (&acc == value).then_some(k)
}

/// Trace convention and per-subset purities `tr[tr_{S^c}(Π)^2]` indexed by `|S|`.
fn subset_purities(p: &CodeParams) -> Result<(Rational, Vec<Rational>)> {
    let n = p.n as i64;
    let sizes = 0..=n;
    if let (true, Some(k)) = (p.is_qmds_form(), p.k_int()) {
        let k = k as i64;
        let two_alpha = n + k;
        let purities = sizes.map(|j| rat_pow(p.local_dim, 2 * k - (two_alpha - j).min(j))).collect();
        Ok((rat_pow(p.local_dim, k), purities))
    } else if p.is_ame_form() {
        // k = 0 pure state; also covers odd n
        let purities = sizes.map(|j| rat_pow(p.local_dim, -(j.min(n - j)))).collect();
        Ok((rat(1), purities))
    } else {
        Err(Error::domain(format!("{p} is neither QMDS- nor AME-form")))
    }
}

/// Closed-form unitary weights of a QMDS (or AME) parameter set.
pub fn qmds_unitary(p: &CodeParams) -> Result<WeightDistribution> {
    let (trace, purities) = subset_purities(p)?;
    let n = p.n as i64;
    let values = purities
        .into_iter()
        .enumerate()
        .map(|(j, purity)| Rational::from_integer(binomial(n, j as i64)) * purity)
        .collect();
    WeightDistribution::new(p.local_dim, WeightKind::UnitaryPrimary, trace, values)
}

/// Closed-form Shor-Laflamme weights of a QMDS (or AME) parameter set, by
/// Möbius inversion of the subset purities.
pub fn qmds_sl(p: &CodeParams) -> Result<WeightDistribution> {
    let (trace, purities) = subset_purities(p)?;
    let n = p.n as i64;
    let scaled: Vec<Rational> = purities
        .into_iter()
        .enumerate()
        .map(|(i, purity)| rat_pow(p.local_dim, i as i64) * purity)
        .collect();
    let values = (0..=p.n as i64)
        .map(|j| {
            let mut inner = Rational::zero();
            for i in 0..=j {
                let term = Rational::from_integer(binomial(j, i)) * &scaled[i as usize];
                if (j - i) % 2 == 0 {
                    inner += term;
                } else {
                    inner -= term;
                }
            }
            Rational::from_integer(binomial(n, j)) * inner
        })
        .collect();
    WeightDistribution::new(p.local_dim, WeightKind::SlPrimary, trace, values)
}

/// `A'_j = Σ_{i<=j} D^{-j} C(n-i, n-j) A_i` (and likewise for the dual pair).
pub fn unitary_from_sl(w: &WeightDistribution) -> Result<WeightDistribution> {
    let kind = match w.kind {
        WeightKind::SlPrimary => WeightKind::UnitaryPrimary,
        WeightKind::SlDual => WeightKind::UnitaryDual,
        other => return Err(Error::domain(format!("expected Shor-Laflamme weights, got {other}"))),
    };
    let n = w.n() as i64;
    let values = (0..=n)
        .map(|j| {
            let sum: Rational = (0..=j)
                .map(|i| Rational::from_integer(binomial(n - i, n - j)) * &w.values[i as usize])
                .sum();
            sum * rat_pow(w.local_dim, -j)
        })
        .collect();
    Ok(w.with_values(kind, values))
}

fn sl_kind_for(kind: WeightKind) -> Result<WeightKind> {
    match kind {
        WeightKind::UnitaryPrimary => Ok(WeightKind::SlPrimary),
        WeightKind::UnitaryDual => Ok(WeightKind::SlDual),
        other => Err(Error::domain(format!("expected unitary weights, got {other}"))),
    }
}

/// Inverse of [`unitary_from_sl`] by forward substitution on the
/// unit-triangular system `D^j A'_j = Σ_{i<=j} C(n-i, n-j) A_i`.
pub fn sl_from_unitary(w: &WeightDistribution) -> Result<WeightDistribution> {
    let kind = sl_kind_for(w.kind)?;
    let n = w.n() as i64;
    let mut out: Vec<Rational> = Vec::with_capacity(w.values.len());
    for j in 0..=n {
        let mut rhs = &w.values[j as usize] * rat_pow(w.local_dim, j);
        for (i, a) in out.iter().enumerate() {
            rhs -= Rational::from_integer(binomial(n - i as i64, n - j)) * a;
        }
        // diagonal coefficient C(n-j, n-j) = 1
        out.push(rhs);
    }
    Ok(w.with_values(kind, out))
}

/// Same result as [`sl_from_unitary`], via `A(x, y) = A'(x - y, D·y)`.
pub fn sl_from_unitary_by_substitution(w: &WeightDistribution) -> Result<WeightDistribution> {
    let kind = sl_kind_for(w.kind)?;
    let form = w.as_form().substitute(&rat(1), &rat(-1), &rat(0), &rat(w.local_dim as i64));
    Ok(w.with_values(kind, form.into_coeffs()))
}

/// `B'_j = A'_{n-j}`.
pub fn dual_unitary(w: &WeightDistribution) -> Result<WeightDistribution> {
    if w.kind != WeightKind::UnitaryPrimary {
        return Err(Error::domain(format!("expected unitary-primary weights, got {}", w.kind)));
    }
    let values = w.values.iter().rev().cloned().collect();
    Ok(w.with_values(WeightKind::UnitaryDual, values))
}

/// Shadow coefficients `S_j = Σ_l K_{n-j}(l, n) A'_l`.
pub fn shadow(w: &WeightDistribution) -> Result<WeightDistribution> {
    shadow_with_table(w, &KrawtchoukTable::new(w.n()))
}

/// [`shadow`] reusing a precomputed Krawtchouk table of matching length.
pub fn shadow_with_table(
    w: &WeightDistribution,
    table: &KrawtchoukTable,
) -> Result<WeightDistribution> {
    if w.kind != WeightKind::UnitaryPrimary {
        return Err(Error::domain(format!("expected unitary-primary weights, got {}", w.kind)));
    }
    let n = w.n();
    if table.n() != n {
        return Err(Error::domain(format!("Krawtchouk table for n={} used with n={n}", table.n())));
    }
    // integer arithmetic over a common denominator
    let den = common_denominator(&w.values);
    let scaled: Vec<BigInt> =
        w.values.iter().map(|v| (v * Rational::from_integer(den.clone())).to_integer()).collect();
    let values = (0..=n)
        .map(|j| {
            let mut acc = BigInt::zero();
            for (l, a) in scaled.iter().enumerate() {
                if !a.is_zero() {
                    acc += table.get(n - j, l) * a;
                }
            }
            Rational::new(acc, den.clone())
        })
        .collect();
    Ok(w.with_values(WeightKind::Shadow, values))
}

/// Same result as [`shadow`], via `S(x, y) = A'(x + y, y - x)`.
pub fn shadow_by_substitution(w: &WeightDistribution) -> Result<WeightDistribution> {
    if w.kind != WeightKind::UnitaryPrimary {
        return Err(Error::domain(format!("expected unitary-primary weights, got {}", w.kind)));
    }
    let form = w.as_form().substitute(&rat(1), &rat(1), &rat(-1), &rat(1));
    Ok(w.with_values(WeightKind::Shadow, form.into_coeffs()))
}

/// Outcome of [`code_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodeCheck {
    pub distance: usize,
    pub pure: bool,
}

/// Reads distance and purity off an enumerator pair via `K·B_j = A_j` for `j < d`.
///
/// For `K = 1` every pair satisfies `B = A`; such states only count as codes
/// when pure, so the distance is the first `j >= 1` with `A_j != 0`.
pub fn code_check(
    a: &WeightDistribution,
    b: &WeightDistribution,
    dimension: &Rational,
) -> Result<CodeCheck> {
    if a.n() != b.n() || a.local_dim != b.local_dim {
        return Err(Error::domain("enumerator pair must share n and D"));
    }
    if !a.kind.is_sl() || !b.kind.is_sl() {
        return Err(Error::domain("code_check expects Shor-Laflamme weights"));
    }
    if !dimension.is_positive() {
        return Err(Error::domain("K must be positive"));
    }
    let n = a.n();
    for j in 0..=n {
        if dimension * &b.values[j] < a.values[j] {
            return Err(Error::Inconsistent { index: j });
        }
    }
    let first_gap = (1..=n).find(|&j| dimension * &b.values[j] != a.values[j]);
    let distance = match first_gap {
        Some(j) => j,
        None => (1..=n).find(|&j| !a.values[j].is_zero()).unwrap_or(n + 1),
    };
    let pure = (1..distance).all(|j| a.values[j].is_zero());
    Ok(CodeCheck { distance, pure })
}

/// Whether two distributions agree in kind, dimension and values up to the
/// trace convention: `other` is rescaled by `(t_self / t_other)^2`.
pub fn equal_up_to_trace(lhs: &WeightDistribution, rhs: &WeightDistribution) -> bool {
    if lhs.kind != rhs.kind || lhs.local_dim != rhs.local_dim || lhs.n() != rhs.n() {
        return false;
    }
    if rhs.trace.is_zero() {
        return false;
    }
    let ratio = &lhs.trace / &rhs.trace;
    let scale = &ratio * &ratio;
    lhs.values.iter().zip(&rhs.values).all(|(l, r)| *l == r * &scale)
}
