//! Exact weights of stabilizer codes by group enumeration.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::census::{self, check_budget};
use super::code::{symplectic_complement, StabilizerCode};
use super::linalg::{nullspace, rank};
use super::subset::Subset;
use crate::enumerators::{WeightDistribution, WeightKind};
use crate::error::{Error, Result};
use crate::exactmath::{rat_pow, Rational};

/// Largest `n` for which per-subset tables (`2^n` entries) are built.
pub const MAX_SUBSET_N: usize = 16;

/// Weights indexed by subsets of `{1..n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FineGrainedWeights {
    n: usize,
    local_dim: u32,
    values: Vec<Rational>,
}

impl FineGrainedWeights {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn local_dim(&self) -> u32 {
        self.local_dim
    }

    pub fn get(&self, s: Subset) -> &Rational {
        &self.values[s.bits() as usize]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Subset, &Rational)> {
        self.values.iter().enumerate().map(|(i, v)| (Subset(i as u32), v))
    }

    /// Sums over all subsets of each size.
    pub fn symmetrize(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n + 1];
        for (s, v) in self.iter() {
            out[s.len()] += v;
        }
        out
    }
}

fn k_squared(code: &StabilizerCode) -> Rational {
    let k = Rational::from_integer(code.dimension());
    &k * &k
}

fn stabilizer_budget(code: &StabilizerCode) -> Result<()> {
    check_budget(code.p(), code.n() - code.k(), "stabilizer group").map(|_| ())
}

fn normalizer_budget(code: &StabilizerCode) -> Result<()> {
    check_budget(code.p(), code.n() + code.k(), "normalizer group").map(|_| ())
}

fn scaled(hist: &[u64], factor: &Rational) -> Vec<Rational> {
    hist.iter().map(|&c| Rational::from_integer(BigInt::from(c)) * factor).collect()
}

/// Shor-Laflamme pair `A_j = K² N_j(S)`, `B_j = K N_j(N(S))`.
pub fn group_sl_weights(code: &StabilizerCode) -> Result<(WeightDistribution, WeightDistribution)> {
    stabilizer_budget(code)?;
    normalizer_budget(code)?;
    let (p, n) = (code.p(), code.n());
    let k = Rational::from_integer(code.dimension());
    let a_hist = census::weight_histogram(p, n, &code.stabilizer_rows())?;
    let b_hist = census::weight_histogram(p, n, &code.normalizer_rows())?;
    let a = WeightDistribution::new(p, WeightKind::SlPrimary, k.clone(), scaled(&a_hist, &k_squared(code)))?;
    let b = WeightDistribution::new(p, WeightKind::SlDual, k.clone(), scaled(&b_hist, &k))?;
    Ok((a, b))
}

/// Basis of the stabilizer elements acting trivially outside `s`, as vectors on all `n` sites.
fn supported_subgroup(code: &StabilizerCode, s: Subset) -> Vec<Vec<u32>> {
    let (p, n) = (code.p(), code.n());
    let rows = code.stabilizer_rows();
    let outside: Vec<usize> = s.complement(n).sites().collect();
    // coefficient vectors c with Σ c_i rows_i vanishing on every column outside s
    let columns: Vec<Vec<u32>> = outside
        .iter()
        .flat_map(|&i| [i, n + i])
        .map(|col| rows.iter().map(|r| r[col]).collect())
        .collect();
    nullspace(&columns, rows.len(), p)
        .iter()
        .map(|c| super::linalg::combine(&rows, c, 2 * n, p))
        .collect()
}

/// `log_p |S_s|`, the dimension of the stabilizer subgroup supported in `s`.
fn supported_dimension(code: &StabilizerCode, s: Subset) -> usize {
    let (p, n) = (code.p(), code.n());
    let rows = code.stabilizer_rows();
    let outside: Vec<usize> = s.complement(n).sites().collect();
    let restricted: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| outside.iter().flat_map(|&i| [r[i], r[n + i]]).collect())
        .collect();
    let r = if outside.is_empty() { 0 } else { rank(&restricted, p) };
    rows.len() - r
}

/// `𝒜'_S = K² |S_S| / p^{|S|}`.
pub fn fine_grained_unitary(code: &StabilizerCode, s: Subset) -> Result<Rational> {
    if !s.is_subset_of(Subset::full(code.n())) {
        return Err(Error::domain(format!("subset {s} is not inside 1..={}", code.n())));
    }
    let dim = supported_dimension(code, s) as i64;
    Ok(k_squared(code) * rat_pow(code.p(), dim - s.len() as i64))
}

fn table_budget(code: &StabilizerCode) -> Result<()> {
    if code.n() > MAX_SUBSET_N {
        return Err(Error::Budget(format!(
            "per-subset tables need n <= {MAX_SUBSET_N}, got {}",
            code.n()
        )));
    }
    Ok(())
}

/// Fine-grained Shor-Laflamme weights `(𝒜_S, ℬ_S)`: `K²` (resp. `K`) times the
/// number of stabilizer (resp. normalizer) elements with support exactly `S`.
pub fn fine_grained_sl(code: &StabilizerCode) -> Result<(FineGrainedWeights, FineGrainedWeights)> {
    table_budget(code)?;
    stabilizer_budget(code)?;
    normalizer_budget(code)?;
    let (p, n) = (code.p(), code.n());
    let k = Rational::from_integer(code.dimension());
    let a = census::support_table(p, n, &code.stabilizer_rows())?;
    let b = census::support_table(p, n, &code.normalizer_rows())?;
    Ok((
        FineGrainedWeights { n, local_dim: p, values: scaled(&a, &k_squared(code)) },
        FineGrainedWeights { n, local_dim: p, values: scaled(&b, &k) },
    ))
}

/// `|S_S|` for every subset `S`, from the support census by a subset-sum transform.
fn supported_counts(code: &StabilizerCode) -> Result<Vec<u64>> {
    table_budget(code)?;
    stabilizer_budget(code)?;
    let n = code.n();
    let mut t = census::support_table(code.p(), n, &code.stabilizer_rows())?;
    for bit in 0..n {
        for mask in 0..t.len() {
            if mask >> bit & 1 == 1 {
                t[mask] += t[mask ^ 1 << bit];
            }
        }
    }
    Ok(t)
}

/// `𝒜'_S` for every subset `S`.
pub fn fine_grained_unitary_all(code: &StabilizerCode) -> Result<FineGrainedWeights> {
    let counts = supported_counts(code)?;
    let k2 = k_squared(code);
    let p = code.p();
    let values = counts
        .iter()
        .enumerate()
        .map(|(mask, &c)| {
            Rational::from_integer(BigInt::from(c)) * &k2 * rat_pow(p, -(mask.count_ones() as i64))
        })
        .collect();
    Ok(FineGrainedWeights { n: code.n(), local_dim: p, values })
}

/// `Σ_S (-1)^{|S∩T|} 𝒜'_S` for every `T`, by a Walsh-Hadamard transform over
/// integers scaled by `p^n`.
pub fn shadow_direct_all(code: &StabilizerCode) -> Result<Vec<Rational>> {
    let counts = supported_counts(code)?;
    let (p, n) = (code.p(), code.n());
    let pn = (p as i128).pow(n as u32);
    let mut t: Vec<i128> = counts
        .iter()
        .enumerate()
        .map(|(mask, &c)| c as i128 * pn / (p as i128).pow(mask.count_ones()))
        .collect();
    let mut h = 1;
    while h < t.len() {
        for start in (0..t.len()).step_by(2 * h) {
            for i in start..start + h {
                let (u, v) = (t[i], t[i + h]);
                t[i] = u + v;
                t[i + h] = u - v;
            }
        }
        h *= 2;
    }
    let scale = k_squared(code) / Rational::from_integer(BigInt::from(pn));
    Ok(t.into_iter().map(|v| Rational::from_integer(BigInt::from(v)) * &scale).collect())
}

/// `Σ_{S ⊆ {1..n}} (-1)^{|S∩T|} 𝒜'_S`.
pub fn shadow_direct(code: &StabilizerCode, t: Subset) -> Result<Rational> {
    if !t.is_subset_of(Subset::full(code.n())) {
        return Err(Error::domain(format!("subset {t} is not inside 1..={}", code.n())));
    }
    let values = fine_grained_unitary_all(code)?;
    Ok(values
        .iter()
        .map(|(s, v)| if s.intersection(t).len() % 2 == 1 { -v.clone() } else { v.clone() })
        .sum())
}

/// Shadow coefficients aggregated by `j = |T^c|`.
pub fn shadow_aggregate(code: &StabilizerCode) -> Result<WeightDistribution> {
    let n = code.n();
    let all = shadow_direct_all(code)?;
    let mut out = vec![Rational::zero(); n + 1];
    for (mask, v) in all.iter().enumerate() {
        out[n - (mask as u32).count_ones() as usize] += v;
    }
    let k = Rational::from_integer(code.dimension());
    WeightDistribution::new(code.p(), WeightKind::Shadow, k, out)
}

/// Shor-Laflamme pair of `M = D^{|V|} tr_V(Π)` on the remaining `n - |V|` systems.
///
/// With `G` the stabilizer subgroup supported off `V` (restricted to those
/// systems) and `c = p^{2|V|} / |S|`, `M = c Σ_{g∈G} g`.
pub fn reduced_weights(code: &StabilizerCode, v: Subset) -> Result<(WeightDistribution, WeightDistribution)> {
    let (p, n) = (code.p(), code.n());
    if !v.is_subset_of(Subset::full(n)) {
        return Err(Error::domain(format!("subset {v} is not inside 1..={n}")));
    }
    if v.len() == n {
        return Err(Error::domain("cannot trace out every system"));
    }
    stabilizer_budget(code)?;
    let keep: Vec<usize> = v.complement(n).sites().collect();
    let n2 = keep.len();
    let restrict = |r: &Vec<u32>| -> Vec<u32> {
        keep.iter().map(|&i| r[i]).chain(keep.iter().map(|&i| r[n + i])).collect()
    };
    let g: Vec<Vec<u32>> = supported_subgroup(code, v.complement(n)).iter().map(restrict).collect();
    let g_perp = symplectic_complement(p, n2, &g);
    check_budget(p, g_perp.len(), "restricted normalizer")?;

    let s_size = rat_pow(p, (n - code.k()) as i64);
    let c = rat_pow(p, 2 * v.len() as i64) / s_size;
    let g_size = rat_pow(p, g.len() as i64);
    let trace = &c * rat_pow(p, n2 as i64);
    let a_scale = &c * &c * rat_pow(p, 2 * n2 as i64);
    let b_scale = &c * &c * rat_pow(p, n2 as i64) * g_size;
    let a_hist = census::weight_histogram(p, n2, &g)?;
    let b_hist = census::weight_histogram(p, n2, &g_perp)?;
    let a = WeightDistribution::new(p, WeightKind::SlPrimary, trace.clone(), scaled(&a_hist, &a_scale))?;
    let b = WeightDistribution::new(p, WeightKind::SlDual, trace, scaled(&b_hist, &b_scale))?;
    Ok((a, b))
}

/// Entropy (in units of `log p`) of subsystem `a` of a pure stabilizer state:
/// `|A| - log_p |S_A|`.
pub fn subsystem_entropy(code: &StabilizerCode, a: Subset) -> Result<Rational> {
    if code.k() != 0 {
        return Err(Error::domain(format!("entropy needs a pure state (k = 0), got k = {}", code.k())));
    }
    if !a.is_subset_of(Subset::full(code.n())) {
        return Err(Error::domain(format!("subset {a} is not inside 1..={}", code.n())));
    }
    let dim = supported_dimension(code, a);
    Ok(Rational::from_integer(BigInt::from(a.len() as i64 - dim as i64)))
}

/// Average entropy over all subsets of size `m`.
pub fn average_entropy(code: &StabilizerCode, m: usize) -> Result<Rational> {
    let mut total = Rational::zero();
    let mut count = Rational::zero();
    for s in Subset::of_size(code.n(), m) {
        total += subsystem_entropy(code, s)?;
        count += Rational::one();
    }
    if count.is_zero() {
        return Err(Error::domain(format!("no subsets of size {m} in {} systems", code.n())));
    }
    Ok(total / count)
}
