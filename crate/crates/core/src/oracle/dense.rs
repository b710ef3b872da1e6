//! Floating-point evaluation of Shor-Laflamme weights from state vectors.
//!
//! This is the only inexact code path in the crate; every weight is rounded to
//! a rational with denominator `p^n` before it leaves this module.

use num_bigint::BigInt;
use num_complex::Complex64;

use super::code::StabilizerCode;
use super::pauli::PauliElement;
use crate::enumerators::{WeightDistribution, WeightKind};
use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// Largest Hilbert-space dimension `p^n` handled densely.
pub const MAX_DENSE_DIM: usize = 81;

pub const TOLERANCE: f64 = 1e-9;

fn hilbert_dim(p: u32, n: usize) -> Result<usize> {
    match (p as usize).checked_pow(n as u32) {
        Some(d) if d <= MAX_DENSE_DIM => Ok(d),
        _ => Err(Error::Dense(format!("{p}^{n} exceeds the dense limit of {MAX_DENSE_DIM}"))),
    }
}

fn zeta(p: u32, r: u32) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::PI * r as f64 / p as f64)
}

/// Action of `ζ^r X^x Z^z` on basis states: `E|j> = coeff[j] |perm[j]>`,
/// with site 0 the most significant digit.
struct Monomial {
    perm: Vec<usize>,
    coeff: Vec<Complex64>,
}

fn digits(mut j: usize, p: usize, n: usize) -> Vec<usize> {
    let mut d = vec![0; n];
    for i in (0..n).rev() {
        d[i] = j % p;
        j /= p;
    }
    d
}

fn monomial(e: &PauliElement) -> Monomial {
    let (p, n) = (e.p() as usize, e.n());
    let dim = p.pow(n as u32);
    let global = zeta(e.p(), e.phase());
    let mut perm = Vec::with_capacity(dim);
    let mut coeff = Vec::with_capacity(dim);
    for j in 0..dim {
        let d = digits(j, p, n);
        // Z^z contributes ω^{z·j} = ζ^{2 z·j}
        let zj: usize = (0..n).map(|i| e.zvec()[i] as usize * d[i]).sum();
        coeff.push(global * zeta(e.p(), (2 * zj % (2 * p)) as u32));
        let target = (0..n).fold(0, |acc, i| acc * p + (d[i] + e.xvec()[i] as usize) % p);
        perm.push(target);
    }
    Monomial { perm, coeff }
}

/// All `p^{2n}` phase-free Pauli operators.
fn all_paulis(p: u32, n: usize) -> impl Iterator<Item = PauliElement> {
    let total = (p as usize).pow(2 * n as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u32; 2 * n];
        for c in v.iter_mut() {
            *c = (idx % p as usize) as u32;
            idx /= p as usize;
        }
        PauliElement::new(p, 0, v[..n].to_vec(), v[n..].to_vec())
    })
}

fn round_exact(value: f64, p: u32, n: usize) -> Result<Rational> {
    let den = (p as f64).powi(n as i32);
    let num = (value * den).round();
    if (value - num / den).abs() > TOLERANCE {
        return Err(Error::Dense(format!("weight {value} is not within {TOLERANCE} of a multiple of 1/{den}")));
    }
    Ok(Rational::new(BigInt::from(num as i64), BigInt::from(den as i64)))
}

/// `A_j = Σ_{wt E = j} |tr(E Π)|²` and `B_j = Σ_{wt E = j} tr(E Π E† Π)` for
/// `Π = Σ |v><v|` over the given orthonormal vectors.
pub fn dense_weights(
    state_vectors: &[Vec<Complex64>],
    p: u32,
    n: usize,
) -> Result<(WeightDistribution, WeightDistribution)> {
    let dim = hilbert_dim(p, n)?;
    if state_vectors.is_empty() {
        return Err(Error::Dense("no state vectors".into()));
    }
    for (a, va) in state_vectors.iter().enumerate() {
        if va.len() != dim {
            return Err(Error::Dense(format!("vector {} has length {}, expected {dim}", a + 1, va.len())));
        }
        for (b, vb) in state_vectors.iter().enumerate() {
            let ip: Complex64 = va.iter().zip(vb).map(|(x, y)| x.conj() * y).sum();
            let want = if a == b { 1.0 } else { 0.0 };
            if (ip - want).norm() > TOLERANCE {
                return Err(Error::Dense(format!("vectors {} and {} are not orthonormal", a + 1, b + 1)));
            }
        }
    }
    let mut proj = vec![Complex64::new(0.0, 0.0); dim * dim];
    for v in state_vectors {
        for i in 0..dim {
            for j in 0..dim {
                proj[i * dim + j] += v[i] * v[j].conj();
            }
        }
    }
    let mut a = vec![0.0f64; n + 1];
    let mut b = vec![0.0f64; n + 1];
    for e in all_paulis(p, n) {
        let m = monomial(&e);
        // E = Σ_i c_i |π(i)><i|, so tr(E Π) = Σ_i c_i Π[i, π(i)]
        let tr: Complex64 = (0..dim).map(|i| m.coeff[i] * proj[i * dim + m.perm[i]]).sum();
        // tr(E Π E† Π) = Σ_{i,j} c_i conj(c_j) Π[i,j] Π[π(j), π(i)]
        let mut t2 = Complex64::new(0.0, 0.0);
        for i in 0..dim {
            for j in 0..dim {
                let pij = proj[i * dim + j];
                if pij.norm_sqr() == 0.0 {
                    continue;
                }
                t2 += m.coeff[i] * m.coeff[j].conj() * pij * proj[m.perm[j] * dim + m.perm[i]];
            }
        }
        let w = e.weight();
        a[w] += tr.norm_sqr();
        b[w] += t2.re;
    }
    let k = Rational::from_integer(BigInt::from(state_vectors.len()));
    let a = a.into_iter().map(|v| round_exact(v, p, n)).collect::<Result<Vec<_>>>()?;
    let b = b.into_iter().map(|v| round_exact(v, p, n)).collect::<Result<Vec<_>>>()?;
    Ok((
        WeightDistribution::new(p, WeightKind::SlPrimary, k.clone(), a)?,
        WeightDistribution::new(p, WeightKind::SlDual, k, b)?,
    ))
}

/// Orthonormal basis of the code space, from the dense projector
/// `Π = |S|^{-1} Σ_{M∈S} M` by Gram-Schmidt on its columns.
pub fn code_basis_vectors(code: &StabilizerCode) -> Result<Vec<Vec<Complex64>>> {
    let (p, n) = (code.p(), code.n());
    let dim = hilbert_dim(p, n)?;
    let mut elements = vec![PauliElement::identity(p, n)];
    for g in code.stabilizers() {
        let mut next = Vec::with_capacity(elements.len() * p as usize);
        for e in &elements {
            let mut cur = e.clone();
            for _ in 0..p {
                next.push(cur.clone());
                cur = cur.mul(g);
            }
        }
        elements = next;
    }
    let mut proj = vec![Complex64::new(0.0, 0.0); dim * dim];
    let scale = 1.0 / elements.len() as f64;
    for e in &elements {
        let m = monomial(e);
        for i in 0..dim {
            proj[m.perm[i] * dim + i] += m.coeff[i] * scale;
        }
    }
    let rank = (p as usize).pow(code.k() as u32);
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(rank);
    for col in 0..dim {
        if basis.len() == rank {
            break;
        }
        let mut v: Vec<Complex64> = (0..dim).map(|r| proj[r * dim + col]).collect();
        for b in &basis {
            let ip: Complex64 = b.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
            v.iter_mut().zip(b).for_each(|(vi, bi)| *vi -= ip * bi);
        }
        let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm > 1e-6 {
            v.iter_mut().for_each(|c| *c /= norm);
            basis.push(v);
        }
    }
    if basis.len() != rank {
        return Err(Error::Dense(format!("projector has rank {}, expected {rank}", basis.len())));
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn bell_state() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let v = vec![c(h), c(0.0), c(0.0), c(h)];
        let (a, b) = dense_weights(&[v], 2, 2).unwrap();
        assert_eq!(a.values(), &[rat(1), rat(0), rat(3)]);
        assert_eq!(b.values(), a.values());
    }

    #[test]
    fn single_qubit_zero() {
        let (a, _) = dense_weights(&[vec![c(1.0), c(0.0)]], 2, 1).unwrap();
        assert_eq!(a.values(), &[rat(1), rat(1)]);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(dense_weights(&[vec![c(1.0), c(1.0)]], 2, 1).is_err());
        assert!(dense_weights(&[vec![c(1.0); 128]], 2, 7).is_err());
        assert!(dense_weights(&[vec![c(1.0), c(0.0)], vec![c(1.0), c(0.0)]], 2, 1).is_err());
    }
}
