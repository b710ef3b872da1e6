use std::fmt;

use super::subset::Subset;

/// Generalized Pauli operator `ζ^phase X^x Z^z` on `n` systems of prime dimension `p`,
/// with `ζ = exp(iπ/p)`.
///
/// `X|j> = |j+1>` and `Z|j> = ω^j |j>` with `ω = ζ²`, so `Z X = ω X Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliElement {
    p: u32,
    phase: u32,
    x: Vec<u32>,
    z: Vec<u32>,
}

impl PauliElement {
    /// Builds an element, reducing entries mod `p` and the phase mod `2p`.
    pub fn new(p: u32, phase: i64, x: Vec<u32>, z: Vec<u32>) -> Self {
        assert_eq!(x.len(), z.len(), "x and z parts must have equal length");
        let x = x.into_iter().map(|v| v % p).collect();
        let z = z.into_iter().map(|v| v % p).collect();
        PauliElement { p, phase: phase.rem_euclid(2 * p as i64) as u32, x, z }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        PauliElement { p, phase: 0, x: vec![0; n], z: vec![0; n] }
    }

    /// Builds `ζ^r X^x Z^z` from a symplectic vector `(x | z)`, choosing `r` so that
    /// the element has order `p` (for qubits this makes it Hermitian).
    pub fn from_symplectic(p: u32, v: &[u32]) -> Self {
        let n = v.len() / 2;
        let x = v[..n].to_vec();
        let z = v[n..].to_vec();
        let phase = if p == 2 { (dot(&x, &z, 2) % 2) as i64 } else { 0 };
        PauliElement::new(p, phase, x, z)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    /// Exponent of `ζ`, in `0..2p`.
    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn xvec(&self) -> &[u32] {
        &self.x
    }

    pub fn zvec(&self) -> &[u32] {
        &self.z
    }

    /// The vector `(x | z)` of length `2n`.
    pub fn symplectic_vector(&self) -> Vec<u32> {
        let mut v = self.x.clone();
        v.extend_from_slice(&self.z);
        v
    }

    pub fn support(&self) -> Subset {
        Subset::from_sites((0..self.n()).filter(|&i| self.x[i] != 0 || self.z[i] != 0))
    }

    pub fn weight(&self) -> usize {
        (0..self.n()).filter(|&i| self.x[i] != 0 || self.z[i] != 0).count()
    }

    pub fn is_identity_up_to_phase(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&v| v == 0)
    }

    /// Symplectic form `x·z' − z·x'` mod `p`; zero iff the two elements commute.
    pub fn symplectic(&self, other: &PauliElement) -> u32 {
        symplectic_form(&self.symplectic_vector(), &other.symplectic_vector(), self.p)
    }

    pub fn commutes_with(&self, other: &PauliElement) -> bool {
        self.symplectic(other) == 0
    }

    pub fn mul(&self, other: &PauliElement) -> PauliElement {
        let p = self.p;
        let n = self.n();
        let cross = dot(&self.z, &other.x, p);
        let phase = self.phase as i64 + other.phase as i64 + 2 * cross as i64;
        let x = (0..n).map(|i| self.x[i] + other.x[i]).collect();
        let z = (0..n).map(|i| self.z[i] + other.z[i]).collect();
        PauliElement::new(p, phase, x, z)
    }

    pub fn pow(&self, e: u32) -> PauliElement {
        let mut out = PauliElement::identity(self.p, self.n());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Tensor product `self ⊗ other`.
    pub fn tensor(&self, other: &PauliElement) -> PauliElement {
        let mut x = self.x.clone();
        x.extend_from_slice(&other.x);
        let mut z = self.z.clone();
        z.extend_from_slice(&other.z);
        PauliElement::new(self.p, (self.phase + other.phase) as i64, x, z)
    }

    /// Same operator acting on the sites in `sites`, in that order.
    pub fn restrict(&self, sites: &[usize]) -> PauliElement {
        PauliElement {
            p: self.p,
            phase: self.phase,
            x: sites.iter().map(|&i| self.x[i]).collect(),
            z: sites.iter().map(|&i| self.z[i]).collect(),
        }
    }
}

impl fmt::Display for PauliElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.phase)?;
        for i in 0..self.n() {
            let (a, b) = (self.x[i], self.z[i]);
            f.write_str(" ")?;
            match (a, b) {
                (0, 0) => f.write_str("I")?,
                (a, 0) => write!(f, "X^{a}")?,
                (0, b) => write!(f, "Z^{b}")?,
                (a, b) => write!(f, "X^{a}Z^{b}")?,
            }
        }
        Ok(())
    }
}

pub(crate) fn dot(a: &[u32], b: &[u32], p: u32) -> u32 {
    (a.iter().zip(b).map(|(&u, &v)| u as u64 * v as u64).sum::<u64>() % p as u64) as u32
}

/// Symplectic form on vectors `(x | z)`.
pub(crate) fn symplectic_form(u: &[u32], v: &[u32], p: u32) -> u32 {
    let n = u.len() / 2;
    let a = dot(&u[..n], &v[n..], p);
    let b = dot(&u[n..], &v[..n], p);
    (a + p - b) % p
}

/// Support of a symplectic vector `(x | z)` as a bitmask.
pub(crate) fn support_of(v: &[u32]) -> u32 {
    let n = v.len() / 2;
    (0..n).fold(0, |acc, i| if v[i] != 0 || v[n + i] != 0 { acc | 1 << i } else { acc })
}
