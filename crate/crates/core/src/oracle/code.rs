use num_bigint::BigInt;

use super::linalg::{self, nullspace, rank};
use super::pauli::{symplectic_form, PauliElement};
use crate::error::{Error, Result};

/// Stabilizer code over `n` systems of prime dimension `p`.
///
/// Logical generators are stored as `[X̄_1, Z̄_1, X̄_2, Z̄_2, ...]` with
/// `<X̄_i, Z̄_j> = δ_ij` and all other pairs commuting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    p: u32,
    n: usize,
    stabilizers: Vec<PauliElement>,
    logicals: Option<Vec<PauliElement>>,
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Validates generators and, when `logical_gens` is `None`, completes them.
pub fn make_code(
    p: u32,
    n: usize,
    stab_gens: Vec<PauliElement>,
    logical_gens: Option<Vec<PauliElement>>,
) -> Result<StabilizerCode> {
    if !is_prime(p) {
        return Err(Error::code(format!("local dimension {p} is not prime")));
    }
    if n == 0 || n > 32 {
        return Err(Error::code(format!("length {n} outside 1..=32")));
    }
    for g in stab_gens.iter().chain(logical_gens.iter().flatten()) {
        if g.p() != p || g.n() != n {
            return Err(Error::code(format!("generator {g} does not act on {n} systems of dimension {p}")));
        }
    }
    if stab_gens.len() > n {
        return Err(Error::code("more than n stabilizer generators"));
    }
    for (i, a) in stab_gens.iter().enumerate() {
        for (j, b) in stab_gens.iter().enumerate().skip(i + 1) {
            if !a.commutes_with(b) {
                return Err(Error::code(format!("stabilizer generators {} and {} do not commute", i + 1, j + 1)));
            }
        }
        if a.pow(p) != PauliElement::identity(p, n) {
            return Err(Error::code(format!(
                "stabilizer generator {} has inconsistent phase (its p-th power is not the identity)",
                i + 1
            )));
        }
    }
    let rows: Vec<Vec<u32>> = stab_gens.iter().map(PauliElement::symplectic_vector).collect();
    if rank(&rows, p) != rows.len() {
        return Err(Error::code("stabilizer generators are dependent"));
    }
    let k = n - stab_gens.len();
    let logicals = match logical_gens {
        Some(l) => {
            check_logicals(p, &rows, &l, k)?;
            l
        }
        None => complete_logicals(p, n, &rows)?,
    };
    Ok(StabilizerCode { p, n, stabilizers: stab_gens, logicals: Some(logicals) })
}

fn check_logicals(p: u32, stab_rows: &[Vec<u32>], logicals: &[PauliElement], k: usize) -> Result<()> {
    if logicals.len() != 2 * k {
        return Err(Error::code(format!("expected {} logical generators, got {}", 2 * k, logicals.len())));
    }
    let lrows: Vec<Vec<u32>> = logicals.iter().map(PauliElement::symplectic_vector).collect();
    for (i, l) in lrows.iter().enumerate() {
        if stab_rows.iter().any(|s| symplectic_form(s, l, p) != 0) {
            return Err(Error::code(format!("logical generator {} does not commute with the stabilizer", i + 1)));
        }
    }
    for i in 0..2 * k {
        for j in 0..2 * k {
            let want = match (i / 2 == j / 2, i % 2, j % 2) {
                (true, 0, 1) => 1,
                (true, 1, 0) => p - 1,
                _ => 0,
            };
            if symplectic_form(&lrows[i], &lrows[j], p) != want {
                return Err(Error::code(format!(
                    "logical generators {} and {} violate canonical commutation",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Normalizer modulo stabilizer, put into canonical pairs by symplectic Gram-Schmidt.
fn complete_logicals(p: u32, n: usize, stab_rows: &[Vec<u32>]) -> Result<Vec<PauliElement>> {
    let mut pool = quotient_basis(p, n, stab_rows);
    let mut out = Vec::with_capacity(pool.len());
    while let Some(v) = pool.pop() {
        let Some(pos) = pool.iter().position(|w| symplectic_form(&v, w, p) != 0) else {
            return Err(Error::code("normalizer quotient is degenerate"));
        };
        let mut w = pool.swap_remove(pos);
        let s = linalg::inv_mod(symplectic_form(&v, &w, p), p);
        w.iter_mut().for_each(|c| *c = *c * s % p);
        for u in pool.iter_mut() {
            let uw = symplectic_form(u, &w, p);
            let uv = symplectic_form(u, &v, p);
            linalg::axpy(u, &v, (p - uw) % p, p);
            linalg::axpy(u, &w, uv, p);
        }
        out.push(PauliElement::from_symplectic(p, &v));
        out.push(PauliElement::from_symplectic(p, &w));
    }
    Ok(out)
}

/// Basis of the symplectic complement of `rows` in `Z_p^{2n}`.
pub(crate) fn symplectic_complement(p: u32, n: usize, rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    // <u, v> = 0 for all rows u  <=>  (-u_z | u_x) · v = 0
    let twisted: Vec<Vec<u32>> = rows
        .iter()
        .map(|u| {
            let mut t: Vec<u32> = u[n..].iter().map(|&c| (p - c) % p).collect();
            t.extend_from_slice(&u[..n]);
            t
        })
        .collect();
    nullspace(&twisted, 2 * n, p)
}

/// Normalizer vectors that extend the stabilizer rows to a basis of the normalizer.
fn quotient_basis(p: u32, n: usize, stab_rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut span = stab_rows.to_vec();
    let mut r = span.len();
    let mut out = Vec::new();
    for v in symplectic_complement(p, n, stab_rows) {
        span.push(v.clone());
        let r2 = rank(&span, p);
        if r2 > r {
            r = r2;
            out.push(v);
        } else {
            span.pop();
        }
    }
    out
}

impl StabilizerCode {
    /// Pure stabilizer state with the given symplectic rows; phases chosen by
    /// [`PauliElement::from_symplectic`].
    pub fn from_symplectic_rows(p: u32, n: usize, rows: &[Vec<u32>]) -> Result<Self> {
        let gens = rows.iter().map(|r| PauliElement::from_symplectic(p, r)).collect();
        make_code(p, n, gens, None)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.n - self.stabilizers.len()
    }

    /// Code dimension `K = p^k`.
    pub fn dimension(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.p), self.k())
    }

    pub fn stabilizers(&self) -> &[PauliElement] {
        &self.stabilizers
    }

    pub fn logicals(&self) -> Option<&[PauliElement]> {
        self.logicals.as_deref()
    }

    pub fn stabilizer_rows(&self) -> Vec<Vec<u32>> {
        self.stabilizers.iter().map(PauliElement::symplectic_vector).collect()
    }

    /// Basis of the normalizer `N(S)`: stabilizer rows followed by logical rows.
    pub fn normalizer_rows(&self) -> Vec<Vec<u32>> {
        let mut rows = self.stabilizer_rows();
        match &self.logicals {
            Some(l) => rows.extend(l.iter().map(PauliElement::symplectic_vector)),
            None => rows.extend(quotient_basis(self.p, self.n, &rows.clone())),
        }
        rows
    }

    /// Same code with the logical generators dropped.
    pub fn strip_logicals(&self) -> StabilizerCode {
        StabilizerCode { logicals: None, ..self.clone() }
    }

    /// Pure state on `n + k` systems: each logical pair is coupled to its own
    /// reference system, `X̄_i ⊗ X` and `Z̄_i ⊗ Z^{-1}`.
    pub fn purify(&self) -> Result<StabilizerCode> {
        let k = self.k();
        if k == 0 {
            return Ok(self.clone());
        }
        let logicals = self
            .logicals
            .as_ref()
            .ok_or_else(|| Error::code("purification needs logical generators"))?;
        let p = self.p;
        let mut gens: Vec<PauliElement> = self
            .stabilizers
            .iter()
            .map(|g| g.tensor(&PauliElement::identity(p, k)))
            .collect();
        for (i, l) in logicals.iter().enumerate() {
            let mut rx = vec![0; k];
            let mut rz = vec![0; k];
            if i % 2 == 0 {
                rx[i / 2] = 1;
            } else {
                rz[i / 2] = p - 1;
            }
            let mut v = l.tensor(&PauliElement::new(p, 0, rx, rz)).symplectic_vector();
            v.iter_mut().for_each(|c| *c %= p);
            gens.push(PauliElement::from_symplectic(p, &v));
        }
        make_code(p, self.n + k, gens, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_row(s: &str) -> PauliElement {
        let x = s.chars().map(|c| matches!(c, 'X' | 'Y') as u32).collect();
        let z = s.chars().map(|c| matches!(c, 'Z' | 'Y') as u32).collect();
        let ys = s.chars().filter(|&c| c == 'Y').count() as i64;
        PauliElement::new(2, ys, x, z)
    }

    #[test]
    fn five_qubit_code_is_valid() {
        let gens = ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"].map(parse_row).to_vec();
        let code = make_code(2, 5, gens, None).unwrap();
        assert_eq!(code.k(), 1);
        let l = code.logicals().unwrap();
        assert_eq!(l.len(), 2);
        assert_eq!(l[0].symplectic(&l[1]), 1);
    }

    #[test]
    fn rejects_bad_inputs() {
        let x = PauliElement::new(2, 0, vec![1], vec![0]);
        let z = PauliElement::new(2, 0, vec![0], vec![1]);
        assert!(matches!(make_code(2, 1, vec![x.clone(), z], None), Err(Error::InvalidCode(_))));
        let x4 = PauliElement::new(4, 0, vec![1], vec![0]);
        assert!(make_code(4, 1, vec![x4], None).is_err());
        assert!(make_code(2, 2, vec![parse_row("XX"), parse_row("XX")], None).is_err());
        // iX squares to -I
        let ix = PauliElement::new(2, 1, vec![1], vec![0]);
        assert!(make_code(2, 1, vec![ix], None).is_err());
        assert!(make_code(2, 1, vec![x], Some(vec![])).is_ok());
    }

    #[test]
    fn supplied_logicals_are_checked() {
        let gens = vec![parse_row("XXXX"), parse_row("ZZZZ")];
        let good = vec![parse_row("XXII"), parse_row("ZIZI"), parse_row("XIXI"), parse_row("ZZII")];
        assert!(make_code(2, 4, gens.clone(), Some(good)).is_ok());
        let bad = vec![parse_row("XXII"), parse_row("ZIZI"), parse_row("XXII"), parse_row("ZZII")];
        assert!(make_code(2, 4, gens, Some(bad)).is_err());
    }

    #[test]
    fn qutrit_completion_is_canonical() {
        let rows = vec![vec![1, 0, 1, 1, 0, 0, 0, 0]];
        let code = StabilizerCode::from_symplectic_rows(3, 4, &rows).unwrap();
        let l = code.logicals().unwrap();
        assert_eq!(l.len(), 6);
        check_logicals(3, &code.stabilizer_rows(), l, 3).unwrap();
    }

    #[test]
    fn purify_k0_is_identity_and_strip_needs_logicals() {
        let code = StabilizerCode::from_symplectic_rows(2, 2, &[vec![1, 1, 0, 0], vec![0, 0, 1, 1]]).unwrap();
        assert_eq!(code.purify().unwrap(), code);
        let five = make_code(2, 5, ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"].map(parse_row).to_vec(), None).unwrap();
        assert!(five.strip_logicals().purify().is_err());
        let pure = five.purify().unwrap();
        assert_eq!((pure.n(), pure.k()), (6, 0));
    }
}
