//! Dense linear algebra over the prime field `Z_p`.

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse
    let mut result = 1u64;
    let mut base = (a % p) as u64;
    let mut e = p - 2;
    let m = p as u64;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    result as u32
}

/// Reduces `rows` in place to reduced row echelon form and returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<u32>>, p: u32) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = (*v as u64 * inv as u64 % p as u64) as u32;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                axpy(row, &pivot_row, p - f, p);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub(crate) fn rank(rows: &[Vec<u32>], p: u32) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// `y += a * x` over `Z_p`.
pub(crate) fn axpy(y: &mut [u32], x: &[u32], a: u32, p: u32) {
    if a == 0 {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi = ((*yi as u64 + a as u64 * *xi as u64) % p as u64) as u32;
    }
}

/// Basis of `{ v : M v = 0 }` for the matrix with the given rows.
pub(crate) fn nullspace(rows: &[Vec<u32>], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let mut m: Vec<Vec<u32>> = rows.iter().filter(|r| r.iter().any(|&v| v != 0)).cloned().collect();
    let pivots = if m.is_empty() { Vec::new() } else { rref(&mut m, p) };
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = (p - row[free]) % p;
        }
        basis.push(v);
    }
    basis
}

/// Linear combination `Σ coeffs[i] * vectors[i]`.
pub(crate) fn combine(vectors: &[Vec<u32>], coeffs: &[u32], len: usize, p: u32) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for (v, &c) in vectors.iter().zip(coeffs) {
        axpy(&mut out, v, c, p);
    }
    out
}

/// Visits `start + v` for every `v` in the span of `gens` exactly once (gens must be independent).
///
/// Odometer order: each step adds a single generator, so the cost per element
/// is one vector addition.
pub(crate) fn for_each_in_coset(start: Vec<u32>, gens: &[Vec<u32>], p: u32, mut visit: impl FnMut(&[u32])) {
    let mut current = start;
    let mut digits = vec![0u32; gens.len()];
    visit(&current);
    loop {
        let mut i = 0;
        loop {
            if i == gens.len() {
                return;
            }
            axpy(&mut current, &gens[i], 1, p);
            digits[i] += 1;
            if digits[i] == p {
                // p additions of the same generator return to the start
                digits[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        visit(&current);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses_mod_p() {
        for p in [2u32, 3, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn nullspace_dimension_and_membership() {
        let p = 3;
        let rows = vec![vec![1, 2, 0, 1], vec![0, 1, 1, 1], vec![1, 0, 1, 0]];
        let ns = nullspace(&rows, 4, p);
        assert_eq!(ns.len(), 4 - rank(&rows, p));
        for v in &ns {
            for r in &rows {
                let dot: u32 = r.iter().zip(v).map(|(a, b)| a * b).sum();
                assert_eq!(dot % p, 0);
            }
        }
    }

    #[test]
    fn span_enumeration_counts() {
        let gens = vec![vec![1, 0, 2], vec![0, 1, 1]];
        let mut seen = std::collections::HashSet::new();
        for_each_in_coset(vec![0; 3], &gens, 3, |v| {
            seen.insert(v.to_vec());
        });
        assert_eq!(seen.len(), 9);
    }
}
