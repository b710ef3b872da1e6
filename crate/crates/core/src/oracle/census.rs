//! Enumeration of the elements of a symplectic subspace by support.

use rayon::prelude::*;

use super::linalg;
use super::pauli::support_of;
use crate::error::{Error, Result};

/// Largest group (number of elements) the census will enumerate.
pub const ELEMENT_BUDGET: u64 = 1 << 24;

// below this many elements a single thread is faster
const PARALLEL_THRESHOLD: u64 = 1 << 16;

pub(crate) fn check_budget(p: u32, dim: usize, what: &str) -> Result<u64> {
    let size = (p as u64).checked_pow(dim as u32).filter(|&s| s <= ELEMENT_BUDGET);
    size.ok_or_else(|| {
        Error::Budget(format!("{what} has {p}^{dim} elements, above the limit of {ELEMENT_BUDGET}"))
    })
}

/// Calls `add(acc, support_mask)` for every element of the span of the
/// independent rows `gens` (vectors `(x | z)` of length `2n`), splitting the
/// work across threads for large groups.
pub(crate) fn fold_supports<A, M, F, R>(
    p: u32,
    n: usize,
    gens: &[Vec<u32>],
    make: M,
    add: F,
    merge: R,
) -> Result<A>
where
    A: Send,
    M: Fn() -> A + Sync,
    F: Fn(&mut A, u32) + Sync,
    R: Fn(A, A) -> A + Sync + Send,
{
    let size = check_budget(p, gens.len(), "group")?;
    if p == 2 {
        return Ok(fold_binary(n, gens, size, &make, &add, &merge));
    }
    let high = if size > PARALLEL_THRESHOLD { gens.len().min(4) } else { 0 };
    let (hi_gens, lo_gens) = gens.split_at(high);
    let blocks = (p as u64).pow(high as u32);
    let run = |block: u64| {
        let mut coeffs = Vec::with_capacity(high);
        let mut b = block;
        for _ in 0..high {
            coeffs.push((b % p as u64) as u32);
            b /= p as u64;
        }
        let start = linalg::combine(hi_gens, &coeffs, 2 * n, p);
        let mut acc = make();
        linalg::for_each_in_coset(start, lo_gens, p, |v| add(&mut acc, support_of(v)));
        acc
    };
    Ok((0..blocks).into_par_iter().map(run).reduce(&make, &merge))
}

/// Qubit fast path: bit-packed vectors walked in Gray-code order.
fn fold_binary<A, M, F, R>(n: usize, gens: &[Vec<u32>], size: u64, make: &M, add: &F, merge: &R) -> A
where
    A: Send,
    M: Fn() -> A + Sync,
    F: Fn(&mut A, u32) + Sync,
    R: Fn(A, A) -> A + Sync + Send,
{
    let packed: Vec<(u32, u32)> = gens
        .iter()
        .map(|g| {
            let x = (0..n).fold(0u32, |a, i| a | (g[i] & 1) << i);
            let z = (0..n).fold(0u32, |a, i| a | (g[n + i] & 1) << i);
            (x, z)
        })
        .collect();
    let m = packed.len();
    let high = if size > PARALLEL_THRESHOLD { m.min(6) } else { 0 };
    let (lo, hi) = packed.split_at(m - high);
    let run = |block: u64| {
        let (mut x, mut z) = (0u32, 0u32);
        for (i, &(gx, gz)) in hi.iter().enumerate() {
            if block >> i & 1 == 1 {
                x ^= gx;
                z ^= gz;
            }
        }
        let mut acc = make();
        add(&mut acc, x | z);
        for step in 1..(1u64 << lo.len()) {
            let (gx, gz) = lo[step.trailing_zeros() as usize];
            x ^= gx;
            z ^= gz;
            add(&mut acc, x | z);
        }
        acc
    };
    (0..1u64 << high).into_par_iter().map(run).reduce(make, merge)
}

/// Number of elements of each weight `0..=n`.
pub(crate) fn weight_histogram(p: u32, n: usize, gens: &[Vec<u32>]) -> Result<Vec<u64>> {
    fold_supports(
        p,
        n,
        gens,
        || vec![0u64; n + 1],
        |h, s| h[s.count_ones() as usize] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
}

/// Number of elements with each exact support, indexed by bitmask.
pub(crate) fn support_table(p: u32, n: usize, gens: &[Vec<u32>]) -> Result<Vec<u64>> {
    if n > 16 {
        return Err(Error::Budget(format!("support table over 2^{n} subsets")));
    }
    fold_supports(
        p,
        n,
        gens,
        || vec![0u64; 1 << n],
        |h, s| h[s as usize] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
}
