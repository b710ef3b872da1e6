#![allow(dead_code)]

use qweight_core::oracle::StabilizerCode;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const GOLDEN_D3: &str = include_str!("../../../cli/tests/golden/table_d3.csv");
pub const GOLDEN_D4: &str = include_str!("../../../cli/tests/golden/table_d4.csv");
pub const GOLDEN_D5: &str = include_str!("../../../cli/tests/golden/table_d5.csv");

/// Random pure stabilizer state: the computational basis state conjugated by
/// random symplectic transvections `v -> v + c<v,h>h`.
pub fn random_state(rng: &mut ChaCha8Rng, p: u32, n: usize) -> StabilizerCode {
    let mut rows: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut r = vec![0; 2 * n];
            r[n + i] = 1;
            r
        })
        .collect();
    for _ in 0..3 * n {
        let h: Vec<u32> = (0..2 * n).map(|_| rng.gen_range(0..p)).collect();
        let c = rng.gen_range(1..p);
        for r in rows.iter_mut() {
            let form = (0..n).map(|i| r[i] * h[n + i] + (p - r[n + i]) * h[i]).sum::<u32>() % p;
            let coef = c * form % p;
            for (x, y) in r.iter_mut().zip(&h) {
                *x = (*x + coef * y) % p;
            }
        }
    }
    StabilizerCode::from_symplectic_rows(p, n, &rows).unwrap()
}
