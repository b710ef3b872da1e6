use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;
use qweight_core::enumerators::{
    qmds_sl, qmds_unitary, shadow, shadow_by_substitution, sl_from_unitary, sl_from_unitary_by_substitution,
    unitary_from_sl,
};
use qweight_core::exactmath::{binomial, frac, krawtchouk, BivariateForm};
use qweight_core::{CodeParams, Rational, WeightDistribution, WeightKind};

/// Coefficients of `(1+z)^{n-l} (1-z)^l`.
fn generating_coeffs(l: usize, n: usize) -> Vec<BigInt> {
    let mut poly = vec![BigInt::from(1)];
    for i in 0..n {
        let sign: i64 = if i < n - l { 1 } else { -1 };
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j] += c;
            next[j + 1] += c * sign;
        }
        poly = next;
    }
    poly
}

#[test]
fn krawtchouk_generating_function() {
    for n in 0..=12 {
        for l in 0..=n {
            let expect = generating_coeffs(l, n);
            for m in 0..=n {
                assert_eq!(krawtchouk(m as i64, l as i64, n as i64).unwrap(), expect[m], "m={m} l={l} n={n}");
            }
        }
    }
}

#[test]
fn krawtchouk_reflection_and_edge() {
    for n in 0..=12i64 {
        for m in 0..=n {
            assert_eq!(krawtchouk(m, 0, n).unwrap(), binomial(n, m));
            for l in 0..=n {
                let sign = if l % 2 == 0 { 1 } else { -1 };
                assert_eq!(krawtchouk(n - m, l, n).unwrap(), krawtchouk(m, l, n).unwrap() * sign);
            }
        }
    }
}

#[test]
fn closed_form_paths_agree() {
    for local_dim in 2..=5 {
        for n in 1..=20u32 {
            for d in 1..=(n / 2 + 1) {
                let Some(k) = (n + 2).checked_sub(2 * d) else { continue };
                let p = CodeParams::with_k(n, k, d, local_dim).unwrap();
                let sl = qmds_sl(&p).unwrap();
                let u = qmds_unitary(&p).unwrap();
                assert_eq!(sl_from_unitary(&u).unwrap(), sl, "{p}");
                assert_eq!(shadow(&u).unwrap(), shadow_by_substitution(&u).unwrap(), "{p}");
                for j in 1..d as usize {
                    assert!(sl.values()[j].is_zero(), "{p} is not pure at {j}");
                }
            }
        }
    }
}

fn rational() -> impl Strategy<Value = Rational> {
    (-1000i64..1000, 1i64..50).prop_map(|(n, d)| frac(n, d))
}

fn distribution() -> impl Strategy<Value = WeightDistribution> {
    (2u32..=5, prop::collection::vec(rational(), 1..=11), rational()).prop_map(|(dim, values, trace)| {
        WeightDistribution::new(dim, WeightKind::SlPrimary, trace, values).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn transforms_round_trip(w in distribution()) {
        let u = unitary_from_sl(&w).unwrap();
        prop_assert_eq!(&sl_from_unitary(&u).unwrap(), &w);
        prop_assert_eq!(&sl_from_unitary_by_substitution(&u).unwrap(), &w);
        prop_assert_eq!(shadow(&u).unwrap(), shadow_by_substitution(&u).unwrap());
    }

    #[test]
    fn substitution_inverse(
        coeffs in prop::collection::vec(rational(), 1..=11),
        m in prop::array::uniform4(-5i64..=5),
    ) {
        let det = m[0] * m[3] - m[1] * m[2];
        prop_assume!(det != 0);
        let [a, b, c, e] = m.map(|v| Rational::from_integer(v.into()));
        let det = Rational::from_integer(det.into());
        let form = BivariateForm::new(coeffs).unwrap();
        let there = form.substitute(&a, &b, &c, &e);
        let back = there.substitute(&(&e / &det), &(-&b / &det), &(-&c / &det), &(&a / &det));
        prop_assert_eq!(back, form);
    }
}
