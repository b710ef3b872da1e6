use num_bigint::BigInt;
use num_traits::Zero;
use qweight_core::enumerators::{
    code_check, dual_unitary, equal_up_to_trace, qmds_sl, qmds_unitary, shadow, shadow_by_substitution,
    unitary_from_sl,
};
use qweight_core::exactmath::{rat, rat_pow};
use qweight_core::oracle::{
    average_entropy, code_basis_vectors, dense_weights, fine_grained_sl, fine_grained_unitary, fixture,
    group_sl_weights, reduced_weights, shadow_aggregate, shadow_direct, subsystem_entropy, StabilizerCode,
    Subset, FIXTURES,
};
use qweight_core::{CodeParams, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::random_state;

fn all_fixtures() -> Vec<(&'static str, StabilizerCode)> {
    FIXTURES.iter().map(|(name, _)| (*name, fixture(name).unwrap())).collect()
}

fn dimension(code: &StabilizerCode) -> Rational {
    Rational::from_integer(code.dimension())
}

#[test]
fn dense_agrees_with_group_census() {
    for (name, code) in all_fixtures() {
        if code.n() > 6 {
            continue;
        }
        let vectors = code_basis_vectors(&code).unwrap();
        assert_eq!(vectors.len(), code.dimension().to_string().parse::<usize>().unwrap(), "{name}");
        let dense = dense_weights(&vectors, code.p(), code.n()).unwrap();
        assert_eq!(dense, group_sl_weights(&code).unwrap(), "{name}");
    }
}

#[test]
fn closed_forms_match_census() {
    for (name, n, k, d, p) in [("five_qubit", 5, 1, 3, 2), ("hexacode", 6, 0, 4, 2), ("qutrit_403", 4, 0, 3, 3)] {
        let code = fixture(name).unwrap();
        let params = CodeParams::with_k(n, k, d, p).unwrap();
        let (a, _) = group_sl_weights(&code).unwrap();
        assert_eq!(qmds_sl(&params).unwrap(), a, "{name}");
        assert_eq!(qmds_unitary(&params).unwrap(), unitary_from_sl(&a).unwrap(), "{name}");
    }
}

#[test]
fn shadow_paths_agree() {
    for (name, code) in all_fixtures() {
        let (a, _) = group_sl_weights(&code).unwrap();
        let u = unitary_from_sl(&a).unwrap();
        let krawtchouk = shadow(&u).unwrap();
        assert_eq!(shadow_by_substitution(&u).unwrap(), krawtchouk, "{name}");
        assert_eq!(shadow_aggregate(&code).unwrap(), krawtchouk, "{name}");
        assert!(krawtchouk.first_negative().is_none(), "{name}");
    }
}

#[test]
fn single_shadow_sums_match_aggregate() {
    let code = fixture("five_qubit").unwrap();
    let agg = shadow_aggregate(&code).unwrap();
    let mut by_size = vec![Rational::zero(); 6];
    for t in Subset::all(5) {
        by_size[5 - t.len()] += shadow_direct(&code, t).unwrap();
    }
    assert_eq!(agg.values(), by_size.as_slice());
}

#[test]
fn zeta_transform_consistency() {
    for (name, code) in all_fixtures() {
        let (fine_a, fine_b) = fine_grained_sl(&code).unwrap();
        let (a, b) = group_sl_weights(&code).unwrap();
        assert_eq!(fine_a.symmetrize(), a.values(), "{name}");
        assert_eq!(fine_b.symmetrize(), b.values(), "{name}");
        for s in Subset::all(code.n()) {
            let zeta: Rational =
                Subset::all(code.n()).filter(|t| t.is_subset_of(s)).map(|t| fine_a.get(t).clone()).sum();
            let expect = zeta * rat_pow(code.p(), -(s.len() as i64));
            assert_eq!(fine_grained_unitary(&code, s).unwrap(), expect, "{name} {s}");
        }
    }
}

#[test]
fn duality_consistency() {
    for (name, code) in all_fixtures() {
        let (a, b) = group_sl_weights(&code).unwrap();
        let ub = unitary_from_sl(&b).unwrap();
        let ua = dual_unitary(&unitary_from_sl(&a).unwrap()).unwrap();
        assert!(equal_up_to_trace(&ub, &ua), "{name}");
    }
}

#[test]
fn enumerator_pairs_satisfy_code_conditions() {
    let expect = [
        ("five_qubit", 3, true),
        ("hexacode", 4, true),
        ("shor", 3, false),
        ("four_two_two", 2, true),
        ("qutrit_403", 3, true),
        ("ghz3", 2, true),
    ];
    for (name, d, pure) in expect {
        let code = fixture(name).unwrap();
        let k = dimension(&code);
        let (a, b) = group_sl_weights(&code).unwrap();
        for j in 0..=code.n() {
            let kb = &k * &b.values()[j];
            assert!(kb >= a.values()[j], "{name} j={j}");
            if j < d {
                assert_eq!(kb, a.values()[j], "{name} j={j}");
            }
        }
        let check = code_check(&a, &b, &k).unwrap();
        assert_eq!((check.distance, check.pure), (d, pure), "{name}");
        // total counts: K² p^{n-k} and K p^{n+k}
        let n = code.n() as i64;
        let kk = code.k() as i64;
        assert_eq!(a.sum(), &k * &k * rat_pow(code.p(), n - kk), "{name}");
        assert_eq!(b.sum(), &k * rat_pow(code.p(), n + kk), "{name}");
    }
}

#[test]
fn descendants_of_pure_fixtures() {
    for (name, code) in all_fixtures() {
        let (a, b) = group_sl_weights(&code).unwrap();
        let k = dimension(&code);
        let parent = code_check(&a, &b, &k).unwrap();
        if !parent.pure || parent.distance < 2 {
            continue;
        }
        let child_k = &k * rat(code.p() as i64);
        for site in 0..code.n() {
            let (ra, rb) = reduced_weights(&code, Subset::from_sites([site])).unwrap();
            assert_eq!(ra.n(), code.n() - 1);
            let child = code_check(&ra, &rb, &child_k).unwrap();
            assert_eq!((child.distance, child.pure), (parent.distance - 1, true), "{name} site {site}");
        }
    }
}

#[test]
fn shor_reduction_is_a_distance_one_code() {
    let code = fixture("shor").unwrap();
    let (a, b) = reduced_weights(&code, Subset::from_sites([8])).unwrap();
    let check = code_check(&a, &b, &rat(4)).unwrap();
    assert_eq!(check.distance, 1);
}

#[test]
fn averaged_entropy_inequality_on_random_states() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut nontrivial = 0;
    for trial in 0..100 {
        let p = if trial % 4 == 3 { 3 } else { 2 };
        let n = rng.gen_range(2..=if p == 2 { 8 } else { 5 });
        let state = random_state(&mut rng, p, n);
        assert_eq!(state.k(), 0);
        let avg: Vec<Rational> = (0..=n).map(|m| average_entropy(&state, m).unwrap()).collect();
        if avg[1] > rat(0) {
            nontrivial += 1;
        }
        for m in 2..=n {
            for l in 1..m {
                let rhs = rat(m as i64) / rat(l as i64) * &avg[l];
                assert!(avg[m] <= rhs, "trial {trial}: n={n} m={m} l={l}");
            }
        }
    }
    assert!(nontrivial > 50, "random states were mostly product states");
}

#[test]
fn purified_five_qubit_code_saturates_trade_off() {
    let five = fixture("five_qubit").unwrap();
    let pure = five.purify().unwrap();
    assert_eq!((pure.n(), pure.k()), (6, 0));
    for s in Subset::of_size(6, 3) {
        assert_eq!(subsystem_entropy(&pure, s).unwrap(), rat(3));
    }
    let (n, d) = (5i64, 3i64);
    let reference = subsystem_entropy(&pure, Subset::from_sites([5])).unwrap();
    let small: Vec<Rational> =
        Subset::of_size(5, (d - 1) as usize).map(|s| subsystem_entropy(&pure, s).unwrap()).collect();
    let avg_small = small.iter().sum::<Rational>() / rat(small.len() as i64);
    let large: Vec<Rational> =
        Subset::of_size(5, (n - d + 1) as usize).map(|s| subsystem_entropy(&pure, s).unwrap()).collect();
    let avg_large = large.iter().sum::<Rational>() / rat(large.len() as i64);
    assert_eq!(reference, rat(1));
    assert_eq!(avg_small, rat(2));
    assert_eq!(&avg_large - &avg_small, reference);
    assert_eq!(reference, rat(n - 2 * (d - 1)) / rat(d - 1) * avg_small);
}

#[test]
fn purification_keeps_pure_states() {
    let hex = fixture("hexacode").unwrap();
    assert_eq!(hex.purify().unwrap(), hex);
    assert!(fixture("five_qubit").unwrap().strip_logicals().purify().is_err());
    assert_eq!(BigInt::from(1), hex.dimension());
}
