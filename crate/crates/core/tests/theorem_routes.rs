//! Every route to the genus-2 results agrees on the full n <= 12 range.

use lambdag_core::arith::{multinomial, partitions, BigInt, ExponentVector, Rational};
use lambdag_core::strata::{builtin_delta, pullback_integral};
use lambdag_core::theorems::{
    lambda2_closed, lambda2_integral, lambda_g_prediction, pullback_delta_closed,
    pullback_delta_recursive, verify, Lambda2Method,
};
use proptest::prelude::*;

fn inputs(n_max: usize) -> Vec<(usize, ExponentVector)> {
    (1..=n_max)
        .flat_map(|n| partitions(n as u32 + 1, n).map(move |k| (n, k)))
        .collect()
}

#[test]
fn delta_closed_recursive_and_brute_force_agree() {
    for (n, k) in inputs(12) {
        let closed = pullback_delta_closed(n, &k).unwrap();
        assert_eq!(pullback_delta_recursive(n, &k).unwrap(), closed, "{k:?}");
        assert_eq!(
            pullback_integral(&builtin_delta(), &k).unwrap(),
            closed,
            "{k:?}"
        );
    }
}

#[test]
fn lambda2_routes_agree() {
    for (n, k) in inputs(12) {
        let closed = lambda2_closed(n, &k).unwrap();
        for m in Lambda2Method::ALL {
            assert_eq!(lambda2_integral(n, &k, m).unwrap(), closed, "{m} {k:?}");
        }
        assert_eq!(lambda_g_prediction(2, n, &k).unwrap(), closed);
    }
}

#[test]
fn pullback_string_expansion_matches_pascal_recombination() {
    for (n, k) in inputs(12).into_iter().filter(|(n, _)| *n >= 2) {
        let Some(zero) = k.position_of_last(0) else {
            continue;
        };
        let rest = k.without(zero);
        let lowered: Vec<ExponentVector> = (0..rest.len())
            .filter_map(|j| rest.decremented(j))
            .collect();
        let via_recursion: Rational = lowered
            .iter()
            .map(|r| pullback_delta_recursive(n - 1, r).unwrap())
            .sum();
        let pascal_sum = lowered
            .iter()
            .map(|r| multinomial(n as u64, r).unwrap())
            .fold(BigInt::default(), |a, b| a + b);
        let via_pascal = Rational::new(pascal_sum, 24);
        assert_eq!(via_recursion, via_pascal, "{k:?}");
        assert_eq!(via_pascal, pullback_delta_closed(n, &k).unwrap());
    }
}

#[test]
fn verify_ordering_is_n_then_reverse_lex() {
    let reports = verify(5).unwrap();
    let expected: Vec<_> = inputs(5);
    let got: Vec<_> = reports.iter().map(|r| (r.n, r.partition.clone())).collect();
    assert_eq!(got, expected);
    assert!(reports.iter().all(|r| r.agreed));
}

fn pascal_input() -> impl Strategy<Value = Vec<u32>> {
    (1u32..=30, 2usize..=8).prop_flat_map(|(n, m)| {
        prop::collection::vec(0..m, n as usize).prop_map(move |picks| {
            let mut k = vec![0u32; m];
            for p in picks {
                k[p] += 1;
            }
            k
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pascal_rule_for_multinomials(k in pascal_input()) {
        let n: u64 = k.iter().map(|&x| u64::from(x)).sum();
        let k = ExponentVector::new(k).unwrap();
        let total = (0..k.len())
            .filter_map(|j| k.decremented(j))
            .map(|kj| multinomial(n - 1, &kj).unwrap())
            .fold(BigInt::default(), |a, b| a + b);
        prop_assert_eq!(total, multinomial(n, &k).unwrap());
    }
}
