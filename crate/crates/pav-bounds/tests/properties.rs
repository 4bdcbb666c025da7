//! Property tests for the bound-formula invariants that should hold on
//! every input, not just the hand-checked ones: the q = 1 reduction, the
//! crude-dominates-exact ordering, the monotone specialization, interval
//! sanity, and evaluation-order independence of exact arithmetic.

use pav_bounds::{
    fixed_point_bound, mallows_consecutive_bounds, monotone_mallows_bounds,
    uniform_classical_bounds, uniform_consecutive_bounds, BigScalar, D2Method,
    MonotoneDirection, QParam,
};
use pav_core::{Pattern, Permutation};
use proptest::prelude::*;
use rug::Rational;
use std::cmp::Ordering;

fn pattern_of_len(m: usize) -> impl Strategy<Value = Pattern> {
    Just((1..=m as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|values| Pattern::new(Permutation::new(values).unwrap()))
}

fn rational_q() -> impl Strategy<Value = QParam> {
    prop::sample::select(vec![(1i64, 3i64), (1, 2), (2, 3), (1, 1), (3, 2), (2, 1), (3, 1)])
        .prop_map(|(num, den)| QParam::from_ratio(num, den).unwrap())
}

fn le(a: &BigScalar, b: &BigScalar) -> bool {
    a.cmp_approx(b) != Ordering::Greater
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mallows_at_q_one_reduces_to_uniform(
        (m, tau, extra) in (3u64..=4).prop_flat_map(|m| {
            (Just(m), pattern_of_len(m as usize), 0u64..=6)
        })
    ) {
        let n = m + extra;
        let mallows = mallows_consecutive_bounds(n, m, &QParam::one(), &tau).unwrap();
        let uniform =
            uniform_consecutive_bounds(n, m, Some(&tau), D2Method::ExactOverlap).unwrap();
        prop_assert_eq!(mallows.lambda.as_exact(), uniform.lambda.as_exact());
        prop_assert_eq!(mallows.b1.as_exact(), uniform.d1.as_exact());
        prop_assert_eq!(mallows.b2_ordered.as_exact(), uniform.d2.as_exact());
    }

    #[test]
    fn crude_d2_dominates_exact_overlap_d2(
        (j, tau, extra) in (3u64..=4).prop_flat_map(|j| {
            (Just(j), pattern_of_len(j as usize), 0u64..=8)
        })
    ) {
        let n = 2 * j + extra;
        let exact = uniform_classical_bounds(n, j, Some(&tau), D2Method::ExactOverlap).unwrap();
        let crude = uniform_classical_bounds(n, j, None, D2Method::Crude).unwrap();
        prop_assert!(
            le(&exact.d2, &crude.d2),
            "exact d2 {} exceeds crude d2 {} at n = {}, tau = {}",
            exact.d2,
            crude.d2,
            n,
            tau
        );
    }

    #[test]
    fn monotone_closed_form_specializes_the_general_evaluation(
        m in 3u64..=5,
        extra in 0u64..=8,
        q in rational_q(),
    ) {
        let n = m + extra;
        for direction in [MonotoneDirection::Increasing, MonotoneDirection::Decreasing] {
            let closed = monotone_mallows_bounds(n, m, &q, direction).unwrap();
            let tau = closed.tau.clone().unwrap();
            let general = mallows_consecutive_bounds(n, m, &q, &tau).unwrap();
            for (a, b) in closed.per_s.iter().zip(general.per_s.iter()) {
                prop_assert_eq!(a.s, b.s);
                prop_assert_eq!(&a.poly, &b.poly);
                prop_assert_eq!(a.value.as_exact(), b.value.as_exact());
            }
            prop_assert_eq!(closed.b2_ordered.as_exact(), general.b2_ordered.as_exact());
            prop_assert_eq!(closed.lambda.as_exact(), general.lambda.as_exact());
        }
    }

    #[test]
    fn mallows_probability_interval_is_ordered_and_within_unit_range(
        (m, tau, extra) in (3u64..=4).prop_flat_map(|m| {
            (Just(m), pattern_of_len(m as usize), 0u64..=10)
        }),
        q in rational_q(),
    ) {
        let r = mallows_consecutive_bounds(m + extra, m, &q, &tau).unwrap();
        prop_assert!(r.avoid_prob_lower.to_f64() >= 0.0);
        prop_assert!(r.avoid_prob_upper.to_f64() <= 1.0);
        prop_assert!(le(&r.avoid_prob_lower, &r.avoid_prob_upper));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn count_intervals_are_ordered(
        (j, tau, extra) in (3u64..=4).prop_flat_map(|j| {
            (Just(j), pattern_of_len(j as usize), 0u64..=10)
        })
    ) {
        let n = j + extra;
        let classical =
            uniform_classical_bounds(n, j, Some(&tau), D2Method::ExactOverlap).unwrap();
        prop_assert!(le(&classical.count_lower, &classical.count_upper));
        prop_assert!(classical.count_lower.signum() >= 0);
        for method in [D2Method::ExactOverlap, D2Method::Crude, D2Method::Series] {
            let tau_arg = (method == D2Method::ExactOverlap).then_some(&tau);
            let consecutive = uniform_consecutive_bounds(n, j, tau_arg, method).unwrap();
            prop_assert!(le(&consecutive.count_lower, &consecutive.count_upper));
            prop_assert!(consecutive.count_lower.signum() >= 0);
        }
    }

    #[test]
    fn derangement_interval_is_ordered(n in 1u64..=200) {
        let r = fixed_point_bound(n).unwrap();
        prop_assert!(le(&r.derangement_lower, &r.derangement_upper));
        prop_assert!(r.derangement_lower.signum() >= 0);
    }
}

proptest! {
    #[test]
    fn exact_arithmetic_is_order_independent(
        parts in prop::collection::vec((-1000i64..=1000, 1i64..=1000), 2..8),
        permuted in Just(()).prop_perturb(|(), mut rng| rng.random::<u64>()),
    ) {
        let scalars: Vec<BigScalar> = parts
            .iter()
            .map(|&(num, den)| BigScalar::from_rational(Rational::from((num, den))))
            .collect();

        // Left-to-right and right-to-left sums agree exactly.
        let forward = scalars
            .iter()
            .fold(BigScalar::zero(), |acc, s| acc.add(s));
        let backward = scalars
            .iter()
            .rev()
            .fold(BigScalar::zero(), |acc, s| acc.add(s));
        prop_assert_eq!(forward.as_exact(), backward.as_exact());

        // A rotated order agrees too.
        let split = (permuted as usize) % scalars.len();
        let rotated = scalars[split..]
            .iter()
            .chain(scalars[..split].iter())
            .fold(BigScalar::zero(), |acc, s| acc.add(s));
        prop_assert_eq!(forward.as_exact(), rotated.as_exact());

        // Distributivity: a·(b + c) = a·b + a·c on the first three parts.
        if scalars.len() >= 3 {
            let (a, b, c) = (&scalars[0], &scalars[1], &scalars[2]);
            let lhs = a.mul(&b.add(c));
            let rhs = a.mul(b).add(&a.mul(c));
            prop_assert_eq!(lhs.as_exact(), rhs.as_exact());
        }
    }
}
