use cyclic_gv::codeword::{auto_cyclic_distance, cyclic_distance, hamming, period, shift};
use cyclic_gv::{is_prime, Codeword, DistanceThreshold, RationalDistance};
use num_rational::Ratio;
use proptest::prelude::*;

fn word(n: usize) -> impl Strategy<Value = Codeword> {
    proptest::collection::vec(any::<bool>(), n).prop_map(|b| Codeword::from_bits(&b).unwrap())
}

fn pair() -> impl Strategy<Value = (Codeword, Codeword)> {
    (1usize..150).prop_flat_map(|n| (word(n), word(n)))
}

#[test]
fn shift_group_law_exhaustive_to_16() {
    for n in 1..=16usize {
        for v in 0..1u64 << n {
            let x = Codeword::from_value(v, n).unwrap();
            let shifts: Vec<Codeword> = (0..n).map(|a| shift(&x, a)).collect();
            assert_eq!(shifts[0], x);
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(shift(&shifts[a], b), shifts[(a + b) % n]);
                }
            }
        }
    }
}

#[test]
fn infinite_iff_period_one_exhaustive() {
    for n in 1..=13usize {
        for v in 0..1u64 << n {
            let x = Codeword::from_value(v, n).unwrap();
            let p = period(&x);
            assert_eq!(n % p, 0);
            assert_eq!(auto_cyclic_distance(&x).is_infinite(), p == 1, "{x}");
            if is_prime(n) {
                assert_eq!(p == 1, x.is_constant());
                assert!(p == 1 || p == n);
            }
            assert_eq!(x.orbit().len(), p);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn shift_group_law_wide((x, _) in pair(), a in 0usize..400, b in 0usize..400) {
        let n = x.len();
        prop_assert_eq!(shift(&shift(&x, a), b), shift(&x, (a + b) % n));
    }

    #[test]
    fn cyclic_distance_symmetry_and_dominance((x, y) in pair(), i in 0usize..300) {
        let n = x.len();
        let d = cyclic_distance(&x, &y).unwrap();
        prop_assert_eq!(d, cyclic_distance(&y, &x).unwrap());
        // second expression: min_i d(x, E^i y)
        let alt = (0..n).map(|k| hamming(&x, &shift(&y, k)).unwrap()).min().unwrap();
        prop_assert_eq!(d, alt);
        prop_assert!(d <= hamming(&x, &y).unwrap());
        prop_assert_eq!(cyclic_distance(&shift(&x, i), &y).unwrap(), d);
    }

    #[test]
    fn hamming_is_a_metric_count((x, y) in pair()) {
        let d = hamming(&x, &y).unwrap();
        prop_assert_eq!(d, hamming(&y, &x).unwrap());
        prop_assert_eq!(d.count() == Some(0), x == y);
        let brute = x.bits().zip(y.bits()).filter(|(a, b)| a != b).count();
        prop_assert_eq!(d.count(), Some(brute));
    }

    #[test]
    fn auto_cyclic_is_orbit_invariant((x, _) in pair(), i in 0usize..300) {
        prop_assert_eq!(auto_cyclic_distance(&x), auto_cyclic_distance(&shift(&x, i)));
    }

    #[test]
    fn threshold_comparison_matches_rationals(
        count in 0usize..10_000, extra in 0usize..10_000, p in 0u64..5000, dq in 0u64..5000
    ) {
        let n = count + extra.max(1);
        let q = p + dq.max(1);
        let delta = DistanceThreshold::new(p, q).unwrap();
        let d = RationalDistance::new(count, n);
        let exact = Ratio::new(count as u64, n as u64) >= Ratio::new(p, q);
        prop_assert_eq!(d.meets(&delta), exact);
        prop_assert_eq!(delta.is_met_by(count, n), exact);
    }

    #[test]
    fn distance_order_matches_rationals(a in 0usize..500, n in 1usize..500, b in 0usize..500, m in 1usize..500) {
        let (a, b) = (a % (n + 1), b % (m + 1));
        let lhs = RationalDistance::new(a, n).cmp(&RationalDistance::new(b, m));
        let rhs = Ratio::new(a as u64, n as u64).cmp(&Ratio::new(b as u64, m as u64));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn text_round_trip((x, _) in pair()) {
        prop_assert_eq!(x.to_string().parse::<Codeword>().unwrap(), x);
    }
}
