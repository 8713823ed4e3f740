//! The auto-cyclic code `C' = {x : d*_cyc(x, x) >= delta}`: exhaustive
//! enumeration for small `n`, seeded rejection sampling of whole orbits for
//! larger `n`, and Monte-Carlo estimation of the failure probability
//! `Pr[d*_cyc(x, x) < delta]` for a uniform word.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::codeset::{CodeKind, CodeSet};
use crate::codeword::{auto_cyclic_distance, kernel, Codeword, DistanceThreshold};
use crate::error::{Error, Result};
use crate::par;
use crate::real::Real;
use crate::rng::{self, GENERATOR};

/// Largest `n` enumerated exhaustively unless the caller raises it.
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 24;

/// Sampling gives up after this many draws per requested orbit.
pub const DEFAULT_ATTEMPTS_PER_ORBIT: u64 = 1000;

/// `d*_cyc(x, x) >= delta`. Words fixed by every shift always qualify.
pub fn is_auto_cyclic_member(x: &Codeword, delta: &DistanceThreshold) -> bool {
    match x.value() {
        Some(v) => kernel::auto_cyclic_at_least(v, x.len(), delta.min_count(x.len()) as u32),
        None => auto_cyclic_distance(x).meets(delta),
    }
}

pub fn enumerate_auto_cyclic(n: usize, delta: DistanceThreshold) -> Result<CodeSet> {
    enumerate_auto_cyclic_with_limit(n, delta, DEFAULT_EXHAUSTIVE_LIMIT)
}

/// Every word of length `n` meeting `delta`. The result is cyclic-closed
/// because the auto-cyclic distance is constant on orbits.
pub fn enumerate_auto_cyclic_with_limit(
    n: usize,
    delta: DistanceThreshold,
    limit: usize,
) -> Result<CodeSet> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    if n > limit || n >= kernel::MAX_BITS {
        return Err(Error::Capacity {
            what: "exhaustive enumeration",
            n,
            limit: limit.min(kernel::MAX_BITS - 1),
            hint: "use sampling instead",
        });
    }
    let need = delta.min_count(n) as u32;
    let values = par::filter(0..1u64 << n, |v| kernel::auto_cyclic_at_least(v, n, need));
    Ok(CodeSet::from_values(n, values)?
        .with_delta(delta)
        .with_kind(CodeKind::AutoCyclic)
        .with_cyclic_closed(true))
}

/// Draws uniform words until `target_orbits` distinct orbits of members of
/// `C'` are collected, keeping each accepted orbit in full.
pub fn sample_auto_cyclic(
    n: usize,
    delta: DistanceThreshold,
    target_orbits: usize,
    seed: u64,
) -> Result<CodeSet> {
    let budget = DEFAULT_ATTEMPTS_PER_ORBIT.saturating_mul(target_orbits as u64);
    sample_auto_cyclic_with_budget(n, delta, target_orbits, seed, budget)
}

pub fn sample_auto_cyclic_with_budget(
    n: usize,
    delta: DistanceThreshold,
    target_orbits: usize,
    seed: u64,
    attempt_budget: u64,
) -> Result<CodeSet> {
    if n < 2 {
        return Err(Error::domain(format!("sampling needs n >= 2, got {n}")));
    }
    let delta = delta.for_construction()?;
    if target_orbits == 0 {
        return Err(Error::domain("target_orbits must be positive"));
    }

    let mut reps: BTreeSet<Codeword> = BTreeSet::new();
    let mut words: Vec<Codeword> = Vec::new();
    let mut accepted = 0u64;
    let mut attempts = 0u64;
    while reps.len() < target_orbits && attempts < attempt_budget {
        let x = rng::random_word(&mut rng::substream(seed, attempts), n);
        attempts += 1;
        if !is_auto_cyclic_member(&x, &delta) {
            continue;
        }
        accepted += 1;
        if reps.insert(x.canonical()) {
            words.extend(x.orbit_words());
        }
    }

    let set = CodeSet::from_words(n, words)?
        .with_delta(delta)
        .with_kind(CodeKind::AutoCyclic)
        .with_cyclic_closed(true);
    if reps.len() < target_orbits {
        return Err(Error::SamplingExhausted {
            partial: Box::new(set),
            attempts,
            accepted,
            orbits: reps.len(),
            target: target_orbits,
        });
    }
    Ok(set)
}

/// `sqrt(ln(2/alpha) / (2 trials))`: two-sided Hoeffding radius for a mean
/// of `trials` variables in `[0, 1]` at confidence `1 - alpha`.
pub fn hoeffding_radius(trials: u64, alpha: f64) -> Real {
    assert!(trials >= 1);
    let num = (Real::from_u64(2) / Real::from_f64(alpha)).ln();
    (num / Real::from_u64(2 * trials)).sqrt()
}

fn check_estimate_args(trials: u64, alpha: f64) -> Result<()> {
    if trials == 0 {
        return Err(Error::domain("trials must be positive"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha = {alpha} is not in (0, 1)")));
    }
    Ok(())
}

/// Empirical failure rate `Pr[d*_cyc(x, x) < delta]` with its Hoeffding radius.
#[derive(Debug, Clone, Serialize)]
pub struct TailEstimate {
    pub n: usize,
    pub delta: DistanceThreshold,
    pub trials: u64,
    pub failures: u64,
    pub point_estimate: Real,
    pub confidence_radius: Real,
    pub alpha: f64,
    pub seed: u64,
    pub generator: &'static str,
}

impl TailEstimate {
    /// `point_estimate - confidence_radius` (may be negative).
    pub fn lower(&self) -> Real {
        &self.point_estimate - &self.confidence_radius
    }

    pub fn upper(&self) -> Real {
        &self.point_estimate + &self.confidence_radius
    }
}

pub fn estimate_tail(
    n: usize,
    delta: DistanceThreshold,
    trials: u64,
    seed: u64,
    alpha: f64,
) -> Result<TailEstimate> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    check_estimate_args(trials, alpha)?;
    let failures = par::count(0..trials, |k| {
        let x = rng::random_word(&mut rng::substream(seed, k), n);
        !is_auto_cyclic_member(&x, &delta)
    });
    Ok(TailEstimate {
        n,
        delta,
        trials,
        failures,
        point_estimate: Real::from_ratio(failures, trials),
        confidence_radius: hoeffding_radius(trials, alpha),
        alpha,
        seed,
        generator: GENERATOR,
    })
}

/// Per-shift diagnostic: the empirical rate of `d(E^i(x), x) < delta`.
#[derive(Debug, Clone, Serialize)]
pub struct ShiftEstimate {
    pub n: usize,
    pub shift: usize,
    pub delta: DistanceThreshold,
    pub trials: u64,
    pub failures: u64,
    pub point_estimate: Real,
    pub confidence_radius: Real,
    pub seed: u64,
    pub generator: &'static str,
}

pub fn estimate_shift_tail(
    n: usize,
    shift: usize,
    delta: DistanceThreshold,
    trials: u64,
    seed: u64,
    alpha: f64,
) -> Result<ShiftEstimate> {
    if n < 2 || shift.is_multiple_of(n) {
        return Err(Error::domain("the shift must be nonzero modulo n >= 2"));
    }
    check_estimate_args(trials, alpha)?;
    let failures = par::count(0..trials, |k| {
        let x = rng::random_word(&mut rng::substream(seed, k), n);
        crate::codeword::hamming(&x.shift(shift), &x).expect("same length").below(&delta)
    });
    Ok(ShiftEstimate {
        n,
        shift,
        delta,
        trials,
        failures,
        point_estimate: Real::from_ratio(failures, trials),
        confidence_radius: hoeffding_radius(trials, alpha),
        seed,
        generator: GENERATOR,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codeword::{hamming, shift};

    fn d(p: u64, q: u64) -> DistanceThreshold {
        DistanceThreshold::new(p, q).unwrap()
    }

    fn w(s: &str) -> Codeword {
        s.parse().unwrap()
    }

    /// Membership straight from the definition, using only shift and hamming.
    fn oracle_member(x: &Codeword, delta: &DistanceThreshold) -> bool {
        (1..x.len())
            .map(|i| shift(x, i))
            .filter(|s| s != x)
            .all(|s| hamming(&s, x).unwrap().meets(delta))
    }

    #[test]
    fn membership_examples() {
        assert!(is_auto_cyclic_member(&w("0000000"), &d(1, 2)));
        assert!(is_auto_cyclic_member(&w("0000000"), &d(1, 1)));
        assert!(is_auto_cyclic_member(&w("10000"), &d(2, 5)));
        assert!(!is_auto_cyclic_member(&w("10000"), &d(1, 2)));
    }

    #[test]
    fn enumeration_at_zero_is_everything() {
        for n in 1..=10 {
            assert_eq!(enumerate_auto_cyclic(n, DistanceThreshold::zero()).unwrap().len(), 1 << n);
        }
    }

    #[test]
    fn enumeration_n5_regression() {
        // Oracle: scan all 32 words with the definition.
        let oracle: Vec<Codeword> = (0..32u64)
            .map(|v| Codeword::from_value(v, 5).unwrap())
            .filter(|x| oracle_member(x, &d(2, 5)))
            .collect();
        assert_eq!(oracle.len(), 32);
        let set = enumerate_auto_cyclic(5, d(2, 5)).unwrap();
        assert_eq!(set.to_vec(), oracle);
        // At 3/5 every non-constant word has a shift at count 2.
        let oracle3 = (0..32u64)
            .map(|v| Codeword::from_value(v, 5).unwrap())
            .filter(|x| oracle_member(x, &d(3, 5)))
            .count();
        assert_eq!(enumerate_auto_cyclic(5, d(3, 5)).unwrap().len(), oracle3);
        assert_eq!(oracle3, 2);
    }

    #[test]
    fn enumeration_keeps_constants_at_half() {
        let set = enumerate_auto_cyclic(7, d(1, 2)).unwrap();
        assert!(set.contains(&w("0000000")));
        assert!(set.contains(&w("1111111")));
    }

    #[test]
    fn enumeration_capacity_error() {
        let err = enumerate_auto_cyclic(25, d(1, 4)).unwrap_err();
        assert!(matches!(err, Error::Capacity { n: 25, limit: 24, .. }));
        assert!(enumerate_auto_cyclic_with_limit(12, d(1, 4), 10).is_err());
    }

    #[test]
    fn sampling_is_closed_valid_and_deterministic() {
        let a = sample_auto_cyclic(61, d(1, 4), 100, 1).unwrap();
        let b = sample_auto_cyclic(61, d(1, 4), 100, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 100 * 61);
        for x in a.iter() {
            assert!(is_auto_cyclic_member(&x, &d(1, 4)));
            assert!(a.contains(&x.shift(1)));
        }
        assert_ne!(a, sample_auto_cyclic(61, d(1, 4), 100, 2).unwrap());
    }

    #[test]
    fn sampling_at_zero_takes_first_orbits() {
        let set = sample_auto_cyclic(11, DistanceThreshold::zero(), 5, 4).unwrap();
        let mut reps = BTreeSet::new();
        let mut k = 0;
        while reps.len() < 5 {
            reps.insert(rng::random_word(&mut rng::substream(4, k), 11).canonical());
            k += 1;
        }
        let expect: BTreeSet<Codeword> = reps.iter().flat_map(|r| r.orbit_words()).collect();
        assert_eq!(set.to_vec(), expect.into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn sampling_reports_exhaustion_with_partial_set() {
        // n = 4 has only six orbits in total.
        let err = sample_auto_cyclic_with_budget(4, DistanceThreshold::zero(), 10, 0, 500).unwrap_err();
        match err {
            Error::SamplingExhausted { partial, attempts, orbits, target, .. } => {
                assert_eq!((attempts, orbits, target), (500, 6, 10));
                assert_eq!(partial.len(), 16);
            }
            e => panic!("unexpected {e}"),
        }
        assert!(sample_auto_cyclic(7, d(1, 2), 3, 0).is_err());
        assert!(sample_auto_cyclic(1, d(1, 4), 3, 0).is_err());
    }

    #[test]
    fn sampling_wide_words() {
        let set = sample_auto_cyclic(101, d(1, 4), 3, 5).unwrap();
        assert_eq!(set.len(), 303);
        assert!(set.iter().all(|x| is_auto_cyclic_member(&x, &d(1, 4))));
    }

    #[test]
    fn tail_estimate_at_zero_never_fails() {
        let e = estimate_tail(13, DistanceThreshold::zero(), 5000, 3, 0.01).unwrap();
        assert_eq!(e.failures, 0);
        assert!(e.point_estimate.is_zero());
    }

    #[test]
    fn hoeffding_radius_value() {
        // mpmath: sqrt(ln(200) / 200000) = 0.0051469978465839854...
        let r = hoeffding_radius(100_000, 0.01).to_f64();
        assert!((r - 0.005_146_997_846_583_985).abs() < 1e-15);
    }

    #[test]
    fn shift_diagnostic_respects_its_bound() {
        let e = estimate_shift_tail(31, 3, d(1, 4), 20_000, 2, 0.01).unwrap();
        let bound = crate::bounds::shift_event_bound(31, &d(1, 4)).unwrap();
        assert!((&e.point_estimate - &e.confidence_radius) <= bound);
        assert!(estimate_shift_tail(31, 31, d(1, 4), 10, 0, 0.01).is_err());
    }

    #[test]
    fn estimate_argument_checks() {
        assert!(estimate_tail(13, d(1, 4), 0, 0, 0.01).is_err());
        assert!(estimate_tail(13, d(1, 4), 10, 0, 1.0).is_err());
        assert!(estimate_tail(13, d(1, 4), 10, 0, 0.0).is_err());
    }
}
