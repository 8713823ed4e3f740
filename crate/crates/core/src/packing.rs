//! Greedy orbit packing.
//!
//! Starting from a cyclic-closed pool `C'`, repeatedly take the smallest
//! remaining word `x`, keep its whole orbit, and delete from the pool every
//! word `y` with `d_cyc(x, y) < delta`. Because the pool is cyclic-closed and
//! `d_cyc` is shift invariant, each deletion removes whole orbits. The kept
//! orbits form a cyclic code in which words from different orbits are at
//! cyclic distance at least `delta`.

use dashu_int::UBig;
use serde::Serialize;

use crate::bounds::{ball_volume, binary_entropy};
use crate::codeset::{CodeKind, CodeSet};
use crate::codeword::{cyclic_distance, kernel, Codeword, DistanceThreshold};
use crate::error::{Error, Result};
use crate::par;
use crate::real::Real;

/// Per-iteration record of a packing run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub representative: Codeword,
    pub removed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingTrace {
    /// Orbit representatives in selection order.
    pub selected: Vec<Codeword>,
    /// Words deleted from the pool in each iteration, kept orbit included.
    pub removed_counts: Vec<u64>,
    pub initial_size: u64,
    pub final_size: u64,
}

impl PackingTrace {
    pub fn records(&self) -> Vec<TraceRecord> {
        self.selected
            .iter()
            .zip(&self.removed_counts)
            .map(|(r, &removed)| TraceRecord { representative: r.clone(), removed })
            .collect()
    }

    /// JSON array of `{representative, removed}` records.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.records()).expect("records serialize")
    }
}

/// How a conflict set is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConflictStrategy {
    /// Test `d_cyc(x, y) < delta` for every remaining `y`.
    Scan,
    /// Enumerate the open Hamming balls around the shifts of `x` and look
    /// each word up in the pool.
    Ball,
}

/// Picks [`ConflictStrategy::Ball`] when the `n` balls hold fewer words than
/// the pool.
pub fn choose_strategy(n: usize, delta: &DistanceThreshold, pool_size: usize) -> ConflictStrategy {
    match delta.strict_radius(n) {
        None => ConflictStrategy::Ball,
        Some(r) => {
            let balls = ball_volume(n, r.min(n)).expect("radius clamped") * UBig::from(n);
            if balls < UBig::from(pool_size) {
                ConflictStrategy::Ball
            } else {
                ConflictStrategy::Scan
            }
        }
    }
}

/// Exact cap on one iteration's removals: the orbit of `x` together with the
/// `n` open balls around its shifts, `n * max(V(n, r), 1)`.
pub fn removal_cap(n: usize, delta: &DistanceThreshold) -> UBig {
    let v = match delta.strict_radius(n) {
        Some(r) => ball_volume(n, r.min(n)).expect("radius clamped"),
        None => UBig::ONE,
    };
    UBig::from(n) * v.max(UBig::ONE)
}

/// `n 2^{H(delta) n}`, the entropy form of the removal cap.
pub fn entropy_removal_cap(n: usize, delta: &DistanceThreshold) -> Real {
    Real::from_u64(n as u64) * (binary_entropy(delta) * Real::from_u64(n as u64)).exp2()
}

/// Remaining pool with O(log |pool|) lookup and O(1) deletion.
struct Pool {
    n: usize,
    words: Vec<Codeword>,
    values: Option<Vec<u64>>,
    alive: Vec<bool>,
    alive_count: usize,
    cursor: usize,
}

impl Pool {
    fn new(set: &CodeSet) -> Self {
        let words = set.to_vec();
        let len = words.len();
        Pool {
            n: set.length(),
            values: set.values().map(<[u64]>::to_vec),
            words,
            alive: vec![true; len],
            alive_count: len,
            cursor: 0,
        }
    }

    fn index_of(&self, w: &Codeword) -> Option<usize> {
        match (&self.values, w.value()) {
            (Some(v), Some(x)) => v.binary_search(&x).ok(),
            _ => self.words.binary_search(w).ok(),
        }
    }

    fn next_alive(&mut self) -> Option<usize> {
        while self.cursor < self.words.len() && !self.alive[self.cursor] {
            self.cursor += 1;
        }
        (self.cursor < self.words.len()).then_some(self.cursor)
    }

    /// Indices of alive words within cyclic distance `< delta` of `x`, plus
    /// the orbit of `x`; sorted and distinct.
    fn conflicts(&self, x: &Codeword, delta: &DistanceThreshold, strategy: ConflictStrategy) -> Vec<usize> {
        let n = self.n;
        let mut hits: Vec<usize> = x
            .orbit_words()
            .iter()
            .filter_map(|s| self.index_of(s))
            .filter(|&i| self.alive[i])
            .collect();
        if let Some(r) = delta.strict_radius(n) {
            match strategy {
                ConflictStrategy::Scan => {
                    let need = delta.min_count(n) as u32;
                    let found = match (&self.values, x.value()) {
                        (Some(vals), Some(xv)) => par::filter(0..vals.len() as u64, |j| {
                            self.alive[j as usize] && kernel::cyclic_below(xv, vals[j as usize], n, need)
                        }),
                        _ => par::filter(0..self.words.len() as u64, |j| {
                            self.alive[j as usize]
                                && cyclic_distance(x, &self.words[j as usize]).expect("same length").below(delta)
                        }),
                    };
                    hits.extend(found.into_iter().map(|j| j as usize));
                }
                ConflictStrategy::Ball => {
                    for s in x.orbit_words() {
                        match (&self.values, s.value()) {
                            (Some(vals), Some(sv)) => kernel::for_each_in_ball(sv, n, r, |y| {
                                if let Ok(i) = vals.binary_search(&y) {
                                    if self.alive[i] {
                                        hits.push(i);
                                    }
                                }
                            }),
                            _ => for_each_in_wide_ball(&s, r, &mut |y| {
                                if let Some(i) = self.index_of(y) {
                                    if self.alive[i] {
                                        hits.push(i);
                                    }
                                }
                            }),
                        }
                    }
                }
            }
        }
        hits.sort_unstable();
        hits.dedup();
        hits
    }

    fn remove(&mut self, idx: &[usize]) {
        for &i in idx {
            debug_assert!(self.alive[i]);
            self.alive[i] = false;
        }
        self.alive_count -= idx.len();
    }
}

fn for_each_in_wide_ball(center: &Codeword, radius: usize, f: &mut impl FnMut(&Codeword)) {
    fn go(w: &mut Codeword, start: usize, left: usize, f: &mut impl FnMut(&Codeword)) {
        f(w);
        if left == 0 {
            return;
        }
        for pos in start..w.len() {
            w.flip(pos);
            go(w, pos + 1, left - 1, f);
            w.flip(pos);
        }
    }
    let mut w = center.clone();
    let r = radius.min(w.len());
    go(&mut w, 0, r, f);
}

/// Shift-closure and auto-cyclic preconditions of [`greedy_pack`].
fn check_pool(cprime: &CodeSet, delta: &DistanceThreshold) -> Result<()> {
    for x in cprime.iter() {
        let s = x.shift(1);
        if !cprime.contains(&s) {
            return Err(Error::Contract {
                message: "input is not cyclic-closed: a shift of a member is missing".into(),
                witness: x,
                shift: 1,
            });
        }
    }
    for x in cprime.iter() {
        let n = x.len();
        if let Some(i) = (1..n).find(|&i| {
            let s = x.shift(i);
            s != x && crate::codeword::hamming(&s, &x).expect("same length").below(delta)
        }) {
            return Err(Error::Contract {
                message: format!("member has auto-cyclic distance below {delta}"),
                witness: x,
                shift: i,
            });
        }
    }
    Ok(())
}

/// `{y in pool : d_cyc(x, y) < delta}` together with the orbit of `x`.
///
/// The orbit is included explicitly so that the set is the same at
/// `delta = 0`, where no distance is below the threshold.
pub fn conflict_set(x: &Codeword, pool: &CodeSet, delta: &DistanceThreshold) -> Result<CodeSet> {
    if !pool.contains(x) {
        return Err(Error::domain(format!("{x} is not in the pool")));
    }
    let p = Pool::new(pool);
    let strategy = choose_strategy(p.n, delta, p.alive_count);
    let idx = p.conflicts(x, delta, strategy);
    let set = CodeSet::from_words(p.n, idx.into_iter().map(|i| p.words[i].clone()))?;
    Ok(set.with_delta(*delta))
}

/// Same as [`conflict_set`] with the strategy forced.
pub fn conflict_set_with(
    x: &Codeword,
    pool: &CodeSet,
    delta: &DistanceThreshold,
    strategy: ConflictStrategy,
) -> Result<CodeSet> {
    if !pool.contains(x) {
        return Err(Error::domain(format!("{x} is not in the pool")));
    }
    let p = Pool::new(pool);
    let idx = p.conflicts(x, delta, strategy);
    CodeSet::from_words(p.n, idx.into_iter().map(|i| p.words[i].clone()))
}

/// Runs the greedy procedure until the pool is empty. Selection always takes
/// the smallest remaining word as a binary integer.
pub fn greedy_pack(cprime: &CodeSet, delta: DistanceThreshold) -> Result<(CodeSet, PackingTrace)> {
    check_pool(cprime, &delta)?;
    let mut pool = Pool::new(cprime);
    let mut kept: Vec<Codeword> = Vec::new();
    let mut trace = PackingTrace {
        selected: Vec::new(),
        removed_counts: Vec::new(),
        initial_size: cprime.len() as u64,
        final_size: 0,
    };
    while let Some(i) = pool.next_alive() {
        let x = pool.words[i].clone();
        let strategy = choose_strategy(pool.n, &delta, pool.alive_count);
        let hits = pool.conflicts(&x, &delta, strategy);
        pool.remove(&hits);
        kept.extend(x.orbit_words());
        trace.removed_counts.push(hits.len() as u64);
        trace.selected.push(x);
    }
    debug_assert_eq!(pool.alive_count, 0);
    let code = CodeSet::from_words(cprime.length(), kept)?
        .with_delta(delta)
        .with_kind(CodeKind::Packed)
        .with_cyclic_closed(true);
    trace.final_size = code.len() as u64;
    Ok((code, trace))
}

/// Slack allowed in the log-domain size comparison of [`verify_rate_bound`],
/// far above the rounding error of 128-bit arithmetic.
pub const RATE_BOUND_LOG2_MARGIN: f64 = 1e-24;

/// `|C| n 2^{H(delta) n} >= |C'|`, compared as
/// `log2|C| + log2 n + H(delta) n >= log2|C'| - RATE_BOUND_LOG2_MARGIN`.
pub fn verify_rate_bound(cprime_size: u64, c_size: u64, n: usize, delta: DistanceThreshold) -> bool {
    if cprime_size == 0 {
        return true;
    }
    if c_size == 0 || n == 0 {
        return false;
    }
    let lhs = Real::from_u64(c_size).log2()
        + Real::from_u64(n as u64).log2()
        + binary_entropy(&delta) * Real::from_u64(n as u64);
    let rhs = Real::from_u64(cprime_size).log2() - Real::from_f64(RATE_BOUND_LOG2_MARGIN);
    lhs >= rhs
}

/// `|C'| / (n 2^{H(delta) n})`, the guaranteed size of the packed code.
pub fn size_lower_bound(cprime_size: u64, n: usize, delta: DistanceThreshold) -> Real {
    Real::from_u64(cprime_size) / entropy_removal_cap(n, &delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autocyclic::enumerate_auto_cyclic;

    fn d(p: u64, q: u64) -> DistanceThreshold {
        DistanceThreshold::new(p, q).unwrap()
    }

    fn w(s: &str) -> Codeword {
        s.parse().unwrap()
    }

    fn all_words(n: usize) -> CodeSet {
        CodeSet::from_values(n, (0..1u64 << n).collect()).unwrap().with_cyclic_closed(true)
    }

    /// Greedy with the same selection order, written against the definitions.
    fn oracle_pack(pool: &[Codeword], delta: &DistanceThreshold) -> Vec<Codeword> {
        let mut remaining: Vec<Codeword> = pool.to_vec();
        remaining.sort();
        let mut kept = Vec::new();
        while let Some(x) = remaining.first().cloned() {
            let orbit: Vec<Codeword> = (0..x.len()).map(|i| x.shift(i)).collect();
            remaining.retain(|y| !orbit.contains(y) && cyclic_distance(&x, y).unwrap().meets(delta));
            kept.extend(orbit);
        }
        kept.sort();
        kept.dedup();
        kept
    }

    #[test]
    fn n5_matches_oracle() {
        let delta = d(2, 5);
        let cprime = enumerate_auto_cyclic(5, delta).unwrap();
        let (code, trace) = greedy_pack(&cprime, delta).unwrap();
        assert_eq!(code.to_vec(), oracle_pack(&cprime.to_vec(), &delta));
        assert_eq!(trace.removed_counts.iter().sum::<u64>(), 32);
        assert_eq!(trace.initial_size, 32);
        assert_eq!(trace.final_size, code.len() as u64);
        assert_eq!(trace.selected[0], w("00000"));
    }

    #[test]
    fn single_orbit_is_kept() {
        let pool = Codeword::zeros(7).unwrap().orbit();
        let (code, trace) = greedy_pack(&pool, d(1, 4)).unwrap();
        assert_eq!(code.to_vec(), pool.to_vec());
        assert_eq!(trace.removed_counts, vec![1]);
    }

    #[test]
    fn zero_threshold_keeps_everything() {
        let cprime = enumerate_auto_cyclic(9, DistanceThreshold::zero()).unwrap();
        let (code, trace) = greedy_pack(&cprime, DistanceThreshold::zero()).unwrap();
        assert_eq!(code.to_vec(), cprime.to_vec());
        assert!(trace.removed_counts.iter().all(|&c| c <= 9));
        assert!(verify_rate_bound(cprime.len() as u64, code.len() as u64, 9, DistanceThreshold::zero()));
    }

    #[test]
    fn conflict_set_examples() {
        let pool = all_words(5);
        let x = w("10000");
        let conf = conflict_set(&x, &pool, &d(2, 5)).unwrap();
        let brute: Vec<Codeword> = pool
            .iter()
            .filter(|y| cyclic_distance(&x, y).unwrap().below(&d(2, 5)))
            .collect();
        assert_eq!(conf.to_vec(), brute);
        assert!(x.orbit().is_subset_of(&conf));
        let at_zero = conflict_set(&x, &pool, &DistanceThreshold::zero()).unwrap();
        assert_eq!(at_zero.to_vec(), x.orbit_words());
        assert!(conflict_set(&w("10000"), &x.orbit().with_delta(d(1, 5)), &d(1, 5)).is_ok());
        assert!(conflict_set(&w("11000"), &x.orbit(), &d(1, 5)).is_err());
    }

    #[test]
    fn strategies_agree() {
        let pool = all_words(11);
        for (p, q) in [(1, 11), (2, 11), (1, 4), (4, 11)] {
            let delta = d(p, q);
            for v in [0u64, 1, 0b101, 0b11010011001, 0b11111111111] {
                let x = Codeword::from_value(v, 11).unwrap();
                let a = conflict_set_with(&x, &pool, &delta, ConflictStrategy::Scan).unwrap();
                let b = conflict_set_with(&x, &pool, &delta, ConflictStrategy::Ball).unwrap();
                assert_eq!(a.to_vec(), b.to_vec(), "{x} {delta}");
            }
        }
    }

    #[test]
    fn wide_packing_runs() {
        let cprime = crate::autocyclic::sample_auto_cyclic(67, d(1, 4), 6, 11).unwrap();
        let (code, trace) = greedy_pack(&cprime, d(1, 4)).unwrap();
        assert!(code.is_subset_of(&cprime));
        assert_eq!(trace.removed_counts.iter().sum::<u64>(), cprime.len() as u64);
        // forced ball strategy on a tiny radius
        let x = cprime.iter().next().unwrap();
        let a = conflict_set_with(&x, &cprime, &d(1, 67), ConflictStrategy::Scan).unwrap();
        let b = conflict_set_with(&x, &cprime, &d(1, 67), ConflictStrategy::Ball).unwrap();
        assert_eq!(a.to_vec(), b.to_vec());
    }

    #[test]
    fn non_closed_input_is_a_contract_error() {
        let pool = CodeSet::from_words(5, [w("10000")]).unwrap();
        match greedy_pack(&pool, d(1, 5)) {
            Err(Error::Contract { witness, shift, .. }) => {
                assert_eq!(witness, w("10000"));
                assert_eq!(shift, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        // closed but containing a word below the threshold
        let pool = w("10000").orbit();
        assert!(matches!(greedy_pack(&pool, d(3, 5)), Err(Error::Contract { .. })));
    }

    #[test]
    fn rate_bound_checker() {
        assert!(verify_rate_bound(100, 100, 10, DistanceThreshold::zero()));
        assert!(!verify_rate_bound(5, 0, 10, d(1, 4)));
        assert!(verify_rate_bound(0, 0, 10, d(1, 4)));
        // |C| n 2^{Hn} = 1 * 4 * 1 exactly equals |C'| = 4 at delta = 0
        assert!(verify_rate_bound(4, 1, 4, DistanceThreshold::zero()));
        assert!(!verify_rate_bound(5, 1, 4, DistanceThreshold::zero()));
    }

    #[test]
    fn trace_json_shape() {
        let cprime = enumerate_auto_cyclic(5, d(2, 5)).unwrap();
        let (_, trace) = greedy_pack(&cprime, d(2, 5)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&trace.to_json()).unwrap();
        let arr = v.as_array().unwrap();
        assert_eq!(arr.len(), trace.selected.len());
        assert_eq!(arr[0]["representative"], "00000");
        assert!(arr[0]["removed"].as_u64().unwrap() >= 1);
    }
}
