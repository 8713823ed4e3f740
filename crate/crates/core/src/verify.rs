//! Brute-force checks of the properties the construction claims, and the
//! non-linearity witness.
//!
//! Every check recomputes distances from the member words with the public
//! codeword operations; nothing cached on a [`CodeSet`] is trusted.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::codeset::CodeSet;
use crate::codeword::{auto_cyclic_distance, cyclic_distance, hamming, kernel, Codeword, DistanceThreshold, RationalDistance};
use crate::error::{Error, Result};
use crate::par;
use crate::rng;

/// Evidence attached to a failed (or, for [`check_not_linear`], passed) check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub x: Codeword,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Codeword>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distance: Option<RationalDistance>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub check: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Set when a budget cut the scan short and only a sample was checked.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub partial: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CheckResult {
    fn pass(check: &'static str) -> Self {
        CheckResult { check, pass: true, witness: None, partial: false, detail: None }
    }

    fn fail(check: &'static str, witness: Witness) -> Self {
        CheckResult { check, pass: false, witness: Some(witness), partial: false, detail: None }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub subject: String,
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport { subject: subject.into(), checks: Vec::new() }
    }

    pub fn push(&mut self, c: CheckResult) {
        self.checks.push(c);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn any_partial(&self) -> bool {
        self.checks.iter().any(|c| c.partial)
    }
}

/// Scan budgets. Exceeding one turns the affected check into a sampled,
/// `partial` result instead of an exhaustive one.
#[derive(Debug, Clone, Copy)]
pub struct Limits {
    /// Orbit-representative pairs examined by [`check_min_cyclic_distance`].
    pub max_rep_pairs: u64,
    /// Member pairs examined by [`check_not_linear`].
    pub max_xor_pairs: u64,
    /// Seed for the sampled fallback.
    pub seed: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_rep_pairs: 1 << 16, max_xor_pairs: 1 << 24, seed: 0 }
    }
}

/// Every shift of every member is a member. Witness: the smallest member
/// and smallest shift that leave the set.
pub fn check_cyclic_closure(c: &CodeSet) -> CheckResult {
    const NAME: &str = "cyclic_closure";
    let n = c.length();
    for x in c.iter() {
        for i in 1..n {
            if !c.contains(&x.shift(i)) {
                return CheckResult::fail(NAME, Witness { x, y: None, shift: Some(i), distance: None });
            }
        }
    }
    CheckResult::pass(NAME)
}

/// Members grouped by orbit, keyed by the smallest word of the orbit.
fn orbit_groups(c: &CodeSet) -> Vec<Vec<Codeword>> {
    let mut groups: BTreeMap<Codeword, Vec<Codeword>> = BTreeMap::new();
    for x in c.iter() {
        groups.entry(x.canonical()).or_default().push(x);
    }
    groups.into_values().collect()
}

/// Deterministic sample of `k` distinct-index pairs out of `g` items.
fn sample_pairs(g: usize, k: u64, seed: u64) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..k)
        .map(|t| {
            let mut r = rng::substream(seed, t);
            let a = (rand_core::RngCore::next_u64(&mut r) % g as u64) as usize;
            let mut b = (rand_core::RngCore::next_u64(&mut r) % (g as u64 - 1)) as usize;
            if b >= a {
                b += 1;
            }
            (a.min(b), a.max(b))
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

type Violation = (RationalDistance, Codeword, Codeword);

fn closer(best: &mut Option<Violation>, cand: Violation) {
    let better = match best {
        None => true,
        Some(b) => (cand.0, &cand.1, &cand.2) < (b.0, &b.1, &b.2),
    };
    if better {
        *best = Some(cand);
    }
}

/// Distinct members of different orbits are at cyclic distance `>= delta`,
/// and distinct members of one orbit are at Hamming distance `>= delta`.
/// Together these say the code has minimum distance at least `delta`.
///
/// Cross-orbit pairs are checked once per pair of orbits since `d_cyc` is
/// shift invariant. On failure the witness is the closest violating pair,
/// ties broken by the smaller pair of words.
pub fn check_min_cyclic_distance(c: &CodeSet, delta: &DistanceThreshold, limits: &Limits) -> CheckResult {
    const NAME: &str = "min_cyclic_distance";
    let groups = orbit_groups(c);
    let mut worst: Option<Violation> = None;

    // within an orbit: plain Hamming distance between distinct shifts
    for g in &groups {
        for (a, x) in g.iter().enumerate() {
            for y in &g[a + 1..] {
                let d = hamming(x, y).expect("same length");
                if d.below(delta) {
                    closer(&mut worst, (d, x.clone(), y.clone()));
                }
            }
        }
    }

    let gcount = groups.len();
    let total_pairs = (gcount as u64) * (gcount.saturating_sub(1) as u64) / 2;
    let partial = total_pairs > limits.max_rep_pairs;
    let found: Vec<Option<Violation>> = if partial {
        let pairs = sample_pairs(gcount, limits.max_rep_pairs, limits.seed);
        par::map(&pairs, |&(a, b)| {
            let (x, y) = (&groups[a][0], &groups[b][0]);
            let d = cyclic_distance(x, y).expect("same length");
            d.below(delta).then(|| (d, x.clone(), y.clone()))
        })
    } else {
        let idx: Vec<usize> = (0..gcount).collect();
        par::map(&idx, |&a| {
            let mut best = None;
            let x = &groups[a][0];
            for g in &groups[a + 1..] {
                let y = &g[0];
                let d = cyclic_distance(x, y).expect("same length");
                if d.below(delta) {
                    closer(&mut best, (d, x.clone(), y.clone()));
                }
            }
            best
        })
    };
    for v in found.into_iter().flatten() {
        closer(&mut worst, v);
    }

    let mut res = match worst {
        Some((d, x, y)) => CheckResult::fail(NAME, Witness { x, y: Some(y), shift: None, distance: Some(d) }),
        None => CheckResult::pass(NAME),
    };
    if partial {
        res.partial = true;
        res = res.detail(format!(
            "{} orbit pairs exceed the budget of {}; checked a seeded sample",
            total_pairs, limits.max_rep_pairs
        ));
    }
    res
}

/// Every word of `cprime` outside `c` is within cyclic distance `< delta` of
/// some member of `c`, i.e. nothing more could be packed.
pub fn check_maximality(c: &CodeSet, cprime: &CodeSet, delta: &DistanceThreshold) -> CheckResult {
    const NAME: &str = "maximality";
    if let Some(x) = c.iter().find(|x| !cprime.contains(x)) {
        return CheckResult::fail(NAME, Witness { x, y: None, shift: None, distance: None })
            .detail("code is not a subset of the pool");
    }
    let kept: Vec<Codeword> = orbit_groups(c).into_iter().map(|g| g[0].clone()).collect();
    let outside: Vec<Codeword> = orbit_groups(cprime)
        .into_iter()
        .filter_map(|g| g.into_iter().find(|y| !c.contains(y)))
        .collect();
    let uncovered = par::map(&outside, |y| {
        let covered = kept.iter().any(|x| cyclic_distance(x, y).expect("same length").below(delta));
        (!covered).then(|| y.clone())
    });
    match uncovered.into_iter().flatten().min() {
        Some(y) => CheckResult::fail(NAME, Witness { x: y, y: None, shift: None, distance: None })
            .detail("this pool word is at cyclic distance >= delta from every code word"),
        None => CheckResult::pass(NAME),
    }
}

/// Confirms non-linearity: passes iff `0^n` is missing or some `u ^ v`
/// leaves the set. A linear set fails without a witness (there is none).
pub fn check_not_linear(c: &CodeSet, limits: &Limits) -> CheckResult {
    const NAME: &str = "not_linear";
    let n = c.length();
    let zero = Codeword::zeros(n).expect("n >= 1");
    if !c.contains(&zero) {
        return match c.iter().next() {
            Some(u) => CheckResult {
                witness: Some(Witness { x: u.clone(), y: Some(u), shift: None, distance: None }),
                ..CheckResult::pass(NAME)
            }
            .detail("zero word is missing"),
            None => CheckResult::pass(NAME).detail("empty set: zero word is missing"),
        };
    }
    let words = c.to_vec();
    let m = words.len() as u64;
    let total = m * (m - 1) / 2;
    let xor_out = |a: usize, b: usize| -> Option<(Codeword, Codeword)> {
        let s = words[a].xor(&words[b]).expect("same length");
        (!c.contains(&s)).then(|| (words[a].clone(), words[b].clone()))
    };
    let (hit, partial) = if total > limits.max_xor_pairs {
        let pairs = sample_pairs(words.len(), limits.max_xor_pairs, limits.seed);
        (pairs.iter().find_map(|&(a, b)| xor_out(a, b)), true)
    } else {
        let idx: Vec<usize> = (0..words.len()).collect();
        let per = par::map(&idx, |&a| (a + 1..words.len()).find_map(|b| xor_out(a, b)));
        (per.into_iter().flatten().next(), false)
    };
    let mut res = match hit {
        Some((u, v)) => CheckResult {
            witness: Some(Witness { x: u, y: Some(v), shift: None, distance: None }),
            ..CheckResult::pass(NAME)
        },
        None => CheckResult { pass: false, ..CheckResult::pass(NAME) }.detail("closed under XOR: linear"),
    };
    if partial {
        res.partial = true;
    }
    res
}

/// Every member has auto-cyclic distance at least `delta`.
pub fn check_auto_cyclic(c: &CodeSet, delta: &DistanceThreshold) -> CheckResult {
    const NAME: &str = "auto_cyclic_distance";
    for x in c.iter() {
        let d = auto_cyclic_distance(&x);
        if d.below(delta) {
            return CheckResult::fail(NAME, Witness { x, y: None, shift: None, distance: Some(d) });
        }
    }
    CheckResult::pass(NAME)
}

/// A counterexample to linearity of the auto-cyclic code `C'`: `x` clears
/// `delta` by a margin of `2/n` on every shift, `y` is `x` with its last bit
/// flipped, and `x ^ y = 0^{n-1}1` has auto-cyclic distance exactly `2/n`.
#[derive(Debug, Clone, Serialize)]
pub struct NonlinearityWitness {
    pub n: usize,
    pub delta: DistanceThreshold,
    /// `delta + 2/n`.
    pub margin: DistanceThreshold,
    pub x: Codeword,
    pub y: Codeword,
    pub sum: Codeword,
    pub x_auto_cyclic: RationalDistance,
    pub y_auto_cyclic: RationalDistance,
    pub sum_auto_cyclic: RationalDistance,
    pub search: &'static str,
    pub seed: u64,
}

impl NonlinearityWitness {
    /// Re-derives the three defining properties from the words alone.
    pub fn check_invariants(&self) -> Vec<CheckResult> {
        let n = self.n;
        let margin_ok = (1..n).all(|i| hamming(&self.x, &self.x.shift(i)).expect("same length").meets(&self.margin));
        let dx = auto_cyclic_distance(&self.x);
        let dy = auto_cyclic_distance(&self.y);
        let ds = auto_cyclic_distance(&self.sum);
        let sum_ok = self.x.xor(&self.y).ok().as_ref() == Some(&self.sum)
            && ds.count() == Some(2)
            && ds.length() == Some(n);
        let mk = |name, ok: bool, x: &Codeword, d: RationalDistance| {
            if ok {
                CheckResult::pass(name)
            } else {
                CheckResult::fail(name, Witness { x: x.clone(), y: None, shift: None, distance: Some(d) })
            }
        };
        vec![
            mk("x_clears_margin", margin_ok && dx.meets(&self.margin), &self.x, dx),
            mk("y_clears_delta", dy.meets(&self.delta), &self.y, dy),
            mk("sum_is_two_over_n", sum_ok, &self.sum, ds),
        ]
    }

    /// `x` and `y` lie in `C'` while `x ^ y` does not; needs `delta > 2/n`.
    pub fn is_counterexample(&self) -> bool {
        self.x_auto_cyclic.meets(&self.delta)
            && self.y_auto_cyclic.meets(&self.delta)
            && self.sum_auto_cyclic.below(&self.delta)
    }
}

/// How [`find_nonlinearity_witness_with`] searches for `x`.
#[derive(Debug, Clone, Copy)]
pub struct WitnessSearch {
    /// Scan all words in ascending order up to this length.
    pub exhaustive_limit: usize,
    /// Draws allowed when sampling.
    pub budget: u64,
    pub seed: u64,
}

impl Default for WitnessSearch {
    fn default() -> Self {
        WitnessSearch { exhaustive_limit: 24, budget: 1_000_000, seed: 0 }
    }
}

pub fn find_nonlinearity_witness(n: usize, delta: DistanceThreshold) -> Result<NonlinearityWitness> {
    find_nonlinearity_witness_with(n, delta, WitnessSearch::default())
}

pub fn find_nonlinearity_witness_with(
    n: usize,
    delta: DistanceThreshold,
    search: WitnessSearch,
) -> Result<NonlinearityWitness> {
    if n < 2 {
        return Err(Error::domain(format!("witness search needs n >= 2, got {n}")));
    }
    let margin = delta.plus_fraction(2, n as u64)?;
    if !margin.is_below_half() {
        return Err(Error::domain(format!("delta + 2/n = {margin} is not below 1/2")));
    }
    let need = margin.min_count(n);
    let clears = |x: &Codeword| -> bool {
        match x.value() {
            Some(v) => kernel::all_shifts_at_least(v, n, need as u32),
            None => (1..=n / 2).all(|i| hamming(x, &x.shift(i)).expect("same length").meets(&margin)),
        }
    };

    let (x, how) = if n <= search.exhaustive_limit && n < kernel::MAX_BITS {
        let v = par::find_first(0..1u64 << n, |v| clears(&Codeword::from_value(v, n).expect("fits")));
        (v.map(|v| Codeword::from_value(v, n).expect("fits")), "exhaustive")
    } else {
        let k = par::find_first(0..search.budget, |k| clears(&rng::random_word(&mut rng::substream(search.seed, k), n)));
        (k.map(|k| rng::random_word(&mut rng::substream(search.seed, k), n)), "sampled")
    };
    let x = x.ok_or_else(|| {
        Error::NotFound(format!(
            "no word of length {n} has every shift at distance >= {margin} ({how} search, budget {})",
            if how == "exhaustive" { 1u64 << n } else { search.budget }
        ))
    })?;

    let mut y = x.clone();
    y.flip(n - 1);
    let sum = x.xor(&y)?;
    let w = NonlinearityWitness {
        n,
        delta,
        margin,
        x_auto_cyclic: auto_cyclic_distance(&x),
        y_auto_cyclic: auto_cyclic_distance(&y),
        sum_auto_cyclic: auto_cyclic_distance(&sum),
        x,
        y,
        sum,
        search: how,
        seed: search.seed,
    };
    debug_assert!(w.check_invariants().iter().all(|c| c.pass));
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autocyclic::enumerate_auto_cyclic;
    use crate::packing::greedy_pack;

    fn d(p: u64, q: u64) -> DistanceThreshold {
        DistanceThreshold::new(p, q).unwrap()
    }

    fn w(s: &str) -> Codeword {
        s.parse().unwrap()
    }

    fn set(n: usize, words: &[&str]) -> CodeSet {
        CodeSet::from_words(n, words.iter().map(|s| w(s))).unwrap()
    }

    #[test]
    fn closure_examples() {
        assert!(check_cyclic_closure(&w("10000").orbit()).pass);
        let r = check_cyclic_closure(&set(5, &["10000"]));
        assert!(!r.pass);
        let wit = r.witness.unwrap();
        assert_eq!((wit.x, wit.shift), (w("10000"), Some(1)));
        assert!(check_cyclic_closure(&CodeSet::empty(5).unwrap()).pass);
    }

    #[test]
    fn min_distance_examples() {
        let lim = Limits::default();
        let cprime = enumerate_auto_cyclic(5, d(2, 5)).unwrap();
        let (code, _) = greedy_pack(&cprime, d(2, 5)).unwrap();
        assert!(check_min_cyclic_distance(&code, &d(2, 5), &lim).pass);

        let r = check_min_cyclic_distance(&set(5, &["00000", "00001"]), &d(2, 5), &lim);
        assert!(!r.pass);
        let wit = r.witness.unwrap();
        assert_eq!(wit.distance, Some(RationalDistance::new(1, 5)));
        assert_eq!((wit.x, wit.y), (w("00000"), Some(w("00001"))));

        assert!(check_min_cyclic_distance(&set(5, &["01011"]), &d(1, 1), &lim).pass);
    }

    #[test]
    fn min_distance_within_an_orbit() {
        // 10000 and its shifts are pairwise at Hamming 2/5
        let r = check_min_cyclic_distance(&w("10000").orbit(), &d(3, 5), &Limits::default());
        assert!(!r.pass);
        assert_eq!(r.witness.unwrap().distance, Some(RationalDistance::new(2, 5)));
    }

    #[test]
    fn min_distance_budget_marks_partial() {
        let cprime = enumerate_auto_cyclic(11, d(1, 4)).unwrap();
        let lim = Limits { max_rep_pairs: 50, ..Limits::default() };
        let r = check_min_cyclic_distance(&cprime, &d(1, 4), &lim);
        assert!(r.partial);
    }

    #[test]
    fn maximality_examples() {
        let cprime = enumerate_auto_cyclic(7, d(2, 7)).unwrap();
        let (code, _) = greedy_pack(&cprime, d(2, 7)).unwrap();
        assert!(check_maximality(&code, &cprime, &d(2, 7)).pass);
        assert!(!check_maximality(&CodeSet::empty(7).unwrap(), &cprime, &d(2, 7)).pass);
        assert!(check_maximality(&cprime, &cprime, &d(2, 7)).pass);
        // dropping one kept orbit breaks maximality
        let first = code.iter().next().unwrap();
        let smaller = CodeSet::from_words(7, code.iter().filter(|x| x.canonical() != first.canonical())).unwrap();
        let r = check_maximality(&smaller, &cprime, &d(2, 7));
        assert!(!r.pass && r.witness.is_some());
    }

    #[test]
    fn linearity_examples() {
        let lim = Limits::default();
        let cprime = enumerate_auto_cyclic(11, d(1, 4)).unwrap();
        let r = check_not_linear(&cprime, &lim);
        assert!(r.pass);
        let wit = r.witness.unwrap();
        assert!(!cprime.contains(&wit.x.xor(wit.y.as_ref().unwrap()).unwrap()));
        assert!(!check_not_linear(&set(4, &["0000"]), &lim).pass);
        let full = CodeSet::from_values(6, (0..64).collect()).unwrap();
        assert!(!check_not_linear(&full, &lim).pass);
        assert!(check_not_linear(&set(4, &["0001"]), &lim).pass);
    }

    #[test]
    fn witness_n13() {
        let wit = find_nonlinearity_witness(13, d(1, 4)).unwrap();
        assert!(wit.check_invariants().iter().all(|c| c.pass));
        assert!(wit.is_counterexample());
        assert_eq!(wit.sum.to_string(), "0000000000001");
        assert_eq!(wit.search, "exhaustive");
    }

    #[test]
    fn witness_domain_and_not_found() {
        assert!(find_nonlinearity_witness(7, d(1, 4)).is_err()); // 1/4 + 2/7 > 1/2
        assert!(matches!(
            find_nonlinearity_witness_with(11, d(1, 5), WitnessSearch { exhaustive_limit: 0, budget: 0, seed: 0 }),
            Err(Error::NotFound(_))
        ));
    }

    #[test]
    fn witness_by_sampling() {
        let s = WitnessSearch { exhaustive_limit: 0, budget: 100_000, seed: 9 };
        let wit = find_nonlinearity_witness_with(31, d(1, 4), s).unwrap();
        assert_eq!(wit.search, "sampled");
        assert!(wit.check_invariants().iter().all(|c| c.pass));
        let wide = find_nonlinearity_witness_with(89, d(1, 4), s).unwrap();
        assert!(wide.check_invariants().iter().all(|c| c.pass));
    }

    #[test]
    fn unit_vector_auto_cyclic_is_two_over_n() {
        for n in 2..=130usize {
            let mut e = Codeword::zeros(n).unwrap();
            e.set(n - 1, true);
            assert_eq!(auto_cyclic_distance(&e), RationalDistance::new(2, n), "n={n}");
            // brute force over every shift
            let min = (1..n).map(|i| hamming(&e.shift(i), &e).unwrap()).min().unwrap();
            assert_eq!(min, RationalDistance::new(2, n));
        }
    }

    #[test]
    fn report_json_shape() {
        let mut rep = VerificationReport::new("demo");
        rep.push(check_cyclic_closure(&set(5, &["10000"])));
        rep.push(check_cyclic_closure(&w("10000").orbit()));
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["checks"][0]["check"], "cyclic_closure");
        assert_eq!(v["checks"][0]["pass"], false);
        assert_eq!(v["checks"][0]["witness"]["x"], "10000");
        assert_eq!(v["checks"][0]["witness"]["shift"], 1);
        assert!(v["checks"][1].get("witness").is_none());
        assert!(!rep.all_pass());
    }
}
