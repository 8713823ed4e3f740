//! Closed-form quantities of the construction: binary entropy, Hamming-ball
//! volumes, the union-bound tail estimate for auto-cyclic failures, the
//! Gilbert-Varshamov rate, and code rates.
//!
//! Reals are [`Real`] values at 128-bit working precision; ball volumes are
//! exact big integers.

use dashu_int::UBig;
use serde::{Serialize, Serializer};

use crate::codeword::DistanceThreshold;
use crate::error::{Error, Result};
use crate::real::Real;

/// `H(p/q) = -d log2 d - (1-d) log2(1-d)`, with `H(0) = H(1) = 0`.
///
/// Evaluated as `log2 q - (p log2 p + (q-p) log2(q-p)) / q`, which keeps every
/// logarithm argument an integer.
pub fn binary_entropy_ratio(p: u64, q: u64) -> Result<Real> {
    if q == 0 || p > q {
        return Err(Error::domain(format!("entropy argument {p}/{q} is outside [0, 1]")));
    }
    if p == 0 || p == q {
        return Ok(Real::zero());
    }
    let xlog = |v: u64| Real::from_u64(v) * Real::from_u64(v).log2();
    let inner = (xlog(p) + xlog(q - p)) / Real::from_u64(q);
    Ok(Real::from_u64(q).log2() - inner)
}

pub fn binary_entropy(delta: &DistanceThreshold) -> Real {
    binary_entropy_ratio(delta.numer(), delta.denom()).expect("thresholds lie in [0, 1]")
}

/// `V(n, r) = sum_{k <= r} C(n, k)`, exactly.
pub fn ball_volume(n: usize, r: usize) -> Result<UBig> {
    if r > n {
        return Err(Error::domain(format!("ball radius {r} exceeds length {n}")));
    }
    let mut term = UBig::ONE;
    let mut sum = UBig::ONE;
    for k in 0..r {
        term = term * UBig::from(n - k) / UBig::from(k + 1);
        sum += &term;
    }
    Ok(sum)
}

/// Volume of the open ball `{y : d(x, y) < delta}`; zero when `delta = 0`.
pub fn strict_ball_volume(n: usize, delta: &DistanceThreshold) -> UBig {
    match delta.strict_radius(n) {
        Some(r) => ball_volume(n, r.min(n)).expect("radius clamped to n"),
        None => UBig::ZERO,
    }
}

/// `2^{H(delta) n}`, the entropy upper bound on the ball volume.
pub fn ball_entropy_bound(n: usize, delta: &DistanceThreshold) -> Real {
    (binary_entropy(delta) * Real::from_u64(n as u64)).exp2()
}

fn require_construction_regime(delta: &DistanceThreshold) -> Result<()> {
    if delta.is_below_half() {
        Ok(())
    } else {
        Err(Error::domain(format!("delta = {delta} is not below 1/2")))
    }
}

/// `log2` of the tail bound: `1 + log2(n-1) + (H(delta) - 1) n`.
pub fn lemma1_log2_bound(n: usize, delta: &DistanceThreshold) -> Result<Real> {
    if n < 2 {
        return Err(Error::domain(format!("tail bound needs n >= 2, got {n}")));
    }
    require_construction_regime(delta)?;
    let nn = Real::from_u64(n as u64);
    Ok(Real::one() + Real::from_u64(n as u64 - 1).log2()
        + (binary_entropy(delta) - Real::one()) * nn)
}

/// Union bound on the probability that a uniform word has auto-cyclic
/// distance below `delta`: `2 (n-1) 2^{(H(delta) - 1) n}`.
pub fn lemma1_bound(n: usize, delta: &DistanceThreshold) -> Result<Real> {
    Ok(lemma1_log2_bound(n, delta)?.exp2())
}

/// `2 (n-1) 2^{H(delta) n} <= 2^{n-1}`, the hypothesis under which the
/// auto-cyclic code has at least `2^{n-1}` words. Decided in integers when
/// `delta = 0`, where both sides are exact.
pub fn lemma1_size_condition(n: usize, delta: &DistanceThreshold) -> Result<bool> {
    let log2b = lemma1_log2_bound(n, delta)?;
    if delta.is_zero() {
        return Ok(n >= 65 || 2 * (n as u128 - 1) <= 1u128 << (n - 1));
    }
    Ok(log2b <= -Real::one())
}

/// Bound on a single shift: `Pr[d(E^i x, x) < delta] <= 2^{H(delta) n} / 2^{n-1}`.
pub fn shift_event_bound(n: usize, delta: &DistanceThreshold) -> Result<Real> {
    if n < 2 {
        return Err(Error::domain(format!("shift bound needs n >= 2, got {n}")));
    }
    require_construction_regime(delta)?;
    let e = binary_entropy(delta) * Real::from_u64(n as u64) - Real::from_u64(n as u64 - 1);
    Ok(e.exp2())
}

/// `1 - H(delta)`.
pub fn gv_rate(delta: &DistanceThreshold) -> Result<Real> {
    require_construction_regime(delta)?;
    Ok(Real::one() - binary_entropy(delta))
}

/// `R(C) = log2 |C| / n`.
pub fn code_rate(size: &UBig, n: usize) -> Result<Real> {
    if *size == UBig::ZERO {
        return Err(Error::domain("rate of an empty code is undefined"));
    }
    if n == 0 {
        return Err(Error::domain("rate needs n >= 1"));
    }
    Ok(Real::from_ubig(size).log2() / Real::from_u64(n as u64))
}

pub fn code_rate_u64(size: u64, n: usize) -> Result<Real> {
    code_rate(&UBig::from(size), n)
}

/// Every closed-form quantity for one `(n, delta)` instance.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub delta: DistanceThreshold,
    pub entropy: Real,
    /// `floor(delta n)`.
    pub ball_radius: usize,
    #[serde(serialize_with = "ser_ubig")]
    pub ball_volume: UBig,
    pub ball_entropy_bound: Real,
    pub ball_within_bound: bool,
    /// Largest count strictly below `delta n`; absent when `delta = 0`.
    pub strict_radius: Option<usize>,
    #[serde(serialize_with = "ser_ubig")]
    pub strict_ball_volume: UBig,
    /// Present only when `delta < 1/2` and `n >= 2`.
    pub lemma1_bound: Option<Real>,
    /// `2 (n-1) 2^{H(delta) n} <= 2^{n-1}`; absent with `lemma1_bound`.
    pub lemma1_size_condition: Option<bool>,
    pub gv_rate: Option<Real>,
    pub lemma1_rate_target: Real,
    pub realized_rate: Option<Real>,
}

fn ser_ubig<S: Serializer>(v: &UBig, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

impl BoundReport {
    pub fn evaluate(n: usize, delta: DistanceThreshold) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("n must be at least 1"));
        }
        let ball_radius = delta.floor_radius(n).min(n);
        let ball_volume = ball_volume(n, ball_radius)?;
        let ball_entropy_bound = ball_entropy_bound(n, &delta);
        let ball_within_bound = Real::from_ubig(&ball_volume) <= ball_entropy_bound;
        Ok(BoundReport {
            n,
            delta,
            entropy: binary_entropy(&delta),
            ball_radius,
            ball_volume,
            ball_entropy_bound,
            ball_within_bound,
            strict_radius: delta.strict_radius(n),
            strict_ball_volume: strict_ball_volume(n, &delta),
            lemma1_bound: lemma1_bound(n, &delta).ok(),
            lemma1_size_condition: lemma1_size_condition(n, &delta).ok(),
            gv_rate: gv_rate(&delta).ok(),
            lemma1_rate_target: Real::one() - Real::from_ratio(1, n as u64),
            realized_rate: None,
        })
    }

    pub fn with_code_size(mut self, size: &UBig) -> Result<Self> {
        self.realized_rate = Some(code_rate(size, self.n)?);
        Ok(self)
    }
}
