use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Normalized Hamming distance held as the exact fraction `count / length`.
///
/// `Infinite` is the value assigned to words that no cyclic shift moves
/// (the constant words, and for composite `n` nothing else); it compares
/// above every finite distance and passes every threshold.
#[derive(Debug, Clone, Copy)]
pub enum RationalDistance {
    Finite { count: usize, length: usize },
    Infinite,
}

impl RationalDistance {
    pub fn new(count: usize, length: usize) -> Self {
        assert!(length >= 1 && count <= length, "{count}/{length} is not a distance");
        RationalDistance::Finite { count, length }
    }

    pub fn count(&self) -> Option<usize> {
        match *self {
            RationalDistance::Finite { count, .. } => Some(count),
            RationalDistance::Infinite => None,
        }
    }

    pub fn length(&self) -> Option<usize> {
        match *self {
            RationalDistance::Finite { length, .. } => Some(length),
            RationalDistance::Infinite => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RationalDistance::Infinite)
    }

    /// `self >= delta`, by cross-multiplication.
    pub fn meets(&self, delta: &DistanceThreshold) -> bool {
        match *self {
            RationalDistance::Finite { count, length } => delta.is_met_by(count, length),
            RationalDistance::Infinite => true,
        }
    }

    /// `self < delta`.
    pub fn below(&self, delta: &DistanceThreshold) -> bool {
        !self.meets(delta)
    }

    pub fn to_f64(&self) -> f64 {
        match *self {
            RationalDistance::Finite { count, length } => count as f64 / length as f64,
            RationalDistance::Infinite => f64::INFINITY,
        }
    }
}

impl PartialEq for RationalDistance {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for RationalDistance {}

impl PartialOrd for RationalDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalDistance {
    fn cmp(&self, other: &Self) -> Ordering {
        use RationalDistance::*;
        match (*self, *other) {
            (Infinite, Infinite) => Ordering::Equal,
            (Infinite, _) => Ordering::Greater,
            (_, Infinite) => Ordering::Less,
            (Finite { count: a, length: n }, Finite { count: b, length: m }) => {
                (a as u128 * m as u128).cmp(&(b as u128 * n as u128))
            }
        }
    }
}

impl fmt::Display for RationalDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RationalDistance::Finite { count, length } => write!(f, "{count}/{length}"),
            RationalDistance::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for RationalDistance {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An exact rational threshold `delta = p/q` in lowest terms, `0 <= delta <= 1`.
///
/// Construction procedures additionally require `delta < 1/2`; see
/// [`DistanceThreshold::for_construction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DistanceThreshold {
    p: u64,
    q: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl DistanceThreshold {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidThreshold(format!("{p}/{q}: zero denominator")));
        }
        if p > q {
            return Err(Error::InvalidThreshold(format!("{p}/{q} exceeds 1")));
        }
        let g = gcd(p, q);
        Ok(DistanceThreshold { p: p / g, q: q / g })
    }

    pub const fn zero() -> Self {
        DistanceThreshold { p: 0, q: 1 }
    }

    pub fn numer(&self) -> u64 {
        self.p
    }

    pub fn denom(&self) -> u64 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0
    }

    pub fn is_below_half(&self) -> bool {
        2 * (self.p as u128) < (self.q as u128)
    }

    /// Returns `self` if `delta < 1/2`, the regime of the construction.
    pub fn for_construction(self) -> Result<Self> {
        if self.is_below_half() {
            Ok(self)
        } else {
            Err(Error::InvalidThreshold(format!(
                "{self} is not below 1/2; construction requires delta < 1/2"
            )))
        }
    }

    /// `count / n >= p / q`.
    pub fn is_met_by(&self, count: usize, n: usize) -> bool {
        count as u128 * self.q as u128 >= self.p as u128 * n as u128
    }

    /// Smallest disagreement count meeting the threshold at length `n`:
    /// `ceil(p n / q)`.
    pub fn min_count(&self, n: usize) -> usize {
        let pn = self.p as u128 * n as u128;
        pn.div_ceil(self.q as u128) as usize
    }

    /// Largest count `c` with `c q < p n`, i.e. the Hamming radius of the
    /// open ball `d < delta`. `None` when no count qualifies (`delta = 0`).
    pub fn strict_radius(&self, n: usize) -> Option<usize> {
        self.min_count(n).checked_sub(1)
    }

    /// `floor(delta n)`.
    pub fn floor_radius(&self, n: usize) -> usize {
        (self.p as u128 * n as u128 / self.q as u128) as usize
    }

    /// `delta + k/n`, reduced.
    pub fn plus_fraction(&self, k: u64, n: u64) -> Result<Self> {
        let num = self.p as u128 * n as u128 + k as u128 * self.q as u128;
        let den = self.q as u128 * n as u128;
        let g = {
            let (mut a, mut b) = (num, den);
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        };
        let (num, den) = (num / g, den / g);
        if num > u64::MAX as u128 || den > u64::MAX as u128 {
            return Err(Error::InvalidThreshold("overflow in delta + k/n".into()));
        }
        Self::new(num as u64, den as u64)
    }

    pub fn to_f64(&self) -> f64 {
        self.p as f64 / self.q as f64
    }
}

impl PartialOrd for DistanceThreshold {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DistanceThreshold {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p as u128 * other.q as u128).cmp(&(other.p as u128 * self.q as u128))
    }
}

impl fmt::Display for DistanceThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Accepts `p/q` or a bare integer. Decimal notation is rejected so that
/// thresholds stay exact end to end.
impl FromStr for DistanceThreshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidThreshold(format!("`{s}` is not a rational p/q"));
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
        if !digits(p) || !digits(q) {
            return Err(bad());
        }
        let p = p.parse::<u64>().map_err(|_| bad())?;
        let q = q.parse::<u64>().map_err(|_| bad())?;
        Self::new(p, q)
    }
}

impl Serialize for DistanceThreshold {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DistanceThreshold {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_to_lowest_terms() {
        let d = DistanceThreshold::new(4, 10).unwrap();
        assert_eq!((d.numer(), d.denom()), (2, 5));
        assert_eq!("6/12".parse::<DistanceThreshold>().unwrap().to_string(), "1/2");
        assert_eq!("0".parse::<DistanceThreshold>().unwrap(), DistanceThreshold::zero());
    }

    #[test]
    fn rejects_malformed() {
        for s in ["0.25", "1/0", "3/2", "-1/4", "a/b", "", "1/"] {
            assert!(s.parse::<DistanceThreshold>().is_err(), "{s}");
        }
        assert!("1/2".parse::<DistanceThreshold>().unwrap().for_construction().is_err());
        assert!("3/4".parse::<DistanceThreshold>().unwrap().for_construction().is_err());
    }

    #[test]
    fn boundary_is_exact() {
        // 1/4 at n = 12 sits exactly on count 3
        let d = DistanceThreshold::new(1, 4).unwrap();
        assert!(d.is_met_by(3, 12));
        assert!(!d.is_met_by(2, 12));
        assert_eq!(d.min_count(12), 3);
        assert_eq!(d.strict_radius(12), Some(2));
        assert_eq!(d.min_count(13), 4);
        assert_eq!(d.strict_radius(13), Some(3));
        assert_eq!(DistanceThreshold::zero().strict_radius(13), None);
    }

    #[test]
    fn strict_radius_is_largest_count_below() {
        for q in 1..=12u64 {
            for p in 0..=q {
                let d = DistanceThreshold::new(p, q).unwrap();
                for n in 1..=40usize {
                    let brute = (0..=n).filter(|&c| !d.is_met_by(c, n)).max();
                    assert_eq!(d.strict_radius(n), brute, "{d} n={n}");
                }
            }
        }
    }

    #[test]
    fn infinite_dominates() {
        let inf = RationalDistance::Infinite;
        assert!(inf > RationalDistance::new(5, 5));
        assert!(inf.meets(&DistanceThreshold::new(1, 1).unwrap()));
        assert_eq!(RationalDistance::new(1, 2), RationalDistance::new(2, 4));
        assert!(RationalDistance::new(2, 5) < RationalDistance::new(1, 2));
    }

    #[test]
    fn margin_addition() {
        let d = DistanceThreshold::new(1, 4).unwrap();
        let m = d.plus_fraction(2, 13).unwrap();
        assert_eq!(m.to_string(), "21/52");
    }
}
