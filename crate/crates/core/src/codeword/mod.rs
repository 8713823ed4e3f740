//! Binary words, cyclic shifts and the three distances built on them:
//! Hamming, cyclic, and auto-cyclic.

mod distance;
pub mod kernel;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::codeset::CodeSet;
use crate::error::{Error, Result};

pub use distance::{DistanceThreshold, RationalDistance};

/// A word `x_0 x_1 ... x_{n-1}` over `{0,1}`.
///
/// Lengths up to 64 are held in one machine word; longer words are packed
/// most-significant-bit first into `u64` limbs so that the derived ordering
/// agrees with the ordering of the words as binary integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    len: usize,
    repr: Repr,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Repr {
    Word(u64),
    Limbs(Box<[u64]>),
}

const LIMB: usize = 64;

fn limbs_for(n: usize) -> usize {
    n.div_ceil(LIMB)
}

impl Codeword {
    pub fn zeros(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCodeword("length must be at least 1".into()));
        }
        Ok(if n <= kernel::MAX_BITS {
            Codeword { len: n, repr: Repr::Word(0) }
        } else {
            Codeword { len: n, repr: Repr::Limbs(vec![0; limbs_for(n)].into()) }
        })
    }

    pub fn ones(n: usize) -> Result<Self> {
        let mut w = Self::zeros(n)?;
        for i in 0..n {
            w.set(i, true);
        }
        Ok(w)
    }

    /// The `n`-bit word whose binary value is `value` (`x_0` is the top bit).
    pub fn from_value(value: u64, n: usize) -> Result<Self> {
        if n == 0 || n > kernel::MAX_BITS {
            return Err(Error::InvalidCodeword(format!(
                "from_value needs 1 <= n <= 64, got {n}"
            )));
        }
        if value & !kernel::mask(n) != 0 {
            return Err(Error::InvalidCodeword(format!("{value} does not fit in {n} bits")));
        }
        Ok(Codeword { len: n, repr: Repr::Word(value) })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        let mut w = Self::zeros(bits.len())?;
        for (i, &b) in bits.iter().enumerate() {
            w.set(i, b);
        }
        Ok(w)
    }

    /// Builds an `n`-bit word from limbs laid out most-significant-bit first.
    /// Padding bits past `n` are cleared.
    pub fn from_limbs(limbs: &[u64], n: usize) -> Result<Self> {
        if limbs.len() != limbs_for(n) {
            return Err(Error::InvalidCodeword(format!(
                "{} limbs cannot hold exactly {n} bits",
                limbs.len()
            )));
        }
        if n <= kernel::MAX_BITS {
            return Self::from_value(limbs[0] >> (LIMB - n), n);
        }
        let mut limbs: Box<[u64]> = limbs.into();
        let tail = n % LIMB;
        if tail != 0 {
            let last = limbs.len() - 1;
            limbs[last] &= !0u64 << (LIMB - tail);
        }
        Ok(Codeword { len: n, repr: Repr::Limbs(limbs) })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The binary value for words of length at most 64.
    pub fn value(&self) -> Option<u64> {
        match self.repr {
            Repr::Word(v) => Some(v),
            Repr::Limbs(_) => None,
        }
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        match &self.repr {
            Repr::Word(v) => (v >> (self.len - 1 - i)) & 1 == 1,
            Repr::Limbs(l) => (l[i / LIMB] >> (LIMB - 1 - i % LIMB)) & 1 == 1,
        }
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "index {i} out of range for length {}", self.len);
        let n = self.len;
        match &mut self.repr {
            Repr::Word(v) => {
                let m = 1u64 << (n - 1 - i);
                if bit {
                    *v |= m
                } else {
                    *v &= !m
                }
            }
            Repr::Limbs(l) => {
                let m = 1u64 << (LIMB - 1 - i % LIMB);
                if bit {
                    l[i / LIMB] |= m
                } else {
                    l[i / LIMB] &= !m
                }
            }
        }
    }

    pub fn flip(&mut self, i: usize) {
        let b = self.get(i);
        self.set(i, !b);
    }

    pub fn weight(&self) -> usize {
        match &self.repr {
            Repr::Word(v) => v.count_ones() as usize,
            Repr::Limbs(l) => l.iter().map(|w| w.count_ones() as usize).sum(),
        }
    }

    pub fn is_constant(&self) -> bool {
        let w = self.weight();
        w == 0 || w == self.len
    }

    pub fn xor(&self, other: &Codeword) -> Result<Codeword> {
        check_len(self, other)?;
        let repr = match (&self.repr, &other.repr) {
            (Repr::Word(a), Repr::Word(b)) => Repr::Word(a ^ b),
            (Repr::Limbs(a), Repr::Limbs(b)) => {
                Repr::Limbs(a.iter().zip(b.iter()).map(|(x, y)| x ^ y).collect())
            }
            _ => unreachable!("equal lengths share a representation"),
        };
        Ok(Codeword { len: self.len, repr })
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// `E^i(x) = x_i, ..., x_{n-1}, x_0, ..., x_{i-1}`; `i` is reduced mod `n`.
    pub fn shift(&self, i: usize) -> Codeword {
        let n = self.len;
        let i = i % n;
        match &self.repr {
            Repr::Word(v) => Codeword { len: n, repr: Repr::Word(kernel::rotate(*v, i, n)) },
            Repr::Limbs(_) => {
                let mut out = self.clone();
                if i != 0 {
                    for j in 0..n {
                        out.set(j, self.get((j + i) % n));
                    }
                }
                out
            }
        }
    }

    fn hamming_count(&self, other: &Codeword) -> usize {
        match (&self.repr, &other.repr) {
            (Repr::Word(a), Repr::Word(b)) => kernel::hamming(*a, *b) as usize,
            (Repr::Limbs(a), Repr::Limbs(b)) => {
                a.iter().zip(b.iter()).map(|(x, y)| (x ^ y).count_ones() as usize).sum()
            }
            _ => unreachable!("equal lengths share a representation"),
        }
    }

    /// Smallest `p >= 1` with `E^p(x) = x`; always divides `n`.
    pub fn period(&self) -> usize {
        let n = self.len;
        match self.repr {
            Repr::Word(v) => kernel::period(v, n),
            Repr::Limbs(_) => (1..=n)
                .filter(|p| n.is_multiple_of(*p))
                .find(|&p| self.shift(p) == *self)
                .unwrap_or(n),
        }
    }

    /// The smallest word in the orbit of `self`.
    pub fn canonical(&self) -> Codeword {
        match self.repr {
            Repr::Word(v) => Codeword { len: self.len, repr: Repr::Word(kernel::canonical(v, self.len)) },
            Repr::Limbs(_) => (1..self.period()).map(|i| self.shift(i)).fold(self.clone(), Ord::min),
        }
    }

    /// All distinct shifts of `self`, in ascending order.
    pub fn orbit_words(&self) -> Vec<Codeword> {
        let mut out: Vec<Codeword> = (0..self.period()).map(|i| self.shift(i)).collect();
        out.sort();
        out
    }

    /// The orbit as a (cyclic-closed) code set.
    pub fn orbit(&self) -> CodeSet {
        CodeSet::from_words(self.len, self.orbit_words())
            .expect("orbit words share a length")
            .with_cyclic_closed(true)
    }
}

fn check_len(x: &Codeword, y: &Codeword) -> Result<()> {
    if x.len != y.len {
        Err(Error::LengthMismatch { left: x.len, right: y.len })
    } else {
        Ok(())
    }
}

/// `E^i(x)`.
pub fn shift(x: &Codeword, i: usize) -> Codeword {
    x.shift(i)
}

/// Normalized Hamming distance `d(x, y)`.
pub fn hamming(x: &Codeword, y: &Codeword) -> Result<RationalDistance> {
    check_len(x, y)?;
    Ok(RationalDistance::new(x.hamming_count(y), x.len))
}

/// `d_cyc(x, y) = min_i d(E^i(x), y)`.
pub fn cyclic_distance(x: &Codeword, y: &Codeword) -> Result<RationalDistance> {
    check_len(x, y)?;
    let n = x.len;
    let count = match (&x.repr, &y.repr) {
        (Repr::Word(a), Repr::Word(b)) => kernel::cyclic_min(*a, *b, n) as usize,
        _ => (0..n).map(|i| x.shift(i).hamming_count(y)).min().unwrap_or(0),
    };
    Ok(RationalDistance::new(count, n))
}

/// `d*_cyc(x, x)`: the minimum distance from `x` to the shifts of `x` that
/// differ from it, or `Infinite` when no shift differs.
pub fn auto_cyclic_distance(x: &Codeword) -> RationalDistance {
    let n = x.len;
    let min = match x.repr {
        Repr::Word(v) => kernel::auto_cyclic_min(v, n).map(|c| c as usize),
        Repr::Limbs(_) => (1..=n / 2)
            .map(|i| x.shift(i).hamming_count(x))
            .filter(|&c| c != 0)
            .min(),
    };
    match min {
        Some(c) => RationalDistance::new(c, n),
        None => RationalDistance::Infinite,
    }
}

pub fn period(x: &Codeword) -> usize {
    x.period()
}

pub fn orbit(x: &Codeword) -> CodeSet {
    x.orbit()
}

impl FromStr for Codeword {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut w = Codeword::zeros(s.len())?;
        for (i, b) in s.bytes().enumerate() {
            match b {
                b'0' => {}
                b'1' => w.set(i, true),
                _ => {
                    return Err(Error::InvalidCodeword(format!(
                        "`{s}` contains a character other than 0 or 1"
                    )))
                }
            }
        }
        Ok(w)
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.bits().map(|b| if b { '1' } else { '0' }).collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

impl Serialize for Codeword {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Codeword {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
