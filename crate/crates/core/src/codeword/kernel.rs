//! Single-word kernels for codewords of length `n <= 64`.
//!
//! A word `x_0 x_1 ... x_{n-1}` is stored in the low `n` bits of a `u64` with
//! `x_0` as the most significant of those bits, so the integer value orders
//! words the same way as their textual form. With that layout the left cyclic
//! shift is a rotate-left inside the low `n` bits.

pub const MAX_BITS: usize = 64;

#[inline]
pub fn mask(n: usize) -> u64 {
    debug_assert!((1..=MAX_BITS).contains(&n));
    if n == MAX_BITS {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// `E^i(v)` for an `n`-bit word.
#[inline]
pub fn rotate(v: u64, i: usize, n: usize) -> u64 {
    let i = i % n;
    if i == 0 {
        v
    } else {
        ((v << i) | (v >> (n - i))) & mask(n)
    }
}

#[inline]
pub fn hamming(a: u64, b: u64) -> u32 {
    (a ^ b).count_ones()
}

/// Minimum disagreement count between `y` and any rotation of `x`.
#[inline]
pub fn cyclic_min(x: u64, y: u64, n: usize) -> u32 {
    let mut best = hamming(x, y);
    for i in 1..n {
        if best == 0 {
            break;
        }
        best = best.min(hamming(rotate(x, i, n), y));
    }
    best
}

/// True iff some rotation of `x` is at Hamming count `< bound` from `y`.
#[inline]
pub fn cyclic_below(x: u64, y: u64, n: usize, bound: u32) -> bool {
    (0..n).any(|i| hamming(rotate(x, i, n), y) < bound)
}

/// Minimum nonzero disagreement count between `x` and its rotations, or
/// `None` when every rotation equals `x`.
///
/// `d(E^i x, x) = d(x, E^{n-i} x)`, so only `i <= n/2` is scanned.
#[inline]
pub fn auto_cyclic_min(x: u64, n: usize) -> Option<u32> {
    let mut best: Option<u32> = None;
    for i in 1..=n / 2 {
        let c = hamming(rotate(x, i, n), x);
        if c != 0 {
            best = Some(best.map_or(c, |b| b.min(c)));
        }
    }
    best
}

/// `auto_cyclic_min(x, n) >= need`, with an early exit.
#[inline]
pub fn auto_cyclic_at_least(x: u64, n: usize, need: u32) -> bool {
    if need == 0 {
        return true;
    }
    for i in 1..=n / 2 {
        let c = hamming(rotate(x, i, n), x);
        if c != 0 && c < need {
            return false;
        }
    }
    true
}

/// Every rotation `E^i(x)`, `i != 0`, is at count `>= need`, including
/// rotations equal to `x`.
#[inline]
pub fn all_shifts_at_least(x: u64, n: usize, need: u32) -> bool {
    (1..=n / 2).all(|i| hamming(rotate(x, i, n), x) >= need)
}

#[inline]
pub fn period(x: u64, n: usize) -> usize {
    (1..=n)
        .filter(|p| n.is_multiple_of(*p))
        .find(|&p| rotate(x, p, n) == x)
        .unwrap_or(n)
}

/// Smallest rotation of `x`, used as the orbit representative.
#[inline]
pub fn canonical(x: u64, n: usize) -> u64 {
    (1..n).map(|i| rotate(x, i, n)).fold(x, u64::min)
}

/// Calls `f` on every word within Hamming count `radius` of `center`.
pub fn for_each_in_ball(center: u64, n: usize, radius: usize, mut f: impl FnMut(u64)) {
    fn go(v: u64, start: usize, n: usize, left: usize, f: &mut impl FnMut(u64)) {
        f(v);
        if left == 0 {
            return;
        }
        for pos in start..n {
            go(v ^ (1u64 << pos), pos + 1, n, left - 1, f);
        }
    }
    go(center, 0, n, radius.min(n), &mut f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rotate_matches_index_definition() {
        for n in 1..=12usize {
            for v in 0..(1u64 << n) {
                for i in 0..n {
                    let mut expect = 0u64;
                    for j in 0..n {
                        // bit for index j sits at position n-1-j
                        let src = (v >> (n - 1 - (j + i) % n)) & 1;
                        expect |= src << (n - 1 - j);
                    }
                    assert_eq!(rotate(v, i, n), expect, "n={n} v={v:b} i={i}");
                }
            }
        }
    }

    #[test]
    fn full_width_rotation() {
        let v = 0x8000_0000_0000_0001u64;
        assert_eq!(rotate(v, 1, 64), 0x0000_0000_0000_0003);
        assert_eq!(rotate(v, 63, 64), 0xC000_0000_0000_0000);
    }

    #[test]
    fn ball_enumeration_counts() {
        let mut seen = Vec::new();
        for_each_in_ball(0b10110, 5, 2, |w| seen.push(w));
        assert_eq!(seen.len(), 1 + 5 + 10);
        seen.sort_unstable();
        seen.dedup();
        assert_eq!(seen.len(), 16);
        assert!(seen.iter().all(|&w| hamming(w, 0b10110) <= 2));
    }
}
