//! k-subsets of a vertex mask and binomial coefficients.

use num_bigint::BigUint;

/// `C(n, k)`; zero when `k > n`. Exact for every `n <= 64`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 after the multiplication
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u8);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u8);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// All `k`-subsets of the set bits of `universe`, as masks, in increasing
/// order of their rank within the universe.
pub struct Subsets {
    universe: u64,
    size: u32,
    // subset of 0..size bits, Gosper order
    current: Option<u64>,
    width: u32,
}

impl Subsets {
    pub fn new(universe: u64, k: usize) -> Self {
        let width = universe.count_ones();
        let current = if k as u32 > width {
            None
        } else if k == 0 {
            Some(0)
        } else {
            Some(if k == 64 { u64::MAX } else { (1u64 << k) - 1 })
        };
        Subsets {
            universe,
            size: k as u32,
            current,
            width,
        }
    }
}

impl Iterator for Subsets {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let cur = self.current?;
        self.current = if cur == 0 || self.size == self.width {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let next = (((r ^ cur) >> 2) / c) | r;
                if self.width < 64 && next >> self.width != 0 {
                    None
                } else {
                    Some(next)
                }
            }
        };
        Some(deposit(cur, self.universe))
    }
}

/// Scatters the low bits of `bits` onto the set bits of `mask`.
#[inline]
pub(crate) fn deposit(mut bits: u64, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while bits != 0 && m != 0 {
        let low = m & m.wrapping_neg();
        if bits & 1 != 0 {
            out |= low;
        }
        bits >>= 1;
        m ^= low;
    }
    out
}
