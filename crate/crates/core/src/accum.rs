//! Order-independent exact summation of nonnegative `f64` terms with integer
//! multiplicities.
//!
//! The accumulator is a fixed-point integer wide enough to hold any finite
//! `f64` times any `u64` weight, with 64 bits of carry headroom. Every
//! addition is exact, so the final value depends only on the multiset of
//! `(weight, term)` pairs added and never on their order. Preference sums are
//! built on this so that an incrementally maintained sum and one recomputed
//! from scratch round to the same bits.

/// Bit position (relative to 2^-1074) of the least significant bit of a
/// subnormal `f64`.
const MIN_EXP: i32 = -1074;
/// 2^-1074 .. 2^1024 needs 2098 bits, a `u64` weight adds 64 and carries
/// another 64.
const LIMBS: usize = 36;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactSum {
    limbs: [u64; LIMBS],
}

impl Default for ExactSum {
    fn default() -> Self {
        Self::new()
    }
}

impl std::fmt::Debug for ExactSum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_tuple("ExactSum").field(&self.to_f64()).finish()
    }
}

impl ExactSum {
    pub const fn new() -> Self {
        Self { limbs: [0; LIMBS] }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Adds `weight * term`. `term` must be finite and nonnegative.
    pub fn add(&mut self, weight: u64, term: f64) {
        debug_assert!(term.is_finite() && term >= 0.0, "term {term}");
        if weight == 0 || term == 0.0 {
            return;
        }
        let bits = term.to_bits();
        let biased = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, MIN_EXP)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        let product = weight as u128 * mant as u128;
        let pos = (exp - MIN_EXP) as usize;
        let (limb, off) = (pos / 64, (pos % 64) as u32);

        let p0 = product as u64;
        let p1 = (product >> 64) as u64;
        let (w0, w1, w2) = if off == 0 {
            (p0, p1, 0)
        } else {
            (p0 << off, (p0 >> (64 - off)) | (p1 << off), p1 >> (64 - off))
        };
        self.add_at(limb, [w0, w1, w2]);
    }

    /// Adds another accumulator into this one.
    pub fn merge(&mut self, other: &ExactSum) {
        let mut carry = false;
        for (a, &b) in self.limbs.iter_mut().zip(other.limbs.iter()) {
            let (s, c1) = a.overflowing_add(b);
            let (s, c2) = s.overflowing_add(carry as u64);
            *a = s;
            carry = c1 || c2;
        }
        debug_assert!(!carry, "exact accumulator overflow");
    }

    fn add_at(&mut self, limb: usize, words: [u64; 3]) {
        let mut carry = false;
        let mut idx = limb;
        for w in words {
            let (s, c1) = self.limbs[idx].overflowing_add(w);
            let (s, c2) = s.overflowing_add(carry as u64);
            self.limbs[idx] = s;
            carry = c1 || c2;
            idx += 1;
        }
        while carry {
            let (s, c) = self.limbs[idx].overflowing_add(1);
            self.limbs[idx] = s;
            carry = c;
            idx += 1;
        }
    }

    /// 64-bit window of the fixed-point value starting at bit `start`;
    /// bits below zero read as zero.
    fn window(&self, start: i64) -> u64 {
        if start < 0 {
            return self.limbs[0] << (-start) as u32;
        }
        let (limb, off) = ((start / 64) as usize, (start % 64) as u32);
        let lo = self.limbs[limb] >> off;
        if off == 0 || limb + 1 >= LIMBS {
            lo
        } else {
            lo | (self.limbs[limb + 1] << (64 - off))
        }
    }

    fn any_below(&self, bit: i64) -> bool {
        if bit <= 0 {
            return false;
        }
        let full = (bit / 64) as usize;
        if self.limbs[..full].iter().any(|&l| l != 0) {
            return true;
        }
        let rem = (bit % 64) as u32;
        rem > 0 && self.limbs[full] & ((1u64 << rem) - 1) != 0
    }

    /// Rounds the exact sum to the nearest `f64` (ties to even). Values above
    /// `f64::MAX` come back as infinity.
    pub fn to_f64(&self) -> f64 {
        let Some(top_limb) = self.limbs.iter().rposition(|&l| l != 0) else {
            return 0.0;
        };
        let top_bit = top_limb as i64 * 64 + 63 - self.limbs[top_limb].leading_zeros() as i64;
        let start = top_bit - 63;
        let win = self.window(start);
        let sticky = self.any_below(start);

        let mut mant = win >> 11;
        let round = win & 0x7ff;
        let half = 0x400;
        if round > half || (round == half && (sticky || mant & 1 == 1)) {
            mant += 1;
        }
        // mant <= 2^53 is exactly representable; scale by 2^(start + 11 - 1074).
        ldexp(mant as f64, (start + 11) as i32 + MIN_EXP)
    }
}

fn ldexp(mut x: f64, mut e: i32) -> f64 {
    // Scaling by a power of two is exact outside the subnormal/overflow range.
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e)
}
