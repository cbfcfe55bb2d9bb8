//! Exact rational scalars, fixed fast-path primes and the seeded PRNG.
//!
//! Every random draw in the crate flows through [`Rng`], a splitmix64
//! generator, so that any computation is reproducible from a single 64-bit
//! seed. Derived streams (per variety, per row) are obtained by hashing a
//! label into the seed.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The two fixed 30-bit primes used by the prime-field fast path.
pub const FAST_PRIMES: [u64; 2] = [1_073_741_789, 1_073_741_783];

/// Deterministic Miller–Rabin, exact for all `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse for prime modulus.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Splitmix64 stream.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    /// Independent stream obtained by folding a label into the seed.
    /// Used to give every report row and every variety its own stream.
    pub fn derive(&self, label: &str) -> Rng {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in label.bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
        Rng::new(self.state ^ h)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..n`.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    /// Integer in `[lo, hi]` inclusive.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Rational of height at most `h`: an integer in `[-h, h]`.
    pub fn small_rat(&mut self, h: i64) -> Rat {
        rat(self.int_in(-h, h))
    }

    /// Nonzero integer in `[-h, h]`.
    pub fn small_nonzero(&mut self, h: i64) -> Rat {
        loop {
            let v = self.int_in(-h, h);
            if v != 0 {
                return rat(v);
            }
        }
    }

    /// Vector of height-bounded rationals, not identically zero.
    pub fn small_vec(&mut self, len: usize, h: i64) -> Vec<Rat> {
        loop {
            let v: Vec<Rat> = (0..len).map(|_| self.small_rat(h)).collect();
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
    }
}

/// Strip common denominators and content, returning an integer-primitive
/// rescaling of the vector. Keeps exact eliminations from blowing up.
pub fn primitive_scale(v: &mut [Rat]) {
    if v.iter().all(|x| x.is_zero()) {
        return;
    }
    let mut lcm = BigInt::one();
    for x in v.iter() {
        lcm = num_integer::lcm(lcm, x.denom().clone());
    }
    let mut gcd = BigInt::zero();
    for x in v.iter() {
        let n = (x.numer() * &lcm) / x.denom();
        gcd = num_integer::gcd(gcd, n);
    }
    if gcd.is_zero() {
        return;
    }
    let scale = Rat::new(lcm, gcd);
    for x in v.iter_mut() {
        *x *= &scale;
    }
}
