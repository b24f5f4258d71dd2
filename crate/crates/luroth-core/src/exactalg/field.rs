//! Exact field scalars: arbitrary-precision rationals and prime fields F_p.
//!
//! Every algorithm in the crate is generic over [`Field`].  A field value is
//! a lightweight context object (zero-sized for Q, one word for F_p) that
//! constructs and combines elements; elements themselves carry no context.
//! Mixing elements of different moduli is a caller bug and is caught by the
//! matrix layer's field-equality assertions.

use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_core::RngCore;

/// An exact field: rationals or F_p.  All operations are total except
/// inversion/division, which report `None` on zero divisors.
pub trait Field: Clone + PartialEq + fmt::Debug {
    /// Element representation (exact, comparable, hashable-by-value).
    type Elem: Clone + PartialEq + Eq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    /// Embed a machine integer (reduced mod p for prime fields).
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `a^exp` by repeated squaring (`a^0 = 1`, including `0^0`).
    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Draw one element.  Uniform over F_p; for Q a uniform integer in a
    /// small symmetric range (a stand-in for "generic" rational data that
    /// keeps fraction growth manageable).
    fn sample<R: RngCore>(&self, rng: &mut R) -> Self::Elem;

    /// Draw until nonzero.
    fn sample_nonzero<R: RngCore>(&self, rng: &mut R) -> Self::Elem {
        loop {
            let x = self.sample(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }
}

/// The rational numbers with arbitrary-precision integer parts.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub struct Rationals;

/// Range for sampled rational "generic" constants: integers in
/// [-RAT_SAMPLE_BOUND, RAT_SAMPLE_BOUND].
const RAT_SAMPLE_BOUND: i64 = 9999;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a.clone()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }

    fn sample<R: RngCore>(&self, rng: &mut R) -> BigRational {
        let span = (2 * RAT_SAMPLE_BOUND + 1) as u64;
        let x = uniform_below(rng, span) as i64 - RAT_SAMPLE_BOUND;
        self.from_i64(x)
    }
}

/// A prime field F_p for an odd prime 10^6 < p < 2^62, elements stored as
/// canonical residues in 0..p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u64,
}

/// Largest allowed modulus (keeps a + b and the u128 products in range).
pub const MAX_MODULUS: u64 = 1 << 62;

/// Smallest allowed modulus; large enough that random genericity checks
/// have negligible collision probability.
pub const MIN_MODULUS: u64 = 1_000_000;

impl PrimeField {
    /// Build F_p, validating that `p` is an odd prime with
    /// 10^6 < p < 2^62.
    pub fn new(p: u64) -> crate::error::Result<Self> {
        if p <= MIN_MODULUS || p >= MAX_MODULUS || !is_prime_u64(p) {
            return Err(crate::error::Error::BadModulus(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        let r = n.rem_euclid(self.p as i64);
        r as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn neg(&self, a: &u64) -> u64 {
        debug_assert!(*a < self.p);
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            // Fermat: a^(p-2) mod p.
            Some(self.pow(a, self.p - 2))
        }
    }

    fn sample<R: RngCore>(&self, rng: &mut R) -> u64 {
        uniform_below(rng, self.p)
    }
}

/// Unbiased uniform draw from [0, n) by rejection sampling.
pub fn uniform_below<R: RngCore>(rng: &mut R, n: u64) -> u64 {
    debug_assert!(n > 0);
    // Accept x only below the largest multiple of n representable in u64.
    let limit = u64::MAX - u64::MAX % n;
    loop {
        let x = rng.next_u64();
        if x < limit {
            return x % n;
        }
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin primality test, exact for all u64 inputs
/// (the twelve-base certificate {2, 3, 5, ..., 37}).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The default modulus list: the three largest primes below 2^31.
/// Genericity checks re-run under one seed per prime, giving three
/// independent (prime, seed) pairs out of the box.
pub const DEFAULT_PRIMES: [u64; 3] = [2_147_483_647, 2_147_483_629, 2_147_483_587];
