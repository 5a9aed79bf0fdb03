use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::arith::RatVal;
use crate::error::{Error, Result};

/// The base p-adic data: the prime `p` (which is also the uniformizer) and a
/// working precision used when output polynomials are truncated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuedContext {
    p: BigInt,
    p_small: u64,
    cap: u32,
}

impl ValuedContext {
    pub fn new(p: impl Into<BigInt>, cap: u32) -> Result<Self> {
        let p = p.into();
        if cap == 0 {
            return Err(Error::BadPrecision);
        }
        let small = match p.to_u64() {
            Some(v) if v < (1 << 63) => v,
            Some(_) => return Err(Error::PrimeTooLarge(p.to_string())),
            None if p > BigInt::zero() => return Err(Error::PrimeTooLarge(p.to_string())),
            None => return Err(Error::NotPrime(p.to_string())),
        };
        if !is_prime_u64(small) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(ValuedContext { p, p_small: small, cap })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn p_u64(&self) -> u64 {
        self.p_small
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn with_cap(&self, cap: u32) -> Result<Self> {
        if cap == 0 {
            return Err(Error::BadPrecision);
        }
        Ok(ValuedContext { cap, ..self.clone() })
    }

    /// `p^k` as an integer.
    pub fn p_pow(&self, k: u64) -> BigInt {
        num_traits::pow(self.p.clone(), k as usize)
    }

    /// p-adic valuation of an integer, `None` standing for infinity.
    pub fn val(&self, n: &BigInt) -> Option<u64> {
        val_int(n, &self.p)
    }
}

/// `val_p(n)` as an exact value with `∞` for zero.
pub fn val_p(n: &BigInt, ctx: &ValuedContext) -> RatVal {
    match ctx.val(n) {
        Some(k) => RatVal::from_int(k as i64),
        None => RatVal::Infinity,
    }
}

pub(crate) fn val_int(n: &BigInt, p: &BigInt) -> Option<u64> {
    if n.is_zero() {
        return None;
    }
    let mut k = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&m, p);
        if !r.is_zero() {
            return Some(k);
        }
        m = q;
        k += 1;
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
