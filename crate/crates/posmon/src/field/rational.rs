//! Exact rationals, prime generation and p-adic valuations.
//!
//! `Rational` is an arbitrary-precision fraction kept in canonical reduced
//! form (coprime numerator/denominator, denominator >= 1, zero as 0/1).
//! The `num_rational` crate maintains exactly that invariant, so the type
//! is an alias; everything the workbench needs on top of plain field
//! arithmetic lives here as free functions.

use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Shorthand for small integer-valued rationals.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for small fractions; panics when `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Numerator of a positive rational in lowest terms.
///
/// Together with [`denominator`] this is the unique coprime positive pair
/// `(a, b)` with `q = a/b`. Errors when `q <= 0`.
pub fn numerator(q: &Rational) -> Result<BigInt> {
    if q.is_positive() {
        Ok(q.numer().clone())
    } else {
        Err(Error::Domain(format!("numerator/denominator defined for positive rationals, got {q}")))
    }
}

/// Denominator of a positive rational in lowest terms. Errors when `q <= 0`.
pub fn denominator(q: &Rational) -> Result<BigInt> {
    if q.is_positive() {
        Ok(q.denom().clone())
    } else {
        Err(Error::Domain(format!("numerator/denominator defined for positive rationals, got {q}")))
    }
}

/// Greatest integer `<= q`.
pub fn floor(q: &Rational) -> BigInt {
    q.floor().to_integer()
}

/// Renders a rational as `a/b`, omitting the denominator when it is 1.
pub fn render(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Value of a p-adic valuation: an integer or plus infinity (at zero).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Multiplicity of `p` in the nonzero integer `z`.
fn int_valuation(p: &BigInt, z: &BigInt) -> i64 {
    debug_assert!(!z.is_zero());
    let mut v = 0;
    let mut z = z.abs();
    loop {
        let (q, r) = num_integer::Integer::div_rem(&z, p);
        if !r.is_zero() {
            return v;
        }
        v += 1;
        z = q;
    }
}

/// The p-adic valuation of a rational: `v_p(0)` is infinite and
/// `v_p(a/b) = v_p(a) - v_p(b)`. Errors when `p` is not prime.
pub fn padic_valuation(p: &BigInt, q: &Rational) -> Result<Valuation> {
    if !is_prime(p) {
        return Err(Error::InvalidPrime(p.to_string()));
    }
    if q.is_zero() {
        return Ok(Valuation::Infinite);
    }
    Ok(Valuation::Finite(int_valuation(p, q.numer()) - int_valuation(p, q.denom())))
}

/// Deterministic primality by trial division. Intended for the small
/// moduli that appear in denominators, not for cryptographic sizes.
pub fn is_prime(p: &BigInt) -> bool {
    if p <= &BigInt::one() {
        return false;
    }
    if let Some(n) = p.to_u64() {
        return is_prime_u64(n);
    }
    // Arbitrary-precision fallback; slow but exact.
    let two = BigInt::from(2);
    if (p % &two).is_zero() {
        return false;
    }
    let mut d = BigInt::from(3);
    while &d * &d <= *p {
        if (p % &d).is_zero() {
            return false;
        }
        d += 2;
    }
    true
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// Process-wide cache of primes in increasing order. Guarded by a mutex so
// truncations evaluated from different threads see one consistent sequence.
static PRIMES: Mutex<Vec<u64>> = Mutex::new(Vec::new());

/// The n-th prime with `nth_prime(1) = 2`. Errors when `n = 0`.
pub fn nth_prime(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("nth_prime is indexed from 1".into()));
    }
    let mut cache = PRIMES.lock().expect("prime cache poisoned");
    if cache.is_empty() {
        cache.extend([2, 3, 5, 7, 11, 13]);
    }
    while (cache.len() as u64) < n {
        let mut candidate = cache.last().copied().unwrap() + 2;
        loop {
            let mut composite = false;
            for p in cache.iter() {
                if p * p > candidate {
                    break;
                }
                if candidate % p == 0 {
                    composite = true;
                    break;
                }
            }
            if !composite {
                break;
            }
            candidate += 2;
        }
        cache.push(candidate);
    }
    Ok(cache[(n - 1) as usize])
}
