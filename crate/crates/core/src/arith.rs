//! Small-integer number theory: primality, sieves, factoring, modular powers.

use num_integer::Integer as _;

use crate::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn require_odd_prime(p: u64) -> Result<()> {
    if p > 2 && is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

/// Primes `q <= bound` by the sieve of Eratosthenes.
pub fn primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 2 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// `table[k]` is true iff `k` is squarefree, for `0 <= k <= bound`.
/// Index 0 is marked false.
pub fn squarefree_table(bound: u64) -> Vec<bool> {
    let n = bound as usize;
    let mut table = vec![true; n + 1];
    table[0] = false;
    let mut d = 2usize;
    while d * d <= n {
        let sq = d * d;
        let mut j = sq;
        while j <= n {
            table[j] = false;
            j += sq;
        }
        d += 1;
    }
    table
}

pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return false;
            }
        }
        d += 1;
    }
    true
}

pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut acc = 1u128;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Least primitive root modulo the prime `p`.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let order = p - 1;
    let factors: Vec<u64> = factor_u128(order as u128, u64::MAX)
        .expect("small order factors")
        .into_iter()
        .map(|(q, _)| q as u64)
        .collect();
    (2..p)
        .find(|&g| factors.iter().all(|&q| mod_pow(g, order / q, p) != 1))
        .expect("primes have primitive roots")
}

/// Prime factorization by trial division with divisors up to `bound`.
///
/// A cofactor left over after trial division is accepted as prime only when
/// it is below `bound^2`; otherwise the factorization is reported as too large.
pub fn factor_u128(mut n: u128, bound: u64) -> Result<Vec<(u128, u32)>> {
    let mut out = Vec::new();
    if n <= 1 {
        return Ok(out);
    }
    let mut d: u128 = 2;
    while d * d <= n {
        if d > bound as u128 {
            return Err(Error::FactorizationTooLarge(bound));
        }
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    Ok(out)
}

/// Exact `base^exp` in `u128`, or `None` on overflow.
pub fn checked_pow_u128(base: u128, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
