//! Factorisation, primitive prime divisors and the divisibility screen.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};

/// Exclusive bound for 128-bit factorisation: Miller–Rabin with the first twelve
/// prime bases is deterministic below it, and it keeps products in range.
pub const FACTOR_LIMIT: u128 = 3_317_044_064_679_887_385_961_981;

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        return (a % m) * (b % m) % m;
    }
    // m < 2^82: shift in b 32 bits at a time so nothing exceeds 2^115.
    let (a, b) = (a % m, b % m);
    let mut r = 0u128;
    for shift in [64u32, 32, 0] {
        r = ((r << 32) + a * ((b >> shift) & 0xffff_ffff)) % m;
    }
    r
}

fn pow_mod128(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

pub fn pow_mod(b: u64, e: u64, m: u64) -> u64 {
    pow_mod128(b.into(), e.into(), m.into()) as u64
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    is_prime128(n.into())
}

/// Miller–Rabin, deterministic below [`FACTOR_LIMIT`].
pub fn is_prime128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u128; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for a in WITNESSES {
        let mut x = pow_mod128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho, with batched gcds.
fn pollard_rho(n: u128) -> u128 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u128.. {
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q, mut g) = (2u128, 1usize, 1u128, 1u128);
        let (mut x, mut ys) = (y, y);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..128.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += 128;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

/// Prime factors of `n < FACTOR_LIMIT` with multiplicity, ascending.
pub fn factorize128(n: u128) -> Result<Vec<u128>> {
    if n == 0 {
        return Err(Error::Input("cannot factorise 0".into()));
    }
    if n >= FACTOR_LIMIT {
        return Err(Error::Scope(format!("{n} exceeds the factorisation limit")));
    }
    let mut out = Vec::new();
    let mut n = n;
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime128(m) {
            out.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort_unstable();
    Ok(out)
}

/// Prime factors of `n` with multiplicity, ascending.
pub fn factorize(n: u64) -> Result<Vec<u64>> {
    Ok(factorize128(n.into())?.into_iter().map(|p| p as u64).collect())
}

/// `(prime, exponent)` pairs, ascending.
pub fn factor_counts(n: u64) -> Result<Vec<(u64, u32)>> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in factorize(n)? {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

pub fn prime_divisors(n: u64) -> Result<Vec<u64>> {
    Ok(factor_counts(n)?.into_iter().map(|(p, _)| p).collect())
}

/// `Some((p, e))` when `n = p^e` with `e >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factor_counts(n).ok()?.as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// Multiplicative order of `a` modulo the prime `p` (which must not divide `a`).
pub fn multiplicative_order(a: u64, p: u64) -> u64 {
    let mut ord = p - 1;
    for (r, _) in factor_counts(p - 1).expect("p >= 2") {
        while ord.is_multiple_of(r) && pow_mod(a, ord / r, p) == 1 {
            ord /= r;
        }
    }
    ord
}

fn moebius(n: u64) -> i32 {
    let counts = factor_counts(n).expect("n >= 1");
    if counts.iter().any(|&(_, e)| e > 1) {
        0
    } else if counts.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Value of the `n`th cyclotomic polynomial at `q`.
pub fn cyclotomic_value(q: u64, n: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        let term = BigUint::from(q).pow(d as u32) - 1u32;
        match moebius(n / d) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    num / den
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PpdResult {
    pub q: u64,
    pub n: u64,
    pub primes: Vec<u128>,
    pub is_zsigmondy_exception: bool,
}

/// Primes dividing `q^n - 1` but no `q^i - 1` with `i < n`.
///
/// A prime dividing the cyclotomic value `Φ_n(q)` has order `n` modulo itself
/// unless it divides `n`, so the primitive prime divisors are the prime factors
/// of `Φ_n(q)` that do not divide `n`. Fails when `Φ_n(q)` reaches [`FACTOR_LIMIT`].
pub fn primitive_prime_divisors(q: u64, n: u64) -> Result<PpdResult> {
    if q < 2 || n < 1 {
        return Err(Error::Input(format!("need q >= 2 and n >= 1, got ({q}, {n})")));
    }
    if n > 64 * 64 {
        return Err(Error::Scope(format!("exponent {n} too large")));
    }
    let phi = cyclotomic_value(q, n)
        .to_u128()
        .filter(|&v| v < FACTOR_LIMIT)
        .ok_or_else(|| Error::Scope(format!("cyclotomic value at ({q}, {n}) exceeds the factorisation limit")))?;
    let mut primes = factorize128(phi)?;
    primes.dedup();
    primes.retain(|&p| !(n as u128).is_multiple_of(p));
    let exceptional_shape = (q, n) == (2, 6) || (n == 2 && (q + 1).is_power_of_two()) || (n == 1 && q == 2);
    Ok(PpdResult { q, n, is_zsigmondy_exception: primes.is_empty() && exceptional_shape, primes })
}

/// Necessary condition for a transitive action of degree `m`: `m` divides the order.
pub fn degree_divisibility_screen(group_order: u64, m: u64) -> bool {
    m != 0 && group_order.is_multiple_of(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorisations() {
        assert_eq!(factorize(1).unwrap(), Vec::<u64>::new());
        assert_eq!(factorize(63).unwrap(), vec![3, 3, 7]);
        assert!(factorize(0).is_err());
    }

    #[test]
    fn symplectic_order_factorises() {
        let f = factorize(1451520).unwrap();
        assert_eq!(f.iter().product::<u64>(), 1451520);
        assert_eq!(factor_counts(1451520).unwrap(), vec![(2, 9), (3, 4), (5, 1), (7, 1)]);
    }

    #[test]
    fn large_semiprime() {
        let p = 4_294_967_291u64;
        let q = 2_147_483_647u64;
        assert_eq!(factorize(p * q).unwrap(), vec![q, p]);
    }

    #[test]
    fn ppd_examples() {
        let r = primitive_prime_divisors(2, 6).unwrap();
        assert!(r.primes.is_empty() && r.is_zsigmondy_exception);
        assert_eq!(primitive_prime_divisors(2, 4).unwrap().primes, vec![5]);
        let r = primitive_prime_divisors(3, 2).unwrap();
        assert!(r.primes.is_empty() && r.is_zsigmondy_exception);
        assert_eq!(primitive_prime_divisors(5, 1).unwrap().primes, vec![2]);
    }

    #[test]
    fn screen() {
        assert!(degree_divisibility_screen(60, 6));
        assert!(!degree_divisibility_screen(6, 4));
        assert!(degree_divisibility_screen(36, 12));
        assert!(!degree_divisibility_screen(36, 0));
    }
}
