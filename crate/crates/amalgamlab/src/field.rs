//! Small finite fields GF(p^e) with log tables.
//!
//! Elements are integers `0..q` read as base-`p` digit vectors, least significant
//! coefficient first; `0` is zero and `1` is one. The defining polynomial is the
//! lexicographically least primitive one, so the encoding is reproducible.

use crate::arith::{is_prime, prime_power};
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    e: u32,
    q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl Field {
    pub fn new(q: u32) -> Result<Field> {
        let (p, e) = prime_power(q as u64).ok_or_else(|| Error::Input(format!("{q} is not a prime power")))?;
        if q > 1 << 16 {
            return Err(Error::Scope(format!("field order {q} too large")));
        }
        debug_assert!(is_prime(p));
        let (p, e) = (p as u32, e);
        // Try monic polynomials x^e + c, c encoded as an element, until x generates the unit group.
        for tail in 0..q {
            if let Some((exp, log)) = Self::tables(p, e, q, tail) {
                return Ok(Field { p, e, q, exp, log });
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    /// Builds exp/log tables for `x` modulo `x^e + tail`, or `None` if `x` is not primitive.
    fn tables(p: u32, e: u32, q: u32, tail: u32) -> Option<(Vec<u32>, Vec<u32>)> {
        let tail_digits = digits(tail, p, e);
        let x = if e == 1 { (p - tail % p) % p } else { p };
        if x == 0 || (e == 1 && x == 1 && q > 2) {
            return None;
        }
        let mut exp = vec![0u32; q as usize - 1];
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = 1u32;
        for i in 0..q - 1 {
            if log[cur as usize] != u32::MAX {
                return None;
            }
            exp[i as usize] = cur;
            log[cur as usize] = i;
            cur = if e == 1 { (cur * x) % p } else { times_x(cur, p, e, &tail_digits) };
        }
        (cur == 1).then_some((exp, log))
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> u32 {
        self.exp[1 % self.exp.len()]
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[s as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let l = self.log[a as usize];
        self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
    }

    pub fn pow(&self, a: u32, n: u64) -> u32 {
        if a == 0 {
            return if n == 0 { 1 } else { 0 };
        }
        let l = self.log[a as usize] as u64 * (n % (self.q as u64 - 1));
        self.exp[(l % (self.q as u64 - 1)) as usize]
    }

    /// `a^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn exp(&self, n: u64) -> u32 {
        self.exp[(n % (self.q as u64 - 1)) as usize]
    }
}

fn digits(mut a: u32, p: u32, e: u32) -> Vec<u32> {
    (0..e)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

/// Multiplies by `x` modulo `x^e + tail`.
fn times_x(a: u32, p: u32, e: u32, tail: &[u32]) -> u32 {
    let d = digits(a, p, e);
    let top = d[e as usize - 1];
    let mut shifted = vec![0u32; e as usize];
    shifted[1..].copy_from_slice(&d[..e as usize - 1]);
    // x^e = -tail
    for i in 0..e as usize {
        shifted[i] = (shifted[i] + (p - tail[i]) % p * top) % p;
    }
    shifted.iter().rev().fold(0, |acc, &c| acc * p + c)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &Field) {
        let q = f.order();
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in [0, 1, q - 1, q / 2] {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            check_axioms(&Field::new(q).unwrap());
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = Field::new(27).unwrap();
        for a in 0..27 {
            for b in 0..27 {
                assert_eq!(f.frobenius(f.add(a, b)), f.add(f.frobenius(a), f.frobenius(b)));
            }
        }
        assert_eq!(f.pow(f.primitive(), 26), 1);
        assert_ne!(f.pow(f.primitive(), 13), 1);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Field::new(6).is_err());
    }
}
