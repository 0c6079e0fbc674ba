//! Finite fields `GF(p^k)` with exp/log tables.

use crate::error::{Error, Result};

/// `GF(q)` with elements encoded as base-`p` digit strings `0..q`.
///
/// `0` is zero, `1` is one, and `exp[i]` is `w^i` for a fixed primitive element `w`.
#[derive(Clone, Debug)]
pub struct Field {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Splits `q` as `p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut m = q;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

impl Field {
    pub const MAX_ORDER: u64 = 1 << 16;

    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidSpec(format!("{q} is not a prime power")))?;
        if q > Self::MAX_ORDER {
            return Err(Error::InvalidSpec(format!(
                "field order {q} exceeds {}",
                Self::MAX_ORDER
            )));
        }
        let (p, q) = (p as u32, q as u32);
        // search monic degree-k polynomials for one with x primitive
        for tail in 0..q {
            let poly = digits(tail, p, k);
            if let Some(exp) = powers_of_x(&poly, p, k, q) {
                let mut log = vec![0u32; q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                return Ok(Field { p, k, q, exp, log });
            }
        }
        unreachable!("every finite field has a primitive polynomial")
    }

    pub fn primitive(&self) -> u32 {
        self.exp[1 % (self.q as usize - 1)]
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            return (self.p - a) % self.p;
        }
        let (mut a, mut out, mut place) = (a, 0, 1);
        for _ in 0..self.k {
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
        let n = self.q - 1;
        self.exp[((self.log[a as usize] + self.log[b as usize]) % n) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let n = self.q - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// `w^i` for the primitive element `w`.
    pub fn power_of_primitive(&self, i: u64) -> u32 {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    /// `a -> a^p`.
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.p as u64)
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.q
    }
}

fn digits(mut x: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

fn encode(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Successive powers of `x` modulo `x^k + tail`, if `x` has order `q - 1`.
fn powers_of_x(tail: &[u32], p: u32, k: u32, q: u32) -> Option<Vec<u32>> {
    if tail[0] == 0 && q > 2 {
        return None;
    }
    let k = k as usize;
    let mut cur = vec![0u32; k];
    cur[0] = 1;
    let mut exp = Vec::with_capacity(q as usize - 1);
    let mut seen = vec![false; q as usize];
    for _ in 0..q - 1 {
        let code = encode(&cur, p);
        if seen[code as usize] || code == 0 {
            return None;
        }
        seen[code as usize] = true;
        exp.push(code);
        // multiply by x, reducing x^k = -tail
        let top = cur[k - 1];
        for j in (1..k).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for j in 0..k {
            cur[j] = ((cur[j] as u64 + (p - tail[j]) as u64 * top as u64) % p as u64) as u32;
        }
    }
    (encode(&cur, p) == 1).then_some(exp)
}
