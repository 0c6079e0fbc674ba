use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::Zero;

/// The `n`-th cyclotomic polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloPoly {
    pub n: u32,
    pub coeffs: Vec<i64>,
}

impl CycloPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation at an integer.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

pub(crate) fn phi_coeffs(n: u32) -> Arc<Vec<i64>> {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(c) = cache().lock().unwrap().get(&n) {
        return c.clone();
    }
    // x^n - 1 divided by every Phi_d with d a proper divisor of n
    let mut rem = vec![0i64; n as usize + 1];
    rem[0] = -1;
    rem[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            rem = divide_monic(&rem, &phi_coeffs(d));
        }
    }
    let rem = Arc::new(rem);
    cache().lock().unwrap().insert(n, rem.clone());
    rem
}

/// Exact quotient of `a` by the monic `b`; panics if the division leaves a remainder.
fn divide_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![0i64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db];
        q[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = r[i + j]
                    .checked_sub(c.checked_mul(bj).expect("coefficient overflow"))
                    .expect("coefficient overflow");
            }
        }
    }
    assert!(r.iter().all(|&x| x == 0), "inexact cyclotomic division");
    q
}

pub fn cyclotomic_poly(n: u32) -> CycloPoly {
    CycloPoly {
        n,
        coeffs: phi_coeffs(n).as_ref().clone(),
    }
}

/// `Phi_n(q)` as an exact integer.
pub fn eval_phi(n: u32, q: &BigInt) -> BigInt {
    cyclotomic_poly(n).eval(q)
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut m = n;
    let mut out = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}
