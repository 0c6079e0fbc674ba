//! Arithmetic and linear algebra over a prime field `F_p` with `p < 2^63`.

use crate::error::{Error, Result};

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least generator of the multiplicative group of `F_p`.
pub(crate) fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime fields have primitive roots")
}

/// The `rank`-th prime `p = 1 mod exponent` exceeding `2 * ceil(sqrt(order))`.
pub fn choose_prime(exponent: u64, order: u64, rank: usize) -> Result<u64> {
    let root = (order as f64).sqrt().ceil() as u64;
    let root = (root.saturating_sub(2)..=root + 2)
        .find(|&s| s * s >= order)
        .unwrap();
    let lower = 2 * root;
    let upper = 1u64 << 40;
    let mut p = (lower / exponent) * exponent + 1;
    if p <= lower {
        p += exponent;
    }
    let mut seen = 0;
    while p <= upper {
        if is_prime_u64(p) {
            if seen == rank {
                return Ok(p);
            }
            seen += 1;
        }
        p += exponent;
    }
    Err(Error::NoSuitablePrime {
        exponent,
        lower,
        upper,
    })
}

/// Row-reduces in place, drops zero rows and returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != 0 {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{x : A x = 0}` for a square matrix `A`.
pub(crate) fn nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    let pivots = rref(&mut m, p);
    let mut basis = Vec::new();
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; n];
        v[free] = 1;
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = sub_mod(0, row[free], p);
        }
        basis.push(v);
    }
    basis
}

/// `A x` for a square matrix.
pub(crate) fn mat_vec(a: &[Vec<u64>], x: &[u64], p: u64) -> Vec<u64> {
    a.iter()
        .map(|row| {
            row.iter().zip(x).fold(0u64, |acc, (&r, &v)| {
                if r == 0 || v == 0 {
                    acc
                } else {
                    add_mod(acc, mul_mod(r, v, p), p)
                }
            })
        })
        .collect()
}

/// Characteristic polynomial (lowest degree first) via reduction to Hessenberg form.
pub(crate) fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t_inv = inv_mod(h[m][m - 1], p);
        for i in m + 1..n {
            let u = mul_mod(h[i][m - 1], t_inv, p);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let v = mul_mod(u, h[m][j], p);
                h[i][j] = sub_mod(h[i][j], v, p);
            }
            for row in h.iter_mut() {
                let v = mul_mod(u, row[i], p);
                row[m] = add_mod(row[m], v, p);
            }
        }
    }
    // p_m = (x - h[m-1][m-1]) p_{m-1} - sum_i t_i h[m-i-1][m-1] p_{m-i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut pm = vec![0u64; m + 1];
        for (k, &c) in prev.iter().enumerate() {
            pm[k + 1] = add_mod(pm[k + 1], c, p);
            pm[k] = sub_mod(pm[k], mul_mod(c, h[m - 1][m - 1], p), p);
        }
        let mut t = 1u64;
        for i in 1..m {
            t = mul_mod(t, h[m - i][m - i - 1], p);
            let coef = mul_mod(t, h[m - i - 1][m - 1], p);
            if coef == 0 {
                continue;
            }
            for (k, &c) in polys[m - i - 1].iter().enumerate() {
                pm[k] = sub_mod(pm[k], mul_mod(coef, c, p), p);
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap()
}

/// Distinct roots in `F_p`, ascending, found by exhaustive evaluation.
pub(crate) fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    (0..p)
        .filter(|&x| {
            poly.iter()
                .rev()
                .fold(0u64, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
                == 0
        })
        .collect()
}
