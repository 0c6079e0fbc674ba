//! Irreducible characters from simultaneous eigenvectors of the class matrices.

use num_bigint::BigInt;

use super::modp::{
    add_mod, charpoly, choose_prime, inv_mod, mat_vec, mul_mod, nullspace, pow_mod, primitive_root,
    roots, rref, sub_mod,
};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::perm::ClassData;

/// Structure constants of class `i`: entry `(j, k)` counts `x` in `C_i` with
/// `x^-1 g_k` in `C_j`, i.e. the ways to write `g_k = x y` with `x` in `C_i`,
/// `y` in `C_j`. Each column sums to `|C_i|`.
pub fn class_matrix(classes: &ClassData, i: usize) -> Vec<Vec<u64>> {
    let r = classes.len();
    let mut m = vec![vec![0u64; r]; r];
    let elements = classes.elements();
    for &x in classes.members(i) {
        let x_inv = elements[x as usize].inverse();
        for (k, gk) in classes.representatives.iter().enumerate() {
            let j = classes
                .class_of(&x_inv.mul(gk))
                .expect("product of group elements");
            m[j][k] += 1;
        }
    }
    m
}

/// Outcome of the modular stage: rows of character values in canonical
/// class order, each value over `Q(zeta_o)` with `o` the class's element order.
pub(crate) struct DixonOutput {
    pub prime: u64,
    pub rows: Vec<Vec<CycloNum>>,
}

pub(crate) fn irreducible_characters(
    classes: &ClassData,
    prime_rank: usize,
) -> Result<DixonOutput> {
    let r = classes.len();
    let order = classes.group_order;
    let p = choose_prime(classes.exponent, order, prime_rank)?;

    let mut split_order: Vec<usize> = (1..r).collect();
    split_order.sort_by_key(|&i| (classes.sizes[i], i));

    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..r)
        .map(|i| {
            let mut v = vec![0u64; r];
            v[i] = 1;
            v
        })
        .collect()];
    for &i in &split_order {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let m: Vec<Vec<u64>> = class_matrix(classes, i)
            .into_iter()
            .map(|row| row.into_iter().map(|x| x % p).collect())
            .collect();
        let mut next = Vec::with_capacity(spaces.len());
        for space in spaces {
            if space.len() == 1 {
                next.push(space);
                continue;
            }
            next.extend(split(&m, space, p)?);
        }
        spaces = next;
    }
    if spaces.len() != r {
        return Err(Error::SplitFailure(format!(
            "{} common eigenspaces for {r} classes modulo {p}",
            spaces.len()
        )));
    }

    let g = primitive_root(p);
    let mut rows = Vec::with_capacity(r);
    for space in spaces {
        let v = &space[0];
        if v[0] == 0 {
            return Err(Error::SplitFailure(
                "eigenvector vanishes on the identity class".into(),
            ));
        }
        let inv0 = inv_mod(v[0], p);
        let omega: Vec<u64> = v.iter().map(|&x| mul_mod(x, inv0, p)).collect();
        let d = degree_from_central(classes, &omega, p)?;
        let chi: Vec<u64> = omega
            .iter()
            .zip(&classes.sizes)
            .map(|(&w, &s)| mul_mod(mul_mod(w, d, p), inv_mod(s % p, p), p))
            .collect();
        rows.push(lift_row(classes, &chi, d, p, g)?);
    }
    Ok(DixonOutput { prime: p, rows })
}

/// Splits an `m`-invariant subspace (rows in reduced echelon form) into eigenspaces.
fn split(m: &[Vec<u64>], mut basis: Vec<Vec<u64>>, p: u64) -> Result<Vec<Vec<Vec<u64>>>> {
    let pivots = rref(&mut basis, p);
    let d = basis.len();
    let images: Vec<Vec<u64>> = basis.iter().map(|b| mat_vec(m, b, p)).collect();
    // restricted[l][c] = coordinate of m(b_c) along b_l
    let restricted: Vec<Vec<u64>> = (0..d)
        .map(|l| (0..d).map(|c| images[c][pivots[l]]).collect())
        .collect();
    let cp = charpoly(&restricted, p);
    let mut out = Vec::new();
    let mut total = 0;
    for lambda in roots(&cp, p) {
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(l, row)| {
                row.iter()
                    .enumerate()
                    .map(|(c, &x)| if l == c { sub_mod(x, lambda, p) } else { x })
                    .collect()
            })
            .collect();
        let mut eigen: Vec<Vec<u64>> = nullspace(&shifted, p)
            .into_iter()
            .map(|coords| {
                let mut v = vec![0u64; m.len()];
                for (c, b) in coords.iter().zip(&basis) {
                    if *c != 0 {
                        for (x, &y) in v.iter_mut().zip(b) {
                            *x = add_mod(*x, mul_mod(*c, y, p), p);
                        }
                    }
                }
                v
            })
            .collect();
        rref(&mut eigen, p);
        total += eigen.len();
        out.push(eigen);
    }
    if total != d {
        return Err(Error::SplitFailure(format!(
            "class matrix is not diagonalizable over F_{p} on a {d}-dimensional space"
        )));
    }
    Ok(out)
}

/// Recovers `chi(1)` from the central character: `sum_k w_k w_k* / |C_k| = |G| / chi(1)^2`.
fn degree_from_central(classes: &ClassData, omega: &[u64], p: u64) -> Result<u64> {
    let mut s = 0u64;
    for k in 0..classes.len() {
        let term = mul_mod(
            mul_mod(omega[k], omega[classes.inverse_map[k]], p),
            inv_mod(classes.sizes[k] % p, p),
            p,
        );
        s = add_mod(s, term, p);
    }
    if s == 0 {
        return Err(Error::SplitFailure("degenerate central character".into()));
    }
    let target = mul_mod(classes.group_order % p, inv_mod(s, p), p);
    let mut d = 1u64;
    while d * d <= classes.group_order {
        if mul_mod(d, d, p) == target && classes.group_order.is_multiple_of(d) {
            return Ok(d);
        }
        d += 1;
    }
    Err(Error::SplitFailure(format!(
        "no degree d with d^2 = {target} mod {p}"
    )))
}

/// Lifts modular values to cyclotomic integers through the eigenvalue
/// multiplicities of each `rep_i` on the representation.
fn lift_row(classes: &ClassData, chi: &[u64], d: u64, p: u64, g: u64) -> Result<Vec<CycloNum>> {
    let mut row = Vec::with_capacity(classes.len());
    for i in 0..classes.len() {
        let o = classes.element_orders[i];
        let z_inv = inv_mod(pow_mod(g, (p - 1) / o, p), p);
        let o_inv = inv_mod(o % p, p);
        let mut mult = Vec::with_capacity(o as usize);
        let mut total = 0u64;
        for j in 0..o {
            let step = pow_mod(z_inv, j, p);
            let mut acc = 0u64;
            let mut w = 1u64;
            for l in 0..o {
                let val = chi[classes.power_maps[i][l as usize]];
                acc = add_mod(acc, mul_mod(val, w, p), p);
                w = mul_mod(w, step, p);
            }
            let m = mul_mod(acc, o_inv, p);
            if m > d {
                return Err(Error::SplitFailure(format!(
                    "eigenvalue multiplicity {m} exceeds degree {d} on class {i}"
                )));
            }
            total += m;
            mult.push(BigInt::from(m));
        }
        if total != d {
            return Err(Error::SplitFailure(format!(
                "eigenvalue multiplicities on class {i} sum to {total}, not {d}"
            )));
        }
        row.push(CycloNum::from_exponents(o as u32, &mult));
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::DEFAULT_CAP;
    use crate::perm::{conjugacy_classes, PermGroup, Permutation};

    fn classes(d: usize, gens: &[&str]) -> ClassData {
        let g = PermGroup::new(
            gens.iter()
                .map(|s| Permutation::parse_cycles(d, s).unwrap())
                .collect(),
        )
        .unwrap();
        conjugacy_classes(&g, DEFAULT_CAP).unwrap()
    }

    #[test]
    fn identity_class_matrix() {
        let c = classes(4, &["(0 1)", "(0 1 2 3)"]);
        let m = class_matrix(&c, 0);
        for (j, row) in m.iter().enumerate() {
            for (k, &x) in row.iter().enumerate() {
                assert_eq!(x, u64::from(j == k));
            }
        }
    }

    #[test]
    fn sym3_transpositions() {
        // classes: e, transpositions, 3-cycles
        let c = classes(3, &["(0 1)", "(0 1 2)"]);
        let m = class_matrix(&c, 1);
        // C_1 * C_1 = 3 e + 3 (3-cycles)
        assert_eq!(m[1][0], 3);
        assert_eq!(m[1][2], 3);
        assert_eq!(m[1][1], 0);
        for k in 0..3 {
            assert_eq!((0..3).map(|j| m[j][k]).sum::<u64>(), 3);
        }
    }

    #[test]
    fn abelian_class_matrices_are_permutations() {
        let c = classes(6, &["(0 1 2)", "(3 4)", "(5)"]);
        for i in 0..c.len() {
            let m = class_matrix(&c, i);
            for row in &m {
                assert_eq!(row.iter().sum::<u64>(), 1);
            }
        }
    }

    #[test]
    fn degrees_of_alt5() {
        let c = classes(5, &["(0 1 2)", "(2 3 4)"]);
        let out = irreducible_characters(&c, 0).unwrap();
        let mut degrees: Vec<BigInt> = out
            .rows
            .iter()
            .map(|r| r[0].to_rational_integer().unwrap())
            .collect();
        degrees.sort();
        let expected: Vec<BigInt> = [1, 3, 3, 4, 5].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(degrees, expected);
    }
}
