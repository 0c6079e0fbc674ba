//! Projective linear groups acting on projective points (and lines).

use super::field::Field;
use crate::perm::Permutation;

/// Maps on the projective line `GF(q) u {inf}`; point `q` is infinity.
pub struct ProjectiveLine {
    pub field: Field,
}

impl ProjectiveLine {
    pub fn new(field: Field) -> Self {
        ProjectiveLine { field }
    }

    pub fn degree(&self) -> usize {
        self.field.q as usize + 1
    }

    /// `z -> (a z + b) / (c z + d)`.
    pub fn mobius(&self, a: u32, b: u32, c: u32, d: u32) -> Permutation {
        let f = &self.field;
        let inf = f.q;
        let mut images = Vec::with_capacity(self.degree());
        for z in f.elements() {
            let num = f.add(f.mul(a, z), b);
            let den = f.add(f.mul(c, z), d);
            images.push(if den == 0 { inf } else { f.div(num, den) } as usize);
        }
        images.push(if c == 0 { inf } else { f.div(a, c) } as usize);
        Permutation::from_images(images).expect("invertible matrix")
    }

    /// Generators of `PSL(2, q)`: two translations, a diagonal element and `z -> -1/z`.
    pub fn psl_generators(&self) -> Vec<Permutation> {
        let f = &self.field;
        let w = f.primitive();
        vec![
            self.mobius(1, 1, 0, 1),
            self.mobius(1, w, 0, 1),
            self.mobius(w, 0, 0, f.inv(w)),
            self.mobius(0, f.neg(1), 1, 0),
        ]
    }

    /// Diagonal automorphism `z -> w z` from `PGL(2, q)`.
    pub fn diagonal(&self) -> Permutation {
        self.mobius(self.field.primitive(), 0, 0, 1)
    }

    /// Field automorphism `z -> z^p`.
    pub fn frobenius(&self) -> Permutation {
        let f = &self.field;
        let mut images: Vec<usize> = f.elements().map(|z| f.frobenius(z) as usize).collect();
        images.push(f.q as usize);
        Permutation::from_images(images).expect("Frobenius is a bijection")
    }
}

/// `PG(2, q)`: normalized row vectors (first non-zero coordinate 1).
pub struct ProjectivePlane {
    pub field: Field,
    points: Vec<[u32; 3]>,
}

type Matrix3 = [[u32; 3]; 3];

impl ProjectivePlane {
    pub fn new(field: Field) -> Self {
        let q = field.q;
        let mut points = Vec::with_capacity((q * q + q + 1) as usize);
        for a in 0..q {
            for b in 0..q {
                points.push([1, a, b]);
            }
        }
        for b in 0..q {
            points.push([0, 1, b]);
        }
        points.push([0, 0, 1]);
        ProjectivePlane { field, points }
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    fn index(&self, v: [u32; 3]) -> usize {
        let f = &self.field;
        let q = f.q as usize;
        let lead = *v.iter().find(|&&x| x != 0).expect("non-zero vector");
        let inv = f.inv(lead);
        let n: Vec<usize> = v.iter().map(|&x| f.mul(x, inv) as usize).collect();
        if n[0] == 1 {
            n[1] * q + n[2]
        } else if n[1] == 1 {
            q * q + n[2]
        } else {
            q * q + q
        }
    }

    fn apply(&self, v: [u32; 3], m: &Matrix3) -> [u32; 3] {
        let f = &self.field;
        let mut out = [0u32; 3];
        for (j, o) in out.iter_mut().enumerate() {
            for (i, &vi) in v.iter().enumerate() {
                *o = f.add(*o, f.mul(vi, m[i][j]));
            }
        }
        out
    }

    fn map(&self, m: &Matrix3, frob: bool) -> Vec<usize> {
        self.points
            .iter()
            .map(|&v| {
                let v = if frob {
                    v.map(|x| self.field.frobenius(x))
                } else {
                    v
                };
                self.index(self.apply(v, m))
            })
            .collect()
    }

    /// `x_ij(t) = I + t E_ij`.
    fn transvection(&self, i: usize, j: usize, t: u32) -> Matrix3 {
        let mut m = [[0u32; 3]; 3];
        for (k, row) in m.iter_mut().enumerate() {
            row[k] = 1;
        }
        m[i][j] = t;
        m
    }

    /// Transvections `x_ij(w^s)` for `i != j` and `s < k`, which generate `SL(3, q)`.
    fn transvections(&self) -> Vec<(usize, usize, u32)> {
        let f = &self.field;
        let mut out = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    for s in 0..f.k {
                        out.push((i, j, f.power_of_primitive(s as u64)));
                    }
                }
            }
        }
        out
    }

    /// `PSL(3, q)` on points.
    pub fn psl_on_points(&self) -> Vec<Permutation> {
        self.transvections()
            .into_iter()
            .map(|(i, j, t)| {
                Permutation::from_images(self.map(&self.transvection(i, j, t), false)).unwrap()
            })
            .collect()
    }

    /// Points `0..N`, then lines `N..2N` with line `w` = `{v : v . w = 0}`.
    /// A matrix `A` sends point `v` to `vA` and line `w` to `w A^-T`.
    fn on_points_and_lines(&self, a: &Matrix3, a_inv_t: &Matrix3, frob: bool) -> Permutation {
        let n = self.point_count();
        let mut images = self.map(a, frob);
        images.extend(self.map(a_inv_t, frob).into_iter().map(|x| x + n));
        Permutation::from_images(images).unwrap()
    }

    pub fn psl_on_points_and_lines(&self) -> Vec<Permutation> {
        let f = &self.field;
        self.transvections()
            .into_iter()
            .map(|(i, j, t)| {
                self.on_points_and_lines(
                    &self.transvection(i, j, t),
                    &self.transvection(j, i, f.neg(t)),
                    false,
                )
            })
            .collect()
    }

    /// The polarity exchanging point `v` with line `v`.
    pub fn graph_automorphism(&self) -> Permutation {
        let n = self.point_count();
        let images = (0..2 * n).map(|x| (x + n) % (2 * n)).collect();
        Permutation::from_images(images).unwrap()
    }

    /// `diag(w, 1, 1)`.
    pub fn diagonal_automorphism(&self) -> Permutation {
        let f = &self.field;
        let w = f.primitive();
        let mut d = [[0u32; 3]; 3];
        let mut d_inv = [[0u32; 3]; 3];
        d[0][0] = w;
        d_inv[0][0] = f.inv(w);
        for k in 1..3 {
            d[k][k] = 1;
            d_inv[k][k] = 1;
        }
        self.on_points_and_lines(&d, &d_inv, false)
    }

    pub fn field_automorphism(&self) -> Permutation {
        let mut id = [[0u32; 3]; 3];
        for (k, row) in id.iter_mut().enumerate() {
            row[k] = 1;
        }
        self.on_points_and_lines(&id, &id, true)
    }
}
