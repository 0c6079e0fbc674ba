use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{phi_coeffs, totient};
use crate::error::{Error, Result};

/// An element of `Q(zeta_n)` in the power basis `1, zeta, .., zeta^(phi(n)-1)`.
///
/// Stored as an integer numerator vector over a positive common denominator,
/// always reduced modulo `Phi_n` and to lowest terms, so structural equality
/// at a fixed conductor is value equality.
#[derive(Clone, Debug)]
pub struct CycloNum {
    conductor: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

type Reduction = Arc<Vec<Vec<i64>>>;

/// `x^t mod Phi_n` for `0 <= t < n`, each of length `phi(n)`.
pub(crate) fn reduction_table(n: u32) -> Reduction {
    static TABLES: OnceLock<Mutex<HashMap<u32, Reduction>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.lock().unwrap().get(&n) {
        return t.clone();
    }
    let phi = phi_coeffs(n);
    let deg = phi.len() - 1;
    let mut rows = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; deg];
    cur[0] = 1;
    for _ in 0..n {
        rows.push(cur.clone());
        // multiply by x, then eliminate x^deg
        let top = cur[deg - 1];
        for j in (1..deg).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..deg {
                cur[j] -= top * phi[j];
            }
        }
    }
    let rows = Arc::new(rows);
    tables.lock().unwrap().insert(n, rows.clone());
    rows
}

impl CycloNum {
    fn normalized(conductor: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -&*c;
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if num.iter().all(Zero::is_zero) {
            den = BigInt::one();
        } else if !g.is_one() {
            for c in num.iter_mut() {
                *c /= &g;
            }
            den /= &g;
        }
        CycloNum {
            conductor,
            num,
            den,
        }
    }

    pub fn zero(conductor: u32) -> Self {
        assert!(conductor >= 1);
        CycloNum {
            conductor,
            num: vec![BigInt::zero(); totient(conductor) as usize],
            den: BigInt::one(),
        }
    }

    pub fn from_int(conductor: u32, value: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(conductor);
        z.num[0] = value.into();
        z
    }

    pub fn one(conductor: u32) -> Self {
        Self::from_int(conductor, 1)
    }

    pub fn from_rational(conductor: u32, value: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); totient(conductor) as usize];
        num[0] = value.numer().clone();
        Self::normalized(conductor, num, value.denom().clone())
    }

    /// `zeta_n^k` for any integer `k`.
    pub fn zeta_pow(conductor: u32, k: i64) -> Self {
        let t = k.rem_euclid(conductor as i64) as usize;
        let row = &reduction_table(conductor)[t];
        CycloNum {
            conductor,
            num: row.iter().map(|&c| BigInt::from(c)).collect(),
            den: BigInt::one(),
        }
    }

    /// `sum_t coeffs[t] * zeta_n^t`, with `coeffs` indexed by exponent mod `n`.
    pub fn from_exponents(conductor: u32, coeffs: &[BigInt]) -> Self {
        assert_eq!(coeffs.len(), conductor as usize);
        Self::normalized(conductor, reduce(conductor, coeffs), BigInt::one())
    }

    /// Rational power-basis coordinates; rejects a vector of the wrong length.
    pub fn from_coords(conductor: u32, coords: &[BigRational]) -> Result<Self> {
        if conductor == 0 || coords.len() != totient(conductor) as usize {
            return Err(Error::Integrity(format!(
                "{} coordinates do not fit conductor {conductor}",
                coords.len()
            )));
        }
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        Ok(Self::normalized(conductor, num, den))
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coords(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// Whether every coordinate is an integer.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The same number written over `Q(zeta_m)`; `m` must be a multiple of the conductor.
    pub fn coerce(&self, m: u32) -> Self {
        assert!(
            m.is_multiple_of(self.conductor),
            "{m} is not a multiple of {}",
            self.conductor
        );
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut exps = vec![BigInt::zero(); m as usize];
        for (j, c) in self.num.iter().enumerate() {
            exps[j * step] = c.clone();
        }
        Self::normalized(m, reduce(m, &exps), self.den.clone())
    }

    fn common(a: &Self, b: &Self) -> (Self, Self) {
        let m = a.conductor.lcm(&b.conductor);
        (a.coerce(m), b.coerce(m))
    }

    /// Power-basis coordinates as machine integers; the number must be integral.
    pub(crate) fn integer_coords(&self) -> Vec<i128> {
        assert!(self.den.is_one(), "non-integral cyclotomic {self}");
        self.num
            .iter()
            .map(|c| i128::try_from(c).expect("coordinate exceeds i128"))
            .collect()
    }

    /// Image under `zeta -> zeta^k`; `k` must be coprime to the conductor.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.conductor as i64;
        let k = k.rem_euclid(n);
        if (k as u64).gcd(&(n as u64)) != 1 {
            return Err(Error::NotCoprime {
                k: k as u64,
                conductor: self.conductor,
            });
        }
        let mut exps = vec![BigInt::zero(); n as usize];
        for (j, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                exps[(j as i64 * k % n) as usize] += c;
            }
        }
        Ok(Self::normalized(
            self.conductor,
            reduce(self.conductor, &exps),
            self.den.clone(),
        ))
    }

    /// Complex conjugate.
    pub fn conjugate(&self) -> Self {
        self.galois(-1).expect("-1 is a unit")
    }

    /// The value as a rational, or `NotRational` if any irrational coordinate survives.
    pub fn to_rational(&self) -> Result<BigRational> {
        if self.num[1..].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotRational);
        }
        Ok(BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    /// The value as an integer; fails unless it is a rational integer.
    pub fn to_rational_integer(&self) -> Result<BigInt> {
        let r = self.to_rational()?;
        if !r.is_integer() {
            return Err(Error::NotRational);
        }
        Ok(r.to_integer())
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * factor.numer()).collect();
        Self::normalized(self.conductor, num, &self.den * factor.denom())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one(self.conductor);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Floating-point embedding `zeta_n -> exp(2 pi i / n)`, for display only.
    pub fn to_complex(&self) -> (f64, f64) {
        let den = bigint_to_f64(&self.den);
        let mut re = 0.0;
        let mut im = 0.0;
        for (j, c) in self.num.iter().enumerate() {
            let t = std::f64::consts::TAU * j as f64 / self.conductor as f64;
            let c = bigint_to_f64(c) / den;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    /// Coordinate-wise order; both numbers must share a conductor.
    pub fn cmp_coords(&self, other: &Self) -> Ordering {
        assert_eq!(self.conductor, other.conductor);
        for (a, b) in self.num.iter().zip(&other.num) {
            let ord = (a * &other.den).cmp(&(b * &self.den));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }
}

fn bigint_to_f64(x: &BigInt) -> f64 {
    x.to_string().parse().unwrap_or(f64::NAN)
}

/// Reduces an exponent-indexed vector to power-basis coordinates.
fn reduce(n: u32, exps: &[BigInt]) -> Vec<BigInt> {
    let table = reduction_table(n);
    let phi = totient(n) as usize;
    let mut out = vec![BigInt::zero(); phi];
    for (t, c) in exps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if t < phi {
            out[t] += c;
            continue;
        }
        for (o, &r) in out.iter_mut().zip(&table[t]) {
            if r != 0 {
                *o += c * r;
            }
        }
    }
    out
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.den == other.den && self.num == other.num
        } else {
            let (a, b) = Self::common(self, other);
            a.den == b.den && a.num == b.num
        }
    }
}

impl Eq for CycloNum {}

impl Add for &CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        if self.conductor != rhs.conductor {
            let (a, b) = CycloNum::common(self, rhs);
            return &a + &b;
        }
        let num = self
            .num
            .iter()
            .zip(&rhs.num)
            .map(|(a, b)| a * &rhs.den + b * &self.den)
            .collect();
        CycloNum::normalized(self.conductor, num, &self.den * &rhs.den)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self + &(-rhs)
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        if self.conductor != rhs.conductor {
            let (a, b) = CycloNum::common(self, rhs);
            return &a * &b;
        }
        let n = self.conductor as usize;
        let mut exps = vec![BigInt::zero(); n];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if !b.is_zero() {
                    exps[(i + j) % n] += a * b;
                }
            }
        }
        CycloNum::normalized(
            self.conductor,
            reduce(self.conductor, &exps),
            &self.den * &rhs.den,
        )
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            let neg = r.is_negative();
            let a = r.abs();
            if neg {
                write!(f, "-")?;
            } else if !first {
                write!(f, "+")?;
            }
            first = false;
            let z = self.conductor;
            match j {
                0 => write!(f, "{a}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                    if j == 1 {
                        write!(f, "z{z}")?;
                    } else {
                        write!(f, "z{z}^{j}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            conductor: self.conductor,
            coeffs: self.coords().iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = Wire::deserialize(d)?;
        let coords = w
            .coeffs
            .iter()
            .map(|s| s.parse::<BigRational>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        CycloNum::from_coords(w.conductor, &coords).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycloNum {
        CycloNum::zeta_pow(n, k)
    }

    #[test]
    fn zeta4_squared() {
        assert_eq!(&z(4, 1) * &z(4, 1), CycloNum::from_int(4, -1));
    }

    #[test]
    fn root_sums() {
        assert_eq!(&z(3, 1) + &z(3, 2), CycloNum::from_int(3, -1));
        let s = &(&CycloNum::one(3) + &z(3, 1)) + &z(3, 2);
        assert_eq!(s.to_rational_integer().unwrap(), BigInt::from(0));
    }

    #[test]
    fn conjugate_of_zeta5() {
        assert_eq!(z(5, 1).conjugate(), z(5, 4));
        assert_eq!(z(5, 4).to_string(), "-1-z5-z5^2-z5^3");
    }

    #[test]
    fn rationality() {
        assert_eq!(
            CycloNum::from_int(12, 7).to_rational_integer().unwrap(),
            BigInt::from(7)
        );
        assert_eq!(z(8, 1).to_rational_integer(), Err(Error::NotRational));
        let half = CycloNum::from_rational(5, &BigRational::new(1.into(), 2.into()));
        assert_eq!(half.to_rational_integer(), Err(Error::NotRational));
    }

    #[test]
    fn galois_requires_units() {
        assert_eq!(
            z(6, 1).galois(3),
            Err(Error::NotCoprime { k: 3, conductor: 6 })
        );
        assert_eq!(z(7, 1).galois(3).unwrap(), z(7, 3));
    }

    #[test]
    fn mixed_conductors_coerce() {
        // zeta_3 * zeta_4 = zeta_12^7
        assert_eq!(&z(3, 1) * &z(4, 1), z(12, 7));
        assert_eq!(z(2, 1), CycloNum::from_int(1, -1));
        assert_eq!(z(3, 1), z(6, 2));
    }

    #[test]
    fn json_round_trip() {
        let x = &z(5, 2).scale(&BigRational::new(3.into(), 4.into())) + &z(5, 3);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"conductor":5,"coeffs":["0","0","3/4","1"]}"#);
        let y: CycloNum = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
        assert!(serde_json::from_str::<CycloNum>(r#"{"conductor":5,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn complex_embedding() {
        let (re, im) = z(4, 1).to_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    }
}
