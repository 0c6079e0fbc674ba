use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::dixon::irreducible_characters;
use crate::config::Config;
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, ClassData, PermGroup};

/// Values of a class function, one per class in canonical class order.
pub type ClassFunction = Vec<CycloNum>;

/// The irreducible characters of a group with their class data.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: PermGroup,
    classes: ClassData,
    irreducibles: Vec<ClassFunction>,
    degrees: Vec<u64>,
    prime: Option<u64>,
}

/// Kernel and codegree of one irreducible character.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodegreeRecord {
    pub character: usize,
    pub kernel_classes: Vec<usize>,
    pub kernel_order: u64,
    pub codegree: u64,
}

/// Computes the character table of `group` by the Dixon-Schneider method.
pub fn character_table(group: &PermGroup, config: &Config) -> Result<CharacterTable> {
    let classes = conjugacy_classes(group, config.cap)?;
    table_from_classes(group, classes, config)
}

pub fn table_from_classes(
    group: &PermGroup,
    classes: ClassData,
    config: &Config,
) -> Result<CharacterTable> {
    if classes.len() > config.max_classes {
        return Err(Error::TooManyClasses {
            classes: classes.len(),
            limit: config.max_classes,
        });
    }
    let out = irreducible_characters(&classes, config.dixon_prime_rank)?;
    let mut table = CharacterTable::from_parts(group.clone(), classes, out.rows)?;
    table.prime = Some(out.prime);
    Ok(table)
}

/// `sum_k size_k a(g_k) conj(b(g_k))`, accumulated per element order in
/// exponent space so that the only field reductions happen once per order.
fn weighted_pairing(classes: &ClassData, a: &[CycloNum], b: &[CycloNum]) -> Result<CycloNum> {
    let integral = a.iter().chain(b).all(CycloNum::is_integral);
    if !integral {
        let mut acc = CycloNum::zero(1);
        for k in 0..classes.len() {
            let term = (&a[k] * &b[k].conjugate())
                .scale(&BigRational::from_integer(BigInt::from(classes.sizes[k])));
            acc = &acc + &term;
        }
        return Ok(acc);
    }
    let mut rational = BigRational::zero();
    let mut irrational = CycloNum::zero(1);
    let orders = classes.distinct_orders();
    for &o in &orders {
        let n = o as usize;
        let mut exps = vec![0i128; n];
        for k in (0..classes.len()).filter(|&k| classes.element_orders[k] == o) {
            let x = a[k].coerce(o as u32);
            let y = b[k].coerce(o as u32);
            let xs = x.integer_coords();
            let ys = y.integer_coords();
            let size = classes.sizes[k] as i128;
            for (i, &xi) in xs.iter().enumerate() {
                if xi == 0 {
                    continue;
                }
                for (j, &yj) in ys.iter().enumerate() {
                    if yj == 0 {
                        continue;
                    }
                    let idx = (i + n - j) % n;
                    let term = xi
                        .checked_mul(yj)
                        .and_then(|t| t.checked_mul(size))
                        .ok_or_else(|| Error::Integrity("pairing overflow".into()))?;
                    exps[idx] = exps[idx]
                        .checked_add(term)
                        .ok_or_else(|| Error::Integrity("pairing overflow".into()))?;
                }
            }
        }
        let exps: Vec<BigInt> = exps.into_iter().map(BigInt::from).collect();
        let partial = CycloNum::from_exponents(o as u32, &exps);
        match partial.to_rational() {
            Ok(q) => rational += q,
            Err(_) => irrational = &irrational + &partial,
        }
    }
    Ok(&irrational + &CycloNum::from_rational(1, &rational))
}

impl CharacterTable {
    /// Assembles a table from character rows, sorting rows canonically and
    /// checking every table invariant exactly.
    pub fn from_parts(
        group: PermGroup,
        classes: ClassData,
        mut rows: Vec<ClassFunction>,
    ) -> Result<Self> {
        let r = classes.len();
        if rows.len() != r {
            return Err(Error::Integrity(format!(
                "{} characters for {r} classes",
                rows.len()
            )));
        }
        for row in &rows {
            if row.len() != r {
                return Err(Error::Integrity(
                    "row length differs from class count".into(),
                ));
            }
            for (v, &o) in row.iter().zip(&classes.element_orders) {
                if v.conductor() as u64 != o {
                    return Err(Error::Integrity(format!(
                        "value over conductor {} on a class of order {o}",
                        v.conductor()
                    )));
                }
                if !v.is_integral() {
                    return Err(Error::Integrity(format!("non-integral value {v}")));
                }
            }
        }
        let mut degrees = Vec::with_capacity(r);
        for row in &rows {
            let d = row[0]
                .to_rational_integer()
                .map_err(|_| Error::Integrity("irrational degree".into()))?;
            let d: u64 = d
                .try_into()
                .map_err(|_| Error::Integrity(format!("degree {} out of range", row[0])))?;
            if d == 0 {
                return Err(Error::Integrity("zero degree".into()));
            }
            degrees.push(d);
        }
        let principal = rows.iter().position(|row| {
            row.iter()
                .all(|v| v.to_rational_integer().is_ok_and(|x| x.is_one()))
        });
        let Some(principal) = principal else {
            return Err(Error::Integrity("principal character missing".into()));
        };
        let mut order: Vec<usize> = (0..r).collect();
        order.sort_by(|&a, &b| {
            (a != principal)
                .cmp(&(b != principal))
                .then(degrees[a].cmp(&degrees[b]))
                .then_with(|| compare_rows_desc(&rows[a], &rows[b]))
        });
        let mut sorted = Vec::with_capacity(r);
        for &i in &order {
            sorted.push(std::mem::take(&mut rows[i]));
        }
        let degrees = order.iter().map(|&i| degrees[i]).collect();
        let table = CharacterTable {
            group,
            classes,
            irreducibles: sorted,
            degrees,
            prime: None,
        };
        table.validate()?;
        Ok(table)
    }

    /// Checks the degree sum, divisibility, and both orthogonality relations exactly.
    pub fn validate(&self) -> Result<()> {
        let g = self.classes.group_order;
        let r = self.classes.len();
        let sum: u128 = self
            .degrees
            .iter()
            .map(|&d| (d as u128) * (d as u128))
            .sum();
        if sum != g as u128 {
            return Err(Error::Integrity(format!(
                "sum of squared degrees is {sum}, not {g}"
            )));
        }
        if let Some(d) = self.degrees.iter().find(|&&d| !g.is_multiple_of(d)) {
            return Err(Error::Integrity(format!("degree {d} does not divide {g}")));
        }
        for i in 0..r {
            for j in i..r {
                let ip = self.inner_product(&self.irreducibles[i], &self.irreducibles[j])?;
                let expected = BigRational::from_integer(BigInt::from(u8::from(i == j)));
                if ip != expected {
                    return Err(Error::Integrity(format!("<chi_{i}, chi_{j}> = {ip}")));
                }
            }
        }
        self.check_column_orthogonality()
    }

    fn check_column_orthogonality(&self) -> Result<()> {
        let c = &self.classes;
        let r = c.len();
        let coords: Vec<Vec<Vec<i128>>> = (0..r)
            .map(|k| {
                self.irreducibles
                    .iter()
                    .map(|row| row[k].integer_coords())
                    .collect()
            })
            .collect();
        for i in 0..r {
            for j in i..r {
                let (oi, oj) = (c.element_orders[i], c.element_orders[j]);
                let m = oi.lcm(&oj);
                let (si, sj) = ((m / oi) as usize, (m / oj) as usize);
                let n = m as usize;
                let mut exps = vec![0i128; n];
                for (xs, ys) in coords[i].iter().zip(&coords[j]) {
                    for (a, &x) in xs.iter().enumerate() {
                        if x == 0 {
                            continue;
                        }
                        for (b, &y) in ys.iter().enumerate() {
                            if y != 0 {
                                let idx = (a * si + n - (b * sj) % n) % n;
                                exps[idx] += x * y;
                            }
                        }
                    }
                }
                let exps: Vec<BigInt> = exps.into_iter().map(BigInt::from).collect();
                let value = CycloNum::from_exponents(m as u32, &exps);
                let expected = if i == j { c.centralizer_order(i) } else { 0 };
                if value != CycloNum::from_int(1, expected) {
                    return Err(Error::Integrity(format!(
                        "column orthogonality fails for classes {i}, {j}: {value}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn classes(&self) -> &ClassData {
        &self.classes
    }

    pub fn irreducibles(&self) -> &[ClassFunction] {
        &self.irreducibles
    }

    pub fn character(&self, i: usize) -> &ClassFunction {
        &self.irreducibles[i]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.irreducibles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.irreducibles.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.classes.group_order
    }

    pub fn exponent(&self) -> u64 {
        self.classes.exponent
    }

    /// Prime used by the modular stage, if this table was computed rather than loaded.
    pub fn prime(&self) -> Option<u64> {
        self.prime
    }

    /// `(1/|G|) sum_k size_k a(g_k) conj(b(g_k))`, which must be rational.
    pub fn inner_product(&self, a: &[CycloNum], b: &[CycloNum]) -> Result<BigRational> {
        let s = weighted_pairing(&self.classes, a, b)?;
        let s = s.to_rational().map_err(|_| {
            Error::Integrity("inner product of class functions is irrational".into())
        })?;
        Ok(s / BigRational::from_integer(BigInt::from(self.classes.group_order)))
    }

    /// Multiplicity of an irreducible in a character; non-integers are corruption.
    pub fn multiplicity(&self, chi: &[CycloNum], i: usize) -> Result<BigInt> {
        let ip = self.inner_product(chi, &self.irreducibles[i])?;
        if !ip.is_integer() {
            return Err(Error::Integrity(format!("non-integral multiplicity {ip}")));
        }
        Ok(ip.to_integer())
    }

    /// Classes on which `chi` takes the value `chi(1)`.
    pub fn kernel_classes(&self, chi: &[CycloNum]) -> Vec<usize> {
        let d = &chi[0];
        (0..self.classes.len()).filter(|&k| chi[k] == *d).collect()
    }

    pub fn codegree_record(&self, i: usize) -> Result<CodegreeRecord> {
        let chi = &self.irreducibles[i];
        let kernel_classes = self.kernel_classes(chi);
        let kernel_order: u64 = kernel_classes.iter().map(|&k| self.classes.sizes[k]).sum();
        let g = self.classes.group_order;
        if !g.is_multiple_of(kernel_order) {
            return Err(Error::Integrity(format!(
                "kernel order {kernel_order} does not divide {g}"
            )));
        }
        let index = g / kernel_order;
        let d = self.degrees[i];
        if !index.is_multiple_of(d) {
            return Err(Error::Integrity(format!(
                "|G:ker chi| = {index} is not divisible by chi(1) = {d}"
            )));
        }
        let codegree = index / d;
        if (codegree == 1) != (i == 0) {
            return Err(Error::Integrity(format!(
                "character {i} has codegree {codegree}"
            )));
        }
        Ok(CodegreeRecord {
            character: i,
            kernel_classes,
            kernel_order,
            codegree,
        })
    }

    pub fn codegrees(&self) -> Result<Vec<CodegreeRecord>> {
        (0..self.len()).map(|i| self.codegree_record(i)).collect()
    }

    /// Values of the regular character.
    pub fn regular_character(&self) -> ClassFunction {
        self.classes
            .element_orders
            .iter()
            .enumerate()
            .map(|(k, &o)| CycloNum::from_int(o as u32, if k == 0 { self.order() } else { 0 }))
            .collect()
    }

    /// Permutation character of the group's action on its points.
    pub fn permutation_character(&self) -> ClassFunction {
        self.classes
            .representatives
            .iter()
            .zip(&self.classes.element_orders)
            .map(|(g, &o)| {
                let fixed = (0..g.degree()).filter(|&x| g.apply(x) == x).count();
                CycloNum::from_int(o as u32, fixed as u64)
            })
            .collect()
    }

    /// The machine-readable form of the table.
    pub fn to_json(&self, spec: &str) -> Result<TableJson> {
        Ok(TableJson {
            spec: spec.to_string(),
            order: self.order().to_string(),
            exponent: self.exponent(),
            classes: (0..self.classes.len())
                .map(|k| ClassJson {
                    rep_cycles: self.classes.representatives[k].to_string(),
                    size: self.classes.sizes[k],
                    element_order: self.classes.element_orders[k],
                })
                .collect(),
            irreducibles: self.irreducibles.clone(),
            degrees: self.degrees.clone(),
            codegrees: self.codegrees()?.iter().map(|c| c.codegree).collect(),
        })
    }
}

/// Descending coordinate order, column by column.
fn compare_rows_desc(a: &[CycloNum], b: &[CycloNum]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        let ord = y.cmp_coords(x);
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassJson {
    pub rep_cycles: String,
    pub size: u64,
    pub element_order: u64,
}

/// Serialized character table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub spec: String,
    pub order: String,
    pub exponent: u64,
    pub classes: Vec<ClassJson>,
    pub irreducibles: Vec<Vec<CycloNum>>,
    pub degrees: Vec<u64>,
    pub codegrees: Vec<u64>,
}

impl TableJson {
    /// Rebuilds a table against freshly computed class data of the same group,
    /// rejecting any disagreement with the stored classes.
    pub fn into_table(self, group: &PermGroup, config: &Config) -> Result<CharacterTable> {
        let classes = conjugacy_classes(group, config.cap)?;
        if classes.len() != self.classes.len() {
            return Err(Error::Integrity("stored class count differs".into()));
        }
        for (k, c) in self.classes.iter().enumerate() {
            if c.rep_cycles != classes.representatives[k].to_string()
                || c.size != classes.sizes[k]
                || c.element_order != classes.element_orders[k]
            {
                return Err(Error::Integrity(format!("stored class {k} differs")));
            }
        }
        if self.order != classes.group_order.to_string() || self.exponent != classes.exponent {
            return Err(Error::Integrity("stored order or exponent differs".into()));
        }
        let table = CharacterTable::from_parts(group.clone(), classes, self.irreducibles)?;
        if table.degrees != self.degrees {
            return Err(Error::Integrity("stored degrees differ".into()));
        }
        let codegrees: Vec<u64> = table.codegrees()?.iter().map(|c| c.codegree).collect();
        if codegrees != self.codegrees {
            return Err(Error::Integrity("stored codegrees differ".into()));
        }
        Ok(table)
    }
}
