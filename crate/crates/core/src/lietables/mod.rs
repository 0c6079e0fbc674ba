//! Order and character-degree formulas for groups of Lie type in
//! characteristic 2 and 3, evaluated exactly at prime powers.

mod expr;
mod realize;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::builders::prime_power;
use crate::error::{Error, Result};

pub use expr::{parse as parse_formula, Env, Expr, Quad};
pub use realize::{constructible_instances, default_realization, fidelity_check, Fidelity};

const ROW_DATA: &str = include_str!("../../data/lie_rows.toml");

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTables {
    version: u32,
    row: Vec<RawRow>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRow {
    id: String,
    table: u8,
    name: String,
    series: Vec<String>,
    #[serde(default = "one_u32")]
    twist: u32,
    rank: Option<u32>,
    rank_min: Option<u32>,
    #[serde(default)]
    variable: Variable,
    characteristic: Vec<u64>,
    #[serde(default)]
    exponent_parity: Parity,
    #[serde(default = "one_u32")]
    min_exponent: u32,
    order: String,
    steinberg: String,
    alpha_label: Option<String>,
    alpha: String,
    beta_label: Option<String>,
    beta: String,
    sylow_exponent: Option<BTreeMap<String, u64>>,
    sylow_linear: Option<String>,
}

fn one_u32() -> u32 {
    1
}

/// How the user-facing parameter relates to the formula variable `q`.
#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Variable {
    /// The parameter is `q`.
    #[default]
    Q,
    /// The parameter is `q^2`, an odd power of `p`.
    Sqrt,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    Any,
    Odd,
    Even,
}

/// A parsed formula together with its source text.
#[derive(Clone, Debug)]
pub struct Formula {
    pub source: String,
    pub expr: Expr,
}

impl Formula {
    fn new(row: &str, field: &str, source: &str) -> Result<Self> {
        let expr = expr::parse(source)
            .map_err(|e| Error::TableData(format!("row {row}, {field}: {e}")))?;
        Ok(Formula {
            source: source.to_string(),
            expr,
        })
    }
}

#[derive(Clone, Debug)]
pub enum BetaDegree {
    /// `beta(1)` is the full `p`-part of the order.
    Steinberg,
    Formula {
        label: String,
        formula: Formula,
    },
}

#[derive(Clone, Debug)]
pub enum SylowBound {
    /// Exact Sylow exponent for each admissible characteristic.
    Exact(BTreeMap<u64, u64>),
    /// Exponent at most `c * p` for the given `c`.
    Linear(Formula),
    Unlisted,
}

/// One printed row.
#[derive(Clone, Debug)]
pub struct LieFamilyEntry {
    pub id: String,
    pub table: u8,
    pub name: String,
    pub series: Vec<char>,
    pub twist: u32,
    pub rank_min: u32,
    pub rank_max: Option<u32>,
    pub variable: Variable,
    pub characteristic: Vec<u64>,
    pub parity: Parity,
    pub min_exponent: u32,
    pub order: Formula,
    pub steinberg: Formula,
    pub alpha_label: Option<String>,
    pub alpha: Formula,
    pub beta: BetaDegree,
    pub sylow: SylowBound,
}

impl LieFamilyEntry {
    fn from_raw(r: RawRow) -> Result<Self> {
        let id = r.id.clone();
        let bad = |m: &str| Error::TableData(format!("row {id}: {m}"));
        let series = r
            .series
            .iter()
            .map(|s| {
                let mut cs = s.chars();
                match (cs.next(), cs.next()) {
                    (Some(c), None) if ('A'..='G').contains(&c) => Ok(c),
                    _ => Err(bad(&format!("bad series '{s}'"))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        let (rank_min, rank_max) = match (r.rank, r.rank_min) {
            (Some(n), None) => (n, Some(n)),
            (None, Some(n)) => (n, None),
            _ => return Err(bad("exactly one of rank and rank_min is required")),
        };
        if r.characteristic.is_empty() {
            return Err(bad("no characteristic"));
        }
        if r.variable == Variable::Sqrt && r.exponent_parity != Parity::Odd {
            return Err(bad("a square-root parameter needs odd exponents"));
        }
        let beta = if r.beta == "steinberg" {
            if r.beta_label.is_some() {
                return Err(bad("the Steinberg character carries no label"));
            }
            BetaDegree::Steinberg
        } else {
            BetaDegree::Formula {
                label: r.beta_label.clone().unwrap_or_else(|| "beta".into()),
                formula: Formula::new(&id, "beta", &r.beta)?,
            }
        };
        let sylow = match (r.sylow_exponent, r.sylow_linear) {
            (Some(m), None) => {
                let mut exact = BTreeMap::new();
                for (k, v) in m {
                    let p: u64 = k.parse().map_err(|_| bad(&format!("bad prime '{k}'")))?;
                    if prime_power(v).map_or(v != 1, |(vp, _)| vp != p) {
                        return Err(bad(&format!("{v} is not a power of {p}")));
                    }
                    exact.insert(p, v);
                }
                SylowBound::Exact(exact)
            }
            (None, Some(c)) => SylowBound::Linear(Formula::new(&id, "sylow_linear", &c)?),
            (None, None) => SylowBound::Unlisted,
            _ => return Err(bad("both sylow forms given")),
        };
        Ok(LieFamilyEntry {
            order: Formula::new(&id, "order", &r.order)?,
            steinberg: Formula::new(&id, "steinberg", &r.steinberg)?,
            alpha: Formula::new(&id, "alpha", &r.alpha)?,
            alpha_label: r.alpha_label,
            id,
            table: r.table,
            name: r.name,
            series,
            twist: r.twist,
            rank_min,
            rank_max,
            variable: r.variable,
            characteristic: r.characteristic,
            parity: r.exponent_parity,
            min_exponent: r.min_exponent,
            beta,
            sylow,
        })
    }

    pub fn matches(&self, name: &FamilyName) -> bool {
        self.series.contains(&name.series)
            && self.twist == name.twist
            && name.rank >= self.rank_min
            && self.rank_max.is_none_or(|m| name.rank <= m)
    }

    /// Why `param = p^k` is not admissible for this row, if it is not.
    pub fn inadmissibility(&self, param: u64) -> Option<String> {
        let Some((p, k)) = prime_power(param) else {
            return Some(format!("{param} is not a prime power"));
        };
        if !self.characteristic.contains(&p) {
            return Some(format!(
                "characteristic {p} not in {:?} for {}",
                self.characteristic, self.name
            ));
        }
        let parity_ok = match self.parity {
            Parity::Any => true,
            Parity::Odd => k % 2 == 1,
            Parity::Even => k % 2 == 0,
        };
        if !parity_ok || k < self.min_exponent {
            return Some(format!("{param} = {p}^{k} does not fit {}", self.name));
        }
        None
    }
}

/// All rows, loaded once from the shipped data file.
#[derive(Clone, Debug)]
pub struct LieTables {
    pub version: u32,
    rows: Vec<LieFamilyEntry>,
}

impl LieTables {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawTables = toml::from_str(text).map_err(|e| Error::TableData(e.to_string()))?;
        if raw.version != 1 {
            return Err(Error::TableData(format!(
                "unsupported version {}",
                raw.version
            )));
        }
        let rows = raw
            .row
            .into_iter()
            .map(LieFamilyEntry::from_raw)
            .collect::<Result<Vec<_>>>()?;
        for (i, r) in rows.iter().enumerate() {
            if rows[..i].iter().any(|s| s.id == r.id) {
                return Err(Error::TableData(format!("duplicate row {}", r.id)));
            }
        }
        Ok(LieTables {
            version: raw.version,
            rows,
        })
    }

    pub fn rows(&self) -> &[LieFamilyEntry] {
        &self.rows
    }

    pub fn row(&self, id: &str) -> Option<&LieFamilyEntry> {
        self.rows.iter().find(|r| r.id == id)
    }

    /// Picks the row for `family` (e.g. `A2`, `2B2`, `C3`) admitting `param`.
    pub fn resolve(&self, family: &str, param: u64) -> Result<LieInstance<'_>> {
        let name: FamilyName = family.parse()?;
        let candidates: Vec<&LieFamilyEntry> =
            self.rows.iter().filter(|r| r.matches(&name)).collect();
        if candidates.is_empty() {
            return Err(Error::Inadmissible(format!("no table row for {name}")));
        }
        let mut reasons = Vec::new();
        for row in candidates {
            match row.inadmissibility(param) {
                None => return LieInstance::new(row, name, param),
                Some(why) => reasons.push(why),
            }
        }
        Err(Error::Inadmissible(reasons.join("; ")))
    }
}

pub fn tables() -> &'static LieTables {
    static TABLES: OnceLock<LieTables> = OnceLock::new();
    TABLES.get_or_init(|| LieTables::parse(ROW_DATA).expect("shipped row data is valid"))
}

/// A family symbol such as `2A3`: twist, series letter and rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FamilyName {
    pub twist: u32,
    pub series: char,
    pub rank: u32,
}

impl std::str::FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let clean: String = s.chars().filter(|c| !"^_ ".contains(*c)).collect();
        let bad = || Error::Inadmissible(format!("cannot read family '{s}'"));
        let letter_at = clean
            .find(|c: char| c.is_ascii_alphabetic())
            .ok_or_else(bad)?;
        let twist = if letter_at == 0 {
            1
        } else {
            clean[..letter_at].parse().map_err(|_| bad())?
        };
        let series = clean[letter_at..]
            .chars()
            .next()
            .map(|c| c.to_ascii_uppercase())
            .filter(|c| ('A'..='G').contains(c))
            .ok_or_else(bad)?;
        let rank: u32 = clean[letter_at + 1..].parse().map_err(|_| bad())?;
        if rank == 0 || !matches!(twist, 1..=3) {
            return Err(bad());
        }
        Ok(FamilyName {
            twist,
            series,
            rank,
        })
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist > 1 {
            write!(f, "{}", self.twist)?;
        }
        write!(f, "{}{}", self.series, self.rank)
    }
}

/// A row evaluated at an admissible parameter.
#[derive(Clone, Debug)]
pub struct LieInstance<'a> {
    pub entry: &'a LieFamilyEntry,
    pub family: FamilyName,
    pub param: u64,
    pub p: u64,
    pub k: u32,
    env: Env,
}

fn p_part(n: &BigUint, p: u64) -> BigUint {
    let p = BigUint::from(p);
    let mut m = n.clone();
    let mut part = BigUint::one();
    while !m.is_zero() && (&m % &p).is_zero() {
        m /= &p;
        part *= &p;
    }
    part
}

impl<'a> LieInstance<'a> {
    fn new(entry: &'a LieFamilyEntry, family: FamilyName, param: u64) -> Result<Self> {
        let (p, k) = prime_power(param).expect("checked admissible");
        let (d, q) = match entry.variable {
            Variable::Q => (1, Quad::int(1, param as i64)),
            Variable::Sqrt => (p, expr::sqrt_prime_power(p, k)),
        };
        let mut env = Env::new(d);
        env.set("q", q);
        env.set_int("p", p as i64);
        env.set_int("n", family.rank as i64);
        Ok(LieInstance {
            entry,
            family,
            param,
            p,
            k,
            env,
        })
    }

    fn positive(&self, what: &str, f: &Formula) -> Result<BigUint> {
        let v = f.expr.eval(&self.env)?;
        let n = v.to_integer().filter(|n| n.is_positive()).ok_or_else(|| {
            Error::TableData(format!(
                "{} at {}: {what} = {} evaluates to {v}, not a positive integer",
                self.entry.id, self.param, f.source
            ))
        })?;
        Ok(n.to_biguint().unwrap())
    }

    pub fn order(&self) -> Result<BigUint> {
        self.positive("order", &self.entry.order)
    }

    pub fn alpha_degree(&self) -> Result<BigUint> {
        self.positive("alpha(1)", &self.entry.alpha)
    }

    pub fn alpha_label(&self) -> &str {
        self.entry.alpha_label.as_deref().unwrap_or("alpha")
    }

    pub fn beta_label(&self) -> &str {
        match &self.entry.beta {
            BetaDegree::Steinberg => "Steinberg",
            BetaDegree::Formula { label, .. } => label,
        }
    }

    pub fn beta_degree(&self) -> Result<BigUint> {
        match &self.entry.beta {
            BetaDegree::Steinberg => Ok(p_part(&self.order()?, self.p)),
            BetaDegree::Formula { formula, .. } => self.positive("beta(1)", formula),
        }
    }

    /// The q-power written in the order formula.
    pub fn steinberg_degree(&self) -> Result<BigUint> {
        self.positive("steinberg", &self.entry.steinberg)
    }

    pub fn order_p_part(&self) -> Result<BigUint> {
        Ok(p_part(&self.order()?, self.p))
    }

    /// Tabulated bound on the exponent of a Sylow `p`-subgroup, as a power of `p`.
    pub fn sylow_bound(&self) -> Result<Option<u64>> {
        match &self.entry.sylow {
            SylowBound::Exact(m) => Ok(m.get(&self.p).copied()),
            SylowBound::Linear(c) => {
                let c = self.positive("sylow bound", c)?;
                let limit = (c * self.p).to_u64().ok_or_else(|| {
                    Error::TableData(format!("{}: sylow bound overflows", self.entry.id))
                })?;
                let mut b = 1u64;
                while b * self.p <= limit {
                    b *= self.p;
                }
                Ok(Some(b))
            }
            SylowBound::Unlisted => Ok(None),
        }
    }

    /// Row-level invariants: integrality, degrees divide the order, and the
    /// Steinberg degree is the full `p`-part.
    pub fn check_invariants(&self) -> Result<()> {
        let order = self.order()?;
        for (what, deg) in [
            ("alpha(1)", self.alpha_degree()?),
            ("beta(1)", self.beta_degree()?),
        ] {
            if !(&order % &deg).is_zero() {
                return Err(Error::TableData(format!(
                    "{} at {}: {what} = {deg} does not divide {order}",
                    self.entry.id, self.param
                )));
            }
        }
        let st = self.steinberg_degree()?;
        if st != p_part(&order, self.p) {
            return Err(Error::TableData(format!(
                "{} at {}: q-power {st} is not the {}-part of {order}",
                self.entry.id, self.param, self.p
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    /// Only the part prime to `p` could be checked.
    Partial,
    /// The strongest available target does not divide, but that target
    /// overestimates the exponent.
    Inconclusive,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Partial => "partial",
            Verdict::Inconclusive => "inconclusive",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetSource {
    /// Exponent computed from class data of a constructed group.
    Computed,
    /// `p'`-part of the order times the tabulated Sylow exponent.
    TableBound,
    /// `p'`-part of the order only.
    PrimeToP,
}

/// Whether `(|S|/alpha(1)) * (|S|/beta(1))` is a multiple of the exponent.
#[derive(Clone, Debug, Serialize)]
pub struct PairDivisibility {
    pub family: String,
    pub row: String,
    pub param: u64,
    pub order: String,
    pub alpha_label: String,
    pub alpha_degree: String,
    pub beta_label: String,
    pub beta_degree: String,
    pub product: String,
    pub target: String,
    pub target_source: TargetSource,
    pub verdict: Verdict,
}

/// Checks the pair condition for a row, using `computed_exponent` when the
/// group has been constructed and the tabulated bound otherwise.
pub fn pair_divisibility_check(
    family: &str,
    param: u64,
    computed_exponent: Option<u64>,
) -> Result<PairDivisibility> {
    let inst = tables().resolve(family, param)?;
    inst.check_invariants()?;
    let order = inst.order()?;
    let alpha = inst.alpha_degree()?;
    let beta = inst.beta_degree()?;
    let product = (&order / &alpha) * (&order / &beta);
    let p_prime = &order / p_part(&order, inst.p);
    let (target, source) = match (computed_exponent, inst.sylow_bound()?) {
        (Some(e), _) => (BigUint::from(e), TargetSource::Computed),
        (None, Some(b)) => (&p_prime * b, TargetSource::TableBound),
        (None, None) => (p_prime, TargetSource::PrimeToP),
    };
    let divides = (&product % &target).is_zero();
    let verdict = match (source, divides) {
        (TargetSource::PrimeToP, true) => Verdict::Partial,
        (_, true) => Verdict::Pass,
        (TargetSource::Computed, false) => Verdict::Fail,
        (_, false) => Verdict::Inconclusive,
    };
    Ok(PairDivisibility {
        family: inst.family.to_string(),
        row: inst.entry.id.clone(),
        param,
        order: order.to_string(),
        alpha_label: inst.alpha_label().to_string(),
        alpha_degree: alpha.to_string(),
        beta_label: inst.beta_label().to_string(),
        beta_degree: beta.to_string(),
        product: product.to_string(),
        target: target.to_string(),
        target_source: source,
        verdict,
    })
}

pub fn order_of(family: &str, param: u64) -> Result<BigUint> {
    tables().resolve(family, param)?.order()
}

pub fn alpha_degree(family: &str, param: u64) -> Result<BigUint> {
    tables().resolve(family, param)?.alpha_degree()
}

pub fn beta_degree(family: &str, param: u64) -> Result<BigUint> {
    tables().resolve(family, param)?.beta_degree()
}

pub(crate) fn sylow_exponent_from_orders(orders: &[u64], p: u64) -> u64 {
    orders
        .iter()
        .map(|&o| {
            let mut part = 1;
            let mut o = o;
            while o % p == 0 {
                o /= p;
                part *= p;
            }
            part
        })
        .max()
        .unwrap_or(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_data_loads() {
        let t = tables();
        assert_eq!(t.version, 1);
        assert_eq!(t.rows().len(), 20);
        assert!(t.row("G2").is_some());
    }

    #[test]
    fn family_names() {
        let n: FamilyName = "2A3".parse().unwrap();
        assert_eq!((n.twist, n.series, n.rank), (2, 'A', 3));
        let n: FamilyName = "^3D_4".parse().unwrap();
        assert_eq!(n.to_string(), "3D4");
        assert!("A".parse::<FamilyName>().is_err());
        assert!("H3".parse::<FamilyName>().is_err());
        assert!("A0".parse::<FamilyName>().is_err());
    }

    #[test]
    fn rank_one_rows_split_by_parity() {
        let t = tables();
        assert_eq!(t.resolve("A1", 8).unwrap().entry.id, "A1-sl2");
        assert_eq!(t.resolve("A1", 4).unwrap().entry.id, "A1-psl2");
        assert_eq!(t.resolve("A1", 9).unwrap().entry.id, "A1-psl2");
        assert!(matches!(t.resolve("A1", 27), Err(Error::Inadmissible(_))));
        assert!(matches!(t.resolve("A1", 2), Err(Error::Inadmissible(_))));
        assert!(matches!(t.resolve("A1", 25), Err(Error::Inadmissible(_))));
        assert!(matches!(t.resolve("A2", 6), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn sylow_bounds() {
        let t = tables();
        assert_eq!(t.resolve("A2", 3).unwrap().sylow_bound().unwrap(), Some(3));
        assert_eq!(t.resolve("A2", 4).unwrap().sylow_bound().unwrap(), Some(4));
        // n*p = 3*2 -> 4; 3*3 -> 9
        assert_eq!(t.resolve("A3", 2).unwrap().sylow_bound().unwrap(), Some(4));
        assert_eq!(t.resolve("A3", 3).unwrap().sylow_bound().unwrap(), Some(9));
        assert_eq!(t.resolve("G2", 3).unwrap().sylow_bound().unwrap(), None);
    }

    #[test]
    fn p_parts() {
        assert_eq!(p_part(&BigUint::from(504u32), 2), BigUint::from(8u32));
        assert_eq!(p_part(&BigUint::from(5616u32), 3), BigUint::from(27u32));
        assert_eq!(sylow_exponent_from_orders(&[1, 2, 4, 6, 12], 2), 4);
    }

    #[test]
    fn rejects_bad_rows() {
        let base = r#"
version = 1
[[row]]
id = "X"
table = 1
name = "X"
series = ["A"]
rank = 1
characteristic = [2]
order = "q"
steinberg = "q"
alpha = "1"
beta = "steinberg"
"#;
        assert!(LieTables::parse(base).is_ok());
        assert!(LieTables::parse(&base.replace("\"q\"\nsteinberg", "\"q*(\"\nsteinberg")).is_err());
        assert!(LieTables::parse(&base.replace("version = 1", "version = 2")).is_err());
        assert!(LieTables::parse(&base.replace("rank = 1", "rank = 1\nrank_min = 1")).is_err());
        assert!(LieTables::parse(&format!("{base}\ncolour = 1")).is_err());
    }
}
