//! Character searches on a non-abelian simple group `S`, optionally restricted
//! to characters that are invariant under (or extend to) an overgroup
//! realizing `Aut(S)`.

use serde::Serialize;

use super::{is_psl2_odd_power_of_three, Verdict};
use crate::builders::{aut_overgroup, AutOvergroup, GroupSpec};
use crate::chartab::{aut_action, character_table, has_extension, CharacterTable, ClassFusion};
use crate::config::Config;
use crate::error::{Error, Result};

/// How much of "extends to `Aut(S)`" could be checked for the candidates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerificationLevel {
    /// No overgroup supplied; every character is a candidate.
    Unfiltered,
    /// Candidates are the characters fixed by every outer generator.
    Invariance,
    /// As `Invariance`, and the overgroup's table was computed, so each
    /// candidate is also known to extend or not.
    Extension,
}

/// The characters of `S` allowed as candidates: the invariant ones. Which of
/// them extend is recorded separately when the overgroup can be tabulated.
#[derive(Clone, Debug, Serialize)]
pub struct AutFilter {
    pub level: VerificationLevel,
    /// Outer generator names with the permutation each induces on the rows.
    pub outer: Vec<(String, Vec<usize>)>,
    pub invariant: Vec<usize>,
    pub extendable: Option<Vec<usize>>,
    #[serde(skip)]
    allowed: Vec<bool>,
}

impl AutFilter {
    pub fn unfiltered(table: &CharacterTable) -> Self {
        AutFilter {
            level: VerificationLevel::Unfiltered,
            outer: Vec::new(),
            invariant: (0..table.len()).collect(),
            extendable: None,
            allowed: vec![true; table.len()],
        }
    }

    /// Invariance under the outer generators of `aut`, plus a genuine
    /// extension check when the overgroup's table fits within `config`.
    pub fn new(table: &CharacterTable, aut: &AutOvergroup, config: &Config) -> Result<Self> {
        if !aut.subgroup.same_group(table.group()) {
            return Err(Error::Hypothesis(
                "the overgroup's normal subgroup is not the tabulated group".into(),
            ));
        }
        let outer = aut
            .outer
            .iter()
            .map(|(name, x)| Ok((name.clone(), aut_action(table, x)?)))
            .collect::<Result<Vec<_>>>()?;
        let invariant: Vec<usize> = (0..table.len())
            .filter(|&i| outer.iter().all(|(_, perm)| perm[i] == i))
            .collect();
        let extendable = match character_table(&aut.overgroup, config) {
            Ok(over) => {
                let fusion = ClassFusion::by_membership(table.classes(), over.classes())?;
                Some(
                    invariant
                        .iter()
                        .copied()
                        .filter(|&i| has_extension(&over, &fusion, table.character(i)).is_some())
                        .collect::<Vec<_>>(),
                )
            }
            Err(Error::CapExceeded { .. } | Error::TooManyClasses { .. }) => None,
            Err(e) => return Err(e),
        };
        let level = if extendable.is_some() {
            VerificationLevel::Extension
        } else {
            VerificationLevel::Invariance
        };
        let mut allowed = vec![false; table.len()];
        for &i in &invariant {
            allowed[i] = true;
        }
        Ok(AutFilter {
            level,
            outer,
            invariant,
            extendable,
            allowed,
        })
    }

    /// Filter for a spec with a constructible automorphism overgroup; the
    /// table must be that of `aut_overgroup(spec).subgroup`.
    pub fn for_spec(table: &CharacterTable, spec: &GroupSpec, config: &Config) -> Result<Self> {
        match aut_overgroup(spec)? {
            Some(aut) => Self::new(table, &aut, config),
            None => Ok(Self::unfiltered(table)),
        }
    }

    pub fn allows(&self, i: usize) -> bool {
        self.allowed[i]
    }

    /// Whether character `i` extends to the overgroup, when that is known.
    pub fn extends(&self, i: usize) -> Option<bool> {
        self.extendable.as_ref().map(|e| e.contains(&i))
    }

    fn flags(&self) -> Vec<String> {
        let mut flags = Vec::new();
        if let Some(ext) = &self.extendable {
            let lost: Vec<usize> = self
                .invariant
                .iter()
                .copied()
                .filter(|i| !ext.contains(i))
                .collect();
            if !lost.is_empty() {
                flags.push(format!(
                    "invariant characters without an extension: {lost:?}"
                ));
            }
        }
        flags
    }
}

fn require_simple(table: &CharacterTable) -> Result<()> {
    let g = table.group();
    if g.is_nonabelian_simple(table.classes()) {
        Ok(())
    } else {
        Err(Error::NotSimple(format!("group of order {}", g.order())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairWitness {
    pub alpha: usize,
    pub beta: usize,
    pub alpha_degree: u64,
    pub beta_degree: u64,
    pub product: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct PairCheckResult {
    pub spec: String,
    pub order: u64,
    pub exponent: u64,
    pub level: VerificationLevel,
    /// Non-principal characters allowed by the filter.
    pub candidates: Vec<usize>,
    pub pair: Option<PairWitness>,
    /// Every qualifying pair `(i, j)` with `i < j`.
    pub qualifying_pairs: Vec<(usize, usize)>,
    /// Verdict over the candidates above.
    pub verdict: Verdict,
    /// First qualifying pair of characters that also extend to the
    /// overgroup, and the verdict of that search, when extension was checked.
    pub extension_pair: Option<PairWitness>,
    pub extension_verdict: Option<Verdict>,
    pub flags: Vec<String>,
}

fn qualifying(table: &CharacterTable, candidates: &[usize]) -> Vec<(usize, usize)> {
    let order = table.order();
    let exponent = table.exponent() as u128;
    let degrees = table.degrees();
    let mut out = Vec::new();
    for (a, &i) in candidates.iter().enumerate() {
        for &j in &candidates[a + 1..] {
            let product = (order / degrees[i]) as u128 * (order / degrees[j]) as u128;
            if product.is_multiple_of(exponent) {
                out.push((i, j));
            }
        }
    }
    out
}

fn pair_witness(table: &CharacterTable, (i, j): (usize, usize)) -> PairWitness {
    let order = table.order();
    let degrees = table.degrees();
    PairWitness {
        alpha: i,
        beta: j,
        alpha_degree: degrees[i],
        beta_degree: degrees[j],
        product: ((order / degrees[i]) as u128 * (order / degrees[j]) as u128).to_string(),
    }
}

/// Searches distinct non-principal candidates `alpha`, `beta` with
/// `exp(S) | (|S|/alpha(1)) (|S|/beta(1))`.
pub fn pair_check(
    table: &CharacterTable,
    spec: &str,
    filter: &AutFilter,
) -> Result<PairCheckResult> {
    require_simple(table)?;
    let order = table.order();
    let candidates: Vec<usize> = (1..table.len()).filter(|&i| filter.allows(i)).collect();
    let qualifying_pairs = qualifying(table, &candidates);
    let pair = qualifying_pairs.first().map(|&p| pair_witness(table, p));
    let (extension_pair, extension_verdict) = match &filter.extendable {
        Some(ext) => {
            let ext: Vec<usize> = candidates
                .iter()
                .copied()
                .filter(|i| ext.contains(i))
                .collect();
            let p = qualifying(table, &ext)
                .first()
                .map(|&p| pair_witness(table, p));
            let v = Verdict::from_bool(p.is_some());
            (p, Some(v))
        }
        None => (None, None),
    };
    let mut flags = filter.flags();
    if pair.is_none() {
        if filter.level != VerificationLevel::Unfiltered && is_psl2_odd_power_of_three(order) {
            flags.push("genuine exception: PSL(2,3^f) with odd f".into());
        } else {
            flags.push("no qualifying pair".into());
        }
    } else if extension_verdict == Some(Verdict::Fail) {
        flags.push("no qualifying pair among characters that extend to the overgroup".into());
    }
    Ok(PairCheckResult {
        spec: spec.to_string(),
        order,
        exponent: table.exponent(),
        level: filter.level,
        candidates,
        verdict: Verdict::from_bool(pair.is_some()),
        pair,
        qualifying_pairs,
        extension_pair,
        extension_verdict,
        flags,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PerElementResult {
    pub class: usize,
    pub order: u64,
    pub level: VerificationLevel,
    /// `(character, degree, |S| / degree)`.
    pub witness: Option<(usize, u64, u64)>,
    pub verdict: Verdict,
    /// First witness among candidates that also extend, when extension was checked.
    pub extension_witness: Option<(usize, u64, u64)>,
}

/// The first non-principal candidate `alpha` (by increasing degree) with
/// `o(x) | |S| / alpha(1)` for `x` in class `class`.
pub fn per_element_check(
    table: &CharacterTable,
    class: usize,
    filter: &AutFilter,
) -> Result<PerElementResult> {
    require_simple(table)?;
    let classes = table.classes();
    if class >= classes.len() {
        return Err(Error::Hypothesis(format!("no class {class}")));
    }
    let o = classes.element_orders[class];
    let order = table.order();
    let witnesses = || {
        (1..table.len())
            .filter(|&i| filter.allows(i))
            .map(|i| (i, table.degrees()[i], order / table.degrees()[i]))
            .filter(|&(_, _, q)| q % o == 0)
    };
    let witness = witnesses().next();
    let extension_witness = witnesses().find(|&(i, _, _)| filter.extends(i) == Some(true));
    Ok(PerElementResult {
        class,
        order: o,
        level: filter.level,
        verdict: Verdict::from_bool(witness.is_some()),
        witness,
        extension_witness,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ExceptionReport {
    pub q: u64,
    pub degrees: Vec<u64>,
    /// Non-principal characters fixed by the diagonal and field automorphisms.
    pub invariant_nonprincipal: Vec<(usize, u64)>,
    pub only_steinberg_invariant: bool,
    /// The two characters of degree `(q-1)/2`.
    pub half_degree_rows: Vec<usize>,
    pub half_rows_fixed_by_field: bool,
    pub half_rows_swapped_by_diagonal: bool,
    /// Every character of degree `q-1` or `q+1` is moved by the field automorphism.
    pub field_moves_q_pm_1: bool,
    /// Non-principal characters extending to the overgroup, when its table was computed.
    pub extendable_nonprincipal: Option<Vec<(usize, u64)>>,
    pub pair_check: PairCheckResult,
    /// Element orders with no candidate in the per-element search.
    pub per_element_failures: Vec<u64>,
    pub passed: bool,
}

/// Reproduces the behaviour of `PSL(2, 3^f)`, `f` odd, under its diagonal and
/// field automorphisms.
pub fn exception_check(f: u32, config: &Config) -> Result<ExceptionReport> {
    if f < 3 || f.is_multiple_of(2) {
        return Err(Error::Hypothesis(format!(
            "f = {f} must be odd and at least 3"
        )));
    }
    let q = 3u64
        .checked_pow(f)
        .ok_or_else(|| Error::Hypothesis(format!("3^{f} overflows")))?;
    let spec = GroupSpec::Psl2(q);
    let aut = aut_overgroup(&spec)?.expect("PSL(2,q) has an automorphism overgroup");
    let table = character_table(&aut.subgroup, config)?;
    let filter = AutFilter::new(&table, &aut, config)?;
    let action = |name: &str| -> &Vec<usize> {
        &filter
            .outer
            .iter()
            .find(|(n, _)| n == name)
            .expect("named outer generator")
            .1
    };
    let (diag, field) = (action("diagonal"), action("field"));
    let deg = table.degrees();
    let mut degrees = deg.to_vec();
    degrees.dedup();
    let invariant_nonprincipal: Vec<(usize, u64)> = filter
        .invariant
        .iter()
        .filter(|&&i| i > 0)
        .map(|&i| (i, deg[i]))
        .collect();
    let only_steinberg_invariant =
        invariant_nonprincipal.len() == 1 && invariant_nonprincipal[0].1 == q;
    let half_degree_rows: Vec<usize> = (0..deg.len()).filter(|&i| deg[i] == (q - 1) / 2).collect();
    let half_ok = half_degree_rows.len() == 2;
    let half_rows_fixed_by_field = half_ok && half_degree_rows.iter().all(|&i| field[i] == i);
    let half_rows_swapped_by_diagonal = half_ok && diag[half_degree_rows[0]] == half_degree_rows[1];
    let pm: Vec<usize> = (0..deg.len())
        .filter(|&i| deg[i] == q - 1 || deg[i] == q + 1)
        .collect();
    let field_moves_q_pm_1 = !pm.is_empty() && pm.iter().all(|&i| field[i] != i);
    let extendable_nonprincipal = filter.extendable.as_ref().map(|e| {
        e.iter()
            .filter(|&&i| i > 0)
            .map(|&i| (i, deg[i]))
            .collect::<Vec<_>>()
    });
    let extension_ok = extendable_nonprincipal
        .as_ref()
        .is_none_or(|e| e.len() == 1 && e[0].1 == q);
    let pair_check = pair_check(&table, &spec.to_string(), &filter)?;
    let mut per_element_failures = Vec::new();
    for k in 0..table.classes().len() {
        let r = per_element_check(&table, k, &filter)?;
        if !r.verdict.passed() && !per_element_failures.contains(&r.order) {
            per_element_failures.push(r.order);
        }
    }
    let passed = only_steinberg_invariant
        && half_rows_fixed_by_field
        && half_rows_swapped_by_diagonal
        && field_moves_q_pm_1
        && extension_ok
        && !pair_check.verdict.passed();
    Ok(ExceptionReport {
        q,
        degrees,
        invariant_nonprincipal,
        only_steinberg_invariant,
        half_degree_rows,
        half_rows_fixed_by_field,
        half_rows_swapped_by_diagonal,
        field_moves_q_pm_1,
        extendable_nonprincipal,
        pair_check,
        per_element_failures,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::build;

    #[test]
    fn unfiltered_allows_everything() {
        let t = character_table(&build(&GroupSpec::Alt(5)).unwrap(), &Config::default()).unwrap();
        let f = AutFilter::unfiltered(&t);
        assert!((0..t.len()).all(|i| f.allows(i)));
        assert!(f.flags().is_empty());
    }

    #[test]
    fn exception_needs_odd_exponent() {
        assert!(exception_check(1, &Config::default()).is_err());
        assert!(exception_check(4, &Config::default()).is_err());
    }
}
