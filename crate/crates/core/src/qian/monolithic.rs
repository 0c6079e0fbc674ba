//! Witness search in a group `G` with a unique minimal normal subgroup
//! `M = S_1 x .. x S_n` (non-abelian): for an element `g`, find a non-principal
//! `lambda` of `M` and `h <= n` such that `lambda` extends to `I = I_G(lambda)`,
//! `g^(2^h)` lies in `I`, and `2^h o(g^r)` divides `|M| / lambda(1)`, where `r`
//! is the order of `gM` in `G/M`.
//!
//! The search scans characters by increasing degree and reports the first
//! witness; this is a witness, not a reconstruction of any particular choice.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use super::{is_psl2_odd_power_of_three, Verdict};
use crate::builders::{monolith, wreath_embedding};
use crate::chartab::{
    character_table, conjugation_class_map, has_extension, inertia_group, restrict, CharacterTable,
    ClassFusion,
};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, ClassData, PermGroup, Permutation};

#[derive(Clone, Debug, Serialize)]
pub struct CandidateCheck {
    pub lambda: usize,
    pub lambda_degree: u64,
    pub h: u32,
    pub inertia_order: String,
    pub power_in_inertia: bool,
    /// Index of an irreducible of `I` restricting to `lambda`.
    pub extension: Option<usize>,
    /// `|M| / lambda(1)`.
    pub quotient: u64,
    /// `2^h o(g^r)`.
    pub target: u64,
    pub divisible: bool,
    pub valid: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MonolithicScenario {
    pub order: String,
    pub socle_order: String,
    pub n: usize,
    pub factor_order: String,
    /// The factors are `PSL(2, 3^f)` with odd `f`, where `h > 0` may be needed.
    pub exceptional_factor: bool,
    pub element: String,
    pub element_order: u64,
    /// Orbits of `<g>` on the simple factors.
    pub factor_orbits: Vec<Vec<usize>>,
    /// Length of the orbit containing the first factor.
    pub orbit_length: usize,
    pub r: u64,
    pub order_g_r: u64,
    pub witness: Option<CandidateCheck>,
    /// First witness with `h = 0`, when one exists.
    pub h0_witness: Option<CandidateCheck>,
    pub revalidated: bool,
    pub verdict: Verdict,
    pub flags: Vec<String>,
}

/// Data shared by every candidate check in one group.
pub struct MonolithicContext<'a> {
    group: &'a PermGroup,
    config: &'a Config,
    classes: ClassData,
    socle: PermGroup,
    factors: Vec<PermGroup>,
    m_table: CharacterTable,
    inertia: HashMap<usize, (PermGroup, Option<usize>, usize)>,
    i_tables: Vec<CharacterTable>,
}

impl<'a> MonolithicContext<'a> {
    pub fn new(group: &'a PermGroup, config: &'a Config) -> Result<Self> {
        let classes = conjugacy_classes(group, config.cap)?;
        let socle = monolith(group, &classes)?;
        let embedding = wreath_embedding(group, &classes, config.cap)?;
        let m_table = character_table(&socle, config)?;
        Ok(MonolithicContext {
            group,
            config,
            classes,
            socle,
            factors: embedding.factors,
            m_table,
            inertia: HashMap::new(),
            i_tables: Vec::new(),
        })
    }

    pub fn socle_table(&self) -> &CharacterTable {
        &self.m_table
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    /// `(r, o(g^r))` with `r` the order of `gM` in `G/M`.
    pub fn r_and_order(&self, g: &Permutation) -> (u64, u64) {
        let mut r = 1u64;
        let mut x = g.clone();
        while !self.socle.contains(&x) {
            x = x.mul(g);
            r += 1;
        }
        (r, x.order())
    }

    fn factor_permutation(&self, g: &Permutation) -> Result<Vec<usize>> {
        (0..self.n())
            .map(|i| {
                let images: Vec<Permutation> = self.factors[i]
                    .nontrivial_generators()
                    .map(|s| s.conjugate_by(g))
                    .collect();
                self.factors
                    .iter()
                    .position(|f| images.iter().all(|s| f.contains(s)))
                    .ok_or_else(|| Error::Hypothesis("element does not permute the factors".into()))
            })
            .collect()
    }

    /// Inertia group, extension index and table slot for `lambda`, cached.
    fn inertia_data(&mut self, lambda: usize) -> Result<(PermGroup, Option<usize>, usize)> {
        if let Some(v) = self.inertia.get(&lambda) {
            return Ok(v.clone());
        }
        let i_group = inertia_group(self.group, &self.m_table, lambda)?;
        let slot = match self
            .i_tables
            .iter()
            .position(|t| t.group().same_group(&i_group))
        {
            Some(s) => s,
            None => {
                self.i_tables.push(character_table(&i_group, self.config)?);
                self.i_tables.len() - 1
            }
        };
        let i_table = &self.i_tables[slot];
        let fusion = ClassFusion::by_membership(self.m_table.classes(), i_table.classes())?;
        let ext = has_extension(i_table, &fusion, self.m_table.character(lambda));
        let v = (i_group, ext, slot);
        self.inertia.insert(lambda, v.clone());
        Ok(v)
    }

    /// Evaluates all three conditions for `lambda` and `h`.
    pub fn check_candidate(
        &mut self,
        g: &Permutation,
        lambda: usize,
        h: u32,
    ) -> Result<CandidateCheck> {
        if lambda == 0 || lambda >= self.m_table.len() {
            return Err(Error::Hypothesis(format!(
                "lambda = {lambda} is not a non-principal index"
            )));
        }
        let (_, o_gr) = self.r_and_order(g);
        let d = self.m_table.degrees()[lambda];
        let quotient = self.m_table.order() / d;
        let target = 1u64
            .checked_shl(h)
            .and_then(|t| t.checked_mul(o_gr))
            .ok_or_else(|| Error::Hypothesis(format!("2^{h} o(g^r) overflows")))?;
        let (i_group, ext, _) = self.inertia_data(lambda)?;
        let power = g.pow(1i64 << h.min(62));
        let power_in_inertia = i_group.contains(&power);
        let divisible = quotient.is_multiple_of(target);
        Ok(CandidateCheck {
            lambda,
            lambda_degree: d,
            h,
            inertia_order: i_group.order().to_string(),
            power_in_inertia,
            extension: ext,
            quotient,
            target,
            divisible,
            valid: power_in_inertia && ext.is_some() && divisible,
        })
    }

    /// First `lambda` (by increasing degree) with a valid `h <= max_h`,
    /// taking the smallest such `h`.
    fn search(&mut self, g: &Permutation, max_h: u32) -> Result<Option<CandidateCheck>> {
        let (_, o_gr) = self.r_and_order(g);
        let order = self.m_table.order();
        for lambda in 1..self.m_table.len() {
            let quotient = order / self.m_table.degrees()[lambda];
            let hs: Vec<u32> = (0..=max_h)
                .filter(|&h| quotient.is_multiple_of(o_gr << h))
                .collect();
            if hs.is_empty() {
                continue;
            }
            for h in hs {
                let c = self.check_candidate(g, lambda, h)?;
                if c.extension.is_none() {
                    break;
                }
                if c.valid {
                    return Ok(Some(c));
                }
            }
        }
        Ok(None)
    }

    /// Rechecks a witness without the cached inertia group or fusion:
    /// stabilizer by enumerating `G`, a fresh restriction with a norm check,
    /// and the divisibility arithmetic.
    pub fn revalidate(&self, g: &Permutation, c: &CandidateCheck) -> Result<bool> {
        let lambda = self.m_table.character(c.lambda);
        let m_classes = self.m_table.classes();
        let power = g.pow(1i64 << c.h.min(62));
        let mut stabilizer = Vec::new();
        for x in self.classes.elements() {
            let map = conjugation_class_map(m_classes, x)?;
            if map.iter().enumerate().all(|(i, &j)| lambda[j] == lambda[i]) {
                stabilizer.push(x);
            }
        }
        let stab_order = BigUint::from(stabilizer.len());
        let power_fixed = stabilizer.iter().any(|x| **x == power);
        let Some(ext) = c.extension else {
            return Ok(false);
        };
        let Some(i_table) = self.i_tables.iter().find(|t| {
            t.group().order() == &stab_order && stabilizer.iter().all(|x| t.group().contains(x))
        }) else {
            return Ok(false);
        };
        let fusion = ClassFusion::by_membership(m_classes, i_table.classes())?;
        let chi = i_table.character(ext);
        let restricts = restrict(chi, &fusion) == *lambda;
        let norm_one = i_table.inner_product(chi, chi)?.is_one();
        let m_order = self.m_table.order();
        let d = self.m_table.degrees()[c.lambda];
        let (_, o_gr) = self.r_and_order(g);
        let arithmetic = m_order.is_multiple_of(d) && (m_order / d).is_multiple_of((1u64 << c.h) * o_gr);
        Ok(power_fixed && restricts && norm_one && arithmetic)
    }

    /// `M` is the unique minimal normal subgroup: every non-trivial normal
    /// closure of a class representative contains it.
    fn socle_is_unique_minimal(&self) -> Result<bool> {
        for rep in self.classes.representatives.iter().skip(1) {
            if !self
                .group
                .normal_closure(std::slice::from_ref(rep))?
                .contains_group(&self.socle)
            {
                return Ok(false);
            }
        }
        Ok(!self.socle.is_abelian())
    }

    pub fn scenario(&mut self, g: &Permutation) -> Result<MonolithicScenario> {
        self.group.require_member(g)?;
        let n = self.n();
        let sigma = self.factor_permutation(g)?;
        let mut factor_orbits: Vec<Vec<usize>> = Vec::new();
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut x = sigma[start];
            while x != start {
                seen[x] = true;
                orbit.push(x);
                x = sigma[x];
            }
            orbit.sort_unstable();
            factor_orbits.push(orbit);
        }
        let orbit_length = factor_orbits[0].len();
        let (r, order_g_r) = self.r_and_order(g);
        let factor_order = self.factors[0].order().clone();
        let exceptional_factor = factor_order
            .to_u64()
            .is_some_and(is_psl2_odd_power_of_three);
        let witness = self.search(g, n as u32)?;
        let h0_witness = match &witness {
            Some(w) if w.h == 0 => Some(w.clone()),
            _ => self.search(g, 0)?,
        };
        let mut flags = vec!["witness, not construction".to_string()];
        let mut revalidated = self.socle_is_unique_minimal()?;
        if !revalidated {
            flags.push("socle is not the unique minimal normal subgroup".into());
        }
        for w in witness.iter().chain(&h0_witness) {
            if !self.revalidate(g, w)? {
                revalidated = false;
                flags.push(format!("witness lambda = {} failed revalidation", w.lambda));
            }
        }
        if witness.is_none() {
            flags.push("RED FLAG: no witness found for any h <= n".into());
        }
        if h0_witness.is_none() && !exceptional_factor {
            flags.push("RED FLAG: no witness with h = 0 for a non-exceptional factor".into());
        }
        let ok = witness.is_some() && revalidated && (exceptional_factor || h0_witness.is_some());
        Ok(MonolithicScenario {
            order: self.group.order().to_string(),
            socle_order: self.socle.order().to_string(),
            n,
            factor_order: factor_order.to_string(),
            exceptional_factor,
            element: g.to_string(),
            element_order: g.order(),
            factor_orbits,
            orbit_length,
            r,
            order_g_r,
            witness,
            h0_witness,
            revalidated,
            verdict: Verdict::from_bool(ok),
            flags,
        })
    }
}

/// Builds the context for `group` and runs the witness search for `g`.
pub fn monolithic_witness_check(
    group: &PermGroup,
    g: &Permutation,
    config: &Config,
) -> Result<MonolithicScenario> {
    MonolithicContext::new(group, config)?.scenario(g)
}

/// Evaluates a single `(lambda, h)` pair for `g` in `group`.
pub fn check_candidate(
    group: &PermGroup,
    g: &Permutation,
    lambda: usize,
    h: u32,
    config: &Config,
) -> Result<CandidateCheck> {
    group.require_member(g)?;
    MonolithicContext::new(group, config)?.check_candidate(g, lambda, h)
}
