//! Class fusion, restriction, induction and the conjugation action on characters.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::table::{CharacterTable, ClassFunction};
use crate::cyclo::CycloNum;
use crate::error::{Error, Result};
use crate::perm::{ClassData, PermGroup, Permutation};

/// Where each class of a subgroup (or each class under an automorphism) lands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFusion {
    pub map: Vec<usize>,
}

impl ClassFusion {
    /// Fuses the classes of `sub` into those of `group` by membership lookup.
    pub fn by_membership(sub: &ClassData, group: &ClassData) -> Result<Self> {
        let mut map = Vec::with_capacity(sub.len());
        for (k, rep) in sub.representatives.iter().enumerate() {
            let i = group.class_of(rep).ok_or_else(|| {
                Error::Fusion(format!("representative {rep} lies outside the group"))
            })?;
            if group.element_orders[i] != sub.element_orders[k] {
                return Err(Error::Fusion(format!(
                    "class {k} of order {} maps to class {i} of order {}",
                    sub.element_orders[k], group.element_orders[i]
                )));
            }
            map.push(i);
        }
        let fusion = ClassFusion { map };
        fusion.check_power_maps(sub, group)?;
        Ok(fusion)
    }

    pub fn identity(classes: usize) -> Self {
        ClassFusion {
            map: (0..classes).collect(),
        }
    }

    fn check_power_maps(&self, sub: &ClassData, group: &ClassData) -> Result<()> {
        for k in 0..sub.len() {
            for e in [2i64, 3, -1] {
                let lhs = self.map[sub.power_class(k, e)];
                let rhs = group.power_class(self.map[k], e);
                if lhs != rhs {
                    return Err(Error::Fusion(format!(
                        "power map {e} disagrees on class {k}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Restriction of a class function of `G` along a fusion.
pub fn restrict(chi: &[CycloNum], fusion: &ClassFusion) -> ClassFunction {
    fusion.map.iter().map(|&i| chi[i].clone()).collect()
}

/// `theta^G(g_i) = |G| / (|H| |C_i|) * sum over H-classes k fusing into i of |C^H_k| theta(h_k)`.
pub fn induce(
    theta: &[CycloNum],
    fusion: &ClassFusion,
    sub: &ClassData,
    group: &ClassData,
) -> ClassFunction {
    let mut sums: Vec<CycloNum> = group
        .element_orders
        .iter()
        .map(|&o| CycloNum::zero(o as u32))
        .collect();
    for (k, &i) in fusion.map.iter().enumerate() {
        let term = theta[k].scale(&BigRational::from_integer(BigInt::from(sub.sizes[k])));
        sums[i] = &sums[i] + &term;
    }
    sums.into_iter()
        .enumerate()
        .map(|(i, s)| {
            s.scale(&BigRational::new(
                BigInt::from(group.group_order),
                BigInt::from(sub.group_order) * BigInt::from(group.sizes[i]),
            ))
        })
        .collect()
}

/// For `x` normalizing the group of `classes`: the class of `x g_i x^-1` for each `i`.
pub fn conjugation_class_map(classes: &ClassData, x: &Permutation) -> Result<Vec<usize>> {
    let x_inv = x.inverse();
    classes
        .representatives
        .iter()
        .map(|g| {
            classes
                .class_of(&g.conjugate_by(&x_inv))
                .ok_or(Error::NotNormalizing)
        })
        .collect()
}

/// The permutation of irreducible indices induced by `chi -> chi^x`,
/// where `chi^x(g) = chi(x g x^-1)`.
pub fn aut_action(table: &CharacterTable, x: &Permutation) -> Result<Vec<usize>> {
    if x.degree() != table.group().degree() || !table.group().is_normalized_by_element(x) {
        return Err(Error::NotNormalizing);
    }
    let class_map = conjugation_class_map(table.classes(), x)?;
    let rows = table.irreducibles();
    let mut perm = Vec::with_capacity(rows.len());
    for row in rows {
        let image: Vec<&CycloNum> = class_map.iter().map(|&c| &row[c]).collect();
        let j = rows
            .iter()
            .position(|other| other.iter().zip(&image).all(|(a, b)| a == *b))
            .ok_or_else(|| Error::Integrity("conjugate character is not irreducible".into()))?;
        perm.push(j);
    }
    Ok(perm)
}

/// Orbit of an irreducible of the normal subgroup `m_table` under conjugation
/// by `group`, with transversal elements mapping the start to each orbit point.
pub fn character_orbit(
    group: &PermGroup,
    m_table: &CharacterTable,
    lambda: usize,
) -> Result<Vec<(usize, Permutation)>> {
    let actions: Vec<(Permutation, Vec<usize>)> = group
        .nontrivial_generators()
        .map(|s| Ok((s.clone(), aut_action(m_table, s)?)))
        .collect::<Result<_>>()?;
    let mut orbit = vec![(lambda, group.identity())];
    let mut head = 0;
    while head < orbit.len() {
        let (pt, u) = orbit[head].clone();
        head += 1;
        for (s, perm) in &actions {
            let image = perm[pt];
            if !orbit.iter().any(|(q, _)| *q == image) {
                orbit.push((image, u.mul(s)));
            }
        }
    }
    Ok(orbit)
}

/// `I_G(lambda)`: the stabilizer of `lambda` in `group`, by orbit-stabilizer
/// with Schreier generators.
pub fn inertia_group(
    group: &PermGroup,
    m_table: &CharacterTable,
    lambda: usize,
) -> Result<PermGroup> {
    if !m_table.group().is_normal_in(group) {
        return Err(Error::Hypothesis(
            "the subgroup is not normal in the acting group".into(),
        ));
    }
    let orbit = character_orbit(group, m_table, lambda)?;
    let mut stab = PermGroup::trivial(group.degree());
    for (pt, u) in &orbit {
        for s in group.nontrivial_generators() {
            let perm = aut_action(m_table, s)?;
            let image = perm[*pt];
            let v = &orbit.iter().find(|(q, _)| *q == image).unwrap().1;
            let schreier = u.mul(s).mul(&v.inverse());
            if !stab.contains(&schreier) {
                stab.add_generator(schreier);
            }
        }
    }
    let expected = group.order() / num_bigint::BigUint::from(orbit.len());
    if *stab.order() != expected {
        return Err(Error::Integrity(format!(
            "stabilizer order {} does not match orbit length {}",
            stab.order(),
            orbit.len()
        )));
    }
    Ok(stab)
}

/// An irreducible of `i_table` restricting to exactly `lambda` on the normal
/// subgroup whose classes fuse in through `fusion`.
pub fn has_extension(
    i_table: &CharacterTable,
    fusion: &ClassFusion,
    lambda: &[CycloNum],
) -> Option<usize> {
    let degree = lambda[0].to_rational_integer().ok()?;
    (0..i_table.len()).find(|&j| {
        BigInt::from(i_table.degrees()[j]) == degree
            && restrict(i_table.character(j), fusion)
                .iter()
                .zip(lambda)
                .all(|(a, b)| a == b)
    })
}
