//! Embedding a monolithic group into `Aut(S_1) wr Sym(n)`.

use num_bigint::BigUint;
use rustc_hash::FxHashMap;

use super::require;
use crate::error::{Error, Result};
use crate::perm::{conjugacy_classes, ClassData, PermGroup, Permutation};

/// The data of `g -> (g_1, .., g_n) sigma_g` for a group whose unique minimal
/// normal subgroup is `M = S_1 x .. x S_n` with non-abelian simple factors.
#[derive(Clone, Debug)]
pub struct WreathEmbedding {
    pub socle: PermGroup,
    pub factors: Vec<PermGroup>,
    /// `t_i` with `S_1^{t_i} = S_i`; `t_1` is the identity.
    pub transversal: Vec<Permutation>,
    /// `N = N_G(S_1)`.
    pub normalizer: PermGroup,
    pub generators: Vec<Permutation>,
    /// `sigma_g` for each generator: `S_i^g = S_{sigma_g(i)}`.
    pub sigma: Vec<Vec<usize>>,
    /// `g_i = t_i g t_{sigma_g(i)}^-1` for each generator.
    pub components: Vec<Vec<Permutation>>,
    /// Order of the group generated by the images in the wreath product.
    pub reconstructed_order: BigUint,
}

impl WreathEmbedding {
    pub fn n(&self) -> usize {
        self.factors.len()
    }

    /// The factor `j` with `S_i^x = S_j`.
    pub fn conjugate_factor(&self, i: usize, x: &Permutation) -> Result<usize> {
        conjugate_factor(&self.factors, i, x)
    }

    /// `sigma_x` for any element normalizing the socle.
    pub fn factor_permutation(&self, x: &Permutation) -> Result<Vec<usize>> {
        (0..self.n()).map(|i| self.conjugate_factor(i, x)).collect()
    }

    /// `x_i = t_i x t_{sigma_x(i)}^-1`, each of which normalizes `S_1`.
    pub fn components_of(&self, x: &Permutation) -> Result<Vec<Permutation>> {
        let sigma = self.factor_permutation(x)?;
        Ok((0..self.n())
            .map(|i| {
                self.transversal[i]
                    .mul(x)
                    .mul(&self.transversal[sigma[i]].inverse())
            })
            .collect())
    }
}

fn conjugate_factor(factors: &[PermGroup], i: usize, x: &Permutation) -> Result<usize> {
    let images: Vec<Permutation> = factors[i]
        .nontrivial_generators()
        .map(|s| s.conjugate_by(x))
        .collect();
    factors
        .iter()
        .position(|f| images.iter().all(|s| f.contains(s)))
        .ok_or_else(|| Error::Hypothesis("conjugation does not permute the factors".into()))
}

/// The unique minimal normal subgroup of `group`, required to be non-abelian.
pub fn monolith(group: &PermGroup, classes: &ClassData) -> Result<PermGroup> {
    let mut mins = group.minimal_normal_subgroups(classes);
    require(mins.len() == 1, || {
        format!(
            "{} minimal normal subgroups, expected exactly one",
            mins.len()
        )
    })?;
    let m = mins.pop().unwrap();
    require(!m.is_abelian(), || {
        "the minimal normal subgroup is abelian".into()
    })?;
    Ok(m)
}

/// Recovers the factors, transversal and components of the embedding and checks
/// that the images generate a group of the same order.
pub fn wreath_embedding(
    group: &PermGroup,
    classes: &ClassData,
    cap: usize,
) -> Result<WreathEmbedding> {
    let socle = monolith(group, classes)?;
    let socle_classes = conjugacy_classes(&socle, cap)?;
    let factors = socle.minimal_normal_subgroups(&socle_classes);
    let n = factors.len();
    let factor_order = factors[0].order().clone();
    require(factors.iter().all(|f| *f.order() == factor_order), || {
        "factors of the socle have different orders".into()
    })?;
    require(factor_order.pow(n as u32) == *socle.order(), || {
        "the socle is not the direct product of its minimal normal subgroups".into()
    })?;
    let first_classes = conjugacy_classes(&factors[0], cap)?;
    require(factors[0].is_nonabelian_simple(&first_classes), || {
        "socle factors are not simple".into()
    })?;

    let generators: Vec<Permutation> = group.nontrivial_generators().cloned().collect();
    let sigma: Vec<Vec<usize>> = generators
        .iter()
        .map(|g| (0..n).map(|i| conjugate_factor(&factors, i, g)).collect())
        .collect::<Result<_>>()?;

    // orbit of S_1 with transversal, then Schreier generators of its stabilizer
    let mut transversal: Vec<Option<Permutation>> = vec![None; n];
    transversal[0] = Some(group.identity());
    let mut queue = vec![0usize];
    while let Some(i) = queue.pop() {
        for (g, s) in generators.iter().zip(&sigma) {
            let j = s[i];
            if transversal[j].is_none() {
                transversal[j] = Some(transversal[i].as_ref().unwrap().mul(g));
                queue.push(j);
            }
        }
    }
    require(transversal.iter().all(Option::is_some), || {
        "the group does not permute the socle factors transitively".into()
    })?;
    let transversal: Vec<Permutation> = transversal.into_iter().map(Option::unwrap).collect();

    let mut components = Vec::with_capacity(generators.len());
    let mut normalizer = PermGroup::trivial(group.degree());
    for (g, s) in generators.iter().zip(&sigma) {
        let comps: Vec<Permutation> = (0..n)
            .map(|i| transversal[i].mul(g).mul(&transversal[s[i]].inverse()))
            .collect();
        for c in &comps {
            require(factors[0].is_normalized_by_element(c), || {
                format!("component {c} does not normalize the first factor")
            })?;
            if !normalizer.contains(c) {
                normalizer.add_generator(c.clone());
            }
        }
        components.push(comps);
    }
    require(
        normalizer.order() * BigUint::from(n) == *group.order(),
        || "normalizer index differs from the number of factors".into(),
    )?;

    let reconstructed_order = reconstruct(&factors[0], &sigma, &components, cap)?;
    require(reconstructed_order == *group.order(), || {
        format!(
            "wreath images generate a group of order {reconstructed_order}, not {}",
            group.order()
        )
    })?;

    Ok(WreathEmbedding {
        socle,
        factors,
        transversal,
        normalizer,
        generators,
        sigma,
        components,
        reconstructed_order,
    })
}

/// Realizes each `(g_1, .., g_n) sigma_g` on `n` copies of `S_1 - {1}`:
/// `(i, s) -> (sigma_g(i), s^{g_i})`.
fn reconstruct(
    s1: &PermGroup,
    sigma: &[Vec<usize>],
    components: &[Vec<Permutation>],
    cap: usize,
) -> Result<BigUint> {
    let order = s1
        .order_u64()
        .filter(|&o| o as u128 <= cap as u128)
        .ok_or_else(|| Error::CapExceeded {
            order: s1.order().to_string(),
            cap,
        })?;
    let elements: Vec<Permutation> = s1
        .elements()
        .into_iter()
        .filter(|e| !e.is_identity())
        .collect();
    let index: FxHashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let m = (order - 1) as usize;
    let n = sigma.first().map_or(0, Vec::len);
    let mut images = Vec::new();
    for (s, comps) in sigma.iter().zip(components) {
        let mut img = vec![0usize; n * m];
        for i in 0..n {
            for (k, e) in elements.iter().enumerate() {
                let t = index[&e.conjugate_by(&comps[i])];
                img[i * m + k] = s[i] * m + t;
            }
        }
        images.push(Permutation::from_images(img)?);
    }
    let gens: Vec<Permutation> = images.into_iter().filter(|p| !p.is_identity()).collect();
    if gens.is_empty() {
        return Ok(BigUint::from(1u32));
    }
    Ok(PermGroup::new(gens)?.order().clone())
}
