use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::Permutation;
use crate::error::{Error, Result};

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
struct Level {
    point: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    /// `transversal[b]` maps `point` to `b` for each `b` in the orbit.
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<usize>,
}

impl Level {
    fn new(point: usize, gens: Vec<Permutation>, degree: usize) -> Self {
        let mut level = Level {
            point,
            gens,
            transversal: Vec::new(),
            orbit: Vec::new(),
        };
        level.rebuild_orbit(degree);
        level
    }

    fn rebuild_orbit(&mut self, degree: usize) {
        let mut transversal: Vec<Option<Permutation>> = vec![None; degree];
        transversal[self.point] = Some(Permutation::identity(degree));
        let mut orbit = vec![self.point];
        let mut head = 0;
        while head < orbit.len() {
            let beta = orbit[head];
            head += 1;
            for s in &self.gens {
                let gamma = s.apply(beta);
                if transversal[gamma].is_none() {
                    let u = transversal[beta].as_ref().unwrap().mul(s);
                    transversal[gamma] = Some(u);
                    orbit.push(gamma);
                }
            }
        }
        self.transversal = transversal;
        self.orbit = orbit;
    }
}

/// A permutation group carried by its generators and a base with strong
/// generating set, built by the deterministic Schreier-Sims algorithm.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Vec<Level>,
    order: BigUint,
}

impl PermGroup {
    /// Builds the group generated by `gens`.
    pub fn new(gens: Vec<Permutation>) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyGenerators)?;
        let degree = first.degree();
        if let Some(bad) = gens.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch(degree, bad.degree()));
        }
        Ok(Self::from_generators_unchecked(degree, gens))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators_unchecked(degree, vec![Permutation::identity(degree)])
    }

    pub(crate) fn from_generators_unchecked(degree: usize, gens: Vec<Permutation>) -> Self {
        let mut generators: Vec<Permutation> = Vec::new();
        for g in gens {
            if !g.is_identity() && !generators.contains(&g) {
                generators.push(g);
            }
        }
        let chain = schreier_sims(degree, Vec::new(), generators.clone());
        let order = chain_order(&chain);
        if generators.is_empty() {
            generators.push(Permutation::identity(degree));
        }
        PermGroup {
            degree,
            generators,
            chain,
            order,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Generators with the identity filtered out.
    pub fn nontrivial_generators(&self) -> impl Iterator<Item = &Permutation> {
        self.generators.iter().filter(|g| !g.is_identity())
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Order as a machine integer, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn base(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.point).collect()
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = Vec::new();
        for level in &self.chain {
            for g in &level.gens {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
        }
        out
    }

    /// Fundamental orbit lengths, one per base point.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.chain.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, _) = strip(&self.chain, g.clone(), 0);
        res.is_identity()
    }

    /// Checks membership, reporting the offending element.
    pub fn require_member(&self, g: &Permutation) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::NotMember(g.to_string()))
        }
    }

    /// Adds a generator, extending the stabilizer chain.
    pub fn add_generator(&mut self, g: Permutation) {
        if self.contains(&g) {
            return;
        }
        self.generators.retain(|h| !h.is_identity());
        self.generators.push(g.clone());
        let mut strong = self.strong_generators();
        strong.push(g);
        self.chain = schreier_sims(self.degree, self.base(), strong);
        self.order = chain_order(&self.chain);
    }

    /// Subgroup generated by elements of this group.
    pub fn subgroup(&self, gens: &[Permutation]) -> Result<PermGroup> {
        for g in gens {
            if g.degree() != self.degree {
                return Err(Error::DegreeMismatch(self.degree, g.degree()));
            }
            self.require_member(g)?;
        }
        Ok(Self::from_generators_unchecked(self.degree, gens.to_vec()))
    }

    /// Whether every generator of `other` lies in this group.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.order == other.order && self.contains_group(other)
    }

    /// Lists every element, deepest transversal varying fastest.
    pub fn elements(&self) -> Vec<Permutation> {
        let mut list = vec![self.identity()];
        for level in self.chain.iter().rev() {
            let mut next = Vec::with_capacity(list.len() * level.orbit.len());
            for x in &list {
                for &b in &level.orbit {
                    next.push(x.mul(level.transversal[b].as_ref().unwrap()));
                }
            }
            list = next;
        }
        list
    }

    /// Orbit of a point under the group.
    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
        }
        orbit
    }

    /// Orbits of the group on its points, each sorted, in order of least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for p in 0..self.degree {
            if seen[p] {
                continue;
            }
            let mut o = self.orbit(p);
            for &x in &o {
                seen[x] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    /// Checks the chain against the recorded order and generators.
    pub fn verify_chain(&self) -> bool {
        chain_order(&self.chain) == self.order && self.generators.iter().all(|g| self.contains(g))
    }
}

fn chain_order(chain: &[Level]) -> BigUint {
    chain
        .iter()
        .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
}

/// Sifts `g` through the chain from `start`; returns the residue and the level
/// where sifting stopped (`chain.len()` if it went all the way through).
fn strip(chain: &[Level], mut g: Permutation, start: usize) -> (Permutation, usize) {
    for (l, level) in chain.iter().enumerate().skip(start) {
        let b = g.apply(level.point);
        match &level.transversal[b] {
            None => return (g, l),
            Some(u) => g = g.mul(&u.inverse()),
        }
    }
    (g, chain.len())
}

fn schreier_sims(degree: usize, mut base: Vec<usize>, strong: Vec<Permutation>) -> Vec<Level> {
    let mut strong_set: Vec<Permutation> = Vec::new();
    for g in strong {
        if !g.is_identity() && !strong_set.contains(&g) {
            strong_set.push(g);
        }
    }
    for g in &strong_set {
        if base.iter().all(|&b| g.apply(b) == b) {
            base.push(g.first_moved_point().unwrap());
        }
    }
    let mut chain: Vec<Level> = base
        .iter()
        .enumerate()
        .map(|(i, &b)| {
            let gens = strong_set
                .iter()
                .filter(|g| base[..i].iter().all(|&c| g.apply(c) == c))
                .cloned()
                .collect();
            Level::new(b, gens, degree)
        })
        .collect();

    let mut i = chain.len();
    while i > 0 {
        let lvl = i - 1;
        let mut found: Option<(Permutation, usize)> = None;
        'search: for idx in 0..chain[lvl].orbit.len() {
            let beta = chain[lvl].orbit[idx];
            for s in &chain[lvl].gens {
                let u_beta = chain[lvl].transversal[beta].as_ref().unwrap();
                let gamma = s.apply(beta);
                let u_gamma = chain[lvl].transversal[gamma].as_ref().unwrap();
                let h = u_beta.mul(s).mul(&u_gamma.inverse());
                if h.is_identity() {
                    continue;
                }
                let (res, j) = strip(&chain, h, lvl + 1);
                if !res.is_identity() {
                    found = Some((res, j));
                    break 'search;
                }
            }
        }
        match found {
            None => i -= 1,
            Some((res, j)) => {
                if j == chain.len() {
                    let p = res.first_moved_point().unwrap();
                    chain.push(Level::new(p, Vec::new(), degree));
                }
                for level in chain.iter_mut().take(j + 1).skip(lvl + 1) {
                    level.gens.push(res.clone());
                    level.rebuild_orbit(degree);
                }
                i = j + 1;
            }
        }
    }
    chain
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn cyc(d: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(d, s).unwrap()
    }

    /// Brute-force closure under multiplication by generators.
    fn closure(gens: &[Permutation]) -> HashSet<Permutation> {
        let id = Permutation::identity(gens[0].degree());
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = vec![id];
        while let Some(x) = queue.pop() {
            for g in gens {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    queue.push(y);
                }
            }
        }
        seen
    }

    #[test]
    fn sym4_has_order_24() {
        let g = PermGroup::new(vec![cyc(4, "(0 1)"), cyc(4, "(0 1 2 3)")]).unwrap();
        assert_eq!(g.order(), &BigUint::from(24u32));
    }

    #[test]
    fn alt5_matches_exhaustive_closure() {
        let gens = vec![cyc(5, "(0 1 2)"), cyc(5, "(2 3 4)")];
        let g = PermGroup::new(gens.clone()).unwrap();
        assert_eq!(closure(&gens).len(), 60);
        assert_eq!(g.order_u64(), Some(60));
    }

    #[test]
    fn psl27_on_eight_points_matches_closure() {
        // z -> z+1, z -> 2z, z -> -1/z on {0..6, inf=7} over GF(7)
        let t = cyc(8, "(0 1 2 3 4 5 6)");
        let d = cyc(8, "(1 2 4)(3 6 5)");
        let w = cyc(8, "(0 7)(1 6)(2 3)(4 5)");
        let gens = vec![t, d, w];
        let g = PermGroup::new(gens.clone()).unwrap();
        assert_eq!(closure(&gens).len(), 168);
        assert_eq!(g.order_u64(), Some(168));
    }

    #[test]
    fn membership_and_elements() {
        let g = PermGroup::new(vec![cyc(5, "(0 1 2)"), cyc(5, "(2 3 4)")]).unwrap();
        assert!(g.contains(&cyc(5, "(0 1)(2 3)")));
        assert!(!g.contains(&cyc(5, "(0 1)")));
        let elems: HashSet<_> = g.elements().into_iter().collect();
        assert_eq!(elems.len(), 60);
        assert!(elems.iter().all(|e| g.contains(e)));
    }

    #[test]
    fn empty_and_mismatched_generators() {
        assert_eq!(PermGroup::new(vec![]).unwrap_err(), Error::EmptyGenerators);
        assert_eq!(
            PermGroup::new(vec![Permutation::identity(3), Permutation::identity(4)]).unwrap_err(),
            Error::DegreeMismatch(3, 4)
        );
    }

    #[test]
    fn trivial_group() {
        let g = PermGroup::trivial(3);
        assert!(g.is_trivial());
        assert_eq!(g.elements().len(), 1);
    }

    #[test]
    fn add_generator_grows_the_chain() {
        let mut g = PermGroup::new(vec![cyc(4, "(0 1 2 3)")]).unwrap();
        assert_eq!(g.order_u64(), Some(4));
        g.add_generator(cyc(4, "(0 1)"));
        assert_eq!(g.order_u64(), Some(24));
        assert!(g.verify_chain());
    }
}
