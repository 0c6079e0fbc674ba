//! Normal closures, commutator series, Fitting subgroup and minimal normal
//! subgroups.

use super::{ClassData, PermGroup, Permutation};
use crate::error::Result;

fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    a.inverse().mul(&b.inverse()).mul(a).mul(b)
}

impl PermGroup {
    /// Smallest normal subgroup containing `elements`.
    pub fn normal_closure(&self, elements: &[Permutation]) -> Result<PermGroup> {
        for e in elements {
            self.require_member(e)?;
        }
        Ok(self.normal_closure_unchecked(elements))
    }

    fn normal_closure_unchecked(&self, elements: &[Permutation]) -> PermGroup {
        let mut h = PermGroup::trivial(self.degree());
        let mut queue: Vec<Permutation> = Vec::new();
        for e in elements {
            if !h.contains(e) {
                h.add_generator(e.clone());
                queue.push(e.clone());
            }
        }
        while let Some(x) = queue.pop() {
            for g in self.nontrivial_generators() {
                let c = x.conjugate_by(g);
                if !h.contains(&c) {
                    h.add_generator(c.clone());
                    queue.push(c);
                }
            }
        }
        h
    }

    /// Whether `self` is normalized by every generator of `overgroup`.
    pub fn is_normalized_by(&self, overgroup: &PermGroup) -> bool {
        overgroup
            .nontrivial_generators()
            .all(|g| self.is_normalized_by_element(g))
    }

    pub fn is_normalized_by_element(&self, g: &Permutation) -> bool {
        self.nontrivial_generators()
            .all(|h| self.contains(&h.conjugate_by(g)))
    }

    /// Whether `self` is a normal subgroup of `overgroup`.
    pub fn is_normal_in(&self, overgroup: &PermGroup) -> bool {
        overgroup.contains_group(self) && self.is_normalized_by(overgroup)
    }

    pub fn is_abelian(&self) -> bool {
        let gens: Vec<_> = self.nontrivial_generators().collect();
        gens.iter()
            .enumerate()
            .all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    /// `[A, self]` for a subgroup `A` normal in `self`.
    pub fn commutator_with(&self, a: &PermGroup) -> PermGroup {
        let mut comms = Vec::new();
        for x in a.nontrivial_generators() {
            for y in self.nontrivial_generators() {
                let c = commutator(x, y);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure_unchecked(&comms)
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        self.commutator_with(self)
    }

    /// Lower central series, stopping at the first repeated term.
    pub fn lower_central_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = self.commutator_with(last);
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_trivial()
    }

    pub fn derived_series(&self) -> Vec<PermGroup> {
        let mut series = vec![self.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = last.derived_subgroup();
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_trivial()
    }

    /// The largest nilpotent normal subgroup: generated by the class
    /// representatives whose normal closure is nilpotent.
    pub fn fitting_subgroup(&self, classes: &ClassData) -> PermGroup {
        let reps: Vec<Permutation> = classes
            .representatives
            .iter()
            .skip(1)
            .filter(|x| {
                self.normal_closure_unchecked(&[(*x).clone()])
                    .is_nilpotent()
            })
            .cloned()
            .collect();
        self.normal_closure_unchecked(&reps)
    }

    /// All minimal normal subgroups: the inclusion-minimal normal closures of
    /// prime-order class representatives.
    pub fn minimal_normal_subgroups(&self, classes: &ClassData) -> Vec<PermGroup> {
        let mut candidates: Vec<PermGroup> = Vec::new();
        for (rep, &o) in classes.representatives.iter().zip(&classes.element_orders) {
            if !is_prime(o) {
                continue;
            }
            let n = self.normal_closure_unchecked(std::slice::from_ref(rep));
            if !candidates.iter().any(|c| c.same_group(&n)) {
                candidates.push(n);
            }
        }
        let minimal: Vec<bool> = candidates
            .iter()
            .map(|n| {
                !candidates
                    .iter()
                    .any(|m| m.order() < n.order() && n.contains_group(m))
            })
            .collect();
        candidates
            .into_iter()
            .zip(minimal)
            .filter_map(|(n, keep)| keep.then_some(n))
            .collect()
    }

    /// Product of the minimal normal subgroups.
    pub fn socle(&self, classes: &ClassData) -> PermGroup {
        let gens: Vec<Permutation> = self
            .minimal_normal_subgroups(classes)
            .iter()
            .flat_map(|m| m.nontrivial_generators().cloned().collect::<Vec<_>>())
            .collect();
        PermGroup::from_generators_unchecked(self.degree(), gens)
    }

    /// True when no class representative other than the identity has a
    /// proper normal closure and the group is non-abelian.
    pub fn is_nonabelian_simple(&self, classes: &ClassData) -> bool {
        !self.is_abelian()
            && classes
                .representatives
                .iter()
                .skip(1)
                .all(|x| self.normal_closure_unchecked(std::slice::from_ref(x)).order() == self.order())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
