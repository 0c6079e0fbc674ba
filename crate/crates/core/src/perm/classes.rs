use num_integer::Integer;
use rustc_hash::FxHashMap;

use super::{PermGroup, Permutation};
use crate::error::{Error, Result};

/// Conjugacy classes of an enumerated group, in canonical order: identity
/// first, then by element order, class size and least representative.
#[derive(Clone, Debug)]
pub struct ClassData {
    /// Least element (by image list) of each class.
    pub representatives: Vec<Permutation>,
    pub sizes: Vec<u64>,
    pub element_orders: Vec<u64>,
    /// `power_maps[i][k]` is the class of `rep_i^k` for `0 <= k < element_orders[i]`.
    pub power_maps: Vec<Vec<usize>>,
    pub inverse_map: Vec<usize>,
    pub exponent: u64,
    pub group_order: u64,
    elements: Vec<Permutation>,
    index: FxHashMap<Permutation, u32>,
    class_of_element: Vec<u32>,
    members: Vec<Vec<u32>>,
}

/// Enumerates `group` (refusing above `cap` elements) and splits it into classes.
pub fn conjugacy_classes(group: &PermGroup, cap: usize) -> Result<ClassData> {
    let order = match group.order_u64() {
        Some(n) if n as u128 <= cap as u128 => n,
        _ => {
            return Err(Error::CapExceeded {
                order: group.order().to_string(),
                cap,
            })
        }
    };
    let elements = group.elements();
    debug_assert_eq!(elements.len() as u64, order);
    let mut index: FxHashMap<Permutation, u32> = FxHashMap::default();
    index.reserve(elements.len());
    for (i, e) in elements.iter().enumerate() {
        index.insert(e.clone(), i as u32);
    }

    let gens: Vec<&Permutation> = group.nontrivial_generators().collect();
    let unassigned = u32::MAX;
    let mut raw_class = vec![unassigned; elements.len()];
    let mut raw_members: Vec<Vec<u32>> = Vec::new();
    for start in 0..elements.len() {
        if raw_class[start] != unassigned {
            continue;
        }
        let c = raw_members.len() as u32;
        raw_class[start] = c;
        let mut orbit = vec![start as u32];
        let mut head = 0;
        while head < orbit.len() {
            let x = &elements[orbit[head] as usize];
            head += 1;
            for g in &gens {
                let y = x.conjugate_by(g);
                let j = index[&y];
                if raw_class[j as usize] == unassigned {
                    raw_class[j as usize] = c;
                    orbit.push(j);
                }
            }
        }
        raw_members.push(orbit);
    }

    let mut keyed: Vec<(u64, u64, Permutation, Vec<u32>)> = raw_members
        .into_iter()
        .map(|m| {
            let rep = m
                .iter()
                .map(|&i| &elements[i as usize])
                .min()
                .unwrap()
                .clone();
            (rep.order(), m.len() as u64, rep, m)
        })
        .collect();
    keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));

    let mut class_of_element = vec![0u32; elements.len()];
    let mut representatives = Vec::with_capacity(keyed.len());
    let mut sizes = Vec::with_capacity(keyed.len());
    let mut element_orders = Vec::with_capacity(keyed.len());
    let mut members = Vec::with_capacity(keyed.len());
    for (ci, (ord, size, rep, m)) in keyed.into_iter().enumerate() {
        for &i in &m {
            class_of_element[i as usize] = ci as u32;
        }
        representatives.push(rep);
        sizes.push(size);
        element_orders.push(ord);
        members.push(m);
    }

    let mut data = ClassData {
        power_maps: Vec::new(),
        inverse_map: Vec::new(),
        exponent: element_orders.iter().fold(1u64, |a, &o| a.lcm(&o)),
        group_order: order,
        representatives,
        sizes,
        element_orders,
        elements,
        index,
        class_of_element,
        members,
    };
    let mut power_maps = Vec::with_capacity(data.len());
    for (rep, &ord) in data.representatives.iter().zip(&data.element_orders) {
        let mut row = Vec::with_capacity(ord as usize);
        let mut x = Permutation::identity(group.degree());
        for _ in 0..ord {
            row.push(data.class_of(&x).expect("power of a member"));
            x = x.mul(rep);
        }
        power_maps.push(row);
    }
    data.inverse_map = power_maps
        .iter()
        .map(|row| {
            if row.len() == 1 {
                0
            } else {
                row[row.len() - 1]
            }
        })
        .collect();
    data.power_maps = power_maps;
    Ok(data)
}

impl ClassData {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Class index of a group element, `None` if it is not in the group.
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.index
            .get(g)
            .map(|&i| self.class_of_element[i as usize] as usize)
    }

    /// Class of `rep_i^k` for any integer `k`.
    pub fn power_class(&self, i: usize, k: i64) -> usize {
        let o = self.element_orders[i] as i64;
        self.power_maps[i][k.rem_euclid(o) as usize]
    }

    /// `|C_G(rep_i)| = |G| / size_i`.
    pub fn centralizer_order(&self, i: usize) -> u64 {
        self.group_order / self.sizes[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Index of an element in [`elements`](Self::elements).
    pub fn element_index(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| i as usize)
    }

    pub fn class_of_index(&self, element: usize) -> usize {
        self.class_of_element[element] as usize
    }

    /// Element indices of class `i`.
    pub fn members(&self, i: usize) -> &[u32] {
        &self.members[i]
    }

    /// Distinct element orders, ascending.
    pub fn distinct_orders(&self) -> Vec<u64> {
        let mut v = self.element_orders.clone();
        v.dedup();
        v
    }
}
