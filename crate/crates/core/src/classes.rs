//! Conjugacy classes, power maps and class-algebra structure constants.
//!
//! Classes are computed as orbits of the conjugation action (breadth-first
//! over the group's generators, seeded in chain-enumeration order) and then
//! sorted by `(element order, class size, representative)`, which puts the
//! identity class first and fixes a canonical class numbering for tables,
//! reports and golden files.

use std::collections::{HashMap, VecDeque};

use crate::arith::{lcm, p_part};
use crate::group::{GroupError, PermGroup};
use crate::perm::Permutation;

/// Conjugacy-class data for a finite permutation group.
#[derive(Debug, Clone)]
pub struct ClassData {
    group: PermGroup,
    reps: Vec<Permutation>,
    sizes: Vec<u64>,
    orders: Vec<u64>,
    /// powers[j][s] = class index of rep_j^s, for s in 0..orders[j].
    powers: Vec<Vec<usize>>,
    members: Vec<Vec<Permutation>>,
    class_of: HashMap<Permutation, usize>,
    exponent: u64,
}

impl ClassData {
    /// Compute the classes of `group`; errors if `|G| > cap`.
    pub fn compute(group: &PermGroup, cap: u64) -> Result<ClassData, GroupError> {
        let elems = group.elements_up_to(cap)?;
        let mut assigned: HashMap<Permutation, usize> = HashMap::new();
        let mut orbits: Vec<Vec<Permutation>> = Vec::new();
        for x in &elems {
            if assigned.contains_key(x) {
                continue;
            }
            let idx = orbits.len();
            let mut orbit = vec![x.clone()];
            assigned.insert(x.clone(), idx);
            let mut queue = VecDeque::from([x.clone()]);
            while let Some(y) = queue.pop_front() {
                for g in group.generators() {
                    let z = y.conjugate_by(g);
                    if !assigned.contains_key(&z) {
                        assigned.insert(z.clone(), idx);
                        orbit.push(z.clone());
                        queue.push_back(z);
                    }
                }
            }
            orbits.push(orbit);
        }
        // Canonical numbering: by (element order, size, least member).
        for orbit in &mut orbits {
            orbit.sort();
        }
        let mut keyed: Vec<(u64, usize, Permutation, Vec<Permutation>)> = orbits
            .into_iter()
            .map(|orbit| {
                let rep = orbit[0].clone();
                (rep.order(), orbit.len(), rep, orbit)
            })
            .collect();
        keyed.sort_by(|a, b| (a.0, a.1, &a.2).cmp(&(b.0, b.1, &b.2)));

        let mut reps = Vec::with_capacity(keyed.len());
        let mut sizes = Vec::with_capacity(keyed.len());
        let mut orders = Vec::with_capacity(keyed.len());
        let mut members = Vec::with_capacity(keyed.len());
        let mut class_of = HashMap::with_capacity(elems.len());
        for (idx, (ord, size, rep, orbit)) in keyed.into_iter().enumerate() {
            reps.push(rep);
            sizes.push(size as u64);
            orders.push(ord);
            for m in &orbit {
                class_of.insert(m.clone(), idx);
            }
            members.push(orbit);
        }
        let exponent = orders.iter().fold(1u64, |e, &o| lcm(e, o));
        let powers = reps
            .iter()
            .enumerate()
            .map(|(j, rep)| {
                (0..orders[j])
                    .map(|s| class_of[&rep.pow(s as i64)])
                    .collect()
            })
            .collect();
        Ok(ClassData {
            group: group.clone(),
            reps,
            sizes,
            orders,
            powers,
            members,
            class_of,
            exponent,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Number of conjugacy classes.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representative(&self, j: usize) -> &Permutation {
        &self.reps[j]
    }

    pub fn size(&self, j: usize) -> u64 {
        self.sizes[j]
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }

    /// Order of the elements in class `j`.
    pub fn element_order(&self, j: usize) -> u64 {
        self.orders[j]
    }

    pub fn element_orders(&self) -> &[u64] {
        &self.orders
    }

    /// Exponent of the group (lcm of element orders).
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Class index of rep_j^s (s reduced mod the element order).
    pub fn power_class(&self, j: usize, s: u64) -> usize {
        self.powers[j][(s % self.orders[j]) as usize]
    }

    /// Class of the inverse of class `j`.
    pub fn inverse_class(&self, j: usize) -> usize {
        self.power_class(j, self.orders[j] - 1)
    }

    /// Class index of an arbitrary group element.
    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.class_of.get(g).copied()
    }

    /// Classes whose elements have p-power order (the identity counts).
    pub fn p_element_classes(&self, p: u64) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| self.orders[j] == p_part(self.orders[j], p))
            .collect()
    }

    /// Class-algebra structure constant `a_{ijk}`: the number of pairs
    /// `(x, y)` in `C_i × C_j` with `x·y = rep_k` (independent of the choice
    /// of representative).
    pub fn class_constant(&self, i: usize, j: usize, k: usize) -> u64 {
        let target = &self.reps[k];
        self.members[i]
            .iter()
            .filter(|x| self.class_of[&x.inverse().compose(target)] == j)
            .count() as u64
    }

    /// The matrix `A_i` with `A_i[j][k] = a_{ijk}`; the common eigenvectors
    /// of these matrices are the central characters.
    pub fn multiplication_matrix(&self, i: usize) -> Vec<Vec<u64>> {
        let k = self.len();
        let mut a = vec![vec![0u64; k]; k];
        for t in 0..k {
            let target = &self.reps[t];
            for x in &self.members[i] {
                let j = self.class_of[&x.inverse().compose(target)];
                a[j][t] += 1;
            }
        }
        a
    }
}
