//! Permutation groups via deterministic stabilizer chains.
//!
//! A [`PermGroup`] is defined by generators on a fixed degree and carries a
//! Schreier–Sims stabilizer chain: at each level a base point (the smallest
//! point moved by the first residue reaching that level), the level's strong
//! generators, and a transversal mapping each orbit point to a coset
//! representative. The chain certifies the group order as the product of
//! transversal sizes and answers membership by sifting. All constructions
//! iterate generators and orbit points in fixed order, so chains, element
//! enumeration and every derived object are deterministic across runs.

use std::collections::{BTreeMap, VecDeque};

use thiserror::Error;

use crate::arith::{lcm, p_part};
use crate::perm::Permutation;

/// Default cap on group orders for element-enumeration algorithms.
pub const DEFAULT_ORDER_CAP: u64 = 100_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("generator degree {0} does not match group degree {1}")]
    DegreeMismatch(usize, usize),
    #[error("group order {order} exceeds enumeration cap {cap}")]
    OrderCapExceeded { order: u64, cap: u64 },
    #[error("subgroup is not contained in the group")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("index {index} exceeds enumeration cap {cap}")]
    IndexCapExceeded { index: u64, cap: u64 },
}

#[derive(Debug, Clone)]
struct Level {
    /// 0-based base point.
    base: usize,
    /// Strong generators introduced at this level: they fix all earlier
    /// bases and move this one. The stabilizer at this level is generated
    /// by the generators of this level and all deeper ones.
    gens: Vec<Permutation>,
    /// orbit point -> u with base^u = point; keyed ascending for
    /// deterministic enumeration. The base itself maps to the identity.
    transversal: BTreeMap<usize, Permutation>,
}

#[derive(Debug, Clone)]
struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    fn new(degree: usize) -> Self {
        StabilizerChain { degree, levels: Vec::new() }
    }

    fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.transversal.len() as u128).product()
    }

    /// Sift `g` through the chain; the residue is the identity iff `g` is a
    /// member.
    fn sift(&self, g: &Permutation) -> Permutation {
        let mut g = g.clone();
        for level in &self.levels {
            if g.is_identity() {
                return g;
            }
            let beta = g.apply(level.base);
            match level.transversal.get(&beta) {
                None => return g,
                Some(u) => g = g.compose(&u.inverse()),
            }
        }
        g
    }

    fn contains(&self, g: &Permutation) -> bool {
        self.sift(g).is_identity()
    }

    /// Generators of the stabilizer subgroup at `lvl`: everything
    /// introduced at this level or deeper (deeper generators fix this
    /// level's base but can still extend its orbit through other points).
    fn stabilizer_gens(&self, lvl: usize) -> Vec<Permutation> {
        self.levels[lvl..].iter().flat_map(|l| l.gens.iter().cloned()).collect()
    }

    /// Sift `g` and, if a non-identity residue remains, store it at the
    /// level where sifting stuck (appending a fresh level when it falls off
    /// the end). Returns whether anything was added. Does not re-close the
    /// chain.
    fn place(&mut self, g: Permutation) -> bool {
        let mut g = g;
        let mut lvl = 0;
        loop {
            if g.is_identity() {
                return false;
            }
            if lvl == self.levels.len() {
                let base = g.smallest_moved_point().expect("non-identity");
                let mut transversal = BTreeMap::new();
                transversal.insert(base, Permutation::identity(self.degree));
                self.levels.push(Level { base, gens: Vec::new(), transversal });
            }
            let beta = g.apply(self.levels[lvl].base);
            match self.levels[lvl].transversal.get(&beta) {
                Some(u) => {
                    g = g.compose(&u.inverse());
                    lvl += 1;
                }
                None => {
                    self.levels[lvl].gens.push(g);
                    return true;
                }
            }
        }
    }

    fn insert(&mut self, g: Permutation) {
        if self.place(g) {
            self.close();
        }
    }

    /// Re-establish the chain invariants after new generators were placed:
    /// every level's transversal is the full orbit of its base under the
    /// level's stabilizer generators, and every Schreier generator sifts to
    /// the identity, so by Schreier's lemma each level's deeper generators
    /// generate the point stabilizer and the order product is certified.
    fn close(&mut self) {
        'restart: loop {
            for lvl in (0..self.levels.len()).rev() {
                self.recompute_orbit(lvl);
            }
            for lvl in 0..self.levels.len() {
                let base = self.levels[lvl].base;
                let gens = self.stabilizer_gens(lvl);
                let reps: Vec<Permutation> =
                    self.levels[lvl].transversal.values().cloned().collect();
                for u in &reps {
                    for s in &gens {
                        let us = u.compose(s);
                        let beta = us.apply(base);
                        let rep = self.levels[lvl].transversal[&beta].clone();
                        let schreier = us.compose(&rep.inverse());
                        if self.place(schreier) {
                            // Generator sets only grow, so the certified
                            // order strictly increases: the loop terminates.
                            continue 'restart;
                        }
                    }
                }
            }
            return;
        }
    }

    fn recompute_orbit(&mut self, lvl: usize) {
        let base = self.levels[lvl].base;
        let gens = self.stabilizer_gens(lvl);
        let mut transversal = BTreeMap::new();
        transversal.insert(base, Permutation::identity(self.degree));
        let mut queue = VecDeque::from([base]);
        while let Some(pt) = queue.pop_front() {
            let u = transversal[&pt].clone();
            for s in &gens {
                let q = s.apply(pt);
                if !transversal.contains_key(&q) {
                    transversal.insert(q, u.compose(s));
                    queue.push_back(q);
                }
            }
        }
        self.levels[lvl].transversal = transversal;
    }
}

/// A finite permutation group with a stabilizer chain.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Permutation>,
    chain: StabilizerChain,
}

impl PermGroup {
    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, gens: Vec::new(), chain: StabilizerChain::new(degree) }
    }

    /// Build from generators; identity generators are dropped.
    pub fn from_generators(
        degree: usize,
        gens: Vec<Permutation>,
    ) -> Result<Self, GroupError> {
        let mut group = PermGroup::trivial(degree);
        for g in gens {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch(g.degree(), degree));
            }
            if g.is_identity() {
                continue;
            }
            group.chain.insert(g.clone());
            group.gens.push(g);
        }
        Ok(group)
    }

    /// The group extended by one more generator.
    pub fn extended_with(&self, g: Permutation) -> Result<Self, GroupError> {
        if g.degree() != self.degree {
            return Err(GroupError::DegreeMismatch(g.degree(), self.degree));
        }
        let mut next = self.clone();
        if !g.is_identity() {
            next.chain.insert(g.clone());
            next.gens.push(g);
        }
        Ok(next)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.gens
    }

    /// Group order from the stabilizer-chain certificate.
    pub fn order(&self) -> u64 {
        let o = self.chain.order();
        u64::try_from(o).expect("group order exceeds u64")
    }

    pub fn is_trivial(&self) -> bool {
        self.chain.order() == 1
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.degree && self.chain.contains(g)
    }

    /// Is `h` a subgroup of `self` (same degree, all generators members)?
    pub fn contains_group(&self, h: &PermGroup) -> bool {
        h.degree == self.degree && h.gens.iter().all(|g| self.contains(g))
    }

    /// All elements in deterministic chain-enumeration order (the identity
    /// first). Errors if the order exceeds `cap`.
    pub fn elements_up_to(&self, cap: u64) -> Result<Vec<Permutation>, GroupError> {
        let order = self.chain.order();
        if order > cap as u128 {
            return Err(GroupError::OrderCapExceeded {
                order: u64::try_from(order).unwrap_or(u64::MAX),
                cap,
            });
        }
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in self.chain.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.transversal.len());
            // The identity rep first (the orbit may contain points below the
            // base), then the remaining reps by ascending orbit point.
            let reps = std::iter::once(&level.transversal[&level.base]).chain(
                level
                    .transversal
                    .iter()
                    .filter(|&(&pt, _)| pt != level.base)
                    .map(|(_, u)| u),
            );
            for u in reps {
                for e in &elems {
                    next.push(e.compose(u));
                }
            }
            elems = next;
        }
        Ok(elems)
    }

    /// All elements under the default cap.
    pub fn elements(&self) -> Result<Vec<Permutation>, GroupError> {
        self.elements_up_to(DEFAULT_ORDER_CAP)
    }

    /// Normal closure of `seeds` in `self` (seeds must be members).
    pub fn normal_closure(&self, seeds: &[Permutation]) -> PermGroup {
        let mut closure = PermGroup::trivial(self.degree);
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        for s in seeds {
            debug_assert!(self.contains(s));
            if !s.is_identity() && !closure.contains(s) {
                closure.chain.insert(s.clone());
                closure.gens.push(s.clone());
                queue.push_back(s.clone());
            }
        }
        while let Some(s) = queue.pop_front() {
            for g in &self.gens {
                let c = s.conjugate_by(g);
                if !closure.contains(&c) {
                    closure.chain.insert(c.clone());
                    closure.gens.push(c.clone());
                    queue.push_back(c);
                }
            }
        }
        closure
    }

    /// The derived subgroup `[G, G]` (normal closure of generator
    /// commutators).
    pub fn derived_subgroup(&self) -> PermGroup {
        let mut seeds = Vec::new();
        for a in &self.gens {
            for b in &self.gens {
                let comm = a
                    .inverse()
                    .compose(&b.inverse())
                    .compose(a)
                    .compose(b);
                if !comm.is_identity() {
                    seeds.push(comm);
                }
            }
        }
        self.normal_closure(&seeds)
    }

    /// Do the generators pairwise commute?
    pub fn is_abelian(&self) -> bool {
        for (i, a) in self.gens.iter().enumerate() {
            for b in &self.gens[i + 1..] {
                if a.compose(b) != b.compose(a) {
                    return false;
                }
            }
        }
        true
    }

    /// Is the group cyclic? (Scans for an element of full order.)
    pub fn is_cyclic(&self, cap: u64) -> Result<bool, GroupError> {
        if !self.is_abelian() {
            return Ok(false);
        }
        let order = self.order();
        for g in self.elements_up_to(cap)? {
            if g.order() == order {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// The exponent of the abelianization `G/G'`: the lcm over generators
    /// `x` of the least `k > 0` with `x^k ∈ G'`.
    pub fn abelianized_exponent(&self) -> u64 {
        let derived = self.derived_subgroup();
        let mut e = 1u64;
        for g in &self.gens {
            let mut k = 1u64;
            let mut x = g.clone();
            while !derived.contains(&x) {
                x = x.compose(g);
                k += 1;
            }
            e = lcm(e, k);
        }
        e
    }

    /// The center `Z(G)` by element filtering (requires `|G| ≤ cap`).
    pub fn center(&self, cap: u64) -> Result<PermGroup, GroupError> {
        let mut z = PermGroup::trivial(self.degree);
        for g in self.elements_up_to(cap)? {
            if z.contains(&g) {
                continue;
            }
            if self.gens.iter().all(|s| g.compose(s) == s.compose(&g)) {
                z = z.extended_with(g)?;
            }
        }
        Ok(z)
    }

    /// The normalizer `N_G(H)` by element filtering (requires `|G| ≤ cap`).
    pub fn normalizer(&self, h: &PermGroup, cap: u64) -> Result<PermGroup, GroupError> {
        if h.degree != self.degree {
            return Err(GroupError::DegreeMismatch(h.degree, self.degree));
        }
        let mut n = PermGroup::trivial(self.degree);
        for g in self.elements_up_to(cap)? {
            if n.contains(&g) {
                continue;
            }
            // H^g ⊆ H suffices for equality in a finite group.
            if h.gens.iter().all(|s| h.contains(&s.conjugate_by(&g))) {
                n = n.extended_with(g)?;
            }
        }
        Ok(n)
    }

    /// A Sylow `p`-subgroup by normalizer ascent: start from the cyclic
    /// subgroup generated by the `p`-power part of some element, and extend
    /// inside normalizers with `p`-elements until the full `p`-part of `|G|`
    /// is reached.
    pub fn sylow_subgroup(&self, p: u64, cap: u64) -> Result<PermGroup, GroupError> {
        assert!(crate::arith::is_prime(p), "p must be prime");
        let target = p_part(self.order(), p);
        let mut q = PermGroup::trivial(self.degree);
        if target == 1 {
            return Ok(q);
        }
        let elems = self.elements_up_to(cap)?;
        let seed = elems
            .iter()
            .find(|g| g.order() % p == 0)
            .expect("Cauchy: an element of order divisible by p exists")
            .p_element_power(p);
        q = q.extended_with(seed)?;
        while q.order() < target {
            let n = self.normalizer(&q, cap)?;
            let extension = n
                .elements_up_to(cap)?
                .into_iter()
                .map(|y| y.p_element_power(p))
                .find(|z| !z.is_identity() && !q.contains(z))
                .expect("normalizer of a non-Sylow p-subgroup contains new p-elements");
            // Q is normal in N and `extension` is a p-element of N, so
            // ⟨Q, extension⟩ = Q·⟨extension⟩ is again a p-group.
            q = q.extended_with(extension)?;
            debug_assert_eq!(q.order(), p_part(q.order(), p));
        }
        Ok(q)
    }

    /// The quotient `G/N` as a permutation group acting faithfully on the
    /// right cosets of `N` (requires `N` normal; coset count capped by
    /// `cap`). For the trivial `N` this returns an isomorphic copy of `G`
    /// (same generators).
    pub fn quotient(&self, n: &PermGroup, cap: u64) -> Result<PermGroup, GroupError> {
        if !self.contains_group(n) {
            return Err(GroupError::NotASubgroup);
        }
        for g in &self.gens {
            for s in &n.gens {
                if !n.contains(&s.conjugate_by(g)) {
                    return Err(GroupError::NotNormal);
                }
            }
        }
        if n.is_trivial() {
            return Ok(self.clone());
        }
        let n_elems = n.elements_up_to(cap)?;
        let index = self.order() / n.order();
        if index > cap {
            return Err(GroupError::IndexCapExceeded { index, cap });
        }
        // Identify the coset N·x by its lexicographically least element.
        let canon = |x: &Permutation| -> Permutation {
            n_elems.iter().map(|m| m.compose(x)).min().unwrap()
        };
        let mut reps: Vec<Permutation> = vec![canon(&Permutation::identity(self.degree))];
        let mut seen: std::collections::HashMap<Permutation, usize> =
            std::collections::HashMap::from([(reps[0].clone(), 0)]);
        let mut transitions: Vec<Vec<u32>> = vec![Vec::new(); self.gens.len()];
        let mut i = 0;
        while i < reps.len() {
            for (gi, g) in self.gens.iter().enumerate() {
                let image = canon(&reps[i].compose(g));
                let j = match seen.get(&image) {
                    Some(&j) => j,
                    None => {
                        reps.push(image.clone());
                        seen.insert(image, reps.len() - 1);
                        reps.len() - 1
                    }
                };
                transitions[gi].push(j as u32);
            }
            i += 1;
        }
        let quotient_gens: Vec<Permutation> = transitions
            .into_iter()
            .map(|images| {
                Permutation::from_images(images).expect("coset action is a permutation")
            })
            .collect();
        let q = PermGroup::from_generators(reps.len(), quotient_gens)?;
        debug_assert_eq!(q.order(), index);
        Ok(q)
    }
}
