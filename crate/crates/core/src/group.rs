//! Permutation group handles: exact order, membership, and enumeration.
//!
//! Order and membership come from a deterministic Schreier–Sims stabilizer
//! chain (no randomization), so every downstream computation is reproducible
//! run to run. The full element list is cached iff the order is at most the
//! enumeration bound, sorted lexicographically by image sequences.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub const DEFAULT_ENUMERATION_BOUND: u64 = 1_000_000;

struct Level {
    point: u32,
    gens: Vec<Permutation>,
    /// transversal[p] = some u in this level's group with u(point) = p
    transversal: Vec<Option<Permutation>>,
    orbit: Vec<u32>,
}

pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// The level-i group is generated by the generators stored at levels
    /// i and deeper, since deeper generators fix the earlier base points.
    fn build(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            if g.is_identity() {
                continue;
            }
            if chain.levels.is_empty() {
                chain.push_level(g.first_moved().unwrap());
            }
            chain.levels[0].gens.push(g.clone());
        }
        chain.close();
        chain
    }

    fn push_level(&mut self, point: u32) {
        self.levels.push(Level {
            point,
            gens: Vec::new(),
            transversal: Vec::new(),
            orbit: Vec::new(),
        });
    }

    fn gens_from(&self, level: usize) -> Vec<Permutation> {
        self.levels[level..]
            .iter()
            .flat_map(|l| l.gens.iter().cloned())
            .collect()
    }

    fn recompute_orbit(&mut self, level: usize) {
        let point = self.levels[level].point;
        let gens = self.gens_from(level);
        let mut transversal: Vec<Option<Permutation>> = vec![None; self.degree];
        transversal[point as usize] = Some(Permutation::identity(self.degree));
        let mut orbit = vec![point];
        let mut head = 0;
        while head < orbit.len() {
            let delta = orbit[head];
            head += 1;
            let u = transversal[delta as usize].clone().unwrap();
            for g in &gens {
                let gamma = g.apply(delta);
                if transversal[gamma as usize].is_none() {
                    transversal[gamma as usize] = Some(g.mul(&u));
                    orbit.push(gamma);
                }
            }
        }
        self.levels[level].transversal = transversal;
        self.levels[level].orbit = orbit;
    }

    /// Fixpoint closure: after each generator placement every orbit is
    /// rebuilt, so a pass over all Schreier generators with no failures
    /// certifies the chain. Each placement strictly enlarges some level
    /// group, so the loop terminates.
    fn close(&mut self) {
        'restart: loop {
            for i in 0..self.levels.len() {
                self.recompute_orbit(i);
            }
            for i in 0..self.levels.len() {
                let gens = self.gens_from(i);
                let orbit = self.levels[i].orbit.clone();
                for &delta in &orbit {
                    let u_d = self.levels[i].transversal[delta as usize].clone().unwrap();
                    for s in &gens {
                        let gamma = s.apply(delta);
                        let u_g = self.levels[i].transversal[gamma as usize].clone().unwrap();
                        let schreier = u_g.inverse().mul(s).mul(&u_d);
                        let (lvl, residue) = self.sift_from(i + 1, schreier);
                        if !residue.is_identity() {
                            if lvl == self.levels.len() {
                                let point = residue.first_moved().unwrap();
                                self.push_level(point);
                            }
                            self.levels[lvl].gens.push(residue);
                            continue 'restart;
                        }
                    }
                }
            }
            return;
        }
    }

    pub(crate) fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    /// Sifts `p` through levels `start..`, returning the level where it got
    /// stuck together with the residue. A residue of identity means membership.
    fn sift_from(&self, start: usize, mut p: Permutation) -> (usize, Permutation) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let img = p.apply(level.point);
            match &level.transversal[img as usize] {
                None => return (i, p),
                Some(u) => p = u.inverse().mul(&p),
            }
        }
        (self.levels.len(), p)
    }

    pub(crate) fn contains(&self, p: &Permutation) -> bool {
        self.sift_from(0, p.clone()).1.is_identity()
    }

    /// All elements as products of transversal representatives, one per
    /// factorization, then sorted lexicographically.
    fn enumerate(&self) -> Vec<Permutation> {
        let mut elems = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(elems.len() * level.orbit.len());
            for &delta in &level.orbit {
                let u = level.transversal[delta as usize].as_ref().unwrap();
                for h in &elems {
                    next.push(u.mul(h));
                }
            }
            elems = next;
        }
        elems.sort();
        elems
    }

    #[cfg(test)]
    pub(crate) fn base_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }
}

/// A finitely generated permutation group with cached structural data.
/// Immutable after construction; all queries are pure reads.
pub struct GroupHandle {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: u128,
    enumeration_bound: u64,
    elements: Option<Vec<Permutation>>,
    index: Option<HashMap<Permutation, u32>>,
}

impl GroupHandle {
    pub fn from_generators(gens: Vec<Permutation>) -> Result<Arc<Self>> {
        Self::with_bound(gens, DEFAULT_ENUMERATION_BOUND)
    }

    pub fn with_bound(gens: Vec<Permutation>, enumeration_bound: u64) -> Result<Arc<Self>> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let degree = gens[0].degree();
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let chain = StabChain::build(degree, &gens);
        let order = chain.order();
        let (elements, index) = if order <= enumeration_bound as u128 {
            let elems = chain.enumerate();
            debug_assert_eq!(elems.len() as u128, order);
            let idx = elems
                .iter()
                .enumerate()
                .map(|(i, e)| (e.clone(), i as u32))
                .collect();
            (Some(elems), Some(idx))
        } else {
            (None, None)
        };
        Ok(Arc::new(GroupHandle {
            degree,
            generators: gens,
            chain,
            order,
            enumeration_bound,
            elements,
            index,
        }))
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn enumeration_bound(&self) -> u64 {
        self.enumeration_bound
    }

    /// Membership by sifting through the stabilizer chain.
    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, p.degree()));
        }
        Ok(self.chain.contains(p))
    }

    /// The full element list, sorted lexicographically by image sequences.
    pub fn elements(&self) -> Result<&[Permutation]> {
        self.elements.as_deref().ok_or(Error::TooLargeToEnumerate {
            order: self.order,
            bound: self.enumeration_bound,
        })
    }

    /// Position of `p` in the sorted element list, when enumerated.
    pub fn element_index(&self, p: &Permutation) -> Option<u32> {
        self.index.as_ref().and_then(|m| m.get(p).copied())
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    #[cfg(test)]
    pub(crate) fn orbit_lengths(&self) -> Vec<usize> {
        self.chain.base_orbit_lengths()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    /// Brute-force closure of a generating set, as an independent order oracle.
    fn closure_oracle(gens: &[Permutation]) -> BTreeSet<Permutation> {
        let degree = gens[0].degree();
        let mut set: BTreeSet<Permutation> = BTreeSet::new();
        set.insert(Permutation::identity(degree));
        let mut frontier: Vec<Permutation> = vec![Permutation::identity(degree)];
        while let Some(e) = frontier.pop() {
            for g in gens {
                let f = e.mul(g);
                if set.insert(f.clone()) {
                    frontier.push(f);
                }
            }
        }
        set
    }

    fn a5() -> Arc<GroupHandle> {
        GroupHandle::from_generators(vec![p("(1,2,3)", 5), p("(1,2,3,4,5)", 5)]).unwrap()
    }

    #[test]
    fn a5_order_matches_closure_oracle() {
        let gens = vec![p("(1,2,3)", 5), p("(1,2,3,4,5)", 5)];
        let oracle = closure_oracle(&gens);
        assert_eq!(oracle.len(), 60);
        let g = GroupHandle::from_generators(gens).unwrap();
        assert_eq!(g.order(), 60);
        let enumerated: BTreeSet<Permutation> = g.elements().unwrap().iter().cloned().collect();
        assert_eq!(enumerated, oracle);
    }

    #[test]
    fn identity_group_has_order_one() {
        let g = GroupHandle::from_generators(vec![Permutation::identity(4)]).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.elements().unwrap().len(), 1);
    }

    #[test]
    fn empty_generator_list_rejected() {
        assert!(matches!(
            GroupHandle::from_generators(vec![]),
            Err(Error::EmptyGenerators)
        ));
    }

    #[test]
    fn order_equals_product_of_orbit_lengths() {
        let g = a5();
        let product: u128 = g.orbit_lengths().iter().map(|&l| l as u128).product();
        assert_eq!(product, g.order());
    }

    #[test]
    fn s3_enumerates_six_elements() {
        let g = GroupHandle::from_generators(vec![p("(1,2)", 3), p("(1,2,3)", 3)]).unwrap();
        assert_eq!(g.elements().unwrap().len(), 6);
    }

    #[test]
    fn klein_four_elements_are_self_inverse() {
        let g = GroupHandle::from_generators(vec![p("(1,2)(3,4)", 4), p("(1,3)(2,4)", 4)]).unwrap();
        let elems = g.elements().unwrap();
        assert_eq!(elems.len(), 4);
        for e in elems {
            assert_eq!(e.inverse(), *e);
        }
    }

    #[test]
    fn a5_membership() {
        let g = a5();
        assert!(g.contains(&p("(1,2,3)", 5)).unwrap());
        assert!(!g.contains(&p("(1,2)", 5)).unwrap());
    }

    #[test]
    fn membership_agrees_with_enumeration() {
        let g = a5();
        for e in g.elements().unwrap() {
            assert!(g.contains(e).unwrap());
        }
        // 100 random degree-5 permutations: contained iff enumerated
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let enumerated: BTreeSet<&Permutation> = g.elements().unwrap().iter().collect();
        for _ in 0..100 {
            let mut images: Vec<u32> = (0..5).collect();
            images.shuffle(&mut rng);
            let q = Permutation::from_images(images).unwrap();
            assert_eq!(g.contains(&q).unwrap(), enumerated.contains(&q));
        }
    }

    #[test]
    fn closure_under_composition() {
        let g = a5();
        let elems = g.elements().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let a = &elems[rng.gen_range(0..elems.len())];
            let b = &elems[rng.gen_range(0..elems.len())];
            assert!(g.contains(&a.mul(b)).unwrap());
        }
    }

    #[test]
    fn order_divides_degree_factorial() {
        for (gens, degree) in [
            (vec![p("(1,2,3)", 5), p("(1,2,3,4,5)", 5)], 5u32),
            (vec![p("(1,2)", 4), p("(1,2,3,4)", 4)], 4),
        ] {
            let g = GroupHandle::from_generators(gens).unwrap();
            let fact: u128 = (1..=degree as u128).product();
            assert_eq!(fact % g.order(), 0, "degree {}", degree);
        }
    }

    #[test]
    fn enumeration_bound_is_enforced_and_named() {
        let gens = vec![p("(1,2)", 8), p("(1,2,3,4,5,6,7,8)", 8)];
        let g = GroupHandle::with_bound(gens, 1000).unwrap();
        assert_eq!(g.order(), 40320);
        match g.elements() {
            Err(Error::TooLargeToEnumerate { order, bound }) => {
                assert_eq!(order, 40320);
                assert_eq!(bound, 1000);
            }
            other => panic!(
                "expected TooLargeToEnumerate, got {:?}",
                other.map(|e| e.len())
            ),
        }
    }

    #[test]
    fn large_group_order_without_enumeration() {
        // S12 fits comfortably in the chain but not under a small bound
        let gens = vec![p("(1,2)", 12), p("(1,2,3,4,5,6,7,8,9,10,11,12)", 12)];
        let g = GroupHandle::with_bound(gens, 100).unwrap();
        assert_eq!(g.order(), 479_001_600);
        assert!(g.contains(&p("(1,2,3)", 12)).unwrap());
    }
}
