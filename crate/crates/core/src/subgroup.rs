//! Subgroup-level computations: conjugates, intersections, normalizers,
//! centralizers, commutator subgroups, Sylow subgroups, generated subgroups,
//! exhaustive subgroup enumeration inside small p-groups, and abelian
//! quotient invariants.
//!
//! Normalizers and centralizers are computed by full element scan over the
//! parent, which must therefore be enumerable. Every subgroup carries its
//! complete element set, sorted lexicographically, so equality and hashing
//! are set comparisons.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::perm::Permutation;
use crate::quotient::{self, AbelianInvariants};

/// Hard caps on `all_nontrivial_subgroups`: the source p-group may have at
/// most this many elements, and at most `SUBGROUP_COUNT_BOUND` subgroups.
pub const SUBGROUP_ORDER_BOUND: u64 = 1 << 12;
pub const SUBGROUP_COUNT_BOUND: usize = 10_000;

/// A subgroup of a parent [`GroupHandle`], with generators and the full
/// element set (sorted). Two handles are equal iff their element sets are.
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: Arc<GroupHandle>,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}
impl Eq for SubgroupHandle {}

impl std::hash::Hash for SubgroupHandle {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl std::fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subgroup(order {}, gens {})",
            self.elements.len(),
            self.generators
                .iter()
                .map(|g| g.to_cycle_string())
                .collect::<Vec<_>>()
                .join(" ")
        )
    }
}

/// Closes a seed set under right multiplication by `gens`. Finite groups make
/// this the full generated subgroup. Errors if the closure exceeds `cap`.
fn close_under(degree: usize, gens: &[Permutation], cap: u64) -> Result<Vec<Permutation>> {
    let mut set: BTreeSet<Permutation> = BTreeSet::new();
    let id = Permutation::identity(degree);
    set.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(e) = frontier.pop() {
        for g in gens {
            let f = e.mul(g);
            if !set.contains(&f) {
                if set.len() as u64 >= cap {
                    return Err(Error::TooLargeToEnumerate {
                        order: cap as u128,
                        bound: cap,
                    });
                }
                set.insert(f.clone());
                frontier.push(f);
            }
        }
    }
    Ok(set.into_iter().collect())
}

/// Greedy small generating set: walk the sorted elements, keeping each one
/// that enlarges the closure so far. Deterministic.
fn greedy_generators(degree: usize, elements: &[Permutation]) -> Vec<Permutation> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut have: BTreeSet<Permutation> = BTreeSet::new();
    have.insert(Permutation::identity(degree));
    for e in elements {
        if !have.contains(e) {
            gens.push(e.clone());
            let closure = close_under(degree, &gens, u64::MAX).expect("unbounded");
            have = closure.into_iter().collect();
            if have.len() == elements.len() {
                break;
            }
        }
    }
    if gens.is_empty() {
        gens.push(Permutation::identity(degree));
    }
    gens
}

impl SubgroupHandle {
    /// Subgroup generated by `gens`, all of which must lie in `parent`.
    pub fn from_generators(parent: &Arc<GroupHandle>, gens: &[Permutation]) -> Result<Self> {
        for g in gens {
            if !parent.contains(g)? {
                return Err(Error::NotInParent(g.to_cycle_string()));
            }
        }
        let elements = close_under(parent.degree(), gens, parent.enumeration_bound())?;
        Ok(Self::from_sorted_elements(parent, elements))
    }

    /// Internal constructor: `elements` must be a sorted, closed element set.
    pub(crate) fn from_sorted_elements(
        parent: &Arc<GroupHandle>,
        elements: Vec<Permutation>,
    ) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        let generators = greedy_generators(parent.degree(), &elements);
        SubgroupHandle {
            parent: Arc::clone(parent),
            generators,
            elements,
        }
    }

    pub fn trivial(parent: &Arc<GroupHandle>) -> Self {
        let id = Permutation::identity(parent.degree());
        SubgroupHandle {
            parent: Arc::clone(parent),
            generators: vec![id.clone()],
            elements: vec![id],
        }
    }

    /// The whole parent group viewed as a subgroup of itself.
    pub fn full(parent: &Arc<GroupHandle>) -> Result<Self> {
        let elements = parent.elements()?.to_vec();
        Ok(Self::from_sorted_elements(parent, elements))
    }

    pub fn parent(&self) -> &Arc<GroupHandle> {
        &self.parent
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Sorted element set.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.elements.iter().all(|e| other.contains(e))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i..].iter().all(|b| a.mul(b) == b.mul(a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements.iter().any(|e| e.order() == n)
    }

    pub fn exponent(&self) -> u64 {
        self.elements
            .iter()
            .fold(1u64, |acc, e| num_integer::lcm(acc, e.order()))
    }

    /// `g H g^-1` for `g` in the parent.
    pub fn conjugated_by(&self, g: &Permutation) -> Result<Self> {
        if !self.parent.contains(g)? {
            return Err(Error::NotInParent(g.to_cycle_string()));
        }
        let mut elements: Vec<Permutation> = self.elements.iter().map(|h| h.conj(g)).collect();
        elements.sort();
        Ok(Self::from_sorted_elements(&self.parent, elements))
    }

    pub(crate) fn same_parent(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }
}

/// Set intersection of two subgroups of the same parent.
pub fn intersect(h: &SubgroupHandle, k: &SubgroupHandle) -> Result<SubgroupHandle> {
    h.same_parent(k)?;
    let elements: Vec<Permutation> = h
        .elements()
        .iter()
        .filter(|e| k.contains(e))
        .cloned()
        .collect();
    Ok(SubgroupHandle::from_sorted_elements(h.parent(), elements))
}

/// N_G(H) = { g in G : gHg^-1 = H }, by full element scan over the parent.
pub fn normalizer(h: &SubgroupHandle) -> Result<SubgroupHandle> {
    let parent = h.parent();
    let elems = parent.elements()?;
    let mut keep = Vec::new();
    for g in elems {
        let gi = g.inverse();
        if h.generators()
            .iter()
            .all(|s| h.contains(&g.mul(s).mul(&gi)))
        {
            keep.push(g.clone());
        }
    }
    Ok(SubgroupHandle::from_sorted_elements(parent, keep))
}

/// C_G(H) = { g in G : gh = hg for all h in H }, by full element scan.
pub fn centralizer(h: &SubgroupHandle) -> Result<SubgroupHandle> {
    let parent = h.parent();
    let elems = parent.elements()?;
    let mut keep = Vec::new();
    for g in elems {
        if h.generators().iter().all(|s| g.mul(s) == s.mul(g)) {
            keep.push(g.clone());
        }
    }
    Ok(SubgroupHandle::from_sorted_elements(parent, keep))
}

/// Normal closure in H of the commutators of generator pairs; this equals
/// the subgroup generated by all commutators of H.
pub fn commutator_subgroup(h: &SubgroupHandle) -> Result<SubgroupHandle> {
    let degree = h.parent().degree();
    let mut seeds: BTreeSet<Permutation> = BTreeSet::new();
    for a in h.generators() {
        for b in h.generators() {
            let c = a.mul(b).mul(&a.inverse()).mul(&b.inverse());
            if !c.is_identity() {
                seeds.insert(c);
            }
        }
    }
    let bound = h.parent().enumeration_bound();
    loop {
        let gens: Vec<Permutation> = seeds.iter().cloned().collect();
        let closed = close_under(degree, &gens, bound)?;
        let closed_set: BTreeSet<&Permutation> = closed.iter().collect();
        let mut grew = false;
        for k in &closed {
            for g in h.generators() {
                let c = k.conj(g);
                if !closed_set.contains(&c) {
                    seeds.insert(c);
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(SubgroupHandle::from_sorted_elements(h.parent(), closed));
        }
    }
}

fn p_part(mut n: u64, p: u64) -> u64 {
    let mut part = 1;
    while n.is_multiple_of(p) {
        part *= p;
        n /= p;
    }
    part
}

pub fn is_prime(n: u64) -> bool {
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

/// The prime p for a nontrivial p-group handle.
pub fn prime_of_p_group(s: &SubgroupHandle) -> Result<u64> {
    let order = s.order();
    if order == 1 {
        return Err(Error::TrivialSubgroup);
    }
    let p = (2..=order)
        .find(|&d| is_prime(d) && order.is_multiple_of(d))
        .unwrap();
    if p_part(order, p) != order {
        return Err(Error::NotPGroup(order));
    }
    Ok(p)
}

/// Deterministic Sylow p-subgroup of the set `ambient` (a subgroup's sorted
/// element list): grow from the first p-element, extending through normalizer
/// p-elements until the full p-part is reached.
fn sylow_in(parent: &Arc<GroupHandle>, ambient: &[Permutation], p: u64) -> Result<SubgroupHandle> {
    let order = ambient.len() as u64;
    let target = p_part(order, p);
    if target == 1 {
        return Ok(SubgroupHandle::trivial(parent));
    }
    let is_p_element = |e: &Permutation| {
        let mut o = e.order();
        if o == 1 {
            return false;
        }
        while o.is_multiple_of(p) {
            o /= p;
        }
        o == 1
    };
    let first = ambient
        .iter()
        .find(|e| is_p_element(e))
        .ok_or_else(|| Error::Internal("p divides the order but no p-element found".into()))?;
    let mut current = close_under(parent.degree(), std::slice::from_ref(first), u64::MAX)?;
    while (current.len() as u64) < target {
        let current_set: BTreeSet<&Permutation> = current.iter().collect();
        let mut extended = false;
        for y in ambient {
            if current_set.contains(y) {
                continue;
            }
            let yi = y.inverse();
            if !current
                .iter()
                .all(|s| current_set.contains(&y.mul(s).mul(&yi)))
            {
                continue;
            }
            // order of the coset of y modulo the current subgroup
            let mut w = y.clone();
            let mut t = 1u64;
            while !current_set.contains(&w) {
                w = w.mul(y);
                t += 1;
            }
            let mut tt = t;
            while tt.is_multiple_of(p) {
                tt /= p;
            }
            if tt != 1 {
                continue;
            }
            let mut gens: Vec<Permutation> = current.clone();
            gens.push(y.clone());
            current = close_under(parent.degree(), &gens, u64::MAX)?;
            extended = true;
            break;
        }
        if !extended {
            return Err(Error::Internal(
                "Sylow growth stalled below the full p-part".into(),
            ));
        }
    }
    Ok(SubgroupHandle::from_sorted_elements(parent, current))
}

/// Deterministic Sylow p-subgroup of the whole group.
pub fn sylow_subgroup(parent: &Arc<GroupHandle>, p: u64) -> Result<SubgroupHandle> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !parent.order().is_multiple_of(p as u128) {
        return Err(Error::PrimeDoesNotDivide {
            p,
            order: parent.order(),
        });
    }
    let elems = parent.elements()?;
    sylow_in(parent, elems, p)
}

/// Deterministic Sylow p-subgroup of a subgroup. When p does not divide the
/// order the trivial subgroup is returned.
pub fn sylow_of(h: &SubgroupHandle, p: u64) -> Result<SubgroupHandle> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    sylow_in(h.parent(), h.elements(), p)
}

/// Subgroup generated by the union of the given element sets.
pub fn generated_subgroup(
    parent: &Arc<GroupHandle>,
    seeds: &[&[Permutation]],
) -> Result<SubgroupHandle> {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut seen: BTreeSet<Permutation> = BTreeSet::new();
    for set in seeds {
        for e in *set {
            if !parent.contains(e)? {
                return Err(Error::NotInParent(e.to_cycle_string()));
            }
            if seen.insert(e.clone()) && !e.is_identity() {
                gens.push(e.clone());
            }
        }
    }
    let elements = close_under(parent.degree(), &gens, parent.enumeration_bound())?;
    Ok(SubgroupHandle::from_sorted_elements(parent, elements))
}

/// Every subgroup {1} != Q' <= S exactly once (including S itself), for S a
/// p-group of order at most 2^12. Found by cyclic extension: repeatedly
/// adjoin one element to each known subgroup and close.
pub fn all_nontrivial_subgroups(s: &SubgroupHandle) -> Result<Vec<SubgroupHandle>> {
    let order = s.order();
    if order > SUBGROUP_ORDER_BOUND {
        return Err(Error::SubgroupTooLarge {
            order,
            bound: SUBGROUP_ORDER_BOUND,
        });
    }
    if order > 1 {
        let p = (2..=order)
            .find(|&d| is_prime(d) && order.is_multiple_of(d))
            .unwrap();
        if p_part(order, p) != order {
            return Err(Error::NotPGroup(order));
        }
    }
    let degree = s.parent().degree();
    let trivial: Vec<Permutation> = vec![Permutation::identity(degree)];
    let mut found: BTreeSet<Vec<Permutation>> = BTreeSet::new();
    found.insert(trivial.clone());
    let mut frontier: Vec<Vec<Permutation>> = vec![trivial];
    while let Some(t) = frontier.pop() {
        let t_set: BTreeSet<&Permutation> = t.iter().collect();
        for e in s.elements() {
            if t_set.contains(e) {
                continue;
            }
            let mut gens = t.clone();
            gens.push(e.clone());
            let u = close_under(degree, &gens, u64::MAX)?;
            if !found.contains(&u) {
                if found.len() >= SUBGROUP_COUNT_BOUND {
                    return Err(Error::TooManySubgroups {
                        bound: SUBGROUP_COUNT_BOUND,
                    });
                }
                found.insert(u.clone());
                frontier.push(u);
            }
        }
    }
    let mut out: Vec<SubgroupHandle> = found
        .into_iter()
        .filter(|elems| elems.len() > 1)
        .map(|elems| SubgroupHandle::from_sorted_elements(s.parent(), elems))
        .collect();
    out.sort_by(|a, b| (a.order(), a.elements()).cmp(&(b.order(), b.elements())));
    Ok(out)
}

/// Invariant factors of big/k for k normal in big with abelian quotient
/// (checked via generator-pair commutators).
pub fn quotient_abelian_invariants(
    big: &SubgroupHandle,
    k: &SubgroupHandle,
) -> Result<AbelianInvariants> {
    big.same_parent(k)?;
    if !k.is_subgroup_of(big) {
        return Err(Error::NotInParent(format!(
            "kernel of order {} is not inside the group of order {}",
            k.order(),
            big.order()
        )));
    }
    // normality: generators of big conjugate generators of k into k
    for g in big.generators() {
        for s in k.generators() {
            let c = s.conj(g);
            if !k.contains(&c) {
                return Err(Error::NotNormal(s.to_cycle_string()));
            }
        }
    }
    // abelian quotient: generator-pair commutators of big lie in k
    for a in big.generators() {
        for b in big.generators() {
            let c = a.mul(b).mul(&a.inverse()).mul(&b.inverse());
            if !k.contains(&c) {
                return Err(Error::QuotientNotAbelian(c.to_cycle_string()));
            }
        }
    }
    let q = quotient::QuotientGroup::new(big.elements(), k);
    q.invariant_factors()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn p(text: &str, degree: usize) -> Permutation {
        Permutation::parse_cycles(text, degree).unwrap()
    }

    fn a5() -> Arc<GroupHandle> {
        GroupHandle::from_generators(vec![p("(1,2,3)", 5), p("(1,2,3,4,5)", 5)]).unwrap()
    }

    fn s4() -> Arc<GroupHandle> {
        GroupHandle::from_generators(vec![p("(1,2)", 4), p("(1,2,3,4)", 4)]).unwrap()
    }

    fn s3() -> Arc<GroupHandle> {
        GroupHandle::from_generators(vec![p("(1,2)", 3), p("(1,2,3)", 3)]).unwrap()
    }

    #[test]
    fn handles_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<GroupHandle>();
        assert_send_sync::<SubgroupHandle>();
    }

    #[test]
    fn conjugate_by_identity_is_same() {
        let g = a5();
        let s = sylow_subgroup(&g, 2).unwrap();
        let c = s.conjugated_by(&Permutation::identity(5)).unwrap();
        assert_eq!(c, s);
    }

    #[test]
    fn conjugate_of_normal_subgroup_is_same() {
        let g = s3();
        let a3 = SubgroupHandle::from_generators(&g, &[p("(1,2,3)", 3)]).unwrap();
        for x in g.elements().unwrap() {
            assert_eq!(a3.conjugated_by(x).unwrap(), a3);
        }
    }

    #[test]
    fn a5_has_five_sylow_two_subgroups() {
        let g = a5();
        let s = sylow_subgroup(&g, 2).unwrap();
        assert_eq!(s.order(), 4);
        // a 5-cycle moves the fixed Sylow 2 to a different Klein four group
        let five_cycle = p("(1,2,3,4,5)", 5);
        let conj = s.conjugated_by(&five_cycle).unwrap();
        assert_ne!(conj, s);
        // oracle: count distinct conjugates over the whole group
        let mut distinct: BTreeSet<Vec<Permutation>> = BTreeSet::new();
        for x in g.elements().unwrap() {
            distinct.insert(s.conjugated_by(x).unwrap().elements().to_vec());
        }
        assert_eq!(distinct.len(), 5);
    }

    #[test]
    fn intersection_laws() {
        let g = a5();
        let s = sylow_subgroup(&g, 2).unwrap();
        assert_eq!(intersect(&s, &s).unwrap(), s);
        // two distinct Sylow 2-subgroups of A5 intersect trivially
        let other = s.conjugated_by(&p("(1,2,3,4,5)", 5)).unwrap();
        let meet = intersect(&s, &other).unwrap();
        assert!(meet.is_trivial());
        // g in the normalizer leaves the intersection full
        let n = normalizer(&s).unwrap();
        for x in n.elements() {
            let conj = s.conjugated_by(x).unwrap();
            assert_eq!(intersect(&s, &conj).unwrap(), s);
        }
    }

    #[test]
    fn normalizer_of_group_in_itself() {
        let g = s3();
        let full = SubgroupHandle::full(&g).unwrap();
        assert_eq!(normalizer(&full).unwrap(), full);
    }

    #[test]
    fn normalizer_of_sylow_two_in_a5_has_order_twelve() {
        let g = a5();
        let s = sylow_subgroup(&g, 2).unwrap();
        let n = normalizer(&s).unwrap();
        assert_eq!(n.order(), 12);
        // index equals the Sylow count, which is 5
        assert_eq!(g.order() / n.order() as u128, 5);
    }

    #[test]
    fn centralizer_of_trivial_subgroup_is_whole_group() {
        let g = s3();
        let t = SubgroupHandle::trivial(&g);
        assert_eq!(centralizer(&t).unwrap().order(), 6);
    }

    #[test]
    fn centralizer_inside_normalizer() {
        let g = s4();
        for prime in [2u64, 3] {
            let s = sylow_subgroup(&g, prime).unwrap();
            let c = centralizer(&s).unwrap();
            let n = normalizer(&s).unwrap();
            assert!(c.is_subgroup_of(&n));
            assert!(s.is_subgroup_of(&n));
        }
    }

    #[test]
    fn commutator_of_s4_is_a4() {
        let g = s4();
        let full = SubgroupHandle::full(&g).unwrap();
        let comm = commutator_subgroup(&full).unwrap();
        assert_eq!(comm.order(), 12);
        // element-level oracle: closure of all pairwise commutators
        let elems = g.elements().unwrap();
        let mut seeds = Vec::new();
        for a in elems {
            for b in elems {
                seeds.push(a.mul(b).mul(&a.inverse()).mul(&b.inverse()));
            }
        }
        seeds.sort();
        seeds.dedup();
        let oracle = generated_subgroup(&g, &[&seeds]).unwrap();
        assert_eq!(comm, oracle);
        // all elements of A4 are even
        assert!(comm.elements().iter().all(|e| {
            let transpositions: usize = e.cycles().iter().map(|c| c.len() - 1).sum();
            transpositions.is_multiple_of(2)
        }));
    }

    #[test]
    fn commutator_of_abelian_is_trivial() {
        let g = GroupHandle::from_generators(vec![p("(1,2)(3,4)", 4), p("(1,3)(2,4)", 4)]).unwrap();
        let full = SubgroupHandle::full(&g).unwrap();
        assert!(commutator_subgroup(&full).unwrap().is_trivial());
    }

    #[test]
    fn commutator_quotient_is_abelian() {
        let g = s4();
        let full = SubgroupHandle::full(&g).unwrap();
        let comm = commutator_subgroup(&full).unwrap();
        let inv = quotient_abelian_invariants(&full, &comm).unwrap();
        assert_eq!(inv.factors, vec![2]);
    }

    #[test]
    fn sylow_three_of_s3_is_a3() {
        let g = s3();
        let s = sylow_subgroup(&g, 3).unwrap();
        assert_eq!(s.order(), 3);
        assert!(s.contains(&p("(1,2,3)", 3)));
    }

    #[test]
    fn sylow_two_of_a5_is_klein_four() {
        let g = a5();
        let s = sylow_subgroup(&g, 2).unwrap();
        assert_eq!(s.order(), 4);
        assert!(!s.is_cyclic());
        assert!(s.is_abelian());
    }

    #[test]
    fn sylow_errors() {
        let g = s3();
        assert!(matches!(sylow_subgroup(&g, 4), Err(Error::NotPrime(4))));
        assert!(matches!(
            sylow_subgroup(&g, 5),
            Err(Error::PrimeDoesNotDivide { p: 5, .. })
        ));
    }

    #[test]
    fn sylow_conjugates_return_by_scanned_element() {
        // desk-scale Sylow theorem check: conjugates by 50 random elements are
        // all conjugate back into the chosen Sylow subgroup
        let g = s4();
        let s = sylow_subgroup(&g, 2).unwrap();
        let elems = g.elements().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let x = &elems[rng.gen_range(0..elems.len())];
            let conj = s.conjugated_by(x).unwrap();
            let back = elems.iter().any(|y| conj.conjugated_by(y).unwrap() == s);
            assert!(back);
        }
    }

    #[test]
    fn generated_by_identity_is_trivial() {
        let g = a5();
        let id = [Permutation::identity(5)];
        let sub = generated_subgroup(&g, &[&id]).unwrap();
        assert!(sub.is_trivial());
    }

    #[test]
    fn two_sylow_twos_generate_a5() {
        let g = a5();
        let s = sylow_subgroup(&g, 2).unwrap();
        let other = s.conjugated_by(&p("(1,2,3,4,5)", 5)).unwrap();
        let gen = generated_subgroup(&g, &[s.elements(), other.elements()]).unwrap();
        assert_eq!(gen.order() as u128, g.order());
    }

    #[test]
    fn generated_rejects_outside_elements() {
        let g = a5();
        let odd = [p("(1,2)", 5)];
        assert!(matches!(
            generated_subgroup(&g, &[&odd]),
            Err(Error::NotInParent(_))
        ));
    }

    #[test]
    fn subgroups_of_cyclic_prime_group() {
        let g = s3();
        let s = sylow_subgroup(&g, 3).unwrap();
        let subs = all_nontrivial_subgroups(&s).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0], s);
    }

    #[test]
    fn subgroups_of_klein_four() {
        let g = a5();
        let s = sylow_subgroup(&g, 2).unwrap();
        let subs = all_nontrivial_subgroups(&s).unwrap();
        assert_eq!(subs.len(), 4);
        assert_eq!(subs.iter().filter(|q| q.order() == 2).count(), 3);
        assert_eq!(subs.iter().filter(|q| q.order() == 4).count(), 1);
    }

    #[test]
    fn subgroups_of_elementary_abelian_nine() {
        // (9-1)/(3-1) = 4 subgroups of order 3, plus the group itself
        let g = GroupHandle::from_generators(vec![p("(1,2,3)", 6), p("(4,5,6)", 6)]).unwrap();
        let s = SubgroupHandle::full(&g).unwrap();
        let subs = all_nontrivial_subgroups(&s).unwrap();
        assert_eq!(subs.len(), 5);
        assert_eq!(subs.iter().filter(|q| q.order() == 3).count(), 4);
    }

    #[test]
    fn non_p_group_rejected() {
        let g = s3();
        let full = SubgroupHandle::full(&g).unwrap();
        assert!(matches!(
            all_nontrivial_subgroups(&full),
            Err(Error::NotPGroup(6))
        ));
    }

    #[test]
    fn quotient_invariants_examples() {
        let g = s3();
        let full = SubgroupHandle::full(&g).unwrap();
        // G/G is trivial
        assert!(quotient_abelian_invariants(&full, &full)
            .unwrap()
            .factors
            .is_empty());
        // S3/A3 = Z/2
        let a3 = SubgroupHandle::from_generators(&g, &[p("(1,2,3)", 3)]).unwrap();
        assert_eq!(
            quotient_abelian_invariants(&full, &a3).unwrap().factors,
            vec![2]
        );
    }

    #[test]
    fn operations_reject_mismatched_parents() {
        let g1 = s3();
        let g2 = GroupHandle::from_generators(vec![p("(1,2)", 3), p("(1,2,3)", 3)]).unwrap();
        let h1 = sylow_subgroup(&g1, 3).unwrap();
        let h2 = sylow_subgroup(&g2, 3).unwrap();
        assert!(matches!(intersect(&h1, &h2), Err(Error::ParentMismatch)));
        assert!(matches!(
            quotient_abelian_invariants(&h1, &h2),
            Err(Error::ParentMismatch)
        ));
    }

    #[test]
    fn quotient_rejects_non_normal_kernel() {
        let g = s3();
        let full = SubgroupHandle::full(&g).unwrap();
        let c2 = SubgroupHandle::from_generators(&g, &[p("(1,2)", 3)]).unwrap();
        assert!(matches!(
            quotient_abelian_invariants(&full, &c2),
            Err(Error::NotNormal(_))
        ));
    }

    #[test]
    fn quotient_rejects_nonabelian_quotient() {
        let g = s4();
        let full = SubgroupHandle::full(&g).unwrap();
        let t = SubgroupHandle::trivial(&g);
        assert!(matches!(
            quotient_abelian_invariants(&full, &t),
            Err(Error::QuotientNotAbelian(_))
        ));
    }

    #[test]
    fn abelian_sylow_centralizes_its_subgroups() {
        let g = a5();
        let s = sylow_subgroup(&g, 2).unwrap();
        for q in all_nontrivial_subgroups(&s).unwrap() {
            let c = centralizer(&q).unwrap();
            assert!(s.is_subgroup_of(&c));
        }
    }
}
