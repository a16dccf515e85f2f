//! Weak homomorphisms made executable.
//!
//! A table chi: G -> Z/m (additive stand-in for m-th roots of unity in a
//! field of characteristic p, gcd(m, p) = 1) is a weak homomorphism for the
//! Sylow p-subgroup S when
//!
//!   (a) chi(s) = 0 for s in S,
//!   (b) chi(g) = 0 whenever S and gSg^-1 intersect trivially,
//!   (c) chi(ab) = chi(a) + chi(b) whenever S ∩ aSa^-1 ∩ (ab)S(ab)^-1 != 1.
//!
//! This module verifies the axioms (exhaustively or on seeded samples),
//! factors group elements through centralizers of Sylow intersections,
//! extends characters across the Frattini factorization, constructs the
//! unique weak homomorphism extending a character of N_G(S) that kills the
//! level-2 tower subgroup, and enumerates the whole group of weak
//! homomorphisms.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::kgroup;
use crate::perm::Permutation;
use crate::quotient::{invariants_from_table, AbelianInvariants, QuotientGroup};
use crate::subgroup::{
    centralizer, intersect, normalizer, quotient_abelian_invariants, SubgroupHandle,
};
use crate::tower::{build_tower_from_sylow, diamond};

/// An element of Z/m standing for an m-th root of unity; m is kept coprime
/// to the ambient prime p.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct CharValue {
    pub residue: u64,
    pub modulus: u64,
}

impl CharValue {
    pub fn new(residue: u64, modulus: u64) -> Self {
        CharValue {
            residue: residue % modulus.max(1),
            modulus,
        }
    }

    pub fn add(&self, other: &CharValue) -> Result<CharValue> {
        if self.modulus != other.modulus {
            return Err(Error::Precondition(format!(
                "mismatched moduli {} and {}",
                self.modulus, other.modulus
            )));
        }
        Ok(CharValue::new(self.residue + other.residue, self.modulus))
    }
}

/// A value table on a fixed domain of group elements, additive modulo m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub modulus: u64,
    pub values: BTreeMap<Permutation, u64>,
}

impl CharacterTable {
    pub fn trivial_on(elements: &[Permutation], modulus: u64) -> Self {
        CharacterTable {
            modulus,
            values: elements.iter().map(|e| (e.clone(), 0)).collect(),
        }
    }

    pub fn value(&self, g: &Permutation) -> Result<u64> {
        self.values
            .get(g)
            .copied()
            .ok_or_else(|| Error::PartialTable(g.to_cycle_string()))
    }

    pub fn char_value(&self, g: &Permutation) -> Result<CharValue> {
        Ok(CharValue::new(self.value(g)?, self.modulus))
    }

    /// Checks the additive homomorphism law on generator x element pairs,
    /// which suffices for the whole subgroup.
    pub fn check_homomorphism_on(&self, sub: &SubgroupHandle) -> Result<()> {
        let m = self.modulus.max(1);
        for g in sub.generators() {
            let vg = self.value(g)?;
            for h in sub.elements() {
                let vh = self.value(h)?;
                let prod = g.mul(h);
                if self.value(&prod)? != (vg + vh) % m {
                    return Err(Error::NotHomomorphism(
                        g.to_cycle_string(),
                        h.to_cycle_string(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn vanishes_on(&self, elements: &[Permutation]) -> Result<bool> {
        for e in elements {
            if self.value(e)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn restricted_to(&self, elements: &[Permutation]) -> Result<CharacterTable> {
        let mut values = BTreeMap::new();
        for e in elements {
            values.insert(e.clone(), self.value(e)?);
        }
        Ok(CharacterTable {
            modulus: self.modulus,
            values,
        })
    }
}

/// A candidate weak homomorphism: a value table over the whole group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakHom {
    pub modulus: u64,
    pub values: BTreeMap<Permutation, u64>,
}

impl WeakHom {
    pub fn value(&self, g: &Permutation) -> Result<u64> {
        self.values
            .get(g)
            .copied()
            .ok_or_else(|| Error::PartialTable(g.to_cycle_string()))
    }

    pub fn vanishes_on(&self, elements: &[Permutation]) -> Result<bool> {
        for e in elements {
            if self.value(e)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Pointwise sum; both tables must share modulus and domain.
    pub fn add(&self, other: &WeakHom) -> Result<WeakHom> {
        if self.modulus != other.modulus {
            return Err(Error::Precondition(format!(
                "mismatched moduli {} and {}",
                self.modulus, other.modulus
            )));
        }
        let m = self.modulus.max(1);
        let mut values = BTreeMap::new();
        for (g, v) in &self.values {
            let w = other.value(g)?;
            values.insert(g.clone(), (v + w) % m);
        }
        Ok(WeakHom {
            modulus: self.modulus,
            values,
        })
    }

    pub fn restricted_to(&self, elements: &[Permutation]) -> Result<CharacterTable> {
        let mut values = BTreeMap::new();
        for e in elements {
            values.insert(e.clone(), self.value(e)?);
        }
        Ok(CharacterTable {
            modulus: self.modulus,
            values,
        })
    }

    /// JSON form: {"modulus": m, "values": [[cycles, residue], ...]},
    /// elements in sorted order.
    pub fn to_json(&self) -> serde_json::Value {
        let values: Vec<serde_json::Value> = self
            .values
            .iter()
            .map(|(g, v)| json!([g.to_cycle_string(), v]))
            .collect();
        json!({ "modulus": self.modulus, "values": values })
    }

    pub fn from_json(value: &serde_json::Value, degree: usize) -> Result<WeakHom> {
        let modulus = value
            .get("modulus")
            .and_then(|v| v.as_u64())
            .ok_or_else(|| Error::Parse("missing or bad \"modulus\"".into()))?;
        let list = value
            .get("values")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Parse("missing or bad \"values\"".into()))?;
        let mut values = BTreeMap::new();
        for entry in list {
            let pair = entry
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse("value entries must be [cycles, residue]".into()))?;
            let cycles = pair[0]
                .as_str()
                .ok_or_else(|| Error::Parse("element must be a cycle string".into()))?;
            let residue = pair[1]
                .as_u64()
                .ok_or_else(|| Error::Parse("residue must be a nonnegative integer".into()))?;
            let g = Permutation::parse_cycles(cycles, degree)?;
            values.insert(g, residue % modulus.max(1));
        }
        Ok(WeakHom { modulus, values })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    Exhaustive,
    Sampled { count: u64, seed: u64 },
}

impl VerifyMode {
    pub fn label(&self) -> String {
        match self {
            VerifyMode::Exhaustive => "exhaustive".to_string(),
            VerifyMode::Sampled { count, seed } => {
                format!("sampled(count={}, seed={})", count, seed)
            }
        }
    }
}

/// Knobs for axiom verification; `exhaustive_pair_bound` is the largest group
/// order that still gets the full |G|^2 pair check.
#[derive(Clone, Copy, Debug)]
pub struct VerifySettings {
    pub exhaustive_pair_bound: u64,
    pub sample_count: u64,
    pub seed: u64,
}

impl Default for VerifySettings {
    fn default() -> Self {
        VerifySettings {
            exhaustive_pair_bound: 10_000,
            sample_count: 1_000_000,
            seed: 0,
        }
    }
}

impl VerifySettings {
    pub fn mode_for(&self, group_order: u128) -> VerifyMode {
        if group_order <= self.exhaustive_pair_bound as u128 {
            VerifyMode::Exhaustive
        } else {
            VerifyMode::Sampled {
                count: self.sample_count,
                seed: self.seed,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    /// Which axiom broke: 'a', 'b', or 'c'.
    pub axiom: char,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub passed: bool,
    pub mode: String,
    pub failure: Option<AxiomFailure>,
}

struct PairChecker<'a> {
    elems: &'a [Permutation],
    group: &'a GroupHandle,
    values: Vec<u64>,
    modulus: u64,
    /// element indices of S ∩ gSg^-1 per group element, ascending
    t_sets: Vec<Vec<u32>>,
    id_index: u32,
}

impl<'a> PairChecker<'a> {
    fn new(g: &'a Arc<GroupHandle>, s: &SubgroupHandle, table: &WeakHom) -> Result<Self> {
        let elems = g.elements()?;
        let mut values = Vec::with_capacity(elems.len());
        for e in elems {
            values.push(table.value(e)?);
        }
        let s_sorted = s.elements();
        let mut t_sets = Vec::with_capacity(elems.len());
        for e in elems {
            let mut conj: Vec<Permutation> = s_sorted.iter().map(|x| x.conj(e)).collect();
            conj.sort();
            let mut ids: Vec<u32> = Vec::new();
            let mut i = 0;
            let mut j = 0;
            while i < s_sorted.len() && j < conj.len() {
                match s_sorted[i].cmp(&conj[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        ids.push(
                            g.element_index(&s_sorted[i])
                                .ok_or_else(|| Error::NotInParent(s_sorted[i].to_cycle_string()))?,
                        );
                        i += 1;
                        j += 1;
                    }
                }
            }
            ids.sort_unstable();
            t_sets.push(ids);
        }
        let id_index = g
            .element_index(&g.identity())
            .ok_or_else(|| Error::Internal("identity missing from element index".into()))?;
        Ok(PairChecker {
            elems,
            group: g,
            values,
            modulus: table.modulus.max(1),
            t_sets,
            id_index,
        })
    }

    /// Axiom (c) on one ordered pair; None means the pair is unconstrained.
    fn pair_violation(&self, ai: usize, bi: usize) -> Option<AxiomFailure> {
        let a = &self.elems[ai];
        // S ∩ aS ∩ abS is nontrivial iff some nonidentity t in S ∩ bS has
        // a t a^-1 inside S ∩ aS
        let mut nontrivial = false;
        for &ti in &self.t_sets[bi] {
            if ti == self.id_index {
                continue;
            }
            let conj = self.elems[ti as usize].conj(a);
            if let Some(ci) = self.group.element_index(&conj) {
                if self.t_sets[ai].binary_search(&ci).is_ok() {
                    nontrivial = true;
                    break;
                }
            }
        }
        if !nontrivial {
            return None;
        }
        let ab = a.mul(&self.elems[bi]);
        let abi = self.group.element_index(&ab).expect("closed") as usize;
        if self.values[abi] != (self.values[ai] + self.values[bi]) % self.modulus {
            return Some(AxiomFailure {
                axiom: 'c',
                witness: vec![
                    self.elems[ai].to_cycle_string(),
                    self.elems[bi].to_cycle_string(),
                ],
            });
        }
        None
    }
}

/// Checks the three weak-homomorphism axioms for `table` over `g` with
/// Sylow subgroup `s`. Axioms (a) and (b) are always exhaustive; mode picks
/// the pair set for axiom (c).
pub fn verify_weakhom(
    g: &Arc<GroupHandle>,
    s: &SubgroupHandle,
    table: &WeakHom,
    mode: VerifyMode,
) -> Result<VerifyReport> {
    let p = crate::subgroup::prime_of_p_group(s)?;
    if num_integer::gcd(table.modulus.max(1), p) != 1 {
        return Err(Error::Precondition(format!(
            "modulus {} is not coprime to the prime {}",
            table.modulus, p
        )));
    }
    let checker = PairChecker::new(g, s, table)?;
    let fail = |failure: AxiomFailure| VerifyReport {
        passed: false,
        mode: mode.label(),
        failure: Some(failure),
    };
    // (a) values vanish on S
    for x in s.elements() {
        if table.value(x)? != 0 {
            return Ok(fail(AxiomFailure {
                axiom: 'a',
                witness: vec![x.to_cycle_string()],
            }));
        }
    }
    // (b) values vanish off the Sylow-intersection support
    for (i, e) in checker.elems.iter().enumerate() {
        if checker.t_sets[i].len() == 1 && checker.values[i] != 0 {
            return Ok(fail(AxiomFailure {
                axiom: 'b',
                witness: vec![e.to_cycle_string()],
            }));
        }
    }
    // (c)
    let n = checker.elems.len();
    match mode {
        VerifyMode::Exhaustive => {
            for ai in 0..n {
                for bi in 0..n {
                    if let Some(f) = checker.pair_violation(ai, bi) {
                        return Ok(fail(f));
                    }
                }
            }
        }
        VerifyMode::Sampled { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..count {
                let ai = rng.gen_range(0..n);
                let bi = rng.gen_range(0..n);
                if let Some(f) = checker.pair_violation(ai, bi) {
                    return Ok(fail(f));
                }
            }
        }
    }
    Ok(VerifyReport {
        passed: true,
        mode: mode.label(),
        failure: None,
    })
}

/// Writes g = c n with c centralizing R and n normalizing S, for abelian S
/// and a nontrivial R inside S ∩ gSg^-1. Deterministic: c is the first
/// element of the centralizer of R (in enumeration order) that conjugates S
/// onto gSg^-1.
pub fn burnside_decompose(
    g: &Arc<GroupHandle>,
    s: &SubgroupHandle,
    r: &SubgroupHandle,
    x: &Permutation,
) -> Result<(Permutation, Permutation)> {
    if !s.is_abelian() {
        return Err(Error::Precondition("S is not abelian".into()));
    }
    if r.is_trivial() {
        return Err(Error::Precondition("R is trivial".into()));
    }
    if !g.contains(x)? {
        return Err(Error::NotInParent(x.to_cycle_string()));
    }
    let mut xs: Vec<Permutation> = s.elements().iter().map(|e| e.conj(x)).collect();
    xs.sort();
    for e in r.elements() {
        if !s.contains(e) || xs.binary_search(e).is_err() {
            return Err(Error::Precondition(
                "R is not contained in S ∩ gSg^-1".into(),
            ));
        }
    }
    let cent = centralizer(r)?;
    for c in cent.elements() {
        let mut cs: Vec<Permutation> = s.elements().iter().map(|e| e.conj(c)).collect();
        cs.sort();
        if cs == xs {
            let n = c.inverse().mul(x);
            return Ok((c.clone(), n));
        }
    }
    Err(Error::Internal(
        "no centralizer element fuses the Sylow conjugates".into(),
    ))
}

/// Extends a character phi of N_H(S) that vanishes on N_H(S) ∩ diamond(H)
/// to the unique character of H agreeing with phi; requires the Frattini
/// factorization N_H(S) diamond(H) = H.
pub fn frattini_extend(
    h: &SubgroupHandle,
    s: &SubgroupHandle,
    phi: &CharacterTable,
) -> Result<CharacterTable> {
    let p = crate::subgroup::prime_of_p_group(s)?;
    // N_H(S) = elements of H normalizing S
    let nh_elems: Vec<Permutation> = h
        .elements()
        .iter()
        .filter(|x| s.generators().iter().all(|gen| s.contains(&gen.conj(x))))
        .cloned()
        .collect();
    let nh = SubgroupHandle::from_sorted_elements(h.parent(), nh_elems);
    phi.check_homomorphism_on(&nh)?;
    let dia = diamond(h, p)?;
    let meet = intersect(&nh, &dia)?;
    if !phi.vanishes_on(meet.elements())? {
        return Err(Error::Precondition(
            "phi does not vanish on N_H(S) ∩ diamond(H)".into(),
        ));
    }
    let cosets = QuotientGroup::new(h.elements(), &dia);
    let mut reps: Vec<Option<&Permutation>> = vec![None; cosets.order() as usize];
    for x in nh.elements() {
        let idx = cosets
            .coset_index(x)
            .ok_or_else(|| Error::Internal("normalizer element missing from coset map".into()))?
            as usize;
        if reps[idx].is_none() {
            reps[idx] = Some(x);
        }
    }
    let mut values = BTreeMap::new();
    for x in h.elements() {
        let idx = cosets.coset_index(x).unwrap() as usize;
        let rep = reps[idx].ok_or_else(|| {
            Error::Precondition("Frattini factorization N_H(S) diamond(H) = H fails".into())
        })?;
        values.insert(x.clone(), phi.value(rep)?);
    }
    Ok(CharacterTable {
        modulus: phi.modulus,
        values,
    })
}

enum Factorization {
    TrivialMeet,
    Through {
        slot: usize,
        c: Permutation,
        n: Permutation,
    },
}

struct Slot {
    /// cosets of diamond(C_G(R)) in C_G(R)
    cosets: QuotientGroup,
    /// per coset, a representative inside N_G(S) ∩ C_G(R)
    reps: Vec<Permutation>,
    /// first centralizer element carrying S to each Sylow conjugate
    first_c: HashMap<Vec<Permutation>, Permutation>,
}

/// Precomputed, character-independent data for building weak homomorphisms
/// over a fixed (G, S, p).
pub struct ThetaBuilder {
    group: Arc<GroupHandle>,
    sylow: SubgroupHandle,
    prime: u64,
    norm: SubgroupHandle,
    kernel_floor: SubgroupHandle,
    slots: Vec<Slot>,
    factorizations: Vec<Factorization>,
}

impl ThetaBuilder {
    /// `kernel_floor` is the level-2 tower subgroup at S: characters must
    /// vanish on it before a weak homomorphism can extend them.
    pub fn new(
        g: &Arc<GroupHandle>,
        s: &SubgroupHandle,
        p: u64,
        norm: SubgroupHandle,
        kernel_floor: SubgroupHandle,
    ) -> Result<Self> {
        let elems = g.elements()?;
        let s_sorted = s.elements().to_vec();
        let mut slot_of: HashMap<Vec<Permutation>, usize> = HashMap::new();
        let mut slots: Vec<Slot> = Vec::new();
        let mut factorizations = Vec::with_capacity(elems.len());
        for x in elems {
            let mut xs: Vec<Permutation> = s_sorted.iter().map(|e| e.conj(x)).collect();
            xs.sort();
            let meet: Vec<Permutation> = s_sorted
                .iter()
                .filter(|e| xs.binary_search(e).is_ok())
                .cloned()
                .collect();
            if meet.len() == 1 {
                factorizations.push(Factorization::TrivialMeet);
                continue;
            }
            let slot = match slot_of.get(&meet) {
                Some(&k) => k,
                None => {
                    let r = SubgroupHandle::from_sorted_elements(g, meet.clone());
                    let cg = centralizer(&r)?;
                    let nh = intersect(&norm, &cg)?;
                    let dia = diamond(&cg, p)?;
                    let cosets = QuotientGroup::new(cg.elements(), &dia);
                    let mut reps: Vec<Option<Permutation>> = vec![None; cosets.order() as usize];
                    for y in nh.elements() {
                        let idx = cosets.coset_index(y).unwrap() as usize;
                        if reps[idx].is_none() {
                            reps[idx] = Some(y.clone());
                        }
                    }
                    let reps: Vec<Permutation> =
                        reps.into_iter().collect::<Option<_>>().ok_or_else(|| {
                            Error::Precondition(
                                "Frattini factorization fails on a centralizer".into(),
                            )
                        })?;
                    let mut first_c: HashMap<Vec<Permutation>, Permutation> = HashMap::new();
                    for c in cg.elements() {
                        let mut cs: Vec<Permutation> = s_sorted.iter().map(|e| e.conj(c)).collect();
                        cs.sort();
                        first_c.entry(cs).or_insert_with(|| c.clone());
                    }
                    slots.push(Slot {
                        cosets,
                        reps,
                        first_c,
                    });
                    slot_of.insert(meet, slots.len() - 1);
                    slots.len() - 1
                }
            };
            let c = slots[slot].first_c.get(&xs).ok_or_else(|| {
                Error::Internal("Sylow conjugates not fused inside the centralizer".into())
            })?;
            let n = c.inverse().mul(x);
            debug_assert!(norm.contains(&n));
            factorizations.push(Factorization::Through {
                slot,
                c: c.clone(),
                n,
            });
        }
        Ok(ThetaBuilder {
            group: Arc::clone(g),
            sylow: s.clone(),
            prime: p,
            norm,
            kernel_floor,
            slots,
            factorizations,
        })
    }

    pub fn normalizer(&self) -> &SubgroupHandle {
        &self.norm
    }

    pub fn kernel_floor(&self) -> &SubgroupHandle {
        &self.kernel_floor
    }

    pub fn sylow(&self) -> &SubgroupHandle {
        &self.sylow
    }

    fn psi_value(&self, slot: usize, chi: &CharacterTable, c: &Permutation) -> Result<u64> {
        let sl = &self.slots[slot];
        let idx = sl
            .cosets
            .coset_index(c)
            .ok_or_else(|| Error::Internal("centralizer element missing from cosets".into()))?;
        chi.value(&sl.reps[idx as usize])
    }

    /// The weak homomorphism extending `chi`, a character of N_G(S) that
    /// vanishes on the kernel floor.
    pub fn theta(&self, chi: &CharacterTable) -> Result<WeakHom> {
        if num_integer::gcd(chi.modulus.max(1), self.prime) != 1 {
            return Err(Error::Precondition(format!(
                "modulus {} is not coprime to the prime {}",
                chi.modulus, self.prime
            )));
        }
        chi.check_homomorphism_on(&self.norm)?;
        if !chi.vanishes_on(self.kernel_floor.elements())? {
            return Err(Error::Precondition(
                "character does not vanish on rho^2(S)".into(),
            ));
        }
        let m = chi.modulus.max(1);
        let elems = self.group.elements()?;
        let mut values = BTreeMap::new();
        for (i, x) in elems.iter().enumerate() {
            let v = match &self.factorizations[i] {
                Factorization::TrivialMeet => 0,
                Factorization::Through { slot, c, n } => {
                    (self.psi_value(*slot, chi, c)? + chi.value(n)?) % m
                }
            };
            values.insert(x.clone(), v);
        }
        Ok(WeakHom {
            modulus: chi.modulus,
            values,
        })
    }
}

/// Builds the unique weak homomorphism whose restriction to N_G(S) is `chi`.
/// Requires abelian S and a character vanishing on the level-2 tower
/// subgroup.
pub fn theta_from_chi(
    g: &Arc<GroupHandle>,
    s: &SubgroupHandle,
    chi: &CharacterTable,
) -> Result<WeakHom> {
    let p = crate::subgroup::prime_of_p_group(s)?;
    if !s.is_abelian() {
        return Err(Error::SylowNotAbelian(p));
    }
    let tower = build_tower_from_sylow(s, p)?;
    let norm = normalizer(s)?;
    let builder = ThetaBuilder::new(g, s, p, norm, tower.rho_sylow(2).clone())?;
    builder.theta(chi)
}

/// The group of weak homomorphisms, enumerated through the characters of
/// N_G(S) / rho^2(S).
pub struct AGroup {
    pub prime: u64,
    pub modulus: u64,
    /// index of the level-2 tower subgroup in N_G(S)
    pub index: u64,
    pub characters: Vec<CharacterTable>,
    pub weak_homs: Vec<WeakHom>,
    pub verify_reports: Vec<VerifyReport>,
    pub restriction_ok: Vec<bool>,
    pub quotient_invariants: AbelianInvariants,
    /// invariant factors of the weak-homomorphism set under pointwise
    /// addition, computed from the tables themselves
    pub invariants: AbelianInvariants,
    pub mode: String,
}

impl AGroup {
    pub fn all_verified(&self) -> bool {
        self.verify_reports.iter().all(|r| r.passed) && self.restriction_ok.iter().all(|&b| b)
    }
}

/// Enumerates A(G): all characters of N_G(S)/rho^2(S), each extended to a
/// weak homomorphism and verified. For nonabelian S the fusion-control and
/// Frattini hypotheses are checked first and failure is an error.
pub fn enumerate_a_group(
    g: &Arc<GroupHandle>,
    s: &SubgroupHandle,
    settings: &VerifySettings,
) -> Result<AGroup> {
    let p = crate::subgroup::prime_of_p_group(s)?;
    if !s.is_abelian() {
        let fusion = kgroup::controls_fusion(g, p)?;
        let frattini = kgroup::frattini_condition(g, p)?;
        if !(fusion.controls && frattini.holds) {
            let mut missing = Vec::new();
            if !fusion.controls {
                missing.push("normalizer does not control fusion");
            }
            if !frattini.holds {
                missing.push("Frattini factorization fails on a centralizer");
            }
            return Err(Error::HypothesesUnverified(missing.join("; ")));
        }
    }
    let tower = build_tower_from_sylow(s, p)?;
    let norm = normalizer(s)?;
    let floor = tower.rho_sylow(2).clone();
    let quotient_invariants = quotient_abelian_invariants(&norm, &floor)?;
    let index = norm.order() / floor.order();
    let cosets = QuotientGroup::new(norm.elements(), &floor);
    let modulus = cosets.exponent();
    let char_vectors = cosets.characters_mod(modulus)?;
    let characters: Vec<CharacterTable> = char_vectors
        .iter()
        .map(|vec| {
            let values = norm
                .elements()
                .iter()
                .map(|e| {
                    let idx = cosets.coset_index(e).unwrap() as usize;
                    (e.clone(), vec[idx])
                })
                .collect();
            CharacterTable { modulus, values }
        })
        .collect();
    let builder = ThetaBuilder::new(g, s, p, norm.clone(), floor)?;
    let mode = settings.mode_for(g.order());
    let mut weak_homs = Vec::with_capacity(characters.len());
    let mut verify_reports = Vec::with_capacity(characters.len());
    let mut restriction_ok = Vec::with_capacity(characters.len());
    for chi in &characters {
        let theta = builder.theta(chi)?;
        verify_reports.push(verify_weakhom(g, s, &theta, mode)?);
        let restr = theta.restricted_to(norm.elements())?;
        restriction_ok.push(&restr == chi);
        weak_homs.push(theta);
    }
    let invariants = weak_hom_group_invariants(g, &weak_homs)?;
    Ok(AGroup {
        prime: p,
        modulus,
        index,
        characters,
        weak_homs,
        verify_reports,
        restriction_ok,
        quotient_invariants,
        invariants,
        mode: mode.label(),
    })
}

/// Invariant factors of a set of weak homomorphisms under pointwise
/// addition; errors if the set is not closed.
pub fn weak_hom_group_invariants(
    g: &Arc<GroupHandle>,
    homs: &[WeakHom],
) -> Result<AbelianInvariants> {
    let elems = g.elements()?;
    let m = homs.first().map(|h| h.modulus).unwrap_or(1).max(1);
    let mut vectors: Vec<Vec<u64>> = Vec::with_capacity(homs.len());
    for h in homs {
        if h.modulus.max(1) != m {
            return Err(Error::Precondition("mixed moduli in the set".into()));
        }
        let mut v = Vec::with_capacity(elems.len());
        for e in elems {
            v.push(h.value(e)?);
        }
        vectors.push(v);
    }
    let index_of: HashMap<&Vec<u64>, usize> =
        vectors.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let zero = vec![0u64; elems.len()];
    let zero_idx = *index_of
        .get(&zero)
        .ok_or_else(|| Error::Precondition("set lacks the trivial table".into()))?;
    // reorder so the identity sits at index 0
    let swap = |i: usize| -> usize {
        if i == 0 {
            zero_idx
        } else if i == zero_idx {
            0
        } else {
            i
        }
    };
    let n = vectors.len();
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let sum: Vec<u64> = vectors[swap(i)]
                .iter()
                .zip(&vectors[swap(j)])
                .map(|(a, b)| (a + b) % m)
                .collect();
            let k = *index_of.get(&sum).ok_or_else(|| {
                Error::Precondition("set is not closed under pointwise addition".into())
            })?;
            mul[i * n + j] = swap(k) as u32;
        }
    }
    Ok(AbelianInvariants {
        factors: invariants_from_table(n, mul)?,
    })
}
