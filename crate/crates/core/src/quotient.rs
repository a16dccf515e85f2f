//! Coset quotients of subgroups, invariant factors of finite abelian groups,
//! and enumeration of their characters with values in Z/m.
//!
//! The quotient indices in scope are tiny, so everything runs on an explicit
//! multiplication table. Invariant factors come from iterated extraction of a
//! maximal-order element; characters are enumerated through a polycyclic
//! generating chain, extending each partial character consistently.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::subgroup::SubgroupHandle;

/// Invariant-factor decomposition d_1 | d_2 | ... | d_r of a finite abelian
/// group, each factor > 1. Empty for the trivial group. Since a finite
/// abelian group is isomorphic to its dual, these factors also describe the
/// character group.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AbelianInvariants {
    pub factors: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { factors: vec![] }
    }

    pub fn group_order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            write!(f, "trivial")
        } else {
            let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{}", d)).collect();
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// A finite group on indices 0..n with an explicit multiplication table;
/// index 0 is the identity.
pub(crate) struct SmallGroup {
    pub n: usize,
    mul: Vec<u32>,
}

impl SmallGroup {
    pub fn mul(&self, i: u32, j: u32) -> u32 {
        self.mul[i as usize * self.n + j as usize]
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n as u32).all(|i| (i..self.n as u32).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    pub fn element_order(&self, i: u32) -> u64 {
        let mut acc = i;
        let mut o = 1u64;
        while acc != 0 {
            acc = self.mul(acc, i);
            o += 1;
        }
        o
    }

    pub fn exponent(&self) -> u64 {
        (0..self.n as u32).fold(1u64, |acc, i| num_integer::lcm(acc, self.element_order(i)))
    }

    /// Quotient by the cyclic subgroup generated by `a` (requires abelian, so
    /// every subgroup is normal). Cosets are indexed in order of their
    /// smallest member index.
    fn quotient_by_cyclic(&self, a: u32) -> SmallGroup {
        let mut cyc = vec![0u32];
        let mut acc = a;
        while acc != 0 {
            cyc.push(acc);
            acc = self.mul(acc, a);
        }
        let mut coset_of: Vec<Option<u32>> = vec![None; self.n];
        let mut reps: Vec<u32> = Vec::new();
        for i in 0..self.n as u32 {
            if coset_of[i as usize].is_some() {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(i);
            for &c in &cyc {
                coset_of[self.mul(i, c) as usize] = Some(idx);
            }
        }
        let m = reps.len();
        let mut mul = vec![0u32; m * m];
        for (i, &ri) in reps.iter().enumerate() {
            for (j, &rj) in reps.iter().enumerate() {
                mul[i * m + j] = coset_of[self.mul(ri, rj) as usize].unwrap();
            }
        }
        SmallGroup { n: m, mul }
    }

    /// Invariant factors by repeatedly splitting off a maximal-order element.
    pub fn invariant_factors(&self) -> Vec<u64> {
        debug_assert!(self.is_abelian());
        if self.n == 1 {
            return vec![];
        }
        let a = (1..self.n as u32)
            .max_by_key(|&i| (self.element_order(i), std::cmp::Reverse(i)))
            .unwrap();
        let order = self.element_order(a);
        let q = self.quotient_by_cyclic(a);
        let mut factors = q.invariant_factors();
        factors.push(order);
        factors
    }

    /// All homomorphisms into Z/m, as value vectors indexed by element.
    /// Deterministic order. When m is the group exponent this is the full
    /// character group.
    pub fn characters_mod(&self, m: u64) -> Vec<Vec<u64>> {
        debug_assert!(self.is_abelian());
        // polycyclic chain: members holds the subgroup generated so far
        let mut members: Vec<bool> = vec![false; self.n];
        members[0] = true;
        let mut member_list: Vec<u32> = vec![0];
        let mut chars: Vec<Vec<u64>> = vec![{
            let mut v = vec![0u64; self.n];
            v[0] = 0;
            v
        }];
        for a in 1..self.n as u32 {
            if members[a as usize] {
                continue;
            }
            // relative order of a over the current subgroup
            let mut o = 1u64;
            let mut w = a;
            while !members[w as usize] {
                w = self.mul(w, a);
                o += 1;
            }
            // w = a^o lies in the current subgroup
            let mut next_chars = Vec::new();
            for chi in &chars {
                let target = chi[w as usize];
                for c in 0..m {
                    if (o * c) % m == target {
                        let mut ext = chi.clone();
                        for &h in &member_list {
                            let mut he = h;
                            for e in 1..o {
                                he = self.mul(he, a);
                                ext[he as usize] = (chi[h as usize] + e * c) % m;
                            }
                        }
                        next_chars.push(ext);
                    }
                }
            }
            chars = next_chars;
            let mut new_members = Vec::new();
            for &h in &member_list {
                let mut he = h;
                for _ in 1..o {
                    he = self.mul(he, a);
                    new_members.push(he);
                }
            }
            for h in new_members {
                if !members[h as usize] {
                    members[h as usize] = true;
                    member_list.push(h);
                }
            }
        }
        chars
    }
}

/// Cosets of a normal subgroup K inside the element list of a bigger
/// subgroup. Representatives are the lexicographically smallest members, so
/// coset 0 is K itself, represented by the identity.
pub struct QuotientGroup {
    reps: Vec<Permutation>,
    index_of: HashMap<Permutation, u32>,
    table: SmallGroup,
}

impl QuotientGroup {
    /// Builds the coset structure. Callers must have verified that `k` is
    /// normal in the group whose sorted element list is `big`.
    pub fn new(big: &[Permutation], k: &SubgroupHandle) -> Self {
        let mut index_of: HashMap<Permutation, u32> = HashMap::with_capacity(big.len());
        let mut reps: Vec<Permutation> = Vec::new();
        for e in big {
            if index_of.contains_key(e) {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(e.clone());
            for kk in k.elements() {
                index_of.insert(e.mul(kk), idx);
            }
        }
        let n = reps.len();
        let mut mul = vec![0u32; n * n];
        for (i, ri) in reps.iter().enumerate() {
            for (j, rj) in reps.iter().enumerate() {
                mul[i * n + j] = index_of[&ri.mul(rj)];
            }
        }
        QuotientGroup {
            reps,
            index_of,
            table: SmallGroup { n, mul },
        }
    }

    pub fn order(&self) -> u64 {
        self.reps.len() as u64
    }

    pub fn coset_index(&self, g: &Permutation) -> Option<u32> {
        self.index_of.get(g).copied()
    }

    pub fn representative(&self, coset: u32) -> &Permutation {
        &self.reps[coset as usize]
    }

    pub fn is_abelian(&self) -> bool {
        self.table.is_abelian()
    }

    pub fn exponent(&self) -> u64 {
        self.table.exponent()
    }

    pub fn invariant_factors(&self) -> Result<AbelianInvariants> {
        if !self.table.is_abelian() {
            return Err(Error::QuotientNotAbelian("coset table".into()));
        }
        Ok(AbelianInvariants {
            factors: self.table.invariant_factors(),
        })
    }

    /// All homomorphisms of the quotient into Z/m, pulled back to value maps
    /// on the original elements.
    pub fn characters_mod(&self, m: u64) -> Result<Vec<Vec<u64>>> {
        if !self.table.is_abelian() {
            return Err(Error::QuotientNotAbelian("coset table".into()));
        }
        Ok(self.table.characters_mod(m))
    }
}

/// Invariant factors of an abstract finite abelian group presented by its
/// element count and multiplication closure (index 0 = identity).
pub(crate) fn invariants_from_table(n: usize, mul: Vec<u32>) -> Result<Vec<u64>> {
    let g = SmallGroup { n, mul };
    if !g.is_abelian() {
        return Err(Error::QuotientNotAbelian("value table".into()));
    }
    Ok(g.invariant_factors())
}
