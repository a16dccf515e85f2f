//! The tower of local subgroups attached to a Sylow p-subgroup S: for every
//! nontrivial Q <= S the nested family
//!
//!   level 1:  diamond of N_G(Q)
//!   level i:  subgroup generated by all N_G(Q) ∩ (level i-1 of Q'),
//!             over all nontrivial Q' <= S
//!
//! iterated jointly over the whole family until no member changes. The
//! definition couples every Q to every Q', so stabilization is declared only
//! when the entire family is fixed for one more step. All nontrivial
//! subgroups of S are used literally, not conjugacy representatives.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupHandle;
use crate::subgroup::{
    all_nontrivial_subgroups, commutator_subgroup, generated_subgroup, intersect, normalizer,
    sylow_of, sylow_subgroup, SubgroupHandle,
};

/// Safety cap on tower depth; the family stabilizes long before this on any
/// group in scope.
const MAX_LEVELS: usize = 64;

/// diamond(H) = [H,H] * Sylow_p(H): the smallest normal subgroup of H whose
/// quotient is an abelian p'-group. When p does not divide |H| the Sylow
/// factor is trivial.
pub fn diamond(h: &SubgroupHandle, p: u64) -> Result<SubgroupHandle> {
    let comm = commutator_subgroup(h)?;
    let syl = sylow_of(h, p)?;
    let d = generated_subgroup(h.parent(), &[comm.elements(), syl.elements()])?;
    // the quotient H/diamond(H) must be an abelian p'-group
    if (h.order() / d.order()).is_multiple_of(p) {
        return Err(Error::Internal(
            "diamond quotient has order divisible by p".into(),
        ));
    }
    Ok(d)
}

/// Level 1 of the tower at Q: diamond of the normalizer of Q.
pub fn rho_one(q: &SubgroupHandle, p: u64) -> Result<SubgroupHandle> {
    if q.is_trivial() {
        return Err(Error::TrivialSubgroup);
    }
    let n = normalizer(q)?;
    diamond(&n, p)
}

/// The full family of local subgroups for all nontrivial Q <= S, with its
/// stabilization index.
pub struct RhoTower {
    prime: u64,
    sylow: SubgroupHandle,
    sylow_index: usize,
    q_list: Vec<SubgroupHandle>,
    normalizers: Vec<SubgroupHandle>,
    /// levels[i][k] is level i+1 at q_list[k]; levels beyond the
    /// stabilization index are not stored.
    levels: Vec<Vec<SubgroupHandle>>,
    stable_at: usize,
}

impl RhoTower {
    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn sylow(&self) -> &SubgroupHandle {
        &self.sylow
    }

    pub fn subgroups(&self) -> &[SubgroupHandle] {
        &self.q_list
    }

    pub fn normalizers(&self) -> &[SubgroupHandle] {
        &self.normalizers
    }

    /// Smallest i with level i equal to level i+1 across the whole family.
    pub fn stable_at(&self) -> usize {
        self.stable_at
    }

    /// Level `i >= 1` at q_list[k]; levels past stabilization repeat.
    pub fn rho(&self, q_index: usize, level: usize) -> &SubgroupHandle {
        assert!(level >= 1);
        &self.levels[level.min(self.stable_at) - 1][q_index]
    }

    pub fn rho_infinity(&self, q_index: usize) -> &SubgroupHandle {
        &self.levels[self.stable_at - 1][q_index]
    }

    pub fn sylow_entry_index(&self) -> usize {
        self.sylow_index
    }

    pub fn rho_sylow(&self, level: usize) -> &SubgroupHandle {
        self.rho(self.sylow_index, level)
    }

    pub fn rho_infinity_sylow(&self) -> &SubgroupHandle {
        self.rho_infinity(self.sylow_index)
    }

    pub fn to_report(&self, group_order: u128) -> TowerReport {
        let subgroups = self
            .q_list
            .iter()
            .enumerate()
            .map(|(k, q)| {
                let mut generators: Vec<String> =
                    q.generators().iter().map(|g| g.to_cycle_string()).collect();
                generators.sort();
                TowerEntry {
                    order: q.order(),
                    generators,
                    normalizer_order: self.normalizers[k].order(),
                    rho_orders: (1..=self.stable_at)
                        .map(|i| self.rho(k, i).order())
                        .collect(),
                }
            })
            .collect();
        TowerReport {
            prime: self.prime,
            group_order,
            sylow_order: self.sylow.order(),
            stable_at: self.stable_at,
            subgroups,
        }
    }
}

#[derive(Serialize)]
pub struct TowerEntry {
    pub order: u64,
    pub generators: Vec<String>,
    pub normalizer_order: u64,
    pub rho_orders: Vec<u64>,
}

#[derive(Serialize)]
pub struct TowerReport {
    pub prime: u64,
    pub group_order: u128,
    pub sylow_order: u64,
    pub stable_at: usize,
    pub subgroups: Vec<TowerEntry>,
}

/// Builds the tower for the deterministic Sylow p-subgroup of `g`.
pub fn build_tower(g: &Arc<GroupHandle>, p: u64) -> Result<RhoTower> {
    let sylow = sylow_subgroup(g, p)?;
    build_tower_from_sylow(&sylow, p)
}

/// Builds the tower for a given Sylow p-subgroup handle.
pub fn build_tower_from_sylow(sylow: &SubgroupHandle, p: u64) -> Result<RhoTower> {
    let q_list = all_nontrivial_subgroups(sylow)?;
    let sylow_index = q_list.iter().position(|q| q == sylow).ok_or_else(|| {
        Error::Internal("Sylow subgroup missing from its own subgroup list".into())
    })?;
    let normalizers: Vec<SubgroupHandle> = q_list.iter().map(normalizer).collect::<Result<_>>()?;
    let level1: Vec<SubgroupHandle> = normalizers
        .iter()
        .map(|n| diamond(n, p))
        .collect::<Result<_>>()?;
    let mut levels = vec![level1];
    loop {
        let prev = levels.last().unwrap();
        let next: Vec<SubgroupHandle> = q_list
            .iter()
            .enumerate()
            .map(|(k, _)| {
                let pieces: Vec<SubgroupHandle> = prev
                    .iter()
                    .map(|r| intersect(&normalizers[k], r))
                    .collect::<Result<_>>()?;
                let seeds: Vec<&[crate::perm::Permutation]> =
                    pieces.iter().map(|s| s.elements()).collect();
                generated_subgroup(normalizers[k].parent(), &seeds)
            })
            .collect::<Result<_>>()?;
        if next == *prev {
            let stable_at = levels.len();
            return Ok(RhoTower {
                prime: p,
                sylow: sylow.clone(),
                sylow_index,
                q_list,
                normalizers,
                levels,
                stable_at,
            });
        }
        levels.push(next);
        if levels.len() > MAX_LEVELS {
            return Err(Error::Internal(format!(
                "tower failed to stabilize within {} levels",
                MAX_LEVELS
            )));
        }
    }
}
