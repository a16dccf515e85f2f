//! Computational engine for the torsion part of the group of endotrivial
//! module classes of a finite group: permutation-group substrate, Sylow-local
//! subgroup computations, the tower of local subgroups, weak homomorphisms,
//! and finite-field matrix constructions for the linear-group test cases.

pub mod acceptance;
pub mod catalog;
pub mod error;
pub mod gf;
pub mod group;
pub mod kgroup;
pub mod perm;
pub mod psl;
pub mod quotient;
pub mod report;
pub mod subgroup;
pub mod tower;
pub mod weakhom;

pub use error::{Error, Result};
pub use group::GroupHandle;
pub use perm::Permutation;
pub use quotient::AbelianInvariants;
pub use subgroup::SubgroupHandle;
