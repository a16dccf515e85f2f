//! Isomorphism-invariance checks: the torsion invariants agree across
//! different permutation realizations of the same abstract group, and match
//! independently known values.

use endotriv::catalog::GroupSpec;
use endotriv::kgroup::k_group;

fn invariants(spec: GroupSpec, p: u64) -> Vec<u64> {
    let g = spec.build(1_000_000).unwrap();
    k_group(&g, p).unwrap().invariants.factors
}

#[test]
fn three_realizations_of_the_icosahedral_group_agree() {
    // PSL(2,4), PSL(2,5) and alt:5 are isomorphic; the computation must not
    // depend on the chosen permutation action
    assert_eq!(invariants(GroupSpec::Psl2(4), 2), vec![3]);
    assert_eq!(invariants(GroupSpec::Psl2(5), 2), vec![3]);
    assert_eq!(invariants(GroupSpec::Alt(5), 2), vec![3]);
}

#[test]
fn two_realizations_of_alt6_agree_in_characteristic_three() {
    // PSL(2,9) and alt:6 are isomorphic; the Sylow normalizer is the
    // strongly embedded Borel subgroup with cyclic quotient of order 4
    assert_eq!(invariants(GroupSpec::Psl2(9), 3), vec![4]);
    assert_eq!(invariants(GroupSpec::Alt(6), 3), vec![4]);
}

#[test]
fn psl_2_8_in_defining_characteristic() {
    // elementary abelian Sylow 2-subgroup of order 8, Borel of order 56 with
    // cyclic quotient of order 7
    assert_eq!(invariants(GroupSpec::Psl2(8), 2), vec![7]);
}

#[test]
fn direct_file_realization_matches_named_constructor() {
    // Klein four group from a raw generator file versus the Sylow of alt:4
    let g = endotriv::catalog::parse_generator_text(
        "degree 4\n(1,2)(3,4)\n(1,3)(2,4)\n(1,2,3)\n",
        1_000_000,
    )
    .unwrap();
    assert_eq!(g.order(), 12);
    let named = GroupSpec::Alt(4).build(1_000_000).unwrap();
    assert_eq!(
        k_group(&g, 2).unwrap().invariants.factors,
        k_group(&named, 2).unwrap().invariants.factors
    );
}
