//! Cross-module weak-homomorphism cases that need the linear-group
//! constructors: the four distinct tables of PSL(3,4), agreement between the
//! table count and the torsion invariants, and refusal to enumerate when the
//! nonabelian-Sylow hypotheses fail.

use endotriv::catalog::GroupSpec;
use endotriv::error::Error;
use endotriv::kgroup::k_group;
use endotriv::subgroup::{
    all_nontrivial_subgroups, centralizer, intersect, normalizer, sylow_subgroup, SubgroupHandle,
};
use endotriv::tower::build_tower_from_sylow;
use endotriv::weakhom::{enumerate_a_group, frattini_extend, VerifySettings};

#[test]
fn psl34_has_four_distinct_weak_homs() {
    let g = GroupSpec::Psl3(4).build(1_000_000).unwrap();
    let s = sylow_subgroup(&g, 3).unwrap();
    let settings = VerifySettings {
        sample_count: 100_000,
        ..VerifySettings::default()
    };
    let ag = enumerate_a_group(&g, &s, &settings).unwrap();
    assert_eq!(ag.weak_homs.len(), 4);
    assert_eq!(ag.invariants.factors, vec![2, 2]);
    assert!(
        ag.mode.starts_with("sampled"),
        "order 20160 exceeds the pair bound"
    );
    assert!(ag.all_verified());
    // pairwise distinct as tables
    for i in 0..ag.weak_homs.len() {
        for j in i + 1..ag.weak_homs.len() {
            assert_ne!(ag.weak_homs[i], ag.weak_homs[j]);
        }
    }
    // kernel property against the stable tower subgroup
    let tower = build_tower_from_sylow(&s, 3).unwrap();
    for wh in &ag.weak_homs {
        assert!(wh
            .vanishes_on(tower.rho_infinity_sylow().elements())
            .unwrap());
    }
}

#[test]
fn table_count_matches_torsion_order() {
    for (spec, p) in [
        (GroupSpec::Psl2(5), 2u64),
        (GroupSpec::Psl2(11), 2),
        (GroupSpec::Alt(5), 5),
        (GroupSpec::Sym(3), 3),
        (GroupSpec::Psl3(4), 3),
    ] {
        let g = spec.build(1_000_000).unwrap();
        let s = sylow_subgroup(&g, p).unwrap();
        let settings = VerifySettings {
            sample_count: 50_000,
            ..VerifySettings::default()
        };
        let ag = enumerate_a_group(&g, &s, &settings).unwrap();
        let report = k_group(&g, p).unwrap();
        assert_eq!(
            ag.weak_homs.len() as u64,
            report.invariants.group_order(),
            "{} p={}",
            spec.describe(),
            p
        );
    }
}

#[test]
fn enumeration_refuses_unverified_nonabelian_hypotheses() {
    // dihedral Sylow 2-subgroup whose normalizer does not control fusion
    let g = GroupSpec::Psl2(7).build(1_000_000).unwrap();
    let s = sylow_subgroup(&g, 2).unwrap();
    assert!(!s.is_abelian());
    match enumerate_a_group(&g, &s, &VerifySettings::default()) {
        Err(Error::HypothesesUnverified(msg)) => {
            assert!(msg.contains("fusion"), "message: {}", msg);
        }
        other => panic!(
            "expected HypothesesUnverified, got {:?}",
            other.map(|ag| ag.weak_homs.len())
        ),
    }
}

#[test]
fn nonabelian_p_group_enumerates_through_verified_hypotheses() {
    // a dihedral 2-group is its own Sylow subgroup; fusion control and the
    // Frattini factorization hold trivially, so enumeration proceeds and
    // finds only the trivial table
    let g = endotriv::catalog::parse_generator_text("degree 4\n(1,2,3,4)\n(1,3)\n", 1000).unwrap();
    let s = sylow_subgroup(&g, 2).unwrap();
    assert!(!s.is_abelian());
    let ag = enumerate_a_group(&g, &s, &VerifySettings::default()).unwrap();
    assert_eq!(ag.weak_homs.len(), 1);
    assert!(ag.all_verified());
}

#[test]
fn decomposition_independence_is_exhaustive_up_to_order_two_thousand() {
    // same property as the alt:5 criterion, on the order-660 case
    let g = GroupSpec::Psl2(11).build(1_000_000).unwrap();
    let s = sylow_subgroup(&g, 2).unwrap();
    let norm = normalizer(&s).unwrap();
    let ag = enumerate_a_group(&g, &s, &VerifySettings::default()).unwrap();
    let mut factorizations = 0u64;
    for (chi, theta) in ag.characters.iter().zip(&ag.weak_homs) {
        let mut psi_cache: Vec<(SubgroupHandle, endotriv::weakhom::CharacterTable)> = Vec::new();
        for x in g.elements().unwrap() {
            let mut xs: Vec<endotriv::perm::Permutation> = s
                .elements()
                .iter()
                .map(|e| e.conjugated_by(x).unwrap())
                .collect();
            xs.sort();
            let meet: Vec<endotriv::perm::Permutation> = s
                .elements()
                .iter()
                .filter(|e| xs.binary_search(e).is_ok())
                .cloned()
                .collect();
            if meet.len() == 1 {
                continue;
            }
            let meet = SubgroupHandle::from_generators(&g, &meet).unwrap();
            let theta_value = theta.value(x).unwrap();
            for r in all_nontrivial_subgroups(&meet).unwrap() {
                let psi = match psi_cache.iter().find(|(rr, _)| rr == &r) {
                    Some((_, psi)) => psi.clone(),
                    None => {
                        let h = centralizer(&r).unwrap();
                        let nh = intersect(&norm, &h).unwrap();
                        let phi = chi.restricted_to(nh.elements()).unwrap();
                        let psi = frattini_extend(&h, &s, &phi).unwrap();
                        psi_cache.push((r.clone(), psi.clone()));
                        psi
                    }
                };
                let h = centralizer(&r).unwrap();
                for c in h.elements() {
                    let n = c.inverse().compose(x).unwrap();
                    if !norm.contains(&n) {
                        continue;
                    }
                    factorizations += 1;
                    let value =
                        (psi.value(c).unwrap() + chi.value(&n).unwrap()) % chi.modulus.max(1);
                    assert_eq!(value, theta_value, "x = {}", x);
                }
            }
        }
    }
    assert!(factorizations > 0);
}
