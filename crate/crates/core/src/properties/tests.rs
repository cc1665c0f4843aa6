use super::*;
use crate::oracle::catalog::{
    alternating, cyclic, dihedral, free_abelian, free_group, heisenberg, integers, lamplighter, symmetric, trivial,
};
use crate::oracle::free;
use crate::Status;

fn w(rank: usize, s: &str) -> Word {
    Word::parse(rank, s).unwrap()
}

fn verified(g: &MarkedGroup, v: &Verdict) {
    assert_eq!(v.status, Status::Verified, "{}", g.name());
    if let Some(wit) = &v.witness {
        assert!(check_witness(g, wit), "{} {wit:?}", g.name());
    }
}

#[test]
fn decidable_trio() {
    assert!(is_abelian(&free_abelian(2)));
    assert!(!is_abelian(&free_group(2)));
    assert!(!is_abelian(&symmetric(3)));
    assert_eq!(decide_abelian(&free_group(2)).witness, Some(Witness::Word { word: w(2, "[a,b]") }));
    assert!(nilpotent_class_at_most(&heisenberg(), 2));
    assert!(!nilpotent_class_at_most(&heisenberg(), 1));
    assert!(!nilpotent_class_at_most(&free_group(2), 2));
    assert!(card_at_most(&cyclic(5), 5));
    assert!(!card_at_most(&cyclic(5), 4));
    assert!(!card_at_most(&symmetric(4), 23));
    assert!(card_at_most(&symmetric(4), 24));
}

#[test]
fn decided_verdicts_carry_witnesses() {
    let v = decide_card(&dihedral(4), 10);
    verified(&dihedral(4), &v);
    let v = decide_card(&integers(), 20);
    assert_eq!(v.status, Status::Refuted);
    assert!(check_witness(&integers(), v.witness.as_ref().unwrap()));
}

#[test]
fn finiteness() {
    let v = is_finite_semidecide(&cyclic(6), 1000);
    verified(&cyclic(6), &v);
    assert!(matches!(v.witness, Some(Witness::Order { order: 6, .. })));
    assert!(matches!(is_finite_semidecide(&trivial(1), 10).witness, Some(Witness::Order { order: 1, .. })));
    let v = is_finite_semidecide(&integers(), 5000);
    assert_eq!(v, Verdict::unknown(5000));
}

#[test]
fn torsion() {
    let v = torsion_semidecide(&cyclic(2), 100);
    assert_eq!(v.witness, Some(Witness::Torsion { element: w(1, "a"), order: 2 }));
    let v = torsion_semidecide(&lamplighter(), 1000);
    verified(&lamplighter(), &v);
    assert_eq!(v.witness, Some(Witness::Torsion { element: w(2, "a"), order: 2 }));
    assert!(torsion_semidecide(&free_group(2), 20_000).is_unknown());
}

#[test]
fn center() {
    verified(&heisenberg(), &center_nontrivial_semidecide(&heisenberg(), 10_000));
    let v = center_nontrivial_semidecide(&integers(), 10);
    assert_eq!(v.witness, Some(Witness::Central { element: w(1, "a") }));
    assert!(center_nontrivial_semidecide(&free_group(2), 20_000).is_unknown());
}

#[test]
fn perfect() {
    verified(&trivial(1), &perfect_semidecide(&trivial(1), 10));
    verified(&alternating(5), &perfect_semidecide(&alternating(5), 1_000_000));
    assert!(perfect_semidecide(&integers(), 20_000).is_unknown());
}

#[test]
fn rank() {
    let g = subgroup_marking(&integers(), &[w(1, "a"), w(1, "a^3")]);
    let v = rank_at_most_semidecide(&g, 1, 10_000);
    verified(&g, &v);
    let Some(Witness::Generation { tuple, .. }) = v.witness else { panic!() };
    assert_eq!(tuple, vec![w(2, "a")]);
    verified(&free_group(2), &rank_at_most_semidecide(&free_group(2), 2, 10_000));
    assert!(rank_at_most_semidecide(&free_group(2), 1, 20_000).is_unknown());
}

#[test]
fn virtually_cyclic() {
    let dinf = free(&cyclic(2), &cyclic(2));
    let v = virtually_cyclic_semidecide(&dinf, 1_000_000);
    verified(&dinf, &v);
    let Some(Witness::VirtuallyCyclic { subgroup, quotient_order, .. }) = v.witness else { panic!() };
    assert_eq!((subgroup, quotient_order), (vec![w(2, "ab")], 2));
    let v = virtually_cyclic_semidecide(&cyclic(6), 100_000);
    verified(&cyclic(6), &v);
    let Some(Witness::VirtuallyCyclic { subgroup, quotient_order, .. }) = v.witness else { panic!() };
    assert_eq!((subgroup, quotient_order), (vec![w(1, "a")], 1));
    assert!(virtually_cyclic_semidecide(&free_group(2), 50_000).is_unknown());
}

#[test]
fn icc() {
    let v = icc_refute(&integers(), 100);
    assert_eq!(v.witness, Some(Witness::FiniteClass { element: w(1, "a"), class: vec![w(1, "a")] }));
    verified(&heisenberg(), &icc_refute(&heisenberg(), 1_000_000));
    assert!(icc_refute(&free_group(2), 20_000).is_unknown());
}

#[test]
fn orderability() {
    let v = orderability_refute(&cyclic(2), 100);
    verified(&cyclic(2), &v);
    let Some(Witness::NotOrderable { elements, .. }) = &v.witness else { panic!() };
    assert_eq!(elements, &vec![w(1, "a")]);
    verified(&symmetric(3), &orderability_refute(&symmetric(3), 10_000));
    assert!(orderability_refute(&integers(), 20_000).is_unknown());
}

#[test]
fn hyperbolicity() {
    let v = not_delta_hyperbolic(&free_abelian(2), 1, 8).unwrap();
    verified(&free_abelian(2), &v);
    assert!(not_delta_hyperbolic(&free_group(2), 1, 8).unwrap().is_unknown());
    assert!(not_delta_hyperbolic(&integers(), 1, 8).unwrap().is_unknown());
    assert!(not_delta_hyperbolic(&integers(), 3, 4).is_err());
}

#[test]
fn fuel_monotone() {
    let g = heisenberg();
    let small = center_nontrivial_semidecide(&g, 10_000);
    let large = center_nontrivial_semidecide(&g, 100_000);
    assert_eq!(small, large);
    let dinf = free(&cyclic(2), &cyclic(2));
    for f in [10, 100, 1000] {
        let v = torsion_semidecide(&dinf, f);
        if v.is_verified() {
            assert_eq!(v, torsion_semidecide(&dinf, f * 10));
        }
    }
}

#[test]
fn forged_witnesses_fail() {
    let z = integers();
    assert!(!check_witness(&z, &Witness::Torsion { element: w(1, "a"), order: 2 }));
    assert!(!check_witness(&z, &Witness::Central { element: w(1, "") }));
    assert!(!check_witness(&free_group(2), &Witness::FiniteClass { element: w(2, "a"), class: vec![w(2, "a")] }));
    assert!(!check_witness(&cyclic(3), &Witness::Order { order: 2, elements: vec![w(1, ""), w(1, "a")], table: vec![vec![1], vec![0]] }));
}
