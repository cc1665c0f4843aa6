use proptest::prelude::*;

use marked_groups::cli::{parse_group_expr, GroupExpr, SequenceName};
use marked_groups::clopen::BasicClopenSet;
use marked_groups::machines::Program;
use marked_groups::metric::distance;
use marked_groups::oracle::catalog::{
    baumslag_solitar, cyclic, dihedral, free_group, heisenberg, lamplighter, symmetric,
};
use marked_groups::oracle::CatalogSpec;
use marked_groups::words::{cantor_pair, cantor_unpair, Alphabet};
use marked_groups::{MarkedGroup, Status, Verdict, Witness, Word};

fn word(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    let r = rank as i32;
    prop::collection::vec((1..=r).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]), 0..=max_len)
        .prop_map(move |raw| Word::from_signed(rank, &raw).unwrap())
}

fn rank2_groups() -> Vec<MarkedGroup> {
    vec![free_group(2), dihedral(6), symmetric(4), heisenberg(), lamplighter(), baumslag_solitar(3)]
}

fn catalog_expr() -> impl Strategy<Value = GroupExpr> {
    use CatalogSpec::*;
    prop_oneof![
        (1usize..4).prop_map(FreeAbelian),
        (1u64..20).prop_map(Cyclic),
        (1usize..4).prop_map(Free),
        (1i64..6).prop_flat_map(|m| prop_oneof![Just(m), Just(-m)]).prop_map(BaumslagSolitar),
        (2u64..9).prop_map(Dihedral),
        (2usize..6).prop_map(Symmetric),
        (3usize..6).prop_map(Alternating),
        Just(Heisenberg),
        Just(Lamplighter),
    ]
    .prop_map(GroupExpr::Catalog)
}

fn group_expr() -> impl Strategy<Value = GroupExpr> {
    let leaf = prop_oneof![
        4 => catalog_expr(),
        1 => prop_oneof![Just(SequenceName::Cyclic), Just(SequenceName::Powers)].prop_map(GroupExpr::Limit),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(g, h)| GroupExpr::Direct(Box::new(g), Box::new(h))),
            (inner.clone(), inner.clone()).prop_map(|(g, h)| GroupExpr::Free(Box::new(g), Box::new(h))),
            (catalog_expr(), 1usize..4, any::<u64>()).prop_map(|(g, j, seed)| {
                let rank = g.build().unwrap().rank();
                let tuple = (0..j as u64).map(|i| Word::from_shortlex(rank, (seed >> (8 * i)) % 200)).collect();
                GroupExpr::Mark(Box::new(g), tuple)
            }),
        ]
    })
}

fn witness() -> impl Strategy<Value = Witness> {
    prop_oneof![
        word(2, 10).prop_map(|word| Witness::Word { word }),
        (word(1, 6), 1u64..50).prop_map(|(element, order)| Witness::Torsion { element, order }),
        (any::<u64>(), any::<bool>(), any::<bool>()).prop_map(|(index, left, right)| Witness::Bit { index, left, right }),
        (0u64..1000).prop_map(|bound| Witness::SearchExhausted { bound }),
    ]
}

proptest! {
    #[test]
    fn shortlex_round_trip(rank in 1usize..4, n in 0u64..1_000_000_000_000) {
        let n = if rank == 1 { n % 1_000_000 } else { n };
        let w = Word::from_shortlex(rank, n);
        prop_assert_eq!(w.shortlex_index(), n);
    }

    #[test]
    fn shortlex_order_matches_indices(u in word(3, 8), v in word(3, 8)) {
        prop_assert_eq!(u.shortlex_cmp(&v), u.shortlex_index().cmp(&v.shortlex_index()));
        prop_assert_eq!(Word::from_shortlex(3, u.shortlex_index()), u);
    }

    #[test]
    fn words_form_a_group(u in word(2, 12), v in word(2, 12), x in word(2, 12)) {
        prop_assert!(u.mul(&u.inverse()).is_empty());
        prop_assert_eq!(u.mul(&v).mul(&x), u.mul(&v.mul(&x)));
        prop_assert_eq!(u.mul(&v).inverse(), v.inverse().mul(&u.inverse()));
        let text = Alphabet::standard(2).format(&u);
        prop_assert_eq!(Word::parse(2, &text).unwrap(), u);
    }

    #[test]
    fn cantor_pairing_inverts(n in 0u64..1_000_000, m in 0u64..1_000_000) {
        prop_assert_eq!(cantor_unpair(cantor_pair(n, m)), (n, m));
    }

    #[test]
    fn group_expressions_round_trip(e in group_expr()) {
        let text = e.to_string();
        prop_assert_eq!(parse_group_expr(&text).unwrap(), e);
    }

    #[test]
    fn clopen_sets_round_trip(r in prop::collection::vec(word(2, 6), 0..3), s in prop::collection::vec(word(2, 6), 0..3)) {
        let omega = BasicClopenSet::new(2, r, s).unwrap();
        prop_assert_eq!(BasicClopenSet::parse(2, &omega.to_string()).unwrap(), omega);
    }

    #[test]
    fn verdicts_round_trip_through_json(w in proptest::option::of(witness()), fuel in any::<u64>(), s in 0usize..3) {
        let status = [Status::Verified, Status::Refuted, Status::Unknown][s];
        let v = Verdict { status, witness: w, fuel_spent: fuel };
        let back: Verdict = serde_json::from_str(&v.to_json()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn programs_round_trip(n in 0u64..100_000) {
        let p = Program::decode(n);
        prop_assert_eq!(Program::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn relations_are_normal(g in 0usize..6, u in word(2, 10), v in word(2, 10), h in word(2, 6)) {
        let g = &rank2_groups()[g];
        let r = u.mul(&v).mul(&u.inverse()).mul(&v.inverse());
        let rel = g.is_relation(&r);
        prop_assert_eq!(g.is_relation(&r.conjugate_by(&h)), rel);
        prop_assert_eq!(g.is_relation(&r.inverse()), rel);
        // equality is an equivalence compatible with multiplication
        prop_assert_eq!(g.equal(&u, &v), g.equal(&h.mul(&u), &h.mul(&v)));
        if rel {
            prop_assert!(g.equal(&u.mul(&v), &v.mul(&u)));
        }
    }

    #[test]
    fn distance_is_an_ultrametric(a in 1u64..40, b in 1u64..40, c in 1u64..40) {
        let (x, y, z) = (cyclic(a), cyclic(b), cyclic(c));
        let d = |g: &MarkedGroup, h: &MarkedGroup| distance(g, h, 200).upper();
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert_eq!(distance(&x, &y, 200).is_exact(), a != b);
        prop_assert!(d(&x, &z) <= d(&x, &y).max(d(&y, &z)));
    }
}
