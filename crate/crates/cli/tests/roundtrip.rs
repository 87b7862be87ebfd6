use commhier::group::GroupSpec;
use commhier_cli::dsl::parse_spec;
use proptest::prelude::*;

fn leaf() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1u64..50).prop_map(GroupSpec::Cyclic),
        prop::collection::vec(1u64..20, 1..4).prop_map(GroupSpec::Abelian),
        (3u64..20).prop_map(GroupSpec::Dihedral),
        (1u64..8).prop_map(GroupSpec::Symmetric),
        Just(GroupSpec::Quaternion8),
        prop::sample::select(vec![2u64, 3, 5, 7]).prop_map(GroupSpec::Heisenberg),
    ]
}

fn abelian() -> impl Strategy<Value = GroupSpec> {
    prop_oneof![
        (1u64..50).prop_map(GroupSpec::Cyclic),
        prop::collection::vec(1u64..20, 1..3).prop_map(GroupSpec::Abelian),
    ]
}

fn semidirect() -> impl Strategy<Value = GroupSpec> {
    let matrix = prop::collection::vec(prop::collection::vec(-9i64..10, 1..3), 1..3);
    (abelian(), abelian(), prop::collection::vec(matrix, 1..3))
        .prop_map(|(a, k, m)| GroupSpec::semidirect(a, k, m))
}

fn spec() -> impl Strategy<Value = GroupSpec> {
    leaf().prop_recursive(3, 12, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner).prop_map(|(a, b)| GroupSpec::product(a, b)),
            semidirect(),
        ]
    })
}

proptest! {
    #[test]
    fn display_then_parse_is_identity(s in spec()) {
        let text = s.to_string();
        let back = parse_spec(&text).unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn whitespace_is_ignored(s in spec()) {
        let text = s.to_string();
        let spaced: String = text.chars().flat_map(|c| match c {
            '(' | ')' | ',' | ';' | '[' | ']' => vec![' ', c, '\n'],
            _ => vec![c],
        }).collect();
        prop_assert_eq!(parse_spec(&spaced).unwrap(), s);
    }

    #[test]
    fn garbage_never_panics(text in "[a-z0-9(),;\\[\\] -]{0,40}") {
        let _ = parse_spec(&text);
    }
}
