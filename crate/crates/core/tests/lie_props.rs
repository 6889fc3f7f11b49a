use lie_maxclass::lie::{make_m0, make_m2, GradedLieAlgebra};
use proptest::prelude::*;

fn algebra() -> impl Strategy<Value = GradedLieAlgebra> {
    (3u32..12).prop_flat_map(|dim| {
        prop::collection::btree_map(
            (1..=dim, 1..=dim),
            prop::collection::btree_set(1..=dim, 1..3),
            0..12,
        )
        .prop_map(move |raw| {
            GradedLieAlgebra::new(dim, raw.into_iter().filter(|((i, j), _)| i < j)).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn file_format_round_trips(g in algebra()) {
        let text = g.save();
        let back = GradedLieAlgebra::parse(&text).unwrap();
        prop_assert_eq!(back.save(), text);
        prop_assert_eq!(back.brackets().collect::<Vec<_>>(), g.brackets().collect::<Vec<_>>());
    }

    #[test]
    fn validation_is_stable_under_round_trip(g in algebra()) {
        let back = GradedLieAlgebra::parse(&g.save()).unwrap();
        prop_assert_eq!(back.validate().is_valid(), g.validate().is_valid());
    }
}

#[test]
fn families_are_valid_and_round_trip() {
    for n in 5..=30 {
        for g in [make_m0(n).unwrap(), make_m2(n).unwrap()] {
            assert!(g.validate().is_valid());
            let back = GradedLieAlgebra::parse(&g.save()).unwrap();
            assert!(back.validate().is_valid());
            assert_eq!(back.save(), g.save());
        }
    }
}
