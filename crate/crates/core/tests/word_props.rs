use proptest::prelude::*;
use slalom::word::{parse_word, reduce, FreeWord, Generator, Term};

fn raw_terms() -> impl Strategy<Value = Vec<Term>> {
    prop::collection::vec((any::<bool>(), -4i64..=4), 0..20).prop_map(|v| {
        v.into_iter()
            .filter_map(|(first, n)| Term::new(if first { Generator::A1 } else { Generator::A2 }, n))
            .collect()
    })
}

fn word() -> impl Strategy<Value = FreeWord> {
    raw_terms().prop_map(|t| reduce(t).unwrap())
}

/// Token strings in the accepted grammar, including zero and explicit `^1`.
fn word_text() -> impl Strategy<Value = String> {
    prop::collection::vec(
        (
            prop_oneof!["a1", "a2"],
            prop::option::of(-5i64..=5),
            prop_oneof![" ", "  ", "\t"],
        ),
        0..15,
    )
    .prop_map(|v| {
        v.into_iter()
            .map(|(g, e, sep)| match e {
                Some(e) => format!("{g}^{e}{sep}"),
                None => format!("{g}{sep}"),
            })
            .collect()
    })
}

proptest! {
    #[test]
    fn format_parse_round_trip(text in word_text()) {
        let w = parse_word(&text).unwrap();
        prop_assert_eq!(parse_word(&w.format()).unwrap(), w);
    }

    #[test]
    fn reduce_is_idempotent(raw in raw_terms()) {
        let once = reduce(raw).unwrap();
        let twice = reduce(once.terms().iter().copied()).unwrap();
        prop_assert!(once.terms().windows(2).all(|w| w[0].generator() != w[1].generator()));
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn group_axioms(u in word(), v in word(), w in word()) {
        let left = u.concat(&v).unwrap().concat(&w).unwrap();
        let right = u.concat(&v.concat(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(u.invert().unwrap().invert().unwrap(), u.clone());
        prop_assert!(u.concat(&u.invert().unwrap()).unwrap().is_identity());
        prop_assert_eq!(u.concat(&FreeWord::identity()).unwrap(), u.clone());
        prop_assert_eq!(FreeWord::identity().concat(&u).unwrap(), u);
    }

    #[test]
    fn exponent_sums_are_additive(u in word(), v in word()) {
        let (a, b) = u.exponent_sums();
        let (c, d) = v.exponent_sums();
        prop_assert_eq!(u.concat(&v).unwrap().exponent_sums(), (a + c, b + d));
    }
}
