use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slalom::syllables::{decompose, lambda_invariant, SyllableDecomposition, SyllableKind};
use slalom::word::{FreeWord, Generator, Term};

/// Checks a decomposition against the three syllable rules directly.
fn check_partition(word: &FreeWord, d: &SyllableDecomposition) -> Result<(), String> {
    let flat: Vec<Term> = d.syllables.iter().flat_map(|s| s.terms.clone()).collect();
    if flat != word.terms() {
        return Err("syllables do not reproduce the word".into());
    }
    for (i, s) in d.syllables.iter().enumerate() {
        let degree: u64 = s.terms.iter().map(|t| t.exponent().unsigned_abs()).sum();
        if degree != s.degree {
            return Err(format!("syllable {i}: degree {} != {degree}", s.degree));
        }
        let unit = |e: i64| e == 1 || e == -1;
        match s.kind {
            SyllableKind::BigPower => {
                if s.terms.len() != 1 || s.terms[0].exponent().abs() < 2 {
                    return Err(format!("syllable {i}: bad big power"));
                }
            }
            SyllableKind::AlternatingRun | SyllableKind::Singleton => {
                let e = s.terms[0].exponent();
                if !unit(e) || s.terms.iter().any(|t| t.exponent() != e) {
                    return Err(format!("syllable {i}: exponents not a constant ±1"));
                }
                let wants_run = s.terms.len() >= 2;
                if wants_run != (s.kind == SyllableKind::AlternatingRun) {
                    return Err(format!("syllable {i}: kind does not match length"));
                }
                // maximality: neighbours must not carry the same ±1 exponent
                let before = d.syllables[..i].last().and_then(|p| p.terms.last());
                let after = d.syllables.get(i + 1).and_then(|n| n.terms.first());
                if before.into_iter().chain(after).any(|t| t.exponent() == e) {
                    return Err(format!("syllable {i}: run is extendable"));
                }
            }
        }
    }
    Ok(())
}

#[test]
fn partition_property_on_random_words() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let len = rand::Rng::gen_range(&mut rng, 0..=30);
        let max_exp = rand::Rng::gen_range(&mut rng, 1..=4);
        let word = FreeWord::random(&mut rng, len, max_exp);
        let d = decompose(&word);
        if let Err(e) = check_partition(&word, &d) {
            panic!("{word}: {e}");
        }
    }
}

#[test]
fn small_example_matches_rule_oracle() {
    let w: FreeWord = "a1 a2 a1^-1".parse().unwrap();
    let d = decompose(&w);
    check_partition(&w, &d).unwrap();
    assert_eq!(d.kinds(), vec![SyllableKind::AlternatingRun, SyllableKind::Singleton]);
    assert_eq!(d.degrees(), vec![2, 1]);
}

#[test]
fn lambda_of_single_powers() {
    for g in [Generator::A1, Generator::A2] {
        for n in (-100i64..=100).filter(|&n| n != 0) {
            let w = FreeWord::power(g, n);
            let expected = (1.0 + n.abs() as f64).ln();
            assert!((lambda_invariant(&w) - expected).abs() < 1e-14, "{w}");
        }
    }
}

fn word() -> impl Strategy<Value = FreeWord> {
    (0usize..30, 1i64..4, any::<u64>())
        .prop_map(|(len, max_exp, seed)| FreeWord::random(&mut ChaCha8Rng::seed_from_u64(seed), len, max_exp))
}

proptest! {
    #[test]
    fn lambda_is_inversion_invariant(w in word()) {
        let inv = w.invert().unwrap();
        prop_assert!((lambda_invariant(&w) - lambda_invariant(&inv)).abs() < 1e-12);
        let mut kinds = decompose(&inv).kinds();
        kinds.reverse();
        prop_assert_eq!(kinds, decompose(&w).kinds());
    }

    #[test]
    fn lambda_is_subadditive_up_to_log2(u in word(), v in word()) {
        let uv = u.concat(&v).unwrap();
        let slack = 2f64.ln();
        prop_assert!(lambda_invariant(&uv) <= lambda_invariant(&u) + lambda_invariant(&v) + slack + 1e-12,
            "u = {}, v = {}", u, v);
    }

    #[test]
    fn lambda_is_nonnegative_and_zero_only_for_identity(w in word()) {
        let l = lambda_invariant(&w);
        prop_assert!(l >= 0.0);
        prop_assert_eq!(l == 0.0, w.is_identity());
    }
}
