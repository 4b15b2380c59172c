//! The prover against the dihedral normal-form oracle, and certificate
//! transformations under random words.

use artin_flats::prover::{prove_equal, prove_trivial, replay, Budget, Certificate};
use artin_flats::{ArtinPresentation, DihedralGroup, Word};
use proptest::prelude::*;

/// Freely reduced words in `s^±1, t^±1` with exactly `n` letters.
fn reduced_words(n: usize) -> Vec<Vec<(usize, i64)>> {
    let letters = [(0, 1), (0, -1), (1, 1), (1, -1)];
    let mut out: Vec<Vec<(usize, i64)>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().filter_map(move |&l| match w.last() {
                    Some(&(g, e)) if g == l.0 && e == -l.1 => None,
                    _ => Some([w.clone(), vec![l]].concat()),
                })
            })
            .collect();
    }
    out
}

#[test]
fn every_short_trivial_word_gets_a_certificate() {
    let budget = Budget { max_len: 16, max_states: 50_000 };
    for m in [2, 3, 4] {
        let p = ArtinPresentation::dihedral(m);
        let g = DihedralGroup::standard(m);
        let mut trivial = 0;
        for n in (0..=8).step_by(2) {
            for letters in reduced_words(n) {
                let w = Word::reduce(letters);
                if !g.is_trivial(&w).unwrap() {
                    continue;
                }
                trivial += 1;
                let cert = prove_trivial(&p, &w, budget).unwrap().unwrap_or_else(|| panic!("m={m}: {w:?}"));
                assert!(replay(&cert));
                assert_eq!(cert.start, w);
                assert!(cert.end.is_empty());
            }
        }
        assert!(trivial > 1, "m={m}");
    }
}

#[test]
fn nontrivial_short_words_get_no_certificate() {
    let budget = Budget { max_len: 10, max_states: 2_000 };
    for m in [2, 3, 4] {
        let p = ArtinPresentation::dihedral(m);
        let g = DihedralGroup::standard(m);
        for n in 1..=4 {
            for letters in reduced_words(n) {
                let w = Word::reduce(letters);
                let found = prove_trivial(&p, &w, budget).unwrap();
                assert_eq!(found.is_some(), g.is_trivial(&w).unwrap(), "m={m}: {w:?}");
            }
        }
    }
}

#[test]
fn equalities_agree_with_normal_forms() {
    let budget = Budget { max_len: 16, max_states: 50_000 };
    let p = ArtinPresentation::dihedral(3);
    let g = DihedralGroup::standard(3);
    let words: Vec<Word> = (0..=3).flat_map(reduced_words).map(Word::reduce).collect();
    for u in &words {
        for v in &words {
            if g.equal(u, v).unwrap() {
                let cert = prove_equal(&p, u, v, budget).unwrap().expect("equal words");
                assert!(replay(&cert));
            }
        }
    }
}

fn word_strategy(rank: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..rank, prop_oneof![Just(1i64), Just(-1i64)]), 0..max_len).prop_map(Word::reduce)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn transformed_certificates_replay(
        w in word_strategy(3, 6),
        pre in word_strategy(3, 4),
        suf in word_strategy(3, 4),
    ) {
        let p = ArtinPresentation::triangle(3, 3, 2);
        // w (sts) w^-1 (tst)^-1 is trivial.
        let braid = p.parse_word("s1 t1 s1 t-1 s-1 t-1").unwrap();
        let target = w.concat(&braid).concat(&w.invert());
        let budget = Budget { max_len: 24, max_states: 100_000 };
        let cert = prove_trivial(&p, &target, budget).unwrap().expect("conjugate of a relator");
        prop_assert!(replay(&cert));
        let back = Certificate::from_json(&cert.to_json()).unwrap();
        prop_assert_eq!(&back, &cert);
        let rev = cert.reversed().unwrap();
        prop_assert!(replay(&rev));
        prop_assert_eq!(&rev.start, &cert.end);
        let mir = cert.mirrored().unwrap();
        prop_assert!(replay(&mir));
        prop_assert_eq!(&mir.start, &cert.start.invert());
        let emb = cert.embed(&pre, &suf);
        prop_assert!(replay(&emb));
        prop_assert_eq!(&emb.start, &pre.concat(&cert.start).concat(&suf));
    }

    #[test]
    fn perturbed_certificates_are_rejected(w in word_strategy(2, 5), shift in 1usize..5) {
        let p = ArtinPresentation::dihedral(3);
        let braid = p.parse_word("s1 t1 s1 t-1 s-1 t-1").unwrap();
        let target = w.concat(&braid).concat(&w.invert());
        let cert = prove_trivial(&p, &target, Budget { max_len: 20, max_states: 50_000 }).unwrap().unwrap();
        let mut bad = cert.clone();
        bad.end = p.parse_word("s1").unwrap();
        prop_assert!(!replay(&bad));
        if !cert.moves.is_empty() {
            let json = cert.to_json();
            let mut v: serde_json::Value = serde_json::from_str(&json).unwrap();
            let pos = v["moves"][0]["pos"].as_u64().unwrap();
            v["moves"][0]["pos"] = serde_json::json!(pos + shift as u64 * 97);
            let tampered = Certificate::from_json(&v.to_string()).unwrap();
            prop_assert!(!replay(&tampered));
        }
    }
}
