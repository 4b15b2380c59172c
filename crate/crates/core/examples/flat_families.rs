//! The rank-two abelian families: generator pairs, certificates that they
//! commute, and their images in the abelianisation.
//!
//! Run with `cargo run --release --example flat_families`.

use artin_flats::prover::{replay, Budget};
use artin_flats::subgroups::{abelian_images_independent, family, family_commuting, verify_abelian, verify_commute, FlatCase, FlatFamily};
use artin_flats::ArtinPresentation;

fn main() {
    let budget = Budget { max_len: 40, max_states: 300_000 };
    for case in FlatCase::TRIANGLE {
        let fam = FlatFamily::triangle(case).unwrap();
        let p = &fam.presentation;
        let factors = vec![vec![2; fam.bullets_per_factor()]];
        let (w1, w2) = family(p, case, &factors).unwrap();
        let cert = verify_abelian(p, case, &factors, budget).unwrap();
        assert!(replay(&cert));
        println!(
            "({}) {} | {} : {} moves, independent images: {}",
            case.letter(),
            p.format_word(&w1),
            p.format_word(&w2),
            cert.moves.len(),
            abelian_images_independent(&w1, &w2, 3)
        );
    }

    // Case (a): two parabolic subgroups whose generators commute pairwise.
    let rel = [("a", "c", 2), ("b", "c", 2), ("a", "b", 3)];
    let p = ArtinPresentation::new(&["a", "b", "c"], &rel).unwrap();
    let w = p.parse_word("a1 b1 a1").unwrap();
    let w_prime = p.parse_word("c3").unwrap();
    let (u, v) = family_commuting(&p, &[0, 1], &[2], &w, &w_prime).unwrap();
    let cert = verify_commute(&p, &u, &v, budget).unwrap();
    println!("(a) {} | {} : {} moves", p.format_word(&u), p.format_word(&v), cert.moves.len());
}
