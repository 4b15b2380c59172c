//! Certificate search for a commutator, JSON round trip and replay.
//!
//! Run with `cargo run --release --example prove_commutator`.

use artin_flats::prover::{prove_equal, prove_trivial, replay, Budget, Certificate};
use artin_flats::ArtinPresentation;

fn main() {
    let p = ArtinPresentation::triangle(3, 3, 3);
    let a = p.parse_word("s1 t1 r1 s1 t1 r1").unwrap();
    let b = p.parse_word("t2 s1 t1 r1").unwrap();
    let budget = Budget { max_len: 40, max_states: 300_000 };

    let cert = prove_equal(&p, &a.concat(&b), &b.concat(&a), budget).unwrap().expect("they commute");
    println!("{} = {} in {} moves", p.format_word(&cert.start), p.format_word(&cert.end), cert.moves.len());
    let back = Certificate::from_json(&cert.to_json()).unwrap();
    assert!(replay(&back));

    let braid = p.parse_word("s1 t1 s1 t-1 s-1 t-1").unwrap();
    let cert = prove_trivial(&p, &braid, budget).unwrap().unwrap();
    println!("{} = 1 in {} moves", p.format_word(&braid), cert.moves.len());

    // Nothing is found for s and t when they generate a free group.
    let free = ArtinPresentation::new(&["s", "t"], &[]).unwrap();
    let c = free.parse_word("s1 t1 s-1 t-1").unwrap();
    assert!(prove_trivial(&free, &c, Budget { max_len: 12, max_states: 5_000 }).unwrap().is_none());
}
