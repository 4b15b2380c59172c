//! Exhaustive check of the syntactic triviality classifier for alternating
//! `2m`-syllable words against the normal-form oracle.
//!
//! Run with `cargo run --release --example girth_sweep`.

use artin_flats::girth::{classify, girth_sweep};
use artin_flats::{ArtinPresentation, DihedralGroup};

fn main() {
    for (m, bound) in [(2, 3), (3, 2), (4, 2)] {
        let r = girth_sweep(m, bound).unwrap();
        println!("m={m} bound={bound}: {}/{} agree, {} trivial", r.agree, r.total, r.trivial);
        assert!(r.all_agree());
    }

    let g = DihedralGroup::standard(3);
    let w = ArtinPresentation::dihedral(3).parse_word("t2 s1 t1 s-2 t-1 s-1").unwrap();
    let found = classify(&g, &w).unwrap().expect("trivial word");
    println!("{} matches with k={} swap={} rotation={}", ArtinPresentation::dihedral(3).format_word(&w), found.k, found.swap, found.rotation);
    assert!(g.is_trivial(&w).unwrap());
}
