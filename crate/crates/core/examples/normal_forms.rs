//! Garside normal forms in dihedral Artin groups.
//!
//! Run with `cargo run --example normal_forms`.

use artin_flats::{ArtinPresentation, DihedralGroup};

fn main() {
    for m in [2, 3, 4] {
        let p = ArtinPresentation::dihedral(m);
        let g = DihedralGroup::standard(m);
        let prod = |start: &str| {
            let letters: Vec<&str> = (0..m).map(|i| if (i % 2 == 0) == (start == "s") { "s1" } else { "t1" }).collect();
            p.parse_word(&letters.join(" ")).unwrap()
        };
        let (a, b) = (prod("s"), prod("t"));
        println!("m={m}: {} -> {}", p.format_word(&a), g.normal_form(&a).unwrap());
        println!("m={m}: {} -> {}", p.format_word(&b), g.normal_form(&b).unwrap());
        assert!(g.equal(&a, &b).unwrap());

        let w = p.parse_word("s2 t-1 s-1 t3").unwrap();
        let nf = g.normal_form(&w).unwrap();
        println!("m={m}: {} -> {nf} = {}", p.format_word(&w), p.format_word(&g.to_word(&nf)));

        // Δ² is central.
        let d2 = g.delta().pow(2);
        let s = p.parse_word("s1").unwrap();
        assert!(g.equal(&d2.concat(&s), &s.concat(&d2)).unwrap());
    }
}
