//! From geometry to algebra: read a commuting generator pair off a direction
//! assignment and match it against the families.
//!
//! Run with `cargo run --release --example read_off`.

use artin_flats::prover::{replay, Budget};
use artin_flats::subgroups::{read_off_generators, verify_commute};
use artin_flats::tiling::{build_patch, consistent_directions, type_preserving_lattice, TriangleType};
use artin_flats::ArtinPresentation;

fn main() {
    for ms in [(3, 3, 3), (2, 4, 4), (2, 3, 6)] {
        let tt = TriangleType::euclidean(ms.0, ms.1, ms.2).unwrap();
        let patch = build_patch(tt, type_preserving_lattice(tt).map(|v| [2 * v[0], 2 * v[1]])).unwrap();
        let p = ArtinPresentation::triangle(tt.exponent(0, 1), tt.exponent(1, 2), tt.exponent(0, 2));
        let d = consistent_directions(&patch, 2).into_iter().find(|d| d.length.iter().any(|&k| k > 1)).unwrap();
        let r = read_off_generators(&patch, &d, 4).unwrap();
        assert!(r.matches_family());
        let cert = verify_commute(&p, &r.read1, &r.read2, Budget { max_len: 40, max_states: 300_000 }).unwrap();
        assert!(replay(&cert));
        let fam = ArtinPresentation::triangle(3, 3, 3);
        println!(
            "{ms:?}: case ({}) from vertex {}, read {} | {}, as family words {} | {}",
            r.case.letter(),
            r.start,
            p.format_word(&r.read1),
            p.format_word(&r.read2),
            fam.format_word(&r.w1),
            fam.format_word(&r.w2)
        );
    }
}
