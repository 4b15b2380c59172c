//! Torus patches of the four Euclidean tilings and their combinatorics.
//!
//! Run with `cargo run --example tilings`.

use artin_flats::tiling::{build_patch, type_preserving_lattice, TriangleType};

fn main() {
    let types = [
        ("square", TriangleType::Square),
        ("333", TriangleType::euclidean(3, 3, 3).unwrap()),
        ("244", TriangleType::euclidean(2, 4, 4).unwrap()),
        ("236", TriangleType::euclidean(2, 3, 6).unwrap()),
    ];
    for (name, tt) in types {
        let lattice = type_preserving_lattice(tt);
        for k in 1..=3 {
            let p = build_patch(tt, lattice.map(|v| [k * v[0], k * v[1]])).unwrap();
            p.check_invariants().unwrap();
            let mut sizes: Vec<usize> = p.cells.iter().map(|c| c.size()).collect();
            sizes.sort_unstable();
            sizes.dedup();
            println!(
                "{name} {k}x{k}: V={} E={} F={} chi={} cell sizes {sizes:?}",
                p.vertices.len(),
                p.edges.len(),
                p.cells.len(),
                p.euler_characteristic()
            );
            assert_eq!(p.euler_characteristic(), 0);
        }
    }
}
