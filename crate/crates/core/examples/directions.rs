//! Consistent direction assignments with long edges, and the polarisations
//! they induce.
//!
//! Run with `cargo run --release --example directions`.

use artin_flats::polarisation::{induced, is_admissible};
use artin_flats::tiling::{build_patch, consistent_directions, type_preserving_lattice, TriangleType};

fn main() {
    for ms in [(3, 3, 3), (2, 4, 4), (2, 3, 6)] {
        let tt = TriangleType::euclidean(ms.0, ms.1, ms.2).unwrap();
        let patch = build_patch(tt, type_preserving_lattice(tt)).unwrap();
        let all = consistent_directions(&patch, 2);
        let long = all.iter().filter(|d| d.length.iter().any(|&k| k > 1)).count();
        let admissible = all.iter().filter(|d| is_admissible(&patch, &induced(&patch, d).unwrap())).count();
        println!("{ms:?}: {} consistent assignments ({long} with long edges), {admissible} induce admissible polarisations", all.len());
        assert_eq!(admissible, all.len());
    }
}
