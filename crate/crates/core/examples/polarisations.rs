//! Every admissible polarisation of a patch, and a rigidity witness for each.
//!
//! Run with `cargo run --release --example polarisations`.

use artin_flats::polarisation::{check_rigidity, enumerate_admissible};
use artin_flats::tiling::{build_patch, type_preserving_lattice, TriangleType};

fn main() {
    for ms in [(3, 3, 3), (2, 4, 4), (2, 3, 6)] {
        let tt = TriangleType::euclidean(ms.0, ms.1, ms.2).unwrap();
        for k in 1..=3 {
            let patch = build_patch(tt, type_preserving_lattice(tt).map(|v| [k * v[0], k * v[1]])).unwrap();
            let all = enumerate_admissible(&patch);
            let rigid = all.iter().filter(|l| check_rigidity(&patch, l).is_ok()).count();
            println!("{ms:?} {k}x{k}: {} admissible, {rigid} rigid", all.len());
            if let Some(l) = all.first() {
                let w = check_rigidity(&patch, l).unwrap();
                println!("  first: class {:?}, translation {:?}", w.class, w.rho);
            }
        }
    }
}
