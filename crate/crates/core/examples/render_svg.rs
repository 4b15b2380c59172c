//! SVG pictures of patches with directions, long edges and the induced
//! polarisation. Files go to the system temp directory.
//!
//! Run with `cargo run --example render_svg`.

use artin_flats::polarisation::induced;
use artin_flats::render::{render_svg, RenderSpec};
use artin_flats::tiling::{build_patch, consistent_directions, type_preserving_lattice, TriangleType};

fn main() {
    let dir = std::env::temp_dir();
    for (name, ms) in [("333", (3, 3, 3)), ("244", (2, 4, 4)), ("236", (2, 3, 6))] {
        let tt = TriangleType::euclidean(ms.0, ms.1, ms.2).unwrap();
        let patch = build_patch(tt, type_preserving_lattice(tt).map(|v| [2 * v[0], 2 * v[1]])).unwrap();
        let d = consistent_directions(&patch, 2).into_iter().find(|d| d.length.iter().any(|&k| k > 1)).unwrap();
        let l = induced(&patch, &d).unwrap();
        let path = dir.join(format!("tiling-{name}.svg"));
        std::fs::write(&path, render_svg(&patch, Some(&d), Some(&l), &RenderSpec::default())).unwrap();
        println!("wrote {}", path.display());
    }
}
