//! Exact tooling around two-dimensional Artin groups.
//!
//! * [`presentation`]: presentations, syllable words, language templates.
//! * [`dihedral`]: Garside normal forms for dihedral Artin groups, plus a
//!   brute-force cross-check.
//! * [`girth`]: syntactic classification of trivial `2m`-syllable words.
//! * [`tiling`]: torus patches of the square and triangle-group tilings, with
//!   edge types, directions and length labels.
//! * [`polarisation`]: admissible and induced polarisations, rigidity.
//! * [`prover`]: certificate-producing equality search and replay.
//! * [`subgroups`]: flat families, Klein pair, reading generators off patches.
//! * [`render`]: SVG pictures of patches.
//! * [`cli`]: the `artin-flats` command line.

pub mod cli;
pub mod dihedral;
pub mod girth;
pub mod polarisation;
pub mod presentation;
pub mod prover;
pub mod render;
pub mod subgroups;
pub mod tiling;

pub use dihedral::{DihedralError, DihedralGroup, NormalForm, Simple};
pub use presentation::{
    ArtinPresentation, Exponent, Gen, LanguageTemplate, Letter, PresentationError, Syllable,
    TemplateBounds, Word,
};
