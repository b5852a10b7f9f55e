//! Inputs shared by the benchmarks.

use mirrorkit::ainfty::{fixtures, twisted_complex_category, AInftyCategory};
use mirrorkit::fukaya_torus::Geodesic;
use mirrorkit::rational::rat;

/// The homotopy-associative algebra with its twisted complexes adjoined.
pub fn twisted_category() -> AInftyCategory {
    let doc = fixtures::homotopy_twisted();
    let cat = doc.to_category().expect("fixture is valid");
    let complexes = doc.twisted(&cat).expect("fixture is valid");
    twisted_complex_category(&cat, &complexes).expect("fixture satisfies Maurer–Cartan")
}

/// Four pairwise transverse lines with generic offsets.
pub fn four_lines() -> [Geodesic; 4] {
    [((1, 0), rat(1, 7)), ((0, 1), rat(1, 3)), ((1, 1), rat(1, 2)), ((1, -1), rat(1, 5))]
        .map(|(slope, offset)| Geodesic::new(slope, offset, 0).expect("primitive slope"))
}
