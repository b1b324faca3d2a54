//! Anisotropy classification of textbook stiffness patterns, also under a
//! random rotation (the label is orientation-free).
//!
//! ```bash
//! cargo run --example classify_materials
//! ```

use devitensor::io::voigt_to_tensor;
use devitensor::samples;
use devitensor::stiffness::StiffnessTensor;
use devitensor::symmetry::{classify_stiffness, SymmetryPlaneSet};
use devitensor::tensor::rotate;

fn voigt(entries: &[(usize, usize, f64)]) -> [[f64; 6]; 6] {
    let mut v = [[0.0; 6]; 6];
    for &(i, j, x) in entries {
        v[i][j] = x;
        v[j][i] = x;
    }
    v
}

fn main() {
    #[rustfmt::skip]
    let materials: Vec<(&str, [[f64; 6]; 6])> = vec![
        (
            "isotropic",
            voigt(&[
                (0, 0, 4.0), (1, 1, 4.0), (2, 2, 4.0),
                (0, 1, 2.0), (0, 2, 2.0), (1, 2, 2.0),
                (3, 3, 1.0), (4, 4, 1.0), (5, 5, 1.0),
            ]),
        ),
        (
            "cubic",
            voigt(&[
                (0, 0, 4.0), (1, 1, 4.0), (2, 2, 4.0),
                (0, 1, 2.0), (0, 2, 2.0), (1, 2, 2.0),
                (3, 3, 1.5), (4, 4, 1.5), (5, 5, 1.5),
            ]),
        ),
        (
            "hexagonal (transversely isotropic)",
            voigt(&[
                (0, 0, 7.0), (1, 1, 7.0), (2, 2, 6.0),
                (0, 1, 3.0), (0, 2, 2.0), (1, 2, 2.0),
                (3, 3, 1.5), (4, 4, 1.5), (5, 5, 2.0),
            ]),
        ),
        (
            "trigonal",
            voigt(&[
                (0, 0, 7.0), (1, 1, 7.0), (2, 2, 6.0),
                (0, 1, 3.0), (0, 2, 2.0), (1, 2, 2.0),
                (3, 3, 1.5), (4, 4, 1.5), (5, 5, 2.0),
                (0, 3, 0.8), (1, 3, -0.8), (4, 5, 0.8),
            ]),
        ),
        (
            "orthotropic",
            voigt(&[
                (0, 0, 7.0), (1, 1, 6.0), (2, 2, 5.0),
                (0, 1, 2.0), (0, 2, 1.5), (1, 2, 1.0),
                (3, 3, 1.2), (4, 4, 1.4), (5, 5, 1.6),
            ]),
        ),
    ];

    for (name, v) in &materials {
        let base = voigt_to_tensor(v).unwrap();
        let q = samples::random_rotation(17);
        let rotated = rotate(&base, &q).unwrap();
        for (tag, tensor) in [("as tabulated", base), ("randomly rotated", rotated)] {
            let c = StiffnessTensor::new(tensor).unwrap();
            let r = classify_stiffness(&c).unwrap();
            let planes = match &r.planes {
                SymmetryPlaneSet::AllDirections => "all directions".to_string(),
                SymmetryPlaneSet::TransverseFamily { axis } => format!(
                    "axis [{:.4}, {:.4}, {:.4}] + its orthogonal circle",
                    axis[0], axis[1], axis[2]
                ),
                SymmetryPlaneSet::Finite { normals } => format!("{} normals", normals.len()),
            };
            println!("{name:38} {tag:18} -> {:24} ({planes})", r.class.label());
        }
    }
}
