//! Directional Young's modulus sampled from the deviatoric decomposition:
//! `1/E(d) = (lambda + 2 mu) + 6 D : (d x d) + D4 :: (d x d x d x d)`.
//!
//! ```bash
//! cargo run --example youngs_modulus
//! ```

use devitensor::io::voigt_to_tensor;
use devitensor::stiffness::{
    decompose_stiffness, isotropic_stiffness, youngs_modulus, StiffnessTensor,
};

fn main() {
    let iso = StiffnessTensor::new(isotropic_stiffness(2.0, 1.0)).unwrap();
    let dec = decompose_stiffness(&iso).unwrap();
    println!("isotropic (lambda = 2, mu = 1): E is direction-free");
    for d in [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0], [0.6, 0.8, 0.0]] {
        println!("  E({d:?}) = {:.9}", youngs_modulus(&dec, &d).unwrap());
    }

    // cubic pattern: C11 = 4, C12 = 2, C44 = 1.5
    let mut v = [[0.0; 6]; 6];
    for (i, row) in v.iter_mut().take(3).enumerate() {
        for (j, x) in row.iter_mut().take(3).enumerate() {
            *x = if i == j { 4.0 } else { 2.0 };
        }
    }
    for (i, row) in v.iter_mut().enumerate().skip(3) {
        row[i] = 1.5;
    }
    let cubic = StiffnessTensor::new(voigt_to_tensor(&v).unwrap()).unwrap();
    let dec = decompose_stiffness(&cubic).unwrap();
    println!("\ncubic (C11 = 4, C12 = 2, C44 = 1.5): axes agree, diagonals differ");
    let s2 = 1.0 / (2.0f64).sqrt();
    let s3 = 1.0 / (3.0f64).sqrt();
    for d in [
        [1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, 0.0, 1.0],
        [s2, s2, 0.0],
        [s3, s3, s3],
    ] {
        println!(
            "  E([{:.4}, {:.4}, {:.4}]) = {:.9}",
            d[0],
            d[1],
            d[2],
            youngs_modulus(&dec, &d).unwrap()
        );
    }
}
