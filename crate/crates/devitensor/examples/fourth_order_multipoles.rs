//! Multipoles of the fourth-order deviator of a cubic material: the four
//! directions come out as the cube diagonals.
//!
//! ```bash
//! cargo run --example fourth_order_multipoles
//! ```

use devitensor::io::voigt_to_tensor;
use devitensor::multipole::{
    deviator_poly_coeffs, multipoles_of_deviator, pairing_closure_residual, solve_roots,
};
use devitensor::stiffness::{decompose_stiffness, StiffnessTensor};
use devitensor::vec3;

fn main() {
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
    let c = StiffnessTensor::new(voigt_to_tensor(&v).unwrap()).unwrap();
    let dec = decompose_stiffness(&c).unwrap();
    println!(
        "cubic stiffness: lambda = {}, mu = {}, |D| = {:.1e}, |Dhat| = {:.1e}, |D4| = {:.4}",
        dec.lambda,
        dec.mu,
        dec.dev2.frobenius_norm(),
        dec.dev2_hat.frobenius_norm(),
        dec.dev4.frobenius_norm()
    );

    let p = deviator_poly_coeffs(&dec.dev4).unwrap();
    println!("polynomial coefficients (degree 8):");
    for (k, coef) in p.coefficients.iter().enumerate() {
        if coef.norm() > 1e-12 {
            println!("  x^{k}: {coef}");
        }
    }
    let roots = solve_roots(&p, 0).unwrap();
    println!(
        "roots pair up under x -> -1/conj(x): closure residual {:.3e}",
        pairing_closure_residual(&roots)
    );

    let mp = multipoles_of_deviator(&dec.dev4, 0).unwrap();
    println!("amplitude a = {:.9}", mp.amplitude);
    let diag = 1.0 / (3.0f64).sqrt();
    for (k, n) in mp.directions.iter().enumerate() {
        let is_diagonal = [
            [diag, diag, diag],
            [-diag, diag, diag],
            [diag, -diag, diag],
            [diag, diag, -diag],
        ]
        .iter()
        .any(|d| vec3::same_axis(n, d, 1e-8));
        println!(
            "  n{} = [{:.9}, {:.9}, {:.9}]  (cube diagonal: {})",
            k + 1,
            n[0],
            n[1],
            n[2],
            is_diagonal
        );
    }
    let resid =
        mp.reconstruct().sub(dec.dev4.tensor()).frobenius_norm() / dec.dev4.frobenius_norm();
    println!("reconstruction a*floor(n1 x n2 x n3 x n4) residual: {resid:.3e}");
}
