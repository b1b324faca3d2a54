//! Splitting a totally symmetric order-4 tensor into deviators of orders
//! 4, 2, 0, and checking that each part generates a harmonic polynomial.
//!
//! ```bash
//! cargo run --example harmonic_decomposition
//! ```

use devitensor::harmonic::{generate_polynomial, harmonic_decompose};
use devitensor::samples;
use devitensor::tensor::symmetrize;

fn main() {
    let s = symmetrize(&samples::random_tensor(4, 42));
    println!(
        "input: totally symmetric order-4, |S| = {:.6}",
        s.frobenius_norm()
    );

    let dec = harmonic_decompose(&s).unwrap();
    for d in &dec.deviators {
        let lap = generate_polynomial(d.tensor()).laplacian();
        println!(
            "  deviator of order {}: |H| = {:.6}, Laplacian of its polynomial = {:.3e}",
            d.order(),
            d.frobenius_norm(),
            lap.max_abs_coefficient()
        );
    }

    let back = dec.reconstruct();
    println!(
        "reconstruction S = H4 + s(I H2) + h0 s(I I): residual {:.3e}",
        back.sub(&s).frobenius_norm() / s.frobenius_norm()
    );

    // the polynomial view: S and its generated polynomial carry the same data
    let p = generate_polynomial(&s);
    let r = [0.2, -0.7, 0.4];
    println!(
        "S(r) evaluated through the polynomial at {:?}: {:.9}",
        r,
        p.evaluate(&r)
    );
}
