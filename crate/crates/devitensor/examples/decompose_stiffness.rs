//! The five-part deviatoric decomposition of a stiffness tensor:
//! {lambda, mu, D, Dhat, D4}, its exact reconstruction, and the orthogonal
//! regrouping that splits |C|^2.
//!
//! ```bash
//! cargo run --example decompose_stiffness
//! ```

use devitensor::samples;
use devitensor::stiffness::{
    decompose_stiffness, orthogonal_parts, reconstruct_stiffness, StiffnessTensor,
};

fn main() {
    let c = StiffnessTensor::new(samples::random_stiffness(3)).unwrap();
    println!("random stiffness tensor, |C| = {:.6}", c.frobenius_norm());

    let dec = decompose_stiffness(&c).unwrap();
    println!("lambda = {:.9}", dec.lambda);
    println!("mu     = {:.9}", dec.mu);
    println!(
        "|D|    = {:.9}  (second-order deviator)",
        dec.dev2.frobenius_norm()
    );
    println!(
        "|Dhat| = {:.9}  (second-order deviator)",
        dec.dev2_hat.frobenius_norm()
    );
    println!(
        "|D4|   = {:.9}  (fourth-order deviator)",
        dec.dev4.frobenius_norm()
    );

    let back = reconstruct_stiffness(&dec);
    println!(
        "reconstruction residual: {:.3e}",
        back.sub(c.tensor()).frobenius_norm() / c.frobenius_norm()
    );

    // the same five slots regrouped into mutually orthogonal tensors
    let parts = orthogonal_parts(&dec);
    let names = ["D4", "D-term", "isotropic", "Dhat-term", "isotropic-hat"];
    let total = c.tensor().inner(c.tensor());
    let mut sum = 0.0;
    println!("orthogonal split of |C|^2 = {total:.6}:");
    for (name, p) in names.iter().zip(&parts) {
        let sq = p.inner(p);
        sum += sq;
        println!("  |{name}|^2 = {sq:.6}");
    }
    println!(
        "  sum = {sum:.6} (Pythagoras residual {:.3e})",
        (sum - total).abs() / total
    );
}
