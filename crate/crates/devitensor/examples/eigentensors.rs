//! Kelvin (Mandel) mapping and the eigentensor decomposition of a stiffness
//! tensor: C = sum_i Lambda_i M_i (x) M_i.
//!
//! ```bash
//! cargo run --example eigentensors
//! ```

use devitensor::samples;
use devitensor::spectral::{eigentensors, kelvin_map};
use devitensor::stiffness::isotropic_stiffness;

fn main() {
    let c = isotropic_stiffness(2.0, 1.0);
    let k = kelvin_map(&c).unwrap();
    println!("Kelvin matrix of the isotropic tensor (lambda = 2, mu = 1):");
    for row in &k.entries {
        println!("  {row:?}");
    }
    println!(
        "norm preserved: |K| = {:.12}, |C| = {:.12}",
        k.frobenius_norm(),
        c.frobenius_norm()
    );

    let sys = eigentensors(&c).unwrap();
    println!(
        "eigenstiffnesses: {:?}  (3 lambda + 2 mu = 8 once, 2 mu = 2 five times)",
        sys.eigenstiffnesses
    );

    let c = samples::random_stiffness(11);
    let sys = eigentensors(&c).unwrap();
    println!("\nrandom stiffness: eigenstiffnesses sorted by |value|:");
    for lam in sys.eigenstiffnesses {
        println!("  {lam:.9}");
    }
    let back = sys.reconstruct();
    println!(
        "sum_i Lambda_i M_i (x) M_i reconstructs C: residual {:.3e}",
        back.sub(&c).frobenius_norm() / c.frobenius_norm()
    );
}
