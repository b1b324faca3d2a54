//! The multipole representation of a symmetric second-order tensor and its
//! relation to the eigendecomposition: the bisectors of the two multipoles
//! are eigenvectors.
//!
//! ```bash
//! cargo run --example second_order_multipoles
//! ```

use devitensor::decomp2::{classify_eigen_multipole, decompose2, EigenMultipoleCase};
use devitensor::multipole::multipoles_of_deviator;
use devitensor::tensor::DenseTensor;
use devitensor::vec3;

fn show(t: &DenseTensor) {
    let dec = decompose2(t).unwrap();
    println!("  scalar d = {:.6}, axial vector = {:?}", dec.d, dec.dvec);
    let mp = multipoles_of_deviator(&dec.deviator, 0).unwrap();
    println!("  amplitude a = {:.9}", mp.amplitude);
    for (k, n) in mp.directions.iter().enumerate() {
        println!("  m{} = [{:.9}, {:.9}, {:.9}]", k + 1, n[0], n[1], n[2]);
    }
    match classify_eigen_multipole(t, &mp).unwrap() {
        EigenMultipoleCase::Spherical => println!("  case: spherical (triple eigenvalue)"),
        EigenMultipoleCase::DoubleEigenvalue { axis, amplitude } => println!(
            "  case: double eigenvalue; multipoles collapse onto {:?} with a = {:.6}",
            axis, amplitude
        ),
        EigenMultipoleCase::Generic {
            eigen,
            bisector_close,
            bisector_far,
        } => {
            println!("  case: generic; eigenvalues {:?}", eigen.eigenvalues);
            println!(
                "  bisector closer to the multipoles  = {:?} (the eigenvector of the largest |eigenvalue|)",
                bisector_close
            );
            println!(
                "  other bisector                     = {:?} (the eigenvector of the medium |eigenvalue|)",
                bisector_far
            );
            let check = vec3::axis_distance(&bisector_close, &eigen.eigenvectors[0]);
            println!("  |bisector - eigenvector| = {check:.3e}");
        }
    }
}

fn main() {
    println!("T = diag(3, -1, -2)  (traceless, three distinct |eigenvalues|):");
    show(&DenseTensor::diag([3.0, -1.0, -2.0]));

    println!("\nT = diag(4, 1, 1)  (double eigenvalue):");
    show(&DenseTensor::diag([4.0, 1.0, 1.0]));

    println!("\nT = 5 I  (spherical):");
    show(&DenseTensor::identity().scaled(5.0));
}
