//! Core tensor operations: products, contractions, symmetrization, the
//! symmetric traceless projection, and rotation.
//!
//! ```bash
//! cargo run --example tensor_algebra
//! ```

use devitensor::tensor::{
    contract_double, contract_single, determinant, outer_product, rotate, symmetrize, trace,
    traceless_symmetric_part, DenseTensor,
};

fn main() {
    let e1 = DenseTensor::vector([1.0, 0.0, 0.0]);
    let e2 = DenseTensor::vector([0.0, 1.0, 0.0]);

    let dyad = outer_product(&e1, &e2).unwrap();
    println!(
        "e1 (x) e2 has order {} and norm {}",
        dyad.order(),
        dyad.frobenius_norm()
    );

    let eye = DenseTensor::identity();
    println!(
        "I : I = {}",
        contract_double(&eye, &eye).unwrap().coeffs()[0]
    );
    println!("tr I = {}", trace(&eye, None).unwrap().coeffs()[0]);
    println!(
        "det diag(1,2,3) = {}",
        determinant(&DenseTensor::diag([1.0, 2.0, 3.0])).unwrap()
    );

    let v = DenseTensor::vector([0.3, -1.0, 2.0]);
    let iv = contract_single(&eye, &v).unwrap();
    println!("I . v restores v: {:?}", iv.coeffs());

    // symmetrization averages index orderings; the remainder is orthogonal
    let s = symmetrize(&dyad);
    let a = dyad.sub(&s);
    println!("<sT, aT> = {:.3e} (orthogonal parts)", s.inner(&a));

    // the symmetric traceless projection of e1 (x) e1
    let d = traceless_symmetric_part(&outer_product(&e1, &e1).unwrap());
    println!(
        "floor(e1 (x) e1) diagonal: {:?}",
        [
            d.tensor().get(&[0, 0]),
            d.tensor().get(&[1, 1]),
            d.tensor().get(&[2, 2]),
        ]
    );

    // rotation acts with one factor of Q per index and preserves the norm
    let q = DenseTensor::matrix([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]);
    let t = DenseTensor::diag([1.0, 2.0, 3.0]);
    let r = rotate(&t, &q).unwrap();
    println!(
        "diag(1,2,3) rotated 90 degrees about e3: diag({}, {}, {})",
        r.get(&[0, 0]),
        r.get(&[1, 1]),
        r.get(&[2, 2])
    );
}
