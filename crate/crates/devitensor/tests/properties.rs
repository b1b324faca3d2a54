//! Property tests for the spec-level invariants that hold on all inputs.

use proptest::prelude::*;

use devitensor::decomp2::decompose2;
use devitensor::harmonic::{generate_polynomial, harmonic_decompose};
use devitensor::multipole::multipoles_of_deviator;
use devitensor::spectral::{eigen_sym3, kelvin_map, kelvin_unmap};
use devitensor::stiffness::{
    decompose_stiffness, orthogonal_parts, phi, phi_inverse, project_stiffness_symmetries,
    reconstruct_stiffness, StiffnessTensor,
};
use devitensor::tensor::{rotate, symmetrize, trace, traceless_symmetric_part, DenseTensor};

fn coeffs(order: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0..3.0f64, 3usize.pow(order as u32))
}

/// Proper rotation from three angles.
fn rotation(a: f64, b: f64, c: f64) -> DenseTensor {
    let rz = |t: f64| {
        DenseTensor::matrix([
            [t.cos(), -t.sin(), 0.0],
            [t.sin(), t.cos(), 0.0],
            [0.0, 0.0, 1.0],
        ])
    };
    let ry = |t: f64| {
        DenseTensor::matrix([
            [t.cos(), 0.0, t.sin()],
            [0.0, 1.0, 0.0],
            [-t.sin(), 0.0, t.cos()],
        ])
    };
    let mut q = DenseTensor::identity();
    for f in [rz(a), ry(b), rz(c)] {
        let mut out = DenseTensor::zeros(2);
        for i in 0..3 {
            for j in 0..3 {
                let mut s = 0.0;
                for k in 0..3 {
                    s += f.get(&[i, k]) * q.get(&[k, j]);
                }
                out.set(&[i, j], s);
            }
        }
        q = out;
    }
    q
}

const ANGLE: std::ops::Range<f64> = -3.2..3.2;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rotation_preserves_frobenius_norm(
        order in 0usize..=4,
        data in coeffs(4),
        a in ANGLE, b in ANGLE, c in ANGLE,
    ) {
        let t = DenseTensor::from_coeffs(order, data[..3usize.pow(order as u32)].to_vec()).unwrap();
        let q = rotation(a, b, c);
        let r = rotate(&t, &q).unwrap();
        prop_assert!((r.frobenius_norm() - t.frobenius_norm()).abs() <= 1e-12 * t.frobenius_norm().max(1.0));
    }

    #[test]
    fn symmetrize_is_orthogonal_projector(data in coeffs(4)) {
        let t = DenseTensor::from_coeffs(4, data).unwrap();
        let s = symmetrize(&t);
        let a = t.sub(&s);
        prop_assert!(symmetrize(&s).max_abs_diff(&s) <= 1e-13 * t.frobenius_norm().max(1.0));
        prop_assert!(s.inner(&a).abs() <= 1e-11 * t.frobenius_norm().powi(2).max(1.0));
    }

    #[test]
    fn traceless_part_is_symmetric_and_traceless(order in 2usize..=4, data in coeffs(4)) {
        let t = DenseTensor::from_coeffs(order, data[..3usize.pow(order as u32)].to_vec()).unwrap();
        let scale = t.frobenius_norm().max(1e-300);
        let d = traceless_symmetric_part(&t);
        prop_assert!(d.tensor().symmetry_residual() <= 1e-12 * scale);
        for s1 in 1..=order {
            for s2 in (s1 + 1)..=order {
                let tr = trace(d.tensor(), Some((s1, s2))).unwrap();
                prop_assert!(tr.frobenius_norm() <= 1e-12 * scale);
            }
        }
    }

    #[test]
    fn projection_commutes_with_rotation(
        order in 2usize..=4,
        data in coeffs(4),
        a in ANGLE, b in ANGLE, c in ANGLE,
    ) {
        let t = DenseTensor::from_coeffs(order, data[..3usize.pow(order as u32)].to_vec()).unwrap();
        let q = rotation(a, b, c);
        let lhs = traceless_symmetric_part(&rotate(&t, &q).unwrap());
        let rhs = rotate(traceless_symmetric_part(&t).tensor(), &q).unwrap();
        prop_assert!(lhs.tensor().max_abs_diff(&rhs) <= 1e-12 * t.frobenius_norm().max(1.0));
    }

    #[test]
    fn second_order_decomposition_reconstructs(data in coeffs(2)) {
        let t = DenseTensor::from_coeffs(2, data).unwrap();
        let dec = decompose2(&t).unwrap();
        prop_assert!(dec.reconstruct().max_abs_diff(&t) <= 1e-12 * t.frobenius_norm().max(1.0));
        // the deviator slots are orthogonal pieces
        let dev_norm2 = dec.deviator.tensor().inner(dec.deviator.tensor());
        let total = t.inner(&t);
        prop_assert!(dev_norm2 <= total + 1e-9 * total.max(1.0));
    }

    #[test]
    fn eigen_reconstructs_symmetric(data in coeffs(2)) {
        let t = symmetrize(&DenseTensor::from_coeffs(2, data).unwrap());
        let es = eigen_sym3(&t).unwrap();
        prop_assert!(es.reconstruct().max_abs_diff(&t) <= 1e-10 * t.frobenius_norm().max(1.0));
    }

    #[test]
    fn kelvin_roundtrip_and_norm(data in coeffs(4)) {
        let c = project_stiffness_symmetries(&DenseTensor::from_coeffs(4, data).unwrap());
        let k = kelvin_map(&c).unwrap();
        prop_assert!((k.frobenius_norm() - c.frobenius_norm()).abs() <= 1e-12 * c.frobenius_norm().max(1.0));
        prop_assert!(kelvin_unmap(&k).max_abs_diff(&c) <= 1e-13 * c.frobenius_norm().max(1.0));
    }

    #[test]
    fn harmonic_reconstructs(order in 2usize..=4, data in coeffs(4)) {
        let s = symmetrize(
            &DenseTensor::from_coeffs(order, data[..3usize.pow(order as u32)].to_vec()).unwrap(),
        );
        let scale = s.frobenius_norm().max(1e-300);
        let dec = harmonic_decompose(&s).unwrap();
        prop_assert!(dec.reconstruct().max_abs_diff(&s) <= 1e-10 * scale);
        for d in &dec.deviators {
            let lap = generate_polynomial(d.tensor()).laplacian();
            prop_assert!(lap.max_abs_coefficient() <= 1e-10 * scale);
        }
    }

    #[test]
    fn stiffness_roundtrip_and_pythagoras(data in coeffs(4)) {
        let c = StiffnessTensor::new(project_stiffness_symmetries(
            &DenseTensor::from_coeffs(4, data).unwrap(),
        ))
        .unwrap();
        let dec = decompose_stiffness(&c).unwrap();
        let back = reconstruct_stiffness(&dec);
        prop_assert!(back.max_abs_diff(c.tensor()) <= 1e-10 * c.frobenius_norm().max(1.0));
        let parts = orthogonal_parts(&dec);
        let n2 = c.tensor().inner(c.tensor());
        let sq: f64 = parts.iter().map(|p| p.inner(p)).sum();
        prop_assert!((sq - n2).abs() <= 1e-9 * n2.max(1.0));
    }

    #[test]
    fn phi_roundtrips(data in coeffs(2)) {
        let r = symmetrize(&DenseTensor::from_coeffs(2, data).unwrap());
        let back = phi_inverse(&phi(&r).unwrap()).unwrap();
        prop_assert!(back.max_abs_diff(&r) <= 1e-12 * r.frobenius_norm().max(1.0));
    }
}

proptest! {
    // multipole extraction is heavier; fewer cases
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multipoles_reconstruct_order2(data in coeffs(2)) {
        let d = traceless_symmetric_part(&DenseTensor::from_coeffs(2, data).unwrap());
        prop_assume!(d.frobenius_norm() > 1e-3);
        let mp = multipoles_of_deviator(&d, 0).unwrap();
        let resid = mp.reconstruct().sub(d.tensor()).frobenius_norm();
        prop_assert!(resid <= 1e-8 * d.frobenius_norm().max(mp.amplitude));
        prop_assert!(mp.amplitude >= 0.0);
    }

    #[test]
    fn multipoles_reconstruct_order4(data in coeffs(4)) {
        let d = traceless_symmetric_part(&DenseTensor::from_coeffs(4, data).unwrap());
        prop_assume!(d.frobenius_norm() > 1e-3);
        let mp = multipoles_of_deviator(&d, 0).unwrap();
        let resid = mp.reconstruct().sub(d.tensor()).frobenius_norm();
        prop_assert!(resid <= 1e-6 * d.frobenius_norm().max(mp.amplitude));
    }
}
