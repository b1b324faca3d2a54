//! Deviatoric decomposition of general second-order tensors
//! `T_ij = d I_ij + eps_ijk d_k + D_ij` and the closed-form relation between
//! the multipoles of a symmetric tensor and its eigendecomposition.

use crate::error::{Error, Result};
use crate::multipole::MultipoleForm;
use crate::spectral::{eigen_sym3, EigenSystem3};
use crate::tensor::{traceless_symmetric_part, DenseTensor, Deviator};
use crate::tol;
use crate::vec3::{self, Vec3};

/// `T = d I + eps . dvec + D`: isotropic scalar, axial vector of the
/// antisymmetric part, and the second-order deviator.
#[derive(Debug, Clone)]
pub struct SecondOrderDecomposition {
    pub d: f64,
    pub dvec: Vec3,
    pub deviator: Deviator,
}

impl SecondOrderDecomposition {
    pub fn reconstruct(&self) -> DenseTensor {
        let mut t = self.deviator.tensor().clone();
        let eps = DenseTensor::permutation();
        for i in 0..3 {
            for j in 0..3 {
                let mut v = t.get(&[i, j]);
                if i == j {
                    v += self.d;
                }
                for k in 0..3 {
                    v += eps.get(&[i, j, k]) * self.dvec[k];
                }
                t.set(&[i, j], v);
            }
        }
        t
    }
}

/// Exact decomposition of any second-order tensor; `d = T_ii / 3`,
/// `d_k = eps_kij T_ij / 2`, `D = dev(sym(T))`.
pub fn decompose2(t: &DenseTensor) -> Result<SecondOrderDecomposition> {
    if t.order() != 2 {
        return Err(Error::DimensionError(format!(
            "second-order decomposition needs order 2, got {}",
            t.order()
        )));
    }
    let d = (t.get(&[0, 0]) + t.get(&[1, 1]) + t.get(&[2, 2])) / 3.0;
    let eps = DenseTensor::permutation();
    let mut dvec = [0.0; 3];
    for (k, slot) in dvec.iter_mut().enumerate() {
        let mut s = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                s += eps.get(&[k, i, j]) * t.get(&[i, j]);
            }
        }
        *slot = 0.5 * s;
    }
    let deviator = traceless_symmetric_part(t);
    Ok(SecondOrderDecomposition { d, dvec, deviator })
}

/// How the two multipoles of a symmetric second-order tensor sit relative to
/// its eigendecomposition.
#[derive(Debug, Clone)]
pub enum EigenMultipoleCase {
    /// Triple eigenvalue; the deviator vanishes and the amplitude is zero.
    Spherical,
    /// Double eigenvalue; both multipoles collapse onto the eigenvector of
    /// the eigenvalue with the largest absolute value.
    DoubleEigenvalue { axis: Vec3, amplitude: f64 },
    /// Distinct |eigenvalues|; the multipole bisectors are eigenvectors.
    Generic {
        eigen: EigenSystem3,
        /// Bisector closer to the multipoles; parallel to the eigenvector of
        /// the largest |eigenvalue|.
        bisector_close: Vec3,
        /// The other bisector; parallel to the eigenvector of the medium
        /// |eigenvalue|.
        bisector_far: Vec3,
    },
}

impl EigenMultipoleCase {
    pub fn label(&self) -> &'static str {
        match self {
            EigenMultipoleCase::Spherical => "spherical",
            EigenMultipoleCase::DoubleEigenvalue { .. } => "double_eigenvalue",
            EigenMultipoleCase::Generic { .. } => "generic",
        }
    }
}

/// Closed-form multipoles of a traceless symmetric tensor with eigenvalues
/// `lambda1, lambda2` (sorted by descending absolute value; the third is
/// `-lambda1 - lambda2`), expressed in the eigenframe.
///
/// The amplitude is forced to `|lambda1 - lambda2|` by the unit-norm
/// constraint; components are
/// `m_{1,2} = (sqrt((2 l1 + l2)/a'), +-sqrt((-l1 - 2 l2)/a'), 0)` with
/// `a' = l1 - l2`. When `a'` is negative the returned second direction is
/// negated so that `a * floor(m1 (x) m2)` reproduces `diag(l1, l2, l3)` with
/// `a >= 0`.
pub fn multipoles_from_eigen(lambda1: f64, lambda2: f64) -> Result<(f64, Vec3, Vec3)> {
    multipoles_from_eigen_with_tol(lambda1, lambda2, tol::GAP)
}

pub fn multipoles_from_eigen_with_tol(
    lambda1: f64,
    lambda2: f64,
    tol_gap: f64,
) -> Result<(f64, Vec3, Vec3)> {
    let lambda3 = -lambda1 - lambda2;
    let scale = lambda1.abs().max(lambda2.abs()).max(lambda3.abs());
    let gap12 = (lambda1.abs() - lambda2.abs()).abs();
    let gap23 = (lambda2.abs() - lambda3.abs()).abs();
    if gap12.min(gap23) <= tol_gap * scale {
        return Err(Error::DegenerateSpectrum {
            gap: gap12.min(gap23),
            tol: tol_gap * scale,
        });
    }
    let a_signed = lambda1 - lambda2;
    let c1 = ((2.0 * lambda1 + lambda2) / a_signed).sqrt();
    let c2 = ((-lambda1 - 2.0 * lambda2) / a_signed).sqrt();
    let m1 = [c1, c2, 0.0];
    let mut m2 = [c1, -c2, 0.0];
    if a_signed < 0.0 {
        m2 = vec3::neg(&m2);
    }
    Ok((a_signed.abs(), m1, m2))
}

/// Case analysis of a symmetric tensor against the multipoles of its
/// deviator, verifying the bisector property in the generic case.
pub fn classify_eigen_multipole(
    t: &DenseTensor,
    multipoles: &MultipoleForm,
) -> Result<EigenMultipoleCase> {
    classify_eigen_multipole_with_tol(t, multipoles, tol::GAP, tol::DIRECTION)
}

pub fn classify_eigen_multipole_with_tol(
    t: &DenseTensor,
    multipoles: &MultipoleForm,
    tol_gap: f64,
    tol_dir: f64,
) -> Result<EigenMultipoleCase> {
    let dev = traceless_symmetric_part(t);
    let scale = dev.frobenius_norm();
    if multipoles.amplitude <= tol_gap * t.frobenius_norm().max(1e-300) || scale == 0.0 {
        return Ok(EigenMultipoleCase::Spherical);
    }
    let eigen = eigen_sym3(dev.tensor())?;
    let [_l1, l2, l3] = eigen.eigenvalues;
    // ties resolve toward the more degenerate case
    if (l2 - l3).abs() <= tol_gap * scale {
        return Ok(EigenMultipoleCase::DoubleEigenvalue {
            axis: eigen.eigenvectors[0],
            amplitude: multipoles.amplitude,
        });
    }
    let m1 = multipoles.directions[0];
    let mut m2 = multipoles.directions[1];
    if vec3::dot(&m1, &m2) < 0.0 {
        m2 = vec3::neg(&m2);
    }
    let b1 = vec3::normalize(&vec3::add(&m1, &m2)).expect("non-antipodal pair");
    let b2 = vec3::normalize(&vec3::sub(&m1, &m2)).expect("distinct pair");
    // the bisector at the smaller angle to the multipoles pairs with the
    // largest |eigenvalue|
    let ang = |b: &Vec3| vec3::dot(b, &m1).abs().clamp(0.0, 1.0).acos();
    let (close, far) = if ang(&b1) <= ang(&b2) {
        (b1, b2)
    } else {
        (b2, b1)
    };
    if !vec3::same_axis(&close, &eigen.eigenvectors[0], tol_dir)
        || !vec3::same_axis(&far, &eigen.eigenvectors[1], tol_dir)
    {
        return Err(Error::ConfigurationAmbiguous(format!(
            "bisectors miss the eigenframe: |close - v1| = {:.3e}, |far - v2| = {:.3e}",
            vec3::axis_distance(&close, &eigen.eigenvectors[0]),
            vec3::axis_distance(&far, &eigen.eigenvectors[1]),
        )));
    }
    Ok(EigenMultipoleCase::Generic {
        eigen,
        bisector_close: close,
        bisector_far: far,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multipole::multipoles_of_deviator;
    use crate::samples;
    use crate::tensor::outer_product;

    #[test]
    fn identity_decomposes_to_pure_scalar() {
        let dec = decompose2(&DenseTensor::identity()).unwrap();
        assert_eq!(dec.d, 1.0);
        assert_eq!(dec.dvec, [0.0, 0.0, 0.0]);
        assert!(dec.deviator.frobenius_norm() < 1e-15);
    }

    #[test]
    fn rotation_generator_goes_to_axial_vector() {
        let mut t = DenseTensor::zeros(2);
        t.set(&[1, 2], 1.0);
        t.set(&[2, 1], -1.0);
        let dec = decompose2(&t).unwrap();
        assert_eq!(dec.d, 0.0);
        assert!(dec.deviator.frobenius_norm() < 1e-15);
        assert!(vec3::norm(&vec3::sub(&dec.dvec, &[1.0, 0.0, 0.0])) < 1e-15);
        assert!(dec.reconstruct().max_abs_diff(&t) < 1e-15);
    }

    #[test]
    fn traceless_diagonal_is_its_own_deviator() {
        let t = DenseTensor::diag([3.0, -1.0, -2.0]);
        let dec = decompose2(&t).unwrap();
        assert_eq!(dec.d, 0.0);
        assert_eq!(dec.dvec, [0.0, 0.0, 0.0]);
        assert!(dec.deviator.tensor().max_abs_diff(&t) < 1e-15);
    }

    #[test]
    fn reconstruction_exact_on_random_tensors() {
        for seed in 0..50 {
            let t = samples::random_tensor(2, seed);
            let dec = decompose2(&t).unwrap();
            assert!(dec.reconstruct().max_abs_diff(&t) <= 1e-12 * t.frobenius_norm());
        }
    }

    #[test]
    fn symmetric_input_has_zero_axial_vector() {
        let t = samples::random_symmetric2(33);
        let dec = decompose2(&t).unwrap();
        assert!(vec3::norm(&dec.dvec) < 1e-13 * t.frobenius_norm());
    }

    #[test]
    fn closed_form_example() {
        let (a, m1, m2) = multipoles_from_eigen(3.0, -2.0).unwrap();
        assert!((a - 5.0).abs() < 1e-14);
        let want1 = [(0.8f64).sqrt(), (0.2f64).sqrt(), 0.0];
        let want2 = [(0.8f64).sqrt(), -(0.2f64).sqrt(), 0.0];
        assert!(vec3::norm(&vec3::sub(&m1, &want1)) < 1e-14);
        assert!(vec3::norm(&vec3::sub(&m2, &want2)) < 1e-14);

        // angle between m1 and e1 per the arccos formula
        let angle = vec3::dot(&m1, &[1.0, 0.0, 0.0]).acos();
        assert!((angle - (0.8f64).sqrt().acos()).abs() < 1e-12);
        assert!((angle - 0.46364760900080615).abs() < 1e-12);

        // a * floor(m1 (x) m2) = diag(3, -2, -1)
        let m = traceless_symmetric_part(
            &outer_product(&DenseTensor::vector(m1), &DenseTensor::vector(m2)).unwrap(),
        );
        assert!(
            m.tensor()
                .scaled(a)
                .max_abs_diff(&DenseTensor::diag([3.0, -2.0, -1.0]))
                < 1e-12
        );
    }

    #[test]
    fn closed_form_negative_leading_eigenvalue() {
        // eigenvalues (-3, 2, 1): amplitude stays non-negative via one flip
        let (a, m1, m2) = multipoles_from_eigen(-3.0, 2.0).unwrap();
        assert!((a - 5.0).abs() < 1e-14);
        let m = traceless_symmetric_part(
            &outer_product(&DenseTensor::vector(m1), &DenseTensor::vector(m2)).unwrap(),
        );
        assert!(
            m.tensor()
                .scaled(a)
                .max_abs_diff(&DenseTensor::diag([-3.0, 2.0, 1.0]))
                < 1e-12
        );
    }

    #[test]
    fn closed_form_rejects_degenerate() {
        assert!(matches!(
            multipoles_from_eigen(2.0, -1.0),
            Err(Error::DegenerateSpectrum { .. })
        ));
    }

    #[test]
    fn double_eigenvalue_collapse() {
        // dev(diag(4,1,1)) = diag(2,-1,-1) = 3 floor(e1 (x) e1)
        let t = DenseTensor::diag([4.0, 1.0, 1.0]);
        let d = traceless_symmetric_part(&t);
        let mp = multipoles_of_deviator(&d, 0).unwrap();
        assert!((mp.amplitude - 3.0).abs() < 1e-10);
        assert!(vec3::same_axis(&mp.directions[0], &[1.0, 0.0, 0.0], 1e-8));
        assert!(vec3::same_axis(&mp.directions[1], &[1.0, 0.0, 0.0], 1e-8));
        let case = classify_eigen_multipole(&t, &mp).unwrap();
        assert_eq!(case.label(), "double_eigenvalue");
    }

    #[test]
    fn spherical_case() {
        let t = DenseTensor::identity().scaled(5.0);
        let d = traceless_symmetric_part(&t);
        let mp = multipoles_of_deviator(&d, 0).unwrap();
        assert_eq!(mp.amplitude, 0.0);
        let case = classify_eigen_multipole(&t, &mp).unwrap();
        assert_eq!(case.label(), "spherical");
    }

    #[test]
    fn generic_case_bisectors() {
        let t = DenseTensor::diag([3.0, -1.0, -2.0]);
        let mp = multipoles_of_deviator(&traceless_symmetric_part(&t), 0).unwrap();
        let case = classify_eigen_multipole(&t, &mp).unwrap();
        let EigenMultipoleCase::Generic {
            bisector_close,
            bisector_far,
            ..
        } = case
        else {
            panic!("expected generic case");
        };
        // eigenvalues sorted by |.|: (3, -2, -1) with vectors e1, e3, e2
        assert!(vec3::same_axis(&bisector_close, &[1.0, 0.0, 0.0], 1e-8));
        assert!(vec3::same_axis(&bisector_far, &[0.0, 0.0, 1.0], 1e-8));
    }

    #[test]
    fn adding_identity_changes_only_scalar_part() {
        let t = samples::random_symmetric2(91);
        let shifted = t.add(&DenseTensor::identity().scaled(2.5));
        let d1 = decompose2(&t).unwrap();
        let d2 = decompose2(&shifted).unwrap();
        assert!((d2.d - d1.d - 2.5).abs() < 1e-13);
        assert!(d1.deviator.tensor().max_abs_diff(d2.deviator.tensor()) < 1e-13);
        let mp1 = multipoles_of_deviator(&d1.deviator, 0).unwrap();
        let mp2 = multipoles_of_deviator(&d2.deviator, 0).unwrap();
        assert!((mp1.amplitude - mp2.amplitude).abs() < 1e-10);
        for (u, v) in mp1.directions.iter().zip(&mp2.directions) {
            assert!(vec3::same_axis(u, v, 1e-8));
        }
    }

    #[test]
    fn bisector_property_random() {
        let mut checked = 0;
        for seed in 0..120 {
            let t = samples::random_symmetric2(1000 + seed);
            let dev = traceless_symmetric_part(&t);
            let es = eigen_sym3(dev.tensor()).unwrap();
            let [l1, l2, l3] = es.eigenvalues;
            let scale = dev.frobenius_norm();
            if (l1.abs() - l2.abs()).abs() < 1e-3 * scale
                || (l2.abs() - l3.abs()).abs() < 1e-3 * scale
            {
                continue;
            }
            let mp = multipoles_of_deviator(&dev, 0).unwrap();
            let case = classify_eigen_multipole(&t, &mp).unwrap();
            assert_eq!(case.label(), "generic");
            checked += 1;
        }
        assert!(checked > 60, "too few generic samples: {checked}");
    }
}
