//! The five-part deviatoric decomposition of an elastic stiffness tensor:
//! two scalars (the Lame coefficients), two second-order deviators, and one
//! fourth-order deviator, plus reconstruction and the directional Young's
//! modulus.
//!
//! With `d = C_ijkk` and `v = C_ikjk` the parts are
//!
//! ```text
//! lambda = (2 C_iikk - C_ikik) / 15        mu = (3 C_ikik - C_iikk) / 30
//! D    = (5/7) dev(d) - (4/7) dev(v)
//! Dhat = (3/7) dev(v) - (2/7) dev(d)
//! D4   = C - iso(lambda, mu)
//!          - [delta_ij D_kl + delta_kl D_ij]
//!          - [delta_ik Dhat_jl + delta_il Dhat_jk
//!             + delta_jk Dhat_il + delta_jl Dhat_ik]
//! ```
//!
//! and the subtraction residual is automatically a fourth-order deviator, so
//! the same five placements reconstruct C exactly. The five slots can be
//! re-expressed as mutually orthogonal tensors (see [`orthogonal_parts`]),
//! which splits `|C|^2` into a sum of squared part norms.

use crate::error::{Error, Result};
use crate::spectral::check_stiffness_symmetries;
use crate::tensor::{outer_product, symmetrize, traceless_symmetric_part, DenseTensor, Deviator};
use crate::tol;
use crate::vec3::Vec3;

fn kron(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

/// `lambda delta_ij delta_kl + mu (delta_ik delta_jl + delta_il delta_jk)`.
pub fn isotropic_stiffness(lambda: f64, mu: f64) -> DenseTensor {
    let mut c = DenseTensor::zeros(4);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    c.set(
                        &[i, j, k, l],
                        lambda * kron(i, j) * kron(k, l)
                            + mu * (kron(i, k) * kron(j, l) + kron(i, l) * kron(j, k)),
                    );
                }
            }
        }
    }
    c
}

/// Orthogonal projection onto the minor+major-symmetric subspace.
pub fn project_stiffness_symmetries(t: &DenseTensor) -> DenseTensor {
    assert_eq!(t.order(), 4, "stiffness projection needs order 4");
    let mut c = DenseTensor::zeros(4);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let s = t.get(&[i, j, k, l])
                        + t.get(&[j, i, k, l])
                        + t.get(&[i, j, l, k])
                        + t.get(&[j, i, l, k])
                        + t.get(&[k, l, i, j])
                        + t.get(&[l, k, i, j])
                        + t.get(&[k, l, j, i])
                        + t.get(&[l, k, j, i]);
                    c.set(&[i, j, k, l], s / 8.0);
                }
            }
        }
    }
    c
}

/// A fourth-order tensor with the minor and major symmetries of Hooke's law
/// (21 independent coefficients).
///
/// Construction measures the worst symmetry residual; residuals up to
/// `tol::STIFFNESS_REPAIR` relative are projected away (recorded as a
/// repair), larger ones are a hard error.
#[derive(Debug, Clone)]
pub struct StiffnessTensor {
    tensor: DenseTensor,
    symmetry_residual: f64,
    repaired: bool,
}

impl StiffnessTensor {
    pub fn new(tensor: DenseTensor) -> Result<Self> {
        Self::with_tolerance(tensor, tol::STIFFNESS_REPAIR)
    }

    pub fn with_tolerance(tensor: DenseTensor, tol_repair: f64) -> Result<Self> {
        if tensor.order() != 4 {
            return Err(Error::DimensionError(format!(
                "stiffness tensor must have order 4, got {}",
                tensor.order()
            )));
        }
        check_stiffness_symmetries(&tensor, tol_repair)?;
        let scale = tensor.frobenius_norm().max(1e-300);
        let projected = project_stiffness_symmetries(&tensor);
        let residual = projected.max_abs_diff(&tensor) / scale;
        Ok(StiffnessTensor {
            tensor: projected,
            symmetry_residual: residual,
            repaired: residual > 1e-13,
        })
    }

    pub fn tensor(&self) -> &DenseTensor {
        &self.tensor
    }

    /// Relative symmetry residual of the raw input.
    pub fn symmetry_residual(&self) -> f64 {
        self.symmetry_residual
    }

    /// True when the input needed a symmetry projection beyond roundoff.
    pub fn was_repaired(&self) -> bool {
        self.repaired
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.tensor.frobenius_norm()
    }
}

/// Splits into the totally symmetric part `S = s(C)` and the asymmetric
/// remainder `A = C - S` (which has no totally symmetric part).
pub fn split_sym_asym(c: &StiffnessTensor) -> (DenseTensor, DenseTensor) {
    let s = symmetrize(c.tensor());
    let a = c.tensor().sub(&s);
    (s, a)
}

/// The unique rotation-equivariant linear embedding of symmetric
/// second-order tensors into asymmetric fourth-order tensors:
///
/// `phi(R)_ijkl = delta_ij R_kl + delta_kl R_ij - (1/2)(delta_ik R_jl
/// + delta_jl R_ik + delta_il R_jk + delta_jk R_il)`.
pub fn phi(r: &DenseTensor) -> Result<DenseTensor> {
    if r.order() != 2 {
        return Err(Error::DimensionError(format!(
            "phi needs a second-order tensor, got order {}",
            r.order()
        )));
    }
    let scale = r.frobenius_norm().max(1e-300);
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((r.get(&[i, j]) - r.get(&[j, i])).abs());
        }
    }
    if worst > tol::SYMMETRY * scale {
        return Err(Error::NotSymmetric {
            residual: worst,
            tol: tol::SYMMETRY * scale,
        });
    }
    let g = |i: usize, j: usize| r.get(&[i, j]);
    let mut out = DenseTensor::zeros(4);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    out.set(
                        &[i, j, k, l],
                        kron(i, j) * g(k, l) + kron(k, l) * g(i, j)
                            - 0.5
                                * (kron(i, k) * g(j, l)
                                    + kron(j, l) * g(i, k)
                                    + kron(i, l) * g(j, k)
                                    + kron(j, k) * g(i, l)),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Inverse of [`phi`] on its image: `R_ij = A_ijll - delta_ij A_kkll / 4`
/// (three dimensions). Errors when the roundtrip misses `a`.
pub fn phi_inverse(a: &DenseTensor) -> Result<DenseTensor> {
    if a.order() != 4 {
        return Err(Error::DimensionError(format!(
            "phi_inverse needs a fourth-order tensor, got order {}",
            a.order()
        )));
    }
    let mut r = DenseTensor::zeros(2);
    let mut double = 0.0;
    for i in 0..3 {
        for l in 0..3 {
            double += a.get(&[i, i, l, l]);
        }
    }
    for i in 0..3 {
        for j in 0..3 {
            let mut s = 0.0;
            for l in 0..3 {
                s += a.get(&[i, j, l, l]);
            }
            r.set(&[i, j], s - kron(i, j) * double / 4.0);
        }
    }
    let r = symmetrize(&r);
    let back = phi(&r)?;
    let scale = a.frobenius_norm().max(1e-300);
    let residual = back.max_abs_diff(a) / scale;
    if residual > 1e-10 {
        return Err(Error::NotInImage {
            residual,
            tol: 1e-10,
        });
    }
    Ok(r)
}

/// `{lambda, mu, D, Dhat, D4}`: the five slots of the stiffness
/// decomposition.
#[derive(Debug, Clone)]
pub struct StiffnessDecomposition {
    pub lambda: f64,
    pub mu: f64,
    pub dev2: Deviator,
    pub dev2_hat: Deviator,
    pub dev4: Deviator,
}

fn second_order_contractions(c: &DenseTensor) -> (DenseTensor, DenseTensor) {
    let mut d = DenseTensor::zeros(2);
    let mut v = DenseTensor::zeros(2);
    for i in 0..3 {
        for j in 0..3 {
            let mut sd = 0.0;
            let mut sv = 0.0;
            for k in 0..3 {
                sd += c.get(&[i, j, k, k]);
                sv += c.get(&[i, k, j, k]);
            }
            d.set(&[i, j], sd);
            v.set(&[i, j], sv);
        }
    }
    (d, v)
}

fn dev2_of(m: &DenseTensor) -> DenseTensor {
    let tr = m.get(&[0, 0]) + m.get(&[1, 1]) + m.get(&[2, 2]);
    m.sub(&DenseTensor::identity().scaled(tr / 3.0))
}

/// The two second-order placements used by decomposition and reconstruction.
fn placement_first_pairs(d2: &DenseTensor) -> DenseTensor {
    let mut out = DenseTensor::zeros(4);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    out.set(
                        &[i, j, k, l],
                        kron(i, j) * d2.get(&[k, l]) + kron(k, l) * d2.get(&[i, j]),
                    );
                }
            }
        }
    }
    out
}

fn placement_cross(d2: &DenseTensor) -> DenseTensor {
    let mut out = DenseTensor::zeros(4);
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    out.set(
                        &[i, j, k, l],
                        kron(i, k) * d2.get(&[j, l])
                            + kron(i, l) * d2.get(&[j, k])
                            + kron(j, k) * d2.get(&[i, l])
                            + kron(j, l) * d2.get(&[i, k]),
                    );
                }
            }
        }
    }
    out
}

/// Extracts `{lambda, mu, D, Dhat, D4}` from a stiffness tensor.
pub fn decompose_stiffness(c: &StiffnessTensor) -> Result<StiffnessDecomposition> {
    let t = c.tensor();
    let (d, v) = second_order_contractions(t);
    let c1 = d.get(&[0, 0]) + d.get(&[1, 1]) + d.get(&[2, 2]);
    let c2 = v.get(&[0, 0]) + v.get(&[1, 1]) + v.get(&[2, 2]);
    let lambda = (2.0 * c1 - c2) / 15.0;
    let mu = (3.0 * c2 - c1) / 30.0;
    let dev_d = dev2_of(&d);
    let dev_v = dev2_of(&v);
    let d2 = dev_d.scaled(5.0 / 7.0).sub(&dev_v.scaled(4.0 / 7.0));
    let d2_hat = dev_v.scaled(3.0 / 7.0).sub(&dev_d.scaled(2.0 / 7.0));
    let rest = t
        .sub(&isotropic_stiffness(lambda, mu))
        .sub(&placement_first_pairs(&d2))
        .sub(&placement_cross(&d2_hat));
    // the residual lies in the deviator subspace up to roundoff at the C scale
    let d4 = traceless_symmetric_part(&rest);
    let snap = d4.tensor().max_abs_diff(&rest);
    let scale = t.frobenius_norm().max(1e-300);
    if snap > 1e-10 * scale {
        return Err(Error::ReconstructionFailure {
            residual: snap / scale,
            tol: 1e-10,
        });
    }
    Ok(StiffnessDecomposition {
        lambda,
        mu,
        dev2: traceless_symmetric_part(&d2),
        dev2_hat: traceless_symmetric_part(&d2_hat),
        dev4: d4,
    })
}

/// Exact inverse of [`decompose_stiffness`]: re-sums the five slots. With
/// zero deviators this is the isotropic tensor of `(lambda, mu)`.
pub fn reconstruct_stiffness(dec: &StiffnessDecomposition) -> DenseTensor {
    isotropic_stiffness(dec.lambda, dec.mu)
        .add(&placement_first_pairs(dec.dev2.tensor()))
        .add(&placement_cross(dec.dev2_hat.tensor()))
        .add(dec.dev4.tensor())
}

/// The same decomposition regrouped into five mutually orthogonal tensors
/// (full-contraction inner product), summing to C:
/// `[D4, 6 s(I Da), 3 da s(I I), phi(Dha), (dha/2) phi(I)]` with
/// `Da = (D + 2 Dhat)/3`, `Dha = (2/3)(D - Dhat)`, `da = (lambda + 2 mu)/3`,
/// `dha = (2/3)(lambda - mu)`.
pub fn orthogonal_parts(dec: &StiffnessDecomposition) -> [DenseTensor; 5] {
    let eye = DenseTensor::identity();
    let d_a = dec
        .dev2
        .tensor()
        .add(&dec.dev2_hat.tensor().scaled(2.0))
        .scaled(1.0 / 3.0);
    let dh_a = dec
        .dev2
        .tensor()
        .sub(dec.dev2_hat.tensor())
        .scaled(2.0 / 3.0);
    let da = (dec.lambda + 2.0 * dec.mu) / 3.0;
    let dha = 2.0 * (dec.lambda - dec.mu) / 3.0;
    let p2 = symmetrize(&outer_product(&eye, &d_a).expect("order 4")).scaled(6.0);
    let p3 = symmetrize(&outer_product(&eye, &eye).expect("order 4")).scaled(3.0 * da);
    let p4 = phi(&dh_a).expect("deviator is symmetric");
    let p5 = phi(&eye).expect("identity is symmetric").scaled(dha / 2.0);
    [dec.dev4.tensor().clone(), p2, p3, p4, p5]
}

/// Directional Young's modulus:
/// `1/E(d) = (lambda + 2 mu) + 6 D : (d x d) + D4 :: (d x d x d x d)`.
///
/// The leading term is the reciprocal reference modulus `1/E_ri` with
/// `E_ri = 1/(lambda + 2 mu)`; note this reference differs from the
/// classical isotropic Young's modulus `mu (3 lambda + 2 mu)/(lambda + mu)`.
pub fn youngs_modulus(dec: &StiffnessDecomposition, direction: &Vec3) -> Result<f64> {
    let n =
        (direction[0] * direction[0] + direction[1] * direction[1] + direction[2] * direction[2])
            .sqrt();
    if (n - 1.0).abs() > 1e-8 {
        return Err(Error::DimensionError(format!(
            "direction must be a unit vector (|d| = {n:.6})"
        )));
    }
    let d = direction;
    let mut quad = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            quad += dec.dev2.tensor().get(&[i, j]) * d[i] * d[j];
        }
    }
    let mut quart = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    quart += dec.dev4.tensor().get(&[i, j, k, l]) * d[i] * d[j] * d[k] * d[l];
                }
            }
        }
    }
    let inv = (dec.lambda + 2.0 * dec.mu) + 6.0 * quad + quart;
    if inv <= 0.0 {
        return Err(Error::NonPositiveCompliance(inv));
    }
    Ok(1.0 / inv)
}
