//! Spectral decomposition of symmetric 3x3 tensors and, through the Kelvin
//! (Mandel) mapping, eigentensors of minor+major-symmetric fourth-order
//! tensors.

use crate::error::{Error, Result};
use crate::tensor::DenseTensor;
use crate::tol;
use crate::vec3::{self, Vec3};

/// Index pairs of the Kelvin/Mandel 6-vector in the order 11, 22, 33, 23, 13, 12.
pub const KELVIN_PAIRS: [(usize, usize); 6] = [(0, 0), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1)];

fn kelvin_weight(m: usize) -> f64 {
    if m < 3 {
        1.0
    } else {
        std::f64::consts::SQRT_2
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Rotations are applied until the off-diagonal norm drops below
/// `1e-14 * |A|` or 50 sweeps; returns (eigenvalues, eigenvector columns).
fn jacobi<const N: usize>(mut a: [[f64; N]; N]) -> ([f64; N], [[f64; N]; N]) {
    let mut v = [[0.0; N]; N];
    for (i, row) in v.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    let norm: f64 = a
        .iter()
        .flat_map(|r| r.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
        .max(1e-300);
    for _sweep in 0..50 {
        let mut off = 0.0;
        for p in 0..N {
            for q in (p + 1)..N {
                off += 2.0 * a[p][q] * a[p][q];
            }
        }
        if off.sqrt() <= 1e-14 * norm {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                if a[p][q].abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);
                let apq = a[p][q];
                a[p][p] -= t * apq;
                a[q][q] += t * apq;
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for k in 0..N {
                    if k != p && k != q {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = akp - s * (akq + tau * akp);
                        a[p][k] = a[k][p];
                        a[k][q] = akq + s * (akp - tau * akq);
                        a[q][k] = a[k][q];
                    }
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = vkp - s * (vkq + tau * vkp);
                    row[q] = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }
    let mut w = [0.0; N];
    for i in 0..N {
        w[i] = a[i][i];
    }
    (w, v)
}

/// Sorts eigenpairs by descending |eigenvalue|; ties prefer the positive
/// value first. Columns of `v` follow their eigenvalues.
fn sort_eigenpairs<const N: usize>(w: &mut [f64; N], v: &mut [[f64; N]; N]) {
    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| {
        w[j].abs()
            .partial_cmp(&w[i].abs())
            .unwrap()
            .then(w[j].partial_cmp(&w[i]).unwrap())
    });
    let w0 = *w;
    let v0 = *v;
    for (dst, &src) in order.iter().enumerate() {
        w[dst] = w0[src];
        for r in 0..N {
            v[r][dst] = v0[r][src];
        }
    }
}

/// Canonical sign: the largest-magnitude entry of each column made positive.
fn canonicalize_columns<const N: usize>(v: &mut [[f64; N]; N]) {
    for c in 0..N {
        let mut k = 0;
        for r in 1..N {
            if v[r][c].abs() > v[k][c].abs() {
                k = r;
            }
        }
        if v[k][c] < 0.0 {
            for r in 0..N {
                v[r][c] = -v[r][c];
            }
        }
    }
}

/// Re-orthonormalizes and deterministically orders eigenvector columns inside
/// clusters of (near-)equal eigenvalues.
fn fix_degenerate_clusters<const N: usize>(w: &[f64; N], v: &mut [[f64; N]; N], gap: f64) {
    let mut start = 0;
    while start < N {
        let mut end = start + 1;
        while end < N && (w[end] - w[start]).abs() <= gap {
            end += 1;
        }
        if end - start > 1 {
            // Gram-Schmidt inside the cluster, then lexicographic order.
            let mut cols: Vec<Vec<f64>> = (start..end)
                .map(|c| (0..N).map(|r| v[r][c]).collect())
                .collect();
            for i in 0..cols.len() {
                for j in 0..i {
                    let d: f64 = (0..N).map(|r| cols[i][r] * cols[j][r]).sum();
                    for r in 0..N {
                        cols[i][r] -= d * cols[j][r];
                    }
                }
                let n: f64 = cols[i].iter().map(|x| x * x).sum::<f64>().sqrt();
                for x in cols[i].iter_mut() {
                    *x /= n;
                }
            }
            for col in cols.iter_mut() {
                let mut k = 0;
                for r in 1..N {
                    if col[r].abs() > col[k].abs() {
                        k = r;
                    }
                }
                if col[k] < 0.0 {
                    for x in col.iter_mut() {
                        *x = -*x;
                    }
                }
            }
            cols.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (off, col) in cols.iter().enumerate() {
                for r in 0..N {
                    v[r][start + off] = col[r];
                }
            }
        }
        start = end;
    }
}

/// Eigendecomposition of a symmetric second-order tensor.
#[derive(Debug, Clone)]
pub struct EigenSystem3 {
    /// Eigenvalues sorted by descending absolute value.
    pub eigenvalues: [f64; 3],
    /// Orthonormal right-handed eigenvector frame, `eigenvectors[i]` pairing
    /// with `eigenvalues[i]`.
    pub eigenvectors: [Vec3; 3],
}

impl EigenSystem3 {
    /// Rebuilds `sum_i lambda_i v_i (x) v_i`.
    pub fn reconstruct(&self) -> DenseTensor {
        let mut t = DenseTensor::zeros(2);
        for (lam, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            for i in 0..3 {
                for j in 0..3 {
                    let cur = t.get(&[i, j]);
                    t.set(&[i, j], cur + lam * v[i] * v[j]);
                }
            }
        }
        t
    }
}

/// Symmetric 3x3 eigendecomposition with deterministic ordering and signs.
///
/// Eigenvalues come sorted by descending |value| (positive first on ties);
/// the first two eigenvectors have their largest component positive and the
/// third completes a right-handed frame.
pub fn eigen_sym3(t: &DenseTensor) -> Result<EigenSystem3> {
    eigen_sym3_with_tol(t, tol::SYMMETRY)
}

pub fn eigen_sym3_with_tol(t: &DenseTensor, tol_sym: f64) -> Result<EigenSystem3> {
    if t.order() != 2 {
        return Err(Error::DimensionError(format!(
            "eigendecomposition needs order 2, got {}",
            t.order()
        )));
    }
    let scale = t.frobenius_norm().max(1e-300);
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            worst = worst.max((t.get(&[i, j]) - t.get(&[j, i])).abs());
        }
    }
    if worst > tol_sym * scale {
        return Err(Error::NotSymmetric {
            residual: worst,
            tol: tol_sym * scale,
        });
    }
    let mut a = [[0.0; 3]; 3];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = 0.5 * (t.get(&[i, j]) + t.get(&[j, i]));
        }
    }
    let (mut w, mut v) = jacobi(a);
    sort_eigenpairs(&mut w, &mut v);
    fix_degenerate_clusters(&w, &mut v, 1e-8 * scale);
    canonicalize_columns(&mut v);
    let v1 = [v[0][0], v[1][0], v[2][0]];
    let v2 = [v[0][1], v[1][1], v[2][1]];
    let v3 = vec3::cross(&v1, &v2);
    Ok(EigenSystem3 {
        eigenvalues: w,
        eigenvectors: [v1, v2, v3],
    })
}

/// Symmetric 6x6 image of a minor+major-symmetric fourth-order tensor under
/// the norm-preserving Kelvin (Mandel) mapping.
#[derive(Debug, Clone, PartialEq)]
pub struct KelvinMatrix {
    pub entries: [[f64; 6]; 6],
}

impl KelvinMatrix {
    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .flat_map(|r| r.iter())
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt()
    }

    /// Eigenvalues in descending-|value| order with deterministic vectors.
    pub fn eigen(&self) -> ([f64; 6], [[f64; 6]; 6]) {
        let (mut w, mut v) = jacobi(self.entries);
        sort_eigenpairs(&mut w, &mut v);
        fix_degenerate_clusters(&w, &mut v, 1e-8 * self.frobenius_norm().max(1e-300));
        canonicalize_columns(&mut v);
        (w, v)
    }
}

/// Verifies the minor and major symmetries of `c` within `tol_sym` relative
/// residual; reports the worst offending index quadruple on failure.
pub fn check_stiffness_symmetries(c: &DenseTensor, tol_sym: f64) -> Result<()> {
    if c.order() != 4 {
        return Err(Error::DimensionError(format!(
            "stiffness checks need order 4, got {}",
            c.order()
        )));
    }
    let scale = c.frobenius_norm().max(1e-300);
    let mut worst = 0.0f64;
    let mut at = [0usize; 4];
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                for l in 0..3 {
                    let base = c.get(&[i, j, k, l]);
                    for other in [
                        c.get(&[j, i, k, l]),
                        c.get(&[i, j, l, k]),
                        c.get(&[k, l, i, j]),
                    ] {
                        let d = (base - other).abs();
                        if d > worst {
                            worst = d;
                            at = [i, j, k, l];
                        }
                    }
                }
            }
        }
    }
    if worst > tol_sym * scale {
        return Err(Error::SymmetryViolation {
            i: at[0],
            j: at[1],
            k: at[2],
            l: at[3],
            residual: worst,
            tol: tol_sym * scale,
        });
    }
    Ok(())
}

/// Kelvin mapping with the standard sqrt(2) / 2 weights:
/// `K_mn = w_m w_n C_{pair(m) pair(n)}`.
pub fn kelvin_map(c: &DenseTensor) -> Result<KelvinMatrix> {
    kelvin_map_with_tol(c, tol::SYMMETRY)
}

pub fn kelvin_map_with_tol(c: &DenseTensor, tol_sym: f64) -> Result<KelvinMatrix> {
    check_stiffness_symmetries(c, tol_sym)?;
    let mut k = [[0.0; 6]; 6];
    for (m, &(i, j)) in KELVIN_PAIRS.iter().enumerate() {
        for (n, &(p, q)) in KELVIN_PAIRS.iter().enumerate() {
            k[m][n] = kelvin_weight(m) * kelvin_weight(n) * c.get(&[i, j, p, q]);
        }
    }
    Ok(KelvinMatrix { entries: k })
}

/// Inverse Kelvin mapping back to a full fourth-order tensor.
pub fn kelvin_unmap(k: &KelvinMatrix) -> DenseTensor {
    let mut c = DenseTensor::zeros(4);
    for (m, &(i, j)) in KELVIN_PAIRS.iter().enumerate() {
        for (n, &(p, q)) in KELVIN_PAIRS.iter().enumerate() {
            let val = k.entries[m][n] / (kelvin_weight(m) * kelvin_weight(n));
            for (a, b) in [(i, j), (j, i)] {
                for (d, e) in [(p, q), (q, p)] {
                    c.set(&[a, b, d, e], val);
                }
            }
        }
    }
    c
}

/// Kelvin coordinates of a symmetric second-order tensor.
pub fn kelvin_vector(m: &DenseTensor) -> [f64; 6] {
    let mut v = [0.0; 6];
    for (idx, &(i, j)) in KELVIN_PAIRS.iter().enumerate() {
        v[idx] = kelvin_weight(idx) * 0.5 * (m.get(&[i, j]) + m.get(&[j, i]));
    }
    v
}

/// Symmetric second-order tensor from its Kelvin coordinates.
pub fn kelvin_unvector(v: &[f64; 6]) -> DenseTensor {
    let mut m = DenseTensor::zeros(2);
    for (idx, &(i, j)) in KELVIN_PAIRS.iter().enumerate() {
        let val = v[idx] / kelvin_weight(idx);
        m.set(&[i, j], val);
        m.set(&[j, i], val);
    }
    m
}

/// Eigenstiffnesses and eigentensors of a minor+major-symmetric tensor:
/// `C = sum_i Lambda_i M_i (x) M_i` with `M_i : M_j = delta_ij`.
#[derive(Debug, Clone)]
pub struct EigentensorSystem {
    pub eigenstiffnesses: [f64; 6],
    pub eigentensors: Vec<DenseTensor>,
}

impl EigentensorSystem {
    pub fn reconstruct(&self) -> DenseTensor {
        let mut c = DenseTensor::zeros(4);
        for (lam, m) in self.eigenstiffnesses.iter().zip(&self.eigentensors) {
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        for l in 0..3 {
                            let cur = c.get(&[i, j, k, l]);
                            c.set(&[i, j, k, l], cur + lam * m.get(&[i, j]) * m.get(&[k, l]));
                        }
                    }
                }
            }
        }
        c
    }
}

/// Spectral decomposition in Kelvin space mapped back to second-order
/// eigentensors.
pub fn eigentensors(c: &DenseTensor) -> Result<EigentensorSystem> {
    eigentensors_with_tol(c, tol::SYMMETRY)
}

pub fn eigentensors_with_tol(c: &DenseTensor, tol_sym: f64) -> Result<EigentensorSystem> {
    let k = kelvin_map_with_tol(c, tol_sym)?;
    let (w, v) = k.eigen();
    let tensors = (0..6)
        .map(|col| {
            let mut vec = [0.0; 6];
            for (r, row) in v.iter().enumerate() {
                vec[r] = row[col];
            }
            kelvin_unvector(&vec)
        })
        .collect();
    Ok(EigentensorSystem {
        eigenstiffnesses: w,
        eigentensors: tensors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{contract_double, rotate};

    fn iso_stiffness(lam: f64, mu: f64) -> DenseTensor {
        let mut c = DenseTensor::zeros(4);
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let d = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };
                        c.set(
                            &[i, j, k, l],
                            lam * d(i, j) * d(k, l) + mu * (d(i, k) * d(j, l) + d(i, l) * d(j, k)),
                        );
                    }
                }
            }
        }
        c
    }

    #[test]
    fn eigen_diagonal_abs_ordering() {
        let t = DenseTensor::diag([3.0, -1.0, -2.0]);
        let es = eigen_sym3(&t).unwrap();
        assert_eq!(es.eigenvalues, [3.0, -2.0, -1.0]);
        assert!(vec3::same_axis(
            &es.eigenvectors[0],
            &[1.0, 0.0, 0.0],
            1e-12
        ));
        assert!(vec3::same_axis(
            &es.eigenvectors[1],
            &[0.0, 0.0, 1.0],
            1e-12
        ));
        assert!(vec3::same_axis(
            &es.eigenvectors[2],
            &[0.0, 1.0, 0.0],
            1e-12
        ));
        // right-handed
        let d = vec3::dot(
            &vec3::cross(&es.eigenvectors[0], &es.eigenvectors[1]),
            &es.eigenvectors[2],
        );
        assert!((d - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigen_identity_triple() {
        let es = eigen_sym3(&DenseTensor::identity()).unwrap();
        assert_eq!(es.eigenvalues, [1.0, 1.0, 1.0]);
        assert!(es.reconstruct().max_abs_diff(&DenseTensor::identity()) < 1e-12);
    }

    #[test]
    fn eigen_reconstruction_random() {
        let mut state = 12345u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((state >> 33) as f64 / (1u64 << 31) as f64) - 1.0
        };
        for _ in 0..50 {
            let mut t = DenseTensor::zeros(2);
            for i in 0..3 {
                for j in i..3 {
                    let v = next();
                    t.set(&[i, j], v);
                    t.set(&[j, i], v);
                }
            }
            let es = eigen_sym3(&t).unwrap();
            let scale = t.frobenius_norm();
            assert!(es.reconstruct().max_abs_diff(&t) <= 1e-10 * scale);
            // orthonormality
            for a in 0..3 {
                for b in 0..3 {
                    let d = vec3::dot(&es.eigenvectors[a], &es.eigenvectors[b]);
                    let want = if a == b { 1.0 } else { 0.0 };
                    assert!((d - want).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn eigen_rejects_asymmetric() {
        let mut t = DenseTensor::zeros(2);
        t.set(&[0, 1], 1.0);
        assert!(matches!(eigen_sym3(&t), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn kelvin_shear_block_factor_two() {
        let mut c = DenseTensor::zeros(4);
        for (i, j) in [(0, 1), (1, 0)] {
            for (k, l) in [(0, 1), (1, 0)] {
                c.set(&[i, j, k, l], 1.0);
            }
        }
        let k = kelvin_map(&c).unwrap();
        for (m, row) in k.entries.iter().enumerate() {
            for (n, &x) in row.iter().enumerate() {
                let want = if m == 5 && n == 5 { 2.0 } else { 0.0 };
                assert!((x - want).abs() < 1e-15, "K[{m}][{n}] = {x}");
            }
        }
    }

    #[test]
    fn kelvin_isotropic_blocks() {
        let k = kelvin_map(&iso_stiffness(2.0, 1.0)).unwrap();
        let want = [
            [4.0, 2.0, 2.0, 0.0, 0.0, 0.0],
            [2.0, 4.0, 2.0, 0.0, 0.0, 0.0],
            [2.0, 2.0, 4.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 2.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 2.0, 0.0],
            [0.0, 0.0, 0.0, 0.0, 0.0, 2.0],
        ];
        for m in 0..6 {
            for n in 0..6 {
                assert!((k.entries[m][n] - want[m][n]).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn kelvin_roundtrip_and_norm() {
        let c = crate::samples::random_stiffness(7);
        let k = kelvin_map(&c).unwrap();
        assert!((k.frobenius_norm() - c.frobenius_norm()).abs() < 1e-12 * c.frobenius_norm());
        let back = kelvin_unmap(&k);
        assert!(back.max_abs_diff(&c) < 1e-13);
    }

    #[test]
    fn kelvin_rejects_symmetry_violation() {
        let mut c = iso_stiffness(2.0, 1.0);
        c.set(&[0, 0, 0, 1], 0.5); // breaks minor symmetry
        let err = kelvin_map(&c);
        assert!(matches!(err, Err(Error::SymmetryViolation { .. })));
    }

    #[test]
    fn eigentensors_isotropic_spectrum() {
        let sys = eigentensors(&iso_stiffness(2.0, 1.0)).unwrap();
        assert!((sys.eigenstiffnesses[0] - 8.0).abs() < 1e-12);
        for i in 1..6 {
            assert!((sys.eigenstiffnesses[i] - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn eigentensors_zero() {
        let sys = eigentensors(&DenseTensor::zeros(4)).unwrap();
        assert_eq!(sys.eigenstiffnesses, [0.0; 6]);
    }

    #[test]
    fn eigentensors_reconstruct_and_orthonormal() {
        let c = crate::samples::random_stiffness(3);
        let sys = eigentensors(&c).unwrap();
        assert!(sys.reconstruct().max_abs_diff(&c) <= 1e-9 * c.frobenius_norm());
        for i in 0..6 {
            for j in 0..6 {
                let d = contract_double(&sys.eigentensors[i], &sys.eigentensors[j])
                    .unwrap()
                    .coeffs()[0];
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - want).abs() < 1e-9);
            }
        }
        // C : M_i = Lambda_i M_i
        for i in 0..6 {
            let cm = contract_double(&c, &sys.eigentensors[i]).unwrap();
            let want = sys.eigentensors[i].scaled(sys.eigenstiffnesses[i]);
            assert!(cm.max_abs_diff(&want) <= 1e-9 * c.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn eigenvalue_multiset_rotation_invariant() {
        let c = crate::samples::random_stiffness(11);
        let q = crate::samples::random_rotation(5);
        let c_rot = rotate(&c, &q).unwrap();
        let a = eigentensors(&c).unwrap().eigenstiffnesses;
        let b = eigentensors(&c_rot).unwrap().eigenstiffnesses;
        for (x, y) in a.iter().zip(b.iter()) {
            assert!((x - y).abs() < 1e-9 * c.frobenius_norm().max(1.0));
        }

        // the 3x3 spectrum is a rotation invariant as well
        let t = crate::samples::random_symmetric2(12);
        let wa = eigen_sym3(&t).unwrap().eigenvalues;
        let wb = eigen_sym3(&rotate(&t, &q).unwrap()).unwrap().eigenvalues;
        for (x, y) in wa.iter().zip(wb.iter()) {
            assert!((x - y).abs() < 1e-10 * t.frobenius_norm().max(1.0));
        }
    }

    #[test]
    fn kelvin_vector_preserves_inner_products() {
        // <A, B> under double contraction equals the dot product of the
        // Kelvin 6-vectors
        let a = crate::samples::random_symmetric2(21);
        let b = crate::samples::random_symmetric2(22);
        let va = kelvin_vector(&a);
        let vb = kelvin_vector(&b);
        let dot6: f64 = va.iter().zip(&vb).map(|(x, y)| x * y).sum();
        let full = contract_double(&a, &b).unwrap().coeffs()[0];
        assert!((dot6 - full).abs() < 1e-12 * full.abs().max(1.0));
        assert!(kelvin_unvector(&va).max_abs_diff(&a) < 1e-15);
    }
}
