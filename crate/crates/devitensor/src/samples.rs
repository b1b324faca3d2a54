//! Deterministic sample generators for tests, examples, and quick
//! experiments. Every generator is a pure function of its seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::stiffness::project_stiffness_symmetries;
use crate::tensor::{symmetrize, traceless_symmetric_part, DenseTensor, Deviator};

/// Standard-normal-ish samples from a seeded ChaCha stream.
fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn fill(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    // sum of uniforms: cheap, smooth, bounded
    (0..n)
        .map(|_| {
            let a: f64 = rng.gen_range(-1.0..1.0);
            let b: f64 = rng.gen_range(-1.0..1.0);
            let c: f64 = rng.gen_range(-1.0..1.0);
            a + b + c
        })
        .collect()
}

/// A random tensor of the given order with entries in roughly [-3, 3].
pub fn random_tensor(order: usize, seed: u64) -> DenseTensor {
    let mut r = rng(seed ^ 0x7464); // distinct stream per generator
    let n = 3usize.pow(order as u32);
    DenseTensor::from_coeffs(order, fill(&mut r, n)).expect("generated size matches")
}

/// A random symmetric second-order tensor.
pub fn random_symmetric2(seed: u64) -> DenseTensor {
    symmetrize(&random_tensor(2, seed ^ 0x5332))
}

/// A random deviator of the given order (order 0..=4), unit-normalized.
pub fn random_deviator(order: usize, seed: u64) -> Deviator {
    let mut s = seed ^ 0xde71;
    loop {
        let d = traceless_symmetric_part(&random_tensor(order, s));
        let n = d.frobenius_norm();
        if n > 1e-3 {
            return Deviator::new(d.tensor().scaled(1.0 / n)).expect("projection is a deviator");
        }
        s = s.wrapping_add(1);
    }
}

/// A random minor+major-symmetric fourth-order tensor (all 21 dof excited).
pub fn random_stiffness(seed: u64) -> DenseTensor {
    project_stiffness_symmetries(&random_tensor(4, seed ^ 0xc21f))
}

/// A uniformly random proper rotation (QR of a Gaussian-ish matrix with sign
/// fixing).
pub fn random_rotation(seed: u64) -> DenseTensor {
    let mut r = rng(seed ^ 0x1707);
    loop {
        let a = fill(&mut r, 9);
        // Gram-Schmidt on rows
        let mut q = [[0.0f64; 3]; 3];
        let mut ok = true;
        for i in 0..3 {
            let mut v = [a[3 * i], a[3 * i + 1], a[3 * i + 2]];
            for j in 0..i {
                let d = v[0] * q[j][0] + v[1] * q[j][1] + v[2] * q[j][2];
                for k in 0..3 {
                    v[k] -= d * q[j][k];
                }
            }
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            if n < 1e-6 {
                ok = false;
                break;
            }
            for k in 0..3 {
                q[i][k] = v[k] / n;
            }
        }
        if !ok {
            continue;
        }
        // enforce det = +1
        let det = q[0][0] * (q[1][1] * q[2][2] - q[1][2] * q[2][1])
            - q[0][1] * (q[1][0] * q[2][2] - q[1][2] * q[2][0])
            + q[0][2] * (q[1][0] * q[2][1] - q[1][1] * q[2][0]);
        if det < 0.0 {
            for k in 0..3 {
                q[2][k] = -q[2][k];
            }
        }
        return DenseTensor::matrix(q);
    }
}

/// A random unit vector.
pub fn random_unit_vector(seed: u64) -> [f64; 3] {
    let mut r = rng(seed ^ 0x3a11);
    loop {
        let v = [
            r.gen_range(-1.0..1.0f64),
            r.gen_range(-1.0..1.0),
            r.gen_range(-1.0..1.0),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 && n <= 1.0 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}
