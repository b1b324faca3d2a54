//! Shared fixtures and the brute-force mirror-grid oracle used by the
//! integration suites.
//!
//! The oracle searches a dense grid of candidate normals for mirror
//! invariance of the full tensor (reflections applied in Kelvin 6x6 space),
//! refines the hits locally, and names the class from the verified plane
//! structure. It never touches the deviatoric decomposition, so it is an
//! independent route to the same answer.

#![allow(dead_code)]

use devitensor::io::voigt_to_tensor;
use devitensor::spectral::{kelvin_map, KELVIN_PAIRS};
use devitensor::tensor::DenseTensor;
use devitensor::vec3::{self, Vec3};

pub const CLASS_NAMES: [&str; 8] = [
    "isotropic",
    "transversely_isotropic",
    "cubic",
    "tetragonal",
    "trigonal",
    "orthotropic",
    "monoclinic",
    "triclinic",
];

fn voigt(entries: &[(usize, usize, f64)]) -> [[f64; 6]; 6] {
    let mut v = [[0.0; 6]; 6];
    for &(i, j, x) in entries {
        v[i][j] = x;
        v[j][i] = x;
    }
    v
}

/// One textbook stiffness pattern per symmetry class, in stress-form Voigt.
#[rustfmt::skip]
pub fn fixture_voigt(class: &str) -> [[f64; 6]; 6] {
    match class {
        "isotropic" => voigt(&[
            (0, 0, 4.0), (1, 1, 4.0), (2, 2, 4.0),
            (0, 1, 2.0), (0, 2, 2.0), (1, 2, 2.0),
            (3, 3, 1.0), (4, 4, 1.0), (5, 5, 1.0),
        ]),
        "cubic" => voigt(&[
            (0, 0, 4.0), (1, 1, 4.0), (2, 2, 4.0),
            (0, 1, 2.0), (0, 2, 2.0), (1, 2, 2.0),
            (3, 3, 1.5), (4, 4, 1.5), (5, 5, 1.5),
        ]),
        "transversely_isotropic" => voigt(&[
            (0, 0, 7.0), (1, 1, 7.0), (2, 2, 6.0),
            (0, 1, 3.0), (0, 2, 2.0), (1, 2, 2.0),
            (3, 3, 1.5), (4, 4, 1.5), (5, 5, 2.0),
        ]),
        "tetragonal" => voigt(&[
            (0, 0, 7.0), (1, 1, 7.0), (2, 2, 6.0),
            (0, 1, 3.0), (0, 2, 2.0), (1, 2, 2.0),
            (3, 3, 1.5), (4, 4, 1.5), (5, 5, 2.5),
        ]),
        "trigonal" => voigt(&[
            (0, 0, 7.0), (1, 1, 7.0), (2, 2, 6.0),
            (0, 1, 3.0), (0, 2, 2.0), (1, 2, 2.0),
            (3, 3, 1.5), (4, 4, 1.5), (5, 5, 2.0),
            (0, 3, 0.8), (1, 3, -0.8), (4, 5, 0.8),
        ]),
        "orthotropic" => voigt(&[
            (0, 0, 7.0), (1, 1, 6.0), (2, 2, 5.0),
            (0, 1, 2.0), (0, 2, 1.5), (1, 2, 1.0),
            (3, 3, 1.2), (4, 4, 1.4), (5, 5, 1.6),
        ]),
        "monoclinic" => voigt(&[
            (0, 0, 7.0), (1, 1, 6.0), (2, 2, 5.0),
            (0, 1, 2.0), (0, 2, 1.5), (1, 2, 1.0),
            (3, 3, 1.2), (4, 4, 1.4), (5, 5, 1.6),
            (0, 5, 0.5), (1, 5, 0.4), (2, 5, 0.3), (3, 4, 0.25),
        ]),
        "triclinic" => voigt(&[
            (0, 0, 7.0), (1, 1, 6.0), (2, 2, 5.0),
            (0, 1, 2.0), (0, 2, 1.5), (1, 2, 1.0),
            (3, 3, 1.2), (4, 4, 1.4), (5, 5, 1.6),
            (0, 5, 0.5), (1, 5, 0.4), (2, 5, 0.3), (3, 4, 0.25),
            (0, 3, 0.2), (0, 4, 0.15), (1, 4, 0.12), (3, 5, 0.1),
        ]),
        other => panic!("unknown fixture class {other:?}"),
    }
}

pub fn fixture_tensor(class: &str) -> DenseTensor {
    voigt_to_tensor(&fixture_voigt(class)).expect("fixture is symmetric")
}

// ---------------------------------------------------------------------------
// brute-force oracle
// ---------------------------------------------------------------------------

type Mat6 = [[f64; 6]; 6];

fn kelvin_weight(m: usize) -> f64 {
    if m < 3 {
        1.0
    } else {
        std::f64::consts::SQRT_2
    }
}

/// 6x6 representation of an orthogonal 3x3 map acting on symmetric tensors
/// in Kelvin coordinates: column n holds the coordinates of Q E_n Q^T.
fn kelvin_rotation(q: &[[f64; 3]; 3]) -> Mat6 {
    let mut r = [[0.0; 6]; 6];
    for (n, &(i, j)) in KELVIN_PAIRS.iter().enumerate() {
        // basis matrix E_n, Kelvin normalized
        let mut e = [[0.0f64; 3]; 3];
        if n < 3 {
            e[i][j] = 1.0;
        } else {
            let w = 1.0 / std::f64::consts::SQRT_2;
            e[i][j] = w;
            e[j][i] = w;
        }
        // m = Q e Q^T
        let mut qe = [[0.0f64; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                let mut s = 0.0;
                for c in 0..3 {
                    s += q[a][c] * e[c][b];
                }
                qe[a][b] = s;
            }
        }
        let mut m = [[0.0f64; 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                let mut s = 0.0;
                for c in 0..3 {
                    s += qe[a][c] * q[b][c];
                }
                m[a][b] = s;
            }
        }
        for (mm, &(a, b)) in KELVIN_PAIRS.iter().enumerate() {
            r[mm][n] = kelvin_weight(mm) * 0.5 * (m[a][b] + m[b][a]);
        }
    }
    r
}

fn mat6_norm(k: &Mat6) -> f64 {
    k.iter()
        .flat_map(|r| r.iter())
        .map(|x| x * x)
        .sum::<f64>()
        .sqrt()
}

fn reflect_residual_kelvin(k: &Mat6, norm: f64, m: &Vec3) -> f64 {
    let mut q = [[0.0f64; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            q[a][b] = (if a == b { 1.0 } else { 0.0 }) - 2.0 * m[a] * m[b];
        }
    }
    let r = kelvin_rotation(&q);
    // |R K R^T - K|
    let mut rk = [[0.0f64; 6]; 6];
    for a in 0..6 {
        for b in 0..6 {
            let mut s = 0.0;
            for c in 0..6 {
                s += r[a][c] * k[c][b];
            }
            rk[a][b] = s;
        }
    }
    let mut diff2 = 0.0;
    for a in 0..6 {
        for b in 0..6 {
            let mut s = 0.0;
            for c in 0..6 {
                s += rk[a][c] * r[b][c];
            }
            let d = s - k[a][b];
            diff2 += d * d;
        }
    }
    diff2.sqrt() / norm
}

fn polish_oracle(k: &Mat6, norm: f64, start: &Vec3) -> (Vec3, f64) {
    let mut m = *start;
    let mut f = reflect_residual_kelvin(k, norm, &m);
    let mut h = 0.06;
    while h > 1e-12 {
        let (t1, t2) = vec3::tangent_basis(&m);
        let mut improved = false;
        for step in [t1, vec3::neg(&t1), t2, vec3::neg(&t2)] {
            let cand = vec3::normalize(&vec3::add(&m, &vec3::scale(&step, h))).unwrap();
            let fc = reflect_residual_kelvin(k, norm, &cand);
            if fc < f {
                m = cand;
                f = fc;
                improved = true;
                break;
            }
        }
        if !improved {
            h *= 0.35;
        }
    }
    (m, f)
}

/// Class label plus verified normals found by grid search (2 degree default
/// resolution) with local refinement; `None` normals for the parametric
/// classes.
pub struct OracleResult {
    pub label: &'static str,
    pub normals: Option<Vec<Vec3>>,
}

pub fn oracle_classify(c: &DenseTensor) -> OracleResult {
    oracle_classify_at(c, 2.0)
}

pub fn oracle_classify_at(c: &DenseTensor, res_deg: f64) -> OracleResult {
    let k = kelvin_map(c)
        .expect("oracle input must be a stiffness tensor")
        .entries;
    let norm = mat6_norm(&k).max(1e-300);

    let mut loose: Vec<Vec3> = Vec::new();
    let mut strict = 0usize;
    let mut total = 0usize;
    let mut theta = 0.0f64;
    while theta <= 90.0 + 1e-9 {
        let th = theta.to_radians();
        let nphi = if theta == 0.0 {
            1
        } else {
            ((360.0 / res_deg) * th.sin()).round().max(1.0) as usize
        };
        for kphi in 0..nphi {
            let ph = 2.0 * std::f64::consts::PI * (kphi as f64) / (nphi as f64);
            let m = [ph.cos() * th.sin(), ph.sin() * th.sin(), th.cos()];
            total += 1;
            let r = reflect_residual_kelvin(&k, norm, &m);
            if r < 0.15 {
                loose.push(m);
            }
            if r < 1e-8 {
                strict += 1;
            }
        }
        theta += res_deg;
    }
    if strict as f64 > 0.9 * total as f64 {
        return OracleResult {
            label: "isotropic",
            normals: None,
        };
    }
    // cluster loose hits, then refine one representative per cluster
    let mut reps: Vec<Vec3> = Vec::new();
    for m in &loose {
        if !reps.iter().any(|r| vec3::same_axis(r, m, 0.12)) {
            reps.push(*m);
        }
    }
    let mut normals: Vec<Vec3> = Vec::new();
    for rep in &reps {
        let (m, f) = polish_oracle(&k, norm, rep);
        if f <= 1e-8 && !normals.iter().any(|n| vec3::same_axis(n, &m, 1e-4)) {
            normals.push(m);
        }
    }
    if normals.len() > 12 {
        // one transverse family: some axis u with every normal on {u} or
        // the circle orthogonal to u
        for u in normals.clone() {
            if normals
                .iter()
                .all(|n| vec3::same_axis(n, &u, 1e-4) || vec3::dot(n, &u).abs() < 1e-4)
            {
                return OracleResult {
                    label: "transversely_isotropic",
                    normals: None,
                };
            }
        }
        panic!(
            "oracle: {} verified normals without family structure",
            normals.len()
        );
    }
    let label = match normals.len() {
        9 => "cubic",
        5 => "tetragonal",
        3 => {
            let mut max_dot = 0.0f64;
            for i in 0..3 {
                for j in (i + 1)..3 {
                    max_dot = max_dot.max(vec3::dot(&normals[i], &normals[j]).abs());
                }
            }
            if max_dot <= 0.25 {
                "orthotropic"
            } else {
                "trigonal"
            }
        }
        1 => "monoclinic",
        0 => "triclinic",
        other => panic!("oracle: unexpected plane count {other}"),
    };
    OracleResult {
        label,
        normals: Some(normals),
    }
}
