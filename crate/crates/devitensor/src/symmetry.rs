//! Mirror-plane sets of deviators and the eight-class anisotropy label of a
//! stiffness tensor.
//!
//! A plane with unit normal m is a symmetry plane of a tensor T when
//! reflecting T across it (Q = I - 2 m m^T applied to every index) leaves T
//! unchanged. The plane set of a stiffness tensor is the intersection of the
//! plane sets of the deviators in its decomposition; the structure of that
//! intersection names the class.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multipole::{multipoles_of_deviator, MultipoleForm};
use crate::stiffness::{decompose_stiffness, StiffnessTensor};
use crate::tensor::{rotate_unchecked, DenseTensor, Deviator};
use crate::tol;
use crate::vec3::{self, Vec3};

/// Reflects a tensor across the plane with unit normal `m`.
pub fn reflect(t: &DenseTensor, m: &Vec3) -> DenseTensor {
    let mut q = DenseTensor::zeros(2);
    for i in 0..3 {
        for j in 0..3 {
            let d = if i == j { 1.0 } else { 0.0 };
            q.set(&[i, j], d - 2.0 * m[i] * m[j]);
        }
    }
    rotate_unchecked(t, &q)
}

/// Relative mirror residual `|reflect(T, m) - T| / |T|`.
pub fn mirror_residual(t: &DenseTensor, m: &Vec3) -> f64 {
    reflect(t, m).sub(t).frobenius_norm() / t.frobenius_norm().max(1e-300)
}

/// Locally minimizes the mirror residual over the sphere by compass descent.
/// Returns the refined normal and its residual.
pub fn polish_normal(t: &DenseTensor, start: &Vec3) -> (Vec3, f64) {
    let mut m = vec3::normalize(start).unwrap_or([0.0, 0.0, 1.0]);
    let mut f = mirror_residual(t, &m);
    let mut h = 0.02;
    while h > 1e-13 {
        let (t1, t2) = vec3::tangent_basis(&m);
        let mut improved = false;
        for step in [t1, vec3::neg(&t1), t2, vec3::neg(&t2)] {
            let cand = vec3::normalize(&vec3::add(&m, &vec3::scale(&step, h))).unwrap();
            let fc = mirror_residual(t, &cand);
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

/// A set of mirror-plane normals, possibly infinite.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum SymmetryPlaneSet {
    /// Every direction is a mirror normal (isotropic deviator).
    AllDirections,
    /// The axis itself plus every normal orthogonal to it.
    TransverseFamily { axis: Vec3 },
    /// Finitely many normals, each stored up to sign with a canonical
    /// representative, in deterministic order.
    Finite { normals: Vec<Vec3> },
}

impl SymmetryPlaneSet {
    pub fn finite(mut normals: Vec<Vec3>) -> Self {
        for n in normals.iter_mut() {
            *n = vec3::canonical_axis(n);
        }
        normals.sort_by(|a, b| b.partial_cmp(a).unwrap());
        SymmetryPlaneSet::Finite { normals }
    }

    /// Membership test, sign-free, within `tol_dir` (chord distance; the
    /// parametric variants answer exactly).
    pub fn contains(&self, m: &Vec3, tol_dir: f64) -> bool {
        match self {
            SymmetryPlaneSet::AllDirections => true,
            SymmetryPlaneSet::TransverseFamily { axis } => {
                vec3::same_axis(m, axis, tol_dir) || vec3::dot(m, axis).abs() <= tol_dir
            }
            SymmetryPlaneSet::Finite { normals } => {
                normals.iter().any(|n| vec3::same_axis(n, m, tol_dir))
            }
        }
    }

    pub fn count(&self) -> Option<usize> {
        match self {
            SymmetryPlaneSet::Finite { normals } => Some(normals.len()),
            _ => None,
        }
    }
}

/// The eight elastic symmetry classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClass {
    Isotropic,
    TransverselyIsotropic,
    Cubic,
    Tetragonal,
    Trigonal,
    Orthotropic,
    Monoclinic,
    Triclinic,
}

impl SymmetryClass {
    pub fn label(&self) -> &'static str {
        match self {
            SymmetryClass::Isotropic => "isotropic",
            SymmetryClass::TransverselyIsotropic => "transversely_isotropic",
            SymmetryClass::Cubic => "cubic",
            SymmetryClass::Tetragonal => "tetragonal",
            SymmetryClass::Trigonal => "trigonal",
            SymmetryClass::Orthotropic => "orthotropic",
            SymmetryClass::Monoclinic => "monoclinic",
            SymmetryClass::Triclinic => "triclinic",
        }
    }
}

/// Maps plane-set structure to the class label:
/// all directions -> isotropic; one transverse family -> transversely
/// isotropic; 9 normals -> cubic; 5 -> tetragonal; 3 mutually orthogonal ->
/// orthotropic; 3 coplanar at 60 degrees -> trigonal; 1 -> monoclinic;
/// 0 -> triclinic.
pub fn structure_label(set: &SymmetryPlaneSet) -> SymmetryClass {
    match set {
        SymmetryPlaneSet::AllDirections => SymmetryClass::Isotropic,
        SymmetryPlaneSet::TransverseFamily { .. } => SymmetryClass::TransverselyIsotropic,
        SymmetryPlaneSet::Finite { normals } => match normals.len() {
            9 => SymmetryClass::Cubic,
            5 => SymmetryClass::Tetragonal,
            3 => {
                let mut max_dot = 0.0f64;
                for i in 0..3 {
                    for j in (i + 1)..3 {
                        max_dot = max_dot.max(vec3::dot(&normals[i], &normals[j]).abs());
                    }
                }
                // orthogonal triples have |dot| = 0, coplanar 60-degree
                // triples have |dot| = 1/2
                if max_dot <= 0.25 {
                    SymmetryClass::Orthotropic
                } else {
                    SymmetryClass::Trigonal
                }
            }
            1 => SymmetryClass::Monoclinic,
            0 => SymmetryClass::Triclinic,
            _ => SymmetryClass::Triclinic,
        },
    }
}

fn dedupe_axes(axes: &[Vec3], tol: f64) -> Vec<Vec3> {
    let mut out: Vec<Vec3> = Vec::new();
    for a in axes {
        if !out.iter().any(|b| vec3::same_axis(a, b, tol)) {
            out.push(*a);
        }
    }
    out
}

/// Plane normals of an order-2 deviator from its multipoles:
/// every direction when the amplitude vanishes; the axis plus its orthogonal
/// circle when the multipoles coincide; otherwise the two bisector normals
/// and their cross product.
pub fn planes_of_deviator2(mp: &MultipoleForm) -> SymmetryPlaneSet {
    planes_of_deviator2_with_tol(mp, tol::DIRECTION)
}

pub fn planes_of_deviator2_with_tol(mp: &MultipoleForm, tol_dir: f64) -> SymmetryPlaneSet {
    if mp.amplitude == 0.0 || mp.directions.is_empty() {
        return SymmetryPlaneSet::AllDirections;
    }
    let n1 = mp.directions[0];
    let mut n2 = mp.directions[1];
    if vec3::same_axis(&n1, &n2, tol_dir) {
        let axis = vec3::normalize(&if vec3::dot(&n1, &n2) >= 0.0 {
            vec3::add(&n1, &n2)
        } else {
            vec3::sub(&n1, &n2)
        })
        .unwrap_or(n1);
        return SymmetryPlaneSet::TransverseFamily {
            axis: vec3::canonical_axis(&axis),
        };
    }
    if vec3::dot(&n1, &n2) < 0.0 {
        n2 = vec3::neg(&n2);
    }
    let b1 = vec3::normalize(&vec3::add(&n1, &n2)).expect("distinct axes");
    let b2 = vec3::normalize(&vec3::cross(&n1, &n2)).expect("distinct axes");
    let b3 = vec3::cross(&b1, &b2);
    SymmetryPlaneSet::finite(vec![b1, b2, b3])
}

/// Plane normals of an order-4 deviator. Candidate normals are generated
/// from the multipole axes (the axes themselves, pairwise bisectors, and
/// pairwise cross products), refined against the deviator, and only normals
/// passing the mirror test are returned. All four axes coinciding is the
/// transverse-family case.
pub fn planes_of_deviator4(mp: &MultipoleForm, d: &Deviator) -> Result<SymmetryPlaneSet> {
    planes_of_deviator4_with_tol(mp, d, tol::DIRECTION, tol::MIRROR)
}

pub fn planes_of_deviator4_with_tol(
    mp: &MultipoleForm,
    d: &Deviator,
    tol_dir: f64,
    tol_mirror: f64,
) -> Result<SymmetryPlaneSet> {
    if mp.amplitude == 0.0 || mp.directions.is_empty() {
        return Ok(SymmetryPlaneSet::AllDirections);
    }
    if mp.directions.len() != 4 {
        return Err(Error::DimensionError(format!(
            "order-4 plane detection needs 4 multipoles, got {}",
            mp.directions.len()
        )));
    }
    let axes = dedupe_axes(&mp.directions, tol_dir.max(1e-9));
    if axes.len() == 1 {
        let (axis, resid) = polish_normal(d.tensor(), &axes[0]);
        if resid <= tol_mirror {
            return Ok(SymmetryPlaneSet::TransverseFamily {
                axis: vec3::canonical_axis(&axis),
            });
        }
        // not genuinely axisymmetric at this tolerance; fall through to the
        // finite search
    }
    let dirs = &mp.directions;
    let mut candidates: Vec<Vec3> = dirs.clone();
    for i in 0..4 {
        for j in (i + 1)..4 {
            for v in [
                vec3::add(&dirs[i], &dirs[j]),
                vec3::sub(&dirs[i], &dirs[j]),
                vec3::cross(&dirs[i], &dirs[j]),
            ] {
                if let Some(n) = vec3::normalize(&v) {
                    candidates.push(n);
                }
            }
        }
    }
    let candidates = dedupe_axes(&candidates, 1e-4);
    let mut found: Vec<Vec3> = Vec::new();
    for c in &candidates {
        if mirror_residual(d.tensor(), c) > 1e-3 {
            continue;
        }
        let (m, resid) = polish_normal(d.tensor(), c);
        if resid <= tol_mirror {
            found.push(m);
        }
    }
    Ok(SymmetryPlaneSet::finite(dedupe_axes(
        &found,
        tol_dir.max(1e-7),
    )))
}

/// Intersection of two plane sets; `AllDirections` is neutral and parametric
/// families are intersected symbolically.
pub fn intersect_plane_sets(
    a: &SymmetryPlaneSet,
    b: &SymmetryPlaneSet,
    tol_dir: f64,
) -> SymmetryPlaneSet {
    use SymmetryPlaneSet::*;
    match (a, b) {
        (AllDirections, x) | (x, AllDirections) => x.clone(),
        (TransverseFamily { axis: u }, TransverseFamily { axis: v }) => {
            if vec3::same_axis(u, v, tol_dir) {
                TransverseFamily { axis: *u }
            } else {
                // the shared perpendicular always remains; the axes survive
                // only when the two families are orthogonal
                let w = vec3::normalize(&vec3::cross(u, v)).expect("distinct axes");
                let mut members = vec![w];
                if vec3::dot(u, v).abs() <= tol_dir {
                    members.push(*u);
                    members.push(*v);
                }
                SymmetryPlaneSet::finite(members)
            }
        }
        (TransverseFamily { .. }, Finite { normals }) => {
            let kept: Vec<Vec3> = normals
                .iter()
                .filter(|m| a.contains(m, tol_dir))
                .copied()
                .collect();
            SymmetryPlaneSet::finite(kept)
        }
        (Finite { .. }, TransverseFamily { .. }) => intersect_plane_sets(b, a, tol_dir),
        (Finite { normals }, Finite { .. }) => {
            let kept: Vec<Vec3> = normals
                .iter()
                .filter(|m| b.contains(m, tol_dir))
                .copied()
                .collect();
            SymmetryPlaneSet::finite(kept)
        }
    }
}

/// Options for [`classify_stiffness_with_options`].
#[derive(Debug, Clone, Copy)]
pub struct ClassifyOptions {
    /// Seed for the multipole root finder.
    pub seed: u64,
    pub tol_dir: f64,
    pub tol_mirror: f64,
    /// Deviators below this relative norm count as zero. A deviator of norm
    /// `c |C|` changes any reflection of C by at most `2c |C|`, so parts
    /// below `tol_mirror / 4` cannot break a mirror the tolerance would
    /// accept; treating them as structure would contradict the mirror
    /// semantics.
    pub tol_zero: f64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            seed: 0,
            tol_dir: tol::DIRECTION,
            tol_mirror: tol::MIRROR,
            tol_zero: tol::MIRROR / 4.0,
        }
    }
}

/// Everything the classification produces.
#[derive(Debug, Clone)]
pub struct Classification {
    pub class: SymmetryClass,
    pub planes: SymmetryPlaneSet,
    /// Multipoles of the two second-order deviators and the fourth-order one.
    pub multipoles: [MultipoleForm; 3],
}

/// Anisotropy class and symmetry planes of a stiffness tensor as the
/// intersection of its deviators' plane sets. Finite normals are refined and
/// verified against the full tensor before being reported.
pub fn classify_stiffness(c: &StiffnessTensor) -> Result<Classification> {
    classify_stiffness_with_options(c, &ClassifyOptions::default())
}

pub fn classify_stiffness_with_options(
    c: &StiffnessTensor,
    opts: &ClassifyOptions,
) -> Result<Classification> {
    let dec = decompose_stiffness(c)?;
    let scale = c.frobenius_norm().max(1e-300);
    let mp_of = |d: &Deviator| -> Result<MultipoleForm> {
        if d.frobenius_norm() <= opts.tol_zero * scale {
            Ok(MultipoleForm::zero(d.order()))
        } else {
            multipoles_of_deviator(d, opts.seed)
        }
    };
    let mp2 = mp_of(&dec.dev2)?;
    let mp2_hat = mp_of(&dec.dev2_hat)?;
    let mp4 = mp_of(&dec.dev4)?;

    let p1 = planes_of_deviator2_with_tol(&mp2, opts.tol_dir);
    let p2 = planes_of_deviator2_with_tol(&mp2_hat, opts.tol_dir);
    let p4 = planes_of_deviator4_with_tol(&mp4, &dec.dev4, opts.tol_dir, opts.tol_mirror)?;

    let merged = intersect_plane_sets(
        &intersect_plane_sets(&p1, &p2, opts.tol_dir),
        &p4,
        opts.tol_dir,
    );

    // soundness: every reported plane must mirror the full tensor
    let planes = match merged {
        SymmetryPlaneSet::AllDirections => SymmetryPlaneSet::AllDirections,
        SymmetryPlaneSet::TransverseFamily { axis } => {
            let (axis, resid) = polish_normal(c.tensor(), &axis);
            let (t1, t2) = vec3::tangent_basis(&axis);
            let worst = resid
                .max(mirror_residual(c.tensor(), &t1))
                .max(mirror_residual(c.tensor(), &t2));
            if worst > opts.tol_mirror {
                return Err(Error::ConfigurationAmbiguous(format!(
                    "transverse family failed the mirror test on the full tensor \
                     (residual {worst:.3e})"
                )));
            }
            SymmetryPlaneSet::TransverseFamily {
                axis: vec3::canonical_axis(&axis),
            }
        }
        SymmetryPlaneSet::Finite { normals } => {
            let mut kept = Vec::with_capacity(normals.len());
            for n in &normals {
                let (m, resid) = polish_normal(c.tensor(), n);
                if resid <= opts.tol_mirror {
                    kept.push(m);
                }
            }
            SymmetryPlaneSet::finite(dedupe_axes(&kept, opts.tol_dir.max(1e-7)))
        }
    };
    let class = structure_label(&planes);
    Ok(Classification {
        class,
        planes,
        multipoles: [mp2, mp2_hat, mp4],
    })
}
