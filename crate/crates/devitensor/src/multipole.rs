//! Maxwell multipole extraction for deviators of order 2 and 4.
//!
//! A deviator D of order q equals `a * floor(n_1 (x) ... (x) n_q)` for a
//! unique amplitude `a >= 0` and unit directions `n_r` (unique up to an even
//! number of sign flips). The directions are recovered as roots of a
//! degree-2q complex polynomial whose coefficients are a linear image of D;
//! each root maps to a point on the unit sphere and the root set is closed
//! under the antipodal involution `x -> -1/conj(x)`, so one direction per
//! antipodal pair remains.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tensor::{outer_product, traceless_symmetric_part, DenseTensor, Deviator};
use crate::tol;
use crate::vec3::{self, Vec3};

/// Amplitude plus q unit directions representing a deviator.
///
/// `directions` is empty exactly when `amplitude == 0` (the zero deviator,
/// where multipoles are undefined).
#[derive(Debug, Clone)]
pub struct MultipoleForm {
    pub order: usize,
    pub amplitude: f64,
    pub directions: Vec<Vec3>,
}

impl MultipoleForm {
    /// The zero-deviator form: amplitude 0, no directions.
    pub fn zero(order: usize) -> Self {
        MultipoleForm {
            order,
            amplitude: 0.0,
            directions: Vec::new(),
        }
    }

    /// `a * floor(n_1 (x) ... (x) n_q)`.
    pub fn reconstruct(&self) -> DenseTensor {
        if self.directions.is_empty() {
            return DenseTensor::zeros(self.order);
        }
        let mut prod = DenseTensor::scalar(1.0);
        for n in &self.directions {
            prod = outer_product(&prod, &DenseTensor::vector(*n)).expect("order <= 4");
        }
        traceless_symmetric_part(&prod)
            .into_tensor()
            .scaled(self.amplitude)
    }
}

/// One root of the multipole polynomial on the Riemann sphere; vanished
/// leading coefficients contribute roots at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyRoot {
    Finite(Complex64),
    Infinity,
}

impl PolyRoot {
    /// The stereographic image on the unit sphere:
    /// `theta = 2 atan |x|`, azimuth `-arg x`; infinity maps to -e3.
    pub fn direction(&self) -> Vec3 {
        match self {
            PolyRoot::Infinity => [0.0, 0.0, -1.0],
            PolyRoot::Finite(x) => {
                let theta = 2.0 * x.norm().atan();
                let phi = if x.norm() == 0.0 { 0.0 } else { -x.arg() };
                [
                    phi.cos() * theta.sin(),
                    phi.sin() * theta.sin(),
                    theta.cos(),
                ]
            }
        }
    }

    /// The antipodal pairing partner `x -> -1/conj(x)` (0 <-> infinity).
    pub fn partner(&self) -> PolyRoot {
        match self {
            PolyRoot::Infinity => PolyRoot::Finite(Complex64::new(0.0, 0.0)),
            PolyRoot::Finite(x) if x.norm() == 0.0 => PolyRoot::Infinity,
            PolyRoot::Finite(x) => PolyRoot::Finite(-1.0 / x.conj()),
        }
    }
}

/// The degree-2q polynomial attached to a deviator, with its source
/// coefficients `a_{q,r}`.
///
/// With `c_r = sqrt(q!^2 / ((q+r)! (q-r)!))`, the coefficient of `x^(q+r)`
/// is `c_r conj(a_{q,r})` and of `x^(q-r)` is `(-1)^r c_r a_{q,r}`.
#[derive(Debug, Clone)]
pub struct DeviatorPolynomial {
    pub order: usize,
    /// a_{q,r} for r = 0..=q.
    pub source: Vec<Complex64>,
    /// Coefficient of x^k at index k, for k = 0..=2q.
    pub coefficients: Vec<Complex64>,
}

impl DeviatorPolynomial {
    pub fn max_abs_coefficient(&self) -> f64 {
        self.coefficients.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn evaluate(&self, x: Complex64) -> Complex64 {
        let mut v = Complex64::new(0.0, 0.0);
        for c in self.coefficients.iter().rev() {
            v = v * x + c;
        }
        v
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).product::<usize>() as f64
}

fn band_weight(q: usize, r: usize) -> f64 {
    (factorial(q) * factorial(q) / (factorial(q + r) * factorial(q - r))).sqrt()
}

/// Complex source coefficients and polynomial of a deviator of order 2 or 4.
pub fn deviator_poly_coeffs(d: &Deviator) -> Result<DeviatorPolynomial> {
    let q = d.order();
    let t = d.tensor();
    let source: Vec<Complex64> = match q {
        2 => {
            let g = |i: usize, j: usize| t.get(&[i, j]);
            vec![
                Complex64::new(-(1.5f64).sqrt() * (g(0, 0) + g(1, 1)), 0.0),
                Complex64::new(g(0, 2), -g(1, 2)),
                Complex64::new(0.5 * (g(0, 0) - g(1, 1)), -g(0, 1)),
            ]
        }
        4 => {
            let g = |i: usize, j: usize, k: usize, l: usize| t.get(&[i, j, k, l]);
            vec![
                Complex64::new(
                    (35.0f64 / 8.0).sqrt() * (g(0, 0, 0, 0) + g(1, 1, 1, 1) + 2.0 * g(0, 0, 1, 1)),
                    0.0,
                ),
                Complex64::new(
                    -g(1, 1, 0, 2) - g(0, 0, 0, 2),
                    g(1, 1, 1, 2) + g(0, 0, 1, 2),
                ) * (3.5f64).sqrt(),
                Complex64::new(
                    g(1, 1, 1, 1) - g(0, 0, 0, 0),
                    2.0 * (g(1, 1, 0, 1) + g(0, 0, 0, 1)),
                ) * ((7.0f64).sqrt() / 2.0),
                Complex64::new(
                    g(0, 0, 0, 2) - 3.0 * g(1, 1, 0, 2),
                    -(3.0 * g(0, 0, 1, 2) - g(1, 1, 1, 2)),
                ) * (0.5f64).sqrt(),
                Complex64::new(
                    0.25 * g(0, 0, 0, 0) + 0.25 * g(1, 1, 1, 1) - 1.5 * g(0, 0, 1, 1),
                    g(1, 1, 0, 1) - g(0, 0, 0, 1),
                ),
            ]
        }
        other => return Err(Error::UnsupportedOrder(other)),
    };
    let mut coefficients = vec![Complex64::new(0.0, 0.0); 2 * q + 1];
    coefficients[q] = source[0];
    for r in 1..=q {
        let c = band_weight(q, r);
        coefficients[q + r] = c * source[r].conj();
        let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
        coefficients[q - r] = sign * c * source[r];
    }
    Ok(DeviatorPolynomial {
        order: q,
        source,
        coefficients,
    })
}

const LAGUERRE_EPS: f64 = 2e-15;

/// One Laguerre iteration run; converges to some root of the polynomial
/// given by `coeffs` (index = power).
fn laguerre_root(
    coeffs: &[Complex64],
    start: Complex64,
    rng: &mut ChaCha8Rng,
) -> Result<Complex64> {
    // fractional steps break limit cycles (Press et al. schedule)
    const FRAC: [f64; 9] = [0.0, 0.5, 0.25, 0.75, 0.13, 0.38, 0.62, 0.88, 1.0];
    let m = coeffs.len() - 1;
    let mf = m as f64;
    let mut x = start;
    for iter in 1..=400usize {
        // evaluate p, p', p''/2 with a running error bound
        let mut b = coeffs[m];
        let mut err = b.norm();
        let mut d = Complex64::new(0.0, 0.0);
        let mut f = Complex64::new(0.0, 0.0);
        let abx = x.norm();
        for j in (0..m).rev() {
            f = x * f + d;
            d = x * d + b;
            b = x * b + coeffs[j];
            err = b.norm() + abx * err;
        }
        err *= LAGUERRE_EPS;
        if b.norm() <= err {
            return Ok(x);
        }
        let g = d / b;
        let g2 = g * g;
        let h = g2 - 2.0 * f / b;
        let sq = ((mf - 1.0) * (mf * h - g2)).sqrt();
        let gp = g + sq;
        let gm = g - sq;
        let den = if gp.norm() >= gm.norm() { gp } else { gm };
        let dx = if den.norm() > 0.0 {
            Complex64::new(mf, 0.0) / den
        } else {
            // rare stationary point: random kick
            Complex64::from_polar(1.0 + abx, rng.gen_range(0.0..std::f64::consts::TAU))
        };
        let x1 = x - dx;
        if x == x1 {
            return Ok(x);
        }
        if iter % 10 != 0 {
            x = x1;
        } else {
            x -= FRAC[(iter / 10).min(8)] * dx;
        }
    }
    Err(Error::NoConvergence(format!(
        "Laguerre stalled after 400 iterations from {start}"
    )))
}

fn deflate(coeffs: &mut Vec<Complex64>, root: Complex64) {
    // synthetic division by (x - root)
    let m = coeffs.len() - 1;
    let mut rem = coeffs[m];
    for j in (0..m).rev() {
        let save = coeffs[j];
        coeffs[j] = rem;
        rem = save + rem * root;
    }
    coeffs.truncate(m);
}

/// All 2q roots of a deviator polynomial, counted with multiplicity, with
/// degree deficiency reported as roots at infinity.
///
/// Laguerre's method with deflation; every finite root is then polished
/// against the undeflated polynomial. Deterministic for a fixed `seed`
/// (the seed only feeds rare stationary-point restarts).
pub fn solve_roots(p: &DeviatorPolynomial, seed: u64) -> Result<Vec<PolyRoot>> {
    let scale = p.max_abs_coefficient();
    if scale <= 0.0 {
        return Err(Error::ZeroPolynomial);
    }
    let full_degree = 2 * p.order;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut roots: Vec<PolyRoot> = Vec::with_capacity(full_degree);

    // vanished leading coefficients = roots at infinity
    let mut coeffs: Vec<Complex64> = p.coefficients.clone();
    while coeffs.len() > 1 && coeffs.last().unwrap().norm() < 1e-12 * scale {
        coeffs.pop();
        roots.push(PolyRoot::Infinity);
    }
    // vanished trailing coefficients = exact roots at zero
    let mut lead0 = 0;
    while lead0 + 1 < coeffs.len() && coeffs[lead0].norm() < 1e-12 * scale {
        lead0 += 1;
        roots.push(PolyRoot::Finite(Complex64::new(0.0, 0.0)));
    }
    let mut work: Vec<Complex64> = coeffs[lead0..].to_vec();

    let mut finite: Vec<Complex64> = Vec::new();
    while work.len() > 1 {
        let mut x = Complex64::new(0.0, 0.0);
        let mut found = None;
        for attempt in 0..12 {
            match laguerre_root(&work, x, &mut rng) {
                Ok(r) => {
                    found = Some(r);
                    break;
                }
                Err(_) if attempt < 11 => {
                    x = Complex64::from_polar(
                        rng.gen_range(0.0..2.0),
                        rng.gen_range(0.0..std::f64::consts::TAU),
                    );
                }
                Err(e) => return Err(e),
            }
        }
        let r = found.expect("loop returns or errors");
        finite.push(r);
        deflate(&mut work, r);
    }
    // polish on the undeflated polynomial to undo deflation drift
    for r in finite.iter_mut() {
        if let Ok(better) = laguerre_root(&coeffs, *r, &mut rng) {
            *r = better;
        }
    }
    for r in finite {
        roots.push(PolyRoot::Finite(r));
    }
    debug_assert_eq!(roots.len(), full_degree);
    Ok(roots)
}

/// Scaled residual `|P(x)| / sum_k |c_k| |x|^k` of a finite root.
pub fn root_residual(p: &DeviatorPolynomial, x: Complex64) -> f64 {
    let mut denom = 0.0;
    let mut pow = 1.0;
    for c in &p.coefficients {
        denom += c.norm() * pow;
        pow *= x.norm();
    }
    p.evaluate(x).norm() / denom.max(1e-300)
}

/// Worst distance (as chord on the unit sphere) from the partner
/// `-1/conj(x)` of each root to the root set; near zero when the set is
/// closed under the pairing involution.
pub fn pairing_closure_residual(roots: &[PolyRoot]) -> f64 {
    let pts: Vec<Vec3> = roots.iter().map(PolyRoot::direction).collect();
    let mut worst = 0.0f64;
    for r in roots {
        let want = r.partner().direction();
        let best = pts
            .iter()
            .map(|p| vec3::norm(&vec3::sub(p, &want)))
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(best);
    }
    worst
}

/// Sign-free clustering of sphere points into axes within `radius`. Returns
/// (axis centroid, member count) per cluster, deterministically ordered by
/// first appearance.
fn axis_clusters(pts: &[Vec3], radius: f64) -> Vec<(Vec3, usize)> {
    let mut anchors: Vec<Vec3> = Vec::new();
    let mut sums: Vec<Vec3> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for p in pts {
        match anchors
            .iter()
            .position(|a| vec3::axis_distance(a, p) <= radius)
        {
            Some(c) => {
                let aligned = if vec3::dot(p, &anchors[c]) >= 0.0 {
                    *p
                } else {
                    vec3::neg(p)
                };
                sums[c] = vec3::add(&sums[c], &aligned);
                counts[c] += 1;
            }
            None => {
                anchors.push(*p);
                sums.push(*p);
                counts.push(1);
            }
        }
    }
    sums.iter()
        .zip(&anchors)
        .zip(&counts)
        .map(|((s, a), &n)| (vec3::normalize(s).unwrap_or(*a), n))
        .collect()
}

/// Cluster radii tried coarse to fine; ties between a nearly degenerate and
/// a distinct-direction reading resolve toward the degenerate one. Roots of
/// multiplicity m are recovered only to about eps^(1/m), hence the coarse
/// end of the schedule.
const CLUSTER_RADII: [f64; 6] = [4e-3, 1e-3, 2.5e-4, 6e-5, 1.5e-5, 1e-9];

/// Least-squares amplitude of `D ~ a * floor(n_1 (x) ... (x) n_q)` and the
/// relative reconstruction residual. The amplitude may be negative here;
/// sign repair happens at the end.
fn fit_amplitude(d: &Deviator, dirs: &[Vec3]) -> Option<(f64, f64)> {
    let mut prod = DenseTensor::scalar(1.0);
    for n in dirs {
        prod = outer_product(&prod, &DenseTensor::vector(*n)).expect("order <= 4");
    }
    let m = traceless_symmetric_part(&prod).into_tensor();
    let den = m.inner(&m);
    if den < 1e-20 {
        return None;
    }
    let a = d.tensor().inner(&m) / den;
    let resid = m.scaled(a).sub(d.tensor()).frobenius_norm() / d.frobenius_norm().max(a.abs());
    Some((a, resid))
}

/// Compass-descent refinement of the direction set against the
/// reconstruction residual. Multiple roots are recovered only to about
/// eps^(1/multiplicity), so the root positions alone cannot reach the
/// reconstruction tolerance; this polish restores full accuracy.
///
/// Slots holding the same axis move as one unit. Refining them
/// independently would let duplicated directions drift into compensating
/// perturbations that reconstruct well but hide the degeneracy.
fn polish_directions(d: &Deviator, dirs: &mut [Vec3]) -> Option<(f64, f64)> {
    // group slots by axis; remember each member's sign against the leader
    let mut groups: Vec<(Vec<(usize, f64)>, Vec3)> = Vec::new();
    for (slot, n) in dirs.iter().enumerate() {
        match groups
            .iter_mut()
            .find(|(_, rep)| vec3::same_axis(rep, n, 1e-3))
        {
            Some((members, rep)) => {
                let sign = if vec3::dot(n, rep) >= 0.0 { 1.0 } else { -1.0 };
                members.push((slot, sign));
            }
            None => groups.push((vec![(slot, 1.0)], *n)),
        }
    }
    let apply = |dirs: &mut [Vec3], members: &[(usize, f64)], rep: &Vec3| {
        for &(slot, sign) in members {
            dirs[slot] = vec3::scale(rep, sign);
        }
    };
    for (members, rep) in &groups {
        apply(dirs, members, rep);
    }
    let (mut a, mut resid) = fit_amplitude(d, dirs)?;
    let mut h = 2e-3;
    while h > 1e-13 {
        let mut improved = false;
        for (members, rep) in groups.iter_mut() {
            let (t1, t2) = vec3::tangent_basis(rep);
            for step in [t1, vec3::neg(&t1), t2, vec3::neg(&t2)] {
                let cand = vec3::normalize(&vec3::add(rep, &vec3::scale(&step, h))).unwrap();
                apply(dirs, members, &cand);
                match fit_amplitude(d, dirs) {
                    Some((a2, r2)) if r2 < resid => {
                        a = a2;
                        resid = r2;
                        *rep = cand;
                        improved = true;
                        break;
                    }
                    _ => apply(dirs, members, rep),
                }
            }
        }
        if !improved {
            h *= 0.35;
        }
    }
    Some((a, resid))
}

/// Groups the 2q root images into axes (each root and its antipodal partner
/// land on the same axis), takes one direction per pair, and fits the
/// amplitude by least squares; verifies the reconstruction before returning.
///
/// Multiple roots scatter like eps^(1/multiplicity), so axis grouping is
/// tried coarse to fine (the coarsest radius whose reconstruction passes
/// wins) and the grouped directions are refined against the reconstruction
/// residual. An axis seen 2m times contributes the direction with
/// multiplicity m. If the amplitude comes out negative one direction is
/// flipped, which negates the symmetrized product and restores `a >= 0`.
pub fn roots_to_multipoles(roots: &[PolyRoot], d: &Deviator) -> Result<MultipoleForm> {
    let q = d.order();
    if roots.len() != 2 * q {
        return Err(Error::DimensionError(format!(
            "expected {} roots for an order-{q} deviator, got {}",
            2 * q,
            roots.len()
        )));
    }
    let tol_rec = match q {
        2 => tol::RECONSTRUCT_2,
        _ => tol::RECONSTRUCT_4,
    };
    let pts: Vec<Vec3> = roots.iter().map(PolyRoot::direction).collect();

    let mut best_resid = f64::INFINITY;
    let mut paired_ok = false;
    for &radius in &CLUSTER_RADII {
        let clusters = axis_clusters(&pts, radius.max(tol::ROOT_PAIRING));
        if clusters.iter().any(|&(_, n)| n % 2 != 0) {
            // roots must pair up on each axis
            continue;
        }
        paired_ok = true;
        let mut dirs: Vec<Vec3> = Vec::with_capacity(q);
        for &(axis, n) in &clusters {
            for _ in 0..n / 2 {
                dirs.push(axis);
            }
        }
        debug_assert_eq!(dirs.len(), q);
        let Some((a0, resid0)) = fit_amplitude(d, &dirs) else {
            continue;
        };
        let (mut a, mut resid) = (a0, resid0);
        if resid > tol_rec && resid < 1e-2 {
            if let Some((a1, resid1)) = polish_directions(d, &mut dirs) {
                a = a1;
                resid = resid1;
            }
        }
        best_resid = best_resid.min(resid);
        if resid <= tol_rec {
            if a < 0.0 {
                // one sign flip negates the symmetrized product
                let last = dirs.len() - 1;
                dirs[last] = vec3::neg(&dirs[last]);
                a = -a;
            }
            return Ok(MultipoleForm {
                order: q,
                amplitude: a,
                directions: dirs,
            });
        }
    }
    if !paired_ok {
        return Err(Error::PairingFailure(tol::ROOT_PAIRING));
    }
    Err(Error::ReconstructionFailure {
        residual: best_resid,
        tol: tol_rec,
    })
}

/// Full pipeline: polynomial coefficients, roots, pairing, amplitude.
///
/// A deviator with exactly zero norm yields the amplitude-0 form. `seed`
/// feeds the root finder's restart stream only.
pub fn multipoles_of_deviator(d: &Deviator, seed: u64) -> Result<MultipoleForm> {
    if d.frobenius_norm() == 0.0 {
        return Ok(MultipoleForm::zero(d.order()));
    }
    let p = deviator_poly_coeffs(d)?;
    let roots = solve_roots(&p, seed)?;
    roots_to_multipoles(&roots, d)
}

/// [`multipoles_of_deviator`] with an explicit reference scale: a deviator
/// whose norm is below `1e-12 * scale` counts as zero (amplitude 0). Use
/// this when the deviator came out of a larger tensor's decomposition and
/// may be pure roundoff.
pub fn multipoles_of_deviator_scaled(
    d: &Deviator,
    reference_scale: f64,
    seed: u64,
) -> Result<MultipoleForm> {
    if d.frobenius_norm() <= 1e-12 * reference_scale.max(1e-300) {
        return Ok(MultipoleForm::zero(d.order()));
    }
    multipoles_of_deviator(d, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp2::multipoles_from_eigen;
    use crate::samples;
    use crate::tensor::rotate;

    fn dev2_diag(a: f64, b: f64, c: f64) -> Deviator {
        Deviator::new(DenseTensor::diag([a, b, c])).unwrap()
    }

    #[test]
    fn source_coefficients_order2() {
        let p = deviator_poly_coeffs(&dev2_diag(3.0, -2.0, -1.0)).unwrap();
        assert!((p.source[0].re - -(1.5f64).sqrt()).abs() < 1e-15);
        assert_eq!(p.source[0].im, 0.0);
        assert_eq!(p.source[1], Complex64::new(0.0, 0.0));
        assert_eq!(p.source[2], Complex64::new(2.5, 0.0));
    }

    #[test]
    fn source_coefficients_axisymmetric() {
        let p = deviator_poly_coeffs(&dev2_diag(-1.0, -1.0, 2.0)).unwrap();
        assert!((p.source[0].re - (6.0f64).sqrt()).abs() < 1e-14);
        assert_eq!(p.source[1], Complex64::new(0.0, 0.0));
        assert_eq!(p.source[2], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn zero_deviator_order4_zero_polynomial() {
        let d = Deviator::zero(4);
        let p = deviator_poly_coeffs(&d).unwrap();
        assert_eq!(p.max_abs_coefficient(), 0.0);
        assert!(matches!(solve_roots(&p, 0), Err(Error::ZeroPolynomial)));
        assert_eq!(multipoles_of_deviator(&d, 0).unwrap().amplitude, 0.0);
    }

    #[test]
    fn unsupported_order() {
        let d = samples::random_deviator(3, 2);
        assert!(matches!(
            deviator_poly_coeffs(&d),
            Err(Error::UnsupportedOrder(3))
        ));
    }

    #[test]
    fn generic_diag_roots_and_multipoles() {
        let d = dev2_diag(3.0, -2.0, -1.0);
        let p = deviator_poly_coeffs(&d).unwrap();
        let roots = solve_roots(&p, 0).unwrap();
        assert_eq!(roots.len(), 4);
        for r in &roots {
            let PolyRoot::Finite(x) = r else {
                panic!("all roots finite here")
            };
            assert!(root_residual(&p, *x) <= 1e-12);
        }
        assert!(pairing_closure_residual(&roots) <= 1e-10);

        let mp = roots_to_multipoles(&roots, &d).unwrap();
        assert!((mp.amplitude - 5.0).abs() < 1e-10);
        let want1 = [(0.8f64).sqrt(), (0.2f64).sqrt(), 0.0];
        let want2 = [(0.8f64).sqrt(), -(0.2f64).sqrt(), 0.0];
        let hits = |w: &Vec3| mp.directions.iter().any(|n| vec3::same_axis(n, w, 1e-8));
        assert!(hits(&want1) && hits(&want2));
    }

    #[test]
    fn axisymmetric_roots_include_infinity() {
        let d = dev2_diag(-1.0, -1.0, 2.0);
        let p = deviator_poly_coeffs(&d).unwrap();
        let roots = solve_roots(&p, 0).unwrap();
        let inf = roots
            .iter()
            .filter(|r| matches!(r, PolyRoot::Infinity))
            .count();
        let zero = roots
            .iter()
            .filter(|r| matches!(r, PolyRoot::Finite(x) if x.norm() < 1e-12))
            .count();
        assert_eq!((inf, zero), (2, 2));
        let mp = roots_to_multipoles(&roots, &d).unwrap();
        assert!((mp.amplitude - 3.0).abs() < 1e-12);
        for n in &mp.directions {
            assert!(vec3::same_axis(n, &[0.0, 0.0, 1.0], 1e-12));
        }
    }

    #[test]
    fn reconstruction_random_order2() {
        for seed in 0..100u64 {
            let d = samples::random_deviator(2, seed);
            let mp = multipoles_of_deviator(&d, 0).unwrap();
            let resid = mp.reconstruct().sub(d.tensor()).frobenius_norm();
            assert!(resid <= 1e-8 * d.frobenius_norm().max(mp.amplitude));
            assert!(mp.amplitude >= 0.0);
        }
    }

    #[test]
    fn reconstruction_random_order4() {
        for seed in 0..40u64 {
            let d = samples::random_deviator(4, seed);
            let mp = multipoles_of_deviator(&d, 0).unwrap();
            let resid = mp.reconstruct().sub(d.tensor()).frobenius_norm();
            assert!(resid <= 1e-6 * d.frobenius_norm().max(mp.amplitude));
        }
    }

    #[test]
    fn known_multipoles_recovered_order4() {
        for seed in 0..20u64 {
            let ns: Vec<Vec3> = (0..4)
                .map(|k| samples::random_unit_vector(seed * 7 + k))
                .collect();
            let mut prod = DenseTensor::scalar(1.0);
            for n in &ns {
                prod = outer_product(&prod, &DenseTensor::vector(*n)).unwrap();
            }
            let d = traceless_symmetric_part(&prod);
            if d.frobenius_norm() < 1e-3 {
                continue;
            }
            let a0 = 2.0;
            let d = Deviator::new(d.tensor().scaled(a0)).unwrap();
            let mp = multipoles_of_deviator(&d, 0).unwrap();
            assert!((mp.amplitude - a0).abs() < 1e-6 * a0);
            for n in &ns {
                assert!(
                    mp.directions.iter().any(|m| vec3::same_axis(m, n, 1e-5)),
                    "axis {n:?} missing"
                );
            }
        }
    }

    #[test]
    fn conjugate_pairing_closure_order4() {
        for seed in 0..30u64 {
            let d = samples::random_deviator(4, 500 + seed);
            let p = deviator_poly_coeffs(&d).unwrap();
            let roots = solve_roots(&p, 0).unwrap();
            assert!(pairing_closure_residual(&roots) <= 1e-6);
        }
    }

    #[test]
    fn repeated_runs_agree_as_sign_free_sets() {
        let d = samples::random_deviator(4, 77);
        let a = multipoles_of_deviator(&d, 0).unwrap();
        let b = multipoles_of_deviator(&d, 12345).unwrap();
        assert!((a.amplitude - b.amplitude).abs() < 1e-10);
        for n in &a.directions {
            assert!(b.directions.iter().any(|m| vec3::same_axis(m, n, 1e-8)));
        }
    }

    #[test]
    fn permuted_root_ordering_gives_the_same_multipoles() {
        for order in [2usize, 4] {
            let d = samples::random_deviator(order, 300 + order as u64);
            let p = deviator_poly_coeffs(&d).unwrap();
            let roots = solve_roots(&p, 0).unwrap();
            let a = roots_to_multipoles(&roots, &d).unwrap();
            let mut reversed = roots.clone();
            reversed.reverse();
            let b = roots_to_multipoles(&reversed, &d).unwrap();
            assert!((a.amplitude - b.amplitude).abs() < 1e-10);
            for n in &a.directions {
                assert!(
                    b.directions.iter().any(|m| vec3::same_axis(m, n, 1e-8)),
                    "direction set changed under root permutation (order {order})"
                );
            }
        }
    }

    #[test]
    fn rotation_equivariance() {
        for order in [2usize, 4] {
            let d = samples::random_deviator(order, 900 + order as u64);
            let q = samples::random_rotation(901);
            let d_rot = Deviator::new(rotate(d.tensor(), &q).unwrap()).unwrap();
            let mp = multipoles_of_deviator(&d, 0).unwrap();
            let mp_rot = multipoles_of_deviator(&d_rot, 0).unwrap();
            assert!((mp.amplitude - mp_rot.amplitude).abs() < 1e-6 * mp.amplitude.max(1.0));
            for n in &mp.directions {
                let rn = rotate(&DenseTensor::vector(*n), &q).unwrap();
                let rn = [rn.coeffs()[0], rn.coeffs()[1], rn.coeffs()[2]];
                assert!(
                    mp_rot
                        .directions
                        .iter()
                        .any(|m| vec3::same_axis(m, &rn, 1e-6)),
                    "rotated axis missing (order {order})"
                );
            }
        }
    }

    #[test]
    fn polynomial_path_matches_eigen_path_order2() {
        for seed in 0..60u64 {
            let d = samples::random_deviator(2, 40_000 + seed);
            let es = crate::spectral::eigen_sym3(d.tensor()).unwrap();
            let [l1, l2, l3] = es.eigenvalues;
            if (l1.abs() - l2.abs()).abs() < 1e-3 || (l2.abs() - l3.abs()).abs() < 1e-3 {
                continue;
            }
            let (a_eig, m1e, m2e) = multipoles_from_eigen(l1, l2).unwrap();
            // map eigenframe components to world coordinates
            let frame = es.eigenvectors;
            let to_world = |m: &Vec3| {
                let mut w = [0.0; 3];
                for i in 0..3 {
                    w[i] = m[0] * frame[0][i] + m[1] * frame[1][i] + m[2] * frame[2][i];
                }
                w
            };
            let (w1, w2) = (to_world(&m1e), to_world(&m2e));
            let mp = multipoles_of_deviator(&d, 0).unwrap();
            assert!((mp.amplitude - a_eig).abs() <= 1e-8 * a_eig.max(1.0));
            for w in [&w1, &w2] {
                assert!(
                    mp.directions.iter().any(|n| vec3::same_axis(n, w, 1e-8)),
                    "eigen-path axis missing"
                );
            }
        }
    }
}
