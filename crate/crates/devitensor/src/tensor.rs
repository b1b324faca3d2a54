//! Dense three-dimensional tensors of order 0..=4 and the algebraic
//! primitives the decomposition pipeline builds on.
//!
//! Coefficients are stored row-major with the first index slowest, so for an
//! order-q tensor the linear index of `(i1, ..., iq)` is
//! `i1 * 3^(q-1) + i2 * 3^(q-2) + ... + iq`. This convention is fixed and is
//! also the file order used by the CLI.

use crate::error::{Error, Result};
use crate::tol;

/// Maximum supported tensor order.
pub const MAX_ORDER: usize = 4;

/// A dense three-dimensional tensor of order 0 to 4.
///
/// The coefficient array always holds the full `3^order` entries, even for
/// symmetric or traceless values; compact parameterizations are test-only.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    order: usize,
    coeffs: Vec<f64>,
}

fn dim(order: usize) -> usize {
    3usize.pow(order as u32)
}

impl DenseTensor {
    /// Zero tensor of the given order.
    pub fn zeros(order: usize) -> Self {
        assert!(order <= MAX_ORDER, "order {order} exceeds {MAX_ORDER}");
        DenseTensor {
            order,
            coeffs: vec![0.0; dim(order)],
        }
    }

    /// Builds a tensor from its flat coefficient list (row-major, first index
    /// slowest). Fails when the length is not `3^order` or an entry is not
    /// finite.
    pub fn from_coeffs(order: usize, coeffs: Vec<f64>) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::OrderOverflow(order));
        }
        if coeffs.len() != dim(order) {
            return Err(Error::DimensionError(format!(
                "order-{order} tensor needs {} coefficients, got {}",
                dim(order),
                coeffs.len()
            )));
        }
        if let Some(bad) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::DimensionError(format!(
                "non-finite coefficient at flat index {bad}"
            )));
        }
        Ok(DenseTensor { order, coeffs })
    }

    pub fn scalar(value: f64) -> Self {
        DenseTensor {
            order: 0,
            coeffs: vec![value],
        }
    }

    pub fn vector(v: [f64; 3]) -> Self {
        DenseTensor {
            order: 1,
            coeffs: v.to_vec(),
        }
    }

    pub fn matrix(m: [[f64; 3]; 3]) -> Self {
        let mut coeffs = Vec::with_capacity(9);
        for row in &m {
            coeffs.extend_from_slice(row);
        }
        DenseTensor { order: 2, coeffs }
    }

    pub fn diag(d: [f64; 3]) -> Self {
        let mut t = DenseTensor::zeros(2);
        for i in 0..3 {
            t.set(&[i, i], d[i]);
        }
        t
    }

    /// Second-order identity (Kronecker delta).
    pub fn identity() -> Self {
        DenseTensor::diag([1.0, 1.0, 1.0])
    }

    /// Third-order permutation tensor, `eps_123 = 1`.
    pub fn permutation() -> Self {
        let mut t = DenseTensor::zeros(3);
        t.set(&[0, 1, 2], 1.0);
        t.set(&[1, 2, 0], 1.0);
        t.set(&[2, 0, 1], 1.0);
        t.set(&[0, 2, 1], -1.0);
        t.set(&[2, 1, 0], -1.0);
        t.set(&[1, 0, 2], -1.0);
        t
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn flat(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.order);
        let mut lin = 0;
        for &i in idx {
            debug_assert!(i < 3);
            lin = lin * 3 + i;
        }
        lin
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.coeffs[self.flat(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        let lin = self.flat(idx);
        self.coeffs[lin] = value;
    }

    /// Decodes a linear index into digits `[i1, ..., iq]`.
    fn digits(&self, mut lin: usize) -> [usize; MAX_ORDER] {
        let mut idx = [0usize; MAX_ORDER];
        for k in (0..self.order).rev() {
            idx[k] = lin % 3;
            lin /= 3;
        }
        idx
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    /// Full contraction of two same-order tensors.
    pub fn inner(&self, other: &DenseTensor) -> f64 {
        assert_eq!(self.order, other.order, "inner product needs equal orders");
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scaled(&self, s: f64) -> DenseTensor {
        DenseTensor {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &DenseTensor) -> DenseTensor {
        assert_eq!(self.order, other.order);
        DenseTensor {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &DenseTensor) -> DenseTensor {
        self.add(&other.scaled(-1.0))
    }

    pub fn max_abs_diff(&self, other: &DenseTensor) -> f64 {
        assert_eq!(self.order, other.order);
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from total symmetry over all index permutations.
    pub fn symmetry_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        let mut perm = [0usize; MAX_ORDER];
        for lin in 0..self.len() {
            let idx = self.digits(lin);
            let v = self.coeffs[lin];
            for_each_permutation(self.order, &mut perm, &mut |p| {
                let mut j = [0usize; MAX_ORDER];
                for (k, &pk) in p.iter().take(self.order).enumerate() {
                    j[k] = idx[pk];
                }
                let w = self.get(&j[..self.order]);
                worst = worst.max((v - w).abs());
            });
        }
        worst
    }
}

/// Calls `f` with every permutation of `0..order` (order <= 4).
fn for_each_permutation(order: usize, buf: &mut [usize; MAX_ORDER], f: &mut dyn FnMut(&[usize])) {
    fn rec(
        order: usize,
        depth: usize,
        used: &mut [bool; MAX_ORDER],
        buf: &mut [usize; MAX_ORDER],
        f: &mut dyn FnMut(&[usize]),
    ) {
        if depth == order {
            f(&buf[..order]);
            return;
        }
        for v in 0..order {
            if !used[v] {
                used[v] = true;
                buf[depth] = v;
                rec(order, depth + 1, used, buf, f);
                used[v] = false;
            }
        }
    }
    let mut used = [false; MAX_ORDER];
    rec(order, 0, &mut used, buf, f);
}

fn factorial(n: usize) -> f64 {
    (1..=n).product::<usize>() as f64
}

/// Outer (tensor) product. The combined order is capped at 4 to bound storage.
pub fn outer_product(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    let order = a.order + b.order;
    if order > MAX_ORDER {
        return Err(Error::OrderOverflow(order));
    }
    let mut out = DenseTensor::zeros(order);
    for (ia, &va) in a.coeffs.iter().enumerate() {
        for (ib, &vb) in b.coeffs.iter().enumerate() {
            out.coeffs[ia * b.len() + ib] = va * vb;
        }
    }
    Ok(out)
}

/// Einstein summation over the last index of `a` and the first index of `b`.
pub fn contract_single(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    contract(a, b, 1)
}

/// Einstein summation over the last two indices of `a` and the first two of `b`.
pub fn contract_double(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor> {
    contract(a, b, 2)
}

fn contract(a: &DenseTensor, b: &DenseTensor, n: usize) -> Result<DenseTensor> {
    if a.order < n {
        return Err(Error::OrderUnderflow {
            order: a.order,
            needed: n,
        });
    }
    if b.order < n {
        return Err(Error::OrderUnderflow {
            order: b.order,
            needed: n,
        });
    }
    let order = a.order + b.order - 2 * n;
    if order > MAX_ORDER {
        return Err(Error::OrderOverflow(order));
    }
    let k = dim(n);
    let rows = a.len() / k;
    let cols = b.len() / k;
    let mut out = DenseTensor::zeros(order);
    for r in 0..rows {
        for c in 0..cols {
            let mut s = 0.0;
            for m in 0..k {
                s += a.coeffs[r * k + m] * b.coeffs[m * cols + c];
            }
            out.coeffs[r * cols + c] = s;
        }
    }
    Ok(out)
}

/// Trace over one index pair; the order drops by two. Slots are 1-based,
/// defaulting to (1, 2).
pub fn trace(t: &DenseTensor, slots: Option<(usize, usize)>) -> Result<DenseTensor> {
    let (s1, s2) = slots.unwrap_or((1, 2));
    if t.order < 2 {
        return Err(Error::OrderUnderflow {
            order: t.order,
            needed: 2,
        });
    }
    if s1 == s2 || s1 == 0 || s2 == 0 || s1 > t.order || s2 > t.order {
        return Err(Error::InvalidSlots(s1, s2));
    }
    let (a, b) = (s1.min(s2) - 1, s1.max(s2) - 1);
    let order = t.order - 2;
    let mut out = DenseTensor::zeros(order);
    for lin in 0..t.len() {
        let idx = t.digits(lin);
        if idx[a] != idx[b] {
            continue;
        }
        let mut j = [0usize; MAX_ORDER];
        let mut k = 0;
        for (pos, &i) in idx.iter().take(t.order).enumerate() {
            if pos != a && pos != b {
                j[k] = i;
                k += 1;
            }
        }
        let lin_out = out.flat(&j[..order]);
        out.coeffs[lin_out] += t.coeffs[lin];
    }
    Ok(out)
}

/// Determinant of a second-order tensor.
pub fn determinant(t: &DenseTensor) -> Result<f64> {
    if t.order != 2 {
        return Err(Error::DimensionError(format!(
            "determinant needs order 2, got {}",
            t.order
        )));
    }
    let m = |i: usize, j: usize| t.get(&[i, j]);
    Ok(m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0)))
}

/// Totally symmetric part: the average over all q! index permutations.
pub fn symmetrize(t: &DenseTensor) -> DenseTensor {
    if t.order < 2 {
        return t.clone();
    }
    let mut out = DenseTensor::zeros(t.order);
    let inv = 1.0 / factorial(t.order);
    let mut perm = [0usize; MAX_ORDER];
    for lin in 0..t.len() {
        let idx = t.digits(lin);
        let mut s = 0.0;
        for_each_permutation(t.order, &mut perm, &mut |p| {
            let mut j = [0usize; MAX_ORDER];
            for (k, &pk) in p.iter().take(t.order).enumerate() {
                j[k] = idx[pk];
            }
            s += t.get(&j[..t.order]);
        });
        out.coeffs[lin] = s * inv;
    }
    out
}

/// Rotates a tensor by an orthogonal Q (one factor of Q per index):
/// `T'_{i...} = Q_{i m} ... T_{m...}`. Orthogonality is checked against `tol`.
pub fn rotate_with_tol(t: &DenseTensor, q: &DenseTensor, tol: f64) -> Result<DenseTensor> {
    if q.order != 2 {
        return Err(Error::DimensionError(format!(
            "rotation matrix must be order 2, got {}",
            q.order
        )));
    }
    let mut worst = 0.0f64;
    for i in 0..3 {
        for j in 0..3 {
            let mut s = 0.0;
            for k in 0..3 {
                s += q.get(&[k, i]) * q.get(&[k, j]);
            }
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((s - target).abs());
        }
    }
    if worst > tol {
        return Err(Error::NotOrthogonal {
            residual: worst,
            tol,
        });
    }
    Ok(rotate_unchecked(t, q))
}

/// [`rotate_with_tol`] with the default orthogonality tolerance.
pub fn rotate(t: &DenseTensor, q: &DenseTensor) -> Result<DenseTensor> {
    rotate_with_tol(t, q, tol::ORTHOGONALITY)
}

pub(crate) fn rotate_unchecked(t: &DenseTensor, q: &DenseTensor) -> DenseTensor {
    let mut cur = t.clone();
    // Contract one index per stage; `stride` is the weight of the index being
    // rotated in the linear layout.
    for axis in 0..t.order {
        let stride = dim(t.order - 1 - axis);
        let mut next = DenseTensor::zeros(t.order);
        for lin in 0..cur.len() {
            let i = (lin / stride) % 3;
            let base = lin - i * stride;
            let mut s = 0.0;
            for m in 0..3 {
                s += q.get(&[i, m]) * cur.coeffs[base + m * stride];
            }
            next.coeffs[lin] = s;
        }
        cur = next;
    }
    cur
}

/// A totally symmetric, traceless tensor. The constructor validates both
/// properties relative to the Frobenius norm.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviator {
    tensor: DenseTensor,
}

impl Deviator {
    /// Validates with the default tolerances (`tol::SYMMETRY`, `tol::TRACE`).
    pub fn new(tensor: DenseTensor) -> Result<Self> {
        Self::with_tolerance(tensor, tol::SYMMETRY, tol::TRACE)
    }

    pub fn with_tolerance(tensor: DenseTensor, tol_sym: f64, tol_trace: f64) -> Result<Self> {
        let scale = tensor.frobenius_norm().max(1e-300);
        let sym = tensor.symmetry_residual();
        if sym > tol_sym * scale {
            return Err(Error::NotDeviator {
                what: "symmetry",
                residual: sym,
                tol: tol_sym * scale,
            });
        }
        if tensor.order >= 2 {
            for a in 1..=tensor.order {
                for b in (a + 1)..=tensor.order {
                    let tr = trace(&tensor, Some((a, b)))?;
                    let worst = tr.coeffs.iter().fold(0.0f64, |m, c| m.max(c.abs()));
                    if worst > tol_trace * scale {
                        return Err(Error::NotDeviator {
                            what: "trace",
                            residual: worst,
                            tol: tol_trace * scale,
                        });
                    }
                }
            }
        }
        Ok(Deviator { tensor })
    }

    pub fn order(&self) -> usize {
        self.tensor.order
    }

    pub fn tensor(&self) -> &DenseTensor {
        &self.tensor
    }

    pub fn into_tensor(self) -> DenseTensor {
        self.tensor
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.tensor.frobenius_norm()
    }

    pub fn zero(order: usize) -> Self {
        Deviator {
            tensor: DenseTensor::zeros(order),
        }
    }
}

/// Symmetric traceless projection: symmetrize, then remove every trace.
///
/// Trace removal subtracts symmetrized identity-times-lower-trace terms with
/// coefficients fixed so that all contractions vanish exactly:
/// order 2: `S - tr(S)/3 I`; order 3: `S - s(I v)` with `v = (3/5) tr S`;
/// order 4: `S - s(I H) - h s(I I)` with `H = (6/7) dev(tr S)` and
/// `h = (full double trace)/5`.
pub fn traceless_symmetric_part(t: &DenseTensor) -> Deviator {
    let s = symmetrize(t);
    let d = match t.order {
        0 | 1 => s,
        2 => {
            let tr = s.get(&[0, 0]) + s.get(&[1, 1]) + s.get(&[2, 2]);
            s.sub(&DenseTensor::identity().scaled(tr / 3.0))
        }
        3 => {
            let tr = trace(&s, None).expect("order 3 has a trace");
            let v = tr.scaled(3.0 / 5.0);
            let siv = symmetrize(&outer_product(&DenseTensor::identity(), &v).expect("order 3"));
            s.sub(&siv)
        }
        4 => {
            let t2 = trace(&s, Some((3, 4))).expect("order 4 has traces");
            let tr2 = t2.get(&[0, 0]) + t2.get(&[1, 1]) + t2.get(&[2, 2]);
            let h0 = tr2 / 5.0;
            let h2 = t2
                .sub(&DenseTensor::identity().scaled(tr2 / 3.0))
                .scaled(6.0 / 7.0);
            let eye = DenseTensor::identity();
            let sih = symmetrize(&outer_product(&eye, &h2).expect("order 4"));
            let sii = symmetrize(&outer_product(&eye, &eye).expect("order 4"));
            s.sub(&sih).sub(&sii.scaled(h0))
        }
        _ => unreachable!("order bounded by constructor"),
    };
    Deviator { tensor: d }
}
