//! The polynomial view of totally symmetric tensors and their decomposition
//! into deviators of descending order (the harmonic decomposition).
//!
//! A tensor T generates the homogeneous polynomial `T(r) = T_{i1..iq} r_i1
//! ... r_iq`, which depends only on the totally symmetric part of T. On
//! totally symmetric tensors the map is an isomorphism; harmonic polynomials
//! (Laplacian zero) correspond exactly to deviators.

use crate::error::{Error, Result};
use crate::tensor::{
    outer_product, symmetrize, trace, traceless_symmetric_part, DenseTensor, Deviator,
};
use crate::tol;

/// A homogeneous polynomial in (r1, r2, r3), stored as one coefficient per
/// monomial `r1^a r2^b r3^c` with `a + b + c = degree`.
///
/// Multinomial multiplicity is absorbed into the coefficient (it is the sum
/// of the source tensor entries over all index orderings), so evaluation is
/// a plain dot product against the monomial values.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPolynomial {
    degree: usize,
    /// Coefficients indexed by [`monomials`](Self::monomials) order.
    coefficients: Vec<f64>,
}

/// Exponent triples (a, b, c) with a + b + c = degree, in lexicographic order
/// (a descending, then b descending).
pub fn monomials(degree: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=(degree - a)).rev() {
            out.push((a, b, degree - a - b));
        }
    }
    out
}

fn multinomial(q: usize, a: usize, b: usize, c: usize) -> f64 {
    fn fact(n: usize) -> f64 {
        (1..=n).product::<usize>() as f64
    }
    fact(q) / (fact(a) * fact(b) * fact(c))
}

impl HomogeneousPolynomial {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn evaluate(&self, r: &[f64; 3]) -> f64 {
        monomials(self.degree)
            .iter()
            .zip(&self.coefficients)
            .map(|(&(a, b, c), coef)| {
                coef * r[0].powi(a as i32) * r[1].powi(b as i32) * r[2].powi(c as i32)
            })
            .sum()
    }

    /// The Laplacian, a homogeneous polynomial of degree q - 2 (zero
    /// polynomial for q < 2).
    pub fn laplacian(&self) -> HomogeneousPolynomial {
        let degree = self.degree.saturating_sub(2);
        let out_monos = monomials(degree);
        let mut coefficients = vec![0.0; out_monos.len()];
        if self.degree < 2 {
            return HomogeneousPolynomial {
                degree: 0,
                coefficients: vec![0.0],
            };
        }
        let pos = |a: usize, b: usize, c: usize| {
            out_monos
                .iter()
                .position(|&m| m == (a, b, c))
                .expect("exponent triple in range")
        };
        for (&(a, b, c), coef) in monomials(self.degree).iter().zip(&self.coefficients) {
            if a >= 2 {
                coefficients[pos(a - 2, b, c)] += coef * (a * (a - 1)) as f64;
            }
            if b >= 2 {
                coefficients[pos(a, b - 2, c)] += coef * (b * (b - 1)) as f64;
            }
            if c >= 2 {
                coefficients[pos(a, b, c - 2)] += coef * (c * (c - 1)) as f64;
            }
        }
        HomogeneousPolynomial {
            degree,
            coefficients,
        }
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.coefficients.iter().fold(0.0, |m, c| m.max(c.abs()))
    }
}

/// The polynomial generated by a tensor. Depends only on `symmetrize(t)`.
pub fn generate_polynomial(t: &DenseTensor) -> HomogeneousPolynomial {
    let q = t.order();
    let monos = monomials(q);
    let mut coefficients = vec![0.0; monos.len()];
    // every entry contributes to the monomial counting its index values
    for lin in 0..t.len() {
        let mut counts = [0usize; 3];
        let mut rest = lin;
        for _ in 0..q {
            counts[rest % 3] += 1;
            rest /= 3;
        }
        let pos = monos
            .iter()
            .position(|&m| m == (counts[0], counts[1], counts[2]))
            .expect("counts sum to degree");
        coefficients[pos] += t.coeffs()[lin];
    }
    HomogeneousPolynomial {
        degree: q,
        coefficients,
    }
}

/// The unique totally symmetric tensor generating `p`; inverse of
/// [`generate_polynomial`] on totally symmetric tensors.
pub fn symmetric_from_polynomial(p: &HomogeneousPolynomial) -> Result<DenseTensor> {
    let q = p.degree;
    if q > 4 {
        return Err(Error::OrderOverflow(q));
    }
    let monos = monomials(q);
    let mut t = DenseTensor::zeros(q);
    let mut coeffs = vec![0.0; t.len()];
    for lin in 0..t.len() {
        let mut counts = [0usize; 3];
        let mut rest = lin;
        for _ in 0..q {
            counts[rest % 3] += 1;
            rest /= 3;
        }
        let pos = monos
            .iter()
            .position(|&m| m == (counts[0], counts[1], counts[2]))
            .expect("counts sum to degree");
        coeffs[lin] = p.coefficients[pos] / multinomial(q, counts[0], counts[1], counts[2]);
    }
    for (lin, v) in coeffs.into_iter().enumerate() {
        t.coeffs_mut()[lin] = v;
    }
    Ok(t)
}

/// Deviators H(q), H(q-2), ... reconstructing a totally symmetric tensor as
/// `S = H(q) + s(I H(q-2)) + s(I I H(q-4)) ...`.
#[derive(Debug, Clone)]
pub struct HarmonicDecomposition {
    /// Highest order first; orders q, q-2, ... down to 0 or 1.
    pub deviators: Vec<Deviator>,
}

impl HarmonicDecomposition {
    /// Rebuilds the totally symmetric source tensor.
    pub fn reconstruct(&self) -> DenseTensor {
        let q = self.deviators[0].order();
        let eye = DenseTensor::identity();
        let mut sum = DenseTensor::zeros(q);
        for d in &self.deviators {
            let mut term = d.tensor().clone();
            while term.order() < q {
                term = symmetrize(&outer_product(&eye, &term).expect("order stays <= 4"));
            }
            sum = sum.add(&term);
        }
        sum
    }
}

/// Splits a totally symmetric tensor into deviators by iterated trace
/// subtraction.
pub fn harmonic_decompose(s: &DenseTensor) -> Result<HarmonicDecomposition> {
    harmonic_decompose_with_tol(s, tol::SYMMETRY)
}

pub fn harmonic_decompose_with_tol(s: &DenseTensor, tol_sym: f64) -> Result<HarmonicDecomposition> {
    let scale = s.frobenius_norm().max(1e-300);
    let residual = s.symmetry_residual();
    if residual > tol_sym * scale {
        return Err(Error::NotTotallySymmetric {
            residual,
            tol: tol_sym * scale,
        });
    }
    let q = s.order();
    let mut deviators = Vec::new();
    match q {
        0 | 1 => deviators.push(Deviator::new(s.clone())?),
        2 => {
            let tr = trace(s, None)?.coeffs()[0];
            deviators.push(traceless_symmetric_part(s));
            deviators.push(Deviator::new(DenseTensor::scalar(tr / 3.0))?);
        }
        3 => {
            let v = trace(s, None)?.scaled(3.0 / 5.0);
            deviators.push(traceless_symmetric_part(s));
            deviators.push(Deviator::new(v)?);
        }
        4 => {
            let t2 = trace(s, Some((3, 4)))?;
            let tr2 = trace(&t2, None)?.coeffs()[0];
            let h0 = tr2 / 5.0;
            let h2 = t2
                .sub(&DenseTensor::identity().scaled(tr2 / 3.0))
                .scaled(6.0 / 7.0);
            deviators.push(traceless_symmetric_part(s));
            // the formula output is traceless up to roundoff at the input
            // scale; snap it onto the deviator subspace
            deviators.push(traceless_symmetric_part(&h2));
            deviators.push(Deviator::new(DenseTensor::scalar(h0))?);
        }
        _ => return Err(Error::OrderOverflow(q)),
    }
    Ok(HarmonicDecomposition { deviators })
}
