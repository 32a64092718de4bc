//! Matrix exponential by scaling and squaring with diagonal Padé approximants.
//!
//! Degree selection and the theta thresholds follow Higham, "The Scaling and
//! Squaring Method for the Matrix Exponential Revisited" (2005). The input need
//! not be normal, which matters for non-Hermitian effective generators.

use num_complex::Complex64 as C64;

use super::ComplexMatrix;
use crate::error::{Error, Result};

const THETA: [(usize, f64); 4] =
    [(3, 1.495585217958292e-2), (5, 2.53939833006323e-1), (7, 9.504178996162932e-1), (9, 2.097847961257068e0)];
const THETA_13: f64 = 5.371920351148152e0;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0];
const B9: [f64; 10] =
    [17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0, 2162160.0, 110880.0, 3960.0, 90.0, 1.0];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// Computes exp(M) for an arbitrary finite square matrix.
pub fn mat_exp(m: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !m.is_finite() {
        return Err(Error::InvalidMatrix);
    }
    let norm = m.norm_one();
    for &(degree, theta) in &THETA {
        if norm <= theta {
            let coeffs: &[f64] = match degree {
                3 => &B3,
                5 => &B5,
                7 => &B7,
                _ => &B9,
            };
            let (u, v) = pade_low(m, coeffs);
            return pade_quotient(&u, &v);
        }
    }

    let squarings = if norm > THETA_13 { (norm / THETA_13).log2().ceil().max(0.0) as u32 } else { 0 };
    let scaled = m.scale_real(0.5f64.powi(squarings as i32));
    let (u, v) = pade_13(&scaled);
    let mut result = pade_quotient(&u, &v)?;
    for _ in 0..squarings {
        result = &result * &result;
    }
    if !result.is_finite() {
        return Err(Error::InvalidMatrix);
    }
    Ok(result)
}

/// exp(-i H t), the propagator for a (possibly non-Hermitian) generator H.
pub fn propagator(h: &ComplexMatrix, t: f64) -> Result<ComplexMatrix> {
    mat_exp(&h.scale(C64::new(0.0, -t)))
}

fn pade_quotient(u: &ComplexMatrix, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    let numer = v + u;
    let denom = v - u;
    denom.solve(&numer)
}

fn pade_low(a: &ComplexMatrix, b: &[f64]) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.dim();
    let a2 = a * a;
    let mut odd = ComplexMatrix::identity(n).scale_real(b[1]);
    let mut even = ComplexMatrix::identity(n).scale_real(b[0]);
    let mut power = ComplexMatrix::identity(n);
    for k in 1..b.len() / 2 {
        power = &power * &a2;
        odd += &power.scale_real(b[2 * k + 1]);
        even += &power.scale_real(b[2 * k]);
    }
    (a * &odd, even)
}

fn pade_13(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let b = &B13;
    let n = a.dim();
    let ident = ComplexMatrix::identity(n);
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a4 * &a2;

    let mut inner_u = a6.scale_real(b[13]);
    inner_u += &a4.scale_real(b[11]);
    inner_u += &a2.scale_real(b[9]);
    let mut u = &a6 * &inner_u;
    u += &a6.scale_real(b[7]);
    u += &a4.scale_real(b[5]);
    u += &a2.scale_real(b[3]);
    u += &ident.scale_real(b[1]);
    let u = a * &u;

    let mut inner_v = a6.scale_real(b[12]);
    inner_v += &a4.scale_real(b[10]);
    inner_v += &a2.scale_real(b[8]);
    let mut v = &a6 * &inner_v;
    v += &a6.scale_real(b[6]);
    v += &a4.scale_real(b[4]);
    v += &a2.scale_real(b[2]);
    v += &ident.scale_real(b[0]);
    (u, v)
}
