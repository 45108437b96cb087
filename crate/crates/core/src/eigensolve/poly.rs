//! Characteristic polynomial of a complex matrix and its complex roots.

use num_complex::Complex64;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};

/// Real polynomial `c₀ + c₁z + … + c_m z^m`, coefficients in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPoly {
    pub coeffs: Vec<f64>,
}

impl RealPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `Σ|c_k||z|^k`, the natural scale for judging `|p(z)|`.
    pub fn magnitude_at(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * r + c.abs())
    }
}

/// Coefficients of `det(zI − M)` by the Faddeev–LeVerrier recursion.
/// Fails when an imaginary part exceeds `1e-8` relative to the largest
/// coefficient.
pub fn faddeev_leverrier(m: &CMatrix) -> Result<RealPoly> {
    let dim = m.dim();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); dim + 1];
    coeffs[dim] = Complex64::new(1.0, 0.0);
    let mut mk = CMatrix::zeros(dim);
    for k in 1..=dim {
        // M_k = M·M_{k−1} + c_{dim−k+1}·I
        let mut next = m * &mk;
        for i in 0..dim {
            next[(i, i)] += coeffs[dim - k + 1];
        }
        mk = next;
        coeffs[dim - k] = -(m * &mk).trace() / k as f64;
    }
    let reference = coeffs.iter().map(|c| c.norm()).fold(1.0, f64::max);
    if let Some((k, c)) = coeffs.iter().enumerate().find(|(_, c)| c.im.abs() > 1e-8 * reference) {
        return Err(Error::NumericalInstability(format!("coefficient c_{k} = {c} is not real")));
    }
    Ok(RealPoly { coeffs: coeffs.iter().map(|c| c.re).collect() })
}

pub const DK_MAX_ITERATIONS: usize = 500;
pub const DK_STEP_TOL: f64 = 1e-12;

/// All complex roots by Durand–Kerner simultaneous iteration.
///
/// Clustered roots converge slowly; after the iteration cap the result is
/// still accepted when every root has a small backward error
/// `|p(z)| ≤ 1e-8·Σ|c_k||z|^k`.
pub fn durand_kerner(poly: &RealPoly) -> Result<Vec<Complex64>> {
    let deg = poly.degree();
    let lead = *poly.coeffs.last().ok_or_else(|| Error::Invalid("empty polynomial".into()))?;
    if lead == 0.0 {
        return Err(Error::Invalid("leading coefficient is zero".into()));
    }
    if deg == 0 {
        return Ok(Vec::new());
    }
    let monic = RealPoly { coeffs: poly.coeffs.iter().map(|c| c / lead).collect() };
    // starting points on a spiral scaled by the geometric mean of the root moduli
    let radius = match monic.coeffs[0].abs() {
        0.0 => 1.0,
        c0 => c0.powf(1.0 / deg as f64),
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32) * radius).collect();

    let mut converged = false;
    for _ in 0..DK_MAX_ITERATIONS {
        let mut max_step = 0.0f64;
        let mut next = roots.clone();
        for i in 0..deg {
            let zi = roots[i];
            let denom: Complex64 = (0..deg).filter(|&j| j != i).map(|j| zi - roots[j]).product();
            if denom.norm() == 0.0 {
                next[i] = zi + Complex64::new(1e-8, 1e-8) * radius;
                max_step = f64::INFINITY;
                continue;
            }
            let step = monic.eval(zi) / denom;
            next[i] = zi - step;
            max_step = max_step.max(step.norm() / (1.0 + zi.norm()));
        }
        roots = next;
        if max_step <= DK_STEP_TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        if let Some(z) = roots.iter().find(|&&z| monic.eval(z).norm() > 1e-8 * monic.magnitude_at(z)) {
            return Err(Error::ConvergenceFailure(format!(
                "Durand-Kerner stalled after {DK_MAX_ITERATIONS} iterations near {z}"
            )));
        }
    }
    Ok(roots)
}
