//! Right and left spectra.
//!
//! Right eigenvalues come from the complex form: they are the quaternions
//! `qzq⁻¹` for complex eigenvalues `z` of `c(A)`, so one representative
//! `z = w + xi` with `x ≥ 0` is reported per conjugate pair.
//!
//! Left eigenvalues are the zeros of `λ ↦ det c(A − λId) = sdet(A − λId)²`
//! over the four real coordinates of `λ`. They are located by a multistart
//! simplex search and each accepted root is certified by a null vector of
//! `A − λId`. The search never claims completeness: some matrices have
//! infinitely many left eigenvalues.

pub mod poly;
pub mod simplex;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::qmatrix::QMatrix;
use crate::quaternion::Quaternion;

pub use poly::{durand_kerner, faddeev_leverrier, RealPoly};
pub use simplex::{nelder_mead, SimplexOptions, SimplexResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SpectrumKind {
    #[serde(rename = "left")]
    Left,
    #[serde(rename = "right-representative")]
    RightRepresentative,
}

/// A null vector `v` of `A − λId` with `‖Av − λv‖` for `‖v‖ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub vector: Vec<Quaternion>,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumResult {
    pub kind: SpectrumKind,
    pub values: Vec<Quaternion>,
    /// `sdet(A − λId)` for left eigenvalues, `|p(z)|` for right
    /// representatives.
    pub residuals: Vec<f64>,
    #[serde(skip)]
    pub certificates: Vec<Certificate>,
}

/// `det(c(A) − zId)` with real coefficients.
pub fn complex_char_poly(a: &QMatrix) -> Result<RealPoly> {
    faddeev_leverrier(&a.complex_form())
}

/// Max entry norm of `Σ c_k A^k` for the characteristic polynomial of `c(A)`.
pub fn right_hc_check(a: &QMatrix) -> Result<f64> {
    let p = complex_char_poly(a)?;
    let n = a.dim();
    // Horner in the matrix argument; real coefficients commute with A
    let value = p
        .coeffs
        .iter()
        .rev()
        .fold(QMatrix::zeros(n), |acc, &c| &(&acc * a) + &QMatrix::scalar(Quaternion::real(c), n));
    Ok(value.max_entry_norm())
}

/// Complex eigenvalues of `c(A)`.
pub fn complex_form_eigenvalues(a: &QMatrix) -> Result<Vec<Complex64>> {
    durand_kerner(&complex_char_poly(a)?)
}

pub fn right_eigenvalues(a: &QMatrix) -> Result<SpectrumResult> {
    let p = complex_char_poly(a)?;
    let roots = durand_kerner(&p)?;
    let mut reps: Vec<Complex64> = pair_conjugates(&roots);
    reps.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let residuals = reps.iter().map(|&z| p.eval(z).norm()).collect();
    Ok(SpectrumResult {
        kind: SpectrumKind::RightRepresentative,
        values: reps.iter().map(|z| Quaternion::new(z.re, z.im, 0.0, 0.0)).collect(),
        residuals,
        certificates: Vec::new(),
    })
}

/// Greedily matches each root with the closest conjugate of another root
/// and returns one averaged representative per pair with `im ≥ 0`.
fn pair_conjugates(roots: &[Complex64]) -> Vec<Complex64> {
    let mut used = vec![false; roots.len()];
    let mut reps = Vec::with_capacity(roots.len() / 2);
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let partner = (0..roots.len())
            .filter(|&j| !used[j])
            .min_by(|&j1, &j2| (roots[j1] - roots[i].conj()).norm().total_cmp(&(roots[j2] - roots[i].conj()).norm()));
        let z = match partner {
            Some(j) => {
                used[j] = true;
                let (u, v) = (roots[i], roots[j]);
                let (u, v) = if u.im >= v.im { (u, v) } else { (v, u) };
                Complex64::new(0.5 * (u.re + v.re), 0.5 * (u.im - v.im))
            }
            None => roots[i],
        };
        reps.push(Complex64::new(z.re, z.im.abs()));
    }
    reps
}

/// `σ(x, y) = det c(A − λId)` for `λ = x + jy`.
pub fn sigma(a: &QMatrix, x: Complex64, y: Complex64) -> Result<f64> {
    let lambda = Quaternion::from_complex_parts(x, y);
    let det = shifted_complex_form(&a.complex_form(), a.dim(), lambda).det();
    if det.im.abs() > 1e-8 * det.re.abs().max(a.scale().powi(2)) {
        return Err(Error::NumericalInstability(format!("sigma has imaginary part {:e}", det.im)));
    }
    Ok(det.re)
}

/// The naive matrix substitution `Id + (X₁² + X₂² + Y₁² + Y₂²)² − 4X₂Y₁` for
/// `A = [[0, i], [j, 0]]`, where `X = X₁ + iX₂` and `Y = Y₁ + iY₂`. The
/// products keep the written order. The result is `diag(−3, 1)`, which is
/// not zero, so this form of Hamilton–Cayley fails.
pub fn sigma_counterexample_check() -> QMatrix {
    let a = QMatrix::from_rows(vec![
        vec![Quaternion::ZERO, Quaternion::I],
        vec![Quaternion::J, Quaternion::ZERO],
    ])
    .expect("2x2");
    let [x1, x2, y1, y2] = real_parts(&a);
    let square = |m: &QMatrix| m * m;
    let sum = &(&(&square(&x1) + &square(&x2)) + &square(&y1)) + &square(&y2);
    let cross = (&x2 * &y1).left_scale(Quaternion::real(4.0));
    &(&QMatrix::identity(2) + &square(&sum)) - &cross
}

/// `[Re X, Im X, Re Y, Im Y]` for `A = X + jY`, as real quaternionic matrices.
fn real_parts(a: &QMatrix) -> [QMatrix; 4] {
    let n = a.dim();
    let part = |f: fn(Complex64, Complex64) -> f64| {
        QMatrix::from_fn(n, |i, j| {
            let (x, y) = a[(i, j)].complex_parts();
            Quaternion::real(f(x, y))
        })
    };
    [part(|x, _| x.re), part(|x, _| x.im), part(|_, y| y.re), part(|_, y| y.im)]
}

/// `c(A) − c(λId)` given `c(A)`.
fn shifted_complex_form(base: &CMatrix, n: usize, lambda: Quaternion) -> CMatrix {
    let (x, y) = lambda.complex_parts();
    let mut m = base.clone();
    for i in 0..n {
        m[(i, i)] -= x;
        m[(i, i + n)] += y.conj();
        m[(i + n, i)] -= y;
        m[(i + n, i + n)] -= x.conj();
    }
    m
}

#[derive(Debug, Clone, Copy)]
pub struct LeftSearchOptions {
    /// Pseudo-random starting points in addition to the structural seeds.
    pub random_starts: usize,
    pub seed: u64,
    /// A root is accepted when `sdet(A − λId) < accept_factor·scale(A)`
    /// and its null vector residual is below the same bound.
    pub accept_factor: f64,
    /// Roots closer than this are merged.
    pub dedup_tol: f64,
}

impl Default for LeftSearchOptions {
    fn default() -> Self {
        Self { random_starts: 64, seed: 0x5eed, accept_factor: 1e-6, dedup_tol: 1e-6 }
    }
}

pub fn left_eigenvalues(a: &QMatrix) -> Result<SpectrumResult> {
    left_eigenvalues_with(a, &LeftSearchOptions::default())
}

pub fn left_eigenvalues_with(a: &QMatrix, opts: &LeftSearchOptions) -> Result<SpectrumResult> {
    let n = a.dim();
    if n > 3 {
        return Err(Error::Unsupported(format!("left eigenvalue search supports n <= 3, not n = {n}")));
    }
    let base = a.complex_form();
    let objective = |v: &[f64]| shifted_complex_form(&base, n, Quaternion::new(v[0], v[1], v[2], v[3])).det().norm();
    let threshold = opts.accept_factor * a.scale();
    let spread = 1.0 + a.max_entry_norm();

    let mut starts: Vec<Quaternion> = Vec::new();
    if let Ok(right) = right_eigenvalues(a) {
        starts.extend(right.values);
    }
    starts.extend((0..n).map(|i| a[(i, i)]));
    let bound = n as f64 * a.max_entry_norm() + 1.0;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    starts.extend((0..opts.random_starts).map(|_| {
        Quaternion::new(
            rng.gen_range(-bound..bound),
            rng.gen_range(-bound..bound),
            rng.gen_range(-bound..bound),
            rng.gen_range(-bound..bound),
        )
    }));

    let mut found: Vec<(Quaternion, f64, Certificate)> = Vec::new();
    for start in starts {
        let mut x = start.to_array().to_vec();
        // coarse search, then two restarts from the best point to polish
        for step in [0.25 * spread, 1e-4 * spread, 1e-7 * spread] {
            x = nelder_mead(objective, &x, step, SimplexOptions::default()).x;
        }
        let lambda = Quaternion::new(x[0], x[1], x[2], x[3]);
        let sdet = a.shifted(lambda).sdet();
        if sdet.is_nan() || sdet >= threshold {
            continue;
        }
        let cert = null_vector(a, lambda);
        if cert.residual < threshold {
            found.push((lambda, sdet, cert));
        }
    }
    if found.is_empty() {
        return Err(Error::SearchIncomplete("no start converged to a certified left eigenvalue".into()));
    }

    found.sort_by(|l, r| {
        l.0.to_array().iter().zip(r.0.to_array().iter()).fold(std::cmp::Ordering::Equal, |o, (p, q)| o.then(p.total_cmp(q)))
    });
    let mut merged: Vec<(Quaternion, f64, Certificate)> = Vec::new();
    for item in found {
        match merged.iter_mut().find(|m| (m.0 - item.0).norm() <= opts.dedup_tol) {
            Some(m) if item.1 < m.1 => *m = item,
            Some(_) => {}
            None => merged.push(item),
        }
    }

    let mut out = SpectrumResult { kind: SpectrumKind::Left, values: vec![], residuals: vec![], certificates: vec![] };
    for (lambda, sdet, cert) in merged {
        out.values.push(lambda);
        out.residuals.push(sdet);
        out.certificates.push(cert);
    }
    Ok(out)
}

/// Approximate null vector of `A − λId` by inverse iteration on its complex
/// form, mapped back to `ℍⁿ` and normalized.
pub fn null_vector(a: &QMatrix, lambda: Quaternion) -> Certificate {
    let n = a.dim();
    let m = shifted_complex_form(&a.complex_form(), n, lambda);
    let lu = m.lu();
    let mut x: Vec<Complex64> = (0..2 * n).map(|i| Complex64::new(1.0, 0.1 * (i + 1) as f64)).collect();
    for _ in 0..4 {
        x = lu.solve(&x);
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            break;
        }
        x.iter_mut().for_each(|z| *z /= norm);
    }
    let v: Vec<Quaternion> = (0..n).map(|i| Quaternion::from_complex_parts(x[i], x[i + n])).collect();
    let residual = (0..n)
        .map(|i| {
            let av: Quaternion = (0..n).map(|j| a[(i, j)] * v[j]).fold(Quaternion::ZERO, |s, t| s + t);
            (av - lambda * v[i]).norm_sqr()
        })
        .sum::<f64>()
        .sqrt();
    let vnorm = v.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt();
    Certificate { vector: v, residual: if vnorm > 0.0 { residual / vnorm } else { f64::INFINITY } }
}
