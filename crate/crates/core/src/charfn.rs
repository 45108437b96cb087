//! Characteristic functions for left eigenvalues of 2×2 and 3×3 matrices.
//!
//! A characteristic function of `A` is a map `μ: ℍ → ℍ` with
//! `κ·‖μ(λ)‖ = sdet(A − λId)` for a constant `κ`, so its zeros are exactly
//! the left eigenvalues. The constructions below eliminate from the top right
//! corner:
//!
//! ```text
//! 2×2  [[a, b], [c, d]]                3×3  [[a, b, c], [f, g, h], [p, q, r]]
//! ```
//!
//! For a 3×3 matrix with `c ≠ 0` the function is rational in `λ` with a single
//! pole `λ₀ = g − hc⁻¹b`, where a dedicated formula takes over. The function
//! is discontinuous there, so the switch is a hard one.
//!
//! Entry tests (`c = 0`, `b = 0`, ...) are exact: a zero entry means a
//! structural zero of the input, not a small number.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ncexpr::NcExpr;
use crate::qmatrix::QMatrix;
use crate::quaternion::Quaternion;

/// Relative distance to the pole below which the pole formula is used.
pub const POLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CharFnKind {
    /// `c − (d−λ)b⁻¹(a−λ)`, or `(d−λ)(a−λ)` when `b = 0`.
    Poly2x2,
    /// `b − (a−λ)c⁻¹(d−λ)`, needs `c ≠ 0`.
    Wood2x2,
    /// `(r−λ)(g−λ)(a−λ)` for `b = c = h = 0`.
    Triangular3,
    /// `(q − (r−λ)h⁻¹(g−λ))(a−λ)` for `b = c = 0`, `h ≠ 0`.
    ColB0,
    /// Polynomial forms for `c = 0`, `b ≠ 0`.
    CZeroReduced,
    /// Rational form with a pole, `c ≠ 0`.
    Generic3x3,
}

#[derive(Debug, Clone)]
pub struct CharFn {
    pub kind: CharFnKind,
    pub generic_expr: NcExpr,
    pub pole: Option<Quaternion>,
    pub pole_expr: Option<NcExpr>,
    /// `κ` with `κ·‖μ(λ)‖ = sdet(A − λId)`.
    pub norm_constant: f64,
}

impl CharFn {
    /// Whether `λ` falls on the pole under the tolerance
    /// `‖λ − λ₀‖ ≤ 1e-9·(1 + ‖λ₀‖)`.
    pub fn at_pole(&self, lambda: Quaternion) -> bool {
        self.pole.is_some_and(|p| (lambda - p).norm() <= POLE_TOL * (1.0 + p.norm()))
    }

    /// Evaluates `μ(λ)`; on the pole the dedicated formula is used.
    pub fn eval(&self, lambda: Quaternion) -> Quaternion {
        self.eval_with_pole_tol(lambda, POLE_TOL)
    }

    /// As [`CharFn::eval`] with the relative pole tolerance `tol`.
    pub fn eval_with_pole_tol(&self, lambda: Quaternion, tol: f64) -> Quaternion {
        if let (Some(pole), Some(pole_expr)) = (self.pole, &self.pole_expr) {
            if (lambda - pole).norm() <= tol * (1.0 + pole.norm()) {
                return pole_expr.eval(pole).expect("pole formula is a polynomial");
            }
        }
        self.generic_expr
            .eval(lambda)
            .expect("generic formula is regular away from the pole")
    }

    /// `μ(λ)` normalized so that its norm equals `sdet(A − λId)`.
    pub fn scaled_norm(&self, lambda: Quaternion) -> f64 {
        self.norm_constant * self.eval(lambda).norm()
    }

    /// Values of the generic formula at `λ₀ + εq` for each `ε` in `steps`.
    pub fn directional_pole_limit(&self, direction: Quaternion, steps: &[f64]) -> Result<Vec<Quaternion>> {
        let pole = self.pole.ok_or_else(|| Error::Unsupported("characteristic function has no pole".into()))?;
        if direction.is_zero() {
            return Err(Error::Invalid("direction must be nonzero".into()));
        }
        steps.iter().map(|&eps| self.generic_expr.eval(pole + direction * eps)).collect()
    }
}

/// Closed form of `lim_{ε→0} μ(λ₀ + εq) = −q·q₀·q⁻¹·f₀` for a 3×3 matrix
/// with `c ≠ 0`. It depends on the direction `q`, so `μ` has no limit at
/// the pole.
pub fn directional_limit(m: &QMatrix, direction: Quaternion) -> Result<Quaternion> {
    let (q0, f0) = Entries3::of(m)?.pole_factors()?;
    let q_inv = direction.inv().map_err(|_| Error::Invalid("direction must be nonzero".into()))?;
    Ok(-(direction * q0 * q_inv * f0))
}

struct Entries2 {
    a: Quaternion,
    b: Quaternion,
    c: Quaternion,
    d: Quaternion,
}

impl Entries2 {
    fn of(m: &QMatrix) -> Result<Self> {
        if m.dim() != 2 {
            return Err(Error::DimensionMismatch { left: 2, right: m.dim() });
        }
        Ok(Self { a: m[(0, 0)], b: m[(0, 1)], c: m[(1, 0)], d: m[(1, 1)] })
    }
}

/// Entries of a 3×3 matrix `[[a, b, c], [f, g, h], [p, q, r]]`.
#[derive(Debug, Clone, Copy)]
pub struct Entries3 {
    pub a: Quaternion,
    pub b: Quaternion,
    pub c: Quaternion,
    pub f: Quaternion,
    pub g: Quaternion,
    pub h: Quaternion,
    pub p: Quaternion,
    pub q: Quaternion,
    pub r: Quaternion,
}

impl Entries3 {
    pub fn of(m: &QMatrix) -> Result<Self> {
        if m.dim() != 3 {
            return Err(Error::DimensionMismatch { left: 3, right: m.dim() });
        }
        Ok(Self {
            a: m[(0, 0)],
            b: m[(0, 1)],
            c: m[(0, 2)],
            f: m[(1, 0)],
            g: m[(1, 1)],
            h: m[(1, 2)],
            p: m[(2, 0)],
            q: m[(2, 1)],
            r: m[(2, 2)],
        })
    }

    fn c_inv(&self) -> Result<Quaternion> {
        self.c.inv().map_err(|_| Error::RequiresNonzeroEntry("c = A[1,3]"))
    }

    /// `λ₀ = g − hc⁻¹b`.
    pub fn pole(&self) -> Result<Quaternion> {
        Ok(self.g - self.h * self.c_inv()? * self.b)
    }

    /// `(q₀, f₀)` with `q₀ = q − (r−λ₀)c⁻¹b` and `f₀ = f − hc⁻¹(a−λ₀)`.
    pub fn pole_factors(&self) -> Result<(Quaternion, Quaternion)> {
        let ci = self.c_inv()?;
        let l0 = self.pole()?;
        Ok((self.q - (self.r - l0) * ci * self.b, self.f - self.h * ci * (self.a - l0)))
    }
}

fn k(q: Quaternion) -> NcExpr {
    NcExpr::constant(q)
}

fn lin(q: Quaternion) -> NcExpr {
    NcExpr::linear(q)
}

/// Characteristic function of a 2×2 matrix built from the top right entry.
pub fn charfn_2x2(m: &QMatrix) -> Result<CharFn> {
    let Entries2 { a, b, c, d } = Entries2::of(m)?;
    let (generic_expr, norm_constant) = match b.inv() {
        Ok(b_inv) => (k(c) - lin(d) * k(b_inv) * lin(a), b.norm()),
        Err(_) => (lin(d) * lin(a), 1.0),
    };
    Ok(CharFn { kind: CharFnKind::Poly2x2, generic_expr, pole: None, pole_expr: None, norm_constant })
}

/// Wood's form `b − (a−λ)c⁻¹(d−λ)`, built from the bottom left entry.
pub fn wood_charfn_2x2(m: &QMatrix) -> Result<CharFn> {
    let Entries2 { a, b, c, d } = Entries2::of(m)?;
    let c_inv = c.inv().map_err(|_| Error::RequiresNonzeroEntry("c = A[2,1]"))?;
    Ok(CharFn {
        kind: CharFnKind::Wood2x2,
        generic_expr: k(b) - lin(a) * k(c_inv) * lin(d),
        pole: None,
        pole_expr: None,
        norm_constant: c.norm(),
    })
}

/// The pole `g − hc⁻¹b` of a 3×3 matrix with `c ≠ 0`.
pub fn pole(m: &QMatrix) -> Result<Quaternion> {
    Entries3::of(m)?.pole()
}

pub fn charfn_3x3(m: &QMatrix) -> Result<CharFn> {
    let e = Entries3::of(m)?;
    let Entries3 { a, b, c, f, g, h, p, q, r } = e;
    if !c.is_zero() {
        let ci = e.c_inv()?;
        let l0 = e.pole()?;
        let first = k(p) - lin(r) * k(ci) * lin(a);
        let q_term = k(q) - lin(r) * k(ci * b);
        let f_term = k(f) - k(h * ci) * lin(a);
        let generic_expr = lin(l0) * (first - q_term.clone() * lin(l0).inv() * f_term.clone());
        return Ok(CharFn {
            kind: CharFnKind::Generic3x3,
            generic_expr,
            pole: Some(l0),
            pole_expr: Some(q_term * f_term),
            norm_constant: c.norm(),
        });
    }
    let (kind, generic_expr, norm_constant) = match (b.inv().ok(), h.inv().ok()) {
        (None, None) => (CharFnKind::Triangular3, lin(r) * lin(g) * lin(a), 1.0),
        (None, Some(hi)) => (CharFnKind::ColB0, (k(q) - lin(r) * k(hi) * lin(g)) * lin(a), h.norm()),
        (Some(bi), Some(hi)) => {
            let inner = k(f) - lin(g) * k(bi) * lin(a);
            let expr = k(p) - k(q * bi) * lin(a) - lin(r) * k(hi) * inner;
            (CharFnKind::CZeroReduced, expr, b.norm() * h.norm())
        }
        (Some(bi), None) => {
            let expr = lin(r) * (k(f) - lin(g) * k(bi) * lin(a));
            (CharFnKind::CZeroReduced, expr, b.norm())
        }
    };
    Ok(CharFn { kind, generic_expr, pole: None, pole_expr: None, norm_constant })
}

/// Dispatches on the dimension; only `n ∈ {2, 3}` is supported.
pub fn charfn(m: &QMatrix) -> Result<CharFn> {
    match m.dim() {
        2 => charfn_2x2(m),
        3 => charfn_3x3(m),
        n => Err(Error::Unsupported(format!("characteristic functions are built for n = 2 or 3, not n = {n}"))),
    }
}

/// Matrix extension of the 3×3 rational characteristic function of `a`
/// (`c ≠ 0`), evaluated at `b`: `q₀f₀·Id` when `λ₀Id − B` is singular,
/// otherwise the generic formula with `λ ↦ B` and `(λ₀Id − B)⁻¹` in the
/// middle factor.
pub fn hc_extension_eval(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    if b.dim() != 3 {
        return Err(Error::DimensionMismatch { left: 3, right: b.dim() });
    }
    let cf = charfn_3x3(a)?;
    let (Some(l0), CharFnKind::Generic3x3) = (cf.pole, cf.kind) else {
        return Err(Error::RequiresNonzeroEntry("c = A[1,3]"));
    };
    if b.shifted_neg(l0).is_singular() {
        let (q0, f0) = Entries3::of(a)?.pole_factors()?;
        return Ok(QMatrix::scalar(q0 * f0, 3));
    }
    cf.generic_expr.eval_matrix(b)
}

/// Max entry norm of `μ(A)` for the characteristic function of `A`
/// extended to matrix arguments.
pub fn hc_residual(m: &QMatrix) -> Result<f64> {
    let value = match m.dim() {
        2 => charfn_2x2(m)?.generic_expr.eval_matrix(m)?,
        3 => {
            let cf = charfn_3x3(m)?;
            if cf.kind == CharFnKind::Generic3x3 {
                hc_extension_eval(m, m)?
            } else {
                cf.generic_expr.eval_matrix(m)?
            }
        }
        n => return Err(Error::Unsupported(format!("Hamilton-Cayley check needs n = 2 or 3, not n = {n}"))),
    };
    Ok(value.max_entry_norm())
}

/// The factors behind the 3×3 rational Hamilton–Cayley identity
/// `P = Q (λ₀Id − A)⁻¹ F`.
#[derive(Debug, Clone)]
pub struct HcFactors {
    pub pole: Quaternion,
    /// `P = pId − (rId − A)c⁻¹(aId − A)`
    pub first: QMatrix,
    /// `Q = qId − (rId − A)c⁻¹b`
    pub q_factor: QMatrix,
    /// `F = fId − hc⁻¹(aId − A)`
    pub f_factor: QMatrix,
    /// `(λ₀Id − A)⁻¹`
    pub resolvent: QMatrix,
}

impl HcFactors {
    /// Max entry norm of `P − Q (λ₀Id − A)⁻¹ F`.
    pub fn residual(&self) -> f64 {
        let rhs = &(&self.q_factor * &self.resolvent) * &self.f_factor;
        self.first.max_abs_diff(&rhs)
    }
}

pub fn hc_factors(m: &QMatrix) -> Result<HcFactors> {
    let e = Entries3::of(m)?;
    let ci = e.c_inv()?;
    let l0 = e.pole()?;
    let n = 3;
    let r_minus = m.shifted_neg(e.r);
    let a_minus = m.shifted_neg(e.a);
    let first = &QMatrix::scalar(e.p, n) - &(&r_minus.right_scale(ci) * &a_minus);
    let q_factor = &QMatrix::scalar(e.q, n) - &r_minus.right_scale(ci * e.b);
    let f_factor = &QMatrix::scalar(e.f, n) - &a_minus.left_scale(e.h * ci);
    let resolvent = m.shifted_neg(l0).inverse()?;
    Ok(HcFactors { pole: l0, first, q_factor, f_factor, resolvent })
}
