//! Noncommutative expressions in one variable `λ` with quaternion constants.
//!
//! Trees are immutable and never simplified: what is built is exactly what is
//! evaluated, factor order included. Evaluation works at a quaternion point
//! or at a matrix argument, where constants become `q·Id` and inverses become
//! matrix inverses.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qmatrix::{Permutation, QMatrix};
use crate::quaternion::Quaternion;

#[derive(Debug, Clone, PartialEq)]
pub enum NcExpr {
    Const(Quaternion),
    Var,
    Add(Arc<NcExpr>, Arc<NcExpr>),
    Mul(Arc<NcExpr>, Arc<NcExpr>),
    Inv(Arc<NcExpr>),
}

impl NcExpr {
    pub fn constant(q: impl Into<Quaternion>) -> Self {
        NcExpr::Const(q.into())
    }

    pub fn var() -> Self {
        NcExpr::Var
    }

    pub fn inv(self) -> Self {
        NcExpr::Inv(Arc::new(self))
    }

    /// The linear factor `q − λ`.
    pub fn linear(q: Quaternion) -> Self {
        NcExpr::constant(q) - NcExpr::Var
    }

    /// `q·self`
    pub fn left_mul(self, q: Quaternion) -> Self {
        NcExpr::constant(q) * self
    }

    /// `self·q`
    pub fn right_mul(self, q: Quaternion) -> Self {
        self * NcExpr::constant(q)
    }

    pub fn has_inverse(&self) -> bool {
        match self {
            NcExpr::Const(_) | NcExpr::Var => false,
            NcExpr::Add(a, b) | NcExpr::Mul(a, b) => a.has_inverse() || b.has_inverse(),
            NcExpr::Inv(_) => true,
        }
    }

    /// Evaluates at a quaternion point. An `Inv` node whose child vanishes
    /// yields `SingularAt(λ)`.
    pub fn eval(&self, lambda: Quaternion) -> Result<Quaternion> {
        Ok(match self {
            NcExpr::Const(q) => *q,
            NcExpr::Var => lambda,
            NcExpr::Add(a, b) => a.eval(lambda)? + b.eval(lambda)?,
            NcExpr::Mul(a, b) => a.eval(lambda)? * b.eval(lambda)?,
            NcExpr::Inv(a) => a.eval(lambda)?.inv().map_err(|_| Error::SingularAt(lambda))?,
        })
    }

    /// Evaluates at a matrix argument `B`: `λ ↦ B`, `q ↦ q·Id`,
    /// inverses are matrix inverses. A singular inverted subexpression
    /// yields `SingularMatrixAt`.
    pub fn eval_matrix(&self, b: &QMatrix) -> Result<QMatrix> {
        Ok(match self.eval_matrix_inner(b)? {
            MatVal::Scalar(q) => QMatrix::scalar(q, b.dim()),
            MatVal::Full(m) => m,
        })
    }

    // Constant subtrees stay scalar so that `q·M` is a left scaling and
    // inverted constants never touch the complex form.
    fn eval_matrix_inner(&self, b: &QMatrix) -> Result<MatVal> {
        use MatVal::*;
        Ok(match self {
            NcExpr::Const(q) => Scalar(*q),
            NcExpr::Var => Full(b.clone()),
            NcExpr::Add(l, r) => match (l.eval_matrix_inner(b)?, r.eval_matrix_inner(b)?) {
                (Scalar(p), Scalar(q)) => Scalar(p + q),
                (Scalar(p), Full(m)) => Full(&QMatrix::scalar(p, b.dim()) + &m),
                (Full(m), Scalar(q)) => Full(&m + &QMatrix::scalar(q, b.dim())),
                (Full(m1), Full(m2)) => Full(&m1 + &m2),
            },
            NcExpr::Mul(l, r) => match (l.eval_matrix_inner(b)?, r.eval_matrix_inner(b)?) {
                (Scalar(p), Scalar(q)) => Scalar(p * q),
                (Scalar(p), Full(m)) => Full(m.left_scale(p)),
                (Full(m), Scalar(q)) => Full(m.right_scale(q)),
                (Full(m1), Full(m2)) => Full(&m1 * &m2),
            },
            NcExpr::Inv(a) => match a.eval_matrix_inner(b)? {
                Scalar(q) => Scalar(q.inv().map_err(|_| Error::SingularMatrixAt)?),
                Full(m) => Full(m.inverse().map_err(|_| Error::SingularMatrixAt)?),
            },
        })
    }
}

enum MatVal {
    Scalar(Quaternion),
    Full(QMatrix),
}

/// Max entry norm of `e(PAP⁻¹) − P·e(A)·P⁻¹` for the permutation matrix `P`.
/// For a real similarity this is zero up to rounding.
pub fn similarity_transfer_residual(e: &NcExpr, a: &QMatrix, perm: &Permutation) -> Result<f64> {
    let p = perm.matrix();
    let p_inv = p.transpose();
    let similar = a.perm_similar(perm)?;
    let lhs = e.eval_matrix(&similar)?;
    let rhs = &(&p * &e.eval_matrix(a)?) * &p_inv;
    Ok(lhs.max_abs_diff(&rhs))
}

impl From<Quaternion> for NcExpr {
    fn from(q: Quaternion) -> Self {
        NcExpr::Const(q)
    }
}

impl Add for NcExpr {
    type Output = NcExpr;
    fn add(self, rhs: NcExpr) -> NcExpr {
        NcExpr::Add(Arc::new(self), Arc::new(rhs))
    }
}

/// `a − b` is stored as `a + (−1)·b`.
impl Sub for NcExpr {
    type Output = NcExpr;
    fn sub(self, rhs: NcExpr) -> NcExpr {
        self + (-rhs)
    }
}

impl Neg for NcExpr {
    type Output = NcExpr;
    fn neg(self) -> NcExpr {
        NcExpr::Mul(Arc::new(NcExpr::Const(-Quaternion::ONE)), Arc::new(self))
    }
}

impl Mul for NcExpr {
    type Output = NcExpr;
    fn mul(self, rhs: NcExpr) -> NcExpr {
        NcExpr::Mul(Arc::new(self), Arc::new(rhs))
    }
}

/// Prefix form: `const(q)`, `var`, `add(a,b)`, `mul(a,b)`, `inv(a)`.
impl fmt::Display for NcExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NcExpr::Const(q) => write!(f, "const({q})"),
            NcExpr::Var => f.write_str("var"),
            NcExpr::Add(a, b) => write!(f, "add({a},{b})"),
            NcExpr::Mul(a, b) => write!(f, "mul({a},{b})"),
            NcExpr::Inv(a) => write!(f, "inv({a})"),
        }
    }
}
