//! Square quaternionic matrices acting on the right vector space `ℍⁿ`.
//!
//! A matrix `A = X + jY` with complex `X, Y` is represented by its complex
//! form `c(A) = [[X, −Ȳ], [Y, X̄]]`, a ring homomorphism into `2n×2n` complex
//! matrices. Study's determinant is `sdet(A) = (det c(A))^{1/2}`; inversion
//! also goes through the complex form.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cmatrix::CMatrix;
use crate::error::{Error, Result};
use crate::quaternion::Quaternion;

#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    n: usize,
    entries: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        Self { n, entries: vec![Quaternion::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(Quaternion::ONE, n)
    }

    /// `q·Id`.
    pub fn scalar(q: Quaternion, n: usize) -> Self {
        let mut out = Self::zeros(n);
        for i in 0..n {
            out[(i, i)] = q;
        }
        out
    }

    pub fn diagonal(diag: &[Quaternion]) -> Self {
        let mut out = Self::zeros(diag.len());
        for (i, &q) in diag.iter().enumerate() {
            out[(i, i)] = q;
        }
        out
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = f(i, j);
            }
        }
        out
    }

    pub fn from_rows(rows: Vec<Vec<Quaternion>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Invalid("matrix must have at least one row".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { left: n, right: row.len() });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    /// Builds a matrix from rows of text quaternions, e.g. `[["0", "i"], ["j", "0"]]`.
    pub fn parse_rows<R: AsRef<[&'static str]>>(rows: &[R]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|s| s.parse()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Quaternion>> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn max_entry_norm(&self) -> f64 {
        self.entries.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// `(1 + max entry norm)ⁿ`, the magnitude scale used by every
    /// scale-aware threshold in the crate.
    pub fn scale(&self) -> f64 {
        (1.0 + self.max_entry_norm()).powi(self.n as i32)
    }

    /// Threshold below which `sdet` counts as zero.
    pub fn singular_tol(&self) -> f64 {
        1e-9 * self.scale()
    }

    /// Largest entry norm of `self − other`.
    pub fn max_abs_diff(&self, other: &QMatrix) -> f64 {
        assert_eq!(self.n, other.n);
        self.entries.iter().zip(&other.entries).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max)
    }

    fn check_dim(&self, other: &QMatrix) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.n, right: other.n })
        }
    }

    pub fn try_add(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn try_sub(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_dim(other)?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    pub fn try_mul(&self, other: &QMatrix) -> Result<QMatrix> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = QMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &QMatrix, f: impl Fn(Quaternion, Quaternion) -> Quaternion) -> QMatrix {
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| f(a, b)).collect();
        QMatrix { n: self.n, entries }
    }

    /// `q·A`: every entry multiplied by `q` on the left.
    pub fn left_scale(&self, q: Quaternion) -> QMatrix {
        QMatrix { n: self.n, entries: self.entries.iter().map(|&a| q * a).collect() }
    }

    /// `A·q`: every entry multiplied by `q` on the right.
    pub fn right_scale(&self, q: Quaternion) -> QMatrix {
        QMatrix { n: self.n, entries: self.entries.iter().map(|&a| a * q).collect() }
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn pow(&self, k: u32) -> QMatrix {
        (0..k).fold(QMatrix::identity(self.n), |acc, _| &acc * self)
    }

    /// The complex form `[[X, −Ȳ], [Y, X̄]]` of `A = X + jY`.
    pub fn complex_form(&self) -> CMatrix {
        let n = self.n;
        let mut c = CMatrix::zeros(2 * n);
        for i in 0..n {
            for j in 0..n {
                let (x, y) = self[(i, j)].complex_parts();
                c[(i, j)] = x;
                c[(i, j + n)] = -y.conj();
                c[(i + n, j)] = y;
                c[(i + n, j + n)] = x.conj();
            }
        }
        c
    }

    /// Reads `X` and `Y` back from the left block column of a complex form.
    pub fn from_complex_form(c: &CMatrix) -> Result<QMatrix> {
        if !c.dim().is_multiple_of(2) || c.dim() == 0 {
            return Err(Error::Invalid(format!("complex form must have even positive size, got {}", c.dim())));
        }
        let n = c.dim() / 2;
        Ok(QMatrix::from_fn(n, |i, j| Quaternion::from_complex_parts(c[(i, j)], c[(i + n, j)])))
    }

    /// `det c(A)`, which is real and nonnegative up to rounding.
    pub fn complex_det(&self) -> Complex64 {
        self.complex_form().det()
    }

    /// Study's determinant `(det c(A))^{1/2}`.
    pub fn sdet(&self) -> f64 {
        let det = self.complex_det();
        debug_assert!(
            det.im.abs() <= 1e-8 * det.re.abs().max(self.scale().powi(2)),
            "det c(A) has a large imaginary part: {det}"
        );
        det.norm().sqrt()
    }

    pub fn is_singular(&self) -> bool {
        self.sdet() <= self.singular_tol()
    }

    /// Inverse through the complex form; fails with `Singular` when
    /// `sdet(A)` is below [`QMatrix::singular_tol`].
    pub fn inverse(&self) -> Result<QMatrix> {
        let sdet = self.sdet();
        if sdet <= self.singular_tol() {
            return Err(Error::Singular { sdet });
        }
        let inv = self.complex_form().inverse().ok_or(Error::Singular { sdet })?;
        QMatrix::from_complex_form(&inv)
    }

    /// `P A P⁻¹` for the permutation matrix of `perm`, i.e. entry `(i, j)` of
    /// the result is `A[perm(i), perm(j)]`.
    pub fn perm_similar(&self, perm: &Permutation) -> Result<QMatrix> {
        if perm.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: perm.len() });
        }
        Ok(QMatrix::from_fn(self.n, |i, j| self[(perm[i], perm[j])]))
    }

    /// `λ·Id − A`.
    pub fn shifted_neg(&self, lambda: Quaternion) -> QMatrix {
        &QMatrix::scalar(lambda, self.n) - self
    }

    /// `A − λ·Id`.
    pub fn shifted(&self, lambda: Quaternion) -> QMatrix {
        self - &QMatrix::scalar(lambda, self.n)
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range for {0}x{0}", self.n);
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        assert!(i < self.n && j < self.n, "index ({i}, {j}) out of range for {0}x{0}", self.n);
        &mut self.entries[i * self.n + j]
    }
}

// Operator forms panic on dimension mismatch; use the `try_*` methods for
// fallible arithmetic.
impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, rhs: &QMatrix) -> QMatrix {
        self.try_add(rhs).expect("matrix dimensions differ")
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self.try_sub(rhs).expect("matrix dimensions differ")
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.try_mul(rhs).expect("matrix dimensions differ")
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        QMatrix { n: self.n, entries: self.entries.iter().map(|&q| -q).collect() }
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (r, row) in self.entries.chunks(self.n).enumerate() {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (c, q) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{q}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Permutation of `{0, …, n−1}`, stored as its image list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &p in &images {
            if p >= images.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Invalid(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((0..n).collect())
    }

    /// Transposition of `a` and `b` (zero-based).
    pub fn swap(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        if a >= n || b >= n {
            return Err(Error::Invalid(format!("swap ({a}, {b}) out of range for n = {n}")));
        }
        images.swap(a, b);
        Ok(Self(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Real matrix `P` with `P[i, perm(i)] = 1`, so `P A Pᵀ` is the
    /// permuted matrix and `P⁻¹ = Pᵀ`.
    pub fn matrix(&self) -> QMatrix {
        let mut p = QMatrix::zeros(self.len());
        for (i, &j) in self.0.iter().enumerate() {
            p[(i, j)] = Quaternion::ONE;
        }
        p
    }
}

impl Index<usize> for Permutation {
    type Output = usize;
    fn index(&self, i: usize) -> &usize {
        &self.0[i]
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    entries: Vec<Vec<Quaternion>>,
}

/// JSON form `{"n": <int>, "entries": [[<quat>, ...], ...]}`.
impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixFile { n: self.n, entries: self.rows() }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = MatrixFile::deserialize(deserializer)?;
        if file.n == 0 || file.entries.len() != file.n {
            return Err(serde::de::Error::custom(format!(
                "expected {} rows, found {}",
                file.n,
                file.entries.len()
            )));
        }
        QMatrix::from_rows(file.entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Quaternion {
        s.parse().unwrap()
    }

    #[test]
    fn complex_form_of_scalar() {
        let c = QMatrix::diagonal(&[q("1+2i+3j+4k")]).complex_form();
        let x = Complex64::new(1.0, 2.0);
        let y = Complex64::new(3.0, -4.0);
        assert_eq!(c[(0, 0)], x);
        assert_eq!(c[(0, 1)], -y.conj());
        assert_eq!(c[(1, 0)], y);
        assert_eq!(c[(1, 1)], x.conj());
    }

    #[test]
    fn complex_form_of_identity() {
        assert_eq!(QMatrix::identity(3).complex_form(), CMatrix::identity(6));
    }

    #[test]
    fn complex_form_round_trip() {
        let a = QMatrix::parse_rows(&[["1", "i", "-j"], ["i", "-1", "k"], ["1", "-1", "j"]]).unwrap();
        assert_eq!(QMatrix::from_complex_form(&a.complex_form()).unwrap(), a);
    }

    #[test]
    fn sdet_of_diagonal_is_norm_of_product() {
        let d = [q("1+i"), q("2j-k"), q("0.5+3k")];
        let expect = (d[0] * d[1] * d[2]).norm();
        assert!((QMatrix::diagonal(&d).sdet() - expect).abs() < 1e-12);
        assert!((QMatrix::identity(4).sdet() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sdet_of_antidiagonal() {
        let a = QMatrix::parse_rows(&[["0", "i"], ["j", "0"]]).unwrap();
        assert!((a.sdet() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ring_identities() {
        let a = QMatrix::parse_rows(&[["1", "i", "i"], ["i", "j", "k"], ["0", "-1", "j"]]).unwrap();
        assert_eq!(&a + &QMatrix::zeros(3), a);
        assert_eq!(&a * &QMatrix::identity(3), a);
        assert_eq!(&QMatrix::identity(3) * &a, a);
        assert_eq!(a.left_scale(Quaternion::ONE), a);
        assert_eq!(a.try_mul(&QMatrix::identity(2)), Err(Error::DimensionMismatch { left: 3, right: 2 }));
    }

    #[test]
    fn inverse_of_diagonal() {
        let d = [q("1+i"), q("2j-k"), q("-3")];
        let inv = QMatrix::diagonal(&d).inverse().unwrap();
        let expect = QMatrix::diagonal(&d.map(|x| x.inv().unwrap()));
        assert!(inv.max_abs_diff(&expect) < 1e-15);
        assert_eq!(QMatrix::identity(3).inverse().unwrap(), QMatrix::identity(3));
    }

    #[test]
    fn singular_inverse_fails() {
        let a = QMatrix::parse_rows(&[["1", "i"], ["1", "i"]]).unwrap();
        assert!(matches!(a.inverse(), Err(Error::Singular { .. })));
        let b = QMatrix::parse_rows(&[["1", "i"], ["j", "k"]]).unwrap();
        // j·1 = j and j·i = −k, so the second row is j times the first
        let c = QMatrix::parse_rows(&[["1", "i"], ["j", "-k"]]).unwrap();
        assert!(b.inverse().is_ok());
        assert!(matches!(c.inverse(), Err(Error::Singular { .. })));
    }

    #[test]
    fn permutation_similarity() {
        let a = QMatrix::parse_rows(&[["1", "i", "i"], ["i", "j", "k"], ["0", "-1", "j"]]).unwrap();
        assert_eq!(a.perm_similar(&Permutation::identity(3)).unwrap(), a);
        let swapped = a.perm_similar(&Permutation::swap(3, 1, 2).unwrap()).unwrap();
        let expect = QMatrix::parse_rows(&[["1", "i", "i"], ["0", "j", "-1"], ["i", "k", "j"]]).unwrap();
        assert_eq!(swapped, expect);
        // the real-similar matrix shown for this example reverses the basis
        let reversed = a.perm_similar(&Permutation::swap(3, 0, 2).unwrap()).unwrap();
        let expect = QMatrix::parse_rows(&[["j", "-1", "0"], ["k", "j", "i"], ["i", "i", "1"]]).unwrap();
        assert_eq!(reversed, expect);
        let p = Permutation::swap(3, 0, 2).unwrap().matrix();
        assert_eq!(&(&p * &a) * &p.transpose(), reversed);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3, 1]).is_err());
        assert!(Permutation::new(vec![2, 0, 1]).is_ok());
    }

    #[test]
    fn json_accepts_both_entry_forms() {
        let text = r#"{"n": 2, "entries": [["0", [0, 1, 0, 0]], ["j", "0"]]}"#;
        let a: QMatrix = serde_json::from_str(text).unwrap();
        assert_eq!(a, QMatrix::parse_rows(&[["0", "i"], ["j", "0"]]).unwrap());
        let out = serde_json::to_string(&a).unwrap();
        assert!(out.starts_with(r#"{"n":2,"entries":[[[0.0,0.0,0.0,0.0],[0.0,1.0,0.0,0.0]]"#));
        assert!(serde_json::from_str::<QMatrix>(r#"{"n": 3, "entries": [["0", "1"], ["1", "0"]]}"#).is_err());
        assert!(serde_json::from_str::<QMatrix>(r#"{"n": 2, "entries": [["0"], ["1", "0"]]}"#).is_err());
    }
}
