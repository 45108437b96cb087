//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

use quatchar::{QMatrix, Quaternion};
use rand::Rng;

pub fn q(s: &str) -> Quaternion {
    s.parse().unwrap()
}

pub fn rand_quat(rng: &mut impl Rng) -> Quaternion {
    Quaternion::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

pub fn rand_matrix(rng: &mut impl Rng, n: usize) -> QMatrix {
    QMatrix::from_fn(n, |_, _| rand_quat(rng))
}

/// Random matrix with the listed (zero-based) entries forced to zero.
pub fn rand_matrix_with_zeros(rng: &mut impl Rng, n: usize, zeros: &[(usize, usize)]) -> QMatrix {
    QMatrix::from_fn(n, |i, j| if zeros.contains(&(i, j)) { Quaternion::ZERO } else { rand_quat(rng) })
}

pub fn rand_real_matrix(rng: &mut impl Rng, n: usize) -> QMatrix {
    QMatrix::from_fn(n, |_, _| Quaternion::real(rng.gen_range(-2.0..2.0)))
}

/// `|x − y| ≤ tol·max(|x|, |y|)`.
pub fn rel_close(x: f64, y: f64, tol: f64) -> bool {
    (x - y).abs() <= tol * x.abs().max(y.abs())
}

/// 4×4 real matrix of `v ↦ qv` in the basis 1, i, j, k.
fn left_mult(q: Quaternion) -> [[f64; 4]; 4] {
    let [a, b, c, d] = q.to_array();
    [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
}

/// The 4n×4n real matrix of `v ↦ Av` on `ℍⁿ = ℝ⁴ⁿ`.
pub fn real_rep(a: &QMatrix) -> Vec<Vec<f64>> {
    let n = a.dim();
    let mut out = vec![vec![0.0; 4 * n]; 4 * n];
    for i in 0..n {
        for j in 0..n {
            let block = left_mult(a[(i, j)]);
            for (r, row) in block.iter().enumerate() {
                for (s, v) in row.iter().enumerate() {
                    out[4 * i + r][4 * j + s] = *v;
                }
            }
        }
    }
    out
}

/// Real determinant by Gaussian elimination with partial pivoting.
pub fn real_det(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for col in 0..n {
        let p = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
        if m[p][col] == 0.0 {
            return 0.0;
        }
        if p != col {
            m.swap(p, col);
            det = -det;
        }
        det *= m[col][col];
        let pivot_row = m[col].clone();
        for row in m.iter_mut().skip(col + 1) {
            let f = row[col] / pivot_row[col];
            for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *x -= f * p;
            }
        }
    }
    det
}

/// `sdet(A)` from `det L(A) = sdet(A)⁴`, `L` the real representation.
pub fn sdet_oracle(a: &QMatrix) -> f64 {
    real_det(real_rep(a)).abs().powf(0.25)
}

/// Zeroes the top-left `m × (n − m)` block of `full`, giving `[[0, M], [N, C]]`
/// with `M` of size m and `N` of size n − m. Returns the matrix, `M` and `N`.
pub fn box_matrix(full: &QMatrix, m: usize) -> (QMatrix, QMatrix, QMatrix) {
    let n = full.dim();
    let k = n - m;
    let boxed = QMatrix::from_fn(n, |i, j| if i < m && j < k { Quaternion::ZERO } else { full[(i, j)] });
    let top = QMatrix::from_fn(m, |i, j| full[(i, k + j)]);
    let bottom = QMatrix::from_fn(k, |i, j| full[(m + i, j)]);
    (boxed, top, bottom)
}

/// `σ(x, y) = 1 + (x₁² + x₂² + y₁² + y₂²)² − 4x₂y₁` for `[[0, i], [j, 0]]`.
pub fn sigma_closed_form(x1: f64, x2: f64, y1: f64, y2: f64) -> f64 {
    1.0 + (x1 * x1 + x2 * x2 + y1 * y1 + y2 * y2).powi(2) - 4.0 * x2 * y1
}

pub fn sec5_matrix() -> QMatrix {
    QMatrix::parse_rows(&[["0", "i", "1"], ["3i-k", "0", "1"], ["k", "-1+j+k", "0"]]).unwrap()
}

pub fn sec63_matrix() -> QMatrix {
    QMatrix::parse_rows(&[["1", "i", "-j"], ["i", "-1", "k"], ["1", "-1", "j"]]).unwrap()
}

pub fn ex63_matrix() -> QMatrix {
    QMatrix::parse_rows(&[["1", "i", "i"], ["i", "j", "k"], ["0", "-1", "j"]]).unwrap()
}

/// `−AiA² + AiAj + AkA + iA² − iAj + A(i+j) − (i+k)A + (k−j)Id`.
pub fn ex63_identity(a: &QMatrix) -> QMatrix {
    let (i, j, k) = (Quaternion::I, Quaternion::J, Quaternion::K);
    let a2 = a * a;
    let terms = [
        -&(a * &a2.left_scale(i)),
        (a * &a.left_scale(i)).right_scale(j),
        a * &a.left_scale(k),
        a2.left_scale(i),
        a.left_scale(i).right_scale(j),
        a.right_scale(i + j),
        -&a.left_scale(i + k),
        QMatrix::scalar(k - j, 3),
    ];
    let signs = [1.0, 1.0, 1.0, 1.0, -1.0, 1.0, 1.0, 1.0];
    terms.iter().zip(signs).fold(QMatrix::zeros(3), |acc, (t, s)| &acc + &t.left_scale(Quaternion::real(s)))
}
