//! Dense square complex matrices with an LU factorization (partial pivoting).

use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    m: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(m: usize) -> Self {
        Self { m, data: vec![Complex64::new(0.0, 0.0); m * m] }
    }

    pub fn identity(m: usize) -> Self {
        let mut out = Self::zeros(m);
        for i in 0..m {
            out[(i, i)] = Complex64::new(1.0, 0.0);
        }
        out
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                data.push(f(i, j));
            }
        }
        Self { m, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.m).map(|i| self[(i, i)]).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// LU factorization `PA = LU` with partial pivoting.
    pub fn lu(&self) -> Lu {
        let m = self.m;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..m).collect();
        let mut sign = 1.0;
        for col in 0..m {
            let pivot = (col..m)
                .max_by(|&r1, &r2| a[r1 * m + col].norm().total_cmp(&a[r2 * m + col].norm()))
                .unwrap();
            if pivot != col {
                for j in 0..m {
                    a.swap(col * m + j, pivot * m + j);
                }
                perm.swap(col, pivot);
                sign = -sign;
            }
            let p = a[col * m + col];
            if p.norm() == 0.0 {
                continue;
            }
            for r in col + 1..m {
                let factor = a[r * m + col] / p;
                a[r * m + col] = factor;
                for j in col + 1..m {
                    let u = a[col * m + j];
                    a[r * m + j] -= factor * u;
                }
            }
        }
        Lu { m, lu: a, perm, sign }
    }

    pub fn det(&self) -> Complex64 {
        self.lu().det()
    }

    /// Inverse, or `None` when a pivot vanishes exactly.
    pub fn inverse(&self) -> Option<CMatrix> {
        let lu = self.lu();
        if lu.min_pivot() == 0.0 {
            return None;
        }
        let m = self.m;
        let mut out = CMatrix::zeros(m);
        let mut e = vec![Complex64::new(0.0, 0.0); m];
        for col in 0..m {
            e.iter_mut().for_each(|v| *v = Complex64::new(0.0, 0.0));
            e[col] = Complex64::new(1.0, 0.0);
            let x = lu.solve(&e);
            for row in 0..m {
                out[(row, col)] = x[row];
            }
        }
        Some(out)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        (0..self.m).map(|i| (0..self.m).map(|j| self[(i, j)] * v[j]).sum()).collect()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.m + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.m + j]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.m, rhs.m, "complex matrix dimensions differ");
        let m = self.m;
        let mut out = CMatrix::zeros(m);
        for i in 0..m {
            for k in 0..m {
                let a = self[(i, k)];
                for j in 0..m {
                    out.data[i * m + j] += a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

/// Packed LU factors of a square complex matrix.
#[derive(Debug, Clone)]
pub struct Lu {
    m: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    sign: f64,
}

impl Lu {
    pub fn det(&self) -> Complex64 {
        (0..self.m).fold(Complex64::new(self.sign, 0.0), |acc, i| acc * self.lu[i * self.m + i])
    }

    pub fn min_pivot(&self) -> f64 {
        (0..self.m).map(|i| self.lu[i * self.m + i].norm()).fold(f64::INFINITY, f64::min)
    }

    /// Solves `Ax = b`. Exactly zero pivots are replaced by a tiny value so
    /// the solve stays finite; inverse iteration relies on this.
    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let m = self.m;
        let floor = f64::EPSILON * self.lu.iter().map(|z| z.norm()).fold(f64::MIN_POSITIVE, f64::max);
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..m {
            for j in 0..i {
                let l = self.lu[i * m + j];
                x[i] = x[i] - l * x[j];
            }
        }
        for i in (0..m).rev() {
            for j in i + 1..m {
                let u = self.lu[i * m + j];
                x[i] = x[i] - u * x[j];
            }
            let mut d = self.lu[i * m + i];
            if d.norm() < floor {
                d = Complex64::new(floor, 0.0);
            }
            x[i] /= d;
        }
        x
    }
}
