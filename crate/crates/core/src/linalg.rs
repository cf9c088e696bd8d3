//! Small dense matrices.
//!
//! The whole toolkit lives in dimensions 2, 4 and n ≤ 4ish, so everything is
//! hand-rolled: fixed-size `SMat<N>` for the plane and the pointer⊗beam space,
//! and a heap-backed `DMat` for SO(n).  No BLAS, no allocation in the hot
//! fixed-size paths.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

/// Square matrix with a compile-time dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SMat<const N: usize>(pub [[f64; N]; N]);

pub type Mat2 = SMat<2>;
pub type Mat4 = SMat<4>;

impl<const N: usize> SMat<N> {
    pub const fn zero() -> Self {
        SMat([[0.0; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = 1.0;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero();
        for i in 0..N {
            for j in 0..N {
                t.0[i][j] = self.0[j][i];
            }
        }
        t
    }

    pub fn trace(&self) -> f64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut m = *self;
        for row in m.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= s;
            }
        }
        m
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .fold(0.0f64, |acc, x| acc.max(x.abs()))
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Matrix exponential by scaling-and-squaring on a plain Taylor series.
    ///
    /// For the operator norms that occur here (rotation generators, bounded
    /// effects) the scaled series converges to machine precision in well under
    /// 20 terms.
    pub fn expm(&self) -> Self {
        let norm = self.max_abs() * N as f64;
        let squarings = if norm > 0.5 {
            (norm / 0.5).log2().ceil() as u32
        } else {
            0
        };
        let scaled = self.scale(0.5f64.powi(squarings as i32));

        let mut result = Self::identity();
        let mut term = Self::identity();
        for k in 1..=24 {
            term = (term * scaled).scale(1.0 / k as f64);
            result = result + term;
            if term.max_abs() < 1e-300 {
                break;
            }
        }
        for _ in 0..squarings {
            result = result * result;
        }
        result
    }
}

impl<const N: usize> Add for SMat<N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] += rhs.0[i][j];
            }
        }
        m
    }
}

impl<const N: usize> Sub for SMat<N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let mut m = self;
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] -= rhs.0[i][j];
            }
        }
        m
    }
}

impl<const N: usize> Neg for SMat<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for SMat<N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl<const N: usize> Index<(usize, usize)> for SMat<N> {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for SMat<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

/// Heap-backed square matrix for the SO(n) machinery.
#[derive(Debug, Clone, PartialEq)]
pub struct DMat {
    n: usize,
    data: Vec<f64>,
}

impl DMat {
    pub fn zeros(n: usize) -> Self {
        DMat {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(i, j)] = self[(j, i)];
            }
        }
        t
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        DMat {
            n: self.n,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        DMat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        DMat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// In-place `self += s * other`; the accumulation primitive of every
    /// quadrature loop.
    pub fn add_scaled(&mut self, s: f64, other: &Self) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    m[(i, j)] += a * other[(k, j)];
                }
            }
        }
        m
    }

    /// `self * diag(d) * selfᵀ` without forming intermediates.
    pub fn conjugate_diagonal(&self, diag: &[f64]) -> Self {
        assert_eq!(self.n, diag.len());
        let n = self.n;
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut acc = 0.0;
                for (l, d) in diag.iter().enumerate() {
                    acc += self[(i, l)] * d * self[(j, l)];
                }
                m[(i, j)] = acc;
                m[(j, i)] = acc;
            }
        }
        m
    }

    /// Right-multiply in place by the rotation of angle `phi` in the
    /// `(k, k+1)` plane, `k` zero-based.  O(n) instead of a full matmul.
    pub fn rotate_columns(&mut self, k: usize, phi: f64) {
        let (c, s) = (phi.cos(), phi.sin());
        let n = self.n;
        for i in 0..n {
            let a = self.data[i * n + k];
            let b = self.data[i * n + k + 1];
            self.data[i * n + k] = c * a + s * b;
            self.data[i * n + k + 1] = -s * a + c * b;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |acc, x| acc.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).max_abs()
    }

    /// Largest |m_ij − m_ji|.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// ‖MᵀM − I‖_max.
    pub fn orthogonality_residual(&self) -> f64 {
        self.transpose()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.n))
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> f64 {
        let n = self.n;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let mut pivot = col;
            for row in (col + 1)..n {
                if a[row * n + col].abs() > a[pivot * n + col].abs() {
                    pivot = row;
                }
            }
            if a[pivot * n + col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for row in (col + 1)..n {
                let f = a[row * n + col] / p;
                for j in col..n {
                    a[row * n + j] -= f * a[col * n + j];
                }
            }
        }
        det
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, sorted
    /// ascending.  Good to near machine precision for the tiny dimensions
    /// used here; serves as the generic eigensolver oracle in tests.
    pub fn symmetric_eigenvalues(&self) -> Vec<f64> {
        let n = self.n;
        let mut a = self.clone();
        for _sweep in 0..64 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in (i + 1)..n {
                    off = off.max(a[(i, j)].abs());
                }
            }
            if off < 1e-15 * (1.0 + a.max_abs()) {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    if apq.abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut eig: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
        eig.sort_by(|x, y| x.partial_cmp(y).unwrap());
        eig
    }
}

impl Index<(usize, usize)> for DMat {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for DMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}
