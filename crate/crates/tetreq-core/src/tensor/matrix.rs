//! Dense square complex matrices, row-major.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::math;
use crate::rng::SplitMix64;

use super::TensorError;

/// Condition-number ceiling for inversion (estimated as
/// `‖A‖_inf · ‖A^-1‖_inf`).
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Clone, PartialEq, Debug)]
pub struct CMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::ONE;
        }
        m
    }

    pub fn from_rows(n: usize, data: Vec<Complex64>) -> Result<Self, TensorError> {
        if data.len() != n * n {
            return Err(TensorError::Shape {
                expected: n * n,
                got: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn random(n: usize, rng: &mut SplitMix64) -> Self {
        let data = (0..n * n).map(|_| rng.next_complex()).collect();
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.data[row * self.n + col] = value;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::ZERO {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        CMatrix { n: self.n, data }
    }

    pub fn sub(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        CMatrix { n: self.n, data }
    }

    pub fn scale(&self, factor: Complex64) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().map(|a| a * factor).collect() }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data
            .iter()
            .map(|z| math::hypot(z.re, z.im))
            .fold(0.0, f64::max)
    }

    /// Largest entry modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        self.sub(other).max_abs()
    }

    pub fn inf_norm(&self) -> f64 {
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        let z = self.data[i * self.n + j];
                        math::hypot(z.re, z.im)
                    })
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (n, m) = (self.n, other.n);
        let mut out = CMatrix::zeros(n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.data[i * n + j];
                if a == Complex64::ZERO {
                    continue;
                }
                for k in 0..m {
                    for l in 0..m {
                        out.data[(i * m + k) * n * m + (j * m + l)] = a * other.data[k * m + l];
                    }
                }
            }
        }
        out
    }

    /// Inverse by LU decomposition with partial pivoting. Fails on an exactly
    /// singular pivot or when the condition estimate exceeds
    /// [`MAX_CONDITION`].
    pub fn inverse(&self) -> Result<CMatrix, TensorError> {
        let n = self.n;
        let mut lu = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for col in 0..n {
            // pivot: largest modulus in this column at or below the diagonal
            let mut best = col;
            let mut best_mag = lu[col * n + col].norm_sqr();
            for row in col + 1..n {
                let mag = lu[row * n + col].norm_sqr();
                if mag > best_mag {
                    best = row;
                    best_mag = mag;
                }
            }
            if best_mag == 0.0 {
                return Err(TensorError::Singular);
            }
            if best != col {
                for j in 0..n {
                    lu.swap(col * n + j, best * n + j);
                }
                perm.swap(col, best);
            }
            let pivot = lu[col * n + col];
            for row in col + 1..n {
                let factor = lu[row * n + col] / pivot;
                lu[row * n + col] = factor;
                for j in col + 1..n {
                    let sub = factor * lu[col * n + j];
                    lu[row * n + j] -= sub;
                }
            }
        }

        // solve A X = I column by column
        let mut inv = CMatrix::zeros(n);
        let mut x = vec![Complex64::ZERO; n];
        for col in 0..n {
            for (i, xi) in x.iter_mut().enumerate() {
                *xi = if perm[i] == col { Complex64::ONE } else { Complex64::ZERO };
            }
            // forward substitution (unit lower triangle)
            for i in 0..n {
                for k in 0..i {
                    let sub = lu[i * n + k] * x[k];
                    x[i] -= sub;
                }
            }
            // back substitution
            for i in (0..n).rev() {
                for k in i + 1..n {
                    let sub = lu[i * n + k] * x[k];
                    x[i] -= sub;
                }
                x[i] /= lu[i * n + i];
            }
            for i in 0..n {
                inv.data[i * n + col] = x[i];
            }
        }

        let cond = self.inf_norm() * inv.inf_norm();
        if cond > MAX_CONDITION {
            return Err(TensorError::IllConditioned { estimate: cond });
        }
        Ok(inv)
    }
}
