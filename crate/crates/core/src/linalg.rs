//! Small dense linear algebra: LU with partial pivoting, determinants,
//! 1-norm condition numbers and a solve with one step of iterative
//! refinement. Sized for the systems here (a few dozen unknowns at most).

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math::abs;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// `n x n` zeros.
    pub fn zeros(n: usize) -> Self {
        Matrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds from a closure over `(row, col)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.data[i * n + j] = f(i, j);
            }
        }
        m
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    /// Row `i`.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Leading `k x k` block.
    pub fn leading_block(&self, k: usize) -> Matrix {
        Matrix::from_fn(k, |i, j| self.get(i, j))
    }

    /// `A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Maximum absolute column sum.
    pub fn norm_1(&self) -> f64 {
        (0..self.n)
            .map(|j| (0..self.n).map(|i| abs(self.get(i, j))).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Euclidean norm of row `i`.
    pub fn row_norm(&self, i: usize) -> f64 {
        crate::math::sqrt(self.row(i).iter().map(|v| v * v).sum())
    }
}

/// `PA = LU` with unit lower `L` stored below the diagonal.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: Matrix,
    perm: Vec<usize>,
    sign: f64,
    growth: f64,
}

impl Lu {
    /// Factorizes `a`; exactly zero pivots are reported as singular.
    pub fn new(a: &Matrix) -> Result<Self> {
        let n = a.dim();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let max_in = a.data.iter().fold(0.0f64, |m, v| m.max(abs(*v)));
        let mut max_seen = max_in;
        for col in 0..n {
            let (pivot_row, pivot_abs) = (col..n)
                .map(|r| (r, abs(lu.get(r, col))))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs == 0.0 || !pivot_abs.is_finite() {
                return Err(Error::Singular {
                    column: col,
                    pivot: pivot_abs,
                });
            }
            if pivot_row != col {
                for j in 0..n {
                    lu.data.swap(col * n + j, pivot_row * n + j);
                }
                perm.swap(col, pivot_row);
                sign = -sign;
            }
            let pivot = lu.get(col, col);
            for r in col + 1..n {
                let factor = lu.get(r, col) / pivot;
                lu.set(r, col, factor);
                for j in col + 1..n {
                    let v = lu.get(r, j) - factor * lu.get(col, j);
                    max_seen = max_seen.max(abs(v));
                    lu.set(r, j, v);
                }
            }
        }
        let growth = if max_in > 0.0 { max_seen / max_in } else { 1.0 };
        Ok(Lu { lu, perm, sign, growth })
    }

    /// Determinant of the factorized matrix.
    pub fn det(&self) -> f64 {
        (0..self.lu.dim()).fold(self.sign, |acc, i| acc * self.lu.get(i, i))
    }

    /// Element growth during elimination.
    pub fn growth_factor(&self) -> f64 {
        self.growth
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.dim();
        let mut x: Vec<f64> = self.perm.iter().map(|p| b[*p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] -= self.lu.get(i, j) * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] -= self.lu.get(i, j) * x[j];
            }
            x[i] /= self.lu.get(i, i);
        }
        x
    }

    /// Explicit inverse, column by column.
    pub fn inverse(&self) -> Matrix {
        let n = self.lu.dim();
        let mut inv = Matrix::zeros(n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            let col = self.solve(&e);
            for (i, v) in col.iter().enumerate() {
                inv.set(i, j, *v);
            }
        }
        inv
    }
}

/// 1-norm condition number `||A||_1 ||A^{-1}||_1`.
pub fn condition_1(a: &Matrix, lu: &Lu) -> f64 {
    a.norm_1() * lu.inverse().norm_1()
}

/// Solution of a dense system with its diagnostics.
#[derive(Debug, Clone)]
pub struct Solution {
    /// Refined solution.
    pub x: Vec<f64>,
    /// `max |A x - b|` after refinement.
    pub residual: f64,
    /// 1-norm condition number of `A`.
    pub condition: f64,
    /// Pivot growth factor.
    pub growth: f64,
}

/// Solves `A x = b` by partial pivoting plus one refinement step and
/// rejects systems whose condition number exceeds `max_condition`.
pub fn solve(a: &Matrix, b: &[f64], max_condition: f64) -> Result<Solution> {
    let lu = Lu::new(a)?;
    let condition = condition_1(a, &lu);
    if !(condition <= max_condition) {
        return Err(Error::IllConditioned {
            condition,
            limit: max_condition,
        });
    }
    let mut x = lu.solve(b);
    let r: Vec<f64> = a.mul_vec(&x).iter().zip(b).map(|(ax, bi)| bi - ax).collect();
    let dx = lu.solve(&r);
    x.iter_mut().zip(&dx).for_each(|(xi, d)| *xi += d);
    let residual = a
        .mul_vec(&x)
        .iter()
        .zip(b)
        .map(|(ax, bi)| abs(ax - bi))
        .fold(0.0, f64::max);
    Ok(Solution {
        x,
        residual,
        condition,
        growth: lu.growth_factor(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_and_determinant() {
        let a = Matrix::from_fn(3, |i, j| [[2.0, 1.0, 1.0], [4.0, -6.0, 0.0], [-2.0, 7.0, 2.0]][i][j]);
        let lu = Lu::new(&a).unwrap();
        assert!((lu.det() - (-16.0)).abs() < 1e-12);
        let sol = solve(&a, &[5.0, -2.0, 9.0], 1e12).unwrap();
        for (x, e) in sol.x.iter().zip([1.0, 1.0, 2.0]) {
            assert!((x - e).abs() < 1e-14);
        }
        assert!(sol.residual < 1e-14);
        assert!(sol.condition >= 1.0);
    }

    #[test]
    fn singular_detected() {
        let a = Matrix::from_fn(2, |i, j| [[1.0, 2.0], [2.0, 4.0]][i][j]);
        assert!(matches!(Lu::new(&a), Err(Error::Singular { column: 1, .. })));
    }

    #[test]
    fn ill_conditioned_rejected() {
        let a = Matrix::from_fn(2, |i, j| [[1.0, 1.0], [1.0, 1.0 + 1e-14]][i][j]);
        assert!(matches!(
            solve(&a, &[1.0, 2.0], 1e12),
            Err(Error::IllConditioned { .. })
        ));
    }

    #[test]
    fn inverse_of_identity_scaling() {
        let a = Matrix::from_fn(3, |i, j| if i == j { 2.0 } else { 0.0 });
        let inv = Lu::new(&a).unwrap().inverse();
        assert_eq!(inv.get(1, 1), 0.5);
        assert!((condition_1(&a, &Lu::new(&a).unwrap()) - 1.0).abs() < 1e-15);
    }
}
