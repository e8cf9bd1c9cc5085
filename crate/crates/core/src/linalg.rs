//! Dense exact matrix inversion, used for the graded duality systems.

use crate::scalar::Scalar;

/// Square matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<C> {
    n: usize,
    data: Vec<C>,
}

impl<C: Scalar> Matrix<C> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![C::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = C::one();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Whether every entry below the diagonal vanishes.
    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)].is_zero()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// Inverse by back substitution when upper triangular, Gauss-Jordan
    /// elimination otherwise. `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_upper_triangular() {
            self.upper_triangular_inverse()
        } else {
            self.gauss_jordan_inverse()
        }
    }

    fn upper_triangular_inverse(&self) -> Option<Self> {
        let n = self.n;
        if (0..n).any(|i| self[(i, i)].is_zero()) {
            return None;
        }
        let mut inv = Self::zeros(n);
        // Solve U X = I column by column, bottom-up.
        for col in 0..n {
            for i in (0..=col).rev() {
                let mut acc = if i == col { C::one() } else { C::zero() };
                for k in i + 1..=col {
                    let u = &self[(i, k)];
                    if !u.is_zero() {
                        acc = acc - u.clone() * inv[(k, col)].clone();
                    }
                }
                inv[(i, col)] = acc / self[(i, i)].clone();
            }
        }
        Some(inv)
    }

    fn gauss_jordan_inverse(&self) -> Option<Self> {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)].clone();
            for j in 0..n {
                a[(col, j)] = a[(col, j)].clone() / p.clone();
                inv[(col, j)] = inv[(col, j)].clone() / p.clone();
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    a[(r, j)] = a[(r, j)].clone() - f.clone() * a[(col, j)].clone();
                    inv[(r, j)] = inv[(r, j)].clone() - f.clone() * inv[(col, j)].clone();
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.n {
            self.data.swap(a * self.n + j, b * self.n + j);
        }
    }
}

impl<C> std::ops::Index<(usize, usize)> for Matrix<C> {
    type Output = C;
    fn index(&self, (i, j): (usize, usize)) -> &C {
        &self.data[i * self.n + j]
    }
}

impl<C> std::ops::IndexMut<(usize, usize)> for Matrix<C> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C {
        &mut self.data[i * self.n + j]
    }
}
