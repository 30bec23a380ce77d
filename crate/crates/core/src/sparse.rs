//! Sparse symmetric LDLᵀ factorization.
//!
//! The factorization is the classic up-looking algorithm driven by the
//! elimination tree: a symbolic pass computes the tree and the column counts
//! of `L` once per sparsity pattern, and the numeric pass can then be repeated
//! for any set of values on that pattern. No pivoting is performed, so the
//! matrix must admit an LDLᵀ factorization in the given ordering. This holds
//! for the real SPD stiffness matrices and for complex symmetric matrices
//! whose real part is positive definite, which covers every system the
//! solvers assemble.
//!
//! Matrices are stored as the upper triangle (diagonal included) in
//! compressed sparse column form.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Field element usable as a matrix entry.
pub trait Scalar:
    Copy
    + Debug
    + Default
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + Send
    + Sync
    + 'static
{
    fn zero() -> Self {
        Self::default()
    }
    fn modulus(self) -> f64;
    fn from_real(x: f64) -> Self;
}

impl Scalar for f64 {
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn from_real(x: f64) -> Self {
        x
    }
}

impl Scalar for Complex64 {
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
}

/// Upper-triangular CSC sparsity pattern of a symmetric matrix.
///
/// Row indices inside a column are sorted and the diagonal entry is always
/// present and stored last.
#[derive(Debug, Clone)]
pub struct SymmetricPattern {
    n: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
}

impl SymmetricPattern {
    /// Builds the pattern from per-column lists of strictly-upper row indices.
    pub fn from_columns(columns: Vec<Vec<usize>>) -> Self {
        let n = columns.len();
        let mut col_ptr = Vec::with_capacity(n + 1);
        let mut row_idx = Vec::new();
        col_ptr.push(0);
        for (j, mut rows) in columns.into_iter().enumerate() {
            rows.sort_unstable();
            rows.dedup();
            debug_assert!(rows.iter().all(|&i| i < j));
            row_idx.extend(rows);
            row_idx.push(j);
            col_ptr.push(row_idx.len());
        }
        SymmetricPattern {
            n,
            col_ptr,
            row_idx,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.row_idx.len()
    }

    pub fn col_ptr(&self) -> &[usize] {
        &self.col_ptr
    }

    pub fn row_idx(&self) -> &[usize] {
        &self.row_idx
    }

    /// Position of the diagonal entry of column `j` in the value array.
    pub fn diag_pos(&self, j: usize) -> usize {
        self.col_ptr[j + 1] - 1
    }

    /// Position of entry `(i, j)` with `i <= j`, if stored.
    pub fn position(&self, i: usize, j: usize) -> Option<usize> {
        let (lo, hi) = (self.col_ptr[j], self.col_ptr[j + 1]);
        self.row_idx[lo..hi]
            .binary_search(&i)
            .ok()
            .map(|k| lo + k)
    }
}

const NONE: usize = usize::MAX;

/// Elimination tree and column structure of `L`.
#[derive(Debug, Clone)]
pub struct SymbolicLdl {
    parent: Vec<usize>,
    l_ptr: Vec<usize>,
}

impl SymbolicLdl {
    pub fn analyze(pattern: &SymmetricPattern) -> Self {
        let n = pattern.n;
        let mut parent = vec![NONE; n];
        let mut flag = vec![NONE; n];
        let mut counts = vec![0usize; n];
        for k in 0..n {
            flag[k] = k;
            for p in pattern.col_ptr[k]..pattern.col_ptr[k + 1] {
                let mut i = pattern.row_idx[p];
                if i >= k {
                    continue;
                }
                while flag[i] != k {
                    if parent[i] == NONE {
                        parent[i] = k;
                    }
                    counts[i] += 1;
                    flag[i] = k;
                    i = parent[i];
                }
            }
        }
        let mut l_ptr = Vec::with_capacity(n + 1);
        l_ptr.push(0);
        let mut acc = 0;
        for c in counts {
            acc += c;
            l_ptr.push(acc);
        }
        SymbolicLdl { parent, l_ptr }
    }

    /// Number of strictly-lower nonzeros in `L`.
    pub fn factor_nnz(&self) -> usize {
        *self.l_ptr.last().unwrap_or(&0)
    }
}

/// Numeric LDLᵀ factors.
#[derive(Debug, Clone)]
pub struct Ldl<T: Scalar> {
    l_ptr: Vec<usize>,
    l_idx: Vec<usize>,
    l_val: Vec<T>,
    diag: Vec<T>,
}

impl<T: Scalar> Ldl<T> {
    /// Factors the matrix whose upper triangle holds `values` on `pattern`.
    pub fn factor(symbolic: &SymbolicLdl, pattern: &SymmetricPattern, values: &[T]) -> Result<Self> {
        let n = pattern.n;
        assert_eq!(values.len(), pattern.nnz());
        let nnz = symbolic.factor_nnz();
        let mut l_idx = vec![0usize; nnz];
        let mut l_val = vec![T::zero(); nnz];
        let mut diag = vec![T::zero(); n];
        let mut y = vec![T::zero(); n];
        let mut pattern_stack = vec![0usize; n];
        let mut flag = vec![NONE; n];
        let mut lnz = vec![0usize; n];
        let parent = &symbolic.parent;
        let l_ptr = &symbolic.l_ptr;

        for k in 0..n {
            let mut top = n;
            flag[k] = k;
            y[k] = T::zero();
            for p in pattern.col_ptr[k]..pattern.col_ptr[k + 1] {
                let mut i = pattern.row_idx[p];
                y[i] += values[p];
                let mut len = 0;
                while flag[i] != k {
                    pattern_stack[len] = i;
                    len += 1;
                    flag[i] = k;
                    i = parent[i];
                }
                while len > 0 {
                    top -= 1;
                    len -= 1;
                    pattern_stack[top] = pattern_stack[len];
                }
            }
            let mut dk = y[k];
            y[k] = T::zero();
            for &i in &pattern_stack[top..n] {
                let yi = y[i];
                y[i] = T::zero();
                let start = l_ptr[i];
                let end = start + lnz[i];
                for p in start..end {
                    let r = l_idx[p];
                    y[r] -= l_val[p] * yi;
                }
                let lki = yi / diag[i];
                dk -= lki * yi;
                l_idx[end] = k;
                l_val[end] = lki;
                lnz[i] += 1;
            }
            if dk == T::zero() || !dk.modulus().is_finite() {
                return Err(Error::SingularPivot { column: k });
            }
            diag[k] = dk;
        }

        Ok(Ldl {
            l_ptr: l_ptr.clone(),
            l_idx,
            l_val,
            diag,
        })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Solves `L D Lᵀ x = b` in place.
    pub fn solve_in_place<V>(&self, x: &mut [V])
    where
        V: Copy + SubAssign + Mul<T, Output = V> + Div<T, Output = V>,
    {
        let n = self.dim();
        assert_eq!(x.len(), n);
        for j in 0..n {
            let xj = x[j];
            for p in self.l_ptr[j]..self.l_ptr[j + 1] {
                x[self.l_idx[p]] -= xj * self.l_val[p];
            }
        }
        for j in 0..n {
            x[j] = x[j] / self.diag[j];
        }
        for j in (0..n).rev() {
            let mut xj = x[j];
            for p in self.l_ptr[j]..self.l_ptr[j + 1] {
                xj -= x[self.l_idx[p]] * self.l_val[p];
            }
            x[j] = xj;
        }
    }

    pub fn pivots(&self) -> &[T] {
        &self.diag
    }
}

/// Nested-dissection ordering of a rectangular block of grid unknowns.
///
/// `index(i, j)` maps a grid position inside `[0, nx) x [0, ny)` to the
/// unknown number. The returned vector lists unknowns in elimination order.
pub fn nested_dissection(nx: usize, ny: usize, index: impl Fn(usize, usize) -> usize) -> Vec<usize> {
    let mut order = Vec::with_capacity(nx * ny);
    dissect(0, nx, 0, ny, &index, &mut order);
    order
}

fn dissect(
    i0: usize,
    i1: usize,
    j0: usize,
    j1: usize,
    index: &impl Fn(usize, usize) -> usize,
    out: &mut Vec<usize>,
) {
    let (wx, wy) = (i1 - i0, j1 - j0);
    if wx == 0 || wy == 0 {
        return;
    }
    if wx <= 2 || wy <= 2 || wx * wy <= 16 {
        for j in j0..j1 {
            for i in i0..i1 {
                out.push(index(i, j));
            }
        }
        return;
    }
    if wx >= wy {
        let mid = i0 + wx / 2;
        dissect(i0, mid, j0, j1, index, out);
        dissect(mid + 1, i1, j0, j1, index, out);
        for j in j0..j1 {
            out.push(index(mid, j));
        }
    } else {
        let mid = j0 + wy / 2;
        dissect(i0, i1, j0, mid, index, out);
        dissect(i0, i1, mid + 1, j1, index, out);
        for i in i0..i1 {
            out.push(index(i, mid));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Dense reference: solve with Gaussian elimination on the full matrix.
    fn dense_solve(a: &[Vec<Complex64>], b: &[Complex64]) -> Vec<Complex64> {
        let n = b.len();
        let mut m: Vec<Vec<Complex64>> = a.to_vec();
        let mut x = b.to_vec();
        for k in 0..n {
            let piv = (k..n)
                .max_by(|&p, &q| m[p][k].norm().partial_cmp(&m[q][k].norm()).unwrap())
                .unwrap();
            m.swap(k, piv);
            x.swap(k, piv);
            for r in k + 1..n {
                let f = m[r][k] / m[k][k];
                for c in k..n {
                    let v = m[k][c];
                    m[r][c] -= f * v;
                }
                let v = x[k];
                x[r] -= f * v;
            }
        }
        for k in (0..n).rev() {
            let mut s = x[k];
            for c in k + 1..n {
                s -= m[k][c] * x[c];
            }
            x[k] = s / m[k][k];
        }
        x
    }

    fn grid_matrix(nx: usize, ny: usize, shift: Complex64) -> (SymmetricPattern, Vec<Complex64>, Vec<Vec<Complex64>>) {
        let n = nx * ny;
        let id = |i: usize, j: usize| i + nx * j;
        let mut dense = vec![vec![Complex64::default(); n]; n];
        for j in 0..ny {
            for i in 0..nx {
                let k = id(i, j);
                dense[k][k] = Complex64::new(4.0, 0.0) + shift;
                if i + 1 < nx {
                    dense[k][id(i + 1, j)] = Complex64::new(-1.0, 0.0);
                    dense[id(i + 1, j)][k] = Complex64::new(-1.0, 0.0);
                }
                if j + 1 < ny {
                    dense[k][id(i, j + 1)] = Complex64::new(-1.0, 0.0);
                    dense[id(i, j + 1)][k] = Complex64::new(-1.0, 0.0);
                }
            }
        }
        let cols: Vec<Vec<usize>> = (0..n)
            .map(|j| (0..j).filter(|&i| dense[i][j] != Complex64::default()).collect())
            .collect();
        let pattern = SymmetricPattern::from_columns(cols);
        let mut vals = Vec::new();
        for j in 0..n {
            for p in pattern.col_ptr()[j]..pattern.col_ptr()[j + 1] {
                vals.push(dense[pattern.row_idx()[p]][j]);
            }
        }
        (pattern, vals, dense)
    }

    #[test]
    fn complex_symmetric_grid_matches_dense_solve() {
        let (pattern, vals, dense) = grid_matrix(5, 4, Complex64::new(0.3, 0.7));
        let sym = SymbolicLdl::analyze(&pattern);
        let f = Ldl::factor(&sym, &pattern, &vals).unwrap();
        let b: Vec<Complex64> = (0..20).map(|k| Complex64::new(k as f64, 1.0 - k as f64 * 0.5)).collect();
        let mut x = b.clone();
        f.solve_in_place(&mut x);
        let reference = dense_solve(&dense, &b);
        for (u, v) in x.iter().zip(&reference) {
            assert!((u - v).norm() < 1e-12);
        }
    }

    #[test]
    fn real_factor_solves_complex_rhs() {
        // tridiagonal 1D Laplacian plus identity
        let n = 6;
        let cols = (0..n).map(|j| if j > 0 { vec![j - 1] } else { vec![] }).collect();
        let pattern = SymmetricPattern::from_columns(cols);
        let mut vals = Vec::new();
        for j in 0..n {
            if j > 0 {
                vals.push(-1.0);
            }
            vals.push(3.0);
        }
        let f = Ldl::factor(&SymbolicLdl::analyze(&pattern), &pattern, &vals).unwrap();
        let b: Vec<Complex64> = (0..n).map(|k| Complex64::new(1.0, k as f64)).collect();
        let mut x = b.clone();
        f.solve_in_place(&mut x);
        for k in 0..n {
            let mut ax = x[k] * 3.0;
            if k > 0 {
                ax -= x[k - 1];
            }
            if k + 1 < n {
                ax -= x[k + 1];
            }
            assert!((ax - b[k]).norm() < 1e-13);
        }
    }

    #[test]
    fn zero_pivot_is_reported() {
        let pattern = SymmetricPattern::from_columns(vec![vec![], vec![0]]);
        // [[1, 1], [1, 1]] is singular
        let err = Ldl::factor(&SymbolicLdl::analyze(&pattern), &pattern, &[1.0, 1.0, 1.0]).unwrap_err();
        assert!(matches!(err, Error::SingularPivot { column: 1 }));
    }

    #[test]
    fn dissection_is_a_permutation() {
        for (nx, ny) in [(1, 1), (3, 7), (10, 10), (31, 17)] {
            let mut order = nested_dissection(nx, ny, |i, j| i + nx * j);
            order.sort_unstable();
            assert_eq!(order, (0..nx * ny).collect::<Vec<_>>());
        }
    }
}
