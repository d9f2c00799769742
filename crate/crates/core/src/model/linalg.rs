//! Dense symmetric kernels for the small (≤ 8×8) covariance matrices used here.

use crate::scalar::Scalar;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Self {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "row {i} has wrong length");
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    /// Principal submatrix on the given index set (order preserved).
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        let mut m = Self::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }

    pub fn trace(&self) -> T {
        (0..self.n).fold(T::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_symmetric(&self, tol: T) -> bool {
        let scale = self.max_abs().max(T::one());
        (0..self.n).all(|i| (0..i).all(|j| (self.get(i, j) - self.get(j, i)).abs() <= tol * scale))
    }

    fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, &x| m.max(x.abs()))
    }

    /// `L · self · Lᵀ` for a rectangular `L` given as rows of length `self.dim()`.
    pub fn congruence(&self, l: &[Vec<T>]) -> Self {
        let m = l.len();
        let n = self.n;
        // tmp = L · self  (m × n)
        let tmp: Vec<Vec<T>> = l
            .iter()
            .map(|row| {
                (0..n)
                    .map(|j| (0..n).fold(T::zero(), |acc, k| acc + row[k] * self.get(k, j)))
                    .collect()
            })
            .collect();
        let mut out = Self::zeros(m);
        for i in 0..m {
            for j in 0..=i {
                let v = (0..n).fold(T::zero(), |acc, k| acc + tmp[i][k] * l[j][k]);
                out.set(i, j, v);
                out.set(j, i, v);
            }
        }
        out
    }
}

/// Eigen-decomposition of a symmetric matrix.
#[derive(Debug, Clone)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    /// Column `k` (i.e. `vectors[i][k]` over `i`) is the eigenvector for `values[k]`.
    pub vectors: Vec<Vec<T>>,
}

/// Cyclic Jacobi rotations. Converges quadratically and is accurate to a few
/// ulps relative to the matrix norm, which is all the pseudo-inverse needs.
pub fn symmetric_eigen<T: Scalar>(a: &SquareMatrix<T>) -> SymmetricEigen<T> {
    let n = a.dim();
    let mut m: Vec<Vec<T>> = (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { T::one() } else { T::zero() }).collect())
        .collect();

    for _sweep in 0..64 {
        let off = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + m[i][j] * m[i][j]);
        let diag = (0..n).fold(T::zero(), |acc, i| acc + m[i][i] * m[i][i]);
        if off <= T::epsilon() * T::epsilon() * diag || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[p][q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (m[q][q] - m[p][p]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[k][p];
                    let mkq = m[k][q];
                    m[k][p] = c * mkp - s * mkq;
                    m[k][q] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[p][k];
                    let mqk = m[q][k];
                    m[p][k] = c * mpk - s * mqk;
                    m[q][k] = s * mpk + c * mqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }

    SymmetricEigen {
        values: (0..n).map(|i| m[i][i]).collect(),
        vectors: v,
    }
}

impl<T: Scalar> SymmetricEigen<T> {
    fn cutoff(&self) -> T {
        let max = self.values.iter().fold(T::zero(), |m, &x| m.max(x.abs()));
        T::degeneracy_cutoff() * max
    }

    /// Number of eigenvalues above the degeneracy cutoff.
    pub fn rank(&self) -> usize {
        let cut = self.cutoff();
        self.values.iter().filter(|&&l| l > cut).count()
    }

    pub fn min_value(&self) -> T {
        self.values.iter().fold(T::infinity(), |m, &x| m.min(x))
    }

    /// `A⁺ b` using only eigen-directions above the cutoff.
    pub fn pinv_apply(&self, b: &[T]) -> Vec<T> {
        let n = b.len();
        let cut = self.cutoff();
        let mut x = vec![T::zero(); n];
        for (k, &lambda) in self.values.iter().enumerate() {
            if lambda <= cut {
                continue;
            }
            let proj = (0..n).fold(T::zero(), |acc, i| acc + self.vectors[i][k] * b[i]);
            let w = proj / lambda;
            for (i, xi) in x.iter_mut().enumerate() {
                *xi = *xi + w * self.vectors[i][k];
            }
        }
        x
    }

    /// Log of the product of eigenvalues above the cutoff.
    pub fn log_pdet(&self) -> T {
        let cut = self.cutoff();
        self.values
            .iter()
            .filter(|&&l| l > cut)
            .fold(T::zero(), |acc, &l| acc + l.ln())
    }
}

/// Solves `A x = b` by LU with partial pivoting. `None` when a pivot vanishes.
pub fn solve<T: Scalar>(a: &SquareMatrix<T>, b: &[T]) -> Option<Vec<T>> {
    let n = a.dim();
    let mut m: Vec<Vec<T>> = (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect();
    let mut x = b.to_vec();
    let scale = a.max_abs();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().partial_cmp(&m[j][col].abs()).unwrap())
            .unwrap();
        if m[piv][col].abs() <= T::degeneracy_cutoff() * scale {
            return None;
        }
        m.swap(col, piv);
        x.swap(col, piv);
        for row in (col + 1)..n {
            let f = m[row][col] / m[col][col];
            for k in col..n {
                m[row][k] = m[row][k] - f * m[col][k];
            }
            x[row] = x[row] - f * x[col];
        }
    }
    for col in (0..n).rev() {
        let s = ((col + 1)..n).fold(x[col], |acc, k| acc - m[col][k] * x[k]);
        x[col] = s / m[col][col];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigen_reconstructs_matrix() {
        let a = SquareMatrix::from_rows(&[
            vec![4.0, 1.0, 0.5],
            vec![1.0, 3.0, 0.2],
            vec![0.5, 0.2, 1.0],
        ]);
        let e = symmetric_eigen(&a);
        for i in 0..3 {
            for j in 0..3 {
                let r: f64 = (0..3).map(|k| e.vectors[i][k] * e.values[k] * e.vectors[j][k]).sum();
                assert!((r - a.get(i, j)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn pinv_on_rank_deficient() {
        // [[1,1],[1,1]] has pseudo-inverse [[.25,.25],[.25,.25]]
        let a = SquareMatrix::from_rows(&[vec![1.0_f64, 1.0], vec![1.0, 1.0]]);
        let e = symmetric_eigen(&a);
        assert_eq!(e.rank(), 1);
        let x = e.pinv_apply(&[1.0, 0.0]);
        assert!((x[0] - 0.25).abs() < 1e-14 && (x[1] - 0.25).abs() < 1e-14);
        assert!(solve(&a, &[1.0, 0.0]).is_none());
    }

    #[test]
    fn lu_solve() {
        let a = SquareMatrix::from_rows(&[vec![2.0_f64, 1.0], vec![1.0, 3.0]]);
        let x = solve(&a, &[3.0, 5.0]).unwrap();
        assert!((x[0] - 0.8).abs() < 1e-15 && (x[1] - 1.4).abs() < 1e-15);
    }

    #[test]
    fn congruence_matches_hand_product() {
        let s = SquareMatrix::from_rows(&[vec![1.0_f64, 0.4], vec![0.4, 1.0]]);
        let c = s.congruence(&[vec![1.0, 1.0], vec![1.0, -1.0]]);
        assert!((c.get(0, 0) - 2.8).abs() < 1e-15);
        assert!((c.get(1, 1) - 1.2).abs() < 1e-15);
        assert!(c.get(0, 1).abs() < 1e-15);
    }
}
