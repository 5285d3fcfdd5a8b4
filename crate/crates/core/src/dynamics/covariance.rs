use nalgebra::{Matrix6 as NaMatrix6, SymmetricEigen};

use crate::quadrature::{zero_matrix, Matrix6, DIM};
use crate::scalar::Scalar;

/// Number of independent entries of a symmetric 6x6 matrix.
pub const PACKED_LEN: usize = DIM * (DIM + 1) / 2;

#[inline]
pub const fn packed_index(row: usize, col: usize) -> usize {
    let (i, j) = if row <= col { (row, col) } else { (col, row) };
    i * DIM - i * (i + 1) / 2 + j
}

/// Symmetrized second moments `C_ij = <Y_i Y_j + Y_j Y_i> / 2` of the
/// quadrature fluctuations, stored as the upper triangle so that symmetry
/// holds by construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix<T> {
    packed: [T; PACKED_LEN],
}

impl<T: Scalar> CovarianceMatrix<T> {
    pub fn from_packed(packed: [T; PACKED_LEN]) -> Self {
        Self { packed }
    }

    /// Builds from a full matrix, averaging the two triangles.
    pub fn from_matrix(m: &Matrix6<T>) -> Self {
        let mut packed = [T::zero(); PACKED_LEN];
        let half = T::lit(0.5);
        for i in 0..DIM {
            for j in i..DIM {
                packed[packed_index(i, j)] = if i == j { m[i][i] } else { half * (m[i][j] + m[j][i]) };
            }
        }
        Self { packed }
    }

    pub fn diagonal(diag: [T; DIM]) -> Self {
        let mut packed = [T::zero(); PACKED_LEN];
        for (k, v) in diag.into_iter().enumerate() {
            packed[packed_index(k, k)] = v;
        }
        Self { packed }
    }

    /// `I / 2`, the vacuum of all three modes.
    pub fn vacuum() -> Self {
        Self::diagonal([T::lit(0.5); DIM])
    }

    /// Magnons at thermal occupation `nbar`, cavity in vacuum.
    pub fn thermal_magnons(nbar: T) -> Self {
        let m = nbar + T::lit(0.5);
        let h = T::lit(0.5);
        Self::diagonal([m, m, m, m, h, h])
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> T {
        self.packed[packed_index(row, col)]
    }

    #[inline]
    pub fn packed(&self) -> &[T; PACKED_LEN] {
        &self.packed
    }

    pub fn to_matrix(&self) -> Matrix6<T> {
        let mut m = zero_matrix();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = self.get(i, j);
            }
        }
        m
    }

    pub fn trace(&self) -> T {
        (0..DIM).fold(T::zero(), |acc, k| acc + self.get(k, k))
    }

    pub fn is_finite(&self) -> bool {
        self.packed.iter().all(|v| v.is_finite())
    }

    /// Smallest eigenvalue, computed in double precision.
    pub fn min_eigenvalue(&self) -> f64 {
        let m = NaMatrix6::<f64>::from_fn(|i, j| self.get(i, j).to_f64_lossy());
        SymmetricEigen::new(m).eigenvalues.min()
    }

    /// `min eigenvalue >= -rel_tol * trace`.
    pub fn is_psd(&self, rel_tol: f64) -> bool {
        self.min_eigenvalue() >= -rel_tol * self.trace().to_f64_lossy()
    }
}
