//! Real quadrature picture of the linearized fluctuations.
//!
//! Quadrature vectors are ordered `(q1, p1, q2, p2, x, y)`, with
//! `delta m_i = (q_i + i p_i) / sqrt(2)` and `delta a = (x + i y) / sqrt(2)`.

use num_complex::Complex;

use crate::model::{CoefficientSet, MeanFieldState, ModeCoupling, SystemParams};
use crate::scalar::Scalar;

pub const DIM: usize = 6;

/// Index of the first quadrature of each mode in the 6-vector.
pub const MAGNON1: usize = 0;
pub const MAGNON2: usize = 2;
pub const CAVITY: usize = 4;

pub type Matrix6<T> = [[T; DIM]; DIM];

pub fn zero_matrix<T: Scalar>() -> Matrix6<T> {
    [[T::zero(); DIM]; DIM]
}

/// Drift matrix of `dY/dt = M Y + ...` at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriftMatrix<T> {
    pub m: Matrix6<T>,
    pub t: T,
}

/// Which bath the cavity diffusion is built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CavityBath {
    /// Cavity sees the same thermal occupation as the magnons.
    #[default]
    Thermal,
    /// Cavity sees a zero-temperature bath.
    Vacuum,
}

/// Diagonal diffusion `diag(v1, v1, v2, v2, v3, v3)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffusionMatrix<T> {
    pub v1: T,
    pub v2: T,
    pub v3: T,
}

impl<T: Scalar> DiffusionMatrix<T> {
    #[inline]
    pub fn diagonal(&self) -> [T; DIM] {
        [self.v1, self.v1, self.v2, self.v2, self.v3, self.v3]
    }

    pub fn to_matrix(&self) -> Matrix6<T> {
        let mut out = zero_matrix();
        for (k, v) in self.diagonal().into_iter().enumerate() {
            out[k][k] = v;
        }
        out
    }
}

/// 2x2 real block for `d(delta b)/dt = X delta c + Y delta c†`, mapping
/// `(q_c, p_c)` onto `(dq_b/dt, dp_b/dt)`.
#[inline]
pub fn coupling_block<T: Scalar>(coupling: &ModeCoupling<T>) -> [[T; 2]; 2] {
    let sum = coupling.direct + coupling.conjugate;
    let diff = coupling.direct - coupling.conjugate;
    [[sum.re, -diff.im], [sum.im, diff.re]]
}

#[inline]
fn place<T: Copy>(m: &mut Matrix6<T>, row: usize, col: usize, block: [[T; 2]; 2]) {
    m[row][col] = block[0][0];
    m[row][col + 1] = block[0][1];
    m[row + 1][col] = block[1][0];
    m[row + 1][col + 1] = block[1][1];
}

pub fn drift_matrix<T: Scalar>(coeffs: &CoefficientSet<T>) -> DriftMatrix<T> {
    let mut m = zero_matrix();
    for (coeff, base) in coeffs.magnons.iter().zip([MAGNON1, MAGNON2]) {
        place(&mut m, base, base, coupling_block(&coeff.own));
        place(&mut m, base, CAVITY, coupling_block(&coeff.from_cavity));
        place(&mut m, CAVITY, base, coupling_block(&coeff.into_cavity));
    }
    let cavity = ModeCoupling { direct: coeffs.cavity_self, conjugate: Complex::new(T::zero(), T::zero()) };
    place(&mut m, CAVITY, CAVITY, coupling_block(&cavity));
    DriftMatrix { m, t: coeffs.t }
}

pub fn diffusion_matrix<T: Scalar>(params: &SystemParams<T>, cavity_bath: CavityBath) -> DiffusionMatrix<T> {
    let half = T::lit(0.5);
    let magnon_occ = params.nbar_m + half;
    let cavity_occ = match cavity_bath {
        CavityBath::Thermal => magnon_occ,
        CavityBath::Vacuum => half,
    };
    DiffusionMatrix {
        v1: params.gamma1 * magnon_occ,
        v2: params.gamma2 * magnon_occ,
        v3: params.gamma_c * cavity_occ,
    }
}

/// Mean quadratures `(q1, p1, q2, p2, x, y)` of a mean-field state.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct MeanQuadratures<T> {
    pub q1: T,
    pub p1: T,
    pub q2: T,
    pub p2: T,
    pub x: T,
    pub y: T,
}

impl<T: Scalar> MeanQuadratures<T> {
    pub fn as_array(&self) -> [T; DIM] {
        [self.q1, self.p1, self.q2, self.p2, self.x, self.y]
    }
}

pub fn mean_quadratures<T: Scalar>(state: &MeanFieldState<T>) -> MeanQuadratures<T> {
    let s = T::SQRT_2();
    MeanQuadratures {
        q1: s * state.alpha1.re,
        p1: s * state.alpha1.im,
        q2: s * state.alpha2.re,
        p2: s * state.alpha2.im,
        x: s * state.beta.re,
        y: s * state.beta.im,
    }
}

/// Quadrature pair `(sqrt(2) Re z, sqrt(2) Im z)` of a complex mode value.
#[inline]
pub fn complex_to_quadratures<T: Scalar>(z: Complex<T>) -> [T; 2] {
    [T::SQRT_2() * z.re, T::SQRT_2() * z.im]
}
