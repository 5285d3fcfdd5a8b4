//! Physical parameters, rotating-frame phase factors, the nonlinear
//! mean-field drift and the linearization coefficients of the fluctuation
//! equations.
//!
//! Everything here is a pure function of its arguments. Frequencies, rates
//! and times are measured in units of the first magnon drive `omega1`.

use num_complex::Complex;
use thiserror::Error;

use crate::scalar::{complex_is_finite, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("parameter `{key}` is out of range: {reason}")]
    OutOfRange { key: &'static str, reason: &'static str },
}

/// Couplings, Kerr constants, drives, detunings and bath data of the
/// two-magnon/one-cavity system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemParams<T> {
    /// Magnon-cavity coupling strengths.
    pub g1: T,
    pub g2: T,
    /// Kerr coefficients.
    pub k1: T,
    pub k2: T,
    /// Magnon drive (Rabi) amplitudes.
    pub omega1: T,
    pub omega2: T,
    /// Cavity drive amplitude.
    pub omega_c: T,
    /// Magnon detunings from their drives.
    pub delta1: T,
    pub delta2: T,
    /// Cavity detuning from its drive.
    pub delta_c: T,
    /// Magnon energy damping rates.
    pub gamma1: T,
    pub gamma2: T,
    /// Cavity energy damping rate.
    pub gamma_c: T,
    /// Mean thermal occupation of the magnon bath.
    pub nbar_m: T,
}

/// The per-magnon slice of [`SystemParams`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnonParams<T> {
    pub g: T,
    pub kerr: T,
    pub omega: T,
    pub delta: T,
    pub gamma: T,
}

impl<T: Scalar> SystemParams<T> {
    /// Parameter set shared by every published scenario, with the second
    /// magnon drive left as an argument.
    pub fn reference(omega2: T) -> Self {
        let l = T::lit;
        Self {
            g1: l(0.1),
            g2: l(0.1),
            k1: l(1e-10),
            k2: l(1e-10),
            omega1: T::one(),
            omega2,
            omega_c: T::one(),
            delta1: l(0.001),
            delta2: l(0.001),
            delta_c: l(-0.2),
            gamma1: l(0.1),
            gamma2: l(0.1),
            gamma_c: l(0.1),
            nbar_m: T::zero(),
        }
    }

    pub fn magnons(&self) -> [MagnonParams<T>; 2] {
        [
            MagnonParams {
                g: self.g1,
                kerr: self.k1,
                omega: self.omega1,
                delta: self.delta1,
                gamma: self.gamma1,
            },
            MagnonParams {
                g: self.g2,
                kerr: self.k2,
                omega: self.omega2,
                delta: self.delta2,
                gamma: self.gamma2,
            },
        ]
    }

    /// Checks finiteness, positive damping and a non-negative bath
    /// occupation. The error names the first offending field.
    pub fn validate(&self) -> Result<(), ParamError> {
        let fields = [
            ("g1", self.g1),
            ("g2", self.g2),
            ("k1", self.k1),
            ("k2", self.k2),
            ("omega1", self.omega1),
            ("omega2", self.omega2),
            ("omega_c", self.omega_c),
            ("delta1", self.delta1),
            ("delta2", self.delta2),
            ("delta_c", self.delta_c),
            ("gamma1", self.gamma1),
            ("gamma2", self.gamma2),
            ("gamma_c", self.gamma_c),
            ("nbar_m", self.nbar_m),
        ];
        for (key, value) in fields {
            if !value.is_finite() {
                return Err(ParamError::OutOfRange { key, reason: "must be finite" });
            }
        }
        for (key, value) in [("gamma1", self.gamma1), ("gamma2", self.gamma2), ("gamma_c", self.gamma_c)] {
            if value <= T::zero() {
                return Err(ParamError::OutOfRange { key, reason: "damping rate must be positive" });
            }
        }
        if self.nbar_m < T::zero() {
            return Err(ParamError::OutOfRange { key: "nbar_m", reason: "thermal occupation must be non-negative" });
        }
        Ok(())
    }
}

/// Classical amplitudes of the two magnons and the cavity at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldState<T> {
    pub alpha1: Complex<T>,
    pub alpha2: Complex<T>,
    pub beta: Complex<T>,
    pub t: T,
}

impl<T: Scalar> MeanFieldState<T> {
    pub fn new(alpha1: Complex<T>, alpha2: Complex<T>, beta: Complex<T>, t: T) -> Self {
        Self { alpha1, alpha2, beta, t }
    }

    pub fn vacuum(t: T) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::new(z, z, z, t)
    }

    #[inline]
    pub fn alphas(&self) -> [Complex<T>; 2] {
        [self.alpha1, self.alpha2]
    }

    pub fn is_finite(&self) -> bool {
        complex_is_finite(self.alpha1) && complex_is_finite(self.alpha2) && complex_is_finite(self.beta) && self.t.is_finite()
    }
}

/// Rotating-frame frequencies entering the interaction-picture phases.
///
/// `b[i] = delta_c - delta_i`, `d[i] = delta_i`, and `c[i]` is the Kerr
/// shift `K_i (m†m + m m†)` evaluated at the mean field as
/// `K_i (2|alpha_i|^2 + 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FramePhases<T> {
    pub b: [T; 2],
    pub c: [T; 2],
    pub d: [T; 2],
}

/// Secular factor `A = 2 i K t` multiplying every Kerr-generated term.
#[inline]
pub fn kerr_secular_factor<T: Scalar>(kerr: T, t: T) -> Complex<T> {
    Complex::new(T::zero(), T::lit(2.0) * kerr * t)
}

pub fn frame_phases<T: Scalar>(params: &SystemParams<T>, state: &MeanFieldState<T>) -> FramePhases<T> {
    let m = params.magnons();
    let alphas = state.alphas();
    let kerr_shift = |i: usize| m[i].kerr * (T::lit(2.0) * alphas[i].norm_sqr() + T::one());
    FramePhases {
        b: [params.delta_c - m[0].delta, params.delta_c - m[1].delta],
        c: [kerr_shift(0), kerr_shift(1)],
        d: [m[0].delta, m[1].delta],
    }
}

/// Time derivatives of the three mean amplitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanFieldRates<T> {
    pub alpha1: Complex<T>,
    pub alpha2: Complex<T>,
    pub beta: Complex<T>,
}

/// Complex gains of one fluctuation equation onto a partner mode:
/// `d(delta b)/dt ⊃ direct * delta c + conjugate * delta c†`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoupling<T> {
    pub direct: Complex<T>,
    pub conjugate: Complex<T>,
}

/// Linearization coefficients attached to one magnon.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagnonCoefficients<T> {
    /// Self terms (P, Q).
    pub own: ModeCoupling<T>,
    /// Magnon driven by the cavity fluctuation (R, S).
    pub from_cavity: ModeCoupling<T>,
    /// Cavity driven by this magnon's fluctuation (U, W).
    pub into_cavity: ModeCoupling<T>,
    /// Inhomogeneous drive of the magnon fluctuation (F_i).
    pub drive: Complex<T>,
}

/// All coefficients of the linearized fluctuation equations at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientSet<T> {
    pub magnons: [MagnonCoefficients<T>; 2],
    /// Cavity self term (T), always `-gamma_c / 2`.
    pub cavity_self: Complex<T>,
    /// Inhomogeneous drive of the cavity fluctuation (F_3).
    pub cavity_drive: Complex<T>,
    pub t: T,
}

/// Phase factors of one magnon at the current mean field, shared by the
/// drift and the coefficients.
#[derive(Debug, Clone, Copy)]
pub(crate) struct MagnonKinematics<T> {
    pub secular: Complex<T>,
    pub occupation: T,
    /// `exp(i t (B - C))`.
    pub coupling_phase: Complex<T>,
    /// `exp(i t (D + C))`.
    pub drive_phase: Complex<T>,
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Kinematics<T> {
    pub magnons: [MagnonKinematics<T>; 2],
    /// `exp(i delta_c t)`.
    pub cavity_drive_phase: Complex<T>,
}

#[inline]
fn unit_phase<T: Scalar>(angle: T) -> Complex<T> {
    let (s, c) = angle.sin_cos();
    Complex::new(c, s)
}

#[inline]
fn i_unit<T: Scalar>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

pub(crate) fn kinematics<T: Scalar>(params: &SystemParams<T>, state: &MeanFieldState<T>) -> Kinematics<T> {
    let phases = frame_phases(params, state);
    let m = params.magnons();
    let alphas = state.alphas();
    let t = state.t;
    let one = |i: usize| MagnonKinematics {
        secular: kerr_secular_factor(m[i].kerr, t),
        occupation: alphas[i].norm_sqr(),
        coupling_phase: unit_phase(t * (phases.b[i] - phases.c[i])),
        drive_phase: unit_phase(t * (phases.d[i] + phases.c[i])),
    };
    Kinematics {
        magnons: [one(0), one(1)],
        cavity_drive_phase: unit_phase(params.delta_c * t),
    }
}

pub(crate) fn drift_from<T: Scalar>(
    params: &SystemParams<T>,
    state: &MeanFieldState<T>,
    kin: &Kinematics<T>,
) -> MeanFieldRates<T> {
    let i = i_unit::<T>();
    let half = T::lit(0.5);
    let m = params.magnons();
    let alphas = state.alphas();
    let beta = state.beta;
    let beta_conj = beta.conj();

    let magnon_rate = |idx: usize| {
        let p = &m[idx];
        let k = &kin.magnons[idx];
        let alpha = alphas[idx];
        let a = k.secular;
        let x = k.coupling_phase;
        let y = k.drive_phase;
        let bracket = beta_conj * a * x * alpha * alpha * p.g
            - y * p.omega
            - alpha.conj() * a * y * alpha * p.omega
            - x.conj() * beta * p.g
            - beta * a * x.conj() * (p.g * k.occupation)
            + a * y.conj() * alpha * alpha * p.omega;
        -alpha * (p.gamma * half) + i * bracket
    };

    let cavity_rate = -beta * (params.gamma_c * half)
        - i * (kin.magnons[0].coupling_phase * alphas[0] * m[0].g + kin.magnons[1].coupling_phase * alphas[1] * m[1].g)
        - i * kin.cavity_drive_phase * params.omega_c;

    MeanFieldRates {
        alpha1: magnon_rate(0),
        alpha2: magnon_rate(1),
        beta: cavity_rate,
    }
}

pub(crate) fn coefficients_from<T: Scalar>(
    params: &SystemParams<T>,
    state: &MeanFieldState<T>,
    kin: &Kinematics<T>,
) -> CoefficientSet<T> {
    let i = i_unit::<T>();
    let one = Complex::new(T::one(), T::zero());
    let two = Complex::new(T::lit(2.0), T::zero());
    let half = T::lit(0.5);
    let m = params.magnons();
    let alphas = state.alphas();
    let beta = state.beta;
    let beta_conj = beta.conj();

    let magnon = |idx: usize| {
        let p = &m[idx];
        let k = &kin.magnons[idx];
        let alpha = alphas[idx];
        let alpha_conj = alpha.conj();
        let alpha_sq = alpha * alpha;
        let a = k.secular;
        let an = a * k.occupation;
        let x = k.coupling_phase;
        let xc = x.conj();
        let y = k.drive_phase;
        let yc = y.conj();
        let (g, om) = (p.g, p.omega);

        let own_direct = Complex::new(-p.gamma * half, T::zero())
            + i * (a * alpha * beta_conj * (two - an) * x * g
                - a * alpha_conj * y * om
                - a * alpha_conj * beta * xc * g
                - a * alpha_conj * y * (one + an) * om
                + a * alpha * yc * (two - an) * om
                - a * alpha_conj * beta * xc * (one + an) * g);
        let own_conjugate = i
            * (-a * a * alpha_sq * alpha * beta_conj * x * g
                - a * alpha * y * om
                - a * alpha * beta * xc * g
                - a * alpha * (one + an) * y * om
                - a * a * alpha_sq * alpha * yc * om
                - a * alpha * beta * (one + an) * xc * g);
        let from_cavity = ModeCoupling {
            direct: -i * (one + an) * xc * g,
            conjugate: i * a * alpha_sq * x * g,
        };
        let into_cavity = ModeCoupling {
            direct: -i * (one - an) * x * g,
            conjugate: i * a * alpha_sq * x * g,
        };
        let drive = i
            * (a * alpha_sq * beta_conj * x * g
                - y * om
                - beta * xc * g
                - an * y * om
                + an * yc * om
                - an * beta * xc * g);
        MagnonCoefficients {
            own: ModeCoupling { direct: own_direct, conjugate: own_conjugate },
            from_cavity,
            into_cavity,
            drive,
        }
    };

    // Printed form: only the first magnon's coupling survives here.
    let cavity_drive = -i * (kin.magnons[0].coupling_phase * m[0].g - i * kin.cavity_drive_phase * params.omega_c);

    CoefficientSet {
        magnons: [magnon(0), magnon(1)],
        cavity_self: Complex::new(-params.gamma_c * half, T::zero()),
        cavity_drive,
        t: state.t,
    }
}

/// Right-hand side of the noise-free mean-field equations.
pub fn mean_field_drift<T: Scalar>(params: &SystemParams<T>, state: &MeanFieldState<T>) -> MeanFieldRates<T> {
    drift_from(params, state, &kinematics(params, state))
}

/// Linearization coefficients of the fluctuation equations about `state`.
pub fn linearization_coefficients<T: Scalar>(
    params: &SystemParams<T>,
    state: &MeanFieldState<T>,
) -> CoefficientSet<T> {
    coefficients_from(params, state, &kinematics(params, state))
}

/// Largest `|A_i| |alpha_i|^2` at `state`; the Kerr expansion is only
/// meaningful while this stays small.
pub fn secular_magnitude<T: Scalar>(params: &SystemParams<T>, state: &MeanFieldState<T>) -> T {
    let m = params.magnons();
    let alphas = state.alphas();
    (0..2)
        .map(|i| kerr_secular_factor(m[i].kerr, state.t).norm() * alphas[i].norm_sqr())
        .fold(T::zero(), T::max)
}
