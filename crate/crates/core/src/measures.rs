//! Synchronization figures of merit.
//!
//! Classical synchronization compares the mean quadratures of the two
//! magnons; quantum phi-synchronization compares their fluctuations after
//! rotating the second magnon's frame by the mean-field phase difference.

use thiserror::Error;

use crate::dynamics::CovarianceMatrix;
use crate::quadrature::MeanQuadratures;
use crate::scalar::Scalar;

/// Amplitudes below this are treated as "no limit cycle".
pub const PHASE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("phase of magnon {mode} is undefined: zero mean amplitude")]
    PhaseUndefined { mode: usize },
    #[error("fluctuation sum {value} is not positive: unphysical covariance")]
    DenominatorNonpositive { value: f64 },
    #[error("no samples fall inside the averaging window")]
    EmptyWindow,
    #[error("window fraction {0} is outside (0, 1]")]
    InvalidWindow(f64),
}

/// Classical synchronization of the mean quadratures.
///
/// `eps_c` is the mean-square difference and `s_c = 1 / eps_c`, which is
/// `+inf` at perfect synchronization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalSync<T> {
    pub eps_c: T,
    pub s_c: T,
}

pub fn classical_sync<T: Scalar>(quads: &MeanQuadratures<T>) -> ClassicalSync<T> {
    let half = T::lit(0.5);
    let dq = quads.q1 - quads.q2;
    let dp = quads.p1 - quads.p2;
    let eps_c = half * dq * dq + half * dp * dp;
    let s_c = if eps_c == T::zero() { T::infinity() } else { eps_c.recip() };
    ClassicalSync { eps_c, s_c }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitCyclePhases<T> {
    pub phi1: T,
    pub phi2: T,
    /// `phi2 - phi1` wrapped to `(-pi, pi]`.
    pub phi: T,
}

/// Wraps an angle to `(-pi, pi]`.
pub fn wrap_phase<T: Scalar>(angle: T) -> T {
    let pi = T::PI();
    let two_pi = pi + pi;
    let mut a = angle - two_pi * ((angle + pi) / two_pi).floor();
    // floor() lands -pi on the closed end
    if a <= -pi {
        a = a + two_pi;
    }
    if a > pi {
        a = a - two_pi;
    }
    a
}

pub fn limit_cycle_phase<T: Scalar>(quads: &MeanQuadratures<T>) -> Result<LimitCyclePhases<T>, MeasureError> {
    let tol = T::lit(PHASE_TOLERANCE);
    let phase = |q: T, p: T, mode: usize| {
        if q.abs() <= tol && p.abs() <= tol {
            Err(MeasureError::PhaseUndefined { mode })
        } else {
            Ok(p.atan2(q))
        }
    };
    let phi1 = phase(quads.q1, quads.p1, 1)?;
    let phi2 = phase(quads.q2, quads.p2, 2)?;
    Ok(LimitCyclePhases { phi1, phi2, phi: wrap_phase(phi2 - phi1) })
}

/// Quantum phi-synchronization from the magnon block of the covariance:
/// `2 / [C11 + C22 + C33 + C44 + 2 sin(phi)(C23 - C14) - 2 cos(phi)(C13 + C24)]`
/// with one-based indices over `(q1, p1, q2, p2)`. At `phi = 0` this is the
/// plain quantum synchronization measure.
pub fn quantum_sync_phi<T: Scalar>(cov: &CovarianceMatrix<T>, phi: T) -> Result<T, MeasureError> {
    let two = T::lit(2.0);
    let c = |i: usize, j: usize| cov.get(i - 1, j - 1);
    let (s, co) = phi.sin_cos();
    let denom = c(1, 1) + c(2, 2) + c(3, 3) + c(4, 4) + two * s * (c(2, 3) - c(1, 4)) - two * co * (c(1, 3) + c(2, 4));
    // NaN falls through to the error branch as well.
    if denom > T::zero() {
        Ok(two / denom)
    } else {
        Err(MeasureError::DenominatorNonpositive { value: denom.to_f64_lossy() })
    }
}

/// One instant's synchronization summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SyncSample<T> {
    pub eps_c: T,
    pub s_c: T,
    pub phi1: T,
    pub phi2: T,
    /// NaN while either magnon has no amplitude.
    pub phi: T,
    pub s_q_phi: T,
}

/// Evaluates every measure at one record. When the phase is undefined the
/// quantum measure falls back to `phi = 0` and the phases are NaN.
pub fn sync_sample<T: Scalar>(quads: &MeanQuadratures<T>, cov: &CovarianceMatrix<T>) -> SyncSample<T> {
    let classical = classical_sync(quads);
    let phases = limit_cycle_phase(quads).unwrap_or(LimitCyclePhases {
        phi1: T::nan(),
        phi2: T::nan(),
        phi: T::nan(),
    });
    let phi_used = if phases.phi.is_nan() { T::zero() } else { phases.phi };
    let s_q_phi = quantum_sync_phi(cov, phi_used).unwrap_or_else(|_| T::nan());
    SyncSample {
        eps_c: classical.eps_c,
        s_c: classical.s_c,
        phi1: phases.phi1,
        phi2: phases.phi2,
        phi: phases.phi,
        s_q_phi,
    }
}

fn window_start<T: Scalar>(series: &[(T, T)], window_fraction: T) -> Result<T, MeasureError> {
    if !(window_fraction > T::zero() && window_fraction <= T::one()) {
        return Err(MeasureError::InvalidWindow(window_fraction.to_f64_lossy()));
    }
    let (first, last) = match (series.first(), series.last()) {
        (Some(f), Some(l)) => (f.0, l.0),
        _ => return Err(MeasureError::EmptyWindow),
    };
    Ok(last - window_fraction * (last - first))
}

/// Values whose time lies in the final `window_fraction` of the span.
pub fn tail_window<T: Scalar>(series: &[(T, T)], window_fraction: T) -> Result<Vec<T>, MeasureError> {
    let start = window_start(series, window_fraction)?;
    let values: Vec<T> = series.iter().filter(|(t, _)| *t >= start).map(|&(_, v)| v).collect();
    if values.is_empty() {
        Err(MeasureError::EmptyWindow)
    } else {
        Ok(values)
    }
}

/// Arithmetic mean over the final `window_fraction` of the time span.
pub fn time_average<T: Scalar>(series: &[(T, T)], window_fraction: T) -> Result<T, MeasureError> {
    let values = tail_window(series, window_fraction)?;
    let n = T::from(values.len()).unwrap();
    Ok(values.into_iter().fold(T::zero(), |a, v| a + v) / n)
}

/// Median over the final `window_fraction` of the time span, NaNs skipped.
pub fn tail_median<T: Scalar>(series: &[(T, T)], window_fraction: T) -> Result<T, MeasureError> {
    let mut values: Vec<T> = tail_window(series, window_fraction)?.into_iter().filter(|v| !v.is_nan()).collect();
    if values.is_empty() {
        return Err(MeasureError::EmptyWindow);
    }
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = values.len();
    Ok(if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) * T::lit(0.5)
    })
}

/// Root mean square over the final `window_fraction` of the time span.
pub fn tail_rms<T: Scalar>(series: &[(T, T)], window_fraction: T) -> Result<T, MeasureError> {
    let values = tail_window(series, window_fraction)?;
    let n = T::from(values.len()).unwrap();
    Ok((values.into_iter().fold(T::zero(), |a, v| a + v * v) / n).sqrt())
}
