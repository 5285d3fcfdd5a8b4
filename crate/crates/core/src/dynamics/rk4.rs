use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("integration step from t = {t} produced a non-finite state")]
pub struct StepDiverged {
    pub t: f64,
}

#[inline]
fn axpy<T: Scalar, const N: usize>(y: &[T; N], h: T, k: &[T; N]) -> [T; N] {
    let mut out = *y;
    for (o, ki) in out.iter_mut().zip(k) {
        *o = *o + h * *ki;
    }
    out
}

/// One classical fourth-order Runge-Kutta step of `dy/dt = rhs(t, y)`.
///
/// The right-hand side is sampled at `t`, `t + dt/2` (twice) and `t + dt`.
pub fn rk4_step<T, const N: usize, F>(mut rhs: F, y: &[T; N], t: T, dt: T) -> Result<[T; N], StepDiverged>
where
    T: Scalar,
    F: FnMut(T, &[T; N]) -> [T; N],
{
    let half = T::lit(0.5);
    let sixth = T::lit(1.0 / 6.0);
    let two = T::lit(2.0);
    let mid = t + half * dt;

    let k1 = rhs(t, y);
    let k2 = rhs(mid, &axpy(y, half * dt, &k1));
    let k3 = rhs(mid, &axpy(y, half * dt, &k2));
    let k4 = rhs(t + dt, &axpy(y, dt, &k3));

    let mut out = *y;
    for i in 0..N {
        out[i] = out[i] + dt * sixth * (k1[i] + two * k2[i] + two * k3[i] + k4[i]);
    }
    if out.iter().all(|v| v.is_finite()) {
        Ok(out)
    } else {
        Err(StepDiverged { t: t.to_f64_lossy() })
    }
}
