//! Joint time integration of the nonlinear mean field and the covariance
//! of the linearized fluctuations, `dC/dt = M C + C M^T + D`.

mod covariance;
mod rk4;

pub use covariance::{packed_index, CovarianceMatrix, PACKED_LEN};
pub use rk4::{rk4_step, StepDiverged};

use num_complex::Complex;
use thiserror::Error;

use crate::measures::{sync_sample, SyncSample};
use crate::model::{coefficients_from, drift_from, kinematics, secular_magnitude, MeanFieldState, SystemParams};
use crate::quadrature::{
    complex_to_quadratures, diffusion_matrix, drift_matrix, mean_quadratures, CavityBath, MeanQuadratures, DIM,
};
use crate::scalar::Scalar;

/// Relative tolerance of the positive-semidefiniteness check.
pub const PSD_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DynamicsError {
    #[error("invalid configuration `{key}`: {reason}")]
    ConfigInvalid { key: &'static str, reason: String },
    #[error(transparent)]
    StepDiverged(#[from] StepDiverged),
}

/// How the covariance is initialized.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum InitialCovariance<T> {
    /// Magnons thermal at the bath occupation, cavity in vacuum.
    #[default]
    ThermalMagnons,
    /// All three modes in vacuum, `C = I/2`.
    Vacuum,
    Explicit(CovarianceMatrix<T>),
}

/// Everything needed for one propagation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig<T> {
    pub params: SystemParams<T>,
    pub t_final: T,
    pub dt: T,
    /// Steps between emitted records.
    pub decimation: usize,
    pub init_alpha1: Complex<T>,
    pub init_alpha2: Complex<T>,
    pub init_beta: Complex<T>,
    pub init_cov: InitialCovariance<T>,
    /// Tail fraction used by time averages of the run.
    pub window_fraction: T,
    /// Track the F-driven first moment of the fluctuations as a diagnostic.
    pub include_fluctuation_drive: bool,
    pub cavity_bath: CavityBath,
}

impl<T: Scalar> ScenarioConfig<T> {
    /// Defaults used by all presets: start from rest, `dt = 1e-2`, one record
    /// every 1000 steps up to `t = 1e5`.
    pub fn new(params: SystemParams<T>) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        Self {
            params,
            t_final: T::lit(1e5),
            dt: T::lit(1e-2),
            decimation: 1000,
            init_alpha1: zero,
            init_alpha2: zero,
            init_beta: zero,
            init_cov: InitialCovariance::ThermalMagnons,
            window_fraction: T::lit(0.2),
            include_fluctuation_drive: false,
            cavity_bath: CavityBath::Thermal,
        }
    }

    pub fn validate(&self) -> Result<(), DynamicsError> {
        let invalid = |key: &'static str, reason: &str| Err(DynamicsError::ConfigInvalid { key, reason: reason.into() });
        if let Err(crate::model::ParamError::OutOfRange { key, reason }) = self.params.validate() {
            return invalid(key, reason);
        }
        if !(self.dt.is_finite() && self.dt > T::zero()) {
            return invalid("dt", "step must be positive and finite");
        }
        if !(self.t_final.is_finite() && self.t_final > self.dt) {
            return invalid("t_final", "must be finite and exceed dt");
        }
        if self.decimation < 1 {
            return invalid("decimation", "must be at least 1");
        }
        if !(self.window_fraction > T::zero() && self.window_fraction <= T::one()) {
            return invalid("window_fraction", "must lie in (0, 1]");
        }
        for (key, z) in [
            ("init_alpha1", self.init_alpha1),
            ("init_alpha2", self.init_alpha2),
            ("init_beta", self.init_beta),
        ] {
            if !crate::scalar::complex_is_finite(z) {
                return invalid(key, "must be finite");
            }
        }
        if let InitialCovariance::Explicit(c) = &self.init_cov {
            if !c.is_finite() {
                return invalid("init_cov_matrix", "must be finite");
            }
        }
        Ok(())
    }

    pub fn initial_covariance(&self) -> CovarianceMatrix<T> {
        match self.init_cov {
            InitialCovariance::ThermalMagnons => CovarianceMatrix::thermal_magnons(self.params.nbar_m),
            InitialCovariance::Vacuum => CovarianceMatrix::vacuum(),
            InitialCovariance::Explicit(c) => c,
        }
    }

    /// Number of integration steps, `round(t_final / dt)`.
    pub fn steps(&self) -> usize {
        (self.t_final / self.dt).round().to_usize().unwrap_or(0)
    }
}

/// One emitted sample of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRecord<T> {
    pub t: T,
    pub quads: MeanQuadratures<T>,
    pub covariance: CovarianceMatrix<T>,
    pub sync: SyncSample<T>,
    /// F-driven fluctuation mean in quadratures, when tracked.
    pub fluctuation_mean: Option<[T; DIM]>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationDiagnostics<T> {
    /// Largest `|A_i| |alpha_i|^2` seen at any emitted record.
    pub max_secular: T,
    /// Smallest `lambda_min(C) / trace(C)` over emitted records.
    pub min_eigen_ratio: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<T> {
    pub records: Vec<TrajectoryRecord<T>>,
    pub diagnostics: PropagationDiagnostics<T>,
}

impl<T: Scalar> Trajectory<T> {
    /// `(t, f(record))` pairs for use with the time-window reductions.
    pub fn series(&self, f: impl Fn(&TrajectoryRecord<T>) -> T) -> Vec<(T, T)> {
        self.records.iter().map(|r| (r.t, f(r))).collect()
    }
}

/// Stacked real state: mean field (6), packed covariance (21), F-driven
/// fluctuation mean (6).
const MEAN_LEN: usize = 6;
const STATE_LEN: usize = MEAN_LEN + PACKED_LEN + DIM;
const COV_OFFSET: usize = MEAN_LEN;
const FLUCT_OFFSET: usize = MEAN_LEN + PACKED_LEN;

fn unpack_mean<T: Scalar>(y: &[T; STATE_LEN], t: T) -> MeanFieldState<T> {
    MeanFieldState::new(Complex::new(y[0], y[1]), Complex::new(y[2], y[3]), Complex::new(y[4], y[5]), t)
}

fn unpack_cov<T: Scalar>(y: &[T; STATE_LEN]) -> CovarianceMatrix<T> {
    let mut packed = [T::zero(); PACKED_LEN];
    packed.copy_from_slice(&y[COV_OFFSET..COV_OFFSET + PACKED_LEN]);
    CovarianceMatrix::from_packed(packed)
}

/// Right-hand side of the joint system.
struct JointRhs<'a, T> {
    params: &'a SystemParams<T>,
    diffusion: [T; DIM],
    track_fluctuation: bool,
}

impl<T: Scalar> JointRhs<'_, T> {
    fn eval(&self, t: T, y: &[T; STATE_LEN]) -> [T; STATE_LEN] {
        let state = unpack_mean(y, t);
        let kin = kinematics(self.params, &state);
        let rates = drift_from(self.params, &state, &kin);
        let coeffs = coefficients_from(self.params, &state, &kin);
        let m = drift_matrix(&coeffs).m;

        let mut out = [T::zero(); STATE_LEN];
        out[0] = rates.alpha1.re;
        out[1] = rates.alpha1.im;
        out[2] = rates.alpha2.re;
        out[3] = rates.alpha2.im;
        out[4] = rates.beta.re;
        out[5] = rates.beta.im;

        let c = unpack_cov(y).to_matrix();
        let mut mc = [[T::zero(); DIM]; DIM];
        for i in 0..DIM {
            for k in 0..DIM {
                let mik = m[i][k];
                if mik == T::zero() {
                    continue;
                }
                for j in 0..DIM {
                    mc[i][j] = mc[i][j] + mik * c[k][j];
                }
            }
        }
        for i in 0..DIM {
            for j in i..DIM {
                let mut v = mc[i][j] + mc[j][i];
                if i == j {
                    v = v + self.diffusion[i];
                }
                out[COV_OFFSET + packed_index(i, j)] = v;
            }
        }

        if self.track_fluctuation {
            let drives = [
                complex_to_quadratures(coeffs.magnons[0].drive),
                complex_to_quadratures(coeffs.magnons[1].drive),
                complex_to_quadratures(coeffs.cavity_drive),
            ];
            for i in 0..DIM {
                let mut v = drives[i / 2][i % 2];
                for k in 0..DIM {
                    v = v + m[i][k] * y[FLUCT_OFFSET + k];
                }
                out[FLUCT_OFFSET + i] = v;
            }
        }
        out
    }
}

fn record<T: Scalar>(y: &[T; STATE_LEN], t: T, track_fluctuation: bool) -> TrajectoryRecord<T> {
    let state = unpack_mean(y, t);
    let quads = mean_quadratures(&state);
    let covariance = unpack_cov(y);
    let fluctuation_mean = track_fluctuation.then(|| {
        let mut f = [T::zero(); DIM];
        f.copy_from_slice(&y[FLUCT_OFFSET..]);
        f
    });
    TrajectoryRecord { t, quads, covariance, sync: sync_sample(&quads, &covariance), fluctuation_mean }
}

/// Integrates mean field and covariance from `t = 0` to `t_final` with
/// fixed-step RK4, emitting a record at `t = 0`, every `decimation` steps,
/// and at the final step.
pub fn propagate<T: Scalar>(config: &ScenarioConfig<T>) -> Result<Trajectory<T>, DynamicsError> {
    config.validate()?;
    let params = &config.params;
    let rhs = JointRhs {
        params,
        diffusion: diffusion_matrix(params, config.cavity_bath).diagonal(),
        track_fluctuation: config.include_fluctuation_drive,
    };

    let mut y = [T::zero(); STATE_LEN];
    y[0] = config.init_alpha1.re;
    y[1] = config.init_alpha1.im;
    y[2] = config.init_alpha2.re;
    y[3] = config.init_alpha2.im;
    y[4] = config.init_beta.re;
    y[5] = config.init_beta.im;
    y[COV_OFFSET..COV_OFFSET + PACKED_LEN].copy_from_slice(config.initial_covariance().packed());

    let steps = config.steps();
    let dt = config.dt;
    let mut records = Vec::with_capacity(steps / config.decimation + 2);
    let mut diagnostics = PropagationDiagnostics { max_secular: T::zero(), min_eigen_ratio: f64::INFINITY, steps };

    let mut emit = |y: &[T; STATE_LEN], t: T, records: &mut Vec<TrajectoryRecord<T>>| {
        let rec = record(y, t, config.include_fluctuation_drive);
        diagnostics.max_secular = diagnostics.max_secular.max(secular_magnitude(params, &unpack_mean(y, t)));
        let ratio = rec.covariance.min_eigenvalue() / rec.covariance.trace().to_f64_lossy();
        diagnostics.min_eigen_ratio = diagnostics.min_eigen_ratio.min(ratio);
        records.push(rec);
    };

    emit(&y, T::zero(), &mut records);
    for k in 0..steps {
        let t = T::from(k).unwrap() * dt;
        y = rk4_step(|s, v| rhs.eval(s, v), &y, t, dt)?;
        let done = k + 1;
        if done % config.decimation == 0 || done == steps {
            emit(&y, T::from(done).unwrap() * dt, &mut records);
        }
    }

    Ok(Trajectory { records, diagnostics })
}
