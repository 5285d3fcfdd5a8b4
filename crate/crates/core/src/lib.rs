//! Simulator for two driven Kerr magnon modes coupled through one microwave
//! cavity mode: nonlinear mean-field limit cycles, Gaussian fluctuation
//! covariances, and classical/quantum synchronization measures.
//!
//! The numerical core is generic over [`Scalar`]; the aliases below fix it
//! to `f64`, which is what the presets, file formats and CLI use.

pub mod dynamics;
pub mod experiments;
pub mod io;
pub mod measures;
pub mod model;
pub mod quadrature;
pub mod scalar;

pub use scalar::Scalar;

pub type Complex64 = num_complex::Complex<f64>;

pub type Params = model::SystemParams<f64>;
pub type State = model::MeanFieldState<f64>;
pub type Coefficients = model::CoefficientSet<f64>;
pub type Covariance = dynamics::CovarianceMatrix<f64>;
pub type Config = dynamics::ScenarioConfig<f64>;
pub type Record = dynamics::TrajectoryRecord<f64>;
pub type Trajectory = dynamics::Trajectory<f64>;

pub type ParamsF32 = model::SystemParams<f32>;
pub type ConfigF32 = dynamics::ScenarioConfig<f32>;
pub type TrajectoryF32 = dynamics::Trajectory<f32>;
