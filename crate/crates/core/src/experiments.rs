//! Named scenario presets, parameter grids and parallel sweeps.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::dynamics::{propagate, DynamicsError};
use crate::measures::{tail_median, tail_rms, time_average, MeasureError};
use crate::{Config, Params, Trajectory};

/// Tail fraction used for the shared-limit-cycle metric.
pub const LIMIT_CYCLE_TAIL: f64 = 0.1;

/// Bath occupations of the thermal-degradation preset.
pub const THERMAL_GRID: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 5.0];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("unknown parameter `{0}`")]
    UnknownKey(String),
    #[error("grid for `{0}` is empty")]
    EmptyGrid(String),
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("parallelism must be at least 1")]
    Parallelism,
    #[error("grid point {point}: {source}")]
    Config { point: usize, source: DynamicsError },
    #[error("worker pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scenario {
    /// Nearly identical drives; both magnons settle on one cycle.
    LimitCycle,
    /// Drives differ by 10%; cycles lock with a finite phase offset.
    PhaseLocked,
    /// Same physics as `PhaseLocked`, read out as S_q^phi versus time.
    SyncTimeseries,
    /// `SyncTimeseries` repeated across bath occupations.
    ThermalSweep,
    /// Phase-locked parameters as a starting point for user overrides.
    Custom,
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [
        Scenario::LimitCycle,
        Scenario::PhaseLocked,
        Scenario::SyncTimeseries,
        Scenario::ThermalSweep,
        Scenario::Custom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::LimitCycle => "limit-cycle",
            Scenario::PhaseLocked => "phase-locked",
            Scenario::SyncTimeseries => "sync-timeseries",
            Scenario::ThermalSweep => "thermal-sweep",
            Scenario::Custom => "custom",
        }
    }

    pub fn params(self) -> Params {
        match self {
            Scenario::LimitCycle => Params::reference(1.00001),
            _ => Params::reference(1.1),
        }
    }

    pub fn base_config(self) -> Config {
        Config::new(self.params())
    }

    pub fn default_grid(self) -> Vec<(String, Vec<f64>)> {
        match self {
            Scenario::ThermalSweep => vec![("nbar_m".to_string(), THERMAL_GRID.to_vec())],
            _ => Vec::new(),
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scenario::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| SweepError::UnknownScenario(s.to_string()))
    }
}

/// Keys that may be swept or overridden numerically.
pub const SWEEPABLE_KEYS: [&str; 18] = [
    "g1", "g2", "k1", "k2", "omega1", "omega2", "omega_c", "delta1", "delta2", "delta_c", "gamma1", "gamma2",
    "gamma_c", "nbar_m", "t_final", "dt", "decimation", "window_fraction",
];

/// Sets one numeric field of `config` by name.
pub fn set_field(config: &mut Config, key: &str, value: f64) -> Result<(), SweepError> {
    let p = &mut config.params;
    let slot = match key {
        "g1" => &mut p.g1,
        "g2" => &mut p.g2,
        "k1" => &mut p.k1,
        "k2" => &mut p.k2,
        "omega1" => &mut p.omega1,
        "omega2" => &mut p.omega2,
        "omega_c" => &mut p.omega_c,
        "delta1" => &mut p.delta1,
        "delta2" => &mut p.delta2,
        "delta_c" => &mut p.delta_c,
        "gamma1" => &mut p.gamma1,
        "gamma2" => &mut p.gamma2,
        "gamma_c" => &mut p.gamma_c,
        "nbar_m" => &mut p.nbar_m,
        "t_final" => &mut config.t_final,
        "dt" => &mut config.dt,
        "window_fraction" => &mut config.window_fraction,
        "decimation" => {
            // Non-integral or negative strides become 0 and fail validation.
            config.decimation = if value >= 1.0 && value.fract() == 0.0 { value as usize } else { 0 };
            return Ok(());
        }
        other => return Err(SweepError::UnknownKey(other.to_string())),
    };
    *slot = value;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub scenario: Scenario,
    /// `(key, grid)` pairs; the sweep visits their Cartesian product with the
    /// first key varying slowest.
    pub overrides: Vec<(String, Vec<f64>)>,
    pub parallelism: usize,
}

impl SweepSpec {
    /// The preset with its default grid.
    pub fn preset(scenario: Scenario) -> Self {
        Self { scenario, overrides: scenario.default_grid(), parallelism: 1 }
    }

    pub fn keys(&self) -> Vec<String> {
        self.overrides.iter().map(|(k, _)| k.clone()).collect()
    }

    pub fn validate(&self) -> Result<(), SweepError> {
        if self.parallelism < 1 {
            return Err(SweepError::Parallelism);
        }
        for (key, grid) in &self.overrides {
            if !SWEEPABLE_KEYS.contains(&key.as_str()) {
                return Err(SweepError::UnknownKey(key.clone()));
            }
            if grid.is_empty() {
                return Err(SweepError::EmptyGrid(key.clone()));
            }
        }
        Ok(())
    }

    /// Grid points in visiting order, each as its override values.
    pub fn points(&self) -> Vec<Vec<f64>> {
        self.overrides.iter().fold(vec![Vec::new()], |acc, (_, grid)| {
            acc.iter()
                .flat_map(|prefix| {
                    grid.iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(*v);
                        p
                    })
                })
                .collect()
        })
    }
}

/// Reductions of one trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointMetrics {
    pub phi_final: f64,
    pub phi_tail_median: f64,
    pub eps_c_tail_rms: f64,
    /// Time average of S_q^phi over the config's window.
    pub sq_phi_mean: f64,
    pub sq_phi_tail_median: f64,
    /// Tail RMS of the quadrature difference over tail RMS of magnon 1's
    /// radius, over the final [`LIMIT_CYCLE_TAIL`] of the run.
    pub sync_diff_ratio: f64,
    pub max_secular: f64,
    pub min_eigen_ratio: f64,
    pub max_sq_phi: f64,
}

impl PointMetrics {
    pub fn from_trajectory(traj: &Trajectory, window_fraction: f64) -> Result<Self, MeasureError> {
        let phi = traj.series(|r| r.sync.phi);
        let sq = traj.series(|r| r.sync.s_q_phi);
        let diff = traj.series(|r| (r.quads.q1 - r.quads.q2).hypot(r.quads.p1 - r.quads.p2));
        let radius = traj.series(|r| r.quads.q1.hypot(r.quads.p1));
        Ok(Self {
            phi_final: traj.records.last().map_or(f64::NAN, |r| r.sync.phi),
            phi_tail_median: tail_median(&phi, window_fraction)?,
            eps_c_tail_rms: tail_rms(&traj.series(|r| r.sync.eps_c), window_fraction)?,
            sq_phi_mean: time_average(&sq, window_fraction)?,
            sq_phi_tail_median: tail_median(&sq, window_fraction)?,
            sync_diff_ratio: tail_rms(&diff, LIMIT_CYCLE_TAIL)? / tail_rms(&radius, LIMIT_CYCLE_TAIL)?,
            max_secular: traj.diagnostics.max_secular,
            min_eigen_ratio: traj.diagnostics.min_eigen_ratio,
            max_sq_phi: traj.records.iter().map(|r| r.sync.s_q_phi).fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PointResult {
    pub index: usize,
    /// Override values, aligned with [`SweepSpec::keys`].
    pub values: Vec<f64>,
    pub config: Config,
    /// Metrics, or the message of the failure that stopped this point.
    pub outcome: Result<PointMetrics, String>,
    pub trajectory: Option<Trajectory>,
    pub runtime: Duration,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub points: Vec<PointResult>,
}

impl SweepResult {
    pub fn failures(&self) -> usize {
        self.points.iter().filter(|p| p.outcome.is_err()).count()
    }
}

fn run_point(index: usize, values: Vec<f64>, config: Config) -> PointResult {
    let start = Instant::now();
    let (outcome, trajectory) = match propagate(&config) {
        Ok(traj) => {
            let metrics = PointMetrics::from_trajectory(&traj, config.window_fraction).map_err(|e| e.to_string());
            (metrics, Some(traj))
        }
        Err(e) => (Err(e.to_string()), None),
    };
    PointResult { index, values, config, outcome, trajectory, runtime: start.elapsed() }
}

/// Runs the preset of `spec.scenario` under the grid of `spec`.
pub fn run_scenario(spec: &SweepSpec) -> Result<SweepResult, SweepError> {
    run_sweep(spec, &spec.scenario.base_config())
}

/// Runs every grid point of `spec` starting from `base`.
///
/// Invalid configurations abort before anything runs; a point whose
/// integration diverges is reported in its row and the sweep continues.
/// Results come back in grid order for any `parallelism`.
pub fn run_sweep(spec: &SweepSpec, base: &Config) -> Result<SweepResult, SweepError> {
    spec.validate()?;
    let keys = spec.keys();
    let mut jobs = Vec::new();
    for (index, values) in spec.points().into_iter().enumerate() {
        let mut config = *base;
        for (key, value) in keys.iter().zip(&values) {
            set_field(&mut config, key, *value)?;
        }
        config.validate().map_err(|source| SweepError::Config { point: index, source })?;
        jobs.push((index, values, config));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.parallelism)
        .build()
        .map_err(|e| SweepError::ThreadPool(e.to_string()))?;
    let points = pool.install(|| {
        jobs.into_par_iter()
            .map(|(index, values, config)| run_point(index, values, config))
            .collect::<Vec<_>>()
    });
    Ok(SweepResult { spec: spec.clone(), points })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scenario_names_round_trip() {
        for sc in Scenario::ALL {
            assert_eq!(sc.name().parse::<Scenario>().unwrap(), sc);
        }
        assert!("no-such-scenario".parse::<Scenario>().is_err());
    }

    #[test]
    fn presets_encode_published_drives() {
        assert_eq!(Scenario::LimitCycle.params().omega2, 1.00001);
        assert_eq!(Scenario::PhaseLocked.params().omega2, 1.1);
        let p = Scenario::ThermalSweep.params();
        assert_eq!((p.omega1, p.omega_c, p.delta_c, p.g1, p.k2, p.gamma_c), (1.0, 1.0, -0.2, 0.1, 1e-10, 0.1));
        assert_eq!(SweepSpec::preset(Scenario::ThermalSweep).points().len(), 5);
        assert_eq!(SweepSpec::preset(Scenario::PhaseLocked).points(), vec![Vec::<f64>::new()]);
    }

    #[test]
    fn grid_is_cartesian_first_key_slowest() {
        let spec = SweepSpec {
            scenario: Scenario::Custom,
            overrides: vec![("g1".into(), vec![0.1, 0.2]), ("nbar_m".into(), vec![0.0, 1.0, 2.0])],
            parallelism: 1,
        };
        let pts = spec.points();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts[0], vec![0.1, 0.0]);
        assert_eq!(pts[2], vec![0.1, 2.0]);
        assert_eq!(pts[3], vec![0.2, 0.0]);
    }

    #[test]
    fn bad_specs_are_rejected() {
        let mut spec = SweepSpec::preset(Scenario::Custom);
        spec.overrides = vec![("frequency".into(), vec![1.0])];
        assert_eq!(run_scenario(&spec).unwrap_err(), SweepError::UnknownKey("frequency".into()));
        spec.overrides = vec![("g1".into(), vec![])];
        assert_eq!(run_scenario(&spec).unwrap_err(), SweepError::EmptyGrid("g1".into()));
        spec.overrides = vec![("gamma1".into(), vec![-0.1])];
        assert!(matches!(run_scenario(&spec).unwrap_err(), SweepError::Config { point: 0, .. }));
        spec.overrides.clear();
        spec.parallelism = 0;
        assert_eq!(run_scenario(&spec).unwrap_err(), SweepError::Parallelism);
    }

    #[test]
    fn diverging_point_is_recorded_not_fatal() {
        let spec = SweepSpec {
            scenario: Scenario::Custom,
            overrides: vec![
                ("t_final".into(), vec![200.0]),
                ("dt".into(), vec![0.5]),
                ("k1".into(), vec![1e-10, 1e3]),
            ],
            parallelism: 2,
        };
        let mut base = Scenario::Custom.base_config();
        base.decimation = 40;
        let res = run_sweep(&spec, &base).unwrap();
        assert_eq!(res.points.len(), 2);
        assert!(res.points[0].outcome.is_ok());
        assert!(res.points[1].outcome.is_err());
        assert_eq!(res.failures(), 1);
    }

    #[test]
    fn decimation_override_must_be_integral() {
        let mut c = Scenario::Custom.base_config();
        set_field(&mut c, "decimation", 250.0).unwrap();
        assert_eq!(c.decimation, 250);
        set_field(&mut c, "decimation", 2.5).unwrap();
        assert!(c.validate().is_err());
    }
}
