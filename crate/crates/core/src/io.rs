//! Configuration documents, trajectory and summary CSV files, and the run
//! manifest.
//!
//! Configs are flat TOML documents whose keys match the field names of
//! [`SystemParams`](crate::model::SystemParams) and
//! [`ScenarioConfig`](crate::dynamics::ScenarioConfig). Floating-point CSV
//! fields use 17 significant digits, so every finite `f64` survives a
//! write/read cycle bit for bit.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{CovarianceMatrix, DynamicsError, InitialCovariance};
use crate::experiments::{set_field, Scenario, SweepError, SweepResult, SweepSpec};
use crate::quadrature::{CavityBath, DIM};
use crate::{Complex64, Config, Record};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("malformed config: {0}")]
    Parse(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("`{key}` out of range: {reason}")]
    Range { key: String, reason: String },
    #[error("invalid value for `{key}`: {reason}")]
    Invalid { key: String, reason: String },
}

impl ConfigError {
    /// The config key the error refers to, if any.
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigError::Parse(_) => None,
            ConfigError::UnknownKey(k) => Some(k),
            ConfigError::Range { key, .. } | ConfigError::Invalid { key, .. } => Some(key),
        }
    }
}

#[derive(Debug, Error)]
pub enum OutputError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{path}: {message}")]
    Format { path: PathBuf, message: String },
}

/// Every key a config document may contain.
pub const CONFIG_KEYS: [&str; 28] = [
    "scenario",
    "parallelism",
    "grid",
    "g1",
    "g2",
    "k1",
    "k2",
    "omega1",
    "omega2",
    "omega_c",
    "delta1",
    "delta2",
    "delta_c",
    "gamma1",
    "gamma2",
    "gamma_c",
    "nbar_m",
    "t_final",
    "dt",
    "decimation",
    "window_fraction",
    "init_alpha1",
    "init_alpha2",
    "init_beta",
    "init_cov",
    "init_cov_matrix",
    "include_f",
    "cavity_bath",
];

fn is_known_key(key: &str) -> bool {
    CONFIG_KEYS.contains(&key)
}

/// Flat config document. Absent keys take the scenario preset's value.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parallelism: Option<usize>,
    /// Sweep grids as `"key=v1,v2,..."`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega_c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma1: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma2: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nbar_m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_final: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decimation: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window_fraction: Option<f64>,
    /// `[re, im]`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init_alpha1: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init_alpha2: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init_beta: Option<[f64; 2]>,
    /// `"thermal-magnon"`, `"vacuum"` or `"explicit"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init_cov: Option<String>,
    /// Row-major 6x6 matrix, required when `init_cov = "explicit"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub init_cov_matrix: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub include_f: Option<bool>,
    /// `"thermal"` or `"vacuum"`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cavity_bath: Option<String>,
}

/// A config with every default filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedConfig {
    pub spec: SweepSpec,
    pub config: Config,
}

fn invalid(key: &str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { key: key.to_string(), reason: reason.into() }
}

fn sweep_error(e: SweepError) -> ConfigError {
    match e {
        SweepError::UnknownKey(k) => ConfigError::UnknownKey(k),
        SweepError::EmptyGrid(k) => invalid("grid", format!("grid for `{k}` is empty")),
        SweepError::UnknownScenario(s) => invalid("scenario", format!("unknown scenario `{s}`")),
        SweepError::Parallelism => ConfigError::Range { key: "parallelism".into(), reason: "must be at least 1".into() },
        SweepError::Config { source, .. } => dynamics_error(source),
        other => ConfigError::Parse(other.to_string()),
    }
}

fn dynamics_error(e: DynamicsError) -> ConfigError {
    match e {
        DynamicsError::ConfigInvalid { key, reason } => ConfigError::Range { key: key.to_string(), reason },
        other => ConfigError::Parse(other.to_string()),
    }
}

/// Parses one `key=v1,v2,...` grid specification.
pub fn parse_grid(text: &str) -> Result<(String, Vec<f64>), ConfigError> {
    let (key, values) = text
        .split_once('=')
        .ok_or_else(|| invalid("grid", format!("expected key=v1,v2,... in `{text}`")))?;
    let key = key.trim().to_string();
    let values = values
        .split(',')
        .filter(|v| !v.trim().is_empty())
        .map(|v| v.trim().parse::<f64>().map_err(|_| invalid("grid", format!("`{v}` is not a number"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((key, values))
}

pub fn format_grid(key: &str, values: &[f64]) -> String {
    let joined: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("{key}={}", joined.join(","))
}

fn complex(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

/// Parses a config document and resolves it against its scenario preset.
///
/// `scenario` (from the command line) takes precedence over the document's
/// own `scenario` key; with neither, the `custom` preset is used.
pub fn parse_config(text: &str, scenario: Option<Scenario>) -> Result<ResolvedConfig, ConfigError> {
    let table: toml::Table = text.parse().map_err(|e: toml::de::Error| ConfigError::Parse(e.message().to_string()))?;
    if let Some(key) = table.keys().find(|k| !is_known_key(k)) {
        return Err(ConfigError::UnknownKey(key.clone()));
    }
    let doc: ConfigDocument = table.try_into().map_err(|e: toml::de::Error| ConfigError::Parse(e.message().to_string()))?;
    resolve(&doc, scenario)
}

/// Fills the gaps of `doc` from the preset and validates the result.
pub fn resolve(doc: &ConfigDocument, scenario: Option<Scenario>) -> Result<ResolvedConfig, ConfigError> {
    let scenario = match (scenario, &doc.scenario) {
        (Some(s), _) => s,
        (None, Some(name)) => name.parse().map_err(sweep_error)?,
        (None, None) => Scenario::Custom,
    };
    let mut config = scenario.base_config();
    let numeric = [
        ("g1", doc.g1),
        ("g2", doc.g2),
        ("k1", doc.k1),
        ("k2", doc.k2),
        ("omega1", doc.omega1),
        ("omega2", doc.omega2),
        ("omega_c", doc.omega_c),
        ("delta1", doc.delta1),
        ("delta2", doc.delta2),
        ("delta_c", doc.delta_c),
        ("gamma1", doc.gamma1),
        ("gamma2", doc.gamma2),
        ("gamma_c", doc.gamma_c),
        ("nbar_m", doc.nbar_m),
        ("t_final", doc.t_final),
        ("dt", doc.dt),
        ("window_fraction", doc.window_fraction),
    ];
    for (key, value) in numeric {
        if let Some(v) = value {
            set_field(&mut config, key, v).map_err(sweep_error)?;
        }
    }
    if let Some(d) = doc.decimation {
        config.decimation = usize::try_from(d).map_err(|_| invalid("decimation", "too large"))?;
    }
    if let Some(v) = doc.init_alpha1 {
        config.init_alpha1 = complex(v);
    }
    if let Some(v) = doc.init_alpha2 {
        config.init_alpha2 = complex(v);
    }
    if let Some(v) = doc.init_beta {
        config.init_beta = complex(v);
    }
    if let Some(f) = doc.include_f {
        config.include_fluctuation_drive = f;
    }
    if let Some(bath) = &doc.cavity_bath {
        config.cavity_bath = match bath.as_str() {
            "thermal" => CavityBath::Thermal,
            "vacuum" => CavityBath::Vacuum,
            other => return Err(invalid("cavity_bath", format!("`{other}` is not thermal|vacuum"))),
        };
    }
    config.init_cov = match (doc.init_cov.as_deref(), &doc.init_cov_matrix) {
        (None | Some("thermal-magnon"), None) => InitialCovariance::ThermalMagnons,
        (Some("vacuum"), None) => InitialCovariance::Vacuum,
        (Some("explicit"), Some(rows)) => InitialCovariance::Explicit(explicit_covariance(rows)?),
        (Some("explicit"), None) => return Err(invalid("init_cov_matrix", "required when init_cov = \"explicit\"")),
        (_, Some(_)) => return Err(invalid("init_cov_matrix", "only allowed with init_cov = \"explicit\"")),
        (Some(other), None) => {
            return Err(invalid("init_cov", format!("`{other}` is not thermal-magnon|vacuum|explicit")))
        }
    };

    let overrides = match &doc.grid {
        Some(grids) => grids.iter().map(|g| parse_grid(g)).collect::<Result<Vec<_>, _>>()?,
        None => scenario.default_grid(),
    };
    let spec = SweepSpec { scenario, overrides, parallelism: doc.parallelism.unwrap_or(1) };
    spec.validate().map_err(sweep_error)?;
    config.validate().map_err(dynamics_error)?;
    Ok(ResolvedConfig { spec, config })
}

fn explicit_covariance(rows: &[Vec<f64>]) -> Result<CovarianceMatrix<f64>, ConfigError> {
    if rows.len() != DIM || rows.iter().any(|r| r.len() != DIM) {
        return Err(invalid("init_cov_matrix", "must be 6x6"));
    }
    let mut m = [[0.0; DIM]; DIM];
    for (i, row) in rows.iter().enumerate() {
        m[i].copy_from_slice(row);
    }
    if (0..DIM).any(|i| (0..i).any(|j| m[i][j] != m[j][i])) {
        return Err(invalid("init_cov_matrix", "must be symmetric"));
    }
    Ok(CovarianceMatrix::from_matrix(&m))
}

/// The fully explicit document describing `resolved`.
pub fn to_document(resolved: &ResolvedConfig) -> ConfigDocument {
    let c = &resolved.config;
    let p = &c.params;
    let pair = |z: Complex64| Some([z.re, z.im]);
    let (init_cov, init_cov_matrix) = match &c.init_cov {
        InitialCovariance::ThermalMagnons => ("thermal-magnon", None),
        InitialCovariance::Vacuum => ("vacuum", None),
        InitialCovariance::Explicit(m) => ("explicit", Some(m.to_matrix().iter().map(|r| r.to_vec()).collect())),
    };
    ConfigDocument {
        scenario: Some(resolved.spec.scenario.name().to_string()),
        parallelism: Some(resolved.spec.parallelism),
        grid: Some(resolved.spec.overrides.iter().map(|(k, v)| format_grid(k, v)).collect()),
        g1: Some(p.g1),
        g2: Some(p.g2),
        k1: Some(p.k1),
        k2: Some(p.k2),
        omega1: Some(p.omega1),
        omega2: Some(p.omega2),
        omega_c: Some(p.omega_c),
        delta1: Some(p.delta1),
        delta2: Some(p.delta2),
        delta_c: Some(p.delta_c),
        gamma1: Some(p.gamma1),
        gamma2: Some(p.gamma2),
        gamma_c: Some(p.gamma_c),
        nbar_m: Some(p.nbar_m),
        t_final: Some(c.t_final),
        dt: Some(c.dt),
        decimation: Some(c.decimation as u64),
        window_fraction: Some(c.window_fraction),
        init_alpha1: pair(c.init_alpha1),
        init_alpha2: pair(c.init_alpha2),
        init_beta: pair(c.init_beta),
        init_cov: Some(init_cov.to_string()),
        init_cov_matrix,
        include_f: Some(c.include_fluctuation_drive),
        cavity_bath: Some(
            match c.cavity_bath {
                CavityBath::Thermal => "thermal",
                CavityBath::Vacuum => "vacuum",
            }
            .to_string(),
        ),
    }
}

/// Serializes `resolved` as a complete config document.
pub fn serialize_config(resolved: &ResolvedConfig) -> String {
    // Plain data with no maps or non-string keys always serializes.
    toml::to_string(&to_document(resolved)).expect("config document serializes")
}

fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Column layout of trajectory files.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TrajectoryColumns {
    /// Append the 13 covariance entries not in the default set.
    pub full_covariance: bool,
    /// Append the F-driven fluctuation mean, when tracked.
    pub fluctuation_mean: bool,
}

pub const TRAJECTORY_HEADER: [&str; 18] = [
    "t", "qbar1", "pbar1", "qbar2", "pbar2", "xbar", "ybar", "epsC", "phi", "sQphi", "C11", "C22", "C33", "C44", "C13",
    "C24", "C23", "C14",
];

/// Zero-based `(row, col)` of the covariance columns in the default header.
const DEFAULT_COV: [(usize, usize); 8] = [(0, 0), (1, 1), (2, 2), (3, 3), (0, 2), (1, 3), (1, 2), (0, 3)];

const FLUCTUATION_HEADER: [&str; 6] = ["fq1", "fp1", "fq2", "fp2", "fx", "fy"];

fn extra_cov_entries() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..DIM {
        for j in i..DIM {
            if !DEFAULT_COV.contains(&(i, j)) {
                out.push((i, j));
            }
        }
    }
    out
}

/// A parsed trajectory file.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl TrajectoryTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// Bitwise equality, so that NaN phases compare equal to themselves.
    pub fn bit_eq(&self, other: &Self) -> bool {
        self.header == other.header
            && self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()))
            })
    }
}

/// Lays out records as they are written to disk.
pub fn trajectory_table(records: &[Record], columns: TrajectoryColumns) -> TrajectoryTable {
    let mut header: Vec<String> = TRAJECTORY_HEADER.iter().map(|s| s.to_string()).collect();
    let extra = extra_cov_entries();
    if columns.full_covariance {
        header.extend(extra.iter().map(|(i, j)| format!("C{}{}", i + 1, j + 1)));
    }
    if columns.fluctuation_mean {
        header.extend(FLUCTUATION_HEADER.iter().map(|s| s.to_string()));
    }
    let rows = records
        .iter()
        .map(|r| {
            let q = &r.quads;
            let mut row = vec![r.t, q.q1, q.p1, q.q2, q.p2, q.x, q.y, r.sync.eps_c, r.sync.phi, r.sync.s_q_phi];
            row.extend(DEFAULT_COV.iter().map(|&(i, j)| r.covariance.get(i, j)));
            if columns.full_covariance {
                row.extend(extra.iter().map(|&(i, j)| r.covariance.get(i, j)));
            }
            if columns.fluctuation_mean {
                row.extend(r.fluctuation_mean.unwrap_or([f64::NAN; DIM]));
            }
            row
        })
        .collect();
    TrajectoryTable { header, rows }
}

fn write_table(path: &Path, table: &TrajectoryTable) -> Result<(), OutputError> {
    let csv_err = |source| OutputError::Csv { path: path.to_path_buf(), source };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(&table.header).map_err(csv_err)?;
    for row in &table.rows {
        w.write_record(row.iter().map(|v| fmt_f64(*v))).map_err(csv_err)?;
    }
    w.flush().map_err(|source| OutputError::Io { path: path.to_path_buf(), source })
}

pub fn write_trajectory(records: &[Record], path: &Path, columns: TrajectoryColumns) -> Result<(), OutputError> {
    write_table(path, &trajectory_table(records, columns))
}

pub fn read_trajectory(path: &Path) -> Result<TrajectoryTable, OutputError> {
    let csv_err = |source| OutputError::Csv { path: path.to_path_buf(), source };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    let header: Vec<String> = r.headers().map_err(csv_err)?.iter().map(|s| s.to_string()).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let row = rec
            .iter()
            .map(|f| {
                f.parse::<f64>().map_err(|_| OutputError::Format {
                    path: path.to_path_buf(),
                    message: format!("`{f}` is not a number"),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    Ok(TrajectoryTable { header, rows })
}

const SUMMARY_METRICS: [&str; 9] = [
    "phi_final",
    "phi_tail_median",
    "eps_c_tail_rms",
    "sq_phi_mean",
    "sq_phi_tail_median",
    "sync_diff_ratio",
    "max_secular",
    "min_eigen_ratio",
    "max_sq_phi",
];

/// Per-point summary CSV. Contains no timing information, so identical
/// sweeps give identical bytes.
pub fn format_summary(result: &SweepResult) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["point".to_string()];
    header.extend(result.spec.keys());
    header.push("status".into());
    header.extend(SUMMARY_METRICS.iter().map(|s| s.to_string()));
    header.push("error".into());
    // Writes into a Vec cannot fail.
    w.write_record(&header).unwrap();
    for p in &result.points {
        let mut row = vec![p.index.to_string()];
        row.extend(p.values.iter().map(|v| fmt_f64(*v)));
        match &p.outcome {
            Ok(m) => {
                row.push("ok".into());
                for v in [
                    m.phi_final,
                    m.phi_tail_median,
                    m.eps_c_tail_rms,
                    m.sq_phi_mean,
                    m.sq_phi_tail_median,
                    m.sync_diff_ratio,
                    m.max_secular,
                    m.min_eigen_ratio,
                    m.max_sq_phi,
                ] {
                    row.push(fmt_f64(v));
                }
                row.push(String::new());
            }
            Err(msg) => {
                row.push("error".into());
                row.extend(std::iter::repeat_n(String::new(), SUMMARY_METRICS.len()));
                row.push(msg.clone());
            }
        }
        w.write_record(&row).unwrap();
    }
    String::from_utf8(w.into_inner().unwrap()).unwrap()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointDiagnostics {
    pub point: usize,
    pub status: String,
    pub trajectory: Option<String>,
    pub runtime_seconds: f64,
    pub max_secular: Option<f64>,
    pub min_eigen_ratio: Option<f64>,
}

/// Description of one output directory, written after every other file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub software: String,
    pub version: String,
    pub scenario: String,
    pub runtime_seconds: f64,
    pub summary: String,
    pub points: Vec<PointDiagnostics>,
    pub config: ConfigDocument,
}

pub const MANIFEST_FILE: &str = "manifest.toml";
pub const SUMMARY_FILE: &str = "summary.csv";

impl RunManifest {
    pub fn resolved_config(&self) -> Result<ResolvedConfig, ConfigError> {
        resolve(&self.config, None)
    }

    pub fn read(dir: &Path) -> Result<Self, OutputError> {
        let path = dir.join(MANIFEST_FILE);
        let text = fs::read_to_string(&path).map_err(|source| OutputError::Io { path: path.clone(), source })?;
        toml::from_str(&text).map_err(|e| OutputError::Format { path, message: e.to_string() })
    }
}

/// Writes trajectories, the summary and finally the manifest into `dir`.
pub fn write_run(
    result: &SweepResult,
    resolved: &ResolvedConfig,
    dir: &Path,
    columns: TrajectoryColumns,
    runtime_seconds: f64,
) -> Result<RunManifest, OutputError> {
    fs::create_dir_all(dir).map_err(|source| OutputError::Io { path: dir.to_path_buf(), source })?;
    let mut points = Vec::with_capacity(result.points.len());
    for p in &result.points {
        let trajectory = match &p.trajectory {
            Some(traj) => {
                let name = format!("trajectory_{:03}.csv", p.index);
                let cols = TrajectoryColumns {
                    fluctuation_mean: columns.fluctuation_mean && p.config.include_fluctuation_drive,
                    ..columns
                };
                write_trajectory(&traj.records, &dir.join(&name), cols)?;
                Some(name)
            }
            None => None,
        };
        let metrics = p.outcome.as_ref().ok();
        points.push(PointDiagnostics {
            point: p.index,
            status: if metrics.is_some() { "ok".into() } else { "error".into() },
            trajectory,
            runtime_seconds: p.runtime.as_secs_f64(),
            max_secular: metrics.map(|m| m.max_secular),
            min_eigen_ratio: metrics.map(|m| m.min_eigen_ratio),
        });
    }
    let summary_path = dir.join(SUMMARY_FILE);
    fs::write(&summary_path, format_summary(result))
        .map_err(|source| OutputError::Io { path: summary_path.clone(), source })?;

    let manifest = RunManifest {
        software: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        scenario: result.spec.scenario.name().to_string(),
        runtime_seconds,
        summary: SUMMARY_FILE.to_string(),
        points,
        config: to_document(resolved),
    };
    let path = dir.join(MANIFEST_FILE);
    let text = toml::to_string(&manifest).map_err(|e| OutputError::Format { path: path.clone(), message: e.to_string() })?;
    fs::write(&path, text).map_err(|source| OutputError::Io { path, source })?;
    Ok(manifest)
}
