mod common;

use magsync::dynamics::{propagate, InitialCovariance, PSD_TOLERANCE};
use magsync::experiments::Scenario;
use magsync::{Config, Covariance, Params};

fn quiet(g: f64) -> Params {
    let mut p = Params::reference(1.0);
    (p.omega1, p.omega2, p.omega_c, p.k1, p.k2, p.g1, p.g2) = (0.0, 0.0, 0.0, 0.0, 0.0, g, g);
    p
}

fn max_vacuum_deviation(config: &Config) -> f64 {
    let traj = propagate(config).unwrap();
    let vac = Covariance::vacuum();
    traj.records
        .iter()
        .flat_map(|r| r.covariance.packed().iter().zip(vac.packed()).map(|(a, b)| (a - b).abs()))
        .fold(0.0, f64::max)
}

#[test]
fn beam_splitter_coupling_preserves_vacuum() {
    for g in [0.0, 0.1, 0.7] {
        let mut cfg = Config::new(quiet(g));
        (cfg.t_final, cfg.decimation, cfg.init_cov) = (100.0, 10, InitialCovariance::Vacuum);
        let dev = max_vacuum_deviation(&cfg);
        assert!(dev < 1e-9, "g = {g}: {dev:e}");
    }
}

#[test]
fn halving_the_step_changes_little() {
    let run = |dt: f64| {
        let mut cfg = Scenario::SyncTimeseries.base_config();
        (cfg.t_final, cfg.dt, cfg.decimation) = (1e3, dt, 1000);
        let last = *propagate(&cfg).unwrap().records.last().unwrap();
        assert_eq!(last.t, 1e3);
        [last.quads.q1, last.quads.p1, last.sync.s_q_phi]
    };
    let (coarse, fine) = (run(1e-2), run(5e-3));
    for (a, b) in coarse.iter().zip(&fine) {
        assert!(((a - b) / b).abs() < 1e-6, "{a} vs {b}");
    }
}

#[test]
fn short_preset_run_keeps_covariance_physical() {
    let mut cfg = Scenario::ThermalSweep.base_config();
    (cfg.t_final, cfg.decimation, cfg.params.nbar_m) = (500.0, 50, 1.0);
    let traj = propagate(&cfg).unwrap();
    for r in &traj.records {
        let m = r.covariance.to_matrix();
        assert!((0..6).all(|i| (0..6).all(|j| m[i][j].to_bits() == m[j][i].to_bits())));
        assert!(r.covariance.is_psd(PSD_TOLERANCE));
        assert!(r.sync.s_q_phi <= 1.0 + 1e-6 && r.sync.s_q_phi >= 0.0);
    }
    assert!(traj.records.windows(2).all(|w| w[0].t < w[1].t));
    assert!(traj.diagnostics.min_eigen_ratio > 0.0);
}

#[test]
fn fluctuation_drive_is_diagnostic_only() {
    let mut cfg = Scenario::PhaseLocked.base_config();
    (cfg.t_final, cfg.decimation) = (50.0, 100);
    let plain = propagate(&cfg).unwrap();
    cfg.include_fluctuation_drive = true;
    let driven = propagate(&cfg).unwrap();
    assert!(plain.records.iter().all(|r| r.fluctuation_mean.is_none()));
    for (a, b) in plain.records.iter().zip(&driven.records) {
        assert_eq!(a.covariance, b.covariance);
        assert_eq!(a.quads, b.quads);
        assert!(b.fluctuation_mean.is_some());
    }
    let last = driven.records.last().unwrap().fluctuation_mean.unwrap();
    assert!(last.iter().all(|v| v.is_finite()) && last.iter().any(|v| *v != 0.0));
}
