mod common;

use std::f64::consts::TAU;

use common::*;
use magsync::measures::{classical_sync, quantum_sync_phi, time_average};
use magsync::quadrature::MeanQuadratures;
use magsync::Covariance;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn closed_form_matches_rotated_construction() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..1000 {
        let m = random_psd(&mut rng);
        let phi = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        let closed = quantum_sync_phi(&Covariance::from_matrix(&m), phi).unwrap();
        let rotated = rotated_sync(&m, phi);
        assert!(((closed - rotated) / rotated).abs() < 1e-12, "{closed} vs {rotated}");
    }
}

#[test]
fn ramp_average_over_final_fifth() {
    let series: Vec<(f64, f64)> = (0..=1000).map(|k| (k as f64 / 100.0, k as f64 / 100.0)).collect();
    let avg = time_average(&series, 0.2).unwrap();
    let direct: Vec<f64> = series.iter().filter(|(t, _)| *t >= 8.0).map(|(_, v)| *v).collect();
    assert_eq!(avg, direct.iter().sum::<f64>() / direct.len() as f64);
    assert!((avg - 9.0).abs() < 1e-9);
}

fn quads(v: [f64; 6]) -> MeanQuadratures<f64> {
    MeanQuadratures { q1: v[0], p1: v[1], q2: v[2], p2: v[3], x: v[4], y: v[5] }
}

proptest! {
    #[test]
    fn periodic_in_phase(seed in any::<u64>(), phi in -10.0f64..10.0) {
        let cov = Covariance::from_matrix(&random_psd(&mut ChaCha8Rng::seed_from_u64(seed)));
        let a = quantum_sync_phi(&cov, phi).unwrap();
        let b = quantum_sync_phi(&cov, phi + TAU).unwrap();
        prop_assert!(((a - b) / a).abs() < 1e-13);
    }

    #[test]
    fn classical_measure_is_exchange_symmetric(v in prop::array::uniform6(-5.0f64..5.0)) {
        let a = classical_sync(&quads(v));
        let b = classical_sync(&quads([v[2], v[3], v[0], v[1], v[4], v[5]]));
        prop_assert_eq!(a, b);
    }
}
