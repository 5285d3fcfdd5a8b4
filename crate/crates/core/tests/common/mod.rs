//! Reference implementations shared by the integration tests. Everything
//! here is written from the operator equations directly and deliberately
//! shares no code with the library.

#![allow(dead_code)]

use magsync::model::CoefficientSet;
use magsync::{Complex64 as C, Params};

pub fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Operator arguments, with each mode and its adjoint treated as independent
/// variables: `[m1, m1+, m2, m2+, a, a+]`.
pub type Operators = [C; 6];

pub const FD_STEP: f64 = 1e-6;

pub fn at_mean_field(alpha1: C, alpha2: C, beta: C) -> Operators {
    [alpha1, alpha1.conj(), alpha2, alpha2.conj(), beta, beta.conj()]
}

/// Deterministic part of the Langevin drift for `[m1, m2, a]`. The Kerr
/// frame frequency is kept operator-valued, `K (m+ m + m m+) = K (2 m+ m + 1)`,
/// so it contributes to the derivatives.
pub fn operator_drift(p: &Params, ops: &Operators, t: f64) -> [C; 3] {
    let i = C::i();
    let modes = [
        (p.g1, p.k1, p.omega1, p.delta1, p.gamma1),
        (p.g2, p.k2, p.omega2, p.delta2, p.gamma2),
    ];
    let (a, ad) = (ops[4], ops[5]);
    let mut out = [C::default(); 3];
    let mut cavity_from_magnons = C::default();
    for (idx, &(g, k, om, delta, gamma)) in modes.iter().enumerate() {
        let (m, md) = (ops[2 * idx], ops[2 * idx + 1]);
        let big_a = i * (2.0 * k * t);
        let big_b = p.delta_c - delta;
        let big_c = k * (2.0 * md * m + 1.0);
        let big_d = delta;
        let e_bc = (i * t * (big_b - big_c)).exp();
        let e_bc_inv = (-i * t * (big_b - big_c)).exp();
        let e_dc = (i * t * (big_d + big_c)).exp();
        let e_dc_inv = (-i * t * (big_d + big_c)).exp();
        let bracket = g * ad * big_a * e_bc * m * m - om * e_dc - om * md * big_a * e_dc * m - g * e_bc_inv * a
            - g * md * big_a * e_bc_inv * m * a
            + om * big_a * e_dc_inv * m * m;
        out[idx] = -gamma / 2.0 * m + i * bracket;
        cavity_from_magnons += g * e_bc * m;
    }
    out[2] = -p.gamma_c / 2.0 * a - i * p.omega_c * (i * p.delta_c * t).exp() - i * cavity_from_magnons;
    out
}

/// Central-difference Jacobian `d drift[row] / d ops[col]`.
pub fn fd_jacobian(p: &Params, ops: &Operators, t: f64, h: f64) -> [[C; 6]; 3] {
    let mut jac = [[C::default(); 6]; 3];
    for col in 0..6 {
        let mut plus = *ops;
        let mut minus = *ops;
        plus[col] += h;
        minus[col] -= h;
        let fp = operator_drift(p, &plus, t);
        let fm = operator_drift(p, &minus, t);
        for row in 0..3 {
            jac[row][col] = (fp[row] - fm[row]) / (2.0 * h);
        }
    }
    jac
}

/// The same Jacobian assembled from a coefficient set.
pub fn coefficient_jacobian(cs: &CoefficientSet<f64>) -> [[C; 6]; 3] {
    let zero = C::default();
    let [m1, m2] = &cs.magnons;
    [
        [m1.own.direct, m1.own.conjugate, zero, zero, m1.from_cavity.direct, m1.from_cavity.conjugate],
        [zero, zero, m2.own.direct, m2.own.conjugate, m2.from_cavity.direct, m2.from_cavity.conjugate],
        [
            m1.into_cavity.direct,
            m1.into_cavity.conjugate,
            m2.into_cavity.direct,
            m2.into_cavity.conjugate,
            cs.cavity_self,
            zero,
        ],
    ]
}

pub fn rel_err(value: C, reference: C) -> f64 {
    (value - reference).norm() / reference.norm()
}

/// Linear fluctuation drift written in complex form:
/// `dm_i = P m_i + Q m_i* + R a + S a*`, `da = sum(U m_i + W m_i*) + T a`.
pub fn complex_fluctuation_rate(cs: &CoefficientSet<f64>, z: &[C; 3]) -> [C; 3] {
    let a = z[2];
    let mut out = [C::default(); 3];
    let mut cavity = cs.cavity_self * a;
    for idx in 0..2 {
        let mc = &cs.magnons[idx];
        let m = z[idx];
        out[idx] = mc.own.direct * m + mc.own.conjugate * m.conj() + mc.from_cavity.direct * a
            + mc.from_cavity.conjugate * a.conj();
        cavity += mc.into_cavity.direct * m + mc.into_cavity.conjugate * m.conj();
    }
    out[2] = cavity;
    out
}

/// `delta m = (delta q + i delta p) / sqrt 2`, per mode.
pub fn to_quadratures(z: &[C; 3]) -> [f64; 6] {
    let s = std::f64::consts::SQRT_2;
    [s * z[0].re, s * z[0].im, s * z[1].re, s * z[1].im, s * z[2].re, s * z[2].im]
}

pub fn from_quadratures(y: &[f64; 6]) -> [C; 3] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    [c(y[0] * s, y[1] * s), c(y[2] * s, y[3] * s), c(y[4] * s, y[5] * s)]
}

/// `m * y` for a row-major 6x6 matrix.
pub fn matvec6(m: &[[f64; 6]; 6], y: &[f64; 6]) -> [f64; 6] {
    let mut out = [0.0; 6];
    for (o, row) in out.iter_mut().zip(m) {
        *o = row.iter().zip(y).map(|(a, b)| a * b).sum();
    }
    out
}

/// Integrates `dy/dt = f(y)` with classical RK4 on a plain array.
pub fn rk4_integrate<const N: usize>(mut f: impl FnMut(&[f64; N]) -> [f64; N], y0: [f64; N], dt: f64, steps: usize) -> [f64; N] {
    let add = |y: &[f64; N], h: f64, k: &[f64; N]| {
        let mut out = *y;
        for j in 0..N {
            out[j] += h * k[j];
        }
        out
    };
    let mut y = y0;
    for _ in 0..steps {
        let k1 = f(&y);
        let k2 = f(&add(&y, dt / 2.0, &k1));
        let k3 = f(&add(&y, dt / 2.0, &k2));
        let k4 = f(&add(&y, dt, &k3));
        for j in 0..N {
            y[j] += dt / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
        }
    }
    y
}

/// Complex-mode state stored as interleaved (re, im) pairs.
pub fn complex_state(z: &[C; 3]) -> [f64; 6] {
    [z[0].re, z[0].im, z[1].re, z[1].im, z[2].re, z[2].im]
}

pub fn complex_unstate(y: &[f64; 6]) -> [C; 3] {
    [c(y[0], y[1]), c(y[2], y[3]), c(y[4], y[5])]
}

/// Rotated-quadrature construction of S_q^phi: builds the weight vectors of
/// `dq_- = dq_1 - (dq_2 cos phi + dp_2 sin phi)` and
/// `dp_- = dp_1 - (dp_2 cos phi - dq_2 sin phi)`, then contracts with C.
pub fn rotated_sync(cov: &[[f64; 6]; 6], phi: f64) -> f64 {
    let (s, co) = phi.sin_cos();
    let u = [1.0, 0.0, -co, -s, 0.0, 0.0];
    let v = [0.0, 1.0, s, -co, 0.0, 0.0];
    let quad = |w: &[f64; 6]| -> f64 {
        let mut acc = 0.0;
        for i in 0..6 {
            for j in 0..6 {
                acc += w[i] * cov[i][j] * w[j];
            }
        }
        acc
    };
    // Mode-difference variables carry a 1/sqrt 2, hence the factor 2.
    2.0 / (quad(&u) + quad(&v))
}

/// A random linearization point: amplitudes with modulus in [0.3, 1] and
/// uniform phase, t in [10, 1e3], and Kerr strengths chosen so that
/// |A_i| = 2 K_i t is log-uniform in [0.2, 2]. Keeping every coefficient well
/// above the finite-difference roundoff floor makes relative errors meaningful.
pub fn random_point(rng: &mut impl rand::Rng) -> (Params, Operators, f64) {
    let mut amp = || {
        let r: f64 = rng.gen_range(0.3..=1.0);
        C::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
    };
    let (a1, a2, b) = (amp(), amp(), amp());
    let t: f64 = rng.gen_range(10.0..=1e3);
    let mut kerr = || 10f64.powf(rng.gen_range(0.2f64.log10()..=2f64.log10())) / (2.0 * t);
    let mut p = Params::reference(1.1);
    p.k1 = kerr();
    p.k2 = kerr();
    (p, at_mean_field(a1, a2, b), t)
}

/// Largest entrywise relative error between the analytic coefficients and
/// the finite-difference Jacobian. Structural zeros are compared absolutely.
pub fn jacobian_error(p: &Params, ops: &Operators, t: f64) -> f64 {
    let state = magsync::State::new(ops[0], ops[2], ops[4], t);
    let analytic = coefficient_jacobian(&magsync::model::linearization_coefficients(p, &state));
    let numeric = fd_jacobian(p, ops, t, FD_STEP);
    let mut worst = 0.0f64;
    for row in 0..3 {
        for col in 0..6 {
            let (a, n) = (analytic[row][col], numeric[row][col]);
            let err = if a.norm() == 0.0 { n.norm() } else { rel_err(n, a) };
            worst = worst.max(err);
        }
    }
    worst
}

/// A coefficient set with every entry drawn independently, moduli below 0.3
/// so that ten time units of growth stay moderate.
pub fn random_coefficients(rng: &mut impl rand::Rng) -> CoefficientSet<f64> {
    use magsync::model::{MagnonCoefficients, ModeCoupling};
    let mut z = || C::from_polar(rng.gen_range(0.0..0.3), rng.gen_range(0.0..std::f64::consts::TAU));
    let mut coupling = || ModeCoupling { direct: z(), conjugate: z() };
    let mut magnon = || MagnonCoefficients { own: coupling(), from_cavity: coupling(), into_cavity: coupling(), drive: C::default() };
    let magnons = [magnon(), magnon()];
    CoefficientSet { magnons, cavity_self: c(-rng.gen_range(0.0..0.3), 0.0), cavity_drive: C::default(), t: 0.0 }
}

/// Integrates the fluctuation first moment over `[0, t_end]` both in complex
/// mode form and as `dY/dt = M Y`, returning the largest relative deviation
/// seen at unit-time checkpoints.
pub fn quadrature_map_error(cs: &CoefficientSet<f64>, z0: [C; 3], t_end: usize) -> f64 {
    let m = magsync::quadrature::drift_matrix(cs).m;
    let dt = 1e-3;
    let per_unit = 1000;
    let mut z = complex_state(&z0);
    let mut y = to_quadratures(&z0);
    let mut worst = 0.0f64;
    for _ in 0..t_end {
        z = rk4_integrate(|s| complex_state(&complex_fluctuation_rate(cs, &complex_unstate(s))), z, dt, per_unit);
        y = rk4_integrate(|s| matvec6(&m, s), y, dt, per_unit);
        let from_complex = to_quadratures(&complex_unstate(&z));
        let scale = from_complex.iter().map(|v| v * v).sum::<f64>().sqrt();
        let diff = from_complex.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt();
        worst = worst.max(diff / scale);
    }
    worst
}

/// Random symmetric PSD 6x6 matrix `L L^T + eps I`.
pub fn random_psd(rng: &mut impl rand::Rng) -> [[f64; 6]; 6] {
    let mut l = [[0.0; 6]; 6];
    for row in l.iter_mut() {
        for v in row.iter_mut() {
            *v = rng.gen_range(-1.0..1.0);
        }
    }
    let mut out = [[0.0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            out[i][j] = (0..6).map(|k| l[i][k] * l[j][k]).sum::<f64>();
        }
        out[i][i] += 1e-3;
    }
    out
}
