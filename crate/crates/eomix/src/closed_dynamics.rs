//! Lossless three-mode dynamics: pump, upconverted optical mode, microwave
//! mode coupled by the three-wave rate `g`.
//!
//! Mean-field complex amplitudes (square-root-of-photon-number units)
//! evolve under
//!
//! ```text
//! da_s/dt  = -i g conj(a_m) a_as
//! da_as/dt = -i g a_m a_s
//! da_m/dt  = -i g conj(a_s) a_as
//! ```
//!
//! With an undepleted pump (`a_s = sqrt(N_s) e^{i phi_s}` fixed) the
//! microwave and upconverted amplitudes Rabi-swap at frequency `g sqrt(N_s)`;
//! a full state transfer takes `T = pi / (2 g sqrt(N_s))`. The general system
//! conserves the photon-number pairs `|a_s|^2 + |a_as|^2` and
//! `|a_m|^2 + |a_as|^2`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ode::{integrate_at_times, OdeOptions};

/// Mean-field state of the three modes at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedState {
    /// Pump (symmetric-mode) amplitude, sqrt(photons).
    pub a_s: Complex64,
    /// Upconverted (antisymmetric-mode) amplitude, sqrt(photons).
    pub a_as: Complex64,
    /// Microwave amplitude, sqrt(photons).
    pub a_m: Complex64,
    /// Time (s).
    pub time: f64,
}

impl ClosedState {
    pub fn new(a_s: Complex64, a_as: Complex64, a_m: Complex64) -> Self {
        Self {
            a_s,
            a_as,
            a_m,
            time: 0.0,
        }
    }

    /// Pump photon number `|a_s|^2`.
    pub fn pump_photons(&self) -> f64 {
        self.a_s.norm_sqr()
    }
}

/// Undepleted-pump closed-form evolution of `(a_m, a_as)` for pump photon
/// number `n_s` and pump phase `phi_s`:
///
/// ```text
/// a_m(t)  = a_m0 cos(g sqrt(N_s) t) - i e^{-i phi_s} a_as0 sin(g sqrt(N_s) t)
/// a_as(t) = a_as0 cos(g sqrt(N_s) t) - i e^{+i phi_s} a_m0 sin(g sqrt(N_s) t)
/// ```
pub fn rabi_closed_form(
    a_m0: Complex64,
    a_as0: Complex64,
    n_s: f64,
    phi_s: f64,
    g: f64,
    t: f64,
) -> Result<(Complex64, Complex64)> {
    if !(n_s > 0.0) {
        return Err(Error::InvalidArgument(format!("n_s must be > 0, got {n_s}")));
    }
    if !(g > 0.0) {
        return Err(Error::InvalidArgument(format!("g must be > 0, got {g}")));
    }
    if t < 0.0 {
        return Err(Error::InvalidArgument(format!("t must be >= 0, got {t}")));
    }
    let theta = g * n_s.sqrt() * t;
    let (sin, cos) = theta.sin_cos();
    let i = Complex64::i();
    let a_m = a_m0 * cos - i * (-i * phi_s).exp() * a_as0 * sin;
    let a_as = a_as0 * cos - i * (i * phi_s).exp() * a_m0 * sin;
    Ok((a_m, a_as))
}

/// Time for a complete microwave→optical state transfer,
/// `T = pi / (2 g sqrt(N_s))`.
pub fn swap_time(g: f64, n_s: f64) -> Result<f64> {
    if !(g > 0.0) {
        return Err(Error::InvalidArgument(format!("g must be > 0, got {g}")));
    }
    if !(n_s > 0.0) {
        return Err(Error::InvalidArgument(format!("n_s must be > 0, got {n_s}")));
    }
    Ok(std::f64::consts::PI / (2.0 * g * n_s.sqrt()))
}

/// Integrate the full three-mode system (pump depletion included) from
/// `state0` to `t_end`, sampling the trajectory at `samples + 1` uniformly
/// spaced times. `tol` is the adaptive local-error tolerance and must lie in
/// `[1e-12, 1e-6]`.
pub fn integrate_full(
    state0: &ClosedState,
    g: f64,
    t_end: f64,
    tol: f64,
    samples: usize,
) -> Result<Vec<ClosedState>> {
    if !(1e-12..=1e-6).contains(&tol) {
        return Err(Error::InvalidArgument(format!(
            "integration tolerance must lie in [1e-12, 1e-6], got {tol}"
        )));
    }
    if !(t_end > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "t_end must be > 0, got {t_end}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be >= 1".into()));
    }

    let times: Vec<f64> = (0..=samples)
        .map(|k| state0.time + t_end * k as f64 / samples as f64)
        .collect();

    let y0 = [
        state0.a_s.re,
        state0.a_s.im,
        state0.a_as.re,
        state0.a_as.im,
        state0.a_m.re,
        state0.a_m.im,
    ];

    let rhs = move |_t: f64, y: &[f64; 6]| -> [f64; 6] {
        let a_s = Complex64::new(y[0], y[1]);
        let a_as = Complex64::new(y[2], y[3]);
        let a_m = Complex64::new(y[4], y[5]);
        let i = Complex64::i();
        let d_s = -i * g * a_m.conj() * a_as;
        let d_as = -i * g * a_m * a_s;
        let d_m = -i * g * a_s.conj() * a_as;
        [d_s.re, d_s.im, d_as.re, d_as.im, d_m.re, d_m.im]
    };

    let opts = OdeOptions {
        rtol: tol,
        ..Default::default()
    };
    let states = integrate_at_times(rhs, y0, &times, &opts)?;
    Ok(states
        .into_iter()
        .zip(times)
        .map(|(y, time)| ClosedState {
            a_s: Complex64::new(y[0], y[1]),
            a_as: Complex64::new(y[2], y[3]),
            a_m: Complex64::new(y[4], y[5]),
            time,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TWO_PI: f64 = std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn closed_form_identity_at_t_zero() {
        let a_m0 = c(0.3, -0.4);
        let a_as0 = c(-0.1, 0.9);
        let (a_m, a_as) = rabi_closed_form(a_m0, a_as0, 1e5, 0.7, 1e4, 0.0).unwrap();
        assert_eq!(a_m, a_m0);
        assert_eq!(a_as, a_as0);
    }

    #[test]
    fn full_swap_at_transfer_time() {
        let g = TWO_PI * 10e3;
        let n_s = 5.8022e5;
        let t_swap = swap_time(g, n_s).unwrap();
        let (a_m, a_as) = rabi_closed_form(c(1.0, 0.0), c(0.0, 0.0), n_s, 0.0, g, t_swap).unwrap();
        assert!(a_m.norm() < 1e-12, "|a_m(T)| = {}", a_m.norm());
        assert!((a_as.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn magnitude_returns_after_two_transfers() {
        let g = TWO_PI * 10e3;
        let n_s = 1e5;
        let t_swap = swap_time(g, n_s).unwrap();
        let a_m0 = c(0.8, 0.1);
        let (a_m, _) = rabi_closed_form(a_m0, c(0.0, 0.0), n_s, 0.3, g, 2.0 * t_swap).unwrap();
        assert!((a_m.norm() - a_m0.norm()).abs() < 1e-12);
    }

    #[test]
    fn swap_time_hand_value() {
        // T = pi / (2 g sqrt(N_s)) at g = 2pi·10 kHz, N_s = 5.8022e5.
        let t = swap_time(TWO_PI * 10e3, 5.8022e5).unwrap();
        let hand = std::f64::consts::PI / (2.0 * TWO_PI * 10e3 * 5.8022e5f64.sqrt());
        assert!((t - hand).abs() < 1e-20);
        assert!((t - 3.2818e-8).abs() / 3.2818e-8 < 1e-3);
    }

    #[test]
    fn swap_time_scalings() {
        let t1 = swap_time(1e4, 1e4).unwrap();
        assert!((swap_time(1e4, 4e4).unwrap() - t1 / 2.0).abs() < 1e-18);
        assert!((swap_time(2e4, 1e4).unwrap() - t1 / 2.0).abs() < 1e-18);
    }

    #[test]
    fn vacuum_initial_state_is_fixed_point() {
        let state0 = ClosedState::new(c(100.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
        let traj = integrate_full(&state0, 1e4, 1e-4, 1e-10, 16).unwrap();
        for s in &traj {
            assert_eq!(s.a_as, c(0.0, 0.0));
            assert_eq!(s.a_m, c(0.0, 0.0));
            assert_eq!(s.a_s, c(100.0, 0.0));
        }
    }

    #[test]
    fn integration_matches_closed_form_when_pump_dominates() {
        let g = TWO_PI * 10e3;
        let n_s = 1e6_f64;
        let phi_s = 0.4;
        let a_s0 = Complex64::from_polar(n_s.sqrt(), phi_s);
        let a_m0 = c(1.0, 0.0);
        let state0 = ClosedState::new(a_s0, c(0.0, 0.0), a_m0);
        let t_swap = swap_time(g, n_s).unwrap();
        let traj = integrate_full(&state0, g, 4.0 * t_swap, 1e-11, 64).unwrap();
        for s in &traj {
            let (a_m, a_as) =
                rabi_closed_form(a_m0, c(0.0, 0.0), n_s, phi_s, g, s.time).unwrap();
            assert!((s.a_m - a_m).norm() < 1e-3, "t = {}", s.time);
            assert!((s.a_as - a_as).norm() < 1e-3, "t = {}", s.time);
        }
    }

    #[test]
    fn photon_number_pairs_conserved_over_ten_periods() {
        // d(|a_s|^2 + |a_as|^2)/dt = 0 and d(|a_m|^2 + |a_as|^2)/dt = 0.
        let g = TWO_PI * 10e3;
        let n_s = 1e4_f64;
        let state0 = ClosedState::new(c(n_s.sqrt(), 0.0), c(0.2, -0.1), c(0.6, 0.3));
        let period = TWO_PI / (g * n_s.sqrt());
        let traj = integrate_full(&state0, g, 10.0 * period, 1e-10, 50).unwrap();
        let inv1_0 = state0.a_s.norm_sqr() + state0.a_as.norm_sqr();
        let inv2_0 = state0.a_m.norm_sqr() + state0.a_as.norm_sqr();
        let mut worst1 = 0.0f64;
        let mut worst2 = 0.0f64;
        for s in &traj {
            let inv1 = s.a_s.norm_sqr() + s.a_as.norm_sqr();
            let inv2 = s.a_m.norm_sqr() + s.a_as.norm_sqr();
            worst1 = worst1.max((inv1 - inv1_0).abs() / inv1_0);
            worst2 = worst2.max((inv2 - inv2_0).abs() / inv2_0.max(1.0));
        }
        assert!(worst1 <= 1e-9, "pump-pair drift {worst1:e}");
        assert!(worst2 <= 1e-9, "microwave-pair drift {worst2:e}");
    }

    #[test]
    fn tolerance_outside_allowed_window_rejected() {
        let state0 = ClosedState::new(c(10.0, 0.0), c(0.0, 0.0), c(1.0, 0.0));
        assert!(integrate_full(&state0, 1e4, 1e-4, 1e-5, 8).is_err());
        assert!(integrate_full(&state0, 1e4, 1e-4, 1e-13, 8).is_err());
    }

    proptest! {
        #[test]
        fn closed_form_preserves_two_mode_norm(
            re_m in -1.0f64..1.0, im_m in -1.0f64..1.0,
            re_as in -1.0f64..1.0, im_as in -1.0f64..1.0,
            phi_s in 0.0f64..TWO_PI,
            theta in 0.0f64..10.0,
        ) {
            let g = 1e4;
            let n_s = 2.5e5_f64;
            let t = theta / (g * n_s.sqrt());
            let a_m0 = c(re_m, im_m);
            let a_as0 = c(re_as, im_as);
            let (a_m, a_as) = rabi_closed_form(a_m0, a_as0, n_s, phi_s, g, t).unwrap();
            let before = a_m0.norm_sqr() + a_as0.norm_sqr();
            let after = a_m.norm_sqr() + a_as.norm_sqr();
            prop_assert!((after - before).abs() <= 1e-12 * before.max(1e-12));
        }

        #[test]
        fn pump_phase_covariance(theta in 0.0f64..TWO_PI, phi_s in 0.0f64..TWO_PI) {
            // Rotating the pump phase by theta rotates a_as by theta when
            // a_as0 = 0.
            let g = 1e4;
            let n_s = 4e4_f64;
            let t = 0.3 / (g * n_s.sqrt());
            let a_m0 = c(0.7, -0.2);
            let (_, a_as_base) =
                rabi_closed_form(a_m0, c(0.0, 0.0), n_s, phi_s, g, t).unwrap();
            let (_, a_as_rot) =
                rabi_closed_form(a_m0, c(0.0, 0.0), n_s, phi_s + theta, g, t).unwrap();
            let expected = a_as_base * (Complex64::i() * theta).exp();
            prop_assert!((a_as_rot - expected).norm() <= 1e-12);
        }
    }

    #[test]
    fn trajectory_periodic_in_undepleted_regime() {
        let g = TWO_PI * 10e3;
        let n_s = 1e6_f64;
        let state0 = ClosedState::new(c(n_s.sqrt(), 0.0), c(0.0, 0.0), c(1.0, 0.0));
        let period = TWO_PI / (g * n_s.sqrt());
        let traj = integrate_full(&state0, g, period, 1e-11, 4).unwrap();
        let first = &traj[0];
        let last = traj.last().unwrap();
        assert!((first.a_m - last.a_m).norm() < 1e-3);
        assert!((first.a_as - last.a_as).norm() < 1e-3);
    }
}
