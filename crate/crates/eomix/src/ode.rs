//! Adaptive explicit Runge–Kutta integration (Dormand–Prince 5(4)).
//!
//! Minimal fixed-dimension integrator: embedded 5th/4th-order pair with a
//! standard step controller. Steps are clamped so requested sample times are
//! hit exactly.

use crate::error::{Error, Result};

/// Dormand–Prince 5(4) coefficients.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];

/// 5th-order solution weights (same as the last A row; FSAL pair).
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];

/// Embedded 4th-order weights.
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integration options. The absolute tolerance equals `rtol`, so components
/// of order one and below are controlled absolutely at the same level.
#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            max_steps: 50_000_000,
        }
    }
}

/// Integrate `dy/dt = f(t, y)` from `times[0]`, recording the state at every
/// entry of `times` (which must be strictly increasing). Returns one state
/// vector per requested time, the first being `y0` itself.
pub fn integrate_at_times<const N: usize, F>(
    f: F,
    y0: [f64; N],
    times: &[f64],
    opts: &OdeOptions,
) -> Result<Vec<[f64; N]>>
where
    F: Fn(f64, &[f64; N]) -> [f64; N],
{
    if times.len() < 2 {
        return Err(Error::InvalidArgument(
            "integrate_at_times needs at least two sample times".into(),
        ));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "sample times must be strictly increasing".into(),
        ));
    }

    let atol = opts.rtol;
    let mut out = Vec::with_capacity(times.len());
    out.push(y0);

    let mut t = times[0];
    let mut y = y0;
    let mut k: [[f64; N]; 7] = [[0.0; N]; 7];
    k[0] = f(t, &y);

    let span = times[times.len() - 1] - times[0];
    let mut h = (span * 1e-4).min(span);
    let mut steps = 0usize;

    for &t_target in &times[1..] {
        while t < t_target {
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::StepSizeUnderflow {
                    t,
                    h,
                    tol: opts.rtol,
                });
            }
            let clamped = h >= t_target - t;
            let h_try = if clamped { t_target - t } else { h };

            // Stage evaluations.
            for stage in 0..6 {
                let mut y_stage = y;
                for (j, kj) in k.iter().enumerate().take(stage + 1) {
                    let a = A[stage][j];
                    if a != 0.0 {
                        for i in 0..N {
                            y_stage[i] += h_try * a * kj[i];
                        }
                    }
                }
                k[stage + 1] = f(t + h_try * stage_time(stage), &y_stage);
            }

            // 5th-order solution and embedded error estimate.
            let mut y5 = y;
            let mut err_vec = [0.0f64; N];
            for (j, kj) in k.iter().enumerate() {
                for i in 0..N {
                    y5[i] += h_try * B5[j] * kj[i];
                    err_vec[i] += h_try * (B5[j] - B4[j]) * kj[i];
                }
            }

            let mut err_norm_sq = 0.0;
            for i in 0..N {
                let scale = atol + opts.rtol * y[i].abs().max(y5[i].abs());
                let e = err_vec[i] / scale;
                err_norm_sq += e * e;
            }
            let err = (err_norm_sq / N as f64).sqrt();

            if err <= 1.0 {
                t += h_try;
                y = y5;
                k[0] = f(t, &y); // fresh first stage (k7 is at the accepted point, but recompute keeps it simple)
            }

            // Step controller (order 5: exponent 1/5). The conservative
            // safety factor keeps secular drift of conserved quantities
            // about two orders below the local tolerance.
            let factor = if err > 0.0 {
                (0.5 * err.powf(-0.2)).clamp(0.2, 5.0)
            } else {
                5.0
            };
            let h_next = h_try * factor;
            if !clamped || err > 1.0 {
                h = h_next;
            } else {
                h = h.max(h_next);
            }
            if !(h > 0.0) || t + h == t {
                return Err(Error::StepSizeUnderflow {
                    t,
                    h,
                    tol: opts.rtol,
                });
            }
        }
        out.push(y);
    }
    Ok(out)
}

fn stage_time(stage: usize) -> f64 {
    const C: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
    C[stage]
}
