//! Input-output solution of the lossy three-mode converter.
//!
//! The linearized (undepleted-pump) Langevin equations couple the
//! upconverted optical mode and the microwave mode to four input ports: the
//! microwave transmission line, the microwave intrinsic-loss bath, the
//! optical waveguide vacuum, and the optical intrinsic-loss bath. This module
//! evaluates the frequency-domain transfer coefficients of that solution at
//! arbitrary detuning, plus the scalar figures of merit built on them:
//! cooperativity, conversion efficiency at the matched operating point,
//! intracavity pump photon number, required pump power, and scattered power.
//!
//! Every quantity here is a coefficient magnitude of a linear model, so no
//! stochastic sampling is involved.

use num_complex::Complex64;

use crate::constants::HBAR;
use crate::error::{Error, Result};

/// Intrinsic/extrinsic decay rates of the optical doublet and the microwave
/// cavity (all rad/s). Totals are exact sums of the two channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LossBudget {
    pub gamma_i_opt: f64,
    pub gamma_ex_opt: f64,
    pub gamma_i_m: f64,
    pub gamma_ex_m: f64,
}

impl LossBudget {
    pub fn from_rates(
        gamma_i_opt: f64,
        gamma_ex_opt: f64,
        gamma_i_m: f64,
        gamma_ex_m: f64,
    ) -> Result<Self> {
        for (name, v) in [
            ("gamma_i_opt", gamma_i_opt),
            ("gamma_ex_opt", gamma_ex_opt),
            ("gamma_i_m", gamma_i_m),
            ("gamma_ex_m", gamma_ex_m),
        ] {
            if !(v > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be > 0, got {v}"
                )));
            }
        }
        Ok(Self {
            gamma_i_opt,
            gamma_ex_opt,
            gamma_i_m,
            gamma_ex_m,
        })
    }

    /// Build from quality factors: `gamma_x = omega / Q_x`.
    pub fn from_qs(
        omega_opt: f64,
        omega_m: f64,
        q_i_opt: f64,
        q_ex_opt: f64,
        q_i_m: f64,
        q_ex_m: f64,
    ) -> Result<Self> {
        Self::from_rates(
            omega_opt / q_i_opt,
            omega_opt / q_ex_opt,
            omega_m / q_i_m,
            omega_m / q_ex_m,
        )
    }

    /// Critically coupled budget (`gamma_ex = gamma_i` on both resonators)
    /// from loaded quality factors `Q_opt`, `Q_m`.
    pub fn critical_from_loaded_qs(
        omega_opt: f64,
        omega_m: f64,
        q_opt: f64,
        q_m: f64,
    ) -> Result<Self> {
        Self::from_qs(
            omega_opt,
            omega_m,
            2.0 * q_opt,
            2.0 * q_opt,
            2.0 * q_m,
            2.0 * q_m,
        )
    }

    pub fn gamma_opt(&self) -> f64 {
        self.gamma_i_opt + self.gamma_ex_opt
    }

    pub fn gamma_m(&self) -> f64 {
        self.gamma_i_m + self.gamma_ex_m
    }

    /// Loaded optical quality factor at the given carrier.
    pub fn q_opt(&self, omega_opt: f64) -> f64 {
        omega_opt / self.gamma_opt()
    }

    pub fn q_ex_opt(&self, omega_opt: f64) -> f64 {
        omega_opt / self.gamma_ex_opt
    }

    pub fn q_i_opt(&self, omega_opt: f64) -> f64 {
        omega_opt / self.gamma_i_opt
    }

    pub fn q_m(&self, omega_m: f64) -> f64 {
        omega_m / self.gamma_m()
    }

    pub fn q_ex_m(&self, omega_m: f64) -> f64 {
        omega_m / self.gamma_ex_m
    }

    pub fn q_i_m(&self, omega_m: f64) -> f64 {
        omega_m / self.gamma_i_m
    }
}

/// Everything needed to evaluate the open-system figures of merit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    /// Three-wave conversion rate (rad/s).
    pub g: f64,
    /// Intracavity pump photon number.
    pub n_s: f64,
    /// Pump phase (rad).
    pub phi_s: f64,
    pub budget: LossBudget,
    /// Optical carrier (rad/s).
    pub omega_opt: f64,
    /// Microwave resonance (rad/s).
    pub omega_m: f64,
}

impl OperatingPoint {
    pub fn new(
        g: f64,
        n_s: f64,
        phi_s: f64,
        budget: LossBudget,
        omega_opt: f64,
        omega_m: f64,
    ) -> Result<Self> {
        if n_s < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "n_s must be >= 0, got {n_s}"
            )));
        }
        Ok(Self {
            g,
            n_s,
            phi_s,
            budget,
            omega_opt,
            omega_m,
        })
    }
}

/// Which response the transfer row describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// Intracavity upconverted optical amplitude.
    UpconvertedMode,
    /// Intracavity microwave amplitude.
    MicrowaveMode,
    /// Upconverted field leaving through the optical waveguide.
    OutputPort,
}

/// Complex coefficients from the four input ports to one target, at one
/// detuning. For the output-port row the squared magnitudes sum to 1 at
/// every detuning (input-output unitarity).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferRow {
    pub target: Target,
    /// Detuning from resonance (rad/s).
    pub detuning: f64,
    /// From the microwave transmission-line input.
    pub from_microwave_in: Complex64,
    /// From the microwave intrinsic-loss vacuum port.
    pub from_microwave_bath: Complex64,
    /// From the optical waveguide vacuum port.
    pub from_waveguide_vacuum: Complex64,
    /// From the optical intrinsic-loss vacuum port.
    pub from_optical_bath: Complex64,
}

impl TransferRow {
    /// Coefficients in port order (microwave in, microwave bath, waveguide
    /// vacuum, optical bath).
    pub fn coefficients(&self) -> [Complex64; 4] {
        [
            self.from_microwave_in,
            self.from_microwave_bath,
            self.from_waveguide_vacuum,
            self.from_optical_bath,
        ]
    }

    /// Sum of squared coefficient magnitudes over the four ports.
    pub fn total_sq_magnitude(&self) -> f64 {
        self.coefficients().iter().map(|c| c.norm_sqr()).sum()
    }

    /// Photon transmission from the microwave input to this target.
    pub fn microwave_transmission(&self) -> f64 {
        self.from_microwave_in.norm_sqr()
    }
}

/// Cooperativity `C = 4 g^2 N_s / (gamma_opt gamma_M)`.
pub fn cooperativity(op: &OperatingPoint) -> f64 {
    4.0 * op.g * op.g * op.n_s / (op.budget.gamma_opt() * op.budget.gamma_m())
}

/// Pump photon number that makes the cooperativity exactly 1.
pub fn pump_photons_for_unit_cooperativity(budget: &LossBudget, g: f64) -> Result<f64> {
    if !(g > 0.0) {
        return Err(Error::InvalidArgument(format!("g must be > 0, got {g}")));
    }
    Ok(budget.gamma_opt() * budget.gamma_m() / (4.0 * g * g))
}

/// Transfer coefficients from the four input ports to the chosen target at
/// detuning `omega` (rad/s) from the rotating frame.
pub fn transfer_coefficients(op: &OperatingPoint, detuning: f64, target: Target) -> TransferRow {
    let b = &op.budget;
    let i = Complex64::i();
    let d_opt = i * detuning + b.gamma_opt() / 2.0;
    let d_m = i * detuning + b.gamma_m() / 2.0;
    let g_ns = op.g * op.n_s.sqrt();
    let denom = d_opt * d_m + g_ns * g_ns;
    let phase_plus = (i * op.phi_s).exp();
    let phase_minus = (-i * op.phi_s).exp();

    let upconverted = TransferRow {
        target: Target::UpconvertedMode,
        detuning,
        from_microwave_in: -i * g_ns * phase_plus * b.gamma_ex_m.sqrt() / denom,
        from_microwave_bath: -i * g_ns * phase_plus * b.gamma_i_m.sqrt() / denom,
        from_waveguide_vacuum: d_m * b.gamma_ex_opt.sqrt() / denom,
        from_optical_bath: d_m * b.gamma_i_opt.sqrt() / denom,
    };

    match target {
        Target::UpconvertedMode => upconverted,
        Target::MicrowaveMode => TransferRow {
            target,
            detuning,
            from_microwave_in: d_opt * b.gamma_ex_m.sqrt() / denom,
            from_microwave_bath: d_opt * b.gamma_i_m.sqrt() / denom,
            from_waveguide_vacuum: -i * g_ns * phase_minus * b.gamma_ex_opt.sqrt() / denom,
            from_optical_bath: -i * g_ns * phase_minus * b.gamma_i_opt.sqrt() / denom,
        },
        // Output field: waveguide vacuum reflected minus what the
        // upconverted mode emits, S_out = S_vac - sqrt(gamma_ex_opt) A_as.
        Target::OutputPort => {
            let root_ex = b.gamma_ex_opt.sqrt();
            TransferRow {
                target,
                detuning,
                from_microwave_in: -root_ex * upconverted.from_microwave_in,
                from_microwave_bath: -root_ex * upconverted.from_microwave_bath,
                from_waveguide_vacuum: Complex64::ONE
                    - root_ex * upconverted.from_waveguide_vacuum,
                from_optical_bath: -root_ex * upconverted.from_optical_bath,
            }
        }
    }
}

/// On-resonance transfer coefficients written out in their dedicated
/// zero-detuning closed forms (denominator `gamma_opt gamma_M / 4 + g^2 N_s`).
pub fn transfer_coefficients_resonant(op: &OperatingPoint, target: Target) -> TransferRow {
    let b = &op.budget;
    let i = Complex64::i();
    let g_ns = op.g * op.n_s.sqrt();
    let denom = b.gamma_opt() * b.gamma_m() / 4.0 + g_ns * g_ns;
    let phase_plus = (i * op.phi_s).exp();
    let phase_minus = (-i * op.phi_s).exp();

    match target {
        Target::UpconvertedMode => TransferRow {
            target,
            detuning: 0.0,
            from_microwave_in: -i * g_ns * phase_plus * b.gamma_ex_m.sqrt() / denom,
            from_microwave_bath: -i * g_ns * phase_plus * b.gamma_i_m.sqrt() / denom,
            from_waveguide_vacuum: Complex64::from(b.gamma_m() / 2.0 * b.gamma_ex_opt.sqrt())
                / denom,
            from_optical_bath: Complex64::from(b.gamma_m() / 2.0 * b.gamma_i_opt.sqrt()) / denom,
        },
        Target::MicrowaveMode => TransferRow {
            target,
            detuning: 0.0,
            from_microwave_in: Complex64::from(b.gamma_opt() / 2.0 * b.gamma_ex_m.sqrt()) / denom,
            from_microwave_bath: Complex64::from(b.gamma_opt() / 2.0 * b.gamma_i_m.sqrt()) / denom,
            from_waveguide_vacuum: -i * g_ns * phase_minus * b.gamma_ex_opt.sqrt() / denom,
            from_optical_bath: -i * g_ns * phase_minus * b.gamma_i_opt.sqrt() / denom,
        },
        Target::OutputPort => TransferRow {
            target,
            detuning: 0.0,
            from_microwave_in: i * g_ns * phase_plus * (b.gamma_ex_m * b.gamma_ex_opt).sqrt()
                / denom,
            from_microwave_bath: i * g_ns * phase_plus * (b.gamma_ex_opt * b.gamma_i_m).sqrt()
                / denom,
            from_waveguide_vacuum: Complex64::from(
                b.gamma_m() * (b.gamma_i_opt - b.gamma_ex_opt) / 4.0 + g_ns * g_ns,
            ) / denom,
            from_optical_bath: Complex64::from(
                -b.gamma_m() / 2.0 * (b.gamma_ex_opt * b.gamma_i_opt).sqrt(),
            ) / denom,
        },
    }
}

/// Conversion efficiency at the matched (C = 1) operating point:
/// `eta = gamma_ex_opt gamma_ex_M / (gamma_opt gamma_M)`.
pub fn conversion_efficiency(budget: &LossBudget) -> f64 {
    budget.gamma_ex_opt * budget.gamma_ex_m / (budget.gamma_opt() * budget.gamma_m())
}

/// Same efficiency expressed through quality factors,
/// `eta = Q_opt Q_M / (Q_ex_opt Q_ex_M)`. Agrees with
/// [`conversion_efficiency`] identically; kept as an independent route.
pub fn conversion_efficiency_from_qs(budget: &LossBudget, omega_opt: f64, omega_m: f64) -> f64 {
    budget.q_opt(omega_opt) * budget.q_m(omega_m)
        / (budget.q_ex_opt(omega_opt) * budget.q_ex_m(omega_m))
}

/// General-cooperativity microwave→optical photon transmission at zero
/// detuning, `|c_inM|^2` of the output-port row. Reduces to
/// [`conversion_efficiency`] when C = 1; at other pump levels it is the
/// model's prediction rather than a closed form quoted elsewhere.
pub fn conversion_at_detuning_zero(op: &OperatingPoint) -> f64 {
    transfer_coefficients(op, 0.0, Target::OutputPort).microwave_transmission()
}

/// Intracavity pump photons for a given on-resonance waveguide pump power:
/// `N_s = 4 gamma_ex_opt / gamma_opt^2 · P / (hbar omega_opt)`.
pub fn pump_photons_from_power(p_in: f64, budget: &LossBudget, omega_opt: f64) -> Result<f64> {
    if p_in < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "pump power must be >= 0, got {p_in}"
        )));
    }
    let gamma_opt = budget.gamma_opt();
    Ok(4.0 * budget.gamma_ex_opt / (gamma_opt * gamma_opt) * p_in / (HBAR * omega_opt))
}

/// Equivalent Q-form of [`pump_photons_from_power`]:
/// `N_s = 4 Q_opt^2 / Q_ex_opt · P / (hbar omega_opt^2)`.
pub fn pump_photons_from_power_q_form(
    p_in: f64,
    budget: &LossBudget,
    omega_opt: f64,
) -> Result<f64> {
    if p_in < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "pump power must be >= 0, got {p_in}"
        )));
    }
    let q_opt = budget.q_opt(omega_opt);
    Ok(4.0 * q_opt * q_opt / budget.q_ex_opt(omega_opt) * p_in / (HBAR * omega_opt * omega_opt))
}

/// Waveguide pump power that drives the converter to C = 1:
/// `P_in = hbar omega_opt gamma_opt^3 gamma_M / (16 gamma_ex_opt g^2)`.
pub fn required_pump_power(budget: &LossBudget, g: f64, omega_opt: f64, omega_m: f64) -> Result<f64> {
    if !(g > 0.0) {
        return Err(Error::InvalidArgument(format!("g must be > 0, got {g}")));
    }
    let _ = omega_m; // the rate form depends on omega_m only through the budget
    let gamma_opt = budget.gamma_opt();
    Ok(HBAR * omega_opt * gamma_opt.powi(3) * budget.gamma_m()
        / (16.0 * budget.gamma_ex_opt * g * g))
}

/// Q-form of [`required_pump_power`]:
/// `P_in = hbar omega_M omega_opt^3 Q_ex_opt / (16 Q_opt^3 Q_M g^2)`.
pub fn required_pump_power_q_form(
    budget: &LossBudget,
    g: f64,
    omega_opt: f64,
    omega_m: f64,
) -> Result<f64> {
    if !(g > 0.0) {
        return Err(Error::InvalidArgument(format!("g must be > 0, got {g}")));
    }
    let q_opt = budget.q_opt(omega_opt);
    Ok(HBAR * omega_m * omega_opt.powi(3) * budget.q_ex_opt(omega_opt)
        / (16.0 * q_opt.powi(3) * budget.q_m(omega_m) * g * g))
}

/// Power scattered out of the optical resonator at the C = 1 operating
/// point: `P_scat = gamma_i_opt hbar omega_opt N_s` with `N_s` at C = 1.
pub fn scattered_power(budget: &LossBudget, g: f64, omega_opt: f64, omega_m: f64) -> Result<f64> {
    let _ = omega_m;
    let n_s = pump_photons_for_unit_cooperativity(budget, g)?;
    Ok(budget.gamma_i_opt * HBAR * omega_opt * n_s)
}

/// One point of a waveguide-coupling sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CouplingSweepPoint {
    pub q_ex_opt: f64,
    pub p_in: f64,
    pub p_scat: f64,
    pub efficiency: f64,
    pub regime: CouplingRegime,
}

/// Waveguide-coupling regime relative to the intrinsic optical loss.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CouplingRegime {
    Undercoupled,
    Critical,
    Overcoupled,
}

impl std::fmt::Display for CouplingRegime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CouplingRegime::Undercoupled => write!(f, "undercoupled"),
            CouplingRegime::Critical => write!(f, "critical"),
            CouplingRegime::Overcoupled => write!(f, "overcoupled"),
        }
    }
}

/// Sweep the optical waveguide coupling (`Q_ex_opt`) at fixed intrinsic loss
/// and fixed microwave budget, reporting pump power, scattered power and
/// conversion efficiency at C = 1 for each point.
pub fn coupling_sweep(
    budget_base: &LossBudget,
    g: f64,
    omega_opt: f64,
    omega_m: f64,
    q_ex_opt_values: &[f64],
) -> Result<Vec<CouplingSweepPoint>> {
    if q_ex_opt_values.iter().any(|q| !(*q > 0.0)) {
        return Err(Error::InvalidArgument(
            "q_ex_opt sweep values must be > 0".into(),
        ));
    }
    if q_ex_opt_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "q_ex_opt sweep values must be strictly increasing".into(),
        ));
    }
    let q_i_opt = budget_base.q_i_opt(omega_opt);
    q_ex_opt_values
        .iter()
        .map(|&q_ex_opt| {
            let budget = LossBudget {
                gamma_ex_opt: omega_opt / q_ex_opt,
                ..*budget_base
            };
            let rel = (q_ex_opt - q_i_opt) / q_i_opt;
            let regime = if rel.abs() <= 1e-9 {
                CouplingRegime::Critical
            } else if q_ex_opt < q_i_opt {
                // Small Q_ex_opt means strong waveguide coupling.
                CouplingRegime::Overcoupled
            } else {
                CouplingRegime::Undercoupled
            };
            Ok(CouplingSweepPoint {
                q_ex_opt,
                p_in: required_pump_power(&budget, g, omega_opt, omega_m)?,
                p_scat: scattered_power(&budget, g, omega_opt, omega_m)?,
                efficiency: conversion_efficiency(&budget),
                regime,
            })
        })
        .collect()
}
