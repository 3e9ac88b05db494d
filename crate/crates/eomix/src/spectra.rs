//! Supermode spectra of the coupled-ring system and their voltage tuning.
//!
//! Two identical rings coupled with strength `mu` support a symmetric /
//! antisymmetric doublet at `omega0 ∓ mu`. With the two-point coupler layout
//! the splitting is set by an electro-optic phase shifter: a phase `phi`
//! moves the doublet lines to
//!
//! ```text
//! nu_{s,as} = nu0 + (n_g · FSR / n_eff) · (pi ∓ phi)      (ordinary frequency)
//! ```
//!
//! so the splitting grows linearly in `phi` (and hence in bias voltage) with
//! slope `2 · n_g · FSR / n_eff` per radian. All angular frequencies in this
//! module are rad/s; `fsr` is an ordinary frequency in Hz.

use std::f64::consts::PI;

use crate::constants::{C_LIGHT, OMEGA0_TELECOM};
use crate::error::{Error, Result};

/// Geometry and dispersion of one ring resonator.
#[derive(Debug, Clone, PartialEq)]
pub struct RingParams {
    /// Optical carrier angular frequency (rad/s).
    pub omega0: f64,
    /// Effective index of the guided mode.
    pub n_eff: f64,
    /// Group index of the guided mode.
    pub n_g: f64,
    /// Free spectral range (Hz).
    pub fsr: f64,
    /// Ring perimeter (m); tied to the FSR by `fsr = c / (n_g · perimeter)`.
    pub perimeter: f64,
}

impl RingParams {
    /// Build from an FSR; the perimeter follows from `fsr = c/(n_g·l_R)`.
    pub fn from_fsr(omega0: f64, n_eff: f64, n_g: f64, fsr: f64) -> Result<Self> {
        if !(fsr > 0.0) {
            return Err(Error::InvalidArgument(format!("fsr must be > 0, got {fsr}")));
        }
        if !(n_eff > 1.0) {
            return Err(Error::InvalidArgument(format!(
                "n_eff must be > 1, got {n_eff}"
            )));
        }
        if !(n_g >= n_eff) {
            return Err(Error::InvalidArgument(format!(
                "n_g ({n_g}) must be >= n_eff ({n_eff})"
            )));
        }
        Ok(Self {
            omega0,
            n_eff,
            n_g,
            fsr,
            perimeter: C_LIGHT / (n_g * fsr),
        })
    }

    /// Build from a perimeter; the FSR follows from `fsr = c/(n_g·l_R)`.
    pub fn from_perimeter(omega0: f64, n_eff: f64, n_g: f64, perimeter: f64) -> Result<Self> {
        if !(perimeter > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "perimeter must be > 0, got {perimeter}"
            )));
        }
        Self::from_fsr(omega0, n_eff, n_g, C_LIGHT / (n_g * perimeter))
    }

    /// The ring used for the tuning-curve examples: 100 GHz FSR, n_g = 2.39,
    /// n_eff = 2, carrier at the 1550 nm telecom line.
    pub fn hundred_ghz_default() -> Self {
        Self::from_fsr(OMEGA0_TELECOM, 2.0, 2.39, 100e9).expect("valid default ring")
    }

    /// Check `fsr · n_g · l_R = c` to the stated relative tolerance.
    pub fn is_consistent(&self, rel_tol: f64) -> bool {
        (self.fsr * self.n_g * self.perimeter - C_LIGHT).abs() <= rel_tol * C_LIGHT
    }

    /// Doublet tuning rate: angular frequency shift per radian of shifter
    /// phase, `2π · n_g · fsr / n_eff` (rad/s per rad).
    pub fn tuning_rate(&self) -> f64 {
        2.0 * PI * self.n_g * self.fsr / self.n_eff
    }
}

/// Electro-optic phase shifter inside each ring.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplerParams {
    /// Phase-shifter electrode length (m).
    pub phase_shifter_length: f64,
    /// Half-wave voltage-length product (V·m).
    pub v_pi_l: f64,
    /// Applied DC bias (V).
    pub bias: f64,
}

impl CouplerParams {
    pub fn new(phase_shifter_length: f64, v_pi_l: f64, bias: f64) -> Result<Self> {
        if !(phase_shifter_length > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "phase_shifter_length must be > 0, got {phase_shifter_length}"
            )));
        }
        if !(v_pi_l > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "v_pi_l must be > 0, got {v_pi_l}"
            )));
        }
        Ok(Self {
            phase_shifter_length,
            v_pi_l,
            bias,
        })
    }

    pub fn with_bias(&self, bias: f64) -> Self {
        Self { bias, ..self.clone() }
    }
}

/// The symmetric/antisymmetric doublet. `omega_s` is always the lower line
/// (the pump line); `splitting` is exactly `omega_as - omega_s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupermodeSpectrum {
    /// Symmetric (lower) supermode frequency (rad/s).
    pub omega_s: f64,
    /// Antisymmetric (upper) supermode frequency (rad/s).
    pub omega_as: f64,
    /// Doublet splitting `omega_as - omega_s` (rad/s).
    pub splitting: f64,
}

impl SupermodeSpectrum {
    fn ordered(lo: f64, hi: f64) -> Self {
        let (omega_s, omega_as) = if lo <= hi { (lo, hi) } else { (hi, lo) };
        Self {
            omega_s,
            omega_as,
            splitting: omega_as - omega_s,
        }
    }

    /// Splitting as an ordinary frequency (Hz).
    pub fn splitting_hz(&self) -> f64 {
        self.splitting / (2.0 * PI)
    }
}

/// Doublet of two rings coupled with strength `mu`: lines at `omega0 ∓ mu`.
pub fn supermodes_from_mu(omega0: f64, mu: f64) -> Result<SupermodeSpectrum> {
    if mu < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "coupling mu must be >= 0, got {mu}"
        )));
    }
    Ok(SupermodeSpectrum::ordered(omega0 - mu, omega0 + mu))
}

/// Shifter phase produced by a DC bias: `phi = pi · V · L / (V_pi·L)`.
pub fn phase_from_bias(coupler: &CouplerParams) -> f64 {
    PI * coupler.bias * coupler.phase_shifter_length / coupler.v_pi_l
}

/// Doublet lines for a given shifter phase, on the principal branch
/// `|phi| < pi`. Phases outside the branch are rejected, not folded.
pub fn splitting_from_phase(ring: &RingParams, phi: f64) -> Result<SupermodeSpectrum> {
    if !(phi.abs() < PI) {
        return Err(Error::OutOfBranch { phi });
    }
    let rate = ring.tuning_rate();
    let lower = ring.omega0 + rate * (PI - phi);
    let upper = ring.omega0 + rate * (PI + phi);
    Ok(SupermodeSpectrum::ordered(lower, upper))
}

/// Bias voltage that produces a target doublet splitting (rad/s). The
/// phase→splitting chain is linear, so the inverse is exact.
pub fn bias_for_target_splitting(
    ring: &RingParams,
    coupler: &CouplerParams,
    target: f64,
) -> Result<f64> {
    if target < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "target splitting must be >= 0, got {target}"
        )));
    }
    let phi_needed = target / (2.0 * ring.tuning_rate());
    if !(phi_needed < PI) {
        return Err(Error::UnreachableSplitting {
            target_rad_s: target,
            phi_needed,
        });
    }
    Ok(phi_needed * coupler.v_pi_l / (PI * coupler.phase_shifter_length))
}
