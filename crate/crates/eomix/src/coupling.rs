//! Electro-optic conversion rate from the uniform-field expression.
//!
//! For Z-cut LN with a vertical microwave field, the three-wave rate between
//! the supermodes and the microwave cavity reduces to
//!
//! ```text
//! g = n_e^2 r33 omega0 sqrt(hbar omega_M / U_M) (alpha / 2) E_Mz
//! ```
//!
//! with `U_M = C V^2 / 2` the microwave energy at the drive voltage used for
//! the field solve and `alpha` the electrode-length/perimeter ratio. The
//! factor 1/2 accounts for the microwave field addressing only one of the
//! two rings. Because `E_Mz` is proportional to the drive voltage and
//! `1/sqrt(U_M)` inversely proportional to it, `g` is independent of the
//! normalization voltage.

use crate::constants::{C_LIGHT, HBAR};
use crate::electrostatics::{solve_cross_section, CrossSection, SolveOptions};
use crate::error::{Error, Result};

/// Electro-optic material constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EOMaterial {
    /// Extraordinary refractive index.
    pub n_e: f64,
    /// Electro-optic coefficient r33 (m/V).
    pub r33: f64,
}

impl EOMaterial {
    pub fn new(n_e: f64, r33: f64) -> Result<Self> {
        if !(n_e > 1.0) {
            return Err(Error::InvalidArgument(format!("n_e must be > 1, got {n_e}")));
        }
        if !(r33 > 0.0) {
            return Err(Error::InvalidArgument(format!("r33 must be > 0, got {r33}")));
        }
        Ok(Self { n_e, r33 })
    }

    /// Lithium niobate: n_e = 2.138, r33 = 30 pm/V.
    pub fn lithium_niobate() -> Self {
        Self {
            n_e: 2.138,
            r33: 30e-12,
        }
    }
}

/// Lumped-element microwave cavity: electrode capacitance plus a meander
/// inductor sized to resonate at `omega_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicrowaveCavity {
    /// Resonance (rad/s).
    pub omega_m: f64,
    /// Electrode capacitance (F).
    pub capacitance: f64,
    /// Drive voltage used to normalize the stored energy (V).
    pub drive_voltage: f64,
    /// Stored energy `C V^2 / 2` (J).
    pub energy: f64,
    /// Inductance from `omega_M = 1/sqrt(LC)` (H).
    pub inductance: f64,
}

/// Build the cavity for a given electrode capacitance, normalized at 1 V.
pub fn cavity_from_electrode(omega_m: f64, capacitance: f64) -> Result<MicrowaveCavity> {
    cavity_from_electrode_at(omega_m, capacitance, 1.0)
}

/// Build the cavity with an explicit normalization voltage.
pub fn cavity_from_electrode_at(
    omega_m: f64,
    capacitance: f64,
    drive_voltage: f64,
) -> Result<MicrowaveCavity> {
    if !(capacitance > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "capacitance must be > 0, got {capacitance}"
        )));
    }
    if !(omega_m > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "omega_m must be > 0, got {omega_m}"
        )));
    }
    if !(drive_voltage > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "drive_voltage must be > 0, got {drive_voltage}"
        )));
    }
    Ok(MicrowaveCavity {
        omega_m,
        capacitance,
        drive_voltage,
        energy: capacitance * drive_voltage * drive_voltage / 2.0,
        inductance: 1.0 / (omega_m * omega_m * capacitance),
    })
}

/// Electrode-length to ring-perimeter ratio, in (0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoverageFactor {
    pub alpha: f64,
}

impl CoverageFactor {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "alpha must lie in (0, 1], got {alpha}"
            )));
        }
        Ok(Self { alpha })
    }

    /// Full electrode coverage (plain coupled-ring layout).
    pub fn full() -> Self {
        Self { alpha: 1.0 }
    }

    /// Coverage of the tunable-coupler layout, where the coupler region
    /// carries no microwave electrode.
    pub fn tunable_coupler() -> Self {
        Self { alpha: 0.55 }
    }
}

/// Conversion rate from the uniform-field expression (rad/s, reported as a
/// magnitude). `e_mz` must come from a field solve at the same drive voltage
/// that normalizes `cavity.energy`.
pub fn g_uniform(
    material: &EOMaterial,
    omega0: f64,
    cavity: &MicrowaveCavity,
    alpha: CoverageFactor,
    e_mz: f64,
) -> Result<f64> {
    if !(cavity.energy > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "cavity energy must be > 0, got {}",
            cavity.energy
        )));
    }
    Ok(material.n_e * material.n_e
        * material.r33
        * omega0
        * (HBAR * cavity.omega_m / cavity.energy).sqrt()
        * (alpha.alpha / 2.0)
        * e_mz.abs())
}

/// One point of a g-vs-FSR design curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GCurvePoint {
    pub fsr: f64,
    pub perimeter: f64,
    pub electrode_length: f64,
    pub capacitance: f64,
    pub g: f64,
    /// Whether the electrode capacitance reaches the 40 fF floor that keeps
    /// it comfortably above parasitics.
    pub capacitance_ok: bool,
}

/// Practical minimum electrode capacitance (F).
pub const MIN_ELECTRODE_CAPACITANCE: f64 = 40e-15;

/// Design curve of the conversion rate versus ring FSR at fixed cross
/// section. The 2D solve is resolution-independent of FSR, so one field
/// solve serves the whole sweep; only the electrode length (and with it the
/// capacitance and stored energy) changes per point.
#[allow(clippy::too_many_arguments)]
pub fn g_vs_fsr(
    xs: &CrossSection,
    material: &EOMaterial,
    omega0: f64,
    omega_m: f64,
    alpha: CoverageFactor,
    n_g: f64,
    fsr_values: &[f64],
    resolution: f64,
    opts: &SolveOptions,
) -> Result<Vec<GCurvePoint>> {
    if fsr_values.iter().any(|f| !(*f > 0.0)) {
        return Err(Error::InvalidArgument("FSR values must be > 0".into()));
    }
    if fsr_values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(
            "FSR values must be strictly increasing".into(),
        ));
    }
    let sol = solve_cross_section(xs, resolution, opts)?;
    g_vs_fsr_from_field(
        sol.capacitance_per_length,
        sol.e_mz_center,
        sol.drive_voltage,
        material,
        omega0,
        omega_m,
        alpha,
        n_g,
        fsr_values,
    )
}

/// The per-point arithmetic of [`g_vs_fsr`], starting from an already-solved
/// cross-section field.
#[allow(clippy::too_many_arguments)]
pub fn g_vs_fsr_from_field(
    capacitance_per_length: f64,
    e_mz: f64,
    drive_voltage: f64,
    material: &EOMaterial,
    omega0: f64,
    omega_m: f64,
    alpha: CoverageFactor,
    n_g: f64,
    fsr_values: &[f64],
) -> Result<Vec<GCurvePoint>> {
    fsr_values
        .iter()
        .map(|&fsr| {
            let perimeter = C_LIGHT / (n_g * fsr);
            let electrode_length = alpha.alpha * perimeter;
            let capacitance = capacitance_per_length * electrode_length;
            let cavity = cavity_from_electrode_at(omega_m, capacitance, drive_voltage)?;
            let g = g_uniform(material, omega0, &cavity, alpha, e_mz)?;
            Ok(GCurvePoint {
                fsr,
                perimeter,
                electrode_length,
                capacitance,
                g,
                capacitance_ok: capacitance >= MIN_ELECTRODE_CAPACITANCE,
            })
        })
        .collect()
}
