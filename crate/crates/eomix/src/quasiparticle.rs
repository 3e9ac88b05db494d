//! Quasiparticle-limited microwave Q under stray optical absorption.
//!
//! Worst case: every scattered optical photon is absorbed in the
//! superconducting film and breaks pairs. A zero-dimensional steady-state
//! generation/recombination balance
//!
//! ```text
//! eta_gen · P_abs / (gap · V_film) = R · (n^2 - n_th^2)
//! ```
//!
//! gives the quasiparticle density, and a linear density-to-loss map gives
//! the Q degradation: `1/Q = 1/Q_other + coeff · n_qp`.
//!
//! The material constants below are documented working assumptions (gap from
//! 1.76·k_B·T_c; recombination, generation efficiency with phonon trapping
//! folded in, thermal density at a 100 mK bath, and the density-to-loss
//! coefficient chosen for thin-film resonators in the few-GHz band). They are
//! deliberately exposed as plain fields so measured values can replace them.

use crate::error::{Error, Result};

/// Superconductor choices with built-in parameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScKind {
    Aluminum,
    Niobium,
}

impl std::fmt::Display for ScKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScKind::Aluminum => write!(f, "aluminum"),
            ScKind::Niobium => write!(f, "niobium"),
        }
    }
}

/// Superconductor parameters for the steady-state balance.
#[derive(Debug, Clone, PartialEq)]
pub struct SCMaterial {
    pub kind: ScKind,
    /// Pair-breaking gap energy (J).
    pub gap_energy: f64,
    /// Recombination coefficient R (m^3/s).
    pub recombination_coeff: f64,
    /// Fraction of absorbed power that ends up as quasiparticles
    /// (phonon-trapping factor folded in).
    pub qp_generation_efficiency: f64,
    /// Thermal quasiparticle density at the bath temperature (m^-3).
    pub thermal_qp_density: f64,
    /// Linear map from quasiparticle density to inverse quality factor (m^3).
    pub qp_to_inverse_q: f64,
}

impl SCMaterial {
    /// Aluminum defaults (bath at 100 mK; T_c = 1.2 K).
    pub fn aluminum() -> Self {
        Self {
            kind: ScKind::Aluminum,
            gap_energy: 2.916e-23,
            recombination_coeff: 2e-17,
            qp_generation_efficiency: 0.57,
            thermal_qp_density: 1e12,
            qp_to_inverse_q: 1.07e-28,
        }
    }

    /// Niobium defaults (bath at 100 mK; T_c = 9.2 K). The larger gap and
    /// faster recombination give far fewer quasiparticles per absorbed watt.
    pub fn niobium() -> Self {
        Self {
            kind: ScKind::Niobium,
            gap_energy: 2.2356e-22,
            recombination_coeff: 1e-15,
            qp_generation_efficiency: 0.57,
            thermal_qp_density: 1e6,
            qp_to_inverse_q: 1.07e-28,
        }
    }

    pub fn of_kind(kind: ScKind) -> Self {
        match kind {
            ScKind::Aluminum => Self::aluminum(),
            ScKind::Niobium => Self::niobium(),
        }
    }
}

/// Absorbed stray power and the film volume it lands in.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbsorptionScenario {
    /// Absorbed optical power (W).
    pub absorbed_power: f64,
    /// Superconducting film volume (m^3).
    pub film_volume: f64,
}

impl AbsorptionScenario {
    pub fn new(absorbed_power: f64, film_volume: f64) -> Result<Self> {
        if absorbed_power < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "absorbed_power must be >= 0, got {absorbed_power}"
            )));
        }
        if !(film_volume > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "film_volume must be > 0, got {film_volume}"
            )));
        }
        Ok(Self {
            absorbed_power,
            film_volume,
        })
    }

    /// Default film volume: 5e-13 m^3 of resonator metallization.
    pub const DEFAULT_FILM_VOLUME: f64 = 5e-13;
}

/// Steady-state quasiparticle density (m^-3):
/// `n = sqrt(n_th^2 + eta_gen · P_abs / (gap · V_film · R))`.
pub fn steady_state_qp_density(sc: &SCMaterial, scen: &AbsorptionScenario) -> f64 {
    let generation = sc.qp_generation_efficiency * scen.absorbed_power
        / (sc.gap_energy * scen.film_volume * sc.recombination_coeff);
    (sc.thermal_qp_density * sc.thermal_qp_density + generation).sqrt()
}

/// Microwave quality factor with the quasiparticle channel added to a fixed
/// non-quasiparticle loss budget `q_other`.
pub fn microwave_q_from_qp(sc: &SCMaterial, n_qp: f64, q_other: f64) -> Result<f64> {
    if !(q_other > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "q_other must be > 0, got {q_other}"
        )));
    }
    if n_qp < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "n_qp must be >= 0, got {n_qp}"
        )));
    }
    Ok(1.0 / (1.0 / q_other + sc.qp_to_inverse_q * n_qp))
}

/// One row of an absorbed-power sweep over both materials.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QpSweepPoint {
    pub absorbed_power: f64,
    pub n_qp_al: f64,
    pub n_qp_nb: f64,
    pub q_al: f64,
    pub q_nb: f64,
}

/// Sweep absorbed power for aluminum and niobium at a shared `q_other` and
/// film volume.
pub fn qp_sweep(
    powers: &[f64],
    film_volume: f64,
    q_other: f64,
) -> Result<Vec<QpSweepPoint>> {
    let al = SCMaterial::aluminum();
    let nb = SCMaterial::niobium();
    powers
        .iter()
        .map(|&p| {
            let scen = AbsorptionScenario::new(p, film_volume)?;
            let n_al = steady_state_qp_density(&al, &scen);
            let n_nb = steady_state_qp_density(&nb, &scen);
            Ok(QpSweepPoint {
                absorbed_power: p,
                n_qp_al: n_al,
                n_qp_nb: n_nb,
                q_al: microwave_q_from_qp(&al, n_al, q_other)?,
                q_nb: microwave_q_from_qp(&nb, n_nb, q_other)?,
            })
        })
        .collect()
}
