//! Flat, line-oriented configuration: `[section]` headers and
//! `key = value` lines, `#` comments. Every physical quantity carries an
//! explicit unit suffix in its key name (`fsr_hz`, `r33_m_per_v`, ...), so a
//! config file is unambiguous and byte-reproducible.
//!
//! The parsed [`DesignConfig`] keeps the raw key/value map as the source of
//! truth; typed accessors materialize domain structs on demand and sweep
//! machinery mutates values through [`DesignConfig::set_path`].

use std::collections::BTreeMap;

use crate::constants::OMEGA0_TELECOM;
use crate::coupling::EOMaterial;
use crate::electrostatics::{CrossSection, ElectrodeConfig, SolveOptions};
use crate::error::{Error, Result};
use crate::open_system::LossBudget;
use crate::quasiparticle::SCMaterial;
use crate::spectra::{CouplerParams, RingParams};

/// Every key the config format understands, as `section.key`.
pub const KNOWN_KEYS: &[&str] = &[
    "ring.fsr_hz",
    "ring.n_eff",
    "ring.n_g",
    "ring.omega0_rad_s",
    "coupler.phase_shifter_length_m",
    "coupler.v_pi_l_v_m",
    "coupler.bias_v",
    "microwave.omega_m_rad_s",
    "cross_section.config",
    "cross_section.w_m",
    "cross_section.h_m",
    "cross_section.s1_m",
    "cross_section.s2_m",
    "cross_section.g_m",
    "cross_section.l_m",
    "cross_section.eps_ln_z",
    "cross_section.eps_ln_xy",
    "cross_section.eps_sio2",
    "cross_section.eps_si",
    "cross_section.electrode_thickness_m",
    "cross_section.drive_width_m",
    "cross_section.ground_width_m",
    "cross_section.padding_factor",
    "cross_section.si_thickness_m",
    "cross_section.resolution_cells_per_um",
    "cross_section.solver_tol",
    "cross_section.solver_max_iters",
    "material.n_e",
    "material.r33_m_per_v",
    "coupling.alpha",
    "coupling.g_rad_s",
    "coupling.capacitance_f",
    "coupling.electrode_length_m",
    "budget.q_i_opt",
    "budget.q_ex_opt",
    "budget.q_i_m",
    "budget.q_ex_m",
    "budget.gamma_i_opt_rad_s",
    "budget.gamma_ex_opt_rad_s",
    "budget.gamma_i_m_rad_s",
    "budget.gamma_ex_m_rad_s",
    "pump.phi_s_rad",
    "quasiparticle.q_other",
    "quasiparticle.film_volume_m3",
    "quasiparticle.p_abs_w",
    "quasiparticle.p_abs_start_w",
    "quasiparticle.p_abs_stop_w",
    "quasiparticle.p_abs_steps",
    "quasiparticle.al_gap_j",
    "quasiparticle.al_recombination_m3_per_s",
    "quasiparticle.al_generation_efficiency",
    "quasiparticle.al_thermal_density_m3",
    "quasiparticle.al_q_coeff_m3",
    "quasiparticle.nb_gap_j",
    "quasiparticle.nb_recombination_m3_per_s",
    "quasiparticle.nb_generation_efficiency",
    "quasiparticle.nb_thermal_density_m3",
    "quasiparticle.nb_q_coeff_m3",
    "dynamics.a_m0_re",
    "dynamics.a_m0_im",
    "dynamics.a_as0_re",
    "dynamics.a_as0_im",
    "dynamics.n_s",
    "dynamics.t_end_s",
    "dynamics.tolerance",
    "dynamics.samples",
    "gfactor.fsr_start_hz",
    "gfactor.fsr_stop_hz",
    "gfactor.steps",
    "gfactor.scale",
    "convert.detuning_start_rad_s",
    "convert.detuning_stop_rad_s",
    "convert.steps",
    "sweep.variable",
    "sweep.start",
    "sweep.stop",
    "sweep.steps",
    "sweep.scale",
];

/// Keys holding text rather than a number.
const TEXT_KEYS: &[&str] = &[
    "cross_section.config",
    "gfactor.scale",
    "sweep.variable",
    "sweep.scale",
];

/// Fields the full pipeline requires, in diagnostic order. The
/// `cross_section` block is required only when `coupling.g_rad_s` does not
/// bypass the field solve; `budget.*` entries accept either the Q or the
/// rate spelling.
const REQUIRED_FOR_PIPELINE: &[&str] = &[
    "ring.fsr_hz",
    "ring.n_eff",
    "ring.n_g",
    "coupler.phase_shifter_length_m",
    "coupler.v_pi_l_v_m",
    "microwave.omega_m_rad_s",
    "material.n_e",
    "material.r33_m_per_v",
    "budget.q_i_opt",
    "budget.q_ex_opt",
    "budget.q_i_m",
    "budget.q_ex_m",
    "cross_section.config",
    "cross_section.w_m",
    "cross_section.h_m",
    "cross_section.s1_m",
    "cross_section.s2_m",
    "cross_section.g_m",
    "cross_section.l_m",
];

/// Severity of a validation diagnostic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Warning,
    Error,
}

/// One validation finding.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub path: String,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.severity {
            Severity::Warning => "warning",
            Severity::Error => "error",
        };
        write!(f, "{tag}: {}: {}", self.path, self.message)
    }
}

/// Parsed configuration: a validated key/value map plus typed accessors.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DesignConfig {
    values: BTreeMap<String, String>,
}

fn config_err(msg: impl Into<String>) -> Error {
    Error::Config(msg.into())
}

impl DesignConfig {
    /// Parse the flat `[section]` / `key = value` format. Unknown keys and
    /// duplicate keys are errors; values are checked for numeric syntax.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        let mut section = String::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            if let Some(name) = line.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| {
                        config_err(format!("line {}: unterminated section header", lineno + 1))
                    })?
                    .trim();
                section = name.to_string();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                config_err(format!(
                    "line {}: expected `key = value`, got `{line}`",
                    lineno + 1
                ))
            })?;
            if section.is_empty() {
                return Err(config_err(format!(
                    "line {}: key `{}` appears before any [section]",
                    lineno + 1,
                    key.trim()
                )));
            }
            let path = format!("{section}.{}", key.trim());
            let value = value.trim().to_string();
            Self::check_known(&path)?;
            Self::check_value(&path, &value)?;
            if values.insert(path.clone(), value).is_some() {
                return Err(config_err(format!(
                    "line {}: duplicate key `{path}`",
                    lineno + 1
                )));
            }
        }
        Ok(Self { values })
    }

    fn check_known(path: &str) -> Result<()> {
        if KNOWN_KEYS.contains(&path) {
            Ok(())
        } else {
            Err(config_err(format!(
                "unknown key `{path}`; valid keys are: {}",
                KNOWN_KEYS.join(", ")
            )))
        }
    }

    fn check_value(path: &str, value: &str) -> Result<()> {
        if TEXT_KEYS.contains(&path) {
            if path == "sweep.variable" {
                Self::check_sweepable(value)?;
            }
            return Ok(());
        }
        value
            .parse::<f64>()
            .map(|_| ())
            .map_err(|_| config_err(format!("key `{path}`: `{value}` is not a number")))
    }

    fn check_sweepable(path: &str) -> Result<()> {
        let ok = KNOWN_KEYS.contains(&path)
            && !TEXT_KEYS.contains(&path)
            && !path.starts_with("sweep.");
        if ok {
            Ok(())
        } else {
            let valid: Vec<&str> = KNOWN_KEYS
                .iter()
                .copied()
                .filter(|k| !TEXT_KEYS.contains(k) && !k.starts_with("sweep."))
                .collect();
            Err(config_err(format!(
                "`{path}` is not a sweepable variable; valid paths are: {}",
                valid.join(", ")
            )))
        }
    }

    /// Check that a path names a sweepable (known, numeric) variable.
    pub fn check_sweep_variable(path: &str) -> Result<()> {
        Self::check_sweepable(path)
    }

    /// Set one key (used by `--set` overrides and sweep drivers).
    pub fn set_path(&mut self, path: &str, value: &str) -> Result<()> {
        Self::check_known(path)?;
        Self::check_value(path, value)?;
        self.values.insert(path.to_string(), value.to_string());
        Ok(())
    }

    /// Set a numeric key from a float, round-trip safe.
    pub fn set_f64(&mut self, path: &str, value: f64) -> Result<()> {
        self.set_path(path, &format!("{value:e}"))
    }

    pub fn get_raw(&self, path: &str) -> Option<&str> {
        self.values.get(path).map(|s| s.as_str())
    }

    pub fn get_f64(&self, path: &str) -> Result<Option<f64>> {
        match self.values.get(path) {
            None => Ok(None),
            Some(v) => v
                .parse::<f64>()
                .map(Some)
                .map_err(|_| config_err(format!("key `{path}`: `{v}` is not a number"))),
        }
    }

    pub fn req_f64(&self, path: &str) -> Result<f64> {
        self.get_f64(path)?
            .ok_or_else(|| config_err(format!("missing required key `{path}`")))
    }

    pub fn get_f64_or(&self, path: &str, default: f64) -> Result<f64> {
        Ok(self.get_f64(path)?.unwrap_or(default))
    }

    /// Optical carrier (rad/s); defaults to the 1550 nm telecom line.
    pub fn omega0(&self) -> Result<f64> {
        self.get_f64_or("ring.omega0_rad_s", OMEGA0_TELECOM)
    }

    pub fn omega_m(&self) -> Result<f64> {
        self.req_f64("microwave.omega_m_rad_s")
    }

    pub fn ring(&self) -> Result<RingParams> {
        RingParams::from_fsr(
            self.omega0()?,
            self.req_f64("ring.n_eff")?,
            self.req_f64("ring.n_g")?,
            self.req_f64("ring.fsr_hz")?,
        )
    }

    pub fn coupler(&self) -> Result<CouplerParams> {
        CouplerParams::new(
            self.req_f64("coupler.phase_shifter_length_m")?,
            self.req_f64("coupler.v_pi_l_v_m")?,
            self.get_f64_or("coupler.bias_v", 0.0)?,
        )
    }

    pub fn material(&self) -> Result<EOMaterial> {
        EOMaterial::new(
            self.req_f64("material.n_e")?,
            self.req_f64("material.r33_m_per_v")?,
        )
    }

    pub fn cross_section(&self) -> Result<CrossSection> {
        let config = match self
            .get_raw("cross_section.config")
            .ok_or_else(|| config_err("missing required key `cross_section.config`"))?
        {
            "parallel_plates" => ElectrodeConfig::ParallelPlates,
            "top_plus_side_grounds" => ElectrodeConfig::TopPlusSideGrounds,
            other => {
                return Err(config_err(format!(
                    "cross_section.config: `{other}` is not one of \
                     parallel_plates, top_plus_side_grounds"
                )))
            }
        };
        let defaults = CrossSection::parallel_plates();
        Ok(CrossSection {
            config,
            ridge_width: self.req_f64("cross_section.w_m")?,
            ridge_height: self.req_f64("cross_section.h_m")?,
            s1: self.req_f64("cross_section.s1_m")?,
            s2: self.req_f64("cross_section.s2_m")?,
            lateral_gap: self.req_f64("cross_section.g_m")?,
            side_offset: self.req_f64("cross_section.l_m")?,
            permittivities: crate::electrostatics::Permittivities {
                ln_z: self.get_f64_or("cross_section.eps_ln_z", 28.0)?,
                ln_xy: self.get_f64_or("cross_section.eps_ln_xy", 43.0)?,
                sio2: self.get_f64_or("cross_section.eps_sio2", 3.9)?,
                si: self.get_f64_or("cross_section.eps_si", 11.7)?,
            },
            electrode_thickness: self.get_f64_or(
                "cross_section.electrode_thickness_m",
                defaults.electrode_thickness,
            )?,
            drive_width: self.get_f64("cross_section.drive_width_m")?,
            ground_width: self.get_f64("cross_section.ground_width_m")?,
            padding_factor: self.get_f64_or("cross_section.padding_factor", defaults.padding_factor)?,
            si_thickness: self.get_f64("cross_section.si_thickness_m")?,
        })
    }

    pub fn resolution(&self) -> Result<f64> {
        self.get_f64_or("cross_section.resolution_cells_per_um", 20.0)
    }

    pub fn solve_options(&self) -> Result<SolveOptions> {
        let defaults = SolveOptions::default();
        Ok(SolveOptions {
            tol: self.get_f64_or("cross_section.solver_tol", defaults.tol)?,
            max_iters: self
                .get_f64_or("cross_section.solver_max_iters", defaults.max_iters as f64)?
                as usize,
        })
    }

    fn budget_rate(&self, quantity: &str, omega: f64) -> Result<f64> {
        let q_key = format!("budget.q_{quantity}");
        let rate_key = format!("budget.gamma_{quantity}_rad_s");
        match (self.get_f64(&q_key)?, self.get_f64(&rate_key)?) {
            (Some(_), Some(_)) => Err(config_err(format!(
                "both `{q_key}` and `{rate_key}` are set; give exactly one"
            ))),
            (Some(q), None) => Ok(omega / q),
            (None, Some(rate)) => Ok(rate),
            (None, None) => Err(config_err(format!(
                "missing loss for `{quantity}`: set `{q_key}` or `{rate_key}`"
            ))),
        }
    }

    pub fn budget(&self) -> Result<LossBudget> {
        let omega_opt = self.omega0()?;
        let omega_m = self.omega_m()?;
        LossBudget::from_rates(
            self.budget_rate("i_opt", omega_opt)?,
            self.budget_rate("ex_opt", omega_opt)?,
            self.budget_rate("i_m", omega_m)?,
            self.budget_rate("ex_m", omega_m)?,
        )
    }

    pub fn alpha(&self) -> Result<f64> {
        self.get_f64_or("coupling.alpha", 1.0)
    }

    pub fn phi_s(&self) -> Result<f64> {
        self.get_f64_or("pump.phi_s_rad", 0.0)
    }

    fn sc_material(&self, base: SCMaterial, prefix: &str) -> Result<SCMaterial> {
        Ok(SCMaterial {
            kind: base.kind,
            gap_energy: self
                .get_f64_or(&format!("quasiparticle.{prefix}_gap_j"), base.gap_energy)?,
            recombination_coeff: self.get_f64_or(
                &format!("quasiparticle.{prefix}_recombination_m3_per_s"),
                base.recombination_coeff,
            )?,
            qp_generation_efficiency: self.get_f64_or(
                &format!("quasiparticle.{prefix}_generation_efficiency"),
                base.qp_generation_efficiency,
            )?,
            thermal_qp_density: self.get_f64_or(
                &format!("quasiparticle.{prefix}_thermal_density_m3"),
                base.thermal_qp_density,
            )?,
            qp_to_inverse_q: self.get_f64_or(
                &format!("quasiparticle.{prefix}_q_coeff_m3"),
                base.qp_to_inverse_q,
            )?,
        })
    }

    pub fn aluminum(&self) -> Result<SCMaterial> {
        self.sc_material(SCMaterial::aluminum(), "al")
    }

    pub fn niobium(&self) -> Result<SCMaterial> {
        self.sc_material(SCMaterial::niobium(), "nb")
    }

    /// Whether the electrostatics stage is bypassed by a directly supplied
    /// conversion rate.
    pub fn has_g_bypass(&self) -> bool {
        self.values.contains_key("coupling.g_rad_s")
    }

    /// Validate without running anything: missing required fields,
    /// rate/Q conflicts, out-of-branch phase, non-positive losses, and the
    /// electrode-capacitance floor when a capacitance is supplied directly.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let err = |path: &str, message: String| Diagnostic {
            severity: Severity::Error,
            path: path.to_string(),
            message,
        };
        let warn = |path: &str, message: String| Diagnostic {
            severity: Severity::Warning,
            path: path.to_string(),
            message,
        };

        let bypass = self.has_g_bypass();
        for &key in REQUIRED_FOR_PIPELINE {
            if bypass && key.starts_with("cross_section.") {
                continue;
            }
            if let Some(q) = key.strip_prefix("budget.q_") {
                let rate_key = format!("budget.gamma_{q}_rad_s");
                match (
                    self.values.contains_key(key),
                    self.values.contains_key(&rate_key),
                ) {
                    (true, true) => out.push(err(
                        key,
                        format!("both `{key}` and `{rate_key}` are set; give exactly one"),
                    )),
                    (false, false) => out.push(err(
                        key,
                        format!("missing loss budget: set `{key}` or `{rate_key}`"),
                    )),
                    _ => {}
                }
                continue;
            }
            if !self.values.contains_key(key) {
                out.push(err(key, "missing required key".to_string()));
            }
        }

        // Loss rates must be positive once interpretable.
        for key in [
            "budget.q_i_opt",
            "budget.q_ex_opt",
            "budget.q_i_m",
            "budget.q_ex_m",
            "budget.gamma_i_opt_rad_s",
            "budget.gamma_ex_opt_rad_s",
            "budget.gamma_i_m_rad_s",
            "budget.gamma_ex_m_rad_s",
        ] {
            if let Ok(Some(v)) = self.get_f64(key) {
                if !(v > 0.0) {
                    out.push(err(key, format!("must be > 0, got {v}")));
                }
            }
        }

        // Phase-shifter branch check at the configured bias.
        if let Ok(coupler) = self.coupler() {
            let phi = crate::spectra::phase_from_bias(&coupler);
            if phi.abs() >= std::f64::consts::PI {
                out.push(err(
                    "coupler.bias_v",
                    format!(
                        "bias drives phase {phi:.4} rad outside the principal branch |phi| < pi"
                    ),
                ));
            }
        }

        // Electrode capacitance floor (only checkable without a field solve
        // when supplied directly).
        if let Ok(Some(c)) = self.get_f64("coupling.capacitance_f") {
            if c < crate::coupling::MIN_ELECTRODE_CAPACITANCE {
                out.push(warn(
                    "coupling.capacitance_f",
                    format!(
                        "{c:e} F is below the {:e} F floor that keeps the electrode well above \
                         parasitic capacitance",
                        crate::coupling::MIN_ELECTRODE_CAPACITANCE
                    ),
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const MINIMAL: &str = "\
[ring]
fsr_hz = 100e9
n_eff = 2
n_g = 2.39

[coupler]
phase_shifter_length_m = 200e-6
v_pi_l_v_m = 0.02

[microwave]
omega_m_rad_s = 3.7699111843077515e10

[material]
n_e = 2.138
r33_m_per_v = 30e-12

[budget]
q_i_opt = 2e6
q_ex_opt = 2e6
q_i_m = 1e4
q_ex_m = 1e4

[cross_section]
config = parallel_plates
w_m = 1.2e-6
h_m = 0.75e-6
s1_m = 2e-6
s2_m = 2e-6
g_m = 3e-6
l_m = 1.5e-6
";

    #[test]
    fn minimal_config_parses_and_validates_clean() {
        let cfg = DesignConfig::parse(MINIMAL).unwrap();
        assert!(cfg.validate().is_empty(), "{:?}", cfg.validate());
        assert!(cfg.ring().is_ok());
        assert!(cfg.coupler().is_ok());
        assert!(cfg.budget().is_ok());
        assert!(cfg.cross_section().is_ok());
    }

    #[test]
    fn unknown_key_rejected_with_valid_list() {
        let bad = "[ring]\nfsr_ghz = 100\n";
        let e = DesignConfig::parse(bad).unwrap_err();
        let msg = e.to_string();
        assert!(msg.contains("unknown key"), "{msg}");
        assert!(msg.contains("ring.fsr_hz"), "{msg}");
    }

    #[test]
    fn duplicate_key_rejected() {
        let bad = "[ring]\nfsr_hz = 1e11\nfsr_hz = 2e11\n";
        assert!(DesignConfig::parse(bad).is_err());
    }

    #[test]
    fn comments_and_blanks_ignored() {
        let cfg = DesignConfig::parse("# top\n[ring]\n\nfsr_hz = 1e11 # inline\n").unwrap();
        assert_eq!(cfg.get_f64("ring.fsr_hz").unwrap(), Some(1e11));
    }

    #[test]
    fn empty_config_lists_missing_fields_in_stable_order() {
        let cfg = DesignConfig::parse("").unwrap();
        let diags = cfg.validate();
        let paths: Vec<&str> = diags.iter().map(|d| d.path.as_str()).collect();
        assert_eq!(paths[0], "ring.fsr_hz");
        assert!(paths.contains(&"budget.q_i_opt"));
        assert!(paths.contains(&"cross_section.config"));
        assert!(diags.iter().all(|d| d.severity == Severity::Error));
        // Deterministic: same input, same order.
        assert_eq!(diags, cfg.validate());
    }

    #[test]
    fn g_bypass_waives_cross_section() {
        let reduced: String = MINIMAL
            .lines()
            .take_while(|l| !l.starts_with("[cross_section]"))
            .collect::<Vec<_>>()
            .join("\n");
        let mut cfg = DesignConfig::parse(&reduced).unwrap();
        cfg.set_path("coupling.g_rad_s", "6.28e4").unwrap();
        assert!(cfg.validate().is_empty(), "{:?}", cfg.validate());
    }

    #[test]
    fn rate_and_q_conflict_flagged() {
        let mut cfg = DesignConfig::parse(MINIMAL).unwrap();
        cfg.set_path("budget.gamma_i_opt_rad_s", "1e9").unwrap();
        let diags = cfg.validate();
        assert!(diags
            .iter()
            .any(|d| d.severity == Severity::Error && d.path == "budget.q_i_opt"));
        assert!(cfg.budget().is_err());
    }

    #[test]
    fn q_and_rate_spellings_give_identical_budgets() {
        let cfg_q = DesignConfig::parse(MINIMAL).unwrap();
        let b_q = cfg_q.budget().unwrap();
        let text = MINIMAL.replace(
            "q_i_opt = 2e6\nq_ex_opt = 2e6\nq_i_m = 1e4\nq_ex_m = 1e4",
            "",
        );
        let mut cfg_r = DesignConfig::parse(&text).unwrap();
        cfg_r
            .set_f64("budget.gamma_i_opt_rad_s", b_q.gamma_i_opt)
            .unwrap();
        cfg_r
            .set_f64("budget.gamma_ex_opt_rad_s", b_q.gamma_ex_opt)
            .unwrap();
        cfg_r
            .set_f64("budget.gamma_i_m_rad_s", b_q.gamma_i_m)
            .unwrap();
        cfg_r
            .set_f64("budget.gamma_ex_m_rad_s", b_q.gamma_ex_m)
            .unwrap();
        let b_r = cfg_r.budget().unwrap();
        let rel = |a: f64, b: f64| (a - b).abs() / b.abs();
        assert!(rel(b_r.gamma_i_opt, b_q.gamma_i_opt) < 1e-12);
        assert!(rel(b_r.gamma_ex_m, b_q.gamma_ex_m) < 1e-12);
    }

    #[test]
    fn out_of_branch_bias_flagged() {
        let mut cfg = DesignConfig::parse(MINIMAL).unwrap();
        // phi reaches pi at 100 V for V_pi.L = 2 V.cm and a 200 um shifter.
        cfg.set_path("coupler.bias_v", "100").unwrap();
        let diags = cfg.validate();
        assert!(diags.iter().any(|d| d.path == "coupler.bias_v"));
    }

    #[test]
    fn capacitance_floor_warning_boundary() {
        let mut cfg = DesignConfig::parse(MINIMAL).unwrap();
        cfg.set_path("coupling.capacitance_f", "39e-15").unwrap();
        assert!(cfg
            .validate()
            .iter()
            .any(|d| d.severity == Severity::Warning && d.path == "coupling.capacitance_f"));
        cfg.set_path("coupling.capacitance_f", "40e-15").unwrap();
        assert!(!cfg
            .validate()
            .iter()
            .any(|d| d.path == "coupling.capacitance_f"));
    }

    #[test]
    fn sweep_variable_must_be_known_numeric_path() {
        let mut cfg = DesignConfig::parse(MINIMAL).unwrap();
        let e = cfg.set_path("sweep.variable", "ring.banana").unwrap_err();
        assert!(e.to_string().contains("valid paths"), "{e}");
        cfg.set_path("sweep.variable", "coupler.bias_v").unwrap();
    }

    #[test]
    fn set_f64_round_trips() {
        let mut cfg = DesignConfig::parse(MINIMAL).unwrap();
        let v = 0.123456789012345678;
        cfg.set_f64("coupler.bias_v", v).unwrap();
        assert_eq!(cfg.get_f64("coupler.bias_v").unwrap(), Some(v));
    }
}
