//! End-to-end design pipeline and sweep orchestration.
//!
//! `run_pipeline` chains the modules in design order — doublet tuning, field
//! solve, conversion rate, open-system budget at the matched (C = 1)
//! operating point, quasiparticle-limited microwave Q — and records where
//! every number came from (computed here or taken from the config).
//! `run_sweep` re-runs the pipeline along one config path, reusing the field
//! solve whenever the swept variable cannot affect it.

use crate::config::DesignConfig;
use crate::constants::C_LIGHT;
use crate::coupling::{
    cavity_from_electrode_at, g_uniform, CoverageFactor, MIN_ELECTRODE_CAPACITANCE,
};
use crate::csvio::{Cell, Table};
use crate::electrostatics::{solve_cross_section, FieldSolution};
use crate::error::{Error, Result};
use crate::open_system::{
    conversion_efficiency, pump_photons_for_unit_cooperativity, required_pump_power,
    scattered_power, OperatingPoint,
};
use crate::quasiparticle::{microwave_q_from_qp, steady_state_qp_density, AbsorptionScenario};
use crate::spectra::{bias_for_target_splitting, phase_from_bias, splitting_from_phase};

/// Where a report value came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Computed,
    Config,
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::Computed => write!(f, "computed"),
            Provenance::Config => write!(f, "config"),
        }
    }
}

/// A reported value with its provenance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reported {
    pub value: f64,
    pub provenance: Provenance,
}

impl Reported {
    fn computed(value: f64) -> Self {
        Self {
            value,
            provenance: Provenance::Computed,
        }
    }

    fn config(value: f64) -> Self {
        Self {
            value,
            provenance: Provenance::Config,
        }
    }
}

/// Full design-point report. Field-solve quantities are absent when the
/// conversion rate is supplied directly in the config.
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    pub bias_v: Reported,
    pub phi_rad: Reported,
    pub splitting_rad_s: Reported,
    pub e_mz_v_per_m: Option<Reported>,
    pub capacitance_per_length_f_m: Option<Reported>,
    pub electrode_length_m: Option<Reported>,
    pub capacitance_f: Option<Reported>,
    pub g_rad_s: Reported,
    pub n_s: Reported,
    pub cooperativity: Reported,
    pub efficiency: Reported,
    pub p_in_w: Reported,
    pub p_scat_w: Reported,
    pub q_qp_al: Reported,
    pub q_qp_nb: Reported,
}

impl PipelineReport {
    /// Emit the report as a (quantity, value, unit, provenance) table.
    pub fn table(&self) -> Table {
        let mut t = Table::new(
            &["quantity", "value", "unit", "provenance"],
            &["-", "-", "-", "-"],
        );
        let mut push = |name: &str, unit: &str, r: &Reported| {
            t.push_row(vec![
                Cell::Text(name.to_string()),
                Cell::Number(r.value),
                Cell::Text(unit.to_string()),
                Cell::Text(r.provenance.to_string()),
            ]);
        };
        push("bias_v", "V", &self.bias_v);
        push("phi", "rad", &self.phi_rad);
        push("splitting", "rad/s", &self.splitting_rad_s);
        if let Some(r) = &self.e_mz_v_per_m {
            push("e_mz", "V/m", r);
        }
        if let Some(r) = &self.capacitance_per_length_f_m {
            push("capacitance_per_length", "F/m", r);
        }
        if let Some(r) = &self.electrode_length_m {
            push("electrode_length", "m", r);
        }
        if let Some(r) = &self.capacitance_f {
            push("capacitance", "F", r);
        }
        push("g", "rad/s", &self.g_rad_s);
        push("n_s", "photons", &self.n_s);
        push("cooperativity", "dimensionless", &self.cooperativity);
        push("efficiency", "dimensionless", &self.efficiency);
        push("p_in", "W", &self.p_in_w);
        push("p_scat", "W", &self.p_scat_w);
        push("q_qp_al", "dimensionless", &self.q_qp_al);
        push("q_qp_nb", "dimensionless", &self.q_qp_nb);
        t
    }
}

/// Run the full design pipeline. An already-solved cross-section field may
/// be passed in to skip the (expensive) solve when the config cannot have
/// changed it.
pub fn run_pipeline_with_field(
    config: &DesignConfig,
    cached_field: Option<&FieldSolution>,
) -> Result<PipelineReport> {
    // Stage 1: doublet tuning.
    let ring = config.ring().map_err(|e| e.in_stage("spectra"))?;
    let coupler = config.coupler().map_err(|e| e.in_stage("spectra"))?;
    let omega_m = config.omega_m().map_err(|e| e.in_stage("spectra"))?;

    let (bias, bias_prov) = match config
        .get_f64("coupler.bias_v")
        .map_err(|e| e.in_stage("spectra"))?
    {
        Some(v) => (v, Provenance::Config),
        None => (
            bias_for_target_splitting(&ring, &coupler, omega_m)
                .map_err(|e| e.in_stage("spectra"))?,
            Provenance::Computed,
        ),
    };
    let coupler = coupler.with_bias(bias);
    let phi = phase_from_bias(&coupler);
    let spectrum = splitting_from_phase(&ring, phi).map_err(|e| e.in_stage("spectra"))?;

    // Stages 2-3: field solve and conversion rate (or direct bypass).
    let mut e_mz = None;
    let mut c_per_len = None;
    let mut electrode_length = None;
    let mut capacitance = None;

    let g = match config
        .get_f64("coupling.g_rad_s")
        .map_err(|e| e.in_stage("coupling"))?
    {
        Some(g) => Reported::config(g),
        None => {
            let field_owned;
            let field: &FieldSolution = match cached_field {
                Some(f) => f,
                None => {
                    let xs = config
                        .cross_section()
                        .map_err(|e| e.in_stage("electrostatics"))?;
                    let resolution = config
                        .resolution()
                        .map_err(|e| e.in_stage("electrostatics"))?;
                    let opts = config
                        .solve_options()
                        .map_err(|e| e.in_stage("electrostatics"))?;
                    field_owned = solve_cross_section(&xs, resolution, &opts)
                        .map_err(|e| e.in_stage("electrostatics"))?;
                    &field_owned
                }
            };
            e_mz = Some(Reported::computed(field.e_mz_center));
            c_per_len = Some(Reported::computed(field.capacitance_per_length));

            let alpha = CoverageFactor::new(config.alpha().map_err(|e| e.in_stage("coupling"))?)
                .map_err(|e| e.in_stage("coupling"))?;
            let length = match config
                .get_f64("coupling.electrode_length_m")
                .map_err(|e| e.in_stage("coupling"))?
            {
                Some(l) => Reported::config(l),
                None => Reported::computed(alpha.alpha * C_LIGHT / (ring.n_g * ring.fsr)),
            };
            electrode_length = Some(length);

            let cap = match config
                .get_f64("coupling.capacitance_f")
                .map_err(|e| e.in_stage("coupling"))?
            {
                Some(c) => Reported::config(c),
                None => Reported::computed(field.capacitance_per_length * length.value),
            };
            capacitance = Some(cap);

            let material = config.material().map_err(|e| e.in_stage("coupling"))?;
            let cavity = cavity_from_electrode_at(omega_m, cap.value, field.drive_voltage)
                .map_err(|e| e.in_stage("coupling"))?;
            Reported::computed(
                g_uniform(&material, ring.omega0, &cavity, alpha, field.e_mz_center)
                    .map_err(|e| e.in_stage("coupling"))?,
            )
        }
    };

    // Stage 4: open system at the matched (C = 1) operating point.
    let budget = config.budget().map_err(|e| e.in_stage("open_system"))?;
    let n_s = pump_photons_for_unit_cooperativity(&budget, g.value)
        .map_err(|e| e.in_stage("open_system"))?;
    let op = OperatingPoint::new(
        g.value,
        n_s,
        config.phi_s().map_err(|e| e.in_stage("open_system"))?,
        budget,
        ring.omega0,
        omega_m,
    )
    .map_err(|e| e.in_stage("open_system"))?;
    let cooperativity = crate::open_system::cooperativity(&op);
    let efficiency = conversion_efficiency(&budget);
    let p_in = required_pump_power(&budget, g.value, ring.omega0, omega_m)
        .map_err(|e| e.in_stage("open_system"))?;
    let p_scat = scattered_power(&budget, g.value, ring.omega0, omega_m)
        .map_err(|e| e.in_stage("open_system"))?;

    // Stage 5: quasiparticle-limited microwave Q, worst case: all scattered
    // power absorbed.
    let (p_abs, p_abs_prov) = match config
        .get_f64("quasiparticle.p_abs_w")
        .map_err(|e| e.in_stage("quasiparticle"))?
    {
        Some(p) => (p, Provenance::Config),
        None => (p_scat, Provenance::Computed),
    };
    let film_volume = config
        .get_f64_or(
            "quasiparticle.film_volume_m3",
            AbsorptionScenario::DEFAULT_FILM_VOLUME,
        )
        .map_err(|e| e.in_stage("quasiparticle"))?;
    let q_other = config
        .get_f64_or("quasiparticle.q_other", 1e6)
        .map_err(|e| e.in_stage("quasiparticle"))?;
    let scen =
        AbsorptionScenario::new(p_abs, film_volume).map_err(|e| e.in_stage("quasiparticle"))?;
    let al = config.aluminum().map_err(|e| e.in_stage("quasiparticle"))?;
    let nb = config.niobium().map_err(|e| e.in_stage("quasiparticle"))?;
    let q_al = microwave_q_from_qp(&al, steady_state_qp_density(&al, &scen), q_other)
        .map_err(|e| e.in_stage("quasiparticle"))?;
    let q_nb = microwave_q_from_qp(&nb, steady_state_qp_density(&nb, &scen), q_other)
        .map_err(|e| e.in_stage("quasiparticle"))?;

    Ok(PipelineReport {
        bias_v: Reported {
            value: bias,
            provenance: bias_prov,
        },
        phi_rad: Reported::computed(phi),
        splitting_rad_s: Reported::computed(spectrum.splitting),
        e_mz_v_per_m: e_mz,
        capacitance_per_length_f_m: c_per_len,
        electrode_length_m: electrode_length,
        capacitance_f: capacitance,
        g_rad_s: g,
        n_s: Reported::computed(n_s),
        cooperativity: Reported::computed(cooperativity),
        efficiency: Reported::computed(efficiency),
        p_in_w: Reported::computed(p_in),
        p_scat_w: Reported::computed(p_scat),
        q_qp_al: Reported {
            value: q_al,
            provenance: p_abs_prov,
        },
        q_qp_nb: Reported {
            value: q_nb,
            provenance: p_abs_prov,
        },
    })
}

/// Run the full design pipeline from the config alone.
pub fn run_pipeline(config: &DesignConfig) -> Result<PipelineReport> {
    run_pipeline_with_field(config, None)
}

/// Axis scaling of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepScale {
    Linear,
    Log,
}

/// One-dimensional sweep over a config path.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepBlock {
    pub variable: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub scale: SweepScale,
}

impl SweepBlock {
    /// Read the `[sweep]` section of a config.
    pub fn from_config(config: &DesignConfig) -> Result<Self> {
        let variable = config
            .get_raw("sweep.variable")
            .ok_or_else(|| Error::Config("missing required key `sweep.variable`".into()))?
            .to_string();
        let start = config.req_f64("sweep.start")?;
        let stop = config.req_f64("sweep.stop")?;
        let steps = config.req_f64("sweep.steps")? as usize;
        let scale = match config.get_raw("sweep.scale").unwrap_or("linear") {
            "linear" => SweepScale::Linear,
            "log" => SweepScale::Log,
            other => {
                return Err(Error::Config(format!(
                    "sweep.scale: `{other}` is not one of linear, log"
                )))
            }
        };
        Self::new(variable, start, stop, steps, scale)
    }

    pub fn new(
        variable: String,
        start: f64,
        stop: f64,
        steps: usize,
        scale: SweepScale,
    ) -> Result<Self> {
        if steps < 2 {
            return Err(Error::Config(format!(
                "sweep.steps must be at least 2, got {steps}"
            )));
        }
        if scale == SweepScale::Log && !(start > 0.0 && stop > 0.0) {
            return Err(Error::Config(
                "log sweeps need positive start and stop".into(),
            ));
        }
        if !(stop > start) {
            return Err(Error::Config(format!(
                "sweep.stop ({stop}) must exceed sweep.start ({start})"
            )));
        }
        Ok(Self {
            variable,
            start,
            stop,
            steps,
            scale,
        })
    }

    /// The sampled values, in input order.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        (0..n)
            .map(|k| {
                let t = k as f64 / (n - 1) as f64;
                match self.scale {
                    SweepScale::Linear => self.start + (self.stop - self.start) * t,
                    SweepScale::Log => {
                        (self.start.ln() + (self.stop.ln() - self.start.ln()) * t).exp()
                    }
                }
            })
            .collect()
    }
}

/// Sweep one config path through the pipeline. One row per point, emitted in
/// input order. The field solve is reused across points unless the swept
/// variable lives under `cross_section.`.
pub fn run_sweep(config: &DesignConfig, sweep: &SweepBlock) -> Result<Table> {
    DesignConfig::check_sweep_variable(&sweep.variable)?;

    let needs_field = !config.has_g_bypass();
    let field_reusable = needs_field && !sweep.variable.starts_with("cross_section.");
    let cached = if field_reusable {
        let xs = config
            .cross_section()
            .map_err(|e| e.in_stage("electrostatics"))?;
        let resolution = config
            .resolution()
            .map_err(|e| e.in_stage("electrostatics"))?;
        let opts = config
            .solve_options()
            .map_err(|e| e.in_stage("electrostatics"))?;
        Some(
            solve_cross_section(&xs, resolution, &opts)
                .map_err(|e| e.in_stage("electrostatics"))?,
        )
    } else {
        None
    };

    let mut table = Table::new(
        &[
            sweep.variable.as_str(),
            "bias_v",
            "splitting_rad_s",
            "splitting_hz",
            "e_mz_v_per_m",
            "capacitance_f",
            "g_rad_s",
            "g_over_2pi_hz",
            "n_s",
            "efficiency",
            "p_in_w",
            "p_scat_w",
            "q_qp_al",
            "q_qp_nb",
            "c_ge_40ff",
        ],
        &[
            "config-units",
            "V",
            "rad/s",
            "Hz",
            "V/m",
            "F",
            "rad/s",
            "Hz",
            "photons",
            "dimensionless",
            "W",
            "W",
            "dimensionless",
            "dimensionless",
            "bool",
        ],
    );

    for value in sweep.values() {
        let mut point = config.clone();
        point.set_f64(&sweep.variable, value)?;
        let report = run_pipeline_with_field(&point, cached.as_ref())?;
        let opt_cell = |r: &Option<Reported>| match r {
            Some(v) => Cell::Number(v.value),
            None => Cell::Text(String::new()),
        };
        table.push_row(vec![
            Cell::Number(value),
            Cell::Number(report.bias_v.value),
            Cell::Number(report.splitting_rad_s.value),
            Cell::Number(report.splitting_rad_s.value / std::f64::consts::TAU),
            opt_cell(&report.e_mz_v_per_m),
            opt_cell(&report.capacitance_f),
            Cell::Number(report.g_rad_s.value),
            Cell::Number(report.g_rad_s.value / std::f64::consts::TAU),
            Cell::Number(report.n_s.value),
            Cell::Number(report.efficiency.value),
            Cell::Number(report.p_in_w.value),
            Cell::Number(report.p_scat_w.value),
            Cell::Number(report.q_qp_al.value),
            Cell::Number(report.q_qp_nb.value),
            match &report.capacitance_f {
                Some(c) => Cell::Bool(c.value >= MIN_ELECTRODE_CAPACITANCE),
                None => Cell::Text(String::new()),
            },
        ]);
    }
    Ok(table)
}
