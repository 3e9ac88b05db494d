//! One function per CLI verb, producing in-memory tables.

use num_complex::Complex64;

use eomix::closed_dynamics::{integrate_full, swap_time, ClosedState};
use eomix::config::DesignConfig;
use eomix::coupling::{g_vs_fsr_from_field, CoverageFactor};
use eomix::csvio::{Cell, Table};
use eomix::electrostatics::solve_cross_section;
use eomix::error::{Error, Result};
use eomix::open_system::{
    conversion_efficiency, cooperativity, pump_photons_for_unit_cooperativity,
    required_pump_power, scattered_power, transfer_coefficients, OperatingPoint, Target,
};
use eomix::pipeline::{run_pipeline, run_sweep, SweepBlock, SweepScale};
use eomix::quasiparticle::qp_sweep;
use eomix::spectra::{bias_for_target_splitting, phase_from_bias, splitting_from_phase};

const TAU: f64 = std::f64::consts::TAU;

/// Doublet tuning summary at the configured bias plus the bias required to
/// match the microwave frequency.
pub fn tune(config: &DesignConfig) -> Result<Table> {
    let ring = config.ring()?;
    let coupler = config.coupler()?;
    let omega_m = config.omega_m()?;

    let phi = phase_from_bias(&coupler);
    let spectrum = splitting_from_phase(&ring, phi)?;
    let bias_for_target = bias_for_target_splitting(&ring, &coupler, omega_m)?;
    // Splitting slope per volt of bias, in ordinary frequency.
    let slope_hz_per_v = 2.0 * (ring.n_g * ring.fsr / ring.n_eff) * std::f64::consts::PI
        * coupler.phase_shifter_length
        / coupler.v_pi_l;

    let mut t = Table::new(
        &[
            "bias_v",
            "phi_rad",
            "omega_s_rad_s",
            "omega_as_rad_s",
            "splitting_rad_s",
            "splitting_hz",
            "slope_hz_per_v",
            "target_splitting_rad_s",
            "bias_for_target_v",
        ],
        &[
            "V", "rad", "rad/s", "rad/s", "rad/s", "Hz", "Hz/V", "rad/s", "V",
        ],
    );
    t.push_row(vec![
        Cell::Number(coupler.bias),
        Cell::Number(phi),
        Cell::Number(spectrum.omega_s),
        Cell::Number(spectrum.omega_as),
        Cell::Number(spectrum.splitting),
        Cell::Number(spectrum.splitting_hz()),
        Cell::Number(slope_hz_per_v),
        Cell::Number(omega_m),
        Cell::Number(bias_for_target),
    ]);
    Ok(t)
}

/// Cross-section solve: scalar summary plus the full potential/field map.
pub fn fields(config: &DesignConfig) -> Result<(Table, Table)> {
    let xs = config.cross_section()?;
    let sol = solve_cross_section(&xs, config.resolution()?, &config.solve_options()?)?;

    let mut summary = Table::new(
        &[
            "nx",
            "ny",
            "e_mz_v_per_m",
            "capacitance_per_length_f_m",
            "energy_per_length_j_m",
            "drive_voltage_v",
            "residual",
            "iterations",
        ],
        &["cells", "cells", "V/m", "F/m", "J/m", "V", "relative", "count"],
    );
    summary.push_row(vec![
        Cell::Number(sol.nx as f64),
        Cell::Number(sol.ny as f64),
        Cell::Number(sol.e_mz_center),
        Cell::Number(sol.capacitance_per_length),
        Cell::Number(sol.energy_per_length),
        Cell::Number(sol.drive_voltage),
        Cell::Number(sol.residual),
        Cell::Number(sol.iterations as f64),
    ]);

    let mut map = Table::new(
        &["x", "y", "phi", "ex", "ey"],
        &["m", "m", "V", "V/m", "V/m"],
    );
    for j in 0..sol.ny {
        for i in 0..sol.nx {
            let c = sol.idx(i, j);
            map.push_row(vec![
                Cell::Number((i as f64 + 0.5) * sol.dx),
                Cell::Number((j as f64 + 0.5) * sol.dy),
                Cell::Number(sol.potential[c]),
                Cell::Number(sol.ex[c]),
                Cell::Number(sol.ey[c]),
            ]);
        }
    }
    Ok((summary, map))
}

/// Conversion-rate design curve versus FSR at fixed cross-section.
pub fn gfactor(config: &DesignConfig) -> Result<Table> {
    let xs = config.cross_section()?;
    let sol = solve_cross_section(&xs, config.resolution()?, &config.solve_options()?)?;
    let ring = config.ring()?;
    let material = config.material()?;
    let omega_m = config.omega_m()?;
    let alpha = CoverageFactor::new(config.alpha()?)?;

    let start = config.get_f64_or("gfactor.fsr_start_hz", 100e9)?;
    let stop = config.get_f64_or("gfactor.fsr_stop_hz", 250e9)?;
    let steps = config.get_f64_or("gfactor.steps", 16.0)? as usize;
    let scale = match config.get_raw("gfactor.scale").unwrap_or("log") {
        "linear" => SweepScale::Linear,
        "log" => SweepScale::Log,
        other => {
            return Err(Error::Config(format!(
                "gfactor.scale: `{other}` is not one of linear, log"
            )))
        }
    };
    let fsrs = SweepBlock::new("ring.fsr_hz".into(), start, stop, steps, scale)?.values();

    let points = g_vs_fsr_from_field(
        sol.capacitance_per_length,
        sol.e_mz_center,
        sol.drive_voltage,
        &material,
        ring.omega0,
        omega_m,
        alpha,
        ring.n_g,
        &fsrs,
    )?;

    let mut t = Table::new(
        &[
            "fsr_hz",
            "perimeter_m",
            "capacitance_f",
            "g_rad_s",
            "g_over_2pi_hz",
            "c_ge_40ff",
        ],
        &["Hz", "m", "F", "rad/s", "Hz", "bool"],
    );
    for p in points {
        t.push_row(vec![
            Cell::Number(p.fsr),
            Cell::Number(p.perimeter),
            Cell::Number(p.capacitance),
            Cell::Number(p.g),
            Cell::Number(p.g / TAU),
            Cell::Bool(p.capacitance_ok),
        ]);
    }
    Ok(t)
}

/// Resolve the conversion rate the same way the pipeline does.
fn resolve_g(config: &DesignConfig) -> Result<f64> {
    Ok(run_pipeline(config)?.g_rad_s.value)
}

/// Closed-system trajectory of the three mean-field amplitudes.
pub fn dynamics(config: &DesignConfig) -> Result<Table> {
    let g = resolve_g(config)?;
    let budget = config.budget()?;
    let n_s = match config.get_f64("dynamics.n_s")? {
        Some(n) => n,
        None => pump_photons_for_unit_cooperativity(&budget, g)?,
    };
    let phi_s = config.phi_s()?;
    let a_m0 = Complex64::new(
        config.get_f64_or("dynamics.a_m0_re", 1.0)?,
        config.get_f64_or("dynamics.a_m0_im", 0.0)?,
    );
    let a_as0 = Complex64::new(
        config.get_f64_or("dynamics.a_as0_re", 0.0)?,
        config.get_f64_or("dynamics.a_as0_im", 0.0)?,
    );
    let t_end = match config.get_f64("dynamics.t_end_s")? {
        Some(t) => t,
        None => 4.0 * swap_time(g, n_s)?,
    };
    let tol = config.get_f64_or("dynamics.tolerance", 1e-10)?;
    let samples = config.get_f64_or("dynamics.samples", 200.0)? as usize;

    let state0 = ClosedState::new(Complex64::from_polar(n_s.sqrt(), phi_s), a_as0, a_m0);
    let traj = integrate_full(&state0, g, t_end, tol, samples)?;

    let mut t = Table::new(
        &[
            "t_s", "a_s_re", "a_s_im", "a_s_sq", "a_as_re", "a_as_im", "a_as_sq", "a_m_re",
            "a_m_im", "a_m_sq",
        ],
        &[
            "s",
            "sqrt(photons)",
            "sqrt(photons)",
            "photons",
            "sqrt(photons)",
            "sqrt(photons)",
            "photons",
            "sqrt(photons)",
            "sqrt(photons)",
            "photons",
        ],
    );
    for s in traj {
        t.push_row(vec![
            Cell::Number(s.time),
            Cell::Number(s.a_s.re),
            Cell::Number(s.a_s.im),
            Cell::Number(s.a_s.norm_sqr()),
            Cell::Number(s.a_as.re),
            Cell::Number(s.a_as.im),
            Cell::Number(s.a_as.norm_sqr()),
            Cell::Number(s.a_m.re),
            Cell::Number(s.a_m.im),
            Cell::Number(s.a_m.norm_sqr()),
        ]);
    }
    Ok(t)
}

/// Open-system conversion point and the transfer-coefficient rows over an
/// optional detuning range (a single zero-detuning row by default).
pub fn convert(config: &DesignConfig) -> Result<(Table, Table)> {
    let g = resolve_g(config)?;
    let budget = config.budget()?;
    let omega_opt = config.omega0()?;
    let omega_m = config.omega_m()?;
    let n_s = pump_photons_for_unit_cooperativity(&budget, g)?;
    let op = OperatingPoint::new(g, n_s, config.phi_s()?, budget, omega_opt, omega_m)?;

    let mut point = Table::new(
        &[
            "g_rad_s",
            "n_s",
            "cooperativity",
            "efficiency",
            "p_in_w",
            "p_scat_w",
            "q_opt",
            "q_m",
        ],
        &[
            "rad/s",
            "photons",
            "dimensionless",
            "dimensionless",
            "W",
            "W",
            "dimensionless",
            "dimensionless",
        ],
    );
    point.push_row(vec![
        Cell::Number(g),
        Cell::Number(n_s),
        Cell::Number(cooperativity(&op)),
        Cell::Number(conversion_efficiency(&budget)),
        Cell::Number(required_pump_power(&budget, g, omega_opt, omega_m)?),
        Cell::Number(scattered_power(&budget, g, omega_opt, omega_m)?),
        Cell::Number(budget.q_opt(omega_opt)),
        Cell::Number(budget.q_m(omega_m)),
    ]);

    let detunings = match (
        config.get_f64("convert.detuning_start_rad_s")?,
        config.get_f64("convert.detuning_stop_rad_s")?,
    ) {
        (Some(start), Some(stop)) => {
            let steps = config.get_f64_or("convert.steps", 101.0)? as usize;
            SweepBlock::new("pump.phi_s_rad".into(), start, stop, steps, SweepScale::Linear)?
                .values()
        }
        _ => vec![0.0],
    };

    let mut transfer = Table::new(
        &[
            "target",
            "detuning_rad_s",
            "port",
            "coeff_re",
            "coeff_im",
            "coeff_sq",
        ],
        &["-", "rad/s", "-", "-", "-", "-"],
    );
    for &detuning in &detunings {
        for (target, name) in [
            (Target::UpconvertedMode, "a_as"),
            (Target::MicrowaveMode, "a_m"),
            (Target::OutputPort, "s_out"),
        ] {
            let row = transfer_coefficients(&op, detuning, target);
            for (port, c) in [
                ("microwave_in", row.from_microwave_in),
                ("microwave_bath", row.from_microwave_bath),
                ("waveguide_vacuum", row.from_waveguide_vacuum),
                ("optical_bath", row.from_optical_bath),
            ] {
                transfer.push_row(vec![
                    Cell::Text(name.to_string()),
                    Cell::Number(detuning),
                    Cell::Text(port.to_string()),
                    Cell::Number(c.re),
                    Cell::Number(c.im),
                    Cell::Number(c.norm_sqr()),
                ]);
            }
        }
    }
    Ok((point, transfer))
}

/// Generic pipeline sweep from the `[sweep]` config block.
pub fn sweep(config: &DesignConfig) -> Result<Table> {
    let block = SweepBlock::from_config(config)?;
    run_sweep(config, &block)
}

/// Quasiparticle sweep over absorbed power for both superconductors.
pub fn qp(config: &DesignConfig) -> Result<Table> {
    let start = config.get_f64_or("quasiparticle.p_abs_start_w", 1e-7)?;
    let stop = config.get_f64_or("quasiparticle.p_abs_stop_w", 1e-3)?;
    let steps = config.get_f64_or("quasiparticle.p_abs_steps", 41.0)? as usize;
    let film_volume = config.get_f64_or(
        "quasiparticle.film_volume_m3",
        eomix::quasiparticle::AbsorptionScenario::DEFAULT_FILM_VOLUME,
    )?;
    let q_other = config.get_f64_or("quasiparticle.q_other", 1e6)?;

    let powers =
        SweepBlock::new("quasiparticle.p_abs_w".into(), start, stop, steps, SweepScale::Log)?
            .values();
    let rows = qp_sweep(&powers, film_volume, q_other)?;

    let mut t = Table::new(
        &["p_abs_w", "n_qp_al_m3", "n_qp_nb_m3", "q_al", "q_nb"],
        &["W", "1/m^3", "1/m^3", "dimensionless", "dimensionless"],
    );
    for r in rows {
        t.push_row(vec![
            Cell::Number(r.absorbed_power),
            Cell::Number(r.n_qp_al),
            Cell::Number(r.n_qp_nb),
            Cell::Number(r.q_al),
            Cell::Number(r.q_nb),
        ]);
    }
    Ok(t)
}
