//! Closure property of the pipeline report: every reported value can be
//! re-derived from the report's own inputs through the public module APIs.
//! Also exercises the figure-style sweeps end to end.

use eomix::config::DesignConfig;
use eomix::coupling::{cavity_from_electrode_at, g_uniform, CoverageFactor};
use eomix::csvio::Cell;
use eomix::open_system::{
    conversion_efficiency, cooperativity, pump_photons_for_unit_cooperativity,
    required_pump_power, scattered_power, OperatingPoint,
};
use eomix::pipeline::{run_pipeline, run_sweep, SweepBlock, SweepScale};
use eomix::quasiparticle::{microwave_q_from_qp, steady_state_qp_density, AbsorptionScenario};
use eomix::spectra::{phase_from_bias, splitting_from_phase};

const OMEGA_M: f64 = 3.7699111843077515e10;

const BYPASS: &str = "\
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

[coupling]
g_rad_s = 6.283185307179586e4
";

/// The full-physics config at a coarse, fast resolution.
fn full_config() -> DesignConfig {
    let text = format!(
        "{}\n[cross_section]\nconfig = parallel_plates\nw_m = 1.2e-6\nh_m = 0.75e-6\n\
         s1_m = 2e-6\ns2_m = 2e-6\ng_m = 3e-6\nl_m = 1.5e-6\nresolution_cells_per_um = 8\n",
        BYPASS.replace("\n[coupling]\ng_rad_s = 6.283185307179586e4\n", "")
    );
    DesignConfig::parse(&text).unwrap()
}

fn close(a: f64, b: f64, what: &str) {
    assert!(
        (a - b).abs() <= 1e-9 * b.abs().max(1e-300),
        "{what}: {a} vs {b}"
    );
}

#[test]
fn every_report_value_rederives_from_its_inputs() {
    let config = full_config();
    let report = run_pipeline(&config).unwrap();

    let ring = config.ring().unwrap();
    let coupler = config.coupler().unwrap().with_bias(report.bias_v.value);
    let budget = config.budget().unwrap();

    // Tuning chain.
    let phi = phase_from_bias(&coupler);
    close(report.phi_rad.value, phi, "phase");
    let spectrum = splitting_from_phase(&ring, phi).unwrap();
    close(report.splitting_rad_s.value, spectrum.splitting, "splitting");
    close(report.splitting_rad_s.value, OMEGA_M, "splitting targets omega_m");

    // Conversion rate from the report's own field quantities.
    let e_mz = report.e_mz_v_per_m.unwrap().value;
    let cap = report.capacitance_f.unwrap().value;
    let length = report.electrode_length_m.unwrap().value;
    let c_per_len = report.capacitance_per_length_f_m.unwrap().value;
    close(cap, c_per_len * length, "capacitance = C/len * length");
    let cavity = cavity_from_electrode_at(OMEGA_M, cap, 1.0).unwrap();
    let g = g_uniform(
        &config.material().unwrap(),
        ring.omega0,
        &cavity,
        CoverageFactor::full(),
        e_mz,
    )
    .unwrap();
    close(report.g_rad_s.value, g, "conversion rate");

    // Matched operating point.
    let n_s = pump_photons_for_unit_cooperativity(&budget, g).unwrap();
    close(report.n_s.value, n_s, "pump photons");
    let op = OperatingPoint::new(g, n_s, 0.0, budget, ring.omega0, OMEGA_M).unwrap();
    close(report.cooperativity.value, cooperativity(&op), "cooperativity");
    assert!((report.cooperativity.value - 1.0).abs() <= 1e-9);
    close(
        report.efficiency.value,
        conversion_efficiency(&budget),
        "efficiency",
    );
    close(
        report.p_in_w.value,
        required_pump_power(&budget, g, ring.omega0, OMEGA_M).unwrap(),
        "pump power",
    );
    close(
        report.p_scat_w.value,
        scattered_power(&budget, g, ring.omega0, OMEGA_M).unwrap(),
        "scattered power",
    );

    // Quasiparticle stage from the scattered power.
    let scen = AbsorptionScenario::new(
        report.p_scat_w.value,
        AbsorptionScenario::DEFAULT_FILM_VOLUME,
    )
    .unwrap();
    let al = config.aluminum().unwrap();
    let nb = config.niobium().unwrap();
    close(
        report.q_qp_al.value,
        microwave_q_from_qp(&al, steady_state_qp_density(&al, &scen), 1e6).unwrap(),
        "aluminum Q",
    );
    close(
        report.q_qp_nb.value,
        microwave_q_from_qp(&nb, steady_state_qp_density(&nb, &scen), 1e6).unwrap(),
        "niobium Q",
    );
}

fn number(cell: &Cell) -> f64 {
    match cell {
        Cell::Number(v) => *v,
        other => panic!("expected number, got {other:?}"),
    }
}

#[test]
fn bias_sweep_reproduces_three_linear_tuning_curves() {
    // Shifter lengths of 100, 200, 300 um give splitting-vs-bias lines with
    // slopes in the ratio 1 : 2 : 3.
    let mut slopes = Vec::new();
    for length in ["100e-6", "200e-6", "300e-6"] {
        let mut cfg = DesignConfig::parse(BYPASS).unwrap();
        cfg.set_path("coupler.phase_shifter_length_m", length).unwrap();
        for (k, v) in [
            ("sweep.variable", "coupler.bias_v"),
            ("sweep.start", "0"),
            ("sweep.stop", "3"),
            ("sweep.steps", "16"),
        ] {
            cfg.set_path(k, v).unwrap();
        }
        let table = run_sweep(&cfg, &SweepBlock::from_config(&cfg).unwrap()).unwrap();
        // Column 3 is splitting_hz; column 0 the bias.
        let rows = &table.rows;
        let slope = (number(&rows[15][3]) - number(&rows[0][3]))
            / (number(&rows[15][0]) - number(&rows[0][0]));
        // Linearity: interior second differences vanish.
        for w in rows.windows(3) {
            let second = number(&w[2][3]) - 2.0 * number(&w[1][3]) + number(&w[0][3]);
            assert!(second.abs() <= 1e-9 * number(&rows[15][3]).abs());
        }
        slopes.push(slope);
    }
    assert!((slopes[1] / slopes[0] - 2.0).abs() < 1e-9);
    assert!((slopes[2] / slopes[0] - 3.0).abs() < 1e-9);
}

#[test]
fn q_and_rate_budget_spellings_give_identical_reports() {
    let cfg_q = DesignConfig::parse(BYPASS).unwrap();
    let budget = cfg_q.budget().unwrap();
    let text = BYPASS.replace(
        "q_i_opt = 2e6\nq_ex_opt = 2e6\nq_i_m = 1e4\nq_ex_m = 1e4",
        "",
    );
    let mut cfg_r = DesignConfig::parse(&text).unwrap();
    cfg_r.set_f64("budget.gamma_i_opt_rad_s", budget.gamma_i_opt).unwrap();
    cfg_r.set_f64("budget.gamma_ex_opt_rad_s", budget.gamma_ex_opt).unwrap();
    cfg_r.set_f64("budget.gamma_i_m_rad_s", budget.gamma_i_m).unwrap();
    cfg_r.set_f64("budget.gamma_ex_m_rad_s", budget.gamma_ex_m).unwrap();

    let a = run_pipeline(&cfg_q).unwrap();
    let b = run_pipeline(&cfg_r).unwrap();
    close(a.n_s.value, b.n_s.value, "n_s");
    close(a.efficiency.value, b.efficiency.value, "efficiency");
    close(a.p_in_w.value, b.p_in_w.value, "p_in");
    close(a.p_scat_w.value, b.p_scat_w.value, "p_scat");
    close(a.q_qp_al.value, b.q_qp_al.value, "q_al");
}

#[test]
fn waveguide_coupling_sweep_shows_regime_structure() {
    let mut cfg = DesignConfig::parse(BYPASS).unwrap();
    for (k, v) in [
        ("sweep.variable", "budget.q_ex_opt"),
        ("sweep.start", "1e5"),
        ("sweep.stop", "1e8"),
        ("sweep.steps", "25"),
        ("sweep.scale", "log"),
    ] {
        cfg.set_path(k, v).unwrap();
    }
    let table = run_sweep(&cfg, &SweepBlock::from_config(&cfg).unwrap()).unwrap();
    // Efficiency (column 9) decreases as the waveguide decouples.
    for w in table.rows.windows(2) {
        assert!(number(&w[1][9]) <= number(&w[0][9]) + 1e-15);
    }
    // At the critical crossing Q_ex_opt = Q_i_opt = 2e6 the efficiency is
    // 0.25 (microwave side held critical).
    let mut crit = DesignConfig::parse(BYPASS).unwrap();
    crit.set_path("budget.q_ex_opt", "2e6").unwrap();
    let report = run_pipeline(&crit).unwrap();
    assert!((report.efficiency.value - 0.25).abs() <= 1e-12);
}
