//! Acceptance suite: one test per shipping criterion, each printing a
//! single PASS/FAIL line (visible with `--nocapture`).
//!
//! Run with `cargo test -p eomix --test acceptance --release -- --nocapture`.

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use eomix::closed_dynamics::{integrate_full, rabi_closed_form, swap_time, ClosedState};
use eomix::constants::OMEGA0_TELECOM;
use eomix::coupling::{g_vs_fsr_from_field, CoverageFactor, EOMaterial};
use eomix::electrostatics::{
    solve, solve_cross_section, solve_cross_section_with_guess, CrossSection, Grid2D, Material,
    SolveOptions,
};
use eomix::open_system::{
    conversion_efficiency, conversion_efficiency_from_qs, cooperativity,
    pump_photons_for_unit_cooperativity, pump_photons_from_power, required_pump_power,
    scattered_power, transfer_coefficients, LossBudget, OperatingPoint, Target,
};
use eomix::quasiparticle::{microwave_q_from_qp, steady_state_qp_density, AbsorptionScenario, SCMaterial};

const TAU: f64 = std::f64::consts::TAU;
const OMEGA_M: f64 = TAU * 6e9;

/// Production-resolution solve of the parallel-plate reference layout,
/// shared by the criteria that need it.
fn reference_field() -> &'static eomix::electrostatics::FieldSolution {
    use std::sync::OnceLock;
    static FIELD: OnceLock<eomix::electrostatics::FieldSolution> = OnceLock::new();
    FIELD.get_or_init(|| {
        solve_cross_section(&CrossSection::parallel_plates(), 20.0, &SolveOptions::default())
            .expect("reference field solve")
    })
}

/// Print the criterion verdict line, then enforce it.
fn verdict(number: u32, description: &str, pass: bool, detail: String) {
    let tag = if pass { "PASS" } else { "FAIL" };
    println!("ACCEPTANCE {number} {tag}: {description} ({detail})");
    assert!(pass, "criterion {number} failed: {detail}");
}

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// Q_opt = 1e6 critical, Q_M = 5000 critical.
fn reference_budget() -> LossBudget {
    LossBudget::critical_from_loaded_qs(OMEGA0_TELECOM, OMEGA_M, 1e6, 5000.0).unwrap()
}

fn random_budget(rng: &mut ChaCha8Rng) -> LossBudget {
    LossBudget::from_qs(
        OMEGA0_TELECOM,
        OMEGA_M,
        10f64.powf(rng.random_range(4.0..8.0)),
        10f64.powf(rng.random_range(4.0..8.0)),
        10f64.powf(rng.random_range(2.0..6.0)),
        10f64.powf(rng.random_range(2.0..6.0)),
    )
    .unwrap()
}

#[test]
fn criterion_01_critical_coupling_efficiency() {
    let budget = reference_budget();
    let eta_rates = conversion_efficiency(&budget);
    let eta_qs = conversion_efficiency_from_qs(&budget, OMEGA0_TELECOM, OMEGA_M);

    // Third route: squared output-row coefficient at zero detuning, C = 1.
    let g = TAU * 10e3;
    let n_s = pump_photons_for_unit_cooperativity(&budget, g).unwrap();
    let op = OperatingPoint::new(g, n_s, 0.0, budget, OMEGA0_TELECOM, OMEGA_M).unwrap();
    let eta_row = transfer_coefficients(&op, 0.0, Target::OutputPort).microwave_transmission();

    let worst = (eta_rates - 0.25)
        .abs()
        .max((eta_qs - 0.25).abs())
        .max((eta_row - 0.25).abs());
    verdict(
        1,
        "critical coupling converts exactly a quarter of microwave photons",
        worst <= 1e-12,
        format!("max |eta - 0.25| = {worst:e} over rate/Q/coefficient routes"),
    );
}

#[test]
fn criterion_02_input_output_unitarity() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0e0_a11ce);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let budget = random_budget(&mut rng);
        let g = TAU * 10f64.powf(rng.random_range(2.0..6.0));
        let c_factor = rng.random_range(0.0..100.0);
        let n_s = c_factor * pump_photons_for_unit_cooperativity(&budget, g).unwrap();
        let detuning = rng.random_range(-1e9..1e9);
        let phi_s = rng.random_range(0.0..TAU);
        let op = OperatingPoint::new(g, n_s, phi_s, budget, OMEGA0_TELECOM, OMEGA_M).unwrap();
        let total = transfer_coefficients(&op, detuning, Target::OutputPort).total_sq_magnitude();
        worst = worst.max((total - 1.0).abs());
    }
    verdict(
        2,
        "output-port row is unitary across 1000 random operating points",
        worst <= 1e-12,
        format!("max |sum - 1| = {worst:e}"),
    );
}

#[test]
fn criterion_03_required_pump_power() {
    // Hand-derived oracle, computed once from
    // hbar*w_opt*gamma_opt^3*gamma_M / (16*gamma_ex_opt*g^2) with
    // Q_opt = 1e6 (critical), Q_M = 5000 (critical), g = 2pi*10 kHz,
    // w_opt = 2pi*193.41 THz, w_M = 2pi*6 GHz, and frozen.
    const P_IN_ORACLE: f64 = 4.518184188072652e-5;

    let budget = reference_budget();
    let g = TAU * 10e3;
    let p_in = required_pump_power(&budget, g, OMEGA0_TELECOM, OMEGA_M).unwrap();
    let in_band = (1e-5..1e-4).contains(&p_in);

    let low_q = LossBudget::critical_from_loaded_qs(OMEGA0_TELECOM, OMEGA_M, 1e5, 5000.0).unwrap();
    let p_low = required_pump_power(&low_q, g, OMEGA0_TELECOM, OMEGA_M).unwrap();
    let ratio = p_low / p_in;

    let pass = rel_err(p_in, P_IN_ORACLE) <= 1e-3 && in_band && rel_err(ratio, 100.0) <= 1e-9;
    verdict(
        3,
        "C=1 pump power matches the frozen oracle in the tens-of-microwatts band",
        pass,
        format!(
            "P_in = {p_in:.6e} W (oracle {P_IN_ORACLE:.6e}, rel {:.2e}), 10x-lower-Q ratio {ratio}",
            rel_err(p_in, P_IN_ORACLE)
        ),
    );
}

#[test]
fn criterion_04_cooperativity_closure() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc10_5u64);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let budget = random_budget(&mut rng);
        let g = TAU * 10f64.powf(rng.random_range(2.0..6.0));
        let p_in = required_pump_power(&budget, g, OMEGA0_TELECOM, OMEGA_M).unwrap();
        let n_s = pump_photons_from_power(p_in, &budget, OMEGA0_TELECOM).unwrap();
        let op = OperatingPoint::new(g, n_s, 0.0, budget, OMEGA0_TELECOM, OMEGA_M).unwrap();
        worst = worst.max((cooperativity(&op) - 1.0).abs());
    }
    verdict(
        4,
        "pump power -> photon number -> cooperativity closes at C = 1",
        worst <= 1e-9,
        format!("max |C - 1| = {worst:e} over 100 random budgets"),
    );
}

#[test]
fn criterion_05_closed_system_swap() {
    let g = TAU * 10e3;
    let a_m0 = Complex64::new(1.0, 0.0);

    // Full swap of the closed form at T = pi/(2 g sqrt(N_s)).
    let n_s = 5.8023e5;
    let t_swap = swap_time(g, n_s).unwrap();
    let (a_m_t, a_as_t) =
        rabi_closed_form(a_m0, Complex64::ZERO, n_s, 0.3, g, t_swap).unwrap();
    let swap_ok = (a_as_t.norm() - a_m0.norm()).abs() <= 1e-12 && a_m_t.norm() <= 1e-12;

    // Integration against the closed form at the depletion boundary
    // N_s = 1e4 |a_m0|^2, over [0, 4T].
    let n_dep = 1e4;
    let t4 = 4.0 * swap_time(g, n_dep).unwrap();
    let state0 = ClosedState::new(
        Complex64::from_polar(n_dep.sqrt(), 0.3),
        Complex64::ZERO,
        a_m0,
    );
    let traj = integrate_full(&state0, g, t4, 1e-10, 64).unwrap();
    let mut ode_dev = 0.0f64;
    for s in &traj {
        let (a_m, a_as) = rabi_closed_form(a_m0, Complex64::ZERO, n_dep, 0.3, g, s.time).unwrap();
        ode_dev = ode_dev.max((s.a_m - a_m).norm()).max((s.a_as - a_as).norm());
    }

    // Both photon-number invariants over 10 periods.
    let period = TAU / (g * n_dep.sqrt());
    let traj10 = integrate_full(&state0, g, 10.0 * period, 1e-10, 40).unwrap();
    let inv1_0 = state0.a_s.norm_sqr() + state0.a_as.norm_sqr();
    let inv2_0 = state0.a_m.norm_sqr() + state0.a_as.norm_sqr();
    let mut drift = 0.0f64;
    for s in &traj10 {
        let inv1 = s.a_s.norm_sqr() + s.a_as.norm_sqr();
        let inv2 = s.a_m.norm_sqr() + s.a_as.norm_sqr();
        drift = drift
            .max((inv1 - inv1_0).abs() / inv1_0)
            .max((inv2 - inv2_0).abs() / inv2_0.max(1.0));
    }

    let pass = swap_ok && ode_dev <= 1e-3 && drift <= 1e-9;
    verdict(
        5,
        "complete microwave->optical swap at T, ODE matches closed form, invariants hold",
        pass,
        format!(
            "|a_m(T)| = {:.2e}, ODE deviation {:.2e}, invariant drift {:.2e}",
            a_m_t.norm(),
            ode_dev,
            drift
        ),
    );
}

#[test]
fn criterion_06_tuning_curve_slope() {
    // Hand-derived oracle: splitting slope 2*(n_g*FSR/n_eff)*pi*L/(V_pi.L)
    // = 7.5084 GHz/V for FSR 100 GHz, n_g 2.39, n_eff 2, L = 200 um,
    // V_pi.L = 2 V.cm; frozen.
    const SLOPE_ORACLE_HZ_PER_V: f64 = 7.508406442079606e9;

    let ring = eomix::spectra::RingParams::hundred_ghz_default();
    let coupler = eomix::spectra::CouplerParams::new(200e-6, 0.02, 0.0).unwrap();

    // Sampled slope from the bias -> phase -> splitting chain.
    let splitting_hz = |bias: f64| {
        let phi = eomix::spectra::phase_from_bias(&coupler.with_bias(bias));
        eomix::spectra::splitting_from_phase(&ring, phi)
            .unwrap()
            .splitting_hz()
    };
    let mut slopes = Vec::new();
    for k in 0..10 {
        let b0 = 0.3 * k as f64;
        slopes.push((splitting_hz(b0 + 0.1) - splitting_hz(b0)) / 0.1);
    }
    let worst_slope_err = slopes
        .iter()
        .map(|s| rel_err(*s, SLOPE_ORACLE_HZ_PER_V))
        .fold(0.0f64, f64::max);

    let bias_6ghz =
        eomix::spectra::bias_for_target_splitting(&ring, &coupler, TAU * 6e9).unwrap();

    let pass = worst_slope_err <= 1e-3 && bias_6ghz < 1.0;
    verdict(
        6,
        "splitting tunes linearly at the oracle slope; 6 GHz is reached below 1 V",
        pass,
        format!(
            "slope rel err {worst_slope_err:.2e} vs {SLOPE_ORACLE_HZ_PER_V:.4e} Hz/V, \
             bias(6 GHz) = {bias_6ghz:.4} V"
        ),
    );
}

#[test]
fn criterion_07_electrostatics_oracles() {
    use eomix::constants::EPSILON_0;
    let opts = SolveOptions::default();

    // Parallel plates: uniform-eps textbook capacitor and mid-gap field.
    let (nx, ny, h, eps) = (24usize, 34usize, 0.25e-6, 4.0);
    let mut grid = Grid2D::new_uniform(nx, ny, h, h, eps);
    let w = nx as f64 * h;
    grid.set_electrode_rect((0.0, w), (0.0, h), 0.0);
    grid.set_electrode_rect((0.0, w), ((ny - 1) as f64 * h, ny as f64 * h), 1.0);
    let sol = solve(&grid, &opts).unwrap();
    let d = (ny - 2) as f64 * h;
    let plate_c_err = rel_err(sol.capacitance_per_length, EPSILON_0 * eps * w / d);
    let plate_e_err = rel_err(sol.ey[sol.idx(nx / 2, ny / 2)].abs(), 1.0 / d);

    // Two-layer stack: series-capacitor closed form.
    let (eps1, eps2) = (2.0, 7.5);
    let mut stack = Grid2D::new_uniform(16, 42, 0.25e-6, 0.25e-6, eps1);
    let w2 = 16.0 * 0.25e-6;
    let y_if = 18.0 * 0.25e-6;
    stack.set_material_rect((0.0, w2), (y_if, 42.0 * 0.25e-6), Material::SiO2, eps2, eps2);
    stack.set_electrode_rect((0.0, w2), (0.0, 0.25e-6), 0.0);
    stack.set_electrode_rect((0.0, w2), (41.0 * 0.25e-6, 42.0 * 0.25e-6), 1.0);
    let sol2 = solve(&stack, &opts).unwrap();
    let d1 = y_if - 0.25e-6;
    let d2 = 41.0 * 0.25e-6 - y_if;
    let stack_c_err = rel_err(
        sol2.capacitance_per_length,
        EPSILON_0 * w2 / (d1 / eps1 + d2 / eps2),
    );

    // Grid-convergence order on a smooth graded dielectric.
    let mut errors = Vec::new();
    for ny in [24usize, 48, 96] {
        let nxo = 6;
        let hh = 8e-6 / ny as f64;
        let height = ny as f64 * hh;
        let mut g = Grid2D::new_uniform(nxo, ny, hh, hh, 1.0);
        let ww = nxo as f64 * hh;
        for j in 0..ny {
            let yc = (j as f64 + 0.5) * hh;
            let e = 2.0 + yc / height;
            g.set_material_rect((0.0, ww), (j as f64 * hh, (j + 1) as f64 * hh), Material::SiO2, e, e);
        }
        g.set_electrode_rect((0.0, ww), (0.0, hh), 0.0);
        g.set_electrode_rect((0.0, ww), (height - hh, height), 1.0);
        let s = solve(&g, &SolveOptions { tol: 1e-12, ..opts }).unwrap();
        let (ya, yb) = (hh, height - hh);
        let integral = height * ((2.0 + yb / height) / (2.0 + ya / height)).ln();
        errors.push(rel_err(s.capacitance_per_length, EPSILON_0 * ww / integral));
    }
    let orders: Vec<f64> = errors.windows(2).map(|p| (p[0] / p[1]).log2()).collect();
    let order_ok = orders.iter().all(|o| (1.5..=2.5).contains(o));

    // Self-convergence of the reference layout against a 4x-refined run.
    // The refined solve is warm-started and run to a 1e-6 residual: the
    // solver error it leaves (~1e-6 relative) is three orders below the
    // 0.3% discretization difference being measured.
    let xs_a = CrossSection::parallel_plates;
    let coarse = reference_field();
    let fine = solve_cross_section_with_guess(
        &xs_a(),
        80.0,
        &SolveOptions { tol: 1e-6, ..opts },
        Some(coarse),
    )
    .unwrap();
    let self_conv = rel_err(coarse.e_mz_center, fine.e_mz_center);

    // Parallel plates beat side grounds on vertical field at equal drive.
    let side = solve_cross_section(&CrossSection::top_plus_side_grounds(), 20.0, &opts).unwrap();
    let stronger = coarse.e_mz_center.abs() > side.e_mz_center.abs();

    let pass = plate_c_err < 0.01
        && plate_e_err < 0.01
        && stack_c_err < 0.01
        && order_ok
        && self_conv <= 0.02
        && stronger;
    verdict(
        7,
        "field solver hits closed forms, converges at 2nd order, self-converges to 2%",
        pass,
        format!(
            "plate C err {plate_c_err:.2e}, E err {plate_e_err:.2e}, stack C err \
             {stack_c_err:.2e}, orders {orders:?}, self-convergence {self_conv:.4}, \
             parallel {:.4e} > side {:.4e}",
            coarse.e_mz_center.abs(),
            side.e_mz_center.abs()
        ),
    );
}

#[test]
fn criterion_08_g_band_and_scaling() {
    let sol = reference_field();

    let fsrs: Vec<f64> = (0..12)
        .map(|k| 140e9 * 2f64.powf(k as f64 / 11.0))
        .collect();
    let points = g_vs_fsr_from_field(
        sol.capacitance_per_length,
        sol.e_mz_center,
        sol.drive_voltage,
        &EOMaterial::lithium_niobate(),
        OMEGA0_TELECOM,
        OMEGA_M,
        CoverageFactor::full(),
        2.39,
        &fsrs,
    )
    .unwrap();

    let qualifying: Vec<_> = points.iter().filter(|p| p.capacitance_ok).collect();
    let band_ok = !qualifying.is_empty()
        && qualifying
            .iter()
            .all(|p| (5e3..=15e3).contains(&(p.g / TAU)));

    // Log-log fit of g against FSR over the whole curve.
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for p in &points {
        let (x, y) = (p.fsr.ln(), p.g.ln());
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    let exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);

    let pass = band_ok && (exponent - 0.5).abs() <= 0.02;
    let g_range: Vec<f64> = qualifying.iter().map(|p| p.g / TAU / 1e3).collect();
    verdict(
        8,
        "conversion rate sits in the 5-15 kHz band where C >= 40 fF and scales as sqrt(FSR)",
        pass,
        format!(
            "{} qualifying points, g/2pi = {:.2?} kHz, fitted exponent {exponent:.4}",
            qualifying.len(),
            g_range
        ),
    );
}

#[test]
fn criterion_09_scattered_power_identities() {
    let g = TAU * 10e3;
    let budget = reference_budget();
    let p_in = required_pump_power(&budget, g, OMEGA0_TELECOM, OMEGA_M).unwrap();
    let p_scat = scattered_power(&budget, g, OMEGA0_TELECOM, OMEGA_M).unwrap();
    let critical_err = rel_err(p_scat, p_in);

    let mut rng = ChaCha8Rng::seed_from_u64(0x5ca7);
    let mut worst_ratio_err = 0.0f64;
    for _ in 0..100 {
        let b = random_budget(&mut rng);
        let p_in = required_pump_power(&b, g, OMEGA0_TELECOM, OMEGA_M).unwrap();
        let p_scat = scattered_power(&b, g, OMEGA0_TELECOM, OMEGA_M).unwrap();
        let q_opt = b.q_opt(OMEGA0_TELECOM);
        let expect = 4.0 * q_opt * q_opt / (b.q_ex_opt(OMEGA0_TELECOM) * b.q_i_opt(OMEGA0_TELECOM));
        worst_ratio_err = worst_ratio_err.max(rel_err(p_scat / p_in, expect));
    }

    let pass = critical_err <= 1e-12 && worst_ratio_err <= 1e-12;
    verdict(
        9,
        "scattered power equals pump power at critical coupling; ratio identity holds",
        pass,
        format!("critical rel err {critical_err:e}, worst ratio rel err {worst_ratio_err:e}"),
    );
}

#[test]
fn criterion_10_quasiparticle_properties() {
    let al = SCMaterial::aluminum();
    let nb = SCMaterial::niobium();
    let vol = AbsorptionScenario::DEFAULT_FILM_VOLUME;
    let q_other = 1e6;

    let powers: Vec<f64> = (0..33).map(|k| 1e-7 * 10f64.powf(k as f64 / 8.0)).collect();
    let mut monotone = true;
    let mut ordering = true;
    let mut prev_q_al = f64::INFINITY;
    let mut slope_ok = true;
    let mut prev_excess: Option<(f64, f64)> = None;
    for &p in &powers {
        let scen = AbsorptionScenario::new(p, vol).unwrap();
        let n_al = steady_state_qp_density(&al, &scen);
        let n_nb = steady_state_qp_density(&nb, &scen);
        let q_al = microwave_q_from_qp(&al, n_al, q_other).unwrap();
        let q_nb = microwave_q_from_qp(&nb, n_nb, q_other).unwrap();
        monotone &= q_al <= prev_q_al + 1e-9 * prev_q_al.min(1e300);
        prev_q_al = q_al;
        ordering &= q_nb > q_al;
        // High-power asymptote of the quasiparticle loss channel.
        if p >= 1e-5 {
            let excess = 1.0 / q_al - 1.0 / q_other;
            if let Some((p0, e0)) = prev_excess {
                let slope = (excess / e0).ln() / (p / p0).ln();
                slope_ok &= (slope - 0.5).abs() <= 0.02;
            }
            prev_excess = Some((p, excess));
        }
    }

    let scen50 = AbsorptionScenario::new(50e-6, vol).unwrap();
    let q_al_50 =
        microwave_q_from_qp(&al, steady_state_qp_density(&al, &scen50), q_other).unwrap();

    let pass = monotone && ordering && slope_ok && q_al_50 > 1e4;
    verdict(
        10,
        "quasiparticle Q degrades monotonically as sqrt(P), Nb above Al, Al above 1e4 at 50 uW",
        pass,
        format!(
            "monotone {monotone}, Nb>Al {ordering}, sqrt-slope {slope_ok}, Q_Al(50uW) = {q_al_50:.3e}"
        ),
    );
}
