//! Slower field-solver properties on the realistic electrode layouts.

use eomix::electrostatics::{
    build_grid, contour_flux, solve, solve_cross_section, CrossSection, Material, SolveOptions,
};

fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

// Resolution for these checks: coarse enough to stay quick, fine enough to
// resolve every feature.
const RES: f64 = 8.0;

#[test]
fn padding_insensitivity_both_layouts() {
    for base in [
        CrossSection::parallel_plates(),
        CrossSection::top_plus_side_grounds(),
    ] {
        let mut wide = base.clone();
        wide.padding_factor = 10.0;
        let opts = SolveOptions::default();
        let sol_near = solve_cross_section(&base, RES, &opts).unwrap();
        let sol_wide = solve_cross_section(&wide, RES, &opts).unwrap();
        let dc = rel_err(
            sol_near.capacitance_per_length,
            sol_wide.capacitance_per_length,
        );
        assert!(
            dc < 0.01,
            "{:?}: capacitance moved {dc:.4} when padding doubled",
            base.config
        );
    }
}

#[test]
fn gauss_law_holds_around_the_ridge() {
    let xs = CrossSection::parallel_plates();
    let grid = build_grid(&xs, RES).unwrap();
    let sol = solve(&grid, &SolveOptions { tol: 1e-10, ..Default::default() }).unwrap();

    // A contour box enclosing the (charge-free) dielectric ridge.
    let lay = eomix::electrostatics::layout(&xs);
    let h = 1e-6 / RES;
    let to_cell = |v: f64| (v / h) as usize;
    let (i0, i1) = (to_cell(lay.ridge.x.0) - 4, to_cell(lay.ridge.x.1) + 4);
    let (j0, j1) = (to_cell(lay.ridge.y.0) - 4, to_cell(lay.ridge.y.1) + 4);
    let flux = contour_flux(&grid, &sol, (i0, i1), (j0, j1));
    let charge = sol.capacitance_per_length * sol.drive_voltage;
    assert!(
        (flux / charge).abs() < 1e-6,
        "ridge box flux {flux:e} vs plate charge {charge:e}"
    );
}

#[test]
fn optional_silicon_slab_raises_capacitance() {
    let base = CrossSection::top_plus_side_grounds();
    let mut with_si = base.clone();
    // Fill the lower window up to just below the stack with silicon.
    with_si.si_thickness = Some(14e-6);
    let opts = SolveOptions::default();
    let plain = solve_cross_section(&base, RES, &opts).unwrap();
    let si = solve_cross_section(&with_si, RES, &opts).unwrap();

    let grid = build_grid(&with_si, RES).unwrap();
    assert!(grid.count_material(Material::Si) > 0);
    // Replacing oxide with higher-permittivity silicon can only add
    // capacitance at fixed drive.
    assert!(si.capacitance_per_length > plain.capacitance_per_length);
}

#[test]
fn solver_tolerance_domain_enforced() {
    let xs = CrossSection::parallel_plates();
    let grid = build_grid(&xs, RES).unwrap();
    for bad in [0.0, -1e-8, 0.02] {
        let res = solve(&grid, &SolveOptions { tol: bad, ..Default::default() });
        assert!(res.is_err(), "tol {bad} should be rejected");
    }
}
