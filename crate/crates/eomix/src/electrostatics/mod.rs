//! 2D electrostatics of the microwave electrode cross-sections.
//!
//! The cross-section is deeply subwavelength at a few GHz, so the microwave
//! field follows the DC (Laplace) solution with piecewise dielectrics. Two
//! electrode layouts are modeled around an LN ridge buried in SiO2:
//!
//! * `ParallelPlates` — drive electrode above the ridge, ground electrode
//!   below it;
//! * `TopPlusSideGrounds` — drive electrode above the ridge, ground slabs
//!   flanking it and extending to the window edge.
//!
//! The solve yields the vertical field at the ridge center (the component
//! that drives the electro-optic r33 response for Z-cut LN) and the
//! electrode capacitance per unit length via the field energy, both
//! normalized to a 1 V drive. LN is uniaxial: vertical flux sees eps_z,
//! horizontal flux sees eps_xy.

mod grid;
mod solve;

pub use grid::{Grid2D, Material};
pub use solve::{contour_flux, solve, solve_with_guess, FieldSolution, SolveOptions};

use std::io::{self, Write};

use crate::csvio::fmt_float;
use crate::error::{Error, Result};

/// Relative permittivities per region. LN is uniaxial with its optic axis
/// vertical: `ln_z` applies to vertical flux, `ln_xy` to horizontal flux.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Permittivities {
    pub ln_z: f64,
    pub ln_xy: f64,
    pub sio2: f64,
    pub si: f64,
}

impl Default for Permittivities {
    fn default() -> Self {
        // Congruent-LN microwave values; overridable in config.
        Self {
            ln_z: 28.0,
            ln_xy: 43.0,
            sio2: 3.9,
            si: 11.7,
        }
    }
}

/// Electrode layout around the ridge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElectrodeConfig {
    /// Drive above the ridge, ground plate below it.
    ParallelPlates,
    /// Drive above the ridge, ground slabs on both sides.
    TopPlusSideGrounds,
}

/// Electrode/dielectric cross-section geometry. All lengths in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossSection {
    pub config: ElectrodeConfig,
    /// LN ridge width W.
    pub ridge_width: f64,
    /// LN ridge height H.
    pub ridge_height: f64,
    /// Drive-electrode-to-ridge-top spacing S1.
    pub s1: f64,
    /// Ridge-bottom spacing S2 (to the ground plate in `ParallelPlates`,
    /// to the optional substrate otherwise).
    pub s2: f64,
    /// Lateral gap G between the ridge flank and the side grounds
    /// (`TopPlusSideGrounds`).
    pub lateral_gap: f64,
    /// Side-ground vertical offset L: the side-ground top surface sits L
    /// below the drive electrode's lower surface (`TopPlusSideGrounds`).
    /// The caption quantity this maps onto is not fully dimensioned, so the
    /// placement is a documented, overridable choice.
    pub side_offset: f64,
    pub permittivities: Permittivities,
    /// Electrode metal thickness.
    pub electrode_thickness: f64,
    /// Drive electrode width; defaults to the ridge width.
    pub drive_width: Option<f64>,
    /// Ground plate width for `ParallelPlates`; defaults to ten times the
    /// largest layout feature, wide enough to anchor the drive's return flux
    /// so the capacitance stays insensitive to the window padding.
    pub ground_width: Option<f64>,
    /// Neumann window padding as a multiple of the largest named feature.
    pub padding_factor: f64,
    /// Optional silicon slab filling the bottom of the window.
    pub si_thickness: Option<f64>,
}

impl CrossSection {
    /// Parallel-plate layout with the reference ridge dimensions
    /// (W 1.2 um, H 0.75 um, S1 = S2 = 2 um, G 3 um, L 1.5 um).
    pub fn parallel_plates() -> Self {
        Self {
            config: ElectrodeConfig::ParallelPlates,
            ridge_width: 1.2e-6,
            ridge_height: 0.75e-6,
            s1: 2e-6,
            s2: 2e-6,
            lateral_gap: 3e-6,
            side_offset: 1.5e-6,
            permittivities: Permittivities::default(),
            electrode_thickness: 0.4e-6,
            drive_width: None,
            ground_width: None,
            padding_factor: 8.0,
            si_thickness: None,
        }
    }

    /// Top-drive/side-ground layout with the reference ridge dimensions.
    pub fn top_plus_side_grounds() -> Self {
        Self {
            config: ElectrodeConfig::TopPlusSideGrounds,
            ..Self::parallel_plates()
        }
    }

    fn resolved_drive_width(&self) -> f64 {
        self.drive_width.unwrap_or(self.ridge_width)
    }

    /// Largest device feature the selected layout actually uses.
    fn feature_base(&self) -> f64 {
        let mut features = vec![self.ridge_width, self.ridge_height, self.s1, self.s2];
        if self.config == ElectrodeConfig::TopPlusSideGrounds {
            features.push(self.lateral_gap);
            features.push(self.side_offset);
        }
        features.into_iter().fold(0.0f64, f64::max)
    }

    /// Padding distance: `padding_factor` times the largest feature.
    /// Electrode dressing such as a deliberately wide ground plate does not
    /// inflate the padding; clearance is still measured from the widest
    /// structure.
    fn padding(&self) -> f64 {
        self.padding_factor * self.feature_base()
    }

    fn resolved_ground_width(&self) -> f64 {
        self.ground_width.unwrap_or(10.0 * self.feature_base())
    }
}

/// Axis-aligned rectangle in physical coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rect {
    pub x: (f64, f64),
    pub y: (f64, f64),
}

/// Resolved physical placement of every region of a cross-section, with the
/// window origin at the lower-left corner.
#[derive(Debug, Clone, PartialEq)]
pub struct Layout {
    pub window_w: f64,
    pub window_h: f64,
    pub ridge: Rect,
    pub drive: Rect,
    pub grounds: Vec<Rect>,
    pub si: Option<Rect>,
    pub ridge_center: (f64, f64),
}

/// Round a window dimension up to a whole micron so that cell counts scale
/// exactly with integer resolutions; the slack widens the padding.
fn round_up_micron(v: f64) -> f64 {
    (v * 1e6).ceil() * 1e-6
}

/// Compute the physical layout of a cross-section.
pub fn layout(xs: &CrossSection) -> Layout {
    let pad = xs.padding();
    let t = xs.electrode_thickness;
    let w = xs.ridge_width;
    let h = xs.ridge_height;
    let drive_w = xs.resolved_drive_width();

    match xs.config {
        ElectrodeConfig::ParallelPlates => {
            let ground_w = xs.resolved_ground_width();
            let widest = w.max(drive_w).max(ground_w);
            let window_w = round_up_micron(widest + 2.0 * pad);
            let cx = (widest + 2.0 * pad) / 2.0;
            let ridge_y0 = pad + t + xs.s2;
            let window_h = round_up_micron(2.0 * pad + 2.0 * t + xs.s1 + xs.s2 + h);
            let ridge = Rect {
                x: (cx - w / 2.0, cx + w / 2.0),
                y: (ridge_y0, ridge_y0 + h),
            };
            let drive = Rect {
                x: (cx - drive_w / 2.0, cx + drive_w / 2.0),
                y: (ridge_y0 + h + xs.s1, ridge_y0 + h + xs.s1 + t),
            };
            let ground = Rect {
                x: (cx - ground_w / 2.0, cx + ground_w / 2.0),
                y: (pad, pad + t),
            };
            Layout {
                window_w,
                window_h,
                ridge,
                drive,
                grounds: vec![ground],
                si: xs.si_thickness.map(|st| Rect {
                    x: (0.0, window_w),
                    y: (0.0, st),
                }),
                ridge_center: (cx, ridge_y0 + h / 2.0),
            }
        }
        ElectrodeConfig::TopPlusSideGrounds => {
            let raw_w = w.max(drive_w) + 2.0 * pad;
            let window_w = round_up_micron(raw_w);
            let cx = raw_w / 2.0;
            let ridge_y0 = pad + xs.s2;
            let window_h = round_up_micron(2.0 * pad + xs.s2 + h + xs.s1 + t);
            let ridge = Rect {
                x: (cx - w / 2.0, cx + w / 2.0),
                y: (ridge_y0, ridge_y0 + h),
            };
            let drive_y0 = ridge_y0 + h + xs.s1;
            let drive = Rect {
                x: (cx - drive_w / 2.0, cx + drive_w / 2.0),
                y: (drive_y0, drive_y0 + t),
            };
            // Side grounds flank the ridge at gap G and run to the window
            // edge; their top surface sits L below the drive's lower face.
            let gy1 = drive_y0 - xs.side_offset;
            let gy0 = gy1 - t;
            let grounds = vec![
                Rect {
                    x: (0.0, cx - w / 2.0 - xs.lateral_gap),
                    y: (gy0, gy1),
                },
                Rect {
                    x: (cx + w / 2.0 + xs.lateral_gap, window_w),
                    y: (gy0, gy1),
                },
            ];
            Layout {
                window_w,
                window_h,
                ridge,
                drive,
                grounds,
                si: xs.si_thickness.map(|st| Rect {
                    x: (0.0, window_w),
                    y: (0.0, st),
                }),
                ridge_center: (cx, ridge_y0 + h / 2.0),
            }
        }
    }
}

/// Minimum cells a geometric feature must span.
const MIN_FEATURE_CELLS: usize = 3;

fn check_feature(name: &str, size: f64, h: f64) -> Result<()> {
    let cells = (size / h + 1e-9).floor() as usize;
    if cells < MIN_FEATURE_CELLS {
        return Err(Error::UnderResolved {
            feature: name.to_string(),
            size_m: size,
            cells,
            min_cells: MIN_FEATURE_CELLS,
        });
    }
    Ok(())
}

/// Rasterize a cross-section at `resolution` cells per micron. The drive
/// electrode is pinned at +1 V and all grounds at 0 V.
pub fn build_grid(xs: &CrossSection, resolution: f64) -> Result<Grid2D> {
    let h = 1e-6 / resolution;

    check_feature("ridge_height", xs.ridge_height, h)?;
    check_feature("ridge_width", xs.ridge_width, h)?;
    check_feature("s1", xs.s1, h)?;
    check_feature("s2", xs.s2, h)?;
    check_feature("electrode_thickness", xs.electrode_thickness, h)?;
    check_feature("drive_width", xs.resolved_drive_width(), h)?;
    match xs.config {
        ElectrodeConfig::ParallelPlates => {
            check_feature("ground_width", xs.resolved_ground_width(), h)?;
        }
        ElectrodeConfig::TopPlusSideGrounds => {
            check_feature("lateral_gap", xs.lateral_gap, h)?;
            check_feature("side_offset", xs.side_offset, h)?;
        }
    }
    if resolution < 4.0 {
        return Err(Error::InvalidArgument(format!(
            "resolution must be at least 4 cells per micron, got {resolution}"
        )));
    }

    let lay = layout(xs);
    let nx = (lay.window_w / h).round() as usize;
    let ny = (lay.window_h / h).round() as usize;
    let eps = &xs.permittivities;

    let mut grid = Grid2D::new_uniform(nx, ny, h, h, eps.sio2);
    if let Some(si) = lay.si {
        grid.set_material_rect(si.x, si.y, Material::Si, eps.si, eps.si);
    }
    grid.set_material_rect(
        lay.ridge.x,
        lay.ridge.y,
        Material::LiNbO3,
        eps.ln_xy,
        eps.ln_z,
    );
    grid.set_electrode_rect(lay.drive.x, lay.drive.y, 1.0);
    for g in &lay.grounds {
        grid.set_electrode_rect(g.x, g.y, 0.0);
    }
    Ok(grid)
}

/// Vertical field at the geometric center of the LN ridge (V/m), by
/// bilinear interpolation of the solved field.
pub fn e_mz_at_center(sol: &FieldSolution, xs: &CrossSection) -> f64 {
    let (cx, cy) = layout(xs).ridge_center;
    sol.ey_at(cx, cy)
}

/// Build, solve, and stamp the ridge-center field into the solution.
pub fn solve_cross_section(
    xs: &CrossSection,
    resolution: f64,
    opts: &SolveOptions,
) -> Result<FieldSolution> {
    solve_cross_section_with_guess(xs, resolution, opts, None)
}

/// Like [`solve_cross_section`], warm-started from a previous (typically
/// coarser) solution of the same cross-section.
pub fn solve_cross_section_with_guess(
    xs: &CrossSection,
    resolution: f64,
    opts: &SolveOptions,
    guess: Option<&FieldSolution>,
) -> Result<FieldSolution> {
    let grid = build_grid(xs, resolution)?;
    let mut sol = solve_with_guess(&grid, opts, guess)?;
    sol.e_mz_center = e_mz_at_center(&sol, xs);
    Ok(sol)
}

/// Total electrode capacitance for an electrode of the given length.
pub fn electrode_capacitance(sol: &FieldSolution, electrode_length: f64) -> Result<f64> {
    if electrode_length < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "electrode_length must be >= 0, got {electrode_length}"
        )));
    }
    Ok(sol.capacitance_per_length * electrode_length)
}

/// The shortest electrode (and hence ring perimeter at full coverage) whose
/// capacitance reaches `c_min`.
pub fn length_for_capacitance(capacitance_per_length: f64, c_min: f64) -> Result<f64> {
    if !(capacitance_per_length > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "capacitance_per_length must be > 0, got {capacitance_per_length}"
        )));
    }
    Ok(c_min / capacitance_per_length)
}

/// Debug dump of the potential and field as CSV rows (x, y, phi, Ex, Ey).
pub fn write_field_csv(sol: &FieldSolution, w: &mut impl Write) -> io::Result<()> {
    writeln!(w, "x,y,phi,ex,ey")?;
    writeln!(w, "m,m,V,V/m,V/m")?;
    for j in 0..sol.ny {
        for i in 0..sol.nx {
            let c = sol.idx(i, j);
            let x = (i as f64 + 0.5) * sol.dx;
            let y = (j as f64 + 0.5) * sol.dy;
            writeln!(
                w,
                "{},{},{},{},{}",
                fmt_float(x),
                fmt_float(y),
                fmt_float(sol.potential[c]),
                fmt_float(sol.ex[c]),
                fmt_float(sol.ey[c])
            )?;
        }
    }
    Ok(())
}
