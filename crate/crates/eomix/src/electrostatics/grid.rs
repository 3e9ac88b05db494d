//! Regular 2D grid with per-cell materials and Dirichlet pinning.
//!
//! Unknowns live at cell centers; cell (i, j) spans
//! `[i·dx, (i+1)·dx] × [j·dy, (j+1)·dy]` with its center at
//! `((i+0.5)·dx, (j+0.5)·dy)`. Face permittivities between neighboring cells
//! are harmonic means of the two cells' directional permittivities; electrode
//! cells count as perfect conductors (the harmonic mean degenerates to twice
//! the dielectric side, which places the conductor surface exactly on the
//! shared face).

/// Material label of one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Material {
    LiNbO3,
    SiO2,
    Si,
    Electrode,
}

/// Discretized cross-section: material map, directional permittivities and
/// fixed-potential (Dirichlet) cells.
#[derive(Debug, Clone)]
pub struct Grid2D {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    pub(crate) material: Vec<Material>,
    /// Relative permittivity for horizontal (x-direction) flux, per cell.
    pub(crate) eps_x: Vec<f64>,
    /// Relative permittivity for vertical (y-direction) flux, per cell.
    pub(crate) eps_y: Vec<f64>,
    pub(crate) pinned: Vec<bool>,
    pub(crate) pin_value: Vec<f64>,
}

impl Grid2D {
    /// Uniform-dielectric grid with no pinned cells.
    pub fn new_uniform(nx: usize, ny: usize, dx: f64, dy: f64, eps_r: f64) -> Self {
        assert!(nx >= 3 && ny >= 3, "grid needs at least 3x3 cells");
        assert!(dx > 0.0 && dy > 0.0, "cell spacings must be positive");
        let n = nx * ny;
        Self {
            nx,
            ny,
            dx,
            dy,
            material: vec![Material::SiO2; n],
            eps_x: vec![eps_r; n],
            eps_y: vec![eps_r; n],
            pinned: vec![false; n],
            pin_value: vec![0.0; n],
        }
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Physical coordinates of the center of cell (i, j).
    pub fn cell_center(&self, i: usize, j: usize) -> (f64, f64) {
        ((i as f64 + 0.5) * self.dx, (j as f64 + 0.5) * self.dy)
    }

    pub fn material_at(&self, i: usize, j: usize) -> Material {
        self.material[self.idx(i, j)]
    }

    pub fn is_pinned(&self, i: usize, j: usize) -> bool {
        self.pinned[self.idx(i, j)]
    }

    /// Count cells carrying a material label.
    pub fn count_material(&self, m: Material) -> usize {
        self.material.iter().filter(|&&x| x == m).count()
    }

    fn cell_range(lo: f64, hi: f64, h: f64, n: usize) -> std::ops::Range<usize> {
        // Cells whose center lies in [lo, hi). The 1e-9-cell slack absorbs
        // roundoff in lo/h without moving exact half-integer boundaries.
        let first = ((lo / h - 0.5 - 1e-9).ceil().max(0.0)) as usize;
        let last = (((hi / h - 0.5 - 1e-9).ceil()).max(0.0) as usize).min(n);
        first..last.max(first)
    }

    /// Assign a material (and its directional permittivities) to every cell
    /// whose center lies inside the rectangle `[x0, x1) × [y0, y1)`.
    pub fn set_material_rect(
        &mut self,
        (x0, x1): (f64, f64),
        (y0, y1): (f64, f64),
        material: Material,
        eps_x: f64,
        eps_y: f64,
    ) {
        let xr = Self::cell_range(x0, x1, self.dx, self.nx);
        let yr = Self::cell_range(y0, y1, self.dy, self.ny);
        for j in yr {
            for i in xr.clone() {
                let n = self.idx(i, j);
                self.material[n] = material;
                self.eps_x[n] = eps_x;
                self.eps_y[n] = eps_y;
            }
        }
    }

    /// Pin every cell whose center lies inside the rectangle to a fixed
    /// potential. Does not change the material label.
    pub fn set_dirichlet_rect(&mut self, (x0, x1): (f64, f64), (y0, y1): (f64, f64), volts: f64) {
        let xr = Self::cell_range(x0, x1, self.dx, self.nx);
        let yr = Self::cell_range(y0, y1, self.dy, self.ny);
        for j in yr {
            for i in xr.clone() {
                let n = self.idx(i, j);
                self.pinned[n] = true;
                self.pin_value[n] = volts;
            }
        }
    }

    /// Place an electrode: material label plus Dirichlet pinning.
    pub fn set_electrode_rect(&mut self, x: (f64, f64), y: (f64, f64), volts: f64) {
        self.set_material_rect(x, y, Material::Electrode, 1.0, 1.0);
        self.set_dirichlet_rect(x, y, volts);
    }

    /// Pin a single cell to a fixed potential.
    pub fn set_dirichlet_cell(&mut self, i: usize, j: usize, volts: f64) {
        let n = self.idx(i, j);
        self.pinned[n] = true;
        self.pin_value[n] = volts;
    }

    /// Potential span between the highest- and lowest-pinned cells (the
    /// drive voltage of a two-terminal problem). Zero if nothing is pinned.
    pub fn pinned_span(&self) -> f64 {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (p, v) in self.pinned.iter().zip(&self.pin_value) {
            if *p {
                lo = lo.min(*v);
                hi = hi.max(*v);
            }
        }
        if hi >= lo {
            hi - lo
        } else {
            0.0
        }
    }

    /// Harmonic-mean face permittivity, treating electrode cells as perfect
    /// conductors (infinite permittivity).
    #[inline]
    pub(crate) fn face_eps(ea: f64, ma: Material, eb: f64, mb: Material) -> f64 {
        match (ma == Material::Electrode, mb == Material::Electrode) {
            (true, true) => 1.0, // between two pinned cells; value never matters
            (true, false) => 2.0 * eb,
            (false, true) => 2.0 * ea,
            (false, false) => 2.0 * ea * eb / (ea + eb),
        }
    }

    /// Conductance (relative-permittivity units) between (i, j) and (i+1, j).
    #[inline]
    pub(crate) fn gx(&self, i: usize, j: usize) -> f64 {
        let a = self.idx(i, j);
        let b = self.idx(i + 1, j);
        Self::face_eps(self.eps_x[a], self.material[a], self.eps_x[b], self.material[b])
            * self.dy
            / self.dx
    }

    /// Conductance between (i, j) and (i, j+1).
    #[inline]
    pub(crate) fn gy(&self, i: usize, j: usize) -> f64 {
        let a = self.idx(i, j);
        let b = self.idx(i, j + 1);
        Self::face_eps(self.eps_y[a], self.material[a], self.eps_y[b], self.material[b])
            * self.dx
            / self.dy
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rect_rasterization_counts_cells_exactly() {
        let mut g = Grid2D::new_uniform(10, 10, 0.1, 0.1, 1.0);
        // A 0.3 x 0.2 rectangle aligned to the grid covers 3 x 2 cells.
        g.set_material_rect((0.2, 0.5), (0.4, 0.6), Material::LiNbO3, 43.0, 28.0);
        assert_eq!(g.count_material(Material::LiNbO3), 6);
    }

    #[test]
    fn harmonic_mean_and_metal_limits() {
        let h = Grid2D::face_eps(2.0, Material::SiO2, 6.0, Material::SiO2);
        assert!((h - 3.0).abs() < 1e-15);
        let m = Grid2D::face_eps(2.0, Material::SiO2, 1.0, Material::Electrode);
        assert!((m - 4.0).abs() < 1e-15);
    }

    #[test]
    fn pinned_span_tracks_extremes() {
        let mut g = Grid2D::new_uniform(5, 5, 1.0, 1.0, 1.0);
        assert_eq!(g.pinned_span(), 0.0);
        g.set_dirichlet_cell(0, 0, -0.5);
        g.set_dirichlet_cell(4, 4, 1.5);
        assert_eq!(g.pinned_span(), 2.0);
    }
}
