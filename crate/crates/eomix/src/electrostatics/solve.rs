//! Iterative solve of `∇·(ε ∇φ) = 0` on a [`Grid2D`].
//!
//! The 5-point finite-volume discretization with harmonic-mean face
//! permittivities is symmetric positive definite on the free (non-pinned)
//! cells. It is solved with flexible conjugate gradients preconditioned by a
//! geometric multigrid V-cycle: levels are built by 2x2 cell aggregation
//! with Galerkin (summed-conductance) coarse operators and smoothed by
//! symmetric Gauss-Seidel sweeps. The V-cycle runs in single precision — it
//! only steers the f64 Krylov iteration — which halves its memory traffic.
//! Pinned cells enter through the right-hand side; every Krylov vector is
//! identically zero on them. The outer window boundary is a natural
//! zero-flux (Neumann) condition.

use crate::constants::EPSILON_0;
use crate::error::{Error, Result};

use super::grid::Grid2D;

/// Solver knobs. `tol` is the relative residual `|b - A u| / |b|`.
#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub tol: f64,
    pub max_iters: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iters: 200_000,
        }
    }
}

/// Solved electrostatic field on a grid.
#[derive(Debug, Clone)]
pub struct FieldSolution {
    pub nx: usize,
    pub ny: usize,
    pub dx: f64,
    pub dy: f64,
    /// Potential at every cell center (V).
    pub potential: Vec<f64>,
    /// Horizontal field component at every cell center (V/m).
    pub ex: Vec<f64>,
    /// Vertical field component at every cell center (V/m).
    pub ey: Vec<f64>,
    /// Vertical field at the resonator center (V/m); set by the
    /// cross-section pipeline, defaults to the window center.
    pub e_mz_center: f64,
    /// Capacitance per unit out-of-plane length (F/m).
    pub capacitance_per_length: f64,
    /// Field energy per unit length (J/m).
    pub energy_per_length: f64,
    /// Pinned-potential span used to normalize the capacitance (V).
    pub drive_voltage: f64,
    /// Final relative residual.
    pub residual: f64,
    pub iterations: usize,
}

impl FieldSolution {
    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Bilinear interpolation of the vertical field component at a physical
    /// point (clamped to the cell-center lattice).
    pub fn ey_at(&self, x: f64, y: f64) -> f64 {
        interp_bilinear(&self.ey, self.nx, self.ny, self.dx, self.dy, x, y)
    }

    /// Bilinear interpolation of the potential at a physical point.
    pub fn potential_at(&self, x: f64, y: f64) -> f64 {
        interp_bilinear(&self.potential, self.nx, self.ny, self.dx, self.dy, x, y)
    }
}

fn interp_bilinear(
    values: &[f64],
    nx: usize,
    ny: usize,
    dx: f64,
    dy: f64,
    x: f64,
    y: f64,
) -> f64 {
    let fx = (x / dx - 0.5).clamp(0.0, (nx - 1) as f64);
    let fy = (y / dy - 0.5).clamp(0.0, (ny - 1) as f64);
    let i0 = (fx.floor() as usize).min(nx - 2);
    let j0 = (fy.floor() as usize).min(ny - 2);
    let tx = fx - i0 as f64;
    let ty = fy - j0 as f64;
    let v00 = values[j0 * nx + i0];
    let v10 = values[j0 * nx + i0 + 1];
    let v01 = values[(j0 + 1) * nx + i0];
    let v11 = values[(j0 + 1) * nx + i0 + 1];
    v00 * (1.0 - tx) * (1.0 - ty) + v10 * tx * (1.0 - ty) + v01 * (1.0 - tx) * ty + v11 * tx * ty
}

/// Scalar type of a multigrid level.
trait MgScalar:
    Copy
    + PartialOrd
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::AddAssign
{
    const ZERO: Self;
    const ONE: Self;
}

impl MgScalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
}

impl MgScalar for f32 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;
}

/// One multigrid level: masked 5-point conductance stencil.
///
/// Off-diagonal conductances touching a pinned cell are zero (their
/// contribution lives in the right-hand side of the finest level), pinned
/// rows carry a unit diagonal, and vectors stay identically zero on pinned
/// cells throughout.
struct Level<T> {
    nx: usize,
    ny: usize,
    /// Coupling between (i, j) and (i+1, j); index j*(nx-1)+i.
    gx: Vec<T>,
    /// Coupling between (i, j) and (i, j+1); index j*nx+i.
    gy: Vec<T>,
    diag: Vec<T>,
    inv_diag: Vec<T>,
    free: Vec<bool>,
}

/// Finest (f64) level plus the Dirichlet right-hand side.
fn level_from_grid(grid: &Grid2D) -> (Level<f64>, Vec<f64>) {
    let (nx, ny) = (grid.nx, grid.ny);
    let n = nx * ny;
    let free: Vec<bool> = grid.pinned.iter().map(|p| !p).collect();

    let mut gx = vec![0.0; (nx - 1) * ny];
    let mut gy = vec![0.0; nx * (ny - 1)];
    let mut diag = vec![0.0; n];
    let mut b = vec![0.0; n];

    {
        let mut couple = |ca: usize, cb: usize, g: f64| -> f64 {
            let (fa, fb) = (free[ca], free[cb]);
            if fa {
                diag[ca] += g;
                if !fb {
                    b[ca] += g * grid.pin_value[cb];
                }
            }
            if fb {
                diag[cb] += g;
                if !fa {
                    b[cb] += g * grid.pin_value[ca];
                }
            }
            if fa && fb {
                g
            } else {
                0.0
            }
        };
        for j in 0..ny {
            for i in 0..nx - 1 {
                let c = j * nx + i;
                gx[j * (nx - 1) + i] = couple(c, c + 1, grid.gx(i, j));
            }
        }
        for j in 0..ny - 1 {
            for i in 0..nx {
                let c = j * nx + i;
                gy[j * nx + i] = couple(c, c + nx, grid.gy(i, j));
            }
        }
    }
    let mut level = Level {
        nx,
        ny,
        gx,
        gy,
        diag,
        inv_diag: Vec::new(),
        free,
    };
    level.finish_diag();
    (level, b)
}

impl<T: MgScalar> Level<T> {
    fn finish_diag(&mut self) {
        for (d, f) in self.diag.iter_mut().zip(&self.free) {
            if !*f || !(*d > T::ZERO) {
                *d = T::ONE;
            }
        }
        self.inv_diag = self.diag.iter().map(|d| T::ONE / *d).collect();
    }

    fn len(&self) -> usize {
        self.nx * self.ny
    }

    /// Galerkin coarsening by 2x2 aggregation: coarse couplings are sums of
    /// fine couplings crossing the aggregate boundary; aggregate-internal
    /// couplings cancel out of the coarse diagonal.
    fn coarsen(&self) -> Level<T> {
        let (nxf, nyf) = (self.nx, self.ny);
        let nxc = nxf.div_ceil(2);
        let nyc = nyf.div_ceil(2);
        let nc = nxc * nyc;

        let mut free = vec![false; nc];
        for jf in 0..nyf {
            for if_ in 0..nxf {
                if self.free[jf * nxf + if_] {
                    free[(jf / 2) * nxc + if_ / 2] = true;
                }
            }
        }

        let mut gx = vec![T::ZERO; (nxc - 1) * nyc];
        let mut gy = vec![T::ZERO; nxc * (nyc - 1)];
        let mut diag = vec![T::ZERO; nc];

        for jf in 0..nyf {
            for if_ in 0..nxf {
                let cc = (jf / 2) * nxc + if_ / 2;
                if self.free[jf * nxf + if_] {
                    diag[cc] += self.diag[jf * nxf + if_];
                }
            }
        }
        for jf in 0..nyf {
            for if_ in 0..nxf - 1 {
                let g = self.gx[jf * (nxf - 1) + if_];
                let (ia, ib) = (if_ / 2, (if_ + 1) / 2);
                let jc = jf / 2;
                if ia == ib {
                    diag[jc * nxc + ia] += T::ZERO - (g + g);
                } else {
                    gx[jc * (nxc - 1) + ia] += g;
                }
            }
        }
        for jf in 0..nyf - 1 {
            for if_ in 0..nxf {
                let g = self.gy[jf * nxf + if_];
                let (ja, jb) = (jf / 2, (jf + 1) / 2);
                let ic = if_ / 2;
                if ja == jb {
                    diag[ja * nxc + ic] += T::ZERO - (g + g);
                } else {
                    gy[ja * nxc + ic] += g;
                }
            }
        }

        let mut level = Level {
            nx: nxc,
            ny: nyc,
            gx,
            gy,
            diag,
            inv_diag: Vec::new(),
            free,
        };
        level.finish_diag();
        level
    }

    /// y = A x (x zero on pinned cells).
    fn matvec(&self, x: &[T], y: &mut [T]) {
        let (nx, ny) = (self.nx, self.ny);
        for j in 0..ny {
            let row = j * nx;
            let xc = &x[row..row + nx];
            let dc = &self.diag[row..row + nx];
            let yc = &mut y[row..row + nx];
            let gl = &self.gx[j * (nx - 1)..(j + 1) * (nx - 1)];
            for i in 0..nx {
                yc[i] = dc[i] * xc[i];
            }
            for i in 0..nx - 1 {
                let g = gl[i];
                yc[i] = yc[i] - g * xc[i + 1];
                yc[i + 1] = yc[i + 1] - g * xc[i];
            }
            if j > 0 {
                let gd = &self.gy[(j - 1) * nx..j * nx];
                let xd = &x[row - nx..row];
                for i in 0..nx {
                    yc[i] = yc[i] - gd[i] * xd[i];
                }
            }
            if j + 1 < ny {
                let gu = &self.gy[j * nx..(j + 1) * nx];
                let xu = &x[row + nx..row + 2 * nx];
                for i in 0..nx {
                    yc[i] = yc[i] - gu[i] * xu[i];
                }
            }
        }
    }

    /// In-place Gauss-Seidel sweep on `A z = r`, ascending order.
    fn gs_forward(&self, r: &[T], z: &mut [T]) {
        let (nx, ny) = (self.nx, self.ny);
        for j in 0..ny {
            let row = j * nx;
            let gl = &self.gx[j * (nx - 1)..(j + 1) * (nx - 1)];
            for i in 0..nx {
                let c = row + i;
                let mut acc = r[c];
                if i > 0 {
                    acc += gl[i - 1] * z[c - 1];
                }
                if i + 1 < nx {
                    acc += gl[i] * z[c + 1];
                }
                if j > 0 {
                    acc += self.gy[(j - 1) * nx + i] * z[c - nx];
                }
                if j + 1 < ny {
                    acc += self.gy[j * nx + i] * z[c + nx];
                }
                z[c] = acc * self.inv_diag[c];
            }
        }
    }

    /// In-place Gauss-Seidel sweep on `A z = r`, descending order.
    fn gs_backward(&self, r: &[T], z: &mut [T]) {
        let (nx, ny) = (self.nx, self.ny);
        for j in (0..ny).rev() {
            let row = j * nx;
            let gl = &self.gx[j * (nx - 1)..(j + 1) * (nx - 1)];
            for i in (0..nx).rev() {
                let c = row + i;
                let mut acc = r[c];
                if i > 0 {
                    acc += gl[i - 1] * z[c - 1];
                }
                if i + 1 < nx {
                    acc += gl[i] * z[c + 1];
                }
                if j > 0 {
                    acc += self.gy[(j - 1) * nx + i] * z[c - nx];
                }
                if j + 1 < ny {
                    acc += self.gy[j * nx + i] * z[c + nx];
                }
                z[c] = acc * self.inv_diag[c];
            }
        }
    }
}

impl Level<f64> {
    /// Single-precision copy seeding the preconditioner hierarchy.
    fn to_f32(&self) -> Level<f32> {
        let mut level = Level {
            nx: self.nx,
            ny: self.ny,
            gx: self.gx.iter().map(|v| *v as f32).collect(),
            gy: self.gy.iter().map(|v| *v as f32).collect(),
            diag: self.diag.iter().map(|v| *v as f32).collect(),
            inv_diag: Vec::new(),
            free: self.free.clone(),
        };
        level.finish_diag();
        level
    }
}

/// Multigrid hierarchy with per-level work buffers (single precision).
struct Hierarchy {
    levels: Vec<Level<f32>>,
    rhs: Vec<Vec<f32>>,
    sol: Vec<Vec<f32>>,
    tmp: Vec<Vec<f32>>,
    r32: Vec<f32>,
}

impl Hierarchy {
    fn build(finest: Level<f32>) -> Self {
        let mut levels = vec![finest];
        while levels.last().unwrap().nx.min(levels.last().unwrap().ny) > 8 {
            let next = levels.last().unwrap().coarsen();
            levels.push(next);
        }
        let rhs = levels.iter().map(|l| vec![0.0; l.len()]).collect();
        let sol = levels.iter().map(|l| vec![0.0; l.len()]).collect();
        let tmp = levels.iter().map(|l| vec![0.0; l.len()]).collect();
        let n0 = levels[0].len();
        Self {
            levels,
            rhs,
            sol,
            tmp,
            r32: vec![0.0; n0],
        }
    }

    /// z = M^-1 r by one V-cycle (forward GS down, backward GS up; the
    /// adjoint pairing keeps the preconditioner symmetric positive definite).
    fn apply(&mut self, r: &[f64], z: &mut [f64]) {
        for (dst, src) in self.r32.iter_mut().zip(r) {
            *dst = *src as f32;
        }
        self.rhs[0].copy_from_slice(&self.r32);
        self.cycle(0);
        for (dst, src) in z.iter_mut().zip(&self.sol[0]) {
            *dst = *src as f64;
        }
    }

    fn cycle(&mut self, l: usize) {
        let last = l + 1 == self.levels.len();
        let level = &self.levels[l];
        let n = level.len();
        self.sol[l][..n].fill(0.0);

        if last {
            // Coarsest grid: converge with symmetric GS pairs.
            for _ in 0..30 {
                let (rhs, sol) = (&self.rhs[l], &mut self.sol[l]);
                level.gs_forward(rhs, sol);
                level.gs_backward(rhs, sol);
            }
            return;
        }

        // Pre-smooth.
        level.gs_forward(&self.rhs[l], &mut self.sol[l]);

        // Residual, then restrict with bilinear (adjoint) weights over free
        // fine cells.
        {
            let (head, _) = self.tmp.split_at_mut(l + 1);
            let q = &mut head[l];
            level.matvec(&self.sol[l], q);
            for (qv, rv) in q.iter_mut().zip(&self.rhs[l]) {
                *qv = rv - *qv;
            }
        }
        let (nxf, nxc) = (level.nx, self.levels[l + 1].nx);
        let (nyf, nyc) = (level.ny, self.levels[l + 1].ny);
        self.rhs[l + 1].fill(0.0);
        for jf in 0..nyf {
            let (jc, wj, jn) = transfer_axis(jf, nyc);
            for if_ in 0..nxf {
                let c = jf * nxf + if_;
                if !level.free[c] {
                    continue;
                }
                let (ic, wi, in_) = transfer_axis(if_, nxc);
                let v = self.tmp[l][c];
                let rhs_c = &mut self.rhs[l + 1];
                rhs_c[jc * nxc + ic] += wi * wj * v;
                rhs_c[jc * nxc + in_] += (1.0 - wi) * wj * v;
                rhs_c[jn * nxc + ic] += wi * (1.0 - wj) * v;
                rhs_c[jn * nxc + in_] += (1.0 - wi) * (1.0 - wj) * v;
            }
        }
        // Restricted residuals may land on pinned coarse cells; zero them.
        {
            let coarse = &self.levels[l + 1];
            for (v, f) in self.rhs[l + 1].iter_mut().zip(&coarse.free) {
                if !*f {
                    *v = 0.0;
                }
            }
        }

        self.cycle(l + 1);

        // Prolong with the matching bilinear weights and post-smooth.
        {
            let (sol_fine, sol_coarse) = {
                let (a, b) = self.sol.split_at_mut(l + 1);
                (&mut a[l], &b[0])
            };
            let level = &self.levels[l];
            for jf in 0..nyf {
                let (jc, wj, jn) = transfer_axis(jf, nyc);
                for if_ in 0..nxf {
                    let c = jf * nxf + if_;
                    if !level.free[c] {
                        continue;
                    }
                    let (ic, wi, in_) = transfer_axis(if_, nxc);
                    sol_fine[c] += wi * wj * sol_coarse[jc * nxc + ic]
                        + (1.0 - wi) * wj * sol_coarse[jc * nxc + in_]
                        + wi * (1.0 - wj) * sol_coarse[jn * nxc + ic]
                        + (1.0 - wi) * (1.0 - wj) * sol_coarse[jn * nxc + in_];
                }
            }
        }
        self.levels[l].gs_backward(&self.rhs[l], &mut self.sol[l]);
    }
}

/// Cell-centered transfer along one axis: fine index -> (parent, parent
/// weight, clamped second neighbor). The fine center sits a quarter cell
/// from its parent's center, giving 3/4 - 1/4 weights.
#[inline]
fn transfer_axis(fine: usize, n_coarse: usize) -> (usize, f32, usize) {
    let parent = fine / 2;
    let neighbor = if fine % 2 == 0 {
        parent.saturating_sub(1)
    } else {
        (parent + 1).min(n_coarse - 1)
    };
    (parent, 0.75, neighbor)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Solve the grid with an optional initial guess for the potential (used to
/// warm-start refined grids from a coarser solution; sampled bilinearly).
pub fn solve_with_guess(
    grid: &Grid2D,
    opts: &SolveOptions,
    guess: Option<&FieldSolution>,
) -> Result<FieldSolution> {
    if !(opts.tol > 0.0 && opts.tol <= 1e-2) {
        return Err(Error::InvalidArgument(format!(
            "solver tolerance must lie in (0, 1e-2], got {}",
            opts.tol
        )));
    }

    let (finest, b) = level_from_grid(grid);
    let n = grid.nx * grid.ny;
    let mut mg = Hierarchy::build(finest.to_f32());

    // Unknown vector over free cells (zero at pinned cells); the pinned
    // values are re-added at the end.
    let mut w = vec![0.0; n];
    if let Some(prev) = guess {
        for j in 0..grid.ny {
            for i in 0..grid.nx {
                let c = j * grid.nx + i;
                if finest.free[c] {
                    let (x, y) = grid.cell_center(i, j);
                    w[c] = prev.potential_at(x, y);
                }
            }
        }
    }

    let b_norm = dot(&b, &b).sqrt();
    let mut history = Vec::new();
    let mut iterations = 0usize;
    let mut residual = 0.0;

    if b_norm > 0.0 {
        let mut r = vec![0.0; n];
        let mut z = vec![0.0; n];
        let mut p = vec![0.0; n];
        let mut ap = vec![0.0; n];

        finest.matvec(&w, &mut r);
        for c in 0..n {
            r[c] = b[c] - r[c];
        }
        mg.apply(&r, &mut z);
        p.copy_from_slice(&z);
        let mut rz = dot(&r, &z);
        residual = dot(&r, &r).sqrt() / b_norm;
        let mut restarted = false;

        while residual > opts.tol {
            if iterations >= opts.max_iters {
                return Err(Error::SolverFailure {
                    residual,
                    iterations,
                    tol: opts.tol,
                    history,
                });
            }
            finest.matvec(&p, &mut ap);
            let pap = dot(&p, &ap);
            if !(pap > 0.0) || !(rz > 0.0) {
                // The single-precision preconditioner can hand back a stale
                // direction near convergence; restart from steepest descent
                // once before giving up.
                if restarted {
                    return Err(Error::SolverFailure {
                        residual,
                        iterations,
                        tol: opts.tol,
                        history,
                    });
                }
                restarted = true;
                mg.apply(&r, &mut z);
                p.copy_from_slice(&z);
                rz = dot(&r, &z);
                continue;
            }
            let alpha = rz / pap;
            for c in 0..n {
                w[c] += alpha * p[c];
                r[c] -= alpha * ap[c];
            }
            mg.apply(&r, &mut z);
            // Flexible (Polak-Ribiere) beta, with z.(r_new - r_old)
            // rewritten through r_new - r_old = -alpha Ap; tolerant of the
            // slightly varying single-precision preconditioner.
            let mut rz_next = 0.0;
            let mut z_ap = 0.0;
            let mut rr = 0.0;
            for c in 0..n {
                rz_next += r[c] * z[c];
                z_ap += z[c] * ap[c];
                rr += r[c] * r[c];
            }
            let beta = (-alpha * z_ap / rz).max(0.0);
            rz = rz_next;
            for c in 0..n {
                p[c] = z[c] + beta * p[c];
            }
            iterations += 1;
            residual = rr.sqrt() / b_norm;
            if iterations % 10 == 0 {
                history.push(residual);
            }
        }
        history.push(residual);
    }

    // Final potential: free solution plus pinned values.
    let mut u = w;
    for c in 0..n {
        if !finest.free[c] {
            u[c] = grid.pin_value[c];
        }
    }

    // Field by central differences (one-sided at the window edges).
    let (nx, ny) = (grid.nx, grid.ny);
    let mut ex = vec![0.0; n];
    let mut ey = vec![0.0; n];
    for j in 0..ny {
        for i in 0..nx {
            let c = j * nx + i;
            ex[c] = match i {
                0 => -(u[c + 1] - u[c]) / grid.dx,
                _ if i == nx - 1 => -(u[c] - u[c - 1]) / grid.dx,
                _ => -(u[c + 1] - u[c - 1]) / (2.0 * grid.dx),
            };
            ey[c] = match j {
                0 => -(u[c + nx] - u[c]) / grid.dy,
                _ if j == ny - 1 => -(u[c] - u[c - nx]) / grid.dy,
                _ => -(u[c + nx] - u[c - nx]) / (2.0 * grid.dy),
            };
        }
    }

    // Discrete field energy per unit length: the edge-based Dirichlet sum
    // consistent with the operator, (eps0/2) sum g (du)^2, over the true
    // (unmasked) face conductances.
    let mut energy2 = 0.0; // 2 U / eps0
    for j in 0..ny {
        for i in 0..nx - 1 {
            let du = u[j * nx + i + 1] - u[j * nx + i];
            energy2 += grid.gx(i, j) * du * du;
        }
    }
    for j in 0..ny - 1 {
        for i in 0..nx {
            let du = u[(j + 1) * nx + i] - u[j * nx + i];
            energy2 += grid.gy(i, j) * du * du;
        }
    }
    let energy_per_length = 0.5 * EPSILON_0 * energy2;

    let drive_voltage = grid.pinned_span();
    let capacitance_per_length = if drive_voltage > 0.0 {
        2.0 * energy_per_length / (drive_voltage * drive_voltage)
    } else {
        0.0
    };

    let mut sol = FieldSolution {
        nx,
        ny,
        dx: grid.dx,
        dy: grid.dy,
        potential: u,
        ex,
        ey,
        e_mz_center: 0.0,
        capacitance_per_length,
        energy_per_length,
        drive_voltage,
        residual,
        iterations,
    };
    sol.e_mz_center = sol.ey_at(0.5 * nx as f64 * grid.dx, 0.5 * ny as f64 * grid.dy);
    Ok(sol)
}

/// Solve with a cold start. See [`solve_with_guess`].
pub fn solve(grid: &Grid2D, opts: &SolveOptions) -> Result<FieldSolution> {
    solve_with_guess(grid, opts, None)
}

/// Net dielectric flux (C/m per unit length) leaving the closed contour
/// around the cell-index box `[i0, i1) × [j0, j1)`. For a contour that does
/// not enclose or cross charged conductors this is zero up to solver
/// residual: the discrete Gauss law.
pub fn contour_flux(
    grid: &Grid2D,
    sol: &FieldSolution,
    (i0, i1): (usize, usize),
    (j0, j1): (usize, usize),
) -> f64 {
    assert!(i0 > 0 && j0 > 0 && i1 < grid.nx && j1 < grid.ny && i0 < i1 && j0 < j1);
    let u = &sol.potential;
    let nx = grid.nx;
    let mut flux = 0.0;
    for j in j0..j1 {
        // Left boundary: flux from (i0-1, j) into the box counts negative.
        flux += grid.gx(i0 - 1, j) * (u[j * nx + i0 - 1] - u[j * nx + i0]);
        // Right boundary: out of (i1-1, j) toward (i1, j).
        flux += grid.gx(i1 - 1, j) * (u[j * nx + i1] - u[j * nx + i1 - 1]);
    }
    for i in i0..i1 {
        flux += grid.gy(i, j0 - 1) * (u[(j0 - 1) * nx + i] - u[j0 * nx + i]);
        flux += grid.gy(i, j1 - 1) * (u[j1 * nx + i] - u[(j1 - 1) * nx + i]);
    }
    // The loop accumulated inward flux; negate for the outward convention.
    -EPSILON_0 * flux
}
