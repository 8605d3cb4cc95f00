//! Projection onto discretely divergence-free velocity fields.
//!
//! Solves `D . (rho0 G phi) = D . (rho0 U~)` and sets `U = U~ - G phi`, where
//! `D` and `G` are staggered central differences of matching order. Periodic
//! domains are diagonalised by 2D FFTs; the channel uses FFTs in x and one
//! tridiagonal solve per Fourier mode in y.

use std::str::FromStr;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::density::DensityProfile;
use crate::error::{Error, Result};
use crate::grid::{fill_ghosts, BoundaryKind, Component, Field, NodeKind, StaggeredGrid2D};
use crate::par::for_each_row;

/// Fourier symbol used by the spectral Poisson solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum PressureSymbol {
    /// Exact symbol of the discrete operator: post-projection divergence is round-off.
    #[default]
    Modified,
    /// Symbol of the continuous Laplacian: divergence is only truncation-small.
    Continuous,
}

impl FromStr for PressureSymbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "modified" => Ok(PressureSymbol::Modified),
            "continuous" => Ok(PressureSymbol::Continuous),
            _ => Err(Error::InvalidScheme(format!(
                "unknown pressure symbol '{s}' (modified|continuous)"
            ))),
        }
    }
}

/// Staggered central first difference between faces and centres.
#[derive(Clone, Debug, PartialEq)]
pub struct DivergenceOperator {
    order: usize,
    /// `(m, a_m)` for odd widths `m`.
    coeffs: Vec<(isize, f64)>,
}

impl DivergenceOperator {
    pub fn new(order: usize) -> Result<Self> {
        let coeffs = match order {
            2 => vec![(1, 1.0)],
            4 => vec![(1, 9.0 / 8.0), (3, -1.0 / 24.0)],
            6 => vec![(1, 75.0 / 64.0), (3, -25.0 / 384.0), (5, 3.0 / 640.0)],
            _ => {
                return Err(Error::InvalidScheme(format!(
                    "divergence order {order} not in {{2, 4, 6}}"
                )))
            }
        };
        Ok(Self { order, coeffs })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coefficients(&self) -> &[(isize, f64)] {
        &self.coeffs
    }

    /// Nodes read on each side.
    pub fn reach(&self) -> usize {
        let m = self.coeffs.last().map_or(1, |c| c.0);
        ((m + 1) / 2) as usize
    }

    /// Modified wavenumber `s(kappa)`, so that `D G` has symbol `-s^2`.
    pub fn symbol(&self, kappa: f64, h: f64) -> f64 {
        2.0 / h
            * self
                .coeffs
                .iter()
                .map(|&(m, a)| a * (m as f64 * kappa * h / 2.0).sin())
                .sum::<f64>()
    }

    /// Face-to-centre difference at the centre between faces `c` and `c + 1`,
    /// with faces read through `f(offset)` relative to face `c`.
    #[inline]
    fn face_to_center(&self, f: impl Fn(isize) -> f64, h: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|&(m, a)| a * (f((m + 1) / 2) - f(-(m - 1) / 2)))
            .sum::<f64>()
            / h
    }

    /// Centre-to-face difference at face `i` between centres `i - 1` and `i`,
    /// with centres read through `p(offset)` relative to centre `i`.
    #[inline]
    fn center_to_face(&self, p: impl Fn(isize) -> f64, h: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|&(m, a)| a * (p((m - 1) / 2) - p(-(m + 1) / 2)))
            .sum::<f64>()
            / h
    }
}

/// `D . (rho0 U)` at cell centres; `u`, `v` need filled ghosts.
///
/// In the channel the vertical difference is second order and uses the wall
/// values `v = 0`.
pub fn divergence(
    u: &Field,
    v: &Field,
    rho: &DensityProfile,
    grid: &StaggeredGrid2D,
    op: &DivergenceOperator,
) -> Field {
    let mut eta = Field::zeros(grid, NodeKind::Center);
    let (h, nx) = (grid.halo, grid.nx as isize);
    let channel = grid.bc == BoundaryKind::ChannelNoFlowVertical;
    for_each_row(&mut eta, 0..grid.ny as isize, |j, row| {
        let rc = rho.center(j);
        for i in 0..nx {
            let dx = op.face_to_center(|o| u.at(i + o, j), grid.dx) * rc;
            let dy = if channel {
                (rho.face(j + 1) * v.at(i, j + 1) - rho.face(j) * v.at(i, j)) / grid.dy
            } else {
                op.face_to_center(|o| rho.face(j + o) * v.at(i, j + o), grid.dy)
            };
            row[h + i as usize] = dx + dy;
        }
    });
    eta
}

/// `G phi` on u-faces and v-faces; `phi` needs filled ghosts. In the channel
/// the vertical gradient is second order and vanishes on the walls.
pub fn gradient(phi: &Field, grid: &StaggeredGrid2D, op: &DivergenceOperator) -> (Field, Field) {
    let (h, nx, ny) = (grid.halo, grid.nx as isize, grid.ny as isize);
    let channel = grid.bc == BoundaryKind::ChannelNoFlowVertical;
    let mut gx = Field::zeros(grid, NodeKind::UFace);
    for_each_row(&mut gx, 0..ny, |j, row| {
        for i in 0..nx {
            row[h + i as usize] = op.center_to_face(|o| phi.at(i + o, j), grid.dx);
        }
    });
    let mut gy = Field::zeros(grid, NodeKind::VFace);
    for_each_row(&mut gy, 0..ny, |j, row| {
        for i in 0..nx {
            row[h + i as usize] = if channel {
                if j == 0 {
                    0.0
                } else {
                    (phi.at(i, j) - phi.at(i, j - 1)) / grid.dy
                }
            } else {
                op.center_to_face(|o| phi.at(i, j + o), grid.dy)
            };
        }
    });
    (gx, gy)
}

fn signed_wavenumber(k: usize, n: usize) -> f64 {
    if k <= n / 2 {
        k as f64
    } else {
        k as f64 - n as f64
    }
}

fn squared_symbols(
    n: usize,
    length: f64,
    op: &DivergenceOperator,
    symbol: PressureSymbol,
) -> Vec<f64> {
    let h = length / n as f64;
    (0..n)
        .map(|k| {
            let kappa = 2.0 * std::f64::consts::PI * signed_wavenumber(k, n) / length;
            match symbol {
                PressureSymbol::Modified => op.symbol(kappa, h).powi(2),
                PressureSymbol::Continuous => kappa * kappa,
            }
        })
        .collect()
}

/// Mean of the source against `1e-10 * max(max|eta|, floor)`. The floor lets
/// callers account for round-off in an already divergence-free source.
fn check_compatible(values: impl Iterator<Item = f64> + Clone, floor: f64) -> Result<()> {
    let count = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / count;
    let norm = values.fold(0.0_f64, |m, v| m.max(v.abs()));
    if mean.abs() > 1e-10 * norm.max(floor) {
        return Err(Error::IncompatibleSource { mean, norm });
    }
    Ok(())
}

fn fft_rows(data: &mut [Complex64], len: usize, fft: &Arc<dyn Fft<f64>>) {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        data.par_chunks_mut(len).for_each(|row| fft.process(row));
    }
    #[cfg(not(feature = "parallel"))]
    {
        data.chunks_mut(len).for_each(|row| fft.process(row));
    }
}

fn transpose(data: &[Complex64], rows: usize, cols: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); data.len()];
    for r in 0..rows {
        for c in 0..cols {
            out[c * rows + r] = data[r * cols + c];
        }
    }
    out
}

fn interior_complex(f: &Field) -> Vec<Complex64> {
    f.interior()
        .into_iter()
        .map(|v| Complex64::new(v, 0.0))
        .collect()
}

/// Solver for `D G p = eta` on a fully periodic grid.
#[derive(Clone)]
pub struct PeriodicPoisson {
    nx: usize,
    ny: usize,
    sx2: Vec<f64>,
    sy2: Vec<f64>,
    fwd_x: Arc<dyn Fft<f64>>,
    inv_x: Arc<dyn Fft<f64>>,
    fwd_y: Arc<dyn Fft<f64>>,
    inv_y: Arc<dyn Fft<f64>>,
}

impl PeriodicPoisson {
    pub fn new(grid: &StaggeredGrid2D, op: &DivergenceOperator, symbol: PressureSymbol) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            nx: grid.nx,
            ny: grid.ny,
            sx2: squared_symbols(grid.nx, grid.xmax - grid.xmin, op, symbol),
            sy2: squared_symbols(grid.ny, grid.ymax - grid.ymin, op, symbol),
            fwd_x: planner.plan_fft_forward(grid.nx),
            inv_x: planner.plan_fft_inverse(grid.nx),
            fwd_y: planner.plan_fft_forward(grid.ny),
            inv_y: planner.plan_fft_inverse(grid.ny),
        }
    }

    /// Zero-mean solution (interior only).
    pub fn solve(&self, eta: &Field, grid: &StaggeredGrid2D) -> Result<Field> {
        self.solve_scaled(eta, grid, 0.0)
    }

    fn solve_scaled(&self, eta: &Field, grid: &StaggeredGrid2D, floor: f64) -> Result<Field> {
        let interior = eta.interior();
        check_compatible(interior.iter().copied(), floor)?;
        let (nx, ny) = (self.nx, self.ny);
        let mut data = interior_complex(eta);
        fft_rows(&mut data, nx, &self.fwd_x);
        let mut cols = transpose(&data, ny, nx);
        fft_rows(&mut cols, ny, &self.fwd_y);
        for kx in 0..nx {
            for ky in 0..ny {
                let lap = self.sx2[kx] + self.sy2[ky];
                let c = &mut cols[kx * ny + ky];
                *c = if kx == 0 && ky == 0 || lap == 0.0 {
                    Complex64::default()
                } else {
                    -*c / lap
                };
            }
        }
        fft_rows(&mut cols, ny, &self.inv_y);
        let mut data = transpose(&cols, nx, ny);
        fft_rows(&mut data, nx, &self.inv_x);
        let scale = 1.0 / (nx * ny) as f64;
        let mut p = Field::zeros(grid, NodeKind::Center);
        p.set_interior(&data.iter().map(|c| c.re * scale).collect::<Vec<_>>())?;
        Ok(p)
    }
}

/// Solver for `D (rho0 G p) = eta` periodic in x with no-flow walls in y.
#[derive(Clone)]
pub struct ChannelPoisson {
    nx: usize,
    ny: usize,
    sx2: Vec<f64>,
    fwd_x: Arc<dyn Fft<f64>>,
    inv_x: Arc<dyn Fft<f64>>,
}

impl ChannelPoisson {
    pub fn new(grid: &StaggeredGrid2D, op: &DivergenceOperator, symbol: PressureSymbol) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            nx: grid.nx,
            ny: grid.ny,
            sx2: squared_symbols(grid.nx, grid.xmax - grid.xmin, op, symbol),
            fwd_x: planner.plan_fft_forward(grid.nx),
            inv_x: planner.plan_fft_inverse(grid.nx),
        }
    }

    /// Solution with `p = 0` in the bottom row of the mean (x-mode 0) component.
    pub fn solve(
        &self,
        eta: &Field,
        rho: &DensityProfile,
        grid: &StaggeredGrid2D,
    ) -> Result<Field> {
        self.solve_scaled(eta, rho, grid, 0.0)
    }

    fn solve_scaled(
        &self,
        eta: &Field,
        rho: &DensityProfile,
        grid: &StaggeredGrid2D,
        floor: f64,
    ) -> Result<Field> {
        let (nx, ny) = (self.nx, self.ny);
        let mut data = interior_complex(eta);
        fft_rows(&mut data, nx, &self.fwd_x);
        let modes = transpose(&data, ny, nx);
        let mode0 = &modes[0..ny];
        check_compatible(mode0.iter().map(|c| c.re), floor * nx as f64)?;

        let idy2 = 1.0 / (grid.dy * grid.dy);
        let solve_mode = |m: usize, col: &mut [Complex64]| {
            let mut lower = vec![0.0; ny];
            let mut diag = vec![0.0; ny];
            let mut upper = vec![0.0; ny];
            for j in 0..ny {
                let jj = j as isize;
                let below = if j == 0 { 0.0 } else { rho.face(jj) * idy2 };
                let above = if j + 1 == ny {
                    0.0
                } else {
                    rho.face(jj + 1) * idy2
                };
                lower[j] = below;
                upper[j] = above;
                diag[j] = -(below + above) - self.sx2[m] * rho.center(jj);
            }
            if m == 0 {
                diag[0] = 1.0;
                upper[0] = 0.0;
                col[0] = Complex64::default();
            }
            thomas(&lower, &diag, &upper, col);
        };
        let mut modes = modes;
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            modes
                .par_chunks_mut(ny)
                .enumerate()
                .for_each(|(m, col)| solve_mode(m, col));
        }
        #[cfg(not(feature = "parallel"))]
        {
            modes
                .chunks_mut(ny)
                .enumerate()
                .for_each(|(m, col)| solve_mode(m, col));
        }
        let mut data = transpose(&modes, nx, ny);
        fft_rows(&mut data, nx, &self.inv_x);
        let scale = 1.0 / nx as f64;
        let mut p = Field::zeros(grid, NodeKind::Center);
        p.set_interior(&data.iter().map(|c| c.re * scale).collect::<Vec<_>>())?;
        Ok(p)
    }
}

/// Thomas algorithm for a real tridiagonal matrix and complex right-hand side.
fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &mut [Complex64]) {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut beta = diag[0];
    c[0] = upper[0] / beta;
    rhs[0] /= beta;
    for j in 1..n {
        beta = diag[j] - lower[j] * c[j - 1];
        c[j] = upper[j] / beta;
        rhs[j] = (rhs[j] - rhs[j - 1] * lower[j]) / beta;
    }
    for j in (0..n - 1).rev() {
        rhs[j] = rhs[j] - rhs[j + 1] * c[j];
    }
}

/// Standalone periodic solve of `D G p = eta`.
pub fn solve_poisson_periodic(
    eta: &Field,
    grid: &StaggeredGrid2D,
    op: &DivergenceOperator,
    symbol: PressureSymbol,
) -> Result<Field> {
    PeriodicPoisson::new(grid, op, symbol).solve(eta, grid)
}

/// Standalone channel solve of `D (rho0 G p) = eta`.
pub fn solve_poisson_channel(
    eta: &Field,
    rho: &DensityProfile,
    grid: &StaggeredGrid2D,
    op: &DivergenceOperator,
    symbol: PressureSymbol,
) -> Result<Field> {
    ChannelPoisson::new(grid, op, symbol).solve(eta, rho, grid)
}

#[derive(Clone)]
enum Solver {
    Periodic(PeriodicPoisson),
    Channel(ChannelPoisson),
}

/// Divergence operator, Poisson solver and velocity correction for one grid.
#[derive(Clone)]
pub struct Projection {
    op: DivergenceOperator,
    solver: Solver,
}

impl Projection {
    pub fn new(grid: &StaggeredGrid2D, order: usize, symbol: PressureSymbol) -> Result<Self> {
        let op = DivergenceOperator::new(order)?;
        if grid.halo < op.reach() {
            return Err(Error::InsufficientHalo {
                have: grid.halo,
                need: op.reach(),
            });
        }
        let solver = match grid.bc {
            BoundaryKind::PeriodicBoth => Solver::Periodic(PeriodicPoisson::new(grid, &op, symbol)),
            BoundaryKind::ChannelNoFlowVertical => {
                Solver::Channel(ChannelPoisson::new(grid, &op, symbol))
            }
            BoundaryKind::DirichletExact => {
                return Err(Error::Unsupported(
                    "Dirichlet grid".into(),
                    "a pressure solver",
                ))
            }
        };
        Ok(Self { op, solver })
    }

    pub fn operator(&self) -> &DivergenceOperator {
        &self.op
    }

    pub fn divergence(
        &self,
        u: &Field,
        v: &Field,
        rho: &DensityProfile,
        grid: &StaggeredGrid2D,
    ) -> Field {
        divergence(u, v, rho, grid, &self.op)
    }

    /// Replaces the interior of `(u, v)` (ghosts filled on entry) by its
    /// projection and returns the potential `phi` with ghosts filled. Ghosts
    /// of `u`, `v` are stale on return.
    pub fn project(
        &self,
        u: &mut Field,
        v: &mut Field,
        rho: &DensityProfile,
        grid: &StaggeredGrid2D,
    ) -> Result<Field> {
        let eta = self.divergence(u, v, rho, grid);
        let rho_max = (-(grid.halo as isize)..(grid.ny + grid.halo) as isize)
            .map(|j| rho.center(j).abs().max(rho.face(j).abs()))
            .fold(0.0, f64::max);
        let floor = rho_max
            * u.max_abs_interior().max(v.max_abs_interior())
            * (1.0 / grid.dx + 1.0 / grid.dy);
        let mut phi = match &self.solver {
            Solver::Periodic(s) => {
                let r0 = rho.constant().ok_or(Error::VariableDensity)?;
                let mut phi = s.solve_scaled(&eta, grid, floor)?;
                phi.data_mut().iter_mut().for_each(|p| *p /= r0);
                phi
            }
            Solver::Channel(s) => s.solve_scaled(&eta, rho, grid, floor)?,
        };
        fill_ghosts(&mut phi, grid, Component::Scalar, 0.0, None)?;
        let (gx, gy) = gradient(&phi, grid, &self.op);
        u.axpy(-1.0, &gx);
        v.axpy(-1.0, &gy);
        Ok(phi)
    }
}
