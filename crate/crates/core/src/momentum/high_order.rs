//! Flux-form WENO advection of staggered momentum using ENO-interpolated
//! cross velocities.

use super::flux::{assemble, combine, weno_fluxes, Axis};
use super::{zero_wall_fluxes, zero_wall_tendency, FluxKind};
use crate::density::DensityProfile;
use crate::grid::{Field, NodeKind, StaggeredGrid2D};
use crate::stagger::StaggeredVelocities;
use crate::weno::WenoCoefficients;

/// Interface fluxes of `rho0 u^2` in x; value at `(i, j)` sits at `(x_{i+1/2}, y_{j+1/2})`.
pub fn flux_self(
    u: &Field,
    rho: &DensityProfile,
    grid: &StaggeredGrid2D,
    weno: &WenoCoefficients,
    flux: FluxKind,
) -> Field {
    let f = combine(u, u, rho, |a, b, r| r * a * b);
    let q = combine(u, u, rho, |a, _, r| r * a);
    weno_fluxes(&f, &q, u, Axis::X, weno, flux, grid)
}

/// Interface fluxes of `rho0 u v~` in y; value at `(i, j)` sits at `(x_i, y_{j+1})`.
pub fn flux_cross(
    u: &Field,
    v_at_u: &Field,
    rho: &DensityProfile,
    grid: &StaggeredGrid2D,
    weno: &WenoCoefficients,
    flux: FluxKind,
) -> Field {
    let g = combine(u, v_at_u, rho, |a, b, r| r * a * b);
    let q = combine(u, u, rho, |a, _, r| r * a);
    weno_fluxes(&g, &q, v_at_u, Axis::Y, weno, flux, grid)
}

pub fn momentum_tendency_high_order(
    u: &Field,
    v: &Field,
    vel: &StaggeredVelocities,
    rho: &DensityProfile,
    grid: &StaggeredGrid2D,
    weno: &WenoCoefficients,
    flux: FluxKind,
) -> (Field, Field) {
    let fx_u = flux_self(u, rho, grid, weno, flux);
    let mut fy_u = flux_cross(u, &vel.v_at_u, rho, grid, weno, flux);

    let f = combine(v, v, rho, |a, b, r| r * a * b);
    let q = combine(v, v, rho, |a, _, r| r * a);
    let fy_v = weno_fluxes(&f, &q, v, Axis::Y, weno, flux, grid);
    let g = combine(v, &vel.u_at_v, rho, |a, b, r| r * a * b);
    let fx_v = weno_fluxes(&g, &q, &vel.u_at_v, Axis::X, weno, flux, grid);

    zero_wall_fluxes(&mut fy_u, grid);
    let du = assemble(&fx_u, &fy_u, rho, NodeKind::UFace, grid);
    let mut dv = assemble(&fx_v, &fy_v, rho, NodeKind::VFace, grid);
    zero_wall_tendency(&mut dv, grid);
    (du, dv)
}
