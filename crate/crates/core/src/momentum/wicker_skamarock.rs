//! Central flux-form advection: `F = a * Q(q)` with a two-point mean for the
//! advecting speed and a 4th or 6th order symmetric interface value.

use super::flux::{assemble, central_fluxes, stencil_field, Axis};
use super::{zero_wall_fluxes, zero_wall_tendency};
use crate::density::DensityProfile;
use crate::grid::{Field, NodeKind, StaggeredGrid2D};

pub fn interface_weights(order: usize) -> &'static [f64] {
    match order {
        4 => &[7.0 / 12.0, -1.0 / 12.0],
        6 => &[37.0 / 60.0, -8.0 / 60.0, 1.0 / 60.0],
        _ => panic!("Wicker-Skamarock order must be 4 or 6"),
    }
}

pub fn momentum_tendency_wicker_skamarock(
    u: &Field,
    v: &Field,
    rho: &DensityProfile,
    grid: &StaggeredGrid2D,
    order: usize,
) -> (Field, Field) {
    let qw = interface_weights(order);
    let mean = [0.5, 0.5];

    let a = stencil_field(u, NodeKind::UFace, Axis::X, Axis::X, (0, 0), &mean, grid);
    let fx_u = central_fluxes(u, &a, |j| rho.center(j), Axis::X, qw, grid);
    let a = stencil_field(v, NodeKind::UFace, Axis::Y, Axis::X, (-1, 1), &mean, grid);
    let mut fy_u = central_fluxes(u, &a, |j| rho.face(j + 1), Axis::Y, qw, grid);

    let a = stencil_field(v, NodeKind::VFace, Axis::Y, Axis::Y, (0, 0), &mean, grid);
    let fy_v = central_fluxes(v, &a, |j| rho.center(j), Axis::Y, qw, grid);
    let a = stencil_field(u, NodeKind::VFace, Axis::X, Axis::Y, (1, -1), &mean, grid);
    let fx_v = central_fluxes(v, &a, |j| rho.face(j), Axis::X, qw, grid);

    zero_wall_fluxes(&mut fy_u, grid);
    let du = assemble(&fx_u, &fy_u, rho, NodeKind::UFace, grid);
    let mut dv = assemble(&fx_v, &fy_v, rho, NodeKind::VFace, grid);
    zero_wall_tendency(&mut dv, grid);
    (du, dv)
}
