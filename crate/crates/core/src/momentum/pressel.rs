//! WENO advection with a centrally interpolated advecting velocity: the
//! transported component is reconstructed by WENO and multiplied by a
//! symmetric interpolation of the advecting component at the flux point.

use super::flux::{assemble, stencil_field, upwind_weno_fluxes, Axis};
use super::{zero_wall_fluxes, zero_wall_tendency};
use crate::density::DensityProfile;
use crate::grid::{Field, NodeKind, StaggeredGrid2D};
use crate::weno::eno::lagrange_weights;
use crate::weno::WenoCoefficients;

/// Midpoint Lagrange weights on `width` symmetric nodes.
pub fn central_weights(width: usize) -> Vec<f64> {
    assert!(width >= 2 && width % 2 == 0, "central width must be even");
    lagrange_weights(width, (width / 2 - 1) as f64, 0.5)
}

pub fn momentum_tendency_pressel(
    u: &Field,
    v: &Field,
    rho: &DensityProfile,
    grid: &StaggeredGrid2D,
    weno: &WenoCoefficients,
    width: usize,
) -> (Field, Field) {
    let cw = central_weights(width);
    let half = (width / 2) as isize;

    let a = stencil_field(
        u,
        NodeKind::UFace,
        Axis::X,
        Axis::X,
        (1 - half, 0),
        &cw,
        grid,
    );
    let fx_u = upwind_weno_fluxes(u, &a, |j| rho.center(j), Axis::X, weno, grid);
    let a = stencil_field(v, NodeKind::UFace, Axis::Y, Axis::X, (-half, 1), &cw, grid);
    let mut fy_u = upwind_weno_fluxes(u, &a, |j| rho.face(j + 1), Axis::Y, weno, grid);

    let a = stencil_field(
        v,
        NodeKind::VFace,
        Axis::Y,
        Axis::Y,
        (0, 1 - half),
        &cw,
        grid,
    );
    let fy_v = upwind_weno_fluxes(v, &a, |j| rho.center(j), Axis::Y, weno, grid);
    let a = stencil_field(u, NodeKind::VFace, Axis::X, Axis::Y, (1, -half), &cw, grid);
    let fx_v = upwind_weno_fluxes(v, &a, |j| rho.face(j), Axis::X, weno, grid);

    zero_wall_fluxes(&mut fy_u, grid);
    let du = assemble(&fx_u, &fy_u, rho, NodeKind::UFace, grid);
    let mut dv = assemble(&fx_v, &fy_v, rho, NodeKind::VFace, grid);
    zero_wall_tendency(&mut dv, grid);
    (du, dv)
}
