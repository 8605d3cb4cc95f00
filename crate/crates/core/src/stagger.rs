//! Two-pass ENO interpolation of staggered velocities.
//!
//! `v` reaches the u-faces through the cell centres (vertical pass, then
//! horizontal); `u` reaches the v-faces the other way round. The centre values
//! produced on the way are kept because scalar transport reuses them.

use crate::error::{Error, Result};
use crate::grid::{fill_ghosts, Component, ExactSolution, Field, NodeKind, StaggeredGrid2D};
use crate::par::for_each_row;
use crate::weno::eno::EnoMidpoint;

fn check(field: &Field, kind: NodeKind, eno: &EnoMidpoint) -> Result<()> {
    debug_assert_eq!(field.kind(), kind);
    let need = eno.reach() + 1;
    if field.halo() < need {
        return Err(Error::InsufficientHalo {
            have: field.halo(),
            need,
        });
    }
    Ok(())
}

fn blank(like: &Field, kind: NodeKind, grid: &StaggeredGrid2D) -> Field {
    debug_assert!(like.same_shape(grid));
    Field::zeros(grid, kind)
}

/// `v` at cell centres (interior only; ghosts left at zero).
pub fn interp_v_to_centers(v: &Field, grid: &StaggeredGrid2D, eno: &EnoMidpoint) -> Result<Field> {
    check(v, NodeKind::VFace, eno)?;
    let mut out = blank(v, NodeKind::Center, grid);
    let (h, nx, stride) = (grid.halo, grid.nx, v.stride());
    for_each_row(&mut out, 0..grid.ny as isize, |j, row| {
        for i in 0..nx {
            row[h + i] = eno.midpoint(v.data(), v.idx(i as isize, j), stride);
        }
    });
    Ok(out)
}

/// Centre values moved to u-faces (interior only).
pub fn interp_centers_to_u_points(
    c: &Field,
    grid: &StaggeredGrid2D,
    eno: &EnoMidpoint,
) -> Result<Field> {
    check(c, NodeKind::Center, eno)?;
    let mut out = blank(c, NodeKind::UFace, grid);
    let (h, nx) = (grid.halo, grid.nx);
    for_each_row(&mut out, 0..grid.ny as isize, |j, row| {
        for i in 0..nx {
            row[h + i] = eno.midpoint(c.data(), c.idx(i as isize - 1, j), 1);
        }
    });
    Ok(out)
}

/// `u` at cell centres (interior only).
pub fn interp_u_to_centers(u: &Field, grid: &StaggeredGrid2D, eno: &EnoMidpoint) -> Result<Field> {
    check(u, NodeKind::UFace, eno)?;
    let mut out = blank(u, NodeKind::Center, grid);
    let (h, nx) = (grid.halo, grid.nx);
    for_each_row(&mut out, 0..grid.ny as isize, |j, row| {
        for i in 0..nx {
            row[h + i] = eno.midpoint(u.data(), u.idx(i as isize, j), 1);
        }
    });
    Ok(out)
}

/// Centre values moved to v-faces, rows `0..=ny` so that the top boundary row is
/// available to walls.
pub fn interp_centers_to_v_points(
    c: &Field,
    grid: &StaggeredGrid2D,
    eno: &EnoMidpoint,
) -> Result<Field> {
    check(c, NodeKind::Center, eno)?;
    let mut out = blank(c, NodeKind::VFace, grid);
    let (h, nx, stride) = (grid.halo, grid.nx, c.stride());
    for_each_row(&mut out, 0..grid.ny as isize + 1, |j, row| {
        for i in 0..nx {
            row[h + i] = eno.midpoint(c.data(), c.idx(i as isize, j - 1), stride);
        }
    });
    Ok(out)
}

/// All interpolated velocity fields for one stage, with ghosts filled.
#[derive(Clone, Debug)]
pub struct StaggeredVelocities {
    /// `u` at cell centres.
    pub uc: Field,
    /// `v` at cell centres.
    pub vc: Field,
    /// `v` at u-faces.
    pub v_at_u: Field,
    /// `u` at v-faces.
    pub u_at_v: Field,
}

/// Runs both interpolation paths on ghost-filled `u`, `v`.
pub fn interpolate_velocities(
    u: &Field,
    v: &Field,
    grid: &StaggeredGrid2D,
    eno: &EnoMidpoint,
    t: f64,
    exact: Option<&dyn ExactSolution>,
) -> Result<StaggeredVelocities> {
    let mut vc = interp_v_to_centers(v, grid, eno)?;
    fill_ghosts(&mut vc, grid, Component::V, t, exact)?;
    let mut v_at_u = interp_centers_to_u_points(&vc, grid, eno)?;
    fill_ghosts(&mut v_at_u, grid, Component::V, t, exact)?;
    let mut uc = interp_u_to_centers(u, grid, eno)?;
    fill_ghosts(&mut uc, grid, Component::U, t, exact)?;
    let mut u_at_v = interp_centers_to_v_points(&uc, grid, eno)?;
    fill_ghosts(&mut u_at_v, grid, Component::U, t, exact)?;
    Ok(StaggeredVelocities {
        uc,
        vc,
        v_at_u,
        u_at_v,
    })
}
