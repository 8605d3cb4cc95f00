//! Non-conservative WENO transport of cell-centred scalars.
//!
//! `d(phi)/dt = -(u d(phi)/dx + v d(phi)/dy)` with the derivatives formed as
//! differences of WENO edge values, upwinded by the centre velocity.

use crate::error::{Error, Result};
use crate::grid::{Field, NodeKind, StaggeredGrid2D};
use crate::par::for_each_row;
use crate::weno::{Edge, WenoCoefficients};

/// One-sided WENO derivative of `data` at `c` along `step`, upwinded by `a`.
#[inline]
fn upwind_derivative(
    weno: &WenoCoefficients,
    data: &[f64],
    c: usize,
    step: usize,
    a: f64,
    h: f64,
) -> f64 {
    let (right, left) = if a >= 0.0 {
        (
            weno.reconstruct_strided(data, c, step, Edge::Right),
            weno.reconstruct_strided(data, c - step, step, Edge::Right),
        )
    } else {
        (
            weno.reconstruct_strided(data, c + step, step, Edge::Left),
            weno.reconstruct_strided(data, c, step, Edge::Left),
        )
    };
    (right - left) / h
}

/// Advective tendency of `phi` given the centre velocities `uc`, `vc`.
/// `phi` needs `k` filled ghost layers.
pub fn scalar_tendency(
    phi: &Field,
    uc: &Field,
    vc: &Field,
    grid: &StaggeredGrid2D,
    weno: &WenoCoefficients,
) -> Result<Field> {
    if grid.halo < weno.k() {
        return Err(Error::InsufficientHalo {
            have: grid.halo,
            need: weno.k(),
        });
    }
    let mut out = Field::zeros(grid, NodeKind::Center);
    let (h, nx, stride) = (grid.halo, grid.nx as isize, phi.stride());
    let d = phi.data();
    for_each_row(&mut out, 0..grid.ny as isize, |j, row| {
        for i in 0..nx {
            let c = phi.idx(i, j);
            let (u, v) = (uc.at(i, j), vc.at(i, j));
            let dx = upwind_derivative(weno, d, c, 1, u, grid.dx);
            let dy = upwind_derivative(weno, d, c, stride, v, grid.dy);
            row[h + i as usize] = -(u * dx + v * dy);
        }
    });
    Ok(out)
}
