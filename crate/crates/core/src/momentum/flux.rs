//! Interface-flux fields and flux-difference assembly shared by the schemes.
//!
//! A flux field has the node kind of the transported component; its value at
//! `(i, j)` is the flux through the interface between node `(i, j)` and the
//! next node along the flux axis.

use crate::density::DensityProfile;
use crate::grid::{Field, NodeKind, StaggeredGrid2D};
use crate::par::for_each_row;
use crate::weno::{Edge, WenoCoefficients};

use super::FluxKind;
use std::ops::Range;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

#[inline]
pub(crate) fn step(field: &Field, axis: Axis) -> usize {
    match axis {
        Axis::X => 1,
        Axis::Y => field.stride(),
    }
}

/// Rows and columns of the interfaces needed by the interior tendency.
pub(crate) fn interface_range(grid: &StaggeredGrid2D, axis: Axis) -> (Range<isize>, Range<isize>) {
    let (nx, ny) = (grid.nx as isize, grid.ny as isize);
    match axis {
        Axis::X => (0..ny, -1..nx),
        Axis::Y => (-1..ny, 0..nx),
    }
}

/// Fills `out(i, j)` for every interface with `value(i, j)`.
pub(crate) fn interface_field<F>(
    grid: &StaggeredGrid2D,
    kind: NodeKind,
    axis: Axis,
    value: F,
) -> Field
where
    F: Fn(isize, isize) -> f64 + Sync + Send,
{
    let (rows, cols) = interface_range(grid, axis);
    let mut out = Field::zeros(grid, kind);
    let h = grid.halo as isize;
    for_each_row(&mut out, rows, |j, row| {
        for i in cols.clone() {
            row[(i + h) as usize] = value(i, j);
        }
    });
    out
}

/// WENO fluxes of `f` with upwinding by the mean of the advecting speed `a` on
/// either side of each interface. `q` is the conserved quantity used by the
/// Rusanov dissipation.
pub(crate) fn weno_fluxes(
    f: &Field,
    q: &Field,
    a: &Field,
    axis: Axis,
    weno: &WenoCoefficients,
    kind: FluxKind,
    grid: &StaggeredGrid2D,
) -> Field {
    let s = step(f, axis);
    interface_field(grid, f.kind(), axis, |i, j| {
        let l = f.idx(i, j);
        let r = l + s;
        let (al, ar) = (a.data()[l], a.data()[r]);
        match kind {
            FluxKind::Upwind => {
                if al + ar >= 0.0 {
                    weno.reconstruct_strided(f.data(), l, s, Edge::Right)
                } else {
                    weno.reconstruct_strided(f.data(), r, s, Edge::Left)
                }
            }
            FluxKind::Rusanov => {
                let fm = weno.reconstruct_strided(f.data(), l, s, Edge::Right);
                let fp = weno.reconstruct_strided(f.data(), r, s, Edge::Left);
                let qm = weno.reconstruct_strided(q.data(), l, s, Edge::Right);
                let qp = weno.reconstruct_strided(q.data(), r, s, Edge::Left);
                let alpha = al.abs().max(ar.abs());
                0.5 * (fm + fp) - 0.5 * alpha * (qp - qm)
            }
        }
    })
}

/// `rho * a * W(q)` with `q` reconstructed upwind of the interface speed `a`.
pub(crate) fn upwind_weno_fluxes<R>(
    q: &Field,
    a_if: &Field,
    rho_if: R,
    axis: Axis,
    weno: &WenoCoefficients,
    grid: &StaggeredGrid2D,
) -> Field
where
    R: Fn(isize) -> f64 + Sync + Send,
{
    let s = step(q, axis);
    interface_field(grid, q.kind(), axis, |i, j| {
        let l = q.idx(i, j);
        let a = a_if.data()[l];
        let qhat = if a >= 0.0 {
            weno.reconstruct_strided(q.data(), l, s, Edge::Right)
        } else {
            weno.reconstruct_strided(q.data(), l + s, s, Edge::Left)
        };
        rho_if(j) * a * qhat
    })
}

/// `rho * a * Q(q)` with `Q` the symmetric interface value
/// `sum_m w_m (q_{l-m} + q_{l+1+m})`.
pub(crate) fn central_fluxes<R>(
    q: &Field,
    a_if: &Field,
    rho_if: R,
    axis: Axis,
    half_weights: &[f64],
    grid: &StaggeredGrid2D,
) -> Field
where
    R: Fn(isize) -> f64 + Sync + Send,
{
    let s = step(q, axis);
    interface_field(grid, q.kind(), axis, |i, j| {
        let l = q.idx(i, j);
        let d = q.data();
        let qi: f64 = half_weights
            .iter()
            .enumerate()
            .map(|(m, w)| w * (d[l - m * s] + d[l + (m + 1) * s]))
            .sum();
        rho_if(j) * a_if.data()[l] * qi
    })
}

/// Weighted sum `sum_m w[m] * src(i + di + m*ex, j + dj + m*ey)` at every interface.
#[allow(clippy::too_many_arguments)]
pub(crate) fn stencil_field(
    src: &Field,
    out_kind: NodeKind,
    flux_axis: Axis,
    stencil_axis: Axis,
    shift: (isize, isize),
    weights: &[f64],
    grid: &StaggeredGrid2D,
) -> Field {
    let s = step(src, stencil_axis);
    interface_field(grid, out_kind, flux_axis, |i, j| {
        let base = src.idx(i + shift.0, j + shift.1);
        weights
            .iter()
            .enumerate()
            .map(|(m, w)| w * src.data()[base + m * s])
            .sum()
    })
}

/// `-(1/rho) * (flux differences)` at the interior nodes of `kind`.
pub(crate) fn assemble(
    fx: &Field,
    fy: &Field,
    rho: &DensityProfile,
    kind: NodeKind,
    grid: &StaggeredGrid2D,
) -> Field {
    let mut out = Field::zeros(grid, kind);
    let (h, nx) = (grid.halo, grid.nx);
    let (rdx, rdy) = (1.0 / grid.dx, 1.0 / grid.dy);
    for_each_row(&mut out, 0..grid.ny as isize, |j, row| {
        let inv_rho = 1.0 / rho.at_node(kind, j);
        let (xr, yr, yb) = (fx.row(j), fy.row(j), fy.row(j - 1));
        for c in h..h + nx {
            let div = (xr[c] - xr[c - 1]) * rdx + (yr[c] - yb[c]) * rdy;
            row[c] = -inv_rho * div;
        }
    });
    out
}

/// Elementwise `g(a, b, rho_at_row)` over all storage, ghosts included.
pub(crate) fn combine<G>(a: &Field, b: &Field, rho: &DensityProfile, g: G) -> Field
where
    G: Fn(f64, f64, f64) -> f64 + Sync + Send,
{
    let mut out = a.clone();
    let h = a.halo() as isize;
    let rows = -h..a.ny() as isize + h;
    let kind = a.kind();
    for_each_row(&mut out, rows, |j, row| {
        let r = rho.at_node(kind, j);
        for (o, bv) in row.iter_mut().zip(b.row(j)) {
            *o = g(*o, *bv, r);
        }
    });
    out
}
