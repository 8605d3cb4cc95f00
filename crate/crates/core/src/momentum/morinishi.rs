//! Divergence-form central schemes of 4th and 6th order built from staggered
//! averages and differences over 1, 3 (and 5) cell widths.

use super::zero_wall_tendency;
use crate::density::DensityProfile;
use crate::grid::{Field, NodeKind, StaggeredGrid2D};
use crate::par::for_each_row;

/// Weights for widths `1, 3, 5, ...`.
pub fn coefficients(order: usize) -> &'static [f64] {
    match order {
        2 => &[1.0],
        4 => &[9.0 / 8.0, -1.0 / 8.0],
        6 => &[150.0 / 128.0, -25.0 / 128.0, 3.0 / 128.0],
        _ => panic!("Morinishi order must be 2, 4 or 6"),
    }
}

/// Nodes read on each side of a tendency node.
pub fn reach(order: usize) -> usize {
    2 * coefficients(order).len() - 1
}

/// Fills `out(i, j)` for the given ranges with `value(i, j)`.
fn sampled<F>(
    grid: &StaggeredGrid2D,
    cols: std::ops::Range<isize>,
    rows: std::ops::Range<isize>,
    value: F,
) -> Field
where
    F: Fn(isize, isize) -> f64 + Sync + Send,
{
    let mut out = Field::zeros(grid, NodeKind::Center);
    let h = grid.halo as isize;
    for_each_row(&mut out, rows, |j, row| {
        for i in cols.clone() {
            row[(i + h) as usize] = value(i, j);
        }
    });
    out
}

pub fn momentum_tendency_morinishi(
    u: &Field,
    v: &Field,
    rho: &DensityProfile,
    grid: &StaggeredGrid2D,
    order: usize,
) -> (Field, Field) {
    let c = coefficients(order);
    let r = c.len() as isize;
    let (nx, ny) = (grid.nx as isize, grid.ny as isize);
    // (index offset of the far node, width m) for each term
    let widths: Vec<(isize, f64)> = (0..c.len())
        .map(|n| (n as isize, (2 * n + 1) as f64))
        .collect();

    // Advecting velocities, the same for every difference width.
    // ax(c, j): rho u at (x_{c+1/2}, y_{j+1/2});  by(i, r): rho v at (x_i, y_r)
    let ax = sampled(grid, -r..nx + r - 1, 0..ny, |ci, j| {
        let s: f64 = widths
            .iter()
            .zip(c)
            .map(|(&(n, _), w)| w * 0.5 * (u.at(ci + n + 1, j) + u.at(ci - n, j)))
            .sum();
        rho.center(j) * s
    });
    let by = sampled(grid, 0..nx, -(r - 1)..ny + r, |i, rr| {
        let s: f64 = widths
            .iter()
            .zip(c)
            .map(|(&(n, _), w)| w * 0.5 * (v.at(i + n, rr) + v.at(i - n - 1, rr)))
            .sum();
        rho.face(rr) * s
    });
    // ay(i, r): rho v at (x_{i+1/2}, y_{r+1/2});  bx(q, j): rho u at (x_q, y_j)
    let ay = sampled(grid, 0..nx, -r..ny + r - 1, |i, rr| {
        let s: f64 = widths
            .iter()
            .zip(c)
            .map(|(&(n, _), w)| w * 0.5 * (v.at(i, rr + n + 1) + v.at(i, rr - n)))
            .sum();
        rho.center(rr) * s
    });
    let bx = sampled(grid, -(r - 1)..nx + r, 0..ny, |q, j| {
        let s: f64 = widths
            .iter()
            .zip(c)
            .map(|(&(n, _), w)| w * 0.5 * (u.at(q, j + n) + u.at(q, j - n - 1)))
            .sum();
        rho.face(j) * s
    });

    let (rdx, rdy) = (1.0 / grid.dx, 1.0 / grid.dy);
    let mut du = Field::zeros(grid, NodeKind::UFace);
    let h = grid.halo as isize;
    for_each_row(&mut du, 0..ny, |j, row| {
        let inv_rho = 1.0 / rho.center(j);
        for i in 0..nx {
            let uij = u.at(i, j);
            let mut acc = 0.0;
            for (&(n, m), w) in widths.iter().zip(c) {
                let mi = 2 * n + 1;
                let x = ax.at(i + n, j) * 0.5 * (u.at(i + mi, j) + uij)
                    - ax.at(i - n - 1, j) * 0.5 * (uij + u.at(i - mi, j));
                let y = by.at(i, j + n + 1) * 0.5 * (u.at(i, j + mi) + uij)
                    - by.at(i, j - n) * 0.5 * (uij + u.at(i, j - mi));
                acc += w / m * (x * rdx + y * rdy);
            }
            row[(i + h) as usize] = -inv_rho * acc;
        }
    });
    let mut dv = Field::zeros(grid, NodeKind::VFace);
    for_each_row(&mut dv, 0..ny, |j, row| {
        let inv_rho = 1.0 / rho.face(j);
        for i in 0..nx {
            let vij = v.at(i, j);
            let mut acc = 0.0;
            for (&(n, m), w) in widths.iter().zip(c) {
                let mi = 2 * n + 1;
                let x = bx.at(i + n + 1, j) * 0.5 * (v.at(i + mi, j) + vij)
                    - bx.at(i - n, j) * 0.5 * (vij + v.at(i - mi, j));
                let y = ay.at(i, j + n) * 0.5 * (v.at(i, j + mi) + vij)
                    - ay.at(i, j - n - 1) * 0.5 * (vij + v.at(i, j - mi));
                acc += w / m * (x * rdx + y * rdy);
            }
            row[(i + h) as usize] = -inv_rho * acc;
        }
    });
    zero_wall_tendency(&mut dv, grid);
    (du, dv)
}
