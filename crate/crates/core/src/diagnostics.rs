//! Error norms, convergence rates, coarse/fine sampling and vorticity.

use crate::error::{Error, Result};
use crate::grid::{Field, NodeKind, StaggeredGrid2D};
use crate::par::for_each_row;

/// `sum dx dy |num - exact(x, y)|` over the interior nodes of `num`.
pub fn l1_error(num: &Field, exact: impl Fn(f64, f64) -> f64, grid: &StaggeredGrid2D) -> f64 {
    let mut s = 0.0;
    for j in 0..grid.ny as isize {
        for i in 0..grid.nx as isize {
            let (x, y) = grid.coords(num.kind(), i, j);
            s += (num.at(i, j) - exact(x, y)).abs();
        }
    }
    s * grid.cell_area()
}

/// L1 distance between two fields on the same grid.
pub fn l1_distance(a: &Field, b: &Field, grid: &StaggeredGrid2D) -> Result<f64> {
    if a.kind() != b.kind() || !a.same_shape(grid) || !b.same_shape(grid) {
        return Err(Error::LengthMismatch(
            "fields differ in kind or shape".into(),
        ));
    }
    let s: f64 = a
        .interior()
        .iter()
        .zip(b.interior())
        .map(|(x, y)| (x - y).abs())
        .sum();
    Ok(s * grid.cell_area())
}

/// Observed orders `ln(e[m-1]/e[m]) / ln(n[m]/n[m-1])` for `m >= 1`.
pub fn eoc(errors: &[f64], resolutions: &[usize]) -> Result<Vec<f64>> {
    if errors.len() != resolutions.len() {
        return Err(Error::LengthMismatch(format!(
            "{} errors for {} resolutions",
            errors.len(),
            resolutions.len()
        )));
    }
    Ok((1..errors.len())
        .map(|m| {
            (errors[m - 1] / errors[m]).ln()
                / (resolutions[m] as f64 / resolutions[m - 1] as f64).ln()
        })
        .collect())
}

/// Fine-grid index of the node coinciding with coarse node `(i, j)` for an
/// odd refinement ratio `r`.
pub fn coincident_index(kind: NodeKind, i: isize, j: isize, r: isize) -> (isize, isize) {
    let half = (r - 1) / 2;
    match kind {
        NodeKind::UFace => (i * r, j * r + half),
        NodeKind::VFace => (i * r + half, j * r),
        NodeKind::Center => (i * r + half, j * r + half),
    }
}

/// Refinement ratio between two grids over the same domain; it must be an odd integer.
pub fn refinement_ratio(coarse: &StaggeredGrid2D, fine: &StaggeredGrid2D) -> Result<usize> {
    let bad = || Error::NonDivisibleResolution {
        coarse: coarse.nx,
        fine: fine.nx,
    };
    if fine.nx % coarse.nx != 0 || fine.ny % coarse.ny != 0 {
        return Err(bad());
    }
    let r = fine.nx / coarse.nx;
    if fine.ny / coarse.ny != r || r % 2 == 0 {
        return Err(bad());
    }
    Ok(r)
}

/// Samples `fine` at the nodes of `coarse` that coincide with fine nodes.
pub fn sample_coincident(
    fine: &Field,
    fine_grid: &StaggeredGrid2D,
    coarse_grid: &StaggeredGrid2D,
) -> Result<Field> {
    let r = refinement_ratio(coarse_grid, fine_grid)? as isize;
    let kind = fine.kind();
    let mut out = Field::zeros(coarse_grid, kind);
    let h = coarse_grid.halo;
    for_each_row(&mut out, 0..coarse_grid.ny as isize, |j, row| {
        for i in 0..coarse_grid.nx as isize {
            let (fi, fj) = coincident_index(kind, i, j, r);
            row[h + i as usize] = fine.at(fi, fj);
        }
    });
    Ok(out)
}

/// `dv/dx - du/dy` at cell centres: second-order differences at the cell
/// corners, averaged to the centre. Needs one filled ghost layer.
pub fn vorticity(u: &Field, v: &Field, grid: &StaggeredGrid2D) -> Field {
    let corner = |i: isize, j: isize| {
        (v.at(i, j) - v.at(i - 1, j)) / grid.dx - (u.at(i, j) - u.at(i, j - 1)) / grid.dy
    };
    let mut out = Field::zeros(grid, NodeKind::Center);
    let h = grid.halo;
    for_each_row(&mut out, 0..grid.ny as isize, |j, row| {
        for i in 0..grid.nx as isize {
            row[h + i as usize] =
                0.25 * (corner(i, j) + corner(i + 1, j) + corner(i, j + 1) + corner(i + 1, j + 1));
        }
    });
    out
}
