//! Reference density sampled on the two families of horizontal grid lines.

use crate::grid::{NodeKind, StaggeredGrid2D};

#[derive(Clone, Debug, PartialEq)]
pub struct DensityProfile {
    halo: usize,
    /// Values at `y_{j+1/2}` (cell centres and u-faces), `j = -halo .. ny+halo`.
    center: Vec<f64>,
    /// Values at `y_j` (v-faces).
    face: Vec<f64>,
    constant: Option<f64>,
}

impl DensityProfile {
    pub fn uniform(grid: &StaggeredGrid2D, value: f64) -> Self {
        let n = grid.ny + 2 * grid.halo;
        Self {
            halo: grid.halo,
            center: vec![value; n],
            face: vec![value; n],
            constant: Some(value),
        }
    }

    pub fn from_fn(grid: &StaggeredGrid2D, rho: impl Fn(f64) -> f64) -> Self {
        let h = grid.halo as isize;
        let rows = -h..grid.ny as isize + h;
        Self {
            halo: grid.halo,
            center: rows.clone().map(|j| rho(grid.y_mid(j))).collect(),
            face: rows.map(|j| rho(grid.y_node(j))).collect(),
            constant: None,
        }
    }

    /// `Some(value)` when the profile was built as a uniform density.
    pub fn constant(&self) -> Option<f64> {
        self.constant
    }

    #[inline]
    pub fn center(&self, j: isize) -> f64 {
        self.center[(j + self.halo as isize) as usize]
    }

    #[inline]
    pub fn face(&self, j: isize) -> f64 {
        self.face[(j + self.halo as isize) as usize]
    }

    #[inline]
    pub fn at_node(&self, kind: NodeKind, j: isize) -> f64 {
        match kind {
            NodeKind::Center | NodeKind::UFace => self.center(j),
            NodeKind::VFace => self.face(j),
        }
    }
}
