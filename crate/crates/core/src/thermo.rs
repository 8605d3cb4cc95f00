//! Dry-air thermodynamics for the density-current case: an isentropic,
//! hydrostatic reference atmosphere and the entropy/temperature/buoyancy
//! relations.

use crate::density::DensityProfile;
use crate::error::{Error, Result};
use crate::grid::{BoundaryKind, Field, NodeKind, StaggeredGrid2D};
use crate::par::for_each_row;

pub const GRAVITY: f64 = 9.8;
pub const R_D: f64 = 287.1;
pub const C_PD: f64 = 1004.0;
/// Specific entropy of the surface state.
pub const S_SURFACE: f64 = 6864.8;
pub const P_SURFACE: f64 = 1.0e5;
pub const T_SURFACE: f64 = 300.0;

/// Air temperature from specific entropy `s` at pressure `p`.
pub fn temperature(s: f64, p: f64) -> f64 {
    T_SURFACE * ((s - S_SURFACE + R_D * (p / P_SURFACE).ln()) / C_PD).exp()
}

/// Inverse of [`temperature`] at fixed pressure.
pub fn entropy_from_temperature(t: f64, p: f64) -> f64 {
    S_SURFACE + C_PD * (t / T_SURFACE).ln() - R_D * (p / P_SURFACE).ln()
}

/// `300 exp((s - s~)/c_pd)`.
pub fn entropy_temperature_value(s: f64) -> f64 {
    T_SURFACE * ((s - S_SURFACE) / C_PD).exp()
}

/// Dry adiabat with surface temperature 300 K and surface pressure 1e5 Pa,
/// sampled at centre and face heights (ghost rows included).
#[derive(Clone, Debug, PartialEq)]
pub struct ReferenceState {
    halo: usize,
    /// `(T0, p0, rho0)` at `y_{j+1/2}`.
    center: Vec<(f64, f64, f64)>,
    /// `(T0, p0, rho0)` at `y_j`.
    face: Vec<(f64, f64, f64)>,
    density: DensityProfile,
}

impl ReferenceState {
    /// Profile values at height `z`.
    pub fn at_height(z: f64) -> Result<(f64, f64, f64)> {
        let t = T_SURFACE - GRAVITY / C_PD * z;
        if t <= 0.0 {
            return Err(Error::NonPositiveTemperature { z, temperature: t });
        }
        let p = P_SURFACE * (t / T_SURFACE).powf(C_PD / R_D);
        Ok((t, p, p / (R_D * t)))
    }

    pub fn build(grid: &StaggeredGrid2D) -> Result<Self> {
        let h = grid.halo as isize;
        let rows = -h..grid.ny as isize + h;
        let center = rows
            .clone()
            .map(|j| Self::at_height(grid.y_mid(j)))
            .collect::<Result<Vec<_>>>()?;
        let face = rows
            .map(|j| Self::at_height(grid.y_node(j)))
            .collect::<Result<Vec<_>>>()?;
        let density = DensityProfile::from_fn(grid, |z| {
            Self::at_height(z).map(|v| v.2).unwrap_or(f64::NAN)
        });
        Ok(Self {
            halo: grid.halo,
            center,
            face,
            density,
        })
    }

    fn row(&self, j: isize) -> (f64, f64, f64) {
        self.center[(j + self.halo as isize) as usize]
    }

    pub fn t0(&self, j: isize) -> f64 {
        self.row(j).0
    }

    pub fn p0(&self, j: isize) -> f64 {
        self.row(j).1
    }

    pub fn rho0(&self, j: isize) -> f64 {
        self.row(j).2
    }

    /// `(T0, p0, rho0)` on the v-face line `y_j`.
    pub fn at_face(&self, j: isize) -> (f64, f64, f64) {
        self.face[(j + self.halo as isize) as usize]
    }

    pub fn density(&self) -> &DensityProfile {
        &self.density
    }
}

/// Temperature at cell centres.
pub fn temperature_field(s: &Field, reference: &ReferenceState, grid: &StaggeredGrid2D) -> Field {
    let mut out = Field::zeros(grid, NodeKind::Center);
    let h = grid.halo as isize;
    for_each_row(&mut out, -h..grid.ny as isize + h, |j, row| {
        let p0 = reference.p0(j);
        for (o, sv) in row.iter_mut().zip(s.row(j)) {
            *o = temperature(*sv, p0);
        }
    });
    out
}

/// `g (T - T0)/T0` at cell centres, averaged to the v-faces. In the channel
/// the bottom wall row stays zero.
pub fn buoyancy_from_entropy(
    s: &Field,
    reference: &ReferenceState,
    grid: &StaggeredGrid2D,
) -> Field {
    let b_at = |i: isize, j: isize| {
        let t0 = reference.t0(j);
        GRAVITY * (temperature(s.at(i, j), reference.p0(j)) - t0) / t0
    };
    let mut out = Field::zeros(grid, NodeKind::VFace);
    let (h, nx) = (grid.halo, grid.nx as isize);
    let wall = grid.bc == BoundaryKind::ChannelNoFlowVertical;
    for_each_row(&mut out, 0..grid.ny as isize, |j, row| {
        if wall && j == 0 {
            return;
        }
        for i in 0..nx {
            row[h + i as usize] = 0.5 * (b_at(i, j - 1) + b_at(i, j));
        }
    });
    out
}

/// Entropy temperature at cell centres.
pub fn entropy_temperature(s: &Field) -> Field {
    let mut out = s.clone();
    out.data_mut()
        .iter_mut()
        .for_each(|v| *v = entropy_temperature_value(*v));
    out
}

/// `sum rho0 s dx dy` over the interior.
pub fn total_entropy(s: &Field, rho: &DensityProfile, grid: &StaggeredGrid2D) -> f64 {
    let h = grid.halo;
    (0..grid.ny as isize)
        .map(|j| rho.center(j) * s.row(j)[h..h + grid.nx].iter().sum::<f64>())
        .sum::<f64>()
        * grid.cell_area()
}
