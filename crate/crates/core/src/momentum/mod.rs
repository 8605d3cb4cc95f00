//! Advective momentum tendencies on the staggered grid.

pub mod flux;
pub mod high_order;
pub mod morinishi;
pub mod pressel;
pub mod wicker_skamarock;

use std::fmt;
use std::str::FromStr;

use crate::density::DensityProfile;
use crate::error::{Error, Result};
use crate::grid::{BoundaryKind, Field, StaggeredGrid2D};
use crate::stagger::StaggeredVelocities;
use crate::weno::eno::EnoMidpoint;
use crate::weno::{WenoCoefficients, DEFAULT_EPS, DEFAULT_POWER};

pub use high_order::{flux_cross, flux_self, momentum_tendency_high_order};
pub use morinishi::momentum_tendency_morinishi;
pub use pressel::momentum_tendency_pressel;
pub use wicker_skamarock::momentum_tendency_wicker_skamarock;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    HighOrderWeno,
    PresselWeno,
    WickerSkamarock4,
    WickerSkamarock6,
    Morinishi4,
    Morinishi6,
}

impl Scheme {
    pub const ALL: [Scheme; 6] = [
        Scheme::HighOrderWeno,
        Scheme::PresselWeno,
        Scheme::WickerSkamarock4,
        Scheme::WickerSkamarock6,
        Scheme::Morinishi4,
        Scheme::Morinishi6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::HighOrderWeno => "hiweno",
            Scheme::PresselWeno => "pressel",
            Scheme::WickerSkamarock4 => "ws4",
            Scheme::WickerSkamarock6 => "ws6",
            Scheme::Morinishi4 => "morinishi4",
            Scheme::Morinishi6 => "morinishi6",
        }
    }

    pub fn is_weno(self) -> bool {
        matches!(self, Scheme::HighOrderWeno | Scheme::PresselWeno)
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|sc| sc.name() == s)
            .ok_or_else(|| {
                Error::InvalidScheme(format!(
                    "unknown scheme '{s}' (expected one of hiweno, pressel, ws4, ws6, morinishi4, morinishi6)"
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum FluxKind {
    #[default]
    Upwind,
    Rusanov,
}

impl FromStr for FluxKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upwind" => Ok(FluxKind::Upwind),
            "rusanov" => Ok(FluxKind::Rusanov),
            _ => Err(Error::InvalidScheme(format!(
                "unknown flux '{s}' (upwind|rusanov)"
            ))),
        }
    }
}

/// Stencil width of the central interpolation of the advecting velocity in
/// the Pressel-style scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum CentralWidth {
    /// `2k` points.
    #[default]
    Full,
    /// `2k - 2` points.
    Reduced,
}

impl CentralWidth {
    pub fn points(self, k: usize) -> usize {
        match self {
            CentralWidth::Full => 2 * k,
            CentralWidth::Reduced => 2 * k - 2,
        }
    }
}

impl FromStr for CentralWidth {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2k" | "full" => Ok(CentralWidth::Full),
            "2k-2" | "reduced" => Ok(CentralWidth::Reduced),
            _ => Err(Error::InvalidScheme(format!(
                "unknown central width '{s}' (2k|2k-2)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchemeConfig {
    pub scheme: Scheme,
    /// WENO half-order: the reconstruction uses `2k-1` points.
    pub k: usize,
    pub flux: FluxKind,
    pub eps: f64,
    pub p: i32,
    pub pressel_width: CentralWidth,
}

impl SchemeConfig {
    pub fn new(scheme: Scheme, k: usize) -> Self {
        Self {
            scheme,
            k,
            flux: FluxKind::Upwind,
            eps: DEFAULT_EPS,
            p: DEFAULT_POWER,
            pressel_width: CentralWidth::Full,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=4).contains(&self.k) {
            return Err(Error::InvalidScheme(format!("k = {} not in 2..=4", self.k)));
        }
        WenoCoefficients::with_params(self.k, self.eps, self.p)?;
        Ok(())
    }

    /// Ghost layers needed by the advection, interpolation and projection stencils.
    pub fn required_halo(&self) -> usize {
        let advection = match self.scheme {
            Scheme::HighOrderWeno | Scheme::PresselWeno => 2 * self.k - 1,
            Scheme::WickerSkamarock4 => 3,
            Scheme::WickerSkamarock6 => 3,
            Scheme::Morinishi4 => morinishi::reach(4),
            Scheme::Morinishi6 => morinishi::reach(6),
        };
        // Centre interpolations for scalars and the 6th-order projection read 3 layers.
        advection.max(2 * self.k - 1).max(3)
    }

    /// Formal order, for picking a matching projection operator.
    pub fn nominal_order(&self) -> usize {
        match self.scheme {
            Scheme::HighOrderWeno | Scheme::PresselWeno => 2 * self.k - 1,
            Scheme::WickerSkamarock4 | Scheme::Morinishi4 => 4,
            Scheme::WickerSkamarock6 | Scheme::Morinishi6 => 6,
        }
    }
}

/// Momentum advection operator with its precomputed tables.
#[derive(Clone, Debug)]
pub struct Advection {
    cfg: SchemeConfig,
    weno: WenoCoefficients,
    eno: EnoMidpoint,
}

impl Advection {
    pub fn new(cfg: SchemeConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(Self {
            weno: WenoCoefficients::with_params(cfg.k, cfg.eps, cfg.p)?,
            eno: EnoMidpoint::for_order(cfg.k),
            cfg,
        })
    }

    pub fn config(&self) -> &SchemeConfig {
        &self.cfg
    }

    pub fn weno(&self) -> &WenoCoefficients {
        &self.weno
    }

    pub fn eno(&self) -> &EnoMidpoint {
        &self.eno
    }

    /// Whether the tendency consumes the ENO-interpolated cross velocities.
    pub fn needs_interpolated_velocities(&self) -> bool {
        self.cfg.scheme == Scheme::HighOrderWeno
    }

    /// `(du/dt, dv/dt)` from advection; `u`, `v` must have ghosts filled.
    pub fn tendency(
        &self,
        u: &Field,
        v: &Field,
        vel: Option<&StaggeredVelocities>,
        rho: &DensityProfile,
        grid: &StaggeredGrid2D,
    ) -> Result<(Field, Field)> {
        let need = self.cfg.required_halo();
        if grid.halo < need {
            return Err(Error::InsufficientHalo {
                have: grid.halo,
                need,
            });
        }
        Ok(match self.cfg.scheme {
            Scheme::HighOrderWeno => {
                let vel = vel.ok_or_else(|| {
                    Error::InvalidScheme("high-order WENO needs interpolated velocities".into())
                })?;
                momentum_tendency_high_order(u, v, vel, rho, grid, &self.weno, self.cfg.flux)
            }
            Scheme::PresselWeno => momentum_tendency_pressel(
                u,
                v,
                rho,
                grid,
                &self.weno,
                self.cfg.pressel_width.points(self.cfg.k),
            ),
            Scheme::WickerSkamarock4 => momentum_tendency_wicker_skamarock(u, v, rho, grid, 4),
            Scheme::WickerSkamarock6 => momentum_tendency_wicker_skamarock(u, v, rho, grid, 6),
            Scheme::Morinishi4 => momentum_tendency_morinishi(u, v, rho, grid, 4),
            Scheme::Morinishi6 => momentum_tendency_morinishi(u, v, rho, grid, 6),
        })
    }
}

/// No flux of horizontal momentum through the solid walls.
pub(crate) fn zero_wall_fluxes(fy_u: &mut Field, grid: &StaggeredGrid2D) {
    if grid.bc == BoundaryKind::ChannelNoFlowVertical {
        fy_u.row_mut(-1).fill(0.0);
        fy_u.row_mut(grid.ny as isize - 1).fill(0.0);
    }
}

/// Wall-normal velocity nodes on the bottom wall stay at rest.
pub(crate) fn zero_wall_tendency(dv: &mut Field, grid: &StaggeredGrid2D) {
    if grid.bc == BoundaryKind::ChannelNoFlowVertical {
        dv.row_mut(0).fill(0.0);
    }
}
