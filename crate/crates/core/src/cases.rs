//! The benchmark cases: domains, boundary conditions, initial data, exact
//! solutions and manufactured forcing.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::density::DensityProfile;
use crate::error::{Error, Result};
use crate::grid::{
    build_grid, BoundaryKind, Bounds, Component, ExactSolution, Field, FlowState, NodeKind,
    StaggeredGrid2D,
};
use crate::thermo::{entropy_from_temperature, ReferenceState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseName {
    VortexPatch,
    TaylorVortex,
    ShearLayer,
    DirichletManufactured,
    PassiveScalar,
    Straka,
}

impl CaseName {
    pub const ALL: [CaseName; 6] = [
        CaseName::VortexPatch,
        CaseName::TaylorVortex,
        CaseName::ShearLayer,
        CaseName::DirichletManufactured,
        CaseName::PassiveScalar,
        CaseName::Straka,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseName::VortexPatch => "vortex_patch",
            CaseName::TaylorVortex => "taylor_vortex",
            CaseName::ShearLayer => "shear_layer",
            CaseName::DirichletManufactured => "dirichlet_manufactured",
            CaseName::PassiveScalar => "passive_scalar",
            CaseName::Straka => "straka",
        }
    }
}

impl fmt::Display for CaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseName::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown case '{s}'")))
    }
}

/// How the time step is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepControl {
    Cfl(f64),
    Fixed(f64),
}

/// Static description of a case with its default run parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CaseSpec {
    pub name: CaseName,
    pub bounds: Bounds,
    pub bc: BoundaryKind,
    pub default_n: usize,
    pub step: StepControl,
    /// Upper bound on CFL-chosen steps (flows starting at rest).
    pub dt_max: Option<f64>,
    pub t_end: f64,
    pub has_scalar: bool,
    /// Whether the velocity is projected after every stage.
    pub project: bool,
}

impl CaseSpec {
    pub fn get(name: CaseName) -> Self {
        let two_pi = Bounds::square(0.0, 2.0 * PI);
        let base = CaseSpec {
            name,
            bounds: two_pi,
            bc: BoundaryKind::PeriodicBoth,
            default_n: 128,
            step: StepControl::Cfl(0.1),
            dt_max: None,
            t_end: 1.0,
            has_scalar: false,
            project: true,
        };
        match name {
            // Pure advection of the patch: no pressure.
            CaseName::VortexPatch => CaseSpec {
                t_end: 5.0,
                project: false,
                ..base
            },
            CaseName::TaylorVortex => CaseSpec {
                bounds: Bounds::square(-8.0, 8.0),
                default_n: 108,
                step: StepControl::Fixed(1e-4),
                t_end: 0.01,
                ..base
            },
            CaseName::ShearLayer => CaseSpec {
                default_n: 192,
                step: StepControl::Cfl(0.2),
                t_end: 14.0,
                ..base
            },
            // The manufactured field is an exact solution with zero pressure.
            CaseName::DirichletManufactured => CaseSpec {
                bounds: Bounds::square(0.0, PI),
                bc: BoundaryKind::DirichletExact,
                default_n: 32,
                step: StepControl::Fixed(1e-5),
                t_end: 0.1,
                project: false,
                ..base
            },
            CaseName::PassiveScalar => CaseSpec {
                default_n: 64,
                step: StepControl::Fixed(1e-3),
                t_end: 1.0,
                has_scalar: true,
                ..base
            },
            CaseName::Straka => CaseSpec {
                bounds: Bounds::new(-25600.0, 25600.0, 0.0, 6400.0),
                bc: BoundaryKind::ChannelNoFlowVertical,
                default_n: 256,
                step: StepControl::Cfl(0.5),
                dt_max: Some(1.0),
                t_end: 900.0,
                has_scalar: true,
                ..base
            },
        }
    }

    pub fn has_exact_solution(&self) -> bool {
        matches!(
            self.name,
            CaseName::DirichletManufactured | CaseName::PassiveScalar
        )
    }

    pub fn exact(&self) -> Option<CaseExact> {
        self.has_exact_solution().then_some(CaseExact(self.name))
    }

    pub fn grid(&self, nx: usize, ny: usize, halo: usize) -> Result<StaggeredGrid2D> {
        build_grid(self.bounds, nx, ny, self.bc, halo)
    }

    /// Reference density on `grid`, and the full thermodynamic state where one applies.
    pub fn reference(
        &self,
        grid: &StaggeredGrid2D,
    ) -> Result<(DensityProfile, Option<ReferenceState>)> {
        if self.name == CaseName::Straka {
            let r = ReferenceState::build(grid)?;
            Ok((r.density().clone(), Some(r)))
        } else {
            Ok((DensityProfile::uniform(grid, 1.0), None))
        }
    }

    /// Initial state sampled at the staggered nodes, ghosts filled.
    pub fn init(&self, grid: &StaggeredGrid2D) -> Result<FlowState> {
        if grid.bc != self.bc {
            return Err(Error::InvalidGrid(format!(
                "case {} needs {:?} boundaries",
                self.name, self.bc
            )));
        }
        let u0 = |x, y| initial_value(self.name, Component::U, x, y);
        let v0 = |x, y| initial_value(self.name, Component::V, x, y);
        let mut state = FlowState {
            u: Field::from_fn(grid, NodeKind::UFace, u0),
            v: Field::from_fn(grid, NodeKind::VFace, v0),
            phi: self.has_scalar.then(|| {
                Field::from_fn(grid, NodeKind::Center, |x, y| {
                    initial_value(self.name, Component::Scalar, x, y)
                })
            }),
            t: 0.0,
        };
        let exact = self.exact();
        state.fill_ghosts(grid, exact.as_ref().map(|e| e as &dyn ExactSolution))?;
        Ok(state)
    }
}

fn in_patch(x: f64, y: f64) -> bool {
    (x - PI).powi(2) + (y - PI).powi(2) < PI / 2.0
}

/// Normalised distance from the centre of the cold anomaly.
pub fn straka_distance(x: f64, z: f64) -> f64 {
    ((x / 4000.0).powi(2) + ((z - 3000.0) / 2000.0).powi(2)).sqrt()
}

/// Temperature perturbation of the density-current case.
pub fn straka_delta_t(x: f64, z: f64) -> f64 {
    -7.5 * ((straka_distance(x, z).min(1.0) * PI).cos() + 1.0)
}

const SHEAR_WIDTH: f64 = PI / 15.0;
const SHEAR_PERTURBATION: f64 = 0.05;

/// Initial value of one component at a point.
pub fn initial_value(case: CaseName, c: Component, x: f64, y: f64) -> f64 {
    match case {
        CaseName::VortexPatch => match c {
            Component::U if in_patch(x, y) => -0.5 * (y - PI),
            Component::V if in_patch(x, y) => 0.5 * (x - PI),
            _ => 0.0,
        },
        CaseName::TaylorVortex => {
            let e = (0.5 * (1.0 - x * x - y * y)).exp();
            match c {
                Component::U => -y * e + 8.0,
                Component::V => x * e,
                Component::Scalar => 0.0,
            }
        }
        CaseName::ShearLayer => match c {
            Component::U if y < PI => ((y - PI / 2.0) / SHEAR_WIDTH).tanh(),
            Component::U => ((1.5 * PI - y) / SHEAR_WIDTH).tanh(),
            Component::V => SHEAR_PERTURBATION * x.sin(),
            Component::Scalar => 0.0,
        },
        CaseName::DirichletManufactured | CaseName::PassiveScalar => {
            exact_value(case, c, x, y, 0.0)
        }
        CaseName::Straka => match c {
            Component::Scalar => {
                // Hydrostatic pressure perturbation neglected at t = 0.
                let (t0, p0, _) = ReferenceState::at_height(y).unwrap_or((f64::NAN, f64::NAN, 0.0));
                entropy_from_temperature(t0 + straka_delta_t(x, y), p0)
            }
            _ => 0.0,
        },
    }
}

/// Closed-form solution of the manufactured cases (zero elsewhere).
pub fn exact_value(case: CaseName, c: Component, x: f64, y: f64, t: f64) -> f64 {
    match case {
        CaseName::DirichletManufactured => match c {
            Component::U => (1.0 + t) * x.sin() * y.cos(),
            Component::V => -(1.0 + t) * x.cos() * y.sin(),
            Component::Scalar => 0.0,
        },
        CaseName::PassiveScalar => match c {
            Component::U => -t.cos() * x.sin() * (2.0 * y).sin(),
            Component::V => t.cos() * x.cos() * y.sin().powi(2),
            Component::Scalar => 2.0 + x.cos() * y.sin() * t.cos(),
        },
        _ => 0.0,
    }
}

/// Forcing that makes [`exact_value`] solve the equations with zero pressure.
pub fn source_value(case: CaseName, c: Component, x: f64, y: f64, t: f64) -> f64 {
    match case {
        CaseName::DirichletManufactured => {
            let a = 0.5 * (1.0 + t).powi(2);
            match c {
                Component::U => x.sin() * y.cos() + a * (2.0 * x).sin(),
                Component::V => -x.cos() * y.sin() + a * (2.0 * y).sin(),
                Component::Scalar => 0.0,
            }
        }
        CaseName::PassiveScalar => {
            let (st, ct) = t.sin_cos();
            let (sx, cx) = x.sin_cos();
            let (sy, cy) = y.sin_cos();
            match c {
                Component::U => 2.0 * (st * cy + sy * ct * ct * cx) * sx * sy,
                Component::V => (2.0 * ct * ct * sy * cy - st * cx) * sy * sy,
                Component::Scalar => -sy * (st * cx + ct * ct * sy * cy * (cx * cx - 2.0)),
            }
        }
        _ => 0.0,
    }
}

/// Exact solution of a manufactured case.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseExact(pub CaseName);

impl ExactSolution for CaseExact {
    fn value(&self, component: Component, x: f64, y: f64, t: f64) -> f64 {
        exact_value(self.0, component, x, y, t)
    }
}

/// Point-sampled forcing fields.
#[derive(Clone, Debug, PartialEq)]
pub struct Sources {
    pub u: Field,
    pub v: Field,
    pub phi: Option<Field>,
}

pub fn manufactured_sources(case: CaseName, t: f64, grid: &StaggeredGrid2D) -> Result<Sources> {
    if !matches!(
        case,
        CaseName::DirichletManufactured | CaseName::PassiveScalar
    ) {
        return Err(Error::MissingExactSolution);
    }
    let f = |c| move |x, y| source_value(case, c, x, y, t);
    Ok(Sources {
        u: Field::from_fn_interior(grid, NodeKind::UFace, f(Component::U)),
        v: Field::from_fn_interior(grid, NodeKind::VFace, f(Component::V)),
        phi: (case == CaseName::PassiveScalar)
            .then(|| Field::from_fn_interior(grid, NodeKind::Center, f(Component::Scalar))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::fill_ghosts;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn names_round_trip() {
        for c in CaseName::ALL {
            assert_eq!(c.name().parse::<CaseName>().unwrap(), c);
        }
        assert!("bubble".parse::<CaseName>().is_err());
    }

    #[test]
    fn initial_value_examples() {
        assert_eq!(
            initial_value(CaseName::VortexPatch, Component::U, PI, PI),
            0.0
        );
        assert_eq!(
            initial_value(CaseName::TaylorVortex, Component::U, 0.0, 0.0),
            8.0
        );
        assert_eq!(
            initial_value(CaseName::ShearLayer, Component::U, 1.0, PI / 2.0),
            0.0
        );
        assert_relative_eq!(
            initial_value(CaseName::ShearLayer, Component::V, 1.2, 0.3),
            0.05 * 1.2f64.sin()
        );
    }

    #[test]
    fn dirichlet_source_examples() {
        let h = PI / 2.0;
        let c = CaseName::DirichletManufactured;
        assert!(source_value(c, Component::U, h, h, 0.0).abs() < 1e-15);
        assert!(source_value(c, Component::V, h, h, 0.0).abs() < 1e-15);
    }

    #[test]
    fn straka_anomaly() {
        assert_eq!(straka_delta_t(0.0, 3000.0), -15.0);
        assert_eq!(straka_delta_t(10_000.0, 3000.0), 0.0);
        let g = CaseSpec::get(CaseName::Straka).grid(64, 64, 5).unwrap();
        let s = CaseSpec::get(CaseName::Straka)
            .init(&g)
            .unwrap()
            .phi
            .unwrap();
        // Far from the anomaly the state is the isentropic reference.
        assert_relative_eq!(s.at(0, 10), crate::thermo::S_SURFACE, max_relative = 1e-12);
    }

    /// `d/dt q + u dq/dx + v dq/dy` of the manufactured passive-scalar fields,
    /// written out term by term.
    fn passive_residual(c: Component, x: f64, y: f64, t: f64) -> f64 {
        let u = -t.cos() * x.sin() * (2.0 * y).sin();
        let v = t.cos() * x.cos() * y.sin().powi(2);
        let (qt, qx, qy) = match c {
            Component::U => (
                t.sin() * x.sin() * (2.0 * y).sin(),
                -t.cos() * x.cos() * (2.0 * y).sin(),
                -2.0 * t.cos() * x.sin() * (2.0 * y).cos(),
            ),
            Component::V => (
                -t.sin() * x.cos() * y.sin().powi(2),
                -t.cos() * x.sin() * y.sin().powi(2),
                2.0 * t.cos() * x.cos() * y.sin() * y.cos(),
            ),
            Component::Scalar => (
                -x.cos() * y.sin() * t.sin(),
                -x.sin() * y.sin() * t.cos(),
                x.cos() * y.cos() * t.cos(),
            ),
        };
        qt + u * qx + v * qy - source_value(CaseName::PassiveScalar, c, x, y, t)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn passive_sources_balance(x in 0.0..2.0 * PI, y in 0.0..2.0 * PI, t in 0.0f64..1.0) {
            for c in [Component::U, Component::V, Component::Scalar] {
                prop_assert!(passive_residual(c, x, y, t).abs() < 1e-12);
            }
        }

        #[test]
        fn dirichlet_sources_balance(x in 0.0..PI, y in 0.0..PI, t in 0.0f64..0.1) {
            let a = 1.0 + t;
            let (u, v) = (a * x.sin() * y.cos(), -a * x.cos() * y.sin());
            // conservative form: d(u^2)/dx + d(uv)/dy
            let ru = x.sin() * y.cos()
                + 2.0 * u * a * x.cos() * y.cos()
                - a * x.sin() * y.sin() * v + u * (-a * x.cos() * y.cos());
            let rv = -x.cos() * y.sin()
                + a * x.sin() * y.sin() * u + v * a * x.cos() * y.cos()
                + 2.0 * v * (-a * x.cos() * y.cos());
            let c = CaseName::DirichletManufactured;
            prop_assert!((ru - source_value(c, Component::U, x, y, t)).abs() < 1e-12);
            prop_assert!((rv - source_value(c, Component::V, x, y, t)).abs() < 1e-12);
        }
    }

    #[test]
    fn manufactured_velocities_are_divergence_free() {
        for c in [CaseName::DirichletManufactured, CaseName::PassiveScalar] {
            let h = 1e-5;
            for &(x, y, t) in &[(0.3, 1.1, 0.05), (2.0, 0.4, 0.7)] {
                let du = exact_value(c, Component::U, x + h, y, t)
                    - exact_value(c, Component::U, x - h, y, t);
                let dv = exact_value(c, Component::V, x, y + h, t)
                    - exact_value(c, Component::V, x, y - h, t);
                assert!(((du + dv) / (2.0 * h)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn initial_fields_survive_their_ghost_fill() {
        for c in CaseName::ALL {
            let spec = CaseSpec::get(c);
            let g = spec.grid(24, 24, 5).unwrap();
            let mut s = spec.init(&g).unwrap();
            let before = s.clone();
            let exact = spec.exact();
            let e = exact.as_ref().map(|e| e as &dyn ExactSolution);
            fill_ghosts(&mut s.u, &g, Component::U, 0.0, e).unwrap();
            fill_ghosts(&mut s.v, &g, Component::V, 0.0, e).unwrap();
            assert_eq!(s.u.interior(), before.u.interior(), "{c}");
            assert_eq!(s.v.interior(), before.v.interior(), "{c}");
            assert!(s.all_finite());
        }
    }

    #[test]
    fn sources_only_for_manufactured_cases() {
        let spec = CaseSpec::get(CaseName::TaylorVortex);
        let g = spec.grid(8, 8, 3).unwrap();
        assert!(manufactured_sources(CaseName::TaylorVortex, 0.0, &g).is_err());
        let spec = CaseSpec::get(CaseName::PassiveScalar);
        let g = spec.grid(8, 8, 3).unwrap();
        assert!(manufactured_sources(CaseName::PassiveScalar, 0.0, &g)
            .unwrap()
            .phi
            .is_some());
    }
}
