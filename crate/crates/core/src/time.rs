//! SSP-RK3 time marching with a projection after every stage.

use crate::cases::{manufactured_sources, CaseExact, CaseName, CaseSpec, StepControl};
use crate::density::DensityProfile;
use crate::error::{BlowUpReason, Error, Result};
use crate::grid::{ExactSolution, Field, FlowState, StaggeredGrid2D};
use crate::momentum::{Advection, SchemeConfig};
use crate::pressure::{PressureSymbol, Projection};
use crate::scalar::scalar_tendency;
use crate::stagger::interpolate_velocities;
use crate::thermo::{buoyancy_from_entropy, ReferenceState};

/// Guard against division by zero for a fluid at rest.
const SPEED_FLOOR: f64 = 1e-14;

/// `cfl / (max|u|/dx + max|v|/dy + 1e-14)`.
pub fn compute_dt(u: &Field, v: &Field, grid: &StaggeredGrid2D, cfl: f64) -> f64 {
    cfl / (u.max_abs_interior() / grid.dx + v.max_abs_interior() / grid.dy + SPEED_FLOOR)
}

/// Vector space operations needed by the Runge-Kutta combinations.
pub trait RkVector: Clone {
    /// `self = a * self + b * other`.
    fn lincomb(&mut self, a: f64, b: f64, other: &Self);
}

impl RkVector for Vec<f64> {
    fn lincomb(&mut self, a: f64, b: f64, other: &Self) {
        for (s, o) in self.iter_mut().zip(other) {
            *s = a * *s + b * o;
        }
    }
}

impl RkVector for FlowState {
    fn lincomb(&mut self, a: f64, b: f64, other: &Self) {
        self.u.lincomb(a, b, &other.u);
        self.v.lincomb(a, b, &other.v);
        if let (Some(p), Some(q)) = (self.phi.as_mut(), other.phi.as_ref()) {
            p.lincomb(a, b, q);
        }
    }
}

/// Weights `(a, b)` of the stage outputs `a * y_n + b * (y_stage + dt L)`, and
/// the time at which each stage evaluates `L`.
pub const SSP_RK3_STAGES: [(f64, f64, f64); 3] = [
    (0.0, 1.0, 0.0),
    (0.75, 0.25, 1.0),
    (1.0 / 3.0, 2.0 / 3.0, 0.5),
];

/// One SSP-RK3 step. `post(stage, y)` runs on every stage output (projection,
/// boundary conditions, blow-up checks).
pub fn ssp_rk3_step<Y, E>(
    y: &Y,
    t: f64,
    dt: f64,
    mut rhs: impl FnMut(f64, &Y) -> std::result::Result<Y, E>,
    mut post: impl FnMut(usize, &mut Y) -> std::result::Result<(), E>,
) -> std::result::Result<Y, E>
where
    Y: RkVector,
{
    let mut stage = y.clone();
    for (m, &(a, b, c)) in SSP_RK3_STAGES.iter().enumerate() {
        let l = rhs(t + c * dt, &stage)?;
        stage.lincomb(1.0, dt, &l);
        if m > 0 {
            // a y + b s written as y + b (s - y), exact when s == y
            debug_assert!((a + b - 1.0).abs() < 1e-15);
            stage.lincomb(1.0, -1.0, y);
            stage.lincomb(b, 1.0, y);
        }
        post(m, &mut stage)?;
    }
    Ok(stage)
}

/// Numerical options of a run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RunOptions {
    pub scheme: SchemeConfig,
    pub step: StepControl,
    pub dt_max: Option<f64>,
    /// Order of the projection's difference operator.
    pub pressure_order: usize,
    pub symbol: PressureSymbol,
    pub project: bool,
}

impl RunOptions {
    /// The case's defaults with a given advection scheme; the projection
    /// order follows the scheme.
    pub fn for_case(spec: &CaseSpec, scheme: SchemeConfig) -> Self {
        Self {
            scheme,
            step: spec.step,
            dt_max: spec.dt_max,
            pressure_order: default_pressure_order(&scheme),
            symbol: PressureSymbol::Modified,
            project: spec.project,
        }
    }
}

/// 6 for schemes of order five and up, 4 otherwise.
pub fn default_pressure_order(scheme: &SchemeConfig) -> usize {
    if scheme.nominal_order() >= 5 {
        6
    } else {
        4
    }
}

/// A case being integrated on one grid.
pub struct Simulation {
    spec: CaseSpec,
    grid: StaggeredGrid2D,
    opts: RunOptions,
    advection: Advection,
    projection: Option<Projection>,
    rho: DensityProfile,
    reference: Option<ReferenceState>,
    exact: Option<CaseExact>,
    state: FlowState,
    /// Kinematic pressure from the last projection.
    pressure: Option<Field>,
    steps: usize,
}

impl Simulation {
    pub fn new(spec: CaseSpec, nx: usize, ny: usize, opts: RunOptions) -> Result<Self> {
        let halo = opts.scheme.required_halo();
        let grid = spec.grid(nx, ny, halo)?;
        let state = spec.init(&grid)?;
        Self::with_state(spec, grid, opts, state)
    }

    /// Starts from an arbitrary state on a grid built for `spec`.
    pub fn with_state(
        spec: CaseSpec,
        grid: StaggeredGrid2D,
        opts: RunOptions,
        mut state: FlowState,
    ) -> Result<Self> {
        let advection = Advection::new(opts.scheme)?;
        let need = opts.scheme.required_halo();
        if grid.halo < need {
            return Err(Error::InsufficientHalo {
                have: grid.halo,
                need,
            });
        }
        if !state.u.same_shape(&grid) || !state.v.same_shape(&grid) {
            return Err(Error::LengthMismatch(
                "state does not match the grid".into(),
            ));
        }
        if spec.has_scalar && state.phi.is_none() {
            return Err(Error::Config(format!(
                "case {} needs a scalar field",
                spec.name
            )));
        }
        let projection = if opts.project {
            Some(Projection::new(&grid, opts.pressure_order, opts.symbol)?)
        } else {
            None
        };
        let (rho, reference) = spec.reference(&grid)?;
        let exact = spec.exact();
        state.fill_ghosts(&grid, exact.as_ref().map(|e| e as &dyn ExactSolution))?;
        Ok(Self {
            spec,
            grid,
            opts,
            advection,
            projection,
            rho,
            reference,
            exact,
            state,
            pressure: None,
            steps: 0,
        })
    }

    pub fn grid(&self) -> &StaggeredGrid2D {
        &self.grid
    }

    pub fn spec(&self) -> &CaseSpec {
        &self.spec
    }

    pub fn options(&self) -> &RunOptions {
        &self.opts
    }

    pub fn state(&self) -> &FlowState {
        &self.state
    }

    pub fn time(&self) -> f64 {
        self.state.t
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn density(&self) -> &DensityProfile {
        &self.rho
    }

    pub fn reference(&self) -> Option<&ReferenceState> {
        self.reference.as_ref()
    }

    pub fn pressure(&self) -> Option<&Field> {
        self.pressure.as_ref()
    }

    pub fn projection(&self) -> Option<&Projection> {
        self.projection.as_ref()
    }

    fn exact_dyn(&self) -> Option<&dyn ExactSolution> {
        self.exact.as_ref().map(|e| e as &dyn ExactSolution)
    }

    /// Tendencies of `(u, v, phi)` at time `t`, before projection.
    pub fn rhs(&self, t: f64, stage: &FlowState) -> Result<FlowState> {
        let g = &self.grid;
        let mut y = stage.clone();
        y.t = t;
        y.fill_ghosts(g, self.exact_dyn())?;
        let vel = if self.advection.needs_interpolated_velocities() || y.phi.is_some() {
            Some(interpolate_velocities(
                &y.u,
                &y.v,
                g,
                self.advection.eno(),
                t,
                self.exact_dyn(),
            )?)
        } else {
            None
        };
        let (mut du, mut dv) = self
            .advection
            .tendency(&y.u, &y.v, vel.as_ref(), &self.rho, g)?;
        let mut dphi = match (&y.phi, &vel) {
            (Some(phi), Some(vel)) => Some(scalar_tendency(
                phi,
                &vel.uc,
                &vel.vc,
                g,
                self.advection.weno(),
            )?),
            _ => None,
        };
        if matches!(
            self.spec.name,
            CaseName::DirichletManufactured | CaseName::PassiveScalar
        ) {
            let src = manufactured_sources(self.spec.name, t, g)?;
            du.axpy(1.0, &src.u);
            dv.axpy(1.0, &src.v);
            if let (Some(d), Some(s)) = (dphi.as_mut(), src.phi.as_ref()) {
                d.axpy(1.0, s);
            }
        }
        if let (Some(reference), Some(s)) = (&self.reference, &y.phi) {
            dv.axpy(1.0, &buoyancy_from_entropy(s, reference, g));
        }
        Ok(FlowState {
            u: du,
            v: dv,
            phi: dphi,
            t,
        })
    }

    /// Time step the controller would take now, ignoring output times.
    pub fn suggested_dt(&self) -> f64 {
        let dt = match self.opts.step {
            StepControl::Fixed(dt) => dt,
            StepControl::Cfl(cfl) => compute_dt(&self.state.u, &self.state.v, &self.grid, cfl),
        };
        self.opts.dt_max.map_or(dt, |m| dt.min(m))
    }

    /// Advances by exactly `dt`.
    pub fn step(&mut self, dt: f64) -> Result<()> {
        let t = self.state.t;
        if !dt.is_finite() {
            return Err(Error::BlowUp {
                time: t,
                reason: BlowUpReason::NonFinite,
            });
        }
        // Velocities growing without bound drive the CFL step to zero long
        // before they overflow.
        if !(t + dt > t) {
            return Err(Error::BlowUp {
                time: t,
                reason: BlowUpReason::StepUnderflow,
            });
        }
        let exact = self.exact;
        let exact_dyn = exact.as_ref().map(|e| e as &dyn ExactSolution);
        let grid = &self.grid;
        let projection = self.projection.as_ref();
        let rho = &self.rho;
        let mut pressure = None;
        let this = &*self;
        let next = ssp_rk3_step(
            &this.state,
            t,
            dt,
            |ts, y| this.rhs(ts, y),
            |m, y| {
                // Stage outputs live at t + dt, t + dt/2 and t + dt.
                y.t = t + if m == 1 { 0.5 * dt } else { dt };
                if let Some(p) = projection {
                    y.fill_ghosts(grid, exact_dyn)?;
                    let phi = p.project(&mut y.u, &mut y.v, rho, grid)?;
                    if m == 2 {
                        pressure = Some(phi);
                    }
                }
                y.fill_ghosts(grid, exact_dyn)?;
                if !y.all_finite() {
                    return Err(Error::BlowUp {
                        time: y.t,
                        reason: BlowUpReason::NonFinite,
                    });
                }
                Ok(())
            },
        )?;
        if let Some(mut phi) = pressure {
            // The last stage advances by (2/3) dt.
            let scale = 1.0 / (SSP_RK3_STAGES[2].1 * dt);
            phi.data_mut().iter_mut().for_each(|p| *p *= scale);
            self.pressure = Some(phi);
        }
        self.state = next;
        self.state.t = t + dt;
        self.steps += 1;
        Ok(())
    }

    /// Integrates to `t_target`, shortening the last step to land on it.
    pub fn advance_to(&mut self, t_target: f64) -> Result<()> {
        while self.state.t < t_target {
            self.step_toward(t_target)?;
        }
        Ok(())
    }

    /// One controller step, shortened if needed so as not to pass
    /// `t_target`. Does nothing once `t_target` is reached.
    pub fn step_toward(&mut self, t_target: f64) -> Result<()> {
        if self.state.t >= t_target {
            return Ok(());
        }
        let remaining = t_target - self.state.t;
        let mut dt = self.suggested_dt();
        // Avoid a sliver step from round-off in fixed-dt runs.
        if dt >= remaining * (1.0 - 1e-9) {
            dt = remaining;
        }
        self.step(dt)?;
        if dt == remaining {
            self.state.t = t_target;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagnostics::l1_error;
    use crate::grid::{Component, NodeKind};
    use crate::momentum::Scheme;

    #[test]
    fn dt_examples() {
        let g = crate::grid::build_grid(
            crate::grid::Bounds::square(0.0, 1.6),
            16,
            16,
            crate::grid::BoundaryKind::PeriodicBoth,
            1,
        )
        .unwrap();
        let u = Field::filled(&g, NodeKind::UFace, 1.0);
        let v = Field::zeros(&g, NodeKind::VFace);
        assert!((compute_dt(&u, &v, &g, 0.1) - 0.01).abs() < 1e-15);
        let u0 = Field::zeros(&g, NodeKind::UFace);
        assert!(compute_dt(&u0, &v, &g, 0.1) > 1e12);
    }

    #[test]
    fn zero_rhs_leaves_state() {
        let y = vec![1.0, -2.0, 3.5];
        let out = ssp_rk3_step(
            &y,
            0.0,
            0.1,
            |_, y: &Vec<f64>| Ok::<_, ()>(vec![0.0; y.len()]),
            |_, _| Ok(()),
        )
        .unwrap();
        assert_eq!(out, y);
    }

    #[test]
    fn linear_ode_step_is_cubic_taylor() {
        let (lam, dt) = (-1.3, 0.2);
        let out = ssp_rk3_step(
            &vec![1.0],
            0.0,
            dt,
            |_, y: &Vec<f64>| Ok::<_, ()>(vec![lam * y[0]]),
            |_, _| Ok(()),
        )
        .unwrap();
        let z: f64 = lam * dt;
        let taylor = 1.0 + z + z * z / 2.0 + z * z * z / 6.0;
        assert!((out[0] - taylor).abs() < 1e-15);
    }

    #[test]
    fn nonautonomous_ode_is_third_order() {
        // y' = cos(t) y, y(0) = 1, y = exp(sin t)
        let solve = |n: usize| {
            let dt = 1.0 / n as f64;
            let mut y = vec![1.0];
            for s in 0..n {
                y = ssp_rk3_step(
                    &y,
                    s as f64 * dt,
                    dt,
                    |t, y: &Vec<f64>| Ok::<_, ()>(vec![t.cos() * y[0]]),
                    |_, _| Ok(()),
                )
                .unwrap();
            }
            (y[0] - 1f64.sin().exp()).abs()
        };
        let rate = (solve(20) / solve(40)).log2();
        assert!((rate - 3.0).abs() < 0.2, "{rate}");
    }

    fn opts(spec: &CaseSpec, scheme: Scheme, k: usize) -> RunOptions {
        RunOptions::for_case(spec, SchemeConfig::new(scheme, k))
    }

    #[test]
    fn zero_state_stays_zero() {
        let spec = CaseSpec::get(CaseName::ShearLayer);
        let o = opts(&spec, Scheme::HighOrderWeno, 3);
        let g = spec.grid(16, 16, o.scheme.required_halo()).unwrap();
        let mut sim = Simulation::with_state(
            spec,
            g.clone(),
            RunOptions {
                step: StepControl::Fixed(0.1),
                ..o
            },
            FlowState::zeros(&g, false),
        )
        .unwrap();
        for _ in 0..3 {
            sim.step(0.1).unwrap();
        }
        assert_eq!(sim.state().u.max_abs_interior(), 0.0);
        assert_eq!(sim.state().v.max_abs_interior(), 0.0);
    }

    #[test]
    fn stages_leave_discretely_divergence_free_velocity() {
        let spec = CaseSpec::get(CaseName::TaylorVortex);
        let o = opts(&spec, Scheme::HighOrderWeno, 3);
        let mut sim = Simulation::new(spec, 36, 36, o).unwrap();
        let p = sim.projection().unwrap().clone();
        let before = p
            .divergence(&sim.state().u, &sim.state().v, sim.density(), sim.grid())
            .max_abs_interior();
        sim.step(1e-3).unwrap();
        let after = p
            .divergence(&sim.state().u, &sim.state().v, sim.density(), sim.grid())
            .max_abs_interior();
        let scale = sim.state().u.max_abs_interior() / sim.grid().dx;
        assert!(after <= 1e-11 * before.max(scale), "{after} {before}");
        assert!(sim.pressure().is_some());
    }

    #[test]
    fn advance_lands_on_target_time() {
        let spec = CaseSpec::get(CaseName::TaylorVortex);
        let o = opts(&spec, Scheme::Morinishi4, 3);
        let mut sim = Simulation::new(
            spec,
            24,
            24,
            RunOptions {
                step: StepControl::Fixed(3e-4),
                ..o
            },
        )
        .unwrap();
        sim.advance_to(1e-3).unwrap();
        assert_eq!(sim.time(), 1e-3);
        assert_eq!(sim.steps(), 4);
    }

    #[test]
    fn nonfinite_state_reports_blow_up() {
        let spec = CaseSpec::get(CaseName::ShearLayer);
        let o = opts(&spec, Scheme::Morinishi6, 3);
        let g = spec.grid(16, 16, o.scheme.required_halo()).unwrap();
        let mut s = FlowState::zeros(&g, false);
        s.u.set(3, 3, f64::NAN);
        let mut sim = Simulation::with_state(
            spec,
            g,
            RunOptions {
                project: false,
                ..o
            },
            s,
        )
        .unwrap();
        assert!(matches!(
            sim.step(0.01),
            Err(Error::BlowUp {
                reason: BlowUpReason::NonFinite,
                ..
            })
        ));
    }

    #[test]
    fn vanishing_step_reports_blow_up() {
        let spec = CaseSpec::get(CaseName::ShearLayer);
        let o = opts(&spec, Scheme::Morinishi6, 3);
        let g = spec.grid(16, 16, o.scheme.required_halo()).unwrap();
        let mut s = FlowState::zeros(&g, false);
        s.t = 1.0;
        let mut sim = Simulation::with_state(
            spec,
            g,
            RunOptions {
                project: false,
                ..o
            },
            s,
        )
        .unwrap();
        let err = sim.step(1e-17).unwrap_err();
        assert!(
            matches!(err, Error::BlowUp { time, reason: BlowUpReason::StepUnderflow } if time == 1.0)
        );
        sim.step(1e-15).unwrap();
    }

    #[test]
    fn manufactured_dirichlet_short_run_tracks_exact_solution() {
        let spec = CaseSpec::get(CaseName::DirichletManufactured);
        let o = opts(&spec, Scheme::HighOrderWeno, 3);
        let mut sim = Simulation::new(
            spec,
            16,
            16,
            RunOptions {
                step: StepControl::Fixed(1e-3),
                ..o
            },
        )
        .unwrap();
        sim.advance_to(0.01).unwrap();
        let e = crate::cases::CaseExact(CaseName::DirichletManufactured);
        let err = l1_error(
            &sim.state().u,
            |x, y| e.value(Component::U, x, y, 0.01),
            sim.grid(),
        );
        assert!(err < 1e-4, "{err}");
    }
}
