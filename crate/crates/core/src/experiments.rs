//! Convergence sweeps against exact or reference solutions, and run-level
//! diagnostics.

use crate::cases::{CaseName, CaseSpec};
use crate::diagnostics::{eoc, l1_distance, l1_error, sample_coincident, vorticity};
use crate::error::{Error, Result};
use crate::grid::{Component, ExactSolution};
use crate::momentum::{Scheme, SchemeConfig};
use crate::thermo::total_entropy;
use crate::time::{RunOptions, Simulation};

/// L1 errors of one run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorRow {
    pub n: usize,
    pub l1_u: f64,
    pub l1_v: f64,
    pub l1_phi: Option<f64>,
}

/// Errors over a resolution sweep, finest last.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ErrorTable {
    pub rows: Vec<ErrorRow>,
}

impl ErrorTable {
    fn column_eoc(&self, col: impl Fn(&ErrorRow) -> f64) -> Vec<f64> {
        let errs: Vec<f64> = self.rows.iter().map(col).collect();
        let ns: Vec<usize> = self.rows.iter().map(|r| r.n).collect();
        eoc(&errs, &ns).expect("columns have equal length")
    }

    pub fn eoc_u(&self) -> Vec<f64> {
        self.column_eoc(|r| r.l1_u)
    }

    pub fn eoc_v(&self) -> Vec<f64> {
        self.column_eoc(|r| r.l1_v)
    }

    /// `None` unless every row carries a scalar error.
    pub fn eoc_phi(&self) -> Option<Vec<f64>> {
        if self.rows.iter().all(|r| r.l1_phi.is_some()) {
            Some(self.column_eoc(|r| r.l1_phi.unwrap_or(f64::NAN)))
        } else {
            None
        }
    }
}

/// Builds and integrates `spec` at `n x n` to `t_end`.
pub fn run_case(spec: CaseSpec, n: usize, opts: RunOptions, t_end: f64) -> Result<Simulation> {
    let mut sim = Simulation::new(spec, n, n, opts)?;
    sim.advance_to(t_end)?;
    Ok(sim)
}

/// Errors of `sim` against its case's closed-form solution at the current time.
pub fn errors_against_exact(sim: &Simulation) -> Result<ErrorRow> {
    let exact = sim
        .spec()
        .exact()
        .ok_or_else(|| Error::Unsupported(sim.spec().name.to_string(), "an exact solution"))?;
    let (g, s, t) = (sim.grid(), sim.state(), sim.time());
    let at = |c| move |x, y| exact.value(c, x, y, t);
    Ok(ErrorRow {
        n: g.nx,
        l1_u: l1_error(&s.u, at(Component::U), g),
        l1_v: l1_error(&s.v, at(Component::V), g),
        l1_phi: s
            .phi
            .as_ref()
            .map(|p| l1_error(p, at(Component::Scalar), g)),
    })
}

/// Errors of `sim` against a finer run, compared at coincident nodes.
pub fn errors_against_reference(sim: &Simulation, reference: &Simulation) -> Result<ErrorRow> {
    let (g, s) = (sim.grid(), sim.state());
    let (fg, fs) = (reference.grid(), reference.state());
    let dist = |a: &crate::grid::Field, b: &crate::grid::Field| -> Result<f64> {
        l1_distance(a, &sample_coincident(b, fg, g)?, g)
    };
    Ok(ErrorRow {
        n: g.nx,
        l1_u: dist(&s.u, &fs.u)?,
        l1_v: dist(&s.v, &fs.v)?,
        l1_phi: match (&s.phi, &fs.phi) {
            (Some(a), Some(b)) => Some(dist(a, b)?),
            _ => None,
        },
    })
}

/// Sixth-order central run at `fine_n`, used where no exact solution exists.
pub fn reference_solution(spec: CaseSpec, fine_n: usize, t_end: f64) -> Result<Simulation> {
    let opts = RunOptions::for_case(&spec, SchemeConfig::new(Scheme::Morinishi6, 3));
    run_case(spec, fine_n, opts, t_end)
}

/// Runs `opts` at each resolution in `ns` and tabulates the errors at
/// `t_end`, against the exact solution or against `reference`.
pub fn convergence(
    spec: CaseSpec,
    opts: RunOptions,
    ns: &[usize],
    t_end: f64,
    reference: Option<&Simulation>,
) -> Result<ErrorTable> {
    let mut table = ErrorTable::default();
    for &n in ns {
        let sim = run_case(spec, n, opts, t_end)?;
        table.rows.push(match reference {
            Some(r) => errors_against_reference(&sim, r)?,
            None => errors_against_exact(&sim)?,
        });
    }
    Ok(table)
}

/// Largest cell-centred vorticity magnitude.
pub fn max_vorticity(sim: &Simulation) -> f64 {
    let s = sim.state();
    vorticity(&s.u, &s.v, sim.grid()).max_abs_interior()
}

/// `sum rho0 s dx dy` for the density current; `None` for other cases.
pub fn entropy_total(sim: &Simulation) -> Option<f64> {
    if sim.spec().name != CaseName::Straka {
        return None;
    }
    sim.state()
        .phi
        .as_ref()
        .map(|s| total_entropy(s, sim.density(), sim.grid()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::StepControl;

    #[test]
    fn self_reference_has_zero_error() {
        let spec = CaseSpec::get(CaseName::TaylorVortex);
        let opts = RunOptions::for_case(&spec, SchemeConfig::new(Scheme::Morinishi4, 2));
        let sim = run_case(spec, 12, opts, 3e-4).unwrap();
        let row = errors_against_reference(&sim, &sim).unwrap();
        assert_eq!((row.l1_u, row.l1_v, row.l1_phi), (0.0, 0.0, None));
    }

    #[test]
    fn coarse_run_against_reference_needs_odd_ratio() {
        let spec = CaseSpec::get(CaseName::TaylorVortex);
        let opts = RunOptions::for_case(&spec, SchemeConfig::new(Scheme::Morinishi4, 2));
        let fine = run_case(spec, 24, opts, 1e-4).unwrap();
        let coarse = run_case(spec, 12, opts, 1e-4).unwrap();
        assert!(errors_against_reference(&coarse, &fine).is_err());
    }

    #[test]
    fn exact_errors_need_a_manufactured_case() {
        let spec = CaseSpec::get(CaseName::ShearLayer);
        let opts = RunOptions::for_case(&spec, SchemeConfig::new(Scheme::Morinishi4, 2));
        let sim = Simulation::new(spec, 8, 8, opts).unwrap();
        assert!(errors_against_exact(&sim).is_err());
        assert_eq!(entropy_total(&sim), None);
    }

    #[test]
    fn initial_manufactured_state_is_exact() {
        let spec = CaseSpec::get(CaseName::PassiveScalar);
        let opts = RunOptions::for_case(&spec, SchemeConfig::new(Scheme::HighOrderWeno, 3));
        let sim = Simulation::new(spec, 16, 16, opts).unwrap();
        let row = errors_against_exact(&sim).unwrap();
        assert_eq!((row.l1_u, row.l1_v, row.l1_phi), (0.0, 0.0, Some(0.0)));
    }

    #[test]
    fn table_eoc_columns() {
        let table = ErrorTable {
            rows: vec![
                ErrorRow {
                    n: 16,
                    l1_u: 1e-2,
                    l1_v: 4e-2,
                    l1_phi: Some(1.0),
                },
                ErrorRow {
                    n: 32,
                    l1_u: 1e-4,
                    l1_v: 1e-2,
                    l1_phi: Some(0.5),
                },
            ],
        };
        assert!((table.eoc_u()[0] - 6.6439).abs() < 1e-4);
        assert!((table.eoc_v()[0] - 2.0).abs() < 1e-12);
        assert!((table.eoc_phi().unwrap()[0] - 1.0).abs() < 1e-12);
        let partial = ErrorTable {
            rows: vec![
                ErrorRow {
                    l1_phi: None,
                    ..table.rows[0]
                },
                table.rows[1],
            ],
        };
        assert_eq!(partial.eoc_phi(), None);
    }

    #[test]
    fn sweep_errors_shrink_under_refinement() {
        let spec = CaseSpec::get(CaseName::DirichletManufactured);
        let mut opts = RunOptions::for_case(&spec, SchemeConfig::new(Scheme::HighOrderWeno, 3));
        opts.step = StepControl::Fixed(1e-3);
        let table = convergence(spec, opts, &[12, 24], 0.01, None).unwrap();
        assert_eq!(table.rows.len(), 2);
        assert!(table.eoc_u()[0] > 3.0, "{:?}", table);
    }
}
