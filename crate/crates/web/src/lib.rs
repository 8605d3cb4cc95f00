//! Browser demo: build a case, advance it, and read back a field for drawing.

use wasm_bindgen::prelude::*;

use stagflow::cases::{CaseName, CaseSpec};
use stagflow::diagnostics::vorticity;
use stagflow::momentum::{Scheme, SchemeConfig};
use stagflow::time::{RunOptions, Simulation};

fn js(e: stagflow::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// One running simulation.
#[wasm_bindgen]
pub struct Demo {
    sim: Simulation,
}

#[wasm_bindgen]
impl Demo {
    /// `case` and `scheme` take the names used by the command-line tool,
    /// e.g. `shear_layer` and `hiweno`.
    #[wasm_bindgen(constructor)]
    pub fn new(case: &str, scheme: &str, k: usize, n: usize) -> Result<Demo, JsError> {
        let case: CaseName = case.parse().map_err(js)?;
        let scheme: Scheme = scheme.parse().map_err(js)?;
        let spec = CaseSpec::get(case);
        let opts = RunOptions::for_case(&spec, SchemeConfig::new(scheme, k));
        let sim = Simulation::new(spec, n, n, opts).map_err(js)?;
        Ok(Demo { sim })
    }

    /// Takes up to `steps` steps of the case's own step control, stopping
    /// at the case's end time. Returns the new time; fails on blow-up.
    pub fn advance(&mut self, steps: usize) -> Result<f64, JsError> {
        let end = self.sim.spec().t_end;
        for _ in 0..steps {
            self.sim.step_toward(end).map_err(js)?;
        }
        Ok(self.sim.time())
    }

    /// Interior values of `u`, `v`, `phi`, `p` or `vort`, row by row from
    /// the bottom.
    pub fn field(&self, name: &str) -> Result<Vec<f64>, JsError> {
        self.pick(name).map(|f| f.interior())
    }

    /// `[columns, rows]` of [`Demo::field`].
    pub fn field_shape(&self, name: &str) -> Result<Vec<usize>, JsError> {
        self.pick(name).map(|f| vec![f.nx(), f.ny()])
    }

    pub fn time(&self) -> f64 {
        self.sim.time()
    }

    pub fn end_time(&self) -> f64 {
        self.sim.spec().t_end
    }

    pub fn steps(&self) -> usize {
        self.sim.steps()
    }
}

impl Demo {
    fn pick(&self, name: &str) -> Result<stagflow::grid::Field, JsError> {
        let s = self.sim.state();
        match name {
            "u" => Ok(s.u.clone()),
            "v" => Ok(s.v.clone()),
            "vort" => Ok(vorticity(&s.u, &s.v, self.sim.grid())),
            "phi" => s
                .phi
                .clone()
                .ok_or_else(|| JsError::new("this case carries no scalar")),
            "p" => self
                .sim
                .pressure()
                .cloned()
                .ok_or_else(|| JsError::new("no pressure before the first step")),
            other => Err(JsError::new(&format!("unknown field '{other}'"))),
        }
    }
}

/// Names accepted by [`Demo::new`], comma separated.
#[wasm_bindgen]
pub fn case_names() -> String {
    CaseName::ALL.map(CaseName::name).join(",")
}
