//! Flat `key = value` run configuration.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::cases::{CaseName, CaseSpec, StepControl};
use crate::error::{Error, Result};
use crate::momentum::{CentralWidth, FluxKind, Scheme, SchemeConfig};
use crate::pressure::PressureSymbol;
use crate::time::RunOptions;

/// Every key a config may contain.
pub const KEYS: [&str; 13] = [
    "case",
    "scheme",
    "k",
    "nx",
    "ny",
    "cfl",
    "dt",
    "tend",
    "output",
    "dump_interval",
    "pressure_symbol",
    "pressel_central_width",
    "flux",
];

const REQUIRED: [&str; 6] = ["case", "scheme", "k", "nx", "ny", "tend"];

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub case: CaseName,
    pub scheme: Scheme,
    pub k: usize,
    pub nx: usize,
    pub ny: usize,
    pub step: StepControl,
    pub t_end: f64,
    pub output: Option<PathBuf>,
    /// Simulated time between dumps; only the final state is dumped when unset.
    pub dump_interval: Option<f64>,
    pub pressure_symbol: PressureSymbol,
    pub pressel_central_width: CentralWidth,
    pub flux: FluxKind,
}

impl RunConfig {
    /// Defaults of `case` with the given scheme, at the case's resolution.
    pub fn for_case(case: CaseName, scheme: Scheme, k: usize) -> Self {
        let spec = CaseSpec::get(case);
        Self {
            case,
            scheme,
            k,
            nx: spec.default_n,
            ny: spec.default_n,
            step: spec.step,
            t_end: spec.t_end,
            output: None,
            dump_interval: None,
            pressure_symbol: PressureSymbol::Modified,
            pressel_central_width: CentralWidth::Full,
            flux: FluxKind::Upwind,
        }
    }

    pub fn spec(&self) -> CaseSpec {
        CaseSpec::get(self.case)
    }

    pub fn scheme_config(&self) -> SchemeConfig {
        SchemeConfig {
            flux: self.flux,
            pressel_width: self.pressel_central_width,
            ..SchemeConfig::new(self.scheme, self.k)
        }
    }

    pub fn options(&self) -> RunOptions {
        RunOptions {
            step: self.step,
            symbol: self.pressure_symbol,
            ..RunOptions::for_case(&self.spec(), self.scheme_config())
        }
    }

    /// Canonical text form; parses back to `self`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut put = |k: &str, v: String| out.push_str(&format!("{k} = {v}\n"));
        put("case", self.case.to_string());
        put("scheme", self.scheme.to_string());
        put("k", self.k.to_string());
        put("nx", self.nx.to_string());
        put("ny", self.ny.to_string());
        match self.step {
            StepControl::Cfl(c) => put("cfl", format!("{c:?}")),
            StepControl::Fixed(dt) => put("dt", format!("{dt:?}")),
        }
        put("tend", format!("{:?}", self.t_end));
        if let Some(o) = &self.output {
            put("output", o.display().to_string());
        }
        if let Some(d) = self.dump_interval {
            put("dump_interval", format!("{d:?}"));
        }
        put(
            "pressure_symbol",
            match self.pressure_symbol {
                PressureSymbol::Modified => "modified",
                PressureSymbol::Continuous => "continuous",
            }
            .into(),
        );
        put(
            "pressel_central_width",
            match self.pressel_central_width {
                CentralWidth::Full => "2k",
                CentralWidth::Reduced => "2k-2",
            }
            .into(),
        );
        put(
            "flux",
            match self.flux {
                FluxKind::Upwind => "upwind",
                FluxKind::Rusanov => "rusanov",
            }
            .into(),
        );
        out
    }
}

/// Splits config text into key/value pairs, rejecting unknown and repeated keys.
pub fn parse_pairs(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected 'key = value'", n + 1)))?;
        let (k, v) = (k.trim(), v.trim());
        check_key(k)?;
        if v.is_empty() {
            return Err(Error::Config(format!(
                "line {}: empty value for '{k}'",
                n + 1
            )));
        }
        if map.insert(k.to_string(), v.to_string()).is_some() {
            return Err(Error::Config(format!("key '{k}' given twice")));
        }
    }
    Ok(map)
}

pub fn check_key(key: &str) -> Result<()> {
    if KEYS.contains(&key) {
        Ok(())
    } else {
        Err(Error::Config(format!("unknown key '{key}'")))
    }
}

fn value<T: std::str::FromStr>(map: &BTreeMap<String, String>, key: &str) -> Result<Option<T>> {
    map.get(key)
        .map(|v| {
            v.parse::<T>()
                .map_err(|_| Error::Config(format!("invalid value '{v}' for '{key}'")))
        })
        .transpose()
}

/// An enum-valued key, or its default when absent.
fn named<T>(map: &BTreeMap<String, String>, key: &str) -> Result<T>
where
    T: std::str::FromStr<Err = Error> + Default,
{
    match map.get(key) {
        Some(v) => v.parse().map_err(|e: Error| Error::Config(e.to_string())),
        None => Ok(T::default()),
    }
}

fn positive(key: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(Error::Config(format!(
            "'{key}' must be positive and finite, got {v}"
        )))
    }
}

/// Validates a key/value map into a config.
pub fn build_config(map: &BTreeMap<String, String>) -> Result<RunConfig> {
    for key in map.keys() {
        check_key(key)?;
    }
    for key in REQUIRED {
        if !map.contains_key(key) {
            return Err(Error::Config(format!("missing required key '{key}'")));
        }
    }
    let req = |key: &str| map[key].as_str();
    let case: CaseName = req("case").parse()?;
    let scheme: Scheme = req("scheme")
        .parse()
        .map_err(|e: Error| Error::Config(e.to_string()))?;
    let k: usize = value(map, "k")?.unwrap_or_default();
    let nx: usize = value(map, "nx")?.unwrap_or_default();
    let ny: usize = value(map, "ny")?.unwrap_or_default();
    let step = match (value::<f64>(map, "cfl")?, value::<f64>(map, "dt")?) {
        (Some(_), Some(_)) => {
            return Err(Error::Config(
                "'cfl' and 'dt' are mutually exclusive".into(),
            ))
        }
        (None, None) => return Err(Error::Config("one of 'cfl' or 'dt' is required".into())),
        (Some(c), None) => StepControl::Cfl(positive("cfl", c)?),
        (None, Some(dt)) => StepControl::Fixed(positive("dt", dt)?),
    };
    let t_end = value::<f64>(map, "tend")?.unwrap_or_default();
    if !(t_end.is_finite() && t_end >= 0.0) {
        return Err(Error::Config(format!(
            "'tend' must be finite and non-negative, got {t_end}"
        )));
    }
    let dump_interval = value::<f64>(map, "dump_interval")?
        .map(|d| positive("dump_interval", d))
        .transpose()?;
    let cfg = RunConfig {
        case,
        scheme,
        k,
        nx,
        ny,
        step,
        t_end,
        output: map.get("output").map(PathBuf::from),
        dump_interval,
        pressure_symbol: named(map, "pressure_symbol")?,
        pressel_central_width: named(map, "pressel_central_width")?,
        flux: named(map, "flux")?,
    };
    let wrap = |e: Error| Error::Config(e.to_string());
    cfg.scheme_config().validate().map_err(wrap)?;
    let spec = cfg.spec();
    spec.grid(cfg.nx, cfg.ny, cfg.scheme_config().required_halo())
        .map_err(wrap)?;
    Ok(cfg)
}

/// Parses and validates config text.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    build_config(&parse_pairs(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAYLOR: &str = "case = taylor_vortex\nscheme = hiweno\nk = 3\nnx = 108\nny = 108\ndt = 0.0001\ntend = 0.01";

    fn config_err(text: &str) -> String {
        match parse_config(text) {
            Err(Error::Config(m)) => m,
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn taylor_vortex_example() {
        let c = parse_config(TAYLOR).unwrap();
        assert_eq!(c.case, CaseName::TaylorVortex);
        assert_eq!(c.scheme, Scheme::HighOrderWeno);
        assert_eq!((c.k, c.nx, c.ny), (3, 108, 108));
        assert_eq!(c.step, StepControl::Fixed(1e-4));
        assert_eq!(c.t_end, 0.01);
        assert_eq!(c.pressure_symbol, PressureSymbol::Modified);
        assert_eq!(c.output, None);
    }

    #[test]
    fn missing_case_names_the_key() {
        let text = TAYLOR.replace("case = taylor_vortex\n", "");
        assert!(config_err(&text).contains("'case'"));
    }

    #[test]
    fn cfl_and_dt_are_exclusive() {
        let text = format!("{TAYLOR}\ncfl = 0.2\n").replace("dt = 0.0001", "dt = 1e-5");
        assert!(config_err(&text).contains("mutually exclusive"));
        let none = TAYLOR.replace("dt = 0.0001\n", "");
        assert!(config_err(&none).contains("'cfl' or 'dt'"));
    }

    #[test]
    fn unknown_and_repeated_keys_fail() {
        assert!(config_err(&format!("{TAYLOR}\ncfl_number = 0.1")).contains("unknown key"));
        assert!(config_err(&format!("{TAYLOR}\nk = 2")).contains("twice"));
        // Keys are case-sensitive.
        assert!(config_err(&TAYLOR.replace("nx", "NX")).contains("unknown key 'NX'"));
    }

    #[test]
    fn bad_values_fail() {
        assert!(config_err(&TAYLOR.replace("hiweno", "weno9")).contains("weno9"));
        assert!(config_err(&TAYLOR.replace("k = 3", "k = 7")).contains("k = 7"));
        assert!(config_err(&TAYLOR.replace("dt = 0.0001", "dt = -1")).contains("positive"));
        assert!(config_err(&TAYLOR.replace("nx = 108", "nx = many")).contains("'nx'"));
        assert!(config_err("case taylor_vortex").contains("line 1"));
        assert!(config_err(&TAYLOR.replace("nx = 108", "nx = 4")).contains("halo"));
    }

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = format!(
            "# Taylor vortex sweep\n\n{}\n  # trailing\n",
            TAYLOR.replace("k = 3", "k = 3 # fifth order")
        );
        assert_eq!(parse_config(&text).unwrap(), parse_config(TAYLOR).unwrap());
    }

    #[test]
    fn optional_keys() {
        let text = format!(
            "{TAYLOR}\noutput = out/tv\ndump_interval = 0.005\npressure_symbol = continuous\npressel_central_width = 2k-2\nflux = rusanov"
        );
        let c = parse_config(&text).unwrap();
        assert_eq!(c.output, Some(PathBuf::from("out/tv")));
        assert_eq!(c.dump_interval, Some(0.005));
        assert_eq!(c.pressure_symbol, PressureSymbol::Continuous);
        assert_eq!(c.pressel_central_width, CentralWidth::Reduced);
        assert_eq!(c.flux, FluxKind::Rusanov);
        assert_eq!(c.options().symbol, PressureSymbol::Continuous);
        assert_eq!(c.scheme_config().pressel_width, CentralWidth::Reduced);
    }

    #[test]
    fn text_form_round_trips() {
        let mut c = RunConfig::for_case(CaseName::Straka, Scheme::PresselWeno, 2);
        c.output = Some(PathBuf::from("runs/straka"));
        c.dump_interval = Some(300.0);
        assert_eq!(parse_config(&c.to_text()).unwrap(), c);
        let c = parse_config(TAYLOR).unwrap();
        assert_eq!(parse_config(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn options_follow_the_case() {
        let c = RunConfig::for_case(CaseName::Straka, Scheme::HighOrderWeno, 3);
        let o = c.options();
        assert_eq!(o.dt_max, Some(1.0));
        assert_eq!(o.step, StepControl::Cfl(0.5));
        assert_eq!(o.pressure_order, 6);
        assert!(o.project);
    }
}
