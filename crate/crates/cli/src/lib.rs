//! Run orchestration behind the `stagflow` binary.
//!
//! Every command resolves a [`RunConfig`] from an optional config file with
//! command-line overrides, then writes its results as text files into the
//! output directory.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use stagflow::cases::{CaseName, CaseSpec};
use stagflow::experiments::{
    errors_against_exact, errors_against_reference, reference_solution, ErrorRow, ErrorTable,
};
use stagflow::io::config::{build_config, parse_pairs};
use stagflow::io::{
    format_bench_table, format_error_table, write_field_dump, BenchRow, FieldDump, RunConfig,
};
use stagflow::momentum::Scheme;
use stagflow::time::Simulation;
use stagflow::{BlowUpReason, Error, Result};

/// Output directory when neither the file nor the flags name one.
pub const DEFAULT_OUTPUT: &str = "stagflow_out";

/// Merges `overrides` over the pairs of `file_text`. A `cfl` override drops
/// a file `dt` and vice versa, so the flag wins instead of conflicting.
pub fn merge_pairs(
    file_text: Option<&str>,
    overrides: &[(&str, String)],
) -> Result<BTreeMap<String, String>> {
    let mut map = match file_text {
        Some(text) => parse_pairs(text)?,
        None => BTreeMap::new(),
    };
    for (key, value) in overrides {
        stagflow::io::config::check_key(key)?;
        match *key {
            "cfl" => {
                map.remove("dt");
            }
            "dt" => {
                map.remove("cfl");
            }
            _ => {}
        }
        map.insert(key.to_string(), value.clone());
    }
    Ok(map)
}

/// `n x n` version of `map`, validated.
fn at_resolution(map: &BTreeMap<String, String>, n: usize) -> Result<RunConfig> {
    let mut m = map.clone();
    m.insert("nx".into(), n.to_string());
    m.insert("ny".into(), n.to_string());
    build_config(&m)
}

fn with_scheme(map: &BTreeMap<String, String>, scheme: Scheme) -> BTreeMap<String, String> {
    let mut m = map.clone();
    m.insert("scheme".into(), scheme.to_string());
    m
}

fn output_dir(cfg: &RunConfig) -> PathBuf {
    cfg.output
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT))
}

/// `<case>_<scheme>_k<k>_<nx>x<ny>_t<time>.txt`
pub fn dump_name(cfg: &RunConfig, time: f64) -> String {
    format!(
        "{}_{}_k{}_{}x{}_t{time:.6}.txt",
        cfg.case, cfg.scheme, cfg.k, cfg.nx, cfg.ny
    )
}

fn dump(sim: &Simulation, cfg: &RunConfig, dir: &Path) -> Result<PathBuf> {
    let path = dir.join(dump_name(cfg, sim.time()));
    write_field_dump(&FieldDump::from_simulation(sim, true), &path)?;
    Ok(path)
}

/// Dump times: every `dump_interval` up to `t_end`, which is always included.
pub fn dump_times(cfg: &RunConfig) -> Vec<f64> {
    let mut times = vec![];
    if let Some(d) = cfg.dump_interval {
        let mut m = 1u32;
        while f64::from(m) * d < cfg.t_end {
            times.push(f64::from(m) * d);
            m += 1;
        }
    }
    times.push(cfg.t_end);
    times
}

/// Integrates `sim` to the config's end time, dumping the initial state and
/// every dump time. Returns the dump paths in order.
pub fn run_simulation(mut sim: Simulation, cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    let dir = output_dir(cfg);
    fs::create_dir_all(&dir)?;
    let mut written = vec![dump(&sim, cfg, &dir)?];
    for t in dump_times(cfg) {
        if t > sim.time() {
            sim.advance_to(t)?;
            written.push(dump(&sim, cfg, &dir)?);
        }
    }
    Ok(written)
}

/// `run`: one config from its case's initial state.
pub fn run(map: &BTreeMap<String, String>) -> Result<Vec<PathBuf>> {
    let cfg = build_config(map)?;
    let sim = Simulation::new(cfg.spec(), cfg.nx, cfg.ny, cfg.options())?;
    run_simulation(sim, &cfg)
}

/// Errors of one run: against the exact solution when the case has one,
/// otherwise against `reference`.
fn errors(sim: &Simulation, reference: Option<&Simulation>) -> Result<Option<ErrorRow>> {
    if sim.spec().has_exact_solution() {
        errors_against_exact(sim).map(Some)
    } else {
        reference
            .map(|r| errors_against_reference(sim, r))
            .transpose()
    }
}

/// Reference run for cases without a closed-form solution.
fn reference_for(
    map: &BTreeMap<String, String>,
    reference_n: Option<usize>,
) -> Result<Option<Simulation>> {
    let case: CaseName = map
        .get("case")
        .ok_or_else(|| Error::Config("missing required key 'case'".into()))?
        .parse()?;
    if CaseSpec::get(case).has_exact_solution() {
        return Ok(None);
    }
    let n = reference_n.ok_or_else(|| {
        Error::Config(format!(
            "case {case} has no exact solution; give a reference resolution"
        ))
    })?;
    let cfg = at_resolution(map, n)?;
    reference_solution(cfg.spec(), n, cfg.t_end).map(Some)
}

/// `convergence`: the error table over `ns`, written to
/// `<output>/<case>_<scheme>_k<k>_convergence.txt`.
pub fn convergence(
    map: &BTreeMap<String, String>,
    ns: &[usize],
    reference_n: Option<usize>,
) -> Result<(PathBuf, ErrorTable)> {
    if ns.is_empty() {
        return Err(Error::Config("no resolutions given".into()));
    }
    let reference = reference_for(map, reference_n)?;
    let mut table = ErrorTable::default();
    let mut first = None;
    for &n in ns {
        let cfg = at_resolution(map, n)?;
        let mut sim = Simulation::new(cfg.spec(), n, n, cfg.options())?;
        sim.advance_to(cfg.t_end)?;
        let row = errors(&sim, reference.as_ref())?
            .ok_or_else(|| Error::Config("no error norm available".into()))?;
        table.rows.push(row);
        first.get_or_insert(cfg);
    }
    let cfg = first.expect("ns is not empty");
    let mut comments = vec![
        format!("case = {}", cfg.case),
        format!("scheme = {}", cfg.scheme),
        format!("k = {}", cfg.k),
        format!("tend = {:?}", cfg.t_end),
    ];
    if let Some(r) = reference_n.filter(|_| reference.is_some()) {
        comments.push(format!("reference = morinishi6 {r}x{r}"));
    }
    let dir = output_dir(&cfg);
    fs::create_dir_all(&dir)?;
    let path = dir.join(format!(
        "{}_{}_k{}_convergence.txt",
        cfg.case, cfg.scheme, cfg.k
    ));
    fs::write(&path, format_error_table(&table, &comments))?;
    Ok((path, table))
}

/// Outcome of one scheme in `compare`.
#[derive(Debug)]
pub struct CompareOutcome {
    pub scheme: Scheme,
    pub dumps: Vec<PathBuf>,
    /// Time and cause, if the scheme did not reach the end.
    pub blow_up: Option<(f64, BlowUpReason)>,
}

/// `compare`: the same case under several schemes, with dumps at the
/// shared dump times. A blow-up ends that scheme's run only.
pub fn compare(map: &BTreeMap<String, String>, schemes: &[Scheme]) -> Result<Vec<CompareOutcome>> {
    let mut out = vec![];
    for &scheme in schemes {
        let cfg = build_config(&with_scheme(map, scheme))?;
        let mut sim = Simulation::new(cfg.spec(), cfg.nx, cfg.ny, cfg.options())?;
        let dir = output_dir(&cfg);
        fs::create_dir_all(&dir)?;
        let mut dumps = vec![dump(&sim, &cfg, &dir)?];
        let mut blow_up = None;
        for t in dump_times(&cfg) {
            match sim.advance_to(t) {
                Ok(()) => dumps.push(dump(&sim, &cfg, &dir)?),
                Err(Error::BlowUp { time, reason }) => {
                    blow_up = Some((time, reason));
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        out.push(CompareOutcome {
            scheme,
            dumps,
            blow_up,
        });
    }
    Ok(out)
}

/// `bench`: wall time and errors for every scheme and resolution, written
/// to `<output>/<case>_bench.txt`. Blown-up runs are skipped with a comment.
pub fn bench(
    map: &BTreeMap<String, String>,
    schemes: &[Scheme],
    ns: &[usize],
    reference_n: Option<usize>,
) -> Result<(PathBuf, Vec<BenchRow>)> {
    let reference = match reference_n {
        Some(_) => reference_for(map, reference_n)?,
        None => None,
    };
    let mut rows = vec![];
    let mut skipped = vec![];
    let mut case = None;
    let mut dir = None;
    for &scheme in schemes {
        let m = with_scheme(map, scheme);
        for &n in ns {
            let cfg = at_resolution(&m, n)?;
            let start = Instant::now();
            let mut sim = Simulation::new(cfg.spec(), n, n, cfg.options())?;
            match sim.advance_to(cfg.t_end) {
                Ok(()) => {}
                Err(Error::BlowUp { time, .. }) => {
                    skipped.push(format!(
                        "# {scheme} k={} n={n}: blow-up at t = {time}",
                        cfg.k
                    ));
                    continue;
                }
                Err(e) => return Err(e),
            }
            let seconds = start.elapsed().as_secs_f64();
            rows.push(BenchRow {
                case: cfg.case.to_string(),
                scheme: scheme.to_string(),
                k: cfg.k,
                n,
                seconds,
                errors: errors(&sim, reference.as_ref())?,
            });
            case.get_or_insert(cfg.case);
            dir.get_or_insert_with(|| output_dir(&cfg));
        }
    }
    let dir = dir.unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT));
    fs::create_dir_all(&dir)?;
    let name = case.map_or_else(
        || "bench.txt".to_string(),
        |c: CaseName| format!("{c}_bench.txt"),
    );
    let path = dir.join(name);
    let mut text = format_bench_table(&rows);
    for s in skipped {
        text.push_str(&s);
        text.push('\n');
    }
    fs::write(&path, text)?;
    Ok((path, rows))
}

/// Process exit code for an error: 2 for configuration, 3 for blow-up.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::InvalidScheme(_) | Error::InvalidGrid(_) => 2,
        Error::BlowUp { .. } => 3,
        _ => 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(text: &str) -> BTreeMap<String, String> {
        parse_pairs(text).unwrap()
    }

    #[test]
    fn flag_step_replaces_file_step() {
        let m = merge_pairs(Some("dt = 1e-3\ntend = 1"), &[("cfl", "0.2".into())]).unwrap();
        assert_eq!(m.get("cfl").map(String::as_str), Some("0.2"));
        assert!(!m.contains_key("dt"));
        assert_eq!(m["tend"], "1");
    }

    #[test]
    fn unknown_override_is_rejected() {
        assert!(matches!(
            merge_pairs(None, &[("speed", "1".into())]),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn dump_times_end_exactly_at_tend() {
        let mut cfg = RunConfig::for_case(CaseName::TaylorVortex, Scheme::HighOrderWeno, 3);
        assert_eq!(dump_times(&cfg), vec![0.01]);
        cfg.dump_interval = Some(0.004);
        assert_eq!(dump_times(&cfg), vec![0.004, 0.008, 0.01]);
        cfg.dump_interval = Some(0.005);
        assert_eq!(dump_times(&cfg), vec![0.005, 0.01]);
    }

    #[test]
    fn resolution_override() {
        let m = pairs("case = taylor_vortex\nscheme = hiweno\nk = 3\ndt = 1e-4\ntend = 0.01");
        let cfg = at_resolution(&m, 36).unwrap();
        assert_eq!((cfg.nx, cfg.ny), (36, 36));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Config("x".into())), 2);
        assert_eq!(
            exit_code(&Error::BlowUp {
                time: 1.0,
                reason: stagflow::BlowUpReason::NonFinite
            }),
            3
        );
        assert_eq!(exit_code(&Error::VariableDensity), 1);
    }

    #[test]
    fn reference_required_without_exact_solution() {
        let m = pairs("case = taylor_vortex\nscheme = hiweno\nk = 3\ndt = 1e-4\ntend = 0.01");
        assert!(matches!(
            convergence(&m, &[12], None),
            Err(Error::Config(_))
        ));
    }
}
