use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use stagflow::momentum::Scheme;
use stagflow::{Error, Result};
use stagflow_cli::{bench, compare, convergence, exit_code, merge_pairs, run};

/// Staggered-grid WENO solver for incompressible and anelastic test cases.
///
/// Thread count comes from STAGFLOW_THREADS (default: all cores). Exit
/// codes: 0 success, 2 configuration error, 3 numerical blow-up.
#[derive(Parser)]
#[command(name = "stagflow", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one configuration, dumping fields at intervals.
    Run(Keys),
    /// Sweep resolutions and write an error table.
    Convergence {
        #[command(flatten)]
        keys: Keys,
        /// Resolutions, coarsest first.
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        /// Resolution of the sixth-order central reference run, for cases
        /// without an exact solution.
        #[arg(long)]
        reference_n: Option<usize>,
    },
    /// Run several schemes on one case with aligned dumps.
    Compare {
        #[command(flatten)]
        keys: Keys,
        #[arg(long, value_delimiter = ',', required = true)]
        schemes: Vec<String>,
    },
    /// Record wall time and errors per scheme and resolution.
    Bench {
        #[command(flatten)]
        keys: Keys,
        #[arg(long, value_delimiter = ',', required = true)]
        schemes: Vec<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        ns: Vec<usize>,
        #[arg(long)]
        reference_n: Option<usize>,
    },
}

/// Config file plus per-key overrides; a flag wins over the file.
#[derive(Args)]
struct Keys {
    /// Flat `key = value` config file.
    #[arg(long, short)]
    config: Option<PathBuf>,
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    k: Option<String>,
    #[arg(long)]
    nx: Option<String>,
    #[arg(long)]
    ny: Option<String>,
    #[arg(long, conflicts_with = "dt")]
    cfl: Option<String>,
    #[arg(long)]
    dt: Option<String>,
    #[arg(long)]
    tend: Option<String>,
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    dump_interval: Option<String>,
    #[arg(long)]
    pressure_symbol: Option<String>,
    #[arg(long)]
    pressel_central_width: Option<String>,
    #[arg(long)]
    flux: Option<String>,
}

impl Keys {
    fn resolve(&self) -> Result<BTreeMap<String, String>> {
        let text = self
            .config
            .as_ref()
            .map(std::fs::read_to_string)
            .transpose()?;
        let flags = [
            ("case", &self.case),
            ("scheme", &self.scheme),
            ("k", &self.k),
            ("nx", &self.nx),
            ("ny", &self.ny),
            ("cfl", &self.cfl),
            ("dt", &self.dt),
            ("tend", &self.tend),
            ("output", &self.output),
            ("dump_interval", &self.dump_interval),
            ("pressure_symbol", &self.pressure_symbol),
            ("pressel_central_width", &self.pressel_central_width),
            ("flux", &self.flux),
        ];
        let overrides: Vec<(&str, String)> = flags
            .into_iter()
            .filter_map(|(k, v)| v.clone().map(|v| (k, v)))
            .collect();
        merge_pairs(text.as_deref(), &overrides)
    }
}

fn schemes(names: &[String]) -> Result<Vec<Scheme>> {
    names
        .iter()
        .map(|s| s.parse().map_err(|e: Error| Error::Config(e.to_string())))
        .collect()
}

fn init_threads() -> Result<()> {
    let Ok(v) = std::env::var("STAGFLOW_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        Error::Config(format!(
            "STAGFLOW_THREADS must be a positive integer, got '{v}'"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(e.to_string()))
}

fn execute(cli: Cli) -> Result<()> {
    init_threads()?;
    match cli.command {
        Command::Run(keys) => {
            for path in run(&keys.resolve()?)? {
                println!("{}", path.display());
            }
        }
        Command::Convergence {
            keys,
            ns,
            reference_n,
        } => {
            let (path, table) = convergence(&keys.resolve()?, &ns, reference_n)?;
            print!("{}", stagflow::io::format_error_table(&table, &[]));
            println!("wrote {}", path.display());
        }
        Command::Compare {
            keys,
            schemes: names,
        } => {
            let outcomes = compare(&keys.resolve()?, &schemes(&names)?)?;
            let mut first_blow_up = None;
            for o in &outcomes {
                match o.blow_up {
                    Some((time, reason)) => {
                        eprintln!("{}: blow-up at t = {time}: {reason}", o.scheme);
                        first_blow_up.get_or_insert((time, reason));
                    }
                    None => println!("{}: completed, {} dumps", o.scheme, o.dumps.len()),
                }
                for d in &o.dumps {
                    println!("  {}", d.display());
                }
            }
            if let Some((time, reason)) = first_blow_up {
                return Err(Error::BlowUp { time, reason });
            }
        }
        Command::Bench {
            keys,
            schemes: names,
            ns,
            reference_n,
        } => {
            let (path, rows) = bench(&keys.resolve()?, &schemes(&names)?, &ns, reference_n)?;
            print!("{}", stagflow::io::format_bench_table(&rows));
            println!("wrote {}", path.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("stagflow: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
