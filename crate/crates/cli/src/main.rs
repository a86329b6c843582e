use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ewit_core::certify::{assess, blockpos_probe};
use ewit_core::spectrum::min_eigenvalue;
use ewit_core::states::write_sweep_csv;
use ewit_core::{build_witness, Error, QubitCount, RhoFamily};

mod config;
mod plot;

use config::{Failure, RunConfig, Task};

/// Build, sweep, certify and plot N-qubit entanglement witnesses.
#[derive(Debug, Parser)]
#[command(name = "ewit", version)]
pub struct Cli {
    /// Worker threads for parallel sweeps and restarts.
    #[arg(long, global = true, env = "RAYON_NUM_THREADS")]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Export W_N in DyadicCoordinate format.
    Build {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate spectra and witness values of rho_t over a uniform t grid.
    Sweep {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        grid: GridArgs,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every certificate and write the JSON report.
    Certify {
        #[arg(long)]
        n: u32,
        /// JSON destination; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// See-saw search for a negative product expectation.
    Probe {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 200)]
        restarts: usize,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Render sweep CSV columns as an SVG line plot.
    Plot {
        /// Sweep CSV to read.
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Comma-separated columns; every non-t column when omitted.
        #[arg(long, value_delimiter = ',')]
        columns: Vec<String>,
        /// Divide each column by its largest absolute value.
        #[arg(long)]
        normalize: bool,
    },
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long = "t-min", default_value_t = -1.5, allow_negative_numbers = true)]
    t_min: f64,
    #[arg(long = "t-max", default_value_t = 1.5, allow_negative_numbers = true)]
    t_max: f64,
    #[arg(long, default_value_t = 61)]
    steps: usize,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match RunConfig::from_cli(cli).and_then(run) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("ewit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cfg: RunConfig) -> Result<(), Failure> {
    if let Some(threads) = cfg.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure::invalid(format!("thread pool: {e}")))?;
    }
    match cfg.task {
        Task::Build { n, out } => cmd_build(n, out.as_deref()),
        Task::Sweep {
            n,
            t_min,
            t_max,
            steps,
            out,
        } => cmd_sweep(n, t_min, t_max, steps, out.as_deref()),
        Task::Certify { n, out } => cmd_certify(n, out.as_deref()),
        Task::Probe {
            n,
            restarts,
            iters,
            seed,
        } => cmd_probe(n, restarts, iters, seed),
        Task::Plot {
            input,
            out,
            columns,
            normalize,
        } => plot::cmd_plot(&input, &out, &columns, normalize),
    }
}

fn open_out(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn write_to(out: Option<&Path>, f: impl FnOnce(&mut dyn Write) -> ewit_core::Result<()>) -> Result<(), Failure> {
    match out {
        Some(path) => {
            let mut w = open_out(path)?;
            f(&mut w)?;
            w.flush().map_err(|e| Failure::io(e.to_string()))
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            f(&mut lock).map_err(Failure::from)
        }
    }
}

fn cmd_build(n: QubitCount, out: Option<&Path>) -> Result<(), Failure> {
    let w = build_witness(n)?;
    if let Some(path) = out {
        let mut file = open_out(path)?;
        w.write_coordinate(&mut file)?;
        file.flush().map_err(|e| Failure::io(e.to_string()))?;
    }
    let min = min_eigenvalue(&w.to_f64())?;
    println!("dim {}", w.dim());
    println!("nnz {}", w.nnz());
    println!("min_eig {min:.15e}");
    Ok(())
}

fn cmd_sweep(n: QubitCount, t_min: f64, t_max: f64, steps: usize, out: Option<&Path>) -> Result<(), Failure> {
    let family = RhoFamily::new(n)?;
    let rows = family.sweep(t_min, t_max, steps)?;
    write_to(out, |w| write_sweep_csv(&rows, w))?;
    if out.is_some() {
        println!("rows {}", rows.len());
    }
    Ok(())
}

fn cmd_certify(n: QubitCount, out: Option<&Path>) -> Result<(), Failure> {
    let outcome = assess(n)?;
    let json = outcome.report.to_json();
    write_to(out, |w| {
        writeln!(w, "{json}")?;
        Ok(())
    })?;
    match outcome.failures.into_iter().next() {
        None => Ok(()),
        Some(e) => Err(e.into()),
    }
}

fn cmd_probe(n: QubitCount, restarts: usize, iters: usize, seed: u64) -> Result<(), Failure> {
    let w = build_witness(n)?;
    let r = blockpos_probe(&w, restarts, iters, seed)?;
    println!("min_value {:.15e}", r.min_value);
    println!("restart {}", r.restart);
    println!("max_increase {:.3e}", r.max_increase);
    if r.min_value < -1e-8 {
        return Err(Error::CertificateFailed {
            field: "probe.min_value".into(),
            detail: format!("{:e} is below -1e-8", r.min_value),
        }
        .into());
    }
    Ok(())
}
