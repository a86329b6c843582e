//! Validated run configuration and the exit-code contract.

use std::path::PathBuf;

use ewit_core::{Error, QubitCount};

use crate::{Cli, Command};

/// Exit status plus a one-line diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const INVALID: u8 = 1;
    pub const IO: u8 = 2;
    pub const CERTIFICATE: u8 = 3;

    pub fn invalid(message: impl Into<String>) -> Self {
        Failure {
            code: Self::INVALID,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Failure {
            code: Self::IO,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Io(_) | Error::Parse(_) => Self::IO,
            Error::CertificateFailed { .. } => Self::CERTIFICATE,
            _ => Self::INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug)]
pub enum Task {
    Build {
        n: QubitCount,
        out: Option<PathBuf>,
    },
    Sweep {
        n: QubitCount,
        t_min: f64,
        t_max: f64,
        steps: usize,
        out: Option<PathBuf>,
    },
    Certify {
        n: QubitCount,
        out: Option<PathBuf>,
    },
    Probe {
        n: QubitCount,
        restarts: usize,
        iters: usize,
        seed: u64,
    },
    Plot {
        input: PathBuf,
        out: PathBuf,
        columns: Vec<String>,
        normalize: bool,
    },
}

#[derive(Debug)]
pub struct RunConfig {
    pub task: Task,
    pub threads: Option<usize>,
}

fn qubits(n: u32, min: u32) -> Result<QubitCount, Failure> {
    let q = QubitCount::new(n)?;
    if n < min {
        return Err(Failure::invalid(format!("--n must be at least {min}, got {n}")));
    }
    Ok(q)
}

impl RunConfig {
    /// Checks every argument before any computation starts.
    pub fn from_cli(cli: Cli) -> Result<Self, Failure> {
        if cli.threads == Some(0) {
            return Err(Failure::invalid("--threads must be positive"));
        }
        let task = match cli.command {
            Command::Build { n, out } => Task::Build { n: qubits(n, 1)?, out },
            Command::Sweep { n, grid, out } => {
                if !grid.t_min.is_finite() || !grid.t_max.is_finite() {
                    return Err(Failure::invalid("t range must be finite"));
                }
                if grid.t_min >= grid.t_max {
                    return Err(Failure::invalid(format!(
                        "--t-min {} must be below --t-max {}",
                        grid.t_min, grid.t_max
                    )));
                }
                if grid.steps < 2 {
                    return Err(Failure::invalid(format!(
                        "--steps must be at least 2, got {}",
                        grid.steps
                    )));
                }
                Task::Sweep {
                    n: qubits(n, 2)?,
                    t_min: grid.t_min,
                    t_max: grid.t_max,
                    steps: grid.steps,
                    out,
                }
            }
            Command::Certify { n, out } => Task::Certify { n: qubits(n, 1)?, out },
            Command::Probe {
                n,
                restarts,
                iters,
                seed,
            } => {
                if restarts == 0 || iters == 0 {
                    return Err(Failure::invalid("--restarts and --iters must be positive"));
                }
                Task::Probe {
                    n: qubits(n, 1)?,
                    restarts,
                    iters,
                    seed,
                }
            }
            Command::Plot {
                input,
                out,
                columns,
                normalize,
            } => {
                if columns.iter().any(|c| c.is_empty() || c == "t") {
                    return Err(Failure::invalid("--columns entries must name non-t columns"));
                }
                Task::Plot {
                    input,
                    out,
                    columns,
                    normalize,
                }
            }
        };
        Ok(RunConfig {
            task,
            threads: cli.threads,
        })
    }
}
