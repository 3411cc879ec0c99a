//! Flag parsing and dispatch for the `obstacle-verify` binary.
//!
//! Exit status: 0 when everything passes, 1 when a reference cell fails,
//! 2 on any configuration or I/O error. Diagnostics go to standard error.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};

use crate::harness::{
    compare_reference, emit, emit_grid, run_sweep, Column, OutputFormat, ProblemSpec, ReferenceTable, RowKey,
    SweepConfig,
};
use crate::quadrature::QuadratureConfig;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Classical,
    Twophase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Csv,
}

/// Evaluate energy error identities for the obstacle benchmarks.
#[derive(Debug, Parser)]
#[command(name = "obstacle-verify", version)]
pub struct Args {
    /// Benchmark to run. With --check-paper and no problem, both are checked.
    #[arg(long, value_enum)]
    pub problem: Option<ProblemArg>,

    /// Free-boundary radius of the classical benchmark.
    #[arg(long = "R", default_value_t = 0.7)]
    pub big_r: f64,

    /// Plateau radius of the perturbation.
    #[arg(long = "r", default_value_t = 0.2)]
    pub small_r: f64,

    /// Wavenumber of the perturbation edge.
    #[arg(long, default_value_t = 16, allow_negative_numbers = true)]
    pub k: i64,

    /// Perturbation amplitudes (repeatable or comma separated).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub eps: Vec<f64>,

    /// Interpolation node counts (repeatable or comma separated).
    #[arg(long = "N", value_delimiter = ',')]
    pub nodes: Vec<usize>,

    /// Gauss order per 1D piece and angular panel.
    #[arg(long)]
    pub quad_order: Option<usize>,

    /// Number of angular panels (default max(64, 16|k|)).
    #[arg(long)]
    pub angular_panels: Option<usize>,

    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,

    /// Output file for the table; grid files go to its directory.
    #[arg(long)]
    pub out: Option<PathBuf>,

    /// Write plot-ready grids with this many samples per axis.
    #[arg(long)]
    pub grid: Option<usize>,

    /// Compare against the embedded published tables.
    #[arg(long)]
    pub check_paper: bool,

    /// Negative control: perturb one reference cell, given as KEY:COLUMN.
    #[arg(long, hide = true)]
    pub corrupt_cell: Option<String>,
}

#[derive(Debug)]
struct FlagError(String);

fn flag_err(flag: &str, err: impl std::fmt::Display) -> FlagError {
    FlagError(format!("{flag}: {err}"))
}

impl Args {
    fn quad(&self) -> Result<QuadratureConfig, FlagError> {
        let mut quad = QuadratureConfig::default();
        if let Some(order) = self.quad_order {
            quad.order_1d = order;
            quad.validate().map_err(|e| flag_err("--quad-order", e))?;
        }
        if self.angular_panels.is_some() {
            quad.angular_panels = self.angular_panels;
            quad.validate().map_err(|e| flag_err("--angular-panels", e))?;
        }
        Ok(quad)
    }

    fn problem_spec(&self, kind: ProblemArg) -> Result<ProblemSpec, FlagError> {
        match kind {
            ProblemArg::Classical => {
                let ProblemSpec::Classical { eps_list, .. } = ProblemSpec::classical_reference() else {
                    unreachable!()
                };
                let eps_list = if self.eps.is_empty() {
                    eps_list
                } else {
                    self.eps.clone()
                };
                let problem = crate::classical::ClassicalProblem::new(self.big_r).map_err(|e| flag_err("--R", e))?;
                if self.k == 0 {
                    return Err(FlagError("--k: wavenumber must be nonzero".into()));
                }
                for &eps in &eps_list {
                    if !(eps >= 0.0 && eps.is_finite()) {
                        return Err(flag_err(
                            "--eps",
                            format!("amplitude must be finite and non-negative, got {eps}"),
                        ));
                    }
                }
                crate::classical::Perturbation::new(&problem, self.small_r, self.k, 1.0)
                    .map_err(|e| flag_err("--r", e))?;
                Ok(ProblemSpec::Classical {
                    radius: self.big_r,
                    inner_radius: self.small_r,
                    wavenumber: self.k,
                    eps_list,
                })
            }
            ProblemArg::Twophase => {
                let ProblemSpec::TwoPhase { n_list } = ProblemSpec::two_phase_reference() else {
                    unreachable!()
                };
                let n_list = if self.nodes.is_empty() {
                    n_list
                } else {
                    self.nodes.clone()
                };
                if let Some(n) = n_list.iter().find(|&&n| n < 2) {
                    return Err(flag_err("--N", format!("node count must be at least 2, got {n}")));
                }
                Ok(ProblemSpec::TwoPhase { n_list })
            }
        }
    }

    fn sweep_config(&self, kind: ProblemArg) -> Result<SweepConfig, FlagError> {
        if let Some(n) = self.grid {
            if n < 2 {
                return Err(flag_err("--grid", format!("grid size must be at least 2, got {n}")));
            }
        }
        Ok(SweepConfig {
            problem: self.problem_spec(kind)?,
            quad: self.quad()?,
            format: match self.format {
                FormatArg::Text => OutputFormat::TextTable,
                FormatArg::Csv => OutputFormat::Csv,
            },
            output_path: self.out.clone(),
            grid_n: self.grid,
        })
    }
}

fn parse_corruption(spec: &str) -> Result<(String, Column), FlagError> {
    let (key, column) = spec
        .split_once(':')
        .ok_or_else(|| flag_err("--corrupt-cell", "expected KEY:COLUMN"))?;
    let column = Column::parse(column).ok_or_else(|| flag_err("--corrupt-cell", format!("unknown column {column}")))?;
    Ok((key.to_string(), column))
}

fn reference_for(kind: ProblemArg, corruption: Option<&(String, Column)>) -> Result<ReferenceTable, FlagError> {
    let mut table = match kind {
        ProblemArg::Classical => ReferenceTable::classical(),
        ProblemArg::Twophase => ReferenceTable::two_phase(),
    };
    if let Some((key, column)) = corruption {
        let parsed = match kind {
            ProblemArg::Classical => key.parse().map(RowKey::Eps).ok(),
            ProblemArg::Twophase => key.parse().map(RowKey::Nodes).ok(),
        };
        if let Some(row_key) = parsed.filter(|k| table.row(*k).is_some()) {
            table
                .corrupt(row_key, *column)
                .map_err(|e| flag_err("--corrupt-cell", e))?;
        }
    }
    Ok(table)
}

fn check_paper(args: &Args) -> Result<i32, FlagError> {
    let kinds = match args.problem {
        Some(k) => vec![k],
        None => vec![ProblemArg::Classical, ProblemArg::Twophase],
    };
    let corruption = args.corrupt_cell.as_deref().map(parse_corruption).transpose()?;
    let mut code = EXIT_PASS;
    for kind in kinds {
        let cfg = args.sweep_config(kind)?;
        let rows = run_sweep(&cfg).map_err(|e| FlagError(e.to_string()))?;
        let table = reference_for(kind, corruption.as_ref())?;
        let report = compare_reference(&rows, &table).map_err(|e| flag_err("--eps/--N", e))?;
        println!("# {}", report.table);
        for verdict in &report.verdicts {
            println!("{verdict}");
        }
        println!("# {}/{} cells pass", report.passed(), report.verdicts.len());
        for failure in report.failures() {
            eprintln!("mismatch: {failure}");
        }
        code = code.max(report.exit_code());
    }
    Ok(code)
}

fn sweep(args: &Args) -> Result<i32, FlagError> {
    let kind = args
        .problem
        .ok_or_else(|| FlagError("--problem is required unless --check-paper is given".into()))?;
    let cfg = args.sweep_config(kind)?;
    let rows = run_sweep(&cfg).map_err(|e| FlagError(e.to_string()))?;
    emit(&rows, cfg.format, cfg.output_path.as_deref()).map_err(|e| flag_err("--out", e))?;
    if cfg.grid_n.is_some() {
        let dir = cfg
            .output_path
            .as_deref()
            .and_then(Path::parent)
            .filter(|p| !p.as_os_str().is_empty())
            .unwrap_or(Path::new("."));
        for path in emit_grid(&cfg, dir).map_err(|e| flag_err("--grid", e))? {
            eprintln!("wrote {}", path.display());
        }
    }
    Ok(EXIT_PASS)
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_PASS };
        }
    };
    let result = if args.check_paper {
        check_paper(&args)
    } else {
        sweep(&args)
    };
    match result {
        Ok(code) => code,
        Err(FlagError(msg)) => {
            eprintln!("error: {msg}");
            EXIT_CONFIG
        }
    }
}
