use std::fmt;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::classical::{self, ClassicalProblem, Perturbation};
use crate::error::{config, Result};
use crate::quadrature::QuadratureConfig;
use crate::report::IdentityReport;
use crate::two_phase::{self, TwoPhaseProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Classical,
    TwoPhase,
}

/// Which benchmark to sweep, with its parameter list.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemSpec {
    Classical {
        radius: f64,
        inner_radius: f64,
        wavenumber: i64,
        eps_list: Vec<f64>,
    },
    TwoPhase {
        n_list: Vec<usize>,
    },
}

impl ProblemSpec {
    /// Parameters of the published classical table: `R = 0.7`, `r = 0.2`, `k = 16`.
    pub fn classical_reference() -> Self {
        ProblemSpec::Classical {
            radius: 0.7,
            inner_radius: 0.2,
            wavenumber: 16,
            eps_list: vec![1.0, 0.1, 0.01, 0.001, 0.0001],
        }
    }

    pub fn two_phase_reference() -> Self {
        ProblemSpec::TwoPhase {
            n_list: vec![2, 5, 6, 7, 8, 9, 10, 30, 60, 120],
        }
    }

    pub fn kind(&self) -> ProblemKind {
        match self {
            ProblemSpec::Classical { .. } => ProblemKind::Classical,
            ProblemSpec::TwoPhase { .. } => ProblemKind::TwoPhase,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    TextTable,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub problem: ProblemSpec,
    pub quad: QuadratureConfig,
    pub format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub grid_n: Option<usize>,
}

impl SweepConfig {
    pub fn new(problem: ProblemSpec) -> Self {
        Self {
            problem,
            quad: QuadratureConfig::default(),
            format: OutputFormat::default(),
            output_path: None,
            grid_n: None,
        }
    }

    /// Checks list lengths and the owning modules' parameter ranges.
    pub fn validate(&self) -> Result<()> {
        self.quad.validate()?;
        if let Some(n) = self.grid_n {
            if n < 2 {
                return Err(config(format!("grid size must be at least 2, got {n}")));
            }
        }
        match &self.problem {
            ProblemSpec::Classical {
                radius,
                inner_radius,
                wavenumber,
                eps_list,
            } => {
                if eps_list.is_empty() {
                    return Err(config("eps list is empty"));
                }
                let problem = ClassicalProblem::new(*radius)?;
                for &eps in eps_list {
                    Perturbation::new(&problem, *inner_radius, *wavenumber, eps)?;
                }
            }
            ProblemSpec::TwoPhase { n_list } => {
                if n_list.is_empty() {
                    return Err(config("N list is empty"));
                }
                if let Some(n) = n_list.iter().find(|&&n| n < 2) {
                    return Err(config(format!("N must be at least 2, got {n}")));
                }
            }
        }
        Ok(())
    }
}

/// Row identifier: the amplitude `ε` or the node count `N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RowKey {
    Eps(f64),
    Nodes(usize),
}

impl fmt::Display for RowKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowKey::Eps(e) => write!(f, "{e}"),
            RowKey::Nodes(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub key: RowKey,
    pub report: IdentityReport,
}

/// One identity report per list entry, in input order. Rows are computed in
/// parallel; each is independent so the output does not depend on the
/// thread count.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRow>> {
    cfg.validate()?;
    match &cfg.problem {
        ProblemSpec::Classical {
            radius,
            inner_radius,
            wavenumber,
            eps_list,
        } => {
            let problem = ClassicalProblem::new(*radius)?;
            eps_list
                .par_iter()
                .map(|&eps| {
                    let pert = Perturbation::new(&problem, *inner_radius, *wavenumber, eps)?;
                    Ok(SweepRow {
                        key: RowKey::Eps(eps),
                        report: classical::identity_report(&problem, &pert, &cfg.quad)?,
                    })
                })
                .collect()
        }
        ProblemSpec::TwoPhase { n_list } => {
            let problem = TwoPhaseProblem::BENCHMARK;
            n_list
                .par_iter()
                .map(|&n| {
                    Ok(SweepRow {
                        key: RowKey::Nodes(n),
                        report: two_phase::identity_report_two_phase(n, &problem)?,
                    })
                })
                .collect()
        }
    }
}
