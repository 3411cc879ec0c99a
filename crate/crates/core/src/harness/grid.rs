use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::sweep::{ProblemSpec, SweepConfig};
use crate::classical::{coincidence_grid, ClassicalProblem, Perturbation};
use crate::error::{input, Error, Result};
use crate::two_phase::{
    benchmark_u_sets, interpolant, measure_density, mismatch_region, sign_decomposition, u_exact_1d, TwoPhaseProblem,
};

/// File names written for the classical benchmark.
pub const GRID_FILES_CLASSICAL: [&str; 3] = ["w_grid.csv", "contact_labels.csv", "reference_circles.csv"];

fn write(dir: &Path, name: &str, body: &str) -> Result<PathBuf> {
    let path = dir.join(name);
    fs::write(&path, body).map_err(|source| Error::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

/// Writes plot-ready CSV samples into `dir` and returns the written paths.
///
/// Classical: `w` on the grid, contact labels (amplitude independent for
/// `ε > 0`, taken from the first positive `ε`), and the three reference
/// circles. Two-phase: per `N`, samples of `u`, `v_N` and the `μ_ω` density.
pub fn emit_grid(cfg: &SweepConfig, dir: &Path) -> Result<Vec<PathBuf>> {
    let n = cfg.grid_n.ok_or_else(|| input("grid size is not set"))?;
    if n < 2 {
        return Err(input(format!("grid size must be at least 2, got {n}")));
    }
    let d = (n - 1) as f64;
    let coords: Vec<f64> = (0..n).map(|i| (2.0 * i as f64 - d) / d).collect();
    match &cfg.problem {
        ProblemSpec::Classical {
            radius,
            inner_radius,
            wavenumber,
            eps_list,
        } => {
            let problem = ClassicalProblem::new(*radius)?;
            let eps = eps_list.iter().copied().find(|&e| e > 0.0).unwrap_or(1.0);
            let pert = Perturbation::new(&problem, *inner_radius, *wavenumber, eps)?;

            let mut w = String::from("x,y,w\n");
            for &y in &coords {
                for &x in &coords {
                    let _ = writeln!(w, "{x},{y},{}", pert.w_at(x, y));
                }
            }
            let grid = coincidence_grid(&problem, &pert, n)?;
            let mut labels = String::from("x,y,label,name\n");
            for (iy, &y) in grid.coords.iter().enumerate() {
                for (ix, &x) in grid.coords.iter().enumerate() {
                    let l = grid.label(ix, iy);
                    let _ = writeln!(labels, "{x},{y},{},{l:?}", l.code());
                }
            }
            let mut circles = String::from("circle,radius,x,y\n");
            for c in &grid.circles {
                for p in &c.points {
                    let _ = writeln!(circles, "{},{},{},{}", c.name, c.radius, p[0], p[1]);
                }
            }
            Ok(vec![
                write(dir, GRID_FILES_CLASSICAL[0], &w)?,
                write(dir, GRID_FILES_CLASSICAL[1], &labels)?,
                write(dir, GRID_FILES_CLASSICAL[2], &circles)?,
            ])
        }
        ProblemSpec::TwoPhase { n_list } => {
            let problem = TwoPhaseProblem::BENCHMARK;
            let u_sets = benchmark_u_sets();
            let mut written = Vec::with_capacity(n_list.len());
            for &nodes in n_list {
                let v = interpolant(nodes)?;
                let region = mismatch_region(&sign_decomposition(&v), &u_sets, &problem);
                let mut body = String::from("x,u,v,mu_density\n");
                for &x in &coords {
                    let _ = writeln!(
                        body,
                        "{x},{},{},{}",
                        u_exact_1d(x),
                        v.eval(x),
                        measure_density(&v, &region, x)
                    );
                }
                written.push(write(dir, &format!("twophase_N{nodes}.csv"), &body)?);
            }
            Ok(written)
        }
    }
}
