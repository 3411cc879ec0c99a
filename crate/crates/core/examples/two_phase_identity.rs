//! Energy error identity for the 1D two-phase membrane problem with
//! piecewise-linear interpolants of the exact solution.
//!
//! Run with `cargo run --example two_phase_identity -- [N ...]`.

use obstacle_identities::harness::{format_csv, format_text, run_sweep, ProblemSpec, SweepConfig};
use obstacle_identities::two_phase::{exact_solution_report, j_exact_solution, TwoPhaseProblem};
use obstacle_identities::Result;

fn main() -> Result<()> {
    let problem = TwoPhaseProblem::BENCHMARK;
    println!("J(u) = {:.15}", j_exact_solution(&problem)?);
    println!("v = u: {:?}\n", exact_solution_report(&problem)?);

    let mut n_list: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if n_list.is_empty() {
        n_list = vec![2, 5, 6, 7, 8, 9, 10, 30, 60, 120];
    }
    let rows = run_sweep(&SweepConfig::new(ProblemSpec::TwoPhase { n_list }))?;
    print!("{}", format_text(&rows));
    println!();
    print!("{}", format_csv(&rows));
    Ok(())
}
