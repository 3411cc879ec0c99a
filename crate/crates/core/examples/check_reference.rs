//! Compares both benchmark sweeps with the embedded published tables and
//! prints every cell verdict.
//!
//! Run with `cargo run --release --example check_reference`.

use obstacle_identities::harness::{compare_reference, run_sweep, ProblemSpec, ReferenceTable, SweepConfig};
use obstacle_identities::Result;

fn main() -> Result<()> {
    let cases = [
        (ProblemSpec::two_phase_reference(), ReferenceTable::two_phase()),
        (ProblemSpec::classical_reference(), ReferenceTable::classical()),
    ];
    let mut code = 0;
    for (spec, table) in cases {
        let rows = run_sweep(&SweepConfig::new(spec))?;
        let report = compare_reference(&rows, &table)?;
        println!("# {}", report.table);
        for verdict in &report.verdicts {
            println!("{verdict}");
        }
        println!("# {}/{} cells pass\n", report.passed(), report.verdicts.len());
        code = code.max(report.exit_code());
    }
    std::process::exit(code);
}
