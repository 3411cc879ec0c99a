//! Where the nonlinear measure of a two-phase interpolant comes from: the
//! mismatch sets and the pointwise density `alpha |v|` on them.
//!
//! Run with `cargo run --example measure_profile -- [N]`.

use obstacle_identities::two_phase::{
    benchmark_u_sets, interpolant, measure_profile, mismatch_region, mu_omega, sign_decomposition, TwoPhaseProblem,
};
use obstacle_identities::Result;

fn main() -> Result<()> {
    let n = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let problem = TwoPhaseProblem::BENCHMARK;
    let u_sets = benchmark_u_sets();
    let v = interpolant(n)?;

    let region = mismatch_region(&sign_decomposition(&v), &u_sets, &problem);
    println!("N = {n}");
    for (name, (set, weight)) in ["plus", "minus", "crossed"].iter().zip(region.weighted()) {
        println!(
            "  {name:<7} weight {weight:>4}: {:?} (length {:.6})",
            set.intervals(),
            set.measure()
        );
    }
    println!("  mu = {:.6e}", mu_omega(&v, &problem, &u_sets));

    for (x, density) in measure_profile(&v, &problem, &u_sets, 21)? {
        let bar = "*".repeat((density * 40.0).round() as usize);
        println!("{x:>6.2} {density:>9.5} {bar}");
    }
    Ok(())
}
