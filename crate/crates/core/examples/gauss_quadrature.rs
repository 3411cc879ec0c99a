//! Gauss–Legendre rules and composite 1D integration with breakpoints.
//!
//! Run with `cargo run --example gauss_quadrature`.

use obstacle_identities::quadrature::{gauss_rule, integrate_1d};
use obstacle_identities::{QuadratureConfig, Result};

fn main() -> Result<()> {
    for n in [1, 2, 3, 5] {
        let rule = gauss_rule(n)?;
        println!("n = {n}: nodes {:?}", rule.nodes());
        println!("       weights {:?}", rule.weights());
    }

    // exact up to degree 2n - 1
    let rule = gauss_rule(5)?;
    let x8 = rule.integrate(-1.0, 1.0, |x| x.powi(8));
    println!("int x^8 on [-1, 1] with n = 5: {x8:.15} (exact {:.15})", 2.0 / 9.0);

    // a kink only integrates exactly when it is a breakpoint
    let cfg = QuadratureConfig::default();
    let kinked = |x: f64| (x - 0.3).abs();
    let exact = 0.5 * (1.3f64.powi(2) + 0.7f64.powi(2));
    let without = integrate_1d(kinked, &[-1.0, 1.0], &cfg)?;
    let with = integrate_1d(kinked, &[-1.0, 0.3, 1.0], &cfg)?;
    println!("int |x - 0.3|: exact {exact:.15}");
    println!(
        "  no breakpoint    {without:.15} (error {:.1e})",
        (without - exact).abs()
    );
    println!("  breakpoint 0.3   {with:.15} (error {:.1e})", (with - exact).abs());
    Ok(())
}
