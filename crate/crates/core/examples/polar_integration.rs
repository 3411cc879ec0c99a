//! Integration over star-shaped regions in polar coordinates and over the
//! square with a disk removed.
//!
//! Run with `cargo run --example polar_integration`.

use std::f64::consts::PI;

use obstacle_identities::quadrature::{integrate_polar, integrate_square_minus_disk};
use obstacle_identities::{QuadratureConfig, RadialRegion, Result};

fn main() -> Result<()> {
    let cfg = QuadratureConfig::default();

    let disk = integrate_polar(&RadialRegion::disk(0.7), |_, _| 1.0, &cfg)?;
    println!("area of disk(0.7)       {disk:.15} (exact {:.15})", PI * 0.49);

    let annulus = integrate_polar(&RadialRegion::annulus(0.2, 0.7), |rho, _| rho * rho, &cfg)?;
    let exact = 2.0 * PI * (0.7f64.powi(4) - 0.2f64.powi(4)) / 4.0;
    println!("int rho^2 over annulus  {annulus:.15} (exact {exact:.15})");

    // the radial rule is split where the integrand has a kink
    let star = RadialRegion::star(|t: f64| 0.5 + 0.1 * (5.0 * t).cos()).with_internal_radius(|_| 0.3);
    let kinked = integrate_polar(&star, |rho, _| (rho - 0.3).abs(), &cfg)?;
    println!("int |rho - 0.3| over a five-lobed star: {kinked:.12}");

    let square = integrate_square_minus_disk(0.7, |_, _| 1.0, &cfg)?;
    println!(
        "area of square minus disk(0.7) {square:.15} (exact {:.15})",
        4.0 - PI * 0.49
    );
    Ok(())
}
