//! Gauss–Legendre quadrature on intervals, composite rules split at caller
//! supplied breakpoints, and integration in polar coordinates over regions
//! whose radial limits depend on the angle.
//!
//! Every reduction goes through [`pairwise_sum`], so results are
//! bit-reproducible for identical inputs.

use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::{config, input, Result};

/// Largest rule order accepted by [`gauss_rule`].
pub const MAX_GAUSS_ORDER: usize = 64;

const NEWTON_TOL: f64 = 1e-15;
const NEWTON_MAX_ITER: usize = 100;

/// Nodes and weights of an `order`-point Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Strictly increasing, symmetric about zero.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Applies the rule on `[a, b]`.
    pub fn integrate<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc += w * f(mid + half * x);
        }
        acc * half
    }

    /// Maps the rule onto `[a, b]`, yielding `(node, scaled weight)` pairs.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(x, w)| (mid + half * x, w * half))
    }
}

/// Legendre polynomial `P_n(x)` and its derivative, by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p_prev = 1.0;
    let mut p = x;
    for j in 2..=n {
        let jf = j as f64;
        let next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = next;
    }
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Builds the `n`-point Gauss–Legendre rule by Newton iteration on `P_n`.
///
/// Only the positive roots are iterated; the negative half is mirrored so the
/// rule is exactly symmetric.
pub fn gauss_rule(n: usize) -> Result<GaussRule> {
    if n == 0 || n > MAX_GAUSS_ORDER {
        return Err(config(format!(
            "Gauss order must lie in 1..={MAX_GAUSS_ORDER}, got {n}"
        )));
    }
    if n == 1 {
        return Ok(GaussRule {
            nodes: vec![0.0],
            weights: vec![2.0],
        });
    }
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n / 2 {
        // i-th largest root
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..NEWTON_MAX_ITER {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= NEWTON_TOL {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d.is_finite() {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[n - 1 - i] = x;
        nodes[i] = -x;
        weights[n - 1 - i] = w;
        weights[i] = w;
    }
    if n % 2 == 1 {
        let (_, dp) = legendre_with_derivative(n, 0.0);
        nodes[n / 2] = 0.0;
        weights[n / 2] = 2.0 / (dp * dp);
    }
    Ok(GaussRule { nodes, weights })
}

/// Sums `values` by recursive halving. The split points depend only on the
/// length, so the result is the same however the values were produced.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let (left, right) = values.split_at(n / 2);
            pairwise_sum(left) + pairwise_sum(right)
        }
    }
}

/// Orders and panel counts used by every integral in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureConfig {
    /// Gauss order per 1D subinterval and per angular panel.
    pub order_1d: usize,
    /// Gauss order per radial piece in polar integration.
    pub radial_order: usize,
    /// Number of uniform angular panels. `None` resolves to
    /// `max(64, 16 |k|)` when a wavenumber `k` is known, else 64.
    pub angular_panels: Option<usize>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            order_1d: 8,
            radial_order: 6,
            angular_panels: None,
        }
    }
}

impl QuadratureConfig {
    pub const DEFAULT_ANGULAR_PANELS: usize = 64;
    const PANELS_PER_WAVE: usize = 16;

    pub fn validate(&self) -> Result<()> {
        for (name, order) in [("order_1d", self.order_1d), ("radial_order", self.radial_order)] {
            if !(2..=MAX_GAUSS_ORDER).contains(&order) {
                return Err(config(format!("{name} must lie in 2..={MAX_GAUSS_ORDER}, got {order}")));
            }
        }
        if let Some(p) = self.angular_panels {
            if p < 4 {
                return Err(config(format!("angular_panels must be at least 4, got {p}")));
            }
        }
        Ok(())
    }

    /// Panel count to use when the integrand oscillates like `cos(k θ)`.
    pub fn angular_panels_for(&self, wavenumber: Option<i64>) -> usize {
        self.angular_panels.unwrap_or_else(|| match wavenumber {
            Some(k) => {
                let k = usize::try_from(k.unsigned_abs()).unwrap_or(usize::MAX / 32);
                Self::DEFAULT_ANGULAR_PANELS.max(Self::PANELS_PER_WAVE * k)
            }
            None => Self::DEFAULT_ANGULAR_PANELS,
        })
    }

    /// Same config with angular panels pinned for wavenumber `k`.
    pub fn resolved_for(&self, wavenumber: Option<i64>) -> Self {
        Self {
            angular_panels: Some(self.angular_panels_for(wavenumber)),
            ..*self
        }
    }
}

fn check_breakpoints(breakpoints: &[f64]) -> Result<()> {
    if breakpoints.len() < 2 {
        return Err(input("at least two breakpoints are required"));
    }
    if let Some(w) = breakpoints
        .windows(2)
        .find(|w| w[0].partial_cmp(&w[1]) != Some(Ordering::Less))
    {
        return Err(input(format!(
            "breakpoints must be strictly increasing, found {} followed by {}",
            w[0], w[1]
        )));
    }
    Ok(())
}

/// Composite Gauss rule: `cfg.order_1d` points on every subinterval of
/// `breakpoints`. Exact for piecewise polynomials of degree `2 * order_1d - 1`
/// whose kinks are breakpoints.
pub fn integrate_1d<F: Fn(f64) -> f64>(f: F, breakpoints: &[f64], cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    check_breakpoints(breakpoints)?;
    let rule = gauss_rule(cfg.order_1d)?;
    let pieces: Vec<f64> = breakpoints.windows(2).map(|w| rule.integrate(w[0], w[1], &f)).collect();
    Ok(pairwise_sum(&pieces))
}

type AngularFn<'a> = Box<dyn Fn(f64) -> f64 + Send + Sync + 'a>;

/// A region `{(ρ, θ) : θ_a ≤ θ ≤ θ_b, ρ_lo(θ) ≤ ρ ≤ ρ_hi(θ)}` together with
/// radii at which the integrand has a kink.
pub struct RadialRegion<'a> {
    rho_lo: AngularFn<'a>,
    rho_hi: AngularFn<'a>,
    theta_range: (f64, f64),
    internal_radii: Vec<AngularFn<'a>>,
}

impl<'a> RadialRegion<'a> {
    pub fn new(
        rho_lo: impl Fn(f64) -> f64 + Send + Sync + 'a,
        rho_hi: impl Fn(f64) -> f64 + Send + Sync + 'a,
        theta_range: (f64, f64),
    ) -> Self {
        Self {
            rho_lo: Box::new(rho_lo),
            rho_hi: Box::new(rho_hi),
            theta_range,
            internal_radii: Vec::new(),
        }
    }

    /// Full disk `ρ ≤ radius`.
    pub fn disk(radius: f64) -> Self {
        Self::new(|_| 0.0, move |_| radius, (0.0, 2.0 * PI))
    }

    /// Full annulus `inner ≤ ρ ≤ outer`.
    pub fn annulus(inner: f64, outer: f64) -> Self {
        Self::new(move |_| inner, move |_| outer, (0.0, 2.0 * PI))
    }

    /// Star-shaped region `ρ ≤ rho_hi(θ)` over the full angle.
    pub fn star(rho_hi: impl Fn(f64) -> f64 + Send + Sync + 'a) -> Self {
        Self::new(|_| 0.0, rho_hi, (0.0, 2.0 * PI))
    }

    pub fn with_internal_radius(mut self, radius: impl Fn(f64) -> f64 + Send + Sync + 'a) -> Self {
        self.internal_radii.push(Box::new(radius));
        self
    }

    pub fn theta_range(&self) -> (f64, f64) {
        self.theta_range
    }

    pub fn rho_lo(&self, theta: f64) -> f64 {
        (self.rho_lo)(theta)
    }

    pub fn rho_hi(&self, theta: f64) -> f64 {
        (self.rho_hi)(theta)
    }
}

/// Integrates `g(ρ, θ) ρ dρ dθ` over `region`. The Jacobian `ρ` is applied
/// here; `g` is the physical integrand.
///
/// The angle range is cut into uniform panels (count from
/// [`QuadratureConfig::angular_panels_for`] with no wavenumber) carrying
/// `order_1d` Gauss points each. At every angular node the radial interval is
/// split at each internal radius that falls strictly inside it and every piece
/// gets `radial_order` points.
pub fn integrate_polar<G: Fn(f64, f64) -> f64>(region: &RadialRegion<'_>, g: G, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    let panels = cfg.angular_panels_for(None);
    let angular = gauss_rule(cfg.order_1d)?;
    let radial = gauss_rule(cfg.radial_order)?;
    let (ta, tb) = region.theta_range;
    let dtheta = (tb - ta) / panels as f64;

    let mut panel_sums = Vec::with_capacity(panels);
    let mut splits: Vec<f64> = Vec::with_capacity(region.internal_radii.len() + 2);
    for p in 0..panels {
        let t0 = ta + p as f64 * dtheta;
        let t1 = if p + 1 == panels { tb } else { t0 + dtheta };
        let mut panel = 0.0;
        for (theta, wt) in angular.mapped(t0, t1) {
            let lo = region.rho_lo(theta);
            let hi = region.rho_hi(theta);
            if hi < lo {
                return Err(input(format!(
                    "radial upper limit {hi} is below lower limit {lo} at theta = {theta}"
                )));
            }
            splits.clear();
            splits.push(lo);
            for radius in &region.internal_radii {
                let r = radius(theta);
                if r > lo && r < hi {
                    splits.push(r);
                }
            }
            splits.push(hi);
            splits.sort_by(f64::total_cmp);
            let mut line = 0.0;
            for w in splits.windows(2) {
                if w[1] > w[0] {
                    line += radial.integrate(w[0], w[1], |rho| g(rho, theta) * rho);
                }
            }
            panel += wt * line;
        }
        panel_sums.push(panel);
    }
    Ok(pairwise_sum(&panel_sums))
}

/// Integrates `g(x, y)` over `(-1, 1)² \ {x² + y² < radius²}` in polar
/// coordinates, one sector per octant so the outer limit
/// `min(1/|cos θ|, 1/|sin θ|)` is smooth on each.
pub fn integrate_square_minus_disk<G: Fn(f64, f64) -> f64>(radius: f64, g: G, cfg: &QuadratureConfig) -> Result<f64> {
    if !(0.0..1.0).contains(&radius) {
        return Err(input(format!("disk radius must lie in [0, 1), got {radius}")));
    }
    cfg.validate()?;
    let per_octant = cfg.angular_panels_for(None).div_ceil(8).max(1);
    let octant_cfg = QuadratureConfig {
        angular_panels: Some(per_octant.max(4)),
        ..*cfg
    };
    let mut octants = Vec::with_capacity(8);
    for j in 0..8 {
        let t0 = j as f64 * FRAC_PI_4;
        let region = RadialRegion::new(
            move |_| radius,
            |t: f64| 1.0 / t.cos().abs().max(t.sin().abs()),
            (t0, t0 + FRAC_PI_4),
        );
        octants.push(integrate_polar(
            &region,
            |rho, t| g(rho * t.cos(), rho * t.sin()),
            &octant_cfg,
        )?);
    }
    Ok(pairwise_sum(&octants))
}
