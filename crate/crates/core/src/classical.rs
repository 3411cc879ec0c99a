//! Classical obstacle problem on `Ω = (-1, 1)²` with lower obstacle `φ = 0`,
//! no upper obstacle, and a manufactured solution whose coincidence set is
//! the disk `ρ ≤ R`.
//!
//! Approximations are `v = u + ε w` where `w` is a plateau bump with a
//! wavy outer edge `r̃(θ)`. Because `w` is supported inside the disk, where
//! `u` and `∇u` vanish, all identity terms reduce to integrals over
//! `ρ ≤ r̃(θ)`.

use std::f64::consts::{PI, TAU};

use crate::error::{input, Result};
use crate::quadrature::{integrate_polar, integrate_square_minus_disk, QuadratureConfig, RadialRegion};
use crate::report::IdentityReport;

/// Constant symmetric positive definite 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpdMatrix2 {
    m: [[f64; 2]; 2],
}

impl SpdMatrix2 {
    pub const IDENTITY: Self = Self {
        m: [[1.0, 0.0], [0.0, 1.0]],
    };

    /// Checks symmetry and that the smallest eigenvalue is positive.
    pub fn new(m: [[f64; 2]; 2]) -> Result<Self> {
        if m.iter().flatten().any(|v| !v.is_finite()) {
            return Err(input("diffusion matrix entries must be finite"));
        }
        if m[0][1] != m[1][0] {
            return Err(input(format!(
                "diffusion matrix must be symmetric, got off-diagonal {} and {}",
                m[0][1], m[1][0]
            )));
        }
        let smallest = Self { m }.min_eigenvalue();
        if smallest <= 0.0 {
            return Err(input(format!(
                "diffusion matrix is not positive definite (smallest eigenvalue {smallest})"
            )));
        }
        Ok(Self { m })
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let [[a, b], [_, d]] = self.m;
        let half_trace = 0.5 * (a + d);
        let disc = (0.25 * (a - d) * (a - d) + b * b).sqrt();
        half_trace - disc
    }

    /// `A ξ · ξ`
    pub fn quadratic_form(&self, xi: [f64; 2]) -> f64 {
        let [[a, b], [_, d]] = self.m;
        a * xi[0] * xi[0] + 2.0 * b * xi[0] * xi[1] + d * xi[1] * xi[1]
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        self.m
    }
}

impl Default for SpdMatrix2 {
    fn default() -> Self {
        Self::IDENTITY
    }
}

/// The upper obstacle. The benchmark has none, so its weight integral is zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpperObstacle {
    #[default]
    Absent,
}

/// Benchmark data: free-boundary radius `R`, diffusion `A`, `φ = 0`, `ψ = +∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalProblem {
    radius: f64,
    diffusion: SpdMatrix2,
    upper: UpperObstacle,
}

impl ClassicalProblem {
    pub fn new(radius: f64) -> Result<Self> {
        Self::with_diffusion(radius, SpdMatrix2::IDENTITY)
    }

    pub fn with_diffusion(radius: f64, diffusion: SpdMatrix2) -> Result<Self> {
        if !(0.0..1.0).contains(&radius) {
            return Err(input(format!(
                "free-boundary radius R must lie in [0, 1), got {radius}"
            )));
        }
        Ok(Self {
            radius,
            diffusion,
            upper: UpperObstacle::Absent,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn diffusion(&self) -> &SpdMatrix2 {
        &self.diffusion
    }

    pub fn upper_obstacle(&self) -> UpperObstacle {
        self.upper
    }

    /// Lower obstacle `φ ≡ 0`.
    pub fn lower_obstacle(&self, _x: f64, _y: f64) -> f64 {
        0.0
    }

    pub fn source(&self, x: f64, y: f64) -> f64 {
        source_f(x, y, self.radius)
    }

    /// `W_φ = −(div A∇φ + f) = −f`, given `φ = 0` and constant `A`.
    /// Non-negative on the disk `ρ ≤ R`.
    pub fn lower_weight(&self, x: f64, y: f64) -> f64 {
        -self.source(x, y)
    }

    /// `J(u) = ∫ ½ A∇u·∇u − f u` by quadrature over the disk and its
    /// complement in the square.
    pub fn exact_energy_quadrature(&self, cfg: &QuadratureConfig) -> Result<f64> {
        let r = self.radius;
        let density = |x: f64, y: f64| {
            0.5 * self.diffusion.quadratic_form(grad_u(x, y, r)) - source_f(x, y, r) * u_exact(x, y, r)
        };
        let disk = if r > 0.0 {
            integrate_polar(
                &RadialRegion::disk(r),
                |rho, t| density(rho * t.cos(), rho * t.sin()),
                cfg,
            )?
        } else {
            0.0
        };
        let outside = integrate_square_minus_disk(r, density, cfg)?;
        Ok(disk + outside)
    }
}

/// Manufactured source term.
pub fn source_f(x: f64, y: f64, radius: f64) -> f64 {
    let rho2 = x * x + y * y;
    let r2 = radius * radius;
    if rho2.sqrt() > radius {
        -16.0 * rho2 + 8.0 * r2
    } else {
        -8.0 * (r2 * r2 + r2) + 8.0 * r2 * rho2
    }
}

/// `u = (max{x² + y² − R², 0})²`; also correct on `∂Ω`, where the max is
/// never active.
pub fn u_exact(x: f64, y: f64, radius: f64) -> f64 {
    let s = (x * x + y * y - radius * radius).max(0.0);
    s * s
}

/// `∇u = 4 max{x² + y² − R², 0} (x, y)`.
pub fn grad_u(x: f64, y: f64, radius: f64) -> [f64; 2] {
    let s = (x * x + y * y - radius * radius).max(0.0);
    [4.0 * s * x, 4.0 * s * y]
}

/// Closed form of `J(u)` for `A = I`.
pub fn j_u_closed(radius: f64) -> f64 {
    let r2 = radius * radius;
    let r4 = r2 * r2;
    192.0 * (12.0 / 35.0 - 28.0 * r2 / 45.0 + r4 / 3.0) - 32.0 * r2 * (28.0 / 45.0 - 4.0 * r2 / 3.0 + r4)
        + 2.0 / 3.0 * PI * r4 * r4
}

/// `J(u)` for `A = I` by quadrature; the oracle for [`j_u_closed`].
pub fn j_u_quadrature(radius: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if radius <= 0.0 {
        return Err(input(format!("quadrature energy needs R in (0, 1), got {radius}")));
    }
    ClassicalProblem::new(radius)?.exact_energy_quadrature(cfg)
}

/// The bump `w` and amplitude `ε` defining `v_ε = u + ε w`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    inner_radius: f64,
    outer_radius: f64,
    wavenumber: i64,
    amplitude: f64,
}

impl Perturbation {
    /// `inner_radius` is the plateau radius `r`, `outer_radius` the
    /// free-boundary radius `R` of the owning problem.
    pub fn new(problem: &ClassicalProblem, inner_radius: f64, wavenumber: i64, amplitude: f64) -> Result<Self> {
        let big_r = problem.radius();
        if !(inner_radius > 0.0 && inner_radius < big_r) {
            return Err(input(format!(
                "inner radius r must satisfy 0 < r < R = {big_r}, got {inner_radius}"
            )));
        }
        if wavenumber == 0 {
            return Err(input("wavenumber k must be a nonzero integer"));
        }
        if !(amplitude >= 0.0 && amplitude.is_finite()) {
            return Err(input(format!(
                "amplitude eps must be finite and non-negative, got {amplitude}"
            )));
        }
        Ok(Self {
            inner_radius,
            outer_radius: big_r,
            wavenumber,
            amplitude,
        })
    }

    pub fn inner_radius(&self) -> f64 {
        self.inner_radius
    }

    pub fn outer_radius(&self) -> f64 {
        self.outer_radius
    }

    pub fn wavenumber(&self) -> i64 {
        self.wavenumber
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn with_amplitude(&self, amplitude: f64) -> Self {
        Self { amplitude, ..*self }
    }

    /// `r̃(θ) = r + (R − r)(2 + cos kθ)/4`, which stays within
    /// `[(3r + R)/4, (r + 3R)/4]`.
    pub fn r_tilde(&self, theta: f64) -> f64 {
        let (r, big_r) = (self.inner_radius, self.outer_radius);
        r + (big_r - r) * (2.0 + (self.wavenumber as f64 * theta).cos()) / 4.0
    }

    pub fn r_tilde_prime(&self, theta: f64) -> f64 {
        let k = self.wavenumber as f64;
        -(self.outer_radius - self.inner_radius) * k * (k * theta).sin() / 4.0
    }

    /// Bounds `((3r + R)/4, (r + 3R)/4)` on `r̃`.
    pub fn r_tilde_bounds(&self) -> (f64, f64) {
        let (r, big_r) = (self.inner_radius, self.outer_radius);
        ((3.0 * r + big_r) / 4.0, (r + 3.0 * big_r) / 4.0)
    }

    pub fn w(&self, rho: f64, theta: f64) -> f64 {
        let r = self.inner_radius;
        if rho <= r {
            return 1.0;
        }
        let edge = self.r_tilde(theta);
        if rho >= edge {
            0.0
        } else {
            1.0 - (rho - r) / (edge - r)
        }
    }

    /// Polar gradient components `(∂w/∂ρ, (1/ρ) ∂w/∂θ)`. On the interfaces
    /// `ρ = r` and `ρ = r̃(θ)` the ramp branch is used.
    pub fn w_grad(&self, rho: f64, theta: f64) -> [f64; 2] {
        let r = self.inner_radius;
        let edge = self.r_tilde(theta);
        if rho < r || rho > edge {
            return [0.0, 0.0];
        }
        let width = edge - r;
        let d_rho = -1.0 / width;
        let d_theta = (rho - r) * self.r_tilde_prime(theta) / (width * width);
        [d_rho, d_theta / rho]
    }

    /// Cartesian `∇w` rebuilt from the polar components.
    pub fn w_grad_cartesian(&self, rho: f64, theta: f64) -> [f64; 2] {
        let [g_rho, g_theta] = self.w_grad(rho, theta);
        let (s, c) = theta.sin_cos();
        [c * g_rho - s * g_theta, s * g_rho + c * g_theta]
    }

    /// `w` at a Cartesian point.
    pub fn w_at(&self, x: f64, y: f64) -> f64 {
        self.w(x.hypot(y), y.atan2(x))
    }

    /// `v_ε = u + ε w` at a Cartesian point.
    pub fn v_at(&self, x: f64, y: f64) -> f64 {
        u_exact(x, y, self.outer_radius) + self.amplitude * self.w_at(x, y)
    }

    /// `supp w = {ρ ≤ r̃(θ)}`, split at the plateau edge `ρ = r`.
    pub fn support(&self) -> RadialRegion<'_> {
        let r = self.inner_radius;
        RadialRegion::star(move |t| self.r_tilde(t)).with_internal_radius(move |_| r)
    }
}

fn check_pair(problem: &ClassicalProblem, pert: &Perturbation) -> Result<()> {
    if pert.outer_radius != problem.radius() {
        return Err(input(format!(
            "perturbation was built for R = {}, problem has R = {}",
            pert.outer_radius,
            problem.radius()
        )));
    }
    Ok(())
}

fn polar_cfg(pert: &Perturbation, cfg: &QuadratureConfig) -> QuadratureConfig {
    cfg.resolved_for(Some(pert.wavenumber))
}

/// `∫ A∇w·∇w` over the support of `w`.
fn bump_dirichlet_energy(problem: &ClassicalProblem, pert: &Perturbation, cfg: &QuadratureConfig) -> Result<f64> {
    let a = problem.diffusion();
    integrate_polar(
        &pert.support(),
        |rho, t| a.quadratic_form(pert.w_grad_cartesian(rho, t)),
        &polar_cfg(pert, cfg),
    )
}

/// `∫ W_φ w` over the support of `w` (which lies inside the coincidence disk).
fn bump_weighted_mass(problem: &ClassicalProblem, pert: &Perturbation, cfg: &QuadratureConfig) -> Result<f64> {
    integrate_polar(
        &pert.support(),
        |rho, t| problem.lower_weight(rho * t.cos(), rho * t.sin()) * pert.w(rho, t),
        &polar_cfg(pert, cfg),
    )
}

/// `μ_φψ(v_ε) = ∫_{ρ ≤ R} W_φ (v − φ) = ε ∫ W_φ w`. The upper-obstacle
/// integral is absent.
pub fn mu_phi_psi(problem: &ClassicalProblem, pert: &Perturbation, cfg: &QuadratureConfig) -> Result<f64> {
    check_pair(problem, pert)?;
    let lower = pert.amplitude * bump_weighted_mass(problem, pert, cfg)?;
    let upper = match problem.upper_obstacle() {
        UpperObstacle::Absent => 0.0,
    };
    Ok(lower + upper)
}

/// `½ ‖∇(u − v_ε)‖²_A = (ε²/2) ∫ A∇w·∇w`.
pub fn energy_half_norm(problem: &ClassicalProblem, pert: &Perturbation, cfg: &QuadratureConfig) -> Result<f64> {
    check_pair(problem, pert)?;
    let eps = pert.amplitude;
    Ok(0.5 * eps * eps * bump_dirichlet_energy(problem, pert, cfg)?)
}

/// `J(v_ε) − J(u)`, integrated directly. On the support of `w` the
/// gradient of `u` vanishes so the density is `½ε² A∇w·∇w − f ε w`.
pub fn energy_gap(problem: &ClassicalProblem, pert: &Perturbation, cfg: &QuadratureConfig) -> Result<f64> {
    check_pair(problem, pert)?;
    let a = problem.diffusion();
    let eps = pert.amplitude;
    let big_r = problem.radius();
    integrate_polar(
        &pert.support(),
        |rho, t| {
            let (x, y) = (rho * t.cos(), rho * t.sin());
            let gu = grad_u(x, y, big_r);
            let gw = pert.w_grad_cartesian(rho, t);
            let gv = [gu[0] + eps * gw[0], gu[1] + eps * gw[1]];
            0.5 * (a.quadratic_form(gv) - a.quadratic_form(gu)) - source_f(x, y, big_r) * eps * pert.w(rho, t)
        },
        &polar_cfg(pert, cfg),
    )
}

/// All three identity terms for `v_ε`.
pub fn identity_report(
    problem: &ClassicalProblem,
    pert: &Perturbation,
    cfg: &QuadratureConfig,
) -> Result<IdentityReport> {
    Ok(IdentityReport::new(
        energy_half_norm(problem, pert, cfg)?,
        mu_phi_psi(problem, pert, cfg)?,
        energy_gap(problem, pert, cfg)?,
    ))
}

/// Classification of a point of `Ω` with respect to `v_ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ContactLabel {
    /// `v = φ`: inside the disk `ρ ≤ R` but outside the bump support.
    Contact,
    /// `v > φ` because the bump lifts it (`ρ < r̃(θ)`).
    Lifted,
    /// `v = u > φ` outside the exact coincidence disk.
    Exterior,
}

impl ContactLabel {
    pub fn code(self) -> u8 {
        match self {
            ContactLabel::Contact => 0,
            ContactLabel::Lifted => 1,
            ContactLabel::Exterior => 2,
        }
    }
}

/// Labels from exact branch logic on `(ρ, θ)`.
pub fn contact_label(pert: &Perturbation, x: f64, y: f64) -> ContactLabel {
    let rho = x.hypot(y);
    if rho > pert.outer_radius {
        ContactLabel::Exterior
    } else if pert.amplitude > 0.0 && rho < pert.r_tilde(y.atan2(x)) {
        ContactLabel::Lifted
    } else {
        ContactLabel::Contact
    }
}

/// A circle sampled as a closed polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceCircle {
    pub name: &'static str,
    pub radius: f64,
    pub points: Vec<[f64; 2]>,
}

impl ReferenceCircle {
    fn sampled(name: &'static str, radius: f64, segments: usize) -> Self {
        let points = (0..=segments)
            .map(|i| {
                let t = TAU * i as f64 / segments as f64;
                [radius * t.cos(), radius * t.sin()]
            })
            .collect();
        Self { name, radius, points }
    }
}

/// Uniform `n × n` sampling of `[-1, 1]²`, row-major with `y` outer.
#[derive(Debug, Clone, PartialEq)]
pub struct CoincidenceGrid {
    pub coords: Vec<f64>,
    pub labels: Vec<ContactLabel>,
    pub circles: Vec<ReferenceCircle>,
}

impl CoincidenceGrid {
    pub fn n(&self) -> usize {
        self.coords.len()
    }

    pub fn label(&self, ix: usize, iy: usize) -> ContactLabel {
        self.labels[iy * self.n() + ix]
    }
}

/// Grid coordinates `-1 + 2i/(n-1)`.
pub fn grid_coords(n: usize) -> Vec<f64> {
    let d = (n - 1) as f64;
    (0..n).map(|i| (2.0 * i as f64 - d) / d).collect()
}

const CIRCLE_SEGMENTS: usize = 360;

/// Labels over an `n × n` grid plus the circles `ρ = r`, `ρ = (r + 3R)/4`
/// and `ρ = R`.
pub fn coincidence_grid(problem: &ClassicalProblem, pert: &Perturbation, grid_n: usize) -> Result<CoincidenceGrid> {
    check_pair(problem, pert)?;
    if grid_n < 2 {
        return Err(input(format!("grid size must be at least 2, got {grid_n}")));
    }
    let coords = grid_coords(grid_n);
    let mut labels = Vec::with_capacity(grid_n * grid_n);
    for &y in &coords {
        for &x in &coords {
            labels.push(contact_label(pert, x, y));
        }
    }
    let (_, upper) = pert.r_tilde_bounds();
    let circles = vec![
        ReferenceCircle::sampled("inner", pert.inner_radius, CIRCLE_SEGMENTS),
        ReferenceCircle::sampled("intermediate", upper, CIRCLE_SEGMENTS),
        ReferenceCircle::sampled("free_boundary", problem.radius(), CIRCLE_SEGMENTS),
    ];
    Ok(CoincidenceGrid {
        coords,
        labels,
        circles,
    })
}
