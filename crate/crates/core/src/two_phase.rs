//! One-dimensional two-phase obstacle problem on `(-1, 1)`:
//! minimize `∫ ½ A v'² − f v + α₊ v₊ + α₋ v₋` with Dirichlet data.
//!
//! Approximations are continuous piecewise-linear functions, so every term
//! of the identity is integrated exactly: sign changes are located with the
//! closed-form root of each linear segment and each sign-constant piece is a
//! low-degree polynomial.

use crate::error::{input, Result};
use crate::intervals::IntervalSet;
use crate::quadrature::{integrate_1d, QuadratureConfig};
use crate::report::IdentityReport;

/// Exact energy of the benchmark solution, `5⅓`.
pub const J_U_BENCHMARK: f64 = 16.0 / 3.0;

/// Left and right ends of the benchmark zero set `[-½, ½]`.
pub const FREE_BOUNDARY: [f64; 2] = [-0.5, 0.5];

const BC_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoPhaseProblem {
    pub alpha_plus: f64,
    pub alpha_minus: f64,
    /// Constant source term.
    pub source: f64,
    pub bc_left: f64,
    pub bc_right: f64,
    /// Diffusion coefficient `A`.
    pub diffusion: f64,
}

impl TwoPhaseProblem {
    /// `α₊ = α₋ = 8`, `f = 0`, `A = 1`, `u(-1) = -1`, `u(1) = 1`.
    pub const BENCHMARK: Self = Self {
        alpha_plus: 8.0,
        alpha_minus: 8.0,
        source: 0.0,
        bc_left: -1.0,
        bc_right: 1.0,
        diffusion: 1.0,
    };

    pub fn new(alpha_plus: f64, alpha_minus: f64, source: f64, bc: (f64, f64), diffusion: f64) -> Result<Self> {
        if !(alpha_plus > 0.0 && alpha_minus > 0.0) {
            return Err(input(format!(
                "phase weights must be positive, got alpha+ = {alpha_plus}, alpha- = {alpha_minus}"
            )));
        }
        if diffusion.is_nan() || diffusion <= 0.0 {
            return Err(input(format!(
                "diffusion coefficient must be positive, got {diffusion}"
            )));
        }
        Ok(Self {
            alpha_plus,
            alpha_minus,
            source,
            bc_left: bc.0,
            bc_right: bc.1,
            diffusion,
        })
    }

    pub fn is_benchmark(&self) -> bool {
        *self == Self::BENCHMARK
    }
}

impl Default for TwoPhaseProblem {
    fn default() -> Self {
        Self::BENCHMARK
    }
}

/// Benchmark solution: `-(2x + 1)²` left of `-½`, zero in between,
/// `(2x - 1)²` right of `½`.
pub fn u_exact_1d(x: f64) -> f64 {
    if x <= -0.5 {
        -4.0 * x * x - 4.0 * x - 1.0
    } else if x >= 0.5 {
        4.0 * x * x - 4.0 * x + 1.0
    } else {
        0.0
    }
}

pub fn u_prime_1d(x: f64) -> f64 {
    if x < -0.5 {
        -8.0 * x - 4.0
    } else if x > 0.5 {
        8.0 * x - 4.0
    } else {
        0.0
    }
}

/// Continuous piecewise-linear function on `[-1, 1]` given by nodal values.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear1D {
    nodes: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseLinear1D {
    pub fn new(nodes: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 || nodes.len() != values.len() {
            return Err(input(format!(
                "need at least two nodes with one value each, got {} nodes and {} values",
                nodes.len(),
                values.len()
            )));
        }
        if nodes[0] != -1.0 || nodes[nodes.len() - 1] != 1.0 {
            return Err(input("nodes must start at -1 and end at 1"));
        }
        if !nodes.windows(2).all(|w| w[0] < w[1]) {
            return Err(input("nodes must be strictly increasing"));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(input("nodal values must be finite"));
        }
        Ok(Self { nodes, values })
    }

    /// Nodal interpolant of `f` at `nodes`.
    pub fn interpolate(nodes: Vec<f64>, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = nodes.iter().map(|&x| f(x)).collect();
        Self::new(nodes, values)
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn segment_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// `(x_i, x_{i+1}, v_i, v_{i+1})`
    pub fn segment(&self, i: usize) -> (f64, f64, f64, f64) {
        (self.nodes[i], self.nodes[i + 1], self.values[i], self.values[i + 1])
    }

    pub fn segments(&self) -> impl Iterator<Item = (f64, f64, f64, f64)> + '_ {
        (0..self.segment_count()).map(|i| self.segment(i))
    }

    /// Index of the segment containing `x` (the left one at interior nodes).
    fn segment_index(&self, x: f64) -> usize {
        let upper = self.nodes.partition_point(|&n| n < x);
        upper.saturating_sub(1).min(self.segment_count() - 1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        let (a, b, va, vb) = self.segment(self.segment_index(x));
        if x == a {
            return va;
        }
        if x == b {
            return vb;
        }
        va + (vb - va) * (x - a) / (b - a)
    }

    /// Slope of the segment containing `x`.
    pub fn slope_at(&self, x: f64) -> f64 {
        let (a, b, va, vb) = self.segment(self.segment_index(x));
        (vb - va) / (b - a)
    }

    /// Sign-change point of segment `i`, if its end values have strictly
    /// opposite signs.
    pub fn segment_root(&self, i: usize) -> Option<f64> {
        let (a, b, va, vb) = self.segment(i);
        if (va < 0.0 && vb > 0.0) || (va > 0.0 && vb < 0.0) {
            Some(a + (b - a) * va / (va - vb))
        } else {
            None
        }
    }

    /// Segment `i` cut at its root: pieces `(a, b, v(a), v(b))` on which `v`
    /// has one sign.
    fn sign_pieces(&self, i: usize) -> impl Iterator<Item = (f64, f64, f64, f64)> {
        let (a, b, va, vb) = self.segment(i);
        let (first, second) = match self.segment_root(i) {
            Some(root) => ((a, root, va, 0.0), Some((root, b, 0.0, vb))),
            None => ((a, b, va, vb), None),
        };
        std::iter::once(first).chain(second)
    }
}

/// Piecewise-linear interpolant of the benchmark solution on `n` uniform
/// nodes `-1 + j h`, `h = 2/(n-1)`.
///
/// Nodes are formed as `(2j - (n-1)) / (n-1)` so that `±½` are hit exactly
/// whenever `n ≡ 1 (mod 4)`.
pub fn interpolant(n: usize) -> Result<PiecewiseLinear1D> {
    if n < 2 {
        return Err(input(format!("interpolant needs at least 2 nodes, got {n}")));
    }
    let d = (n - 1) as f64;
    let nodes = (0..n).map(|j| (2.0 * j as f64 - d) / d).collect();
    PiecewiseLinear1D::interpolate(nodes, u_exact_1d)
}

/// `Ω₋`, `Ω₀`, `Ω₊` for a function.
#[derive(Debug, Clone, PartialEq)]
pub struct SignDecomposition {
    pub negative: IntervalSet,
    pub zero: IntervalSet,
    pub positive: IntervalSet,
}

impl SignDecomposition {
    pub fn total_measure(&self) -> f64 {
        self.negative.measure() + self.zero.measure() + self.positive.measure()
    }
}

/// Decomposition of the benchmark solution.
pub fn benchmark_u_sets() -> SignDecomposition {
    let [l, r] = FREE_BOUNDARY;
    SignDecomposition {
        negative: IntervalSet::single(-1.0, l),
        zero: IntervalSet::single(l, r),
        positive: IntervalSet::single(r, 1.0),
    }
}

/// Exact sign sets of `v`. `Ω₀` collects whole segments on which `v ≡ 0`;
/// isolated zeros belong to none of the three sets.
pub fn sign_decomposition(v: &PiecewiseLinear1D) -> SignDecomposition {
    let mut negative = Vec::new();
    let mut zero = Vec::new();
    let mut positive = Vec::new();
    for i in 0..v.segment_count() {
        let (a, b, va, vb) = v.segment(i);
        if va == 0.0 && vb == 0.0 {
            zero.push((a, b));
            continue;
        }
        for (pa, pb, qa, qb) in v.sign_pieces(i) {
            if qa + qb > 0.0 {
                positive.push((pa, pb));
            } else {
                negative.push((pa, pb));
            }
        }
    }
    SignDecomposition {
        negative: IntervalSet::from_intervals(negative),
        zero: IntervalSet::from_intervals(zero),
        positive: IntervalSet::from_intervals(positive),
    }
}

/// The sets where `v` and `u` disagree in phase, with their weights.
#[derive(Debug, Clone, PartialEq)]
pub struct MismatchRegion {
    /// `ω₊ = Ω^v_+ ∩ Ω^u_0`, weight `α₊`.
    pub plus: IntervalSet,
    /// `ω₋ = Ω^v_- ∩ Ω^u_0`, weight `α₋`.
    pub minus: IntervalSet,
    /// `ω_± = (Ω^v_+ ∩ Ω^u_-) ∪ (Ω^v_- ∩ Ω^u_+)`, weight `α₊ + α₋`.
    pub crossed: IntervalSet,
    pub alpha_plus: f64,
    pub alpha_minus: f64,
}

impl MismatchRegion {
    /// `(set, weight)` pairs.
    pub fn weighted(&self) -> [(&IntervalSet, f64); 3] {
        [
            (&self.plus, self.alpha_plus),
            (&self.minus, self.alpha_minus),
            (&self.crossed, self.alpha_plus + self.alpha_minus),
        ]
    }

    /// `α(x)` on `ω`, `None` off it.
    pub fn weight_at(&self, x: f64) -> Option<f64> {
        self.weighted()
            .into_iter()
            .find(|(set, _)| set.contains(x))
            .map(|(_, w)| w)
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty() && self.crossed.is_empty()
    }

    pub fn measure(&self) -> f64 {
        self.plus.measure() + self.minus.measure() + self.crossed.measure()
    }
}

pub fn mismatch_region(
    v_sets: &SignDecomposition,
    u_sets: &SignDecomposition,
    problem: &TwoPhaseProblem,
) -> MismatchRegion {
    MismatchRegion {
        plus: v_sets.positive.intersect(&u_sets.zero),
        minus: v_sets.negative.intersect(&u_sets.zero),
        crossed: v_sets
            .positive
            .intersect(&u_sets.negative)
            .union(&v_sets.negative.intersect(&u_sets.positive)),
        alpha_plus: problem.alpha_plus,
        alpha_minus: problem.alpha_minus,
    }
}

/// `∫_{(a,b)} |v|`, assuming `v` does not change sign inside.
fn abs_integral(v: &PiecewiseLinear1D, a: f64, b: f64) -> f64 {
    let mut cuts = vec![a];
    cuts.extend(v.nodes().iter().copied().filter(|&x| x > a && x < b));
    cuts.push(b);
    cuts.windows(2)
        .map(|w| 0.5 * (v.eval(w[0]).abs() + v.eval(w[1]).abs()) * (w[1] - w[0]))
        .sum()
}

/// `μ_ω(v) = ∫_ω α(x) |v|`.
pub fn mu_omega(v: &PiecewiseLinear1D, problem: &TwoPhaseProblem, u_sets: &SignDecomposition) -> f64 {
    let region = mismatch_region(&sign_decomposition(v), u_sets, problem);
    region
        .weighted()
        .into_iter()
        .map(|(set, weight)| {
            weight
                * set
                    .intervals()
                    .iter()
                    .fold(0.0, |acc, &(a, b)| acc + abs_integral(v, a, b))
        })
        .fold(0.0, |acc, x| acc + x)
}

/// `J(v)`, exact for piecewise-linear `v`.
pub fn j_two_phase(v: &PiecewiseLinear1D, problem: &TwoPhaseProblem) -> Result<f64> {
    let (left, right) = (v.values()[0], v.values()[v.values().len() - 1]);
    if (left - problem.bc_left).abs() > BC_TOL || (right - problem.bc_right).abs() > BC_TOL {
        return Err(input(format!(
            "boundary values ({left}, {right}) do not match the Dirichlet data ({}, {})",
            problem.bc_left, problem.bc_right
        )));
    }
    let mut total = 0.0;
    for i in 0..v.segment_count() {
        let (a, b, va, vb) = v.segment(i);
        let slope = (vb - va) / (b - a);
        total += 0.5 * problem.diffusion * slope * slope * (b - a);
        for (pa, pb, qa, qb) in v.sign_pieces(i) {
            let mean = 0.5 * (qa + qb);
            let len = pb - pa;
            let phase = if mean > 0.0 {
                problem.alpha_plus * mean
            } else {
                -problem.alpha_minus * mean
            };
            total += (phase - problem.source * mean) * len;
        }
    }
    Ok(total)
}

/// `J(u)` of the benchmark solution by Gauss quadrature on its three
/// polynomial pieces (exact up to rounding). Used to confirm
/// [`J_U_BENCHMARK`].
pub fn j_exact_solution(problem: &TwoPhaseProblem) -> Result<f64> {
    let cfg = QuadratureConfig {
        order_1d: 3,
        ..Default::default()
    };
    let [l, r] = FREE_BOUNDARY;
    integrate_1d(
        |x| {
            let u = u_exact_1d(x);
            let du = u_prime_1d(x);
            0.5 * problem.diffusion * du * du - problem.source * u
                + problem.alpha_plus * u.max(0.0)
                + problem.alpha_minus * (-u).max(0.0)
        },
        &[-1.0, l, r, 1.0],
        &cfg,
    )
}

/// `½ ∫ A (u' − v')²`, integrated exactly on the pieces between the nodes
/// of `v` and the free boundary `±½`.
pub fn energy_half_norm_1d(v: &PiecewiseLinear1D, problem: &TwoPhaseProblem) -> Result<f64> {
    let mut breaks: Vec<f64> = v.nodes().to_vec();
    breaks.extend(FREE_BOUNDARY);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let cfg = QuadratureConfig {
        order_1d: 2,
        ..Default::default()
    };
    let a = problem.diffusion;
    integrate_1d(
        |x| {
            let d = u_prime_1d(x) - v.slope_at(x);
            0.5 * a * d * d
        },
        &breaks,
        &cfg,
    )
}

fn require_benchmark(problem: &TwoPhaseProblem) -> Result<()> {
    if problem.is_benchmark() {
        Ok(())
    } else {
        Err(input(
            "the exact two-phase solution is only known for the benchmark data \
             (alpha = 8, A = 1, f = 0, u(-1) = -1, u(1) = 1)",
        ))
    }
}

/// Identity terms for an arbitrary piecewise-linear approximation of the
/// benchmark solution.
pub fn identity_report_for(v: &PiecewiseLinear1D, problem: &TwoPhaseProblem) -> Result<IdentityReport> {
    require_benchmark(problem)?;
    let u_sets = benchmark_u_sets();
    Ok(IdentityReport::new(
        energy_half_norm_1d(v, problem)?,
        mu_omega(v, problem, &u_sets),
        j_two_phase(v, problem)? - J_U_BENCHMARK,
    ))
}

/// Identity terms for `v = u`. The norm and measure terms vanish
/// structurally; the gap is `J(u)` by quadrature minus the closed value, so
/// it is zero up to rounding.
pub fn exact_solution_report(problem: &TwoPhaseProblem) -> Result<IdentityReport> {
    require_benchmark(problem)?;
    let u_sets = benchmark_u_sets();
    let region = mismatch_region(&u_sets, &u_sets, problem);
    let cfg = QuadratureConfig {
        order_1d: 2,
        ..Default::default()
    };
    let mut breaks = vec![-1.0, 1.0];
    breaks.splice(1..1, FREE_BOUNDARY);
    let energy = integrate_1d(
        |x| {
            let d = u_prime_1d(x) - u_prime_1d(x);
            0.5 * problem.diffusion * d * d
        },
        &breaks,
        &cfg,
    )?;
    let mut measure = 0.0;
    for (set, weight) in region.weighted() {
        for &(a, b) in set.intervals() {
            measure += weight * integrate_1d(|x| u_exact_1d(x).abs(), &[a, b], &cfg)?;
        }
    }
    Ok(IdentityReport::new(
        energy,
        measure,
        j_exact_solution(problem)? - J_U_BENCHMARK,
    ))
}

/// Identity terms for the `n`-node interpolant `v_N`.
pub fn identity_report_two_phase(n: usize, problem: &TwoPhaseProblem) -> Result<IdentityReport> {
    identity_report_for(&interpolant(n)?, problem)
}

/// Pointwise `μ_ω` density `α(x)|v(x)|` on `ω`, zero elsewhere.
pub fn measure_density(v: &PiecewiseLinear1D, region: &MismatchRegion, x: f64) -> f64 {
    region.weight_at(x).map_or(0.0, |w| w * v.eval(x).abs())
}

/// `(x, density)` samples on `grid_n` uniform points of `[-1, 1]`.
pub fn measure_profile(
    v: &PiecewiseLinear1D,
    problem: &TwoPhaseProblem,
    u_sets: &SignDecomposition,
    grid_n: usize,
) -> Result<Vec<(f64, f64)>> {
    if grid_n < 2 {
        return Err(input(format!("grid size must be at least 2, got {grid_n}")));
    }
    let region = mismatch_region(&sign_decomposition(v), u_sets, problem);
    let d = (grid_n - 1) as f64;
    Ok((0..grid_n)
        .map(|i| {
            let x = (2.0 * i as f64 - d) / d;
            (x, measure_density(v, &region, x))
        })
        .collect())
}
