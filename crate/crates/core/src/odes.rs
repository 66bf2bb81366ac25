//! Profile ODEs of the non-isotropic problems and the degenerate axis-crossing IVP.
//!
//! Regular initial value problems are integrated with classical fixed-step RK4.
//! The IVP `z'' + z'/t = (1 − z'²)/(2z)`, `z(0) = a`, `z'(0) = 0` is singular at
//! the axis and is solved instead as the fixed point of
//!
//! ```text
//! (T z)(t) = a + ∫₀ᵗ (1/r) ∫₀ʳ τ(1 − z'(τ)²)/(2z(τ)) dτ dr
//! ```
//!
//! on `[0, R]`, with `R` taken from the self-map and contraction radius bounds.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curves::{real_power, PlaneCurve};
use crate::error::{GeometryError, Result};
use crate::io::fmt_num;
use crate::quadrature::cumulative_simpson;

/// Denominators below this magnitude abort integration.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;
/// Below this abscissa the revolution ODE uses its regularized axis form.
pub const AXIS_REGULARIZATION: f64 = 1e-8;

/// Second-order profile equations `z'' = rhs(t, z, z')`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ProfileODE {
    /// `(z^α − λ) z'' = α z^{α−1} (1/2 − z'²/2)`: α-catenaries with respect to the x-axis.
    NonIsotropicAlphaCatenary { alpha: f64, lambda: f64 },
    /// `z'' + z'/t = (1 − z'²)/(2z)`: singular minimal surfaces of revolution over `z = 0`.
    RevolutionNonIsotropic,
    /// Profile equation of singular minimal surfaces of parabolic revolution over `z = 0`:
    /// `(2z + b c₂ t²) z'' + z'² − 2abc₂/(a²+b²) t z' + 2bc₂/(a²+b²) (z + b c₂ t²) − b²/(a²+b²) = 0`.
    ParabolicNonIsotropic { a: f64, b: f64, c2: f64 },
}

impl ProfileODE {
    /// Coefficient multiplying `z''` in the equation.
    pub fn leading_coefficient(&self, t: f64, z: f64) -> Result<f64> {
        match *self {
            Self::NonIsotropicAlphaCatenary { alpha, lambda } => {
                Ok(real_power(z, alpha, &format!("t = {t}"))? - lambda)
            }
            Self::RevolutionNonIsotropic => Ok(2.0 * z),
            Self::ParabolicNonIsotropic { b, c2, .. } => Ok(2.0 * z + b * c2 * t * t),
        }
    }

    /// Solved form `z''`.
    pub fn rhs(&self, t: f64, z: f64, zp: f64) -> Result<f64> {
        let lead = self.leading_coefficient(t, z)?;
        if !(lead.abs() >= SINGULARITY_THRESHOLD) {
            return Err(GeometryError::SingularityEncountered { t, value: lead });
        }
        match *self {
            Self::NonIsotropicAlphaCatenary { alpha, .. } => {
                let w = real_power(z, alpha - 1.0, &format!("t = {t}"))?;
                Ok(alpha * w * (0.5 - 0.5 * zp * zp) / lead)
            }
            Self::RevolutionNonIsotropic => {
                if t.abs() < AXIS_REGULARIZATION {
                    // z'/t → z''(0) on the axis
                    Ok((1.0 - zp * zp) / (4.0 * z))
                } else {
                    Ok((1.0 - zp * zp) / lead - zp / t)
                }
            }
            Self::ParabolicNonIsotropic { a, b, c2 } => {
                let s = a * a + b * b;
                let rest = zp * zp - 2.0 * a * b * c2 / s * t * zp
                    + 2.0 * b * c2 / s * (z + b * c2 * t * t)
                    - b * b / s;
                Ok(-rest / lead)
            }
        }
    }

    /// The equation evaluated on `(z, z', z'')` in its undivided form; zero on solutions.
    pub fn equation_residual(&self, t: f64, z: f64, zp: f64, zpp: f64) -> Result<f64> {
        match *self {
            Self::NonIsotropicAlphaCatenary { alpha, lambda } => {
                let at = format!("t = {t}");
                Ok((real_power(z, alpha, &at)? - lambda) * zpp
                    - alpha * real_power(z, alpha - 1.0, &at)? * (0.5 - 0.5 * zp * zp))
            }
            Self::RevolutionNonIsotropic => {
                if z.abs() < SINGULARITY_THRESHOLD || t.abs() < SINGULARITY_THRESHOLD {
                    return Err(GeometryError::SingularityEncountered { t, value: z.min(t) });
                }
                Ok(zpp + zp / t - (1.0 - zp * zp) / (2.0 * z))
            }
            Self::ParabolicNonIsotropic { a, b, c2 } => {
                let s = a * a + b * b;
                Ok(
                    (2.0 * z + b * c2 * t * t) * zpp + zp * zp - 2.0 * a * b * c2 / s * t * zp
                        + 2.0 * b * c2 / s * (z + b * c2 * t * t)
                        - b * b / s,
                )
            }
        }
    }
}

/// Samples `(t, z, z')` of a profile on a strictly monotone grid.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SampledProfile {
    pub t: Vec<f64>,
    pub z: Vec<f64>,
    pub zp: Vec<f64>,
}

impl SampledProfile {
    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Lowest and highest abscissa.
    pub fn span(&self) -> (f64, f64) {
        let (a, b) = (self.t[0], self.t[self.t.len() - 1]);
        (a.min(b), a.max(b))
    }

    /// Cubic Hermite interpolation of `(z, z')` at `s` inside the span.
    pub fn eval(&self, s: f64) -> Option<(f64, f64)> {
        let (lo, hi) = self.span();
        if !(s >= lo && s <= hi) || self.len() < 2 {
            return None;
        }
        let ascending = self.t[0] <= self.t[self.len() - 1];
        let k = if ascending {
            self.t.partition_point(|&x| x <= s)
        } else {
            self.t.partition_point(|&x| x >= s)
        };
        let i = k.clamp(1, self.len() - 1) - 1;
        let (t0, t1) = (self.t[i], self.t[i + 1]);
        let h = t1 - t0;
        let u = (s - t0) / h;
        let (z0, z1) = (self.z[i], self.z[i + 1]);
        let (m0, m1) = (self.zp[i] * h, self.zp[i + 1] * h);
        let (u2, u3) = (u * u, u * u * u);
        let z = (2.0 * u3 - 3.0 * u2 + 1.0) * z0
            + (u3 - 2.0 * u2 + u) * m0
            + (-2.0 * u3 + 3.0 * u2) * z1
            + (u3 - u2) * m1;
        let zp = ((6.0 * u2 - 6.0 * u) * z0
            + (3.0 * u2 - 4.0 * u + 1.0) * m0
            + (-6.0 * u2 + 6.0 * u) * z1
            + (3.0 * u2 - 2.0 * u) * m1)
            / h;
        Some((z, zp))
    }

    /// Discrete C¹ norm `max|z| + max|z'|` of the difference with `other` (same grid).
    pub fn c1_distance(&self, other: &Self) -> f64 {
        let dz = self
            .z
            .iter()
            .zip(&other.z)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        let dzp = self
            .zp
            .iter()
            .zip(&other.zp)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        dz + dzp
    }
}

/// Bookkeeping of a degenerate (axis) solve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegenerateInfo {
    pub a: f64,
    pub epsilon: f64,
    pub radius: RadiusBound,
}

/// Radius bounds guaranteeing that `T` is a self-map and a contraction on the ε-ball around `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadiusBound {
    /// `min{√(4ε(a−ε)/(1+ε²)), 2ε(a−ε)/(1+ε²)}`
    pub self_map: f64,
    /// `min{√(2/L), 1/L}` with `L = L₁L₂`.
    pub contraction: f64,
    /// Lipschitz constant of `x ↦ 1/(2x)` on `[a−ε, a+ε]`.
    pub lipschitz_inverse: f64,
    /// Lipschitz constant of `x ↦ 1 − x²` on `[a−ε, a+ε]`.
    pub lipschitz_square: f64,
    /// Safety factor applied to the stricter bound.
    pub safety: f64,
    /// The radius actually used.
    pub radius: f64,
}

/// Output of [`integrate`] or [`picard_solve_degenerate`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IVPResult {
    pub samples: SampledProfile,
    /// Picard iterations, or RK4 steps.
    pub iterations: usize,
    /// Ratios of successive C¹ distances between Picard iterates.
    pub contraction_ratios: Vec<f64>,
    /// Estimated `z''(0)` for degenerate solves.
    pub zpp_origin: Option<f64>,
    pub degenerate: Option<DegenerateInfo>,
    /// RK4: max midpoint `|z'' − rhs|` by difference reconstruction.
    /// Picard: final C¹ distance between iterates.
    pub max_residual: f64,
}

#[derive(Serialize)]
struct Sidecar<'a> {
    a: Option<f64>,
    #[serde(rename = "R")]
    radius: Option<f64>,
    epsilon: Option<f64>,
    iterations: usize,
    contraction_ratios: &'a [f64],
    zpp_origin: Option<f64>,
}

impl IVPResult {
    /// CSV with header `t,z,zp`, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,z,zp\n");
        for i in 0..self.samples.len() {
            out.push_str(&format!(
                "{},{},{}\n",
                fmt_num(self.samples.t[i]),
                fmt_num(self.samples.z[i]),
                fmt_num(self.samples.zp[i])
            ));
        }
        out
    }

    /// The sampled solution as a graph curve: `z`, `z'` by Hermite interpolation
    /// of the samples and `z''` from the equation itself.
    pub fn curve(&self, ode: &ProfileODE) -> Result<PlaneCurve> {
        let samples = self.samples.clone();
        let (lo, hi) = samples.span();
        let ode = *ode;
        PlaneCurve::graph(lo, hi, move |t| match samples.eval(t) {
            Some((z, zp)) => (z, zp, ode.rhs(t, z, zp).unwrap_or(f64::NAN)),
            None => (f64::NAN, f64::NAN, f64::NAN),
        })
    }

    /// JSON sidecar `{a, R, epsilon, iterations, contraction_ratios, zpp_origin}`.
    pub fn sidecar_json(&self) -> String {
        let d = self.degenerate;
        let sidecar = Sidecar {
            a: d.map(|d| d.a),
            radius: d.map(|d| d.radius.radius),
            epsilon: d.map(|d| d.epsilon),
            iterations: self.iterations,
            contraction_ratios: &self.contraction_ratios,
            zpp_origin: self.zpp_origin,
        };
        serde_json::to_string_pretty(&sidecar).expect("sidecar serializes")
    }
}

/// Fixed-step classical RK4 from `(t0, z0, zp0)` to `t1` in `steps` steps.
///
/// `t1 < t0` integrates backwards. The reported `max_residual` is the largest
/// midpoint mismatch between the difference quotient of `z'` and the right-hand
/// side at the Hermite midpoint state; it scales like the squared step.
pub fn integrate(
    ode: &ProfileODE,
    t0: f64,
    z0: f64,
    zp0: f64,
    t1: f64,
    steps: usize,
) -> Result<IVPResult> {
    if steps == 0 || !(t0 != t1) || !t0.is_finite() || !t1.is_finite() {
        return Err(GeometryError::InvalidInterval { lo: t0, hi: t1 });
    }
    if matches!(ode, ProfileODE::RevolutionNonIsotropic) && !(t0 > 0.0 && t1 >= 0.0) {
        return Err(GeometryError::DomainError(format!(
            "revolution profile IVP needs t0 > 0 and t1 >= 0 (got {t0}, {t1}); use picard_solve_degenerate on the axis"
        )));
    }
    let h = (t1 - t0) / steps as f64;
    let f = |t: f64, y: [f64; 2]| -> Result<[f64; 2]> { Ok([y[1], ode.rhs(t, y[0], y[1])?]) };
    let mut samples = SampledProfile {
        t: Vec::with_capacity(steps + 1),
        z: Vec::with_capacity(steps + 1),
        zp: Vec::with_capacity(steps + 1),
    };
    let mut y = [z0, zp0];
    samples.t.push(t0);
    samples.z.push(z0);
    samples.zp.push(zp0);
    for i in 0..steps {
        let t = t0 + i as f64 * h;
        let k1 = f(t, y)?;
        let k2 = f(
            t + 0.5 * h,
            [y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]],
        )?;
        let k3 = f(
            t + 0.5 * h,
            [y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]],
        )?;
        let k4 = f(t + h, [y[0] + h * k3[0], y[1] + h * k3[1]])?;
        for c in 0..2 {
            y[c] += h / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
        }
        let tn = if i + 1 == steps {
            t1
        } else {
            t0 + (i + 1) as f64 * h
        };
        if !(y[0].is_finite() && y[1].is_finite()) {
            return Err(GeometryError::StepFailure { t: tn });
        }
        samples.t.push(tn);
        samples.z.push(y[0]);
        samples.zp.push(y[1]);
    }
    let mut max_residual = 0.0f64;
    for i in 0..steps {
        let (z0, z1) = (samples.z[i], samples.z[i + 1]);
        let (p0, p1) = (samples.zp[i], samples.zp[i + 1]);
        let zm = 0.5 * (z0 + z1) + h * (p0 - p1) / 8.0;
        let pm = 1.5 * (z1 - z0) / h - 0.25 * (p0 + p1);
        let tm = samples.t[i] + 0.5 * h;
        let r = ((p1 - p0) / h - ode.rhs(tm, zm, pm)?).abs();
        max_residual = max_residual.max(r);
    }
    Ok(IVPResult {
        samples,
        iterations: steps,
        contraction_ratios: Vec::new(),
        zpp_origin: None,
        degenerate: None,
        max_residual,
    })
}

/// Tuning of the degenerate solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PicardOptions {
    /// Uniform grid nodes on `[0, R]`; must be odd.
    pub nodes: usize,
    /// `ε = epsilon_fraction · a`, with `0 < epsilon_fraction < 1`.
    pub epsilon_fraction: f64,
    pub safety: f64,
}

impl Default for PicardOptions {
    fn default() -> Self {
        Self {
            nodes: 513,
            epsilon_fraction: 0.5,
            safety: 0.9,
        }
    }
}

fn max_on_interval<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> f64 {
    const SAMPLES: usize = 1001;
    (0..SAMPLES)
        .map(|i| f(lo + (hi - lo) * i as f64 / (SAMPLES - 1) as f64))
        .fold(0.0, f64::max)
}

/// Radius on which `T` is a contracting self-map of the closed ε-ball around `a`.
pub fn radius_bound(a: f64, epsilon: f64, safety: f64) -> Result<RadiusBound> {
    if !(a > 0.0) || !(epsilon > 0.0 && epsilon < a) {
        return Err(GeometryError::DomainError(format!(
            "need a > 0 and 0 < epsilon < a (a = {a}, epsilon = {epsilon})"
        )));
    }
    let q = epsilon * (a - epsilon) / (1.0 + epsilon * epsilon);
    let self_map = (4.0 * q).sqrt().min(2.0 * q);
    let (lo, hi) = (a - epsilon, a + epsilon);
    let lipschitz_inverse = max_on_interval(|x| 1.0 / (2.0 * x * x), lo, hi);
    let lipschitz_square = max_on_interval(|x| (2.0 * x).abs(), lo, hi);
    let l = lipschitz_inverse * lipschitz_square;
    let contraction = (2.0 / l).sqrt().min(1.0 / l);
    Ok(RadiusBound {
        self_map,
        contraction,
        lipschitz_inverse,
        lipschitz_square,
        safety,
        radius: safety * self_map.min(contraction),
    })
}

fn check_uniform(t: &[f64]) -> Result<f64> {
    if t.len() < 3 || t.len().is_multiple_of(2) || t[0] != 0.0 {
        return Err(GeometryError::InvalidSpec(
            "operator T needs an odd number (>= 3) of uniform nodes starting at t = 0".into(),
        ));
    }
    let h = t[1] - t[0];
    let uniform = t
        .windows(2)
        .all(|w| ((w[1] - w[0]) - h).abs() <= 1e-9 * h.abs().max(1e-300));
    if !(h > 0.0) || !uniform {
        return Err(GeometryError::InvalidSpec(
            "operator T needs a uniform increasing grid".into(),
        ));
    }
    Ok(h)
}

/// One application of `T` via nested cumulative Simpson quadrature on the grid of `profile`.
pub fn operator_t_apply(a: f64, profile: &SampledProfile) -> Result<SampledProfile> {
    let h = check_uniform(&profile.t)?;
    let mut inner = Vec::with_capacity(profile.len());
    for ((&t, &z), &zp) in profile.t.iter().zip(&profile.z).zip(&profile.zp) {
        if z <= SINGULARITY_THRESHOLD {
            return Err(GeometryError::DivisionByZero { t, value: z });
        }
        inner.push(t * (1.0 - zp * zp) / (2.0 * z));
    }
    let inner_integral = cumulative_simpson(&inner, h);
    let zp: Vec<f64> = profile
        .t
        .iter()
        .zip(&inner_integral)
        .map(|(&t, &i)| if t == 0.0 { 0.0 } else { i / t })
        .collect();
    let z = cumulative_simpson(&zp, h)
        .into_iter()
        .map(|v| a + v)
        .collect();
    Ok(SampledProfile {
        t: profile.t.clone(),
        z,
        zp,
    })
}

/// Estimates `z''(0)` of an even profile by least squares `z − z(0) ≈ c₂t² + c₄t⁴` near the axis.
fn second_derivative_at_origin(p: &SampledProfile) -> f64 {
    let m = p.len().min(65);
    let scale = p.t[m - 1];
    let (mut s4, mut s6, mut s8, mut r2, mut r4) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 1..m {
        let u = p.t[i] / scale;
        let y = p.z[i] - p.z[0];
        let (u2, u4) = (u * u, u.powi(4));
        s4 += u4;
        s6 += u4 * u2;
        s8 += u4 * u4;
        r2 += y * u2;
        r4 += y * u4;
    }
    let det = s4 * s8 - s6 * s6;
    let c2 = (r2 * s8 - r4 * s6) / det;
    2.0 * c2 / (scale * scale)
}

/// Solves `z'' + z'/t = (1 − z'²)/(2z)`, `z(0) = a`, `z'(0) = 0` on `[0, R]` by Picard iteration.
pub fn picard_solve_degenerate(a: f64, tol: f64, max_iter: usize) -> Result<IVPResult> {
    picard_solve_degenerate_with(a, tol, max_iter, &PicardOptions::default())
}

pub fn picard_solve_degenerate_with(
    a: f64,
    tol: f64,
    max_iter: usize,
    options: &PicardOptions,
) -> Result<IVPResult> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(GeometryError::DomainError(format!(
            "initial height a = {a} must be positive"
        )));
    }
    if !(tol > 0.0) {
        return Err(GeometryError::InvalidSpec(format!(
            "tolerance {tol} must be positive"
        )));
    }
    let epsilon = options.epsilon_fraction * a;
    let radius = radius_bound(a, epsilon, options.safety)?;
    let n = options.nodes;
    if n < 3 || n.is_multiple_of(2) {
        return Err(GeometryError::InvalidSpec(format!(
            "Picard grid needs an odd node count >= 3 (got {n})"
        )));
    }
    let t: Vec<f64> = (0..n)
        .map(|i| radius.radius * i as f64 / (n - 1) as f64)
        .collect();
    let mut current = SampledProfile {
        z: vec![a; n],
        zp: vec![0.0; n],
        t,
    };
    let mut ratios = Vec::new();
    let mut previous: Option<f64> = None;
    for iteration in 1..=max_iter {
        let next = operator_t_apply(a, &current)?;
        let distance = next.c1_distance(&current);
        if let Some(prev) = previous {
            let ratio = distance / prev;
            if !(ratio < 1.0) {
                return Err(GeometryError::NonContraction { iteration, ratio });
            }
            ratios.push(ratio);
        }
        current = next;
        if distance < tol {
            let zpp_origin = second_derivative_at_origin(&current);
            return Ok(IVPResult {
                samples: current,
                iterations: iteration,
                contraction_ratios: ratios,
                zpp_origin: Some(zpp_origin),
                degenerate: Some(DegenerateInfo { a, epsilon, radius }),
                max_residual: distance,
            });
        }
        previous = Some(distance);
    }
    Err(GeometryError::MaxIterExceeded {
        iterations: max_iter,
        distance: previous.unwrap_or(f64::INFINITY),
    })
}

/// Continues a degenerate solution past `R` with RK4 from its endpoint state.
pub fn extend_with_rk(result: &IVPResult, t_end: f64, steps: usize) -> Result<IVPResult> {
    let s = &result.samples;
    let last = s.len() - 1;
    integrate(
        &ProfileODE::RevolutionNonIsotropic,
        s.t[last],
        s.z[last],
        s.zp[last],
        t_end,
        steps,
    )
}

/// Degenerate solves for several initial heights, run concurrently, in input order.
pub fn continuity_in_a(a_values: &[f64], tol: f64, max_iter: usize) -> Result<Vec<IVPResult>> {
    a_values
        .par_iter()
        .map(|&a| picard_solve_degenerate(a, tol, max_iter))
        .collect()
}

/// Sup-norm distance of `z` between two profiles over their common span, sampled at both grids.
pub fn sup_distance(p: &SampledProfile, q: &SampledProfile) -> Option<f64> {
    let (plo, phi) = p.span();
    let (qlo, qhi) = q.span();
    let (lo, hi) = (plo.max(qlo), phi.min(qhi));
    if !(lo <= hi) {
        return None;
    }
    let mut worst = 0.0f64;
    for &s in p.t.iter().chain(&q.t).filter(|&&s| s >= lo && s <= hi) {
        let (zp, _) = p.eval(s)?;
        let (zq, _) = q.eval(s)?;
        worst = worst.max((zp - zq).abs());
    }
    Some(worst)
}

/// One row of the continuity table: neighbouring initial heights and their solution gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuityRow {
    pub a_from: f64,
    pub a_to: f64,
    pub sup_distance: f64,
}

/// Sup-norm gaps between consecutive degenerate solutions.
pub fn continuity_table(a_values: &[f64], results: &[IVPResult]) -> Vec<ContinuityRow> {
    a_values
        .windows(2)
        .zip(results.windows(2))
        .map(|(a, r)| ContinuityRow {
            a_from: a[0],
            a_to: a[1],
            sup_distance: sup_distance(&r[0].samples, &r[1].samples).unwrap_or(f64::NAN),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_slope_is_an_equilibrium_of_the_lx_catenary() {
        let ode = ProfileODE::NonIsotropicAlphaCatenary {
            alpha: 1.0,
            lambda: 0.0,
        };
        let r = integrate(&ode, 0.5, 1.5, 1.0, 3.0, 200).unwrap();
        for (t, (z, zp)) in r
            .samples
            .t
            .iter()
            .zip(r.samples.z.iter().zip(&r.samples.zp))
        {
            assert!((zp - 1.0).abs() < 1e-10);
            assert!((z - (t + 1.0)).abs() < 1e-10);
        }
    }

    #[test]
    fn revolution_ivp_is_reversible() {
        let ode = ProfileODE::RevolutionNonIsotropic;
        let fwd = integrate(&ode, 1.0, 1.0, 0.0, 2.0, 1000).unwrap();
        let n = fwd.samples.len() - 1;
        let back = integrate(&ode, 2.0, fwd.samples.z[n], fwd.samples.zp[n], 1.0, 1000).unwrap();
        let m = back.samples.len() - 1;
        assert!((back.samples.z[m] - 1.0).abs() < 1e-9);
        assert!(back.samples.zp[m].abs() < 1e-9);
    }

    #[test]
    fn parabolic_ode_accepts_linear_profile() {
        let ode = ProfileODE::ParabolicNonIsotropic {
            a: 0.0,
            b: 1.0,
            c2: 0.0,
        };
        for t in [0.5, 1.0, 4.0] {
            assert!(ode.equation_residual(t, t, 1.0, 0.0).unwrap().abs() < 1e-10);
        }
        let r = integrate(&ode, 1.0, 1.0, 1.0, 3.0, 100).unwrap();
        for (t, z) in r.samples.t.iter().zip(&r.samples.z) {
            assert!((z - t).abs() < 1e-10);
        }
    }

    #[test]
    fn midpoint_residual_is_reported() {
        let ode = ProfileODE::RevolutionNonIsotropic;
        let r = integrate(&ode, 1.0, 1.0, 0.2, 2.0, 4000).unwrap();
        assert!(r.max_residual < 1e-8, "{}", r.max_residual);
    }

    #[test]
    fn singular_denominator_aborts() {
        let ode = ProfileODE::RevolutionNonIsotropic;
        assert!(matches!(
            ode.rhs(1.0, 0.0, 0.0),
            Err(GeometryError::SingularityEncountered { .. })
        ));
        let zz = ProfileODE::ParabolicNonIsotropic {
            a: 0.0,
            b: 1.0,
            c2: 2.0,
        };
        // 2z + 2t² vanishes at (t, z) = (1, −1)
        assert!(zz.rhs(1.0, -1.0, 0.0).is_err());
    }

    #[test]
    fn integrate_rejects_bad_intervals() {
        let ode = ProfileODE::RevolutionNonIsotropic;
        assert!(integrate(&ode, 1.0, 1.0, 0.0, 1.0, 10).is_err());
        assert!(integrate(&ode, 1.0, 1.0, 0.0, 2.0, 0).is_err());
        assert!(matches!(
            integrate(&ode, 0.0, 1.0, 0.0, 1.0, 10),
            Err(GeometryError::DomainError(_))
        ));
    }

    #[test]
    fn operator_on_constant_profile() {
        let a = 1.7;
        let n = 129;
        let r = 0.3;
        let t: Vec<f64> = (0..n).map(|i| r * i as f64 / (n - 1) as f64).collect();
        let p = SampledProfile {
            z: vec![a; n],
            zp: vec![0.0; n],
            t: t.clone(),
        };
        let q = operator_t_apply(a, &p).unwrap();
        assert_eq!(q.zp[0], 0.0);
        for (i, &ti) in t.iter().enumerate() {
            // analytic: a + t²/(8a), derivative t/(4a)
            assert!((q.z[i] - (a + ti * ti / (8.0 * a))).abs() < 1e-14);
            assert!((q.zp[i] - ti / (4.0 * a)).abs() < 1e-14);
        }
    }

    #[test]
    fn operator_rejects_vanishing_profile() {
        let p = SampledProfile {
            t: vec![0.0, 0.5, 1.0],
            z: vec![1.0, 0.0, 1.0],
            zp: vec![0.0; 3],
        };
        assert!(matches!(
            operator_t_apply(1.0, &p),
            Err(GeometryError::DivisionByZero { .. })
        ));
        let uneven = SampledProfile {
            t: vec![0.0, 0.5, 1.5],
            z: vec![1.0; 3],
            zp: vec![0.0; 3],
        };
        assert!(operator_t_apply(1.0, &uneven).is_err());
    }

    #[test]
    fn radius_bound_for_unit_height() {
        let b = radius_bound(1.0, 0.5, 0.9).unwrap();
        assert!((b.self_map - 0.4).abs() < 1e-15);
        assert!((b.lipschitz_inverse - 2.0).abs() < 1e-12);
        assert!((b.lipschitz_square - 3.0).abs() < 1e-12);
        assert!((b.contraction - 1.0 / 6.0).abs() < 1e-12);
        assert!((b.radius - 0.15).abs() < 1e-12);
    }

    #[test]
    fn picard_fixed_point_is_a_fixed_point() {
        let r = picard_solve_degenerate(1.0, 1e-12, 100).unwrap();
        let again = operator_t_apply(1.0, &r.samples).unwrap();
        assert!(again.c1_distance(&r.samples) < 1e-12);
        assert_eq!(r.samples.zp[0], 0.0);
        assert!((r.zpp_origin.unwrap() - 0.25).abs() < 1e-6);
    }

    #[test]
    fn picard_input_validation() {
        assert!(matches!(
            picard_solve_degenerate(0.0, 1e-12, 10),
            Err(GeometryError::DomainError(_))
        ));
        assert!(matches!(
            picard_solve_degenerate(1.0, 1e-30, 2),
            Err(GeometryError::MaxIterExceeded { .. })
        ));
    }

    #[test]
    fn continuity_is_deterministic() {
        let rs = continuity_in_a(&[1.0, 1.0], 1e-12, 100).unwrap();
        assert_eq!(rs[0], rs[1]);
        let table = continuity_table(&[1.0, 1.0], &rs);
        assert_eq!(table[0].sup_distance, 0.0);
    }

    #[test]
    fn sidecar_has_stable_keys() {
        let r = picard_solve_degenerate(1.0, 1e-12, 100).unwrap();
        let json = r.sidecar_json();
        let keys = [
            "\"a\"",
            "\"R\"",
            "\"epsilon\"",
            "\"iterations\"",
            "\"contraction_ratios\"",
            "\"zpp_origin\"",
        ];
        let mut last = 0;
        for k in keys {
            let pos = json.find(k).unwrap_or_else(|| panic!("missing {k}"));
            assert!(pos >= last);
            last = pos;
        }
        assert!(r.to_csv().starts_with("t,z,zp\n"));
    }
}
