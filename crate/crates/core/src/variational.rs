//! Discrete weight functionals of graphs `t ↦ (t, z(t))` and their minimizers.
//!
//! On a grid `t₀ < … < t_N` each cell contributes
//! `h_i · (w_i + w_{i+1})/2 · Q(s_i)` where `s_i` is the forward difference
//! slope and `w` the weight (`t^α − λ` for `Lz`, `z^α − λ` for `Lx`). With the
//! relative arc element `Q(s) = (1 + s²)/2`; with the isotropic one `Q ≡ 1`.
//! Endpoints are fixed and eliminated, so the first variation is a vector over
//! interior nodes and its Jacobian is tridiagonal.

use serde::{Deserialize, Serialize};

use crate::curves::{real_power, ReferenceLine};
use crate::error::{GeometryError, Result};

/// Arc element used by the functional.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ArcElement {
    /// `ds* = (1/2 + ż²/2) dt`.
    #[default]
    Relative,
    /// `ds = dt`, blind to the slope; the `Lz` problem degenerates to its endpoints.
    Isotropic,
}

impl ArcElement {
    fn q(self, s: f64) -> (f64, f64, f64) {
        match self {
            Self::Relative => (0.5 * (1.0 + s * s), s, 1.0),
            Self::Isotropic => (1.0, 0.0, 0.0),
        }
    }
}

/// `∫ (d^α − λ) ds*` with `d` the distance to the reference line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightFunctionalSpec {
    pub reference: ReferenceLine,
    pub alpha: f64,
    pub lambda: f64,
    #[serde(default)]
    pub arc: ArcElement,
}

impl WeightFunctionalSpec {
    pub fn new(reference: ReferenceLine, alpha: f64, lambda: f64) -> Self {
        Self {
            reference,
            alpha,
            lambda,
            arc: ArcElement::Relative,
        }
    }

    pub fn with_arc(self, arc: ArcElement) -> Self {
        Self { arc, ..self }
    }

    fn check(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.lambda.is_finite()) {
            return Err(GeometryError::InvalidSpec(
                "non-finite functional parameter".into(),
            ));
        }
        Ok(())
    }

    /// Weight and its first two derivatives with respect to `z`.
    fn weight(&self, t: f64, z: f64) -> Result<(f64, f64, f64)> {
        let a = self.alpha;
        match self.reference {
            ReferenceLine::Lz => {
                let at = format!("t = {t}");
                Ok((real_power(t, a, &at)? - self.lambda, 0.0, 0.0))
            }
            ReferenceLine::Lx => {
                let at = format!("t = {t} (z = {z})");
                let w = real_power(z, a, &at)? - self.lambda;
                let w1 = if a == 0.0 {
                    0.0
                } else {
                    a * real_power(z, a - 1.0, &at)?
                };
                let w2 = if a == 0.0 || a == 1.0 {
                    0.0
                } else {
                    a * (a - 1.0) * real_power(z, a - 2.0, &at)?
                };
                Ok((w, w1, w2))
            }
        }
    }
}

/// Samples `z_i` of a graph on a strictly increasing grid `t_i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscreteCurve {
    pub t: Vec<f64>,
    pub z: Vec<f64>,
}

impl DiscreteCurve {
    pub fn new(t: Vec<f64>, z: Vec<f64>) -> Result<Self> {
        let c = Self { t, z };
        c.check_grid()?;
        Ok(c)
    }

    /// Samples `profile` on `n` uniform intervals of `[a, b]`.
    pub fn sample<F: Fn(f64) -> f64>(a: f64, b: f64, n: usize, profile: F) -> Result<Self> {
        if !(a < b) || n == 0 {
            return Err(GeometryError::InvalidInterval { lo: a, hi: b });
        }
        let t = uniform_grid(a, b, n);
        let z = t.iter().map(|&t| profile(t)).collect();
        Self::new(t, z)
    }

    /// Number of intervals.
    pub fn intervals(&self) -> usize {
        self.t.len() - 1
    }

    fn check_grid(&self) -> Result<()> {
        if self.t.len() != self.z.len() || self.t.len() < 2 {
            return Err(GeometryError::InvalidSpec(format!(
                "discrete curve needs at least 2 matching samples (got {} t, {} z)",
                self.t.len(),
                self.z.len()
            )));
        }
        if self.t.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(GeometryError::InvalidSpec(
                "grid must be strictly increasing".into(),
            ));
        }
        if self.z.iter().any(|z| !z.is_finite()) {
            return Err(GeometryError::InvalidSpec("non-finite sample value".into()));
        }
        Ok(())
    }

    fn check_for(&self, spec: &WeightFunctionalSpec) -> Result<()> {
        spec.check()?;
        self.check_grid()?;
        if spec.reference == ReferenceLine::Lz {
            let bound = if spec.alpha == 1.0 { spec.lambda } else { 0.0 };
            if !(self.t[0] > bound) {
                return Err(GeometryError::DomainError(format!(
                    "grid starts at t = {} but the Lz weight needs t > {bound}",
                    self.t[0]
                )));
            }
        }
        Ok(())
    }
}

fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..=n)
        .map(|i| {
            if i == n {
                b
            } else {
                a + (b - a) * i as f64 / n as f64
            }
        })
        .collect()
}

struct Weights {
    w: Vec<f64>,
    w1: Vec<f64>,
    w2: Vec<f64>,
}

fn weights(spec: &WeightFunctionalSpec, curve: &DiscreteCurve) -> Result<Weights> {
    let n = curve.t.len();
    let mut out = Weights {
        w: Vec::with_capacity(n),
        w1: Vec::with_capacity(n),
        w2: Vec::with_capacity(n),
    };
    for (&t, &z) in curve.t.iter().zip(&curve.z) {
        let (w, w1, w2) = spec.weight(t, z)?;
        out.w.push(w);
        out.w1.push(w1);
        out.w2.push(w2);
    }
    Ok(out)
}

/// Trapezoid value of the functional with forward-difference slopes on cells.
pub fn evaluate_functional(spec: &WeightFunctionalSpec, curve: &DiscreteCurve) -> Result<f64> {
    curve.check_for(spec)?;
    let w = weights(spec, curve)?.w;
    let mut total = 0.0;
    for i in 0..curve.intervals() {
        let h = curve.t[i + 1] - curve.t[i];
        let s = (curve.z[i + 1] - curve.z[i]) / h;
        total += h * 0.5 * (w[i] + w[i + 1]) * spec.arc.q(s).0;
    }
    Ok(total)
}

/// Discrete relative length `Σ h_i (1 + s_i²)/2`.
pub fn relative_length(curve: &DiscreteCurve) -> f64 {
    (0..curve.intervals())
        .map(|i| {
            let h = curve.t[i + 1] - curve.t[i];
            let s = (curve.z[i + 1] - curve.z[i]) / h;
            0.5 * h * (1.0 + s * s)
        })
        .sum()
}

/// Gradient (interior nodes) and tridiagonal Hessian `(sub, diag, sup)`.
struct Derivatives {
    gradient: Vec<f64>,
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
}

fn derivatives(spec: &WeightFunctionalSpec, curve: &DiscreteCurve) -> Result<Derivatives> {
    let n = curve.intervals();
    let wt = weights(spec, curve)?;
    // full-node accumulators, endpoints dropped at the end
    let mut g = vec![0.0; n + 1];
    let mut diag = vec![0.0; n + 1];
    let mut off = vec![0.0; n];
    for i in 0..n {
        let h = curve.t[i + 1] - curve.t[i];
        let s = (curve.z[i + 1] - curve.z[i]) / h;
        let (q, q1, q2) = spec.arc.q(s);
        let big_w = 0.5 * (wt.w[i] + wt.w[i + 1]);
        g[i] += 0.5 * h * wt.w1[i] * q - big_w * q1;
        g[i + 1] += 0.5 * h * wt.w1[i + 1] * q + big_w * q1;
        diag[i] += 0.5 * h * wt.w2[i] * q - wt.w1[i] * q1 + big_w * q2 / h;
        diag[i + 1] += 0.5 * h * wt.w2[i + 1] * q + wt.w1[i + 1] * q1 + big_w * q2 / h;
        off[i] += 0.5 * (wt.w1[i] - wt.w1[i + 1]) * q1 - big_w * q2 / h;
    }
    let m = n.saturating_sub(1);
    Ok(Derivatives {
        gradient: g[1..n].to_vec(),
        diag: diag[1..n].to_vec(),
        sub: if m > 1 {
            off[1..m].to_vec()
        } else {
            Vec::new()
        },
        sup: if m > 1 {
            off[1..m].to_vec()
        } else {
            Vec::new()
        },
    })
}

/// Exact gradient of [`evaluate_functional`] with respect to interior values `z₁ … z_{N−1}`.
pub fn functional_gradient(spec: &WeightFunctionalSpec, curve: &DiscreteCurve) -> Result<Vec<f64>> {
    curve.check_for(spec)?;
    Ok(derivatives(spec, curve)?.gradient)
}

/// Solves the tridiagonal system by the Thomas algorithm; `None` on a vanishing pivot.
fn solve_tridiagonal(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = diag.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut pivot = diag[0];
    if !(pivot.abs() > 1e-300) {
        return None;
    }
    if n > 1 {
        c[0] = sup[0] / pivot;
    }
    d[0] = rhs[0] / pivot;
    for i in 1..n {
        pivot = diag[i] - sub[i - 1] * c[i - 1];
        if !(pivot.abs() > 1e-300) {
            return None;
        }
        if i + 1 < n {
            c[i] = sup[i] / pivot;
        }
        d[i] = (rhs[i] - sub[i - 1] * d[i - 1]) / pivot;
    }
    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Some(d)
}

/// Iteration controls for [`minimize_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimizeOptions {
    pub max_iter: usize,
    /// Converged when `‖∇‖₂ < tol_per_node · N`.
    pub tol_per_node: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            max_iter: 10_000,
            tol_per_node: 1e-10,
        }
    }
}

/// A converged discrete minimizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Minimizer {
    pub curve: DiscreteCurve,
    pub value: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Critical point of the functional on `N` uniform intervals between fixed endpoints.
pub fn minimize(
    spec: &WeightFunctionalSpec,
    endpoints: (f64, f64, f64, f64),
    n: usize,
) -> Result<Minimizer> {
    minimize_with(spec, endpoints, n, &MinimizeOptions::default())
}

/// [`minimize`] with explicit iteration controls.
///
/// Damped Newton on the discrete Euler–Lagrange system, globalized by
/// backtracking on `‖∇‖²`; when Newton stalls a backtracking gradient step on
/// the functional itself is taken instead. Starts from the straight segment.
pub fn minimize_with(
    spec: &WeightFunctionalSpec,
    (ta, za, tb, zb): (f64, f64, f64, f64),
    n: usize,
    options: &MinimizeOptions,
) -> Result<Minimizer> {
    if !(ta < tb) {
        return Err(GeometryError::InvalidInterval { lo: ta, hi: tb });
    }
    if n < 2 {
        return Err(GeometryError::InvalidSpec(format!(
            "need at least 2 intervals (got {n})"
        )));
    }
    let t = uniform_grid(ta, tb, n);
    let z = t
        .iter()
        .map(|&t| za + (zb - za) * (t - ta) / (tb - ta))
        .collect();
    let mut curve = DiscreteCurve::new(t, z)?;
    curve.check_for(spec)?;
    let tol = options.tol_per_node * n as f64;
    let mut d = derivatives(spec, &curve)?;
    let mut gnorm = norm(&d.gradient);
    for iteration in 0..options.max_iter {
        if gnorm < tol {
            return Ok(Minimizer {
                value: evaluate_functional(spec, &curve)?,
                curve,
                gradient_norm: gnorm,
                iterations: iteration,
            });
        }
        let mut moved = false;
        if let Some(step) = solve_tridiagonal(&d.sub, &d.diag, &d.sup, &d.gradient) {
            let mut alpha = 1.0;
            while alpha > 1e-10 {
                let trial = shifted(&curve, &step, -alpha);
                if let Ok(td) = derivatives(spec, &trial) {
                    let tn = norm(&td.gradient);
                    if tn.is_finite() && tn < gnorm * (1.0 - 1e-4 * alpha) {
                        curve = trial;
                        d = td;
                        gnorm = tn;
                        moved = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
        }
        if !moved {
            // gradient descent on the functional with Armijo backtracking
            let f0 = evaluate_functional(spec, &curve)?;
            let h = (tb - ta) / n as f64;
            let mut alpha = 1.0 / h.max(1e-300);
            while alpha * gnorm > 1e-16 {
                let trial = shifted(&curve, &d.gradient, -alpha);
                if let Ok(f1) = evaluate_functional(spec, &trial) {
                    if f1 <= f0 - 1e-4 * alpha * gnorm * gnorm {
                        curve = trial;
                        d = derivatives(spec, &curve)?;
                        gnorm = norm(&d.gradient);
                        moved = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
        }
        if !moved {
            break;
        }
    }
    if gnorm < tol {
        return Ok(Minimizer {
            value: evaluate_functional(spec, &curve)?,
            curve,
            gradient_norm: gnorm,
            iterations: options.max_iter,
        });
    }
    Err(GeometryError::NoConvergence {
        iterations: options.max_iter,
        gradient_norm: gnorm,
    })
}

fn shifted(curve: &DiscreteCurve, step: &[f64], scale: f64) -> DiscreteCurve {
    let mut z = curve.z.clone();
    for (zi, s) in z[1..].iter_mut().zip(step) {
        *zi += scale * s;
    }
    DiscreteCurve {
        t: curve.t.clone(),
        z,
    }
}

/// Left minus right side of the Euler–Lagrange equation at `t` for a profile
/// given as `(z, z', z'')`:
///
/// * `Lz`: `α t^{α−1} ż + (t^α − λ) z̈`
/// * `Lx`: `(z^α − λ) z̈ − α z^{α−1} (1/2 − ż²/2)`
pub fn el_residual(spec: &WeightFunctionalSpec, profile: (f64, f64, f64), t: f64) -> Result<f64> {
    spec.check()?;
    let (z, zp, zpp) = profile;
    let a = spec.alpha;
    match spec.reference {
        ReferenceLine::Lz => {
            let at = format!("t = {t}");
            let lead = if a == 0.0 {
                0.0
            } else {
                a * real_power(t, a - 1.0, &at)?
            };
            Ok(lead * zp + (real_power(t, a, &at)? - spec.lambda) * zpp)
        }
        ReferenceLine::Lx => {
            let at = format!("t = {t} (z = {z})");
            let lead = if a == 0.0 {
                0.0
            } else {
                a * real_power(z, a - 1.0, &at)?
            };
            Ok((real_power(z, a, &at)? - spec.lambda) * zpp - lead * (0.5 - 0.5 * zp * zp))
        }
    }
}

/// One entry of a λ-sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub lambda: f64,
    pub relative_length: f64,
    pub minimizer: Minimizer,
}

/// Minimizers for several multipliers λ, with the relative length each one attains.
///
/// The length-constrained problem picks the λ whose length matches the
/// prescribed value; scanning makes that choice explicit without an inner root-find.
pub fn lambda_sweep(
    base: &WeightFunctionalSpec,
    lambdas: &[f64],
    endpoints: (f64, f64, f64, f64),
    n: usize,
) -> Vec<(f64, Result<SweepEntry>)> {
    lambdas
        .iter()
        .map(|&lambda| {
            let spec = WeightFunctionalSpec { lambda, ..*base };
            let entry = minimize(&spec, endpoints, n).map(|m| SweepEntry {
                lambda,
                relative_length: relative_length(&m.curve),
                minimizer: m,
            });
            (lambda, entry)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::E;

    fn lz(alpha: f64, lambda: f64) -> WeightFunctionalSpec {
        WeightFunctionalSpec::new(ReferenceLine::Lz, alpha, lambda)
    }

    fn lx(alpha: f64, lambda: f64) -> WeightFunctionalSpec {
        WeightFunctionalSpec::new(ReferenceLine::Lx, alpha, lambda)
    }

    fn fd_gradient(spec: &WeightFunctionalSpec, c: &DiscreteCurve, step: f64) -> Vec<f64> {
        (1..c.intervals())
            .map(|i| {
                let mut up = c.clone();
                let mut dn = c.clone();
                up.z[i] += step;
                dn.z[i] -= step;
                (evaluate_functional(spec, &up).unwrap() - evaluate_functional(spec, &dn).unwrap())
                    / (2.0 * step)
            })
            .collect()
    }

    #[test]
    fn functional_examples() {
        let c = DiscreteCurve::sample(1.0, 2.0, 64, |_| 3.0).unwrap();
        let v = evaluate_functional(&lz(1.0, 0.0), &c).unwrap();
        assert!((v - 0.75).abs() < 1e-14);

        let exact = (E * E + 1.0) / 4.0;
        let mut errors = Vec::new();
        for n in [64, 128, 256] {
            let c = DiscreteCurve::sample(1.0, E, n, f64::ln).unwrap();
            errors.push((evaluate_functional(&lz(1.0, 0.0), &c).unwrap() - exact).abs());
        }
        assert!(errors[2] < 1e-4);
        // second order: halving h divides the error by about four
        for w in errors.windows(2) {
            let rate = (w[0] / w[1]).log2();
            assert!((rate - 2.0).abs() < 0.1, "rate {rate}");
        }

        let c = DiscreteCurve::sample(0.0, 1.0, 10, |_| 2.0).unwrap();
        assert!((evaluate_functional(&lx(1.0, 0.0), &c).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn functional_domain_errors() {
        let c = DiscreteCurve::sample(0.0, 1.0, 10, |t| t).unwrap();
        assert!(matches!(
            evaluate_functional(&lz(1.0, 0.0), &c),
            Err(GeometryError::DomainError(_))
        ));
        let neg = DiscreteCurve::sample(1.0, 2.0, 10, |_| -1.0).unwrap();
        assert!(matches!(
            evaluate_functional(&lx(0.5, 0.0), &neg),
            Err(GeometryError::DomainError(_))
        ));
        assert!(DiscreteCurve::new(vec![0.0, 1.0, 1.0], vec![0.0; 3]).is_err());
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let c = DiscreteCurve::sample(1.0, 2.0, 12, |t| (3.0 * t).sin() + 2.0).unwrap();
        for spec in [
            lz(1.0, 0.0),
            lz(2.5, 0.3),
            lx(1.0, 0.0),
            lx(1.5, 0.2),
            lx(3.0, -1.0),
        ] {
            let g = functional_gradient(&spec, &c).unwrap();
            let fd = fd_gradient(&spec, &c, 1e-6);
            for (a, b) in g.iter().zip(&fd) {
                assert!(
                    (a - b).abs() <= 1e-5 * b.abs().max(1e-3),
                    "{spec:?}: {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn gradient_vanishes_on_catenary_samples() {
        let mut norms = Vec::new();
        for n in [32, 64, 128] {
            let c = DiscreteCurve::sample(1.0, E, n, f64::ln).unwrap();
            norms.push(norm(&functional_gradient(&lz(1.0, 0.0), &c).unwrap()));
        }
        assert!(norms[1] < norms[0] && norms[2] < norms[1], "{norms:?}");
    }

    #[test]
    fn flat_three_node_gradient_is_weight_only() {
        // a symmetric bump on a flat line: the slope terms cancel, only the weight derivative remains
        let c = DiscreteCurve::new(vec![1.0, 2.0, 3.0], vec![1.0, 1.0, 1.0]).unwrap();
        let g = functional_gradient(&lx(1.0, 0.0), &c).unwrap();
        // ∂/∂z₁ of (w₀+w₁)/4 + (w₁+w₂)/4 with w = z
        assert!((g[0] - 0.5).abs() < 1e-15);
        let g = functional_gradient(&lz(1.0, 0.0), &c).unwrap();
        assert_eq!(g[0], 0.0);
    }

    #[test]
    fn minimize_recovers_log_catenary() {
        let m = minimize(&lz(1.0, 0.0), (1.0, 0.0, E, 1.0), 200).unwrap();
        let err = m
            .curve
            .t
            .iter()
            .zip(&m.curve.z)
            .fold(0.0f64, |e, (t, z)| e.max((z - t.ln()).abs()));
        assert!(err < 1e-4, "{err}");
        assert!(m.gradient_norm < 1e-10 * 200.0);
    }

    #[test]
    fn minimize_recovers_alpha_catenary() {
        let m = minimize(&lz(2.0, 0.0), (1.0, 1.0, 2.0, 0.5), 200).unwrap();
        for (t, z) in m.curve.t.iter().zip(&m.curve.z) {
            assert!((z - 1.0 / t).abs() < 1e-4);
        }
    }

    #[test]
    fn minimize_recovers_constant() {
        let m = minimize(&lz(1.0, 0.0), (1.0, 0.7, 3.0, 0.7), 50).unwrap();
        assert!(m.curve.z.iter().all(|z| (z - 0.7).abs() < 1e-8));
    }

    #[test]
    fn minimize_lx_unit_slope() {
        // z = t + 1 solves the Lx equation for any α
        let m = minimize(&lx(2.0, 0.0), (0.5, 1.5, 2.0, 3.0), 100).unwrap();
        for (t, z) in m.curve.t.iter().zip(&m.curve.z) {
            assert!((z - (t + 1.0)).abs() < 1e-8);
        }
    }

    #[test]
    fn minimize_rejects_bad_input() {
        assert!(minimize(&lz(1.0, 0.0), (2.0, 0.0, 1.0, 1.0), 10).is_err());
        assert!(matches!(
            minimize(&lz(1.0, 2.0), (1.0, 0.0, 3.0, 1.0), 10),
            Err(GeometryError::DomainError(_))
        ));
        let opts = MinimizeOptions {
            max_iter: 0,
            ..Default::default()
        };
        assert!(matches!(
            minimize_with(&lz(1.0, 0.0), (1.0, 0.0, E, 1.0), 20, &opts),
            Err(GeometryError::NoConvergence { .. })
        ));
    }

    #[test]
    fn el_residual_examples() {
        for t in [1.0f64, 2.0, 10.0] {
            let r = el_residual(
                &lz(1.0, 0.0),
                (3.0 * t.ln() + 2.0, 3.0 / t, -3.0 / (t * t)),
                t,
            );
            assert!(r.unwrap().abs() < 1e-14);
            let r = el_residual(
                &lz(2.0, 0.0),
                (5.0 / t, -5.0 / (t * t), 10.0 / t.powi(3)),
                t,
            );
            assert!(r.unwrap().abs() < 1e-13);
            assert_eq!(el_residual(&lx(1.0, 0.0), (t, 1.0, 0.0), t).unwrap(), 0.0);
        }
    }

    #[test]
    fn thomas_solves_small_system() {
        let x = solve_tridiagonal(&[1.0, 1.0], &[4.0, 4.0, 4.0], &[1.0, 1.0], &[5.0, 6.0, 5.0])
            .unwrap();
        for v in x {
            assert!((v - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn sweep_reports_lengths() {
        let sweep = lambda_sweep(&lz(1.0, 0.0), &[0.0, 0.5], (1.0, 0.0, 2.0, 1.0), 50);
        assert_eq!(sweep.len(), 2);
        for (_, entry) in sweep {
            let e = entry.unwrap();
            assert!(e.relative_length > 0.5);
        }
    }

    fn smooth_profile() -> impl Strategy<Value = Vec<f64>> {
        (0.1..1.0f64, -2.0..2.0f64, 0.5..3.0f64).prop_map(|(amp, phase, freq)| {
            (0..=16)
                .map(|i| {
                    let t = 1.0 + i as f64 / 16.0;
                    2.0 + amp * (freq * t + phase).sin()
                })
                .collect()
        })
    }

    proptest! {
        #[test]
        fn gradient_exact_on_random_profiles(z in smooth_profile(), alpha in 0.5..3.0f64, lambda in -0.5..0.5f64, use_lx in any::<bool>()) {
            let t: Vec<f64> = (0..=16).map(|i| 1.0 + i as f64 / 16.0).collect();
            let c = DiscreteCurve::new(t, z).unwrap();
            let spec = if use_lx { lx(alpha, lambda) } else { lz(alpha, lambda.min(0.9)) };
            let g = functional_gradient(&spec, &c).unwrap();
            let fd = fd_gradient(&spec, &c, 1e-6);
            for (a, b) in g.iter().zip(&fd) {
                prop_assert!((a - b).abs() <= 1e-5 * b.abs().max(1e-2), "{} vs {}", a, b);
            }
        }

        #[test]
        fn isotropic_arc_element_sees_only_endpoints(a in smooth_profile(), b in smooth_profile(), lambda in -0.5..0.5f64) {
            let t: Vec<f64> = (0..=16).map(|i| 1.0 + i as f64 / 16.0).collect();
            let spec = lz(1.0, lambda).with_arc(ArcElement::Isotropic);
            let mut zb = b;
            zb[0] = a[0];
            zb[16] = a[16];
            let fa = evaluate_functional(&spec, &DiscreteCurve::new(t.clone(), a).unwrap()).unwrap();
            let fb = evaluate_functional(&spec, &DiscreteCurve::new(t, zb).unwrap()).unwrap();
            prop_assert!((fa - fb).abs() < 1e-12);
        }
    }
}
