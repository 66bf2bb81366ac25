//! Admissible plane curves of I² and the closed-form catenary families.
//!
//! A [`PlaneCurve`] is an immutable evaluator `t ↦ (x, z, ẋ, ż, ẍ, z̈)`.
//! Analytic curves supply exact derivatives; curves built from samples use
//! three-point differences on their own grid.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, Result};
use crate::metric::IsoVec2;
use crate::odes::ProfileODE;
use crate::quadrature::{simpson, CURVE_PANELS};

/// Smallest admissible |ẋ|.
pub const ADMISSIBILITY_THRESHOLD: f64 = 1e-9;
const ADMISSIBILITY_SAMPLES: usize = 201;

/// Position and first two derivatives of a plane curve at one parameter.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CurveJet {
    pub x: f64,
    pub z: f64,
    pub dx: f64,
    pub dz: f64,
    pub ddx: f64,
    pub ddz: f64,
}

impl CurveJet {
    pub fn position(&self) -> IsoVec2 {
        IsoVec2::new(self.x, self.z)
    }

    pub fn velocity(&self) -> IsoVec2 {
        IsoVec2::new(self.dx, self.dz)
    }

    pub fn acceleration(&self) -> IsoVec2 {
        IsoVec2::new(self.ddx, self.ddz)
    }

    /// Slope `dz/dx` of the curve seen as a graph over the x-axis.
    pub fn slope(&self) -> f64 {
        self.dz / self.dx
    }

    /// Simply isotropic curvature `(ẋz̈ − ẍż)/ẋ³`.
    pub fn curvature(&self) -> f64 {
        (self.dx * self.ddz - self.ddx * self.dz) / self.dx.powi(3)
    }

    fn reversed(self) -> Self {
        Self {
            dx: -self.dx,
            dz: -self.dz,
            ..self
        }
    }
}

type CurveFn = dyn Fn(f64) -> CurveJet + Send + Sync;

/// An admissible curve `γ(t) = (x(t), z(t))` on a closed interval, oriented so that ẋ > 0.
#[derive(Clone)]
pub struct PlaneCurve {
    lo: f64,
    hi: f64,
    eval: Arc<CurveFn>,
}

impl fmt::Debug for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PlaneCurve")
            .field("lo", &self.lo)
            .field("hi", &self.hi)
            .finish_non_exhaustive()
    }
}

impl PlaneCurve {
    /// Wraps an evaluator. The curve must be admissible on a sampling grid of
    /// the domain; a curve traversed with ẋ < 0 is reparametrized by `t ↦ −t`.
    pub fn new<F>(lo: f64, hi: f64, eval: F) -> Result<Self>
    where
        F: Fn(f64) -> CurveJet + Send + Sync + 'static,
    {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(GeometryError::InvalidInterval { lo, hi });
        }
        let mut sign = 0.0;
        for i in 0..ADMISSIBILITY_SAMPLES {
            let t = lo + (hi - lo) * i as f64 / (ADMISSIBILITY_SAMPLES - 1) as f64;
            let dx = eval(t).dx;
            if !(dx.abs() >= ADMISSIBILITY_THRESHOLD) {
                return Err(GeometryError::NonAdmissible {
                    at: format!("t = {t}"),
                    what: "dx/dt",
                    value: dx.abs(),
                });
            }
            if sign == 0.0 {
                sign = dx.signum();
            } else if dx.signum() != sign {
                return Err(GeometryError::NonAdmissible {
                    at: format!("t = {t} (dx/dt changes sign)"),
                    what: "dx/dt",
                    value: 0.0,
                });
            }
        }
        if sign > 0.0 {
            Ok(Self {
                lo,
                hi,
                eval: Arc::new(eval),
            })
        } else {
            Ok(Self {
                lo: -hi,
                hi: -lo,
                eval: Arc::new(move |s| eval(-s).reversed()),
            })
        }
    }

    /// The graph `t ↦ (t, z(t))`, with `profile` returning `(z, z', z'')`.
    pub fn graph<F>(lo: f64, hi: f64, profile: F) -> Result<Self>
    where
        F: Fn(f64) -> (f64, f64, f64) + Send + Sync + 'static,
    {
        Self::new(lo, hi, move |t| {
            let (z, dz, ddz) = profile(t);
            CurveJet {
                x: t,
                z,
                dx: 1.0,
                dz,
                ddx: 0.0,
                ddz,
            }
        })
    }

    /// A graph curve known only at strictly increasing samples `(t_i, z_i)`.
    ///
    /// Nodal derivatives come from three-point differences; between nodes the
    /// position is the cubic Hermite interpolant and `z''` is interpolated linearly.
    pub fn from_samples(t: Vec<f64>, z: Vec<f64>) -> Result<Self> {
        if t.len() != z.len() || t.len() < 3 {
            return Err(GeometryError::InvalidSpec(format!(
                "sampled curve needs at least 3 matching samples (got {} t, {} z)",
                t.len(),
                z.len()
            )));
        }
        if t.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(GeometryError::InvalidSpec(
                "sample abscissae must be strictly increasing".into(),
            ));
        }
        let (dz, ddz) = nodal_derivatives(&t, &z);
        let lo = t[0];
        let hi = t[t.len() - 1];
        let samples = Arc::new(Samples { t, z, dz, ddz });
        Self::new(lo, hi, move |s| samples.eval(s))
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    /// Evaluates the jet at `t`, enforcing the domain and admissibility at that point.
    pub fn jet(&self, t: f64) -> Result<CurveJet> {
        let slack = 1e-12 * (1.0 + self.lo.abs().max(self.hi.abs()));
        if !(t >= self.lo - slack && t <= self.hi + slack) {
            return Err(GeometryError::DomainError(format!(
                "t = {t} outside [{}, {}]",
                self.lo, self.hi
            )));
        }
        let jet = (self.eval)(t);
        if !(jet.dx.abs() >= ADMISSIBILITY_THRESHOLD) {
            return Err(GeometryError::NonAdmissible {
                at: format!("t = {t}"),
                what: "dx/dt",
                value: jet.dx.abs(),
            });
        }
        Ok(jet)
    }

    /// `(±1, ż/ẋ)`; the sign is that of ẋ, hence `+1` after orientation.
    pub fn unit_tangent(&self, t: f64) -> Result<IsoVec2> {
        let j = self.jet(t)?;
        Ok(IsoVec2::new(j.dx.signum(), j.slope()))
    }

    pub fn curvature(&self, t: f64) -> Result<f64> {
        Ok(self.jet(t)?.curvature())
    }

    /// Minimal normal `(−ż/ẋ, 1) = J(γ̇)/ẋ`.
    pub fn minimal_normal(&self, t: f64) -> Result<IsoVec2> {
        let j = self.jet(t)?;
        Ok(minimal_normal_of(&j))
    }

    /// Parabolic normal `(−ż/ẋ, 1/2 − ż²/(2ẋ²))`, the relative normal induced by
    /// the unit parabola `z = 1/2 − x²/2`.
    pub fn parabolic_normal(&self, t: f64) -> Result<IsoVec2> {
        let j = self.jet(t)?;
        Ok(parabolic_normal_of(&j))
    }

    /// Second fundamental form coefficient `h₁₁ = det(γ̇, γ̈)`.
    pub fn h11(&self, t: f64) -> Result<f64> {
        let j = self.jet(t)?;
        Ok(j.velocity().det(j.acceleration()))
    }

    /// Relative arc length `∫ₐᵇ (ẋ/2 + ż²/(2ẋ)) dt` with the default panel count.
    pub fn relative_arclength(&self, a: f64, b: f64) -> Result<f64> {
        self.relative_arclength_with(a, b, CURVE_PANELS)
    }

    pub fn relative_arclength_with(&self, a: f64, b: f64, panels: usize) -> Result<f64> {
        if !(a < b) {
            return Err(GeometryError::InvalidInterval { lo: a, hi: b });
        }
        self.jet(a)?;
        self.jet(b)?;
        let mut failure = None;
        let value = simpson(
            |t| match self.jet(t) {
                Ok(j) => 0.5 * j.dx + j.dz * j.dz / (2.0 * j.dx),
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            a,
            b,
            panels,
        );
        match failure {
            Some(e) => Err(e),
            None => Ok(value),
        }
    }

    /// `n` uniformly spaced samples `(t, x, z)` over the domain.
    pub fn sample(&self, n: usize) -> Vec<[f64; 3]> {
        let n = n.max(2);
        (0..n)
            .map(|i| {
                let t = self.lo + (self.hi - self.lo) * i as f64 / (n - 1) as f64;
                let j = (self.eval)(t);
                [t, j.x, j.z]
            })
            .collect()
    }
}

pub(crate) fn minimal_normal_of(j: &CurveJet) -> IsoVec2 {
    IsoVec2::new(-j.slope(), 1.0)
}

pub(crate) fn parabolic_normal_of(j: &CurveJet) -> IsoVec2 {
    let p = j.slope();
    IsoVec2::new(-p, 0.5 - 0.5 * p * p)
}

struct Samples {
    t: Vec<f64>,
    z: Vec<f64>,
    dz: Vec<f64>,
    ddz: Vec<f64>,
}

impl Samples {
    fn eval(&self, s: f64) -> CurveJet {
        let n = self.t.len();
        let i = match self.t.partition_point(|&ti| ti <= s) {
            0 => 0,
            k if k >= n => n - 2,
            k => k - 1,
        };
        let (t0, t1) = (self.t[i], self.t[i + 1]);
        let h = t1 - t0;
        let u = ((s - t0) / h).clamp(0.0, 1.0);
        let (z0, z1, m0, m1) = (self.z[i], self.z[i + 1], self.dz[i] * h, self.dz[i + 1] * h);
        let (u2, u3) = (u * u, u * u * u);
        let z = (2.0 * u3 - 3.0 * u2 + 1.0) * z0
            + (u3 - 2.0 * u2 + u) * m0
            + (-2.0 * u3 + 3.0 * u2) * z1
            + (u3 - u2) * m1;
        let dz = ((6.0 * u2 - 6.0 * u) * z0
            + (3.0 * u2 - 4.0 * u + 1.0) * m0
            + (-6.0 * u2 + 6.0 * u) * z1
            + (3.0 * u2 - 2.0 * u) * m1)
            / h;
        let ddz = (1.0 - u) * self.ddz[i] + u * self.ddz[i + 1];
        CurveJet {
            x: s,
            z,
            dx: 1.0,
            dz,
            ddx: 0.0,
            ddz,
        }
    }
}

/// Three-point first and second derivatives on a possibly nonuniform grid.
fn nodal_derivatives(t: &[f64], z: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = t.len();
    let mut dz = vec![0.0; n];
    let mut ddz = vec![0.0; n];
    for i in 1..n - 1 {
        let (h1, h2) = (t[i] - t[i - 1], t[i + 1] - t[i]);
        dz[i] = -h2 / (h1 * (h1 + h2)) * z[i - 1]
            + (h2 - h1) / (h1 * h2) * z[i]
            + h1 / (h2 * (h1 + h2)) * z[i + 1];
        ddz[i] =
            2.0 * (z[i - 1] / (h1 * (h1 + h2)) - z[i] / (h1 * h2) + z[i + 1] / (h2 * (h1 + h2)));
    }
    let (h1, h2) = (t[1] - t[0], t[2] - t[1]);
    dz[0] = -(2.0 * h1 + h2) / (h1 * (h1 + h2)) * z[0] + (h1 + h2) / (h1 * h2) * z[1]
        - h1 / (h2 * (h1 + h2)) * z[2];
    ddz[0] = 2.0 * ddz[1] - ddz[2];
    let (h1, h2) = (t[n - 2] - t[n - 3], t[n - 1] - t[n - 2]);
    dz[n - 1] = h2 / (h1 * (h1 + h2)) * z[n - 3] - (h1 + h2) / (h1 * h2) * z[n - 2]
        + (2.0 * h2 + h1) / (h2 * (h1 + h2)) * z[n - 1];
    ddz[n - 1] = 2.0 * ddz[n - 2] - ddz[n - 3];
    (dz, ddz)
}

/// Reference line measuring the weight of a curve: the isotropic z-axis or the non-isotropic x-axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReferenceLine {
    Lz,
    Lx,
}

/// `base^exponent`, requiring a positive base unless the exponent is an integer.
pub(crate) fn real_power(base: f64, exponent: f64, at: &str) -> Result<f64> {
    if exponent.fract() == 0.0 && exponent.abs() < 1e9 {
        if base == 0.0 && exponent < 0.0 {
            return Err(GeometryError::DomainError(format!(
                "0 raised to negative power {exponent} at {at}"
            )));
        }
        return Ok(base.powi(exponent as i32));
    }
    if !(base > 0.0) {
        return Err(GeometryError::DomainError(format!(
            "non-positive base {base} for real power {exponent} at {at}"
        )));
    }
    Ok(base.powf(exponent))
}

/// Closed-form solution family of the weighted hanging-chain problem.
///
/// With respect to `Lz`: `z = c·ln(t − λ) + d` for α = 1 and `z = c·t^{1−α} + d`
/// (λ = 0) otherwise. Families with respect to `Lx` have no closed form; they are
/// carried by [`CatenaryFamily::ode`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatenaryFamily {
    pub reference: ReferenceLine,
    pub alpha: f64,
    pub c: f64,
    pub d: f64,
    pub lambda: f64,
}

impl CatenaryFamily {
    /// Isotropic catenary `z = c·ln(t − λ) + d`.
    pub fn isotropic(c: f64, d: f64, lambda: f64) -> Self {
        Self {
            reference: ReferenceLine::Lz,
            alpha: 1.0,
            c,
            d,
            lambda,
        }
    }

    /// α-catenary with respect to `Lz` (λ = 0).
    pub fn alpha_catenary(alpha: f64, c: f64, d: f64) -> Result<Self> {
        let family = Self {
            reference: ReferenceLine::Lz,
            alpha,
            c,
            d,
            lambda: 0.0,
        };
        family.validate()?;
        Ok(family)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.alpha, self.c, self.d, self.lambda]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(GeometryError::InvalidSpec(
                "non-finite family parameter".into(),
            ));
        }
        if self.alpha == 0.0 {
            return Err(GeometryError::InvalidSpec(
                "alpha = 0 has no catenary family; use the variational functional directly".into(),
            ));
        }
        if self.reference == ReferenceLine::Lz && self.alpha != 1.0 && self.lambda != 0.0 {
            return Err(GeometryError::InvalidSpec(
                "closed-form alpha-catenaries require lambda = 0".into(),
            ));
        }
        Ok(())
    }

    /// Infimum of the parameter domain (`λ` for α = 1, `0` otherwise).
    pub fn domain_start(&self) -> f64 {
        if self.alpha == 1.0 {
            self.lambda
        } else {
            0.0
        }
    }

    /// Profile value and two derivatives at `t`.
    pub fn profile(&self, t: f64) -> Result<(f64, f64, f64)> {
        self.validate()?;
        if self.reference == ReferenceLine::Lx {
            return Err(GeometryError::InvalidSpec(
                "catenaries with respect to Lx have no closed form; integrate CatenaryFamily::ode"
                    .into(),
            ));
        }
        let s = t - self.domain_start();
        if !(s > 0.0) {
            return Err(GeometryError::DomainError(format!(
                "t = {t} not in the family domain t > {}",
                self.domain_start()
            )));
        }
        if self.alpha == 1.0 {
            Ok((self.c * s.ln() + self.d, self.c / s, -self.c / (s * s)))
        } else {
            let p = 1.0 - self.alpha;
            Ok((
                self.c * s.powf(p) + self.d,
                self.c * p * s.powf(p - 1.0),
                self.c * p * (p - 1.0) * s.powf(p - 2.0),
            ))
        }
    }

    /// Point `(t, z(t))` of the family.
    pub fn eval(&self, t: f64) -> Result<IsoVec2> {
        Ok(IsoVec2::new(t, self.profile(t)?.0))
    }

    /// The family restricted to `[lo, hi]` as an analytic curve.
    pub fn curve(&self, lo: f64, hi: f64) -> Result<PlaneCurve> {
        self.profile(lo)?;
        self.profile(hi)?;
        let family = *self;
        PlaneCurve::graph(lo, hi, move |t| {
            family.profile(t).unwrap_or((f64::NAN, f64::NAN, f64::NAN))
        })
    }

    /// The profile ODE characterizing the family with respect to `Lx`.
    pub fn ode(&self) -> Option<ProfileODE> {
        match self.reference {
            ReferenceLine::Lx => Some(ProfileODE::NonIsotropicAlphaCatenary {
                alpha: self.alpha,
                lambda: self.lambda,
            }),
            ReferenceLine::Lz => None,
        }
    }
}

/// One summand of a [`ProfileFormula`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "term", rename_all = "snake_case")]
pub enum ProfileTerm {
    /// `coef · t^exponent`
    Power { coef: f64, exponent: f64 },
    /// `coef · ln(t − shift)`
    Log { coef: f64, shift: f64 },
}

/// An elementary profile `z(t) = constant + Σ terms`, with exact derivatives.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ProfileFormula {
    pub constant: f64,
    pub terms: Vec<ProfileTerm>,
}

impl ProfileFormula {
    pub fn constant(value: f64) -> Self {
        Self {
            constant: value,
            terms: Vec::new(),
        }
    }

    /// `c·ln t + d`
    pub fn log(c: f64, d: f64) -> Self {
        Self {
            constant: d,
            terms: vec![ProfileTerm::Log {
                coef: c,
                shift: 0.0,
            }],
        }
    }

    /// `c·t^p + d`
    pub fn power(c: f64, p: f64, d: f64) -> Self {
        Self {
            constant: d,
            terms: vec![ProfileTerm::Power {
                coef: c,
                exponent: p,
            }],
        }
    }

    /// `Σ coeffs[k]·t^k`
    pub fn poly(coeffs: &[f64]) -> Self {
        Self {
            constant: coeffs.first().copied().unwrap_or(0.0),
            terms: coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &coef)| ProfileTerm::Power {
                    coef,
                    exponent: k as f64,
                })
                .collect(),
        }
    }

    /// Adds a term, dropping zero coefficients.
    pub fn with(mut self, term: ProfileTerm) -> Self {
        match term {
            ProfileTerm::Power {
                coef,
                exponent: 0.0,
            } => self.constant += coef,
            ProfileTerm::Power { coef, .. } | ProfileTerm::Log { coef, .. } => {
                if coef != 0.0 {
                    self.terms.push(term);
                }
            }
        }
        self
    }

    /// `true` when every non-constant term has a zero coefficient.
    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| match *t {
            ProfileTerm::Power { coef, exponent } => coef == 0.0 || exponent == 0.0,
            ProfileTerm::Log { coef, .. } => coef == 0.0,
        })
    }

    /// Value and first two derivatives at `t`.
    pub fn eval(&self, t: f64) -> Result<(f64, f64, f64)> {
        let at = format!("t = {t}");
        let mut out = (self.constant, 0.0, 0.0);
        for term in &self.terms {
            match *term {
                ProfileTerm::Power { coef, exponent: p } => {
                    if coef == 0.0 {
                        continue;
                    }
                    out.0 += coef * real_power(t, p, &at)?;
                    if p != 0.0 {
                        out.1 += coef * p * real_power(t, p - 1.0, &at)?;
                    }
                    if p != 0.0 && p != 1.0 {
                        out.2 += coef * p * (p - 1.0) * real_power(t, p - 2.0, &at)?;
                    }
                }
                ProfileTerm::Log { coef, shift } => {
                    let s = t - shift;
                    if !(s > 0.0) {
                        return Err(GeometryError::DomainError(format!(
                            "logarithm of non-positive {s} at {at}"
                        )));
                    }
                    out.0 += coef * s.ln();
                    out.1 += coef / s;
                    out.2 -= coef / (s * s);
                }
            }
        }
        Ok(out)
    }

    /// The graph of the formula over `[lo, hi]`.
    pub fn curve(&self, lo: f64, hi: f64) -> Result<PlaneCurve> {
        self.eval(lo)?;
        self.eval(hi)?;
        let me = self.clone();
        PlaneCurve::graph(lo, hi, move |t| {
            me.eval(t).unwrap_or((f64::NAN, f64::NAN, f64::NAN))
        })
    }
}

/// `(t, z(t))` on a catenary family.
pub fn eval_catenary(family: &CatenaryFamily, t: f64) -> Result<(f64, f64)> {
    let p = family.eval(t)?;
    Ok((p.x, p.z))
}

/// Curvature minus the right-hand side of the catenary characterization:
///
/// * `Lz`: `κ − α⟨γ,X⟩^{α−1}⟨N_par,X⟩ / (⟨γ,X⟩^α − λ)`
/// * `Lx`: `κ − α⟪γ,Z⟫^{α−1}⟪N_par,Z⟫ / (⟪γ,Z⟫^α − λ)`
pub fn catenary_curvature_residual(
    curve: &PlaneCurve,
    reference: ReferenceLine,
    alpha: f64,
    lambda: f64,
    t: f64,
) -> Result<f64> {
    let j = curve.jet(t)?;
    let normal = parabolic_normal_of(&j);
    let (distance, component) = match reference {
        ReferenceLine::Lz => (j.x, normal.x),
        ReferenceLine::Lx => (j.z, normal.z),
    };
    let at = format!("t = {t}");
    let denom = real_power(distance, alpha, &at)? - lambda;
    if denom.abs() < 1e-12 {
        return Err(GeometryError::SingularDenominator { at, value: denom });
    }
    let weight = real_power(distance, alpha - 1.0, &at)?;
    Ok(j.curvature() - alpha * weight * component / denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    fn parabola() -> PlaneCurve {
        PlaneCurve::graph(-3.0, 3.0, |t| (t * t, 2.0 * t, 2.0)).unwrap()
    }

    fn log_curve() -> PlaneCurve {
        PlaneCurve::graph(0.5, 4.0, |t| (t.ln(), 1.0 / t, -1.0 / (t * t))).unwrap()
    }

    fn line(slope: f64, icpt: f64) -> PlaneCurve {
        PlaneCurve::graph(-5.0, 5.0, move |t| (slope * t + icpt, slope, 0.0)).unwrap()
    }

    #[test]
    fn unit_tangent_examples() {
        assert_eq!(
            parabola().unit_tangent(1.0).unwrap(),
            IsoVec2::new(1.0, 2.0)
        );
        let scaled = PlaneCurve::new(0.0, 1.0, |t| CurveJet {
            x: 2.0 * t,
            z: 6.0 * t,
            dx: 2.0,
            dz: 6.0,
            ..Default::default()
        })
        .unwrap();
        assert_eq!(scaled.unit_tangent(0.3).unwrap(), IsoVec2::new(1.0, 3.0));
        assert_eq!(
            line(0.0, 5.0).unit_tangent(2.0).unwrap(),
            IsoVec2::new(1.0, 0.0)
        );
    }

    #[test]
    fn isotropic_tangent_is_rejected() {
        let vertical = PlaneCurve::new(0.0, 1.0, |t| CurveJet {
            x: 0.0,
            z: t,
            dz: 1.0,
            ..Default::default()
        });
        assert!(matches!(vertical, Err(GeometryError::NonAdmissible { .. })));
        let turning = PlaneCurve::new(-1.0, 1.0, |t| CurveJet {
            x: t * t,
            z: t,
            dx: 2.0 * t + 0.5,
            dz: 1.0,
            ddx: 2.0,
            ddz: 0.0,
        });
        assert!(matches!(turning, Err(GeometryError::NonAdmissible { .. })));
    }

    #[test]
    fn reversed_curves_are_reoriented() {
        let backwards = PlaneCurve::new(0.0, 1.0, |t| CurveJet {
            x: -t,
            z: t * t,
            dx: -1.0,
            dz: 2.0 * t,
            ddx: 0.0,
            ddz: 2.0,
        })
        .unwrap();
        assert_eq!(backwards.domain(), (-1.0, -0.0));
        let j = backwards.jet(-0.5).unwrap();
        assert_eq!((j.x, j.z, j.dx), (-0.5, 0.25, 1.0));
        // z as a function of x is x², so κ = 2 either way
        assert!((backwards.curvature(-0.5).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn curvature_examples() {
        let (c, b, a) = (0.7, -1.3, 2.0);
        let p = PlaneCurve::graph(-2.0, 2.0, move |t| {
            (0.5 * c * t * t + b * t + a, c * t + b, c)
        })
        .unwrap();
        for t in [-1.5, 0.0, 1.9] {
            assert!((p.curvature(t).unwrap() - c).abs() < 1e-14);
        }
        assert_eq!(line(3.0, 1.0).curvature(0.4).unwrap(), 0.0);
        // oracle: centered second difference of ln at t = 2
        let h: f64 = 1e-4;
        let fd = ((2.0 + h).ln() - 2.0 * 2f64.ln() + (2.0 - h).ln()) / (h * h);
        assert!((fd + 0.25).abs() < 1e-6);
        assert!((log_curve().curvature(2.0).unwrap() + 0.25).abs() < 1e-14);
    }

    #[test]
    fn curvature_of_non_graph_parametrization() {
        // γ(t) = (t³ + t, (t³ + t)²), a reparametrized parabola of curvature 2
        let c = PlaneCurve::new(-1.0, 1.0, |t| {
            let x = t * t * t + t;
            let dx = 3.0 * t * t + 1.0;
            let ddx = 6.0 * t;
            CurveJet {
                x,
                z: x * x,
                dx,
                dz: 2.0 * x * dx,
                ddx,
                ddz: 2.0 * dx * dx + 2.0 * x * ddx,
            }
        })
        .unwrap();
        for t in [-0.8, 0.1, 0.6] {
            assert!((c.curvature(t).unwrap() - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn minimal_normal_examples() {
        assert_eq!(
            line(0.0, 1.0).minimal_normal(0.0).unwrap(),
            IsoVec2::new(0.0, 1.0)
        );
        let p = parabola();
        let j = p.jet(1.0).unwrap();
        // oracle: J(γ̇)/ẋ
        let oracle = j.velocity().rotate_quarter() * (1.0 / j.dx);
        assert_eq!(p.minimal_normal(1.0).unwrap(), oracle);
        assert_eq!(oracle, IsoVec2::new(-2.0, 1.0));
        assert_eq!(
            line(-1.0, 0.0).minimal_normal(3.0).unwrap(),
            IsoVec2::new(1.0, 1.0)
        );
    }

    #[test]
    fn parabolic_normal_examples() {
        assert_eq!(
            line(0.0, 2.0).parabolic_normal(1.0).unwrap(),
            IsoVec2::new(0.0, 0.5)
        );
        assert_eq!(
            line(1.0, 0.0).parabolic_normal(-2.0).unwrap(),
            IsoVec2::new(-1.0, 0.0)
        );
        assert_eq!(
            parabola().parabolic_normal(1.0).unwrap(),
            IsoVec2::new(-2.0, -1.5)
        );
    }

    #[test]
    fn relative_arclength_examples() {
        let v = line(0.0, 3.0).relative_arclength(0.0, 2.0).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        let v = line(1.0, 0.0).relative_arclength(0.0, 1.0).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
        let v = log_curve().relative_arclength(1.0, 2.0).unwrap();
        assert!((v - 0.75).abs() < 1e-10);
        assert!(matches!(
            log_curve().relative_arclength(2.0, 2.0),
            Err(GeometryError::InvalidInterval { .. })
        ));
    }

    #[test]
    fn catenary_evaluation() {
        let (x, z) = eval_catenary(&CatenaryFamily::isotropic(1.0, 0.0, 0.0), E).unwrap();
        assert_eq!(x, E);
        assert!((z - 1.0).abs() < 1e-15);
        let two = CatenaryFamily::alpha_catenary(2.0, 1.0, 0.0).unwrap();
        assert_eq!(eval_catenary(&two, 4.0).unwrap(), (4.0, 0.25));
        let flat = CatenaryFamily::isotropic(0.0, 7.0, 0.0);
        assert_eq!(eval_catenary(&flat, 10.0).unwrap(), (10.0, 7.0));
    }

    #[test]
    fn catenary_domain_errors() {
        let shifted = CatenaryFamily::isotropic(1.0, 0.0, 2.0);
        assert!(matches!(
            shifted.eval(2.0),
            Err(GeometryError::DomainError(_))
        ));
        assert!(shifted.eval(2.5).is_ok());
        let three = CatenaryFamily::alpha_catenary(3.0, 1.0, 0.0).unwrap();
        assert!(matches!(
            three.eval(0.0),
            Err(GeometryError::DomainError(_))
        ));
        assert!(CatenaryFamily::alpha_catenary(0.0, 1.0, 0.0).is_err());
        let lx = CatenaryFamily {
            reference: ReferenceLine::Lx,
            ..CatenaryFamily::isotropic(1.0, 1.0, 0.0)
        };
        assert!(matches!(lx.eval(1.0), Err(GeometryError::InvalidSpec(_))));
        assert!(lx.ode().is_some());
    }

    #[test]
    fn catenary_residual_examples() {
        let cat = CatenaryFamily::isotropic(2.0, 1.0, 0.0)
            .curve(0.5, 6.0)
            .unwrap();
        for t in [1.0, 2.0, 5.0] {
            let r = catenary_curvature_residual(&cat, ReferenceLine::Lz, 1.0, 0.0, t).unwrap();
            assert!(r.abs() < 1e-14, "t = {t}: {r}");
        }
        let inv_sq = PlaneCurve::graph(0.5, 3.0, |t| {
            (t.powi(-2), -2.0 * t.powi(-3), 6.0 * t.powi(-4))
        })
        .unwrap();
        let r = catenary_curvature_residual(&inv_sq, ReferenceLine::Lz, 3.0, 0.0, 1.3).unwrap();
        assert!(r.abs() < 1e-13);
        let r = catenary_curvature_residual(&parabola(), ReferenceLine::Lz, 1.0, 0.0, 1.0).unwrap();
        assert!((r - 4.0).abs() < 1e-14);
    }

    #[test]
    fn catenary_residual_singular_denominator() {
        let r = catenary_curvature_residual(&parabola(), ReferenceLine::Lz, 1.0, 1.0, 1.0);
        assert!(matches!(r, Err(GeometryError::SingularDenominator { .. })));
    }

    #[test]
    fn shifted_catenary_satisfies_lambda_characterization() {
        let cat = CatenaryFamily::isotropic(-1.5, 0.3, 0.8)
            .curve(1.0, 4.0)
            .unwrap();
        for t in [1.1, 2.0, 3.7] {
            let r = catenary_curvature_residual(&cat, ReferenceLine::Lz, 1.0, 0.8, t).unwrap();
            assert!(r.abs() < 1e-13);
        }
    }

    #[test]
    fn lx_residual_vanishes_on_unit_slope_line() {
        // ż = 1 makes ⟪N_par, Z⟫ = 0 while κ = 0
        let l = line(1.0, 2.0);
        for alpha in [1.0, 2.0, 0.5] {
            let r = catenary_curvature_residual(&l, ReferenceLine::Lx, alpha, 0.0, 1.0).unwrap();
            assert_eq!(r, 0.0);
        }
    }

    #[test]
    fn profile_formula_derivatives() {
        let f = ProfileFormula::poly(&[1.0, -2.0, 3.0]).with(ProfileTerm::Log {
            coef: 2.0,
            shift: 0.0,
        });
        let (z, dz, ddz) = f.eval(2.0).unwrap();
        assert!((z - (1.0 - 4.0 + 12.0 + 2.0 * 2f64.ln())).abs() < 1e-14);
        assert!((dz - (-2.0 + 12.0 + 1.0)).abs() < 1e-14);
        assert!((ddz - (6.0 - 0.5)).abs() < 1e-14);
        assert!(ProfileFormula::power(1.0, 0.5, 0.0).eval(-1.0).is_err());
        assert!(ProfileFormula::log(1.0, 0.0).eval(0.0).is_err());
        assert!(ProfileFormula::poly(&[4.0, 0.0]).is_constant());
        assert!(!ProfileFormula::log(1.0, 0.0).is_constant());
    }

    #[test]
    fn sampled_curve_reproduces_analytic_jets() {
        let n = 401;
        let t: Vec<f64> = (0..n)
            .map(|i| 1.0 + 2.0 * i as f64 / (n - 1) as f64)
            .collect();
        let z: Vec<f64> = t.iter().map(|t| t.ln()).collect();
        let c = PlaneCurve::from_samples(t, z).unwrap();
        for s in [1.0, 1.37, 2.0, 2.999, 3.0] {
            let j = c.jet(s).unwrap();
            assert!((j.z - s.ln()).abs() < 1e-8);
            assert!((j.dz - 1.0 / s).abs() < 1e-4);
            assert!((j.ddz + 1.0 / (s * s)).abs() < 1e-3);
        }
        assert!(PlaneCurve::from_samples(vec![0.0, 1.0, 1.0], vec![0.0; 3]).is_err());
    }
}
