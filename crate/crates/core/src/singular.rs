//! Singular minimal surfaces, the catenoid boundary problem, and the
//! classification of helicoidal and parabolic-revolution solutions.
//!
//! A surface is α-singular minimal with respect to a reference plane at
//! distance `d` when `H = α d^{α−1} ν / (2(d^α − λ))`, with `ν` the component of
//! the parabolic normal measured by the plane: `⟨N_par, X⟩` for the isotropic
//! plane `x = 0` and `⟪N_par, Z⟫` for the non-isotropic plane `z = 0`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::curves::{real_power, CatenaryFamily, ProfileFormula, ProfileTerm};
use crate::error::{GeometryError, Result};
use crate::odes::{integrate, ProfileODE};
use crate::surfaces::{
    make_helicoidal, make_parabolic_revolution, HelicoidalSpec, ParabolicParams,
    ParabolicRevolutionSpec, ParamSurface,
};

/// Constraint residuals at or below this (scaled) size count as satisfied.
pub const CONSTRAINT_TOLERANCE: f64 = 1e-12;

/// Reference plane of the singular minimal condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReferencePlane {
    /// The isotropic plane `x = 0`; distance `x`.
    #[serde(rename = "yz")]
    PiYz,
    /// The non-isotropic plane `z = 0`; distance `z`.
    #[serde(rename = "xy")]
    PiXy,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularSpec {
    pub reference: ReferencePlane,
    pub alpha: f64,
    pub lambda: f64,
}

impl SingularSpec {
    /// α = 1, λ = 0.
    pub fn new(reference: ReferencePlane) -> Self {
        Self {
            reference,
            alpha: 1.0,
            lambda: 0.0,
        }
    }

    pub fn with_alpha(self, alpha: f64) -> Self {
        Self { alpha, ..self }
    }
}

/// `H − α d^{α−1} ν / (2(d^α − λ))` at `(u, v)`.
///
/// The surface must lie in the open half-space `d > 0`.
pub fn sms_residual(surface: &ParamSurface, spec: &SingularSpec, u: f64, v: f64) -> Result<f64> {
    let jet = surface.jet(u, v)?;
    let normal = jet.parabolic_normal();
    let (d, nu) = match spec.reference {
        ReferencePlane::PiYz => (jet.r.x, normal.x),
        ReferencePlane::PiXy => (jet.r.z, normal.z),
    };
    let at = format!("(u, v) = ({u}, {v})");
    if !(d > 0.0) {
        return Err(GeometryError::SingularDenominator {
            at: format!("{at}: distance {d} to the reference plane must be positive"),
            value: d,
        });
    }
    let denom = real_power(d, spec.alpha, &at)? - spec.lambda;
    if !(denom.abs() >= 1e-12) {
        return Err(GeometryError::SingularDenominator { at, value: denom });
    }
    let h = jet.fundamental_forms().mean_curvature();
    Ok(h - spec.alpha * real_power(d, spec.alpha - 1.0, &at)? * nu / (2.0 * denom))
}

/// Largest |sms residual| over an `nu × nv` node grid of `rect`.
pub fn max_sms_residual(
    surface: &ParamSurface,
    spec: &SingularSpec,
    u: (f64, f64),
    v: (f64, f64),
    nu: usize,
    nv: usize,
) -> Result<f64> {
    let mut worst = 0.0f64;
    for i in 0..nu {
        for j in 0..nv {
            let s = u.0 + (u.1 - u.0) * i as f64 / (nu.max(2) - 1) as f64;
            let t = v.0 + (v.1 - v.0) * j as f64 / (nv.max(2) - 1) as f64;
            worst = worst.max(sms_residual(surface, spec, s, t)?.abs());
        }
    }
    Ok(worst)
}

/// Two coaxial circles `(r, z)` to be joined by an isotropic catenoid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CatenoidBoundary {
    pub r1: f64,
    pub z1: f64,
    pub r2: f64,
    pub z2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum CatenoidSolution {
    /// The profile `z = c ln t + d`.
    Catenoid { c: f64, d: f64 },
    /// Equal radii at different heights.
    NoSolution,
    /// Equal radii at equal heights: both circles coincide and `c` is not fixed by them.
    Degenerate { d: f64 },
}

/// Solves `c ln r₁ + d = z₁`, `c ln r₂ + d = z₂`.
pub fn solve_catenoid_boundary(b: &CatenoidBoundary) -> Result<CatenoidSolution> {
    for r in [b.r1, b.r2] {
        if !(r > 0.0) || !r.is_finite() {
            return Err(GeometryError::InvalidRadius(r));
        }
    }
    if !(b.z1.is_finite() && b.z2.is_finite()) {
        return Err(GeometryError::InvalidSpec(
            "non-finite circle height".into(),
        ));
    }
    if b.r1 == b.r2 {
        return Ok(if b.z1 == b.z2 {
            CatenoidSolution::Degenerate { d: b.z1 }
        } else {
            CatenoidSolution::NoSolution
        });
    }
    let c = (b.z2 - b.z1) / (b.r2 / b.r1).ln();
    Ok(CatenoidSolution::Catenoid {
        c,
        d: b.z1 - c * b.r1.ln(),
    })
}

/// Outcome of a classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClassificationCase {
    HorizontalPlane,
    /// Surfaces of revolution `z = z₂/t + z₁`.
    EuclideanRevolutionInverse,
    /// Surfaces of revolution whose profile solves `z'' + z'/t = (1 − z'²)/(2z)`.
    NonIsotropicODE,
    /// `a = 0`: `z = −c₂/(4b) t² + z₂ ln t + z₁`.
    ParabolicCase1a,
    /// `a ≠ 0`: `z = c₁/(2a) t² + z₁`.
    ParabolicCase1b,
    /// Parabolic revolutions over `z = 0` (warped translations, `c = c₁ = c₂ = 0`),
    /// profile given by `2z z'' + z'² = b²/(a² + b²)`.
    ParabolicNonIsotropic,
    NoHelicoidal,
    NoSolution,
}

/// A named equality constraint and its residual.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub name: String,
    pub residual: f64,
    pub satisfied: bool,
}

impl Constraint {
    fn new(name: &str, residual: f64, scale: f64) -> Self {
        Self {
            name: name.to_string(),
            residual,
            satisfied: residual.abs() <= CONSTRAINT_TOLERANCE * scale.max(1.0),
        }
    }
}

/// Basis function multiplying a free constant of a profile family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    One,
    Power { exponent: f64 },
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FreeConstant {
    pub name: String,
    pub basis: Basis,
}

/// Profile attached to a report: a closed form with free constants, or an ODE.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportProfile {
    /// `closed_form` or `ode`.
    pub kind: String,
    /// Human-readable formula.
    pub expression: String,
    /// Fixed part of the closed form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<ProfileFormula>,
    /// Free constants, each multiplying its basis function.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub free: Vec<FreeConstant>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ode: Option<ProfileODE>,
    /// Representative solution of the ODE, `[t, z, z']` rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<[f64; 3]>>,
}

impl ReportProfile {
    /// Closed form with the free constants set from `values` (missing names count as zero).
    pub fn instantiate(&self, values: &BTreeMap<String, f64>) -> Option<ProfileFormula> {
        let mut f = self.coefficients.clone()?;
        for free in &self.free {
            let v = values.get(&free.name).copied().unwrap_or(0.0);
            f = match free.basis {
                Basis::One => {
                    f.constant += v;
                    f
                }
                Basis::Power { exponent } => f.with(ProfileTerm::Power { coef: v, exponent }),
                Basis::Log => f.with(ProfileTerm::Log {
                    coef: v,
                    shift: 0.0,
                }),
            };
        }
        Some(f)
    }
}

/// Result of a classification, with residuals of every constraint it checked.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub case: ClassificationCase,
    pub parameters: BTreeMap<String, f64>,
    pub constraints: Vec<Constraint>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<ReportProfile>,
    /// Largest |sms residual| of the representative solution on the verification grid.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verification_max_sms_residual: Option<f64>,
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report for a particular choice of the free constants; a flat
    /// horizontal result is reported as [`ClassificationCase::HorizontalPlane`].
    pub fn specialize(&self, values: &BTreeMap<String, f64>) -> ClassificationReport {
        let mut out = self.clone();
        let Some(profile) = self.profile.as_ref() else {
            return out;
        };
        let Some(formula) = profile.instantiate(values) else {
            return out;
        };
        let tilted = ["c", "c1", "c2"]
            .iter()
            .any(|k| self.parameters.get(*k).is_some_and(|v| *v != 0.0));
        if formula.is_constant() && !tilted {
            out.case = ClassificationCase::HorizontalPlane;
        }
        out.profile = Some(ReportProfile {
            coefficients: Some(formula),
            free: Vec::new(),
            ..profile.clone()
        });
        for (k, v) in values {
            out.parameters.insert(k.clone(), *v);
        }
        out
    }
}

fn params(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn representative() -> BTreeMap<String, f64> {
    params(&[("z1", 1.0), ("z2", 0.5)])
}

const GRID: (usize, usize) = (50, 16);

/// Classifies helicoidal singular minimal surfaces of pitch `c`.
///
/// A nonzero pitch is incompatible with both reference planes: the equation
/// splits into independent `cos θ` and `sin θ` parts and the latter is `c`.
pub fn classify_helicoidal(c: f64, reference: ReferencePlane) -> Result<ClassificationReport> {
    if !c.is_finite() {
        return Err(GeometryError::InvalidSpec("non-finite pitch".into()));
    }
    let constraint = Constraint::new("c = 0", c, 1.0);
    let mut report = ClassificationReport {
        case: ClassificationCase::NoHelicoidal,
        parameters: params(&[("c", c)]),
        constraints: vec![constraint.clone()],
        profile: None,
        verification_max_sms_residual: None,
    };
    if !constraint.satisfied {
        return Ok(report);
    }
    match reference {
        ReferencePlane::PiYz => {
            report.case = ClassificationCase::EuclideanRevolutionInverse;
            let profile = ReportProfile {
                kind: "closed_form".into(),
                expression: "z2/t + z1".into(),
                coefficients: Some(ProfileFormula::constant(0.0)),
                free: vec![
                    FreeConstant {
                        name: "z2".into(),
                        basis: Basis::Power { exponent: -1.0 },
                    },
                    FreeConstant {
                        name: "z1".into(),
                        basis: Basis::One,
                    },
                ],
                ode: None,
                samples: None,
            };
            let formula = profile.instantiate(&representative()).expect("closed form");
            let spec = HelicoidalSpec {
                profile: formula.curve(0.5, 3.0)?,
                pitch: 0.0,
                theta: (-1.2, 1.2),
            };
            let s = make_helicoidal(&spec)?;
            report.verification_max_sms_residual = Some(max_sms_residual(
                &s,
                &SingularSpec::new(reference),
                (0.5, 3.0),
                (-1.2, 1.2),
                GRID.0,
                GRID.1,
            )?);
            report.profile = Some(profile);
        }
        ReferencePlane::PiXy => {
            report.case = ClassificationCase::NonIsotropicODE;
            let ode = ProfileODE::RevolutionNonIsotropic;
            let run = integrate(&ode, 1.0, 1.0, 0.0, 2.0, 400)?;
            let curve = run.curve(&ode)?;
            let s = make_helicoidal(&HelicoidalSpec {
                profile: curve,
                pitch: 0.0,
                theta: (-3.0, 3.0),
            })?;
            report.verification_max_sms_residual = Some(max_sms_residual(
                &s,
                &SingularSpec::new(reference),
                (1.0, 2.0),
                (-3.0, 3.0),
                GRID.0,
                GRID.1,
            )?);
            report.profile = Some(ReportProfile {
                kind: "ode".into(),
                expression: "z'' + z'/t = (1 - z'^2)/(2z), z > 0".into(),
                coefficients: None,
                free: Vec::new(),
                ode: Some(ode),
                samples: Some(sample_rows(&run, 20)),
            });
        }
    }
    Ok(report)
}

fn sample_rows(run: &crate::odes::IVPResult, every: usize) -> Vec<[f64; 3]> {
    let s = &run.samples;
    (0..s.len())
        .filter(|i| i % every == 0 || *i == s.len() - 1)
        .map(|i| [s.t[i], s.z[i], s.zp[i]])
        .collect()
}

/// Classifies singular minimal surfaces of parabolic revolution with constants `(a, b, c, c₁, c₂)`.
pub fn classify_parabolic_revolution(
    p: &ParabolicParams,
    reference: ReferencePlane,
) -> Result<ClassificationReport> {
    p.validate()?;
    let ParabolicParams { a, b, c, c1, c2 } = *p;
    let mut report = ClassificationReport {
        case: ClassificationCase::NoSolution,
        parameters: params(&[("a", a), ("b", b), ("c", c), ("c1", c1), ("c2", c2)]),
        constraints: Vec::new(),
        profile: None,
        verification_max_sms_residual: None,
    };
    let spec = SingularSpec::new(reference);
    match reference {
        ReferencePlane::PiYz => {
            let (case, profile) = if a == 0.0 {
                let k = Constraint::new("c1 = 0", c1, 1.0);
                report.constraints.push(k.clone());
                if !k.satisfied {
                    return Ok(report);
                }
                let fixed = ProfileFormula::constant(0.0).with(ProfileTerm::Power {
                    coef: -c2 / (4.0 * b),
                    exponent: 2.0,
                });
                (
                    ClassificationCase::ParabolicCase1a,
                    ReportProfile {
                        kind: "closed_form".into(),
                        expression: format!("{} t^2 + z2 ln(t) + z1", -c2 / (4.0 * b)),
                        coefficients: Some(fixed),
                        free: vec![
                            FreeConstant {
                                name: "z2".into(),
                                basis: Basis::Log,
                            },
                            FreeConstant {
                                name: "z1".into(),
                                basis: Basis::One,
                            },
                        ],
                        ode: None,
                        samples: None,
                    },
                )
            } else {
                let r = a * c2 + 2.0 * b * c1;
                let k = Constraint::new(
                    "a*c2 + 2*b*c1 = 0",
                    r,
                    (a * c2).abs().max((2.0 * b * c1).abs()),
                );
                report.constraints.push(k.clone());
                if !k.satisfied {
                    return Ok(report);
                }
                let fixed = ProfileFormula::constant(0.0).with(ProfileTerm::Power {
                    coef: c1 / (2.0 * a),
                    exponent: 2.0,
                });
                (
                    ClassificationCase::ParabolicCase1b,
                    ReportProfile {
                        kind: "closed_form".into(),
                        expression: format!("{} t^2 + z1", c1 / (2.0 * a)),
                        coefficients: Some(fixed),
                        free: vec![FreeConstant {
                            name: "z1".into(),
                            basis: Basis::One,
                        }],
                        ode: None,
                        samples: None,
                    },
                )
            };
            // x = aθ + t stays positive for |θ| ≤ 1 when t > |a|
            let t = (a.abs() + 0.5, a.abs() + 3.0);
            let formula = profile.instantiate(&representative()).expect("closed form");
            let s = make_parabolic_revolution(&ParabolicRevolutionSpec::new(
                *p,
                formula.curve(t.0, t.1)?,
                (-1.0, 1.0),
            ))?;
            report.verification_max_sms_residual =
                Some(max_sms_residual(&s, &spec, t, (-1.0, 1.0), GRID.0, GRID.1)?);
            report.case = case;
            report.profile = Some(profile);
        }
        ReferencePlane::PiXy => {
            // The θ² and θ coefficients of the equation force c₂ = 0 on top of
            // c = c₁ = 0: with c₂ ≠ 0 they demand z'' = −2bc₂/(a²+b²) and then
            // the t² terms of the remaining part cannot balance.
            let checks = [
                Constraint::new("c = 0", c, 1.0),
                Constraint::new("c1 = 0", c1, 1.0),
                Constraint::new("c2 = 0", c2, 1.0),
            ];
            let ok = checks.iter().all(|k| k.satisfied);
            report.constraints.extend(checks);
            if !ok {
                return Ok(report);
            }
            report.case = ClassificationCase::ParabolicNonIsotropic;
            let ode = ProfileODE::ParabolicNonIsotropic { a, b, c2 };
            let mut profile = ReportProfile {
                kind: "ode".into(),
                expression: "(2z + b c2 t^2) z'' + z'^2 - 2abc2/(a^2+b^2) t z' + 2bc2/(a^2+b^2) (z + b c2 t^2) - b^2/(a^2+b^2) = 0".into(),
                coefficients: None,
                free: Vec::new(),
                ode: Some(ode),
                samples: None,
            };
            // representative solution from a point well inside z > 0
            let t_range = (1.0, 2.0);
            let run = integrate(&ode, t_range.0, 2.0, 0.0, t_range.1, 400);
            if let Ok(run) = run {
                if let Ok(curve) = run.curve(&ode) {
                    let s = make_parabolic_revolution(&ParabolicRevolutionSpec::new(
                        *p,
                        curve,
                        (-0.5, 0.5),
                    ));
                    if let Ok(s) = s {
                        report.verification_max_sms_residual =
                            max_sms_residual(&s, &spec, t_range, (-0.5, 0.5), GRID.0, GRID.1).ok();
                    }
                }
                profile.samples = Some(sample_rows(&run, 20));
            }
            report.profile = Some(profile);
        }
    }
    Ok(report)
}

/// Quadric type of a constant mean curvature parabolic revolution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum QuadricKind {
    EllipticParaboloid,
    ParabolicCylinder,
    HyperbolicParaboloid,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadricTyping {
    pub kind: QuadricKind,
    /// `Λ = 2(ac₁ + bc₂)H₀ − (c₁² + c₂²)`.
    pub lambda: f64,
}

/// Types the quadric by the sign of `Λ`; `|Λ|` below the rounding level of its terms counts as zero.
pub fn quadric_type(a: f64, b: f64, c1: f64, c2: f64, h0: f64) -> Result<QuadricTyping> {
    ParabolicParams {
        a,
        b,
        c: 0.0,
        c1,
        c2,
    }
    .validate()?;
    if !h0.is_finite() {
        return Err(GeometryError::InvalidSpec(
            "non-finite mean curvature".into(),
        ));
    }
    let first = 2.0 * (a * c1 + b * c2) * h0;
    let second = c1 * c1 + c2 * c2;
    let lambda = first - second;
    let zero = 1e-12 * first.abs().max(second).max(1.0);
    let kind = if lambda > zero {
        QuadricKind::EllipticParaboloid
    } else if lambda < -zero {
        QuadricKind::HyperbolicParaboloid
    } else {
        QuadricKind::ParabolicCylinder
    };
    Ok(QuadricTyping { kind, lambda })
}

/// `z = A x² + 2B xy + C y² + D x + E y + F` traced by a CMC parabolic revolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[allow(non_snake_case)]
pub struct QuadricCoefficients {
    pub A: f64,
    pub B: f64,
    pub C: f64,
    pub D: f64,
    pub E: f64,
    pub F: f64,
}

impl QuadricCoefficients {
    /// Trace `z_xx + z_yy = 2(A + C)` of the Hessian of the quadratic part.
    pub fn trace(&self) -> f64 {
        2.0 * (self.A + self.C)
    }

    /// Mean curvature `(z_xx + z_yy)/2` of the graph.
    pub fn mean_curvature(&self) -> f64 {
        self.A + self.C
    }

    /// `AC − B²`; its sign is the sign of `Λ`.
    pub fn discriminant(&self) -> f64 {
        self.A * self.C - self.B * self.B
    }

    /// Height of the quadric over `(x, y)`.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.A * x * x + 2.0 * self.B * x * y + self.C * y * y + self.D * x + self.E * y + self.F
    }
}

/// Quadric swept by the profile `z₀ + z₁t + z₂t²`.
#[allow(clippy::too_many_arguments)]
pub fn cmc_quadric_coefficients(
    p: &ParabolicParams,
    z0: f64,
    z1: f64,
    z2: f64,
) -> Result<QuadricCoefficients> {
    p.validate()?;
    let ParabolicParams { a, b, c, c1, c2 } = *p;
    Ok(QuadricCoefficients {
        A: z2,
        B: (c1 - 2.0 * a * z2) / (2.0 * b),
        C: (2.0 * a * a * z2 - a * c1 + b * c2) / (2.0 * b * b),
        D: z1,
        E: (c - a * z1) / b,
        F: z0,
    })
}

/// `z₂` making the quadratic profile of constant mean curvature `H₀`.
pub fn cmc_profile_z2(p: &ParabolicParams, h0: f64) -> Result<f64> {
    p.validate()?;
    let ParabolicParams { a, b, c1, c2, .. } = *p;
    Ok((a * c1 - b * c2 + 2.0 * b * b * h0) / (2.0 * (a * a + b * b)))
}

/// α-singular minimal surfaces of revolution over `x = 0` and their profile family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaRevolutionLink {
    pub alpha: f64,
    /// Exponent of the catenary family the profiles belong to (`α + 1`).
    pub catenary_alpha: f64,
}

impl AlphaRevolutionLink {
    /// `(α + 1) z' + t z''`, zero on the family.
    pub fn ode_residual(&self, t: f64, zp: f64, zpp: f64) -> f64 {
        (self.alpha + 1.0) * zp + t * zpp
    }

    /// `c ln t + d` for α = 0, `c t^{−α} + d` otherwise.
    pub fn profile(&self, c: f64, d: f64) -> ProfileFormula {
        if self.alpha == 0.0 {
            ProfileFormula::log(c, d)
        } else {
            ProfileFormula::power(c, -self.alpha, d)
        }
    }

    /// The matching catenary family with respect to `Lz`.
    pub fn family(&self, c: f64, d: f64) -> Result<CatenaryFamily> {
        CatenaryFamily::alpha_catenary(self.catenary_alpha, c, d)
    }
}

pub fn alpha_singular_revolution_link(alpha: f64) -> Result<AlphaRevolutionLink> {
    if !alpha.is_finite() {
        return Err(GeometryError::InvalidSpec("non-finite alpha".into()));
    }
    Ok(AlphaRevolutionLink {
        alpha,
        catenary_alpha: alpha + 1.0,
    })
}
