//! Admissible parametric surfaces of I³ and the invariant-surface generators.
//!
//! A surface is admissible when its tangent planes are never isotropic, i.e.
//! `X₁₂ = x¹_u x²_v − x¹_v x²_u` stays away from zero. All quantities below
//! are built from `r_u × r_v = (X₂₃, X₃₁, X₁₂)` and divided by the signed
//! `X₁₂`, so they do not depend on which of the two orientations a
//! parametrization happens to carry.

use std::f64::consts::TAU;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curves::{CurveJet, PlaneCurve};
use crate::error::{GeometryError, Result};
use crate::io::{to_csv, to_obj};
use crate::metric::{det3, IsoVec3};
use crate::quadrature::{simpson_2d, SURFACE_PANELS};

/// Smallest admissible |X₁₂|.
pub const ADMISSIBILITY_THRESHOLD: f64 = 1e-9;
const ADMISSIBILITY_GRID: usize = 21;

/// Position and partial derivatives up to second order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SurfaceJet {
    pub r: IsoVec3,
    pub ru: IsoVec3,
    pub rv: IsoVec3,
    pub ruu: IsoVec3,
    pub ruv: IsoVec3,
    pub rvv: IsoVec3,
}

impl SurfaceJet {
    /// `r_u × r_v = (X₂₃, X₃₁, X₁₂)`.
    pub fn cross(&self) -> IsoVec3 {
        self.ru.euclid_cross(self.rv)
    }

    pub fn x12(&self) -> f64 {
        self.ru.x * self.rv.y - self.rv.x * self.ru.y
    }

    /// `(X₂₃/X₁₂, X₃₁/X₁₂, 1)`.
    pub fn minimal_normal(&self) -> IsoVec3 {
        let x = self.cross();
        IsoVec3::new(x.x / x.z, x.y / x.z, 1.0)
    }

    /// `(X₂₃/X₁₂, X₃₁/X₁₂, 1/2 − (X₂₃² + X₃₁²)/(2X₁₂²))`.
    pub fn parabolic_normal(&self) -> IsoVec3 {
        let x = self.cross();
        let (p, q) = (x.x / x.z, x.y / x.z);
        IsoVec3::new(p, q, 0.5 - 0.5 * (p * p + q * q))
    }

    pub fn fundamental_forms(&self) -> FundamentalForms {
        let n = self.minimal_normal();
        FundamentalForms {
            g11: self.ru.iso_dot(self.ru),
            g12: self.ru.iso_dot(self.rv),
            g22: self.rv.iso_dot(self.rv),
            h11: self.ruu.euclid_dot(n),
            h12: self.ruv.euclid_dot(n),
            h22: self.rvv.euclid_dot(n),
        }
    }

    /// Relative area density `|det(r_u, r_v, N_par)|`.
    pub fn relative_area_density(&self) -> f64 {
        det3(self.ru, self.rv, self.parabolic_normal()).abs()
    }
}

/// Coefficients of the first (isotropic) and second fundamental forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FundamentalForms {
    pub g11: f64,
    pub g12: f64,
    pub g22: f64,
    pub h11: f64,
    pub h12: f64,
    pub h22: f64,
}

impl FundamentalForms {
    /// `(g₁₁h₂₂ − 2g₁₂h₁₂ + g₂₂h₁₁) / (2(g₁₁g₂₂ − g₁₂²))`.
    pub fn mean_curvature(&self) -> f64 {
        (self.g11 * self.h22 - 2.0 * self.g12 * self.h12 + self.g22 * self.h11)
            / (2.0 * (self.g11 * self.g22 - self.g12 * self.g12))
    }

    /// `(h₁₁h₂₂ − h₁₂²) / (g₁₁g₂₂ − g₁₂²)`.
    pub fn gaussian_curvature(&self) -> f64 {
        (self.h11 * self.h22 - self.h12 * self.h12) / (self.g11 * self.g22 - self.g12 * self.g12)
    }
}

/// Closed parameter rectangle `[u_lo, u_hi] × [v_lo, v_hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub u: (f64, f64),
    pub v: (f64, f64),
}

impl Rect {
    pub fn new(u: (f64, f64), v: (f64, f64)) -> Result<Self> {
        for (lo, hi) in [u, v] {
            if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
                return Err(GeometryError::InvalidInterval { lo, hi });
            }
        }
        Ok(Self { u, v })
    }

    fn contains(&self, other: &Rect) -> bool {
        let slack = 1e-12;
        other.u.0 >= self.u.0 - slack
            && other.u.1 <= self.u.1 + slack
            && other.v.0 >= self.v.0 - slack
            && other.v.1 <= self.v.1 + slack
    }

    fn node(&self, i: usize, n: usize, j: usize, m: usize) -> (f64, f64) {
        let s = |(lo, hi): (f64, f64), k: usize, n: usize| {
            if k == n {
                hi
            } else {
                lo + (hi - lo) * k as f64 / n as f64
            }
        };
        (s(self.u, i, n), s(self.v, j, m))
    }
}

type SurfaceFn = dyn Fn(f64, f64) -> SurfaceJet + Send + Sync;

/// An admissible surface `r(u, v)` on a parameter rectangle.
#[derive(Clone)]
pub struct ParamSurface {
    domain: Rect,
    orientation: f64,
    eval: Arc<SurfaceFn>,
}

impl fmt::Debug for ParamSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamSurface")
            .field("domain", &self.domain)
            .field("orientation", &self.orientation)
            .finish_non_exhaustive()
    }
}

impl ParamSurface {
    /// Wraps an evaluator after checking admissibility (and a constant sign of
    /// `X₁₂`) on a sampling grid of the domain.
    pub fn new<F>(domain: Rect, eval: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> SurfaceJet + Send + Sync + 'static,
    {
        let domain = Rect::new(domain.u, domain.v)?;
        let n = ADMISSIBILITY_GRID - 1;
        let mut sign = 0.0;
        for i in 0..=n {
            for j in 0..=n {
                let (u, v) = domain.node(i, n, j, n);
                let x12 = eval(u, v).x12();
                if !(x12.abs() >= ADMISSIBILITY_THRESHOLD) {
                    return Err(GeometryError::NonAdmissible {
                        at: format!("(u, v) = ({u}, {v})"),
                        what: "X12",
                        value: x12.abs(),
                    });
                }
                if sign == 0.0 {
                    sign = x12.signum();
                } else if x12.signum() != sign {
                    return Err(GeometryError::NonAdmissible {
                        at: format!("(u, v) = ({u}, {v}) (X12 changes sign)"),
                        what: "X12",
                        value: 0.0,
                    });
                }
            }
        }
        Ok(Self {
            domain,
            orientation: sign,
            eval: Arc::new(eval),
        })
    }

    /// The graph `(u, v, f(u, v))`; `f` returns `(f, f_u, f_v, f_uu, f_uv, f_vv)`.
    pub fn graph<F>(domain: Rect, f: F) -> Result<Self>
    where
        F: Fn(f64, f64) -> [f64; 6] + Send + Sync + 'static,
    {
        Self::new(domain, move |u, v| {
            let [z, zu, zv, zuu, zuv, zvv] = f(u, v);
            SurfaceJet {
                r: IsoVec3::new(u, v, z),
                ru: IsoVec3::new(1.0, 0.0, zu),
                rv: IsoVec3::new(0.0, 1.0, zv),
                ruu: IsoVec3::new(0.0, 0.0, zuu),
                ruv: IsoVec3::new(0.0, 0.0, zuv),
                rvv: IsoVec3::new(0.0, 0.0, zvv),
            }
        })
    }

    pub fn domain(&self) -> Rect {
        self.domain
    }

    /// Sign of `X₁₂` over the domain.
    pub fn orientation(&self) -> f64 {
        self.orientation
    }

    /// Jet at `(u, v)`, enforcing the domain and admissibility at that point.
    pub fn jet(&self, u: f64, v: f64) -> Result<SurfaceJet> {
        let d = self.domain;
        let slack = |(lo, hi): (f64, f64)| 1e-12 * (1.0 + f64::max(lo.abs(), hi.abs()));
        if !(u >= d.u.0 - slack(d.u) && u <= d.u.1 + slack(d.u))
            || !(v >= d.v.0 - slack(d.v) && v <= d.v.1 + slack(d.v))
        {
            return Err(GeometryError::DomainError(format!(
                "(u, v) = ({u}, {v}) outside [{}, {}] x [{}, {}]",
                d.u.0, d.u.1, d.v.0, d.v.1
            )));
        }
        let jet = (self.eval)(u, v);
        let x12 = jet.x12();
        if !(x12.abs() >= ADMISSIBILITY_THRESHOLD) {
            return Err(GeometryError::NonAdmissible {
                at: format!("(u, v) = ({u}, {v})"),
                what: "X12",
                value: x12.abs(),
            });
        }
        Ok(jet)
    }

    pub fn position(&self, u: f64, v: f64) -> Result<IsoVec3> {
        Ok(self.jet(u, v)?.r)
    }

    /// `g_ij` from the isotropic metric and `h_ij = det(r₁, r₂, r_ij)/X₁₂`.
    pub fn fundamental_forms(&self, u: f64, v: f64) -> Result<FundamentalForms> {
        Ok(self.jet(u, v)?.fundamental_forms())
    }

    pub fn mean_curvature(&self, u: f64, v: f64) -> Result<f64> {
        Ok(self.fundamental_forms(u, v)?.mean_curvature())
    }

    pub fn minimal_normal(&self, u: f64, v: f64) -> Result<IsoVec3> {
        Ok(self.jet(u, v)?.minimal_normal())
    }

    pub fn parabolic_normal(&self, u: f64, v: f64) -> Result<IsoVec3> {
        Ok(self.jet(u, v)?.parabolic_normal())
    }

    /// Relative area over `sub` with the default panel count.
    pub fn relative_area(&self, sub: Rect) -> Result<f64> {
        self.relative_area_with(sub, SURFACE_PANELS, SURFACE_PANELS)
    }

    /// Tensor-product Simpson integral of `|det(r_u, r_v, N_par)|` over `sub`.
    pub fn relative_area_with(&self, sub: Rect, panels_u: usize, panels_v: usize) -> Result<f64> {
        let sub = Rect::new(sub.u, sub.v)?;
        if !self.domain.contains(&sub) {
            return Err(GeometryError::DomainError(format!(
                "subrectangle {sub:?} leaves the surface domain {:?}",
                self.domain
            )));
        }
        let mut failure = None;
        let failure_cell = std::cell::RefCell::new(&mut failure);
        let value = simpson_2d(
            |u, v| match self.jet(u, v) {
                Ok(j) => j.relative_area_density(),
                Err(e) => {
                    failure_cell.borrow_mut().get_or_insert(e);
                    0.0
                }
            },
            sub.u,
            sub.v,
            panels_u,
            panels_v,
        );
        match failure {
            Some(e) => Err(e),
            None => Ok(value),
        }
    }

    /// Quad mesh on an `nu × nv` cell grid over the whole domain.
    ///
    /// When the surface closes up in `v` (e.g. a full turn of revolution) the
    /// last column is identified with the first so the seam has no duplicate vertices.
    pub fn mesh(&self, nu: usize, nv: usize) -> Result<Mesh> {
        if nu == 0 || nv == 0 {
            return Err(GeometryError::InvalidSpec(format!(
                "mesh needs a positive grid (got {nu}x{nv})"
            )));
        }
        let d = self.domain;
        let wraps = (0..=8).all(|k| {
            let u = d.u.0 + (d.u.1 - d.u.0) * k as f64 / 8.0;
            let (a, b) = ((self.eval)(u, d.v.0).r, (self.eval)(u, d.v.1).r);
            (a - b).euclid_norm() <= 1e-12 * (1.0 + a.euclid_norm())
        });
        let cols = if wraps { nv } else { nv + 1 };
        let mut mesh = Mesh {
            rows: nu + 1,
            cols,
            wraps,
            ..Default::default()
        };
        for i in 0..=nu {
            for j in 0..cols {
                let (u, v) = d.node(i, nu, j, nv);
                let jet = self.jet(u, v)?;
                mesh.vertices.push([jet.r.x, jet.r.y, jet.r.z]);
                mesh.params.push((u, v));
                mesh.mean_curvature
                    .push(jet.fundamental_forms().mean_curvature());
            }
        }
        for i in 0..nu {
            for j in 0..nv {
                let jn = if wraps { (j + 1) % cols } else { j + 1 };
                mesh.quads.push([
                    i * cols + j,
                    (i + 1) * cols + j,
                    (i + 1) * cols + jn,
                    i * cols + jn,
                ]);
            }
        }
        Ok(mesh)
    }
}

/// Row-major quad mesh with per-vertex parameters and mean curvature.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Mesh {
    pub vertices: Vec<[f64; 3]>,
    pub quads: Vec<[usize; 4]>,
    pub params: Vec<(f64, f64)>,
    pub mean_curvature: Vec<f64>,
    pub rows: usize,
    pub cols: usize,
    pub wraps: bool,
}

impl Mesh {
    pub fn to_obj(&self) -> String {
        to_obj(&self.vertices, &self.quads)
    }

    /// Per-vertex CSV `u,v,x,y,z,H`.
    pub fn curvature_csv(&self) -> String {
        let rows: Vec<Vec<f64>> = self
            .vertices
            .iter()
            .zip(&self.params)
            .zip(&self.mean_curvature)
            .map(|((p, (u, v)), h)| vec![*u, *v, p[0], p[1], p[2], *h])
            .collect();
        to_csv(&["u", "v", "x", "y", "z", "H"], &rows)
    }
}

fn checked_jet(profile: &PlaneCurve, t: f64) -> CurveJet {
    profile.jet(t).unwrap_or(CurveJet {
        x: f64::NAN,
        z: f64::NAN,
        dx: f64::NAN,
        dz: f64::NAN,
        ddx: f64::NAN,
        ddz: f64::NAN,
    })
}

fn positive_radius(profile: &PlaneCurve) -> Result<()> {
    let (lo, _) = profile.domain();
    for [t, x, _] in profile.sample(101) {
        if !(x > 0.0) {
            return Err(GeometryError::DomainError(format!(
                "profile radius x = {x} at t = {t} must stay positive (domain starts at {lo})"
            )));
        }
    }
    Ok(())
}

fn check_angles(theta: (f64, f64)) -> Result<()> {
    if !(theta.0 < theta.1) || !theta.0.is_finite() || !theta.1.is_finite() {
        return Err(GeometryError::InvalidInterval {
            lo: theta.0,
            hi: theta.1,
        });
    }
    Ok(())
}

/// Euclidean rotation of a profile `(x(t), 0, z(t))` about the isotropic axis.
#[derive(Debug, Clone)]
pub struct RevolutionSpec {
    pub profile: PlaneCurve,
    pub theta: (f64, f64),
}

impl RevolutionSpec {
    /// Full turn `θ ∈ [0, 2π]`.
    pub fn new(profile: PlaneCurve) -> Self {
        Self {
            profile,
            theta: (0.0, TAU),
        }
    }
}

/// Helicoidal motion of pitch `c` applied to a profile.
#[derive(Debug, Clone)]
pub struct HelicoidalSpec {
    pub profile: PlaneCurve,
    pub pitch: f64,
    pub theta: (f64, f64),
}

impl HelicoidalSpec {
    pub fn new(profile: PlaneCurve, pitch: f64) -> Self {
        Self {
            profile,
            pitch,
            theta: (0.0, TAU),
        }
    }
}

/// `r(t, θ) = (aθ + x, bθ, cθ + (ac₁ + bc₂)θ²/2 + c₁xθ + z)` for a profile `(x(t), z(t))`.
#[derive(Debug, Clone)]
pub struct ParabolicRevolutionSpec {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
    pub profile: PlaneCurve,
    pub theta: (f64, f64),
}

/// Group constants `(a, b, c, c₁, c₂)` of a parabolic revolution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParabolicParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
}

impl ParabolicParams {
    pub fn validate(&self) -> Result<()> {
        if ![self.a, self.b, self.c, self.c1, self.c2]
            .iter()
            .all(|v| v.is_finite())
        {
            return Err(GeometryError::InvalidSpec(
                "non-finite parabolic parameter".into(),
            ));
        }
        if self.b == 0.0 {
            return Err(GeometryError::InvalidSpec(
                "parabolic revolution needs b != 0".into(),
            ));
        }
        Ok(())
    }

    /// `a·c₁ + b·c₂ = 0`: the surface is a warped translation.
    pub fn is_warped_translation(&self) -> bool {
        let k = self.a * self.c1 + self.b * self.c2;
        let scale = (self.a * self.c1)
            .abs()
            .max((self.b * self.c2).abs())
            .max(1.0);
        k.abs() <= 1e-12 * scale
    }
}

impl ParabolicRevolutionSpec {
    pub fn new(params: ParabolicParams, profile: PlaneCurve, theta: (f64, f64)) -> Self {
        let ParabolicParams { a, b, c, c1, c2 } = params;
        Self {
            a,
            b,
            c,
            c1,
            c2,
            profile,
            theta,
        }
    }

    pub fn params(&self) -> ParabolicParams {
        ParabolicParams {
            a: self.a,
            b: self.b,
            c: self.c,
            c1: self.c1,
            c2: self.c2,
        }
    }

    pub fn is_warped_translation(&self) -> bool {
        self.params().is_warped_translation()
    }
}

fn profile_rect(profile: &PlaneCurve, theta: (f64, f64)) -> Result<Rect> {
    check_angles(theta)?;
    Rect::new(profile.domain(), theta)
}

/// Surface of revolution `(x cos θ, x sin θ, z)`.
pub fn make_revolution(spec: &RevolutionSpec) -> Result<ParamSurface> {
    make_helicoidal(&HelicoidalSpec {
        profile: spec.profile.clone(),
        pitch: 0.0,
        theta: spec.theta,
    })
}

/// Helicoidal surface `(x cos θ, x sin θ, cθ + z)`.
pub fn make_helicoidal(spec: &HelicoidalSpec) -> Result<ParamSurface> {
    if !spec.pitch.is_finite() {
        return Err(GeometryError::InvalidSpec("non-finite pitch".into()));
    }
    positive_radius(&spec.profile)?;
    let rect = profile_rect(&spec.profile, spec.theta)?;
    let profile = spec.profile.clone();
    let c = spec.pitch;
    ParamSurface::new(rect, move |t, th| {
        let j = checked_jet(&profile, t);
        let (s, co) = th.sin_cos();
        SurfaceJet {
            r: IsoVec3::new(j.x * co, j.x * s, c * th + j.z),
            ru: IsoVec3::new(j.dx * co, j.dx * s, j.dz),
            rv: IsoVec3::new(-j.x * s, j.x * co, c),
            ruu: IsoVec3::new(j.ddx * co, j.ddx * s, j.ddz),
            ruv: IsoVec3::new(-j.dx * s, j.dx * co, 0.0),
            rvv: IsoVec3::new(-j.x * co, -j.x * s, 0.0),
        }
    })
}

/// Parabolic revolution of a profile.
pub fn make_parabolic_revolution(spec: &ParabolicRevolutionSpec) -> Result<ParamSurface> {
    spec.params().validate()?;
    let rect = profile_rect(&spec.profile, spec.theta)?;
    let profile = spec.profile.clone();
    let ParabolicParams { a, b, c, c1, c2 } = spec.params();
    let k = a * c1 + b * c2;
    ParamSurface::new(rect, move |t, th| {
        let j = checked_jet(&profile, t);
        SurfaceJet {
            r: IsoVec3::new(
                a * th + j.x,
                b * th,
                c * th + 0.5 * k * th * th + c1 * j.x * th + j.z,
            ),
            ru: IsoVec3::new(j.dx, 0.0, c1 * j.dx * th + j.dz),
            rv: IsoVec3::new(a, b, c + k * th + c1 * j.x),
            ruu: IsoVec3::new(j.ddx, 0.0, c1 * j.ddx * th + j.ddz),
            ruv: IsoVec3::new(0.0, 0.0, c1 * j.dx),
            rvv: IsoVec3::new(0.0, 0.0, k),
        }
    })
}

/// `H = (z' + x z'')/(2x)` for a surface of revolution, derivatives taken with respect to `x`.
pub fn revolution_mean_curvature(profile: &PlaneCurve, t: f64) -> Result<f64> {
    let j = profile.jet(t)?;
    if !(j.x > 0.0) {
        return Err(GeometryError::DomainError(format!(
            "revolution radius x = {} at t = {t} must be positive",
            j.x
        )));
    }
    Ok((j.slope() + j.x * j.curvature()) / (2.0 * j.x))
}

/// `H = (z' + x z'')/(2x)`: helicoidal surfaces share the revolution value for every pitch.
pub fn helicoidal_mean_curvature(profile: &PlaneCurve, t: f64) -> Result<f64> {
    revolution_mean_curvature(profile, t)
}

/// `H = ((a² + b²) z'' + b c₂ − a c₁)/(2b²)`.
pub fn parabolic_revolution_mean_curvature(spec: &ParabolicRevolutionSpec, t: f64) -> Result<f64> {
    spec.params().validate()?;
    let ParabolicParams { a, b, c1, c2, .. } = spec.params();
    let z2 = spec.profile.jet(t)?.curvature();
    Ok(((a * a + b * b) * z2 + b * c2 - a * c1) / (2.0 * b * b))
}

/// `F = N₁² + N₂²` of the parabolic normal, as a function of `(t, θ)`:
///
/// ```text
/// F = (c + c₁x)²/b² − 2a(c + c₁x)z'/b² + (a² + b²)z'²/b²
///     − (2θ/b)[(ac₂ − bc₁)z' − c₂(c + c₁x)] + θ²(c₁² + c₂²)
/// ```
pub fn parabolic_revolution_f(spec: &ParabolicRevolutionSpec, t: f64, theta: f64) -> Result<f64> {
    spec.params().validate()?;
    let ParabolicParams { a, b, c, c1, c2 } = spec.params();
    let j = spec.profile.jet(t)?;
    let (x, p) = (j.x, j.slope());
    let m = c + c1 * x;
    Ok(
        m * m / (b * b) - 2.0 * a * m * p / (b * b) + (a * a + b * b) * p * p / (b * b)
            - 2.0 * theta / b * ((a * c2 - b * c1) * p - c2 * m)
            + theta * theta * (c1 * c1 + c2 * c2),
    )
}

/// Closed-form parabolic normal `(−c₁θ − z', (az' − bc₂θ − c − c₁x)/b, 1/2 − F/2)`.
pub fn parabolic_revolution_normal(
    spec: &ParabolicRevolutionSpec,
    t: f64,
    theta: f64,
) -> Result<IsoVec3> {
    let f = parabolic_revolution_f(spec, t, theta)?;
    let ParabolicParams { a, b, c, c1, c2 } = spec.params();
    let j = spec.profile.jet(t)?;
    let p = j.slope();
    Ok(IsoVec3::new(
        -c1 * theta - p,
        (a * p - b * c2 * theta - c - c1 * j.x) / b,
        0.5 - 0.5 * f,
    ))
}
