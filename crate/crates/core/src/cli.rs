//! Command-line front end.
//!
//! Every subcommand prints a JSON document (or CSV for `catenary`) on standard
//! output and writes optional artifacts to the paths it is given. Exit codes:
//! 0 on success, 1 when a solver fails or a residual check does not pass, 2
//! on invalid flags.

use std::collections::BTreeMap;
use std::f64::consts::TAU;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::curves::{CatenaryFamily, PlaneCurve, ProfileFormula, ReferenceLine};
use crate::error::GeometryError;
use crate::io::{columns, parse_csv, to_csv};
use crate::odes::picard_solve_degenerate;
use crate::quadrature::SURFACE_PANELS;
use crate::singular::{
    classify_helicoidal, classify_parabolic_revolution, max_sms_residual, solve_catenoid_boundary,
    CatenoidBoundary, CatenoidSolution, ReferencePlane, SingularSpec,
};
use crate::surfaces::{
    make_helicoidal, make_parabolic_revolution, make_revolution, HelicoidalSpec, ParabolicParams,
    ParabolicRevolutionSpec, ParamSurface, RevolutionSpec,
};
use crate::variational::{
    el_residual, minimize, relative_length, ArcElement, WeightFunctionalSpec,
};

/// Environment variable overriding the default surface quadrature panel count.
pub const PANELS_ENV: &str = "ISOKIT_PANELS";

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(
    name = "isokit",
    version,
    about = "Catenaries and singular minimal surfaces in simply isotropic space"
)]
pub struct CommandConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample a closed-form catenary `c ln(t − λ) + d` or `c t^{1−α} + d` as CSV `t,z`.
    Catenary(CatenaryArgs),
    /// Minimize the discrete weight functional between fixed endpoints.
    Minimize(MinimizeArgs),
    /// Join two coaxial circles by an isotropic catenoid.
    Catenoid(CatenoidArgs),
    /// Generate a surface, its relative area, and optionally a mesh with per-vertex H.
    Surface(SurfaceArgs),
    /// Classify singular minimal helicoidal or parabolic-revolution surfaces.
    Classify(ClassifyArgs),
    /// Solve the degenerate axis IVP z(0) = a, z'(0) = 0 by Picard iteration.
    Ivp(IvpArgs),
    /// Evaluate an Euler–Lagrange or singular-minimal residual on a grid.
    Residual(ResidualArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RefLineArg {
    Lz,
    Lx,
}

impl From<RefLineArg> for ReferenceLine {
    fn from(r: RefLineArg) -> Self {
        match r {
            RefLineArg::Lz => ReferenceLine::Lz,
            RefLineArg::Lx => ReferenceLine::Lx,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RefPlaneArg {
    Yz,
    Xy,
}

impl From<RefPlaneArg> for ReferencePlane {
    fn from(r: RefPlaneArg) -> Self {
        match r {
            RefPlaneArg::Yz => ReferencePlane::PiYz,
            RefPlaneArg::Xy => ReferencePlane::PiXy,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ArcArg {
    Relative,
    Isotropic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileKindArg {
    /// `c ln t + d`, coefficients `c,d`
    Log,
    /// `c t^p + d`, coefficients `c,p,d`
    Power,
    /// `Σ c_k t^k`, coefficients `c0,c1,...`
    Poly,
}

fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected LO:HI, got {s:?}"))?;
    let lo: f64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let hi: f64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(format!("range {s:?} must satisfy LO < HI"));
    }
    Ok((lo, hi))
}

fn parse_grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or_else(|| format!("expected NxM, got {s:?}"))?;
    let n: usize = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let m: usize = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if n == 0 || m == 0 {
        return Err(format!("grid {s:?} must be positive"));
    }
    Ok((n, m))
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct CatenaryArgs {
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0)]
    pub d: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Parameter range T0:T1 inside the family's domain.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub range: (f64, f64),
    /// Number of intervals.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// Write the CSV here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct MinimizeArgs {
    #[arg(long = "ref", value_enum, default_value = "lz")]
    pub reference: RefLineArg,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Fixed endpoints `ta,za,tb,zb`.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub endpoints: Vec<f64>,
    /// Number of intervals.
    #[arg(long, default_value_t = 200)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "relative")]
    pub arc: ArcArg,
    /// Write the minimizer samples as CSV `t,z`.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct CatenoidArgs {
    #[arg(long)]
    pub r1: f64,
    #[arg(long)]
    pub z1: f64,
    #[arg(long)]
    pub r2: f64,
    #[arg(long)]
    pub z2: f64,
    /// Write the catenoid between the two circles as an OBJ mesh.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    #[arg(long, value_parser = parse_grid, default_value = "32x64")]
    pub grid: (usize, usize),
}

/// Profile curve `z(t)` shared by the surface and residual commands.
#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ProfileArgs {
    #[arg(long, value_enum, default_value = "log")]
    pub profile: ProfileKindArg,
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        default_value = "1,0"
    )]
    pub coeffs: Vec<f64>,
    /// Profile parameter range T0:T1.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true, default_value = "1:2.718281828459045")]
    pub range: (f64, f64),
}

impl ProfileArgs {
    fn formula(&self) -> Result<ProfileFormula, Failure> {
        let k = &self.coeffs;
        let need = |n: usize| {
            if k.len() == n {
                Ok(())
            } else {
                Err(Failure::Usage(format!(
                    "--profile {:?} needs {n} coefficients, got {}",
                    self.profile,
                    k.len()
                )))
            }
        };
        Ok(match self.profile {
            ProfileKindArg::Log => {
                need(2)?;
                ProfileFormula::log(k[0], k[1])
            }
            ProfileKindArg::Power => {
                need(3)?;
                ProfileFormula::power(k[0], k[1], k[2])
            }
            ProfileKindArg::Poly => {
                if k.is_empty() {
                    return Err(Failure::Usage("--profile poly needs coefficients".into()));
                }
                ProfileFormula::poly(k)
            }
        })
    }

    fn curve(&self) -> Result<PlaneCurve, Failure> {
        Ok(self.formula()?.curve(self.range.0, self.range.1)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SurfaceKind {
    Revolution,
    Helicoidal,
    Parabolic,
}

/// Surface family and its constants.
#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SurfaceSpecArgs {
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// θ range; `0:2π` by default.
    #[arg(long, value_parser = parse_range, allow_hyphen_values = true)]
    pub theta: Option<(f64, f64)>,
    /// Helicoidal pitch.
    #[arg(long, default_value_t = 0.0)]
    pub pitch: f64,
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value_t = 0.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0)]
    pub c1: f64,
    #[arg(long, default_value_t = 0.0)]
    pub c2: f64,
}

impl SurfaceSpecArgs {
    fn build(&self, kind: SurfaceKind) -> Result<ParamSurface, Failure> {
        let profile = self.profile.curve()?;
        let theta = self.theta.unwrap_or((0.0, TAU));
        Ok(match kind {
            SurfaceKind::Revolution => make_revolution(&RevolutionSpec { profile, theta })?,
            SurfaceKind::Helicoidal => make_helicoidal(&HelicoidalSpec {
                profile,
                pitch: self.pitch,
                theta,
            })?,
            SurfaceKind::Parabolic => {
                let params = ParabolicParams {
                    a: self.a,
                    b: self.b,
                    c: self.c,
                    c1: self.c1,
                    c2: self.c2,
                };
                make_parabolic_revolution(&ParabolicRevolutionSpec::new(params, profile, theta))?
            }
        })
    }
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SurfaceArgs {
    #[arg(value_enum)]
    pub kind: SurfaceKind,
    #[command(flatten)]
    pub spec: SurfaceSpecArgs,
    /// Write an OBJ mesh here, plus `u,v,x,y,z,H` in a `.csv` sidecar next to it.
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    /// Mesh cells along the profile and the angle.
    #[arg(long, value_parser = parse_grid, default_value = "32x64")]
    pub grid: (usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassifyKind {
    Helicoidal,
    Parabolic,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ClassifyArgs {
    #[arg(value_enum)]
    pub kind: ClassifyKind,
    #[arg(long = "ref", value_enum)]
    pub reference: RefPlaneArg,
    /// Helicoidal pitch, or the `c` constant of a parabolic revolution.
    #[arg(long, default_value_t = 0.0)]
    pub c: f64,
    #[arg(long, default_value_t = 0.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value_t = 0.0)]
    pub c1: f64,
    #[arg(long, default_value_t = 0.0)]
    pub c2: f64,
    /// Fix the free constant z1 of a closed-form family.
    #[arg(long)]
    pub z1: Option<f64>,
    /// Fix the free constant z2 of a closed-form family.
    #[arg(long)]
    pub z2: Option<f64>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct IvpArgs {
    /// Initial height z(0) = a > 0.
    #[arg(long)]
    pub a: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub tol: f64,
    #[arg(long, default_value_t = 200)]
    pub max_iter: usize,
    /// Write the samples as CSV `t,z,zp`.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    El,
    Sms,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ResidualArgs {
    #[arg(long, value_enum)]
    pub check: CheckKind,
    /// Euler–Lagrange reference line (`el`).
    #[arg(long = "ref", value_enum, default_value = "lz")]
    pub reference: RefLineArg,
    /// Singular minimal reference plane (`sms`).
    #[arg(long, value_enum, default_value = "yz")]
    pub plane: RefPlaneArg,
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Surface family (`sms`).
    #[arg(long, value_enum, default_value = "revolution")]
    pub surface: SurfaceKind,
    #[command(flatten)]
    pub spec: SurfaceSpecArgs,
    /// Read the profile from a CSV with columns `t,z` instead (`el`).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Evaluation grid: points along the profile and along the angle.
    #[arg(long, value_parser = parse_grid, default_value = "100x16")]
    pub grid: (usize, usize),
    #[arg(long, default_value_t = 1e-9)]
    pub threshold: f64,
}

/// Why a command did not succeed.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Solver(String),
    /// A residual check ran but exceeded its threshold.
    Check,
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Solver(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Solver(format!("I/O error: {e}"))
    }
}

/// Runs the command line against the process's standard streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Runs the command line with explicit output streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match CommandConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return code;
        }
    };
    match dispatch(&config, out) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Solver(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(Failure::Check) => 1,
    }
}

fn dispatch(config: &CommandConfig, out: &mut dyn Write) -> Result<(), Failure> {
    match &config.command {
        Command::Catenary(a) => catenary(a, out),
        Command::Minimize(a) => minimize_cmd(a, out),
        Command::Catenoid(a) => catenoid(a, out),
        Command::Surface(a) => surface(a, out),
        Command::Classify(a) => classify(a, out),
        Command::Ivp(a) => ivp(a, out),
        Command::Residual(a) => residual(a, out),
    }
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), Failure> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("json")
    )?;
    Ok(())
}

fn uniform(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..=n).map(move |i| {
        if i == n {
            hi
        } else {
            lo + (hi - lo) * i as f64 / n as f64
        }
    })
}

fn panels() -> Result<usize, Failure> {
    match std::env::var(PANELS_ENV) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(p) if p >= 2 => Ok(p),
            _ => Err(Failure::Usage(format!(
                "{PANELS_ENV}={v:?} must be an integer >= 2"
            ))),
        },
        Err(_) => Ok(SURFACE_PANELS),
    }
}

fn catenary(a: &CatenaryArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if a.n == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    let family = CatenaryFamily {
        reference: ReferenceLine::Lz,
        alpha: a.alpha,
        c: a.c,
        d: a.d,
        lambda: a.lambda,
    };
    family.validate()?;
    let rows = uniform(a.range.0, a.range.1, a.n)
        .map(|t| Ok(vec![t, family.profile(t)?.0]))
        .collect::<Result<Vec<_>, GeometryError>>()?;
    let text = to_csv(&["t", "z"], &rows);
    match &a.out {
        Some(path) => fs::write(path, text)?,
        None => write!(out, "{text}")?,
    }
    Ok(())
}

fn minimize_cmd(a: &MinimizeArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let e = &a.endpoints;
    if e.len() != 4 {
        return Err(Failure::Usage("--endpoints needs ta,za,tb,zb".into()));
    }
    if a.n < 2 {
        return Err(Failure::Usage("--n must be at least 2".into()));
    }
    let arc = match a.arc {
        ArcArg::Relative => ArcElement::Relative,
        ArcArg::Isotropic => ArcElement::Isotropic,
    };
    let spec = WeightFunctionalSpec::new(a.reference.into(), a.alpha, a.lambda).with_arc(arc);
    let m = minimize(&spec, (e[0], e[1], e[2], e[3]), a.n)?;
    if let Some(path) = &a.csv {
        let rows: Vec<Vec<f64>> = m
            .curve
            .t
            .iter()
            .zip(&m.curve.z)
            .map(|(t, z)| vec![*t, *z])
            .collect();
        fs::write(path, to_csv(&["t", "z"], &rows))?;
    }
    emit_json(
        out,
        &json!({
            "reference": spec.reference,
            "alpha": spec.alpha,
            "lambda": spec.lambda,
            "intervals": a.n,
            "value": m.value,
            "gradient_norm": m.gradient_norm,
            "iterations": m.iterations,
            "relative_length": relative_length(&m.curve),
        }),
    )
}

fn catenoid(a: &CatenoidArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let b = CatenoidBoundary {
        r1: a.r1,
        z1: a.z1,
        r2: a.r2,
        z2: a.z2,
    };
    let sol = solve_catenoid_boundary(&b)?;
    match sol {
        CatenoidSolution::Catenoid { c, d } => {
            if let Some(path) = &a.mesh {
                let (lo, hi) = (a.r1.min(a.r2), a.r1.max(a.r2));
                let curve = ProfileFormula::log(c, d).curve(lo, hi)?;
                let s = make_revolution(&RevolutionSpec::new(curve))?;
                write_mesh(&s, a.grid, path)?;
            }
            writeln!(
                out,
                "{}",
                serde_json::to_string(&json!({"c": c, "d": d})).expect("json")
            )?;
        }
        other => {
            writeln!(out, "{}", serde_json::to_string(&other).expect("json"))?;
        }
    }
    Ok(())
}

fn sidecar_path(mesh: &Path) -> PathBuf {
    mesh.with_extension("csv")
}

fn write_mesh(s: &ParamSurface, grid: (usize, usize), path: &Path) -> Result<(), Failure> {
    let mesh = s.mesh(grid.0, grid.1)?;
    fs::write(path, mesh.to_obj())?;
    fs::write(sidecar_path(path), mesh.curvature_csv())?;
    Ok(())
}

fn surface(a: &SurfaceArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let s = a.spec.build(a.kind)?;
    let p = panels()?;
    let area = s.relative_area_with(s.domain(), p, p)?;
    let mesh = s.mesh(a.grid.0, a.grid.1)?;
    let (hmin, hmax) = mesh
        .mean_curvature
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), h| {
            (lo.min(*h), hi.max(*h))
        });
    if let Some(path) = &a.mesh {
        fs::write(path, mesh.to_obj())?;
        fs::write(sidecar_path(path), mesh.curvature_csv())?;
    }
    let d = s.domain();
    emit_json(
        out,
        &json!({
            "kind": format!("{:?}", a.kind).to_lowercase(),
            "domain": {"t": [d.u.0, d.u.1], "theta": [d.v.0, d.v.1]},
            "relative_area": area,
            "panels": p,
            "vertices": mesh.vertices.len(),
            "faces": mesh.quads.len(),
            "mean_curvature": {"min": hmin, "max": hmax},
        }),
    )
}

fn classify(a: &ClassifyArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let plane: ReferencePlane = a.reference.into();
    let report = match a.kind {
        ClassifyKind::Helicoidal => classify_helicoidal(a.c, plane)?,
        ClassifyKind::Parabolic => {
            let p = ParabolicParams {
                a: a.a,
                b: a.b,
                c: a.c,
                c1: a.c1,
                c2: a.c2,
            };
            if p.b == 0.0 {
                return Err(Failure::Usage("--b must be nonzero".into()));
            }
            classify_parabolic_revolution(&p, plane)?
        }
    };
    let mut free = BTreeMap::new();
    if let Some(v) = a.z1 {
        free.insert("z1".to_string(), v);
    }
    if let Some(v) = a.z2 {
        free.insert("z2".to_string(), v);
    }
    let report = if free.is_empty() {
        report
    } else {
        report.specialize(&free)
    };
    writeln!(out, "{}", report.to_json())?;
    Ok(())
}

fn ivp(a: &IvpArgs, out: &mut dyn Write) -> Result<(), Failure> {
    if !(a.a > 0.0) {
        return Err(Failure::Usage(format!(
            "--a must be positive (got {})",
            a.a
        )));
    }
    let r = picard_solve_degenerate(a.a, a.tol, a.max_iter)?;
    if let Some(path) = &a.csv {
        fs::write(path, r.to_csv())?;
    }
    writeln!(out, "{}", r.sidecar_json())?;
    Ok(())
}

fn residual(a: &ResidualArgs, out: &mut dyn Write) -> Result<(), Failure> {
    let worst = match a.check {
        CheckKind::El => {
            let spec = WeightFunctionalSpec::new(a.reference.into(), a.alpha, a.lambda);
            let (curve, points) = match &a.input {
                Some(path) => {
                    let text = fs::read_to_string(path)?;
                    let (header, rows) = parse_csv(&text)?;
                    let cols = columns(&header, &rows, &["t", "z"])?;
                    let t = cols[0].clone();
                    let curve = PlaneCurve::from_samples(cols[0].clone(), cols[1].clone())?;
                    // interior nodes, where the three-point derivatives are centered
                    (curve, t[1..t.len().saturating_sub(1)].to_vec())
                }
                None => {
                    let c = a.spec.profile.curve()?;
                    let (lo, hi) = c.domain();
                    (c, uniform(lo, hi, a.grid.0.max(1)).collect())
                }
            };
            let mut worst = 0.0f64;
            for t in points {
                let j = curve.jet(t)?;
                let r = el_residual(&spec, (j.z, j.slope(), j.curvature()), j.x)?;
                worst = worst.max(r.abs());
            }
            worst
        }
        CheckKind::Sms => {
            if a.input.is_some() {
                return Err(Failure::Usage("--input applies to --check el only".into()));
            }
            let s = a.spec.build(a.surface)?;
            let spec = SingularSpec {
                reference: a.plane.into(),
                alpha: a.alpha,
                lambda: a.lambda,
            };
            let d = s.domain();
            max_sms_residual(&s, &spec, d.u, d.v, a.grid.0.max(2), a.grid.1.max(2))?
        }
    };
    let pass = worst < a.threshold;
    emit_json(
        out,
        &json!({
            "check": format!("{:?}", a.check).to_lowercase(),
            "max_residual": worst,
            "threshold": a.threshold,
            "pass": pass,
        }),
    )?;
    if pass {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}
