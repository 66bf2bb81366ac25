//! The isotropic catenoid `z = c ln t + d` rotated about the isotropic axis:
//! zero mean curvature, its relative area, and an OBJ mesh with per-vertex H.
//!
//! ```bash
//! cargo run --example minimal_revolution -- /tmp/catenoid.obj
//! ```

use std::f64::consts::{E, PI};

use isokit::curves::ProfileFormula;
use isokit::surfaces::{make_revolution, RevolutionSpec};

fn main() -> isokit::Result<()> {
    let profile = ProfileFormula::log(1.0, 0.0).curve(1.0, E)?;
    let surface = make_revolution(&RevolutionSpec::new(profile))?;
    let d = surface.domain();

    let mut worst = 0.0f64;
    for i in 0..=10 {
        for j in 0..=10 {
            let t = d.u.0 + (d.u.1 - d.u.0) * i as f64 / 10.0;
            let th = d.v.0 + (d.v.1 - d.v.0) * j as f64 / 10.0;
            worst = worst.max(surface.mean_curvature(t, th)?.abs());
        }
    }
    let area = surface.relative_area(d)?;
    println!("max |H| on an 11x11 grid: {worst:.1e}");
    println!(
        "relative area {area:.12}, closed form {:.12}",
        PI * (E * E + 1.0) / 2.0
    );

    let mesh = surface.mesh(16, 48)?;
    println!(
        "mesh: {} vertices, {} quads, wraps in theta: {}",
        mesh.vertices.len(),
        mesh.quads.len(),
        mesh.wraps
    );
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, mesh.to_obj()).expect("write mesh");
        let sidecar = std::path::Path::new(&path).with_extension("csv");
        std::fs::write(&sidecar, mesh.curvature_csv()).expect("write curvature");
        println!("wrote {path} and {}", sidecar.display());
    }
    Ok(())
}
