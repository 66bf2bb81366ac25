//! Isotropic catenaries and α-catenaries: sample the closed forms and check
//! that they solve the Euler–Lagrange equation of the weighted functional.
//!
//! ```bash
//! cargo run --example catenary_family
//! ```

use isokit::curves::{CatenaryFamily, ReferenceLine};
use isokit::variational::{el_residual, WeightFunctionalSpec};

fn main() -> isokit::Result<()> {
    let families = [
        CatenaryFamily::isotropic(1.0, 0.0, 0.0),
        CatenaryFamily::isotropic(2.0, -1.0, 0.5),
        CatenaryFamily::alpha_catenary(2.0, 1.0, 0.0)?,
        CatenaryFamily::alpha_catenary(3.0, -0.5, 2.0)?,
    ];
    for f in families {
        let spec = WeightFunctionalSpec::new(ReferenceLine::Lz, f.alpha, f.lambda);
        let lo = f.domain_start() + 0.5;
        let mut worst = 0.0f64;
        for i in 0..=50 {
            let t = lo + 3.0 * i as f64 / 50.0;
            worst = worst.max(el_residual(&spec, f.profile(t)?, t)?.abs());
        }
        let curve = f.curve(lo, lo + 3.0)?;
        println!(
            "alpha={} c={} d={} lambda={}: z({lo})={:.6}, curvature {:.6}, max EL residual {worst:.1e}",
            f.alpha,
            f.c,
            f.d,
            f.lambda,
            f.profile(lo)?.0,
            curve.curvature(lo)?,
        );
    }

    // With respect to the x-axis there is no closed form; the family is an ODE.
    let lx = CatenaryFamily {
        reference: ReferenceLine::Lx,
        ..CatenaryFamily::isotropic(1.0, 0.0, 0.0)
    };
    println!("Lx family ODE: {:?}", lx.ode());
    Ok(())
}
