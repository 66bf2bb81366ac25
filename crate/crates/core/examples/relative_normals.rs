//! Minimal and parabolic normals along a plane curve, the relative arc length,
//! and a finite-difference look at the equiaffine property `−N' = κ γ'`.
//!
//! ```bash
//! cargo run --example relative_normals
//! ```

use isokit::curves::PlaneCurve;

fn main() -> isokit::Result<()> {
    let curve = PlaneCurve::graph(0.0, 2.0, |t| {
        (t.sin() + t * t, t.cos() + 2.0 * t, 2.0 - t.sin())
    })?;
    let h = 1e-5;
    println!("    t   kappa      N_min            N_par            -dN_par/dt - kappa*T");
    for i in 1..8 {
        let t = 0.25 * i as f64;
        let j = curve.jet(t)?;
        let nmin = curve.minimal_normal(t)?;
        let npar = curve.parabolic_normal(t)?;
        let dn = (curve.parabolic_normal(t + h)? - curve.parabolic_normal(t - h)?) * (0.5 / h);
        let gap = -dn - j.velocity() * j.curvature();
        println!(
            "{t:5.2} {:8.4}  ({:6.3}, {:6.3})  ({:6.3}, {:7.3})  ({:.1e}, {:.1e})",
            j.curvature(),
            nmin.x,
            nmin.z,
            npar.x,
            npar.z,
            gap.x,
            gap.z
        );
    }
    println!(
        "relative arc length on [0, 2]: {:.12}",
        curve.relative_arclength(0.0, 2.0)?
    );

    // Sampled curves carry finite-difference jets.
    let t: Vec<f64> = (0..=200).map(|i| i as f64 / 100.0).collect();
    let z: Vec<f64> = t.iter().map(|t| t.sin() + t * t).collect();
    let sampled = PlaneCurve::from_samples(t, z)?;
    println!(
        "sampled curvature at t=1: {:.6} (analytic {:.6})",
        sampled.curvature(1.0)?,
        curve.curvature(1.0)?
    );
    Ok(())
}
