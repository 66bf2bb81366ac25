//! Constant mean curvature parabolic revolutions with quadratic profile are
//! quadrics; the sign of Λ tells which.
//!
//! ```bash
//! cargo run --example quadric_typing
//! ```

use isokit::singular::{cmc_profile_z2, cmc_quadric_coefficients, quadric_type};
use isokit::surfaces::ParabolicParams;

fn main() -> isokit::Result<()> {
    let p = ParabolicParams {
        a: 1.0,
        b: 1.0,
        c: 0.0,
        c1: 0.5,
        c2: 0.5,
    };
    for h0 in [0.0, 0.25, 0.5, 1.0, 2.0] {
        let typing = quadric_type(p.a, p.b, p.c1, p.c2, h0)?;
        let z2 = cmc_profile_z2(&p, h0)?;
        let q = cmc_quadric_coefficients(&p, 0.0, 0.0, z2)?;
        println!(
            "H0={h0:<4}: Lambda={:+.4} {:?}; z = {:.4}x^2 + 2({:.4})xy + {:.4}y^2, graph H = {:.4}",
            typing.lambda,
            typing.kind,
            q.A,
            q.B,
            q.C,
            q.mean_curvature()
        );
    }
    Ok(())
}
