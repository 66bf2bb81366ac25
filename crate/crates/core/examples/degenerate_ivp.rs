//! The axis problem `z'' + z'/t = (1 − z'²)/(2z)`, `z(0) = a`, `z'(0) = 0`:
//! Picard iteration near the axis, RK4 continuation beyond it, and how the
//! solution moves with `a`.
//!
//! ```bash
//! cargo run --example degenerate_ivp
//! ```

use isokit::odes::{continuity_in_a, continuity_table, extend_with_rk, picard_solve_degenerate};

fn main() -> isokit::Result<()> {
    let r = picard_solve_degenerate(1.0, 1e-12, 200)?;
    let info = r.degenerate.expect("degenerate bookkeeping");
    println!(
        "a=1: R={:.4}, eps={}, {} iterations, ratios {:?}",
        info.radius.radius, info.epsilon, r.iterations, r.contraction_ratios
    );
    println!(
        "z''(0) = {:.10} (expected 1/4a = 0.25)",
        r.zpp_origin.unwrap()
    );

    let ext = extend_with_rk(&r, 2.0, 2000)?;
    let n = ext.samples.len() - 1;
    println!(
        "continued to t=2: z={:.8}, z'={:.8}, midpoint residual {:.1e}",
        ext.samples.z[n], ext.samples.zp[n], ext.max_residual
    );

    let a = [0.9, 0.95, 1.0, 1.05, 1.1];
    let runs = continuity_in_a(&a, 1e-12, 200)?;
    for row in continuity_table(&a, &runs) {
        println!(
            "|z_{} - z_{}|_inf = {:.6}",
            row.a_from, row.a_to, row.sup_distance
        );
    }
    println!("{}", r.sidecar_json());
    Ok(())
}
