//! Join two coaxial circles by an isotropic catenoid, including the cases
//! where no catenoid exists.
//!
//! ```bash
//! cargo run --example catenoid_boundary
//! ```

use isokit::singular::{solve_catenoid_boundary, CatenoidBoundary};

fn main() -> isokit::Result<()> {
    let cases = [
        CatenoidBoundary {
            r1: 1.0,
            z1: 0.0,
            r2: std::f64::consts::E,
            z2: 1.0,
        },
        CatenoidBoundary {
            r1: 0.5,
            z1: 2.0,
            r2: 4.0,
            z2: -1.0,
        },
        CatenoidBoundary {
            r1: 2.0,
            z1: 0.0,
            r2: 2.0,
            z2: 1.0,
        },
        CatenoidBoundary {
            r1: 2.0,
            z1: 1.0,
            r2: 2.0,
            z2: 1.0,
        },
    ];
    for b in cases {
        let sol = solve_catenoid_boundary(&b)?;
        println!(
            "({}, {}) - ({}, {}): {}",
            b.r1,
            b.z1,
            b.r2,
            b.z2,
            serde_json::to_string(&sol).unwrap()
        );
    }
    match solve_catenoid_boundary(&CatenoidBoundary {
        r1: -1.0,
        z1: 0.0,
        r2: 1.0,
        z2: 0.0,
    }) {
        Err(e) => println!("negative radius: {e}"),
        Ok(s) => println!("unexpected: {s:?}"),
    }
    Ok(())
}
