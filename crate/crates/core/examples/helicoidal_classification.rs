//! Singular minimal helicoidal surfaces: a nonzero pitch is never possible,
//! and with zero pitch each reference plane has its own profile family.
//!
//! ```bash
//! cargo run --example helicoidal_classification
//! ```

use std::collections::BTreeMap;

use isokit::singular::{classify_helicoidal, ReferencePlane};

fn main() -> isokit::Result<()> {
    for plane in [ReferencePlane::PiYz, ReferencePlane::PiXy] {
        for c in [1.0, 0.0] {
            let rep = classify_helicoidal(c, plane)?;
            println!(
                "{plane:?}, pitch {c}: {:?}, verification residual {:?}",
                rep.case, rep.verification_max_sms_residual
            );
        }
    }
    let rep = classify_helicoidal(0.0, ReferencePlane::PiYz)?;
    let flat: BTreeMap<String, f64> = [("z1".to_string(), 2.0), ("z2".to_string(), 0.0)].into();
    println!("z2 = 0 specializes to {:?}", rep.specialize(&flat).case);
    println!("{}", rep.to_json());
    Ok(())
}
