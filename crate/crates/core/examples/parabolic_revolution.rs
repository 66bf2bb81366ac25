//! Surfaces of parabolic revolution: the parabolic normal in closed form, and
//! which group constants admit singular minimal examples.
//!
//! ```bash
//! cargo run --example parabolic_revolution
//! ```

use isokit::curves::ProfileFormula;
use isokit::singular::{
    classify_parabolic_revolution, max_sms_residual, ReferencePlane, SingularSpec,
};
use isokit::surfaces::{
    make_parabolic_revolution, parabolic_revolution_normal, ParabolicParams,
    ParabolicRevolutionSpec,
};

fn main() -> isokit::Result<()> {
    let p = ParabolicParams {
        a: 1.0,
        b: 2.0,
        c: 0.5,
        c1: 0.5,
        c2: -2.0,
    };
    println!("warped translation: {}", p.is_warped_translation());
    let spec = ParabolicRevolutionSpec::new(
        p,
        ProfileFormula::poly(&[0.0, 0.0, 0.25]).curve(1.5, 4.0)?,
        (-1.0, 1.0),
    );
    let s = make_parabolic_revolution(&spec)?;
    for (t, th) in [(2.0, 0.0), (3.0, 0.5), (3.5, -0.75)] {
        let numeric = s.parabolic_normal(t, th)?;
        let closed = parabolic_revolution_normal(&spec, t, th)?;
        println!(
            "N_par({t}, {th}) = {numeric:?}, closed form gap {:.1e}",
            (numeric - closed).euclid_norm()
        );
    }

    let rep = classify_parabolic_revolution(&p, ReferencePlane::PiYz)?;
    println!("a*c2 + 2*b*c1 = 0 holds, so: {:?}", rep.case);
    let residual = max_sms_residual(
        &s,
        &SingularSpec::new(ReferencePlane::PiYz),
        (1.5, 4.0),
        (-1.0, 1.0),
        30,
        12,
    )?;
    println!("z = t^2/4 on this surface: max sms residual {residual:.1e}");

    let bad = ParabolicParams { c1: 1.0, ..p };
    let rep = classify_parabolic_revolution(&bad, ReferencePlane::PiYz)?;
    for k in &rep.constraints {
        println!(
            "{:?}: constraint {} residual {} satisfied {}",
            rep.case, k.name, k.residual, k.satisfied
        );
    }
    let rep = classify_parabolic_revolution(
        &ParabolicParams {
            a: 1.0,
            b: 1.0,
            c: 0.0,
            c1: 0.0,
            c2: 0.0,
        },
        ReferencePlane::PiXy,
    )?;
    println!(
        "over z = 0: {:?}, verification residual {:?}",
        rep.case, rep.verification_max_sms_residual
    );
    Ok(())
}
