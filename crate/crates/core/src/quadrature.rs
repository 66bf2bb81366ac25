//! Composite Simpson rules on uniform grids.

/// Default panel count for curve integrals.
pub const CURVE_PANELS: usize = 256;
/// Default panel count per direction for surface integrals.
pub const SURFACE_PANELS: usize = 128;

fn even(panels: usize) -> usize {
    let p = panels.max(2);
    p + p % 2
}

/// Composite Simpson rule for `f` on `[a, b]`. Odd panel counts are rounded up.
pub fn simpson<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, panels: usize) -> f64 {
    let n = even(panels);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Simpson weights (without the `h/3` factor) for `n` panels.
fn simpson_weights(n: usize) -> Vec<f64> {
    (0..=n)
        .map(|i| {
            if i == 0 || i == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            }
        })
        .collect()
}

/// Tensor-product Simpson rule over `[u0, u1] × [v0, v1]`.
pub fn simpson_2d<F: Fn(f64, f64) -> f64>(
    f: F,
    (u0, u1): (f64, f64),
    (v0, v1): (f64, f64),
    panels_u: usize,
    panels_v: usize,
) -> f64 {
    let (nu, nv) = (even(panels_u), even(panels_v));
    let (hu, hv) = ((u1 - u0) / nu as f64, (v1 - v0) / nv as f64);
    let (wu, wv) = (simpson_weights(nu), simpson_weights(nv));
    let mut acc = 0.0;
    for (i, a) in wu.iter().enumerate() {
        let u = u0 + i as f64 * hu;
        let row: f64 = wv
            .iter()
            .enumerate()
            .map(|(j, b)| b * f(u, v0 + j as f64 * hv))
            .sum();
        acc += a * row;
    }
    acc * hu * hv / 9.0
}

/// Running integral `∫_{x₀}^{x_i} f` at every node of a uniform grid with spacing `h`.
///
/// Even nodes use composite Simpson; odd nodes add the one-interval quadratic
/// rule `h/12 (5f₀ + 8f₁ − f₂)` to the previous even node. Needs at least three samples
/// unless the grid is trivial.
pub fn cumulative_simpson(values: &[f64], h: f64) -> Vec<f64> {
    let n = values.len();
    let mut out = vec![0.0; n];
    if n < 2 {
        return out;
    }
    if n == 2 {
        out[1] = 0.5 * h * (values[0] + values[1]);
        return out;
    }
    for i in 1..n {
        if i % 2 == 0 {
            out[i] = out[i - 2] + h / 3.0 * (values[i - 2] + 4.0 * values[i - 1] + values[i]);
        } else if i + 1 < n {
            out[i] =
                out[i - 1] + h / 12.0 * (5.0 * values[i - 1] + 8.0 * values[i] - values[i + 1]);
        } else {
            // last node of an even-length grid: quadratic through the three trailing samples
            out[i] =
                out[i - 1] + h / 12.0 * (-values[i - 2] + 8.0 * values[i - 1] + 5.0 * values[i]);
        }
    }
    out
}
