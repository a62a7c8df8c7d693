use super::ExponentPair;
use crate::grid::{compensated_sum, GridFunction2};

/// `(∫ (∫ |f|^{p1} dx1)^{p2/p1} dx2)^{1/p2}`, exact for piecewise-constant
/// `f`: the inner integral is a finite cell sum along `x1` for each `x2`
/// column.
pub fn mixed_lp_norm(f: &GridFunction2, e: &ExponentPair) -> f64 {
    let [p1, p2] = e.p();
    mixed_lp_norm_p(f, p1, p2)
}

/// [`mixed_lp_norm`] for any exponents in `(0, inf]`.
pub fn mixed_lp_norm_p(f: &GridFunction2, p1: f64, p2: f64) -> f64 {
    let h = f.cell_width();
    let values = f.values();
    let inner: Vec<f64> = (0..f.side())
        .map(|j| {
            let column = values.column(j);
            if p1.is_infinite() {
                column.iter().fold(0.0, |m: f64, v| m.max(v.abs()))
            } else {
                (compensated_sum(column.iter().map(|v| v.abs().powf(p1))) * h).powf(1.0 / p1)
            }
        })
        .collect();
    if p2.is_infinite() {
        inner.iter().fold(0.0, |m: f64, &v| m.max(v))
    } else {
        (compensated_sum(inner.iter().map(|v| v.powf(p2))) * h).powf(1.0 / p2)
    }
}
