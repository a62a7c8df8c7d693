//! The rectangle maximal function `f̄(t1, t2; M)` and the net-space norm.
//!
//! `M` is the set of rectangles inside `[0,1]^2`. The supremum is taken
//! over grid-aligned rectangles only, which is a lower bound for the
//! continuum value and contains every dyadic rectangle and union of
//! dyadic rectangles on the grid. With `h = 2^{-L}`, the surrogate `f̄`
//! equals `fbar(s1, s2)` on `((s1-1)h, s1 h] x ((s2-1)h, s2 h]` and vanishes
//! once a side exceeds 1, so the net norm integrals reduce to closed-form
//! power integrals over those patches.

use std::fmt::Write;

use ndarray::Array2;
use rayon::prelude::*;

use super::ExponentPair;
use crate::grid::{compensated_sum, GridFunction2, SummedAreaTable};

pub const NET_TABLE_CSV_HEADER: &str = "s1,s2,size_max,fbar";

/// Per-size rectangle maxima of a grid function and their suffix maxima.
#[derive(Debug, Clone, PartialEq)]
pub struct NetMaximalTable {
    level: u32,
    // index [s1 - 1, s2 - 1]
    size_max: Array2<f64>,
    fbar: Array2<f64>,
}

impl NetMaximalTable {
    /// All grid-aligned rectangles, `~4^{2L}/4` constant-time SAT lookups,
    /// parallel over the first side length.
    pub fn compute(f: &GridFunction2) -> Self {
        let mut size_max = Self::size_maxima(&SummedAreaTable::build(f));
        // single cells read directly, free of SAT differencing error
        size_max[[0, 0]] = f.max_abs();
        Self::from_size_max(f.level(), size_max)
    }

    pub fn from_sat(sat: &SummedAreaTable) -> Self {
        Self::from_size_max(sat.level(), Self::size_maxima(sat))
    }

    fn size_maxima(sat: &SummedAreaTable) -> Array2<f64> {
        let n = sat.side();
        let width = n + 1;
        let c = sat.cumulative();
        let h2 = (-2.0 * sat.level() as f64).exp2();

        let rows: Vec<Vec<f64>> = (1..=n)
            .into_par_iter()
            .map(|s1| {
                let positions = n - s1 + 1;
                // strip[i0][j] = C[i0 + s1][j] - C[i0][j]
                let mut strip = vec![0.0; positions * width];
                for i0 in 0..positions {
                    let out = &mut strip[i0 * width..(i0 + 1) * width];
                    for (j, o) in out.iter_mut().enumerate() {
                        *o = c[[i0 + s1, j]] - c[[i0, j]];
                    }
                }
                (1..=n)
                    .map(|s2| {
                        let mut best = 0.0f64;
                        for row in strip.chunks_exact(width) {
                            let hi = &row[s2..];
                            for (a, b) in hi.iter().zip(row) {
                                let v = (a - b).abs();
                                if v > best {
                                    best = v;
                                }
                            }
                        }
                        best / ((s1 * s2) as f64 * h2)
                    })
                    .collect()
            })
            .collect();

        let mut size_max = Array2::zeros((n, n));
        for (s1, row) in rows.into_iter().enumerate() {
            for (s2, v) in row.into_iter().enumerate() {
                size_max[[s1, s2]] = v;
            }
        }
        size_max
    }

    fn from_size_max(level: u32, size_max: Array2<f64>) -> Self {
        let n = size_max.nrows();
        let mut fbar = size_max.clone();
        for a in (0..n).rev() {
            for b in (0..n).rev() {
                let mut m = fbar[[a, b]];
                if a + 1 < n {
                    m = m.max(fbar[[a + 1, b]]);
                }
                if b + 1 < n {
                    m = m.max(fbar[[a, b + 1]]);
                }
                fbar[[a, b]] = m;
            }
        }
        Self {
            level,
            size_max,
            fbar,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn side(&self) -> usize {
        self.size_max.nrows()
    }

    /// Largest `|average|` over rectangles of exactly `s1 x s2` cells,
    /// `1 <= s_i <= 2^L`.
    pub fn size_max(&self, s1: usize, s2: usize) -> f64 {
        self.size_max[[s1 - 1, s2 - 1]]
    }

    /// `f̄(s1 h, s2 h)`: largest `|average|` over rectangles of at least
    /// `s1 x s2` cells.
    pub fn fbar(&self, s1: usize, s2: usize) -> f64 {
        self.fbar[[s1 - 1, s2 - 1]]
    }

    /// `f̄(0+, 0+)`, the largest cell modulus.
    pub fn maxabs(&self) -> f64 {
        self.fbar[[0, 0]]
    }

    pub fn size_max_matrix(&self) -> &Array2<f64> {
        &self.size_max
    }

    pub fn fbar_matrix(&self) -> &Array2<f64> {
        &self.fbar
    }

    /// `||f||_{N_{p,q}(M)}` of the grid surrogate, integrated exactly.
    pub fn net_norm(&self, e: &ExponentPair) -> f64 {
        let n = self.side();
        let h = (-(self.level as f64)).exp2();
        let [p1, p2] = e.p();
        let [q1, q2] = e.q();

        let inner: Vec<f64> = (0..n)
            .map(|b| {
                let column = (0..n).map(|a| (a, self.fbar[[a, b]]));
                if q1.is_infinite() {
                    column.fold(0.0, |m: f64, (a, v)| {
                        m.max(((a + 1) as f64 * h).powf(1.0 / p1) * v)
                    })
                } else {
                    let q = q1.value();
                    compensated_sum(column.map(|(a, v)| v.powf(q) * patch_weight(a + 1, h, p1, q)))
                        .powf(1.0 / q)
                }
            })
            .collect();

        if q2.is_infinite() {
            inner.iter().enumerate().fold(0.0, |m: f64, (b, &v)| {
                m.max(((b + 1) as f64 * h).powf(1.0 / p2) * v)
            })
        } else {
            let q = q2.value();
            compensated_sum(
                inner
                    .iter()
                    .enumerate()
                    .map(|(b, &v)| v.powf(q) * patch_weight(b + 1, h, p2, q)),
            )
            .powf(1.0 / q)
        }
    }

    /// Rows `s1,s2,size_max,fbar` with `s1` outer.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(NET_TABLE_CSV_HEADER);
        out.push('\n');
        for ((a, b), &v) in self.size_max.indexed_iter() {
            writeln!(out, "{},{},{},{}", a + 1, b + 1, v, self.fbar[[a, b]])
                .expect("write to String");
        }
        out
    }

    /// Same rows as [`Self::to_csv`] under `"rows"`, plus the level.
    pub fn to_json(&self) -> String {
        let rows: Vec<_> = self
            .size_max
            .indexed_iter()
            .map(|((a, b), &v)| {
                serde_json::json!({"s1": a + 1, "s2": b + 1, "size_max": v, "fbar": self.fbar[[a, b]]})
            })
            .collect();
        let doc = serde_json::json!({"level": self.level, "rows": rows});
        crate::json::to_string_sorted(&doc).expect("table serializes")
    }
}

/// `∫_{(s-1)h}^{sh} t^{q/p - 1} dt = (p/q) ((sh)^{q/p} - ((s-1)h)^{q/p})`.
fn patch_weight(s: usize, h: f64, p: f64, q: f64) -> f64 {
    let r = q / p;
    (p / q) * ((s as f64 * h).powf(r) - ((s - 1) as f64 * h).powf(r))
}

/// `||f||_{N_{p,q}(M)}` via a fresh [`NetMaximalTable`].
pub fn net_norm(f: &GridFunction2, e: &ExponentPair) -> f64 {
    NetMaximalTable::compute(f).net_norm(e)
}
