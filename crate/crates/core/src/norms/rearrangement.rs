use crate::grid::{compensated_sum, GridFunction1};

/// Decreasing rearrangement `phi*` of a grid function and its running
/// average `phi**(t) = (1/t) ∫_0^t phi*`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rearrangement {
    pub star: GridFunction1,
    // double_star[m - 1] = phi**(m 2^{-L})
    double_star: Vec<f64>,
}

impl Rearrangement {
    pub fn level(&self) -> u32 {
        self.star.level()
    }

    /// `phi**(m 2^{-L})` for `1 <= m <= 2^L`.
    pub fn double_star_at_cells(&self, m: usize) -> f64 {
        self.double_star[m - 1]
    }

    /// `phi**(2^{-k})` for `0 <= k <= L`.
    pub fn double_star_dyadic(&self, k: u32) -> f64 {
        self.double_star_at_cells(1usize << (self.level() - k))
    }

    pub fn double_star(&self) -> &[f64] {
        &self.double_star
    }
}

/// Sorts `|phi|` into non-increasing order; prefix averages give `phi**`
/// exactly at every grid point.
pub fn rearrangement(phi: &GridFunction1) -> Rearrangement {
    let mut sorted: Vec<f64> = phi.values().iter().map(|v| v.abs()).collect();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut double_star = Vec::with_capacity(sorted.len());
    let mut acc = crate::grid::Neumaier::default();
    for (m, &v) in sorted.iter().enumerate() {
        acc.add(v);
        double_star.push(acc.value() / (m + 1) as f64);
    }
    let star = GridFunction1::new(phi.level(), sorted.into()).expect("moduli of finite values");
    Rearrangement { star, double_star }
}

/// `(sum_{k=0}^{L} (2^{-k/p} phi**(2^{-k}))^p)^{1/p}`.
pub fn lemma1_rhs(phi: &GridFunction1, p: f64) -> f64 {
    let r = rearrangement(phi);
    let terms = (0..=phi.level()).map(|k| (-(k as f64)).exp2() * r.double_star_dyadic(k).powf(p));
    compensated_sum(terms).powf(1.0 / p)
}
