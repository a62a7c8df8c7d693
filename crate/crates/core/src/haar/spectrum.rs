use ndarray::{s, Array1, Array2, ArrayView1, ArrayView2};

use super::{flat_index, inverse_2d, inverse_in_place};
use crate::error::{Error, Result};
use crate::grid::{compensated_sum, GridFunction1, GridFunction2};

/// Full 1D Haar coefficient set of a level-`L` function.
#[derive(Debug, Clone, PartialEq)]
pub struct HaarSpectrum1 {
    level: u32,
    coeffs: Array1<f64>,
}

impl HaarSpectrum1 {
    /// `coeffs` in flat order: constant first, then `a_k^j` at `2^k + j - 1`.
    pub fn from_coefficients(level: u32, coeffs: Array1<f64>) -> Result<Self> {
        let n = 1usize << level;
        if coeffs.len() != n {
            return Err(Error::Shape {
                level,
                expected: n,
                rows: coeffs.len(),
                cols: 1,
            });
        }
        Ok(Self { level, coeffs })
    }

    pub fn zeros(level: u32) -> Self {
        Self {
            level,
            coeffs: Array1::zeros(1usize << level),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn dc(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn coefficients(&self) -> &Array1<f64> {
        &self.coeffs
    }

    /// `a_k^j` for `j in 1..=2^k`, `k < L`.
    pub fn coefficient(&self, k: u32, j: usize) -> f64 {
        self.coeffs[flat_index(k, j)]
    }

    /// The `2^k` coefficients of level `k`.
    pub fn level_coefficients(&self, k: u32) -> ArrayView1<'_, f64> {
        let lo = 1usize << k;
        self.coeffs.slice(s![lo..2 * lo])
    }

    pub fn sum_of_squares(&self) -> f64 {
        compensated_sum(self.coeffs.iter().map(|c| c * c))
    }

    pub fn inverse(&self) -> GridFunction1 {
        let mut values = self.coeffs.clone();
        inverse_in_place(values.view_mut(), &mut Vec::new());
        GridFunction1::new(self.level, values).expect("finite coefficients give finite values")
    }
}

/// Full 2D Haar coefficient set of a level-`L` grid function.
///
/// Coefficients live in one `2^L x 2^L` matrix in flat Haar order along
/// each axis. The first row and column hold the terms with a constant
/// factor (`1 ⊗ 1`, `1 ⊗ chi_{k2}^{j2}`, `chi_{k1}^{j1} ⊗ 1`); every other
/// entry belongs to a pure block `a_{k1,k2}^{j1,j2}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HaarSpectrum2 {
    level: u32,
    coeffs: Array2<f64>,
}

impl HaarSpectrum2 {
    pub fn from_coefficients(level: u32, coeffs: Array2<f64>) -> Result<Self> {
        let n = 1usize << level;
        let (rows, cols) = coeffs.dim();
        if rows != n || cols != n {
            return Err(Error::Shape {
                level,
                expected: n,
                rows,
                cols,
            });
        }
        if let Some(((i, j), _)) = coeffs.indexed_iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite(vec![i, j]));
        }
        Ok(Self { level, coeffs })
    }

    pub fn zeros(level: u32) -> Self {
        let n = 1usize << level;
        Self {
            level,
            coeffs: Array2::zeros((n, n)),
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coefficients(&self) -> &Array2<f64> {
        &self.coeffs
    }

    /// Coefficient of `1 ⊗ 1`.
    pub fn dc(&self) -> f64 {
        self.coeffs[[0, 0]]
    }

    /// Coefficients of `1 ⊗ chi_{k2}^{j}`, `j = 1..=2^{k2}`.
    pub fn row(&self, k2: u32) -> ArrayView1<'_, f64> {
        let lo = 1usize << k2;
        self.coeffs.slice(s![0, lo..2 * lo])
    }

    /// Coefficients of `chi_{k1}^{j} ⊗ 1`.
    pub fn col(&self, k1: u32) -> ArrayView1<'_, f64> {
        let lo = 1usize << k1;
        self.coeffs.slice(s![lo..2 * lo, 0])
    }

    /// The `2^{k1} x 2^{k2}` block of `a_{k1,k2}^{j1,j2}`.
    pub fn block(&self, k1: u32, k2: u32) -> ArrayView2<'_, f64> {
        let (a, b) = (1usize << k1, 1usize << k2);
        self.coeffs.slice(s![a..2 * a, b..2 * b])
    }

    pub fn coefficient(&self, k1: u32, k2: u32, j1: usize, j2: usize) -> f64 {
        self.coeffs[[flat_index(k1, j1), flat_index(k2, j2)]]
    }

    pub fn set_coefficient(&mut self, k1: u32, k2: u32, j1: usize, j2: usize, value: f64) {
        self.coeffs[[flat_index(k1, j1), flat_index(k2, j2)]] = value;
    }

    /// Sum of squares of every coefficient; equals `∫∫ f^2` (Parseval).
    pub fn sum_of_squares(&self) -> f64 {
        compensated_sum(self.coeffs.iter().map(|c| c * c))
    }

    /// `sup_{j1,j2} |a_{k1,k2}^{j1,j2}|` for every `(k1, k2) in [0, L)^2`;
    /// constant-factor terms are not included.
    pub fn sup_per_level(&self) -> Array2<f64> {
        let l = self.level as usize;
        Array2::from_shape_fn((l, l), |(k1, k2)| {
            self.block(k1 as u32, k2 as u32)
                .iter()
                .fold(0.0, |m: f64, v| m.max(v.abs()))
        })
    }

    /// Copy keeping only terms with `k1 <= n1`, `k2 <= n2`. The
    /// constant-factor terms are kept (truncated the same way) when
    /// `include_dc_blocks` is set and dropped otherwise.
    pub fn truncated(&self, n1: u32, n2: u32, include_dc_blocks: bool) -> Result<Self> {
        for requested in [n1, n2] {
            if requested > self.level {
                return Err(Error::TruncationExceedsLevel {
                    requested,
                    level: self.level,
                });
            }
        }
        // flat indices below 2^{N+1} are exactly the levels k <= N
        let n = 1usize << self.level;
        let (lim1, lim2) = ((2usize << n1).min(n), (2usize << n2).min(n));
        let coeffs = Array2::from_shape_fn((n, n), |(u, v)| {
            let keep = u < lim1 && v < lim2 && (include_dc_blocks || (u > 0 && v > 0));
            if keep {
                self.coeffs[[u, v]]
            } else {
                0.0
            }
        });
        Ok(Self {
            level: self.level,
            coeffs,
        })
    }

    /// The Haar polynomial `S_{N1,N2}` on the grid.
    pub fn partial_sum(&self, n1: u32, n2: u32, include_dc_blocks: bool) -> Result<GridFunction2> {
        Ok(self.truncated(n1, n2, include_dc_blocks)?.inverse())
    }

    /// Full reconstruction.
    pub fn inverse(&self) -> GridFunction2 {
        let mut values = self.coeffs.clone();
        inverse_2d(&mut values);
        GridFunction2::new(self.level, values).expect("finite coefficients give finite values")
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            level: self.level,
            coeffs: &self.coeffs * factor,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Family;
    use crate::haar::haar_forward_2d;

    #[test]
    fn constant_has_only_dc() {
        let a = haar_forward_2d(&GridFunction2::constant(3, 1.0).unwrap());
        assert_eq!(a.dc(), 1.0);
        assert_eq!(a.sum_of_squares(), 1.0);
        assert!(a.sup_per_level().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn atom_spectrum() {
        let f = Family::HaarAtom {
            k1: 0,
            k2: 0,
            j1: 1,
            j2: 1,
        }
        .generate(3)
        .unwrap();
        let a = haar_forward_2d(&f);
        assert_eq!(a.coefficient(0, 0, 1, 1), 1.0);
        assert_eq!(a.sum_of_squares(), 1.0);
        let sup = a.sup_per_level();
        assert_eq!(sup[[0, 0]], 1.0);
        assert_eq!(sup.iter().filter(|&&v| v != 0.0).count(), 1);
    }

    #[test]
    fn block_shapes() {
        let a = HaarSpectrum2::zeros(4);
        for k1 in 0..4 {
            assert_eq!(a.col(k1).len(), 1 << k1);
            assert_eq!(a.row(k1).len(), 1 << k1);
            for k2 in 0..4 {
                assert_eq!(a.block(k1, k2).dim(), (1 << k1, 1 << k2));
            }
        }
    }

    #[test]
    fn full_level_sup() {
        let f = Family::FullLevel {
            k1: 2,
            k2: 1,
            value: 1.0,
        }
        .generate(4)
        .unwrap();
        let sup = haar_forward_2d(&f).sup_per_level();
        assert!((sup[[2, 1]] - 1.0).abs() < 1e-14);
        for ((k1, k2), &v) in sup.indexed_iter() {
            if (k1, k2) != (2, 1) {
                assert!(v.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn partial_sum_examples() {
        assert!(HaarSpectrum2::zeros(3)
            .partial_sum(3, 3, true)
            .unwrap()
            .values()
            .iter()
            .all(|&v| v == 0.0));

        let mut a = HaarSpectrum2::zeros(2);
        a.set_coefficient(0, 0, 1, 1, 1.0);
        let s = a.partial_sum(0, 0, false).unwrap();
        let atom = Family::HaarAtom {
            k1: 0,
            k2: 0,
            j1: 1,
            j2: 1,
        }
        .generate(2)
        .unwrap();
        assert_eq!(s, atom);

        assert!(matches!(
            a.partial_sum(3, 0, false),
            Err(Error::TruncationExceedsLevel {
                requested: 3,
                level: 2
            })
        ));
    }

    #[test]
    fn truncation_drops_high_levels_and_dc() {
        let f = Family::RandomSigns { seed: 5 }.generate(4).unwrap();
        let a = haar_forward_2d(&f);
        let t = a.truncated(1, 2, false).unwrap();
        assert_eq!(t.dc(), 0.0);
        assert!(t.row(0).iter().all(|&v| v == 0.0));
        assert_eq!(t.block(1, 2), a.block(1, 2));
        assert!(t.block(2, 2).iter().all(|&v| v == 0.0));
        let with_dc = a.truncated(1, 2, true).unwrap();
        assert_eq!(with_dc.dc(), a.dc());
        assert_eq!(with_dc.row(2), a.row(2));
        assert!(with_dc.row(3).iter().all(|&v| v == 0.0));
        assert_eq!(with_dc.col(1), a.col(1));
        assert!(with_dc.col(2).iter().all(|&v| v == 0.0));
    }
}
