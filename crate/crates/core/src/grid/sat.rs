use ndarray::Array2;

use super::{GridFunction2, Neumaier};
use crate::error::{Error, Result};

/// Summed-area table of a [`GridFunction2`]: `cumulative[[i, j]]` is the
/// integral of `f` over `[0, i 2^{-L}] x [0, j 2^{-L}]`.
///
/// Row prefixes and column accumulations are both compensated, so entries
/// carry a relative error of a few ulps of the absolute mass they cover.
#[derive(Debug, Clone, PartialEq)]
pub struct SummedAreaTable {
    level: u32,
    cumulative: Array2<f64>,
}

impl SummedAreaTable {
    pub fn build(f: &GridFunction2) -> Self {
        let n = f.side();
        let area = f.cell_area();
        let values = f.values();
        let mut cumulative = Array2::zeros((n + 1, n + 1));
        let mut columns = vec![Neumaier::default(); n];
        for i in 0..n {
            let mut row = Neumaier::default();
            for j in 0..n {
                row.add(values[[i, j]]);
                columns[j].add(row.value());
                // power-of-two scaling is exact
                cumulative[[i + 1, j + 1]] = columns[j].value() * area;
            }
        }
        Self {
            level: f.level(),
            cumulative,
        }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn side(&self) -> usize {
        self.cumulative.nrows() - 1
    }

    pub fn cumulative(&self) -> &Array2<f64> {
        &self.cumulative
    }

    pub fn total(&self) -> f64 {
        let n = self.side();
        self.cumulative[[n, n]]
    }

    /// Integral of `f` over the grid rectangle of cells `[i0, i1) x [j0, j1)`,
    /// i.e. `[i0 h, i1 h] x [j0 h, j1 h]` with `h = 2^{-L}`.
    pub fn rect_integral(&self, i0: usize, i1: usize, j0: usize, j1: usize) -> Result<f64> {
        let n = self.side();
        if i0 >= i1 || j0 >= j1 || i1 > n || j1 > n {
            return Err(Error::IndexOutOfRange { i0, i1, j0, j1, n });
        }
        Ok(self.rect_integral_unchecked(i0, i1, j0, j1))
    }

    #[inline]
    pub(crate) fn rect_integral_unchecked(
        &self,
        i0: usize,
        i1: usize,
        j0: usize,
        j1: usize,
    ) -> f64 {
        let c = &self.cumulative;
        (c[[i1, j1]] - c[[i0, j1]]) - (c[[i1, j0]] - c[[i0, j0]])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_one_total() {
        let sat = SummedAreaTable::build(&GridFunction2::constant(1, 1.0).unwrap());
        assert_eq!(sat.total(), 1.0);
        assert_eq!(sat.cumulative()[[0, 2]], 0.0);
        assert_eq!(sat.cumulative()[[2, 0]], 0.0);
    }

    #[test]
    fn zero_function_all_zero() {
        let sat = SummedAreaTable::build(&GridFunction2::zeros(3).unwrap());
        assert!(sat.cumulative().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn full_range_and_half_indicator() {
        let c = -2.5;
        let sat = SummedAreaTable::build(&GridFunction2::constant(3, c).unwrap());
        assert_eq!(sat.rect_integral(0, 8, 0, 8).unwrap(), c);

        let f = GridFunction2::from_fn(2, |i, _| if i < 2 { 1.0 } else { 0.0 }).unwrap();
        let sat = SummedAreaTable::build(&f);
        assert_eq!(sat.rect_integral(0, 4, 0, 4).unwrap(), 0.5);
        assert_eq!(sat.rect_integral(2, 4, 0, 4).unwrap(), 0.0);
    }

    #[test]
    fn index_errors() {
        let sat = SummedAreaTable::build(&GridFunction2::zeros(2).unwrap());
        assert!(matches!(
            sat.rect_integral(0, 5, 0, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(sat.rect_integral(2, 2, 0, 1).is_err());
        assert!(sat.rect_integral(0, 1, 3, 1).is_err());
    }
}
