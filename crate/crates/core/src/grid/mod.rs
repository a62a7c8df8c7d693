//! Piecewise-constant functions on dyadic grids of `[0,1]` and `[0,1]^2`.

mod family;
mod sat;

pub use family::{Family, Family1, FamilySpec};
pub use sat::SummedAreaTable;

use ndarray::{Array1, Array2, Axis};

use crate::error::{Error, Result};

/// Largest level accepted for two-dimensional grids (`4^12` cells).
pub const MAX_LEVEL_2D: u32 = 12;
/// Largest level accepted for one-dimensional grids.
pub const MAX_LEVEL_1D: u32 = 24;

/// Neumaier-compensated sum; the association order is the iteration order.
pub(crate) fn compensated_sum<I: IntoIterator<Item = f64>>(iter: I) -> f64 {
    let mut acc = Neumaier::default();
    for x in iter {
        acc.add(x);
    }
    acc.value()
}

#[derive(Debug, Default, Clone, Copy)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    #[inline]
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

fn check_level(level: u32, max: u32) -> Result<()> {
    if level > max {
        return Err(Error::LevelTooLarge { level, max });
    }
    Ok(())
}

/// A function on `[0,1]` that is constant on each of the `2^L` dyadic cells.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction1 {
    level: u32,
    values: Array1<f64>,
}

impl GridFunction1 {
    pub fn new(level: u32, values: Array1<f64>) -> Result<Self> {
        check_level(level, MAX_LEVEL_1D)?;
        let n = 1usize << level;
        if values.len() != n {
            return Err(Error::Shape {
                level,
                expected: n,
                rows: values.len(),
                cols: 1,
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(vec![i]));
        }
        Ok(Self { level, values })
    }

    pub fn from_fn(level: u32, f: impl FnMut(usize) -> f64) -> Result<Self> {
        check_level(level, MAX_LEVEL_1D)?;
        Self::new(level, Array1::from_shape_fn(1usize << level, f))
    }

    pub fn zeros(level: u32) -> Result<Self> {
        Self::from_fn(level, |_| 0.0)
    }

    pub fn constant(level: u32, c: f64) -> Result<Self> {
        Self::from_fn(level, |_| c)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Number of cells, `2^L`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Cell width `2^{-L}`.
    pub fn cell_width(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    pub fn values(&self) -> &Array1<f64> {
        &self.values
    }

    pub fn integral(&self) -> f64 {
        compensated_sum(self.values.iter().copied()) * self.cell_width()
    }

    /// Exact `L_p[0,1]` norm; `p = inf` gives the maximum modulus.
    pub fn lp_norm(&self, p: f64) -> f64 {
        if p.is_infinite() {
            return self.values.iter().fold(0.0, |m, v| m.max(v.abs()));
        }
        let s = compensated_sum(self.values.iter().map(|v| v.abs().powf(p)));
        (s * self.cell_width()).powf(1.0 / p)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            level: self.level,
            values: &self.values * factor,
        }
    }

    pub fn is_monotone_nonincreasing(&self) -> bool {
        self.values.windows(2).into_iter().all(|w| w[0] >= w[1])
    }
}

/// A function on `[0,1]^2` that is constant on each of the `2^L x 2^L`
/// dyadic cells. `values[[i, j]]` is the value on
/// `(i 2^{-L}, (i+1) 2^{-L}) x (j 2^{-L}, (j+1) 2^{-L})`; the first index
/// runs along `x1`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction2 {
    level: u32,
    values: Array2<f64>,
}

impl GridFunction2 {
    pub fn new(level: u32, values: Array2<f64>) -> Result<Self> {
        check_level(level, MAX_LEVEL_2D)?;
        let n = 1usize << level;
        let (rows, cols) = values.dim();
        if rows != n || cols != n {
            return Err(Error::Shape {
                level,
                expected: n,
                rows,
                cols,
            });
        }
        if let Some(((i, j), _)) = values.indexed_iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite(vec![i, j]));
        }
        Ok(Self { level, values })
    }

    pub fn from_fn(level: u32, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        check_level(level, MAX_LEVEL_2D)?;
        let n = 1usize << level;
        Self::new(level, Array2::from_shape_fn((n, n), |(i, j)| f(i, j)))
    }

    pub fn zeros(level: u32) -> Result<Self> {
        Self::from_fn(level, |_, _| 0.0)
    }

    pub fn constant(level: u32, c: f64) -> Result<Self> {
        Self::from_fn(level, |_, _| c)
    }

    /// `(g ⊗ h)(x1, x2) = g(x1) h(x2)`.
    pub fn outer(g: &GridFunction1, h: &GridFunction1) -> Result<Self> {
        if g.level() != h.level() {
            return Err(Error::Shape {
                level: g.level(),
                expected: g.len(),
                rows: g.len(),
                cols: h.len(),
            });
        }
        let col = g.values().view().insert_axis(Axis(1));
        let row = h.values().view().insert_axis(Axis(0));
        Self::new(g.level(), &col * &row)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    /// Cells per side, `2^L`.
    pub fn side(&self) -> usize {
        self.values.nrows()
    }

    pub fn cell_width(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    pub fn cell_area(&self) -> f64 {
        (-2.0 * self.level as f64).exp2()
    }

    pub fn values(&self) -> &Array2<f64> {
        &self.values
    }

    pub fn into_values(self) -> Array2<f64> {
        self.values
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[[i, j]]
    }

    pub fn integral(&self) -> f64 {
        compensated_sum(self.values.iter().copied()) * self.cell_area()
    }

    /// `∫∫ f^2`, the squared `L_2` norm.
    pub fn l2_norm_squared(&self) -> f64 {
        compensated_sum(self.values.iter().map(|v| v * v)) * self.cell_area()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            level: self.level,
            values: &self.values * factor,
        }
    }

    /// `a f + b g` for functions on the same grid.
    pub fn linear_combination(a: f64, f: &Self, b: f64, g: &Self) -> Result<Self> {
        if f.level != g.level {
            return Err(Error::Shape {
                level: f.level,
                expected: f.side(),
                rows: g.side(),
                cols: g.side(),
            });
        }
        Self::new(f.level, &f.values * a + &g.values * b)
    }

    /// Mirror image `x_axis -> 1 - x_axis` along axis 0 (`x1`) or 1 (`x2`).
    pub fn reflected(&self, axis: usize) -> Self {
        let mut values = self.values.clone();
        values.invert_axis(Axis(axis));
        Self {
            level: self.level,
            values,
        }
    }

    /// The same function represented on a finer grid.
    pub fn refined(&self, level: u32) -> Result<Self> {
        if level < self.level {
            return Err(Error::TruncationExceedsLevel {
                requested: self.level,
                level,
            });
        }
        let shift = level - self.level;
        Self::from_fn(level, |i, j| self.values[[i >> shift, j >> shift]])
    }

    /// `f(x) <= f(y)` whenever `y <= x` coordinatewise. Adjacent-cell
    /// comparisons suffice by transitivity.
    pub fn is_monotone_nonincreasing(&self) -> bool {
        let n = self.side();
        for i in 0..n {
            for j in 0..n {
                let v = self.values[[i, j]];
                if i + 1 < n && self.values[[i + 1, j]] > v {
                    return false;
                }
                if j + 1 < n && self.values[[i, j + 1]] > v {
                    return false;
                }
            }
        }
        true
    }
}
