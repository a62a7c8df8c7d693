//! Haar expansions of grid functions.
//!
//! `chi_k^j` (`k >= 0`, `1 <= j <= 2^k`) is `+2^{k/2}` on the left half of
//! `((j-1) 2^{-k}, j 2^{-k})`, `-2^{k/2}` on the right half and zero
//! elsewhere. Together with `chi_1 = 1` these form an orthonormal basis of
//! `L_2[0,1]`; a level-`L` grid function has an exact finite expansion
//! using levels `k <= L - 1`.
//!
//! Coefficients are stored in the flat Haar ordering: index `0` holds the
//! coefficient of the constant and index `2^k + j - 1` holds `a_k^j`
//! (i.e. `chi_n` sits at `n - 1`).

mod records;
mod spectrum;

pub use records::{records_from_csv, records_to_csv, CoefficientRecord, CSV_HEADER};
pub use spectrum::{HaarSpectrum1, HaarSpectrum2};

use ndarray::{Array2, ArrayViewMut1, Axis};

use crate::error::{Error, Result};
use crate::grid::{GridFunction1, GridFunction2};

/// Position of `a_k^j` in the flat ordering.
#[inline]
pub fn flat_index(k: u32, j: usize) -> usize {
    (1usize << k) + j - 1
}

/// Inverse of [`flat_index`]; `None` for the constant slot.
#[inline]
pub fn level_and_position(index: usize) -> Option<(u32, usize)> {
    if index == 0 {
        return None;
    }
    let k = usize::BITS - 1 - index.leading_zeros();
    Some((k, index - (1usize << k) + 1))
}

/// `2^{k/2}`.
#[inline]
pub(crate) fn amplitude(k: u32) -> f64 {
    (k as f64 * 0.5).exp2()
}

fn check_basis(level: u32, k: u32, j: usize) -> Result<()> {
    if k >= level {
        return Err(Error::TruncationExceedsLevel {
            requested: k + 1,
            level,
        });
    }
    if j == 0 || j > 1usize << k {
        return Err(Error::IndexOutOfRange {
            i0: j,
            i1: j,
            j0: 0,
            j1: 0,
            n: 1usize << k,
        });
    }
    Ok(())
}

/// `chi_k^j` sampled on the level-`level` grid (requires `k < level`).
pub fn basis_function_1d(level: u32, k: u32, j: usize) -> Result<GridFunction1> {
    check_basis(level, k, j)?;
    let shift = level - k;
    let amp = amplitude(k);
    GridFunction1::from_fn(level, |i| {
        if i >> shift != j - 1 {
            0.0
        } else if (i >> (shift - 1)) & 1 == 0 {
            amp
        } else {
            -amp
        }
    })
}

/// `sum_j chi_k^j`: `±2^{k/2}` everywhere, sign set by the half of the
/// level-`k` interval the cell lies in.
pub fn level_sum_1d(level: u32, k: u32) -> Result<GridFunction1> {
    check_basis(level, k, 1)?;
    let shift = level - k;
    let amp = amplitude(k);
    GridFunction1::from_fn(level, |i| {
        if (i >> (shift - 1)) & 1 == 0 {
            amp
        } else {
            -amp
        }
    })
}

/// In-place forward transform of cell averages into flat Haar order.
pub(crate) fn forward_in_place(mut data: ArrayViewMut1<f64>, scratch: &mut Vec<f64>) {
    let n = data.len();
    scratch.clear();
    scratch.resize(n, 0.0);
    let mut len = n;
    while len > 1 {
        let half = len / 2;
        // details of level k = log2(half): a = 2^{-k/2-1} (left - right)
        let k = half.trailing_zeros();
        let scale = 0.5 / amplitude(k);
        for i in 0..half {
            let (l, r) = (data[2 * i], data[2 * i + 1]);
            scratch[i] = 0.5 * (l + r);
            scratch[half + i] = scale * (l - r);
        }
        for i in 0..len {
            data[i] = scratch[i];
        }
        len = half;
    }
}

/// Inverse of [`forward_in_place`].
pub(crate) fn inverse_in_place(mut data: ArrayViewMut1<f64>, scratch: &mut Vec<f64>) {
    let n = data.len();
    scratch.clear();
    scratch.resize(n, 0.0);
    let mut len = 1;
    while len < n {
        let amp = amplitude(len.trailing_zeros());
        for i in 0..len {
            let (s, d) = (data[i], amp * data[len + i]);
            scratch[2 * i] = s + d;
            scratch[2 * i + 1] = s - d;
        }
        len *= 2;
        for i in 0..len {
            data[i] = scratch[i];
        }
    }
}

pub(crate) fn forward_2d(values: &mut Array2<f64>) {
    let mut scratch = Vec::new();
    for axis in [Axis(1), Axis(0)] {
        for lane in values.lanes_mut(axis) {
            forward_in_place(lane, &mut scratch);
        }
    }
}

pub(crate) fn inverse_2d(values: &mut Array2<f64>) {
    let mut scratch = Vec::new();
    for axis in [Axis(0), Axis(1)] {
        for lane in values.lanes_mut(axis) {
            inverse_in_place(lane, &mut scratch);
        }
    }
}

/// Exact 2D Haar expansion of `f`, `O(4^L)`.
pub fn haar_forward_2d(f: &GridFunction2) -> HaarSpectrum2 {
    let mut coeffs = f.values().clone();
    forward_2d(&mut coeffs);
    HaarSpectrum2::from_coefficients(f.level(), coeffs).expect("shape preserved")
}

/// Exact 1D Haar expansion of `phi`.
pub fn haar_forward_1d(phi: &GridFunction1) -> HaarSpectrum1 {
    let mut coeffs = phi.values().clone();
    forward_in_place(coeffs.view_mut(), &mut Vec::new());
    HaarSpectrum1::from_coefficients(phi.level(), coeffs).expect("shape preserved")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_index_round_trip() {
        assert_eq!(flat_index(0, 1), 1);
        assert_eq!(flat_index(3, 8), 15);
        for idx in 1..64 {
            let (k, j) = level_and_position(idx).unwrap();
            assert_eq!(flat_index(k, j), idx);
        }
        assert_eq!(level_and_position(0), None);
    }

    #[test]
    fn basis_function_values() {
        let chi = basis_function_1d(3, 1, 2).unwrap();
        let a = 2f64.sqrt();
        assert_eq!(
            chi.values().to_vec(),
            vec![0.0, 0.0, 0.0, 0.0, a, a, -a, -a]
        );
        assert!(basis_function_1d(3, 3, 1).is_err());
        assert!(basis_function_1d(3, 1, 3).is_err());
        assert!((chi.lp_norm(2.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_dimensional_examples() {
        let one = haar_forward_1d(&GridFunction1::constant(4, 1.0).unwrap());
        assert_eq!(one.dc(), 1.0);
        assert!(one.coefficients().iter().skip(1).all(|&c| c == 0.0));

        let chi = haar_forward_1d(&basis_function_1d(4, 0, 1).unwrap());
        assert_eq!(chi.coefficient(0, 1), 1.0);
        assert_eq!(chi.sum_of_squares(), 1.0);
    }

    #[test]
    fn inverse_undoes_forward() {
        let phi = GridFunction1::from_fn(5, |i| ((i * 7 + 3) % 11) as f64 - 4.5).unwrap();
        let back = haar_forward_1d(&phi).inverse();
        for (a, b) in phi.values().iter().zip(back.values()) {
            assert!((a - b).abs() < 1e-13);
        }
    }
}
