//! Double Fourier-Haar analysis on dyadic grids of the unit square.
//!
//! Functions are piecewise constant on the `2^L x 2^L` dyadic cells of
//! `[0,1]^2`, so every quantity here (Haar coefficients, mixed Lebesgue
//! norms, the rectangle maximal function and the net-space norm built on
//! it, the `l^sigma_q(l_inf)` sequence norm) is computed exactly rather
//! than by quadrature.
//!
//! The [`verify`] module turns the two-sided norm equivalences between a
//! function and its Haar coefficients into ratio checks that can be swept
//! over function families, exponents and grid levels.

pub mod error;
pub mod grid;
pub mod haar;
pub mod json;
pub mod norms;
pub mod verify;

pub use error::{Error, Result};
pub use grid::{Family, Family1, FamilySpec, GridFunction1, GridFunction2, SummedAreaTable};
pub use haar::{HaarSpectrum1, HaarSpectrum2};
pub use norms::{Exponent, ExponentPair, NetMaximalTable, NormReport};
