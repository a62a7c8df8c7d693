//! Norms and maximal functions on grid functions and Haar spectra.

mod exponent;
mod lebesgue;
mod net;
mod rearrangement;
mod report;
mod sequence;

pub use exponent::{Exponent, ExponentPair};
pub use lebesgue::{mixed_lp_norm, mixed_lp_norm_p};
pub use net::{net_norm, NetMaximalTable, NET_TABLE_CSV_HEADER};
pub use rearrangement::{lemma1_rhs, rearrangement, Rearrangement};
pub use report::{NormReport, NORM_CSV_HEADER};
pub use sequence::{seq_norm, seq_norm_1d, seq_norm_from_sup};
