use ndarray::Array1;
use serde::{Deserialize, Serialize};

use super::{RatioRecord, RecordExponents, ENDPOINT_SLACK};
use crate::error::{Error, Result};
use crate::grid::{GridFunction1, GridFunction2};
use crate::haar::{haar_forward_1d, haar_forward_2d, HaarSpectrum1, HaarSpectrum2};
use crate::norms::{
    lemma1_rhs, mixed_lp_norm, seq_norm, seq_norm_1d, ExponentPair, NetMaximalTable,
};

/// `net_norm(f) / seq_norm(a(f))` with the given exponents.
pub fn check_theorem1(family: &str, f: &GridFunction2, e: &ExponentPair) -> RatioRecord {
    let lhs = NetMaximalTable::compute(f).net_norm(e);
    let rhs = seq_norm(&haar_forward_2d(f), e);
    RatioRecord::new(
        "theorem1",
        family,
        f.level(),
        RecordExponents::Pair(*e),
        lhs,
        rhs,
    )
}

/// `mixed_lp_norm(f) / seq_norm(a(f))` with `q = p`, for `f`
/// non-increasing in each variable.
pub fn check_theorem2(family: &str, f: &GridFunction2, p: [f64; 2]) -> Result<RatioRecord> {
    if !f.is_monotone_nonincreasing() {
        return Err(Error::NotMonotone);
    }
    let e = ExponentPair::diagonal(p)?;
    let lhs = mixed_lp_norm(f, &e);
    let rhs = seq_norm(&haar_forward_2d(f), &e);
    Ok(RatioRecord::new(
        "theorem2",
        family,
        f.level(),
        RecordExponents::Pair(e),
        lhs,
        rhs,
    ))
}

/// Outcome of an endpoint inequality `lhs <= rhs + slack`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EndpointCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl EndpointCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            holds: lhs <= rhs + ENDPOINT_SLACK,
        }
    }
}

/// `||a(f)||_{l^sigma_inf(l_inf)} <= 2^{1/p1 + 1/p2} ||f||_{N_{p,inf}(M)}`.
///
/// Each coefficient is a signed sum of the integrals over the four
/// quarters of its support, all of which are grid rectangles, so the
/// inequality is exact for the grid surrogate.
pub fn check_endpoint_coeff_bound(f: &GridFunction2, p: [f64; 2]) -> Result<EndpointCheck> {
    coeff_bound_with(&NetMaximalTable::compute(f), &haar_forward_2d(f), p)
}

pub(crate) fn coeff_bound_with(
    table: &NetMaximalTable,
    spectrum: &HaarSpectrum2,
    p: [f64; 2],
) -> Result<EndpointCheck> {
    let e = ExponentPair::endpoint(p)?;
    let lhs = seq_norm(spectrum, &e);
    let rhs = (1.0 / p[0] + 1.0 / p[1]).exp2() * table.net_norm(&e);
    Ok(EndpointCheck::new(lhs, rhs))
}

/// `||S_{N1,N2}(a)||_{N_{p,inf}(M)} <= 4 ||a||_{l^sigma_1(l_inf)}` with the
/// sequence norm taken over the retained levels `k1 <= N1`, `k2 <= N2`.
/// `S` is built from the pure blocks only.
pub fn check_endpoint_partial_sum_bound(
    a: &HaarSpectrum2,
    p: [f64; 2],
    n1: u32,
    n2: u32,
) -> Result<EndpointCheck> {
    let truncated = a.truncated(n1, n2, false)?;
    let table = NetMaximalTable::compute(&truncated.inverse());
    partial_sum_bound_with(&truncated, &table, p)
}

pub(crate) fn partial_sum_bound_with(
    truncated: &HaarSpectrum2,
    table: &NetMaximalTable,
    p: [f64; 2],
) -> Result<EndpointCheck> {
    let lhs = table.net_norm(&ExponentPair::endpoint(p)?);
    let one = crate::norms::Exponent::new(1.0)?;
    let rhs = 4.0 * seq_norm(truncated, &ExponentPair::new(p, [one, one])?);
    Ok(EndpointCheck::new(lhs, rhs))
}

/// Result of comparing `f_full = sum_{j1,j2} chi_k^{j1} ⊗ chi_k^{j2}` with
/// `f_single = chi_k^1 ⊗ chi_k^1`: equal sequence norms, different mixed
/// Lebesgue norms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Counterexample {
    pub k: u32,
    pub ratio_full: f64,
    pub ratio_single: f64,
    pub quotient: f64,
}

/// Builds both functions on the level-`level` grid (`k < level`) and
/// returns their mixed-norm ratios `mixed_lp / seq_norm (q = p)`.
pub fn check_counterexample_nonmonotone(k: u32, level: u32, p: [f64; 2]) -> Result<Counterexample> {
    use crate::grid::Family;
    let e = ExponentPair::diagonal(p)?;
    let ratio = |family: Family| -> Result<f64> {
        let f = family.generate(level)?;
        Ok(mixed_lp_norm(&f, &e) / seq_norm(&haar_forward_2d(&f), &e))
    };
    let ratio_full = ratio(Family::FullLevel {
        k1: k,
        k2: k,
        value: 1.0,
    })?;
    let ratio_single = ratio(Family::SingleCoeffLevel {
        k1: k,
        k2: k,
        value: 1.0,
    })?;
    Ok(Counterexample {
        k,
        ratio_full,
        ratio_single,
        quotient: ratio_full / ratio_single,
    })
}

/// `||phi||_p` against the dyadic `phi**` sum.
pub fn check_lemma1(family: &str, phi: &GridFunction1, p: f64) -> RatioRecord {
    RatioRecord::new(
        "lemma1",
        family,
        phi.level(),
        RecordExponents::Single { p },
        phi.lp_norm(p),
        lemma1_rhs(phi, p),
    )
}

/// `||phi||_p` against `(sum_k (2^{k(1/2-1/p)} sup_j |a_k^j|)^p)^{1/p}` for
/// non-increasing `phi`.
pub fn check_monotone_1d(family: &str, phi: &GridFunction1, p: f64) -> Result<RatioRecord> {
    if !phi.is_monotone_nonincreasing() {
        return Err(Error::NotMonotone);
    }
    let a = haar_forward_1d(phi);
    Ok(RatioRecord::new(
        "monotone_1d",
        family,
        phi.level(),
        RecordExponents::Single { p },
        phi.lp_norm(p),
        seq_norm_1d(&a, p),
    ))
}

/// Haar coefficients in the flat order `n = 2^k + j` (`n = 1` is the
/// constant function).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientSequence {
    /// `a_n = n^{-exponent}`.
    Power {
        exponent: f64,
    },
    /// `a_n = value`, every other coefficient zero.
    Single {
        n: usize,
        value: f64,
    },
    Zero,
}

impl CoefficientSequence {
    /// `a_1, ..., a_{2^level}` as a flat 1D spectrum.
    pub fn spectrum(&self, level: u32) -> Result<HaarSpectrum1> {
        let len = 1usize << level;
        let coeffs = match *self {
            CoefficientSequence::Power { exponent } => {
                Array1::from_shape_fn(len, |i| ((i + 1) as f64).powf(-exponent))
            }
            CoefficientSequence::Single { n, value } => {
                if n == 0 || n > len {
                    return Err(Error::InvalidFamily(format!(
                        "coefficient index n = {n} outside 1..={len}"
                    )));
                }
                let mut c = Array1::zeros(len);
                c[n - 1] = value;
                c
            }
            CoefficientSequence::Zero => Array1::zeros(len),
        };
        HaarSpectrum1::from_coefficients(level, coeffs)
    }

    pub fn label(&self) -> String {
        match self {
            CoefficientSequence::Power { exponent } => format!("power:exponent={exponent}"),
            CoefficientSequence::Single { n, value } => format!("single:n={n},value={value}"),
            CoefficientSequence::Zero => "zero".to_string(),
        }
    }
}

/// `||f||_p` of the function synthesized from a monotone coefficient
/// sequence, against the `l_2` norm of the coefficients. Monotonicity is
/// required over the Haar functions `n >= 2`.
pub fn check_ulyanov_1d(
    coefficients: &CoefficientSequence,
    level: u32,
    p: f64,
) -> Result<RatioRecord> {
    let a = coefficients.spectrum(level)?;
    let c = a.coefficients();
    if let Some(i) = (2..c.len()).find(|&i| c[i] > c[i - 1]) {
        return Err(Error::NonMonotoneCoefficients(i + 1));
    }
    let phi = a.inverse();
    Ok(RatioRecord::new(
        "ulyanov_1d",
        coefficients.label(),
        level,
        RecordExponents::Single { p },
        phi.lp_norm(p),
        a.sum_of_squares().sqrt(),
    ))
}
