use ndarray::Array2;

use super::{Exponent, ExponentPair};
use crate::grid::compensated_sum;
use crate::haar::{HaarSpectrum1, HaarSpectrum2};

/// `||a||_{l^sigma_q(l_inf)}`: `l_{q1}` over `k1`, then `l_{q2}` over
/// `k2`, of `2^{sigma1 k1 + sigma2 k2} sup_{j1,j2} |a_{k1,k2}^{j1,j2}|`.
/// Only the pure blocks enter.
pub fn seq_norm(a: &HaarSpectrum2, e: &ExponentPair) -> f64 {
    seq_norm_from_sup(&a.sup_per_level(), e.sigma(), e.q())
}

/// [`seq_norm`] from a precomputed `sup_per_level` matrix indexed `[k1, k2]`.
pub fn seq_norm_from_sup(sup: &Array2<f64>, sigma: [f64; 2], q: [Exponent; 2]) -> f64 {
    let (l1, l2) = sup.dim();
    let inner: Vec<f64> = (0..l2)
        .map(|k2| {
            let terms = (0..l1)
                .map(|k1| (sigma[0] * k1 as f64 + sigma[1] * k2 as f64).exp2() * sup[[k1, k2]]);
            lq(terms, q[0])
        })
        .collect();
    lq(inner.into_iter(), q[1])
}

fn lq(terms: impl Iterator<Item = f64>, q: Exponent) -> f64 {
    if q.is_infinite() {
        terms.fold(0.0, f64::max)
    } else {
        let q = q.value();
        compensated_sum(terms.map(|t| t.powf(q))).powf(1.0 / q)
    }
}

/// `(sum_k (2^{k(1/2 - 1/p)} sup_j |a_k^j|)^p)^{1/p}` over the levels of a
/// 1D spectrum; the constant term is not included.
pub fn seq_norm_1d(a: &HaarSpectrum1, p: f64) -> f64 {
    let sigma = 0.5 - 1.0 / p;
    let terms = (0..a.level()).map(|k| {
        let sup = a
            .level_coefficients(k)
            .iter()
            .fold(0.0, |m: f64, v| m.max(v.abs()));
        (sigma * k as f64).exp2() * sup
    });
    compensated_sum(terms.map(|t| t.powf(p))).powf(1.0 / p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Family, GridFunction1};
    use crate::haar::{haar_forward_1d, haar_forward_2d};

    #[test]
    fn atom_has_unit_norm() {
        let mut a = HaarSpectrum2::zeros(4);
        a.set_coefficient(0, 0, 1, 1, 1.0);
        for p in [[1.5, 3.0], [2.0, 2.0]] {
            for q in [[0.5, 1.0], [2.0, f64::INFINITY]] {
                let e = ExponentPair::new(
                    p,
                    [Exponent::new(q[0]).unwrap(), Exponent::new(q[1]).unwrap()],
                )
                .unwrap();
                assert_eq!(seq_norm(&a, &e), 1.0);
            }
        }
    }

    #[test]
    fn multiplicity_is_ignored() {
        let level = 5;
        let full = haar_forward_2d(
            &Family::FullLevel {
                k1: 3,
                k2: 3,
                value: 1.0,
            }
            .generate(level)
            .unwrap(),
        );
        let single = haar_forward_2d(
            &Family::SingleCoeffLevel {
                k1: 3,
                k2: 3,
                value: 1.0,
            }
            .generate(level)
            .unwrap(),
        );
        let e = ExponentPair::diagonal([1.5, 3.0]).unwrap();
        let [s1, s2] = e.sigma();
        let expected = (3.0 * s1 + 3.0 * s2).exp2();
        assert!((seq_norm(&full, &e) - expected).abs() < 1e-12 * expected);
        assert!((seq_norm(&single, &e) - expected).abs() < 1e-12 * expected);
    }

    #[test]
    fn one_dimensional() {
        let chi = crate::haar::basis_function_1d(4, 0, 1).unwrap();
        assert_eq!(seq_norm_1d(&haar_forward_1d(&chi), 3.0), 1.0);
        assert_eq!(seq_norm_1d(&HaarSpectrum1::zeros(4), 3.0), 0.0);
        let c = GridFunction1::constant(4, 2.0).unwrap();
        assert_eq!(seq_norm_1d(&haar_forward_1d(&c), 2.0), 0.0);
    }
}
