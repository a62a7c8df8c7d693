mod common;

use common::rel_close;
use haarnet::haar::{haar_forward_1d, haar_forward_2d, HaarSpectrum2};
use haarnet::norms::{mixed_lp_norm, rearrangement, seq_norm, Exponent, ExponentPair};
use haarnet::verify::check_theorem1;
use haarnet::{Family, GridFunction1, GridFunction2, NetMaximalTable, SummedAreaTable};
use ndarray::Array2;
use proptest::prelude::*;

fn grid(max_level: u32) -> impl Strategy<Value = GridFunction2> {
    (1..=max_level).prop_flat_map(|level| {
        let n = 1usize << level;
        prop::collection::vec(-10.0f64..10.0, n * n).prop_map(move |v| {
            GridFunction2::new(level, Array2::from_shape_vec((n, n), v).unwrap()).unwrap()
        })
    })
}

fn grid_pair(max_level: u32) -> impl Strategy<Value = (GridFunction2, GridFunction2)> {
    (1..=max_level).prop_flat_map(|level| {
        let n = 1usize << level;
        let one = move || {
            prop::collection::vec(-10.0f64..10.0, n * n).prop_map(move |v| {
                GridFunction2::new(level, Array2::from_shape_vec((n, n), v).unwrap()).unwrap()
            })
        };
        (one(), one())
    })
}

fn line(level: u32) -> impl Strategy<Value = GridFunction1> {
    prop::collection::vec(-5.0f64..5.0, 1usize << level)
        .prop_map(move |v| GridFunction1::new(level, v.into()).unwrap())
}

fn exponent() -> impl Strategy<Value = ExponentPair> {
    let q = prop_oneof![
        (0.3f64..6.0).prop_map(|q| Exponent::new(q).unwrap()),
        Just(Exponent::INFINITY)
    ];
    (1.05f64..6.0, 1.05f64..6.0, q.clone(), q)
        .prop_map(|(p1, p2, q1, q2)| ExponentPair::new([p1, p2], [q1, q2]).unwrap())
}

fn finite_p() -> impl Strategy<Value = [f64; 2]> {
    (1.05f64..6.0, 1.05f64..6.0).prop_map(|(a, b)| [a, b])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_and_parseval(f in grid(5)) {
        let a = haar_forward_2d(&f);
        let back = a.inverse();
        let scale = f.max_abs().max(1.0);
        for (x, y) in f.values().iter().zip(back.values()) {
            prop_assert!((x - y).abs() <= 1e-12 * scale);
        }
        prop_assert!(rel_close(a.sum_of_squares(), f.l2_norm_squared(), 1e-12) || f.l2_norm_squared() < 1e-300);
    }

    #[test]
    fn transform_is_linear((f, g) in grid_pair(4), s in -3.0f64..3.0, t in -3.0f64..3.0) {
        let h = GridFunction2::linear_combination(s, &f, t, &g).unwrap();
        let (af, ag, ah) = (haar_forward_2d(&f), haar_forward_2d(&g), haar_forward_2d(&h));
        for ((x, y), z) in af.coefficients().iter().zip(ag.coefficients()).zip(ah.coefficients()) {
            prop_assert!((s * x + t * y - z).abs() <= 1e-11);
        }
    }

    #[test]
    fn tensor_products_factor(g in line(4), h in line(4)) {
        let f = GridFunction2::outer(&g, &h).unwrap();
        let (a, b, c) = (haar_forward_1d(&g), haar_forward_1d(&h), haar_forward_2d(&f));
        for ((u, v), &x) in c.coefficients().indexed_iter() {
            prop_assert!((x - a.coefficients()[u] * b.coefficients()[v]).abs() <= 1e-11);
        }
    }

    #[test]
    fn norms_are_homogeneous(f in grid(4), c in -5.0f64..5.0, e in exponent()) {
        let g = f.scaled(c);
        let net = |x: &GridFunction2| NetMaximalTable::compute(x).net_norm(&e);
        prop_assert!(rel_close(net(&g), c.abs() * net(&f), 1e-11) || net(&f) < 1e-300);
        let (sf, sg) = (seq_norm(&haar_forward_2d(&f), &e), seq_norm(&haar_forward_2d(&g), &e));
        prop_assert!(rel_close(sg, c.abs() * sf, 1e-11) || sf < 1e-300);
        let d = ExponentPair::diagonal(e.p()).unwrap();
        prop_assert!(rel_close(mixed_lp_norm(&g, &d), c.abs() * mixed_lp_norm(&f, &d), 1e-11) || c == 0.0);
    }

    #[test]
    fn seq_norm_ignores_signs_and_positions(f in grid(4), e in exponent(), seed in any::<u64>()) {
        let a = haar_forward_2d(&f);
        let level = a.level();
        let mut b = HaarSpectrum2::zeros(level);
        // reverse positions within every pure block and flip alternate signs
        for k1 in 0..level {
            for k2 in 0..level {
                let (n1, n2) = (1usize << k1, 1usize << k2);
                for j1 in 1..=n1 {
                    for j2 in 1..=n2 {
                        let sign = if (j1 + j2 + seed as usize).is_multiple_of(2) { 1.0 } else { -1.0 };
                        b.set_coefficient(k1, k2, n1 + 1 - j1, n2 + 1 - j2, sign * a.coefficient(k1, k2, j1, j2));
                    }
                }
            }
        }
        prop_assert_eq!(seq_norm(&a, &e), seq_norm(&b, &e));
    }

    #[test]
    fn mixed_l2_is_parseval(f in grid(5)) {
        let e = ExponentPair::diagonal([2.0, 2.0]).unwrap();
        let n = mixed_lp_norm(&f, &e);
        prop_assert!(rel_close(n * n, haar_forward_2d(&f).sum_of_squares(), 1e-11) || n < 1e-150);
    }

    #[test]
    fn rearrangement_properties(phi in (1u32..7).prop_flat_map(line)) {
        let r = rearrangement(&phi);
        let star = r.star.values();
        prop_assert!(star.windows(2).into_iter().all(|w| w[0] >= w[1]));
        let ds = r.double_star();
        prop_assert!(ds.windows(2).all(|w| w[0] >= w[1] - 1e-15));
        for (d, s) in ds.iter().zip(star.iter()) {
            prop_assert!(*d >= *s - 1e-15);
        }
        // equimeasurable: same L_p norms
        for p in [1.0, 2.0, 3.5] {
            prop_assert!(rel_close(r.star.lp_norm(p), phi.lp_norm(p), 1e-12) || phi.lp_norm(p) < 1e-300);
        }
    }

    #[test]
    fn net_table_invariants(f in grid(4)) {
        let t = NetMaximalTable::compute(&f);
        let n = t.side();
        prop_assert_eq!(t.fbar(1, 1), f.max_abs());
        for a in 1..=n {
            for b in 1..=n {
                prop_assert!(t.fbar(a, b) >= t.size_max(a, b));
                if a < n { prop_assert!(t.fbar(a, b) >= t.fbar(a + 1, b)); }
                if b < n { prop_assert!(t.fbar(a, b) >= t.fbar(a, b + 1)); }
            }
        }
        prop_assert!((t.size_max(n, n) - f.integral().abs()).abs() <= 1e-12 * f.max_abs().max(1.0));
    }

    #[test]
    fn sat_total_and_additivity(f in grid(4), cut in 1usize..16) {
        let sat = SummedAreaTable::build(&f);
        let n = f.side();
        let cut = cut.min(n - 1).max(1);
        let whole = sat.rect_integral(0, n, 0, n).unwrap();
        let split = sat.rect_integral(0, cut, 0, n).unwrap() + sat.rect_integral(cut, n, 0, n).unwrap();
        prop_assert!((whole - split).abs() <= 1e-12 * f.max_abs().max(1.0));
        prop_assert!((sat.total() - f.integral()).abs() <= 1e-12 * f.max_abs().max(1.0));
    }

    #[test]
    fn reflection_preserves_function_norms(f in grid(4), e in exponent(), axis in 0usize..2) {
        let g = f.reflected(axis);
        let net = |x: &GridFunction2| NetMaximalTable::compute(x).net_norm(&e);
        prop_assert!(rel_close(net(&g), net(&f), 1e-12) || net(&f) < 1e-300);
        let d = ExponentPair::diagonal(e.p()).unwrap();
        prop_assert!(rel_close(mixed_lp_norm(&g, &d), mixed_lp_norm(&f, &d), 1e-12) || f.max_abs() == 0.0);
        let (sa, sb) = (seq_norm(&haar_forward_2d(&f), &e), seq_norm(&haar_forward_2d(&g), &e));
        prop_assert!(rel_close(sa, sb, 1e-12) || sa < 1e-300);
    }

    #[test]
    fn theorem1_ratio_is_scale_invariant(f in grid(3), c in 0.1f64..10.0, e in exponent()) {
        let r = check_theorem1("f", &f, &e);
        let s = check_theorem1("f", &f.scaled(c), &e);
        if let (Some(x), Some(y)) = (r.ratio.finite(), s.ratio.finite()) {
            prop_assert!(rel_close(x, y, 1e-11));
        }
    }

    #[test]
    fn monotone_functions_mixed_norm_below_net_norm(seed in any::<u64>(), level in 2u32..6, p in finite_p()) {
        let f = Family::RandomMonotone { seed }.generate(level).unwrap();
        prop_assert!(f.is_monotone_nonincreasing());
        // N_{p,p} is the mixed L_p norm of f̄, and for monotone f the corner
        // rectangle [0,t1]x[0,t2] already averages at least f(t1,t2)
        let d = ExponentPair::diagonal(p).unwrap();
        let lp = mixed_lp_norm(&f, &d);
        let net = NetMaximalTable::compute(&f).net_norm(&d);
        prop_assert!(lp <= net * (1.0 + 1e-12), "{} > {}", lp, net);
    }

    #[test]
    fn random_monotone_is_monotone_at_every_level(seed in any::<u64>(), level in 1u32..8) {
        let f = Family::RandomMonotone { seed }.generate(level).unwrap();
        prop_assert!(f.is_monotone_nonincreasing());
    }

    #[test]
    fn endpoint_coefficient_bound_holds(f in grid(4), p in finite_p()) {
        let c = haarnet::verify::check_endpoint_coeff_bound(&f, p).unwrap();
        prop_assert!(c.holds, "{} > {}", c.lhs, c.rhs);
    }
}
