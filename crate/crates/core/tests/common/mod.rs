//! Reference implementations used as oracles. Each one is written from the
//! definitions with plain loops and shares no code with the library
//! kernels beyond the grid container.

#![allow(dead_code)]

use haarnet::{GridFunction1, GridFunction2};
use ndarray::Array2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn random_grid(level: u32, seed: u64) -> GridFunction2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GridFunction2::from_fn(level, |_, _| rng.gen_range(-1.0..1.0)).unwrap()
}

/// Integer-valued cells: every rectangle sum is exact in floating point.
pub fn random_integer_grid(level: u32, seed: u64) -> GridFunction2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GridFunction2::from_fn(level, |_, _| rng.gen_range(-9i32..=9) as f64).unwrap()
}

/// Plain double sum over cells `[i0, i1) x [j0, j1)` times the cell area.
pub fn naive_rect_integral(f: &GridFunction2, i0: usize, i1: usize, j0: usize, j1: usize) -> f64 {
    let mut s = 0.0;
    for i in i0..i1 {
        for j in j0..j1 {
            s += f.get(i, j);
        }
    }
    s * f.cell_area()
}

/// `(size_max, fbar)` by enumerating every grid rectangle; indices are
/// `[s1 - 1, s2 - 1]`.
pub fn brute_force_net_table(f: &GridFunction2) -> (Array2<f64>, Array2<f64>) {
    let n = f.side();
    let mut size_max = Array2::<f64>::zeros((n, n));
    for i0 in 0..n {
        for j0 in 0..n {
            for i1 in i0 + 1..=n {
                for j1 in j0 + 1..=n {
                    let mut s = 0.0;
                    for i in i0..i1 {
                        for j in j0..j1 {
                            s += f.get(i, j);
                        }
                    }
                    let (s1, s2) = (i1 - i0, j1 - j0);
                    let avg = (s / (s1 * s2) as f64).abs();
                    if avg > size_max[[s1 - 1, s2 - 1]] {
                        size_max[[s1 - 1, s2 - 1]] = avg;
                    }
                }
            }
        }
    }
    let mut fbar = Array2::<f64>::zeros((n, n));
    for a in 0..n {
        for b in 0..n {
            let mut m = 0.0f64;
            for c in a..n {
                for d in b..n {
                    m = m.max(size_max[[c, d]]);
                }
            }
            fbar[[a, b]] = m;
        }
    }
    (size_max, fbar)
}

/// Same table with running rectangle sums, for larger grids.
pub fn incremental_net_table(f: &GridFunction2) -> Array2<f64> {
    let n = f.side();
    let mut size_max = Array2::<f64>::zeros((n, n));
    let mut col = vec![0.0; n];
    for i0 in 0..n {
        for j0 in 0..n {
            col.iter_mut().for_each(|c| *c = 0.0);
            for i1 in i0 + 1..=n {
                let mut s = 0.0;
                for j1 in j0 + 1..=n {
                    col[j1 - 1] += f.get(i1 - 1, j1 - 1);
                    s += col[j1 - 1];
                    let (s1, s2) = (i1 - i0, j1 - j0);
                    let avg = (s / (s1 * s2) as f64).abs();
                    if avg > size_max[[s1 - 1, s2 - 1]] {
                        size_max[[s1 - 1, s2 - 1]] = avg;
                    }
                }
            }
        }
    }
    let mut fbar = size_max.clone();
    for a in (0..n).rev() {
        for b in (0..n).rev() {
            let right = if b + 1 < n { fbar[[a, b + 1]] } else { 0.0 };
            let below = if a + 1 < n { fbar[[a + 1, b]] } else { 0.0 };
            fbar[[a, b]] = fbar[[a, b]].max(right).max(below);
        }
    }
    fbar
}

/// Haar function `chi_k^j` (or the constant when `k` is `None`) at the
/// midpoint of cell `i` of the level-`level` grid.
pub fn haar_value(level: u32, k: Option<u32>, j: usize, i: usize) -> f64 {
    let x = (i as f64 + 0.5) / (1u64 << level) as f64;
    match k {
        None => 1.0,
        Some(k) => {
            let h = 1.0 / (1u64 << k) as f64;
            let (a, b) = ((j - 1) as f64 * h, j as f64 * h);
            let amp = 2f64.powf(k as f64 / 2.0);
            if x < a || x >= b {
                0.0
            } else if x < (a + b) / 2.0 {
                amp
            } else {
                -amp
            }
        }
    }
}

/// Coefficient by direct inner product over the cells.
pub fn inner_product_coefficient(
    f: &GridFunction2,
    k1: Option<u32>,
    j1: usize,
    k2: Option<u32>,
    j2: usize,
) -> f64 {
    let n = f.side();
    let l = f.level();
    let mut s = 0.0;
    for i in 0..n {
        let u = haar_value(l, k1, j1, i);
        if u == 0.0 {
            continue;
        }
        for j in 0..n {
            s += f.get(i, j) * u * haar_value(l, k2, j2, j);
        }
    }
    s * f.cell_area()
}

/// `sup_{j1,j2} |a_{k1,k2}^{j1,j2}|` via inner products.
pub fn sup_per_level_oracle(f: &GridFunction2) -> Array2<f64> {
    let l = f.level() as usize;
    let mut sup = Array2::<f64>::zeros((l, l));
    for k1 in 0..l {
        for k2 in 0..l {
            for j1 in 1..=1usize << k1 {
                for j2 in 1..=1usize << k2 {
                    let a = inner_product_coefficient(f, Some(k1 as u32), j1, Some(k2 as u32), j2)
                        .abs();
                    sup[[k1, k2]] = sup[[k1, k2]].max(a);
                }
            }
        }
    }
    sup
}

/// Mixed sequence norm from a sup matrix with `q_i` finite or infinite.
pub fn seq_norm_oracle(sup: &Array2<f64>, p: [f64; 2], q: [f64; 2]) -> f64 {
    let (l1, l2) = sup.dim();
    let sigma = [0.5 - 1.0 / p[0], 0.5 - 1.0 / p[1]];
    let mut outer = Vec::new();
    for k2 in 0..l2 {
        let mut inner = Vec::new();
        for k1 in 0..l1 {
            inner.push(2f64.powf(sigma[0] * k1 as f64 + sigma[1] * k2 as f64) * sup[[k1, k2]]);
        }
        outer.push(lq(&inner, q[0]));
    }
    lq(&outer, q[1])
}

fn lq(v: &[f64], q: f64) -> f64 {
    if q.is_infinite() {
        v.iter().cloned().fold(0.0, f64::max)
    } else {
        v.iter().map(|x| x.powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

/// `(∫ (∫ |f|^{p1} dx1)^{p2/p1} dx2)^{1/p2}` by plain loops.
pub fn mixed_lp_oracle(f: &GridFunction2, p: [f64; 2]) -> f64 {
    let n = f.side();
    let h = f.cell_width();
    let mut outer = 0.0;
    for j in 0..n {
        let mut inner = 0.0;
        for i in 0..n {
            inner += f.get(i, j).abs().powf(p[0]) * h;
        }
        outer += inner.powf(p[1] / p[0]) * h;
    }
    outer.powf(1.0 / p[1])
}

/// Net norm by midpoint quadrature of the defining integrals, after the
/// substitution `u = t^{q/p}` that removes the `dt/t` weight. `fbar` is
/// indexed `[s1 - 1, s2 - 1]` and vanishes beyond the unit square.
pub fn net_norm_quadrature(fbar: &Array2<f64>, p: [f64; 2], q: [f64; 2], nodes: usize) -> f64 {
    let n = fbar.nrows();
    let patch = |t: f64| -> usize { ((t * n as f64).ceil() as usize).clamp(1, n) - 1 };
    // ∫_0^1 t^{q/p} g(t) dt/t = (p/q) ∫_0^1 g(u^{p/q}) du
    let points: Vec<Vec<usize>> = (0..2)
        .map(|axis| {
            (0..nodes)
                .map(|m| patch(((m as f64 + 0.5) / nodes as f64).powf(p[axis] / q[axis])))
                .collect()
        })
        .collect();
    let du = 1.0 / nodes as f64;
    let mut outer = 0.0;
    for &b in &points[1] {
        let mut inner = 0.0;
        for &a in &points[0] {
            inner += fbar[[a, b]].powf(q[0]) * du * p[0] / q[0];
        }
        outer += inner.powf(q[1] / q[0]) * du * p[1] / q[1];
    }
    outer.powf(1.0 / q[1])
}

/// `phi**(m h)` as the best average over any `m` cells.
pub fn double_star_by_subsets(phi: &GridFunction1) -> Vec<f64> {
    let v: Vec<f64> = phi.values().iter().map(|x| x.abs()).collect();
    let n = v.len();
    let mut best = vec![0.0f64; n];
    for mask in 1u32..(1 << n) {
        let m = mask.count_ones() as usize;
        let s: f64 = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| v[i]).sum();
        best[m - 1] = best[m - 1].max(s / m as f64);
    }
    best
}

pub fn random_function_1d(level: u32, seed: u64) -> GridFunction1 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    GridFunction1::from_fn(level, |_| rng.gen_range(-1.0..1.0)).unwrap()
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}
