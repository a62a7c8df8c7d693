//! Test-function families and their `name:key=value,...` text form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use ndarray::Array1;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{GridFunction1, GridFunction2};
use crate::error::{Error, Result};
use crate::haar;

/// A two-dimensional test function, independent of the grid it is
/// sampled on. Random families draw their parameters from the seed alone,
/// so the same family at different levels is the same continuum function
/// (except `random_signs`, which is cellwise noise).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `f = c`.
    Constant { c: f64 },
    /// `f = x1^{-alpha} x2^{-beta}`.
    TensorPower { alpha: f64, beta: f64 },
    /// `f = (x1 + x2)^{-gamma}`.
    SumPower { gamma: f64 },
    /// `f = chi_{k1}^{j1} ⊗ chi_{k2}^{j2}`.
    HaarAtom {
        k1: u32,
        k2: u32,
        j1: usize,
        j2: usize,
    },
    /// Every coefficient of level `(k1, k2)` equal to `value`.
    FullLevel { k1: u32, k2: u32, value: f64 },
    /// Only `a_{k1,k2}^{1,1} = value`.
    SingleCoeffLevel { k1: u32, k2: u32, value: f64 },
    /// Positive staircase plus a tensor power term; non-increasing in
    /// each variable.
    RandomMonotone { seed: u64 },
    /// Cell values uniform on `[-1, 1)`.
    RandomSigns { seed: u64 },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Constant { .. } => "constant",
            Family::TensorPower { .. } => "tensor_power",
            Family::SumPower { .. } => "sum_power",
            Family::HaarAtom { .. } => "haar_atom",
            Family::FullLevel { .. } => "full_level",
            Family::SingleCoeffLevel { .. } => "single_coeff_level",
            Family::RandomMonotone { .. } => "random_monotone",
            Family::RandomSigns { .. } => "random_signs",
        }
    }

    /// Whether generated functions are non-increasing in each variable
    /// for every valid parameter choice.
    pub fn is_monotone_family(&self) -> bool {
        matches!(
            self,
            Family::Constant { .. }
                | Family::TensorPower { .. }
                | Family::SumPower { .. }
                | Family::RandomMonotone { .. }
        )
    }

    fn params(&self) -> Vec<(&'static str, String)> {
        match *self {
            Family::Constant { c } => vec![("c", c.to_string())],
            Family::TensorPower { alpha, beta } => {
                vec![("alpha", alpha.to_string()), ("beta", beta.to_string())]
            }
            Family::SumPower { gamma } => vec![("gamma", gamma.to_string())],
            Family::HaarAtom { k1, k2, j1, j2 } => vec![
                ("k1", k1.to_string()),
                ("k2", k2.to_string()),
                ("j1", j1.to_string()),
                ("j2", j2.to_string()),
            ],
            Family::FullLevel { k1, k2, value } | Family::SingleCoeffLevel { k1, k2, value } => {
                vec![
                    ("k1", k1.to_string()),
                    ("k2", k2.to_string()),
                    ("value", value.to_string()),
                ]
            }
            Family::RandomMonotone { seed } | Family::RandomSigns { seed } => {
                vec![("seed", seed.to_string())]
            }
        }
    }

    /// Checks the parameter domain, including level-dependent constraints.
    pub fn validate(&self, level: u32) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidFamily(format!("{}: {msg}", self.name())));
        let unit_open = |x: f64| x > 0.0 && x < 1.0;
        let check_level = |k: u32| k < level;
        match *self {
            Family::Constant { c } if !c.is_finite() => bad(format!("c = {c} is not finite")),
            Family::TensorPower { alpha, beta } if !unit_open(alpha) || !unit_open(beta) => {
                bad(format!("need 0 < alpha, beta < 1, got {alpha}, {beta}"))
            }
            Family::SumPower { gamma } if !unit_open(gamma) => {
                bad(format!("need 0 < gamma < 1, got {gamma}"))
            }
            Family::HaarAtom { k1, k2, j1, j2 } => {
                if !check_level(k1) || !check_level(k2) {
                    bad(format!(
                        "levels ({k1}, {k2}) must be below grid level {level}"
                    ))
                } else if j1 == 0 || j2 == 0 || j1 > 1usize << k1 || j2 > 1usize << k2 {
                    bad(format!("positions ({j1}, {j2}) outside 1..=2^k"))
                } else {
                    Ok(())
                }
            }
            Family::FullLevel { k1, k2, value } | Family::SingleCoeffLevel { k1, k2, value } => {
                if !check_level(k1) || !check_level(k2) {
                    bad(format!(
                        "levels ({k1}, {k2}) must be below grid level {level}"
                    ))
                } else if !value.is_finite() {
                    bad(format!("value = {value} is not finite"))
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// Samples the family as exact cell averages on the level-`level` grid.
    pub fn generate(&self, level: u32) -> Result<GridFunction2> {
        self.validate(level)?;
        match *self {
            Family::Constant { c } => GridFunction2::constant(level, c),
            Family::TensorPower { alpha, beta } => GridFunction2::outer(
                &power_cell_averages(level, alpha)?,
                &power_cell_averages(level, beta)?,
            ),
            Family::SumPower { gamma } => sum_power(level, gamma),
            Family::HaarAtom { k1, k2, j1, j2 } => GridFunction2::outer(
                &haar::basis_function_1d(level, k1, j1)?,
                &haar::basis_function_1d(level, k2, j2)?,
            ),
            Family::FullLevel { k1, k2, value } => GridFunction2::outer(
                &haar::level_sum_1d(level, k1)?.scaled(value),
                &haar::level_sum_1d(level, k2)?,
            ),
            Family::SingleCoeffLevel { k1, k2, value } => GridFunction2::outer(
                &haar::basis_function_1d(level, k1, 1)?.scaled(value),
                &haar::basis_function_1d(level, k2, 1)?,
            ),
            Family::RandomMonotone { seed } => random_monotone(level, seed),
            Family::RandomSigns { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let n = 1usize << level;
                let values: Vec<f64> = (0..n * n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                GridFunction2::new(
                    level,
                    ndarray::Array2::from_shape_vec((n, n), values).expect("n*n values"),
                )
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.name())?;
        let params: Vec<String> = self
            .params()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        write!(f, "{}", params.join(","))
    }
}

struct Params {
    family: String,
    map: BTreeMap<String, String>,
}

impl Params {
    fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut map = BTreeMap::new();
        for item in rest.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidFamily(format!("expected key=value, got `{item}`")))?;
            if map
                .insert(k.trim().to_string(), v.trim().to_string())
                .is_some()
            {
                return Err(Error::InvalidFamily(format!(
                    "duplicate key `{}`",
                    k.trim()
                )));
            }
        }
        Ok(Self {
            family: name.trim().to_string(),
            map,
        })
    }

    fn take<T: FromStr>(&mut self, key: &str, default: Option<T>) -> Result<T> {
        match self.map.remove(key) {
            Some(raw) => raw.parse().map_err(|_| {
                Error::InvalidFamily(format!("{}: cannot parse {key} = `{raw}`", self.family))
            }),
            None => default.ok_or_else(|| {
                Error::InvalidFamily(format!("{}: missing parameter `{key}`", self.family))
            }),
        }
    }

    fn finish(self) -> Result<()> {
        match self.map.keys().next() {
            Some(k) => Err(Error::InvalidFamily(format!(
                "{}: unknown parameter `{k}`",
                self.family
            ))),
            None => Ok(()),
        }
    }

    fn family(&mut self) -> Result<Family> {
        let family = match self.family.as_str() {
            "constant" => Family::Constant {
                c: self.take("c", Some(1.0))?,
            },
            "tensor_power" => Family::TensorPower {
                alpha: self.take("alpha", None)?,
                beta: self.take("beta", None)?,
            },
            "sum_power" => Family::SumPower {
                gamma: self.take("gamma", None)?,
            },
            "haar_atom" => Family::HaarAtom {
                k1: self.take("k1", None)?,
                k2: self.take("k2", None)?,
                j1: self.take("j1", Some(1))?,
                j2: self.take("j2", Some(1))?,
            },
            "full_level" => Family::FullLevel {
                k1: self.take("k1", None)?,
                k2: self.take("k2", None)?,
                value: self.take("value", Some(1.0))?,
            },
            "single_coeff_level" => Family::SingleCoeffLevel {
                k1: self.take("k1", None)?,
                k2: self.take("k2", None)?,
                value: self.take("value", Some(1.0))?,
            },
            "random_monotone" => Family::RandomMonotone {
                seed: self.take("seed", Some(0))?,
            },
            "random_signs" => Family::RandomSigns {
                seed: self.take("seed", Some(0))?,
            },
            other => return Err(Error::InvalidFamily(format!("unknown family `{other}`"))),
        };
        Ok(family)
    }
}

/// Parses `name:key=value,...`. A `level` key is rejected here; use
/// [`FamilySpec`] for the level-carrying form.
impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut params = Params::parse(s)?;
        let family = params.family()?;
        params.finish()?;
        Ok(family)
    }
}

/// A family together with the grid level it is sampled on, e.g.
/// `tensor_power:alpha=0.25,beta=0.25,level=6`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    pub family: Family,
    pub level: u32,
}

impl FamilySpec {
    pub fn new(family: Family, level: u32) -> Result<Self> {
        if level > super::MAX_LEVEL_2D {
            return Err(Error::LevelTooLarge {
                level,
                max: super::MAX_LEVEL_2D,
            });
        }
        family.validate(level)?;
        Ok(Self { family, level })
    }

    pub fn generate(&self) -> Result<GridFunction2> {
        self.family.generate(self.level)
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut params = Params::parse(s)?;
        let level = params.take("level", None)?;
        let family = params.family()?;
        params.finish()?;
        Self::new(family, level)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},level={}", self.family, self.level)
    }
}

/// One-dimensional test functions on `[0,1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family1 {
    Constant {
        c: f64,
    },
    /// `x^{-alpha}`, `0 < alpha < 1`.
    Power {
        alpha: f64,
    },
    /// Indicator of `[a, b]`.
    Indicator {
        a: f64,
        b: f64,
    },
    /// Positive staircase plus a power term; non-increasing.
    RandomMonotone {
        seed: u64,
    },
}

impl Family1 {
    pub fn generate(&self, level: u32) -> Result<GridFunction1> {
        match *self {
            Family1::Constant { c } => GridFunction1::constant(level, c),
            Family1::Power { alpha } => {
                if !(alpha > 0.0 && alpha < 1.0) {
                    return Err(Error::InvalidFamily(format!(
                        "power: need 0 < alpha < 1, got {alpha}"
                    )));
                }
                power_cell_averages(level, alpha)
            }
            Family1::Indicator { a, b } => {
                if !(0.0..=1.0).contains(&a) || !(a..=1.0).contains(&b) {
                    return Err(Error::InvalidFamily(format!(
                        "indicator: need 0 <= a <= b <= 1, got [{a}, {b}]"
                    )));
                }
                let h = (-(level as f64)).exp2();
                GridFunction1::from_fn(level, |i| {
                    interval_overlap(i as f64 * h, (i + 1) as f64 * h, a, b) / h
                })
            }
            Family1::RandomMonotone { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let offset = rng.gen_range(0.0..0.5);
                let steps: Vec<(f64, f64)> = (0..rng.gen_range(3..=6))
                    .map(|_| (rng.gen_range(0.2..1.0), rng.gen_range(0.05..0.95)))
                    .collect();
                let weight = rng.gen_range(0.2..1.0);
                let alpha = rng.gen_range(0.02..0.2);
                let power = power_cell_averages(level, alpha)?;
                let h = (-(level as f64)).exp2();
                GridFunction1::from_fn(level, |i| {
                    let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
                    let stairs: f64 = steps
                        .iter()
                        .map(|&(c, u)| c * interval_overlap(a, b, 0.0, u) / h)
                        .sum();
                    offset + stairs + weight * power.values()[i]
                })
            }
        }
    }
}

fn interval_overlap(a: f64, b: f64, lo: f64, hi: f64) -> f64 {
    (b.min(hi) - a.max(lo)).max(0.0)
}

/// Exact cell averages of `x^{-alpha}`: `(b^{1-a} - a^{1-a}) / ((1-a)(b-a))`.
fn power_cell_averages(level: u32, alpha: f64) -> Result<GridFunction1> {
    let h = (-(level as f64)).exp2();
    let e = 1.0 - alpha;
    GridFunction1::from_fn(level, |i| {
        let (a, b) = (i as f64 * h, (i + 1) as f64 * h);
        (b.powf(e) - a.powf(e)) / (e * h)
    })
}

/// Exact cell averages of `(x1 + x2)^{-gamma}` from the antiderivative
/// `(x1 + x2)^{2-gamma} / ((1-gamma)(2-gamma))`. On a square cell the two
/// mixed corners coincide, leaving a second difference in `s = x1 + x2`.
fn sum_power(level: u32, gamma: f64) -> Result<GridFunction2> {
    let h = (-(level as f64)).exp2();
    let e = 2.0 - gamma;
    let scale = (1.0 - gamma) * e * h * h;
    let g = |m: usize| (m as f64 * h).powf(e);
    GridFunction2::from_fn(level, |i, j| {
        let m = i + j;
        (g(m + 2) - 2.0 * g(m + 1) + g(m)) / scale
    })
}

fn random_monotone(level: u32, seed: u64) -> Result<GridFunction2> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offset = rng.gen_range(0.0..0.5);
    let steps: Vec<(f64, f64, f64)> = (0..rng.gen_range(3..=6))
        .map(|_| {
            (
                rng.gen_range(0.2..1.0),
                rng.gen_range(0.05..0.95),
                rng.gen_range(0.05..0.95),
            )
        })
        .collect();
    let weight = rng.gen_range(0.2..1.0);
    let alpha = rng.gen_range(0.05..0.25);
    let beta = rng.gen_range(0.05..0.25);

    let h = (-(level as f64)).exp2();
    let px = power_cell_averages(level, alpha)?;
    let py = power_cell_averages(level, beta)?;
    // fraction of each cell covered by [0, u)
    let fractions = |u: f64| -> Array1<f64> {
        Array1::from_shape_fn(1usize << level, |i| {
            interval_overlap(i as f64 * h, (i + 1) as f64 * h, 0.0, u) / h
        })
    };
    let stairs: Vec<(f64, Array1<f64>, Array1<f64>)> = steps
        .iter()
        .map(|&(c, u, v)| (c, fractions(u), fractions(v)))
        .collect();
    GridFunction2::from_fn(level, |i, j| {
        let s: f64 = stairs.iter().map(|(c, fx, fy)| c * fx[i] * fy[j]).sum();
        offset + s + weight * px.values()[i] * py.values()[j]
    })
}
