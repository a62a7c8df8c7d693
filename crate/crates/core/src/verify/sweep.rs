//! Configured sweeps over families, exponents and levels.

use ndarray::Array2;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::checks::{coeff_bound_with, partial_sum_bound_with};
use super::{
    check_counterexample_nonmonotone, check_lemma1, check_monotone_1d, check_ulyanov_1d,
    ratio_spread, Check, CoefficientSequence, Outcome, Ratio, RatioRecord, RecordExponents,
    VerificationReport,
};
use crate::error::{Error, Result};
use crate::grid::{Family, Family1, FamilySpec};
use crate::haar::{haar_forward_2d, HaarSpectrum2};
use crate::norms::{mixed_lp_norm, seq_norm, ExponentPair, NetMaximalTable};

pub const DEFAULT_CONFIG: &str = include_str!("../../../../configs/default.toml");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub seed: u64,
    pub theorem: Option<TheoremSweep>,
    #[serde(default)]
    pub bounds: RatioBounds,
    pub endpoint_coeff: Option<EndpointCoeffSweep>,
    pub endpoint_partial_sum: Option<PartialSumSweep>,
    pub counterexample: Option<CounterexampleSweep>,
    pub lemma1: Option<Lemma1Sweep>,
    pub monotone_1d: Option<Monotone1dSweep>,
    pub ulyanov: Option<UlyanovSweep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremSweep {
    pub families: Vec<String>,
    /// Inclusive level range.
    pub levels: [u32; 2],
    pub exponents: Vec<ExponentPair>,
}

/// Regression gate for the two-sided ratios; not a theorem constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioBounds {
    pub ratio_min: f64,
    pub ratio_max: f64,
    /// Largest allowed max/min of a ratio across levels.
    pub stability: f64,
}

impl Default for RatioBounds {
    fn default() -> Self {
        Self {
            ratio_min: 0.1,
            ratio_max: 10.0,
            stability: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndpointCoeffSweep {
    pub functions: usize,
    pub level: u32,
    /// Each `p_i` ranges over this list.
    pub p: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialSumSweep {
    pub spectra: usize,
    pub level: u32,
    /// Each `N_i` ranges over this list.
    pub truncations: Vec<u32>,
    pub p: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CounterexampleSweep {
    pub ks: Vec<u32>,
    pub p: [f64; 2],
    pub min_final_quotient: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lemma1Sweep {
    pub functions: usize,
    pub p: Vec<f64>,
    pub levels: [u32; 2],
    pub bracket: [f64; 2],
    /// Largest allowed `max/min - 1` across levels.
    pub variation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Monotone1dSweep {
    pub functions: usize,
    pub p: Vec<f64>,
    pub levels: [u32; 2],
    pub stability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UlyanovSweep {
    pub exponent: f64,
    pub p: Vec<f64>,
    pub levels: [u32; 2],
    pub stability: f64,
}

impl SweepConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    pub fn default_config() -> Self {
        Self::from_toml(DEFAULT_CONFIG).expect("bundled default config is valid")
    }

    fn validate(&self) -> Result<()> {
        let range = |name: &str, [lo, hi]: [u32; 2]| {
            if lo > hi {
                Err(Error::Config(format!(
                    "{name}: empty level range [{lo}, {hi}]"
                )))
            } else {
                Ok(())
            }
        };
        if let Some(t) = &self.theorem {
            range("theorem.levels", t.levels)?;
            for name in &t.families {
                let family: Family = name.parse()?;
                for level in t.levels[0]..=t.levels[1] {
                    FamilySpec::new(family, level)?;
                }
            }
        }
        for p in self
            .endpoint_coeff
            .iter()
            .flat_map(|s| &s.p)
            .chain(self.endpoint_partial_sum.iter().flat_map(|s| &s.p))
        {
            ExponentPair::endpoint([*p, *p])?;
        }
        if let Some(s) = &self.endpoint_partial_sum {
            if let Some(n) = s.truncations.iter().find(|&&n| n > s.level) {
                return Err(Error::TruncationExceedsLevel {
                    requested: *n,
                    level: s.level,
                });
            }
        }
        if let Some(c) = &self.counterexample {
            ExponentPair::diagonal(c.p)?;
        }
        if let Some(l) = &self.lemma1 {
            range("lemma1.levels", l.levels)?;
        }
        if let Some(m) = &self.monotone_1d {
            range("monotone_1d.levels", m.levels)?;
        }
        if let Some(u) = &self.ulyanov {
            range("ulyanov.levels", u.levels)?;
        }
        Ok(())
    }
}

/// Independent seed stream `stream` derived from the sweep seed.
fn derived_seeds(seed: u64, stream: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    (0..count).map(|_| rng.next_u64()).collect()
}

/// Spectrum with every coefficient uniform on `[-1, 1)`.
pub fn random_spectrum(level: u32, seed: u64) -> HaarSpectrum2 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = 1usize << level;
    let coeffs = Array2::from_shape_simple_fn((n, n), || rng.gen_range(-1.0..1.0));
    HaarSpectrum2::from_coefficients(level, coeffs).expect("finite coefficients")
}

fn p_grid(ps: &[f64]) -> Vec<[f64; 2]> {
    ps.iter()
        .flat_map(|&a| ps.iter().map(move |&b| [a, b]))
        .collect()
}

#[derive(Default)]
struct EndpointTally {
    count: usize,
    failures: usize,
    worst: f64,
}

impl EndpointTally {
    fn add(&mut self, check: super::EndpointCheck) {
        self.count += 1;
        if !check.holds {
            self.failures += 1;
        }
        if check.rhs > 0.0 {
            self.worst = self.worst.max(check.lhs / check.rhs);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.count += other.count;
        self.failures += other.failures;
        self.worst = self.worst.max(other.worst);
        self
    }

    fn into_check(self, name: &str) -> Check {
        Check::new(name, self.failures == 0)
            .metric("count", self.count as f64)
            .metric("failures", self.failures as f64)
            .metric("max_lhs_over_rhs", self.worst)
    }
}

struct LevelData {
    family: String,
    theorem1: Vec<RatioRecord>,
    theorem2: Vec<RatioRecord>,
    endpoint: EndpointTally,
}

fn theorem_level(
    family: &Family,
    level: u32,
    exponents: &[ExponentPair],
    endpoint_p: &[[f64; 2]],
) -> Result<LevelData> {
    let label = family.to_string();
    let f = family.generate(level)?;
    let spectrum = haar_forward_2d(&f);
    let pure_spectrum = spectrum.truncated(level, level, false)?;
    let pure = pure_spectrum.inverse();
    let variants = [
        ("full", NetMaximalTable::compute(&f)),
        ("pure", NetMaximalTable::compute(&pure)),
    ];

    let mut theorem1 = Vec::new();
    let mut endpoint = EndpointTally::default();
    for (variant, table) in &variants {
        for e in exponents {
            let lhs = table.net_norm(e);
            let rhs = seq_norm(&spectrum, e);
            theorem1.push(
                RatioRecord::new(
                    "theorem1",
                    label.clone(),
                    level,
                    RecordExponents::Pair(*e),
                    lhs,
                    rhs,
                )
                .with_variant(variant),
            );
        }
        for &p in endpoint_p {
            endpoint.add(coeff_bound_with(table, &spectrum, p)?);
        }
    }

    let mut theorem2 = Vec::new();
    if f.is_monotone_nonincreasing() {
        for e in exponents {
            let diag = ExponentPair::diagonal(e.p())?;
            let lhs = mixed_lp_norm(&f, &diag);
            let rhs = seq_norm(&spectrum, &diag);
            theorem2.push(RatioRecord::new(
                "theorem2",
                label.clone(),
                level,
                RecordExponents::Pair(diag),
                lhs,
                rhs,
            ));
        }
    }
    Ok(LevelData {
        family: label,
        theorem1,
        theorem2,
        endpoint,
    })
}

/// Stability across levels always gates. The bracket gates only when
/// `bracket_applies`; otherwise a ratio outside it is flagged as the
/// dc-block caveat.
fn stability_check(
    name: String,
    records: &[&RatioRecord],
    bounds: &RatioBounds,
    bracket_applies: bool,
) -> Check {
    let finite: Vec<f64> = records.iter().filter_map(|r| r.ratio.finite()).collect();
    let infinite = records
        .iter()
        .filter(|r| r.ratio == Ratio::Infinite)
        .count();
    if finite.is_empty() && infinite > 0 {
        let mut c = Check::new(name, true).metric("infinite_ratios", infinite as f64);
        c.outcome = Outcome::DcCaveat;
        return c;
    }
    let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = finite.iter().copied().fold(0.0, f64::max);
    let spread = ratio_spread(records.iter().copied()).unwrap_or(f64::INFINITY);
    let stable = infinite == 0 && !finite.is_empty() && spread <= bounds.stability;
    let in_bracket = lo >= bounds.ratio_min && hi <= bounds.ratio_max;
    let mut check = Check::new(name, stable && (in_bracket || !bracket_applies))
        .metric("min_ratio", lo)
        .metric("max_ratio", hi)
        .metric("spread", spread)
        .metric("infinite_ratios", infinite as f64)
        .metric("outside_bracket", if in_bracket { 0.0 } else { 1.0 });
    if check.passed() && !in_bracket {
        check.outcome = Outcome::DcCaveat;
    }
    check
}

/// Runs every configured check. Work is spread over the current rayon
/// pool; the report does not depend on the pool size.
pub fn run_sweep(config: &SweepConfig) -> Result<VerificationReport> {
    config.validate()?;
    let mut records = Vec::new();
    let mut checks = Vec::new();
    let mut endpoint_coeff = EndpointTally::default();

    if let Some(t) = &config.theorem {
        let families: Vec<Family> = t
            .families
            .iter()
            .map(|s| s.parse())
            .collect::<Result<_>>()?;
        let endpoint_p = config
            .endpoint_coeff
            .as_ref()
            .map(|s| p_grid(&s.p))
            .unwrap_or_default();
        let tasks: Vec<(&Family, u32)> = families
            .iter()
            .flat_map(|fam| (t.levels[0]..=t.levels[1]).map(move |l| (fam, l)))
            .collect();
        let data: Vec<LevelData> = tasks
            .par_iter()
            .map(|&(fam, level)| theorem_level(fam, level, &t.exponents, &endpoint_p))
            .collect::<Result<_>>()?;

        for family in &families {
            let label = family.to_string();
            let mine: Vec<&LevelData> = data.iter().filter(|d| d.family == label).collect();
            for e in &t.exponents {
                for variant in ["full", "pure"] {
                    let rs: Vec<&RatioRecord> = mine
                        .iter()
                        .flat_map(|d| &d.theorem1)
                        .filter(|r| {
                            r.variant == variant && r.exponents == RecordExponents::Pair(*e)
                        })
                        .collect();
                    let name = format!("theorem1[{label}|{e}|{variant}]");
                    checks.push(stability_check(
                        name,
                        &rs,
                        &config.bounds,
                        variant == "pure",
                    ));
                }
            }
            if family.is_monotone_family() {
                for e in &t.exponents {
                    let diag = RecordExponents::Pair(ExponentPair::diagonal(e.p())?);
                    let rs: Vec<&RatioRecord> = mine
                        .iter()
                        .flat_map(|d| &d.theorem2)
                        .filter(|r| r.exponents == diag)
                        .collect();
                    let [p1, p2] = e.p();
                    checks.push(stability_check(
                        format!("theorem2[{label}|p=({p1},{p2})]"),
                        &rs,
                        &config.bounds,
                        false,
                    ));
                }
            }
        }
        for d in data {
            records.extend(d.theorem1);
            records.extend(d.theorem2);
            endpoint_coeff = endpoint_coeff.merge(d.endpoint);
        }
    }

    if let Some(s) = &config.endpoint_coeff {
        let ps = p_grid(&s.p);
        let tally = derived_seeds(config.seed, 1, s.functions)
            .par_iter()
            .map(|&seed| -> Result<EndpointTally> {
                let f = Family::RandomSigns { seed }.generate(s.level)?;
                let table = NetMaximalTable::compute(&f);
                let spectrum = haar_forward_2d(&f);
                let mut tally = EndpointTally::default();
                for &p in &ps {
                    tally.add(coeff_bound_with(&table, &spectrum, p)?);
                }
                Ok(tally)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(endpoint_coeff, EndpointTally::merge);
        checks.push(tally.into_check("endpoint_coefficient_bound"));
    } else if endpoint_coeff.count > 0 {
        checks.push(endpoint_coeff.into_check("endpoint_coefficient_bound"));
    }

    if let Some(s) = &config.endpoint_partial_sum {
        let ps = p_grid(&s.p);
        let truncations: Vec<(u32, u32)> = s
            .truncations
            .iter()
            .flat_map(|&a| s.truncations.iter().map(move |&b| (a, b)))
            .collect();
        let tally = derived_seeds(config.seed, 2, s.spectra)
            .par_iter()
            .map(|&seed| -> Result<EndpointTally> {
                let a = random_spectrum(s.level, seed);
                let mut tally = EndpointTally::default();
                for &(n1, n2) in &truncations {
                    let truncated = a.truncated(n1, n2, false)?;
                    let table = NetMaximalTable::compute(&truncated.inverse());
                    for &p in &ps {
                        tally.add(partial_sum_bound_with(&truncated, &table, p)?);
                    }
                }
                Ok(tally)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .fold(EndpointTally::default(), EndpointTally::merge);
        checks.push(tally.into_check("endpoint_partial_sum_bound"));
    }

    if let Some(c) = &config.counterexample {
        let level = c.ks.iter().max().map_or(1, |k| k + 1);
        let results =
            c.ks.iter()
                .map(|&k| check_counterexample_nonmonotone(k, level, c.p))
                .collect::<Result<Vec<_>>>()?;
        let mut sorted = results.clone();
        sorted.sort_by_key(|r| r.k);
        let increasing = sorted.windows(2).all(|w| w[1].quotient > w[0].quotient);
        let exponent = 1.0 / c.p[0] + 1.0 / c.p[1];
        let closed_form_error = sorted
            .iter()
            .map(|r| {
                let expected = (r.k as f64 * exponent).exp2();
                (r.quotient - expected).abs() / expected
            })
            .fold(0.0, f64::max);
        let last = sorted.last().map_or(f64::NAN, |r| r.quotient);
        let passed = increasing && closed_form_error <= 1e-10 && last >= c.min_final_quotient;
        let mut check = Check::new("counterexample_growth", passed)
            .metric("final_quotient", last)
            .metric("max_rel_error_vs_closed_form", closed_form_error);
        for r in &sorted {
            check = check.metric(&format!("quotient_k{}", r.k), r.quotient);
        }
        checks.push(check);
    }

    if let Some(l) = &config.lemma1 {
        let seeds = derived_seeds(config.seed, 3, l.functions);
        let groups = seeds
            .par_iter()
            .map(|&seed| -> Result<Vec<Vec<RatioRecord>>> {
                let family = Family1::RandomMonotone { seed };
                let label = format!("random_monotone_1d:seed={seed}");
                l.p.iter()
                    .map(|&p| {
                        (l.levels[0]..=l.levels[1])
                            .map(|level| Ok(check_lemma1(&label, &family.generate(level)?, p)))
                            .collect()
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut worst_variation = 0.0f64;
        let mut outside = 0usize;
        for group in groups.iter().flatten() {
            worst_variation =
                worst_variation.max(ratio_spread(group).unwrap_or(f64::INFINITY) - 1.0);
            outside += group
                .iter()
                .filter(|r| {
                    r.ratio
                        .finite()
                        .is_none_or(|x| x < l.bracket[0] || x > l.bracket[1])
                })
                .count();
        }
        checks.push(
            Check::new("lemma1", outside == 0 && worst_variation <= l.variation)
                .metric("outside_bracket", outside as f64)
                .metric("max_variation", worst_variation),
        );
        records.extend(groups.into_iter().flatten().flatten());
    }

    if let Some(m) = &config.monotone_1d {
        let seeds = derived_seeds(config.seed, 4, m.functions);
        let groups = seeds
            .par_iter()
            .map(|&seed| -> Result<Vec<Vec<RatioRecord>>> {
                let family = Family1::RandomMonotone { seed };
                let label = format!("random_monotone_1d:seed={seed}");
                m.p.iter()
                    .map(|&p| {
                        (m.levels[0]..=m.levels[1])
                            .map(|level| check_monotone_1d(&label, &family.generate(level)?, p))
                            .collect()
                    })
                    .collect()
            })
            .collect::<Result<Vec<_>>>()?;
        let worst = groups
            .iter()
            .flatten()
            .map(|g| ratio_spread(g).unwrap_or(f64::INFINITY))
            .fold(1.0, f64::max);
        checks.push(Check::new("monotone_1d", worst <= m.stability).metric("max_spread", worst));
        records.extend(groups.into_iter().flatten().flatten());
    }

    if let Some(u) = &config.ulyanov {
        let seq = CoefficientSequence::Power {
            exponent: u.exponent,
        };
        let mut worst = 1.0f64;
        for &p in &u.p {
            let group = (u.levels[0]..=u.levels[1])
                .map(|level| check_ulyanov_1d(&seq, level, p))
                .collect::<Result<Vec<_>>>()?;
            worst = worst.max(ratio_spread(&group).unwrap_or(f64::INFINITY));
            records.extend(group);
        }
        checks.push(Check::new("ulyanov_1d", worst <= u.stability).metric("max_spread", worst));
    }

    let meta = json!({
        "tool": "haarnet",
        "version": env!("CARGO_PKG_VERSION"),
        "seed": config.seed,
        "config": config,
    });
    Ok(VerificationReport::new(meta, records, checks))
}

/// Checks for a single function: net-space ratios (and mixed-norm ratios
/// when the function is monotone), the coefficient bound for `f` and its
/// pure-block part, and the partial-sum bound at a few truncations.
pub fn verify_function(spec: &FamilySpec, e: &ExponentPair) -> Result<VerificationReport> {
    let level = spec.level;
    let data = theorem_level(&spec.family, level, std::slice::from_ref(e), &[e.p()])?;
    let mut checks = vec![data.endpoint.into_check("endpoint_coefficient_bound")];

    let spectrum = haar_forward_2d(&spec.generate()?);
    let mut truncations = vec![0, level.saturating_sub(1) / 2, level.saturating_sub(1)];
    truncations.dedup();
    let mut tally = EndpointTally::default();
    for &n1 in &truncations {
        for &n2 in &truncations {
            let truncated = spectrum.truncated(n1, n2, false)?;
            let table = NetMaximalTable::compute(&truncated.inverse());
            tally.add(partial_sum_bound_with(&truncated, &table, e.p())?);
        }
    }
    checks.push(tally.into_check("endpoint_partial_sum_bound"));

    let meta = json!({
        "tool": "haarnet",
        "version": env!("CARGO_PKG_VERSION"),
        "function": spec.to_string(),
        "exponents": e,
    });
    let mut records = data.theorem1;
    records.extend(data.theorem2);
    Ok(VerificationReport::new(meta, records, checks))
}
