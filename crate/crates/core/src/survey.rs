//! Sampling designs, Horvitz-Thompson empirical measures and linearized
//! variance estimation for plug-in index estimators.
//!
//! The estimator of an index is the index of the empirical measure
//! `M_hat = sum_{i in S} delta_{y_i} / pi_i`. Its variance is approximated
//! by the design variance of the Horvitz-Thompson total of the linearized
//! variable `z_i = IF(y_i; M_hat)`, estimated either with the
//! Horvitz-Thompson form or, for fixed-size designs, the Sen-Yates-Grundy
//! form.

use std::fmt;
use std::sync::Arc;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::indexes::IndexKind;
use crate::measure::DiscreteMeasure;

#[derive(Debug, Clone, PartialEq)]
enum DesignKind {
    Srswor {
        population_size: usize,
        sample_size: usize,
    },
    Bernoulli {
        population_size: usize,
        probability: f64,
    },
    Poisson {
        probabilities: Vec<f64>,
    },
    StratifiedSrswor {
        // stratum id of every population unit
        strata: Vec<usize>,
        // indexed by stratum id
        stratum_sizes: Vec<usize>,
        sample_sizes: Vec<usize>,
    },
}

/// A probability sampling design over units `0..N`, with first and second
/// order inclusion probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingDesign {
    kind: DesignKind,
}

impl SamplingDesign {
    /// Simple random sampling without replacement of `n` out of `N` units.
    pub fn srswor(population_size: usize, sample_size: usize) -> Result<Self> {
        if population_size == 0 {
            return Err(Error::design("population is empty"));
        }
        if sample_size == 0 || sample_size > population_size {
            return Err(Error::design(format!(
                "srswor sample size {sample_size} must lie in 1..={population_size}"
            )));
        }
        Ok(SamplingDesign {
            kind: DesignKind::Srswor {
                population_size,
                sample_size,
            },
        })
    }

    /// Every unit with probability one.
    pub fn census(population_size: usize) -> Result<Self> {
        Self::srswor(population_size, population_size)
    }

    pub fn bernoulli(population_size: usize, probability: f64) -> Result<Self> {
        if population_size == 0 {
            return Err(Error::design("population is empty"));
        }
        check_probability(probability)?;
        Ok(SamplingDesign {
            kind: DesignKind::Bernoulli {
                population_size,
                probability,
            },
        })
    }

    /// Independent inclusion of unit `i` with probability `probabilities[i]`.
    pub fn poisson(probabilities: Vec<f64>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::design("population is empty"));
        }
        for &p in &probabilities {
            check_probability(p)?;
        }
        Ok(SamplingDesign {
            kind: DesignKind::Poisson { probabilities },
        })
    }

    /// Poisson sampling with `pi_i = min(1, expected_size * x_i / sum x)`
    /// for a positive size variable `x`.
    pub fn poisson_pps(sizes: &[f64], expected_size: f64) -> Result<Self> {
        if sizes.iter().any(|&x| !(x.is_finite() && x > 0.0)) {
            return Err(Error::design(
                "pps size variable must be finite and positive",
            ));
        }
        if !(expected_size > 0.0 && expected_size <= sizes.len() as f64) {
            return Err(Error::design(format!(
                "expected sample size {expected_size} must lie in (0, {}]",
                sizes.len()
            )));
        }
        let total: f64 = sizes.iter().sum();
        Self::poisson(
            sizes
                .iter()
                .map(|&x| (expected_size * x / total).min(1.0))
                .collect(),
        )
    }

    /// Stratified SRSWOR: `strata[i]` is the stratum id of unit `i` (ids
    /// `0..H`), and `sample_sizes[h]` units are drawn from stratum `h`.
    pub fn stratified_srswor(strata: Vec<usize>, sample_sizes: Vec<usize>) -> Result<Self> {
        if strata.is_empty() {
            return Err(Error::design("population is empty"));
        }
        let mut stratum_sizes = vec![0usize; sample_sizes.len()];
        for &h in &strata {
            match stratum_sizes.get_mut(h) {
                Some(count) => *count += 1,
                None => {
                    return Err(Error::design(format!(
                        "stratum id {h} has no sample size (only {} given)",
                        sample_sizes.len()
                    )))
                }
            }
        }
        for (h, (&size, &n)) in stratum_sizes.iter().zip(&sample_sizes).enumerate() {
            if size == 0 {
                return Err(Error::design(format!("stratum {h} is empty")));
            }
            if n == 0 || n > size {
                return Err(Error::design(format!(
                    "stratum {h}: sample size {n} must lie in 1..={size}"
                )));
            }
        }
        Ok(SamplingDesign {
            kind: DesignKind::StratifiedSrswor {
                strata,
                stratum_sizes,
                sample_sizes,
            },
        })
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            DesignKind::Srswor { .. } => "srswor",
            DesignKind::Bernoulli { .. } => "bernoulli",
            DesignKind::Poisson { .. } => "poisson",
            DesignKind::StratifiedSrswor { .. } => "stratified",
        }
    }

    pub fn population_size(&self) -> usize {
        match &self.kind {
            DesignKind::Srswor {
                population_size, ..
            }
            | DesignKind::Bernoulli {
                population_size, ..
            } => *population_size,
            DesignKind::Poisson { probabilities } => probabilities.len(),
            DesignKind::StratifiedSrswor { strata, .. } => strata.len(),
        }
    }

    /// Whether every sample has the same size.
    pub fn is_fixed_size(&self) -> bool {
        matches!(
            self.kind,
            DesignKind::Srswor { .. } | DesignKind::StratifiedSrswor { .. }
        )
    }

    pub fn expected_sample_size(&self) -> f64 {
        match &self.kind {
            DesignKind::Srswor { sample_size, .. } => *sample_size as f64,
            DesignKind::Bernoulli {
                population_size,
                probability,
            } => *population_size as f64 * probability,
            DesignKind::Poisson { probabilities } => probabilities.iter().sum(),
            DesignKind::StratifiedSrswor { sample_sizes, .. } => {
                sample_sizes.iter().sum::<usize>() as f64
            }
        }
    }

    /// `pi_i`. Panics if `i` is outside the population.
    pub fn first_order(&self, i: usize) -> f64 {
        assert!(
            i < self.population_size(),
            "unit {i} outside the population"
        );
        match &self.kind {
            DesignKind::Srswor {
                population_size,
                sample_size,
            } => *sample_size as f64 / *population_size as f64,
            DesignKind::Bernoulli { probability, .. } => *probability,
            DesignKind::Poisson { probabilities } => probabilities[i],
            DesignKind::StratifiedSrswor {
                strata,
                stratum_sizes,
                sample_sizes,
            } => {
                let h = strata[i];
                sample_sizes[h] as f64 / stratum_sizes[h] as f64
            }
        }
    }

    /// `pi_ij`, with `pi_ii = pi_i`.
    pub fn second_order(&self, i: usize, j: usize) -> f64 {
        if i == j {
            return self.first_order(i);
        }
        assert!(
            i < self.population_size() && j < self.population_size(),
            "unit pair ({i}, {j}) outside the population"
        );
        match &self.kind {
            DesignKind::Srswor {
                population_size,
                sample_size,
            } => srswor_joint(*population_size, *sample_size),
            DesignKind::Bernoulli { probability, .. } => probability * probability,
            DesignKind::Poisson { probabilities } => probabilities[i] * probabilities[j],
            DesignKind::StratifiedSrswor {
                strata,
                stratum_sizes,
                sample_sizes,
            } => {
                let (hi, hj) = (strata[i], strata[j]);
                if hi == hj {
                    srswor_joint(stratum_sizes[hi], sample_sizes[hi])
                } else {
                    self.first_order(i) * self.first_order(j)
                }
            }
        }
    }

    /// Draws a sample of `population` (indexed by unit) with a generator
    /// seeded from `seed`.
    pub fn draw(&self, population: &[f64], seed: u64) -> Result<SampleData> {
        draw_sample(self, population, seed)
    }
}

fn check_probability(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::design(format!(
            "inclusion probability {p} must lie in (0, 1]"
        )))
    }
}

fn srswor_joint(population_size: usize, sample_size: usize) -> f64 {
    let (n, n_pop) = (sample_size as f64, population_size as f64);
    n * (n - 1.0) / (n_pop * (n_pop - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampledUnit {
    /// Population index of the unit.
    pub label: usize,
    pub y: f64,
    /// First-order inclusion probability.
    pub pi: f64,
}

/// Observed units with their inclusion probabilities, and optionally the
/// design that produced them (needed for joint inclusion probabilities).
#[derive(Debug, Clone, PartialEq)]
pub struct SampleData {
    units: Vec<SampledUnit>,
    design: Option<Arc<SamplingDesign>>,
}

impl SampleData {
    pub fn new(units: Vec<SampledUnit>, design: Option<Arc<SamplingDesign>>) -> Result<Self> {
        let mut labels: Vec<usize> = units.iter().map(|u| u.label).collect();
        labels.sort_unstable();
        if let Some(w) = labels.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::design(format!("duplicate unit label {}", w[0])));
        }
        for u in &units {
            if !u.y.is_finite() {
                return Err(Error::NonFiniteValue(u.y));
            }
            check_probability(u.pi)?;
            if let Some(d) = &design {
                if u.label >= d.population_size() {
                    return Err(Error::design(format!(
                        "unit label {} outside population of size {}",
                        u.label,
                        d.population_size()
                    )));
                }
                let expected = d.first_order(u.label);
                if (u.pi - expected).abs() > 1e-12 * expected {
                    return Err(Error::design(format!(
                        "unit {} has pi = {} but the {} design gives {expected}",
                        u.label,
                        u.pi,
                        d.name()
                    )));
                }
            }
        }
        Ok(SampleData { units, design })
    }

    pub fn units(&self) -> &[SampledUnit] {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn design(&self) -> Option<&SamplingDesign> {
        self.design.as_deref()
    }

    fn require_design(&self) -> Result<&SamplingDesign> {
        self.design()
            .ok_or_else(|| Error::design("joint inclusion probabilities need the sampling design"))
    }
}

/// Draws a sample; deterministic given `(design, population, seed)`.
/// Units come back in increasing label order.
pub fn draw_sample(design: &SamplingDesign, population: &[f64], seed: u64) -> Result<SampleData> {
    if population.len() != design.population_size() {
        return Err(Error::design(format!(
            "design is over {} units but the population has {}",
            design.population_size(),
            population.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels: Vec<usize> = match &design.kind {
        DesignKind::Srswor {
            population_size,
            sample_size,
        } => index::sample(&mut rng, *population_size, *sample_size).into_vec(),
        DesignKind::Bernoulli {
            population_size,
            probability,
        } => (0..*population_size)
            .filter(|_| rng.random::<f64>() < *probability)
            .collect(),
        DesignKind::Poisson { probabilities } => probabilities
            .iter()
            .enumerate()
            .filter(|&(_, &p)| rng.random::<f64>() < p)
            .map(|(i, _)| i)
            .collect(),
        DesignKind::StratifiedSrswor {
            strata,
            stratum_sizes,
            sample_sizes,
        } => {
            let mut members: Vec<Vec<usize>> = stratum_sizes
                .iter()
                .map(|&s| Vec::with_capacity(s))
                .collect();
            for (i, &h) in strata.iter().enumerate() {
                members[h].push(i);
            }
            members
                .iter()
                .zip(sample_sizes)
                .flat_map(|(units, &n)| {
                    index::sample(&mut rng, units.len(), n)
                        .into_iter()
                        .map(|k| units[k])
                        .collect::<Vec<_>>()
                })
                .collect()
        }
    };
    labels.sort_unstable();
    let units = labels
        .into_iter()
        .map(|label| SampledUnit {
            label,
            y: population[label],
            pi: design.first_order(label),
        })
        .collect();
    SampleData::new(units, Some(Arc::new(design.clone())))
}

/// `sum_{i in S} delta_{y_i} / pi_i`.
pub fn empirical_measure(s: &SampleData) -> Result<DiscreteMeasure> {
    if s.is_empty() {
        return Err(Error::design("sample is empty"));
    }
    DiscreteMeasure::new(s.units().iter().map(|u| (u.y, 1.0 / u.pi)))
}

/// Index of the empirical measure.
pub fn plug_in(kind: IndexKind, s: &SampleData) -> Result<f64> {
    kind.value(&empirical_measure(s)?)
}

/// `z_i = IF(y_i; M_hat)` for every sampled unit, in sample order.
pub fn linearized_values(kind: IndexKind, s: &SampleData) -> Result<Vec<f64>> {
    linearized_values_at(kind, s, &empirical_measure(s)?)
}

/// `z_i = IF(y_i; reference)`; with the population measure as reference
/// this gives the true linearized variable.
pub fn linearized_values_at(
    kind: IndexKind,
    s: &SampleData,
    reference: &DiscreteMeasure,
) -> Result<Vec<f64>> {
    let f = kind.influence_function(reference)?;
    s.units().iter().map(|u| f.at(u.y)).collect()
}

fn check_lengths(z: &[f64], s: &SampleData) -> Result<()> {
    if z.len() == s.len() {
        Ok(())
    } else {
        Err(Error::design(format!(
            "{} linearized values for {} sampled units",
            z.len(),
            s.len()
        )))
    }
}

/// Horvitz-Thompson estimator of the variance of the HT total of `z`:
/// `sum_i sum_j (pi_ij - pi_i pi_j) / pi_ij * (z_i / pi_i) * (z_j / pi_j)`.
pub fn variance_ht(z: &[f64], s: &SampleData) -> Result<f64> {
    check_lengths(z, s)?;
    let design = s.require_design()?;
    let units = s.units();
    let expanded: Vec<f64> = units.iter().zip(z).map(|(u, &zi)| zi / u.pi).collect();
    let mut v = 0.0;
    for (i, ui) in units.iter().enumerate() {
        v += (1.0 - ui.pi) * expanded[i] * expanded[i];
        for (j, uj) in units.iter().enumerate().skip(i + 1) {
            let pij = design.second_order(ui.label, uj.label);
            if pij <= 0.0 {
                return Err(Error::design(format!(
                    "joint inclusion probability of units {} and {} is zero",
                    ui.label, uj.label
                )));
            }
            v += 2.0 * (pij - ui.pi * uj.pi) / pij * expanded[i] * expanded[j];
        }
    }
    Ok(v)
}

/// Sen-Yates-Grundy estimator for fixed-size designs:
/// `sum_{i<j} (pi_i pi_j - pi_ij) / pi_ij * (z_i / pi_i - z_j / pi_j)^2`.
pub fn variance_syg(z: &[f64], s: &SampleData) -> Result<f64> {
    check_lengths(z, s)?;
    let design = s.require_design()?;
    if !design.is_fixed_size() {
        return Err(Error::design(format!(
            "the Sen-Yates-Grundy form needs a fixed-size design, not {}",
            design.name()
        )));
    }
    let units = s.units();
    let expanded: Vec<f64> = units.iter().zip(z).map(|(u, &zi)| zi / u.pi).collect();
    let mut v = 0.0;
    for (i, ui) in units.iter().enumerate() {
        for (j, uj) in units.iter().enumerate().skip(i + 1) {
            let pij = design.second_order(ui.label, uj.label);
            if pij <= 0.0 {
                return Err(Error::design(format!(
                    "joint inclusion probability of units {} and {} is zero",
                    ui.label, uj.label
                )));
            }
            let d = expanded[i] - expanded[j];
            v += (ui.pi * uj.pi - pij) / pij * d * d;
        }
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VarianceMethod {
    #[serde(rename = "HT")]
    HorvitzThompson,
    #[serde(rename = "SYG")]
    SenYatesGrundy,
}

impl fmt::Display for VarianceMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VarianceMethod::HorvitzThompson => "HT",
            VarianceMethod::SenYatesGrundy => "SYG",
        })
    }
}

/// Plug-in estimate with its linearized variance and a normal-approximation
/// confidence interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceReport {
    pub estimate: f64,
    /// Variance clamped at zero; used for `std_error` and `ci`.
    pub variance: f64,
    /// Estimator output before clamping (HT can be negative).
    pub raw_variance: f64,
    pub std_error: f64,
    pub ci: [f64; 2],
    pub level: f64,
    pub method: VarianceMethod,
    pub n_effective: usize,
}

impl VarianceReport {
    pub fn covers(&self, target: f64) -> bool {
        self.ci[0] <= target && target <= self.ci[1]
    }
}

/// Two-sided standard normal quantile for confidence `level`.
pub fn normal_quantile(level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::domain(format!(
            "confidence level {level} must lie in (0, 1)"
        )));
    }
    let normal = Normal::standard();
    Ok(normal.inverse_cdf(0.5 + level / 2.0))
}

pub fn estimate_with_variance(
    kind: IndexKind,
    s: &SampleData,
    level: f64,
) -> Result<VarianceReport> {
    let q = normal_quantile(level)?;
    let m = empirical_measure(s)?;
    let estimate = kind.value(&m)?;
    let z = linearized_values_at(kind, s, &m)?;
    report_from_linearized(estimate, &z, s, level, q)
}

pub(crate) fn report_from_linearized(
    estimate: f64,
    z: &[f64],
    s: &SampleData,
    level: f64,
    quantile: f64,
) -> Result<VarianceReport> {
    let design = s.require_design()?;
    let (raw_variance, method) = if design.is_fixed_size() {
        (variance_syg(z, s)?, VarianceMethod::SenYatesGrundy)
    } else {
        (variance_ht(z, s)?, VarianceMethod::HorvitzThompson)
    };
    Ok(build_report(
        estimate,
        raw_variance,
        method,
        level,
        quantile,
        s.len(),
    ))
}

fn build_report(
    estimate: f64,
    raw_variance: f64,
    method: VarianceMethod,
    level: f64,
    quantile: f64,
    n_effective: usize,
) -> VarianceReport {
    let variance = raw_variance.max(0.0);
    let std_error = variance.sqrt();
    VarianceReport {
        estimate,
        variance,
        raw_variance,
        std_error,
        ci: [
            estimate - quantile * std_error,
            estimate + quantile * std_error,
        ],
        level,
        method,
        n_effective,
    }
}
