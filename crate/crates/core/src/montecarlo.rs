//! Seeded replicated-sampling experiments.
//!
//! A [`SimulationConfig`] fixes a finite population, a design and an index.
//! [`run`] draws `replicates` independent samples, computes the plug-in
//! estimate and its linearized variance report for each, and compares the
//! Monte Carlo variance of the estimates with the mean linearized variance
//! and the confidence-interval coverage of the true population value.
//!
//! Replicate `r` draws its sample with seed [`replicate_seed`]`(master_seed, r)`,
//! so results do not depend on scheduling. Replicates run on a rayon pool
//! and are reduced in replicate order.

use std::io::Write;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, LogNormal, Pareto, Uniform};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::indexes::IndexKind;
use crate::measure::DiscreteMeasure;
use crate::survey::{self, SamplingDesign};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    /// `exp(N(0, sigma^2))`
    Lognormal {
        sigma: f64,
    },
    /// Pareto with scale 1 and tail index `shape`.
    Pareto {
        shape: f64,
    },
    Uniform {
        low: f64,
        high: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub distribution: Distribution,
    pub size: usize,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let n = self.size;
        let bad = |what: String| Error::Config(what);
        let values: Vec<f64> = match self.distribution {
            Distribution::Lognormal { sigma } => {
                let d = LogNormal::new(0.0, sigma)
                    .map_err(|e| bad(format!("lognormal sigma {sigma}: {e}")))?;
                d.sample_iter(&mut rng).take(n).collect()
            }
            Distribution::Pareto { shape } => {
                let d = Pareto::new(1.0, shape)
                    .map_err(|e| bad(format!("pareto shape {shape}: {e}")))?;
                d.sample_iter(&mut rng).take(n).collect()
            }
            Distribution::Uniform { low, high } => {
                let d = Uniform::new(low, high)
                    .map_err(|e| bad(format!("uniform [{low}, {high}): {e}")))?;
                d.sample_iter(&mut rng).take(n).collect()
            }
        };
        Ok(values)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PopulationSource {
    Inline(Vec<f64>),
    Generator(GeneratorSpec),
}

impl PopulationSource {
    pub fn values(&self) -> Result<Vec<f64>> {
        match self {
            PopulationSource::Inline(values) => Ok(values.clone()),
            PopulationSource::Generator(g) => g.generate(),
        }
    }
}

/// Design description resolved against the population at run time.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignSpec {
    Census,
    Srswor {
        sample_size: usize,
    },
    Bernoulli {
        probability: f64,
    },
    Poisson {
        probabilities: Vec<f64>,
    },
    /// Poisson with probabilities proportional to the study variable.
    PoissonPps {
        expected_size: f64,
    },
    Stratified {
        strata: Vec<usize>,
        sample_sizes: Vec<usize>,
    },
}

impl DesignSpec {
    pub fn resolve(&self, population: &[f64]) -> Result<SamplingDesign> {
        let n = population.len();
        match self {
            DesignSpec::Census => SamplingDesign::census(n),
            DesignSpec::Srswor { sample_size } => SamplingDesign::srswor(n, *sample_size),
            DesignSpec::Bernoulli { probability } => SamplingDesign::bernoulli(n, *probability),
            DesignSpec::Poisson { probabilities } => {
                if probabilities.len() != n {
                    return Err(Error::Config(format!(
                        "{} poisson probabilities for a population of {n}",
                        probabilities.len()
                    )));
                }
                SamplingDesign::poisson(probabilities.clone())
            }
            DesignSpec::PoissonPps { expected_size } => {
                SamplingDesign::poisson_pps(population, *expected_size)
            }
            DesignSpec::Stratified {
                strata,
                sample_sizes,
            } => {
                if strata.len() != n {
                    return Err(Error::Config(format!(
                        "{} stratum ids for a population of {n}",
                        strata.len()
                    )));
                }
                SamplingDesign::stratified_srswor(strata.clone(), sample_sizes.clone())
            }
        }
    }
}

/// Measure at which the linearized variable is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinearizationBase {
    /// `IF(.; M_hat)`, what an analyst can compute.
    #[default]
    Sample,
    /// `IF(.; M)`, the unknown true linearized variable.
    Population,
}

fn default_level() -> f64 {
    0.95
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimulationConfig {
    pub population: PopulationSource,
    pub design: DesignSpec,
    pub index: IndexKind,
    pub replicates: usize,
    #[serde(default = "default_level")]
    pub level: f64,
    pub master_seed: u64,
    #[serde(default)]
    pub linearize_at: LinearizationBase,
    /// Keep the per-replicate table in the report.
    #[serde(default)]
    pub keep_replicates: bool,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.replicates < 2 {
            return Err(Error::Config(format!(
                "need at least 2 replicates, got {}",
                self.replicates
            )));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::Config(format!(
                "level {} must lie in (0, 1)",
                self.level
            )));
        }
        if let PopulationSource::Generator(g) = &self.population {
            if g.size < 2 {
                return Err(Error::Config(format!(
                    "population size {} must be >= 2",
                    g.size
                )));
            }
        }
        self.index.validate()
    }

    /// Short stable hash of the canonical JSON form.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        let digest = Sha256::digest(json.as_bytes());
        hex::encode(&digest[..8])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateRow {
    pub replicate: usize,
    pub seed: u64,
    pub sample_size: usize,
    pub estimate: Option<f64>,
    pub variance: Option<f64>,
    pub std_error: Option<f64>,
    pub ci_lower: Option<f64>,
    pub ci_upper: Option<f64>,
    pub covered: Option<bool>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub config_fingerprint: String,
    pub index: String,
    pub design: String,
    pub population_size: usize,
    pub replicates: usize,
    pub failed_replicates: usize,
    pub true_value: f64,
    pub mean_estimate: f64,
    pub bias: f64,
    /// Variance of the estimates across successful replicates (`R - 1`
    /// denominator).
    pub empirical_variance: f64,
    pub mean_linearized_variance: f64,
    /// `empirical_variance / mean_linearized_variance`; absent when the
    /// denominator is zero.
    pub variance_ratio: Option<f64>,
    pub coverage: f64,
    pub level: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub per_replicate: Option<Vec<ReplicateRow>>,
    pub timing: f64,
}

/// Seed of replicate `r`: two rounds of the SplitMix64 finalizer over
/// `master_seed` and `r`.
pub fn replicate_seed(master_seed: u64, replicate: usize) -> u64 {
    splitmix64(splitmix64(master_seed) ^ (replicate as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn run(config: &SimulationConfig) -> Result<SimulationReport> {
    run_with_threads(config, None)
}

/// Runs on a dedicated pool of `threads` workers, or on the global rayon
/// pool when `None`. The report does not depend on the choice.
pub fn run_with_threads(
    config: &SimulationConfig,
    threads: Option<usize>,
) -> Result<SimulationReport> {
    run_detailed(config, threads).map(|(report, _)| report)
}

/// Like [`run_with_threads`], also returning the per-replicate table
/// whether or not the config asks to keep it in the report.
pub fn run_detailed(
    config: &SimulationConfig,
    threads: Option<usize>,
) -> Result<(SimulationReport, Vec<ReplicateRow>)> {
    match threads {
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
            pool.install(|| run_inner(config))
        }
        None => run_inner(config),
    }
}

fn run_inner(config: &SimulationConfig) -> Result<(SimulationReport, Vec<ReplicateRow>)> {
    let started = Instant::now();
    config.validate()?;
    let population = config.population.values()?;
    if population.len() < 2 {
        return Err(Error::Config(format!(
            "population size {} must be >= 2",
            population.len()
        )));
    }
    let design = config.design.resolve(&population)?;
    let kind = config.index;
    let population_measure = DiscreteMeasure::from_values(&population)?;
    let true_value = kind.value(&population_measure)?;
    let quantile = survey::normal_quantile(config.level)?;
    let reference = match config.linearize_at {
        LinearizationBase::Sample => None,
        LinearizationBase::Population => Some(&population_measure),
    };

    let rows: Vec<ReplicateRow> = (0..config.replicates)
        .into_par_iter()
        .map(|r| {
            let seed = replicate_seed(config.master_seed, r);
            replicate(
                kind,
                &design,
                &population,
                seed,
                config.level,
                quantile,
                reference,
            )
            .map(|(sample_size, report)| ReplicateRow {
                replicate: r,
                seed,
                sample_size,
                estimate: Some(report.estimate),
                variance: Some(report.variance),
                std_error: Some(report.std_error),
                ci_lower: Some(report.ci[0]),
                ci_upper: Some(report.ci[1]),
                covered: Some(report.covers(true_value)),
                error: None,
            })
            .unwrap_or_else(|(sample_size, e)| ReplicateRow {
                replicate: r,
                seed,
                sample_size,
                estimate: None,
                variance: None,
                std_error: None,
                ci_lower: None,
                ci_upper: None,
                covered: None,
                error: Some(e.to_string()),
            })
        })
        .collect();

    let ok: Vec<&ReplicateRow> = rows.iter().filter(|r| r.error.is_none()).collect();
    let failed_replicates = rows.len() - ok.len();
    if ok.len() < 2 {
        return Err(Error::Config(format!(
            "only {} of {} replicates produced an estimate",
            ok.len(),
            rows.len()
        )));
    }

    let estimates: Vec<f64> = ok.iter().map(|r| r.estimate.unwrap()).collect();
    let (mean_estimate, empirical_variance) = mean_and_variance(&estimates);
    let mean_linearized_variance =
        ok.iter().map(|r| r.variance.unwrap()).sum::<f64>() / ok.len() as f64;
    let covered = ok.iter().filter(|r| r.covered == Some(true)).count();
    let variance_ratio = if mean_linearized_variance > 0.0 {
        Some(empirical_variance / mean_linearized_variance)
    } else {
        None
    };

    let report = SimulationReport {
        config_fingerprint: config.fingerprint(),
        index: kind.to_string(),
        design: design.name().to_string(),
        population_size: population.len(),
        replicates: config.replicates,
        failed_replicates,
        true_value,
        mean_estimate,
        bias: mean_estimate - true_value,
        empirical_variance,
        mean_linearized_variance,
        variance_ratio,
        coverage: covered as f64 / ok.len() as f64,
        level: config.level,
        per_replicate: config.keep_replicates.then(|| rows.clone()),
        timing: started.elapsed().as_secs_f64(),
    };
    Ok((report, rows))
}

fn replicate(
    kind: IndexKind,
    design: &SamplingDesign,
    population: &[f64],
    seed: u64,
    level: f64,
    quantile: f64,
    reference: Option<&DiscreteMeasure>,
) -> std::result::Result<(usize, survey::VarianceReport), (usize, Error)> {
    let sample = design.draw(population, seed).map_err(|e| (0, e))?;
    let n = sample.len();
    let compute = || -> Result<survey::VarianceReport> {
        let m_hat = survey::empirical_measure(&sample)?;
        let estimate = kind.value(&m_hat)?;
        let z = survey::linearized_values_at(kind, &sample, reference.unwrap_or(&m_hat))?;
        survey::report_from_linearized(estimate, &z, &sample, level, quantile)
    };
    compute().map(|r| (n, r)).map_err(|e| (n, e))
}

// Shifted two-pass mean and variance; identical inputs give exactly zero
// variance and their common value as the mean.
fn mean_and_variance(xs: &[f64]) -> (f64, f64) {
    let shift = xs[0];
    let n = xs.len() as f64;
    let mean_d = xs.iter().map(|x| x - shift).sum::<f64>() / n;
    let ss: f64 = xs.iter().map(|x| (x - shift - mean_d).powi(2)).sum();
    (shift + mean_d, ss / (n - 1.0))
}

/// One row of a [`summarize`] table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub config_fingerprint: String,
    pub index: String,
    pub design: String,
    pub replicates: usize,
    pub failed_replicates: usize,
    pub true_value: f64,
    pub mean_estimate: f64,
    pub empirical_variance: f64,
    pub mean_linearized_variance: f64,
    pub variance_ratio: Option<f64>,
    pub coverage: f64,
}

/// One row per report, sorted by config fingerprint.
pub fn summarize(reports: &[SimulationReport]) -> Vec<SummaryRow> {
    let mut rows: Vec<SummaryRow> = reports
        .iter()
        .map(|r| SummaryRow {
            config_fingerprint: r.config_fingerprint.clone(),
            index: r.index.clone(),
            design: r.design.clone(),
            replicates: r.replicates,
            failed_replicates: r.failed_replicates,
            true_value: r.true_value,
            mean_estimate: r.mean_estimate,
            empirical_variance: r.empirical_variance,
            mean_linearized_variance: r.mean_linearized_variance,
            variance_ratio: r.variance_ratio,
            coverage: r.coverage,
        })
        .collect();
    rows.sort_by(|a, b| a.config_fingerprint.cmp(&b.config_fingerprint));
    rows
}

pub fn write_csv<W: Write, T: Serialize>(rows: &[T], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(design: DesignSpec, index: IndexKind, replicates: usize) -> SimulationConfig {
        SimulationConfig {
            population: PopulationSource::Generator(GeneratorSpec {
                distribution: Distribution::Lognormal { sigma: 0.8 },
                size: 200,
                seed: 17,
            }),
            design,
            index,
            replicates,
            level: 0.95,
            master_seed: 2024,
            linearize_at: LinearizationBase::Sample,
            keep_replicates: true,
        }
    }

    #[test]
    fn census_is_exact() {
        for kind in [IndexKind::Gini, IndexKind::Zenga, IndexKind::Amato] {
            let r = run(&config(DesignSpec::Census, kind, 5)).unwrap();
            assert_eq!(r.empirical_variance, 0.0);
            assert_eq!(r.mean_estimate, r.true_value);
            assert_eq!(r.coverage, 1.0);
            assert_eq!(r.mean_linearized_variance, 0.0);
            assert_eq!(r.variance_ratio, None);
            for row in r.per_replicate.unwrap() {
                assert_eq!(row.ci_lower, Some(r.true_value));
                assert_eq!(row.ci_upper, Some(r.true_value));
            }
        }
    }

    #[test]
    fn replicate_seeds_are_distinct_and_stable() {
        let seeds: std::collections::HashSet<u64> =
            (0..1000).map(|r| replicate_seed(7, r)).collect();
        assert_eq!(seeds.len(), 1000);
        assert_eq!(replicate_seed(7, 3), replicate_seed(7, 3));
        assert_ne!(replicate_seed(7, 3), replicate_seed(8, 3));
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let c = config(DesignSpec::Srswor { sample_size: 30 }, IndexKind::Gini, 64);
        let mut a = run_with_threads(&c, Some(1)).unwrap();
        let mut b = run_with_threads(&c, Some(4)).unwrap();
        a.timing = 0.0;
        b.timing = 0.0;
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn failures_are_counted() {
        // tiny bernoulli samples are often empty
        let mut c = config(
            DesignSpec::Bernoulli { probability: 0.004 },
            IndexKind::Gini,
            50,
        );
        c.population = PopulationSource::Inline((1..=200).map(f64::from).collect());
        let r = run(&c).unwrap();
        assert!(r.failed_replicates > 0);
        let rows = r.per_replicate.unwrap();
        assert_eq!(
            rows.iter().filter(|row| row.error.is_some()).count(),
            r.failed_replicates
        );
    }

    #[test]
    fn invalid_configs() {
        let mut c = config(DesignSpec::Census, IndexKind::Gini, 1);
        assert!(matches!(run(&c), Err(Error::Config(_))));
        c.replicates = 3;
        c.level = 1.5;
        assert!(matches!(run(&c), Err(Error::Config(_))));
        c.level = 0.9;
        c.index = IndexKind::Atkinson { epsilon: 1.0 };
        assert!(matches!(run(&c), Err(Error::Domain(_))));
        c.index = IndexKind::Zenga;
        c.population = PopulationSource::Inline(vec![-1.0, 1.0, 2.0]);
        assert!(matches!(run(&c), Err(Error::Domain(_))));
    }

    #[test]
    fn config_json_round_trip() {
        let json = r#"{
            "population": {"generator": {"distribution": {"lognormal": {"sigma": 1.0}}, "size": 50, "seed": 3}},
            "design": {"srswor": {"sample_size": 10}},
            "index": {"kind": "atkinson", "epsilon": 0.5},
            "replicates": 20,
            "master_seed": 9
        }"#;
        let c: SimulationConfig = serde_json::from_str(json).unwrap();
        assert_eq!(c.level, 0.95);
        assert_eq!(c.linearize_at, LinearizationBase::Sample);
        let back: SimulationConfig =
            serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.fingerprint(), c.fingerprint());

        let census: SimulationConfig = serde_json::from_str(
            r#"{"population": {"inline": [1, 2, 3]}, "design": "census",
                "index": {"kind": "gini"}, "replicates": 2, "master_seed": 1}"#,
        )
        .unwrap();
        assert_eq!(census.design, DesignSpec::Census);
    }

    #[test]
    fn summary_rows_sorted_and_consistent() {
        let reports: Vec<SimulationReport> = [IndexKind::Gini, IndexKind::Amato, IndexKind::Zenga]
            .into_iter()
            .map(|k| run(&config(DesignSpec::Srswor { sample_size: 40 }, k, 20)).unwrap())
            .collect();
        let rows = summarize(&reports);
        assert_eq!(rows.len(), 3);
        assert!(rows
            .windows(2)
            .all(|w| w[0].config_fingerprint <= w[1].config_fingerprint));
        for row in &rows {
            let r = reports
                .iter()
                .find(|r| r.config_fingerprint == row.config_fingerprint)
                .unwrap();
            assert_eq!(row.variance_ratio, r.variance_ratio);
            assert_eq!(row.coverage, r.coverage);
            let ratio = row.empirical_variance / row.mean_linearized_variance;
            assert_eq!(row.variance_ratio, Some(ratio));
        }
        assert_eq!(summarize(&reports[..1]).len(), 1);
        assert_eq!(summarize(&reports[..1])[0].index, reports[0].index);

        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("config_fingerprint,index,design"));
    }

    #[test]
    fn mean_and_variance_basic() {
        let (m, v) = mean_and_variance(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(m, 2.5);
        assert!((v - 5.0 / 3.0).abs() < 1e-15);
        assert_eq!(mean_and_variance(&[0.1; 7]), (0.1, 0.0));
    }
}
