//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use ineqlin::engine::{gateaux_numeric_with, GateauxOptions, OuterMap};
use ineqlin::montecarlo::{
    self, DesignSpec, Distribution, GeneratorSpec, LinearizationBase, PopulationSource,
    SimulationConfig,
};
use ineqlin::survey::{self, SamplingDesign};
use ineqlin::{DiscreteMeasure, IndexKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution as _, LogNormal};

const KINDS: [IndexKind; 4] = [
    IndexKind::Gini,
    IndexKind::Amato,
    IndexKind::Zenga,
    IndexKind::Atkinson { epsilon: 0.5 },
];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome {
            passed,
            detail: detail.into(),
        }
    }
}

fn lognormal_values(seed: u64, n: usize, sigma: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = LogNormal::new(0.0, sigma).unwrap();
    let mut v: Vec<f64> = d.sample_iter(&mut rng).take(n).collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    assert_eq!(v.len(), n, "lognormal draw produced a tie");
    v
}

// 25 atoms and the 25 midpoints that follow them, spread over the support.
fn grid(sorted: &[f64]) -> Vec<f64> {
    let n = sorted.len();
    let mut u = Vec::with_capacity(50);
    for k in 0..25 {
        let i = k * (n - 2) / 24;
        u.push(sorted[i]);
        u.push(0.5 * (sorted[i] + sorted[i + 1]));
    }
    u
}

fn rel_gap(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

fn closed_form_vs_oracle() -> Outcome {
    let start = Instant::now();
    let opts = GateauxOptions {
        step: Some(1e-5),
        richardson: true,
    };
    let mut worst = 0.0f64;
    let mut worst_at = String::new();
    for seed in 0..20 {
        let values = lognormal_values(1000 + seed, 100, 1.0);
        let m = DiscreteMeasure::from_values(&values).unwrap();
        for kind in KINDS {
            let influence = kind.influence_function(&m).unwrap();
            let composition = kind.composition().unwrap();
            for u in grid(&values) {
                let closed = influence.at(u).unwrap();
                let numeric = gateaux_numeric_with(&composition, u, &m, opts).unwrap();
                let score = (closed - numeric).abs() / (1.0 + closed.abs());
                if score > worst {
                    worst = score;
                    worst_at = format!("{kind}, seed {seed}, u = {u:.6}");
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome::new(
        worst <= 1e-6 && secs < 10.0,
        format!("max |IF - oracle| / (1 + |IF|) = {worst:.2e} ({worst_at}); {secs:.2} s"),
    )
}

fn closed_form_vs_engine() -> Outcome {
    let start = Instant::now();
    let mut worst_value = 0.0f64;
    let mut worst_influence = 0.0f64;
    for seed in 0..20 {
        let values = lognormal_values(1000 + seed, 100, 1.0);
        let m = DiscreteMeasure::from_values(&values).unwrap();
        for kind in KINDS {
            let composition = kind.composition().unwrap();
            worst_value = worst_value.max(rel_gap(
                kind.value(&m).unwrap(),
                composition.evaluate(&m).unwrap(),
            ));
            let influence = kind.influence_function(&m).unwrap();
            for u in grid(&values) {
                let closed = influence.at(u).unwrap();
                let engine = composition.influence(u, &m).unwrap();
                worst_influence = worst_influence.max(rel_gap(closed, engine));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Outcome::new(
        worst_value <= 1e-10 && worst_influence <= 1e-10 && secs < 10.0,
        format!("max relative gap: values {worst_value:.2e}, influences {worst_influence:.2e}; {secs:.2} s"),
    )
}

fn fixtures() -> Outcome {
    let unit = |v: &[f64]| DiscreteMeasure::from_values(v).unwrap();
    let mut failures = Vec::new();
    let mut check = |name: &str, got: f64, want: f64| {
        if (got - want).abs() > 1e-12 {
            failures.push(format!("{name}: {got} vs {want}"));
        }
    };

    let m123 = unit(&[1.0, 2.0, 3.0]);
    check(
        "gini {1,2,3}",
        IndexKind::Gini.value(&m123).unwrap(),
        5.0 / 9.0,
    );
    for (u, want) in [(1.0, 0.0), (2.0, -1.0 / 27.0), (3.0, 1.0 / 27.0)] {
        check(
            &format!("gini IF({u})"),
            IndexKind::Gini.influence(&m123, u).unwrap(),
            want,
        );
    }

    let half = IndexKind::Atkinson { epsilon: 0.5 };
    let m14 = unit(&[1.0, 4.0]);
    check("atkinson {1,4}", half.value(&m14).unwrap(), 0.1);
    check("atkinson IF(1)", half.influence(&m14, 1.0).unwrap(), 0.03);
    check("atkinson IF(4)", half.influence(&m14, 4.0).unwrap(), -0.03);

    // the influence vanishes on the support; off it, it is positive
    let equal = unit(&[3.7; 6]);
    check(
        "amato equal",
        IndexKind::Amato.value(&equal).unwrap(),
        2f64.sqrt(),
    );
    check(
        "amato equal IF(3.7)",
        IndexKind::Amato.influence(&equal, 3.7).unwrap(),
        0.0,
    );

    check(
        "zenga {1,2,3}",
        IndexKind::Zenga.value(&m123).unwrap(),
        29.0 / 30.0,
    );

    let zero = IndexKind::Atkinson { epsilon: 0.0 };
    for values in [
        vec![1.0, 2.0, 3.0],
        vec![1.0, 4.0],
        vec![0.2, 5.0, 9.0, 40.0],
    ] {
        let m = unit(&values);
        check("atkinson eps=0", zero.value(&m).unwrap(), 0.0);
        for &u in &values {
            check("atkinson eps=0 IF", zero.influence(&m, u).unwrap(), 0.0);
        }
    }

    let n = failures.len();
    Outcome::new(
        failures.is_empty(),
        if n == 0 {
            "all fixtures within 1e-12".to_string()
        } else {
            failures.join("; ")
        },
    )
}

fn random_measure(rng: &mut ChaCha8Rng) -> DiscreteMeasure {
    let size = rng.random_range(3..=40);
    let d = LogNormal::new(0.0, 0.8).unwrap();
    let atoms: Vec<(f64, f64)> = (0..size)
        .map(|_| (d.sample(rng), rng.random_range(0.5..3.0)))
        .collect();
    DiscreteMeasure::new(atoms).unwrap()
}

fn invariants() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4242);
    let mut euler = 0.0f64;
    let mut scaling = 0.0f64;
    let mut replication = 0.0f64;
    let mut y_scale = 0.0f64;
    let mut chain = 0.0f64;
    let mut influence_scaling = 0.0f64;
    for _ in 0..50 {
        let m = random_measure(&mut rng);
        let c = rng.random_range(0.1..10.0);
        let lambda = rng.random_range(0.1..10.0);
        let scaled = m.scale_weights(c).unwrap();
        let stretched = m.scale_values(lambda).unwrap();
        // every atom repeated three times, merged by construction
        let tripled =
            DiscreteMeasure::new(m.atoms().flat_map(|(y, w)| std::iter::repeat_n((y, w), 3)))
                .unwrap();
        for kind in KINDS {
            let f = kind.value(&m).unwrap();
            let influence = kind.influence_function(&m).unwrap();
            let at_atoms = influence.at_atoms().unwrap();
            let sum: f64 = m.weights().iter().zip(&at_atoms).map(|(w, z)| w * z).sum();
            euler = euler.max(sum.abs() / (1.0 + m.mass()));

            scaling = scaling.max(rel_gap(kind.value(&scaled).unwrap(), f));
            replication = replication.max(rel_gap(kind.value(&tripled).unwrap(), f));
            y_scale = y_scale.max(rel_gap(kind.value(&stretched).unwrap(), f));

            let composition = kind.composition().unwrap();
            let inner = composition.with_outer(OuterMap::identity());
            let inner_value = inner.evaluate(&m).unwrap();
            let squared = composition.with_outer(OuterMap::new(
                "phi^2",
                {
                    let outer = composition.outer().clone();
                    move |x| outer.eval(x).powi(2)
                },
                {
                    let outer = composition.outer().clone();
                    move |x| 2.0 * outer.eval(x) * outer.derivative(x)
                },
            ));
            for (k, &u) in m.values().iter().enumerate().step_by(3) {
                let inner_if = inner.influence(u, &m).unwrap();
                let lhs = composition.influence(u, &m).unwrap();
                let rhs = composition.outer().derivative(inner_value) * inner_if;
                chain = chain.max(rel_gap(lhs, rhs));
                chain = chain.max(rel_gap(squared.influence(u, &m).unwrap(), 2.0 * f * lhs));

                // influence is homogeneous of degree -1 in M and invariant under y-scaling
                let z = at_atoms[k];
                for other in [
                    kind.influence(&scaled, u).unwrap() * c,
                    kind.influence(&tripled, u).unwrap() * 3.0,
                    kind.influence(&stretched, lambda * u).unwrap(),
                ] {
                    influence_scaling = influence_scaling.max(rel_gap(other, z));
                }
            }
        }
    }
    let ok = euler <= 1e-9
        && scaling <= 1e-12
        && replication <= 1e-12
        && y_scale <= 1e-12
        && chain <= 1e-12
        && influence_scaling <= 1e-10;
    Outcome::new(
        ok,
        format!(
            "euler {euler:.2e} (scaled by 1 + N), weight scaling {scaling:.2e}, replication {replication:.2e}, \
             y-scale {y_scale:.2e}, chain rule {chain:.2e}; influence transforms {influence_scaling:.2e}"
        ),
    )
}

fn linearization() -> Outcome {
    let start = Instant::now();
    let mut ok = true;
    let mut parts = Vec::new();
    for kind in KINDS {
        let config = SimulationConfig {
            population: PopulationSource::Generator(GeneratorSpec {
                distribution: Distribution::Lognormal { sigma: 1.0 },
                size: 1000,
                seed: 20_240_601,
            }),
            design: DesignSpec::Srswor { sample_size: 100 },
            index: kind,
            replicates: 2000,
            level: 0.95,
            master_seed: 7,
            linearize_at: LinearizationBase::Sample,
            keep_replicates: false,
        };
        let report = montecarlo::run(&config).unwrap();
        let ratio = report.variance_ratio.unwrap_or(f64::NAN);
        let (band, coverage_checked) = match kind {
            IndexKind::Gini | IndexKind::Atkinson { .. } => ((0.9, 1.1), true),
            _ => ((0.85, 1.15), false),
        };
        let ratio_ok = ratio >= band.0 && ratio <= band.1;
        let coverage_ok = !coverage_checked || (0.925..=0.97).contains(&report.coverage);
        ok &= ratio_ok && coverage_ok && report.failed_replicates == 0;
        parts.push(format!(
            "{kind}: ratio {ratio:.4}, coverage {:.4}{}",
            report.coverage,
            if report.failed_replicates > 0 {
                format!(", {} failed", report.failed_replicates)
            } else {
                String::new()
            }
        ));
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 60.0;
    Outcome::new(ok, format!("{}; {secs:.1} s", parts.join("; ")))
}

fn survey_algebra() -> Outcome {
    let pop = lognormal_values(77, 500, 1.0);
    let mut problems = Vec::new();

    // SYG with z = y under SRSWOR
    let (big_n, n) = (500usize, 60usize);
    let s = SamplingDesign::srswor(big_n, n)
        .unwrap()
        .draw(&pop, 3)
        .unwrap();
    let y: Vec<f64> = s.units().iter().map(|u| u.y).collect();
    let mean = y.iter().sum::<f64>() / n as f64;
    let s2 = y.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let f = n as f64 / big_n as f64;
    let textbook = (big_n * big_n) as f64 * (1.0 - f) * s2 / n as f64;
    let syg = survey::variance_syg(&y, &s).unwrap();
    let syg_gap = rel_gap(syg, textbook);
    if syg_gap > 1e-10 {
        problems.push(format!("SYG gap {syg_gap:.2e}"));
    }

    // Poisson HT reduces to the single sum
    let probs: Vec<f64> = (0..500).map(|i| 0.05 + 0.3 * (i as f64 / 499.0)).collect();
    let s = SamplingDesign::poisson(probs)
        .unwrap()
        .draw(&pop, 11)
        .unwrap();
    let z: Vec<f64> = s.units().iter().map(|u| u.y.ln()).collect();
    let single: f64 = s
        .units()
        .iter()
        .zip(&z)
        .map(|(u, zi)| (1.0 - u.pi) * (zi / u.pi) * (zi / u.pi))
        .sum();
    let ht = survey::variance_ht(&z, &s).unwrap();
    if ht != single {
        problems.push(format!("poisson HT {ht} vs single sum {single}"));
    }

    // census reproduces population values with zero variance
    let census = SamplingDesign::census(pop.len())
        .unwrap()
        .draw(&pop, 0)
        .unwrap();
    let m = DiscreteMeasure::from_values(&pop).unwrap();
    for kind in KINDS {
        let r = survey::estimate_with_variance(kind, &census, 0.95).unwrap();
        let truth = kind.value(&m).unwrap();
        if r.estimate != truth || r.variance != 0.0 || r.raw_variance != 0.0 {
            problems.push(format!(
                "census {kind}: estimate {} vs {truth}, variance {}",
                r.estimate, r.raw_variance
            ));
        }
    }

    let detail = if problems.is_empty() {
        format!("SYG gap {syg_gap:.2e}; poisson HT single sum exact; census exact")
    } else {
        problems.join("; ")
    };
    Outcome::new(problems.is_empty(), detail)
}

fn determinism() -> Outcome {
    let mut problems = Vec::new();
    for kind in KINDS {
        let config = SimulationConfig {
            population: PopulationSource::Generator(GeneratorSpec {
                distribution: Distribution::Pareto { shape: 2.5 },
                size: 300,
                seed: 5,
            }),
            design: DesignSpec::Srswor { sample_size: 40 },
            index: kind,
            replicates: 200,
            level: 0.9,
            master_seed: 99,
            linearize_at: LinearizationBase::Sample,
            keep_replicates: true,
        };
        let mut reference: Option<String> = None;
        for threads in [Some(1), Some(3), Some(8), None, Some(1)] {
            let (mut report, rows) = montecarlo::run_detailed(&config, threads).unwrap();
            report.timing = 0.0;
            let mut table = Vec::new();
            montecarlo::write_csv(&rows, &mut table).unwrap();
            let bits: Vec<u64> = rows
                .iter()
                .map(|r| r.estimate.unwrap_or(f64::NAN).to_bits())
                .collect();
            let fingerprint = format!(
                "{}\n{}\n{bits:?}",
                serde_json::to_string(&report).unwrap(),
                String::from_utf8(table).unwrap()
            );
            match &reference {
                None => reference = Some(fingerprint),
                Some(r) if *r != fingerprint => {
                    problems.push(format!("{kind} differs with threads = {threads:?}"));
                }
                _ => {}
            }
        }
    }
    Outcome::new(
        problems.is_empty(),
        if problems.is_empty() {
            "reports and replicate tables byte-identical over 5 runs with 1, 3, 8 and default threads".to_string()
        } else {
            problems.join("; ")
        },
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("closed form vs numerical derivative", closed_form_vs_oracle),
        ("closed form vs composition engine", closed_form_vs_engine),
        ("hand-derived fixtures", fixtures),
        ("invariants", invariants),
        ("linearized variance and coverage", linearization),
        ("survey variance algebra", survey_algebra),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let tag = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{tag} criterion {} ({name}): {}", i + 1, outcome.detail);
        failed += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
