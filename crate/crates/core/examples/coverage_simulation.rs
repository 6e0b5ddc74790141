//! Monte Carlo check of the linearized variance: empirical variance of the
//! plug-in estimator against the mean variance estimate, and CI coverage.
//!
//! cargo run --release --example coverage_simulation

use ineqlin::montecarlo::{
    run, summarize, write_csv, DesignSpec, Distribution, GeneratorSpec, LinearizationBase,
    PopulationSource, SimulationConfig,
};
use ineqlin::IndexKind;

fn main() -> ineqlin::Result<()> {
    let mut reports = Vec::new();
    for index in [IndexKind::Gini, IndexKind::Zenga] {
        for sample_size in [100, 400] {
            let config = SimulationConfig {
                population: PopulationSource::Generator(GeneratorSpec {
                    distribution: Distribution::Lognormal { sigma: 0.7 },
                    size: 2000,
                    seed: 9,
                }),
                design: DesignSpec::Srswor { sample_size },
                index,
                replicates: 1000,
                level: 0.95,
                master_seed: 2024,
                linearize_at: LinearizationBase::Sample,
                keep_replicates: false,
            };
            let r = run(&config)?;
            println!(
                "{index:>6} n={sample_size:<4} ratio {:.3}  coverage {:.3}  bias {:+.5}  ({:.2} s)",
                r.variance_ratio.unwrap_or(f64::NAN),
                r.coverage,
                r.bias,
                r.timing
            );
            reports.push(r);
        }
    }
    println!();
    write_csv(&summarize(&reports), std::io::stdout()).expect("stdout");
    Ok(())
}
