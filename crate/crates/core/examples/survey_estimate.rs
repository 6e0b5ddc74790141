//! Plug-in estimates with linearized standard errors under three designs.
//!
//! cargo run --example survey_estimate

use ineqlin::montecarlo::{Distribution, GeneratorSpec};
use ineqlin::survey::{estimate_with_variance, SamplingDesign};
use ineqlin::{DiscreteMeasure, IndexKind};

fn main() -> ineqlin::Result<()> {
    let population = GeneratorSpec {
        distribution: Distribution::Lognormal { sigma: 0.8 },
        size: 2000,
        seed: 1,
    }
    .generate()
    .expect("valid generator");
    let n = population.len();
    let kind = IndexKind::Atkinson { epsilon: 0.5 };
    let truth = kind.value(&DiscreteMeasure::from_values(&population)?)?;
    println!("population {kind}: {truth:.5}");

    let strata: Vec<usize> = population.iter().map(|&y| usize::from(y > 1.0)).collect();
    let designs = [
        SamplingDesign::srswor(n, 200)?,
        SamplingDesign::poisson_pps(&population, 200.0)?,
        SamplingDesign::stratified_srswor(strata, vec![80, 120])?,
    ];
    for design in designs {
        let sample = design.draw(&population, 42)?;
        let r = estimate_with_variance(kind, &sample, 0.95)?;
        println!(
            "{:>10} n={:<4} estimate {:.5}  se {:.5}  95% CI [{:.5}, {:.5}]  {:?}",
            design.name(),
            r.n_effective,
            r.estimate,
            r.std_error,
            r.ci[0],
            r.ci[1],
            r.method
        );
    }
    Ok(())
}
