//! Index values of a small weighted population.
//!
//! cargo run --example compute_indexes

use ineqlin::{DiscreteMeasure, IndexKind};

fn main() -> ineqlin::Result<()> {
    // (income, number of households)
    let m = DiscreteMeasure::new([
        (12.0, 30.0),
        (18.5, 45.0),
        (27.0, 15.0),
        (60.0, 8.0),
        (150.0, 2.0),
    ])?;
    println!("mass {} total {} mean {:.4}", m.mass(), m.total(), m.mean());

    for kind in [
        IndexKind::Gini,
        IndexKind::Amato,
        IndexKind::Zenga,
        IndexKind::Atkinson { epsilon: 0.5 },
        IndexKind::Atkinson { epsilon: 0.9 },
    ] {
        println!("{:>15}  {:.6}", kind.to_string(), kind.value(&m)?);
    }

    // ties are counted inclusively, so a perfectly equal population has Gini 1
    let equal = DiscreteMeasure::from_values(&[5.0; 10])?;
    println!(
        "gini of an equal population: {}",
        IndexKind::Gini.value(&equal)?
    );
    Ok(())
}
