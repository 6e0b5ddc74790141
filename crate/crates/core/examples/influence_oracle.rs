//! Closed-form influence functions next to a numerical Gateaux derivative.
//!
//! cargo run --example influence_oracle

use ineqlin::engine::{gateaux_numeric_with, GateauxOptions};
use ineqlin::{DiscreteMeasure, IndexKind};

fn main() -> ineqlin::Result<()> {
    let m = DiscreteMeasure::from_values(&[0.6, 1.1, 1.9, 2.4, 3.8, 7.5, 12.0])?;
    let grid = [0.3, 1.1, 1.5, 3.8, 5.0, 12.0, 20.0];

    for kind in [
        IndexKind::Gini,
        IndexKind::Amato,
        IndexKind::Zenga,
        IndexKind::Atkinson { epsilon: 0.5 },
    ] {
        let result = kind.analyze(&m)?;
        println!("{kind}: value {:.6}", result.value);
        println!(
            "  {:>6} {:>14} {:>14} {:>10}",
            "u", "closed form", "numeric", "gap"
        );
        for u in grid {
            let closed = result.influence.at(u)?;
            let numeric =
                gateaux_numeric_with(&result.composition, u, &m, GateauxOptions::default())?;
            println!(
                "  {u:>6} {closed:>14.8} {numeric:>14.8} {:>10.1e}",
                (closed - numeric).abs()
            );
        }
        // degree-0 homogeneity: the influence integrates to zero
        let euler: f64 = m
            .weights()
            .iter()
            .zip(result.influence.at_atoms()?)
            .map(|(w, z)| w * z)
            .sum();
        println!("  sum of weight * IF over atoms: {euler:.1e}");
    }
    Ok(())
}
