//! Building a new functional from primitives and getting its influence for free.
//!
//! The squared coefficient of variation is `N * sum(y^2) / T^2 - 1`, i.e.
//! `psi_y(N, T) = N y^2 / T^2` integrated over M followed by `phi(F) = F - 1`.
//!
//! cargo run --example custom_functional

use ineqlin::engine::{euler_residual, gateaux_numeric_with, GateauxOptions};
use ineqlin::{
    ComponentFunctional, ComposedFunctional, DiscreteMeasure, IntegrandFamily, OuterMap,
};

fn main() -> ineqlin::Result<()> {
    let cv2 = ComposedFunctional::new(
        "cv^2",
        vec![ComponentFunctional::mass(), ComponentFunctional::total()],
        IntegrandFamily::new(
            |y, l| l[0] * y * y / (l[1] * l[1]),
            |y, l| vec![y * y / (l[1] * l[1]), -2.0 * l[0] * y * y / l[1].powi(3)],
        ),
        OuterMap::affine(1.0, -1.0),
        0.0,
    );

    let m = DiscreteMeasure::from_values(&[2.0, 3.0, 3.5, 8.0, 15.0])?;
    let mean = m.mean();
    let var = m.moment(2.0)? - mean * mean;
    println!(
        "cv^2 = {:.6} (direct: {:.6})",
        cv2.evaluate(&m)?,
        var / (mean * mean)
    );

    for u in [1.0, 3.0, 6.0, 30.0] {
        let analytic = cv2.influence(u, &m)?;
        let numeric = gateaux_numeric_with(&cv2, u, &m, GateauxOptions::default())?;
        println!("IF({u:>4}) = {analytic:>12.8}   numeric {numeric:>12.8}");
    }
    println!("Euler residual {:.1e}", euler_residual(&cv2, &m)?);

    // the coefficient of variation itself, through a different outer map
    let cv = cv2.with_outer(OuterMap::new(
        "sqrt(F - 1)",
        |f| (f - 1.0).sqrt(),
        |f| 0.5 / (f - 1.0).sqrt(),
    ));
    println!(
        "cv = {:.6}, IF(30) = {:.6}",
        cv.evaluate(&m)?,
        cv.influence(30.0, &m)?
    );
    Ok(())
}
