//! Gini, Amato, Zenga and Atkinson indexes of a finite population.
//!
//! Each index is available in two independent forms:
//!
//! * closed-form value and influence function ([`IndexKind::value`],
//!   [`IndexKind::influence_function`]), computed from the primitives of
//!   [`DiscreteMeasure`] with prefix sums so that a whole vector of
//!   influence values costs `O(m log m)`;
//! * an engine representation ([`IndexKind::composition`]) listing the
//!   component functionals, the integrand and its gradient, and the outer
//!   map, from which [`ComposedFunctional`] assembles the influence
//!   generically.
//!
//! The functionals are taken verbatim on the discrete measure. In
//! particular ties enter through `H_y` (`<=`) and `K_y` (`>=`), so the Gini
//! functional of a perfectly equal population is 1 rather than 0, and the
//! Zenga functional of a two-point population is 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::engine::{ComponentFunctional, ComposedFunctional, IntegrandFamily, OuterMap};
use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum IndexKind {
    Gini,
    Amato,
    Zenga,
    /// Inequality aversion `epsilon` in `[0, 1)`.
    Atkinson {
        epsilon: f64,
    },
}

impl fmt::Display for IndexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexKind::Atkinson { epsilon } => write!(f, "atkinson({epsilon})"),
            other => f.write_str(other.name()),
        }
    }
}

impl IndexKind {
    pub const ALL_NAMES: [&'static str; 4] = ["gini", "amato", "zenga", "atkinson"];

    pub fn name(&self) -> &'static str {
        match self {
            IndexKind::Gini => "gini",
            IndexKind::Amato => "amato",
            IndexKind::Zenga => "zenga",
            IndexKind::Atkinson { .. } => "atkinson",
        }
    }

    /// Parameter check independent of any measure.
    pub fn validate(&self) -> Result<()> {
        if let IndexKind::Atkinson { epsilon } = *self {
            if !(0.0..1.0).contains(&epsilon) {
                return Err(Error::domain(format!(
                    "atkinson epsilon must lie in [0, 1), got {epsilon}"
                )));
            }
        }
        Ok(())
    }

    /// Support conditions on the atom values of `m`.
    pub fn check_measure(&self, m: &DiscreteMeasure) -> Result<()> {
        self.validate()?;
        match self {
            IndexKind::Gini => {
                if m.min_value() < 0.0 {
                    return Err(Error::domain(format!(
                        "gini needs nonnegative values, found {}",
                        m.min_value()
                    )));
                }
                positive_total(m, "gini")
            }
            IndexKind::Amato => positive_total(m, "amato"),
            IndexKind::Zenga | IndexKind::Atkinson { .. } => {
                if m.min_value() <= 0.0 {
                    return Err(Error::domain(format!(
                        "{} needs positive values, found {}",
                        self.name(),
                        m.min_value()
                    )));
                }
                Ok(())
            }
        }
    }

    /// Whether a single value is admissible for this index.
    pub fn admits_value(&self, y: f64) -> bool {
        match self {
            IndexKind::Gini => y >= 0.0,
            IndexKind::Amato => true,
            IndexKind::Zenga | IndexKind::Atkinson { .. } => y > 0.0,
        }
    }

    /// Closed-form value of the index on `m`.
    pub fn value(&self, m: &DiscreteMeasure) -> Result<f64> {
        self.check_measure(m)?;
        let value = match *self {
            IndexKind::Gini => {
                let n = m.mass();
                let t = m.total();
                let s: f64 = m.atoms().map(|(y, w)| w * y * m.head_count(y)).sum();
                2.0 * s / (n * t) - 1.0
            }
            IndexKind::Amato => {
                let mu = m.mean();
                let t = m.total();
                m.atoms().map(|(y, w)| w * mu.hypot(y)).sum::<f64>() / t
            }
            IndexKind::Zenga => {
                let n = m.mass();
                let s: f64 = m
                    .atoms()
                    .map(|(y, w)| {
                        w * zenga_ratio(
                            n,
                            m.head_count(y),
                            m.upper_total(y),
                            m.mass_above(y),
                            m.total_below(y),
                        )
                    })
                    .sum();
                1.0 - s
            }
            IndexKind::Atkinson { epsilon } => {
                let f = atkinson_inner(m, epsilon)?;
                1.0 - f.powf(1.0 / (1.0 - epsilon))
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::domain(format!("{self} value is not finite")))
        }
    }

    /// Closed-form influence function on `m`, with per-measure sums
    /// precomputed.
    pub fn influence_function(&self, m: &DiscreteMeasure) -> Result<InfluenceFunction> {
        InfluenceFunction::new(*self, m)
    }

    /// Closed-form `IF(u; M)`.
    pub fn influence(&self, m: &DiscreteMeasure, u: f64) -> Result<f64> {
        self.influence_function(m)?.at(u)
    }

    /// Engine representation of the index.
    pub fn composition(&self) -> Result<ComposedFunctional> {
        self.validate()?;
        let kind = *self;
        let c = match kind {
            IndexKind::Gini => gini_composition(),
            IndexKind::Amato => amato_composition(),
            IndexKind::Zenga => zenga_composition(),
            IndexKind::Atkinson { epsilon } => atkinson_composition(epsilon),
        };
        Ok(c.with_domain(move |m| kind.check_measure(m)))
    }

    /// Value, closed-form influence and engine form together.
    pub fn analyze(&self, m: &DiscreteMeasure) -> Result<IndexResult> {
        Ok(IndexResult {
            value: self.value(m)?,
            influence: self.influence_function(m)?,
            composition: self.composition()?,
        })
    }
}

fn positive_total(m: &DiscreteMeasure, name: &str) -> Result<()> {
    if m.total() > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} needs a positive total, got {}",
            m.total()
        )))
    }
}

// (N - H)(T - K) / (N H K), with the complements passed in directly so that
// the boundary terms vanish exactly instead of producing 0/0.
fn zenga_ratio(n: f64, h: f64, k: f64, mass_above: f64, total_below: f64) -> f64 {
    if mass_above == 0.0 || total_below == 0.0 {
        0.0
    } else {
        mass_above * total_below / (n * h * k)
    }
}

// mu_{1-eps} / mu^{1-eps}
fn atkinson_inner(m: &DiscreteMeasure, epsilon: f64) -> Result<f64> {
    let r = 1.0 - epsilon;
    Ok(m.moment(r)? / m.mean().powf(r))
}

/// Value, influence function and engine form of one index on one measure.
#[derive(Debug, Clone)]
pub struct IndexResult {
    pub value: f64,
    pub influence: InfluenceFunction,
    pub composition: ComposedFunctional,
}

impl IndexResult {
    pub fn influence_at(&self, u: f64) -> Result<f64> {
        self.influence.at(u)
    }
}

#[derive(Debug, Clone)]
enum Precomputed {
    Gini {
        value: f64,
    },
    Amato {
        // sum w / sqrt(mu^2 + y^2)
        inverse_sum: f64,
        // sum w y^2 / sqrt(mu^2 + y^2)
        square_sum: f64,
    },
    Zenga {
        // suffix sums over atoms of w (T - K_y) / (H_y^2 K_y)
        head_terms: Vec<f64>,
        // prefix sums over atoms of w (N - H_y) / (H_y K_y^2)
        upper_terms: Vec<f64>,
        // sum w (T - K_y) / K_y
        mass_sum: f64,
        // sum w (N - H_y) / (H_y K_y)
        total_sum: f64,
    },
    Atkinson {
        epsilon: f64,
        value: f64,
        moment: f64,
    },
}

/// Closed-form influence function `u -> IF(u; M)` of an index.
#[derive(Debug, Clone)]
pub struct InfluenceFunction {
    kind: IndexKind,
    measure: DiscreteMeasure,
    pre: Precomputed,
}

impl InfluenceFunction {
    pub fn new(kind: IndexKind, m: &DiscreteMeasure) -> Result<Self> {
        let value = kind.value(m)?;
        let pre = match kind {
            IndexKind::Gini => Precomputed::Gini { value },
            IndexKind::Amato => {
                let mu = m.mean();
                let (inverse_sum, square_sum) = m.atoms().fold((0.0, 0.0), |(a, b), (y, w)| {
                    let r = mu.hypot(y);
                    (a + w / r, b + w * y * y / r)
                });
                Precomputed::Amato {
                    inverse_sum,
                    square_sum,
                }
            }
            IndexKind::Zenga => {
                let len = m.len();
                let mut head_terms = vec![0.0; len + 1];
                let mut upper_terms = vec![0.0; len + 1];
                let mut mass_sum = 0.0;
                let mut total_sum = 0.0;
                let atoms: Vec<(f64, f64)> = m.atoms().collect();
                for (i, &(y, w)) in atoms.iter().enumerate() {
                    let h = m.head_count(y);
                    let k = m.upper_total(y);
                    let above = m.mass_above(y);
                    let below = m.total_below(y);
                    upper_terms[i + 1] = upper_terms[i] + w * above / (h * k * k);
                    mass_sum += w * below / k;
                    total_sum += w * above / (h * k);
                }
                for (i, &(y, w)) in atoms.iter().enumerate().rev() {
                    let h = m.head_count(y);
                    let k = m.upper_total(y);
                    head_terms[i] = head_terms[i + 1] + w * m.total_below(y) / (h * h * k);
                }
                Precomputed::Zenga {
                    head_terms,
                    upper_terms,
                    mass_sum,
                    total_sum,
                }
            }
            IndexKind::Atkinson { epsilon } => Precomputed::Atkinson {
                epsilon,
                value,
                moment: m.moment(1.0 - epsilon)?,
            },
        };
        Ok(InfluenceFunction {
            kind,
            measure: m.clone(),
            pre,
        })
    }

    pub fn kind(&self) -> IndexKind {
        self.kind
    }

    pub fn measure(&self) -> &DiscreteMeasure {
        &self.measure
    }

    /// `IF(u; M)`. Zenga and Atkinson need `u > 0`.
    pub fn at(&self, u: f64) -> Result<f64> {
        if !u.is_finite() {
            return Err(Error::NonFiniteValue(u));
        }
        if matches!(self.kind, IndexKind::Zenga | IndexKind::Atkinson { .. }) && u <= 0.0 {
            return Err(Error::domain(format!(
                "{} influence needs u > 0, got {u}",
                self.kind.name()
            )));
        }
        let m = &self.measure;
        let n = m.mass();
        let t = m.total();
        let mu = t / n;
        let value = match &self.pre {
            Precomputed::Gini { value } => {
                2.0 / (n * t) * (u * m.head_count(u) + m.upper_total(u))
                    - (value + 1.0) * (1.0 / n + u / t)
            }
            Precomputed::Amato {
                inverse_sum,
                square_sum,
            } => mu.hypot(u) / t - mu / (n * n) * inverse_sum - u / (t * t) * square_sum,
            Precomputed::Zenga {
                head_terms,
                upper_terms,
                mass_sum,
                total_sum,
            } => {
                let own = zenga_ratio(
                    n,
                    m.head_count(u),
                    m.upper_total(u),
                    m.mass_above(u),
                    m.total_below(u),
                );
                // atoms y >= u
                let ge = m.values().partition_point(|&v| v < u);
                // atoms y <= u
                let le = m.values().partition_point(|&v| v <= u);
                -own + head_terms[ge] + mu * u * upper_terms[le]
                    - mass_sum / (n * n)
                    - u / n * total_sum
            }
            Precomputed::Atkinson {
                epsilon,
                value,
                moment,
            } => {
                let e = *epsilon;
                (1.0 - value) / n
                    * (-u.powf(1.0 - e) / ((1.0 - e) * moment) + u / mu + e / (1.0 - e))
            }
        };
        Ok(value)
    }

    /// Influence at every atom, in increasing value order.
    pub fn at_atoms(&self) -> Result<Vec<f64>> {
        self.measure.values().iter().map(|&y| self.at(y)).collect()
    }
}

pub fn gini_value(m: &DiscreteMeasure) -> Result<f64> {
    IndexKind::Gini.value(m)
}

pub fn gini_influence(m: &DiscreteMeasure, u: f64) -> Result<f64> {
    IndexKind::Gini.influence(m, u)
}

pub fn amato_value(m: &DiscreteMeasure) -> Result<f64> {
    IndexKind::Amato.value(m)
}

pub fn amato_influence(m: &DiscreteMeasure, u: f64) -> Result<f64> {
    IndexKind::Amato.influence(m, u)
}

pub fn zenga_value(m: &DiscreteMeasure) -> Result<f64> {
    IndexKind::Zenga.value(m)
}

pub fn zenga_influence(m: &DiscreteMeasure, u: f64) -> Result<f64> {
    IndexKind::Zenga.influence(m, u)
}

pub fn atkinson_value(m: &DiscreteMeasure, epsilon: f64) -> Result<f64> {
    IndexKind::Atkinson { epsilon }.value(m)
}

pub fn atkinson_influence(m: &DiscreteMeasure, u: f64, epsilon: f64) -> Result<f64> {
    IndexKind::Atkinson { epsilon }.influence(m, u)
}

/// Engine form of `kind`, after checking that `m` lies in its domain.
pub fn as_composition(kind: IndexKind, m: &DiscreteMeasure) -> Result<ComposedFunctional> {
    kind.check_measure(m)?;
    kind.composition()
}

// L_y = (H_y, N, T), psi_y = 2 y H / (N T), phi(F) = F - 1
fn gini_composition() -> ComposedFunctional {
    ComposedFunctional::new(
        "gini",
        vec![
            ComponentFunctional::head_count(),
            ComponentFunctional::mass(),
            ComponentFunctional::total(),
        ],
        IntegrandFamily::new(
            |y, l| 2.0 * y * l[0] / (l[1] * l[2]),
            |y, l| {
                let (h, n, t) = (l[0], l[1], l[2]);
                let c = 2.0 * y / (n * t);
                vec![c, -c * h / n, -c * h / t]
            },
        ),
        OuterMap::affine(1.0, -1.0),
        0.0,
    )
}

// L_y = (N, T), psi_y = sqrt(1/N^2 + y^2/T^2), phi(F) = F
fn amato_composition() -> ComposedFunctional {
    ComposedFunctional::new(
        "amato",
        vec![ComponentFunctional::mass(), ComponentFunctional::total()],
        IntegrandFamily::new(
            |y, l| (1.0 / (l[0] * l[0]) + y * y / (l[1] * l[1])).sqrt(),
            |y, l| {
                let (n, t) = (l[0], l[1]);
                let mu = t / n;
                let c = t / (mu * mu + y * y).sqrt();
                vec![-c / (n * n * n), -c * y * y / (t * t * t)]
            },
        ),
        OuterMap::identity(),
        0.0,
    )
}

// L_y = (H_y, K_y, N, T), psi_y = (N - H)(T - K) / (N H K), phi(F) = 1 - F
fn zenga_composition() -> ComposedFunctional {
    ComposedFunctional::new(
        "zenga",
        vec![
            ComponentFunctional::head_count(),
            ComponentFunctional::upper_total(),
            ComponentFunctional::mass(),
            ComponentFunctional::total(),
        ],
        IntegrandFamily::new(
            |_, l| {
                let (h, k, n, t) = (l[0], l[1], l[2], l[3]);
                let (a, b) = (n - h, t - k);
                if a == 0.0 || b == 0.0 {
                    0.0
                } else {
                    a * b / (n * h * k)
                }
            },
            |_, l| {
                let (h, k, n, t) = (l[0], l[1], l[2], l[3]);
                let mu = t / n;
                vec![
                    -(t - k) / (h * h * k),
                    -mu * (n - h) / (h * k * k),
                    (t - k) / (n * n * k),
                    (n - h) / (n * h * k),
                ]
            },
        ),
        OuterMap::affine(-1.0, 1.0),
        0.0,
    )
}

// L_y = (N, T), psi_y = y^(1-e) / (N^e T^(1-e)), phi(F) = 1 - F^(1/(1-e))
fn atkinson_composition(epsilon: f64) -> ComposedFunctional {
    let r = 1.0 - epsilon;
    ComposedFunctional::new(
        format!("atkinson({epsilon})"),
        vec![ComponentFunctional::mass(), ComponentFunctional::total()],
        IntegrandFamily::new(
            move |y, l| y.powf(r) / (l[0].powf(epsilon) * l[1].powf(r)),
            move |y, l| {
                let (n, t) = (l[0], l[1]);
                let psi = y.powf(r) / (n.powf(epsilon) * t.powf(r));
                vec![-psi * epsilon / n, -psi * r / t]
            },
        ),
        OuterMap::new(
            format!("1 - F^(1/{r})"),
            move |f| 1.0 - f.powf(1.0 / r),
            move |f| -f.powf(epsilon / r) / r,
        ),
        0.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit(values: &[f64]) -> DiscreteMeasure {
        DiscreteMeasure::from_values(values).unwrap()
    }

    const ALL: [IndexKind; 5] = [
        IndexKind::Gini,
        IndexKind::Amato,
        IndexKind::Zenga,
        IndexKind::Atkinson { epsilon: 0.5 },
        IndexKind::Atkinson { epsilon: 0.2 },
    ];

    #[test]
    fn gini_fixtures() {
        let m = unit(&[1.0, 2.0, 3.0]);
        assert_relative_eq!(gini_value(&m).unwrap(), 5.0 / 9.0, max_relative = 1e-15);
        assert!(gini_influence(&m, 1.0).unwrap().abs() < 1e-15);
        assert_relative_eq!(
            gini_influence(&m, 2.0).unwrap(),
            -1.0 / 27.0,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            gini_influence(&m, 3.0).unwrap(),
            1.0 / 27.0,
            max_relative = 1e-13
        );
        let scaled = unit(&[3.5, 7.0, 10.5]);
        assert_relative_eq!(
            gini_value(&scaled).unwrap(),
            5.0 / 9.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn gini_of_equal_population_is_one() {
        assert_eq!(gini_value(&unit(&[4.0; 6])).unwrap(), 1.0);
    }

    #[test]
    fn amato_fixtures() {
        let eq = unit(&[2.5; 5]);
        assert_relative_eq!(amato_value(&eq).unwrap(), 2f64.sqrt(), max_relative = 1e-15);
        assert!(amato_influence(&eq, 2.5).unwrap().abs() < 1e-15);
        let m = unit(&[1.0, 3.0]);
        let expected = 5f64.sqrt() / 4.0 + 13f64.sqrt() / 4.0;
        assert_relative_eq!(amato_value(&m).unwrap(), expected, max_relative = 1e-15);
        assert_relative_eq!(amato_value(&m).unwrap(), 1.460_404_813, max_relative = 1e-9);
    }

    #[test]
    fn zenga_fixtures() {
        assert_eq!(zenga_value(&unit(&[1.0, 2.0])).unwrap(), 1.0);
        assert_relative_eq!(
            zenga_value(&unit(&[1.0, 2.0, 3.0])).unwrap(),
            29.0 / 30.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn atkinson_fixtures() {
        let m = unit(&[1.0, 4.0]);
        assert_relative_eq!(atkinson_value(&m, 0.5).unwrap(), 0.1, max_relative = 1e-14);
        assert_relative_eq!(
            atkinson_influence(&m, 1.0, 0.5).unwrap(),
            0.03,
            max_relative = 1e-13
        );
        assert_relative_eq!(
            atkinson_influence(&m, 4.0, 0.5).unwrap(),
            -0.03,
            max_relative = 1e-13
        );
        assert_eq!(atkinson_value(&m, 0.0).unwrap(), 0.0);
        let r = unit(&[0.3, 1.7, 2.2, 9.0]);
        assert_eq!(atkinson_value(&r, 0.0).unwrap(), 0.0);
        for u in [0.1, 1.0, 5.0] {
            assert_eq!(atkinson_influence(&r, u, 0.0).unwrap(), 0.0);
        }
        for eps in [0.0, 0.3, 0.9] {
            assert!(atkinson_value(&unit(&[3.0; 4]), eps).unwrap().abs() < 1e-15);
        }
    }

    #[test]
    fn preconditions() {
        let neg = unit(&[-1.0, 2.0, 3.0]);
        assert!(matches!(zenga_value(&neg), Err(Error::Domain(_))));
        assert!(matches!(atkinson_value(&neg, 0.5), Err(Error::Domain(_))));
        assert!(matches!(gini_value(&neg), Err(Error::Domain(_))));
        assert!(amato_value(&neg).is_ok());
        assert!(matches!(
            amato_value(&unit(&[-3.0, 1.0])),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            gini_value(&unit(&[0.0, 0.0])),
            Err(Error::Domain(_))
        ));
        let m = unit(&[1.0, 2.0]);
        assert!(matches!(atkinson_value(&m, 1.0), Err(Error::Domain(_))));
        assert!(matches!(atkinson_value(&m, -0.1), Err(Error::Domain(_))));
        assert!(IndexKind::Atkinson { epsilon: 1.0 }.composition().is_err());
        assert!(matches!(zenga_influence(&m, 0.0), Err(Error::Domain(_))));
        assert!(matches!(
            as_composition(IndexKind::Zenga, &neg),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn zenga_boundary_terms_vanish_off_the_support() {
        let m = unit(&[1.0, 2.0, 3.0]);
        let c = IndexKind::Zenga.composition().unwrap();
        for u in [0.5, 3.5] {
            let closed = zenga_influence(&m, u).unwrap();
            let engine = c.influence(u, &m).unwrap();
            assert!(closed.is_finite());
            assert!((closed - engine).abs() < 1e-14);
        }
    }

    #[test]
    fn closed_form_matches_engine_on_small_measures() {
        let m =
            DiscreteMeasure::new([(0.7, 1.5), (1.9, 0.5), (2.0, 3.0), (6.4, 1.0), (11.0, 0.25)])
                .unwrap();
        for kind in ALL {
            let c = kind.composition().unwrap();
            assert_relative_eq!(
                kind.value(&m).unwrap(),
                c.evaluate(&m).unwrap(),
                max_relative = 1e-12
            );
            for u in [0.5, 0.7, 1.0, 1.9, 2.0, 4.0, 6.4, 11.0, 13.0] {
                let closed = kind.influence(&m, u).unwrap();
                let engine = c.influence(u, &m).unwrap();
                assert_relative_eq!(closed, engine, max_relative = 1e-10, epsilon = 1e-15);
            }
        }
    }

    #[test]
    fn gradients_match_finite_differences() {
        let m = unit(&[0.5, 1.5, 2.0, 4.5, 7.0]);
        for kind in ALL {
            let c = kind.composition().unwrap();
            for &y in m.values() {
                let l: Vec<f64> = c.components().iter().map(|comp| comp.eval(&m, y)).collect();
                let grad = c.psi().gradient(y, &l);
                assert_eq!(grad.len(), l.len());
                for j in 0..l.len() {
                    let h = 1e-6 * l[j].abs().max(1.0);
                    let mut up = l.clone();
                    let mut down = l.clone();
                    up[j] += h;
                    down[j] -= h;
                    let fd = (c.psi().eval(y, &up) - c.psi().eval(y, &down)) / (2.0 * h);
                    assert!(
                        (fd - grad[j]).abs() <= 1e-6 * grad[j].abs().max(1e-8),
                        "{kind} y={y} j={j}: {fd} vs {}",
                        grad[j]
                    );
                }
            }
            let outer = c.outer();
            for f in [0.3, 0.9, 1.4] {
                let h = 1e-6;
                let fd = (outer.eval(f + h) - outer.eval(f - h)) / (2.0 * h);
                assert_relative_eq!(fd, outer.derivative(f), max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn influence_function_reuse_matches_single_calls() {
        let m = unit(&[0.4, 1.1, 1.1, 2.5, 8.0]);
        for kind in ALL {
            let f = kind.influence_function(&m).unwrap();
            let all = f.at_atoms().unwrap();
            for (&y, &z) in m.values().iter().zip(&all) {
                assert_eq!(z, kind.influence(&m, y).unwrap());
            }
        }
    }

    #[test]
    fn index_kind_json_shape() {
        let k: IndexKind = serde_json::from_str(r#"{"kind":"atkinson","epsilon":0.5}"#).unwrap();
        assert_eq!(k, IndexKind::Atkinson { epsilon: 0.5 });
        let g: IndexKind = serde_json::from_str(r#"{"kind":"gini"}"#).unwrap();
        assert_eq!(g, IndexKind::Gini);
        assert_eq!(k.to_string(), "atkinson(0.5)");
    }
}
