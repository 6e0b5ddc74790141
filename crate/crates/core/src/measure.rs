//! Discrete measures on the real line.
//!
//! A [`DiscreteMeasure`] is a finite sum of weighted Dirac masses. With unit
//! weights it is the population measure; with weights `1/pi_i` it is the
//! Horvitz-Thompson empirical measure of a sample.
//!
//! Atoms are stored sorted by value with coincident values merged, together
//! with prefix and suffix sums of `weight` and `weight * value`. Every
//! primitive functional is then a binary search plus an array lookup.
//!
//! Ties follow the indicator conventions of the primitives: [`head_count`]
//! counts atoms with value `<= y` and [`upper_total`] sums atoms with value
//! `>= y`, so an atom sitting exactly at `y` is counted by both.
//!
//! [`head_count`]: DiscreteMeasure::head_count
//! [`upper_total`]: DiscreteMeasure::upper_total

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteMeasure {
    values: Vec<f64>,
    weights: Vec<f64>,
    // prefix_mass[i] = sum of weights[..i]
    prefix_mass: Vec<f64>,
    // suffix_mass[i] = sum of weights[i..]
    suffix_mass: Vec<f64>,
    // prefix_total[i] = sum of weights[..i] * values[..i]
    prefix_total: Vec<f64>,
    // suffix_total[i] = sum of weights[i..] * values[i..]
    suffix_total: Vec<f64>,
}

impl DiscreteMeasure {
    /// Builds a measure from `(value, weight)` atoms. Values must be finite
    /// and weights finite and strictly positive. Atom order is irrelevant.
    pub fn new<I>(atoms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let atoms: Vec<(f64, f64)> = atoms.into_iter().collect();
        for &(value, weight) in &atoms {
            if !value.is_finite() {
                return Err(Error::NonFiniteValue(value));
            }
            if !(weight.is_finite() && weight > 0.0) {
                return Err(Error::InvalidWeight { value, weight });
            }
        }
        Self::from_signed_atoms(atoms)
    }

    /// Unit-weight measure: one Dirac mass per entry of `values`.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| (v, 1.0)))
    }

    // Accepts signed weights; callers guarantee finiteness.
    fn from_signed_atoms(mut atoms: Vec<(f64, f64)>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::EmptyMeasure);
        }
        atoms.sort_by(|a, b| a.0.total_cmp(&b.0));

        let mut values: Vec<f64> = Vec::with_capacity(atoms.len());
        let mut weights: Vec<f64> = Vec::with_capacity(atoms.len());
        for (value, weight) in atoms {
            match values.last() {
                Some(&last) if last == value => *weights.last_mut().unwrap() += weight,
                _ => {
                    values.push(value);
                    weights.push(weight);
                }
            }
        }
        // A signed perturbation can cancel an atom exactly.
        let (values, weights): (Vec<f64>, Vec<f64>) = values
            .into_iter()
            .zip(weights)
            .filter(|&(_, w)| w != 0.0)
            .unzip();
        if values.is_empty() {
            return Err(Error::EmptyMeasure);
        }

        let m = values.len();
        let mut prefix_mass = vec![0.0; m + 1];
        let mut prefix_total = vec![0.0; m + 1];
        for i in 0..m {
            prefix_mass[i + 1] = prefix_mass[i] + weights[i];
            prefix_total[i + 1] = prefix_total[i] + weights[i] * values[i];
        }
        let mut suffix_mass = vec![0.0; m + 1];
        let mut suffix_total = vec![0.0; m + 1];
        for i in (0..m).rev() {
            suffix_mass[i] = suffix_mass[i + 1] + weights[i];
            suffix_total[i] = suffix_total[i + 1] + weights[i] * values[i];
        }

        let measure = DiscreteMeasure {
            values,
            weights,
            prefix_mass,
            suffix_mass,
            prefix_total,
            suffix_total,
        };
        if measure.mass().is_nan() || measure.mass() <= 0.0 {
            return Err(Error::NonPositiveMass(measure.mass()));
        }
        Ok(measure)
    }

    /// Number of distinct atom locations.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sorted distinct atom locations.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `(value, weight)` pairs in increasing value order.
    pub fn atoms(&self) -> impl ExactSizeIterator<Item = (f64, f64)> + '_ {
        self.values
            .iter()
            .copied()
            .zip(self.weights.iter().copied())
    }

    pub fn min_value(&self) -> f64 {
        self.values[0]
    }

    pub fn max_value(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Total mass `N(M)`.
    pub fn mass(&self) -> f64 {
        self.prefix_mass[self.values.len()]
    }

    /// Total `T(M) = sum weight * value`.
    pub fn total(&self) -> f64 {
        self.suffix_total[0]
    }

    /// Mean `T/N`.
    pub fn mean(&self) -> f64 {
        self.total() / self.mass()
    }

    // Number of atoms with value <= y.
    fn count_le(&self, y: f64) -> usize {
        self.values.partition_point(|&v| v <= y)
    }

    // Number of atoms with value < y.
    fn count_lt(&self, y: f64) -> usize {
        self.values.partition_point(|&v| v < y)
    }

    /// `H_y(M)`: mass of atoms with value `<= y`.
    pub fn head_count(&self, y: f64) -> f64 {
        self.prefix_mass[self.count_le(y)]
    }

    /// `K_y(M)`: sum of `weight * value` over atoms with value `>= y`.
    pub fn upper_total(&self, y: f64) -> f64 {
        self.suffix_total[self.count_lt(y)]
    }

    /// Mass of atoms with value `> y`, i.e. `N - H_y` without cancellation.
    /// Exactly zero for `y >= max_value`.
    pub fn mass_above(&self, y: f64) -> f64 {
        self.suffix_mass[self.count_le(y)]
    }

    /// Sum of `weight * value` over atoms with value `< y`, i.e. `T - K_y`
    /// without cancellation. Exactly zero for `y <= min_value`.
    pub fn total_below(&self, y: f64) -> f64 {
        self.prefix_total[self.count_lt(y)]
    }

    /// Mass-weighted mean of `y^r`. Non-integer orders need positive values.
    pub fn moment(&self, r: f64) -> Result<f64> {
        if !r.is_finite() {
            return Err(Error::domain(format!("moment order {r} is not finite")));
        }
        if r == 1.0 {
            return Ok(self.mean());
        }
        let integer_order = r.fract() == 0.0 && r.abs() <= i32::MAX as f64;
        if !integer_order && self.min_value() <= 0.0 {
            return Err(Error::domain(format!(
                "moment of non-integer order {r} needs positive values, found {}",
                self.min_value()
            )));
        }
        let sum: f64 = if integer_order {
            let k = r as i32;
            self.atoms().map(|(v, w)| w * v.powi(k)).sum()
        } else {
            self.atoms().map(|(v, w)| w * v.powf(r)).sum()
        };
        Ok(sum / self.mass())
    }

    /// `M + t * delta_u`. `t` may be negative (signed perturbation for
    /// central differences); the result may then hold an atom of negative
    /// weight, but its total mass must stay positive.
    pub fn add_mass(&self, u: f64, t: f64) -> Result<Self> {
        if !u.is_finite() {
            return Err(Error::NonFiniteValue(u));
        }
        if !t.is_finite() {
            return Err(Error::InvalidWeight {
                value: u,
                weight: t,
            });
        }
        let new_mass = self.mass() + t;
        if new_mass.is_nan() || new_mass <= 0.0 {
            return Err(Error::NonPositiveMass(new_mass));
        }
        let mut atoms: Vec<(f64, f64)> = self.atoms().collect();
        atoms.push((u, t));
        Self::from_signed_atoms(atoms)
    }

    /// `c * M` for `c > 0`.
    pub fn scale_weights(&self, c: f64) -> Result<Self> {
        if !(c.is_finite() && c > 0.0) {
            return Err(Error::domain(format!(
                "weight scale {c} must be finite and > 0"
            )));
        }
        Self::from_signed_atoms(self.atoms().map(|(v, w)| (v, w * c)).collect())
    }

    /// Image measure under `y -> lambda * y`.
    pub fn scale_values(&self, lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::domain(format!(
                "value scale {lambda} must be finite and > 0"
            )));
        }
        Self::from_signed_atoms(self.atoms().map(|(v, w)| (v * lambda, w)).collect())
    }

    /// True if every stored atom weight is strictly positive.
    pub fn has_positive_weights(&self) -> bool {
        self.weights.iter().all(|&w| w > 0.0)
    }
}
