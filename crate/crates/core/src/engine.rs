//! Functionals of the form `F(M) = phi( sum_y w_y * psi_y(L_y(M)) )`.
//!
//! A [`ComposedFunctional`] bundles the component functionals `L_y`, the
//! integrand family `psi_y` with its gradient, and an outer map `phi`. Its
//! influence function is assembled from those pieces:
//!
//! ```text
//! IF(u; M) = phi'(F) * [ psi_u(L_u(M)) + sum_y w_y * grad psi_y(L_y(M)) . IF_{L_y}(u; M) ]
//! ```
//!
//! where the bracket is the influence of the inner integral and the factor
//! `phi'(F)` is the chain rule for the outer map. The integral over `M` is an
//! exact sum over atoms.
//!
//! [`gateaux_numeric`] differentiates `t -> F(M + t delta_u)` numerically and
//! is the independent check on the assembled influence.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::measure::DiscreteMeasure;

type ComponentEvalFn = dyn Fn(&DiscreteMeasure, f64) -> f64 + Send + Sync;
type ComponentInfluenceFn = dyn Fn(&DiscreteMeasure, f64, f64) -> f64 + Send + Sync;
type IntegrandFn = dyn Fn(f64, &[f64]) -> f64 + Send + Sync;
type GradientFn = dyn Fn(f64, &[f64]) -> Vec<f64> + Send + Sync;
type ScalarFn = dyn Fn(f64) -> f64 + Send + Sync;
type DomainFn = dyn Fn(&DiscreteMeasure) -> Result<()> + Send + Sync;

/// One coordinate `L_{j,y}` of the component vector, with its influence
/// `IF_{L_{j,y}}(u; M)`.
#[derive(Clone)]
pub struct ComponentFunctional {
    label: String,
    eval: Arc<ComponentEvalFn>,
    influence: Arc<ComponentInfluenceFn>,
}

impl ComponentFunctional {
    /// `eval(m, y)` returns `L_y(M)`; `influence(m, y, u)` returns
    /// `IF_{L_y}(u; M)`.
    pub fn new<E, I>(label: impl Into<String>, eval: E, influence: I) -> Self
    where
        E: Fn(&DiscreteMeasure, f64) -> f64 + Send + Sync + 'static,
        I: Fn(&DiscreteMeasure, f64, f64) -> f64 + Send + Sync + 'static,
    {
        ComponentFunctional {
            label: label.into(),
            eval: Arc::new(eval),
            influence: Arc::new(influence),
        }
    }

    /// `N(M)`, influence 1.
    pub fn mass() -> Self {
        Self::new("N", |m, _| m.mass(), |_, _, _| 1.0)
    }

    /// `T(M)`, influence `u`.
    pub fn total() -> Self {
        Self::new("T", |m, _| m.total(), |_, _, u| u)
    }

    /// `H_y(M)`, influence `1[u <= y]`.
    pub fn head_count() -> Self {
        Self::new(
            "H_y",
            |m, y| m.head_count(y),
            |_, y, u| if u <= y { 1.0 } else { 0.0 },
        )
    }

    /// `K_y(M)`, influence `u * 1[u >= y]`.
    pub fn upper_total() -> Self {
        Self::new(
            "K_y",
            |m, y| m.upper_total(y),
            |_, y, u| if u >= y { u } else { 0.0 },
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, m: &DiscreteMeasure, y: f64) -> f64 {
        (self.eval)(m, y)
    }

    pub fn influence(&self, m: &DiscreteMeasure, y: f64, u: f64) -> f64 {
        (self.influence)(m, y, u)
    }
}

impl fmt::Debug for ComponentFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ComponentFunctional")
            .field(&self.label)
            .finish()
    }
}

/// `psi_y(l)` and its gradient in `l`.
#[derive(Clone)]
pub struct IntegrandFamily {
    eval: Arc<IntegrandFn>,
    gradient: Arc<GradientFn>,
}

impl IntegrandFamily {
    pub fn new<E, G>(eval: E, gradient: G) -> Self
    where
        E: Fn(f64, &[f64]) -> f64 + Send + Sync + 'static,
        G: Fn(f64, &[f64]) -> Vec<f64> + Send + Sync + 'static,
    {
        IntegrandFamily {
            eval: Arc::new(eval),
            gradient: Arc::new(gradient),
        }
    }

    pub fn eval(&self, y: f64, l: &[f64]) -> f64 {
        (self.eval)(y, l)
    }

    pub fn gradient(&self, y: f64, l: &[f64]) -> Vec<f64> {
        (self.gradient)(y, l)
    }
}

impl fmt::Debug for IntegrandFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("IntegrandFamily")
    }
}

/// Smooth outer map `phi` with derivative.
#[derive(Clone)]
pub struct OuterMap {
    label: String,
    eval: Arc<ScalarFn>,
    derivative: Arc<ScalarFn>,
}

impl OuterMap {
    pub fn new<E, D>(label: impl Into<String>, eval: E, derivative: D) -> Self
    where
        E: Fn(f64) -> f64 + Send + Sync + 'static,
        D: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        OuterMap {
            label: label.into(),
            eval: Arc::new(eval),
            derivative: Arc::new(derivative),
        }
    }

    pub fn identity() -> Self {
        Self::new("F", |f| f, |_| 1.0)
    }

    /// `phi(F) = scale * F + offset`.
    pub fn affine(scale: f64, offset: f64) -> Self {
        Self::new(
            format!("{scale} * F + {offset}"),
            move |f| scale * f + offset,
            move |_| scale,
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, f: f64) -> f64 {
        (self.eval)(f)
    }

    pub fn derivative(&self, f: f64) -> f64 {
        (self.derivative)(f)
    }
}

impl fmt::Debug for OuterMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("OuterMap").field(&self.label).finish()
    }
}

/// `phi( integral psi_y(L_y(M)) dM(y) )` together with its declared degree
/// of homogeneity in `M`.
#[derive(Clone)]
pub struct ComposedFunctional {
    label: String,
    components: Vec<ComponentFunctional>,
    psi: IntegrandFamily,
    outer: OuterMap,
    homogeneity_degree: f64,
    domain: Option<Arc<DomainFn>>,
}

impl fmt::Debug for ComposedFunctional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ComposedFunctional")
            .field("label", &self.label)
            .field("components", &self.components)
            .field("outer", &self.outer)
            .field("homogeneity_degree", &self.homogeneity_degree)
            .finish()
    }
}

impl ComposedFunctional {
    pub fn new(
        label: impl Into<String>,
        components: Vec<ComponentFunctional>,
        psi: IntegrandFamily,
        outer: OuterMap,
        homogeneity_degree: f64,
    ) -> Self {
        ComposedFunctional {
            label: label.into(),
            components,
            psi,
            outer,
            homogeneity_degree,
            domain: None,
        }
    }

    /// Attaches a precondition checked before every evaluation.
    pub fn with_domain<D>(mut self, check: D) -> Self
    where
        D: Fn(&DiscreteMeasure) -> Result<()> + Send + Sync + 'static,
    {
        self.domain = Some(Arc::new(check));
        self
    }

    /// Same inner functional with a different outer map.
    pub fn with_outer(&self, outer: OuterMap) -> Self {
        ComposedFunctional {
            outer,
            ..self.clone()
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn components(&self) -> &[ComponentFunctional] {
        &self.components
    }

    pub fn psi(&self) -> &IntegrandFamily {
        &self.psi
    }

    pub fn outer(&self) -> &OuterMap {
        &self.outer
    }

    pub fn homogeneity_degree(&self) -> f64 {
        self.homogeneity_degree
    }

    pub fn check_domain(&self, m: &DiscreteMeasure) -> Result<()> {
        match &self.domain {
            Some(check) => check(m),
            None => Ok(()),
        }
    }

    fn component_values(&self, m: &DiscreteMeasure, y: f64) -> Vec<f64> {
        self.components.iter().map(|c| c.eval(m, y)).collect()
    }

    /// The inner integral `sum_y w_y psi_y(L_y(M))`, before `phi`.
    pub fn inner_value(&self, m: &DiscreteMeasure) -> Result<f64> {
        self.check_domain(m)?;
        let value: f64 = m
            .atoms()
            .map(|(y, w)| w * self.psi.eval(y, &self.component_values(m, y)))
            .sum();
        finite(value, &self.label, "value")
    }

    pub fn evaluate(&self, m: &DiscreteMeasure) -> Result<f64> {
        let inner = self.inner_value(m)?;
        finite(self.outer.eval(inner), &self.label, "value")
    }

    /// Influence of the inner integral at `u`.
    pub fn inner_influence(&self, u: f64, m: &DiscreteMeasure) -> Result<f64> {
        self.check_domain(m)?;
        if !u.is_finite() {
            return Err(Error::NonFiniteValue(u));
        }
        let own = self.psi.eval(u, &self.component_values(m, u));
        let integral: f64 = m
            .atoms()
            .map(|(y, w)| {
                let l = self.component_values(m, y);
                let grad = self.psi.gradient(y, &l);
                debug_assert_eq!(grad.len(), self.components.len());
                let dot: f64 = grad
                    .iter()
                    .zip(&self.components)
                    .map(|(g, c)| g * c.influence(m, y, u))
                    .sum();
                w * dot
            })
            .sum();
        finite(own + integral, &self.label, "influence")
    }

    /// `IF(u; M)`, the chain rule applied to the inner influence.
    pub fn influence(&self, u: f64, m: &DiscreteMeasure) -> Result<f64> {
        let inner = self.inner_value(m)?;
        let inner_if = self.inner_influence(u, m)?;
        finite(
            self.outer.derivative(inner) * inner_if,
            &self.label,
            "influence",
        )
    }
}

fn finite(x: f64, label: &str, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::domain(format!(
            "{label}: {what} is not finite ({x})"
        )))
    }
}

/// Step control for [`gateaux_numeric_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateauxOptions {
    /// Perturbation size `t`; `None` means `1e-5 * mass(M)`.
    pub step: Option<f64>,
    /// Combine the `t` and `t/2` quotients by one Richardson step.
    pub richardson: bool,
}

impl Default for GateauxOptions {
    fn default() -> Self {
        GateauxOptions {
            step: None,
            richardson: true,
        }
    }
}

pub const DEFAULT_RELATIVE_STEP: f64 = 1e-5;

/// Central difference `(F(M + t delta_u) - F(M - t delta_u)) / 2t` of an
/// arbitrary functional.
pub fn central_quotient<F>(f: F, u: f64, m: &DiscreteMeasure, t: f64) -> Result<f64>
where
    F: Fn(&DiscreteMeasure) -> Result<f64>,
{
    if !(t.is_finite() && t != 0.0) {
        return Err(Error::domain(format!(
            "difference step {t} must be finite and nonzero"
        )));
    }
    let plus = f(&m.add_mass(u, t)?)?;
    let minus = f(&m.add_mass(u, -t)?)?;
    Ok((plus - minus) / (2.0 * t))
}

/// Numerical Gateaux derivative of an arbitrary functional in the direction
/// `delta_u`.
pub fn gateaux_quotient<F>(
    f: F,
    u: f64,
    m: &DiscreteMeasure,
    options: GateauxOptions,
) -> Result<f64>
where
    F: Fn(&DiscreteMeasure) -> Result<f64>,
{
    let t = options.step.unwrap_or(DEFAULT_RELATIVE_STEP * m.mass());
    let coarse = central_quotient(&f, u, m, t)?;
    if !options.richardson {
        return Ok(coarse);
    }
    let fine = central_quotient(&f, u, m, t / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Plain central difference of `evaluate(c, .)` with step `t`.
pub fn gateaux_numeric(c: &ComposedFunctional, u: f64, m: &DiscreteMeasure, t: f64) -> Result<f64> {
    central_quotient(|mm| c.evaluate(mm), u, m, t)
}

pub fn gateaux_numeric_with(
    c: &ComposedFunctional,
    u: f64,
    m: &DiscreteMeasure,
    options: GateauxOptions,
) -> Result<f64> {
    gateaux_quotient(|mm| c.evaluate(mm), u, m, options)
}

/// `sum_y w_y IF(y; M) - alpha * F(M)`; zero for a functional homogeneous of
/// degree `alpha`.
pub fn euler_residual(c: &ComposedFunctional, m: &DiscreteMeasure) -> Result<f64> {
    let mut sum = 0.0;
    for (y, w) in m.atoms() {
        sum += w * c.influence(y, m)?;
    }
    Ok(sum - c.homogeneity_degree() * c.evaluate(m)?)
}
