//! Closed-form upper bounds on sums (or sums of squares) of Svetlichny values
//! over the three-qubit reductions of GGHZ, MS and W-class states.
//!
//! The W-class expressions are transcribed term by term, including terms whose
//! degree breaks the pattern of their neighbours. [`Variant::Corrected`]
//! offers the symmetric reading of those terms; the verbatim reading is the
//! default everywhere.

use std::f64::consts::SQRT_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qstate::binomial;
use crate::tolerance::TOL;

/// How to read the suspect terms of the W-class bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Exactly as printed: `3/2 δ²βγ` in `y₄`, mixed powers such as `αβ²` in `G`.
    #[default]
    Verbatim,
    /// `3/2 δ²β²` in `y₄`, every mixed-power product squared in `G` (`α²β²`, …).
    Corrected,
}

fn require_n(n: usize) -> Result<()> {
    if n < 4 {
        return Err(Error::InvalidArity(format!("n-qubit bound needs n >= 4, got {n}")));
    }
    Ok(())
}

/// `16 |cos 2θ|` for the four reductions of a four-qubit GGHZ state.
pub fn bound_theorem1(theta: f64) -> f64 {
    16.0 * (2.0 * theta).cos().abs()
}

/// `4 C(n,3) |cos 2θ|` for the `C(n,3)` reductions of an n-qubit GGHZ state.
pub fn bound_corollary1(n: usize, theta: f64) -> Result<f64> {
    require_n(n)?;
    Ok(4.0 * binomial(n as u64, 3) as f64 * (2.0 * theta).cos().abs())
}

/// The per-reduction GGHZ value `4 max{cos⁴θ, sin⁴θ}` as quoted alongside the
/// singular-value bound. The singular-value bound itself evaluates to
/// `4|cos 2θ|` on these reductions; the two agree only at `θ = 0 mod π/2`.
pub fn gghz_reduction_quoted_bound(theta: f64) -> f64 {
    4.0 * theta.cos().powi(4).max(theta.sin().powi(4))
}

/// `16 max{cos⁴θ, sin⁴θ}`, the GGHZ sum bound obtained reduction by reduction.
pub fn bound_gghz_lambda(theta: f64) -> f64 {
    4.0 * gghz_reduction_quoted_bound(theta)
}

fn ms_coherent_term(theta: f64) -> f64 {
    (theta.cos().powi(2) + 0.5 * (2.0 * theta).sin()).abs()
}

/// `4√2 |cos θ| + 12 |cos²θ + ½ sin 2θ|` for the four reductions of a
/// four-qubit MS state.
pub fn bound_theorem2(theta: f64) -> f64 {
    4.0 * SQRT_2 * theta.cos().abs() + 12.0 * ms_coherent_term(theta)
}

/// `20 cos²θ`, the MS sum bound obtained reduction by reduction.
pub fn bound_c4(theta: f64) -> f64 {
    20.0 * theta.cos().powi(2)
}

/// `4√2 C(n−1,2) |cos θ| + 4 (C(n,3) − C(n−1,2)) |cos²θ + ½ sin 2θ|`.
///
/// At `n = 4` this is `12√2|cos θ| + 4|…|`, which differs from
/// [`bound_theorem2`]; both are kept as stated.
pub fn bound_corollary2(n: usize, theta: f64) -> Result<f64> {
    require_n(n)?;
    let n = n as u64;
    let class_one = binomial(n - 1, 2) as f64;
    let class_two = binomial(n, 3) as f64 - class_one;
    Ok(4.0 * SQRT_2 * class_one * theta.cos().abs() + 4.0 * class_two * ms_coherent_term(theta))
}

/// Real coefficients of `α|1000⟩ + β|0100⟩ + γ|0010⟩ + δ|0001⟩ + λ|0000⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WClassCoefficients {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    pub delta: f64,
    pub lambda: f64,
}

impl WClassCoefficients {
    pub fn new(alpha: f64, beta: f64, gamma: f64, delta: f64, lambda: f64) -> Result<Self> {
        let w = Self {
            alpha,
            beta,
            gamma,
            delta,
            lambda,
        };
        let sq = w.squared_norm();
        if (sq - 1.0).abs() > TOL.normalization {
            return Err(Error::InvalidNormalization(format!(
                "squared W-class coefficients sum to {sq}"
            )));
        }
        Ok(w)
    }

    /// `λ = 0` member of the family.
    pub fn w_class(alpha: f64, beta: f64, gamma: f64, delta: f64) -> Result<Self> {
        Self::new(alpha, beta, gamma, delta, 0.0)
    }

    pub fn squared_norm(&self) -> f64 {
        self.alpha.powi(2) + self.beta.powi(2) + self.gamma.powi(2) + self.delta.powi(2) + self.lambda.powi(2)
    }

    fn require_w_class(&self) -> Result<()> {
        if self.lambda.abs() > TOL.structural {
            return Err(Error::Domain(format!(
                "bound applies only to λ = 0, got λ = {}",
                self.lambda
            )));
        }
        Ok(())
    }
}

/// One reduction's contribution `2(√(2x + 8y) + √(2x + 8y + 8e))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Theorem3Term {
    pub x: f64,
    pub y: f64,
    /// The extra `8·(…)` product under the second root.
    pub extra: f64,
    pub value: f64,
}

/// The four per-reduction terms in the order `abc, abd, acd, bcd`.
pub fn theorem3_terms(w: &WClassCoefficients, variant: Variant) -> Result<[Theorem3Term; 4]> {
    let (a2, b2, g2, d2, l2) = (
        w.alpha.powi(2),
        w.beta.powi(2),
        w.gamma.powi(2),
        w.delta.powi(2),
        w.lambda.powi(2),
    );
    let x = [
        (a2 + b2 + g2 - d2 - l2).powi(2),
        (a2 + b2 - g2 + d2 - l2).powi(2),
        (a2 - b2 + g2 + d2 - l2).powi(2),
        (-a2 + b2 + g2 + d2 - l2).powi(2),
    ];
    let y4_last = match variant {
        Variant::Verbatim => 1.5 * d2 * w.beta * w.gamma,
        Variant::Corrected => 1.5 * d2 * b2,
    };
    let y = [
        b2 * g2 + a2 * l2 + 1.5 * a2 * b2 + g2 * l2 + 1.5 * a2 * g2 + b2 * l2,
        b2 * g2 + a2 * l2 + 1.5 * a2 * b2 + d2 * l2 + 1.5 * a2 * d2 + d2 * b2,
        1.5 * a2 * d2 + a2 * l2 + 1.5 * a2 * g2 + d2 * l2 + d2 * g2 + l2 * g2,
        1.5 * b2 * g2 + b2 * l2 + d2 * g2 + d2 * l2 + g2 * l2 + y4_last,
    ];
    let extra = [b2 * g2, b2 * d2, d2 * l2, d2 * g2];
    let mut terms = [Theorem3Term {
        x: 0.0,
        y: 0.0,
        extra: 0.0,
        value: 0.0,
    }; 4];
    for i in 0..4 {
        let inner = 2.0 * x[i] + 8.0 * y[i];
        let outer = inner + 8.0 * extra[i];
        if inner < 0.0 || outer < 0.0 {
            return Err(Error::Domain(format!(
                "negative radicand in term {} ({inner}, {outer}) under the {variant:?} reading",
                i + 1
            )));
        }
        terms[i] = Theorem3Term {
            x: x[i],
            y: y[i],
            extra: extra[i],
            value: 2.0 * (inner.sqrt() + outer.sqrt()),
        };
    }
    Ok(terms)
}

/// Sum of the four [`theorem3_terms`].
pub fn bound_theorem3(w: &WClassCoefficients, variant: Variant) -> Result<f64> {
    Ok(theorem3_terms(w, variant)?.iter().map(|t| t.value).sum())
}

/// `F = 64(1 + α²γ² + β²δ² + 2α²β² + 2β²γ² + 2γ²δ²)`, bounding the sum of
/// squared values of a `λ = 0` W-class state.
pub fn bound_f(w: &WClassCoefficients) -> Result<f64> {
    w.require_w_class()?;
    let (a2, b2, g2, d2) = (w.alpha.powi(2), w.beta.powi(2), w.gamma.powi(2), w.delta.powi(2));
    Ok(64.0 * (1.0 + a2 * g2 + b2 * d2 + 2.0 * a2 * b2 + 2.0 * b2 * g2 + 2.0 * g2 * d2))
}

/// `G`, the competing sum-of-squares bound assembled from per-reduction
/// singular-value bounds via `max{X, Y} = (|X − Y| + |X + Y|)/2`.
pub fn bound_g(w: &WClassCoefficients, variant: Variant) -> Result<f64> {
    w.require_w_class()?;
    let (a, b, g, d) = (w.alpha, w.beta, w.gamma, w.delta);
    // x·y², or x²·y² when corrected
    let p = |x: f64, y: f64| match variant {
        Variant::Verbatim => x * y * y,
        Variant::Corrected => x * x * y * y,
    };
    let s = |x: f64| (2.0 * x * x - 1.0).powi(2);
    let abs_terms = (4.0 * (p(a, b) + p(a, g)) - 8.0 * p(b, g) - s(d)).abs()
        + (4.0 * (p(a, b) + p(a, d)) - 8.0 * p(b, d) - s(g)).abs()
        + (4.0 * (p(b, g) + p(b, d)) - 8.0 * p(g, d) - s(a)).abs()
        + (4.0 * (p(a, g) + p(a, d)) - 8.0 * p(g, d) - s(b)).abs();
    let linear = 8.0 * (p(a, b) + p(a, g) + p(a, d) + 1.5 * p(b, g) + 1.5 * p(b, d) + 2.0 * p(g, d));
    Ok(8.0 * (abs_terms + linear + s(a) + s(b) + s(g) + s(d)))
}
