//! Pits the closed-form bounds against numerical maximization over every
//! three-qubit reduction of a state.

use serde::{Deserialize, Serialize};

use super::bounds::{
    bound_c4, bound_corollary1, bound_corollary2, bound_f, bound_g, bound_gghz_lambda, bound_theorem1,
    bound_theorem2, bound_theorem3, Variant, WClassCoefficients,
};
use crate::correlations::svetlichny_upper_bound;
use crate::error::{Error, Result};
use crate::qstate::{binomial, StateSpec};
use crate::svetlichny::{maximize_svetlichny, OptimizerOptions};
use crate::tolerance::TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Aggregation {
    Sum,
    SumSquares,
}

/// The trade-off relations the harness knows how to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// GGHZ, four qubits, `Σ ≤ 16|cos 2θ|`.
    Theorem1,
    /// MS, four qubits, `Σ ≤ 4√2|cos θ| + 12|cos²θ + ½ sin 2θ|`.
    Theorem2,
    /// W class with `λ`, four qubits, sum of the four printed terms.
    Theorem3,
    /// W class with `λ = 0`, sum of squares `≤ F`.
    Eqn3p,
    /// GGHZ, n qubits.
    Corollary1,
    /// MS, n qubits.
    Corollary2,
}

impl Theorem {
    pub const ALL: [Theorem; 6] = [
        Theorem::Theorem1,
        Theorem::Theorem2,
        Theorem::Theorem3,
        Theorem::Eqn3p,
        Theorem::Corollary1,
        Theorem::Corollary2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::Theorem1 => "theorem1",
            Theorem::Theorem2 => "theorem2",
            Theorem::Theorem3 => "theorem3",
            Theorem::Eqn3p => "eqn3p",
            Theorem::Corollary1 => "corollary1",
            Theorem::Corollary2 => "corollary2",
        }
    }

    pub fn parse(name: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.name() == name)
    }

    /// Each relation has one fixed aggregation form.
    pub fn aggregation(self) -> Aggregation {
        match self {
            Theorem::Eqn3p => Aggregation::SumSquares,
            _ => Aggregation::Sum,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionResult {
    pub qubits: [usize; 3],
    /// Numerically maximized Svetlichny value.
    pub value: f64,
    /// `4λ₁` of the reduced state.
    pub upper_bound: f64,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedBound {
    pub name: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TradeoffReport {
    pub family: StateSpec,
    pub theorem: Theorem,
    pub mode: Aggregation,
    pub variant: Variant,
    pub per_reduction: Vec<ReductionResult>,
    pub lhs: f64,
    pub rhs: f64,
    pub satisfied: bool,
    /// `rhs − lhs`.
    pub gap: f64,
    /// False when any reduction's maximization stopped short of a stationary point.
    pub converged: bool,
    /// Other bounds on the same left-hand side, for comparison.
    pub alternative_bounds: Vec<NamedBound>,
}

/// Every increasing triple of `0..n`, lexicographically (`abc, abd, acd, bcd`
/// for four qubits).
pub fn triples(n: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(binomial(n as u64, 3) as usize);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                out.push([i, j, k]);
            }
        }
    }
    out
}

fn wclass_coefficients(spec: &StateSpec) -> Option<WClassCoefficients> {
    match *spec {
        StateSpec::Wclass {
            alpha,
            beta,
            gamma,
            delta,
            lambda,
        } => Some(WClassCoefficients {
            alpha,
            beta,
            gamma,
            delta,
            lambda,
        }),
        _ => None,
    }
}

fn mismatch(theorem: Theorem, spec: &StateSpec) -> Error {
    Error::Domain(format!(
        "{} does not apply to a {}-qubit {} state",
        theorem.name(),
        spec.num_qubits(),
        spec.family_name()
    ))
}

/// The analytic right-hand side plus comparison bounds that depend only on the
/// state parameters.
fn analytic_bounds(spec: &StateSpec, theorem: Theorem, variant: Variant) -> Result<(f64, Vec<NamedBound>)> {
    let named = |name: &str, value: f64| NamedBound {
        name: name.to_string(),
        value,
    };
    match (theorem, spec) {
        (Theorem::Theorem1, &StateSpec::Gghz { n: 4, theta }) => Ok((
            bound_theorem1(theta),
            vec![named("gghz_lambda", bound_gghz_lambda(theta))],
        )),
        (Theorem::Corollary1, &StateSpec::Gghz { n, theta }) if n >= 4 => Ok((bound_corollary1(n, theta)?, vec![])),
        (Theorem::Theorem2, &StateSpec::Ms { n: 4, theta }) => Ok((
            bound_theorem2(theta),
            vec![
                named("c4", bound_c4(theta)),
                named("corollary2_n4", bound_corollary2(4, theta)?),
            ],
        )),
        (Theorem::Corollary2, &StateSpec::Ms { n, theta }) if n >= 4 => Ok((bound_corollary2(n, theta)?, vec![])),
        (Theorem::Theorem3, StateSpec::Wclass { .. }) => {
            let w = wclass_coefficients(spec).expect("W-class spec");
            let other = match variant {
                Variant::Verbatim => Variant::Corrected,
                Variant::Corrected => Variant::Verbatim,
            };
            let mut alt = Vec::new();
            if let Ok(v) = bound_theorem3(&w, other) {
                alt.push(named(&format!("theorem3_{other:?}").to_lowercase(), v));
            }
            Ok((bound_theorem3(&w, variant)?, alt))
        }
        (Theorem::Eqn3p, StateSpec::Wclass { .. }) => {
            let w = wclass_coefficients(spec).expect("W-class spec");
            Ok((
                bound_f(&w)?,
                vec![
                    named("g_verbatim", bound_g(&w, Variant::Verbatim)?),
                    named("g_corrected", bound_g(&w, Variant::Corrected)?),
                ],
            ))
        }
        _ => Err(mismatch(theorem, spec)),
    }
}

/// Checks one relation on `spec`: maximizes the Svetlichny value of every
/// three-qubit reduction, aggregates, and compares with the analytic bound.
///
/// Non-convergence does not fail the call; it clears `converged` on the report.
pub fn verify_theorem(
    spec: &StateSpec,
    theorem: Theorem,
    variant: Variant,
    opts: &OptimizerOptions,
) -> Result<TradeoffReport> {
    let (rhs, mut alternative_bounds) = analytic_bounds(spec, theorem, variant)?;
    let psi = spec.build()?;
    let mode = theorem.aggregation();
    let mut per_reduction = Vec::new();
    for qubits in triples(psi.num_qubits()) {
        let rho = psi.reduce(&qubits)?;
        let max = maximize_svetlichny(&rho, opts)?;
        per_reduction.push(ReductionResult {
            qubits,
            value: max.value,
            upper_bound: svetlichny_upper_bound(&rho)?,
            converged: max.converged,
        });
    }
    let aggregate = |f: fn(&ReductionResult) -> f64| -> f64 {
        per_reduction
            .iter()
            .map(|r| match mode {
                Aggregation::Sum => f(r),
                Aggregation::SumSquares => f(r).powi(2),
            })
            .sum()
    };
    let lhs = aggregate(|r| r.value);
    alternative_bounds.push(NamedBound {
        name: "reduction_lambda_sum".into(),
        value: aggregate(|r| r.upper_bound),
    });
    Ok(TradeoffReport {
        family: spec.clone(),
        theorem,
        mode,
        variant,
        converged: per_reduction.iter().all(|r| r.converged),
        per_reduction,
        lhs,
        rhs,
        satisfied: lhs <= rhs + TOL.bound_slack,
        gap: rhs - lhs,
        alternative_bounds,
    })
}

/// Picks the relation that matches `spec` and `mode` and checks it.
pub fn verify_tradeoff(spec: &StateSpec, mode: Aggregation, opts: &OptimizerOptions) -> Result<TradeoffReport> {
    let theorem = match (spec, mode) {
        (StateSpec::Gghz { n: 4, .. }, Aggregation::Sum) => Theorem::Theorem1,
        (StateSpec::Gghz { .. }, Aggregation::Sum) => Theorem::Corollary1,
        (StateSpec::Ms { n: 4, .. }, Aggregation::Sum) => Theorem::Theorem2,
        (StateSpec::Ms { .. }, Aggregation::Sum) => Theorem::Corollary2,
        (StateSpec::Wclass { .. }, Aggregation::Sum) => Theorem::Theorem3,
        (StateSpec::Wclass { .. }, Aggregation::SumSquares) => Theorem::Eqn3p,
        _ => {
            return Err(Error::Domain(format!(
                "no trade-off relation for a {} state aggregated as {mode:?}",
                spec.family_name()
            )))
        }
    };
    verify_theorem(spec, theorem, Variant::Verbatim, opts)
}
