use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{dot, norm, partial_gradient, svetlichny_value, svetlichny_value_from_tensor, BlochVector, SvetlichnySettings, Vec3};
use crate::correlations::{correlation_tensor, CorrelationTensor3};
use crate::error::{Error, Result};
use crate::qstate::DensityMatrix;
use crate::sampling::random_unit_vector;

/// Budget and seeding of the multi-start maximizer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerOptions {
    pub restarts: usize,
    /// Nelder–Mead iteration cap per restart. The polishing stage gets ten
    /// sweeps per unit of this budget.
    pub max_iter: usize,
    /// Simplex diameter below which Nelder–Mead stops.
    pub tol: f64,
    pub seed: u64,
}

impl Default for OptimizerOptions {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iter: 2000,
            tol: 1e-10,
            seed: 42,
        }
    }
}

impl OptimizerOptions {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Domain("at least one restart is required".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::Domain(format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SvetlichnyMaximum {
    /// `Tr(Sρ)` at `settings`, evaluated through the full operator.
    pub value: f64,
    pub settings: SvetlichnySettings,
    /// Whether the winning restart reached a stationary point.
    pub converged: bool,
    /// Index of the winning restart.
    pub best_restart: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NelderMeadResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimizes `f` with the Nelder–Mead simplex method (standard coefficients,
/// axis-aligned initial simplex of edge `step`). Stops when the simplex
/// diameter falls below `tol` or after `max_iter` iterations.
pub fn nelder_mead(
    mut f: impl FnMut(&[f64]) -> f64,
    x0: &[f64],
    step: f64,
    tol: f64,
    max_iter: usize,
) -> NelderMeadResult {
    let n = x0.len();
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    let mut simplex: Vec<Vec<f64>> = (0..=n)
        .map(|i| {
            let mut p = x0.to_vec();
            if i > 0 {
                p[i - 1] += step;
            }
            p
        })
        .collect();
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();

    let diameter = |s: &[Vec<f64>]| -> f64 {
        s[1..]
            .iter()
            .map(|p| p.iter().zip(&s[0]).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    };

    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        let mut order: Vec<usize> = (0..=n).collect();
        order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
        simplex = order.iter().map(|&i| simplex[i].clone()).collect();
        values = order.iter().map(|&i| values[i]).collect();

        if diameter(&simplex) < tol {
            converged = true;
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|k| simplex[..n].iter().map(|p| p[k]).sum::<f64>() / n as f64)
            .collect();
        let toward = |coef: f64, worst: &[f64]| -> Vec<f64> {
            centroid.iter().zip(worst).map(|(c, w)| c + coef * (w - c)).collect()
        };

        let reflected = toward(-alpha, &simplex[n]);
        let fr = f(&reflected);
        if fr < values[0] {
            let expanded = toward(-gamma, &simplex[n]);
            let fe = f(&expanded);
            if fe < fr {
                simplex[n] = expanded;
                values[n] = fe;
            } else {
                simplex[n] = reflected;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = reflected;
            values[n] = fr;
        } else {
            let (contracted, fc) = if fr < values[n] {
                let c = toward(-rho, &simplex[n]);
                let fc = f(&c);
                (c, fc)
            } else {
                let c = toward(rho, &simplex[n]);
                let fc = f(&c);
                (c, fc)
            };
            if fc < values[n].min(fr) {
                simplex[n] = contracted;
                values[n] = fc;
            } else {
                for i in 1..=n {
                    let shrunk: Vec<f64> = simplex[0]
                        .iter()
                        .zip(&simplex[i])
                        .map(|(b, p)| b + sigma * (p - b))
                        .collect();
                    values[i] = f(&shrunk);
                    simplex[i] = shrunk;
                }
            }
        }
    }
    let best = (0..=n).min_by(|&i, &j| values[i].total_cmp(&values[j])).unwrap_or(0);
    NelderMeadResult {
        x: simplex[best].clone(),
        f: values[best],
        iterations,
        converged,
    }
}

fn to_cartesian(angles: &[f64]) -> [Vec3; 6] {
    std::array::from_fn(|k| BlochVector::new(angles[2 * k], angles[2 * k + 1]).cartesian())
}

const POLISH_SWEEPS_PER_ITER: usize = 10;
const STATIONARY: f64 = 1e-10;

/// Block coordinate ascent: each of the six unit vectors enters the value
/// linearly, so the best choice with the others fixed is its normalized
/// partial gradient. Returns whether first-order stationarity was reached.
fn polish(t: &CorrelationTensor3, v: &mut [Vec3; 6], sweeps: usize) -> bool {
    for _ in 0..sweeps {
        let mut worst_gap = 0.0_f64;
        for slot in 0..6 {
            let g = partial_gradient(t, v, slot);
            let gn = norm(&g);
            if gn == 0.0 {
                continue;
            }
            worst_gap = worst_gap.max(gn - dot(&v[slot], &g));
            v[slot] = [g[0] / gn, g[1] / gn, g[2] / gn];
        }
        if worst_gap < STATIONARY {
            return true;
        }
    }
    false
}

struct RestartOutcome {
    value: f64,
    vectors: [Vec3; 6],
    converged: bool,
}

fn run_restart(t: &CorrelationTensor3, opts: &OptimizerOptions, index: usize) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(index as u64);
    let mut start = [0.0; 12];
    for k in 0..6 {
        let b = BlochVector::from_cartesian(&random_unit_vector(&mut rng));
        start[2 * k] = b.theta;
        start[2 * k + 1] = b.phi;
    }
    let step = rng.random_range(0.3..0.8);
    let nm = nelder_mead(
        |x| -svetlichny_value_from_tensor(t, &to_cartesian(x)),
        &start,
        step,
        opts.tol,
        opts.max_iter,
    );
    let mut vectors = to_cartesian(&nm.x);
    let stationary = polish(t, &mut vectors, opts.max_iter.saturating_mul(POLISH_SWEEPS_PER_ITER));
    RestartOutcome {
        value: svetlichny_value_from_tensor(t, &vectors),
        vectors,
        converged: stationary,
    }
}

/// Maximizes `Tr(Sρ)` over all six measurement directions.
///
/// Each restart draws six uniform directions from its own ChaCha stream
/// (stream = restart index, so the first `k` restarts do not depend on the
/// total count), runs Nelder–Mead over the twelve spherical angles and then
/// polishes with exact block updates. Restarts run in parallel; the winner is
/// the largest value, ties going to the lower index.
pub fn maximize_svetlichny(rho: &DensityMatrix, opts: &OptimizerOptions) -> Result<SvetlichnyMaximum> {
    opts.validate()?;
    let t = correlation_tensor(rho)?;
    let outcomes: Vec<RestartOutcome> = (0..opts.restarts)
        .into_par_iter()
        .map(|i| run_restart(&t, opts, i))
        .collect();
    let (best_restart, best) = outcomes
        .iter()
        .enumerate()
        .fold(None::<(usize, &RestartOutcome)>, |acc, (i, o)| match acc {
            Some((_, b)) if b.value >= o.value => acc,
            _ => Some((i, o)),
        })
        .expect("at least one restart");
    let settings = SvetlichnySettings::from_vectors(best.vectors.map(|v| BlochVector::from_cartesian(&v)));
    Ok(SvetlichnyMaximum {
        value: svetlichny_value(rho, &settings)?,
        settings,
        converged: best.converged,
        best_restart,
    })
}
