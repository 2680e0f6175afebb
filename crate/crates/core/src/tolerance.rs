//! Numerical tolerances shared by the whole crate.
//!
//! Every structural check (norms, Hermiticity, traces) and every comparison a
//! report makes against an analytic bound reads its threshold from here.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Norms, traces and Hermiticity of constructed objects.
    pub structural: f64,
    /// Smallest eigenvalue a density matrix may have.
    pub psd: f64,
    /// Accepted squared-norm error on user-supplied W-class coefficients.
    pub normalization: f64,
    /// Slack when a numerically maximized value is compared with a bound.
    pub bound_slack: f64,
    /// Imaginary residue accepted on expectation values of Hermitian observables.
    pub imaginary: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        structural: 1e-12,
        psd: 1e-10,
        normalization: 1e-9,
        bound_slack: 1e-6,
        imaginary: 1e-10,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}

pub const TOL: Tolerances = Tolerances::DEFAULT;
