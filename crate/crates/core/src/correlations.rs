//! Pauli correlation tensors, the Horodecki CHSH maximum for two qubits, and
//! the singular-value bound on the three-qubit Svetlichny value.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{pauli, singular_values_via_gram, symmetric_eigenvalues, CMatrix};
use crate::qstate::DensityMatrix;
use crate::tolerance::TOL;

/// Three-qubit correlation tensor `m[i][j][k] = Tr(ρ σᵢ⊗σⱼ⊗σₖ)`.
///
/// Array indices are zero-based: index 0 is σ₁ = X, 1 is σ₂ = Y, 2 is σ₃ = Z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationTensor3 {
    pub m: [[[f64; 3]; 3]; 3],
}

/// Two-qubit correlation matrix `t[i][j] = Tr(ρ σᵢ⊗σⱼ)`, zero-based.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationMatrix2 {
    pub t: [[f64; 3]; 3],
}

fn require_arity(rho: &DensityMatrix, n: usize) -> Result<()> {
    if rho.num_qubits() != n {
        return Err(Error::InvalidArity(format!(
            "expected a {n}-qubit state, got {} qubits",
            rho.num_qubits()
        )));
    }
    Ok(())
}

fn real_expectation(rho: &DensityMatrix, op: &CMatrix) -> f64 {
    let e = rho.expectation(op);
    debug_assert!(
        e.im.abs() < TOL.imaginary,
        "Hermitian expectation has imaginary part {}",
        e.im
    );
    e.re
}

pub fn correlation_tensor(rho: &DensityMatrix) -> Result<CorrelationTensor3> {
    require_arity(rho, 3)?;
    let p = [pauli(1), pauli(2), pauli(3)];
    let mut m = [[[0.0; 3]; 3]; 3];
    for (i, pi) in p.iter().enumerate() {
        for (j, pj) in p.iter().enumerate() {
            let pij = pi.kron(pj);
            for (k, pk) in p.iter().enumerate() {
                m[i][j][k] = real_expectation(rho, &pij.kron(pk));
            }
        }
    }
    Ok(CorrelationTensor3 { m })
}

pub fn correlation_matrix(rho: &DensityMatrix) -> Result<CorrelationMatrix2> {
    require_arity(rho, 2)?;
    let p = [pauli(1), pauli(2), pauli(3)];
    let mut t = [[0.0; 3]; 3];
    for (i, pi) in p.iter().enumerate() {
        for (j, pj) in p.iter().enumerate() {
            t[i][j] = real_expectation(rho, &pi.kron(pj));
        }
    }
    Ok(CorrelationMatrix2 { t })
}

impl CorrelationTensor3 {
    /// `Σ m_ijk xᵢ yⱼ zₖ`.
    pub fn contract(&self, x: &[f64; 3], y: &[f64; 3], z: &[f64; 3]) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let xy = x[i] * y[j];
                for k in 0..3 {
                    acc += self.m[i][j][k] * xy * z[k];
                }
            }
        }
        acc
    }

    /// The 3×9 matrix `M = (m_{j,ik})`: row `j` is the middle (second-qubit)
    /// index, column `3i + k` the outer pair.
    pub fn flatten_m(&self) -> [[f64; 9]; 3] {
        let mut out = [[0.0; 9]; 3];
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    out[j][3 * i + k] = self.m[i][j][k];
                }
            }
        }
        out
    }

    /// Singular values of [`flatten_m`](Self::flatten_m), descending.
    pub fn singular_values(&self) -> [f64; 3] {
        let flat: Vec<f64> = self.flatten_m().iter().flatten().copied().collect();
        let sv = singular_values_via_gram(&flat, 3, 9);
        [sv[0], sv[1], sv[2]]
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.m.iter().flatten().flatten().fold(0.0, |a, &x| a.max(x.abs()))
    }
}

pub fn flatten_m(t: &CorrelationTensor3) -> [[f64; 9]; 3] {
    t.flatten_m()
}

/// `4λ₁`, with `λ₁` the largest singular value of the flattened tensor.
/// Never smaller than the true maximal Svetlichny value of `rho`.
pub fn svetlichny_upper_bound(rho: &DensityMatrix) -> Result<f64> {
    flattening_self_check();
    Ok(4.0 * correlation_tensor(rho)?.singular_values()[0])
}

/// Panics unless the flattening convention reproduces `4λ₁ = 4√2` on the
/// three-qubit GHZ state. Runs once per process.
pub fn flattening_self_check() {
    static CHECKED: OnceLock<f64> = OnceLock::new();
    let bound = *CHECKED.get_or_init(|| {
        let ghz = crate::qstate::make_gghz(3, std::f64::consts::FRAC_PI_4)
            .expect("GHZ construction")
            .to_density();
        4.0 * correlation_tensor(&ghz).expect("3 qubits").singular_values()[0]
    });
    assert!(
        (bound - 4.0 * std::f64::consts::SQRT_2).abs() < 1e-12,
        "correlation flattening broken: 4λ₁(GHZ₃) = {bound}, expected 4√2"
    );
}

impl CorrelationMatrix2 {
    /// Horodecki `M(ρ)`: sum of the two largest eigenvalues of `TᵗT`.
    pub fn horodecki_m(&self) -> f64 {
        let t = &self.t;
        let mut ttt = [0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                ttt[i * 3 + j] = (0..3).map(|k| t[k][i] * t[k][j]).sum();
            }
        }
        let eig = symmetric_eigenvalues(&ttt, 3);
        (eig[1] + eig[2]).max(0.0)
    }
}

/// Maximal CHSH value `2√M(ρ)` of a two-qubit state.
pub fn chsh_max(rho: &DensityMatrix) -> Result<f64> {
    Ok(2.0 * correlation_matrix(rho)?.horodecki_m().sqrt())
}

/// `Tr(ρ B_CHSH)` for `B = a·σ ⊗ (b + b')·σ + a'·σ ⊗ (b − b')·σ`.
pub fn chsh_value(
    rho: &DensityMatrix,
    a: &[f64; 3],
    a_p: &[f64; 3],
    b: &[f64; 3],
    b_p: &[f64; 3],
) -> Result<f64> {
    let t = correlation_matrix(rho)?.t;
    let bilinear = |x: &[f64; 3], y: &[f64; 3]| -> f64 {
        (0..3).map(|i| (0..3).map(|j| x[i] * t[i][j] * y[j]).sum::<f64>()).sum()
    };
    let sum = [b[0] + b_p[0], b[1] + b_p[1], b[2] + b_p[2]];
    let diff = [b[0] - b_p[0], b[1] - b_p[1], b[2] - b_p[2]];
    Ok(bilinear(a, &sum) + bilinear(a_p, &diff))
}
