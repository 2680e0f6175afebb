//! Random states, unitaries and directions for property checks and
//! multi-start optimization.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, C64};
use crate::qstate::{DensityMatrix, PureState};

fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Haar-random pure state.
pub fn random_pure_state<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> PureState {
    let amps = (0..1usize << num_qubits).map(|_| gaussian_c64(rng)).collect();
    PureState::normalized(amps).expect("gaussian vector is nonzero")
}

/// Random full-rank mixed state `G G† / Tr(G G†)` with `G` complex Ginibre.
pub fn random_density<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> DensityMatrix {
    let dim = 1usize << num_qubits;
    let g = CMatrix::from_fn(dim, |_, _| gaussian_c64(rng));
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    let mut rho = gg.scale(C64::new(1.0 / tr, 0.0));
    // exact Hermiticity
    for i in 0..dim {
        rho[(i, i)] = C64::new(rho[(i, i)].re, 0.0);
        for j in (i + 1)..dim {
            rho[(j, i)] = rho[(i, j)].conj();
        }
    }
    DensityMatrix::new(rho).expect("Ginibre construction is a density matrix")
}

/// Uniformly random point on the unit sphere.
pub fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-8 {
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

/// Haar-random single-qubit unitary.
pub fn random_qubit_unitary<R: Rng + ?Sized>(rng: &mut R) -> CMatrix {
    // normalized quaternion → SU(2)
    let q: [f64; 4] = {
        let v: Vec<f64> = (0..4).map(|_| rng.sample(StandardNormal)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        [v[0] / n, v[1] / n, v[2] / n, v[3] / n]
    };
    let a = C64::new(q[0], q[3]);
    let b = C64::new(q[2], q[1]);
    CMatrix::from_rows(&[vec![a, -b.conj()], vec![b, a.conj()]])
}

/// `U ⊗ U ⊗ … ⊗ U` on `num_qubits` qubits.
pub fn tensor_power(u: &CMatrix, num_qubits: usize) -> CMatrix {
    (1..num_qubits).fold(u.clone(), |acc, _| acc.kron(u))
}
