//! Pure and mixed qubit states, the state families used by the trade-off
//! relations, and the partial trace.
//!
//! Basis labels are read left to right: qubit 0 is the most significant bit,
//! so for four qubits `|1000⟩` (index 8) is "qubit a excited".

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64, ZERO};
use crate::tolerance::TOL;

/// Normalized amplitude vector of an `n`-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    num_qubits: usize,
    amplitudes: Vec<C64>,
}

impl PureState {
    /// Wraps an amplitude vector, checking its length is a power of two and
    /// its norm is 1 within the structural tolerance.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidArity(format!(
                "amplitude vector length {len} is not 2^n with n >= 1"
            )));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > TOL.structural {
            return Err(Error::InvalidNormalization(format!(
                "state norm is {norm}, expected 1"
            )));
        }
        Ok(Self {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    /// Rescales `amplitudes` to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidNormalization("zero or non-finite vector".into()));
        }
        Self::new(amplitudes.into_iter().map(|a| a / norm).collect())
    }

    pub fn basis(num_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(Error::Index(format!("basis index {index} out of range")));
        }
        let mut amps = vec![ZERO; dim];
        amps[index] = C64::new(1.0, 0.0);
        Self::new(amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn to_density(&self) -> DensityMatrix {
        to_density(self)
    }

    /// Reduced state on `keep`, computed straight from the amplitudes so that
    /// large registers never materialize their full density matrix.
    pub fn reduce(&self, keep: &[usize]) -> Result<DensityMatrix> {
        let layout = TraceLayout::new(self.num_qubits, keep)?;
        let kd = layout.kept.len();
        let mut out = CMatrix::zeros(kd);
        for (r, &kr) in layout.kept.iter().enumerate() {
            for (c, &kc) in layout.kept.iter().enumerate().skip(r) {
                let acc: C64 = layout
                    .traced
                    .iter()
                    .map(|&t| self.amplitudes[kr | t] * self.amplitudes[kc | t].conj())
                    .sum();
                out[(r, c)] = acc;
                out[(c, r)] = acc.conj();
            }
        }
        Ok(DensityMatrix::from_trusted(keep.len(), out))
    }
}

/// Hermitian, unit-trace, positive semidefinite `2^n × 2^n` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    num_qubits: usize,
    entries: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(entries: CMatrix) -> Result<Self> {
        let dim = entries.dim();
        if dim < 2 || !dim.is_power_of_two() {
            return Err(Error::InvalidArity(format!("matrix size {dim} is not 2^n")));
        }
        let herm = entries.hermiticity_defect();
        if herm > TOL.structural {
            return Err(Error::InvalidState(format!(
                "not Hermitian (defect {herm:e})"
            )));
        }
        let tr = entries.trace();
        if (tr.re - 1.0).abs() > TOL.structural || tr.im.abs() > TOL.structural {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let min_eig = entries.hermitian_eigenvalues()[0];
        if min_eig < -TOL.psd {
            return Err(Error::InvalidState(format!(
                "minimum eigenvalue {min_eig:e} is negative"
            )));
        }
        Ok(Self {
            num_qubits: dim.trailing_zeros() as usize,
            entries,
        })
    }

    /// For matrices that are density matrices by construction.
    pub(crate) fn from_trusted(num_qubits: usize, entries: CMatrix) -> Self {
        debug_assert_eq!(entries.dim(), 1 << num_qubits);
        Self {
            num_qubits,
            entries,
        }
    }

    pub fn maximally_mixed(num_qubits: usize) -> Self {
        let dim = 1usize << num_qubits;
        let w = C64::new(1.0 / dim as f64, 0.0);
        Self::from_trusted(num_qubits, CMatrix::identity(dim).scale(w))
    }

    /// Convex combination `Σ wᵢ ρᵢ`. Weights must be nonnegative and sum to 1.
    pub fn mixture(parts: &[(f64, &DensityMatrix)]) -> Result<Self> {
        let first = parts
            .first()
            .ok_or_else(|| Error::Domain("empty mixture".into()))?;
        let n = first.1.num_qubits;
        let total: f64 = parts.iter().map(|p| p.0).sum();
        if parts.iter().any(|p| p.0 < 0.0) || (total - 1.0).abs() > TOL.structural {
            return Err(Error::Domain("mixture weights must be a probability vector".into()));
        }
        let mut acc = CMatrix::zeros(1 << n);
        for (w, rho) in parts {
            if rho.num_qubits != n {
                return Err(Error::InvalidArity("mixture of different register sizes".into()));
            }
            acc = &acc + &rho.entries.scale(C64::new(*w, 0.0));
        }
        Ok(Self::from_trusted(n, acc))
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn trace(&self) -> C64 {
        self.entries.trace()
    }

    pub fn purity(&self) -> f64 {
        self.entries.trace_product(&self.entries).re
    }

    /// `Tr(ρ O)`.
    pub fn expectation(&self, observable: &CMatrix) -> C64 {
        self.entries.trace_product(observable)
    }

    /// `U ρ U†` for a unitary `U` on the whole register.
    pub fn conjugate_by(&self, unitary: &CMatrix) -> Self {
        let out = &(unitary * &self.entries) * &unitary.adjoint();
        Self::from_trusted(self.num_qubits, out)
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        partial_trace(self, keep)
    }
}

/// `|ψ⟩⟨ψ|`.
pub fn to_density(psi: &PureState) -> DensityMatrix {
    let a = &psi.amplitudes;
    DensityMatrix::from_trusted(
        psi.num_qubits,
        CMatrix::from_fn(a.len(), |i, j| a[i] * a[j].conj()),
    )
}

/// Traces out every qubit not listed in `keep`; kept qubits retain their order.
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix> {
    let layout = TraceLayout::new(rho.num_qubits, keep)?;
    let kd = layout.kept.len();
    let e = &rho.entries;
    let mut out = CMatrix::zeros(kd);
    for (r, &kr) in layout.kept.iter().enumerate() {
        for (c, &kc) in layout.kept.iter().enumerate() {
            out[(r, c)] = layout.traced.iter().map(|&t| e[(kr | t, kc | t)]).sum();
        }
    }
    Ok(DensityMatrix::from_trusted(keep.len(), out))
}

/// Full-register index offsets contributed by the kept and the traced qubits.
struct TraceLayout {
    kept: Vec<usize>,
    traced: Vec<usize>,
}

impl TraceLayout {
    fn new(num_qubits: usize, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::Index("no qubits to keep".into()));
        }
        if keep.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Index(format!("{keep:?} is not strictly increasing")));
        }
        if let Some(&q) = keep.iter().find(|&&q| q >= num_qubits) {
            return Err(Error::Index(format!(
                "qubit {q} out of range for a {num_qubits}-qubit state"
            )));
        }
        let traced_qubits: Vec<usize> = (0..num_qubits).filter(|q| !keep.contains(q)).collect();
        Ok(Self {
            kept: offsets(num_qubits, keep),
            traced: offsets(num_qubits, &traced_qubits),
        })
    }
}

fn offsets(num_qubits: usize, qubits: &[usize]) -> Vec<usize> {
    let k = qubits.len();
    (0..1usize << k)
        .map(|local| {
            qubits.iter().enumerate().fold(0, |acc, (pos, &q)| {
                let bit = (local >> (k - 1 - pos)) & 1;
                acc | (bit << (num_qubits - 1 - q))
            })
        })
        .collect()
}

/// `cos θ |0…0⟩ + sin θ |1…1⟩`.
pub fn make_gghz(n: usize, theta: f64) -> Result<PureState> {
    if n < 3 {
        return Err(Error::InvalidArity(format!("GGHZ needs n >= 3, got {n}")));
    }
    let dim = 1usize << n;
    let mut amps = vec![ZERO; dim];
    amps[0] = C64::new(theta.cos(), 0.0);
    amps[dim - 1] = C64::new(theta.sin(), 0.0);
    PureState::new(amps)
}

/// Generalized maximal slice state
/// `(|0…0⟩ + |1…1⟩ ⊗ (cos θ|0⟩ + sin θ|1⟩)) / √2`.
pub fn make_ms(n: usize, theta: f64) -> Result<PureState> {
    if n < 4 {
        return Err(Error::InvalidArity(format!("MS needs n >= 4, got {n}")));
    }
    let dim = 1usize << n;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut amps = vec![ZERO; dim];
    amps[0] = C64::new(h, 0.0);
    amps[dim - 2] = C64::new(h * theta.cos(), 0.0);
    amps[dim - 1] = C64::new(h * theta.sin(), 0.0);
    PureState::new(amps)
}

/// `α|1000⟩ + β|0100⟩ + γ|0010⟩ + δ|0001⟩ + λ|0000⟩`.
pub fn make_wclass(alpha: f64, beta: f64, gamma: f64, delta: f64, lambda: f64) -> Result<PureState> {
    let sq = alpha * alpha + beta * beta + gamma * gamma + delta * delta + lambda * lambda;
    if (sq - 1.0).abs() > TOL.normalization {
        return Err(Error::InvalidNormalization(format!(
            "squared W-class coefficients sum to {sq}"
        )));
    }
    let mut amps = vec![ZERO; 16];
    amps[0b0000] = C64::new(lambda, 0.0);
    amps[0b1000] = C64::new(alpha, 0.0);
    amps[0b0100] = C64::new(beta, 0.0);
    amps[0b0010] = C64::new(gamma, 0.0);
    amps[0b0001] = C64::new(delta, 0.0);
    // the check above is looser than the state invariant; renormalize the residue
    PureState::normalized(amps)
}

/// Symmetric Dicke state: the equal superposition of every arrangement of
/// `m` zeros and `n − m` ones.
///
/// Note the convention: `m` counts *zeros*, so the single-excitation W state
/// on four qubits is `make_dicke(4, 3)`, and `make_dicke(n, n)` is `|0…0⟩`.
pub fn make_dicke(n: usize, m: usize) -> Result<PureState> {
    if n == 0 || m > n {
        return Err(Error::InvalidArity(format!("Dicke state needs 0 <= m <= n, n >= 1; got n={n}, m={m}")));
    }
    if n > 24 {
        return Err(Error::InvalidArity(format!("{n} qubits is beyond dense storage")));
    }
    let ones = (n - m) as u32;
    let dim = 1usize << n;
    let weight = 1.0 / (binomial(n as u64, m as u64) as f64).sqrt();
    let amps = (0..dim)
        .map(|i| {
            if i.count_ones() == ones {
                C64::new(weight, 0.0)
            } else {
                ZERO
            }
        })
        .collect();
    PureState::normalized(amps)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Serializable description of a state from one of the supported families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "UPPERCASE", deny_unknown_fields)]
pub enum StateSpec {
    Gghz {
        n: usize,
        theta: f64,
    },
    Ms {
        n: usize,
        theta: f64,
    },
    Wclass {
        alpha: f64,
        beta: f64,
        gamma: f64,
        delta: f64,
        #[serde(default)]
        lambda: f64,
    },
    Dicke {
        n: usize,
        m: usize,
    },
    /// Raw amplitudes as `[re, im]` pairs.
    Custom {
        amplitudes: Vec<[f64; 2]>,
    },
}

impl StateSpec {
    pub fn build(&self) -> Result<PureState> {
        match *self {
            StateSpec::Gghz { n, theta } => make_gghz(n, theta),
            StateSpec::Ms { n, theta } => make_ms(n, theta),
            StateSpec::Wclass {
                alpha,
                beta,
                gamma,
                delta,
                lambda,
            } => make_wclass(alpha, beta, gamma, delta, lambda),
            StateSpec::Dicke { n, m } => make_dicke(n, m),
            StateSpec::Custom { ref amplitudes } => {
                PureState::new(amplitudes.iter().map(|p| C64::new(p[0], p[1])).collect())
            }
        }
    }

    pub fn num_qubits(&self) -> usize {
        match self {
            StateSpec::Gghz { n, .. } | StateSpec::Ms { n, .. } | StateSpec::Dicke { n, .. } => *n,
            StateSpec::Wclass { .. } => 4,
            StateSpec::Custom { amplitudes } => amplitudes.len().trailing_zeros() as usize,
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            StateSpec::Gghz { .. } => "GGHZ",
            StateSpec::Ms { .. } => "MS",
            StateSpec::Wclass { .. } => "WCLASS",
            StateSpec::Dicke { .. } => "DICKE",
            StateSpec::Custom { .. } => "CUSTOM",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};

    fn re(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    fn nonzero(psi: &PureState) -> Vec<(usize, C64)> {
        psi.amplitudes()
            .iter()
            .copied()
            .enumerate()
            .filter(|(_, a)| a.norm() > 1e-15)
            .collect()
    }

    #[test]
    fn gghz_examples() {
        let ghz = make_gghz(4, FRAC_PI_4).unwrap();
        assert_eq!(nonzero(&ghz).len(), 2);
        assert_abs_diff_eq!(ghz.amplitudes()[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(ghz.amplitudes()[15].re, FRAC_1_SQRT_2, epsilon = 1e-15);

        let prod = make_gghz(4, 0.0).unwrap();
        assert_eq!(nonzero(&prod), vec![(0, re(1.0))]);

        assert!(matches!(make_gghz(2, 0.3), Err(Error::InvalidArity(_))));
    }

    #[test]
    fn ms_examples() {
        let a = make_ms(4, 0.0).unwrap();
        assert_eq!(
            nonzero(&a),
            vec![(0b0000, re(FRAC_1_SQRT_2)), (0b1110, re(FRAC_1_SQRT_2))]
        );
        let b = make_ms(4, FRAC_PI_2).unwrap();
        let ghz = make_gghz(4, FRAC_PI_4).unwrap();
        for (x, y) in b.amplitudes().iter().zip(ghz.amplitudes()) {
            assert!((x - y).norm() < 1e-15);
        }
        let c = make_ms(4, FRAC_PI_3).unwrap();
        assert_eq!(nonzero(&c).len(), 3);
        assert_abs_diff_eq!(c.norm(), 1.0, epsilon = 1e-12);
        assert!(matches!(make_ms(3, 0.1), Err(Error::InvalidArity(_))));
    }

    #[test]
    fn wclass_examples() {
        let w = make_wclass(0.5, 0.5, 0.5, 0.5, 0.0).unwrap();
        let dicke = make_dicke(4, 3).unwrap();
        assert!(w
            .amplitudes()
            .iter()
            .zip(dicke.amplitudes())
            .all(|(x, y)| (x - y).norm() < 1e-15));

        let basis = make_wclass(1.0, 0.0, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(nonzero(&basis), vec![(0b1000, re(1.0))]);

        let f_max = make_wclass(0.0, (2.0f64 / 7.0).sqrt(), (3.0f64 / 7.0).sqrt(), (2.0f64 / 7.0).sqrt(), 0.0)
            .unwrap();
        assert_eq!(nonzero(&f_max).len(), 3);

        assert!(matches!(
            make_wclass(0.5, 0.5, 0.5, 0.5, 0.5),
            Err(Error::InvalidNormalization(_))
        ));
    }

    #[test]
    fn dicke_examples() {
        let w = make_dicke(4, 3).unwrap();
        let nz = nonzero(&w);
        assert_eq!(
            nz.iter().map(|p| p.0).collect::<Vec<_>>(),
            vec![0b0001, 0b0010, 0b0100, 0b1000]
        );
        assert!(nz.iter().all(|p| (p.1.re - 0.5).abs() < 1e-15));

        let bell = make_dicke(2, 1).unwrap();
        assert_eq!(nonzero(&bell).iter().map(|p| p.0).collect::<Vec<_>>(), vec![1, 2]);
        assert_abs_diff_eq!(bell.amplitudes()[1].re, FRAC_1_SQRT_2, epsilon = 1e-15);

        assert_eq!(nonzero(&make_dicke(4, 4).unwrap()), vec![(0, re(1.0))]);
        assert!(matches!(make_dicke(4, 5), Err(Error::InvalidArity(_))));
    }

    #[test]
    fn density_examples() {
        let zero = PureState::basis(1, 0).unwrap().to_density();
        assert_eq!(zero.entries()[(0, 0)], re(1.0));
        assert_eq!(zero.entries()[(1, 1)], ZERO);

        let bell = PureState::normalized(vec![re(1.0), ZERO, ZERO, re(1.0)]).unwrap();
        let rho = bell.to_density();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            assert_abs_diff_eq!(rho.entries()[(i, j)].re, 0.5, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(rho.entries()[(1, 1)].re, 0.0);

        let g = make_gghz(4, FRAC_PI_6).unwrap().to_density();
        assert_abs_diff_eq!(g.purity(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn gghz_reduction_is_diagonal_mixture() {
        let theta = 0.37;
        let rho = make_gghz(4, theta).unwrap().to_density();
        let red = rho.partial_trace(&[0, 1, 2]).unwrap();
        let mut expected = CMatrix::zeros(8);
        expected[(0, 0)] = re(theta.cos().powi(2));
        expected[(7, 7)] = re(theta.sin().powi(2));
        assert!(red.entries().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn ms_reduction_abc_matches_closed_form() {
        let theta = 1.1;
        let red = make_ms(4, theta).unwrap().to_density().partial_trace(&[0, 1, 2]).unwrap();
        let mut expected = CMatrix::zeros(8);
        expected[(0, 0)] = re(0.5);
        expected[(7, 7)] = re(0.5);
        expected[(0, 7)] = re(0.5 * theta.cos());
        expected[(7, 0)] = re(0.5 * theta.cos());
        assert!(red.entries().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn product_state_reduction() {
        let rho = PureState::basis(4, 0).unwrap().to_density();
        let red = rho.partial_trace(&[1, 3]).unwrap();
        assert_eq!(red.num_qubits(), 2);
        let mut expected = CMatrix::zeros(4);
        expected[(0, 0)] = re(1.0);
        assert!(red.entries().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn partial_trace_preserves_qubit_order() {
        // |0⟩_a |1⟩_b |1⟩_c |0⟩_d  → keeping (b, d) gives |10⟩
        let rho = PureState::basis(4, 0b0110).unwrap().to_density();
        let red = rho.partial_trace(&[1, 3]).unwrap();
        assert_abs_diff_eq!(red.entries()[(0b10, 0b10)].re, 1.0);
    }

    #[test]
    fn partial_trace_index_errors() {
        let rho = DensityMatrix::maximally_mixed(3);
        assert!(matches!(rho.partial_trace(&[]), Err(Error::Index(_))));
        assert!(matches!(rho.partial_trace(&[0, 3]), Err(Error::Index(_))));
        assert!(matches!(rho.partial_trace(&[1, 0]), Err(Error::Index(_))));
        assert!(matches!(rho.partial_trace(&[1, 1]), Err(Error::Index(_))));
    }

    #[test]
    fn pure_reduce_equals_density_partial_trace() {
        let psi = make_wclass(0.1, 0.3, -0.5, 0.7, (1.0f64 - 0.01 - 0.09 - 0.25 - 0.49).sqrt()).unwrap();
        for keep in [&[0, 1, 2][..], &[0, 2, 3], &[1, 3], &[2]] {
            let a = psi.reduce(keep).unwrap();
            let b = psi.to_density().partial_trace(keep).unwrap();
            assert!(a.entries().max_abs_diff(b.entries()) < 1e-15);
        }
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(CMatrix::identity(4).scale(re(0.25))).is_ok());
        assert!(matches!(
            DensityMatrix::new(CMatrix::identity(4)),
            Err(Error::InvalidState(_))
        ));
        let mut not_psd = CMatrix::zeros(2);
        not_psd[(0, 0)] = re(1.5);
        not_psd[(1, 1)] = re(-0.5);
        assert!(matches!(DensityMatrix::new(not_psd), Err(Error::InvalidState(_))));
        assert!(matches!(
            DensityMatrix::new(CMatrix::identity(3)),
            Err(Error::InvalidArity(_))
        ));
    }

    #[test]
    fn state_spec_json_shape() {
        let spec: StateSpec =
            serde_json::from_str(r#"{"family":"GGHZ","n":4,"theta":0.7853981633974483}"#).unwrap();
        assert_eq!(spec, StateSpec::Gghz { n: 4, theta: FRAC_PI_4 });
        let w: StateSpec = serde_json::from_str(
            r#"{"family":"WCLASS","alpha":0.5,"beta":0.5,"gamma":0.5,"delta":0.5}"#,
        )
        .unwrap();
        assert_eq!(w.num_qubits(), 4);
        assert!(serde_json::from_str::<StateSpec>(r#"{"family":"GGHZ","n":4,"theta":0,"x":1}"#).is_err());
        let back: StateSpec = serde_json::from_str(&serde_json::to_string(&spec).unwrap()).unwrap();
        assert_eq!(back, spec);
    }
}
