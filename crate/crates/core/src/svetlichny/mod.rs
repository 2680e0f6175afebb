//! The Svetlichny operator
//!
//! `S = A((B+B')C + (B−B')C') + A'((B−B')C − (B+B')C')`
//!
//! built from six dichotomic qubit observables `x·σ`, together with its
//! expectation value, the `(d, d', ω)` reparameterization of Bob's pair, and
//! numerical maximization over all settings.

mod optimize;

pub use optimize::{maximize_svetlichny, nelder_mead, NelderMeadResult, OptimizerOptions, SvetlichnyMaximum};

use serde::{Deserialize, Serialize};

use crate::correlations::{correlation_tensor, CorrelationTensor3};
use crate::error::Result;
use crate::linalg::{pauli, CMatrix, C64};
use crate::qstate::DensityMatrix;

pub type Vec3 = [f64; 3];

pub(crate) fn dot(x: &Vec3, y: &Vec3) -> f64 {
    x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
}

pub(crate) fn norm(x: &Vec3) -> f64 {
    dot(x, x).sqrt()
}

fn axpy(alpha: f64, x: &Vec3, y: &Vec3) -> Vec3 {
    [alpha * x[0] + y[0], alpha * x[1] + y[1], alpha * x[2] + y[2]]
}

/// Unit vector in spherical coordinates: `(sin θ cos φ, sin θ sin φ, cos θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub theta: f64,
    pub phi: f64,
}

impl BlochVector {
    pub const fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    pub const Z: BlochVector = BlochVector::new(0.0, 0.0);
    pub const X: BlochVector = BlochVector::new(std::f64::consts::FRAC_PI_2, 0.0);
    pub const Y: BlochVector = BlochVector::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);

    pub fn cartesian(&self) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Direction of a nonzero vector. `φ` is taken in `(−π, π]`.
    pub fn from_cartesian(v: &Vec3) -> Self {
        let n = norm(v);
        let z = (v[2] / n).clamp(-1.0, 1.0);
        Self {
            theta: z.acos(),
            phi: v[1].atan2(v[0]),
        }
    }
}

/// The qubit observable `v·σ`.
pub fn observable(v: &BlochVector) -> CMatrix {
    observable_from_cartesian(&v.cartesian())
}

fn observable_from_cartesian(v: &Vec3) -> CMatrix {
    let r = |x: f64| C64::new(x, 0.0);
    let terms = [pauli(1).scale(r(v[0])), pauli(2).scale(r(v[1])), pauli(3).scale(r(v[2]))];
    &(&terms[0] + &terms[1]) + &terms[2]
}

/// Measurement directions for the two settings of each of the three parties.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SvetlichnySettings {
    pub a: BlochVector,
    pub a_p: BlochVector,
    pub b: BlochVector,
    pub b_p: BlochVector,
    pub c: BlochVector,
    pub c_p: BlochVector,
}

impl SvetlichnySettings {
    pub fn from_angles(angles: &[f64; 12]) -> Self {
        let v = |k: usize| BlochVector::new(angles[2 * k], angles[2 * k + 1]);
        Self {
            a: v(0),
            a_p: v(1),
            b: v(2),
            b_p: v(3),
            c: v(4),
            c_p: v(5),
        }
    }

    pub fn angles(&self) -> [f64; 12] {
        let mut out = [0.0; 12];
        for (k, v) in self.vectors().iter().enumerate() {
            out[2 * k] = v.theta;
            out[2 * k + 1] = v.phi;
        }
        out
    }

    /// `[a, a', b, b', c, c']`.
    pub fn vectors(&self) -> [BlochVector; 6] {
        [self.a, self.a_p, self.b, self.b_p, self.c, self.c_p]
    }

    pub fn from_vectors(v: [BlochVector; 6]) -> Self {
        Self {
            a: v[0],
            a_p: v[1],
            b: v[2],
            b_p: v[3],
            c: v[4],
            c_p: v[5],
        }
    }

    pub fn cartesian(&self) -> [Vec3; 6] {
        self.vectors().map(|v| v.cartesian())
    }
}

/// Builds `S` literally from the operator products.
pub fn svetlichny_operator(s: &SvetlichnySettings) -> CMatrix {
    let [a, a_p, b, b_p, c, c_p] = s.vectors().map(|v| observable(&v));
    let d = &b + &b_p;
    let d_p = &b - &b_p;
    let first = &d.kron(&c) + &d_p.kron(&c_p);
    let second = &d_p.kron(&c) - &d.kron(&c_p);
    &a.kron(&first) + &a_p.kron(&second)
}

/// `Tr(S ρ)`, evaluated through the 8×8 operator.
pub fn svetlichny_value(rho: &DensityMatrix, s: &SvetlichnySettings) -> Result<f64> {
    correlation_tensor(rho)?; // arity check
    let e = rho.expectation(&svetlichny_operator(s));
    Ok(e.re)
}

/// Signs of the eight `T(x, y, z)` terms of `Tr(Sρ)` indexed by
/// `(x ∈ {a, a'}, y ∈ {b, b'}, z ∈ {c, c'})`.
pub(crate) const SIGNS: [[[f64; 2]; 2]; 2] = [
    // a:  (b,c) (b,c')   (b',c) (b',c')
    [[1.0, 1.0], [1.0, -1.0]],
    // a'
    [[1.0, -1.0], [-1.0, -1.0]],
];

/// `Tr(S ρ)` from the correlation tensor; only three-body correlators enter.
pub fn svetlichny_value_from_tensor(t: &CorrelationTensor3, v: &[Vec3; 6]) -> f64 {
    let mut acc = 0.0;
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                acc += SIGNS[x][y][z] * t.contract(&v[x], &v[2 + y], &v[4 + z]);
            }
        }
    }
    acc
}

/// Gradient of the (multilinear) value with respect to vector `slot` of
/// `[a, a', b, b', c, c']`; the value equals `v[slot] · gradient`.
pub(crate) fn partial_gradient(t: &CorrelationTensor3, v: &[Vec3; 6], slot: usize) -> Vec3 {
    let party = slot / 2;
    let which = slot % 2;
    let mut g = [0.0; 3];
    for o1 in 0..2 {
        for o2 in 0..2 {
            let idx = match party {
                0 => [which, o1, o2],
                1 => [o1, which, o2],
                _ => [o1, o2, which],
            };
            let sign = SIGNS[idx[0]][idx[1]][idx[2]];
            let x = &v[idx[0]];
            let y = &v[2 + idx[1]];
            let z = &v[4 + idx[2]];
            for (l, gl) in g.iter_mut().enumerate() {
                let mut e = [0.0; 3];
                e[l] = 1.0;
                *gl += sign
                    * match party {
                        0 => t.contract(&e, y, z),
                        1 => t.contract(x, &e, z),
                        _ => t.contract(x, y, &e),
                    };
            }
        }
    }
    g
}

/// Bob's pair rewritten as `b + b' = 2 cos ω d`, `b − b' = 2 sin ω d'` with
/// `d ⟂ d'` unit vectors and `ω ∈ [0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BbDecomposition {
    pub d: BlochVector,
    pub d_p: BlochVector,
    pub omega: f64,
}

const DEGENERATE: f64 = 1e-12;

/// Unit vector orthogonal to `fixed`: Gram–Schmidt of x̂, or of ŷ when
/// `fixed` is parallel to x̂.
fn orthogonal_pick(fixed: &Vec3) -> Vec3 {
    for e in [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]] {
        let r = axpy(-dot(&e, fixed), fixed, &e);
        let n = norm(&r);
        if n > 1e-8 {
            return [r[0] / n, r[1] / n, r[2] / n];
        }
    }
    unreachable!("x̂ and ŷ cannot both be parallel to a unit vector")
}

pub fn decompose_bb(b: &BlochVector, b_p: &BlochVector) -> BbDecomposition {
    let (b, b_p) = (b.cartesian(), b_p.cartesian());
    let sum = axpy(1.0, &b, &b_p);
    let diff = axpy(-1.0, &b_p, &b);
    let (ns, nd) = (norm(&sum), norm(&diff));
    let omega = nd.atan2(ns);
    let (d, d_p) = if ns < DEGENERATE {
        let d_p = [diff[0] / nd, diff[1] / nd, diff[2] / nd];
        (orthogonal_pick(&d_p), d_p)
    } else if nd < DEGENERATE {
        let d = [sum[0] / ns, sum[1] / ns, sum[2] / ns];
        (d, orthogonal_pick(&d))
    } else {
        (
            [sum[0] / ns, sum[1] / ns, sum[2] / ns],
            [diff[0] / nd, diff[1] / nd, diff[2] / nd],
        )
    };
    BbDecomposition {
        d: BlochVector::from_cartesian(&d),
        d_p: BlochVector::from_cartesian(&d_p),
        omega,
    }
}

/// `Tr(Sρ)` in the `ω` form
/// `2[cos ω⟨ADC⟩ + sin ω⟨AD'C'⟩ + sin ω⟨A'D'C⟩ − cos ω⟨A'DC'⟩]`
/// with `D = d·σ`, `D' = d'·σ` from [`decompose_bb`].
pub fn svetlichny_value_omega_form(rho: &DensityMatrix, s: &SvetlichnySettings) -> Result<f64> {
    correlation_tensor(rho)?;
    let dec = decompose_bb(&s.b, &s.b_p);
    let (a, a_p, c, c_p) = (observable(&s.a), observable(&s.a_p), observable(&s.c), observable(&s.c_p));
    let (d, d_p) = (observable(&dec.d), observable(&dec.d_p));
    let ev = |x: &CMatrix, y: &CMatrix, z: &CMatrix| rho.expectation(&x.kron(y).kron(z)).re;
    let (sw, cw) = dec.omega.sin_cos();
    Ok(2.0
        * (cw * ev(&a, &d, &c) + sw * ev(&a, &d_p, &c_p) + sw * ev(&a_p, &d_p, &c)
            - cw * ev(&a_p, &d, &c_p)))
}

/// Closed-form maximum of `Σ uᵢxᵢ + Σ vᵢyᵢ` subject to `Σ(xᵢ² + yᵢ²) = 1`:
/// `√(Σuᵢ² + Σvᵢ²)`.
pub fn lagrange_max(u: &[f64; 4], v: &[f64; 4]) -> f64 {
    u.iter().chain(v).map(|x| x * x).sum::<f64>().sqrt()
}
