//! Independent oracles and fixtures shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use svl::correlations::CorrelationTensor3;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random point on the unit sphere in `dim` dimensions.
pub fn unit_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| StandardNormal.sample(rng)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 1e-6 {
            return v.into_iter().map(|x| x / n).collect();
        }
    }
}

/// Directions `θ = kπ/8`, `φ = lπ/8`, poles counted once: 114 points.
pub fn grid_directions() -> Vec<[f64; 3]> {
    let step = std::f64::consts::PI / 8.0;
    let mut out = vec![[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]];
    for k in 1..8 {
        let theta = step * k as f64;
        for l in 0..16 {
            let phi = step * l as f64;
            out.push([theta.sin() * phi.cos(), theta.sin() * phi.sin(), theta.cos()]);
        }
    }
    out
}

/// Exhaustive search of the Svetlichny value over the π/8 grid.
///
/// Bob's and Charlie's four directions run over every grid point. For fixed
/// `b, b', c, c'` the value is `a·u + a'·w` with
/// `u = N(b,c) + N(b,c') + N(b',c) − N(b',c')`,
/// `w = N(b,c) − N(b,c') − N(b',c) − N(b',c')`, `N(y,z)ᵢ = Σ m_ijk yⱼ zₖ`,
/// so Alice's pair is closed exactly as `|u| + |w|`. The result is therefore at
/// least the value of every point of the full twelve-angle grid.
pub fn grid_search_max(t: &CorrelationTensor3) -> f64 {
    let dirs = grid_directions();
    let g = dirs.len();
    let mut n = vec![[0.0; 3]; g * g];
    for (p, y) in dirs.iter().enumerate() {
        for (q, z) in dirs.iter().enumerate() {
            let mut acc = [0.0; 3];
            for (i, a) in acc.iter_mut().enumerate() {
                for j in 0..3 {
                    for k in 0..3 {
                        *a += t.m[i][j][k] * y[j] * z[k];
                    }
                }
            }
            n[p * g + q] = acc;
        }
    }
    let norm = |v: [f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    (0..g)
        .into_par_iter()
        .map(|b| {
            let mut best = f64::NEG_INFINITY;
            for b_p in 0..g {
                for c in 0..g {
                    let nbc = n[b * g + c];
                    let nb_pc = n[b_p * g + c];
                    for c_p in 0..g {
                        let nbc_p = n[b * g + c_p];
                        let nb_pc_p = n[b_p * g + c_p];
                        let u: [f64; 3] = std::array::from_fn(|i| nbc[i] + nbc_p[i] + nb_pc[i] - nb_pc_p[i]);
                        let w: [f64; 3] = std::array::from_fn(|i| nbc[i] - nbc_p[i] - nb_pc[i] - nb_pc_p[i]);
                        best = best.max(norm(u) + norm(w));
                    }
                }
            }
            best
        })
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

/// Maximizes `Σ uᵢxᵢ + Σ vᵢyᵢ` over the unit sphere in R⁸ by projected
/// gradient ascent from a fixed start.
pub fn projected_gradient_max(u: &[f64; 4], v: &[f64; 4]) -> f64 {
    let c: Vec<f64> = u.iter().chain(v).copied().collect();
    let mut z = vec![1.0 / 8f64.sqrt(); 8];
    let objective = |z: &[f64]| z.iter().zip(&c).map(|(a, b)| a * b).sum::<f64>();
    let step = 0.5;
    for _ in 0..100_000 {
        let mut next: Vec<f64> = z.iter().zip(&c).map(|(zi, ci)| zi + step * ci).collect();
        let n = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n == 0.0 {
            break;
        }
        next.iter_mut().for_each(|x| *x /= n);
        let moved = next.iter().zip(&z).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        z = next;
        if moved < 1e-15 {
            break;
        }
    }
    objective(&z)
}

/// Random W-class coefficients `(α, β, γ, δ, λ)` with unit squared norm;
/// `lambda` selects whether `λ` is drawn or fixed at zero. All coefficients
/// nonnegative: local phase flips map the general real case onto this one.
pub fn random_wclass(rng: &mut ChaCha8Rng, lambda: bool) -> [f64; 5] {
    let dim = if lambda { 5 } else { 4 };
    let v = unit_vector(rng, dim);
    let mut out = [0.0; 5];
    for (o, x) in out.iter_mut().zip(&v) {
        *o = x.abs();
    }
    out
}

/// `count` evenly spaced points of `[lo, hi]`, endpoints included.
pub fn grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64).collect()
}
