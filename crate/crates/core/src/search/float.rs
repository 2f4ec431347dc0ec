use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use super::Reduced;

/// Budget and seed for the heuristic search.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatConfig {
    pub starts: usize,
    pub seed: u64,
    pub iterations: usize,
}

impl Default for FloatConfig {
    fn default() -> Self {
        FloatConfig {
            starts: 32,
            seed: 0,
            iterations: 400,
        }
    }
}

fn unit(r: &mut SplitMix64) -> f64 {
    (r.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Euclidean projection onto `{t : a_k·t + b_k ≥ 0}` by Dykstra's method.
fn project(r: &Reduced<f64>, t: [f64; 3]) -> [f64; 3] {
    let m = r.ineq.len();
    let mut x = t;
    let mut inc = vec![[0.0; 3]; m];
    for _ in 0..500 {
        let prev = x;
        for (k, (a, b)) in r.ineq.iter().enumerate() {
            let y: [f64; 3] = std::array::from_fn(|i| x[i] + inc[k][i]);
            let norm2: f64 = a.iter().map(|v| v * v).sum();
            let s = a.iter().zip(&y).map(|(ai, yi)| ai * yi).sum::<f64>() + b;
            let z = if s < 0.0 && norm2 > 0.0 {
                std::array::from_fn(|i| y[i] - s / norm2 * a[i])
            } else {
                y
            };
            inc[k] = std::array::from_fn(|i| y[i] - z[i]);
            x = z;
        }
        if prev.iter().zip(&x).all(|(p, q)| (p - q).abs() < 1e-15) {
            break;
        }
    }
    x
}

/// Best `(t, F(t))` over all starts; ties keep the earlier start.
pub(super) fn multistart(r: &Reduced<f64>, cfg: &FloatConfig) -> Option<([f64; 3], f64)> {
    let mut rng = SplitMix64::seed_from_u64(cfg.seed);
    let lip = r.h.iter().flatten().map(|v| v * v).sum::<f64>().sqrt() + 1e-9;
    let step = 1.0 / lip;
    let mu = r.mu;
    let mut best: Option<([f64; 3], f64)> = None;
    for _ in 0..cfg.starts {
        let start = [unit(&mut rng), mu * unit(&mut rng), mu * mu * unit(&mut rng)];
        let mut t = project(r, start);
        for _ in 0..cfg.iterations {
            let g = r.gradient(&t);
            let next = project(r, std::array::from_fn(|i| t[i] + step * g[i]));
            let moved = next.iter().zip(&t).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            t = next;
            if moved < 1e-13 {
                break;
            }
        }
        if !r.ineq.iter().all(|(a, b)| a.iter().zip(&t).map(|(x, y)| x * y).sum::<f64>() + b >= -1e-9) {
            continue;
        }
        let v = r.f(&t);
        if best.as_ref().is_none_or(|(_, b)| v > *b) {
            best = Some((t, v));
        }
    }
    best
}
