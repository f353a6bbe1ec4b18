//! Derivative-free maximization of `||A x|| / ||x||` over the nonnegative
//! cone.
//!
//! For positive operators and Riesz norms `||A x|| <= ||A |x| ||` and
//! `||x|| = || |x| ||`, so the supremum over the cone is the operator norm.
//! Multi-start random sampling picks a starting point, cyclic coordinate
//! ascent with multiplicative steps refines it.

use std::cell::Cell;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::spaces::PreparedNorm;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    /// Number of random starting vectors.
    pub starts: usize,
    /// Total number of ratio evaluations, starts included.
    pub budget: usize,
    pub seed: u64,
    /// Coordinate ascent stops once a full sweep improves the ratio by less
    /// than this relative amount at the smallest step.
    pub rel_tol: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            starts: 32,
            budget: 3000,
            seed: 42,
            rel_tol: 1e-10,
        }
    }
}

impl SearchOptions {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    /// Best ratio found.
    pub value: f64,
    /// Maximizer, normalized to unit norm.
    pub witness: Vec<f64>,
    pub evaluations: usize,
}

const MIN_STEP: f64 = 1e-4;

/// Maximizes `norm(op(x)) / norm(x)` over nonnegative `x` of length
/// `norm.len()`. Every vector in `seeds` is evaluated first, so the result
/// is never below the best seed.
pub fn maximize_ratio<F>(
    norm: &PreparedNorm,
    op: F,
    seeds: &[Vec<f64>],
    opts: &SearchOptions,
) -> SearchResult
where
    F: Fn(&[f64]) -> Vec<f64>,
{
    let len = norm.len();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let evaluations = Cell::new(0usize);
    let ratio = |x: &[f64]| -> f64 {
        evaluations.set(evaluations.get() + 1);
        let den = norm.eval(x);
        if den > 0.0 && den.is_finite() {
            norm.eval(&op(x)) / den
        } else {
            0.0
        }
    };

    let mut best: Option<(f64, Vec<f64>)> = None;
    let consider = |value: f64, x: Vec<f64>, best: &mut Option<(f64, Vec<f64>)>| {
        if best.as_ref().map_or(true, |(b, _)| value > *b) {
            *best = Some((value, x));
        }
    };

    for seed in seeds {
        debug_assert_eq!(seed.len(), len);
        let x: Vec<f64> = seed.iter().map(|v| v.abs()).collect();
        let value = ratio(&x);
        consider(value, x, &mut best);
    }
    for k in 0..opts.starts {
        let x = random_start(&mut rng, len, k);
        let value = ratio(&x);
        consider(value, x, &mut best);
    }

    let (mut value, mut x) = best.unwrap_or_else(|| (0.0, vec![0.0; len]));
    let mut step = 0.5;
    'outer: while evaluations.get() < opts.budget && value > 0.0 {
        let before = value;
        for i in 0..len {
            let scale = x.iter().fold(0.0f64, |m, v| m.max(*v));
            let current = x[i];
            let candidates = if current > 0.0 {
                [current * (1.0 + step), current * (1.0 - step)]
            } else {
                [scale * step, scale * step * step]
            };
            for c in candidates {
                if evaluations.get() >= opts.budget {
                    break 'outer;
                }
                x[i] = c;
                let trial = ratio(&x);
                if trial > value {
                    value = trial;
                    break;
                }
                x[i] = current;
            }
        }
        if value - before <= opts.rel_tol * value {
            step *= 0.25;
            if step < MIN_STEP {
                break;
            }
        }
    }

    let den = norm.eval(&x);
    let witness = if den > 0.0 {
        x.iter().map(|v| v / den).collect()
    } else {
        x
    };
    SearchResult {
        value,
        witness,
        evaluations: evaluations.get(),
    }
}

/// Random nonnegative vectors from a few shape families, cycled by `k`.
fn random_start(rng: &mut ChaCha8Rng, len: usize, k: usize) -> Vec<f64> {
    match k % 5 {
        0 => (0..len).map(|_| rng.gen::<f64>()).collect(),
        1 => {
            let mut x = vec![0.0; len];
            let count = rng.gen_range(1..=4.min(len));
            for _ in 0..count {
                let i = rng.gen_range(0..len.min(64));
                x[i] = rng.gen::<f64>() + 0.1;
            }
            x
        }
        2 => {
            let r: f64 = rng.gen_range(0.5..1.0);
            (0..len)
                .map(|n| (0.5 + rng.gen::<f64>()) * r.powi(n as i32))
                .collect()
        }
        3 => {
            let a: f64 = rng.gen_range(0.2..2.0);
            (0..len)
                .map(|n| (n as f64 + 1.0).powf(-a) * (1.0 + 0.1 * rng.gen::<f64>()))
                .collect()
        }
        _ => {
            let start = rng.gen_range(0..len);
            let width = rng.gen_range(1..=(len - start));
            (0..len)
                .map(|n| {
                    if (start..start + width).contains(&n) {
                        1.0
                    } else {
                        0.0
                    }
                })
                .collect()
        }
    }
}
