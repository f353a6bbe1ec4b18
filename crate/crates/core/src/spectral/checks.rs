//! Norm checks for the shift, resolvent and convolution operators, tail
//! (compactness) estimates and the `ces_inf` non-density witness.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::operators::{apply_resolvent_partial, apply_shift, cesaro_slice, OperatorSpec};
use crate::report::CheckReport;
use crate::seq::{canonical, squares_witness, Seq};
use crate::spaces::{ces0_or_cesinf_norm, dp_norm, lp_norm, SpaceSpec};

use super::bounds::{tail_upper_bound, SRC_MULTIPLIER, SRC_RESOLVENT_DP, SRC_SHIFT_DP};
use super::norm_lower_bound;
use super::search::{maximize_ratio, SearchOptions};

/// Verifies `||S^m||_{d_p} = (m+1)^{1/p}`: the witness `e_0` attains it and
/// the search never exceeds it.
pub fn shift_norm_check(
    p: f64,
    m: usize,
    n: usize,
    opts: &SearchOptions,
    slack: f64,
) -> Result<Vec<CheckReport>> {
    if m + 1 > n {
        return Err(Error::OutOfRange { index: m, len: n });
    }
    let expected = (m as f64 + 1.0).powf(1.0 / p);
    let witness = dp_norm(p, &apply_shift(m, &canonical(0, n)?))?.value;
    let cert = norm_lower_bound(&SpaceSpec::Dp { p }, &OperatorSpec::Shift { m }, n, opts)?;
    Ok(vec![
        CheckReport::equal(
            "dp-shift-norm-witness",
            SRC_SHIFT_DP,
            witness,
            expected,
            1e-12,
        )
        .input("p", p)
        .input("m", m as u64)
        .input("n", n as u64),
        CheckReport::at_most(
            "dp-shift-norm-search",
            SRC_SHIFT_DP,
            cert.lower,
            expected,
            slack,
        )
        .input("p", p)
        .input("m", m as u64)
        .input("n", n as u64)
        .input("evaluations", cert.evaluations as u64)
        .seed(opts.seed),
    ])
}

/// Verifies `(1-t^p)^{-1/p} <= ||R_t||_{d_p} <= (1-t)^{-1-1/p}` using the
/// partial sum of order `order`, which must satisfy `t^order < 1e-15`.
pub fn resolvent_norm_check(
    p: f64,
    t: f64,
    n: usize,
    order: usize,
    opts: &SearchOptions,
    slack: f64,
) -> Result<Vec<CheckReport>> {
    check_unit_interval("t", t, false)?;
    if t.powi(order as i32) >= 1e-15 {
        return Err(Error::Domain {
            name: "M",
            value: order as f64,
            expected: "large enough that t^M < 1e-15",
        });
    }
    let lower_closed = (1.0 - t.powf(p)).powf(-1.0 / p);
    let upper_closed = (1.0 - t).powf(-1.0 - 1.0 / p);
    let witness = dp_norm(p, &apply_resolvent_partial(t, order, &canonical(0, n)?)?)?.value;
    let cert = norm_lower_bound(
        &SpaceSpec::Dp { p },
        &OperatorSpec::ResolventPartial { t, order },
        n,
        opts,
    )?;
    let tag = |r: CheckReport| {
        r.input("p", p)
            .input("t", t)
            .input("M", order as u64)
            .input("n", n as u64)
    };
    let mut reports = vec![
        tag(CheckReport::equal(
            "dp-resolvent-e0",
            "R_t e_0 = (t^n), a decreasing sequence: ||R_t e_0||_{d_p} = (1-t^p)^(-1/p)",
            witness,
            lower_closed,
            1e-9,
        )),
        tag(CheckReport::at_least(
            "dp-resolvent-lower",
            "(1-t^p)^(-1/p) <= ||R_t||",
            cert.lower,
            lower_closed,
            1e-9,
        ))
        .seed(opts.seed),
        tag(CheckReport::at_most(
            "dp-resolvent-upper",
            SRC_RESOLVENT_DP,
            cert.lower,
            upper_closed,
            slack,
        ))
        .seed(opts.seed),
    ];
    if t == 0.0 {
        reports.push(tag(CheckReport::equal(
            "dp-resolvent-identity",
            "R_0 = I",
            cert.lower,
            1.0,
            0.0,
        )));
    }
    Ok(reports)
}

/// Verifies `||a||_p <= ||T_a||_{l^p} <= ||a||_1` for a finitely supported
/// kernel `a` (zero-extended to length `n`).
pub fn multiplier_norm_check(
    a: &Seq,
    p: f64,
    n: usize,
    opts: &SearchOptions,
    slack: f64,
) -> Result<Vec<CheckReport>> {
    let kernel = a.resized(n)?;
    if kernel.as_slice()[a.len().min(n)..]
        .iter()
        .any(|v| *v != 0.0)
        || a.len() > n
    {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: n,
        });
    }
    let op = OperatorSpec::Convolution { a: kernel.clone() };
    let image = op.apply(&canonical(0, n)?)?;
    let e0_value = lp_norm(p, &image)?.value;
    let a_p = lp_norm(p, &kernel)?.value;
    let a_1 = lp_norm(1.0, &kernel)?.value;
    let cert = norm_lower_bound(&SpaceSpec::Lp { p }, &op, n, opts)?;
    Ok(vec![
        CheckReport::equal("multiplier-e0", "T_a e_0 = a", e0_value, a_p, 1e-12)
            .input("p", p)
            .input("n", n as u64),
        CheckReport::at_most("multiplier-upper", SRC_MULTIPLIER, cert.lower, a_1, slack)
            .input("p", p)
            .input("n", n as u64)
            .input("a_p", a_p)
            .seed(opts.seed)
            .also_require(
                cert.lower >= e0_value * (1.0 - 1e-12),
                "search value below ||T_a e_0||_p",
            ),
    ])
}

/// One point of a tail-norm decay curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayPoint {
    pub order: usize,
    /// Search lower estimate of `||C_t - C_t^[order]||`.
    pub estimate: f64,
    pub upper: Option<f64>,
    pub bound_source: String,
}

/// Estimates `||C_t - C_t^[M]||` on `space` for every `M` in `orders`
/// (prefix length `n`), each paired with the analytic bound when known.
///
/// Orders are processed from largest to smallest and each search is
/// warm-started with the previous witness. The tail for a smaller order
/// dominates the tail for a larger one coordinatewise, so that witness is
/// a valid lower bound and the estimates are non-increasing in `M`.
pub fn compactness_decay(
    space: &SpaceSpec,
    t: f64,
    orders: &[usize],
    n: usize,
    opts: &SearchOptions,
) -> Result<Vec<DecayPoint>> {
    check_unit_interval("t", t, false)?;
    let norm = space.prepare(n)?;
    let mut sorted: Vec<usize> = orders.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted.dedup();

    let mut previous: Option<(f64, Vec<f64>)> = None;
    let mut points = Vec::with_capacity(sorted.len());
    for &order in &sorted {
        let bound = tail_upper_bound(space, t, order);
        let estimate = if order + 1 >= n {
            0.0
        } else {
            let tail = |x: &[f64]| {
                let mut y = cesaro_slice(t, x);
                y[..=order].fill(0.0);
                y
            };
            let mut seeds = vec![canonical(order + 1, n)?.into_vec()];
            if let Some((_, w)) = &previous {
                seeds.push(w.clone());
            }
            let result = maximize_ratio(
                &norm,
                tail,
                &seeds,
                &opts.with_seed(opts.seed ^ order as u64),
            );
            let value = previous
                .as_ref()
                .map_or(result.value, |(v, _)| result.value.max(*v));
            previous = Some((value, result.witness));
            value
        };
        points.push(DecayPoint {
            order,
            estimate,
            upper: bound.value,
            bound_source: bound.source.to_owned(),
        });
    }
    Ok(orders
        .iter()
        .map(|o| {
            points
                .iter()
                .find(|p| p.order == *o)
                .cloned()
                .expect("every order was evaluated")
        })
        .collect())
}

/// The adversarial family of bounded vectors `y` with `||y||_inf <= bound`.
fn bounded_family(z: &Seq, bound: f64, rng: &mut ChaCha8Rng) -> Vec<(String, Vec<f64>)> {
    let n = z.len();
    let mut family = vec![
        ("zero".to_owned(), vec![0.0; n]),
        ("constant".to_owned(), vec![bound; n]),
        ("negative-constant".to_owned(), vec![-bound; n]),
        (
            "clipped-z".to_owned(),
            z.iter().map(|v| v.min(bound)).collect(),
        ),
        (
            "alternating".to_owned(),
            (0..n)
                .map(|i| if i % 2 == 0 { bound } else { -bound })
                .collect(),
        ),
    ];
    for k in 0..16 {
        let mut y: Vec<f64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
        let i = rng.gen_range(0..n);
        y[i] = if rng.gen() { bound } else { -bound };
        family.push((format!("random-{k}"), y));
    }
    family
}

/// Checks that the vector `z` with `k` at index `k^2` stays at `ces_inf`
/// distance at least 1/4 from every `y` with `||y||_inf <= M`, for each
/// `M` in `bounds`, using prefixes of length `n`.
pub fn cesinf_nondensity_check(bounds: &[f64], n: usize, seed: u64) -> Result<Vec<CheckReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let z = squares_witness(n)?;
    let mut reports = Vec::with_capacity(bounds.len());
    for &bound in bounds {
        if !(bound.is_finite() && bound >= 0.0) {
            return Err(Error::Domain {
                name: "M",
                value: bound,
                expected: "finite and >= 0",
            });
        }
        let k0 = 2 * bound.floor() as usize + 2;
        let needed = 4 * k0 * k0 + 1;
        if n < needed {
            return Err(Error::Length {
                len: n,
                min: needed,
            });
        }
        let mut worst = (f64::INFINITY, String::new());
        for (name, y) in bounded_family(&z, bound, &mut rng) {
            debug_assert!(y.iter().all(|v| v.abs() <= bound));
            let diff = Seq::new(z.iter().zip(&y).map(|(a, b)| a - b).collect())?;
            let distance = ces0_or_cesinf_norm(&diff).value;
            if distance < worst.0 {
                worst = (distance, name);
            }
        }
        reports.push(
            CheckReport::at_least(
                "cesinf-nondensity",
                "l^inf is not dense in ces_inf: ||z - y||_{ces_inf} >= 1/4",
                worst.0,
                0.25,
                0.0,
            )
            .input("M", bound)
            .input("k0", k0 as u64)
            .input("n", n as u64)
            .input("worst_candidate", worst.1)
            .seed(seed),
        );
    }
    Ok(reports)
}
