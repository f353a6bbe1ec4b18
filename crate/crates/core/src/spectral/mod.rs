//! Spectral certificates for `C_t`, `t < 1`: eigenvector residuals,
//! finite-section spectra and operator-norm sandwiches.

mod bounds;
mod checks;
mod search;

pub use bounds::{tail_upper_bound, upper_bound, UpperBound};
pub use checks::{
    cesinf_nondensity_check, compactness_decay, multiplier_norm_check, resolvent_norm_check,
    shift_norm_check, DecayPoint,
};
pub use search::{maximize_ratio, SearchOptions, SearchResult};

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{check_unit_interval, Error, Result};
use crate::operators::{cesaro_matrix, cesaro_slice, eigenvector, OperatorSpec};
use crate::seq::{canonical, geometric, xi, Seq};
use crate::spaces::SpaceSpec;

/// Residual of the `m`-th eigenvector of `C_t` measured in one space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenCertificate {
    pub t: f64,
    pub m: usize,
    pub n: usize,
    pub lambda: f64,
    /// `||C_t x - lambda x|| / ||x||` on the prefix.
    pub residual: f64,
    pub space: SpaceSpec,
}

/// Certifies that `1/(m+1)` is an eigenvalue of `C_t` with eigenvector
/// `x^{[m]}`. Because `C_t` is lower triangular the prefix residual is the
/// truncation of the exact (zero) residual, so only rounding remains.
pub fn eigen_certificate(
    t: f64,
    m: usize,
    n: usize,
    space: &SpaceSpec,
) -> Result<EigenCertificate> {
    check_unit_interval("t", t, false)?;
    let x = eigenvector(t, m, n)?;
    let lambda = 1.0 / (m as f64 + 1.0);
    let norm = space.prepare(n)?;
    let image = cesaro_slice(t, x.as_slice());
    let diff: Vec<f64> = image
        .iter()
        .zip(x.iter())
        .map(|(a, b)| a - lambda * b)
        .collect();
    let residual = norm.eval(&diff) / norm.eval(x.as_slice());
    Ok(EigenCertificate {
        t,
        m,
        n,
        lambda,
        residual,
        space: space.clone(),
    })
}

/// Eigenvalues of an `N x N` section of `C_t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionSpectrum {
    pub t: f64,
    pub n: usize,
    /// Sorted descending.
    pub eigenvalues: Vec<f64>,
    /// `max_k |eigenvalue_k - 1/(k+1)|`.
    pub max_deviation: f64,
    /// Hausdorff distance from `eigenvalues + {0}` to `Lambda + {0}`.
    pub hausdorff: f64,
}

/// The section is lower triangular, so its eigenvalues are read off the
/// diagonal: `{1/(k+1) : k < N}` for every `t`.
pub fn finite_section_eigenvalues(t: f64, n: usize) -> Result<SectionSpectrum> {
    check_unit_interval("t", t, false)?;
    let matrix = cesaro_matrix(t, n)?;
    let mut eigenvalues = matrix.diagonal();
    eigenvalues.sort_by(|a, b| b.total_cmp(a));
    let max_deviation = eigenvalues
        .iter()
        .enumerate()
        .map(|(k, v)| (v - 1.0 / (k as f64 + 1.0)).abs())
        .fold(0.0, f64::max);
    let hausdorff = hausdorff_to_lambda(&eigenvalues);
    Ok(SectionSpectrum {
        t,
        n,
        eigenvalues,
        max_deviation,
        hausdorff,
    })
}

fn lambda_point(k: usize) -> f64 {
    1.0 / (k as f64 + 1.0)
}

/// Distance from `v >= 0` to the closed set `Lambda + {0}`.
fn distance_to_lambda(v: f64) -> f64 {
    if v <= 0.0 {
        return -v;
    }
    if v >= 1.0 {
        return v - 1.0;
    }
    // 1/(k+1) brackets v for k near 1/v - 1.
    let k = (1.0 / v - 1.0).floor() as usize;
    let mut d = v;
    for j in k.saturating_sub(1)..=k + 1 {
        d = d.min((v - lambda_point(j)).abs());
    }
    d
}

/// Hausdorff distance between `points + {0}` and `Lambda + {0}`, where
/// `Lambda = {1/(k+1) : k >= 0}`.
pub fn hausdorff_to_lambda(points: &[f64]) -> f64 {
    let mut set: Vec<f64> = points.to_vec();
    set.push(0.0);
    set.sort_by(|a, b| a.total_cmp(b));

    let forward = set
        .iter()
        .map(|&v| distance_to_lambda(v))
        .fold(0.0, f64::max);

    let nearest = |v: f64| -> f64 {
        let idx = set.partition_point(|&s| s < v);
        let mut d = f64::INFINITY;
        if idx < set.len() {
            d = d.min((set[idx] - v).abs());
        }
        if idx > 0 {
            d = d.min((v - set[idx - 1]).abs());
        }
        d
    };
    // Points of Lambda below the running maximum are within it of 0.
    let mut backward = 0.0f64;
    let mut k = 0usize;
    while lambda_point(k) > backward {
        backward = backward.max(nearest(lambda_point(k)));
        k += 1;
    }
    forward.max(backward)
}

/// Computes the section spectrum with a general dense eigen-solver and
/// returns the largest deviation from `1/(k+1)`.
///
/// The section is balanced by a diagonal similarity and then conjugated by
/// a random orthogonal matrix so the solver cannot exploit the triangular
/// structure.
pub fn dense_eigen_crosscheck(t: f64, n: usize, seed: u64) -> Result<f64> {
    check_unit_interval("t", t, false)?;
    if n > 64 {
        return Err(Error::Domain {
            name: "N",
            value: n as f64,
            expected: "at most 64 for the dense cross-check",
        });
    }
    // The section is far from normal, so its eigenvalues are badly
    // conditioned for t >= 0.5. Balance with diag(s^k) first; this keeps
    // the spectrum and damps the off-diagonal ratio to t/s <= 0.1.
    let s = (10.0 * t).max(1.0);
    let mut a = cesaro_matrix(t, n)?.to_dense();
    for i in 0..n {
        for j in 0..i {
            a[(i, j)] *= s.powi(j as i32 - i as i32);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let random = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    let q = random.qr().q();
    let conjugated = q.transpose() * a * &q;
    let mut eigen: Vec<(f64, f64)> = conjugated
        .complex_eigenvalues()
        .iter()
        .map(|c| (c.re, c.im))
        .collect();
    eigen.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(eigen
        .iter()
        .enumerate()
        .map(|(k, (re, im))| (re - lambda_point(k)).hypot(*im))
        .fold(0.0, f64::max))
}

/// A search-derived lower bound for an operator norm paired with the
/// analytic upper bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormBoundCertificate {
    pub space: SpaceSpec,
    pub operator: OperatorSpec,
    pub n: usize,
    /// `||op(witness)||` for the unit-norm witness.
    pub lower: f64,
    /// `None` when no analytic bound is known (read as `+inf`).
    pub upper: Option<f64>,
    pub witness: Seq,
    pub bound_source: String,
    /// `||op(e_0)|| / ||e_0||`, the canonical test-vector value.
    pub e0_ratio: f64,
    pub seed: u64,
    pub evaluations: usize,
}

impl NormBoundCertificate {
    /// `lower <= upper (1 + slack)`; vacuous when no upper bound exists.
    pub fn is_consistent(&self, slack: f64) -> bool {
        self.lower >= 0.0 && self.upper.map_or(true, |u| self.lower <= u * (1.0 + slack))
    }

    /// Short hex digest of the witness bytes.
    pub fn witness_hash(&self) -> String {
        let mut hasher = Sha256::new();
        for v in self.witness.iter() {
            hasher.update(v.to_le_bytes());
        }
        hex::encode(&hasher.finalize()[..8])
    }
}

fn standard_seeds(op: &OperatorSpec, n: usize) -> Result<Vec<Vec<f64>>> {
    let mut seeds = vec![
        canonical(0, n)?.into_vec(),
        Seq::ones(n)?.into_vec(),
        xi(n)?.into_vec(),
        geometric(0.5, n)?.into_vec(),
    ];
    if let Some(t) = op.t() {
        if t < 1.0 {
            seeds.push(geometric(t, n)?.into_vec());
        }
    }
    if n > 1 {
        seeds.push(canonical(1, n)?.into_vec());
    }
    Ok(seeds)
}

/// Lower-bounds `||op||` on `space` by searching nonnegative prefixes of
/// length `n`, and pairs the result with the analytic upper bound.
pub fn norm_lower_bound(
    space: &SpaceSpec,
    op: &OperatorSpec,
    n: usize,
    opts: &SearchOptions,
) -> Result<NormBoundCertificate> {
    let bound = upper_bound(space, op)?;
    if let OperatorSpec::Convolution { a } = op {
        if a.len() > n {
            return Err(Error::LengthMismatch {
                left: a.len(),
                right: n,
            });
        }
    }
    let norm = space.prepare(n)?;
    let seeds = standard_seeds(op, n)?;
    let e0 = &seeds[0];
    let e0_ratio = norm.eval(&op.apply_slice(e0)) / norm.eval(e0);
    let result = maximize_ratio(&norm, |x| op.apply_slice(x), &seeds, opts);
    let lower = norm.eval(&op.apply_slice(&result.witness));
    Ok(NormBoundCertificate {
        space: space.clone(),
        operator: op.clone(),
        n,
        lower,
        upper: bound.value,
        witness: Seq::new(result.witness)?,
        bound_source: bound.source.to_owned(),
        e0_ratio,
        seed: opts.seed,
        evaluations: result.evaluations,
    })
}

/// CSV table of certificates:
/// `space,op,t,p,q,lower,upper,witness_hash,seed`.
pub fn certificates_csv(certs: &[NormBoundCertificate]) -> Result<String> {
    use crate::report::format_float;
    let opt = |v: Option<f64>| v.map(format_float).unwrap_or_default();
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record([
        "space",
        "op",
        "t",
        "p",
        "q",
        "lower",
        "upper",
        "witness_hash",
        "seed",
    ])?;
    for c in certs {
        writer.write_record([
            c.space.to_string(),
            c.operator.to_string(),
            opt(c.operator.t()),
            opt(c.space.p()),
            opt(c.space.q()),
            format_float(c.lower),
            opt(c.upper),
            c.witness_hash(),
            c.seed.to_string(),
        ])?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
