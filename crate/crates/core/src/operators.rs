//! Generalized Cesaro operators and their building blocks acting on
//! finite prefixes.
//!
//! Every operator here is lower triangular, so output coordinate `n`
//! depends only on input coordinates `0..=n`: the prefix of the image of a
//! zero-extended prefix is computed exactly.

use std::fmt;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};
use crate::seq::Seq;

/// Entries of an eigenvector larger than this abort the recurrence.
pub const EIGENVECTOR_OVERFLOW_GUARD: f64 = 1e300;

/// `C_t x`: entry `n` is `(sum_{k<=n} t^{n-k} x_k) / (n+1)`.
///
/// Uses the running sum `s_n = t s_{n-1} + x_n`, so the cost is linear.
pub fn apply_cesaro(t: f64, x: &Seq) -> Result<Seq> {
    check_unit_interval("t", t, true)?;
    Ok(Seq::from_vec_unchecked(cesaro_slice(t, x.as_slice())))
}

pub(crate) fn cesaro_slice(t: f64, x: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(x.len());
    let mut sum = 0.0;
    for (n, &v) in x.iter().enumerate() {
        sum = t * sum + v;
        out.push(sum / (n as f64 + 1.0));
    }
    out
}

/// `D x = (x_n / (n+1))_n`.
pub fn apply_diagonal(x: &Seq) -> Seq {
    Seq::from_vec_unchecked(diagonal_slice(x.as_slice(), usize::MAX))
}

/// Diagonal scaling restricted to coordinates `0..=order`; the rest is zeroed.
fn diagonal_slice(x: &[f64], order: usize) -> Vec<f64> {
    x.iter()
        .enumerate()
        .map(|(n, &v)| {
            if n <= order {
                v / (n as f64 + 1.0)
            } else {
                0.0
            }
        })
        .collect()
}

/// `S^m x`, keeping the input length.
pub fn apply_shift(m: usize, x: &Seq) -> Seq {
    Seq::from_vec_unchecked(shift_slice(m, x.as_slice()))
}

fn shift_slice(m: usize, x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut out = vec![0.0; n];
    if m < n {
        out[m..].copy_from_slice(&x[..n - m]);
    }
    out
}

/// Partial sum `sum_{n=0}^{order} t^n S^n x` of the resolvent series.
/// Exact on the prefix once `order >= len - 1`.
pub fn apply_resolvent_partial(t: f64, order: usize, x: &Seq) -> Result<Seq> {
    check_unit_interval("t", t, false)?;
    Ok(Seq::from_vec_unchecked(resolvent_slice(
        t,
        order,
        x.as_slice(),
    )))
}

fn resolvent_slice(t: f64, order: usize, x: &[f64]) -> Vec<f64> {
    let len = x.len();
    let mut out = vec![0.0; len];
    let mut coeff = 1.0;
    for shift in 0..=order.min(len.saturating_sub(1)) {
        if coeff == 0.0 {
            break;
        }
        for n in shift..len {
            out[n] += coeff * x[n - shift];
        }
        coeff *= t;
    }
    out
}

/// Cauchy product `(sum_{j<=n} x_j a_{n-j})_n`.
pub fn convolve(a: &Seq, x: &Seq) -> Result<Seq> {
    if a.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: x.len(),
        });
    }
    Seq::new(convolve_slice(a.as_slice(), x.as_slice()))
}

fn convolve_slice(a: &[f64], x: &[f64]) -> Vec<f64> {
    let len = x.len();
    let mut out = vec![0.0; len];
    // `a` is typically finitely supported; skip its zeros.
    for (j, &aj) in a.iter().enumerate().take(len) {
        if aj == 0.0 {
            continue;
        }
        for n in j..len {
            out[n] += aj * x[n - j];
        }
    }
    out
}

/// The finite-rank truncation `D^{[order]}`.
pub fn apply_diagonal_truncated(order: usize, x: &Seq) -> Seq {
    Seq::from_vec_unchecked(diagonal_slice(x.as_slice(), order))
}

/// The finite-rank truncation `C_t^{[order]}`: rows `0..=order` of `C_t`.
pub fn apply_cesaro_truncated(t: f64, order: usize, x: &Seq) -> Result<Seq> {
    check_unit_interval("t", t, false)?;
    let mut out = cesaro_slice(t, x.as_slice());
    truncate_after(&mut out, order);
    Ok(Seq::from_vec_unchecked(out))
}

fn truncate_after(v: &mut [f64], order: usize) {
    if order + 1 < v.len() {
        v[order + 1..].fill(0.0);
    }
}

/// The eigenvector of `C_t` for the eigenvalue `1/(m+1)`, normalized so
/// that entry `m` equals 1.
///
/// Entries below `m` vanish; beyond it the ratio of consecutive entries is
/// `(m+n+1) t / (n+1)`. The entries grow before they decay, hence the
/// overflow guard.
pub fn eigenvector(t: f64, m: usize, len: usize) -> Result<Seq> {
    check_unit_interval("t", t, false)?;
    if m >= len {
        return Err(Error::OutOfRange { index: m, len });
    }
    let mut data = vec![0.0; len];
    data[m] = 1.0;
    let mut current = 1.0;
    for n in 0..len - m - 1 {
        current *= (m + n + 1) as f64 * t / (n as f64 + 1.0);
        if current > EIGENVECTOR_OVERFLOW_GUARD {
            return Err(Error::Overflow { index: m + n + 1 });
        }
        if current == 0.0 {
            break;
        }
        data[m + n + 1] = current;
    }
    Ok(Seq::from_vec_unchecked(data))
}

/// A bounded operator on sequence prefixes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum OperatorSpec {
    CesaroT {
        t: f64,
    },
    Diagonal,
    Shift {
        m: usize,
    },
    ResolventPartial {
        t: f64,
        #[serde(rename = "M")]
        order: usize,
    },
    Convolution {
        a: Seq,
    },
    DiagonalTruncated {
        #[serde(rename = "M")]
        order: usize,
    },
    CesaroTruncated {
        t: f64,
        #[serde(rename = "M")]
        order: usize,
    },
}

impl OperatorSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::CesaroT { t } => check_unit_interval("t", *t, true),
            Self::ResolventPartial { t, .. } | Self::CesaroTruncated { t, .. } => {
                check_unit_interval("t", *t, false)
            }
            _ => Ok(()),
        }
    }

    /// The parameter `t` for the Cesaro-type operators.
    pub fn t(&self) -> Option<f64> {
        match self {
            Self::CesaroT { t }
            | Self::ResolventPartial { t, .. }
            | Self::CesaroTruncated { t, .. } => Some(*t),
            _ => None,
        }
    }

    pub fn apply(&self, x: &Seq) -> Result<Seq> {
        self.validate()?;
        if let Self::Convolution { a } = self {
            if a.len() != x.len() {
                return Err(Error::LengthMismatch {
                    left: a.len(),
                    right: x.len(),
                });
            }
        }
        Ok(Seq::from_vec_unchecked(self.apply_slice(x.as_slice())))
    }

    /// Applies a validated operator to raw data. Convolution kernels
    /// shorter than `x` are zero-extended.
    pub(crate) fn apply_slice(&self, x: &[f64]) -> Vec<f64> {
        match self {
            Self::CesaroT { t } => cesaro_slice(*t, x),
            Self::Diagonal => diagonal_slice(x, usize::MAX),
            Self::Shift { m } => shift_slice(*m, x),
            Self::ResolventPartial { t, order } => resolvent_slice(*t, *order, x),
            Self::Convolution { a } => convolve_slice(a.as_slice(), x),
            Self::DiagonalTruncated { order } => diagonal_slice(x, *order),
            Self::CesaroTruncated { t, order } => {
                let mut out = cesaro_slice(*t, x);
                truncate_after(&mut out, *order);
                out
            }
        }
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::CesaroT { t } => write!(f, "C_t(t={t})"),
            Self::Diagonal => write!(f, "D"),
            Self::Shift { m } => write!(f, "S^{m}"),
            Self::ResolventPartial { t, order } => write!(f, "R_t(t={t},M={order})"),
            Self::Convolution { a } => write!(f, "T_a(len={})", a.len()),
            Self::DiagonalTruncated { order } => write!(f, "D^[{order}]"),
            Self::CesaroTruncated { t, order } => write!(f, "C_t^[{order}](t={t})"),
        }
    }
}

/// Packed lower-triangular matrix; row `i` stores columns `0..=i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerTriangularMatrix {
    order: usize,
    rows: Vec<Vec<f64>>,
}

impl LowerTriangularMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j > i {
            0.0
        } else {
            self.rows[i][j]
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.rows.iter().enumerate().map(|(i, r)| r[i]).collect()
    }

    /// Dense `O(N^2)` matrix-vector product.
    pub fn mul_vec(&self, x: &Seq) -> Result<Seq> {
        if x.len() != self.order {
            return Err(Error::LengthMismatch {
                left: self.order,
                right: x.len(),
            });
        }
        let xs = x.as_slice();
        Ok(Seq::from_vec_unchecked(
            self.rows
                .iter()
                .map(|row| row.iter().zip(xs).map(|(a, b)| a * b).sum())
                .collect(),
        ))
    }

    pub fn to_dense(&self) -> nalgebra::DMatrix<f64> {
        nalgebra::DMatrix::from_fn(self.order, self.order, |i, j| self.get(i, j))
    }

    /// Writes the full square matrix as comma-separated rows.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut out = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(writer);
        for i in 0..self.order {
            out.write_record((0..self.order).map(|j| format!("{:.17e}", self.get(i, j))))?;
        }
        out.flush()?;
        Ok(())
    }
}

/// The `order x order` section of `C_t`: entry `(i, j)` is
/// `t^{i-j}/(i+1)` for `j <= i`.
pub fn cesaro_matrix(t: f64, order: usize) -> Result<LowerTriangularMatrix> {
    check_unit_interval("t", t, true)?;
    if order == 0 {
        return Err(Error::Length { len: 0, min: 1 });
    }
    let rows = (0..order)
        .map(|i| {
            let scale = 1.0 / (i as f64 + 1.0);
            (0..=i).map(|j| t.powi((i - j) as i32) * scale).collect()
        })
        .collect();
    Ok(LowerTriangularMatrix { order, rows })
}
