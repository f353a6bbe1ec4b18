//! Finite prefixes of scalar sequences.
//!
//! A [`Seq`] of length `N` stands for the infinite sequence obtained by
//! extending it with zeros. All operators in this crate are lower
//! triangular, so computing on the prefix gives the exact prefix of the
//! infinite result.

use std::ops::Index;

use serde::{Deserialize, Serialize};

use crate::error::{check_unit_interval, Error, Result};

/// A finite, non-empty prefix of a real sequence with finite entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Seq {
    data: Vec<f64>,
}

impl Seq {
    pub fn new(data: Vec<f64>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::Length { len: 0, min: 1 });
        }
        if let Some(index) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { data })
    }

    /// Wraps data already known to be non-empty and finite.
    pub(crate) fn from_vec_unchecked(data: Vec<f64>) -> Self {
        debug_assert!(!data.is_empty());
        debug_assert!(data.iter().all(|v| v.is_finite()));
        Self { data }
    }

    pub fn zeros(len: usize) -> Result<Self> {
        check_len(len, 1)?;
        Ok(Self {
            data: vec![0.0; len],
        })
    }

    /// The constant sequence `(1, 1, ..., 1)` of the given length.
    pub fn ones(len: usize) -> Result<Self> {
        check_len(len, 1)?;
        Ok(Self {
            data: vec![1.0; len],
        })
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    /// Always false: a `Seq` holds at least one entry.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, f64> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0.0)
    }

    pub fn abs(&self) -> Seq {
        Seq::from_vec_unchecked(self.data.iter().map(|v| v.abs()).collect())
    }

    pub fn add(&self, other: &Seq) -> Result<Seq> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Seq) -> Result<Seq> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: f64) -> Seq {
        Seq::from_vec_unchecked(self.data.iter().map(|v| c * v).collect())
    }

    /// Returns the prefix padded with zeros (or cut) to `len`.
    pub fn resized(&self, len: usize) -> Result<Seq> {
        check_len(len, 1)?;
        let mut data = self.data.clone();
        data.resize(len, 0.0);
        Ok(Seq { data })
    }

    fn zip_with(&self, other: &Seq, f: impl Fn(f64, f64) -> f64) -> Result<Seq> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Seq::new(
            self.data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }
}

impl TryFrom<Vec<f64>> for Seq {
    type Error = Error;

    fn try_from(data: Vec<f64>) -> Result<Self> {
        Seq::new(data)
    }
}

impl From<Seq> for Vec<f64> {
    fn from(seq: Seq) -> Self {
        seq.data
    }
}

impl Index<usize> for Seq {
    type Output = f64;

    fn index(&self, index: usize) -> &f64 {
        &self.data[index]
    }
}

impl AsRef<[f64]> for Seq {
    fn as_ref(&self) -> &[f64] {
        &self.data
    }
}

fn check_len(len: usize, min: usize) -> Result<()> {
    if len < min {
        Err(Error::Length { len, min })
    } else {
        Ok(())
    }
}

/// The canonical unit vector `e_n` of length `len`.
pub fn canonical(n: usize, len: usize) -> Result<Seq> {
    if n >= len {
        return Err(Error::OutOfRange { index: n, len });
    }
    let mut data = vec![0.0; len];
    data[n] = 1.0;
    Ok(Seq { data })
}

/// `(1/(n+1))_n`, the first column of the Cesaro matrix.
pub fn xi(len: usize) -> Result<Seq> {
    check_len(len, 1)?;
    Ok(Seq {
        data: (0..len).map(|n| 1.0 / (n as f64 + 1.0)).collect(),
    })
}

/// `(t^n)_n` with the convention `0^0 = 1`.
pub fn geometric(t: f64, len: usize) -> Result<Seq> {
    check_unit_interval("t", t, false)?;
    check_len(len, 1)?;
    let mut data = Vec::with_capacity(len);
    let mut power = 1.0;
    for _ in 0..len {
        data.push(power);
        power *= t;
    }
    Ok(Seq { data })
}

/// The vector with value `k` at index `k^2` for every `k >= 1`, zero
/// elsewhere. Its Cesaro averages stay bounded by 1 although the entries
/// themselves are unbounded.
pub fn squares_witness(len: usize) -> Result<Seq> {
    check_len(len, 2)?;
    let mut data = vec![0.0; len];
    let mut k = 1usize;
    while k * k < len {
        data[k * k] = k as f64;
        k += 1;
    }
    Ok(Seq { data })
}

/// Index of the `k`-th nonzero entry of [`ell1_not_d1_witness`].
///
/// The entries `2^{-k}` are separated by `2^k - 1` zeros, so the `k`-th
/// one sits at `2^{k+1} - 2`.
pub fn ell1_not_d1_position(k: u32) -> usize {
    (1usize << (k + 1)) - 2
}

/// The prefix `(1, 0, 1/2, 0, 0, 0, 1/4, ...)` holding the first `blocks`
/// nonzero entries: summable, but its decreasing majorant is not.
pub fn ell1_not_d1_witness(blocks: u32) -> Result<Seq> {
    if blocks == 0 {
        return Err(Error::Length { len: 0, min: 1 });
    }
    if blocks > 40 {
        return Err(Error::Domain {
            name: "blocks",
            value: blocks as f64,
            expected: "1..=40",
        });
    }
    let len = ell1_not_d1_position(blocks - 1) + 1;
    let mut data = vec![0.0; len];
    for k in 0..blocks {
        data[ell1_not_d1_position(k)] = 0.5f64.powi(k as i32);
    }
    Ok(Seq { data })
}

/// A strictly positive, non-increasing weight sequence.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "Vec<f64>")]
pub struct Weight {
    values: Vec<f64>,
}

impl Weight {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Weight("empty weight".into()));
        }
        for (n, &v) in values.iter().enumerate() {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Weight(format!(
                    "w({n}) = {v} is not strictly positive"
                )));
            }
            if n > 0 && v > values[n - 1] {
                return Err(Error::Weight(format!("w({n}) = {v} exceeds w({})", n - 1)));
            }
        }
        Ok(Self { values })
    }

    /// `w(n) = 1` for all `n`.
    pub fn constant(len: usize) -> Result<Self> {
        Self::new(vec![1.0; len])
    }

    /// `w(n) = (n+1)^{-alpha}` with `alpha >= 0`.
    pub fn power(alpha: f64, len: usize) -> Result<Self> {
        if !(alpha.is_finite() && alpha >= 0.0) {
            return Err(Error::Weight(format!(
                "power exponent {alpha} must be >= 0"
            )));
        }
        Self::new((0..len).map(|n| (n as f64 + 1.0).powf(-alpha)).collect())
    }

    /// `w(n) = r^n` with `0 < r <= 1`.
    pub fn exponential(r: f64, len: usize) -> Result<Self> {
        if !(r > 0.0 && r <= 1.0) {
            return Err(Error::Weight(format!(
                "exponential ratio {r} must lie in (0, 1]"
            )));
        }
        Self::new((0..len).map(|n| r.powi(n as i32)).collect())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

impl From<Weight> for Vec<f64> {
    fn from(w: Weight) -> Self {
        w.values
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = Vec::<f64>::deserialize(deserializer)?;
        Weight::new(values).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_vectors() {
        assert_eq!(canonical(0, 3).unwrap().as_slice(), &[1.0, 0.0, 0.0]);
        assert_eq!(canonical(2, 4).unwrap().as_slice(), &[0.0, 0.0, 1.0, 0.0]);
        assert!(matches!(
            canonical(5, 3),
            Err(Error::OutOfRange { index: 5, len: 3 })
        ));
    }

    #[test]
    fn xi_entries() {
        assert_eq!(xi(3).unwrap().as_slice(), &[1.0, 0.5, 1.0 / 3.0]);
        assert_eq!(xi(1).unwrap().as_slice(), &[1.0]);
        assert_eq!(xi(5).unwrap()[4], 0.2);
        assert!(xi(0).is_err());
    }

    #[test]
    fn geometric_entries() {
        assert_eq!(geometric(0.0, 4).unwrap().as_slice(), &[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(geometric(0.5, 3).unwrap().as_slice(), &[1.0, 0.5, 0.25]);
        assert!(geometric(1.0, 3).is_err());
        assert!(geometric(-0.1, 3).is_err());
    }

    #[test]
    fn squares_witness_entries() {
        assert_eq!(
            squares_witness(6).unwrap().as_slice(),
            &[0.0, 1.0, 0.0, 0.0, 2.0, 0.0]
        );
        assert_eq!(squares_witness(10).unwrap()[9], 3.0);
        assert_eq!(squares_witness(2).unwrap().as_slice(), &[0.0, 1.0]);
        assert!(squares_witness(1).is_err());
    }

    #[test]
    fn ell1_not_d1_prefixes() {
        assert_eq!(ell1_not_d1_witness(1).unwrap().as_slice(), &[1.0]);
        assert_eq!(ell1_not_d1_witness(2).unwrap().as_slice(), &[1.0, 0.0, 0.5]);
        assert_eq!(
            ell1_not_d1_witness(3).unwrap().as_slice(),
            &[1.0, 0.0, 0.5, 0.0, 0.0, 0.0, 0.25]
        );
    }

    #[test]
    fn ell1_not_d1_zero_gaps() {
        let x = ell1_not_d1_witness(8).unwrap();
        let nonzero: Vec<usize> = (0..x.len()).filter(|&i| x[i] != 0.0).collect();
        assert_eq!(nonzero.len(), 8);
        for k in 1..nonzero.len() {
            assert_eq!(nonzero[k] - nonzero[k - 1] - 1, (1 << k) - 1);
        }
    }

    #[test]
    fn ell1_not_d1_sum_matches_geometric_series() {
        for b in 1..=20u32 {
            let x = ell1_not_d1_witness(b).unwrap();
            let direct: f64 = x.iter().sum();
            let closed = 2.0 - 2f64.powi(1 - b as i32);
            assert!((direct - closed).abs() <= 1e-15, "b = {b}");
        }
    }

    #[test]
    fn arithmetic() {
        let x = Seq::new(vec![-1.0, 2.0]).unwrap();
        assert_eq!(x.abs().as_slice(), &[1.0, 2.0]);
        let a = Seq::new(vec![1.0, 0.0]).unwrap();
        let b = Seq::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(a.add(&b).unwrap().as_slice(), &[1.0, 1.0]);
        assert_eq!(
            Seq::new(vec![1.0, 3.0]).unwrap().scale(2.0).as_slice(),
            &[2.0, 6.0]
        );
        let c = Seq::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert!(matches!(
            a.add(&c),
            Err(Error::LengthMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn rejects_bad_data() {
        assert!(Seq::new(vec![]).is_err());
        assert!(matches!(
            Seq::new(vec![1.0, f64::NAN]),
            Err(Error::NonFinite { index: 1 })
        ));
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let x: Seq = serde_json::from_str("[1.0, 0.5, 0.25]").unwrap();
        assert_eq!(serde_json::to_string(&x).unwrap(), "[1.0,0.5,0.25]");
        assert!(serde_json::from_str::<Seq>("[]").is_err());
    }

    #[test]
    fn weights() {
        assert!(Weight::new(vec![1.0, 0.5, 0.5]).is_ok());
        assert!(Weight::new(vec![1.0, 2.0]).is_err());
        assert!(Weight::new(vec![1.0, 0.0]).is_err());
        let w = Weight::power(1.0, 3).unwrap();
        assert_eq!(w.as_slice(), &[1.0, 0.5, 1.0 / 3.0]);
        assert!(Weight::exponential(1.5, 3).is_err());
        assert!(serde_json::from_str::<Weight>("[1.0, 2.0]").is_err());
    }
}
