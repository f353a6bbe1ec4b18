//! Exact rational reference implementations for small prefixes.
//!
//! These deliberately follow the defining formulas (double sums, product
//! formulas for eigenvector coefficients) rather than the recurrences used
//! by the floating-point kernels, so agreement between the two is evidence
//! for both.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::seq::Seq;

/// Largest prefix the oracle accepts; keeps rational bit growth bounded.
pub const MAX_ORACLE_LEN: usize = 64;

/// A finite prefix of exact rationals (always kept in lowest terms).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeq {
    data: Vec<BigRational>,
}

fn check_len(len: usize) -> Result<()> {
    if len == 0 {
        Err(Error::Length { len, min: 1 })
    } else if len > MAX_ORACLE_LEN {
        Err(Error::Domain {
            name: "N",
            value: len as f64,
            expected: "at most 64 for exact arithmetic",
        })
    } else {
        Ok(())
    }
}

fn check_t(t: &BigRational) -> Result<()> {
    if t.is_negative() || *t > BigRational::one() {
        return Err(Error::Domain {
            name: "t",
            value: t.to_f64().unwrap_or(f64::NAN),
            expected: "[0, 1]",
        });
    }
    Ok(())
}

impl RationalSeq {
    pub fn new(data: Vec<BigRational>) -> Result<Self> {
        check_len(data.len())?;
        Ok(Self { data })
    }

    pub fn zeros(len: usize) -> Result<Self> {
        check_len(len)?;
        Ok(Self {
            data: vec![BigRational::zero(); len],
        })
    }

    pub fn canonical(n: usize, len: usize) -> Result<Self> {
        let mut seq = Self::zeros(len)?;
        if n >= len {
            return Err(Error::OutOfRange { index: n, len });
        }
        seq.data[n] = BigRational::one();
        Ok(seq)
    }

    /// Exact rational image of a float sequence (every finite double is a
    /// dyadic rational).
    pub fn from_seq(x: &Seq) -> Result<Self> {
        check_len(x.len())?;
        Ok(Self {
            data: x.iter().map(|&v| exact_rational(v)).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.data
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data
            .iter()
            .map(|v| v.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

/// The exact rational value of a finite double.
pub fn exact_rational(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite double")
}

pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// `C_t x` straight from the definition
/// `(C_t x)_n = (sum_{k<=n} t^{n-k} x_k) / (n+1)`.
pub fn exact_cesaro(t: &BigRational, x: &RationalSeq) -> Result<RationalSeq> {
    check_t(t)?;
    check_len(x.len())?;
    let len = x.len();
    let mut powers = Vec::with_capacity(len);
    let mut power = BigRational::one();
    for _ in 0..len {
        powers.push(power.clone());
        power *= t;
    }
    let data = (0..len)
        .map(|n| {
            let sum = (0..=n).fold(BigRational::zero(), |acc, k| {
                acc + &powers[n - k] * &x.data[k]
            });
            sum / BigRational::from_integer(BigInt::from(n + 1))
        })
        .collect();
    Ok(RationalSeq { data })
}

/// Eigenvector coefficients from the product formula
/// `(m+1)(m+2)...(m+n) t^n / n!` at index `m+n`.
pub fn exact_eigenvector(t: &BigRational, m: usize, len: usize) -> Result<RationalSeq> {
    check_t(t)?;
    if *t == BigRational::one() {
        return Err(Error::Domain {
            name: "t",
            value: 1.0,
            expected: "[0, 1)",
        });
    }
    let mut seq = RationalSeq::zeros(len)?;
    if m >= len {
        return Err(Error::OutOfRange { index: m, len });
    }
    for n in 0..len - m {
        let rising: BigInt = (1..=n).map(|k| BigInt::from(m + k)).product();
        let factorial: BigInt = (1..=n).map(BigInt::from).product();
        seq.data[m + n] = BigRational::new(rising, factorial) * pow(t, n);
    }
    Ok(seq)
}

fn pow(t: &BigRational, n: usize) -> BigRational {
    (0..n).fold(BigRational::one(), |acc, _| acc * t)
}

/// True iff `C_t x = lambda x` holds exactly on the prefix.
pub fn exact_eigen_relation(
    t: &BigRational,
    lambda: &BigRational,
    x: &RationalSeq,
) -> Result<bool> {
    Ok(exact_cesaro(t, x)? == x.scale(lambda))
}

/// True iff `C_t x^{[m]} = x^{[m]}/(m+1)` holds exactly on the prefix.
pub fn exact_eigen_identity(t: &BigRational, m: usize, len: usize) -> Result<bool> {
    let x = exact_eigenvector(t, m, len)?;
    let lambda = BigRational::new(BigInt::one(), BigInt::from(m + 1));
    exact_eigen_relation(t, &lambda, &x)
}

/// True iff `C_t (e_n - t e_{n+1}) = lambda e_n` exactly.
pub fn exact_basis_relation(
    t: &BigRational,
    n: usize,
    len: usize,
    lambda: &BigRational,
) -> Result<bool> {
    if n + 1 >= len {
        return Err(Error::OutOfRange { index: n + 1, len });
    }
    let v = RationalSeq::canonical(n, len)?.sub(&RationalSeq::canonical(n + 1, len)?.scale(t))?;
    Ok(exact_cesaro(t, &v)? == RationalSeq::canonical(n, len)?.scale(lambda))
}

/// True iff `C_t (e_n - t e_{n+1}) = e_n / (n+1)` exactly.
pub fn exact_basis_identity(t: &BigRational, n: usize, len: usize) -> Result<bool> {
    let lambda = BigRational::new(BigInt::one(), BigInt::from(n + 1));
    exact_basis_relation(t, n, len, &lambda)
}

/// Largest entrywise deviation of `approx` from `exact`, relative where the
/// exact entry is nonzero and absolute where it vanishes.
pub fn max_relative_deviation(approx: &[f64], exact: &RationalSeq) -> f64 {
    approx
        .iter()
        .zip(exact.as_slice())
        .map(|(&a, e)| {
            let ef = e.to_f64().unwrap_or(f64::NAN);
            if e.is_zero() {
                a.abs()
            } else {
                ((a - ef) / ef).abs()
            }
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{apply_cesaro, eigenvector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_cesaro_on_e0() {
        let t = rational(1, 2);
        let y = exact_cesaro(&t, &RationalSeq::canonical(0, 3).unwrap()).unwrap();
        assert_eq!(
            y.as_slice(),
            &[rational(1, 1), rational(1, 4), rational(1, 12)]
        );
    }

    #[test]
    fn exact_cesaro_zero_is_diagonal() {
        let x = RationalSeq::new(vec![rational(3, 1), rational(-1, 1), rational(2, 5)]).unwrap();
        let y = exact_cesaro(&BigRational::zero(), &x).unwrap();
        assert_eq!(
            y.as_slice(),
            &[rational(3, 1), rational(-1, 2), rational(2, 15)]
        );
    }

    #[test]
    fn float_kernel_agrees_with_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for case in 0..100 {
            let len = rng.gen_range(1..=MAX_ORACLE_LEN);
            let t: f64 = [0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 1.0][case % 7];
            let x = Seq::new((0..len).map(|_| rng.gen_range(0.0..1.0)).collect()).unwrap();
            let fast = apply_cesaro(t, &x).unwrap();
            let exact =
                exact_cesaro(&exact_rational(t), &RationalSeq::from_seq(&x).unwrap()).unwrap();
            assert!(max_relative_deviation(fast.as_slice(), &exact) <= 1e-13);
        }
    }

    #[test]
    fn eigenvector_coefficients() {
        let x = exact_eigenvector(&rational(1, 2), 1, 4).unwrap();
        assert_eq!(
            x.as_slice(),
            &[
                rational(0, 1),
                rational(1, 1),
                rational(1, 1),
                rational(3, 4)
            ]
        );
        let float = eigenvector(0.5, 1, 4).unwrap();
        assert_eq!(float.as_slice(), x.to_f64().as_slice());
    }

    #[test]
    fn eigen_identities() {
        assert!(exact_eigen_identity(&rational(1, 2), 0, 16).unwrap());
        assert!(exact_eigen_identity(&rational(3, 4), 2, 32).unwrap());
        assert!(exact_eigen_identity(&rational(9, 10), 10, 64).unwrap());
        assert!(exact_eigen_identity(&BigRational::zero(), 5, 8).unwrap());
    }

    #[test]
    fn perturbed_eigenvector_fails() {
        let t = rational(1, 2);
        let mut x = exact_eigenvector(&t, 1, 10).unwrap();
        x.data[4] += rational(1, 1000);
        assert!(!exact_eigen_relation(&t, &rational(1, 2), &x).unwrap());
    }

    #[test]
    fn basis_identities() {
        assert!(exact_basis_identity(&rational(1, 3), 0, 8).unwrap());
        assert!(exact_basis_identity(&BigRational::zero(), 5, 8).unwrap());
        let wrong = rational(1, 2 + 2);
        assert!(!exact_basis_relation(&rational(1, 3), 2, 8, &wrong).unwrap());
        assert!(exact_basis_identity(&rational(1, 3), 7, 8).is_err());
    }

    #[test]
    fn limits() {
        assert!(RationalSeq::zeros(65).is_err());
        assert!(exact_cesaro(&rational(3, 2), &RationalSeq::zeros(3).unwrap()).is_err());
        assert!(exact_eigenvector(&rational(1, 1), 0, 3).is_err());
    }
}
