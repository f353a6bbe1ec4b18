//! Norm functionals of the solid Banach sequence spaces in scope.
//!
//! All norms are Riesz norms: they depend on `|x|` only and are monotone
//! in the coordinatewise order. On a prefix they are exact for the
//! zero-extended sequence, except for `ces_p`, whose Cesaro averages have
//! infinite support even when `x` does not.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::seq::{Seq, Weight};

/// Whether a prefix norm equals the norm of the zero-extended sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Exactness {
    ExactOnPrefix,
    LowerApproximation,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormValue {
    pub value: f64,
    pub exactness: Exactness,
    /// Upper bound on the part of the norm beyond the prefix, when known.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tail_bound: Option<f64>,
}

impl NormValue {
    fn exact(value: f64) -> Self {
        Self {
            value,
            exactness: Exactness::ExactOnPrefix,
            tail_bound: None,
        }
    }
}

fn check_exponent(name: &'static str, p: f64, min: f64, strict: bool) -> Result<()> {
    let ok = p.is_finite() && if strict { p > min } else { p >= min };
    if ok {
        Ok(())
    } else {
        Err(Error::Domain {
            name,
            value: p,
            expected: if strict {
                "finite and > 1"
            } else {
                "finite and >= 1"
            },
        })
    }
}

fn sup_abs(x: &[f64]) -> f64 {
    x.iter().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// `(sum |x_n|^p)^{1/p}` for finite `p >= 1`, computed with scaling by the
/// largest entry.
pub(crate) fn lp_slice(p: f64, x: &[f64]) -> f64 {
    if p == 1.0 {
        return x.iter().map(|v| v.abs()).sum();
    }
    let scale = sup_abs(x);
    if scale == 0.0 {
        return 0.0;
    }
    let sum: f64 = if p == 2.0 {
        x.iter().map(|v| (v / scale) * (v / scale)).sum()
    } else {
        x.iter().map(|v| (v.abs() / scale).powf(p)).sum()
    };
    scale * sum.powf(1.0 / p)
}

/// The `l^p` norm; `p = f64::INFINITY` gives the sup norm.
pub fn lp_norm(p: f64, x: &Seq) -> Result<NormValue> {
    if p == f64::INFINITY {
        return Ok(NormValue::exact(sup_abs(x.as_slice())));
    }
    check_exponent("p", p, 1.0, false)?;
    Ok(NormValue::exact(lp_slice(p, x.as_slice())))
}

/// Least decreasing majorant: `x^_n = max_{k >= n} |x_k|`, by one backward
/// scan.
pub fn majorant(x: &Seq) -> Seq {
    Seq::from_vec_unchecked(majorant_slice(x.as_slice()))
}

pub(crate) fn majorant_slice(x: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; x.len()];
    let mut running = 0.0f64;
    for (slot, v) in out.iter_mut().zip(x).rev() {
        running = running.max(v.abs());
        *slot = running;
    }
    out
}

fn cesaro_averages_abs(x: &[f64]) -> Vec<f64> {
    let mut sum = 0.0;
    x.iter()
        .enumerate()
        .map(|(n, v)| {
            sum += v.abs();
            sum / (n as f64 + 1.0)
        })
        .collect()
}

/// `sum_{j >= start} j^{-p}` for `p > 1`, `start >= 1`.
///
/// Direct summation over a block followed by an Euler-Maclaurin remainder.
pub fn zeta_tail(p: f64, start: u64) -> f64 {
    assert!(
        p > 1.0 && start >= 1,
        "zeta_tail needs p > 1 and start >= 1"
    );
    const BLOCK: u64 = 4096;
    // Sum small terms first.
    let head: f64 = (start..start + BLOCK)
        .rev()
        .map(|j| (j as f64).powf(-p))
        .sum();
    let n = (start + BLOCK) as f64;
    let rest = n.powf(1.0 - p) / (p - 1.0) + 0.5 * n.powf(-p) + p * n.powf(-p - 1.0) / 12.0
        - p * (p + 1.0) * (p + 2.0) * n.powf(-p - 3.0) / 720.0;
    head + rest
}

/// `||xi||_p = (sum_{n>=0} (n+1)^{-p})^{1/p}` for `p > 1`.
pub fn xi_norm(p: f64) -> f64 {
    zeta_tail(p, 1).powf(1.0 / p)
}

/// `||xi^{[order]}||_p = (sum_{m > order} (m+1)^{-p})^{1/p}` for `p > 1`.
pub fn xi_tail_norm(p: f64, order: usize) -> f64 {
    zeta_tail(p, order as u64 + 2).powf(1.0 / p)
}

/// The `ces_p` norm `||C_1 |x| ||_p` for `1 < p < inf`, measured on the
/// prefix. The reported tail bound is `||x||_1 (N^{1-p}/(p-1))^{1/p}`.
pub fn cesp_norm(p: f64, x: &Seq) -> Result<NormValue> {
    check_exponent("p", p, 1.0, true)?;
    let value = lp_slice(p, &cesaro_averages_abs(x.as_slice()));
    let n = x.len() as f64;
    let l1 = lp_slice(1.0, x.as_slice());
    Ok(NormValue {
        value,
        exactness: Exactness::LowerApproximation,
        tail_bound: Some(l1 * (n.powf(1.0 - p) / (p - 1.0)).powf(1.0 / p)),
    })
}

/// `sup_n (C_1 |x|)_n`, shared by `ces_0` and `ces_inf`. Exact for the
/// zero extension: past the prefix the averages only decrease.
pub fn ces0_or_cesinf_norm(x: &Seq) -> NormValue {
    NormValue::exact(
        cesaro_averages_abs(x.as_slice())
            .into_iter()
            .fold(0.0, f64::max),
    )
}

/// The `d_p` norm `||x^||_p`.
pub fn dp_norm(p: f64, x: &Seq) -> Result<NormValue> {
    check_exponent("p", p, 1.0, false)?;
    Ok(NormValue::exact(lp_slice(p, &majorant_slice(x.as_slice()))))
}

fn check_weight(w: &Weight, x: &Seq) -> Result<()> {
    if w.len() != x.len() {
        return Err(Error::LengthMismatch {
            left: w.len(),
            right: x.len(),
        });
    }
    Ok(())
}

fn weighted_lp_slice(p: f64, w: &[f64], x: &[f64]) -> f64 {
    if p == 1.0 {
        return x.iter().zip(w).map(|(v, wn)| v.abs() * wn).sum();
    }
    // Fold the weight into the entries so `lp_slice` can do the scaling.
    let scaled: Vec<f64> = x
        .iter()
        .zip(w)
        .map(|(v, wn)| v.abs() * wn.powf(1.0 / p))
        .collect();
    lp_slice(p, &scaled)
}

/// `(sum |x_n|^p w(n))^{1/p}`.
pub fn weighted_lp_norm(p: f64, w: &Weight, x: &Seq) -> Result<NormValue> {
    check_exponent("p", p, 1.0, false)?;
    check_weight(w, x)?;
    Ok(NormValue::exact(weighted_lp_slice(
        p,
        w.as_slice(),
        x.as_slice(),
    )))
}

fn weighted_c0_slice(w: &[f64], x: &[f64]) -> f64 {
    x.iter()
        .zip(w)
        .fold(0.0f64, |m, (v, wn)| m.max(v.abs() * wn))
}

/// `sup_n w(n) |x_n|`.
pub fn weighted_c0_norm(w: &Weight, x: &Seq) -> Result<NormValue> {
    check_weight(w, x)?;
    Ok(NormValue::exact(weighted_c0_slice(
        w.as_slice(),
        x.as_slice(),
    )))
}

fn check_xpq(p: f64, q: f64) -> Result<()> {
    check_exponent("p", p, 1.0, true)?;
    if !(q.is_finite() && q > p) {
        return Err(Error::Domain {
            name: "q",
            value: q,
            expected: "finite and > p",
        });
    }
    Ok(())
}

fn xpq_slice(p: f64, q: f64, x: &[f64]) -> f64 {
    let even: Vec<f64> = x.iter().step_by(2).copied().collect();
    let odd: Vec<f64> = x.iter().skip(1).step_by(2).copied().collect();
    lp_slice(p, &even) + lp_slice(q, &odd)
}

/// `||x_even||_p + ||x_odd||_q` for `1 < p < q < inf`.
pub fn xpq_norm(p: f64, q: f64, x: &Seq) -> Result<NormValue> {
    check_xpq(p, q)?;
    Ok(NormValue::exact(xpq_slice(p, q, x.as_slice())))
}

/// Number of indices with `|x_n| > lambda`.
pub fn distribution_function(x: &Seq, lambda: f64) -> Result<usize> {
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::Domain {
            name: "lambda",
            value: lambda,
            expected: ">= 0",
        });
    }
    Ok(x.iter().filter(|v| v.abs() > lambda).count())
}

/// A weight given explicitly or by a named family.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightSpec {
    Values(Weight),
    /// `w(n) = (n+1)^{-alpha}`
    Power(f64),
    /// `w(n) = r^n`
    Exp(f64),
}

impl WeightSpec {
    pub fn materialize(&self, len: usize) -> Result<Weight> {
        match self {
            Self::Values(w) if w.len() == len => Ok(w.clone()),
            Self::Values(w) => Err(Error::LengthMismatch {
                left: w.len(),
                right: len,
            }),
            Self::Power(alpha) => Weight::power(*alpha, len),
            Self::Exp(r) => {
                if !(*r > 0.0 && *r < 1.0) {
                    return Err(Error::Weight(format!("exp ratio {r} must lie in (0, 1)")));
                }
                Weight::exponential(*r, len)
            }
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Self::Values(_) => Ok(()),
            _ => self.materialize(1).map(|_| ()),
        }
    }
}

impl fmt::Display for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Values(w) => write!(f, "values[{}]", w.len()),
            Self::Power(alpha) => write!(f, "power:{alpha}"),
            Self::Exp(r) => write!(f, "exp:{r}"),
        }
    }
}

impl FromStr for WeightSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (family, param) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("weight family `{s}` needs a parameter")))?;
        let value: f64 = param
            .parse()
            .map_err(|_| Error::Parse(format!("bad weight parameter `{param}`")))?;
        let spec = match family {
            "power" => Self::Power(value),
            "exp" => Self::Exp(value),
            other => return Err(Error::Parse(format!("unknown weight family `{other}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Serialize for WeightSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Self::Values(w) => w.serialize(serializer),
            named => serializer.collect_str(named),
        }
    }
}

impl<'de> Deserialize<'de> for WeightSpec {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Values(Vec<f64>),
            Named(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Values(v) => Weight::new(v)
                .map(WeightSpec::Values)
                .map_err(serde::de::Error::custom),
            Raw::Named(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Which sequence space a norm computation refers to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SpaceSpec {
    Lp { p: f64 },
    Linf,
    CesP { p: f64 },
    Ces0,
    CesInf,
    Dp { p: f64 },
    LpWeighted { p: f64, w: WeightSpec },
    C0Weighted { w: WeightSpec },
    Xpq { p: f64, q: f64 },
}

impl SpaceSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            Self::Lp { p } | Self::Dp { p } => check_exponent("p", *p, 1.0, false),
            Self::CesP { p } => check_exponent("p", *p, 1.0, true),
            Self::LpWeighted { p, w } => {
                check_exponent("p", *p, 1.0, false)?;
                w.validate()
            }
            Self::C0Weighted { w } => w.validate(),
            Self::Xpq { p, q } => check_xpq(*p, *q),
            Self::Linf | Self::Ces0 | Self::CesInf => Ok(()),
        }
    }

    /// The primary exponent, if the space has one.
    pub fn p(&self) -> Option<f64> {
        match self {
            Self::Lp { p }
            | Self::CesP { p }
            | Self::Dp { p }
            | Self::LpWeighted { p, .. }
            | Self::Xpq { p, .. } => Some(*p),
            _ => None,
        }
    }

    pub fn q(&self) -> Option<f64> {
        match self {
            Self::Xpq { q, .. } => Some(*q),
            _ => None,
        }
    }

    pub fn norm(&self, x: &Seq) -> Result<NormValue> {
        match self {
            Self::Lp { p } => lp_norm(*p, x),
            Self::Linf => lp_norm(f64::INFINITY, x),
            Self::CesP { p } => cesp_norm(*p, x),
            Self::Ces0 | Self::CesInf => Ok(ces0_or_cesinf_norm(x)),
            Self::Dp { p } => dp_norm(*p, x),
            Self::LpWeighted { p, w } => weighted_lp_norm(*p, &w.materialize(x.len())?, x),
            Self::C0Weighted { w } => weighted_c0_norm(&w.materialize(x.len())?, x),
            Self::Xpq { p, q } => xpq_norm(*p, *q, x),
        }
    }

    /// Validates the space and fixes the prefix length, materializing any
    /// weight once so repeated evaluations are cheap.
    pub fn prepare(&self, len: usize) -> Result<PreparedNorm> {
        self.validate()?;
        let weight = match self {
            Self::LpWeighted { w, .. } | Self::C0Weighted { w } => Some(w.materialize(len)?),
            _ => None,
        };
        Ok(PreparedNorm {
            space: self.clone(),
            len,
            weight,
        })
    }

    /// True if the right shift is a bounded operator on the space.
    pub fn is_translation_invariant(&self) -> bool {
        !matches!(self, Self::Xpq { .. })
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Lp { p } => write!(f, "lp:{p}"),
            Self::Linf => write!(f, "linf"),
            Self::CesP { p } => write!(f, "cesp:{p}"),
            Self::Ces0 => write!(f, "ces0"),
            Self::CesInf => write!(f, "cesinf"),
            Self::Dp { p } => write!(f, "dp:{p}"),
            Self::LpWeighted { p, w } => write!(f, "lpw:{p}:{w}"),
            Self::C0Weighted { w } => write!(f, "c0w:{w}"),
            Self::Xpq { p, q } => write!(f, "xpq:{p}:{q}"),
        }
    }
}

/// Parses the compact form printed by `Display`, e.g. `cesp:1.5`,
/// `lpw:2:power:1` or `xpq:2:3`. A string starting with `{` is read as JSON.
impl FromStr for SpaceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            let spec: SpaceSpec = serde_json::from_str(s)?;
            spec.validate()?;
            return Ok(spec);
        }
        let num = |v: &str| -> Result<f64> {
            v.parse()
                .map_err(|_| Error::Parse(format!("bad number `{v}` in space `{s}`")))
        };
        let parts: Vec<&str> = s.split(':').collect();
        let spec = match parts.as_slice() {
            ["lp", p] if *p == "inf" => Self::Linf,
            ["lp", p] => Self::Lp { p: num(p)? },
            ["linf"] => Self::Linf,
            ["cesp", p] => Self::CesP { p: num(p)? },
            ["ces0"] => Self::Ces0,
            ["cesinf"] => Self::CesInf,
            ["dp", p] => Self::Dp { p: num(p)? },
            ["lpw", p, family, param] => Self::LpWeighted {
                p: num(p)?,
                w: format!("{family}:{param}").parse()?,
            },
            ["c0w", family, param] => Self::C0Weighted {
                w: format!("{family}:{param}").parse()?,
            },
            ["xpq", p, q] => Self::Xpq {
                p: num(p)?,
                q: num(q)?,
            },
            _ => return Err(Error::Parse(format!("unrecognized space `{s}`"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// A validated space norm bound to a prefix length.
#[derive(Debug, Clone)]
pub struct PreparedNorm {
    space: SpaceSpec,
    len: usize,
    weight: Option<Weight>,
}

impl PreparedNorm {
    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Norm value of a prefix of length `self.len()`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.len);
        match &self.space {
            SpaceSpec::Lp { p } => lp_slice(*p, x),
            SpaceSpec::Linf => sup_abs(x),
            SpaceSpec::CesP { p } => lp_slice(*p, &cesaro_averages_abs(x)),
            SpaceSpec::Ces0 | SpaceSpec::CesInf => {
                cesaro_averages_abs(x).into_iter().fold(0.0, f64::max)
            }
            SpaceSpec::Dp { p } => lp_slice(*p, &majorant_slice(x)),
            SpaceSpec::LpWeighted { p, .. } => weighted_lp_slice(*p, self.weight_slice(), x),
            SpaceSpec::C0Weighted { .. } => weighted_c0_slice(self.weight_slice(), x),
            SpaceSpec::Xpq { p, q } => xpq_slice(*p, *q, x),
        }
    }

    fn weight_slice(&self) -> &[f64] {
        self.weight.as_ref().map(Weight::as_slice).unwrap_or(&[])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::apply_shift;
    use crate::seq::{canonical, geometric, xi};

    fn seq(v: &[f64]) -> Seq {
        Seq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn lp_examples() {
        assert_eq!(lp_norm(1.0, &seq(&[1.0, -2.0, 3.0])).unwrap().value, 6.0);
        assert_eq!(
            lp_norm(f64::INFINITY, &seq(&[1.0, -2.0])).unwrap().value,
            2.0
        );
        assert!(lp_norm(0.5, &seq(&[1.0])).is_err());
        let basel = lp_norm(2.0, &xi(10_000).unwrap()).unwrap().value;
        let limit = std::f64::consts::PI / 6f64.sqrt();
        assert!((basel - limit).abs() <= 1e-2);
        assert!(basel < limit);
    }

    #[test]
    fn majorant_examples() {
        assert_eq!(
            majorant(&seq(&[1.0, 0.0, 2.0, 0.0])).as_slice(),
            &[2.0, 2.0, 2.0, 0.0]
        );
        let g = geometric(0.6, 20).unwrap();
        assert_eq!(majorant(&g), g);
        let x = seq(&[-0.5, 3.0, -4.0, 0.1, 2.0]);
        let m = majorant(&x);
        for (a, b) in x.iter().zip(m.iter()) {
            assert!(a.abs() <= *b);
        }
    }

    #[test]
    fn cesp_examples() {
        for p in [1.5, 2.0, 3.0] {
            let n = 50;
            let v = cesp_norm(p, &canonical(0, n).unwrap()).unwrap();
            let direct: f64 = (0..n)
                .map(|k| (k as f64 + 1.0).powf(-p))
                .sum::<f64>()
                .powf(1.0 / p);
            assert!((v.value - direct).abs() <= 1e-14);
            assert_eq!(v.exactness, Exactness::LowerApproximation);
            // The tail bound covers the missing part of the infinite norm.
            let full = xi_norm(p);
            assert!(full - v.value <= v.tail_bound.unwrap());
        }
        assert_eq!(cesp_norm(2.0, &Seq::zeros(4).unwrap()).unwrap().value, 0.0);
        assert!(cesp_norm(1.0, &Seq::zeros(4).unwrap()).is_err());
    }

    #[test]
    fn ces_inf_examples() {
        for n in 0..8 {
            let v = ces0_or_cesinf_norm(&canonical(n, 8).unwrap());
            assert_eq!(v.value, 1.0 / (n as f64 + 1.0));
        }
        assert_eq!(ces0_or_cesinf_norm(&Seq::ones(17).unwrap()).value, 1.0);
        let z = crate::seq::squares_witness(2000).unwrap();
        assert!(ces0_or_cesinf_norm(&z).value <= 1.0);
    }

    #[test]
    fn dp_examples() {
        for p in [1.0, 1.5, 2.0, 3.0] {
            for n in 0..6 {
                let v = dp_norm(p, &canonical(n, 6).unwrap()).unwrap().value;
                assert!((v - (n as f64 + 1.0).powf(1.0 / p)).abs() <= 1e-14);
            }
            let t: f64 = 0.7;
            let len = 30;
            let v = dp_norm(p, &geometric(t, len).unwrap()).unwrap().value;
            let closed = ((1.0 - t.powf(p * len as f64)) / (1.0 - t.powf(p))).powf(1.0 / p);
            assert!((v - closed).abs() <= 1e-13);
        }
        let x = seq(&[0.1, 0.0, 2.0, 0.3]);
        assert!(dp_norm(1.0, &x).unwrap().value >= lp_norm(1.0, &x).unwrap().value);
    }

    #[test]
    fn weighted_examples() {
        let x = seq(&[1.0, -2.0, 0.5, 4.0]);
        let one = Weight::constant(4).unwrap();
        for p in [1.0, 2.0, 3.0] {
            let a = weighted_lp_norm(p, &one, &x).unwrap().value;
            let b = lp_norm(p, &x).unwrap().value;
            assert!((a - b).abs() <= 1e-14);
        }
        let w = Weight::power(1.0, 4).unwrap();
        for n in 0..4 {
            let v = weighted_lp_norm(2.0, &w, &canonical(n, 4).unwrap())
                .unwrap()
                .value;
            assert!((v - w.as_slice()[n].sqrt()).abs() <= 1e-15);
            let c = weighted_c0_norm(&w, &canonical(n, 4).unwrap())
                .unwrap()
                .value;
            assert_eq!(c, w.as_slice()[n]);
        }
        assert_eq!(weighted_c0_norm(&one, &x).unwrap().value, 4.0);
        let sx = apply_shift(1, &x);
        assert!(
            weighted_lp_norm(2.0, &w, &sx).unwrap().value
                <= weighted_lp_norm(2.0, &w, &x).unwrap().value
        );
        assert!(
            weighted_c0_norm(&w, &sx).unwrap().value <= weighted_c0_norm(&w, &x).unwrap().value
        );
        assert!(weighted_lp_norm(2.0, &w, &seq(&[1.0])).is_err());
    }

    #[test]
    fn xpq_examples() {
        for n in 0..7 {
            assert_eq!(
                xpq_norm(2.0, 3.0, &canonical(n, 7).unwrap()).unwrap().value,
                1.0
            );
        }
        assert_eq!(xpq_norm(2.0, 3.0, &seq(&[-0.75, 2.5])).unwrap().value, 3.25);
        assert!(xpq_norm(2.0, 2.0, &seq(&[1.0])).is_err());
        assert!(xpq_norm(1.0, 2.0, &seq(&[1.0])).is_err());
    }

    #[test]
    fn distribution_examples() {
        assert_eq!(
            distribution_function(&seq(&[1.0, 2.0, 3.0]), 1.5).unwrap(),
            2
        );
        assert_eq!(
            distribution_function(&Seq::zeros(5).unwrap(), 0.0).unwrap(),
            0
        );
        assert!(distribution_function(&seq(&[1.0]), -1.0).is_err());
        let x = seq(&[0.3, -1.2, 0.0, 0.7, 0.0, 0.0]);
        let sx = apply_shift(2, &x);
        for lambda in [0.0, 0.2, 0.5, 1.0, 2.0] {
            assert_eq!(
                distribution_function(&x, lambda).unwrap(),
                distribution_function(&sx, lambda).unwrap()
            );
        }
    }

    #[test]
    fn zeta_tail_accuracy() {
        let basel = std::f64::consts::PI.powi(2) / 6.0;
        assert!((zeta_tail(2.0, 1) - basel).abs() <= 1e-15);
        let zeta4 = std::f64::consts::PI.powi(4) / 90.0;
        assert!((zeta_tail(4.0, 1) - zeta4).abs() <= 1e-15);
        // zeta(3/2) = 2.6123753486854883...
        assert!((zeta_tail(1.5, 1) - 2.612_375_348_685_488).abs() <= 1e-13);
        let direct: f64 = (11..200_000u64)
            .rev()
            .map(|j| (j as f64).powi(-2))
            .sum::<f64>()
            + 1.0 / 200_000.0;
        assert!((zeta_tail(2.0, 11) - direct).abs() <= 1e-10);
    }

    #[test]
    fn space_spec_json_and_shorthand() {
        let s: SpaceSpec = serde_json::from_str(r#"{"kind":"CesP","p":1.5}"#).unwrap();
        assert_eq!(s, SpaceSpec::CesP { p: 1.5 });
        let w: SpaceSpec =
            serde_json::from_str(r#"{"kind":"LpWeighted","p":2,"w":"power:1"}"#).unwrap();
        assert_eq!(
            w,
            SpaceSpec::LpWeighted {
                p: 2.0,
                w: WeightSpec::Power(1.0)
            }
        );
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"kind":"LpWeighted","p":2.0,"w":"power:1"}"#);
        let explicit: SpaceSpec =
            serde_json::from_str(r#"{"kind":"C0Weighted","w":[1.0,0.5]}"#).unwrap();
        assert!(matches!(
            explicit,
            SpaceSpec::C0Weighted {
                w: WeightSpec::Values(_)
            }
        ));
        assert!(serde_json::from_str::<SpaceSpec>(r#"{"kind":"C0Weighted","w":"exp:2"}"#).is_err());

        for text in [
            "lp:2",
            "linf",
            "cesp:1.5",
            "ces0",
            "cesinf",
            "dp:1",
            "lpw:2:power:1",
            "c0w:exp:0.5",
            "xpq:2:3",
        ] {
            let spec: SpaceSpec = text.parse().unwrap();
            assert_eq!(spec.to_string(), text);
        }
        assert!("cesp:1".parse::<SpaceSpec>().is_err());
        assert!("xpq:3:2".parse::<SpaceSpec>().is_err());
        assert!("nope".parse::<SpaceSpec>().is_err());
    }

    #[test]
    fn prepared_norm_matches_norm() {
        let x = seq(&[0.4, -1.0, 0.0, 2.5, 0.1, 0.9]);
        for text in [
            "lp:1",
            "lp:3",
            "linf",
            "cesp:2",
            "ces0",
            "dp:1.5",
            "lpw:2:power:1",
            "c0w:exp:0.5",
            "xpq:2:3",
        ] {
            let spec: SpaceSpec = text.parse().unwrap();
            let prepared = spec.prepare(x.len()).unwrap();
            assert_eq!(
                prepared.eval(x.as_slice()),
                spec.norm(&x).unwrap().value,
                "{text}"
            );
        }
    }
}
