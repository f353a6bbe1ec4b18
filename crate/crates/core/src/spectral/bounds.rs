//! Analytic operator-norm upper bounds for (space, operator) pairs.

use crate::error::{Error, Result};
use crate::operators::OperatorSpec;
use crate::spaces::{lp_norm, xi_norm, xi_tail_norm, SpaceSpec};

/// An analytic upper bound and where it comes from. `value` is `None` when
/// no bound is known for the pair (read as `+inf`).
#[derive(Debug, Clone, PartialEq)]
pub struct UpperBound {
    pub value: Option<f64>,
    pub source: &'static str,
}

impl UpperBound {
    fn known(value: f64, source: &'static str) -> Self {
        Self {
            value: Some(value),
            source,
        }
    }

    fn none() -> Self {
        Self {
            value: None,
            source: "none",
        }
    }
}

pub const SRC_DIAGONAL: &str = "||D|| = 1 on every solid space with natural basis";
pub const SRC_FACTORIZATION: &str = "C_t = D R_t with ||S|| <= 1: ||C_t|| <= 1/(1-t)";
pub const SRC_CESP: &str = "ces_p: ||C_t|| <= min{p/(p-1), 1/(1-t)}";
pub const SRC_CES_INF: &str = "ces_0/ces_inf: ||C_t|| = 1";
pub const SRC_DP: &str = "d_p: ||C_t|| <= ||D|| ||R_t|| <= (1-t)^(-1-1/p)";
pub const SRC_XPQ: &str =
    "X_{p,q}: |C_t x| <= (1-t)^-1 ||x||_{p,q} xi, so ||C_t|| <= 2||xi||_p/(1-t)";
pub const SRC_SHIFT_DP: &str = "d_p: ||S^m|| = (m+1)^(1/p)";
pub const SRC_SHIFT_CONTRACTION: &str = "translation invariant space with ||S|| <= 1";
pub const SRC_RESOLVENT_DP: &str = "d_p: ||R_t|| <= sum (n+1)^(1/p) t^n <= (1-t)^(-1-1/p)";
pub const SRC_RESOLVENT: &str = "||R_t|| <= sum t^n ||S||^n <= 1/(1-t)";
pub const SRC_MULTIPLIER: &str = "convolution multiplier: ||a||_p <= ||T_a|| <= ||a||_1";
pub const SRC_DIAGONAL_TAIL: &str = "||D - D^[n]|| <= 1/(n+2)";
pub const SRC_XPQ_TAIL: &str = "X_{p,q}: ||C_t - C_t^[M]|| <= 2 (1-t)^-1 ||xi^[M]||_p";

fn cesaro_bound(space: &SpaceSpec, t: f64) -> UpperBound {
    let geometric = 1.0 / (1.0 - t);
    match space {
        SpaceSpec::Lp { .. }
        | SpaceSpec::Linf
        | SpaceSpec::LpWeighted { .. }
        | SpaceSpec::C0Weighted { .. } => UpperBound::known(geometric, SRC_FACTORIZATION),
        SpaceSpec::CesP { p } => UpperBound::known((p / (p - 1.0)).min(geometric), SRC_CESP),
        SpaceSpec::Ces0 | SpaceSpec::CesInf => UpperBound::known(1.0, SRC_CES_INF),
        SpaceSpec::Dp { p } => UpperBound::known((1.0 - t).powf(-1.0 - 1.0 / p), SRC_DP),
        SpaceSpec::Xpq { p, .. } => UpperBound::known(2.0 * xi_norm(*p) * geometric, SRC_XPQ),
    }
}

fn incompatible(op: &OperatorSpec, space: &SpaceSpec) -> Error {
    Error::Incompatible {
        op: op.to_string(),
        space: space.to_string(),
    }
}

/// The analytic upper bound for `||op||` on `space`.
///
/// Errors for `t = 1` (only `t < 1` is covered) and for shift-type
/// operators on spaces that are not translation invariant.
pub fn upper_bound(space: &SpaceSpec, op: &OperatorSpec) -> Result<UpperBound> {
    space.validate()?;
    op.validate()?;
    if let Some(t) = op.t() {
        if t >= 1.0 {
            return Err(Error::Domain {
                name: "t",
                value: t,
                expected: "[0, 1) for norm bounds",
            });
        }
    }
    Ok(match op {
        OperatorSpec::Diagonal | OperatorSpec::DiagonalTruncated { .. } => {
            UpperBound::known(1.0, SRC_DIAGONAL)
        }
        OperatorSpec::CesaroT { t } | OperatorSpec::CesaroTruncated { t, .. } => {
            cesaro_bound(space, *t)
        }
        OperatorSpec::Shift { m } => match space {
            SpaceSpec::Dp { p } => UpperBound::known((*m as f64 + 1.0).powf(1.0 / p), SRC_SHIFT_DP),
            SpaceSpec::Xpq { .. } => return Err(incompatible(op, space)),
            _ => UpperBound::known(1.0, SRC_SHIFT_CONTRACTION),
        },
        OperatorSpec::ResolventPartial { t, .. } => match space {
            SpaceSpec::Dp { p } => {
                UpperBound::known((1.0 - t).powf(-1.0 - 1.0 / p), SRC_RESOLVENT_DP)
            }
            SpaceSpec::Xpq { .. } => return Err(incompatible(op, space)),
            _ => UpperBound::known(1.0 / (1.0 - t), SRC_RESOLVENT),
        },
        OperatorSpec::Convolution { a } => match space {
            SpaceSpec::Lp { .. } | SpaceSpec::Linf => {
                UpperBound::known(lp_norm(1.0, a)?.value, SRC_MULTIPLIER)
            }
            _ => UpperBound::none(),
        },
    })
}

/// Upper bound for the tail `||C_t - C_t^[order]||` on `space`, when one is
/// known: `1/(order+2)` for `t = 0` on any space and the `X_{p,q}` estimate.
pub fn tail_upper_bound(space: &SpaceSpec, t: f64, order: usize) -> UpperBound {
    let mut best = UpperBound::none();
    if t == 0.0 {
        best = UpperBound::known(1.0 / (order as f64 + 2.0), SRC_DIAGONAL_TAIL);
    }
    if let SpaceSpec::Xpq { p, .. } = space {
        let xpq = 2.0 * xi_tail_norm(*p, order) / (1.0 - t);
        if best.value.map_or(true, |b| xpq < b) {
            best = UpperBound::known(xpq, SRC_XPQ_TAIL);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cesaro_bounds() {
        let op = OperatorSpec::CesaroT { t: 0.5 };
        let b = upper_bound(&SpaceSpec::Lp { p: 2.0 }, &op).unwrap();
        assert_eq!(b.value, Some(2.0));
        let b = upper_bound(&SpaceSpec::CesP { p: 3.0 }, &op).unwrap();
        assert_eq!(b.value, Some(1.5));
        let b = upper_bound(&SpaceSpec::Dp { p: 1.0 }, &op).unwrap();
        assert_eq!(b.value, Some(4.0));
        assert!(upper_bound(&SpaceSpec::Lp { p: 2.0 }, &OperatorSpec::CesaroT { t: 1.0 }).is_err());
    }

    #[test]
    fn shift_bounds() {
        let op = OperatorSpec::Shift { m: 3 };
        assert_eq!(
            upper_bound(&SpaceSpec::Dp { p: 1.0 }, &op).unwrap().value,
            Some(4.0)
        );
        assert_eq!(
            upper_bound(&SpaceSpec::CesP { p: 2.0 }, &op).unwrap().value,
            Some(1.0)
        );
        assert!(matches!(
            upper_bound(&SpaceSpec::Xpq { p: 2.0, q: 3.0 }, &op),
            Err(Error::Incompatible { .. })
        ));
    }

    #[test]
    fn tail_bounds() {
        let b = tail_upper_bound(&SpaceSpec::Lp { p: 2.0 }, 0.0, 3);
        assert_eq!(b.value, Some(0.2));
        assert_eq!(
            tail_upper_bound(&SpaceSpec::Lp { p: 2.0 }, 0.5, 3).value,
            None
        );
        let x = tail_upper_bound(&SpaceSpec::Xpq { p: 2.0, q: 3.0 }, 0.5, 0);
        let expected = 4.0 * (std::f64::consts::PI.powi(2) / 6.0 - 1.0).sqrt();
        assert!((x.value.unwrap() - expected).abs() <= 1e-14);
    }
}
