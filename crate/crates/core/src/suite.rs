//! The verification suite: configuration, validation and the ordered list
//! of checks that make up a full `verify` run.

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::operators::{apply_cesaro, eigenvector, OperatorSpec};
use crate::oracle::{
    exact_basis_identity, exact_cesaro, exact_eigen_identity, exact_eigenvector, exact_rational,
    max_relative_deviation, rational, RationalSeq, MAX_ORACLE_LEN,
};
use crate::report::CheckReport;
use crate::seq::{ell1_not_d1_witness, squares_witness, Seq};
use crate::spaces::{ces0_or_cesinf_norm, dp_norm, lp_norm, SpaceSpec, WeightSpec};
use crate::spectral::{
    cesinf_nondensity_check, compactness_decay, dense_eigen_crosscheck, eigen_certificate,
    finite_section_eigenvalues, multiplier_norm_check, norm_lower_bound, resolvent_norm_check,
    shift_norm_check, NormBoundCertificate, SearchOptions,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub residual_tol: f64,
    pub sandwich_slack: f64,
    pub oracle_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            residual_tol: 1e-10,
            sandwich_slack: 1e-9,
            oracle_tol: 1e-12,
        }
    }
}

/// Parameters of a suite run. `spaces = None` means the default family
/// derived from `p_grid` and `q_grid`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub t_grid: Vec<f64>,
    pub p_grid: Vec<f64>,
    /// Paired with `p_grid` for `X_{p,q}`; `None` means `q = p + 1`.
    pub q_grid: Option<Vec<f64>>,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M_grid")]
    pub m_grid: Vec<usize>,
    pub spaces: Option<Vec<SpaceSpec>>,
    pub seed: u64,
    pub budget: usize,
    pub tolerances: Tolerances,
    /// Bounds `M` for the `ces_inf` non-density witness.
    pub nondensity_bounds: Vec<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            t_grid: vec![0.0, 0.1, 0.25, 0.5, 0.75, 0.9],
            p_grid: vec![1.0, 1.5, 2.0, 3.0],
            q_grid: None,
            n: 512,
            m_grid: vec![0, 1, 2, 4, 8, 16, 32, 64, 128, 256],
            spaces: None,
            seed: 42,
            budget: 3000,
            tolerances: Tolerances::default(),
            nondensity_bounds: vec![0.5, 1.0, 2.0, 5.0],
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    t_grid: Option<Vec<f64>>,
    p_grid: Option<Vec<f64>>,
    q_grid: Option<Vec<f64>>,
    #[serde(rename = "N", alias = "n")]
    n: Option<usize>,
    #[serde(rename = "M_grid", alias = "m_grid")]
    m_grid: Option<Vec<usize>>,
    spaces: Option<Vec<Value>>,
    seed: Option<u64>,
    budget: Option<usize>,
    tolerances: Option<Tolerances>,
    nondensity_bounds: Option<Vec<f64>>,
}

fn config_error(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Config {
        path: path.into(),
        message: message.into(),
    }
}

fn parse_space(value: &Value) -> Result<SpaceSpec> {
    let spec: SpaceSpec = match value {
        Value::String(s) => s.parse()?,
        other => serde_json::from_value(other.clone())?,
    };
    spec.validate()?;
    Ok(spec)
}

impl SuiteConfig {
    /// Reads a JSON config; missing fields take their defaults.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawConfig =
            serde_json::from_str(text).map_err(|e| config_error("<root>", e.to_string()))?;
        let defaults = Self::default();
        let spaces = match raw.spaces {
            None => None,
            Some(values) => Some(
                values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| {
                        parse_space(v)
                            .map_err(|e| config_error(format!("spaces[{i}]"), e.to_string()))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        let config = Self {
            t_grid: raw.t_grid.unwrap_or(defaults.t_grid),
            p_grid: raw.p_grid.unwrap_or(defaults.p_grid),
            q_grid: raw.q_grid,
            n: raw.n.unwrap_or(defaults.n),
            m_grid: raw.m_grid.unwrap_or(defaults.m_grid),
            spaces,
            seed: raw.seed.unwrap_or(defaults.seed),
            budget: raw.budget.unwrap_or(defaults.budget),
            tolerances: raw.tolerances.unwrap_or(defaults.tolerances),
            nondensity_bounds: raw.nondensity_bounds.unwrap_or(defaults.nondensity_bounds),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        fn non_empty<T>(path: &str, v: &[T]) -> Result<()> {
            if v.is_empty() {
                Err(config_error(path, "must be non-empty"))
            } else {
                Ok(())
            }
        }
        non_empty("t_grid", &self.t_grid)?;
        for (i, t) in self.t_grid.iter().enumerate() {
            if !(0.0..1.0).contains(t) {
                return Err(config_error(
                    format!("t_grid[{i}]"),
                    format!("{t} is not in [0, 1)"),
                ));
            }
        }
        non_empty("p_grid", &self.p_grid)?;
        for (i, p) in self.p_grid.iter().enumerate() {
            if !(p.is_finite() && *p >= 1.0) {
                return Err(config_error(
                    format!("p_grid[{i}]"),
                    format!("{p} is not a finite exponent >= 1"),
                ));
            }
        }
        if let Some(q_grid) = &self.q_grid {
            if q_grid.len() != self.p_grid.len() {
                return Err(config_error(
                    "q_grid",
                    format!(
                        "has {} entries, p_grid has {}",
                        q_grid.len(),
                        self.p_grid.len()
                    ),
                ));
            }
            for (i, q) in q_grid.iter().enumerate() {
                if !(q.is_finite() && *q >= 1.0) {
                    return Err(config_error(
                        format!("q_grid[{i}]"),
                        format!("{q} is not a finite exponent >= 1"),
                    ));
                }
            }
        }
        if self.spaces.is_none() {
            for (i, &p) in self.p_grid.iter().enumerate().filter(|(_, p)| **p > 1.0) {
                SpaceSpec::Xpq { p, q: self.q_for(i) }
                    .validate()
                    .map_err(|e| config_error(format!("q_grid[{i}]"), e.to_string()))?;
            }
        }
        non_empty("M_grid", &self.m_grid)?;
        let max_order = *self.m_grid.iter().max().expect("non-empty");
        if self.n < 2 || self.n < max_order + 1 {
            return Err(config_error(
                "N",
                format!(
                    "{} must be at least 2 and at least max(M_grid) + 1 = {}",
                    self.n,
                    max_order + 1
                ),
            ));
        }
        if self.budget == 0 {
            return Err(config_error("budget", "must be positive"));
        }
        let tol = &self.tolerances;
        for (name, v) in [
            ("tolerances.residual_tol", tol.residual_tol),
            ("tolerances.sandwich_slack", tol.sandwich_slack),
            ("tolerances.oracle_tol", tol.oracle_tol),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(config_error(
                    name,
                    format!("{v} is not a finite nonnegative number"),
                ));
            }
        }
        if let Some(spaces) = &self.spaces {
            non_empty("spaces", spaces)?;
            for (i, s) in spaces.iter().enumerate() {
                s.validate()
                    .map_err(|e| config_error(format!("spaces[{i}]"), e.to_string()))?;
            }
        }
        for (i, m) in self.nondensity_bounds.iter().enumerate() {
            if !(m.is_finite() && (0.0..=1000.0).contains(m)) {
                return Err(config_error(
                    format!("nondensity_bounds[{i}]"),
                    format!("{m} is not in [0, 1000]"),
                ));
            }
        }
        Ok(())
    }

    pub fn q_for(&self, index: usize) -> f64 {
        self.q_grid
            .as_ref()
            .map_or(self.p_grid[index] + 1.0, |q| q[index])
    }

    /// The spaces the sandwich, axiom and decay checks run over.
    pub fn resolved_spaces(&self) -> Vec<SpaceSpec> {
        if let Some(spaces) = &self.spaces {
            return spaces.clone();
        }
        let power = WeightSpec::Power(1.0);
        let mut spaces = Vec::new();
        for &p in &self.p_grid {
            spaces.push(SpaceSpec::Lp { p });
        }
        spaces.push(SpaceSpec::Linf);
        for &p in self.p_grid.iter().filter(|p| **p > 1.0) {
            spaces.push(SpaceSpec::CesP { p });
        }
        spaces.push(SpaceSpec::CesInf);
        for &p in &self.p_grid {
            spaces.push(SpaceSpec::Dp { p });
        }
        for &p in &self.p_grid {
            spaces.push(SpaceSpec::LpWeighted {
                p,
                w: power.clone(),
            });
        }
        spaces.push(SpaceSpec::C0Weighted { w: power });
        for (i, &p) in self.p_grid.iter().enumerate() {
            if p > 1.0 {
                spaces.push(SpaceSpec::Xpq {
                    p,
                    q: self.q_for(i),
                });
            }
        }
        spaces
    }

    fn search(&self, salt: u64) -> SearchOptions {
        SearchOptions {
            budget: self.budget,
            ..SearchOptions::default()
        }
        .with_seed(self.seed.wrapping_add(salt))
    }
}

/// Reports in suite order plus the norm certificates behind the sandwich
/// checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteOutcome {
    pub reports: Vec<CheckReport>,
    pub certificates: Vec<NormBoundCertificate>,
}

/// Runs every check. Independent checks execute in parallel; the report
/// order depends only on the config.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteOutcome> {
    config.validate()?;
    let mut reports = Vec::new();
    reports.extend(oracle_agreement(config));
    reports.extend(identities(config));
    reports.extend(norm_axioms(config));
    reports.extend(embeddings(config));
    reports.extend(operator_checks(config));
    let (sandwich, certificates) = sandwiches(config);
    reports.extend(sandwich);
    reports.extend(decay(config));
    reports.extend(section_spectra(config));
    reports.extend(cesinf_witnesses(config));
    reports.extend(separation());
    Ok(SuiteOutcome {
        reports,
        certificates,
    })
}

/// Runs a fallible check; an error becomes a failed report.
fn guarded(
    claim_id: &str,
    citation: &str,
    f: impl FnOnce() -> Result<Vec<CheckReport>>,
) -> Vec<CheckReport> {
    f().unwrap_or_else(|e| vec![CheckReport::failed(claim_id, citation, &e.to_string())])
}

fn par_flatten<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Vec<CheckReport> + Sync + Send,
) -> Vec<CheckReport> {
    items
        .par_iter()
        .map(f)
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Small-denominator rational equal to `t` as a double, else the exact
/// dyadic value. Keeps oracle bit growth low for grid values like 0.1.
pub fn simple_rational(t: f64) -> BigRational {
    (1..=1000i64)
        .find_map(|d| {
            let n = (t * d as f64).round();
            (n / d as f64 == t).then(|| rational(n as i64, d))
        })
        .unwrap_or_else(|| exact_rational(t))
}

const ORACLE_CASES: usize = 1000;
const EIGEN_MAX_M: usize = 10;

fn oracle_agreement(config: &SuiteConfig) -> Vec<CheckReport> {
    let tol = config.tolerances.oracle_tol;
    let mut ts = config.t_grid.clone();
    ts.push(1.0);
    let cite = "float recurrence agrees with the exact defining double sum";
    let cases: Vec<usize> = (0..ORACLE_CASES).collect();
    let deviations: Result<Vec<f64>> = cases
        .par_iter()
        .map(|&case| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed.wrapping_add(case as u64));
            let len = rng.gen_range(1..=MAX_ORACLE_LEN);
            let t = ts[case % ts.len()];
            let x = Seq::new(
                (0..len)
                    .map(|_| rng.gen_range(0..=1024) as f64 / 1024.0)
                    .collect(),
            )?;
            let fast = apply_cesaro(t, &x)?;
            let exact = exact_cesaro(&simple_rational(t), &RationalSeq::from_seq(&x)?)?;
            Ok(max_relative_deviation(fast.as_slice(), &exact))
        })
        .collect();
    let mut reports = vec![match deviations {
        Ok(d) => CheckReport::at_most(
            "oracle-cesaro-agreement",
            cite,
            d.into_iter().fold(0.0, f64::max),
            tol,
            0.0,
        )
        .input("cases", ORACLE_CASES as u64)
        .seed(config.seed),
        Err(e) => CheckReport::failed("oracle-cesaro-agreement", cite, &e.to_string()),
    }];
    reports.extend(par_flatten(&config.t_grid, |&t| {
        let cite = "eigenvector ratio recurrence agrees with the exact product formula";
        guarded("oracle-eigenvector-agreement", cite, || {
            let tr = simple_rational(t);
            let mut worst: f64 = 0.0;
            for m in 0..=EIGEN_MAX_M {
                let fast = eigenvector(t, m, MAX_ORACLE_LEN)?;
                let exact = exact_eigenvector(&tr, m, MAX_ORACLE_LEN)?;
                worst = worst.max(max_relative_deviation(fast.as_slice(), &exact));
            }
            Ok(vec![CheckReport::at_most(
                "oracle-eigenvector-agreement",
                cite,
                worst,
                tol,
                0.0,
            )
            .input("t", t)
            .input("m_max", EIGEN_MAX_M as u64)
            .input("n", MAX_ORACLE_LEN as u64)])
        })
    }));
    reports
}

/// The seven spaces the eigen-residuals are measured in.
pub fn eigen_spaces() -> Vec<SpaceSpec> {
    vec![
        SpaceSpec::Lp { p: 1.0 },
        SpaceSpec::Lp { p: 2.0 },
        SpaceSpec::Dp { p: 1.0 },
        SpaceSpec::Dp { p: 2.0 },
        SpaceSpec::CesP { p: 2.0 },
        SpaceSpec::LpWeighted {
            p: 2.0,
            w: WeightSpec::Power(1.0),
        },
        SpaceSpec::Xpq { p: 2.0, q: 3.0 },
    ]
}

fn identities(config: &SuiteConfig) -> Vec<CheckReport> {
    let mut reports = Vec::new();
    let basis_cite = "C_t (e_n - t e_{n+1}) = e_n/(n+1)";
    let basis: Vec<(i64, i64)> = vec![(1, 3), (1, 2), (9, 10)];
    reports.extend(par_flatten(&basis, |&(num, den)| {
        guarded("basis-identity-exact", basis_cite, || {
            let t = rational(num, den);
            let mut all = true;
            for n in 0..=30 {
                all &= exact_basis_identity(&t, n, 32)?;
            }
            Ok(vec![CheckReport::holds(
                "basis-identity-exact",
                basis_cite,
                all,
            )
            .input("t", format!("{num}/{den}"))
            .input("n_max", 30u64)])
        })
    }));

    let exact_cite = "C_t x^[m] = x^[m]/(m+1) in exact arithmetic";
    reports.extend(par_flatten(&config.t_grid, |&t| {
        guarded("eigen-identity-exact", exact_cite, || {
            let tr = simple_rational(t);
            let mut all = true;
            for m in 0..=EIGEN_MAX_M {
                all &= exact_eigen_identity(&tr, m, MAX_ORACLE_LEN)?;
            }
            Ok(vec![CheckReport::holds(
                "eigen-identity-exact",
                exact_cite,
                all,
            )
            .input("t", t)
            .input("t_rational", tr.to_string())
            .input("m_max", EIGEN_MAX_M as u64)
            .input("n", MAX_ORACLE_LEN as u64)])
        })
    }));

    let float_cite = "1/(m+1) is an eigenvalue of C_t with eigenvector x^[m] in every space";
    let pairs: Vec<(f64, SpaceSpec)> = config
        .t_grid
        .iter()
        .flat_map(|&t| eigen_spaces().into_iter().map(move |s| (t, s)))
        .collect();
    reports.extend(par_flatten(&pairs, |(t, space)| {
        guarded("eigen-residual", float_cite, || {
            let mut worst: f64 = 0.0;
            for m in 0..=EIGEN_MAX_M {
                worst = worst.max(eigen_certificate(*t, m, config.n, space)?.residual);
            }
            Ok(vec![CheckReport::at_most(
                "eigen-residual",
                float_cite,
                worst,
                config.tolerances.residual_tol,
                0.0,
            )
            .input("t", *t)
            .input("space", space.to_string())
            .input("m_max", EIGEN_MAX_M as u64)
            .input("n", config.n as u64)])
        })
    }));
    reports
}

/// Mixed test vectors: dense, sparse, spiky and decaying.
fn random_vectors(len: usize, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|k| {
            let mut x: Vec<f64> = match k % 4 {
                0 => (0..len).map(|_| rng.gen_range(-1.0..1.0)).collect(),
                1 => (0..len)
                    .map(|_| {
                        if rng.gen_bool(0.05) {
                            rng.gen_range(-5.0..5.0)
                        } else {
                            0.0
                        }
                    })
                    .collect(),
                2 => (0..len)
                    .map(|i| rng.gen_range(-1.0..1.0) / (i as f64 + 1.0))
                    .collect(),
                _ => (0..len)
                    .map(|i| rng.gen_range(0.0..1.0) * 0.97f64.powi(i as i32))
                    .collect(),
            };
            if x.iter().all(|v| *v == 0.0) {
                x[rng.gen_range(0..len)] = 1.0;
            }
            x
        })
        .collect()
}

const AXIOM_SAMPLES: usize = 200;

fn norm_axioms(config: &SuiteConfig) -> Vec<CheckReport> {
    let spaces = config.resolved_spaces();
    let tol = config.tolerances.oracle_tol;
    par_flatten(&spaces, |space| {
        guarded("norm-axioms", "norm axioms", || {
            let norm = space.prepare(config.n)?;
            let xs = random_vectors(config.n, AXIOM_SAMPLES, config.seed);
            let ys = random_vectors(config.n, AXIOM_SAMPLES, config.seed ^ 0x5eed);
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let (mut riesz, mut triangle, mut homogeneity) = (0.0f64, 0.0f64, 0.0f64);
            for (x, y) in xs.iter().zip(&ys) {
                let nx = norm.eval(x);
                // |y'| <= |x| entrywise, with arbitrary signs.
                let dominated: Vec<f64> = x.iter().map(|v| v * rng.gen_range(-1.0..=1.0)).collect();
                riesz = riesz.max(norm.eval(&dominated) / nx);
                let sum: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
                triangle = triangle.max(norm.eval(&sum) / (nx + norm.eval(y)));
                let c = rng.gen_range(-10.0..10.0);
                let scaled: Vec<f64> = x.iter().map(|v| c * v).collect();
                homogeneity =
                    homogeneity.max((norm.eval(&scaled) - c.abs() * nx).abs() / (c.abs() * nx));
            }
            let tag = |r: CheckReport| {
                r.input("space", space.to_string())
                    .input("samples", AXIOM_SAMPLES as u64)
                    .seed(config.seed)
            };
            Ok(vec![
                tag(CheckReport::at_most(
                    "norm-riesz",
                    "|y| <= |x| implies ||y|| <= ||x||",
                    riesz,
                    1.0,
                    tol,
                )),
                tag(CheckReport::at_most(
                    "norm-triangle",
                    "||x + y|| <= ||x|| + ||y||",
                    triangle,
                    1.0,
                    tol,
                )),
                tag(CheckReport::equal(
                    "norm-homogeneity",
                    "||c x|| = |c| ||x||",
                    homogeneity,
                    0.0,
                    tol,
                )),
            ])
        })
    })
}

fn embeddings(config: &SuiteConfig) -> Vec<CheckReport> {
    let tol = config.tolerances.oracle_tol;
    let xs: Vec<Seq> = random_vectors(config.n, AXIOM_SAMPLES, config.seed.wrapping_add(7))
        .into_iter()
        .map(|x| Seq::new(x).expect("finite"))
        .collect();
    let worst = |f: &dyn Fn(&Seq) -> Result<f64>| -> Result<f64> {
        xs.iter().map(f).try_fold(0.0f64, |acc, v| Ok(acc.max(v?)))
    };
    let tag = |r: CheckReport| {
        r.input("samples", AXIOM_SAMPLES as u64)
            .seed(config.seed.wrapping_add(7))
    };
    let mut reports = Vec::new();

    let cite = "d_1 is contained in l^1 with ||x||_1 <= ||x||_{d_1}";
    reports.extend(guarded("embedding-l1-d1", cite, || {
        let ratio = worst(&|x| Ok(lp_norm(1.0, x)?.value / dp_norm(1.0, x)?.value))?;
        Ok(vec![tag(CheckReport::at_most(
            "embedding-l1-d1",
            cite,
            ratio,
            1.0,
            tol,
        ))])
    }));
    for &p in &config.p_grid {
        let cite = "||x||_p <= ||x||_{d_p}";
        reports.extend(guarded("embedding-dp-lp", cite, || {
            let ratio = worst(&|x| Ok(lp_norm(p, x)?.value / dp_norm(p, x)?.value))?;
            Ok(vec![tag(CheckReport::at_most(
                "embedding-dp-lp",
                cite,
                ratio,
                1.0,
                tol,
            ))
            .input("p", p)])
        }));
        if p > 1.0 {
            let cite = "Hardy: ||x||_{ces_p} <= p/(p-1) ||x||_p";
            let bound = p / (p - 1.0);
            reports.extend(guarded("embedding-lp-cesp", cite, || {
                let space = SpaceSpec::CesP { p };
                let ratio = worst(&|x| Ok(space.norm(x)?.value / lp_norm(p, x)?.value))?;
                Ok(vec![tag(CheckReport::at_most(
                    "embedding-lp-cesp",
                    cite,
                    ratio,
                    bound,
                    tol,
                ))
                .input("p", p)])
            }));
        }
    }
    let cite = "||x||_{ces_inf} <= ||x||_inf";
    reports.extend(guarded("embedding-cesinf-linf", cite, || {
        let ratio =
            worst(&|x| Ok(ces0_or_cesinf_norm(x).value / lp_norm(f64::INFINITY, x)?.value))?;
        Ok(vec![tag(CheckReport::at_most(
            "embedding-cesinf-linf",
            cite,
            ratio,
            1.0,
            tol,
        ))])
    }));
    for space in config.resolved_spaces() {
        match &space {
            SpaceSpec::LpWeighted { p, w } => {
                let cite = "non-increasing weight: ||x||_{p,w} <= w_0^(1/p) ||x||_p";
                let p = *p;
                reports.extend(guarded("embedding-weighted-lp", cite, || {
                    let w0 = w.materialize(1)?.as_slice()[0];
                    let ratio = worst(&|x| Ok(space.norm(x)?.value / lp_norm(p, x)?.value))?;
                    Ok(vec![tag(CheckReport::at_most(
                        "embedding-weighted-lp",
                        cite,
                        ratio,
                        w0.powf(1.0 / p),
                        tol,
                    ))
                    .input("space", space.to_string())])
                }));
            }
            SpaceSpec::Xpq { p, q } => {
                let (lo, hi) = (p.min(*q), p.max(*q));
                let cite = "||x||_{max(p,q)} <= ||x||_{X_{p,q}} <= 2 ||x||_{min(p,q)}";
                reports.extend(guarded("embedding-xpq", cite, || {
                    let below = worst(&|x| Ok(lp_norm(hi, x)?.value / space.norm(x)?.value))?;
                    let above = worst(&|x| Ok(space.norm(x)?.value / lp_norm(lo, x)?.value))?;
                    Ok(vec![
                        tag(CheckReport::at_most(
                            "embedding-xpq-lower",
                            cite,
                            below,
                            1.0,
                            tol,
                        ))
                        .input("space", space.to_string()),
                        tag(CheckReport::at_most(
                            "embedding-xpq-upper",
                            cite,
                            above,
                            2.0,
                            tol,
                        ))
                        .input("space", space.to_string()),
                    ])
                }));
            }
            _ => {}
        }
    }
    reports
}

/// Smallest `M` with `t^M < 1e-15`.
fn resolvent_order(t: f64) -> usize {
    if t == 0.0 {
        return 1;
    }
    let mut order = (1e-15f64.ln() / t.ln()).ceil() as usize;
    while t.powi(order as i32) >= 1e-15 {
        order += 1;
    }
    order
}

const MULTIPLIER_CASES: usize = 50;

fn operator_checks(config: &SuiteConfig) -> Vec<CheckReport> {
    let slack = config.tolerances.sandwich_slack;
    let mut reports = Vec::new();

    let shifts: Vec<(f64, usize)> = config
        .p_grid
        .iter()
        .flat_map(|&p| (0..=20).map(move |m| (p, m)))
        .collect();
    reports.extend(par_flatten(&shifts, |&(p, m)| {
        guarded("dp-shift-norm", "d_p shift norm", || {
            shift_norm_check(p, m, config.n, &config.search(m as u64), slack)
        })
    }));

    let resolvents: Vec<(f64, f64)> = config
        .p_grid
        .iter()
        .flat_map(|&p| config.t_grid.iter().map(move |&t| (p, t)))
        .collect();
    reports.extend(par_flatten(&resolvents, |&(p, t)| {
        guarded("dp-resolvent", "d_p resolvent norm", || {
            let order = resolvent_order(t);
            let n = config.n.max(order + 1);
            resolvent_norm_check(p, t, n, order, &config.search(0), slack)
        })
    }));

    let cases: Vec<usize> = (0..MULTIPLIER_CASES).collect();
    reports.extend(par_flatten(&cases, |&case| {
        guarded("multiplier", "convolution multiplier norm", || {
            let seed = config.seed.wrapping_add(1000 + case as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let support = rng.gen_range(1..=16.min(config.n));
            let mut a: Vec<f64> = (0..support).map(|_| rng.gen_range(0.0..1.0)).collect();
            a[0] += 1e-3;
            let p = config.p_grid[case % config.p_grid.len()];
            let reports =
                multiplier_norm_check(&Seq::new(a)?, p, config.n, &config.search(seed), slack)?;
            Ok(reports
                .into_iter()
                .map(|r| {
                    r.input("case", case as u64)
                        .input("support", support as u64)
                        .seed(seed)
                })
                .collect())
        })
    }));
    reports
}

fn sandwiches(config: &SuiteConfig) -> (Vec<CheckReport>, Vec<NormBoundCertificate>) {
    let spaces = config.resolved_spaces();
    let slack = config.tolerances.sandwich_slack;
    let residual_tol = config.tolerances.residual_tol;
    let n = config.n;
    let pairs: Vec<(usize, SpaceSpec, f64)> = spaces
        .iter()
        .enumerate()
        .flat_map(|(i, s)| config.t_grid.iter().map(move |&t| (i, s.clone(), t)))
        .collect();
    let results: Vec<(Vec<CheckReport>, Option<NormBoundCertificate>)> = pairs
        .par_iter()
        .enumerate()
        .map(|(k, (_, space, t))| {
            let t = *t;
            let op = OperatorSpec::CesaroT { t };
            let cert = match norm_lower_bound(space, &op, n, &config.search(k as u64)) {
                Ok(c) => c,
                Err(e) => {
                    let r = CheckReport::failed(
                        "cesaro-norm-sandwich",
                        "norm sandwich",
                        &e.to_string(),
                    )
                    .input("space", space.to_string())
                    .input("t", t);
                    return (vec![r], None);
                }
            };
            let tag = |r: CheckReport| {
                r.input("space", space.to_string())
                    .input("t", t)
                    .input("n", n as u64)
            };
            let mut reports = vec![tag(match cert.upper {
                Some(upper) => CheckReport::at_most(
                    "cesaro-norm-sandwich",
                    &cert.bound_source,
                    cert.lower,
                    upper,
                    slack,
                )
                .seed(cert.seed)
                .input("evaluations", cert.evaluations as u64),
                None => CheckReport::skipped(
                    "cesaro-norm-sandwich",
                    &cert.bound_source,
                    "no analytic bound",
                ),
            })];
            reports.extend(guarded("cesaro-e0-direct", "C_t e_0 = (t^n/(n+1))", || {
                let direct = Seq::new(
                    (0..n)
                        .map(|i| t.powi(i as i32) / (i as f64 + 1.0))
                        .collect(),
                )?;
                let e0 = crate::seq::canonical(0, n)?;
                let value = space.norm(&direct)?.value / space.norm(&e0)?.value;
                let mut out = vec![tag(CheckReport::equal(
                    "cesaro-e0-direct",
                    "C_t e_0 = (t^n/(n+1)) by direct summation",
                    cert.e0_ratio,
                    value,
                    residual_tol,
                ))];
                if let SpaceSpec::Dp { p } = space {
                    let closed = (0..n)
                        .map(|i| (t.powi(i as i32) / (i as f64 + 1.0)).powf(*p))
                        .sum::<f64>()
                        .powf(1.0 / p);
                    let cite = "d_p: ||C_t|| >= ||C_t e_0|| = (sum t^(np)/(n+1)^p)^(1/p)";
                    out.push(tag(CheckReport::equal(
                        "dp-e0-lower-witness",
                        cite,
                        cert.e0_ratio,
                        closed,
                        1e-9,
                    )));
                    out.push(
                        tag(CheckReport::at_least(
                            "dp-e0-lower",
                            cite,
                            cert.lower,
                            closed,
                            0.0,
                        ))
                        .seed(cert.seed),
                    );
                }
                Ok(out)
            }));
            reports.extend(guarded(
                "cesaro-norm-at-least-one",
                "C_t x^[0] = x^[0]",
                || {
                    let x0 = eigenvector(t, 0, n)?;
                    let image = apply_cesaro(t, &x0)?;
                    let ratio = space.norm(&image)?.value / space.norm(&x0)?.value;
                    Ok(vec![tag(CheckReport::equal(
                        "cesaro-norm-at-least-one",
                        "||C_t|| >= 1: C_t x^[0] = x^[0]",
                        ratio,
                        1.0,
                        residual_tol,
                    ))])
                },
            ));
            (reports, Some(cert))
        })
        .collect();

    let mut reports = Vec::new();
    let mut certificates = Vec::new();
    for (r, c) in results {
        reports.extend(r);
        certificates.extend(c);
    }

    // Monotone domination: 0 <= C_r <= C_s entrywise for r <= s.
    let cite = "0 <= r <= s: ||C_r|| <= ||C_s|| on the nonnegative cone";
    for space in &spaces {
        let of_space: Vec<&NormBoundCertificate> =
            certificates.iter().filter(|c| &c.space == space).collect();
        let mut worst: f64 = 0.0;
        for r in &of_space {
            for s in &of_space {
                let (Some(tr), Some(ts), Some(upper)) = (r.operator.t(), s.operator.t(), s.upper)
                else {
                    continue;
                };
                if tr <= ts {
                    worst = worst.max(r.lower / upper);
                }
            }
        }
        reports.push(
            CheckReport::at_most("cesaro-monotone-domination", cite, worst, 1.0, slack)
                .input("space", space.to_string()),
        );
    }
    (reports, certificates)
}

fn decay(config: &SuiteConfig) -> Vec<CheckReport> {
    let slack = config.tolerances.sandwich_slack;
    let n = config.n;
    let mut reports = par_flatten(&config.resolved_spaces(), |space| {
        let cite = "||D - D^[n]|| = 1/(n+2), attained at e_{n+1}";
        guarded("diagonal-tail", cite, || {
            let points = compactness_decay(space, 0.0, &config.m_grid, n, &config.search(0))?;
            Ok(points
                .into_iter()
                .map(|pt| {
                    let tag = |r: CheckReport| {
                        r.input("space", space.to_string())
                            .input("M", pt.order as u64)
                    };
                    if pt.order + 1 >= n {
                        return tag(CheckReport::skipped(
                            "diagonal-tail",
                            cite,
                            "order covers the whole prefix",
                        ));
                    }
                    let bound = pt.upper.expect("diagonal tail bound is always known");
                    tag(
                        CheckReport::at_most("diagonal-tail", cite, pt.estimate, bound, slack)
                            .also_require(
                                pt.estimate >= bound - 1e-10,
                                "estimate below 1/(n+2) - 1e-10",
                            )
                            .seed(config.seed),
                    )
                })
                .collect())
        })
    });

    let mut xpq: Vec<SpaceSpec> = vec![SpaceSpec::Xpq { p: 2.0, q: 3.0 }];
    for s in config.resolved_spaces() {
        if matches!(s, SpaceSpec::Xpq { .. }) && !xpq.contains(&s) {
            xpq.push(s);
        }
    }
    let pairs: Vec<(SpaceSpec, f64)> = xpq
        .iter()
        .flat_map(|s| config.t_grid.iter().map(move |&t| (s.clone(), t)))
        .collect();
    reports.extend(par_flatten(&pairs, |(space, t)| {
        let cite = "X_{p,q}: ||C_t - C_t^[M]|| <= 2 (1-t)^-1 ||xi^[M]||_p";
        guarded("xpq-tail", cite, || {
            let points = compactness_decay(space, *t, &config.m_grid, n, &config.search(1))?;
            let tag = |r: CheckReport| r.input("space", space.to_string()).input("t", *t);
            let mut out: Vec<CheckReport> = points
                .iter()
                .map(|pt| match pt.upper {
                    Some(bound) => tag(CheckReport::at_most(
                        "xpq-tail",
                        cite,
                        pt.estimate,
                        bound,
                        slack,
                    ))
                    .input("M", pt.order as u64)
                    .seed(config.seed.wrapping_add(1)),
                    None => tag(CheckReport::skipped("xpq-tail", cite, "no analytic bound")),
                })
                .collect();
            let mut sorted = points.clone();
            sorted.sort_by_key(|p| p.order);
            let monotone = sorted.windows(2).all(|w| w[1].estimate <= w[0].estimate);
            out.push(tag(CheckReport::holds(
                "xpq-tail-monotone",
                "tail estimates are non-increasing in M",
                monotone,
            )));
            Ok(out)
        })
    }));
    reports
}

const CROSSCHECK_N: usize = 64;
const CROSSCHECK_TOL: f64 = 1e-8;

fn section_spectra(config: &SuiteConfig) -> Vec<CheckReport> {
    par_flatten(&config.t_grid, |&t| {
        guarded("section-spectrum", "finite-section spectrum", || {
            let spectrum = finite_section_eigenvalues(t, config.n)?;
            let gap = 1.0 / (config.n as f64 + 1.0);
            let crosscheck = dense_eigen_crosscheck(t, CROSSCHECK_N, config.seed)?;
            let tag = |r: CheckReport| r.input("t", t).input("n", config.n as u64);
            Ok(vec![
                tag(CheckReport::equal(
                    "section-eigenvalues",
                    "the N x N section has eigenvalues {1/(k+1) : k < N}",
                    spectrum.max_deviation,
                    0.0,
                    0.0,
                )),
                tag(CheckReport::at_most(
                    "section-hausdorff",
                    "section spectrum converges to Lambda + {0}",
                    spectrum.hausdorff,
                    gap,
                    0.0,
                )),
                CheckReport::at_most(
                    "section-dense-crosscheck",
                    "general dense eigen-solver on a similar matrix",
                    crosscheck,
                    CROSSCHECK_TOL,
                    0.0,
                )
                .input("t", t)
                .input("n", CROSSCHECK_N as u64)
                .seed(config.seed),
            ])
        })
    })
}

const CLASSICAL_WITNESS_LEN: usize = 10_000;

fn cesinf_witnesses(config: &SuiteConfig) -> Vec<CheckReport> {
    let mut reports = Vec::new();
    let cite = "z = sum k e_{k^2} has bounded Cesaro means: (C_1 z)_n <= 1";
    reports.extend(guarded("cesinf-witness-bounded", cite, || {
        let z = squares_witness(CLASSICAL_WITNESS_LEN)?;
        let means = apply_cesaro(1.0, &z)?;
        let max = means.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Ok(vec![CheckReport::at_most(
            "cesinf-witness-bounded",
            cite,
            max,
            1.0,
            0.0,
        )
        .input("n", CLASSICAL_WITNESS_LEN as u64)])
    }));
    let cite = "l^inf is not dense in ces_inf";
    reports.extend(guarded("cesinf-nondensity", cite, || {
        let max_bound = config.nondensity_bounds.iter().copied().fold(0.0, f64::max);
        let k0 = 2 * max_bound.floor() as usize + 2;
        let n = config.n.max(4 * k0 * k0 + 1);
        cesinf_nondensity_check(&config.nondensity_bounds, n, config.seed)
    }));
    reports
}

const SEPARATION_BLOCKS: u32 = 20;

fn separation() -> Vec<CheckReport> {
    let cite = "l^1 is not contained in d_1: ||x||_1 < 2 while ||x||_{d_1} = b";
    guarded("l1-d1-separation", cite, || {
        let mut ratios = Vec::new();
        let mut last = (0.0, 0.0);
        for b in 1..=SEPARATION_BLOCKS {
            let x = ell1_not_d1_witness(b)?;
            let l1 = lp_norm(1.0, &x)?.value;
            let d1 = dp_norm(1.0, &x)?.value;
            ratios.push(d1 / l1);
            last = (l1, d1);
        }
        let monotone = ratios.windows(2).all(|w| w[1] > w[0]);
        let b = SEPARATION_BLOCKS as u64;
        let bound = f64::from(SEPARATION_BLOCKS - 1);
        Ok(vec![
            CheckReport::at_most("l1-d1-separation-l1", cite, last.0, 2.0, 0.0).input("blocks", b),
            CheckReport::at_least("l1-d1-separation-d1", cite, last.1, bound, 1e-12)
                .input("blocks", b),
            CheckReport::holds(
                "l1-d1-ratio-monotone",
                "||x||_{d_1}/||x||_1 grows with b",
                monotone,
            )
            .input("blocks", b),
        ])
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = SuiteConfig::default();
        c.validate().unwrap();
        assert_eq!(c.resolved_spaces().len(), 21);
    }

    #[test]
    fn empty_config_is_default() {
        assert_eq!(
            SuiteConfig::from_json("{}").unwrap(),
            SuiteConfig::default()
        );
    }

    #[test]
    fn field_paths() {
        let path = |text: &str| match SuiteConfig::from_json(text) {
            Err(Error::Config { path, .. }) => path,
            other => panic!("expected config error, got {other:?}"),
        };
        assert_eq!(path(r#"{"t_grid": [0, 0.5, 0.9, 1.0]}"#), "t_grid[3]");
        assert_eq!(path(r#"{"spaces": []}"#), "spaces");
        assert_eq!(path(r#"{"spaces": ["lp:2", "lp:0.5"]}"#), "spaces[1]");
        assert_eq!(path(r#"{"N": 8, "M_grid": [8]}"#), "N");
        assert_eq!(path(r#"{"p_grid": [1, 2], "q_grid": [3]}"#), "q_grid");
        assert_eq!(path(r#"{"p_grid": [1, 2], "q_grid": [3, 1.5]}"#), "q_grid[1]");
        assert_eq!(path(r#"{"bogus": 1}"#), "<root>");
    }

    #[test]
    fn spaces_accept_both_forms() {
        let c =
            SuiteConfig::from_json(r#"{"spaces": ["dp:2", {"kind": "Lp", "p": 1.5}]}"#).unwrap();
        assert_eq!(
            c.resolved_spaces(),
            vec![SpaceSpec::Dp { p: 2.0 }, SpaceSpec::Lp { p: 1.5 }]
        );
    }

    #[test]
    fn simple_rationals() {
        assert_eq!(simple_rational(0.1), rational(1, 10));
        assert_eq!(simple_rational(0.25), rational(1, 4));
        assert_eq!(simple_rational(0.0), rational(0, 1));
        assert_eq!(simple_rational(1.0 / 3.0), rational(1, 3));
    }

    #[test]
    fn resolvent_orders() {
        assert_eq!(resolvent_order(0.0), 1);
        for t in [0.1, 0.5, 0.9] {
            let m = resolvent_order(t);
            assert!(t.powi(m as i32) < 1e-15 && t.powi(m as i32 - 1) >= 1e-15);
        }
    }
}
