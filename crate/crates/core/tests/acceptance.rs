//! End-to-end acceptance: runs the default suite and groups its reports by
//! criterion. Built without the test harness so the one-line PASS/FAIL
//! summary per criterion is always printed; exits nonzero on failure.

use std::time::Instant;

use cesaro_core::report::{render, Format};
use cesaro_core::spectral::eigen_certificate;
use cesaro_core::suite::eigen_spaces;
use cesaro_core::{run_suite, CheckReport, Status, SuiteConfig};

struct Criterion {
    number: u32,
    name: &'static str,
    /// Claim ids that belong to the criterion, with the number of reports
    /// each must contribute under the default config.
    claims: &'static [(&'static str, usize)],
}

const T: usize = 6;
const P: usize = 4;
const SPACES: usize = 21;
const DP_SPACES: usize = 4;
const XPQ_SPACES: usize = 3;
const ORDERS: usize = 10;

const CRITERIA: &[Criterion] = &[
    Criterion {
        number: 1,
        name: "eigen identity in seven spaces, exact at N = 64",
        claims: &[("eigen-residual", T * 7), ("eigen-identity-exact", T)],
    },
    Criterion {
        number: 2,
        name: "basis identity in exact arithmetic",
        claims: &[("basis-identity-exact", 3)],
    },
    Criterion {
        number: 3,
        name: "norm sandwiches for every (space, t)",
        claims: &[
            ("cesaro-norm-sandwich", SPACES * T),
            ("cesaro-e0-direct", SPACES * T),
            ("dp-e0-lower-witness", DP_SPACES * T),
            ("dp-e0-lower", DP_SPACES * T),
            ("cesaro-norm-at-least-one", SPACES * T),
            ("cesaro-monotone-domination", SPACES),
        ],
    },
    Criterion {
        number: 4,
        name: "exact d_p shift norms",
        claims: &[
            ("dp-shift-norm-witness", P * 21),
            ("dp-shift-norm-search", P * 21),
        ],
    },
    Criterion {
        number: 5,
        name: "d_p resolvent norms",
        claims: &[
            ("dp-resolvent-e0", P * T),
            ("dp-resolvent-lower", P * T),
            ("dp-resolvent-upper", P * T),
            ("dp-resolvent-identity", P),
        ],
    },
    Criterion {
        number: 6,
        name: "convolution multiplier sandwich",
        claims: &[("multiplier-e0", 50), ("multiplier-upper", 50)],
    },
    Criterion {
        number: 7,
        name: "compactness decay",
        claims: &[
            ("diagonal-tail", SPACES * ORDERS),
            ("xpq-tail", XPQ_SPACES * T * ORDERS),
            ("xpq-tail-monotone", XPQ_SPACES * T),
        ],
    },
    Criterion {
        number: 8,
        name: "finite-section spectrum",
        claims: &[
            ("section-eigenvalues", T),
            ("section-hausdorff", T),
            ("section-dense-crosscheck", T),
        ],
    },
    Criterion {
        number: 9,
        name: "ces_inf witnesses",
        claims: &[("cesinf-witness-bounded", 1), ("cesinf-nondensity", 4)],
    },
    Criterion {
        number: 10,
        name: "l^1 versus d_1 separation",
        claims: &[
            ("l1-d1-separation-l1", 1),
            ("l1-d1-separation-d1", 1),
            ("l1-d1-ratio-monotone", 1),
        ],
    },
];

fn evaluate(criterion: &Criterion, reports: &[CheckReport]) -> (bool, String) {
    let mut ok = true;
    let mut notes = Vec::new();
    for &(claim, expected) in criterion.claims {
        let matching: Vec<&CheckReport> = reports.iter().filter(|r| r.claim_id == claim).collect();
        let failed: Vec<&&CheckReport> = matching
            .iter()
            .filter(|r| r.status != Status::Pass)
            .collect();
        if matching.len() != expected {
            ok = false;
            notes.push(format!(
                "{claim}: {} reports, expected {expected}",
                matching.len()
            ));
        }
        if !failed.is_empty() {
            ok = false;
            notes.push(format!(
                "{claim}: {} not passing, first computed={} reference={:?}",
                failed.len(),
                failed[0].computed,
                failed[0].reference()
            ));
        }
    }
    (ok, notes.join("; "))
}

fn line(number: u32, name: &str, ok: bool, notes: &str) -> String {
    let status = if ok { "PASS" } else { "FAIL" };
    if notes.is_empty() {
        format!("[{status}] criterion {number}: {name}")
    } else {
        format!("[{status}] criterion {number}: {name} ({notes})")
    }
}

fn main() {
    let config = SuiteConfig::default();

    // The eigen-residual workload on its own, against its runtime target.
    let started = Instant::now();
    let mut eigen_worst: f64 = 0.0;
    for &t in &config.t_grid {
        for space in eigen_spaces() {
            for m in 0..=10 {
                let cert = eigen_certificate(t, m, 512, &space).expect("eigen certificate");
                eigen_worst = eigen_worst.max(cert.residual);
            }
        }
    }
    let eigen_time = started.elapsed();

    let started = Instant::now();
    let first = run_suite(&config).expect("suite runs");
    let suite_time = started.elapsed();
    let second = run_suite(&config).expect("suite runs");
    let json_a = render(&first.reports, Format::Json).expect("render");
    let json_b = render(&second.reports, Format::Json).expect("render");

    let mut all_ok = true;
    let mut lines = Vec::new();
    for criterion in CRITERIA {
        let (mut ok, mut notes) = evaluate(criterion, &first.reports);
        if criterion.number == 1 {
            let direct = eigen_worst <= 1e-10 && eigen_time.as_secs_f64() < 30.0;
            ok &= direct;
            let extra = format!(
                "max residual {eigen_worst:.3e} in {:.2}s",
                eigen_time.as_secs_f64()
            );
            notes = if notes.is_empty() {
                extra
            } else {
                format!("{notes}; {extra}")
            };
        }
        all_ok &= ok;
        lines.push(line(criterion.number, criterion.name, ok, &notes));
    }
    let identical = json_a == json_b;
    all_ok &= identical;
    lines.push(line(
        11,
        "determinism of two seeded runs",
        identical,
        &format!("{} bytes", json_a.len()),
    ));

    let others: Vec<&CheckReport> = first
        .reports
        .iter()
        .filter(|r| r.status == Status::Fail)
        .filter(|r| {
            !CRITERIA
                .iter()
                .any(|c| c.claims.iter().any(|(id, _)| *id == r.claim_id))
        })
        .collect();
    all_ok &= others.is_empty();
    lines.push(format!(
        "[{}] supporting checks: oracle, axioms, embeddings ({} failing)",
        if others.is_empty() { "PASS" } else { "FAIL" },
        others.len()
    ));

    println!(
        "suite: {} reports in {:.2}s",
        first.reports.len(),
        suite_time.as_secs_f64()
    );
    for l in &lines {
        println!("{l}");
    }
    if all_ok {
        println!("acceptance: all criteria pass");
    } else {
        println!("acceptance: FAILED");
        std::process::exit(1);
    }
}
