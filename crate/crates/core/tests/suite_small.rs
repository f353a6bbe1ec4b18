use cesaro_core::report::{emit, parse_json, render, CSV_HEADER};
use cesaro_core::spectral::certificates_csv;
use cesaro_core::{run_suite, Error, Format, Status, SuiteConfig};

fn small() -> SuiteConfig {
    SuiteConfig::from_json(
        r#"{
            "t_grid": [0, 0.5],
            "p_grid": [2],
            "N": 96,
            "M_grid": [0, 3, 10],
            "budget": 200,
            "nondensity_bounds": [0.5, 1]
        }"#,
    )
    .unwrap()
}

#[test]
fn small_suite_passes_and_is_deterministic() {
    let config = small();
    let a = run_suite(&config).unwrap();
    let b = run_suite(&config).unwrap();
    let failing: Vec<_> = a
        .reports
        .iter()
        .filter(|r| r.status == Status::Fail)
        .collect();
    assert!(failing.is_empty(), "{failing:#?}");
    assert_eq!(
        render(&a.reports, Format::Json).unwrap(),
        render(&b.reports, Format::Json).unwrap()
    );
    assert_eq!(a.certificates.len(), config.resolved_spaces().len() * 2);
    assert!(a.certificates.iter().all(|c| c.is_consistent(1e-9)));
}

#[test]
fn seed_changes_search_reports_only() {
    let mut config = small();
    let a = run_suite(&config).unwrap();
    config.seed = 7;
    let b = run_suite(&config).unwrap();
    assert_eq!(a.reports.len(), b.reports.len());
    for (x, y) in a.reports.iter().zip(&b.reports) {
        assert_eq!(x.claim_id, y.claim_id);
    }
}

#[test]
fn invalid_configs_are_config_errors() {
    for text in [
        r#"{"t_grid": [1.0]}"#,
        r#"{"spaces": []}"#,
        r#"{"t_grid": []}"#,
        r#"{"budget": 0}"#,
        r#"{"tolerances": {"residual_tol": -1}}"#,
        "not json",
    ] {
        assert!(
            matches!(SuiteConfig::from_json(text), Err(Error::Config { .. })),
            "{text}"
        );
    }
}

#[test]
fn emission_formats() {
    let outcome = run_suite(&small()).unwrap();
    let reports = &outcome.reports[..20];

    let md = render(reports, Format::Markdown).unwrap();
    let rows = md.lines().filter(|l| l.starts_with('|')).count();
    assert_eq!(rows, reports.len() + 2);

    let csv = render(reports, Format::Csv).unwrap();
    assert_eq!(csv.lines().next().unwrap(), CSV_HEADER.join(","));
    assert_eq!(csv.lines().count(), reports.len() + 1);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("reports.json");
    emit(reports, Format::Json, Some(&path)).unwrap();
    let back = parse_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back, reports);

    let table = certificates_csv(&outcome.certificates).unwrap();
    assert_eq!(
        table.lines().next().unwrap(),
        "space,op,t,p,q,lower,upper,witness_hash,seed"
    );
    assert_eq!(table.lines().count(), outcome.certificates.len() + 1);
}
