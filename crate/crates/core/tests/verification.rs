use laplext::kernels::{OscillatorParam, Prefactor};
use laplext::oracles::{mehler_limit_gap, spectral_poisson_kernel, SpectralConfig};
use laplext::suites::{run_suite, Suite, SuiteOptions};
use laplext::Error;

#[test]
fn every_suite_passes_with_the_corrected_kernel() {
    let reports = run_suite(Suite::All, &SuiteOptions::default());
    assert!(reports.len() > 400);
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.to_string()).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn printed_prefactor_is_caught() {
    let opts = SuiteOptions {
        prefactor: Prefactor::AsPrinted,
        ..SuiteOptions::default()
    };
    let reports = run_suite(Suite::Invariants, &opts);
    assert!(reports.iter().any(|r| !r.passed && r.check_name.contains("a-to-zero")));
    let reports = run_suite(Suite::Spectral, &opts);
    assert!(reports.iter().any(|r| !r.passed));
}

#[test]
fn tolerance_override_applies_to_every_check() {
    let opts = SuiteOptions {
        tolerance_override: Some(1e-30),
        ..SuiteOptions::default()
    };
    let reports = run_suite(Suite::Identities, &opts);
    assert!(reports.iter().all(|r| r.tolerance == 1e-30));
    assert!(reports.iter().any(|r| !r.passed));
}

#[test]
fn suite_names_round_trip() {
    for s in [Suite::Identities, Suite::Spectral, Suite::Residuals, Suite::Invariants, Suite::All] {
        assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
    }
    assert!("bogus".parse::<Suite>().is_err());
}

#[test]
fn mehler_kernel_tends_to_free_heat_kernel() {
    let study = mehler_limit_gap(0.5, 0.4, -0.3, &[1e-1, 1e-2, 1e-3]).unwrap();
    assert!(study.passed());
    assert!(study.gaps()[2] < 1e-3);
}

#[test]
fn truncation_order_too_low_is_reported() {
    let a = OscillatorParam::new(1.0).unwrap();
    let sc = SpectralConfig { n_max: 3, ..SpectralConfig::poisson(a) };
    assert!(matches!(
        spectral_poisson_kernel(0.5, 0.0, 0.0, &sc),
        Err(Error::InsufficientOrder { n_max: 3, .. })
    ));
}
