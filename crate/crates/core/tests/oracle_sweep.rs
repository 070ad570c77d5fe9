use rkit::verify::{sweep, Suite, SweepConfig};

#[test]
fn formulas_match_exhaustive_search() {
    let cfg = SweepConfig {
        exhaustive_max_n: 3,
        random_n: 4,
        random_count: 500,
        seed: 2024,
        replay: true,
        ..Default::default()
    };
    let report = sweep(&Suite::ALL, &cfg).unwrap();
    print!("{}", report.csv());
    println!("elapsed {:.1?}", report.elapsed);
    for f in report.failures.iter().take(10) {
        println!("{f:?}");
    }
    assert!(report.all_passed(), "{} failures", report.failures.len());
    for (suite, s) in &report.stats {
        assert!(s.checked > 0, "{} checked nothing", suite.name());
    }
}
