use kgroth::verify::{run, Suite, VerifyOptions};

fn opts(rows: usize, cols: usize) -> VerifyOptions {
    VerifyOptions { rows, cols, degree: 3, cutoff: 2, ..VerifyOptions::default() }
}

#[test]
fn fock_oracle_matches_determinants() {
    let r = run(Suite::FockOracle, &opts(2, 2)).unwrap();
    assert!(r.cases > 0);
    assert!(r.passed(), "{:?}", r.minimal_failure());
}

#[test]
fn every_suite_passes_on_a_small_box() {
    for s in Suite::ALL {
        let r = run(s, &opts(1, 2)).unwrap();
        assert!(r.passed(), "{}: {:?}", s.name(), r.minimal_failure());
    }
}
