use heiscurve::report::{report, verify, Caps, Kind, Status, Suite};

fn run_all(n: u32) -> heiscurve::report::VerificationReport {
    let r = verify(n, &Suite::ALL, &Caps::default(), true).unwrap();
    for c in r.failures() {
        eprintln!("FAIL {} {}: {}", c.suite, c.name, c.detail);
    }
    r
}

#[test]
fn all_suites_pass_for_small_n() {
    for n in 3..=5 {
        let r = run_all(n);
        assert!(r.passed(), "n={n}");
        assert_eq!(r.suites.len(), 6);
        assert_eq!(r.timings.len(), 6);
    }
}

#[test]
fn n2_passes_with_skips() {
    let r = run_all(2);
    assert!(r.passed());
    assert!(r.count(Status::Skipped) > 0);
}

#[test]
fn large_n_skips_smith_work() {
    let caps = Caps { max_snf_n: 3, max_block_n: 6 };
    let r = verify(6, &[Suite::Schreier, Suite::Alexander], &caps, true).unwrap();
    assert!(r.passed());
    assert!(r.checks.iter().any(|c| c.suite == "schreier" && c.status == Status::Skipped));
    assert!(r.checks.iter().any(|c| c.name.contains("block-rank oracle") && c.status == Status::Pass));
    assert!(verify(7, &Suite::ALL, &caps, false).is_err());
    assert!(verify(1, &Suite::ALL, &caps, false).is_err());
}

#[test]
fn errata_are_recorded() {
    let r = verify(4, &[Suite::Schreier, Suite::Braid], &Caps::default(), false).unwrap();
    let errata: Vec<_> = r.checks.iter().filter(|c| c.kind == Kind::Erratum).collect();
    assert!(errata.len() >= 4);
    assert!(errata.iter().all(|c| c.status == Status::Pass));
    let cover = r.checks.iter().find(|c| c.name == "conjugate cover test").unwrap();
    assert_eq!(cover.detail, "(8, 4, false)");
}

#[test]
fn report_values_and_determinism() {
    let caps = Caps::default();
    let r3 = report(3, &caps, false).unwrap();
    let nonzero: Vec<_> = r3.h_table.iter().filter(|r| r.h != 0).map(|r| (r.i, r.j, r.s)).collect();
    assert_eq!(nonzero, vec![(1, 0, 1), (2, 0, 2)]);
    assert!(r3.passed());
    let r4 = report(4, &caps, true).unwrap();
    assert_eq!((r4.genus, r4.ramified), (13, true));
    assert_eq!(r4.rank_q + r4.rank_a, 3 * 64);
    assert_eq!(serde_json::to_string(&r4).unwrap(), serde_json::to_string(&report(4, &caps, false).unwrap()).unwrap());
    let r7 = report(7, &caps, true).unwrap();
    assert_eq!(r7.schreier_rank, None);
    assert!(r7.passed());
}
