use heiscurve::heisenberg::{project_word, HeisElement};
use heiscurve::linalg::determinant;
use heiscurve::schreier::{
    build_system, coordinate_matrix, decomposition_identities, explicit_basis, verify_two_step,
};
use heiscurve::words::f2::{a, b, t};
use num_bigint::BigInt;

fn holds(checks: &[heiscurve::schreier::IdentityCheck], name: &str) -> bool {
    checks
        .iter()
        .find(|c| c.name == name)
        .unwrap_or_else(|| panic!("no check named {name}"))
        .holds
}

#[test]
fn decompositions_hold_exactly() {
    for n in 3..=5 {
        let sys = build_system(n).unwrap();
        let checks = decomposition_identities(&sys).unwrap();
        assert!(holds(&checks, "T^n"), "n={n}");
        assert!(holds(&checks, "T^-n"), "n={n}");
        assert!(holds(&checks, "[a^i b^j, T]"), "n={n}");
        if n % 2 == 1 {
            assert!(holds(&checks, "(ab)^n, odd n"), "n={n}");
        } else {
            assert!(holds(&checks, "(ab)^n T^(-n/2), even n, coefficient n/2"));
            assert!(holds(&checks, "tau^(n/2) symmetrization = (ab)^(2n) + T^-n"));
        }
    }
}

#[test]
fn printed_even_coefficients_are_refuted() {
    for n in [4, 6] {
        let sys = build_system(n).unwrap();
        let checks = decomposition_identities(&sys).unwrap();
        assert!(!holds(&checks, "(ab)^n T^(-n/2), even n, printed coefficient n/2-1"));
        assert!(!holds(&checks, "tau^(n/2) symmetrization = (ab)^(2n) as printed"));
        assert!(holds(&checks, "(ab)^n T^(-n/2), even n, coefficient n/2"));
    }
}

#[test]
fn explicit_basis_is_unimodular() {
    for n in [3, 4] {
        let sys = build_system(n).unwrap();
        let det = determinant(&coordinate_matrix(&sys, &explicit_basis(n).unwrap()).unwrap());
        assert!(det == BigInt::from(1) || det == BigInt::from(-1), "n={n} det={det}");
    }
}

#[test]
fn two_step_sets_match_the_cardinalities() {
    for n in 2..=5 {
        let sys = build_system(n).unwrap();
        let report = verify_two_step(&sys).unwrap();
        assert_eq!(report.sizes, report.expected_sizes, "n={n}");
        assert_eq!(report.total, (n as usize).pow(3) + 1);
        assert!(report.all_in_subgroup);
        assert!(report.unimodular, "n={n}");
    }
}

#[test]
fn tau_shifts_conjugates_of_a_t() {
    let n = 4;
    let sys = build_system(n).unwrap();
    let at = a().commutator(&t()).unwrap();
    let tau = HeisElement::tau(n);
    for k in 0..n as i64 {
        let v = sys.rewrite(&at.conjugate(&t().pow(k)).unwrap()).unwrap();
        let w = sys.rewrite(&at.conjugate(&t().pow(k + 1)).unwrap()).unwrap();
        assert_eq!(sys.act(&tau, &v), w);
    }
}

#[test]
fn conjugation_through_any_word_matches_the_action() {
    let n = 3;
    let sys = build_system(n).unwrap();
    let bt = b().commutator(&t()).unwrap();
    for y in [a(), b().pow(-2), &a() * &b(), t().pow(2)] {
        let h = project_word(&y, n).unwrap();
        assert_eq!(
            sys.rewrite(&bt.conjugate(&y).unwrap()).unwrap(),
            sys.conjugate_class(&bt, &h).unwrap()
        );
    }
}
