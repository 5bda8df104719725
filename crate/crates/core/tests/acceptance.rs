use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use heiscurve::alexander::{betti_from_table, flatten, homology_multiplicities, q_matrix, rank_z, DEFAULT_SNF_BUDGET};
use heiscurve::braid::{
    braid_action_report, braid_formula_checks, burau, burau_report, conjugate_cover_test, homology_action,
    is_characteristic, sigma1, sigma2, BraidGen, BurauMatrix,
};
use heiscurve::characters::{
    character, character_value, inner_product, irrep_matrix, labels, sigma_contains, sigma_module_decomposition,
    sigma_multiplicity_by_rank, CharLabel, Sigma,
};
use heiscurve::cyclotomic::CycScalar;
use heiscurve::geometry::{genus, riemann_hurwitz_check, CoverProfile};
use heiscurve::groupring::RingElem;
use heiscurve::heisenberg::{conjugacy_classes, HeisElement};
use heiscurve::homology::{homology_integral, HomologyQuotient};
use heiscurve::linalg::determinant;
use heiscurve::schreier::{build_system, decomposition_identities, verify_two_step, IdentityCheck};
use heiscurve::Error;
use num_bigint::BigInt;
use num_traits::{One, Signed};

type Outcome = Result<String, String>;
type Criterion = (u32, u64, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn criterion_1() -> Outcome {
    ensure(genus(3) == 1, || format!("genus(3) = {}", genus(3)))?;
    for n in 2..=50 {
        ensure(riemann_hurwitz_check(n), || format!("Riemann-Hurwitz fails at n = {n}"))?;
        let p = CoverProfile::new(n);
        let nn = (n * n) as u64;
        let m = if n % 2 == 0 { 5 * nn / 2 } else { 3 * nn };
        ensure(p.euler_identity_holds() && p.branch_class_count == m, || format!("profile invariants fail at n = {n}"))?;
    }
    Ok("genus(3) = 1; Riemann-Hurwitz agrees for 2 <= n <= 50".into())
}

fn criterion_2() -> Outcome {
    for n in 2..=5u32 {
        let sys = build_system(n).map_err(|e| e.to_string())?;
        let nn = n as usize;
        ensure(sys.rank() == nn.pow(3) + 1, || format!("n = {n}: rank {}", sys.rank()))?;
        let r = verify_two_step(&sys).map_err(|e| e.to_string())?;
        let want = [nn * nn, nn * nn, (nn - 1).pow(2), (nn - 1).pow(3) - (nn - 1)];
        ensure(r.sizes == want && r.all_in_subgroup, || format!("n = {n}: sizes {:?}, expected {want:?}", r.sizes))?;
    }
    Ok("n^3 + 1 generators and two-step sizes for n = 2..5".into())
}

fn holds(checks: &[IdentityCheck], name: &str) -> Result<bool, String> {
    checks.iter().find(|c| c.name == name).map(|c| c.holds).ok_or_else(|| format!("missing identity {name}"))
}

fn criterion_3() -> Outcome {
    for n in 3..=5u32 {
        let sys = build_system(n).map_err(|e| e.to_string())?;
        let checks = decomposition_identities(&sys).map_err(|e| e.to_string())?;
        let last = if n % 2 == 1 { "(ab)^n, odd n" } else { "(ab)^n T^(-n/2), even n, coefficient n/2" };
        for name in ["T^n", "T^-n", "[a^i b^j, T]", last] {
            ensure(holds(&checks, name)?, || format!("n = {n}: {name} fails"))?;
        }
        if n % 2 == 0 {
            let printed = holds(&checks, "(ab)^n T^(-n/2), even n, printed coefficient n/2-1")?;
            ensure(!printed, || "printed even coefficient unexpectedly holds".into())?;
        }
    }
    Ok("five decompositions exact for n = 3, 4, 5 (even case with T^-n coefficient n/2; the printed n/2 - 1 is refuted)".into())
}

fn criterion_4() -> Outcome {
    for n in 3..=5u32 {
        let sys = build_system(n).map_err(|e| e.to_string())?;
        let (rank, torsion) = homology_integral(&sys);
        let two_g = 2 * genus(n);
        ensure(rank as i64 == two_g && torsion.is_empty(), || format!("n = {n}: rank {rank}, torsion {torsion:?}"))?;
        let q = HomologyQuotient::new(&sys);
        ensure(q.sublattice_rank() as i64 == (n as i64).pow(3) + 1 - two_g, || format!("n = {n}: Gamma rank {}", q.sublattice_rank()))?;
        if n == 3 {
            ensure(rank == 2, || "n = 3 is not Z^2".into())?;
        }
    }
    Ok("H_1 = Z^(2g), no torsion, for n = 3, 4, 5".into())
}

fn criterion_5() -> Outcome {
    let mut out = Vec::new();
    for n in 2..=5usize {
        let (rank, _) = rank_z(&flatten(&q_matrix(n as u32)), DEFAULT_SNF_BUDGET).map_err(|e| e.to_string())?;
        let want = if n % 2 == 1 { n.pow(3) + 3 * n * n - 1 } else { n.pow(3) + 5 * n * n / 2 - 1 };
        ensure(rank == want, || format!("n = {n}: rank {rank}, expected {want}"))?;
        out.push(format!("{n}: {rank}"));
    }
    Ok(format!("rank_Z Q = {}", out.join(", ")))
}

fn criterion_6() -> Outcome {
    for n in 3..=8u32 {
        let rows = homology_multiplicities(n, true).map_err(|e| e.to_string())?;
        ensure(betti_from_table(&rows) == 2 * genus(n), || format!("n = {n}: sum {}", betti_from_table(&rows)))?;
        ensure(rows.iter().all(|r| r.h >= 0), || format!("n = {n}: negative multiplicity"))?;
        if n == 3 {
            let nz: Vec<_> = rows.iter().filter(|r| r.h != 0).map(|r| (r.i, r.j, r.s, r.h)).collect();
            ensure(nz == vec![(1, 0, 1, 1), (2, 0, 2, 1)], || format!("n = 3 table {nz:?}"))?;
        }
    }
    Ok("closed form = block-rank oracle for every label, 3 <= n <= 8; n = 3 gives h_101 = h_202 = 1".into())
}

fn criterion_7() -> Outcome {
    for n in 2..=8u32 {
        let classes = conjugacy_classes(n).map_err(|e| e.to_string())?.len() as u64;
        let by_gcd: u64 = (0..n as u64).map(|j| gcd(n as u64, j).pow(2)).sum();
        let count = labels(n).len() as u64;
        ensure(count == classes && count == by_gcd, || format!("n = {n}: {count} labels, {classes} classes, {by_gcd}"))?;
    }
    for n in 2..=6u32 {
        let ls = labels(n);
        let chars: Vec<_> = ls.iter().map(character).collect();
        for (x, cx) in chars.iter().enumerate() {
            for (y, cy) in chars.iter().enumerate() {
                ensure(inner_product(n, cx, cy) == CycScalar::from_integer(i64::from(x == y)), || {
                    format!("n = {n}: <{}, {}> wrong", ls[x], ls[y])
                })?;
            }
        }
        let all = HeisElement::all(n);
        let classes = conjugacy_classes(n).map_err(|e| e.to_string())?;
        let order = (n as i64).pow(3);
        for cg in &classes {
            for ch in &classes {
                let mut sum = CycScalar::from_integer(0);
                for l in &ls {
                    sum = sum + character_value(l, &cg[0]) * character_value(l, &ch[0]).conj();
                }
                let want = if std::ptr::eq(cg, ch) { order / cg.len() as i64 } else { 0 };
                ensure(sum == CycScalar::from_integer(want), || format!("n = {n}: column orthogonality fails"))?;
            }
        }
        for l in &ls {
            for g in &all {
                ensure(irrep_matrix(l, g).trace() == character_value(l, g), || format!("n = {n}: trace fails at {l}, {g}"))?;
            }
        }
    }
    Ok("labels = classes = sum gcd(n,j)^2 for n <= 8; orthogonality and traces exact for n <= 6".into())
}

fn criterion_8() -> Outcome {
    let mut j_prime_hits = 0;
    for n in 2..=6u32 {
        for which in Sigma::ALL {
            let listed = sigma_module_decomposition(n, which);
            for l in labels(n) {
                let by_rank = sigma_multiplicity_by_rank(which, &l);
                ensure(by_rank == usize::from(listed.contains(&l)), || format!("n = {n}, {which:?}, {l}: rank {by_rank}"))?;
                if which == Sigma::ThreeStar && n % 2 == 0 && l.j % 2 == 0 && (n / l.d()) % 2 == 0 && l.j != 0 {
                    j_prime_hits += usize::from(sigma_contains(which, &l));
                }
            }
        }
    }
    ensure(j_prime_hits > 0, || "even-n j' branch never exercised".into())?;
    let example = CharLabel::new(4, 1, 2, 0).map_err(|e| e.to_string())?;
    ensure(sigma_contains(Sigma::ThreeStar, &example), || "chi_(1,2,0) not in Sigma3* at n = 4".into())?;
    Ok(format!("closed form = rank of rho(Sigma) for n <= 6; {j_prime_hits} labels on the j' branch"))
}

fn criterion_9() -> Outcome {
    for n in 2..=8 {
        let (ch, _) = is_characteristic(n).map_err(|e| e.to_string())?;
        ensure(ch == (n % 2 == 1), || format!("is_characteristic({n}) = {ch}"))?;
    }
    let cover = conjugate_cover_test(4).map_err(|e| e.to_string())?;
    ensure(cover == (8, 4, false), || format!("conjugate_cover_test(4) = {cover:?}"))?;
    for n in 3..=5u32 {
        let sys = build_system(n).map_err(|e| e.to_string())?;
        let checks = braid_formula_checks(&sys).map_err(|e| e.to_string())?;
        for c in checks.iter().filter(|c| !c.name.contains("printed")) {
            ensure(c.holds, || format!("n = {n}: {} fails", c.name))?;
        }
        if n % 2 == 1 {
            let r = braid_action_report(&sys).map_err(|e| e.to_string())?;
            ensure(r.unimodular && r.braid_relation && r.composition_is_product, || format!("n = {n}: {r:?}"))?;
        } else {
            let q = HomologyQuotient::new(&sys);
            let m1 = homology_action(&sys, &q, &sigma1()).map_err(|e| e.to_string())?;
            ensure(determinant(&m1).abs().is_one(), || "n = 4: sigma1 not unimodular".into())?;
            ensure(matches!(homology_action(&sys, &q, &sigma2()), Err(Error::Domain(_))), || {
                "n = 4: sigma2 unexpectedly acts on H_1".into()
            })?;
        }
    }
    Ok("characteristic iff odd; (8, 4, false); four formulas exact for n = 3, 4, 5; unimodular with braid relation for n = 3, 5; n = 4: sigma1 unimodular, sigma2 leaves R_Heis so has no action".into())
}

fn elem(i: i64, j: i64, k: i64, c: i64) -> (HeisElement, BigInt) {
    (HeisElement::new(0, i, j, k), BigInt::from(c))
}

fn entry(terms: Vec<(HeisElement, BigInt)>) -> RingElem {
    RingElem::from_terms(0, terms).expect("modulus 0")
}

fn criterion_10() -> Outcome {
    // a t^-1 = (1,0,-1), a^-1 t^-1 = (-1,0,-1), a^-1 b^-1 a^-1 t^-1 = (-2,-1,0),
    // b^-1 t^-1 = (0,-1,-1), a^-1 b^-1 t^-1 = (-1,-1,0), (a^-1 b^-1)^2 t^-1 = (-2,-2,2)
    let s1 = BurauMatrix {
        entries: [[entry(vec![]), entry(vec![elem(1, 0, -1, -1)])], [entry(vec![elem(1, 0, -1, -1)]), entry(vec![])]],
    };
    let s2 = BurauMatrix {
        entries: [
            [entry(vec![elem(-1, 0, -1, -1)]), entry(vec![elem(-2, -1, 0, -1)])],
            [entry(vec![elem(0, -1, -1, 1), elem(-1, -1, 0, -1)]), entry(vec![elem(-2, -2, 2, 1)])],
        ],
    };
    ensure(burau(BraidGen::Sigma1) == s1, || "rho(sigma1) differs from the display".into())?;
    ensure(burau(BraidGen::Sigma2) == s2, || "rho(sigma2) differs from the display".into())?;
    let first = serde_json::to_string_pretty(&burau_report().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let second = serde_json::to_string_pretty(&burau_report().map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    ensure(first == second, || "Burau report is not deterministic".into())?;
    let golden = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../cli/tests/golden/burau.json")).map_err(|e| e.to_string())?;
    ensure(golden.trim_end() == first, || "Burau report differs from the golden file".into())?;
    let r = burau_report().map_err(|e| e.to_string())?;
    Ok(format!(
        "matrices match entrywise; verdict recorded: plain products {}, opposite ring {}, transpose {}, twisted {}, twisted on classes at n = 3 {} (with the sigma2 sign from the action formulas: {})",
        r.verdict_displayed.homomorphism,
        r.verdict_displayed.opposite_ring,
        r.verdict_displayed.transpose,
        r.verdict_displayed.twisted,
        r.verdict_displayed.twisted_on_classes_n3,
        r.verdict_from_formulas.twisted_on_classes_n3
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, 1, criterion_1),
        (2, 10, criterion_2),
        (3, 60, criterion_3),
        (4, 120, criterion_4),
        (5, 120, criterion_5),
        (6, 60, criterion_6),
        (7, 60, criterion_7),
        (8, 30, criterion_8),
        (9, 60, criterion_9),
        (10, 60, criterion_10),
    ];
    let mut failed = 0;
    for (id, limit, run) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(d) if elapsed > Duration::from_secs(limit) => Err(format!("{d}; took longer than {limit} s")),
            o => o,
        };
        match outcome {
            Ok(d) => println!("criterion {id}: PASS ({:.2} s) {d}", elapsed.as_secs_f64()),
            Err(d) => {
                failed += 1;
                println!("criterion {id}: FAIL ({:.2} s) {d}", elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
