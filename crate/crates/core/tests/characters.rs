use heiscurve::characters::{
    character, character_value, class_representatives, inner_product, irrep_matrices, label_count, labels,
    permutation_character, regular_rep_decomposition, sigma_contains, sigma_module_decomposition,
    sigma_multiplicity_by_rank, CharLabel, Sigma,
};
use heiscurve::cyclotomic::CycScalar;
use heiscurve::heisenberg::{conjugacy_classes, HeisElement};
use num_traits::Zero;

#[test]
fn labels_count_conjugacy_classes() {
    for n in 2..=8 {
        let classes = conjugacy_classes(n).unwrap();
        assert_eq!(labels(n).len(), classes.len(), "n={n}");
        assert_eq!(label_count(n), classes.len() as u64);
        assert_eq!(class_representatives(n).len(), classes.len());
    }
}

#[test]
fn characters_are_class_functions() {
    for n in [4, 6] {
        let classes = conjugacy_classes(n).unwrap();
        for l in labels(n) {
            for class in &classes {
                let v = character_value(&l, &class[0]);
                assert!(class.iter().all(|g| character_value(&l, g) == v), "{l} n={n}");
            }
        }
    }
}

#[test]
fn traces_match_characters() {
    for n in 2..=6 {
        let all = HeisElement::all(n);
        for l in labels(n) {
            let mats = irrep_matrices(&l);
            for g in &all {
                assert_eq!(mats[g.index()].trace(), character_value(&l, g), "{l} n={n} g={g}");
            }
        }
    }
}

#[test]
fn representations_are_homomorphisms() {
    for n in [2, 4, 6] {
        let all = HeisElement::all(n);
        let gens = [HeisElement::alpha(n), HeisElement::beta(n)];
        for l in labels(n) {
            let mats = irrep_matrices(&l);
            for g in &all {
                for h in &gens {
                    assert_eq!(mats[g.index()].mul_matrix(&mats[h.index()]), mats[(*g * *h).index()]);
                }
            }
        }
    }
}

#[test]
fn row_orthogonality() {
    for n in 2..=6 {
        let chars: Vec<_> = labels(n).iter().map(character).collect();
        for (a, x) in chars.iter().enumerate() {
            for (b, y) in chars.iter().enumerate().skip(a) {
                assert_eq!(inner_product(n, x, y), CycScalar::from_integer(i64::from(a == b)), "n={n}");
            }
        }
    }
}

#[test]
fn column_orthogonality() {
    for n in 2..=6 {
        let reps = class_representatives(n);
        let classes = conjugacy_classes(n).unwrap();
        let order = (n as i64).pow(3);
        for g in &reps {
            let class_size = classes.iter().find(|c| c.contains(g)).unwrap().len() as i64;
            for h in &reps {
                let sum = labels(n).iter().fold(CycScalar::zero(), |acc, l| {
                    acc + character_value(l, g) * character_value(l, h).conj()
                });
                let expected = if g == h { order / class_size } else { 0 };
                assert_eq!(sum, CycScalar::from_integer(expected), "n={n} {g} {h}");
            }
        }
    }
}

#[test]
fn regular_representation() {
    let dec = regular_rep_decomposition(3);
    assert_eq!(dec.iter().filter(|(_, m)| *m == 1).count(), 9);
    assert_eq!(dec.iter().filter(|(_, m)| *m == 3).count(), 2);
    for n in 2..=8 {
        let total: u32 = regular_rep_decomposition(n).iter().map(|(l, m)| l.degree() * m).sum();
        assert_eq!(total, n.pow(3));
    }
}

#[test]
fn sigma_modules_by_rank_and_by_frobenius() {
    for n in 2..=6 {
        for which in Sigma::ALL {
            let perm = permutation_character(&which.generator(n));
            let mut dim = 0;
            for l in labels(n) {
                let expected = usize::from(sigma_contains(which, &l));
                assert_eq!(sigma_multiplicity_by_rank(which, &l), expected, "n={n} {which:?} {l}");
                assert_eq!(inner_product(n, &character(&l), &perm), CycScalar::from_integer(expected as i64));
                dim += expected as u32 * l.degree();
            }
            let full = if which == Sigma::ThreeStar && n % 2 == 0 { n * n / 2 } else { n * n };
            assert_eq!(dim, full, "n={n} {which:?}");
        }
    }
}

#[test]
fn sigma_examples() {
    let s1 = sigma_module_decomposition(3, Sigma::One);
    assert!(s1.iter().all(|l| l.i == 0));
    assert_eq!(s1.iter().map(CharLabel::degree).sum::<u32>(), 9);
    let s2 = sigma_module_decomposition(3, Sigma::Two);
    assert!(s2.iter().all(|l| l.s == 0));
    // even branch with j' = -j/2: n = 4, j = 2 has d = 2 and n/d = 2
    let s3 = sigma_module_decomposition(4, Sigma::ThreeStar);
    assert!(s3.contains(&CharLabel::new(4, 1, 2, 0).unwrap()));
    assert!(!s3.contains(&CharLabel::new(4, 0, 2, 0).unwrap()));
    assert!(s3.iter().all(|l| l.j % 2 == 0));
}

#[test]
fn galois_conjugation_permutes_labels() {
    for n in [3, 4, 5, 6] {
        for t in (1..n as i64).filter(|t| num_integer::Integer::gcd(t, &(n as i64)) == 1) {
            for l in labels(n) {
                let image: Vec<_> = character(&l).iter().map(|v| v.galois(t)).collect();
                assert_eq!(image, character(&l.galois(t)), "n={n} t={t} {l}");
            }
        }
    }
}
