use heiscurve::braid::{nielsen_maps, sigma1, sigma2};
use heiscurve::characters::{character_value, irrep_matrix, labels};
use heiscurve::cyclotomic::CycScalar;
use heiscurve::groupring::{sigma3_star, RingElem};
use heiscurve::heisenberg::{project_word, HeisElement};
use heiscurve::linalg::{exact_rank, rank_mod_p, Matrix};
use heiscurve::schreier::build_system;
use heiscurve::smith::smith_form_int;
use heiscurve::words::f2::{a, b, t};
use heiscurve::words::FreeWord;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn word() -> impl Strategy<Value = FreeWord> {
    prop::collection::vec((0usize..2, prop::sample::select(vec![-2i64, -1, 1, 2])), 0..7)
        .prop_map(|s| FreeWord::from_syllables(2, s).unwrap())
}

fn heis(n: u32) -> impl Strategy<Value = HeisElement> {
    (-9i64..9, -9i64..9, -9i64..9).prop_map(move |(i, j, k)| HeisElement::new(n, i, j, k))
}

fn ring(n: u32) -> impl Strategy<Value = RingElem> {
    prop::collection::vec((heis(n), -3i64..4), 0..5)
        .prop_map(move |ts| RingElem::from_terms(n, ts.into_iter().map(|(g, c)| (g, BigInt::from(c)))).unwrap())
}

fn cyc(n: u32) -> impl Strategy<Value = CycScalar> {
    prop::collection::vec((-4i64..5, 1i64..4), n as usize)
        .prop_map(move |cs| CycScalar::from_poly(n, cs.into_iter().map(|(p, q)| BigRational::new(p.into(), q.into())).collect()))
}

fn int_matrix() -> impl Strategy<Value = Matrix<BigInt>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..4, r * c).prop_map(move |v| Matrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn free_group_axioms(x in word(), y in word(), z in word()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert!((&x * &x.invert()).is_identity());
        prop_assert_eq!(FreeWord::parse(2, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn commutator_of_a_product(x in word(), y in word(), z in word()) {
        let lhs = (&x * &y).commutator(&z).unwrap();
        let rhs = &y.commutator(&z).unwrap().conjugate(&x).unwrap() * &x.commutator(&z).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutator_with_a_power(x in word(), y in word(), j in 1i64..5) {
        let xy = x.commutator(&y).unwrap();
        let mut left = FreeWord::identity(2);
        let mut right = FreeWord::identity(2);
        for k in (0..j).rev() {
            left = &left * &xy.conjugate(&x.pow(k)).unwrap();
        }
        for k in 0..j {
            right = &right * &xy.conjugate(&y.pow(k)).unwrap();
        }
        prop_assert_eq!(x.pow(j).commutator(&y).unwrap(), left);
        prop_assert_eq!(x.commutator(&y.pow(j)).unwrap(), right);
    }

    #[test]
    fn endomorphisms_are_homomorphisms(u in word(), v in word(), ia in word(), ib in word()) {
        let images = [ia, ib];
        prop_assert_eq!(
            (&u * &v).apply_endomorphism(&images).unwrap(),
            &u.apply_endomorphism(&images).unwrap() * &v.apply_endomorphism(&images).unwrap()
        );
    }

    #[test]
    fn fox_product_rule(u in word(), v in word(), g in 0usize..2) {
        let lhs = (&u * &v).fox_derivative(g).unwrap();
        let rhs = u.fox_derivative(g).unwrap().add(&v.fox_derivative(g).unwrap().left_mul(&u));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn braid_inverses(w in word()) {
        let mut autos = nielsen_maps().to_vec();
        autos.extend([sigma1(), sigma2()]);
        for m in autos {
            prop_assert_eq!(m.apply_inverse(&m.apply(&w).unwrap()).unwrap(), w.clone());
            prop_assert_eq!(m.apply(&m.apply_inverse(&w).unwrap()).unwrap(), w.clone());
        }
        let s12 = sigma1().compose(&sigma2()).unwrap();
        prop_assert_eq!(s12.apply(&w).unwrap(), sigma1().apply(&sigma2().apply(&w).unwrap()).unwrap());
    }

    #[test]
    fn projection_is_a_homomorphism(u in word(), v in word(), n in 0u32..7) {
        prop_assert_eq!(project_word(&(&u * &v), n).unwrap(), project_word(&u, n).unwrap() * project_word(&v, n).unwrap());
    }

    #[test]
    fn reduction_is_a_homomorphism(g in heis(0), h in heis(0), n in 2u32..7) {
        prop_assert_eq!((g * h).reduce(n), g.reduce(n) * h.reduce(n));
        prop_assert!((g * g.inverse()).is_identity());
        prop_assert_eq!(HeisElement::from_index(n, g.reduce(n).index()), g.reduce(n));
    }

    #[test]
    fn tau_is_central(g in heis(0)) {
        let tau = HeisElement::tau(0);
        prop_assert_eq!(g * tau, tau * g);
        prop_assert_eq!(HeisElement::alpha(0) * HeisElement::beta(0), HeisElement::beta(0) * tau * HeisElement::alpha(0));
    }

    #[test]
    fn group_ring_axioms(x in ring(4), y in ring(4), z in ring(4)) {
        let xy = x.ring_mul(&y).unwrap();
        prop_assert_eq!(xy.ring_mul(&z).unwrap(), x.ring_mul(&y.ring_mul(&z).unwrap()).unwrap());
        prop_assert_eq!(x.ring_mul(&y.add(&z).unwrap()).unwrap(), xy.add(&x.ring_mul(&z).unwrap()).unwrap());
        prop_assert_eq!(xy.augmentation(), x.augmentation() * y.augmentation());
        prop_assert_eq!(xy.left_mul_matrix(), x.left_mul_matrix().mul_matrix(&y.left_mul_matrix()));
    }

    #[test]
    fn integral_group_ring_associates(x in ring(0), y in ring(0), z in ring(0), n in 2u32..6) {
        let lhs = x.ring_mul(&y).unwrap().ring_mul(&z).unwrap();
        prop_assert_eq!(lhs.clone(), x.ring_mul(&y.ring_mul(&z).unwrap()).unwrap());
        prop_assert_eq!(lhs.reduce(n), x.reduce(n).ring_mul(&y.reduce(n)).unwrap().ring_mul(&z.reduce(n)).unwrap());
    }

    #[test]
    fn sigma3_star_absorbs_alpha_beta(n in 2u32..9, m in -20i64..20) {
        let s = sigma3_star(n);
        let ab = (HeisElement::alpha(n) * HeisElement::beta(n)).pow(m);
        prop_assert_eq!(s.mul_element(&ab).unwrap(), s);
    }

    #[test]
    fn cyclotomic_field_axioms(n in prop::sample::select(vec![3u32, 4, 5, 6, 8]), x in cyc(8), y in cyc(8)) {
        let x = CycScalar::from_poly(n, x.coeffs().to_vec());
        let y = CycScalar::from_poly(n, y.coeffs().to_vec());
        if let Some(inv) = x.inverse() {
            prop_assert_eq!(x.clone() * inv, CycScalar::from_integer(1));
        }
        for t in (1..n as i64).filter(|t| num_integer::Integer::gcd(t, &(n as i64)) == 1) {
            prop_assert_eq!((x.clone() * y.clone()).galois(t), x.galois(t) * y.galois(t));
        }
        prop_assert_eq!((x.clone() + y.clone()).conj(), x.conj() + y.conj());
    }

    #[test]
    fn ranks_agree(m in int_matrix()) {
        let q = exact_rank(&m.map(|x| BigRational::from_integer(x.clone())));
        prop_assert_eq!(smith_form_int(&m, false).rank(), q);
        prop_assert_eq!(exact_rank(&m), q);
        prop_assert!(rank_mod_p::<3>(&m) <= q);
        prop_assert!(rank_mod_p::<1_000_003>(&m) <= q);
    }

    #[test]
    fn characters_are_class_functions(li in 0usize..22, g in heis(4), h in heis(4)) {
        let l = &labels(4)[li];
        prop_assert_eq!(irrep_matrix(l, &(g * h)), irrep_matrix(l, &g).mul_matrix(&irrep_matrix(l, &h)));
        prop_assert_eq!(character_value(l, &(g * h * g.inverse())), character_value(l, &h));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rewriting_respects_the_module_structure(x in word(), y in word()) {
        let n = 3;
        let sys = build_system(n).unwrap();
        let u = a().pow(3).conjugate(&x).unwrap();
        let v = b().commutator(&t()).unwrap().conjugate(&y).unwrap();
        let ru = sys.rewrite(&u).unwrap();
        let rv = sys.rewrite(&v).unwrap();
        let sum: Vec<i64> = ru.iter().zip(&rv).map(|(p, q)| p + q).collect();
        prop_assert_eq!(sys.rewrite(&(&u * &v)).unwrap(), sum);
        let hy = project_word(&y, n).unwrap();
        prop_assert_eq!(sys.rewrite(&v.conjugate(&x).unwrap()).unwrap(), sys.act(&project_word(&x, n).unwrap(), &rv));
        let hx = project_word(&x, n).unwrap();
        let m = sys.conjugation_matrix(&(hx * hy));
        prop_assert_eq!(m, sys.conjugation_matrix(&hx).mul_matrix(&sys.conjugation_matrix(&hy)));
    }
}
