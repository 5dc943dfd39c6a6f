use gradet::oracles::{self, Property};
use gradet::random::{homogeneous_element, homogeneous_matrix, instance_rng, same_parity_degrees};
use gradet::{io, presets, AlgebraElement, CycloScalar, GradedAlgebra, Permutation};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn scalar(order: u32) -> impl Strategy<Value = CycloScalar> {
    prop::collection::vec((-6i64..=6, 1i64..=4), order as usize).prop_map(move |terms| {
        let poly: Vec<BigRational> = terms.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect();
        CycloScalar::from_poly(order, &poly)
    })
}

fn order() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12])
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(Permutation::new)
}

fn algebra_name() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["quaternions", "clifford:1,1", "clifford:2,1", "grassmann:3", "dual_numbers:2", "clock_shift:3"])
}

fn random_element(alg: &GradedAlgebra, seed: u64, tag: &str) -> (AlgebraElement, gradet::GroupElement) {
    let mut rng = instance_rng(seed, tag, 0);
    let g = alg.support().choose(&mut rng).unwrap().clone();
    (homogeneous_element(alg, &g, 0.8, &mut rng), g)
}

fn holds(alg: &GradedAlgebra, name: &str, f: Property, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = instance_rng(seed, name, 0);
    f(alg, &mut rng).map_err(|e| TestCaseError::fail(format!("{name}: expected {} got {}", e.expected, e.got)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scalar_field_laws((a, b, c) in order().prop_flat_map(|n| (scalar(n), scalar(n), scalar(n)))) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn scalar_text_round_trip(a in order().prop_flat_map(scalar)) {
        let text = a.to_text(a.order()).unwrap();
        prop_assert_eq!(CycloScalar::parse(&text, a.order()).unwrap(), a);
    }

    #[test]
    fn roots_of_unity(n in order(), k in -20i64..20) {
        let z = CycloScalar::cyclo(k, n);
        prop_assert!(z.pow(n as i64).unwrap().is_one());
        prop_assert!((&z * &CycloScalar::cyclo(-k, n)).is_one());
        prop_assert_eq!(z.conj(), CycloScalar::cyclo(-k, n));
    }

    #[test]
    fn permutation_group_laws(p in permutation(5), q in permutation(5)) {
        prop_assert_eq!(p.compose(&q).sign(), p.sign() * q.sign());
        prop_assert_eq!(p.compose(&p.inverse()), Permutation::identity(5));
        let cycles: Vec<Vec<usize>> = p.cycles().into_iter().map(|c| c.into_iter().map(|i| i + 1).collect()).collect();
        let refs: Vec<&[usize]> = cycles.iter().map(Vec::as_slice).collect();
        prop_assert_eq!(Permutation::from_cycles(5, &refs), p);
    }

    #[test]
    fn products_are_graded_commutative(name in algebra_name(), seed in any::<u64>()) {
        let alg = presets::preset(name).unwrap();
        let (a, ga) = random_element(&alg, seed, "a");
        let (b, gb) = random_element(&alg, seed, "b");
        let (c, _) = random_element(&alg, seed, "c");
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, (&b * &a).scale(&alg.lambda().value(&ga, &gb)));
    }

    #[test]
    fn element_json_round_trip(name in algebra_name(), seed in any::<u64>()) {
        let alg = presets::preset(name).unwrap();
        let (a, _) = random_element(&alg, seed, "a");
        let text = io::element_to_json(&a).to_string();
        prop_assert_eq!(io::element_from_json(&text, &alg, "e").unwrap(), a);
    }

    #[test]
    fn matrix_json_round_trip(name in algebra_name(), seed in any::<u64>(), n in 1usize..4) {
        let alg = presets::preset(name).unwrap();
        let mut rng = instance_rng(seed, "m", 0);
        let nu = same_parity_degrees(&alg, n, &mut rng);
        let x = alg.support().choose(&mut rng).unwrap().clone();
        let m = homogeneous_matrix(&alg, &nu, &x, 0.5, &mut rng);
        let text = io::matrix_to_json(&m).to_string();
        prop_assert_eq!(io::matrix_from_json(&text, &alg, None, "m").unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn gdet0_is_multiplicative(name in prop::sample::select(vec!["quaternions", "clifford:1,1", "dual_numbers:2"]), seed in any::<u64>()) {
        holds(&presets::preset(name).unwrap(), "mult", oracles::check_gdet0_multiplicative, seed)?;
    }

    #[test]
    fn gber0_is_multiplicative(name in prop::sample::select(vec!["grassmann:2", "grassmann:3", "dual_numbers:2"]), seed in any::<u64>()) {
        holds(&presets::preset(name).unwrap(), "gber", oracles::check_gber0_multiplicative, seed)?;
    }

    #[test]
    fn trace_laws(name in algebra_name(), seed in any::<u64>()) {
        holds(&presets::preset(name).unwrap(), "trace", oracles::check_trace_laws, seed)?;
    }

    #[test]
    fn crossed_route_agrees(name in prop::sample::select(vec!["quaternions", "clifford:0,2", "clifford:1,2", "clock_shift:3"]), seed in any::<u64>()) {
        holds(&presets::preset(name).unwrap(), "crossed", oracles::check_crossed_route, seed)?;
    }
}
