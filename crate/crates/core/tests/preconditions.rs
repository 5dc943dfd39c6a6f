use gradet::{
    gber, gdet0, gdet0_leibniz, gdet_sigma, presets, run_property_sweeps, Error, GradedMatrix, Multiplier, Ordering,
    Permutation, SweepConfig,
};

fn quaternion_x(nu_second: &[i64]) -> GradedMatrix {
    let h = presets::quaternions();
    let g = h.group();
    GradedMatrix::square(&h, vec![g.zero(), g.el(nu_second)], vec![
        vec![h.elem(&[("1", 1)]), h.elem(&[("j", 1)])],
        vec![h.elem(&[("j", 1)]), h.elem(&[("1", 1)])],
    ])
    .unwrap()
}

#[test]
fn gdet0_needs_degree_zero() {
    let x = quaternion_x(&[0, 0, 0]);
    assert_eq!(gdet0(&x).unwrap_err(), Error::NotDegreeZero);
    assert_eq!(gdet0_leibniz(&x, None).unwrap_err(), Error::NotDegreeZero);
}

#[test]
fn gdet_sigma_rejects_non_ns_multiplier() {
    let h = presets::quaternions();
    let trivial = Multiplier::trivial(h.group());
    let x = quaternion_x(&[1, 0, 1]);
    assert_eq!(gdet_sigma(&x, &trivial).unwrap_err(), Error::NotNsMultiplier);
}

#[test]
fn gdet_sigma_rejects_odd_entries() {
    let a = presets::dual_numbers(1).unwrap();
    let g = a.group();
    let x = GradedMatrix::square(&a, vec![g.zero(), g.el(&[1])], vec![
        vec![a.elem(&[("1", 1)]), a.elem(&[("e1", 1)])],
        vec![a.elem(&[("e1", 1)]), a.elem(&[("1", 1)])],
    ])
    .unwrap();
    let sigma = a.canonical_multiplier().unwrap();
    assert_eq!(gdet_sigma(&x, &sigma).unwrap_err(), Error::OddEntries(0, 1));
    assert!(gber(&x, &sigma).is_ok());
}

#[test]
fn invalid_ordering_is_reported() {
    let x = quaternion_x(&[1, 0, 1]);
    let bad = |pi: &Permutation| Ordering { perm: pi.clone(), sequence: vec![0; pi.len()] };
    assert!(matches!(gdet0_leibniz(&x, Some(&bad)).unwrap_err(), Error::InvalidOrdering(_)));
}

#[test]
fn non_square_rejected() {
    let h = presets::quaternions();
    let g = h.group();
    let x = GradedMatrix::zeros(&h, vec![g.zero(); 2], vec![g.zero(); 3]);
    assert_eq!(gdet0(&x).unwrap_err(), Error::NotSquare);
}

#[test]
fn error_kinds() {
    assert_eq!(Error::NotParitySorted.code(), "NotParitySorted");
    assert_eq!(Error::NotParitySorted.kind(), gradet::ErrorKind::Precondition);
    assert_eq!(Error::Singular.kind(), gradet::ErrorKind::Math);
    assert_eq!(Error::Parse("f".into(), "m".into()).kind(), gradet::ErrorKind::Parse);
}

#[test]
fn sweeps_are_reproducible() {
    let config = SweepConfig { seed: 11, instances: 3, suite: "dual".into() };
    let a = run_property_sweeps(&config).unwrap();
    let b = run_property_sweeps(&config).unwrap();
    assert_eq!(a, b);
    assert!(a.iter().all(|r| r.passed()));
}
