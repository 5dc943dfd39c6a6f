//! One PASS/FAIL line per acceptance criterion. Every comparison is exact.

use std::process::ExitCode;
use std::time::Instant;

use gradet::berezinian::{berezinian_prefactor, gber, gber0, gber_via_super, parity_blocks, udl};
use gradet::oracles::*;
use gradet::{presets, AlgebraElement, GradedAlgebra, GradedMatrix, GroupElement, Multiplier};
use num_rational::BigRational;

type Outcome = Result<(), String>;

const SEED: u64 = 20240601;

fn q(n: i64, d: i64) -> gradet::CycloScalar {
    gradet::CycloScalar::rational(BigRational::new(n.into(), d.into()))
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn run_sweep(label: &str, alg: &GradedAlgebra, instances: usize, f: Property) -> Outcome {
    let report = sweep(label, SEED, instances, |rng| f(alg, rng));
    match report.failures.first() {
        None => Ok(()),
        Some(fail) => Err(format!(
            "{label}: {} of {instances} failed; first input {} expected {} got {}",
            report.failures.len(),
            fail.input,
            fail.expected,
            fail.got
        )),
    }
}

fn sweeps(presets_list: &[&str], props: &[(&str, Property)], instances: usize) -> Outcome {
    for name in presets_list {
        let alg = presets::preset(name).map_err(|e| e.to_string())?;
        for (p, f) in props {
            run_sweep(&format!("{name}/{p}"), &alg, instances, *f)?;
        }
    }
    Ok(())
}

fn quaternion_matrix(h: &GradedAlgebra, nu: Vec<GroupElement>, sign: i64) -> GradedMatrix {
    GradedMatrix::square(h, nu, vec![
        vec![h.elem(&[("1", 1)]), h.elem(&[("j", 1)])],
        vec![h.elem(&[("j", sign)]), h.elem(&[("1", 1)])],
    ])
    .unwrap()
}

fn criterion_1() -> Outcome {
    let h = presets::quaternions();
    let g = h.group();
    let jt = g.el(&[1, 0, 1]);
    let two = h.elem(&[("1", 2)]);
    let zero = AlgebraElement::zero(&h);
    let sigmas = h.ns_multipliers().map_err(|e| e.to_string())?;
    check(sigmas.len() == 8, || format!("expected 8 multipliers, found {}", sigmas.len()))?;
    let mut minus = 0;
    for sigma in &sigmas {
        let s_jj = sigma.value(&jt, &jt);
        let negative = s_jj == gradet::CycloScalar::from_int(-1);
        minus += negative as usize;
        for nu1 in g.elements() {
            let nu = vec![nu1.clone(), &nu1 + &jt];
            let x = gradet::gdet_sigma(&quaternion_matrix(&h, nu.clone(), 1), sigma).map_err(|e| e.to_string())?;
            check(x == two, || format!("X, nu={nu:?}: {x}"))?;
            let y = gradet::gdet_sigma(&quaternion_matrix(&h, nu.clone(), -1), sigma).map_err(|e| e.to_string())?;
            check(y == zero, || format!("Y, nu={nu:?}: {y}"))?;
        }
        let flat = vec![g.zero(), g.zero()];
        let x = gradet::gdet_sigma(&quaternion_matrix(&h, flat.clone(), 1), sigma).map_err(|e| e.to_string())?;
        let y = gradet::gdet_sigma(&quaternion_matrix(&h, flat, -1), sigma).map_err(|e| e.to_string())?;
        let (ex, ey) = if negative { (&zero, &two) } else { (&two, &zero) };
        check(&x == ex && &y == ey, || format!("nu=(0,0), sigma(j,j)={s_jj}: X {x}, Y {y}"))?;
    }
    check(minus == 4, || format!("{minus} multipliers with sigma(j,j) = -1"))?;
    let nu = vec![g.zero(), jt];
    let x = quaternion_matrix(&h, nu, 1);
    check(gradet::gdet0(&x).map_err(|e| e.to_string())? == two, || "gdet0".into())?;
    check(gradet::gdet0_leibniz(&x, None).map_err(|e| e.to_string())? == two, || "gdet0_leibniz".into())
}

fn criterion_2() -> Outcome {
    let h = presets::quaternions();
    let group = h.group().clone();
    let tables: [(Vec<Vec<i64>>, [[(i64, &str); 3]; 3]); 2] = [
        (
            vec![vec![0, 1, 1], vec![0, 0, 1], vec![0, 0, 0]],
            [[(1, "1"), (-1, "k"), (-1, "j")], [(-1, "k"), (1, "1"), (-1, "i")], [(-1, "j"), (-1, "i"), (1, "1")]],
        ),
        (
            vec![vec![0, 0, 1], vec![1, 1, 1], vec![0, 0, 0]],
            [[(-1, "1"), (1, "k"), (-1, "j")], [(1, "k"), (1, "1"), (1, "i")], [(-1, "j"), (1, "i"), (-1, "1")]],
        ),
    ];
    let names = ["i", "j", "k"];
    for (exps, table) in tables {
        let sigma = Multiplier::new(group.clone(), 2, exps.clone()).map_err(|e| e.to_string())?;
        let twisted = h.twist(&sigma).map_err(|e| e.to_string())?;
        for (r, a) in names.iter().enumerate() {
            for (c, b) in names.iter().enumerate() {
                let got = &twisted.basis_element(a) * &twisted.basis_element(b);
                let (sign, label) = table[r][c];
                let expected = twisted.elem(&[(label, sign)]);
                check(got == expected, || format!("sigma {exps:?}: {a}*{b} = {got}, expected {expected}"))?;
                let swapped = &twisted.basis_element(b) * &twisted.basis_element(a);
                check(got == swapped, || format!("sigma {exps:?}: {a}*{b} != {b}*{a}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    sweeps(
        &["quaternions", "clifford:1,1", "clifford:0,2", "dual_numbers:2"],
        &[
            ("gdet0_sigma_independence", check_gdet0_sigma_independence),
            ("trace_sigma_independence", check_trace_sigma_independence),
            ("gber0_sigma_independence", check_gber0_sigma_independence),
        ],
        200,
    )
}

fn criterion_4() -> Outcome {
    sweeps(
        &["quaternions", "clifford:1,1", "clifford:0,2", "dual_numbers:2"],
        &[("gdet0_multiplicative", check_gdet0_multiplicative), ("gdet0_normalization", check_gdet0_normalization)],
        200,
    )
}

fn criterion_5() -> Outcome {
    sweeps(&["quaternions", "clifford:1,1", "clifford:0,2"], &[("ordering_formula", check_ordering_formula)], 200)
}

fn criterion_6() -> Outcome {
    sweeps(
        &["quaternions", "clifford:1,1", "clifford:0,2", "dual_numbers:2"],
        &[
            ("weak_multiplicativity", check_weak_multiplicativity),
            ("row_additivity", check_row_additivity),
            ("heredity", check_heredity),
            ("power_law", check_power_law),
            ("inverse_law", check_inverse_law),
            ("scalar_law", check_scalar_law),
        ],
        50,
    )
}

fn criterion_7() -> Outcome {
    sweeps(
        &["quaternions", "clifford:1,1", "dual_numbers:2"],
        &[("permutation_morphism", check_permutation_morphism), ("sign_law", check_sign_law)],
        50,
    )
}

fn criterion_8() -> Outcome {
    let mut algebras = vec!["quaternions".to_string()];
    for p in 0..=3 {
        for qq in 0..=(3 - p) {
            algebras.push(format!("clifford:{p},{qq}"));
        }
    }
    let names: Vec<&str> = algebras.iter().map(String::as_str).collect();
    sweeps(&names, &[("crossed_route", check_crossed_route)], 50)
}

fn criterion_9() -> Outcome {
    sweeps(&["quaternions"], &[("dieudonne", check_dieudonne)], 100)
}

/// H tensor dual_numbers(3) over (Z2)^3, X of degree i~ over nu = (0, 0, e1).
fn quaternion_dual_instance() -> Result<(GradedMatrix, GroupElement), String> {
    let h = presets::quaternions();
    let d = presets::dual_numbers(3).map_err(|e| e.to_string())?;
    let a = h.graded_tensor(&d).map_err(|e| e.to_string())?;
    let g = a.group();
    let x_deg = g.el(&[0, 1, 1]);
    let nu = vec![g.zero(), g.zero(), g.el(&[1, 0, 0])];
    let e = |terms: &[(&str, i64)]| a.elem(terms);
    let rows = vec![
        vec![e(&[("i⊗1", 1), ("j⊗e1e2", 2)]), e(&[("i⊗1", 2)]), e(&[("i⊗e1", 1), ("k⊗e3", -1)])],
        vec![e(&[("i⊗1", -1)]), e(&[("i⊗1", 3), ("j⊗e1e2", -4)]), e(&[("j⊗e2", 1)])],
        vec![e(&[("i⊗e1", 1)]), e(&[("k⊗e3", 5), ("j⊗e2", 1)]), e(&[("i⊗1", -2)])],
    ];
    let x = GradedMatrix::square(&a, nu, rows).map_err(|e| e.to_string())?;
    check(x.is_homogeneous_of(&x_deg), || "instance is not homogeneous of degree i".into())?;
    Ok((x, x_deg))
}

fn criterion_10() -> Outcome {
    sweeps(
        &["dual_numbers:2", "grassmann:2", "grassmann:3", "clifford:1,1"],
        &[
            ("gber0_multiplicative", check_gber0_multiplicative),
            ("gber_oracle", check_gber_oracle),
            ("udl", check_udl),
            ("gber_special_values", check_gber_special_values),
        ],
        50,
    )?;

    let (x, x_deg) = quaternion_dual_instance()?;
    let b = parity_blocks(&x).map_err(|e| e.to_string())?;
    check((b.r0(), b.r1()) == (2, 1), || "superrank".into())?;
    let mut nontrivial = false;
    for sigma in x.algebra().ns_multipliers().map_err(|e| e.to_string())? {
        let got = gber(&x, &sigma).map_err(|e| e.to_string())?;
        let oracle = gber_oracle(&x, &sigma).map_err(|e| e.to_string())?;
        let pref = berezinian_prefactor(&sigma, &x_deg, 2, 1);
        nontrivial |= !pref.is_one();
        check(oracle.factor == pref, || format!("prefactor {pref} vs bookkeeping {}", oracle.factor))?;
        check(oracle.via_super == got && oracle.via_bookkeeping == got, || format!("gber {got} vs oracle"))?;
        check(gber_via_super(&x, &sigma).map_err(|e| e.to_string())? == got, || "gber_via_super".into())?;
    }
    check(nontrivial, || "no multiplier exercised a nontrivial prefactor".into())?;
    let (u, d, l) = udl(&x).map_err(|e| e.to_string())?;
    let back = u.matmul(&d).and_then(|ud| ud.matmul(&l)).map_err(|e| e.to_string())?;
    check(back == x, || "UDL does not reassemble".into())?;

    let a = presets::grassmann(2).map_err(|e| e.to_string())?;
    let g = a.group();
    let (alpha, beta, gamma, delta) = (q(2, 1), q(3, 1), q(-5, 2), q(4, 1));
    let s = |c: &gradet::CycloScalar| AlgebraElement::scalar(&a, c.clone());
    let (e1, e2) = (a.basis_element("e1"), a.basis_element("e2"));
    let m = GradedMatrix::square(&a, vec![g.zero(), g.el(&[1])], vec![
        vec![s(&alpha), e1.scale(&beta)],
        vec![e2.scale(&gamma), s(&delta)],
    ])
    .map_err(|e| e.to_string())?;
    let dinv = delta.inv().map_err(|e| e.to_string())?;
    let expected = &s(&(&alpha * &dinv)) - &(&e1 * &e2).scale(&(&(&beta * &gamma) * &(&dinv * &dinv)));
    let got = gber0(&m).map_err(|e| e.to_string())?;
    check(got == expected, || format!("Grassmann 1|1: {got} vs {expected}"))
}

fn criterion_11() -> Outcome {
    sweeps(
        &["quaternions", "clifford:1,1", "clifford:0,2", "dual_numbers:2", "grassmann:3"],
        &[("trace_laws", check_trace_laws)],
        100,
    )
}

fn criterion_12() -> Outcome {
    sweeps(&["quaternions", "clifford:1,1"], &[("row_decomposition", check_row_decomposition)], 50)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("quaternion worked values", criterion_1),
        ("twisted quaternion tables", criterion_2),
        ("sigma-independence of gdet0, trace, gber0", criterion_3),
        ("gdet0 multiplicative and normalized", criterion_4),
        ("ordering formula", criterion_5),
        ("gdet_sigma property suite", criterion_6),
        ("permutation matrices and sign law", criterion_7),
        ("crossed-product route", criterion_8),
        ("Dieudonne norm diagram", criterion_9),
        ("Berezinian", criterion_10),
        ("graded trace", criterion_11),
        ("row decomposition", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.1}s): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
