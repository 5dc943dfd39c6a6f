//! Named algebras with explicit normal-form bases.

use crate::algebra::{make_algebra, GradedAlgebra, Product};
use crate::error::{Error, Result};
use crate::grading::{solve_ns_multiplier, Bicharacter, GradingGroup, GroupElement, Multiplier};
use crate::scalars::CycloScalar;

fn sign(neg: bool) -> CycloScalar {
    CycloScalar::from_int(if neg { -1 } else { 1 })
}

/// H with i, j, k in degrees (0,1,1), (1,0,1), (1,1,0) of (Z_2)^3 and
/// lambda(x, y) = (-1)^<x,y>.
pub fn quaternions() -> GradedAlgebra {
    let g = GradingGroup::elementary2(3);
    let lambda = Bicharacter::dot_sign(&g).expect("(Z_2)^3");
    let basis = vec![
        ("1".to_string(), g.zero()),
        ("i".to_string(), g.el(&[0, 1, 1])),
        ("j".to_string(), g.el(&[1, 0, 1])),
        ("k".to_string(), g.el(&[1, 1, 0])),
    ];
    // row x column -> (sign, index)
    let t: [[(i64, usize); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    let mut products = Vec::new();
    for (i, row) in t.iter().enumerate() {
        for (j, &(s, k)) in row.iter().enumerate() {
            products.push(((i, j), vec![(k, CycloScalar::from_int(s))]));
        }
    }
    make_algebra(lambda, basis, products).expect("quaternion table is valid")
}

fn monomial_label(prefix: &str, mask: usize) -> String {
    if mask == 0 {
        return "1".into();
    }
    (0..usize::BITS as usize)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| format!("{prefix}{}", b + 1))
        .collect()
}

/// Number of pairs (a in I, b in J) with a > b: the sign of moving J's
/// generators past I's into ascending order.
fn crossings(i: usize, j: usize) -> u32 {
    let mut count = 0;
    let mut bits = j;
    while bits != 0 {
        let b = bits.trailing_zeros();
        count += (i >> (b + 1)).count_ones();
        bits &= bits - 1;
    }
    count
}

fn check_generators(n: usize) -> Result<()> {
    if n > 10 {
        return Err(Error::InvalidParams(format!("{n} generators is beyond desk scale (max 10)")));
    }
    Ok(())
}

/// Cl(p, q): e_i^2 = +1 for i <= p, -1 otherwise; e_i has degree the i-th
/// standard vector with a trailing 1 in (Z_2)^(n+1). Monomials are
/// ascending products e_I, indexed by bitmask.
pub fn clifford(p: usize, q: usize) -> Result<GradedAlgebra> {
    let n = p + q;
    check_generators(n)?;
    let g = GradingGroup::elementary2(n + 1);
    let lambda = Bicharacter::dot_sign(&g)?;
    let degree = |mask: usize| -> GroupElement {
        let mut c: Vec<i64> = (0..n).map(|b| (mask >> b & 1) as i64).collect();
        c.push(mask.count_ones() as i64);
        g.el(&c)
    };
    let d = 1usize << n;
    let basis = (0..d).map(|m| (monomial_label("e", m), degree(m))).collect();
    let negative_squares = ((1usize << n) - 1) & !((1usize << p) - 1);
    let mut products = Vec::with_capacity(d * d);
    for a in 0..d {
        for b in 0..d {
            let neg = (crossings(a, b) + (a & b & negative_squares).count_ones()) % 2 == 1;
            products.push(((a, b), vec![(a ^ b, sign(neg))]));
        }
    }
    make_algebra(lambda, basis, products)
}

/// K[e_1..e_n]/(e_i^2): commutative, e_i of odd degree e_i in (Z_2)^n.
pub fn dual_numbers(n: usize) -> Result<GradedAlgebra> {
    if n == 0 {
        return Err(Error::InvalidParams("dual_numbers needs n >= 1".into()));
    }
    check_generators(n)?;
    let g = GradingGroup::elementary2(n);
    let lambda = Bicharacter::dot_sign(&g)?;
    let d = 1usize << n;
    let basis = (0..d)
        .map(|m| {
            let c: Vec<i64> = (0..n).map(|b| (m >> b & 1) as i64).collect();
            (monomial_label("e", m), g.el(&c))
        })
        .collect();
    let mut products = Vec::new();
    for a in 0..d {
        for b in 0..d {
            if a & b == 0 {
                products.push(((a, b), vec![(a | b, CycloScalar::one())]));
            }
        }
    }
    make_algebra(lambda, basis, products)
}

/// Exterior algebra on n odd generators, graded by Z_2 with the super sign.
pub fn grassmann(n: usize) -> Result<GradedAlgebra> {
    check_generators(n)?;
    let g = GradingGroup::elementary2(1);
    let lambda = Bicharacter::super_sign();
    let d = 1usize << n;
    let basis = (0..d)
        .map(|m| (monomial_label("e", m), g.el(&[m.count_ones() as i64])))
        .collect();
    let mut products = Vec::new();
    for a in 0..d {
        for b in 0..d {
            if a & b == 0 {
                products.push(((a, b), vec![(a | b, sign(crossings(a, b) % 2 == 1))]));
            }
        }
    }
    make_algebra(lambda, basis, products)
}

fn element_label(x: &GroupElement) -> String {
    if x.is_zero() {
        return "1".into();
    }
    let parts: Vec<String> = x.residues().iter().map(u32::to_string).collect();
    format!("e_{}", parts.join("_"))
}

fn crossed_on(
    lambda: Bicharacter,
    elements: &[GroupElement],
    sigma: &Multiplier,
) -> Result<GradedAlgebra> {
    let index = |x: &GroupElement| elements.iter().position(|e| e == x);
    let basis = elements.iter().map(|x| (element_label(x), x.clone())).collect();
    let mut products: Vec<((usize, usize), Product)> = Vec::new();
    for (a, x) in elements.iter().enumerate() {
        for (b, y) in elements.iter().enumerate() {
            let k = index(&(x + y)).ok_or_else(|| Error::InvalidParams("support is not a subgroup".into()))?;
            products.push(((a, b), vec![(k, sigma.value(x, y))]));
        }
    }
    make_algebra(lambda, basis, products)
}

/// Basis e_gamma for every gamma, e_a e_b = sigma(a, b) e_(a+b), graded
/// commutative for lambda(a, b) = sigma(a, b) / sigma(b, a).
pub fn crossed_product(group: &GradingGroup, sigma: &Multiplier) -> Result<GradedAlgebra> {
    if sigma.group() != group {
        return Err(Error::IncompatibleGroups);
    }
    let n = sigma.root_order() as i64;
    let c = sigma.exponents();
    let k = group.rank();
    let exps = (0..k).map(|i| (0..k).map(|j| c[i][j] as i64 - c[j][i] as i64).collect()).collect();
    let lambda = Bicharacter::new(group.clone(), n as u32, exps)?;
    crossed_on(lambda, &group.elements(), sigma)
}

pub fn group_algebra(group: &GradingGroup) -> Result<GradedAlgebra> {
    crossed_product(group, &Bicharacter::trivial(group))
}

/// Crossed product supported on the even subgroup, commuting according to
/// lambda itself. Tensoring with it supplies a homogeneous unit t_gamma in
/// every even degree.
pub fn even_crossed_product(lambda: &Bicharacter) -> Result<GradedAlgebra> {
    let sigma = solve_ns_multiplier(lambda)?.inverse();
    let even: Vec<GroupElement> =
        lambda.group().elements().into_iter().filter(|x| !lambda.is_odd(x)).collect();
    crossed_on(lambda.clone(), &even, &sigma)
}

/// Mat(n) graded by Z_n x Z_n through clock C and shift S, with basis
/// C^a S^b and lambda((a,b),(c,d)) = zeta_n^(ad - bc).
pub fn clock_shift(n: u32) -> Result<GradedAlgebra> {
    if n == 0 {
        return Err(Error::InvalidParams("clock_shift needs n >= 1".into()));
    }
    if n > 12 {
        return Err(Error::InvalidParams("clock_shift beyond desk scale (max 12)".into()));
    }
    let g = GradingGroup::new(vec![n, n])?;
    let lambda = Bicharacter::new(g.clone(), n, vec![vec![0, 1], vec![-1, 0]])?;
    let els = g.elements();
    let label = |x: &GroupElement| {
        if x.is_zero() {
            "1".to_string()
        } else {
            format!("c{}s{}", x.residues()[0], x.residues()[1])
        }
    };
    let basis = els.iter().map(|x| (label(x), x.clone())).collect();
    let mut products = Vec::new();
    for (a, x) in els.iter().enumerate() {
        for (b, y) in els.iter().enumerate() {
            let s = x + y;
            let k = els.iter().position(|e| e == &s).expect("closed");
            let e = -(x.residues()[1] as i64 * y.residues()[0] as i64);
            products.push(((a, b), vec![(k, CycloScalar::cyclo(e, n))]));
        }
    }
    make_algebra(lambda, basis, products)
}

/// Parses "quaternions", "clifford:1,3", "dual_numbers:2", "grassmann:2",
/// "group_algebra:2,2", "clock_shift:3".
pub fn preset(spec: &str) -> Result<GradedAlgebra> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let nums: Vec<u32> = if args.trim().is_empty() {
        Vec::new()
    } else {
        args.split(',')
            .map(|a| a.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidParams(format!("bad preset arguments {args:?}")))?
    };
    let arity = |k: usize| {
        if nums.len() == k {
            Ok(())
        } else {
            Err(Error::InvalidParams(format!("preset {name} takes {k} argument(s)")))
        }
    };
    match name {
        "quaternions" => arity(0).map(|_| quaternions()),
        "clifford" => arity(2).and_then(|_| clifford(nums[0] as usize, nums[1] as usize)),
        "dual_numbers" => arity(1).and_then(|_| dual_numbers(nums[0] as usize)),
        "grassmann" => arity(1).and_then(|_| grassmann(nums[0] as usize)),
        "group_algebra" => group_algebra(&GradingGroup::new(nums.clone())?),
        "clock_shift" => arity(1).and_then(|_| clock_shift(nums[0])),
        _ => Err(Error::InvalidParams(format!("unknown preset {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraElement;

    #[test]
    fn quaternion_table() {
        let h = quaternions();
        assert_eq!(h.dim(), 4);
        let (i, j, k) = (h.basis_element("i"), h.basis_element("j"), h.basis_element("k"));
        let m1 = -AlgebraElement::one(&h);
        assert_eq!(&i * &i, m1);
        assert_eq!(&j * &j, m1);
        assert_eq!(&k * &k, m1);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&k * &j, -&i);
    }

    #[test]
    fn clifford_relations() {
        for (p, q) in [(0, 0), (1, 0), (0, 2), (1, 1), (2, 1), (1, 2)] {
            let c = clifford(p, q).unwrap();
            c.validate().unwrap();
            assert_eq!(c.dim(), 1 << (p + q));
            for a in 1..=p + q {
                let ea = c.basis_element(&format!("e{a}"));
                let want = if a <= p { 1 } else { -1 };
                assert_eq!(&ea * &ea, AlgebraElement::scalar(&c, want.into()));
                for b in a + 1..=p + q {
                    let eb = c.basis_element(&format!("e{b}"));
                    assert_eq!(&ea * &eb, -(&eb * &ea));
                    assert_eq!(&ea * &eb, c.basis_element(&format!("e{a}e{b}")));
                }
            }
            assert!(c.support().iter().all(|x| !c.is_odd_degree(x)));
        }
    }

    #[test]
    fn dual_and_grassmann() {
        let d = dual_numbers(1).unwrap();
        assert_eq!(d.dim(), 2);
        let e = d.basis_element("e1");
        assert!((&e * &e).is_zero());
        assert!(d.is_odd_degree(d.degree(1)));
        let d2 = dual_numbers(2).unwrap();
        d2.validate().unwrap();
        let (a, b) = (d2.basis_element("e1"), d2.basis_element("e2"));
        assert_eq!(&a * &b, &b * &a);
        let g = grassmann(2).unwrap();
        g.validate().unwrap();
        let (a, b) = (g.basis_element("e1"), g.basis_element("e2"));
        assert_eq!(&a * &b, -(&b * &a));
        assert_eq!(&a * &b, g.basis_element("e1e2"));
    }

    #[test]
    fn crossed_products_and_group_algebras() {
        let g = GradingGroup::elementary2(3);
        let s = Bicharacter::new(g.clone(), 2, vec![vec![1, 0, 1], vec![1, 0, 0], vec![0, 1, 1]]).unwrap();
        let cp = crossed_product(&g, &s).unwrap();
        assert_eq!(cp.dim(), 8);
        for x in g.elements() {
            for y in g.elements() {
                let ex = &cp.basis_element(&element_label(&x));
                let ey = &cp.basis_element(&element_label(&y));
                let want = cp.basis_element(&element_label(&(&x + &y))).scale(&s.value(&x, &y));
                assert_eq!(ex * ey, want);
            }
            assert!(cp.basis_element(&element_label(&x)).is_invertible());
        }
        let ga = group_algebra(&GradingGroup::new(vec![3]).unwrap()).unwrap();
        assert_eq!(ga.dim(), 3);
        assert_eq!(ga.unit_degrees().len(), 3);
    }

    #[test]
    fn clock_shift_is_graded_division() {
        for n in [2, 3, 4] {
            let a = clock_shift(n).unwrap();
            a.validate().unwrap();
            assert_eq!(a.unit_degrees().len(), (n * n) as usize);
        }
    }

    #[test]
    fn preset_strings() {
        assert_eq!(preset("quaternions").unwrap().dim(), 4);
        assert_eq!(preset("clifford:1,3").unwrap().dim(), 16);
        assert_eq!(preset("group_algebra:2,3").unwrap().dim(), 6);
        assert!(matches!(preset("clifford:1"), Err(Error::InvalidParams(_))));
        assert!(matches!(preset("dual_numbers:0"), Err(Error::InvalidParams(_))));
        assert!(matches!(preset("octonions"), Err(Error::InvalidParams(_))));
    }
}
