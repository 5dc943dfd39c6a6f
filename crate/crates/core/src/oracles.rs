//! Independent computation paths and seeded property sweeps.

use std::cell::RefCell;
use std::fmt::Display;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{AlgebraElement, GradedAlgebra, Homogeneity};
use crate::berezinian::{ber_super, berezinian_prefactor, gber, gber0, gber_via_super, parity_blocks, udl};
use crate::error::{Error, Result};
use crate::gdet::{
    gdet0, gdet0_leibniz, gdet0_via_crossed, gdet0_with, gdet_sigma, leibniz_det_commutative, leibniz_rows,
    random_ordering, relative_degrees, Ordering, UnitExtension,
};
use crate::gmatrix::{graded_trace, j_sigma, j_sigma_into, permutation_matrix, superrank, units_for, GradedMatrix};
use crate::grading::{enumerate_ns_multipliers, is_ns_multiplier, GroupElement, Multiplier};
use crate::linalg::determinant;
use crate::permutation::Permutation;
use crate::presets;
use crate::random::{
    even_entry_matrix, homogeneous_element, homogeneous_matrix, instance_rng, invertible_homogeneous,
    invertible_matrix, nonzero_homogeneous, parity_sorted_degrees, same_parity_degrees, support_of_parity,
};
use crate::scalars::CycloScalar;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub got: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub property: String,
    pub instances: usize,
    pub failures: Vec<Failure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub type Check = std::result::Result<(), Failure>;

fn failure(input: &str, expected: impl Display, got: impl Display) -> Failure {
    Failure { input: crate::io::digest(input.as_bytes()), expected: expected.to_string(), got: got.to_string() }
}

fn expect_eq(input: &str, expected: &AlgebraElement, got: &AlgebraElement) -> Check {
    if expected == got {
        Ok(())
    } else {
        Err(failure(input, expected, got))
    }
}

fn ok<T>(input: &str, r: Result<T>) -> std::result::Result<T, Failure> {
    r.map_err(|e| failure(input, "a value", format!("error {e}")))
}

fn need<T>(input: &str, v: Option<T>, what: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| failure(input, what, "no instance found"))
}

/// Runs `check` on `instances` independent seeded streams in parallel and
/// reports failures in instance order.
pub fn sweep<F>(property: &str, seed: u64, instances: usize, check: F) -> SweepReport
where
    F: Fn(&mut ChaCha8Rng) -> Check + Sync,
{
    let failures = (0..instances)
        .into_par_iter()
        .map(|i| check(&mut instance_rng(seed, property, i)).err())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    SweepReport { property: property.to_string(), instances, failures }
}

fn sigma_pow(sigma: &Multiplier, x: &GroupElement, y: &GroupElement, k: i64) -> CycloScalar {
    let n = sigma.root_order() as i64;
    CycloScalar::cyclo((k * sigma.exponent(x, y) as i64).rem_euclid(n), sigma.root_order())
}

fn degree_of(e: &AlgebraElement) -> Option<GroupElement> {
    match e.degree() {
        Homogeneity::Homogeneous(g) => Some(g),
        _ => None,
    }
}

/// Value on a diagonal matrix fixed by the heredity rule: the last entry
/// lambda(c, nu_n) c contributes sigma(c, deg of the rest) c on the left.
pub fn gdet_diagonal_by_heredity(
    diag: &[AlgebraElement],
    nu: &[GroupElement],
    sigma: &Multiplier,
) -> Result<AlgebraElement> {
    let alg = diag.first().map(|d| d.algebra().clone());
    let Some(alg) = alg else {
        return Err(Error::NotSquare);
    };
    let lambda = alg.lambda();
    let mut acc = AlgebraElement::one(&alg);
    let mut deg = alg.group().zero();
    for (d, v) in diag.iter().zip(nu) {
        let c_deg = match d.degree() {
            Homogeneity::Zero => return Ok(AlgebraElement::zero(&alg)),
            Homogeneity::Homogeneous(g) => g,
            Homogeneity::Inhomogeneous => return Err(Error::InhomogeneousScalar),
        };
        let c = d.scale(&lambda.value(&c_deg, v).inv()?);
        acc = (&c * &acc).scale(&sigma.value(&c_deg, &deg));
        deg = &deg + &c_deg;
    }
    Ok(acc)
}

/// sum over row-degree choices alpha and permutations pi of
/// sgn(pi) Gdet(D(alpha, pi)), where X^alpha(pi) = P(pi) D(alpha, pi) and
/// each diagonal value comes from the heredity rule.
pub fn gdet_via_row_decomposition(x: &GradedMatrix, sigma: &Multiplier) -> Result<AlgebraElement> {
    if x.rows() != x.cols() {
        return Err(Error::NotSquare);
    }
    if let Some((i, j)) = x.first_odd_entry() {
        return Err(Error::OddEntries(i, j));
    }
    if !is_ns_multiplier(x.algebra().lambda(), sigma) {
        return Err(Error::NotNsMultiplier);
    }
    let n = x.rows();
    if n == 0 {
        return Ok(AlgebraElement::one(x.algebra()));
    }
    let nu = x.row_degrees().to_vec();
    let rel = relative_degrees(&nu);
    let ext = UnitExtension::new(x.algebra(), &rel)?;
    let units = units_for(&ext.ext, &rel)?;
    let t: Vec<AlgebraElement> = rel.iter().map(|g| units[g].clone()).collect();
    let tinv: Vec<AlgebraElement> = t.iter().map(AlgebraElement::inverse).collect::<Result<_>>()?;
    let xb = ext.embed_matrix(x);

    // row k split by the matrix degree alpha of its components
    let mut rows: Vec<Vec<(GroupElement, Vec<AlgebraElement>)>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut parts: std::collections::BTreeMap<GroupElement, Vec<AlgebraElement>> = Default::default();
        for j in 0..n {
            for (delta, part) in xb.get(k, j).homogeneous_components() {
                let alpha = xb.matrix_degree(&delta, k, j);
                parts.entry(alpha).or_insert_with(|| vec![AlgebraElement::zero(&ext.ext); n])[j] = part;
            }
        }
        rows.push(parts.into_iter().collect());
    }

    let mut acc = AlgebraElement::zero(&ext.ext);
    let perms = Permutation::all(n);
    let mut choice = vec![0usize; n];
    'alpha: loop {
        if rows.iter().all(|r| !r.is_empty()) {
            for pi in &perms {
                let mut diag = Vec::with_capacity(n);
                for j in 0..n {
                    let i = pi.apply(j);
                    let entry = &rows[i][choice[i]].1[j];
                    if entry.is_zero() {
                        break;
                    }
                    diag.push(&(&tinv[j] * &t[i]) * entry);
                }
                if diag.len() < n {
                    continue;
                }
                let term = gdet_diagonal_by_heredity(&diag, &nu, sigma)?;
                acc = if pi.sign() > 0 { acc + term } else { acc - term };
            }
        } else {
            break;
        }
        // next multi-index
        for k in 0..n {
            choice[k] += 1;
            if choice[k] < rows[k].len() {
                continue 'alpha;
            }
            choice[k] = 0;
        }
        break;
    }
    ext.project(&acc).ok_or(Error::NotCrossedProduct("result left A".into()))
}

/// Both independent Berezinian paths plus the star-to-dot conversion
/// factor seen on the actual degrees.
#[derive(Clone, Debug)]
pub struct GberOracle {
    pub via_super: AlgebraElement,
    pub via_bookkeeping: AlgebraElement,
    pub factor: CycloScalar,
}

/// Works entirely in twist(A, sigma): ber = det*(S') *(det*(Y11))^-1*
/// with S' the Schur complement of J_sigma X. Rewriting both star
/// operations as products in A gives the factor
/// sigma(deg S', -deg Y11) sigma(deg Y11, deg Y11).
pub fn gber_oracle(x: &GradedMatrix, sigma: &Multiplier) -> Result<GberOracle> {
    let alg = x.algebra();
    let twisted = alg.twist(sigma)?;
    let y = j_sigma_into(x, sigma, &twisted)?;
    let via_super = ber_super(&y)?.reinterpret(alg)?;
    let b = parity_blocks(&y)?;
    let y11_inv = b.x11.inverse().map_err(|_| Error::Singular)?;
    let s = b.x00.try_sub(&b.x01.matmul(&y11_inv)?.matmul(&b.x10)?)?;
    let d_s = leibniz_rows(&s).reinterpret(alg)?;
    let d_11 = leibniz_rows(&b.x11).reinterpret(alg)?;
    let g = alg.group();
    let deg_s = if b.r0() == 0 { g.zero() } else { degree_of(&d_s).ok_or(Error::Singular)? };
    let deg_11 = if b.r1() == 0 { g.zero() } else { degree_of(&d_11).ok_or(Error::Singular)? };
    let factor = &sigma.value(&deg_s, &-&deg_11) * &sigma.value(&deg_11, &deg_11);
    let via_bookkeeping = (&d_s * &d_11.inverse().map_err(|_| Error::Singular)?).scale(&factor);
    Ok(GberOracle { via_super, via_bookkeeping, factor })
}

/// chi: a + b i + c j + d k -> [[a + b z, c + d z], [-c + d z, a - b z]]
/// with z a primitive 4th root of unity.
pub fn quaternion_embedding(q: &AlgebraElement) -> Result<[[CycloScalar; 2]; 2]> {
    let alg = q.algebra();
    let coeff = |l: &str| {
        alg.index_of(l)
            .map(|i| q.coeff(i))
            .ok_or_else(|| Error::InvalidParams(format!("quaternion basis lacks {l}")))
    };
    let (a, b, c, d) = (coeff("1")?, coeff("i")?, coeff("j")?, coeff("k")?);
    if alg.dim() != 4 {
        return Err(Error::InvalidParams("not a quaternion algebra".into()));
    }
    let z = CycloScalar::cyclo(1, 4);
    let bz = &b * &z;
    let dz = &d * &z;
    Ok([[&a + &bz, &c + &dz], [&dz - &c, &a - &bz]])
}

/// q times its conjugate.
pub fn quaternion_norm(q: &AlgebraElement) -> AlgebraElement {
    let alg = q.algebra();
    let unit = alg.unit_index();
    let conj = AlgebraElement::from_coeffs(
        alg,
        q.terms().map(|(k, c)| (k, if k == unit { c.clone() } else { c.neg_ref() })).collect::<Vec<_>>(),
    );
    q * &conj
}

/// det of the 2n x 2n complex matrix chi(X).
pub fn embedded_determinant(x: &GradedMatrix) -> Result<CycloScalar> {
    let n = x.rows();
    let mut m = vec![vec![CycloScalar::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        for j in 0..n {
            let block = quaternion_embedding(x.get(i, j))?;
            for (r, row) in block.iter().enumerate() {
                for (c, v) in row.iter().enumerate() {
                    m[2 * i + r][2 * j + c] = v.clone();
                }
            }
        }
    }
    Ok(determinant(m))
}

/// N(Gdet_sigma(X)) = det(chi(X)) for every NS-multiplier of the algebra.
pub fn dieudonne_norm_check(x: &GradedMatrix) -> SweepReport {
    let input = format!("{x:?}");
    let mut failures = Vec::new();
    let sigmas = match x.algebra().ns_multipliers() {
        Ok(s) => s,
        Err(e) => {
            failures.push(failure(&input, "NS-multipliers", e));
            return SweepReport { property: "dieudonne_norm".into(), instances: 0, failures };
        }
    };
    let expected = embedded_determinant(x);
    for sigma in &sigmas {
        let got = gdet_sigma(x, sigma).map(|g| quaternion_norm(&g));
        match (expected.as_ref(), got.as_ref()) {
            (Ok(d), Ok(nrm)) => {
                let scalar = AlgebraElement::scalar(x.algebra(), d.clone());
                if &scalar != nrm {
                    failures.push(failure(&input, d, nrm));
                }
            }
            (Err(e), _) | (_, Err(e)) => failures.push(failure(&input, "a value", format!("error {e}"))),
        }
    }
    SweepReport { property: "dieudonne_norm".into(), instances: sigmas.len(), failures }
}

fn text(x: &GradedMatrix) -> String {
    format!("{x:?}")
}

fn random_n(rng: &mut ChaCha8Rng, max: usize) -> usize {
    rng.gen_range(1..=max)
}

fn zero_matrix_degree(alg: &GradedAlgebra) -> GroupElement {
    alg.group().zero()
}

/// Nonzero even degree with a unit, when there is one.
fn even_unit_degree(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> GroupElement {
    let degs: Vec<GroupElement> = alg.unit_degrees().into_iter().filter(|g| !alg.is_odd_degree(g)).collect();
    let nonzero: Vec<&GroupElement> = degs.iter().filter(|g| !g.is_zero()).collect();
    if !nonzero.is_empty() && rng.gen_bool(0.75) {
        nonzero.choose(rng).map(|g| (*g).clone()).unwrap()
    } else {
        alg.group().zero()
    }
}

fn odd_split(alg: &GradedAlgebra, n: usize, rng: &mut ChaCha8Rng) -> (usize, usize) {
    if support_of_parity(alg, true).is_empty() {
        (n, 0)
    } else {
        let r1 = rng.gen_range(0..=n);
        (n - r1, r1)
    }
}

/// gdet0 agrees across every multiplier from enumerate_ns_multipliers.
pub fn check_gdet0_sigma_independence(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 4);
    let nu = same_parity_degrees(alg, n, rng);
    let x = homogeneous_matrix(alg, &nu, &zero_matrix_degree(alg), 0.6, rng);
    let input = text(&x);
    let base = ok(&input, gdet0(&x))?;
    for sigma in ok(&input, enumerate_ns_multipliers(alg.lambda()))? {
        expect_eq(&input, &base, &ok(&input, gdet0_with(&x, &sigma))?)?;
    }
    Ok(())
}

/// graded_trace equals the supertrace of J_sigma X read back in A.
pub fn check_trace_sigma_independence(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 4);
    let elements = alg.group().elements();
    let nu: Vec<GroupElement> = (0..n).map(|_| elements.choose(rng).unwrap().clone()).collect();
    let support = alg.support();
    let x = GradedMatrix::from_fn(alg, nu.clone(), nu, |_, _| {
        crate::random::element_over(alg, &support, 0.4, rng)
    });
    let input = text(&x);
    let base = ok(&input, graded_trace(&x))?;
    for sigma in ok(&input, enumerate_ns_multipliers(alg.lambda()))? {
        let str_j = ok(&input, graded_trace(&ok(&input, j_sigma(&x, &sigma))?))?;
        expect_eq(&input, &base, &ok(&input, str_j.reinterpret(alg))?)?;
    }
    Ok(())
}

fn gl0_parity_sorted(alg: &GradedAlgebra, rng: &mut ChaCha8Rng, max: usize) -> std::result::Result<GradedMatrix, Failure> {
    let n = random_n(rng, max);
    let (r0, r1) = odd_split(alg, n, rng);
    let nu = parity_sorted_degrees(alg, r0, r1, rng);
    need(&format!("{nu:?}"), invertible_matrix(alg, &nu, &zero_matrix_degree(alg), rng), "an invertible matrix")
}

/// gber(X, sigma) agrees across every multiplier on parity-sorted GL^0.
pub fn check_gber0_sigma_independence(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let x = gl0_parity_sorted(alg, rng, 4)?;
    let input = text(&x);
    let base = ok(&input, gber0(&x))?;
    for sigma in ok(&input, enumerate_ns_multipliers(alg.lambda()))? {
        expect_eq(&input, &base, &ok(&input, gber(&x, &sigma))?)?;
    }
    Ok(())
}

/// gdet0(XY) = gdet0(X) gdet0(Y) on GL^0.
pub fn check_gdet0_multiplicative(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 4);
    let nu = same_parity_degrees(alg, n, rng);
    let zero = zero_matrix_degree(alg);
    let x = need("gl0", invertible_matrix(alg, &nu, &zero, rng), "an invertible matrix")?;
    let y = need("gl0", invertible_matrix(alg, &nu, &zero, rng), "an invertible matrix")?;
    let input = format!("{x:?}{y:?}");
    let xy = ok(&input, x.matmul(&y))?;
    let rhs = &ok(&input, gdet0(&x))? * &ok(&input, gdet0(&y))?;
    expect_eq(&input, &rhs, &ok(&input, gdet0(&xy))?)
}

/// gdet0(diag(1, ..., 1, a)) = a for invertible a of degree 0.
pub fn check_gdet0_normalization(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 4);
    let nu = same_parity_degrees(alg, n, rng);
    let a = need("unit", invertible_homogeneous(alg, &zero_matrix_degree(alg), rng), "a unit")?;
    let mut diag = vec![AlgebraElement::one(alg); n];
    diag[n - 1] = a.clone();
    let d = GradedMatrix::diagonal(alg, nu, diag);
    let input = text(&d);
    expect_eq(&input, &a, &ok(&input, gdet0(&d))?)
}

/// Ordered-product formula with canonical orderings and with 100 random
/// ordering choices.
pub fn check_ordering_formula(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 4);
    let nu = same_parity_degrees(alg, n, rng);
    let x = homogeneous_matrix(alg, &nu, &zero_matrix_degree(alg), 0.6, rng);
    let input = text(&x);
    let base = ok(&input, gdet0(&x))?;
    expect_eq(&input, &base, &ok(&input, gdet0_leibniz(&x, None))?)?;
    let cell = RefCell::new(rng.gen::<u64>());
    for _ in 0..100 {
        let sub = RefCell::new(instance_rng(cell.replace_with(|s| s.wrapping_add(1)), "ordering", 0));
        let choose = |pi: &Permutation| -> Ordering { random_ordering(pi, &mut *sub.borrow_mut()) };
        expect_eq(&input, &base, &ok(&input, gdet0_leibniz(&x, Some(&choose)))?)?;
    }
    Ok(())
}

/// det(P X P^-1) over A^0 equals gdet0.
pub fn check_crossed_route(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 4);
    let nu = same_parity_degrees(alg, n, rng);
    let x = homogeneous_matrix(alg, &nu, &zero_matrix_degree(alg), 0.6, rng);
    let input = text(&x);
    expect_eq(&input, &ok(&input, gdet0(&x))?, &ok(&input, gdet0_via_crossed(&x))?)
}

/// Row decomposition equals Gdet_sigma on inhomogeneous even-entry input.
pub fn check_row_decomposition(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 3);
    let nu = same_parity_degrees(alg, n, rng);
    let x = even_entry_matrix(alg, &nu, 0.5, rng);
    let input = text(&x);
    for sigma in ok(&input, alg.ns_multipliers())? {
        expect_eq(&input, &ok(&input, gdet_sigma(&x, &sigma))?, &ok(&input, gdet_via_row_decomposition(&x, &sigma))?)?;
    }
    Ok(())
}

fn even_support_degree(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> GroupElement {
    support_of_parity(alg, false).choose(rng).unwrap().clone()
}

/// Gdet(XY) = sigma(x,y)^(n(n-1)) Gdet(X) Gdet(Y) for homogeneous X, Y.
pub fn check_power_law(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 4);
    let nu = same_parity_degrees(alg, n, rng);
    let (dx, dy) = (even_support_degree(alg, rng), even_support_degree(alg, rng));
    let x = homogeneous_matrix(alg, &nu, &dx, 0.7, rng);
    let y = homogeneous_matrix(alg, &nu, &dy, 0.7, rng);
    let input = format!("{x:?}{y:?}");
    let xy = ok(&input, x.matmul(&y))?;
    let k = (n * (n - 1)) as i64;
    for sigma in ok(&input, alg.ns_multipliers())? {
        let rhs = (&ok(&input, gdet_sigma(&x, &sigma))? * &ok(&input, gdet_sigma(&y, &sigma))?)
            .scale(&sigma_pow(&sigma, &dx, &dy, k));
        expect_eq(&input, &rhs, &ok(&input, gdet_sigma(&xy, &sigma))?)?;
    }
    Ok(())
}

/// Gdet(X^-1) = sigma(x,x)^(n(n-1)) Gdet(X)^-1.
pub fn check_inverse_law(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 3);
    let nu = same_parity_degrees(alg, n, rng);
    let dx = even_unit_degree(alg, rng);
    let x = need("homogeneous", invertible_matrix(alg, &nu, &dx, rng), "an invertible matrix")?;
    let input = text(&x);
    let xinv = ok(&input, x.inverse())?;
    let k = (n * (n - 1)) as i64;
    for sigma in ok(&input, alg.ns_multipliers())? {
        let g = ok(&input, gdet_sigma(&x, &sigma))?;
        let rhs = ok(&input, g.inverse())?.scale(&sigma_pow(&sigma, &dx, &dx, k));
        expect_eq(&input, &rhs, &ok(&input, gdet_sigma(&xinv, &sigma))?)?;
    }
    Ok(())
}

/// Gdet(a X) = sigma(a,a)^(n(n-1)/2) sigma(a,x)^(n(n-1)) a^n Gdet(X).
pub fn check_scalar_law(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 4);
    let nu = same_parity_degrees(alg, n, rng);
    let (da, dx) = (even_support_degree(alg, rng), even_support_degree(alg, rng));
    let a = need("scalar", nonzero_homogeneous(alg, &da, rng), "an element")?;
    let x = homogeneous_matrix(alg, &nu, &dx, 0.7, rng);
    let input = format!("{a}{x:?}");
    let ax = ok(&input, x.scalar_action(&a))?;
    let k = (n * (n - 1)) as i64;
    for sigma in ok(&input, alg.ns_multipliers())? {
        let pref = &sigma_pow(&sigma, &da, &da, k / 2) * &sigma_pow(&sigma, &da, &dx, k);
        let rhs = (&a.pow(n as u32) * &ok(&input, gdet_sigma(&x, &sigma))?).scale(&pref);
        expect_eq(&input, &rhs, &ok(&input, gdet_sigma(&ax, &sigma))?)?;
    }
    Ok(())
}

/// Gdet(diag(D, lambda(c, nu_n) c)) = sigma(c, deg Gdet(D)) c Gdet(D).
pub fn check_heredity(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 4);
    let nu = same_parity_degrees(alg, n, rng);
    let mut diag = Vec::with_capacity(n);
    for _ in 0..n {
        let g = even_support_degree(alg, rng);
        diag.push(need("entry", nonzero_homogeneous(alg, &g, rng), "an element")?);
    }
    let c = diag.pop().unwrap();
    let c_deg = degree_of(&c).unwrap();
    let inner = GradedMatrix::diagonal(alg, nu[..n - 1].to_vec(), diag.clone());
    let mut full = diag;
    full.push(c.scale(&alg.lambda().value(&c_deg, &nu[n - 1])));
    let outer = GradedMatrix::diagonal(alg, nu, full);
    let input = text(&outer);
    for sigma in ok(&input, alg.ns_multipliers())? {
        let g = ok(&input, gdet_sigma(&inner, &sigma))?;
        let rhs = match g.degree() {
            Homogeneity::Zero => AlgebraElement::zero(alg),
            Homogeneity::Homogeneous(d) => (&c * &g).scale(&sigma.value(&c_deg, &d)),
            Homogeneity::Inhomogeneous => return Err(failure(&input, "homogeneous Gdet(D)", &g)),
        };
        expect_eq(&input, &rhs, &ok(&input, gdet_sigma(&outer, &sigma))?)?;
    }
    Ok(())
}

/// Gdet(XY) = Gdet(X) Gdet(Y) when one factor has degree 0.
pub fn check_weak_multiplicativity(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 3);
    let nu = same_parity_degrees(alg, n, rng);
    let x = even_entry_matrix(alg, &nu, 0.5, rng);
    let y = homogeneous_matrix(alg, &nu, &zero_matrix_degree(alg), 0.6, rng);
    let input = format!("{x:?}{y:?}");
    for sigma in ok(&input, alg.ns_multipliers())? {
        let gx = ok(&input, gdet_sigma(&x, &sigma))?;
        let gy = ok(&input, gdet_sigma(&y, &sigma))?;
        expect_eq(&input, &(&gx * &gy), &ok(&input, gdet_sigma(&ok(&input, x.matmul(&y))?, &sigma))?)?;
        expect_eq(&input, &(&gy * &gx), &ok(&input, gdet_sigma(&ok(&input, y.matmul(&x))?, &sigma))?)?;
    }
    Ok(())
}

/// Gdet is additive in each row separately.
pub fn check_row_additivity(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 3);
    let nu = same_parity_degrees(alg, n, rng);
    let x = even_entry_matrix(alg, &nu, 0.5, rng);
    let other = even_entry_matrix(alg, &nu, 0.5, rng);
    let k = rng.gen_range(0..n);
    let mut y = x.clone();
    let mut z = x.clone();
    for j in 0..n {
        y.set(k, j, other.get(k, j).clone());
        z.set(k, j, x.get(k, j) + other.get(k, j));
    }
    let input = format!("{x:?}{y:?}");
    for sigma in ok(&input, alg.ns_multipliers())? {
        let sum = &ok(&input, gdet_sigma(&x, &sigma))? + &ok(&input, gdet_sigma(&y, &sigma))?;
        expect_eq(&input, &sum, &ok(&input, gdet_sigma(&z, &sigma))?)?;
    }
    Ok(())
}

fn permutation_setting(
    alg: &GradedAlgebra,
    nu: &[GroupElement],
) -> Result<(UnitExtension, std::collections::BTreeMap<GroupElement, AlgebraElement>)> {
    let rel = relative_degrees(nu);
    let ext = UnitExtension::new(alg, &rel)?;
    let rel_units = units_for(&ext.ext, &rel)?;
    let units = nu.iter().zip(&rel).map(|(g, r)| (g.clone(), rel_units[r].clone())).collect();
    Ok((ext, units))
}

/// pi -> P(pi) is a morphism on all of S_3 and Gdet^0(P(pi)) = sgn(pi).
pub fn check_permutation_morphism(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let nu = same_parity_degrees(alg, 3, rng);
    let input = format!("{nu:?}");
    let (ext, units) = ok(&input, permutation_setting(alg, &nu))?;
    let b = &ext.ext;
    let perms = Permutation::all(3);
    let mats: Vec<GradedMatrix> =
        perms.iter().map(|p| permutation_matrix(b, p, &nu, &units)).collect::<Result<_>>().map_err(|e| failure(&input, "P(pi)", e))?;
    for (p, mp) in perms.iter().zip(&mats) {
        let sgn = AlgebraElement::scalar(b, CycloScalar::from_int(p.sign()));
        expect_eq(&input, &sgn, &ok(&input, gdet0(mp))?)?;
        for (q, mq) in perms.iter().zip(&mats) {
            let pq = ok(&input, permutation_matrix(b, &p.compose(q), &nu, &units))?;
            if ok(&input, mp.matmul(mq))? != pq {
                return Err(failure(&input, format!("P({p})P({q}) = P({})", p.compose(q)), "a different matrix"));
            }
        }
    }
    Ok(())
}

/// Gdet^0(P(pi) X) = Gdet^0(X P(pi)) = sgn(pi) Gdet^0(X).
pub fn check_sign_law(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 4);
    let nu = same_parity_degrees(alg, n, rng);
    let x = homogeneous_matrix(alg, &nu, &zero_matrix_degree(alg), 0.6, rng);
    let input = text(&x);
    let (ext, units) = ok(&input, permutation_setting(alg, &nu))?;
    let perms = Permutation::all(n);
    let pi = perms.choose(rng).unwrap();
    let p = ok(&input, permutation_matrix(&ext.ext, pi, &nu, &units))?;
    let xb = ext.embed_matrix(&x);
    let expected = ext.embed(&ok(&input, gdet0(&x))?).scale(&CycloScalar::from_int(pi.sign()));
    expect_eq(&input, &expected, &ok(&input, gdet0(&ok(&input, p.matmul(&xb))?))?)?;
    expect_eq(&input, &expected, &ok(&input, gdet0(&ok(&input, xb.matmul(&p))?))?)
}

/// Tr(XY) = lambda(x,y) Tr(YX), Tr(aX) = a Tr(X), Tr(I) = r0 - r1.
pub fn check_trace_laws(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 4);
    let elements = alg.group().elements();
    let nu: Vec<GroupElement> = (0..n).map(|_| elements.choose(rng).unwrap().clone()).collect();
    let support = alg.support();
    let (dx, dy) = (support.choose(rng).unwrap().clone(), support.choose(rng).unwrap().clone());
    let x = homogeneous_matrix(alg, &nu, &dx, 0.7, rng);
    let y = homogeneous_matrix(alg, &nu, &dy, 0.7, rng);
    let input = format!("{x:?}{y:?}");
    let txy = ok(&input, graded_trace(&ok(&input, x.matmul(&y))?))?;
    let tyx = ok(&input, graded_trace(&ok(&input, y.matmul(&x))?))?;
    expect_eq(&input, &tyx.scale(&alg.lambda().value(&dx, &dy)), &txy)?;
    let da = support.choose(rng).unwrap().clone();
    let a = homogeneous_element(alg, &da, 0.8, rng);
    let ax = ok(&input, x.scalar_action(&a))?;
    expect_eq(&input, &(&a * &ok(&input, graded_trace(&x))?), &ok(&input, graded_trace(&ax))?)?;
    let (r0, r1) = superrank(&nu, alg.lambda());
    let id = GradedMatrix::identity(alg, nu);
    let expected = AlgebraElement::scalar(alg, CycloScalar::from_int(r0 as i64 - r1 as i64));
    expect_eq(&input, &expected, &ok(&input, graded_trace(&id))?)
}

/// gber0(XY) = gber0(X) gber0(Y) on parity-sorted GL^0.
pub fn check_gber0_multiplicative(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let x = gl0_parity_sorted(alg, rng, 4)?;
    let nu = x.row_degrees().to_vec();
    let y = need("gl0", invertible_matrix(alg, &nu, &zero_matrix_degree(alg), rng), "an invertible matrix")?;
    let input = format!("{x:?}{y:?}");
    let rhs = &ok(&input, gber0(&x))? * &ok(&input, gber0(&y))?;
    expect_eq(&input, &rhs, &ok(&input, gber0(&ok(&input, x.matmul(&y))?))?)
}

fn homogeneous_even_invertible(
    alg: &GradedAlgebra,
    rng: &mut ChaCha8Rng,
    max: usize,
) -> std::result::Result<(GradedMatrix, GroupElement), Failure> {
    let n = random_n(rng, max);
    let (r0, r1) = odd_split(alg, n, rng);
    let nu = parity_sorted_degrees(alg, r0, r1, rng);
    let dx = even_unit_degree(alg, rng);
    let x = need(&format!("{nu:?}"), invertible_matrix(alg, &nu, &dx, rng), "an invertible matrix")?;
    Ok((x, dx))
}

/// gber(X, sigma) = ber_super(J_sigma X) = factor det(S') det(Y11)^-1 and
/// the factor equals sigma(x,x)^(-r1 (r0 - r1)).
pub fn check_gber_oracle(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let (x, dx) = homogeneous_even_invertible(alg, rng, 4)?;
    let input = text(&x);
    let (r0, r1) = superrank(x.row_degrees(), alg.lambda());
    for sigma in ok(&input, alg.ns_multipliers())? {
        let g = ok(&input, gber(&x, &sigma))?;
        let o = ok(&input, gber_oracle(&x, &sigma))?;
        expect_eq(&input, &o.via_super, &g)?;
        expect_eq(&input, &o.via_bookkeeping, &g)?;
        expect_eq(&input, &ok(&input, gber_via_super(&x, &sigma))?, &g)?;
        let pref = berezinian_prefactor(&sigma, &dx, r0, r1);
        if pref != o.factor {
            return Err(failure(&input, pref, &o.factor));
        }
    }
    Ok(())
}

/// U D L = X, with gber0(U) = gber0(L) = 1.
pub fn check_udl(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let (x, _) = homogeneous_even_invertible(alg, rng, 4)?;
    let input = text(&x);
    let (u, d, l) = ok(&input, udl(&x))?;
    let back = ok(&input, ok(&input, u.matmul(&d))?.matmul(&l))?;
    if back != x {
        return Err(failure(&input, "UDL = X", format!("{back:?}")));
    }
    let one = AlgebraElement::one(alg);
    expect_eq(&input, &one, &ok(&input, gber0(&u))?)?;
    expect_eq(&input, &one, &ok(&input, gber0(&l))?)
}

/// Block-diagonal: gdet0(X00) gdet0(X11)^-1; block-unitriangular: 1.
pub fn check_gber_special_values(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 4);
    let (r0, r1) = odd_split(alg, n, rng);
    let nu = parity_sorted_degrees(alg, r0, r1, rng);
    let (nu0, nu1) = (nu[..r0].to_vec(), nu[r0..].to_vec());
    let zero = zero_matrix_degree(alg);
    let a = need("block", invertible_matrix(alg, &nu0, &zero, rng), "an invertible block")?;
    let d = need("block", invertible_matrix(alg, &nu1, &zero, rng), "an invertible block")?;
    let z01 = GradedMatrix::zeros(alg, nu0.clone(), nu1.clone());
    let z10 = GradedMatrix::zeros(alg, nu1.clone(), nu0.clone());
    let diag = ok("blocks", GradedMatrix::from_blocks(&a, &z01, &z10, &d))?;
    let input = text(&diag);
    let expected = &ok(&input, gdet0(&a))? * &ok(&input, ok(&input, gdet0(&d))?.inverse())?;
    expect_eq(&input, &expected, &ok(&input, gber0(&diag))?)?;
    let b = homogeneous_matrix(alg, &nu, &zero, 0.6, rng);
    let one = AlgebraElement::one(alg);
    let upper = ok(&input, GradedMatrix::from_blocks(
        &GradedMatrix::identity(alg, nu0.clone()),
        &b.submatrix(0..r0, r0..n),
        &z10,
        &GradedMatrix::identity(alg, nu1.clone()),
    ))?;
    let lower = ok(&input, GradedMatrix::from_blocks(
        &GradedMatrix::identity(alg, nu0),
        &z01,
        &b.submatrix(r0..n, 0..r0),
        &GradedMatrix::identity(alg, nu1),
    ))?;
    expect_eq(&text(&upper), &one, &ok(&input, gber0(&upper))?)?;
    expect_eq(&text(&lower), &one, &ok(&input, gber0(&lower))?)
}

/// Random homogeneous invertible quaternionic matrix, n in {2, 3}, through
/// dieudonne_norm_check.
pub fn check_dieudonne(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = rng.gen_range(2..=3);
    let nu = same_parity_degrees(alg, n, rng);
    let dx = even_support_degree(alg, rng);
    let x = need("quaternionic", invertible_matrix(alg, &nu, &dx, rng), "an invertible matrix")?;
    let report = dieudonne_norm_check(&x);
    match report.failures.into_iter().next() {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

/// Classical Leibniz over the commutative twisted algebra is independent
/// of the order of factors in each term.
pub fn check_commutative_leibniz(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let sigma = ok("sigma", alg.canonical_multiplier())?;
    let twisted = ok("twist", alg.twist(&sigma))?;
    let n = random_n(rng, 3);
    let nu = vec![twisted.group().zero(); n];
    let y = even_entry_matrix(&twisted, &nu, 0.5, rng);
    let input = text(&y);
    let det = ok(&input, leibniz_det_commutative(&y))?;
    for _ in 0..10 {
        let mut acc = AlgebraElement::zero(&twisted);
        for pi in Permutation::all(n) {
            let mut rows: Vec<usize> = (0..n).collect();
            rows.shuffle(rng);
            let mut term = AlgebraElement::one(&twisted);
            for i in rows {
                term = term * y.get(i, pi.apply(i));
            }
            acc = if pi.sign() > 0 { acc + term } else { acc - term };
        }
        expect_eq(&input, &det, &acc)?;
    }
    Ok(())
}

/// Gdet^0 conjugation invariance and the invertibility criterion.
pub fn check_conjugation_invariance(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 3);
    let nu = same_parity_degrees(alg, n, rng);
    let zero = zero_matrix_degree(alg);
    let x = homogeneous_matrix(alg, &nu, &zero, 0.6, rng);
    let p = need("gl0", invertible_matrix(alg, &nu, &zero, rng), "an invertible matrix")?;
    let input = format!("{x:?}{p:?}");
    let g = ok(&input, gdet0(&x))?;
    expect_eq(&input, &g, &ok(&input, gdet0(&ok(&input, x.change_basis(&p))?))?)?;
    if x.is_invertible() != g.is_invertible() {
        return Err(failure(&input, "X invertible iff gdet0(X) invertible", &g));
    }
    Ok(())
}

/// J(XY) = sigma(x,y)^-1 J(X) J(Y) and J(X^-1) = sigma(x,-x) J(X)^-1.
pub fn check_j_sigma_laws(alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let n = random_n(rng, 3);
    let elements = alg.group().elements();
    let nu: Vec<GroupElement> = (0..n).map(|_| elements.choose(rng).unwrap().clone()).collect();
    let support = alg.support();
    let (dx, dy) = (support.choose(rng).unwrap().clone(), support.choose(rng).unwrap().clone());
    let x = homogeneous_matrix(alg, &nu, &dx, 0.7, rng);
    let y = homogeneous_matrix(alg, &nu, &dy, 0.7, rng);
    let input = format!("{x:?}{y:?}");
    for sigma in ok(&input, alg.ns_multipliers())? {
        let twisted = ok(&input, alg.twist(&sigma))?;
        let j = |m: &GradedMatrix| j_sigma_into(m, &sigma, &twisted);
        let lhs = ok(&input, j(&ok(&input, x.matmul(&y))?))?;
        let rhs = ok(&input, ok(&input, j(&x))?.matmul(&ok(&input, j(&y))?))?
            .scale(&sigma_pow(&sigma, &dx, &dy, -1));
        if lhs != rhs {
            return Err(failure(&input, format!("{rhs:?}"), format!("{lhs:?}")));
        }
    }
    let du = even_unit_degree(alg, rng);
    if let Some(u) = invertible_matrix(alg, &nu, &du, rng) {
        let input = text(&u);
        for sigma in ok(&input, alg.ns_multipliers())? {
            let twisted = ok(&input, alg.twist(&sigma))?;
            let lhs = ok(&input, j_sigma_into(&ok(&input, u.inverse())?, &sigma, &twisted))?;
            let rhs = ok(&input, ok(&input, j_sigma_into(&u, &sigma, &twisted))?.inverse())?
                .scale(&sigma.value(&du, &-&du));
            if lhs != rhs {
                return Err(failure(&input, format!("{rhs:?}"), format!("{lhs:?}")));
            }
        }
    }
    Ok(())
}

/// Cl(0,2) is H under e1 -> j, e2 -> i, e1e2 -> -k; gdet0 commutes with it.
pub fn check_clifford_quaternion_agreement(_alg: &GradedAlgebra, rng: &mut ChaCha8Rng) -> Check {
    let h = presets::quaternions();
    let cl = ok("clifford", presets::clifford(0, 2))?;
    let to_cl = |q: &AlgebraElement| -> AlgebraElement {
        let images = [("1", "1", 1), ("j", "e1", 1), ("i", "e2", 1), ("k", "e1e2", -1)];
        let mut out = AlgebraElement::zero(&cl);
        for (src, dst, s) in images {
            let c = q.coeff(h.index_of(src).unwrap());
            out = out + cl.basis_element(dst).scale(&(&c * &CycloScalar::from_int(s)));
        }
        out
    };
    let n = random_n(rng, 4);
    let nu = same_parity_degrees(&h, n, rng);
    let x = homogeneous_matrix(&h, &nu, &h.group().zero(), 0.6, rng);
    let input = text(&x);
    let y = ok(&input, GradedMatrix::square(&cl, nu.clone(), (0..n).map(|i| x.row(i).iter().map(to_cl).collect()).collect()))?;
    expect_eq(&input, &to_cl(&ok(&input, gdet0(&x))?), &ok(&input, gdet0(&y))?)
}

pub type Property = fn(&GradedAlgebra, &mut ChaCha8Rng) -> Check;

/// Every sweepable property by name.
pub fn properties() -> Vec<(&'static str, Property)> {
    vec![
        ("gdet0_sigma_independence", check_gdet0_sigma_independence),
        ("trace_sigma_independence", check_trace_sigma_independence),
        ("gber0_sigma_independence", check_gber0_sigma_independence),
        ("gdet0_multiplicative", check_gdet0_multiplicative),
        ("gdet0_normalization", check_gdet0_normalization),
        ("ordering_formula", check_ordering_formula),
        ("crossed_route", check_crossed_route),
        ("row_decomposition", check_row_decomposition),
        ("power_law", check_power_law),
        ("inverse_law", check_inverse_law),
        ("scalar_law", check_scalar_law),
        ("heredity", check_heredity),
        ("weak_multiplicativity", check_weak_multiplicativity),
        ("row_additivity", check_row_additivity),
        ("permutation_morphism", check_permutation_morphism),
        ("sign_law", check_sign_law),
        ("trace_laws", check_trace_laws),
        ("gber0_multiplicative", check_gber0_multiplicative),
        ("gber_oracle", check_gber_oracle),
        ("udl", check_udl),
        ("gber_special_values", check_gber_special_values),
        ("commutative_leibniz", check_commutative_leibniz),
        ("conjugation_invariance", check_conjugation_invariance),
        ("j_sigma_laws", check_j_sigma_laws),
    ]
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub seed: u64,
    pub instances: usize,
    pub suite: String,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig { seed: 0, instances: 20, suite: "all".into() }
    }
}

pub const SUITES: [&str; 5] = ["quaternion", "clifford", "dual", "grassmann", "all"];

fn suite_algebras(suite: &str) -> Result<Vec<String>> {
    let names: Vec<&str> = match suite {
        "quaternion" => vec!["quaternions"],
        "clifford" => vec!["clifford:1,1", "clifford:0,2", "clifford:2,1"],
        "dual" => vec!["dual_numbers:2"],
        "grassmann" => vec!["grassmann:2", "grassmann:3"],
        "all" => vec!["quaternions", "clifford:1,1", "clifford:0,2", "clifford:2,1", "dual_numbers:2", "grassmann:2", "grassmann:3"],
        other => return Err(Error::InvalidParams(format!("unknown suite {other:?}; known: {}", SUITES.join(", ")))),
    };
    Ok(names.into_iter().map(String::from).collect())
}

/// Every property over every algebra of the suite, plus the suite-specific
/// checks. Identical configs give identical reports.
pub fn run_property_sweeps(config: &SweepConfig) -> Result<Vec<SweepReport>> {
    let mut reports = Vec::new();
    for name in suite_algebras(&config.suite)? {
        let alg = presets::preset(&name)?;
        let mut props = properties();
        if name == "quaternions" {
            props.push(("dieudonne", check_dieudonne));
        }
        if name == "clifford:0,2" {
            props.push(("quaternion_agreement", check_clifford_quaternion_agreement));
        }
        for (prop, f) in props {
            let label = format!("{name}/{prop}");
            reports.push(sweep(&label, config.seed, config.instances, |rng| f(&alg, rng)));
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn row_decomposition_on_worked_example() {
        let h = presets::quaternions();
        let g = h.group();
        for nu in [vec![g.zero(), g.el(&[1, 0, 1])], vec![g.zero(), g.zero()]] {
            let x = GradedMatrix::square(&h, nu, vec![
                vec![h.elem(&[("1", 1)]), h.elem(&[("j", 1)])],
                vec![h.elem(&[("j", 1)]), h.elem(&[("1", 1)])],
            ])
            .unwrap();
            for s in h.ns_multipliers().unwrap() {
                assert_eq!(gdet_via_row_decomposition(&x, &s).unwrap(), gdet_sigma(&x, &s).unwrap());
            }
        }
    }

    #[test]
    fn dieudonne_worked_example() {
        let h = presets::quaternions();
        let g = h.group();
        let x = GradedMatrix::square(&h, vec![g.zero(), g.el(&[1, 0, 1])], vec![
            vec![h.elem(&[("1", 1)]), h.elem(&[("j", 1)])],
            vec![h.elem(&[("j", 1)]), h.elem(&[("1", 1)])],
        ])
        .unwrap();
        assert_eq!(embedded_determinant(&x).unwrap(), CycloScalar::from_int(4));
        assert!(dieudonne_norm_check(&x).passed());
        let q = h.elem(&[("1", 1), ("i", 2), ("j", -1), ("k", 3)]);
        let m = quaternion_embedding(&q).unwrap();
        let det = &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]);
        assert_eq!(det, CycloScalar::from_int(15));
        assert_eq!(quaternion_norm(&q), h.elem(&[("1", 15)]));
    }

    #[test]
    fn sweeps_are_reproducible() {
        let cfg = SweepConfig { seed: 3, instances: 2, suite: "dual".into() };
        let a = run_property_sweeps(&cfg).unwrap();
        let b = run_property_sweeps(&cfg).unwrap();
        assert_eq!(a, b);
        for r in &a {
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn unknown_suite() {
        let cfg = SweepConfig { suite: "nope".into(), ..Default::default() };
        assert!(run_property_sweeps(&cfg).is_err());
    }
}
