//! Parity blocks, UDL factorization and the graded Berezinian.

use crate::algebra::{AlgebraElement, GradedAlgebra, Homogeneity};
use crate::error::{Error, Result};
use crate::gdet::{gdet_sigma, leibniz_rows};
use crate::gmatrix::{j_sigma, GradedMatrix};
use crate::grading::{GroupElement, Multiplier};
use crate::scalars::CycloScalar;

#[derive(Clone, Debug)]
pub struct ParityBlocks {
    pub x00: GradedMatrix,
    pub x01: GradedMatrix,
    pub x10: GradedMatrix,
    pub x11: GradedMatrix,
    pub even_degrees: Vec<GroupElement>,
    pub odd_degrees: Vec<GroupElement>,
}

impl ParityBlocks {
    pub fn r0(&self) -> usize {
        self.even_degrees.len()
    }

    pub fn r1(&self) -> usize {
        self.odd_degrees.len()
    }
}

/// Split X along its parity-sorted degree vector.
pub fn parity_blocks(x: &GradedMatrix) -> Result<ParityBlocks> {
    if !x.is_square() {
        return Err(Error::NotSquare);
    }
    let lambda = x.algebra().lambda();
    let nu = x.row_degrees();
    let r0 = nu.iter().take_while(|g| !lambda.is_odd(g)).count();
    if nu[r0..].iter().any(|g| !lambda.is_odd(g)) {
        return Err(Error::NotParitySorted);
    }
    let n = nu.len();
    Ok(ParityBlocks {
        x00: x.submatrix(0..r0, 0..r0),
        x01: x.submatrix(0..r0, r0..n),
        x10: x.submatrix(r0..n, 0..r0),
        x11: x.submatrix(r0..n, r0..n),
        even_degrees: nu[..r0].to_vec(),
        odd_degrees: nu[r0..].to_vec(),
    })
}

/// Degree x of a homogeneous matrix of even degree (0 for the zero matrix).
fn even_degree(x: &GradedMatrix) -> Result<GroupElement> {
    let alg = x.algebra();
    match x.homogeneity() {
        Homogeneity::Zero => Ok(alg.group().zero()),
        Homogeneity::Homogeneous(g) if !alg.lambda().is_odd(&g) => Ok(g),
        _ => Err(Error::OddDegree),
    }
}

fn schur_complement(b: &ParityBlocks, x11_inv: &GradedMatrix) -> Result<GradedMatrix> {
    let corr = b.x01.matmul(x11_inv)?.matmul(&b.x10)?;
    b.x00.try_sub(&corr)
}

/// X = U D L with U, L block unitriangular and D block diagonal.
pub fn udl(x: &GradedMatrix) -> Result<(GradedMatrix, GradedMatrix, GradedMatrix)> {
    let b = parity_blocks(x)?;
    let deg = even_degree(x)?;
    let alg = x.algebra();
    let (nu0, nu1) = (b.even_degrees.clone(), b.odd_degrees.clone());
    let x11_inv = b.x11.inverse().map_err(|_| Error::SingularOddBlock)?;
    let s = schur_complement(&b, &x11_inv)?;
    let u = GradedMatrix::from_blocks(
        &GradedMatrix::identity(alg, nu0.clone()),
        &b.x01.matmul(&x11_inv)?,
        &GradedMatrix::zeros(alg, nu1.clone(), nu0.clone()),
        &GradedMatrix::identity(alg, nu1.clone()),
    )?;
    let d = GradedMatrix::from_blocks(
        &s,
        &GradedMatrix::zeros(alg, nu0.clone(), nu1.clone()),
        &GradedMatrix::zeros(alg, nu1.clone(), nu0.clone()),
        &b.x11,
    )?;
    let l = GradedMatrix::from_blocks(
        &GradedMatrix::identity(alg, nu0.clone()),
        &GradedMatrix::zeros(alg, nu0, nu1.clone()),
        &x11_inv.matmul(&b.x10)?,
        &GradedMatrix::identity(alg, nu1),
    )?;
    let zero = alg.group().zero();
    assert!(u.is_homogeneous_of(&zero) && l.is_homogeneous_of(&zero));
    assert!(d.is_zero() || d.is_homogeneous_of(&deg));
    Ok((u, d, l))
}

/// sigma(x, x)^(-r1 (r0 - r1)).
pub fn berezinian_prefactor(sigma: &Multiplier, x: &GroupElement, r0: usize, r1: usize) -> CycloScalar {
    let n = sigma.root_order() as i64;
    let e = -(r1 as i64) * (r0 as i64 - r1 as i64) * sigma.exponent(x, x) as i64;
    CycloScalar::cyclo(e.rem_euclid(n), sigma.root_order())
}

/// Gber_sigma(X) = prefactor * Gdet_sigma(S) * Gdet_sigma(X11)^-1 with S
/// the Schur complement of the odd block.
pub fn gber(x: &GradedMatrix, sigma: &Multiplier) -> Result<AlgebraElement> {
    let b = parity_blocks(x)?;
    let deg = even_degree(x)?;
    let singular = |e: Error| match e {
        Error::NotInvertible | Error::Singular | Error::SingularOddBlock => Error::Singular,
        other => other,
    };
    let x11_inv = b.x11.inverse().map_err(singular)?;
    let s = schur_complement(&b, &x11_inv)?;
    let g_s = gdet_sigma(&s, sigma)?;
    let g_11 = gdet_sigma(&b.x11, sigma)?;
    if !g_s.is_invertible() {
        return Err(Error::Singular);
    }
    let g_11_inv = g_11.inverse().map_err(singular)?;
    let pref = berezinian_prefactor(sigma, &deg, b.r0(), b.r1());
    Ok((&g_s * &g_11_inv).scale(&pref))
}

/// Gber^0: Gber_sigma on degree-0 matrices with the canonical multiplier.
pub fn gber0(x: &GradedMatrix) -> Result<AlgebraElement> {
    match x.homogeneity() {
        Homogeneity::Zero => {}
        Homogeneity::Homogeneous(g) if g.is_zero() => {}
        _ => return Err(Error::NotDegreeZero),
    }
    gber(x, &x.algebra().canonical_multiplier()?)
}

fn is_supercommutative(alg: &GradedAlgebra) -> bool {
    let lambda = alg.lambda();
    let support = alg.support();
    support.iter().all(|a| {
        support.iter().all(|b| {
            let both_odd = lambda.is_odd(a) && lambda.is_odd(b);
            lambda.value(a, b) == CycloScalar::from_int(if both_odd { -1 } else { 1 })
        })
    })
}

/// Classical Berezinian det(Y00 - Y01 Y11^-1 Y10) det(Y11)^-1 of an even
/// supermatrix over a supercommutative algebra.
pub fn ber_super(y: &GradedMatrix) -> Result<AlgebraElement> {
    let alg = y.algebra();
    if !is_supercommutative(alg) {
        return Err(Error::InvalidCommutationFactor("algebra is not supercommutative".into()));
    }
    let b = parity_blocks(y)?;
    if let Some((i, j)) = b.x00.first_odd_entry() {
        return Err(Error::OddEntries(i, j));
    }
    if let Some((i, j)) = b.x11.first_odd_entry() {
        return Err(Error::OddEntries(i + b.r0(), j + b.r0()));
    }
    let x11_inv = b.x11.inverse().map_err(|_| Error::Singular)?;
    let s = schur_complement(&b, &x11_inv)?;
    let d11 = leibniz_rows(&b.x11).inverse().map_err(|_| Error::Singular)?;
    Ok(&leibniz_rows(&s) * &d11)
}

/// ber_super(J_sigma X), read back in A.
pub fn gber_via_super(x: &GradedMatrix, sigma: &Multiplier) -> Result<AlgebraElement> {
    ber_super(&j_sigma(x, sigma)?)?.reinterpret(x.algebra())
}

/// T_pi: the same entries with every row and column degree shifted by pi.
pub fn degree_shift(x: &GradedMatrix, pi: &GroupElement) -> GradedMatrix {
    let shift = |v: &[GroupElement]| v.iter().map(|g| g + pi).collect::<Vec<_>>();
    GradedMatrix::from_fn(x.algebra(), shift(x.row_degrees()), shift(x.col_degrees()), |i, j| {
        x.get(i, j).clone()
    })
}
