//! Seeded random instances: sparse elements with small rational
//! coefficients, graded matrices, invertible matrices by rejection.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::gmatrix::GradedMatrix;
use crate::grading::GroupElement;
use crate::scalars::CycloScalar;

/// Independent stream for one instance of one property.
pub fn instance_rng(seed: u64, property: &str, index: usize) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(property.as_bytes());
    h.update((index as u64).to_le_bytes());
    let digest = h.finalize();
    let mut bytes = [0u8; 32];
    bytes.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(bytes)
}

/// Nonzero rational with numerator and denominator at most 10 in size,
/// usually an integer.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> CycloScalar {
    let mut n: i64 = rng.gen_range(1..=10);
    if rng.gen_bool(0.5) {
        n = -n;
    }
    let d: i64 = if rng.gen_bool(0.75) { 1 } else { rng.gen_range(2..=10) };
    CycloScalar::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
}

/// Random element of A^g; each basis vector of that degree is kept with
/// probability `density`.
pub fn homogeneous_element<R: Rng + ?Sized>(
    alg: &GradedAlgebra,
    g: &GroupElement,
    density: f64,
    rng: &mut R,
) -> AlgebraElement {
    let terms: Vec<(usize, CycloScalar)> = alg
        .basis_of_degree(g)
        .into_iter()
        .filter_map(|i| rng.gen_bool(density).then(|| (i, small_rational(rng))))
        .collect();
    AlgebraElement::from_coeffs(alg, terms)
}

/// Nonzero random element of A^g (None if A^g = 0).
pub fn nonzero_homogeneous<R: Rng + ?Sized>(alg: &GradedAlgebra, g: &GroupElement, rng: &mut R) -> Option<AlgebraElement> {
    if alg.basis_of_degree(g).is_empty() {
        return None;
    }
    loop {
        let e = homogeneous_element(alg, g, 0.7, rng);
        if !e.is_zero() {
            return Some(e);
        }
    }
}

/// Invertible element of A^g by rejection, if one turns up.
pub fn invertible_homogeneous<R: Rng + ?Sized>(alg: &GradedAlgebra, g: &GroupElement, rng: &mut R) -> Option<AlgebraElement> {
    for _ in 0..50 {
        let e = nonzero_homogeneous(alg, g, rng)?;
        if e.is_invertible() {
            return Some(e);
        }
    }
    None
}

/// Random element spread over the degrees in `degrees`.
pub fn element_over<R: Rng + ?Sized>(
    alg: &GradedAlgebra,
    degrees: &[GroupElement],
    density: f64,
    rng: &mut R,
) -> AlgebraElement {
    let mut e = AlgebraElement::zero(alg);
    for g in degrees {
        e = e + homogeneous_element(alg, g, density, rng);
    }
    e
}

/// Degrees of the support of A with the given parity.
pub fn support_of_parity(alg: &GradedAlgebra, odd: bool) -> Vec<GroupElement> {
    alg.support().into_iter().filter(|g| alg.is_odd_degree(g) == odd).collect()
}

/// All group elements of the given parity.
pub fn group_of_parity(alg: &GradedAlgebra, odd: bool) -> Vec<GroupElement> {
    alg.group().elements().into_iter().filter(|g| alg.is_odd_degree(g) == odd).collect()
}

/// n degrees from one parity class, all differing by even support degrees,
/// so every degree-0 matrix over them has even entries and room to be
/// nonzero off the diagonal.
pub fn same_parity_degrees<R: Rng + ?Sized>(alg: &GradedAlgebra, n: usize, rng: &mut R) -> Vec<GroupElement> {
    let base = alg.group().elements().choose(rng).cloned().expect("nonempty group");
    let even = support_of_parity(alg, false);
    (0..n).map(|_| &base + even.choose(rng).expect("0 is in the support")).collect()
}

/// r0 even degrees followed by r1 odd degrees.
pub fn parity_sorted_degrees<R: Rng + ?Sized>(alg: &GradedAlgebra, r0: usize, r1: usize, rng: &mut R) -> Vec<GroupElement> {
    let even = group_of_parity(alg, false);
    let odd = group_of_parity(alg, true);
    let mut nu: Vec<GroupElement> = (0..r0).map(|_| even.choose(rng).unwrap().clone()).collect();
    if !odd.is_empty() {
        nu.extend((0..r1).map(|_| odd.choose(rng).unwrap().clone()));
    }
    nu
}

/// Homogeneous matrix of degree x over the square degree vector nu.
pub fn homogeneous_matrix<R: Rng + ?Sized>(
    alg: &GradedAlgebra,
    nu: &[GroupElement],
    x: &GroupElement,
    density: f64,
    rng: &mut R,
) -> GradedMatrix {
    GradedMatrix::from_fn(alg, nu.to_vec(), nu.to_vec(), |i, j| {
        homogeneous_element(alg, &(&(x - &nu[i]) + &nu[j]), density, rng)
    })
}

/// Inhomogeneous matrix whose entries only use even degrees.
pub fn even_entry_matrix<R: Rng + ?Sized>(alg: &GradedAlgebra, nu: &[GroupElement], density: f64, rng: &mut R) -> GradedMatrix {
    let even = support_of_parity(alg, false);
    GradedMatrix::from_fn(alg, nu.to_vec(), nu.to_vec(), |_, _| element_over(alg, &even, density, rng))
}

/// Invertible homogeneous matrix of degree x by rejection sampling.
pub fn invertible_matrix<R: Rng + ?Sized>(
    alg: &GradedAlgebra,
    nu: &[GroupElement],
    x: &GroupElement,
    rng: &mut R,
) -> Option<GradedMatrix> {
    for attempt in 0..200 {
        let density = if attempt < 100 { 0.6 } else { 0.9 };
        let m = homogeneous_matrix(alg, nu, x, density, rng);
        if m.is_invertible() {
            return Some(m);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    #[test]
    fn reproducible_streams() {
        let a: u64 = instance_rng(7, "p", 3).gen();
        let b: u64 = instance_rng(7, "p", 3).gen();
        let c: u64 = instance_rng(7, "p", 4).gen();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn generated_matrices_have_their_degree() {
        let h = presets::quaternions();
        let mut rng = instance_rng(1, "t", 0);
        for _ in 0..10 {
            let nu = same_parity_degrees(&h, 3, &mut rng);
            let x = h.support().choose(&mut rng).unwrap().clone();
            let m = invertible_matrix(&h, &nu, &x, &mut rng).unwrap();
            assert!(m.is_homogeneous_of(&x));
        }
    }
}
