//! Graded determinants: Gdet^0 on degree-0 matrices and the family
//! Gdet_sigma = det o J_sigma on matrices with even entries.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{AlgebraElement, GradedAlgebra, Homogeneity};
use crate::error::{Error, Result};
use crate::gmatrix::{j_sigma_into, units_for, GradedMatrix};
use crate::grading::{is_ns_multiplier, GroupElement, Multiplier};
use crate::permutation::Permutation;
use crate::presets::even_crossed_product;

/// A permutation together with an order in which to visit its rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ordering {
    pub perm: Permutation,
    pub sequence: Vec<usize>,
}

impl Ordering {
    /// Lists each cycle of pi consecutively: pi(s_k) = s_(k+1) inside a
    /// cycle, and the last element of a cycle maps back to its first.
    pub fn is_valid(&self) -> bool {
        let n = self.perm.len();
        let s = &self.sequence;
        let mut seen = vec![false; n];
        if s.len() != n || !s.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true)) {
            return false;
        }
        let mut start = 0;
        for k in 0..n {
            let next = self.perm.apply(s[k]);
            if k + 1 < n && next == s[k + 1] {
                continue;
            }
            if next != s[start] {
                return false;
            }
            start = k + 1;
        }
        true
    }
}

/// Cycles sorted by least element, each started at its least element.
pub fn canonical_ordering(pi: &Permutation) -> Ordering {
    Ordering { perm: pi.clone(), sequence: pi.cycles().concat() }
}

/// Cycles in random order, each rotated to a random starting point.
pub fn random_ordering<R: Rng + ?Sized>(pi: &Permutation, rng: &mut R) -> Ordering {
    let mut cycles = pi.cycles();
    cycles.shuffle(rng);
    for c in cycles.iter_mut() {
        let r = rng.gen_range(0..c.len());
        c.rotate_left(r);
    }
    Ordering { perm: pi.clone(), sequence: cycles.concat() }
}

fn check_square(x: &GradedMatrix) -> Result<()> {
    if x.rows() != x.cols() {
        return Err(Error::NotSquare);
    }
    if x.row_degrees() != x.col_degrees() {
        return Err(Error::DegreeMismatch("row and column degree vectors must agree".into()));
    }
    Ok(())
}

fn check_degree_zero(x: &GradedMatrix) -> Result<()> {
    match x.homogeneity() {
        Homogeneity::Zero => Ok(()),
        Homogeneity::Homogeneous(g) if g.is_zero() => Ok(()),
        _ => Err(Error::NotDegreeZero),
    }
}

fn check_even_entries(x: &GradedMatrix) -> Result<()> {
    match x.first_odd_entry() {
        Some((i, j)) => Err(Error::OddEntries(i, j)),
        None => Ok(()),
    }
}

/// sum over pi of sgn(pi) Y_(0,pi(0)) ... Y_(n-1,pi(n-1)), multiplied in row order.
pub fn leibniz_rows(y: &GradedMatrix) -> AlgebraElement {
    let alg = y.algebra();
    let n = y.rows();
    let mut acc = AlgebraElement::zero(alg);
    let mut used = vec![false; n];
    expand(y, 0, &AlgebraElement::one(alg), 1, &mut used, &mut acc);
    return acc;

    fn expand(
        y: &GradedMatrix,
        row: usize,
        prefix: &AlgebraElement,
        sign: i64,
        used: &mut [bool],
        acc: &mut AlgebraElement,
    ) {
        let n = y.rows();
        if row == n {
            *acc = if sign > 0 { &*acc + prefix } else { &*acc - prefix };
            return;
        }
        // sign of the partial permutation: count used columns to the right
        for col in 0..n {
            if used[col] || y.get(row, col).is_zero() {
                continue;
            }
            let inversions = used[col + 1..].iter().filter(|&&u| u).count();
            let s = if inversions % 2 == 0 { sign } else { -sign };
            let next = prefix * y.get(row, col);
            if next.is_zero() {
                continue;
            }
            used[col] = true;
            expand(y, row + 1, &next, s, used, acc);
            used[col] = false;
        }
    }
}

/// Gdet_sigma(X) = det(J_sigma X), the determinant taken with the twisted
/// product; the result is read back in A (same coefficients).
pub fn gdet_sigma(x: &GradedMatrix, sigma: &Multiplier) -> Result<AlgebraElement> {
    check_square(x)?;
    check_even_entries(x)?;
    let alg = x.algebra();
    if !is_ns_multiplier(alg.lambda(), sigma) {
        return Err(Error::NotNsMultiplier);
    }
    gdet_sigma_unchecked(x, sigma)
}

fn gdet_sigma_unchecked(x: &GradedMatrix, sigma: &Multiplier) -> Result<AlgebraElement> {
    let alg = x.algebra();
    let twisted = alg.twist(sigma)?;
    let y = j_sigma_into(x, sigma, &twisted)?;
    leibniz_rows(&y).reinterpret(alg)
}

/// Gdet^0 computed with a chosen sigma in S(lambda); equal for every choice.
pub fn gdet0_with(x: &GradedMatrix, sigma: &Multiplier) -> Result<AlgebraElement> {
    check_square(x)?;
    check_degree_zero(x)?;
    gdet_sigma(x, sigma)
}

/// Gdet^0 with the algebra's canonical multiplier.
pub fn gdet0(x: &GradedMatrix) -> Result<AlgebraElement> {
    check_square(x)?;
    check_degree_zero(x)?;
    check_even_entries(x)?;
    let sigma = x.algebra().canonical_multiplier()?;
    gdet_sigma_unchecked(x, &sigma)
}

/// sum_pi sgn(pi) X_(s1, pi(s1)) ... X_(sn, pi(sn)) with s an ordering of
/// pi, multiplied in A in exactly that order. Canonical orderings are used
/// where `orderings` is None.
pub fn gdet0_leibniz(
    x: &GradedMatrix,
    orderings: Option<&dyn Fn(&Permutation) -> Ordering>,
) -> Result<AlgebraElement> {
    check_square(x)?;
    check_degree_zero(x)?;
    check_even_entries(x)?;
    let alg = x.algebra();
    let n = x.rows();
    let mut acc = AlgebraElement::zero(alg);
    for pi in Permutation::all(n) {
        if (0..n).any(|i| x.get(i, pi.apply(i)).is_zero()) {
            continue;
        }
        let ord = match orderings {
            Some(f) => f(&pi),
            None => canonical_ordering(&pi),
        };
        if ord.perm != pi || !ord.is_valid() {
            return Err(Error::InvalidOrdering(format!("{:?} for {pi}", ord.sequence)));
        }
        let mut term = AlgebraElement::one(alg);
        for &i in &ord.sequence {
            term = term * x.get(i, pi.apply(i));
        }
        acc = if pi.sign() > 0 { acc + term } else { acc - term };
    }
    Ok(acc)
}

/// Algebra in which every degree of `nu` has a homogeneous unit: A itself
/// when possible, else A (x) (crossed product on the even subgroup).
pub(crate) struct UnitExtension {
    pub base: GradedAlgebra,
    pub ext: GradedAlgebra,
    factor: Option<GradedAlgebra>,
}

impl UnitExtension {
    pub fn new(base: &GradedAlgebra, nu: &[GroupElement]) -> Result<Self> {
        if units_for(base, nu).is_ok() {
            return Ok(UnitExtension { base: base.clone(), ext: base.clone(), factor: None });
        }
        if let Some(g) = nu.iter().find(|g| base.is_odd_degree(g)) {
            return Err(Error::NotCrossedProduct(g.to_string()));
        }
        let cp = even_crossed_product(base.lambda())?;
        let ext = base.graded_tensor(&cp)?;
        Ok(UnitExtension { base: base.clone(), ext, factor: Some(cp) })
    }

    pub fn embed(&self, a: &AlgebraElement) -> AlgebraElement {
        match &self.factor {
            None => a.clone(),
            Some(cp) => self.base.embed_left(&self.ext, cp, a),
        }
    }

    pub fn embed_matrix(&self, x: &GradedMatrix) -> GradedMatrix {
        GradedMatrix::from_fn(&self.ext, x.row_degrees().to_vec(), x.col_degrees().to_vec(), |i, j| {
            self.embed(x.get(i, j))
        })
    }

    pub fn project(&self, b: &AlgebraElement) -> Option<AlgebraElement> {
        match &self.factor {
            None => Some(b.clone()),
            Some(cp) => self.base.project_left(cp, b),
        }
    }
}

/// Classical Leibniz determinant for pairwise commuting entries.
pub fn leibniz_det_commutative(y: &GradedMatrix) -> Result<AlgebraElement> {
    if y.rows() != y.cols() {
        return Err(Error::NotSquare);
    }
    let n = y.rows();
    let cells: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| !y.get(i, j).is_zero()).collect();
    for (a, &(i, j)) in cells.iter().enumerate() {
        for &(k, l) in &cells[a + 1..] {
            let (p, q) = (y.get(i, j), y.get(k, l));
            if p * q != q * p {
                return Err(Error::NonCommutingEntries(i, j, k, l));
            }
        }
    }
    Ok(leibniz_rows(y))
}

/// Degrees nu_i - nu_1: units in these degrees serve as t_nu_i, and they
/// are even whenever the entries of a degree-0 matrix are.
pub(crate) fn relative_degrees(nu: &[GroupElement]) -> Vec<GroupElement> {
    match nu.first() {
        Some(base) => nu.iter().map(|g| g - base).collect(),
        None => Vec::new(),
    }
}

/// Gdet^0 through the crossed-product route: det(P X P^-1) over A^0 with
/// P = diag(t_1, ..., t_n), t_i a homogeneous unit of degree nu_i - nu_1.
pub fn gdet0_via_crossed(x: &GradedMatrix) -> Result<AlgebraElement> {
    check_square(x)?;
    check_degree_zero(x)?;
    check_even_entries(x)?;
    let rel = relative_degrees(x.row_degrees());
    let ext = UnitExtension::new(x.algebra(), &rel)?;
    let units = units_for(&ext.ext, &rel).map_err(|e| match e {
        Error::MissingUnit(g) => Error::NotCrossedProduct(g),
        other => other,
    })?;
    let xb = ext.embed_matrix(x);
    let t: Vec<AlgebraElement> = rel.iter().map(|g| units[g].clone()).collect();
    let tinv: Vec<AlgebraElement> = t.iter().map(|u| u.inverse()).collect::<Result<_>>()?;
    let zero = ext.ext.group().zero();
    let n = rel.len();
    let m = GradedMatrix::from_fn(&ext.ext, vec![zero.clone(); n], vec![zero; n], |i, j| {
        &(&t[i] * xb.get(i, j)) * &tinv[j]
    });
    let det = leibniz_det_commutative(&m)?;
    ext.project(&det).ok_or(Error::NotCrossedProduct("result left A".into()))
}
