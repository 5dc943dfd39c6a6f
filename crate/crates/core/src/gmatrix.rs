//! Graded matrices: entry (i, j) of a degree-x matrix lies in A^(x - mu_i + nu_j).

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{AlgebraElement, GradedAlgebra, Homogeneity};
use crate::error::{Error, Result};
use crate::grading::{Bicharacter, GroupElement, Multiplier};
use crate::linalg;
use crate::permutation::Permutation;
use crate::scalars::CycloScalar;

#[derive(Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    algebra: GradedAlgebra,
    row_degrees: Vec<GroupElement>,
    col_degrees: Vec<GroupElement>,
    entries: Vec<AlgebraElement>,
}

/// Multiset of degrees in a degree vector.
pub fn gamma_rank(degrees: &[GroupElement]) -> BTreeMap<GroupElement, usize> {
    let mut out = BTreeMap::new();
    for g in degrees {
        *out.entry(g.clone()).or_insert(0) += 1;
    }
    out
}

/// (number of even degrees, number of odd degrees).
pub fn superrank(degrees: &[GroupElement], lambda: &Bicharacter) -> (usize, usize) {
    let odd = degrees.iter().filter(|g| lambda.is_odd(g)).count();
    (degrees.len() - odd, odd)
}

impl GradedMatrix {
    pub fn new(
        algebra: &GradedAlgebra,
        row_degrees: Vec<GroupElement>,
        col_degrees: Vec<GroupElement>,
        rows: Vec<Vec<AlgebraElement>>,
    ) -> Result<Self> {
        if rows.len() != row_degrees.len() || rows.iter().any(|r| r.len() != col_degrees.len()) {
            return Err(Error::DegreeMismatch(format!(
                "entries do not form a {}x{} array",
                row_degrees.len(),
                col_degrees.len()
            )));
        }
        if row_degrees.iter().chain(&col_degrees).any(|g| g.group() != algebra.group()) {
            return Err(Error::IncompatibleGroups);
        }
        let entries: Vec<AlgebraElement> = rows.into_iter().flatten().collect();
        if entries.iter().any(|e| e.algebra() != algebra) {
            return Err(Error::MixedAlgebras);
        }
        Ok(GradedMatrix { algebra: algebra.clone(), row_degrees, col_degrees, entries })
    }

    /// Square matrix with mu = nu.
    pub fn square(algebra: &GradedAlgebra, degrees: Vec<GroupElement>, rows: Vec<Vec<AlgebraElement>>) -> Result<Self> {
        Self::new(algebra, degrees.clone(), degrees, rows)
    }

    pub fn from_fn(
        algebra: &GradedAlgebra,
        row_degrees: Vec<GroupElement>,
        col_degrees: Vec<GroupElement>,
        mut f: impl FnMut(usize, usize) -> AlgebraElement,
    ) -> Self {
        let (m, n) = (row_degrees.len(), col_degrees.len());
        let entries = (0..m * n).map(|k| f(k / n.max(1), k % n.max(1))).collect();
        GradedMatrix { algebra: algebra.clone(), row_degrees, col_degrees, entries }
    }

    pub fn zeros(algebra: &GradedAlgebra, row_degrees: Vec<GroupElement>, col_degrees: Vec<GroupElement>) -> Self {
        Self::from_fn(algebra, row_degrees, col_degrees, |_, _| AlgebraElement::zero(algebra))
    }

    pub fn identity(algebra: &GradedAlgebra, degrees: Vec<GroupElement>) -> Self {
        Self::from_fn(algebra, degrees.clone(), degrees, |i, j| {
            if i == j {
                AlgebraElement::one(algebra)
            } else {
                AlgebraElement::zero(algebra)
            }
        })
    }

    pub fn diagonal(algebra: &GradedAlgebra, degrees: Vec<GroupElement>, diag: Vec<AlgebraElement>) -> Self {
        assert_eq!(degrees.len(), diag.len());
        Self::from_fn(algebra, degrees.clone(), degrees, |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                AlgebraElement::zero(algebra)
            }
        })
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn rows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn cols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn row_degrees(&self) -> &[GroupElement] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[GroupElement] {
        &self.col_degrees
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i * self.cols() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: AlgebraElement) {
        assert!(value.algebra() == &self.algebra, "entry from another algebra");
        let n = self.cols();
        self.entries[i * n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[AlgebraElement] {
        let n = self.cols();
        &self.entries[i * n..(i + 1) * n]
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols() && self.row_degrees == self.col_degrees
    }

    /// Degree the (i, j) entry must have in a matrix of degree x.
    pub fn entry_degree(&self, x: &GroupElement, i: usize, j: usize) -> GroupElement {
        &(x - &self.row_degrees[i]) + &self.col_degrees[j]
    }

    /// Matrix degree carried by a degree-delta component of entry (i, j).
    pub fn matrix_degree(&self, delta: &GroupElement, i: usize, j: usize) -> GroupElement {
        &(delta + &self.row_degrees[i]) - &self.col_degrees[j]
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut found: Option<GroupElement> = None;
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                for (k, _) in self.get(i, j).terms() {
                    let x = self.matrix_degree(self.algebra.degree(k), i, j);
                    match &found {
                        None => found = Some(x),
                        Some(y) if *y != x => return Homogeneity::Inhomogeneous,
                        _ => {}
                    }
                }
            }
        }
        found.map_or(Homogeneity::Zero, Homogeneity::Homogeneous)
    }

    pub fn is_homogeneous_of(&self, x: &GroupElement) -> bool {
        (0..self.rows()).all(|i| (0..self.cols()).all(|j| self.get(i, j).is_homogeneous_of(&self.entry_degree(x, i, j))))
    }

    /// Components by matrix degree; they sum to self.
    pub fn homogeneous_components(&self) -> BTreeMap<GroupElement, GradedMatrix> {
        let mut out: BTreeMap<GroupElement, GradedMatrix> = BTreeMap::new();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                for (delta, part) in self.get(i, j).homogeneous_components() {
                    let x = self.matrix_degree(&delta, i, j);
                    out.entry(x)
                        .or_insert_with(|| {
                            Self::zeros(&self.algebra, self.row_degrees.clone(), self.col_degrees.clone())
                        })
                        .set(i, j, part);
                }
            }
        }
        out
    }

    pub fn component(&self, x: &GroupElement) -> GradedMatrix {
        Self::from_fn(&self.algebra, self.row_degrees.clone(), self.col_degrees.clone(), |i, j| {
            self.get(i, j).component(&self.entry_degree(x, i, j))
        })
    }

    /// Every entry has only even-degree components.
    pub fn first_odd_entry(&self) -> Option<(usize, usize)> {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if self.get(i, j).terms().any(|(k, _)| self.algebra.is_odd_degree(self.algebra.degree(k))) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgebraElement::is_zero)
    }

    pub fn try_add(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(GradedMatrix { entries, ..self.clone() })
    }

    pub fn try_sub(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(GradedMatrix { entries, ..self.clone() })
    }

    fn same_shape(&self, other: &GradedMatrix) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::MixedAlgebras);
        }
        if self.row_degrees != other.row_degrees || self.col_degrees != other.col_degrees {
            return Err(Error::DegreeMismatch("degree vectors differ".into()));
        }
        Ok(())
    }

    pub fn matmul(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        if self.algebra != other.algebra {
            return Err(Error::MixedAlgebras);
        }
        if self.col_degrees != other.row_degrees {
            return Err(Error::DegreeMismatch("column degrees of the left factor differ from row degrees of the right".into()));
        }
        let (m, k, n) = (self.rows(), self.cols(), other.cols());
        let mut entries = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                let mut acc = AlgebraElement::zero(&self.algebra);
                for l in 0..k {
                    let (a, b) = (self.get(i, l), other.get(l, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc + a * b;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(GradedMatrix {
            algebra: self.algebra.clone(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: other.col_degrees.clone(),
            entries,
        })
    }

    /// Left multiplication of every entry by a scalar of K.
    pub fn scale(&self, c: &CycloScalar) -> GradedMatrix {
        GradedMatrix { entries: self.entries.iter().map(|e| e.scale(c)).collect(), ..self.clone() }
    }

    /// Module action (a.X)_ij = lambda(deg a, mu_i) a X_ij.
    pub fn scalar_action(&self, a: &AlgebraElement) -> Result<GradedMatrix> {
        if a.algebra() != &self.algebra {
            return Err(Error::MixedAlgebras);
        }
        let deg = match a.degree() {
            Homogeneity::Zero => {
                return Ok(Self::zeros(&self.algebra, self.row_degrees.clone(), self.col_degrees.clone()))
            }
            Homogeneity::Homogeneous(g) => g,
            Homogeneity::Inhomogeneous => return Err(Error::InhomogeneousScalar),
        };
        let lambda = self.algebra.lambda();
        Ok(Self::from_fn(&self.algebra, self.row_degrees.clone(), self.col_degrees.clone(), |i, j| {
            (a * self.get(i, j)).scale(&lambda.value(&deg, &self.row_degrees[i]))
        }))
    }

    /// Same entries viewed over another algebra with the same basis degrees.
    pub fn reinterpret(&self, algebra: &GradedAlgebra) -> Result<GradedMatrix> {
        let entries = self.entries.iter().map(|e| e.reinterpret(algebra)).collect::<Result<_>>()?;
        Ok(GradedMatrix {
            algebra: algebra.clone(),
            row_degrees: self.row_degrees.clone(),
            col_degrees: self.col_degrees.clone(),
            entries,
        })
    }

    /// Rows `rs` and columns `cs` with their degrees.
    pub fn submatrix(&self, rs: std::ops::Range<usize>, cs: std::ops::Range<usize>) -> GradedMatrix {
        let (r0, c0) = (rs.start, cs.start);
        Self::from_fn(
            &self.algebra,
            self.row_degrees[rs].to_vec(),
            self.col_degrees[cs].to_vec(),
            |i, j| self.get(r0 + i, c0 + j).clone(),
        )
    }

    /// [[a, b], [c, d]] from blocks with compatible degree vectors.
    pub fn from_blocks(a: &GradedMatrix, b: &GradedMatrix, c: &GradedMatrix, d: &GradedMatrix) -> Result<GradedMatrix> {
        if a.row_degrees != b.row_degrees
            || c.row_degrees != d.row_degrees
            || a.col_degrees != c.col_degrees
            || b.col_degrees != d.col_degrees
        {
            return Err(Error::DegreeMismatch("blocks do not fit together".into()));
        }
        let rows: Vec<GroupElement> = a.row_degrees.iter().chain(&c.row_degrees).cloned().collect();
        let cols: Vec<GroupElement> = a.col_degrees.iter().chain(&b.col_degrees).cloned().collect();
        let (ra, ca) = (a.rows(), a.cols());
        Ok(Self::from_fn(&a.algebra, rows, cols, |i, j| match (i < ra, j < ca) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - ca).clone(),
            (false, true) => c.get(i - ra, j).clone(),
            (false, false) => d.get(i - ra, j - ca).clone(),
        }))
    }

    /// Exact inverse through the regular representation of A on A^n.
    pub fn inverse(&self) -> Result<GradedMatrix> {
        if self.rows() != self.cols() {
            return Err(Error::NotSquare);
        }
        let n = self.rows();
        let alg = &self.algebra;
        let d = alg.dim();
        if n == 0 {
            return Ok(self.clone());
        }
        // column (j, b) of the big matrix is X applied to e_b placed in slot j
        let mut big = vec![vec![CycloScalar::zero(); n * d]; n * d];
        for j in 0..n {
            for b in 0..d {
                let col = j * d + b;
                for i in 0..n {
                    for (a, c) in self.get(i, j).terms() {
                        for (k, s) in alg.product(a, b) {
                            let r = i * d + k;
                            big[r][col] = &big[r][col] + &(c * s);
                        }
                    }
                }
            }
        }
        let u = alg.unit_index();
        let mut rhs = vec![vec![CycloScalar::zero(); n]; n * d];
        for c in 0..n {
            rhs[c * d + u][c] = CycloScalar::one();
        }
        let sol = linalg::solve_multi(big, rhs).ok_or(Error::Singular)?;
        let inv = Self::from_fn(alg, self.col_degrees.clone(), self.row_degrees.clone(), |i, c| {
            AlgebraElement::from_coeffs(alg, (0..d).map(|b| (b, sol[i * d + b][c].clone())))
        });
        let left = inv.matmul(self)?;
        if left != Self::identity(alg, self.col_degrees.clone()) {
            return Err(Error::Singular);
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    /// P^-1 X P for X over nu and P in Mat^0(nu x mu); the result lives over mu.
    pub fn change_basis(&self, p: &GradedMatrix) -> Result<GradedMatrix> {
        if !self.is_square() || p.row_degrees != self.col_degrees {
            return Err(Error::DegreeMismatch("P must map the new degrees onto the old ones".into()));
        }
        if !p.is_homogeneous_of(&p.algebra.group().zero()) {
            return Err(Error::DegreeMismatch("change of basis must have degree 0".into()));
        }
        p.inverse()?.matmul(self)?.matmul(p)
    }
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let degs = |v: &[GroupElement]| v.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ");
        writeln!(f, "GradedMatrix rows [{}] cols [{}]", degs(&self.row_degrees), degs(&self.col_degrees))?;
        for i in 0..self.rows() {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Factor sigma(x, nu_j) / sigma(nu_i, delta) applied to the degree-delta
/// part of entry (i, j), x being the matrix degree of that part.
fn j_factor(sigma: &Multiplier, x: &GroupElement, nu_i: &GroupElement, nu_j: &GroupElement, delta: &GroupElement) -> CycloScalar {
    let n = sigma.root_order() as i64;
    let e = sigma.exponent(x, nu_j) as i64 - sigma.exponent(nu_i, delta) as i64;
    CycloScalar::cyclo(e.rem_euclid(n), sigma.root_order())
}

/// J_sigma into an already built twist(A, sigma).
pub fn j_sigma_into(x: &GradedMatrix, sigma: &Multiplier, twisted: &GradedAlgebra) -> Result<GradedMatrix> {
    if !x.is_square() {
        return Err(Error::NotSquare);
    }
    if twisted.degrees() != x.algebra.degrees() {
        return Err(Error::MixedAlgebras);
    }
    let alg = &x.algebra;
    let nu = &x.row_degrees;
    Ok(GradedMatrix::from_fn(twisted, nu.clone(), nu.clone(), |i, j| {
        let terms = x.get(i, j).terms().map(|(k, c)| {
            let delta = alg.degree(k);
            let xd = x.matrix_degree(delta, i, j);
            (k, c * &j_factor(sigma, &xd, &nu[i], &nu[j], delta))
        });
        AlgebraElement::from_coeffs(twisted, terms.collect::<Vec<_>>())
    }))
}

/// J_sigma: Mat(nu; A) -> Mat(nu; twist(A, sigma)), componentwise.
pub fn j_sigma(x: &GradedMatrix, sigma: &Multiplier) -> Result<GradedMatrix> {
    let twisted = x.algebra.twist(sigma)?;
    j_sigma_into(x, sigma, &twisted)
}

/// Inverse of J_sigma: maps a matrix over twist(A, sigma) back over `base`.
pub fn j_sigma_inverse(y: &GradedMatrix, sigma: &Multiplier, base: &GradedAlgebra) -> Result<GradedMatrix> {
    j_sigma_into(y, &sigma.inverse(), base)
}

/// Graded trace: sum over components of sum_i lambda(nu_i, x + nu_i) X_ii.
/// Over a twisted algebra this is the supertrace.
pub fn graded_trace(x: &GradedMatrix) -> Result<AlgebraElement> {
    if !x.is_square() {
        return Err(Error::NotSquare);
    }
    let alg = &x.algebra;
    let lambda = alg.lambda();
    let mut acc = AlgebraElement::zero(alg);
    for i in 0..x.rows() {
        let nu = &x.row_degrees[i];
        for (delta, part) in x.get(i, i).homogeneous_components() {
            acc = acc + part.scale(&lambda.value(nu, &(&delta + nu)));
        }
    }
    Ok(acc)
}

/// Invertible homogeneous t_gamma for every degree in `degrees`, taken from A.
pub fn units_for(algebra: &GradedAlgebra, degrees: &[GroupElement]) -> Result<BTreeMap<GroupElement, AlgebraElement>> {
    let mut out = BTreeMap::new();
    for g in degrees {
        if out.contains_key(g) {
            continue;
        }
        let t = if g.is_zero() {
            AlgebraElement::one(algebra)
        } else {
            algebra.unit_of_degree(g).ok_or_else(|| Error::MissingUnit(g.to_string()))?
        };
        out.insert(g.clone(), t);
    }
    Ok(out)
}

/// P(pi)_ij = [i = pi(j)] t_(nu_i)^-1 t_(nu_j).
pub fn permutation_matrix(
    algebra: &GradedAlgebra,
    pi: &Permutation,
    nu: &[GroupElement],
    units: &BTreeMap<GroupElement, AlgebraElement>,
) -> Result<GradedMatrix> {
    assert_eq!(pi.len(), nu.len(), "permutation size must match the degree vector");
    let t = |g: &GroupElement| units.get(g).cloned().ok_or_else(|| Error::MissingUnit(g.to_string()));
    let mut m = GradedMatrix::zeros(algebra, nu.to_vec(), nu.to_vec());
    for j in 0..nu.len() {
        let i = pi.apply(j);
        let ti = t(&nu[i])?.inverse().map_err(|_| Error::MissingUnit(nu[i].to_string()))?;
        m.set(i, j, &ti * &t(&nu[j])?);
    }
    Ok(m)
}
