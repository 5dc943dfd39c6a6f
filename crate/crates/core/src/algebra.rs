//! Finite-dimensional graded algebras given by structure constants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grading::{
    enumerate_ns_multipliers_on, lambda_twist, solve_ns_multiplier, Bicharacter, GradingGroup,
    GroupElement, Multiplier,
};
use crate::linalg;
use crate::scalars::CycloScalar;

/// Sparse structure constants: e_i e_j = sum c e_k.
pub type Product = Vec<(usize, CycloScalar)>;

struct AlgebraData {
    lambda: Bicharacter,
    root_order: u32,
    labels: Vec<String>,
    degrees: Vec<GroupElement>,
    unit: usize,
    table: Vec<Product>,
    units: OnceLock<BTreeMap<GroupElement, BTreeMap<usize, CycloScalar>>>,
    multipliers: OnceLock<Result<Vec<Multiplier>>>,
}

impl PartialEq for AlgebraData {
    fn eq(&self, other: &Self) -> bool {
        self.lambda == other.lambda
            && self.labels == other.labels
            && self.degrees == other.degrees
            && self.unit == other.unit
            && self.table == other.table
    }
}

/// Validated graded algebra; cheap to clone.
#[derive(Clone)]
pub struct GradedAlgebra(Arc<AlgebraData>);

impl PartialEq for GradedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for GradedAlgebra {}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedAlgebra(dim {}, basis {:?})", self.dim(), self.0.labels)
    }
}

/// Degree information of an element or matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// Zero lies in every homogeneous component.
    Zero,
    Homogeneous(GroupElement),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn degree(&self) -> Option<&GroupElement> {
        match self {
            Homogeneity::Homogeneous(g) => Some(g),
            _ => None,
        }
    }
}

/// Builds and validates an algebra. `products` lists the nonzero e_i e_j.
pub fn make_algebra(
    lambda: Bicharacter,
    basis: Vec<(String, GroupElement)>,
    products: Vec<((usize, usize), Product)>,
) -> Result<GradedAlgebra> {
    let d = basis.len();
    if d == 0 {
        return Err(Error::InvalidParams("an algebra needs at least one basis element".into()));
    }
    let mut table = vec![Vec::new(); d * d];
    for ((i, j), terms) in products {
        if i >= d || j >= d || terms.iter().any(|(k, _)| *k >= d) {
            return Err(Error::InvalidParams(format!("product index out of range at ({i},{j})")));
        }
        let mut acc: BTreeMap<usize, CycloScalar> = BTreeMap::new();
        for (k, c) in table[i * d + j].drain(..).chain(terms) {
            let e = acc.remove(&k).map_or(c.clone(), |old| old + c);
            if !e.is_zero() {
                acc.insert(k, e);
            }
        }
        table[i * d + j] = acc.into_iter().collect();
    }
    from_table(lambda, basis, table, true)
}

fn from_table(
    lambda: Bicharacter,
    basis: Vec<(String, GroupElement)>,
    table: Vec<Product>,
    check_assoc: bool,
) -> Result<GradedAlgebra> {
    let d = basis.len();
    let (labels, degrees): (Vec<String>, Vec<GroupElement>) = basis.into_iter().unzip();
    if degrees.iter().any(|g| g.group() != lambda.group()) {
        return Err(Error::IncompatibleGroups);
    }
    if labels.iter().collect::<BTreeSet<_>>().len() != d {
        return Err(Error::InvalidParams("basis labels must be distinct".into()));
    }
    let mut root_order = lambda.root_order();
    for (_, c) in table.iter().flatten() {
        root_order = num_integer::lcm(root_order, c.order());
    }
    let data = AlgebraData {
        lambda,
        root_order,
        labels,
        degrees,
        unit: 0,
        table,
        units: OnceLock::new(),
        multipliers: OnceLock::new(),
    };
    let mut alg = GradedAlgebra(Arc::new(data));
    alg.validate_parts(check_assoc)?;
    Ok(alg)
}

impl GradedAlgebra {
    pub fn dim(&self) -> usize {
        self.0.labels.len()
    }

    pub fn group(&self) -> &GradingGroup {
        self.0.lambda.group()
    }

    pub fn lambda(&self) -> &Bicharacter {
        &self.0.lambda
    }

    /// Root order of the scalar field the constants live in.
    pub fn root_order(&self) -> u32 {
        self.0.root_order
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.labels.iter().position(|l| l == label)
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.0.degrees
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.0.degrees[i]
    }

    pub fn unit_index(&self) -> usize {
        self.0.unit
    }

    pub fn product(&self, i: usize, j: usize) -> &[(usize, CycloScalar)] {
        &self.0.table[i * self.dim() + j]
    }

    pub fn basis_of_degree(&self, g: &GroupElement) -> Vec<usize> {
        (0..self.dim()).filter(|&i| &self.0.degrees[i] == g).collect()
    }

    /// Degrees carrying at least one basis element, sorted.
    pub fn support(&self) -> Vec<GroupElement> {
        self.0.degrees.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
    }

    pub fn is_odd_degree(&self, g: &GroupElement) -> bool {
        self.0.lambda.is_odd(g)
    }

    pub fn element(&self, terms: &[(&str, CycloScalar)]) -> Result<AlgebraElement> {
        let mut e = AlgebraElement::zero(self);
        for (label, c) in terms {
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::InvalidParams(format!("unknown basis label {label:?}")))?;
            e = e + AlgebraElement::basis(self, i).scale(c);
        }
        Ok(e)
    }

    /// Element from integer coefficients on labels; for tests and examples.
    pub fn elem(&self, terms: &[(&str, i64)]) -> AlgebraElement {
        let terms: Vec<(&str, CycloScalar)> =
            terms.iter().map(|&(l, c)| (l, CycloScalar::from_int(c))).collect();
        self.element(&terms).expect("labels exist")
    }

    pub fn basis_element(&self, label: &str) -> AlgebraElement {
        self.elem(&[(label, 1)])
    }

    fn mul_basis(&self, i: usize, v: &BTreeMap<usize, CycloScalar>, left: bool) -> BTreeMap<usize, CycloScalar> {
        let mut out = BTreeMap::new();
        for (&j, c) in v {
            let prod = if left { self.product(i, j) } else { self.product(j, i) };
            for (k, s) in prod {
                accumulate(&mut out, *k, c * s);
            }
        }
        out
    }

    fn validate_parts(&mut self, check_assoc: bool) -> Result<()> {
        let d = self.dim();
        let labels = self.0.labels.clone();
        let lab = |i: usize| labels[i].clone();
        for i in 0..d {
            for j in 0..d {
                let want = self.degree(i) + self.degree(j);
                for (k, _) in self.product(i, j) {
                    if self.degree(*k) != &want {
                        return Err(Error::DegreeViolation(lab(i), lab(j), lab(*k)));
                    }
                }
            }
        }
        let unit = (0..d)
            .find(|&u| {
                self.degree(u).is_zero()
                    && (0..d).all(|j| {
                        self.product(u, j) == [(j, CycloScalar::one())]
                            && self.product(j, u) == [(j, CycloScalar::one())]
                    })
            })
            .ok_or_else(|| Error::NoUnit("no degree-0 basis element acts as the identity".into()))?;
        Arc::get_mut(&mut self.0).expect("fresh algebra").unit = unit;
        for i in 0..d {
            for j in 0..d {
                let l = self.0.lambda.value(self.degree(i), self.degree(j));
                let ij: BTreeMap<usize, CycloScalar> = self.product(i, j).iter().cloned().collect();
                let mut ji = BTreeMap::new();
                for (k, c) in self.product(j, i) {
                    accumulate(&mut ji, *k, c * &l);
                }
                if ij != ji {
                    return Err(Error::NotLambdaCommutative(lab(i), lab(j)));
                }
            }
        }
        if check_assoc {
            for i in 0..d {
                for j in 0..d {
                    let ij: BTreeMap<usize, CycloScalar> = self.product(i, j).iter().cloned().collect();
                    for k in 0..d {
                        let left = self.mul_basis(k, &ij, false);
                        let jk: BTreeMap<usize, CycloScalar> =
                            self.product(j, k).iter().cloned().collect();
                        let right = self.mul_basis(i, &jk, true);
                        if left != right {
                            return Err(Error::NotAssociative(lab(i), lab(j), lab(k)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-runs every structural check, associativity included.
    pub fn validate(&self) -> Result<()> {
        let basis = self.0.labels.iter().cloned().zip(self.0.degrees.iter().cloned()).collect();
        from_table(self.0.lambda.clone(), basis, self.0.table.clone(), true).map(|_| ())
    }

    /// The NS-multipliers used when sweeping over the set S(lambda).
    ///
    /// On 2-torsion gradings these are the multipliers of
    /// `enumerate_ns_multipliers` that differ on the subgroup generated by the
    /// basis degrees (only those values enter any product); otherwise the single
    /// solver output.
    pub fn ns_multipliers(&self) -> Result<Vec<Multiplier>> {
        self.0
            .multipliers
            .get_or_init(|| {
                let g = self.group();
                if g.moduli().iter().all(|&m| m <= 2) && self.lambda().root_order() <= 2 {
                    enumerate_ns_multipliers_on(self.lambda(), &self.support())
                } else {
                    Ok(vec![solve_ns_multiplier(self.lambda())?])
                }
            })
            .clone()
    }

    /// The fixed internal multiplier: the first of `ns_multipliers`.
    pub fn canonical_multiplier(&self) -> Result<Multiplier> {
        Ok(self.ns_multipliers()?.swap_remove(0))
    }

    /// Degrees gamma such that A^gamma contains an invertible element.
    pub fn unit_degrees(&self) -> BTreeSet<GroupElement> {
        self.units_map().keys().cloned().collect()
    }

    /// An invertible homogeneous element of degree g, if any.
    pub fn unit_of_degree(&self, g: &GroupElement) -> Option<AlgebraElement> {
        self.units_map()
            .get(g)
            .map(|c| AlgebraElement { algebra: self.clone(), coeffs: c.clone() })
    }

    fn units_map(&self) -> &BTreeMap<GroupElement, BTreeMap<usize, CycloScalar>> {
        self.0.units.get_or_init(|| {
            let mut out = BTreeMap::new();
            for g in self.support() {
                if self.is_odd_degree(&g) {
                    continue;
                }
                if let Some(u) = self.find_unit(&g) {
                    out.insert(g, u.coeffs);
                }
            }
            out
        })
    }

    // Basis vectors first, then seeded random combinations. A nonzero
    // determinant polynomial of degree <= dim vanishes at a random point of
    // {1..1000}^m with probability <= dim/1000, so a miss after 24 draws is
    // below 1e-30 for every algebra of dimension <= 50.
    fn find_unit(&self, g: &GroupElement) -> Option<AlgebraElement> {
        let idx = self.basis_of_degree(g);
        for &i in &idx {
            let b = AlgebraElement::basis(self, i);
            if b.inverse().is_ok() {
                return Some(b);
            }
        }
        if idx.len() < 2 {
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..24 {
            let mut e = AlgebraElement::zero(self);
            for &i in &idx {
                let c = CycloScalar::from_int(rng.gen_range(1..=1000));
                e = e + AlgebraElement::basis(self, i).scale(&c);
            }
            if e.inverse().is_ok() {
                return Some(e);
            }
        }
        None
    }

    /// A permutation pi (lexicographically least) and units a_i of degree
    /// nu_i - mu_pi(i), when they exist.
    pub fn degree_admissible(
        &self,
        mu: &[GroupElement],
        nu: &[GroupElement],
    ) -> Option<(Vec<usize>, Vec<AlgebraElement>)> {
        if mu.len() != nu.len() {
            return None;
        }
        let n = mu.len();
        let units = self.unit_degrees();
        let ok = |i: usize, j: usize| units.contains(&(&nu[i] - &mu[j]));
        let mut perm = Vec::with_capacity(n);
        let mut used = vec![false; n];
        if !search(n, &ok, &mut perm, &mut used) {
            return None;
        }
        let elems = (0..n)
            .map(|i| self.unit_of_degree(&(&nu[i] - &mu[perm[i]])).expect("unit degree"))
            .collect();
        return Some((perm, elems));

        fn search(
            n: usize,
            ok: &dyn Fn(usize, usize) -> bool,
            perm: &mut Vec<usize>,
            used: &mut [bool],
        ) -> bool {
            let i = perm.len();
            if i == n {
                return true;
            }
            for j in 0..n {
                if !used[j] && ok(i, j) {
                    used[j] = true;
                    perm.push(j);
                    if search(n, ok, perm, used) {
                        return true;
                    }
                    perm.pop();
                    used[j] = false;
                }
            }
            false
        }
    }

    /// Same basis with products a * b = sigma(deg a, deg b) a b.
    pub fn twist(&self, sigma: &Multiplier) -> Result<GradedAlgebra> {
        if sigma.group() != self.group() {
            return Err(Error::IncompatibleGroups);
        }
        let d = self.dim();
        let mut table = self.0.table.clone();
        for i in 0..d {
            for j in 0..d {
                let s = sigma.value(self.degree(i), self.degree(j));
                if !s.is_one() {
                    for (_, c) in table[i * d + j].iter_mut() {
                        *c = &*c * &s;
                    }
                }
            }
        }
        let lambda = lambda_twist(self.lambda(), sigma)?;
        let basis = self.0.labels.iter().cloned().zip(self.0.degrees.iter().cloned()).collect();
        // a biadditive sigma is a 2-cocycle, so associativity carries over
        from_table(lambda, basis, table, false)
    }

    /// Graded tensor product with (a1 b1)(a2 b2) = lambda(b1, a2) a1a2 b1b2.
    pub fn graded_tensor(&self, other: &GradedAlgebra) -> Result<GradedAlgebra> {
        if self.group() != other.group() || !self.lambda().agrees_on(other.lambda(), &self.group().elements()) {
            return Err(Error::IncompatibleGroups);
        }
        let (da, db) = (self.dim(), other.dim());
        let idx = |a: usize, b: usize| a * db + b;
        let mut basis = Vec::with_capacity(da * db);
        for a in 0..da {
            for b in 0..db {
                basis.push((format!("{}⊗{}", self.label(a), other.label(b)), self.degree(a) + other.degree(b)));
            }
        }
        let mut table = vec![Vec::new(); da * da * db * db];
        let d = da * db;
        for a1 in 0..da {
            for b1 in 0..db {
                for a2 in 0..da {
                    let l = self.lambda().value(other.degree(b1), self.degree(a2));
                    for b2 in 0..db {
                        let mut terms = Vec::new();
                        for (ka, ca) in self.product(a1, a2) {
                            for (kb, cb) in other.product(b1, b2) {
                                terms.push((idx(*ka, *kb), &(ca * cb) * &l));
                            }
                        }
                        terms.sort_by_key(|t| t.0);
                        table[idx(a1, b1) * d + idx(a2, b2)] = terms;
                    }
                }
            }
        }
        from_table(self.lambda().clone(), basis, table, false)
    }

    /// Embedding a -> a (x) 1 into self (x) other.
    pub fn embed_left(&self, tensor: &GradedAlgebra, other: &GradedAlgebra, a: &AlgebraElement) -> AlgebraElement {
        let u = other.unit_index();
        let coeffs = a.coeffs.iter().map(|(&i, c)| (i * other.dim() + u, c.clone())).collect();
        AlgebraElement { algebra: tensor.clone(), coeffs }
    }

    /// Inverse of `embed_left`; None if the element leaves A (x) 1.
    pub fn project_left(&self, other: &GradedAlgebra, t: &AlgebraElement) -> Option<AlgebraElement> {
        let (db, u) = (other.dim(), other.unit_index());
        let mut coeffs = BTreeMap::new();
        for (&k, c) in &t.coeffs {
            if k % db != u {
                return None;
            }
            coeffs.insert(k / db, c.clone());
        }
        Some(AlgebraElement { algebra: self.clone(), coeffs })
    }

    /// Matrix of left multiplication by a: column j holds a e_j.
    pub fn left_regular(&self, a: &AlgebraElement) -> Vec<Vec<CycloScalar>> {
        let d = self.dim();
        let mut m = vec![vec![CycloScalar::zero(); d]; d];
        for (&i, c) in &a.coeffs {
            for j in 0..d {
                for (k, s) in self.product(i, j) {
                    m[*k][j] = &m[*k][j] + &(c * s);
                }
            }
        }
        m
    }
}

fn accumulate(map: &mut BTreeMap<usize, CycloScalar>, k: usize, c: CycloScalar) {
    if c.is_zero() {
        return;
    }
    match map.remove(&k) {
        None => {
            map.insert(k, c);
        }
        Some(old) => {
            let s = old + c;
            if !s.is_zero() {
                map.insert(k, s);
            }
        }
    }
}

/// Element of a graded algebra; zero coefficients are never stored.
#[derive(Clone)]
pub struct AlgebraElement {
    algebra: GradedAlgebra,
    coeffs: BTreeMap<usize, CycloScalar>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.algebra == other.algebra
    }
}

impl Eq for AlgebraElement {}

impl AlgebraElement {
    pub fn zero(algebra: &GradedAlgebra) -> Self {
        AlgebraElement { algebra: algebra.clone(), coeffs: BTreeMap::new() }
    }

    pub fn one(algebra: &GradedAlgebra) -> Self {
        Self::basis(algebra, algebra.unit_index())
    }

    pub fn basis(algebra: &GradedAlgebra, i: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(i, CycloScalar::one());
        AlgebraElement { algebra: algebra.clone(), coeffs }
    }

    pub fn scalar(algebra: &GradedAlgebra, c: CycloScalar) -> Self {
        Self::one(algebra).scale(&c)
    }

    pub fn from_coeffs(algebra: &GradedAlgebra, terms: impl IntoIterator<Item = (usize, CycloScalar)>) -> Self {
        let mut coeffs = BTreeMap::new();
        for (k, c) in terms {
            assert!(k < algebra.dim(), "basis index out of range");
            accumulate(&mut coeffs, k, c);
        }
        AlgebraElement { algebra: algebra.clone(), coeffs }
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &CycloScalar)> {
        self.coeffs.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, i: usize) -> CycloScalar {
        self.coeffs.get(&i).cloned().unwrap_or_else(CycloScalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeff(self.algebra.unit_index()).is_one()
    }

    /// Same coefficients, read in another algebra with the same basis.
    pub fn reinterpret(&self, algebra: &GradedAlgebra) -> Result<Self> {
        if algebra.dim() != self.algebra.dim() || algebra.degrees() != self.algebra.degrees() {
            return Err(Error::MixedAlgebras);
        }
        Ok(AlgebraElement { algebra: algebra.clone(), coeffs: self.coeffs.clone() })
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.algebra);
        }
        let coeffs = self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect();
        AlgebraElement { algebra: self.algebra.clone(), coeffs }
    }

    fn same(&self, other: &Self) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::MixedAlgebras)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut coeffs = self.coeffs.clone();
        for (&k, c) in &other.coeffs {
            accumulate(&mut coeffs, k, c.clone());
        }
        Ok(AlgebraElement { algebra: self.algebra.clone(), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same(other)?;
        let mut coeffs = BTreeMap::new();
        for (&i, a) in &self.coeffs {
            for (&j, b) in &other.coeffs {
                let ab = a * b;
                for (k, c) in self.algebra.product(i, j) {
                    accumulate(&mut coeffs, *k, &ab * c);
                }
            }
        }
        Ok(AlgebraElement { algebra: self.algebra.clone(), coeffs })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.algebra);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn degree(&self) -> Homogeneity {
        let mut degs = self.coeffs.keys().map(|&k| self.algebra.degree(k));
        match degs.next() {
            None => Homogeneity::Zero,
            Some(g) => {
                if degs.all(|h| h == g) {
                    Homogeneity::Homogeneous(g.clone())
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    pub fn is_homogeneous_of(&self, g: &GroupElement) -> bool {
        self.coeffs.keys().all(|&k| self.algebra.degree(k) == g)
    }

    pub fn homogeneous_components(&self) -> BTreeMap<GroupElement, AlgebraElement> {
        let mut out: BTreeMap<GroupElement, AlgebraElement> = BTreeMap::new();
        for (&k, c) in &self.coeffs {
            out.entry(self.algebra.degree(k).clone())
                .or_insert_with(|| Self::zero(&self.algebra))
                .coeffs
                .insert(k, c.clone());
        }
        out
    }

    pub fn component(&self, g: &GroupElement) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&k, _)| self.algebra.degree(k) == g)
            .map(|(&k, c)| (k, c.clone()))
            .collect();
        AlgebraElement { algebra: self.algebra.clone(), coeffs }
    }

    /// Two-sided inverse through the left-regular representation.
    pub fn inverse(&self) -> Result<Self> {
        let alg = &self.algebra;
        let d = alg.dim();
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        if self.coeffs.len() == 1 {
            // fast path for a scalar multiple of a basis vector with a monomial square
            let (&i, c) = self.coeffs.iter().next().unwrap();
            if i == alg.unit_index() {
                return Ok(Self::scalar(alg, c.inv().map_err(|_| Error::NotInvertible)?));
            }
        }
        let m = alg.left_regular(self);
        let mut rhs = vec![vec![CycloScalar::zero()]; d];
        rhs[alg.unit_index()][0] = CycloScalar::one();
        let sol = linalg::solve_multi(m, rhs).ok_or(Error::NotInvertible)?;
        let inv = Self::from_coeffs(alg, sol.into_iter().enumerate().map(|(k, mut v)| (k, v.pop().unwrap())));
        if !(&inv * self).is_one() {
            return Err(Error::NotInvertible);
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&k, c)| {
                let text = c.to_text(c.order()).unwrap_or_default();
                let c = if text.contains(' ') { format!("({text})") } else { text };
                if k == self.algebra.unit_index() {
                    c
                } else {
                    format!("{c}*{}", self.algebra.label(k))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

macro_rules! element_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr<&AlgebraElement> for &AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$inner(rhs).expect("operands from the same algebra")
            }
        }
        impl $tr<AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: AlgebraElement) -> AlgebraElement {
                self.$inner(&rhs).expect("operands from the same algebra")
            }
        }
        impl $tr<&AlgebraElement> for AlgebraElement {
            type Output = AlgebraElement;
            fn $m(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$inner(rhs).expect("operands from the same algebra")
            }
        }
    };
}

element_binop!(Add, add, try_add);
element_binop!(Sub, sub, try_sub);
element_binop!(Mul, mul, try_mul);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        let coeffs = self.coeffs.iter().map(|(&k, c)| (k, -c)).collect();
        AlgebraElement { algebra: self.algebra.clone(), coeffs }
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}
