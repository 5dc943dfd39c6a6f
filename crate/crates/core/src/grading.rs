//! Finite abelian grading groups, bicharacters and multipliers.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::CycloScalar;

/// Z_{m1} x ... x Z_{mk}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradingGroup {
    moduli: Arc<[u32]>,
}

impl GradingGroup {
    pub fn new(moduli: Vec<u32>) -> Result<Self> {
        if moduli.contains(&0) {
            return Err(Error::InvalidGroup(
                "modulus 0 would be a free factor Z; only finite groups are supported".into(),
            ));
        }
        Ok(GradingGroup { moduli: moduli.into() })
    }

    /// (Z_2)^k.
    pub fn elementary2(k: usize) -> Self {
        GradingGroup { moduli: vec![2; k].into() }
    }

    pub fn trivial() -> Self {
        GradingGroup { moduli: Vec::new().into() }
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&m| m as u64).product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { group: self.clone(), residues: vec![0; self.rank()] }
    }

    /// Element with the given coordinates, reduced modulo each m_i.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank() {
            return Err(Error::DegreeMismatch(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        let residues = coords
            .iter()
            .zip(self.moduli.iter())
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u32)
            .collect();
        Ok(GroupElement { group: self.clone(), residues })
    }

    /// Like `element` but panics on a length mismatch.
    pub fn el(&self, coords: &[i64]) -> GroupElement {
        self.element(coords).expect("coordinate count matches the group rank")
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut g = self.zero();
        g.residues[i] = 1 % self.moduli[i];
        g
    }

    /// All elements, first coordinate most significant.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.zero()];
        for (i, &m) in self.moduli.iter().enumerate() {
            let mut next = Vec::with_capacity(out.len() * m as usize);
            for g in &out {
                for r in 0..m {
                    let mut h = g.clone();
                    h.residues[i] = r;
                    next.push(h);
                }
            }
            out = next;
        }
        out
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn span(&self, gens: &[GroupElement]) -> Vec<GroupElement> {
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        seen.insert(self.zero());
        let mut frontier = vec![self.zero()];
        while let Some(g) = frontier.pop() {
            for s in gens {
                let h = &g + s;
                if seen.insert(h.clone()) {
                    frontier.push(h);
                }
            }
        }
        seen.into_iter().collect()
    }
}

impl fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moduli.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z{m}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    group: GradingGroup,
    residues: Vec<u32>,
}

impl GroupElement {
    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }

    /// k * self.
    pub fn times(&self, k: i64) -> GroupElement {
        let residues = self
            .residues
            .iter()
            .zip(self.group.moduli.iter())
            .map(|(&r, &m)| (r as i64 * k).rem_euclid(m as i64) as u32)
            .collect();
        GroupElement { group: self.group.clone(), residues }
    }

    fn combine(&self, other: &GroupElement, sign: i64) -> GroupElement {
        assert_eq!(self.group, other.group, "group elements from different groups");
        let residues = self
            .residues
            .iter()
            .zip(&other.residues)
            .zip(self.group.moduli.iter())
            .map(|((&a, &b), &m)| (a as i64 + sign * b as i64).rem_euclid(m as i64) as u32)
            .collect();
        GroupElement { group: self.group.clone(), residues }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add<&GroupElement> for &GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: &GroupElement) -> GroupElement {
        self.combine(rhs, 1)
    }
}

impl Sub<&GroupElement> for &GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: &GroupElement) -> GroupElement {
        self.combine(rhs, -1)
    }
}

impl Add for GroupElement {
    type Output = GroupElement;
    fn add(self, rhs: GroupElement) -> GroupElement {
        self.combine(&rhs, 1)
    }
}

impl Sub for GroupElement {
    type Output = GroupElement;
    fn sub(self, rhs: GroupElement) -> GroupElement {
        self.combine(&rhs, -1)
    }
}

impl Neg for &GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        self.times(-1)
    }
}

impl Neg for GroupElement {
    type Output = GroupElement;
    fn neg(self) -> GroupElement {
        self.times(-1)
    }
}

/// Biadditive map f(x, y) = zeta_N^(x^T B y).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    group: GradingGroup,
    root_order: u32,
    exponents: Vec<Vec<u32>>,
}

/// Multipliers share the bicharacter representation; no skew condition.
pub type Multiplier = Bicharacter;

impl Bicharacter {
    pub fn new(group: GradingGroup, root_order: u32, exponents: Vec<Vec<i64>>) -> Result<Self> {
        let k = group.rank();
        if root_order == 0 {
            return Err(Error::IllDefinedBicharacter("root order must be positive".into()));
        }
        if exponents.len() != k || exponents.iter().any(|r| r.len() != k) {
            return Err(Error::IllDefinedBicharacter(format!("exponent matrix must be {k}x{k}")));
        }
        let n = root_order as i64;
        let exps: Vec<Vec<u32>> = exponents
            .iter()
            .map(|r| r.iter().map(|&e| e.rem_euclid(n) as u32).collect())
            .collect();
        for i in 0..k {
            for j in 0..k {
                let b = exps[i][j] as u64;
                let (mi, mj) = (group.moduli[i] as u64, group.moduli[j] as u64);
                if !(b * mi).is_multiple_of(n as u64) || !(b * mj).is_multiple_of(n as u64) {
                    return Err(Error::IllDefinedBicharacter(format!(
                        "entry ({i},{j}) = {b} is not killed by the moduli {mi}, {mj} mod {n}"
                    )));
                }
            }
        }
        Ok(Bicharacter { group, root_order, exponents: exps })
    }

    pub fn trivial(group: &GradingGroup) -> Self {
        let k = group.rank();
        Bicharacter { group: group.clone(), root_order: 1, exponents: vec![vec![0; k]; k] }
    }

    /// (-1)^<x,y> on (Z_2)^k, the standard sign of the quaternion and Clifford examples.
    pub fn dot_sign(group: &GradingGroup) -> Result<Self> {
        if group.moduli.iter().any(|&m| m != 2) {
            return Err(Error::UnsupportedGroup("the dot-product sign needs (Z_2)^k".into()));
        }
        let k = group.rank();
        let exps = (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect();
        Bicharacter::new(group.clone(), 2, exps)
    }

    /// (-1)^(xy) on Z_2.
    pub fn super_sign() -> Self {
        Bicharacter::new(GradingGroup::elementary2(1), 2, vec![vec![1]]).expect("well defined")
    }

    pub fn group(&self) -> &GradingGroup {
        &self.group
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    /// x^T B y mod N.
    pub fn exponent(&self, x: &GroupElement, y: &GroupElement) -> u32 {
        debug_assert_eq!(x.group, self.group);
        debug_assert_eq!(y.group, self.group);
        let n = self.root_order as u64;
        let mut acc = 0u64;
        for (i, &xi) in x.residues.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.residues.iter().enumerate() {
                acc += xi as u64 * self.exponents[i][j] as u64 * yj as u64;
            }
        }
        (acc % n) as u32
    }

    pub fn value(&self, x: &GroupElement, y: &GroupElement) -> CycloScalar {
        CycloScalar::cyclo(self.exponent(x, y) as i64, self.root_order)
    }

    /// Same map, written with root order `order` (a multiple of the current one).
    pub fn with_root_order(&self, order: u32) -> Result<Self> {
        if !order.is_multiple_of(self.root_order) {
            return Err(Error::IncompatibleRootOrders(self.root_order, order));
        }
        let s = order / self.root_order;
        let exponents = self.exponents.iter().map(|r| r.iter().map(|&e| e * s).collect()).collect();
        Ok(Bicharacter { group: self.group.clone(), root_order: order, exponents })
    }

    pub fn inverse(&self) -> Self {
        let n = self.root_order;
        let exponents =
            self.exponents.iter().map(|r| r.iter().map(|&e| (n - e) % n).collect()).collect();
        Bicharacter { group: self.group.clone(), root_order: n, exponents }
    }

    /// f(x, y) f(y, x) = 1 for all x, y, checked exhaustively.
    pub fn is_commutation_factor(&self) -> bool {
        let els = self.group.elements();
        els.iter().all(|x| {
            els.iter()
                .all(|y| (self.exponent(x, y) + self.exponent(y, x)).is_multiple_of(self.root_order))
        })
    }

    pub fn parity(&self, x: &GroupElement) -> Result<u8> {
        let e = self.exponent(x, x);
        if e == 0 {
            Ok(0)
        } else if 2 * e == self.root_order {
            Ok(1)
        } else {
            Err(Error::InvalidCommutationFactor(format!("lambda({x},{x}) is not +-1")))
        }
    }

    /// Parity, treating anything that is not +-1 as even; only for validated factors.
    pub fn is_odd(&self, x: &GroupElement) -> bool {
        2 * self.exponent(x, x) == self.root_order
    }

    pub fn is_purely_even(&self) -> bool {
        (0..self.group.rank()).all(|i| self.exponent(&self.group.generator(i), &self.group.generator(i)) == 0)
    }

    /// Equality of the two maps on all pairs from `elements`.
    pub fn agrees_on(&self, other: &Bicharacter, elements: &[GroupElement]) -> bool {
        elements.iter().all(|x| elements.iter().all(|y| self.value(x, y) == other.value(x, y)))
    }

    fn aligned(&self, other: &Bicharacter) -> Result<(Bicharacter, Bicharacter)> {
        if self.group != other.group {
            return Err(Error::IncompatibleGroups);
        }
        let l = num_integer::lcm(self.root_order, other.root_order);
        Ok((self.with_root_order(l)?, other.with_root_order(l)?))
    }
}

impl fmt::Display for Bicharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "zeta_{}^(x^T {:?} y) on {}", self.root_order, self.exponents, self.group)
    }
}

/// lambda^sigma(x, y) = lambda(x, y) sigma(x, y) / sigma(y, x).
pub fn lambda_twist(lambda: &Bicharacter, sigma: &Multiplier) -> Result<Bicharacter> {
    let (l, s) = lambda.aligned(sigma)?;
    let n = l.root_order;
    let k = l.group.rank();
    let exponents = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| ((l.exponents[i][j] + s.exponents[i][j] + n - s.exponents[j][i]) % n) as i64)
                .collect()
        })
        .collect();
    Bicharacter::new(l.group.clone(), n, exponents)
}

/// Whether lambda^sigma is the super sign rule through the parity of lambda.
/// Both sides are biadditive, so generator pairs suffice.
pub fn is_ns_multiplier(lambda: &Bicharacter, sigma: &Multiplier) -> bool {
    let Ok(t) = lambda_twist(lambda, sigma) else {
        return false;
    };
    let g = &lambda.group;
    let gens: Vec<GroupElement> = (0..g.rank()).map(|i| g.generator(i)).collect();
    let mut parities = Vec::with_capacity(gens.len());
    for x in &gens {
        match lambda.parity(x) {
            Ok(p) => parities.push(p),
            Err(_) => return false,
        }
    }
    for (a, x) in gens.iter().enumerate() {
        for (b, y) in gens.iter().enumerate() {
            let odd = parities[a] & parities[b] == 1;
            if odd && t.root_order % 2 != 0 {
                return false;
            }
            let want = if odd { t.root_order / 2 } else { 0 };
            if t.exponent(x, y) != want {
                return false;
            }
        }
    }
    true
}

/// A multiplier sigma with lambda^sigma = super sign through parity.
///
/// Solves C - C^T = -B + (N/2) f f^T by putting the target strictly above
/// the diagonal. The torsion constraints hold automatically, because odd
/// generators have even order, so the repair step of the greedy scheme only
/// runs as a guard.
pub fn solve_ns_multiplier(lambda: &Bicharacter) -> Result<Multiplier> {
    let g = &lambda.group;
    let k = g.rank();
    let n = lambda.root_order as i64;
    let mut f = Vec::with_capacity(k);
    for i in 0..k {
        f.push(lambda.parity(&g.generator(i))? as i64);
    }
    if f.contains(&1) && n % 2 != 0 {
        return Err(Error::NoSolutionAtThisRootOrder(lambda.root_order));
    }
    let target = |i: usize, j: usize| {
        (-(lambda.exponents[i][j] as i64) + (n / 2) * f[i] * f[j]).rem_euclid(n)
    };
    let ok = |c: i64, i: usize, j: usize| {
        (c * g.moduli[i] as i64) % n == 0 && (c * g.moduli[j] as i64) % n == 0
    };
    let mut c = vec![vec![0i64; k]; k];
    for i in 0..k {
        if target(i, i) != 0 {
            return Err(Error::NoSolutionAtThisRootOrder(lambda.root_order));
        }
        for j in i + 1..k {
            let t = target(i, j);
            if ok(t, i, j) {
                c[i][j] = t;
            } else if ok(-t, j, i) {
                c[j][i] = (-t).rem_euclid(n);
            } else {
                return Err(Error::NoSolutionAtThisRootOrder(lambda.root_order));
            }
        }
    }
    let sigma = Bicharacter::new(g.clone(), lambda.root_order, c)?;
    if is_ns_multiplier(lambda, &sigma) {
        Ok(sigma)
    } else {
        Err(Error::NoSolutionAtThisRootOrder(lambda.root_order))
    }
}

/// The full coset sigma_0 * {symmetric biadditive maps} on a 2-torsion group.
///
/// Order: sigma_0 = solve_ns_multiplier first, then the symmetric part runs
/// through a binary counter over the positions i <= j (row-major).
pub fn enumerate_ns_multipliers(lambda: &Bicharacter) -> Result<Vec<Multiplier>> {
    let g = &lambda.group;
    if g.moduli.iter().any(|&m| m > 2) || lambda.root_order > 2 {
        return Err(Error::UnsupportedGroup(
            "enumeration needs a 2-torsion group and root order <= 2; use solve_ns_multiplier".into(),
        ));
    }
    let lambda2 = lambda.with_root_order(2)?;
    let base = solve_ns_multiplier(&lambda2)?.with_root_order(2)?;
    let k = g.rank();
    let free: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i..k).map(move |j| (i, j)))
        .filter(|&(i, j)| g.moduli[i] == 2 && g.moduli[j] == 2)
        .collect();
    let mut out = Vec::with_capacity(1 << free.len());
    for bits in 0u64..(1u64 << free.len()) {
        let mut c: Vec<Vec<i64>> =
            base.exponents.iter().map(|r| r.iter().map(|&e| e as i64).collect()).collect();
        for (t, &(i, j)) in free.iter().enumerate() {
            if bits >> t & 1 == 1 {
                c[i][j] += 1;
                if i != j {
                    c[j][i] += 1;
                }
            }
        }
        out.push(Bicharacter::new(g.clone(), 2, c)?);
    }
    Ok(out)
}

/// NS-multipliers that differ on the subgroup generated by `gens`; the first
/// representative in `enumerate_ns_multipliers` order is kept.
pub fn enumerate_ns_multipliers_on(
    lambda: &Bicharacter,
    gens: &[GroupElement],
) -> Result<Vec<Multiplier>> {
    let h = lambda.group.span(gens);
    let mut out: Vec<Multiplier> = Vec::new();
    for s in enumerate_ns_multipliers(lambda)? {
        if !out.iter().any(|t| t.agrees_on(&s, &h)) {
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2_3() -> GradingGroup {
        GradingGroup::elementary2(3)
    }

    fn quaternion_sigma_a() -> Multiplier {
        // x1(y2+y3) + x2 y3
        Bicharacter::new(z2_3(), 2, vec![vec![0, 1, 1], vec![0, 0, 1], vec![0, 0, 0]]).unwrap()
    }

    #[test]
    fn group_basics() {
        let g = GradingGroup::new(vec![2, 3]).unwrap();
        assert_eq!(g.order(), 6);
        let els = g.elements();
        assert_eq!(els.len(), 6);
        assert_eq!(els[1].residues(), &[0, 1]);
        assert_eq!(els[3].residues(), &[1, 0]);
        let a = g.el(&[1, 2]);
        assert!((&a + &(-&a)).is_zero());
        assert_eq!(a.times(2), g.el(&[0, 1]));
        assert!(GradingGroup::new(vec![2, 0]).is_err());
        assert_eq!(g.span(&[g.el(&[0, 1])]).len(), 3);
    }

    #[test]
    fn commutation_factor_examples() {
        assert!(Bicharacter::trivial(&z2_3()).is_commutation_factor());
        assert!(Bicharacter::dot_sign(&z2_3()).unwrap().is_commutation_factor());
        let z4 = GradingGroup::new(vec![4]).unwrap();
        let f = Bicharacter::new(z4, 4, vec![vec![1]]).unwrap();
        assert!(!f.is_commutation_factor());
    }

    #[test]
    fn ill_defined_exponents_rejected() {
        let z2 = GradingGroup::elementary2(1);
        assert!(Bicharacter::new(z2, 4, vec![vec![1]]).is_err());
    }

    #[test]
    fn parities() {
        let s = Bicharacter::super_sign();
        assert_eq!(s.parity(&GradingGroup::elementary2(1).el(&[1])), Ok(1));
        let l = Bicharacter::dot_sign(&z2_3()).unwrap();
        assert_eq!(l.parity(&z2_3().zero()), Ok(0));
        assert_eq!(l.parity(&z2_3().el(&[0, 1, 1])), Ok(0));
        assert_eq!(l.parity(&z2_3().el(&[1, 0, 0])), Ok(1));
        let z3 = GradingGroup::new(vec![3]).unwrap();
        let bad = Bicharacter::new(z3.clone(), 3, vec![vec![1]]).unwrap();
        assert!(bad.parity(&z3.el(&[1])).is_err());
    }

    #[test]
    fn quaternion_twist_is_super() {
        let l = Bicharacter::dot_sign(&z2_3()).unwrap();
        let s = quaternion_sigma_a();
        assert!(is_ns_multiplier(&l, &s));
        let t = lambda_twist(&l, &s).unwrap();
        for x in z2_3().elements() {
            for y in z2_3().elements() {
                let p = l.parity(&x).unwrap() * l.parity(&y).unwrap();
                assert_eq!(t.value(&x, &y), CycloScalar::from_int(if p == 1 { -1 } else { 1 }));
            }
        }
        assert!(!is_ns_multiplier(&l, &Bicharacter::trivial(&z2_3())));
        let back = lambda_twist(&t, &s.inverse()).unwrap();
        assert!(back.agrees_on(&l, &z2_3().elements()));
    }

    #[test]
    fn clifford_twist_commutative_on_even_part() {
        let g = GradingGroup::elementary2(4);
        let l = Bicharacter::dot_sign(&g).unwrap();
        let c = (0..4).map(|i| (0..4).map(|j| (i < j) as i64).collect()).collect();
        let s = Bicharacter::new(g.clone(), 2, c).unwrap();
        let t = lambda_twist(&l, &s).unwrap();
        let even: Vec<_> = g.elements().into_iter().filter(|x| l.parity(x) == Ok(0)).collect();
        assert!(even.iter().all(|x| even.iter().all(|y| t.value(x, y).is_one())));
    }

    #[test]
    fn solver_outputs_ns_multipliers() {
        let l = Bicharacter::dot_sign(&z2_3()).unwrap();
        assert!(is_ns_multiplier(&l, &solve_ns_multiplier(&l).unwrap()));
        let s = solve_ns_multiplier(&Bicharacter::super_sign()).unwrap();
        assert!(s.exponents().iter().flatten().all(|&e| e == 0));
        let triv = solve_ns_multiplier(&Bicharacter::trivial(&GradingGroup::elementary2(2))).unwrap();
        assert!(triv.exponents().iter().flatten().all(|&e| e == 0));
        // clock-and-shift factor on Z_6 x Z_6
        let g = GradingGroup::new(vec![6, 6]).unwrap();
        let cs = Bicharacter::new(g, 6, vec![vec![0, 1], vec![5, 0]]).unwrap();
        assert!(is_ns_multiplier(&cs, &solve_ns_multiplier(&cs).unwrap()));
    }

    #[test]
    fn enumeration_counts() {
        let l = Bicharacter::dot_sign(&z2_3()).unwrap();
        let all = enumerate_ns_multipliers(&l).unwrap();
        assert_eq!(all.len(), 64);
        assert!(all.iter().all(|s| is_ns_multiplier(&l, s)));
        let q = [z2_3().el(&[0, 1, 1]), z2_3().el(&[1, 0, 1])];
        assert_eq!(enumerate_ns_multipliers_on(&l, &q).unwrap().len(), 8);
        assert_eq!(enumerate_ns_multipliers(&Bicharacter::super_sign()).unwrap().len(), 2);
        let t = GradingGroup::trivial();
        assert_eq!(enumerate_ns_multipliers(&Bicharacter::trivial(&t)).unwrap().len(), 1);
        let z3 = GradingGroup::new(vec![3]).unwrap();
        assert!(matches!(
            enumerate_ns_multipliers(&Bicharacter::trivial(&z3)),
            Err(Error::UnsupportedGroup(_))
        ));
    }
}
