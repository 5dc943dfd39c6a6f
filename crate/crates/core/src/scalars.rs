//! Exact scalars: rationals and cyclotomic fields Q(zeta_N).
//!
//! An element of Q(zeta_N) is stored as its reduced residue modulo the
//! cyclotomic polynomial Phi_N, i.e. as phi(N) rational coefficients on
//! 1, z, ..., z^(phi(N)-1). Values that happen to be rational are always
//! kept at root order 1, so N = 2 never survives normalisation.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Reduction data for one root order.
struct Tables {
    phi: usize,
    /// powers[k] = z^k mod Phi_N for 0 <= k < N
    powers: Vec<Vec<i64>>,
}

fn tables(order: u32) -> Arc<Tables> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Tables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().unwrap().get(&order) {
        return t.clone();
    }
    let phi_poly = cyclotomic_polynomial(order);
    let phi = phi_poly.len() - 1;
    let mut powers = Vec::with_capacity(order as usize);
    let mut cur = vec![0i64; phi];
    cur[0] = 1;
    for _ in 0..order {
        powers.push(cur.clone());
        // multiply by z and fold the overflow coefficient with the monic Phi_N
        let top = cur[phi - 1];
        for i in (1..phi).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        if phi == 1 {
            cur[0] = -top * phi_poly[0];
        } else {
            for i in 0..phi {
                cur[i] -= top * phi_poly[i];
            }
        }
    }
    let t = Arc::new(Tables { phi, powers });
    cache.lock().unwrap().insert(order, t.clone());
    t
}

/// Integer coefficients of Phi_n, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "root order must be positive");
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (i, &di) in den.iter().enumerate() {
            rem[k + i] -= c * di;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

pub fn totient(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Element of Q(zeta_N) in reduced residue form.
#[derive(Clone, Debug)]
pub struct CycloScalar {
    order: u32,
    coeffs: Vec<BigRational>,
}

/// Whether binary operations may silently move to the lcm root order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coercion {
    Lcm,
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl CycloScalar {
    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn rational(q: BigRational) -> Self {
        CycloScalar { order: 1, coeffs: vec![q] }
    }

    /// zeta_N^n.
    pub fn cyclo(n: i64, order: u32) -> Self {
        assert!(order >= 1, "root order must be positive");
        let t = tables(order);
        let k = n.rem_euclid(order as i64) as usize;
        let coeffs = t.powers[k]
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        CycloScalar { order, coeffs }.normalized()
    }

    /// Builds sum_k coeffs[k] z^k in Q(zeta_N); any length is accepted.
    pub fn from_poly(order: u32, poly: &[BigRational]) -> Self {
        let t = tables(order);
        let mut out = vec![BigRational::zero(); t.phi];
        for (k, c) in poly.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &p) in t.powers[k % order as usize].iter().enumerate() {
                if p != 0 {
                    out[i] += c * BigRational::from_integer(BigInt::from(p));
                }
            }
        }
        CycloScalar { order, coeffs: out }.normalized()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.order == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.order == 1).then(|| &self.coeffs[0])
    }

    fn normalized(mut self) -> Self {
        if self.order != 1 && self.coeffs[1..].iter().all(Zero::is_zero) {
            self.coeffs.truncate(1);
            self.order = 1;
        }
        self
    }

    /// Coefficients of self seen inside Q(zeta_target), unnormalised.
    fn lift(&self, target: u32) -> Vec<BigRational> {
        if target == self.order {
            return self.coeffs.clone();
        }
        assert!(target.is_multiple_of(self.order), "root order {} does not divide {}", self.order, target);
        let step = (target / self.order) as usize;
        let t = tables(target);
        let mut out = vec![BigRational::zero(); t.phi];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, &p) in t.powers[(k * step) % target as usize].iter().enumerate() {
                if p != 0 {
                    out[i] += c * BigRational::from_integer(BigInt::from(p));
                }
            }
        }
        out
    }

    /// Embeds self into Q(zeta_target); requires order | target.
    pub fn coerce(&self, target: u32) -> Result<Self> {
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(Error::IncompatibleRootOrders(self.order, target));
        }
        Ok(CycloScalar { order: target, coeffs: self.lift(target) }.normalized())
    }

    /// Raw coefficient vector in Q(zeta_target), without normalisation.
    pub fn coeffs_in(&self, target: u32) -> Result<Vec<BigRational>> {
        if target == 0 || !target.is_multiple_of(self.order) {
            return Err(Error::IncompatibleRootOrders(self.order, target));
        }
        Ok(self.lift(target))
    }

    fn common(&self, other: &Self) -> (u32, Vec<BigRational>, Vec<BigRational>) {
        let l = self.order.lcm(&other.order);
        (l, self.lift(l), other.lift(l))
    }

    fn add_ref(&self, other: &Self) -> Self {
        if self.order == 1 && other.order == 1 {
            return Self::rational(&self.coeffs[0] + &other.coeffs[0]);
        }
        let (l, a, b) = self.common(other);
        let coeffs = a.into_iter().zip(b).map(|(x, y)| x + y).collect();
        CycloScalar { order: l, coeffs }.normalized()
    }

    fn sub_ref(&self, other: &Self) -> Self {
        if self.order == 1 && other.order == 1 {
            return Self::rational(&self.coeffs[0] - &other.coeffs[0]);
        }
        let (l, a, b) = self.common(other);
        let coeffs = a.into_iter().zip(b).map(|(x, y)| x - y).collect();
        CycloScalar { order: l, coeffs }.normalized()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.order == 1 && other.order == 1 {
            return Self::rational(&self.coeffs[0] * &other.coeffs[0]);
        }
        if self.order == 1 || other.order == 1 {
            let (q, v) = if self.order == 1 { (&self.coeffs[0], other) } else { (&other.coeffs[0], self) };
            let coeffs = v.coeffs.iter().map(|c| c * q).collect();
            return CycloScalar { order: v.order, coeffs }.normalized();
        }
        let (l, a, b) = self.common(other);
        let mut prod = vec![BigRational::zero(); 2 * a.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        Self::from_poly(l, &prod)
    }

    pub fn neg_ref(&self) -> Self {
        CycloScalar { order: self.order, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    /// Multiplicative inverse, solving (multiplication-by-self) b = 1.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Self::rational(self.coeffs[0].recip()));
        }
        let n = self.coeffs.len();
        // column j holds self * z^j
        let cols: Vec<Vec<BigRational>> = (0..n)
            .map(|j| {
                let mut shifted = vec![BigRational::zero(); j];
                shifted.extend(self.coeffs.iter().cloned());
                CycloScalar::from_poly(self.order, &shifted).lift(self.order)
            })
            .collect();
        let mut m: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect();
        let mut rhs = vec![BigRational::zero(); n];
        rhs[0] = BigRational::one();
        let sol = crate::linalg::solve_square(&mut m, &mut rhs).ok_or(Error::DivisionByZero)?;
        Ok(CycloScalar { order: self.order, coeffs: sol }.normalized())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul_ref(&other.inv()?))
    }

    /// self^e for any integer e (negative powers need self != 0).
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_ref(&b);
            }
            b = b.mul_ref(&b);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Complex conjugation, z -> z^-1.
    pub fn conj(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        let n = self.order as i64;
        let mut poly = vec![BigRational::zero(); self.order as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            poly[((n - k as i64) % n) as usize] += c;
        }
        Self::from_poly(self.order, &poly)
    }

    /// Renders the value as a polynomial in z of the given root order.
    pub fn to_text(&self, order: u32) -> Result<String> {
        let coeffs = self.coeffs_in(order)?;
        let mut out = String::new();
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let term = match k {
                0 => mag.to_string(),
                _ => {
                    let z = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    if mag.is_one() {
                        z
                    } else {
                        format!("{mag}*{z}")
                    }
                }
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        if out.is_empty() {
            out.push('0');
        }
        Ok(out)
    }

    /// Parses "1/2 + 3*z^2"-style text, z standing for zeta_order.
    pub fn parse(text: &str, order: u32) -> Result<Self> {
        let err = |m: &str| Error::Parse(format!("scalar {text:?}"), m.to_string());
        if order == 0 {
            return Err(err("root order must be positive"));
        }
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err("empty scalar"));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = false;
        for (i, ch) in s.chars().enumerate() {
            if (ch == '+' || ch == '-') && !cur.ends_with('^') {
                if i > 0 {
                    if cur.is_empty() {
                        return Err(err("dangling sign"));
                    }
                    terms.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(err("dangling sign"));
        }
        terms.push((neg, cur));
        let mut poly: Vec<BigRational> = Vec::new();
        for (neg, term) in terms {
            let (coef, power) = parse_term(&term).ok_or_else(|| err(&format!("bad term {term:?}")))?;
            if power >= poly.len() {
                poly.resize(power + 1, BigRational::zero());
            }
            poly[power] += if neg { -coef } else { coef };
        }
        Ok(Self::from_poly(order, &poly))
    }

    pub fn arith(a: &Self, b: &Self, op: ArithOp, coercion: Coercion) -> Result<Self> {
        if coercion == Coercion::Strict && a.order != b.order && a.order != 1 && b.order != 1 {
            return Err(Error::IncompatibleRootOrders(a.order, b.order));
        }
        Ok(match op {
            ArithOp::Add => a.add_ref(b),
            ArithOp::Sub => a.sub_ref(b),
            ArithOp::Mul => a.mul_ref(b),
            ArithOp::Div => a.checked_div(b)?,
        })
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

fn parse_term(term: &str) -> Option<(BigRational, usize)> {
    match term.find('z') {
        None => Some((parse_rational(term)?, 0)),
        Some(pos) => {
            let (coef, rest) = term.split_at(pos);
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = if coef.is_empty() { BigRational::one() } else { parse_rational(coef)? };
            let rest = &rest[1..];
            let power = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse().ok()? };
            Some((c, power))
        }
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (_, a, b) = self.common(other);
        a == b
    }
}

impl Eq for CycloScalar {}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = self.to_text(self.order).map_err(|_| fmt::Error)?;
        if self.order == 1 {
            write!(f, "{text}")
        } else {
            write!(f, "{text} (z = zeta_{})", self.order)
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $inner:ident) => {
        impl $tr<&CycloScalar> for &CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: &CycloScalar) -> CycloScalar {
                self.$inner(rhs)
            }
        }
        impl $tr<CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: CycloScalar) -> CycloScalar {
                (&self).$inner(&rhs)
            }
        }
        impl $tr<&CycloScalar> for CycloScalar {
            type Output = CycloScalar;
            fn $m(self, rhs: &CycloScalar) -> CycloScalar {
                (&self).$inner(rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        self.neg_ref()
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        self.neg_ref()
    }
}

impl From<i64> for CycloScalar {
    fn from(n: i64) -> Self {
        CycloScalar::from_int(n)
    }
}

impl From<BigRational> for CycloScalar {
    fn from(q: BigRational) -> Self {
        CycloScalar::rational(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn cyclotomic_polynomials_by_hand() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        for n in 1..40 {
            assert_eq!(cyclotomic_polynomial(n).len() - 1, totient(n));
        }
    }

    #[test]
    fn cyclo_values() {
        assert!(CycloScalar::cyclo(0, 4).is_one());
        assert_eq!(CycloScalar::cyclo(2, 4), CycloScalar::from_int(-1));
        let z3 = CycloScalar::cyclo(1, 3);
        assert_eq!(z3.order(), 3);
        assert_eq!(z3.coeffs(), &[q(0, 1), q(1, 1)]);
        // z^2 = -1 - z mod z^2 + z + 1
        assert_eq!(CycloScalar::cyclo(2, 3).coeffs(), &[q(-1, 1), q(-1, 1)]);
        assert_eq!(CycloScalar::cyclo(-1, 3), CycloScalar::cyclo(2, 3));
        assert_eq!(CycloScalar::cyclo(1, 2), CycloScalar::from_int(-1));
    }

    #[test]
    fn field_examples() {
        let i = CycloScalar::cyclo(1, 4);
        assert_eq!(&i * &i, CycloScalar::from_int(-1));
        assert_eq!(CycloScalar::from_int(2).inv().unwrap(), CycloScalar::from_ratio(1, 2));
        let one = CycloScalar::one();
        let a = &one + &CycloScalar::cyclo(1, 3);
        let b = &one + &CycloScalar::cyclo(2, 3);
        assert!((a * b).is_one());
        assert_eq!(CycloScalar::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_orders_coerce() {
        // zeta_6 = -zeta_3^2
        assert_eq!(CycloScalar::cyclo(1, 6), -CycloScalar::cyclo(2, 3));
        let s = CycloScalar::cyclo(1, 4) + CycloScalar::cyclo(1, 3);
        assert_eq!(s.order(), 12);
        let strict = CycloScalar::arith(
            &CycloScalar::cyclo(1, 4),
            &CycloScalar::cyclo(1, 3),
            ArithOp::Add,
            Coercion::Strict,
        );
        assert_eq!(strict, Err(Error::IncompatibleRootOrders(4, 3)));
    }

    #[test]
    fn text_round_trip() {
        let x = CycloScalar::parse("1/2 + 3*z^2", 5).unwrap();
        assert_eq!(x.to_text(5).unwrap(), "1/2 + 3*z^2");
        assert_eq!(CycloScalar::parse(x.to_text(5).unwrap().as_str(), 5).unwrap(), x);
        assert_eq!(CycloScalar::parse("-z", 4).unwrap(), -CycloScalar::cyclo(1, 4));
        assert_eq!(CycloScalar::parse("z^2", 4).unwrap(), CycloScalar::from_int(-1));
        assert_eq!(CycloScalar::parse("-3/4", 1).unwrap(), CycloScalar::from_ratio(-3, 4));
        assert!(CycloScalar::parse("1/0", 1).is_err());
        assert!(CycloScalar::parse("1 +", 1).is_err());
        assert_eq!(CycloScalar::zero().to_text(3).unwrap(), "0");
    }

    #[test]
    fn conjugation_and_powers() {
        let z = CycloScalar::cyclo(1, 5);
        assert!((z.conj() * &z).is_one());
        assert_eq!(z.pow(5).unwrap(), CycloScalar::one());
        assert_eq!(z.pow(-2).unwrap(), CycloScalar::cyclo(3, 5));
    }
}
