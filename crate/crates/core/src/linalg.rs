//! Dense exact Gaussian elimination over a field.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::scalars::CycloScalar;

pub trait Field: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Only called on nonzero values.
    fn inv(&self) -> Self;
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

impl Field for CycloScalar {
    fn zero() -> Self {
        CycloScalar::zero()
    }
    fn one() -> Self {
        CycloScalar::one()
    }
    fn is_zero(&self) -> bool {
        CycloScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        self.neg_ref()
    }
    fn inv(&self) -> Self {
        CycloScalar::inv(self).expect("pivot is nonzero")
    }
}

/// Solves m * X = rhs where rhs has one column per entry of the inner
/// vectors. Returns None when m is singular.
pub fn solve_multi<F: Field>(mut m: Vec<Vec<F>>, mut rhs: Vec<Vec<F>>) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    debug_assert!(m.iter().all(|r| r.len() == n) && rhs.len() == n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        let inv = m[col][col].inv();
        for j in col..n {
            m[col][j] = m[col][j].mul(&inv);
        }
        for v in rhs[col].iter_mut() {
            *v = v.mul(&inv);
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in col..n {
                if !m[col][j].is_zero() {
                    let t = m[col][j].mul(&f);
                    m[r][j] = m[r][j].sub(&t);
                }
            }
            let (top, bottom) = if r < col {
                let (a, b) = rhs.split_at_mut(col);
                (&b[0], &mut a[r])
            } else {
                let (a, b) = rhs.split_at_mut(r);
                (&a[col], &mut b[0])
            };
            for (dst, src) in bottom.iter_mut().zip(top.iter()) {
                if !src.is_zero() {
                    *dst = dst.sub(&src.mul(&f));
                }
            }
        }
    }
    Some(rhs)
}

pub fn solve_square<F: Field>(m: &mut [Vec<F>], rhs: &mut [F]) -> Option<Vec<F>> {
    let cols: Vec<Vec<F>> = rhs.iter().map(|v| vec![v.clone()]).collect();
    let sol = solve_multi(m.to_vec(), cols)?;
    Some(sol.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn determinant<F: Field>(mut m: Vec<Vec<F>>) -> F {
    let n = m.len();
    let mut det = F::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return F::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = det.neg();
        }
        det = det.mul(&m[col][col]);
        let inv = m[col][col].inv();
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].mul(&inv);
            for j in col..n {
                let t = m[col][j].mul(&f);
                m[r][j] = m[r][j].sub(&t);
            }
        }
    }
    det
}

pub fn rank<F: Field>(mut m: Vec<Vec<F>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = m[r][col].inv();
        for i in r + 1..rows {
            if m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].mul(&inv);
            for j in col..cols {
                let t = m[r][j].mul(&f);
                m[i][j] = m[i][j].sub(&t);
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
