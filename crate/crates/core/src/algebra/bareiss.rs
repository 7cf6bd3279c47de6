use num_bigint::BigInt;
use num_integer::Integer;

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

/// Integral domain with exact division, as needed by fraction-free elimination.
pub trait ExactRing: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn mul(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// `self / rhs`, where the caller guarantees `rhs` divides `self`.
    fn div_exact(&self, rhs: &Self) -> Result<Self>;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(rhs);
        if !num_traits::Zero::is_zero(&r) {
            return Err(Error::InexactDivision(format!("{self} by {rhs}")));
        }
        Ok(q)
    }
}

impl ExactRing for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Result<Self> {
        LaurentPoly::div_exact(self, rhs)
    }
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
/// `rows` must be square; the empty matrix has determinant one.
pub fn bareiss_det<R: ExactRing>(mut a: Vec<Vec<R>>) -> Result<R> {
    let n = a.len();
    if let Some(bad) = a.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: bad.len(),
        });
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(R::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = num.div_exact(&prev)?;
            }
            a[i][k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 {
        R::one()
    } else {
        a[n - 1][n - 1].clone()
    };
    Ok(if negate { det.neg() } else { det })
}
