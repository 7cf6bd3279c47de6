use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse integer Laurent polynomial in one variable `t`.
///
/// Coefficients are stored by exponent; zero coefficients are never stored,
/// so the empty map is the zero polynomial and structural equality is ring
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^e`
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    /// Builds `sum coeffs[i] * t^(min_exp + i)`.
    pub fn from_coeffs<C: Into<BigInt>>(min_exp: i64, coeffs: impl IntoIterator<Item = C>) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term(min_exp + i as i64, c.into());
        }
        p
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Span `max_exp - min_exp`; zero for constants and for the zero polynomial.
    pub fn span(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// Dense coefficient list from `min_exp` to `max_exp`.
    pub fn dense_coeffs(&self) -> Vec<BigInt> {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Vec::new();
        };
        (lo..=hi).map(|e| self.coeff(e)).collect()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// `p(t) -> p(t^-1)`
    pub fn invert_variable(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at an integer point. Fails at `t0 = 0` when a negative
    /// exponent is present.
    pub fn eval(&self, t0: &BigInt) -> Result<BigInt> {
        if t0.is_zero() {
            if self.min_exp().is_some_and(|e| e < 0) {
                return Err(Error::EvalAtZero);
            }
            return Ok(self.coeff(0));
        }
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return Ok(BigInt::zero());
        };
        // Horner on t^-lo * p, then divide back out exactly when lo < 0.
        let mut acc = BigInt::zero();
        for e in (lo..=hi).rev() {
            acc = acc * t0 + self.coeff(e);
        }
        if lo >= 0 {
            Ok(acc * t0.pow(lo as u32))
        } else {
            let den = t0.pow((-lo) as u32);
            let (q, r) = acc.div_rem(&den);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!(
                    "value of {self} at {t0} is not an integer"
                )));
            }
            Ok(q)
        }
    }

    pub fn eval_i64(&self, t0: i64) -> Result<BigInt> {
        self.eval(&BigInt::from(t0))
    }

    /// Canonical representative up to units `±t^k`: lowest exponent 0 and
    /// positive lowest coefficient.
    pub fn normalize(&self) -> Result<Self> {
        let lo = self.min_exp().ok_or(Error::ZeroPolynomial)?;
        let shifted = self.shift(-lo);
        if shifted.coeff(0).is_negative() {
            Ok(-shifted)
        } else {
            Ok(shifted)
        }
    }

    /// Exact quotient `self / divisor` in `Z[t, t^-1]`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let d_lo = divisor
            .min_exp()
            .ok_or_else(|| Error::InexactDivision("division by the zero polynomial".into()))?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let d_hi = divisor.max_exp().unwrap_or(d_lo);
        let lead = divisor.coeff(d_hi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        // Long division from the top; the remainder span shrinks each step.
        while let Some(r_hi) = rem.max_exp() {
            let r_lo = rem.min_exp().unwrap_or(r_hi);
            if r_hi - r_lo < d_hi - d_lo {
                return Err(Error::InexactDivision(format!("{self} by {divisor}")));
            }
            let (c, r) = rem.coeff(r_hi).div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::InexactDivision(format!("{self} by {divisor}")));
            }
            let term = Self::monomial(c, r_hi - d_hi);
            rem = &rem - &(&term * divisor);
            quot = &quot + &term;
        }
        Ok(quot)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LaurentPoly", 2)?;
        st.serialize_field("min_exp", &self.min_exp().unwrap_or(0))?;
        let coeffs: Vec<crate::bigint_json::Json> = self
            .dense_coeffs()
            .iter()
            .map(crate::bigint_json::Json::from)
            .collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            min_exp: i64,
            coeffs: Vec<crate::bigint_json::Json>,
        }
        let raw = Raw::deserialize(d)?;
        Ok(LaurentPoly::from_coeffs(
            raw.min_exp,
            raw.coeffs.into_iter().map(BigInt::from),
        ))
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(mut self) -> LaurentPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> LaurentPoly {
        // t^-1 - 1 + t
        LaurentPoly::from_coeffs(-1, [1, -1, 1])
    }

    #[test]
    fn trefoil_at_minus_one() {
        assert_eq!(trefoil().eval_i64(-1).unwrap(), BigInt::from(-3));
        assert_eq!(trefoil().pow(2).eval_i64(-1).unwrap(), BigInt::from(9));
    }

    #[test]
    fn unit_is_identity() {
        let p = trefoil();
        assert_eq!(&p * &LaurentPoly::one(), p);
        assert_eq!(&p + &LaurentPoly::zero(), p);
    }

    #[test]
    fn eval_at_zero() {
        assert_eq!(trefoil().eval_i64(0), Err(Error::EvalAtZero));
        let p = LaurentPoly::from_coeffs(0, [4, 1]);
        assert_eq!(p.eval_i64(0).unwrap(), BigInt::from(4));
    }

    #[test]
    fn normalize_examples() {
        // -t^2 + t^3 -> 1 - t
        let p = LaurentPoly::from_coeffs(2, [-1, 1]);
        assert_eq!(p.normalize().unwrap(), LaurentPoly::from_coeffs(0, [1, -1]));
        assert_eq!(
            trefoil().normalize().unwrap(),
            LaurentPoly::from_coeffs(0, [1, -1, 1])
        );
        assert_eq!(
            LaurentPoly::constant(-5).normalize().unwrap(),
            LaurentPoly::constant(5)
        );
        assert_eq!(LaurentPoly::zero().normalize(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn exact_division() {
        let a = LaurentPoly::from_coeffs(-2, [3, 0, -1, 7]);
        let b = LaurentPoly::from_coeffs(1, [2, -5]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(LaurentPoly::from_coeffs(0, [1, 1])
            .div_exact(&LaurentPoly::constant(2))
            .is_err());
    }

    #[test]
    fn display() {
        assert_eq!(trefoil().to_string(), "t^-1 - 1 + t");
        assert_eq!(
            LaurentPoly::from_coeffs(0, [2, 0, -3]).to_string(),
            "2 - 3*t^2"
        );
    }

    #[test]
    fn serde_roundtrip() {
        let p = LaurentPoly::from_coeffs(-3, [1, 0, -4, 2]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"min_exp":-3,"coeffs":[1,0,-4,2]}"#);
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
    }
}
