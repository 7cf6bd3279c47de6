use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d <= n / d {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn ensure_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::BadParameter(format!("{p} is not prime")))
    }
}

pub fn ensure_odd_prime(p: u64) -> Result<()> {
    ensure_prime(p)?;
    if p == 2 {
        return Err(Error::BadParameter("p must be an odd prime".into()));
    }
    Ok(())
}

/// Distinct prime factors of `|n|` in increasing order, by trial division.
/// Returns an empty list for 0 and ±1.
pub fn prime_factors(n: &BigInt) -> Vec<u64> {
    let mut m = n.magnitude().clone();
    let mut out = Vec::new();
    if m.bits() == 0 {
        return out;
    }
    let mut d = 2u64;
    loop {
        let dd = num_bigint::BigUint::from(d);
        if &dd * &dd > m {
            break;
        }
        if m.is_multiple_of(&dd) {
            out.push(d);
            while m.is_multiple_of(&dd) {
                m /= &dd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > num_bigint::BigUint::from(1u32) {
        out.push(
            m.to_u64()
                .expect("trial division leaves a factor below the square bound"),
        );
    }
    out
}

fn reduce(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Rank of `m` over the field with `p` elements.
pub fn rank_mod_p(m: &IntMatrix, p: u64) -> Result<usize> {
    ensure_prime(p)?;
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| m.row(i).iter().map(|x| reduce(x, p)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = powmod(a[rank][col], p - 2, p);
        for x in a[rank].iter_mut() {
            *x = mulmod(*x, inv, p);
        }
        let pivot = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            let f = row[col];
            if i == rank || f == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x = (*x + p - mulmod(f, y, p)) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    Ok(rank)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..40).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
    }

    #[test]
    fn factors() {
        assert_eq!(prime_factors(&BigInt::from(1)), Vec::<u64>::new());
        assert_eq!(prime_factors(&BigInt::from(-9)), vec![3]);
        assert_eq!(
            prime_factors(&BigInt::from(2 * 3 * 3 * 49 * 101)),
            vec![2, 3, 7, 101]
        );
        assert_eq!(prime_factors(&BigInt::from(3u64).pow(40)), vec![3]);
    }

    #[test]
    fn rank_examples() {
        let three = IntMatrix::from_rows(&[vec![3]]).unwrap();
        assert_eq!(rank_mod_p(&three, 3).unwrap(), 0);
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 2);
        assert_eq!(rank_mod_p(&m, 2).unwrap(), 0);
        for p in [3, 5, 7, 101] {
            assert_eq!(rank_mod_p(&IntMatrix::identity(6), p).unwrap(), 6);
        }
        assert!(matches!(rank_mod_p(&m, 9), Err(Error::BadParameter(_))));
    }
}
