//! Critical-point lower bounds for knot cobordisms from the mod-`p`
//! homology of double branched covers, and the resulting ribbon verdicts.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{ensure_odd_prime, prime_factors};
use crate::diagram::{connected_power, KnotDiagram};
use crate::error::{Error, Result};
use crate::invariants::{
    beta1_checked, beta1_mod_p, determinant_knot, from_presentation, goeritz_matrix,
    DoubleCoverHomology,
};

/// `(beta0 - beta1) / 2 - g`.
pub fn livingston_bound(beta0: u64, beta1: u64, g: u64) -> Ratio<i64> {
    Ratio::new(beta0 as i64 - beta1 as i64, 2) - Ratio::from_integer(g as i64)
}

/// Smallest admissible count of index-2 critical points: `max(0, ceil(raw))`.
pub fn c2_lower(raw: &Ratio<i64>) -> u64 {
    raw.ceil().to_integer().max(0) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Obstructed,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionCertificate {
    /// Prime realizing the bound; `None` when `det(K0)` has no odd prime factor.
    pub p: Option<u64>,
    /// `beta1` of the double branched cover of the source end `K0`.
    pub beta0: u64,
    /// `beta1` of the double branched cover of the target end `K1`.
    pub beta1: u64,
    pub genus: u64,
    #[serde(with = "ratio_json")]
    pub raw_bound: Ratio<i64>,
    pub c2_lower: u64,
    pub verdict: Verdict,
    #[serde(with = "crate::bigint_json")]
    pub det0: BigInt,
    #[serde(with = "crate::bigint_json")]
    pub det1: BigInt,
    #[serde(with = "crate::bigint_json::vec")]
    pub factors0: Vec<BigInt>,
    #[serde(with = "crate::bigint_json::vec")]
    pub factors1: Vec<BigInt>,
    pub primes_checked: Vec<u64>,
    pub version: String,
    pub notes: Vec<String>,
}

impl ObstructionCertificate {
    /// Recomputes the bound, `c2_lower` and the verdict from the stored
    /// `beta0`, `beta1` and `genus`.
    pub fn is_consistent(&self) -> bool {
        let raw = livingston_bound(self.beta0, self.beta1, self.genus);
        let c2 = c2_lower(&raw);
        let verdict = if c2 >= 1 {
            Verdict::Obstructed
        } else {
            Verdict::Inconclusive
        };
        raw == self.raw_bound && c2 == self.c2_lower && verdict == self.verdict
    }
}

mod ratio_json {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Frac {
        num: i64,
        den: i64,
    }

    pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        Frac {
            num: *r.numer(),
            den: *r.denom(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
        let f = Frac::deserialize(d)?;
        if f.den == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(f.num, f.den))
    }
}

struct End {
    goeritz: crate::algebra::IntMatrix,
    homology: DoubleCoverHomology,
    det: BigInt,
}

fn end_data(k: &KnotDiagram) -> Result<End> {
    k.ensure_knot()?;
    let goeritz = goeritz_matrix(k)?;
    let homology = from_presentation(&goeritz)?;
    let det = determinant_knot(k)?;
    if det != homology.order {
        return Err(Error::Internal(format!(
            "determinant {det} disagrees with |H_1| = {}",
            homology.order
        )));
    }
    Ok(End {
        goeritz,
        homology,
        det,
    })
}

struct Candidate {
    p: u64,
    beta0: u64,
    beta1: u64,
    raw: Ratio<i64>,
    c2: u64,
}

/// Best Livingston bound over the odd prime factors of `det(K0)`.
///
/// The winner has the largest `c2_lower`, ties going to the smallest prime.
/// `OBSTRUCTED` means no ribbon cobordism of genus `g` from `K0` to `K1`
/// exists, hence no decomposable Lagrangian one.
pub fn ribbon_verdict(
    k0: &KnotDiagram,
    k1: &KnotDiagram,
    g: u64,
) -> Result<ObstructionCertificate> {
    ribbon_verdict_with(k0, k1, g, None)
}

/// As [`ribbon_verdict`], restricted to `primes` when given.
pub fn ribbon_verdict_with(
    k0: &KnotDiagram,
    k1: &KnotDiagram,
    g: u64,
    primes: Option<&[u64]>,
) -> Result<ObstructionCertificate> {
    let e0 = end_data(k0)?;
    let e1 = end_data(k1)?;
    let primes: Vec<u64> = match primes {
        Some(ps) => {
            for &p in ps {
                ensure_odd_prime(p)?;
            }
            ps.to_vec()
        }
        None => prime_factors(&e0.det)
            .into_iter()
            .filter(|&p| p != 2)
            .collect(),
    };

    let evaluated: Vec<Candidate> = primes
        .par_iter()
        .map(|&p| {
            let beta0 = beta1_checked(&e0.goeritz, &e0.homology, p)? as u64;
            let beta1 = beta1_checked(&e1.goeritz, &e1.homology, p)? as u64;
            let raw = livingston_bound(beta0, beta1, g);
            Ok(Candidate {
                p,
                beta0,
                beta1,
                c2: c2_lower(&raw),
                raw,
            })
        })
        .collect::<Result<_>>()?;
    let best = evaluated
        .into_iter()
        .min_by(|a, b| b.c2.cmp(&a.c2).then(a.p.cmp(&b.p)));

    let mut notes = vec![
        "beta0 is computed at the source end K0 and beta1 at the target end K1; \
                          bound = (beta0 - beta1)/2 - genus"
            .to_string(),
    ];
    let (p, beta0, beta1, raw, c2) = match best {
        Some(c) => (Some(c.p), c.beta0, c.beta1, c.raw, c.c2),
        None => {
            notes.push(format!("det(K0) = {} has no odd prime factor", e0.det));
            let raw = livingston_bound(0, 0, g);
            (None, 0, 0, raw, c2_lower(&raw))
        }
    };
    let verdict = if c2 >= 1 {
        Verdict::Obstructed
    } else {
        Verdict::Inconclusive
    };
    if verdict == Verdict::Obstructed {
        notes.push(format!(
            "every Morse cobordism of genus {g} from K0 to K1 has at least {c2} index-2 \
             critical points, so none is ribbon and none is a decomposable Lagrangian cobordism"
        ));
    }
    Ok(ObstructionCertificate {
        p,
        beta0,
        beta1,
        genus: g,
        raw_bound: raw,
        c2_lower: c2,
        verdict,
        det0: e0.det,
        det1: e1.det,
        factors0: e0.homology.invariant_factors,
        factors1: e1.homology.invariant_factors,
        primes_checked: primes,
        version: crate::VERSION.to_string(),
        notes,
    })
}

fn divides(p: u64, n: &BigInt) -> bool {
    n.is_multiple_of(&BigInt::from(p))
}

/// For `p | det(K)`: is `beta1` of the `n`-fold sum at least `n`?
pub fn check_prop_lower(k: &KnotDiagram, n: usize, p: u64) -> Result<bool> {
    ensure_odd_prime(p)?;
    if n == 0 {
        return Err(Error::BadParameter("n must be positive".into()));
    }
    let det = determinant_knot(k)?;
    if !divides(p, &det) {
        return Err(Error::HypothesisFailed(format!(
            "{p} does not divide det(K) = {det}"
        )));
    }
    let kn = connected_power(k, n)?;
    Ok(beta1_mod_p(&kn, p)? >= n)
}

/// For `p` not dividing `det(K)`: does `H_1(Σ_2(K); F_p)` vanish?
pub fn check_prop_vanish(k: &KnotDiagram, p: u64) -> Result<bool> {
    ensure_odd_prime(p)?;
    let det = determinant_knot(k)?;
    if divides(p, &det) {
        return Err(Error::HypothesisFailed(format!(
            "{p} divides det(K) = {det}"
        )));
    }
    Ok(beta1_mod_p(k, p)? == 0)
}
