//! End-to-end construction of the genus-`g` cobordism `L_g` and its
//! non-ribbon certificate.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{ensure_odd_prime, prime_factors};
use crate::cobordism::{
    concatenate, concordance_connected_sum, genus, identity, pretzel_concordance,
    pretzel_parameters, reverse_approximate, svvw_tower, CobordismRecipe,
};
use crate::diagram::DiagramSpec;
use crate::error::{Error, Result};
use crate::invariants::determinant_knot;
use crate::legendrian::legendrian_unknot;
use crate::obstruction::{ribbon_verdict_with, ObstructionCertificate};

/// Known decomposable concordances out of the `tb = -1` unknot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConcordanceSpec {
    Identity,
    /// `C_k`, ending at the Legendrian pretzel `P(3, -3, k)`.
    Pretzel(i64),
    Sum(Vec<ConcordanceSpec>),
}

impl ConcordanceSpec {
    /// Reads off a concordance for a knot spec built from `P(3, -3, k)`
    /// summands and unknots.
    pub fn for_knot(spec: &DiagramSpec) -> Result<Self> {
        Ok(match spec {
            DiagramSpec::Unknot => ConcordanceSpec::Identity,
            DiagramSpec::Pd(c) if c.is_empty() => ConcordanceSpec::Identity,
            DiagramSpec::Pretzel([3, -3, k]) => ConcordanceSpec::Pretzel(*k),
            DiagramSpec::Sum(parts) => {
                ConcordanceSpec::Sum(parts.iter().map(Self::for_knot).collect::<Result<_>>()?)
            }
            DiagramSpec::Power(base, n) => ConcordanceSpec::Sum(vec![Self::for_knot(base)?; *n]),
            other => {
                return Err(Error::HypothesisFailed(format!(
                    "no decomposable concordance from the unknot to {other} is known"
                )))
            }
        })
    }

    pub fn recipe(&self) -> Result<CobordismRecipe> {
        match self {
            ConcordanceSpec::Identity => Ok(identity(legendrian_unknot())),
            ConcordanceSpec::Pretzel(k) => pretzel_concordance(*k),
            ConcordanceSpec::Sum(parts) => {
                let mut acc = identity(legendrian_unknot());
                for p in parts {
                    acc = concordance_connected_sum(&acc, &p.recipe()?)?;
                }
                Ok(acc)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub base_knot: DiagramSpec,
    pub base_concordance: ConcordanceSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime_hint: Option<u64>,
}

impl FamilySpec {
    pub fn new(base_knot: DiagramSpec) -> Result<Self> {
        let base_concordance = ConcordanceSpec::for_knot(&base_knot)?;
        Ok(FamilySpec {
            base_knot,
            base_concordance,
            prime_hint: None,
        })
    }

    pub fn with_prime(mut self, p: u64) -> Self {
        self.prime_hint = Some(p);
        self
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// A diagram spec (`pretzel:3,-3,4`, `unknot`, ...) or a full JSON
    /// `FamilySpec` object.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('{') {
            if let Ok(f) = serde_json::from_str::<FamilySpec>(t) {
                return Ok(f);
            }
        }
        let spec: DiagramSpec = t.parse()?;
        match FamilySpec::new(spec.clone()) {
            Ok(f) => Ok(f),
            // unknown concordance: keep the knot so the determinant check reports first
            Err(Error::HypothesisFailed(_)) => Ok(FamilySpec {
                base_knot: spec,
                base_concordance: ConcordanceSpec::Sum(Vec::new()),
                prime_hint: None,
            }),
            Err(e) => Err(e),
        }
    }
}

/// Smallest `n > 2g`.
pub fn minimal_copies(g: u64) -> Result<u64> {
    if g == 0 {
        return Err(Error::BadParameter("genus must be at least 1".into()));
    }
    Ok(2 * g + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub family: FamilySpec,
    pub genus: u64,
    pub copies: u64,
    pub recipe: CobordismRecipe,
    pub certificate: ObstructionCertificate,
}

/// Builds `L_g` with `n = 2g + 1` copies.
pub fn build_lg(spec: &FamilySpec, g: u64) -> Result<Construction> {
    build_lg_with_copies(spec, g, None)
}

/// Builds `L_g`: the `n`-fold sum `C^n`, its approximate reversal, a
/// genus-`g` tower on top, and the obstruction at genus `g` between the
/// smooth ends.
pub fn build_lg_with_copies(
    spec: &FamilySpec,
    g: u64,
    copies: Option<u64>,
) -> Result<Construction> {
    let n = match copies {
        Some(0) => return Err(Error::BadParameter("copies must be positive".into())),
        Some(n) => {
            minimal_copies(g)?;
            n
        }
        None => minimal_copies(g)?,
    };

    let base = spec.base_knot.build()?;
    base.ensure_knot()?;
    let det = determinant_knot(&base)?;
    let odd: Vec<u64> = prime_factors(&det)
        .into_iter()
        .filter(|&p| p != 2)
        .collect();
    if odd.is_empty() {
        return Err(Error::HypothesisFailed(format!(
            "det({}) = {det} has no odd prime factor",
            spec.base_knot
        )));
    }
    if let Some(p) = spec.prime_hint {
        ensure_odd_prime(p)?;
        if !odd.contains(&p) {
            return Err(Error::HypothesisFailed(format!(
                "{p} does not divide det({}) = {det}",
                spec.base_knot
            )));
        }
    }

    let c = spec.base_concordance.recipe()?;
    if !c.decomposable_certified() {
        return Err(Error::HypothesisFailed(
            "base concordance is not certified decomposable".into(),
        ));
    }
    let wanted = DiagramSpec::sum([spec.base_knot.clone()]);
    if c.target.spec() != &wanted || c.source.spec() != &DiagramSpec::Unknot {
        return Err(Error::HypothesisFailed(format!(
            "base concordance runs from {} to {}, not from the unknot to {wanted}",
            c.source.spec(),
            c.target.spec()
        )));
    }

    let mut cn = c.clone();
    for _ in 1..n {
        cn = concordance_connected_sum(&cn, &c)?;
    }
    let reversed = reverse_approximate(&cn, "S")?;
    let tower = svvw_tower(&reversed.source, g)?;
    let recipe = concatenate(&tower, &reversed)?;
    let got = genus(&recipe)?;
    if got != g {
        return Err(Error::Internal(format!(
            "recipe has genus {got}, expected {g}"
        )));
    }

    let hint = spec.prime_hint.map(|p| vec![p]);
    let mut certificate = ribbon_verdict_with(
        recipe.source.diagram(),
        recipe.target.diagram(),
        g,
        hint.as_deref(),
    )?;
    certificate.notes.push(format!(
        "K0 = (S+S-)^{g}(S(Lambda^{n})) is smoothly ({})^{n}; K1 = S(U^{n}) is smoothly the unknot",
        spec.base_knot
    ));
    certificate.notes.push(
        "stabilizations S.neg and S.pos from the approximation step are unquantified".to_string(),
    );
    let small: Vec<i64> = pretzel_parameters(&c)
        .into_iter()
        .filter(|&k| k < 3)
        .collect();
    if !small.is_empty() {
        certificate.notes.push(format!(
            "C_k with k = {small:?} is assumed to exist; the pictured family has k >= 3"
        ));
    }
    Ok(Construction {
        family: spec.clone(),
        genus: g,
        copies: n,
        recipe,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobordism::euler_characteristic;
    use crate::invariants::beta1_mod_p;
    use crate::obstruction::{livingston_bound, Verdict};
    use num_rational::Ratio;

    fn p334() -> FamilySpec {
        "pretzel:3,-3,4".parse().unwrap()
    }

    #[test]
    fn copies() {
        assert_eq!(minimal_copies(1).unwrap(), 3);
        assert_eq!(minimal_copies(2).unwrap(), 5);
        assert_eq!(minimal_copies(10).unwrap(), 21);
        assert!(matches!(minimal_copies(0), Err(Error::BadParameter(_))));
    }

    #[test]
    fn pretzel_family_obstructed() {
        for g in 1..=3 {
            let c = build_lg(&p334(), g).unwrap();
            assert_eq!(c.copies, 2 * g + 1);
            assert_eq!(genus(&c.recipe).unwrap(), g);
            assert!(!c.recipe.decomposable_certified());
            assert_eq!(c.certificate.p, Some(3));
            // one factor of 3 per copy
            assert_eq!(c.certificate.beta0, c.copies);
            assert_eq!(c.certificate.raw_bound, Ratio::new(1, 2));
            assert_eq!(c.certificate.c2_lower, 1);
            assert_eq!(c.certificate.verdict, Verdict::Obstructed);
            assert!(c.certificate.is_consistent());
        }
    }

    #[test]
    fn bookkeeping_of_ends() {
        for g in 1..=5 {
            let c = build_lg(&p334(), g).unwrap();
            let r = &c.recipe;
            assert_eq!(r.source.tb, -1 - 2 * g as i64);
            assert_eq!(r.source.rotation, 0);
            assert_eq!(r.source.symbolic, vec!["S.neg".to_string()]);
            assert_eq!(r.target.spec(), &DiagramSpec::Unknot);
            assert_eq!(r.target.symbolic, vec!["S.pos".to_string()]);
            assert_eq!(r.source.diagram().component_count().unwrap(), 1);
            assert_eq!(euler_characteristic(r), -2 * g as i64);
            let b0 = beta1_mod_p(r.source.diagram(), 3).unwrap() as u64;
            let b1 = beta1_mod_p(r.target.diagram(), 3).unwrap() as u64;
            assert_eq!(c.certificate.raw_bound, livingston_bound(b0, b1, g));
        }
    }

    #[test]
    fn threshold_is_sharp() {
        let c = build_lg_with_copies(&p334(), 1, Some(2)).unwrap();
        assert_eq!(c.certificate.raw_bound, Ratio::from_integer(0));
        assert_eq!(c.certificate.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn corpus_families() {
        for k in [1, 2, 3, 5, 6] {
            let f = FamilySpec::new(DiagramSpec::pretzel(3, -3, k)).unwrap();
            let c = build_lg(&f, 1).unwrap();
            assert_eq!(c.certificate.verdict, Verdict::Obstructed, "k = {k}");
            assert_eq!(
                c.certificate.notes.iter().any(|n| n.contains("k >= 3")),
                k < 3
            );
        }
        let mixed: FamilySpec = "pretzel:3,-3,4 # pretzel:3,-3,5".parse().unwrap();
        let c = build_lg(&mixed, 2).unwrap();
        assert_eq!(c.certificate.verdict, Verdict::Obstructed);
        assert_eq!(c.certificate.beta0, 10);
    }

    #[test]
    fn hypotheses() {
        let u: FamilySpec = "unknot".parse().unwrap();
        assert!(matches!(build_lg(&u, 1), Err(Error::HypothesisFailed(_))));
        let t: FamilySpec = "torus2:5".parse().unwrap();
        assert!(matches!(build_lg(&t, 1), Err(Error::HypothesisFailed(_))));
        assert!(matches!(
            build_lg(&p334().with_prime(5), 1),
            Err(Error::HypothesisFailed(_))
        ));
        assert!(matches!(
            build_lg(&p334().with_prime(9), 1),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(build_lg(&p334(), 0), Err(Error::BadParameter(_))));
        assert_eq!(
            build_lg(&p334().with_prime(3), 1).unwrap().certificate.p,
            Some(3)
        );
    }

    #[test]
    fn json_family() {
        let f = p334().with_prime(3);
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(
            text,
            r#"{"base_knot":{"pretzel":[3,-3,4]},"base_concordance":{"pretzel":4},"prime_hint":3}"#
        );
        assert_eq!(text.parse::<FamilySpec>().unwrap(), f);
    }
}
