//! Alexander polynomial, determinant and double-branched-cover homology of
//! knot diagrams.

mod alexander;
mod goeritz;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

pub use alexander::{
    alexander_matrix, alexander_matrix_at_minus_one, alexander_poly, determinant_knot,
};
pub use goeritz::{goeritz_matrix, goeritz_unreduced};

use crate::algebra::{ensure_odd_prime, rank_mod_p, snf, IntMatrix};
use crate::diagram::KnotDiagram;
use crate::error::{Error, Result};

/// `H_1` of the double branched cover as a list of cyclic orders.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleCoverHomology {
    /// Invariant factors `>= 2`, each dividing the next.
    #[serde(with = "crate::bigint_json::vec")]
    pub invariant_factors: Vec<BigInt>,
    #[serde(with = "crate::bigint_json")]
    pub order: BigInt,
}

impl DoubleCoverHomology {
    /// Number of factors divisible by `p`, i.e. `dim H_1(.; F_p)`.
    pub fn beta1(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.invariant_factors
            .iter()
            .filter(|f| f.is_multiple_of(&p))
            .count()
    }

    /// Direct sum (the homology of a connected sum).
    pub fn direct_sum(&self, other: &Self) -> Self {
        let n = self.invariant_factors.len() + other.invariant_factors.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, f) in self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .enumerate()
        {
            m[(i, i)] = f.clone();
        }
        from_presentation(&m).expect("diagonal presentation of a finite group")
    }
}

pub(crate) fn from_presentation(m: &IntMatrix) -> Result<DoubleCoverHomology> {
    let r = snf(m);
    if r.zero_count > 0 || m.rows() != m.cols() {
        return Err(Error::Internal(format!(
            "presentation matrix {}x{} has free part",
            m.rows(),
            m.cols()
        )));
    }
    let invariant_factors: Vec<BigInt> = r
        .invariant_factors
        .into_iter()
        .filter(|f| !f.is_one())
        .collect();
    let order = invariant_factors.iter().product::<BigInt>().abs();
    Ok(DoubleCoverHomology {
        invariant_factors,
        order,
    })
}

/// Smith normal form of the reduced Goeritz matrix, trivial factors dropped.
pub fn h1_double_cover(d: &KnotDiagram) -> Result<DoubleCoverHomology> {
    let g = goeritz_matrix(d)?;
    from_presentation(&g)
}

/// `dim H_1(Σ_2(K); F_p)`, counted from the invariant factors and checked
/// against the corank of the reduced Goeritz matrix over `F_p`.
pub fn beta1_mod_p(d: &KnotDiagram, p: u64) -> Result<usize> {
    ensure_odd_prime(p)?;
    let g = goeritz_matrix(d)?;
    let h = from_presentation(&g)?;
    beta1_checked(&g, &h, p)
}

/// `beta1` from a reduced Goeritz matrix `g` and the homology it presents,
/// cross-checked against the corank of `g` over `F_p`.
pub(crate) fn beta1_checked(g: &IntMatrix, h: &DoubleCoverHomology, p: u64) -> Result<usize> {
    let by_factors = h.beta1(p);
    let corank = g.rows() - rank_mod_p(g, p)?;
    if by_factors != corank {
        return Err(Error::Internal(format!(
            "beta1 mod {p}: {by_factors} from invariant factors, {corank} from rank"
        )));
    }
    Ok(by_factors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abs_det, LaurentPoly};
    use crate::diagram::{
        connected_power, connected_sum, figure_eight, pretzel, torus2, trefoil, unknot,
    };

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn unknot_is_trivial() {
        let u = unknot();
        assert_eq!(alexander_poly(&u).unwrap(), LaurentPoly::one());
        assert_eq!(determinant_knot(&u).unwrap(), big(1));
        let h = h1_double_cover(&u).unwrap();
        assert!(h.invariant_factors.is_empty());
        assert_eq!(h.order, big(1));
        assert_eq!(beta1_mod_p(&u, 3).unwrap(), 0);
    }

    #[test]
    fn trefoil_invariants() {
        // hand expansion of the 2x2 Wirtinger minor
        let expected = LaurentPoly::from_coeffs(0, [1, -1, 1]);
        assert_eq!(alexander_poly(&trefoil()).unwrap(), expected);
        assert_eq!(
            alexander_poly(&pretzel(1, 1, 1).unwrap()).unwrap(),
            expected
        );
        assert_eq!(alexander_poly(&torus2(3).unwrap()).unwrap(), expected);
        assert_eq!(determinant_knot(&trefoil()).unwrap(), big(3));
        let g = goeritz_matrix(&trefoil()).unwrap();
        assert!(g.rows() <= 2);
        assert_eq!(abs_det(&g).unwrap(), big(3));
        assert_eq!(
            h1_double_cover(&trefoil()).unwrap().invariant_factors,
            vec![big(3)]
        );
        assert_eq!(beta1_mod_p(&trefoil(), 3).unwrap(), 1);
        assert_eq!(beta1_mod_p(&trefoil(), 5).unwrap(), 0);
    }

    #[test]
    fn figure_eight_invariants() {
        assert_eq!(
            alexander_poly(&figure_eight()).unwrap(),
            LaurentPoly::from_coeffs(0, [1, -3, 1])
        );
        assert_eq!(determinant_knot(&figure_eight()).unwrap(), big(5));
    }

    #[test]
    fn torus_determinants() {
        assert_eq!(determinant_knot(&torus2(5).unwrap()).unwrap(), big(5));
        assert_eq!(determinant_knot(&torus2(7).unwrap()).unwrap(), big(7));
        assert_eq!(
            alexander_poly(&torus2(5).unwrap()).unwrap(),
            LaurentPoly::from_coeffs(0, [1, -1, 1, -1, 1])
        );
    }

    #[test]
    fn pretzel_family_determinant_nine() {
        for k in 1..=10 {
            let d = pretzel(3, -3, k).unwrap();
            assert_eq!(determinant_knot(&d).unwrap(), big(9), "k = {k}");
            assert_eq!(abs_det(&goeritz_matrix(&d).unwrap()).unwrap(), big(9));
        }
    }

    #[test]
    fn pretzel_homology_depends_on_k_mod_3() {
        // reduced Goeritz [[0, 3], [3, k - 3]] has content gcd(3, k)
        for k in 1..=10 {
            let h = h1_double_cover(&pretzel(3, -3, k).unwrap()).unwrap();
            let expected = if k % 3 == 0 {
                vec![big(3), big(3)]
            } else {
                vec![big(9)]
            };
            assert_eq!(h.invariant_factors, expected, "k = {k}");
        }
    }

    #[test]
    fn sums_multiply() {
        let tt = connected_sum(&trefoil(), &trefoil()).unwrap();
        assert_eq!(
            alexander_poly(&tt).unwrap(),
            LaurentPoly::from_coeffs(0, [1, -1, 1]).pow(2)
        );
        assert_eq!(determinant_knot(&tt).unwrap(), big(9));
        assert_eq!(
            h1_double_cover(&tt).unwrap().invariant_factors,
            vec![big(3), big(3)]
        );
        let mixed = connected_sum(&pretzel(3, -3, 4).unwrap(), &torus2(3).unwrap()).unwrap();
        assert_eq!(determinant_knot(&mixed).unwrap(), big(27));
        assert_eq!(abs_det(&goeritz_matrix(&mixed).unwrap()).unwrap(), big(27));
    }

    #[test]
    fn beta1_counts_copies() {
        let k = pretzel(3, -3, 4).unwrap();
        for n in 1..=4 {
            let kn = connected_power(&k, n).unwrap();
            assert_eq!(beta1_mod_p(&kn, 3).unwrap(), n);
        }
    }

    #[test]
    fn beta1_rejects_bad_primes() {
        assert!(matches!(
            beta1_mod_p(&trefoil(), 2),
            Err(Error::BadParameter(_))
        ));
        assert!(matches!(
            beta1_mod_p(&trefoil(), 9),
            Err(Error::BadParameter(_))
        ));
    }

    #[test]
    fn direct_sum_of_homology() {
        let a = h1_double_cover(&trefoil()).unwrap();
        let b = h1_double_cover(&pretzel(3, -3, 4).unwrap()).unwrap();
        let s = a.direct_sum(&b);
        assert_eq!(s.invariant_factors, vec![big(3), big(9)]);
        assert_eq!(s.order, big(27));
    }

    #[test]
    fn links_rejected() {
        let hopf = KnotDiagram::from_pd(&[[1, 3, 2, 4], [3, 1, 4, 2]]).unwrap();
        assert!(matches!(alexander_poly(&hopf), Err(Error::NotAKnot { .. })));
        assert!(matches!(
            determinant_knot(&hopf),
            Err(Error::NotAKnot { .. })
        ));
        assert!(matches!(goeritz_matrix(&hopf), Err(Error::NotAKnot { .. })));
    }
}
