use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed};
use proptest::prelude::*;

use ribbongate::algebra::{rank_mod_p, snf, IntMatrix, LaurentPoly};
use ribbongate::cobordism::{
    concatenate, concordance_connected_sum, euler_characteristic, genus, pretzel_concordance,
    reverse_approximate, svvw_tower,
};
use ribbongate::diagram::{
    connected_sum, figure_eight, pretzel, reidemeister_perturb, torus2, trefoil, unknot,
    KnotDiagram,
};
use ribbongate::invariants::{alexander_poly, determinant_knot, h1_double_cover};
use ribbongate::legendrian::{legendrian_unknot, stabilize, StabSign};
use ribbongate::obstruction::{c2_lower, livingston_bound, ribbon_verdict, Verdict};
use ribbongate::selftest::check_snf;

fn bases() -> Vec<KnotDiagram> {
    vec![
        unknot(),
        trefoil(),
        figure_eight(),
        torus2(5).unwrap(),
        pretzel(3, -3, 2).unwrap(),
        KnotDiagram::from_pd(&[[1, 3, 2, 4], [3, 1, 4, 2]]).unwrap(),
    ]
}

fn relabel(d: &KnotDiagram, perm: &[u32]) -> KnotDiagram {
    let codes: Vec<[u32; 4]> = d
        .codes()
        .iter()
        .map(|t| t.map(|l| perm[l as usize - 1]))
        .collect();
    KnotDiagram::from_pd(&codes).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn perturbation_keeps_components(which in 0usize..6, seed in any::<u64>(), steps in 0usize..=20) {
        let d = &bases()[which];
        let p = reidemeister_perturb(d, seed, steps).unwrap();
        prop_assert_eq!(p.validate().unwrap(), d.validate().unwrap());
    }

    #[test]
    fn relabeling_keeps_signs(which in 0usize..6, seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let d = &bases()[which];
        let mut perm: Vec<u32> = (1..=d.arc_count()).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let r = relabel(d, &perm);
        prop_assert_eq!(r.component_count().unwrap(), d.component_count().unwrap());
        let s1: Vec<i8> = d.crossings().iter().map(|c| c.sign).collect();
        let s2: Vec<i8> = r.crossings().iter().map(|c| c.sign).collect();
        prop_assert_eq!(s1, s2);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn invariants_survive_perturbation(which in 0usize..5, seed in any::<u64>(), steps in 1usize..=10) {
        let d = &bases()[which];
        let p = reidemeister_perturb(d, seed, steps).unwrap();
        prop_assert_eq!(alexander_poly(&p).unwrap(), alexander_poly(d).unwrap());
        prop_assert_eq!(h1_double_cover(&p).unwrap(), h1_double_cover(d).unwrap());
    }

    #[test]
    fn alexander_is_symmetric_and_unit_at_one(which in 0usize..5, seed in any::<u64>()) {
        let d = reidemeister_perturb(&bases()[which], seed, 4).unwrap();
        let delta = alexander_poly(&d).unwrap();
        prop_assert_eq!(delta.invert_variable().normalize().unwrap(), delta.clone());
        prop_assert_eq!(delta.eval_i64(1).unwrap().abs(), BigInt::one());
        prop_assert_eq!(delta.eval_i64(-1).unwrap().abs(), determinant_knot(&d).unwrap());
    }

    #[test]
    fn sums_multiply(a in 0usize..5, b in 0usize..5) {
        let (d1, d2) = (&bases()[a], &bases()[b]);
        let s = connected_sum(d1, d2).unwrap();
        let prod: LaurentPoly = &alexander_poly(d1).unwrap() * &alexander_poly(d2).unwrap();
        prop_assert_eq!(alexander_poly(&s).unwrap(), prod.normalize().unwrap());
        prop_assert_eq!(
            determinant_knot(&s).unwrap(),
            determinant_knot(d1).unwrap() * determinant_knot(d2).unwrap()
        );
        let h = h1_double_cover(d1).unwrap().direct_sum(&h1_double_cover(d2).unwrap());
        prop_assert_eq!(h1_double_cover(&s).unwrap(), h);
    }

    #[test]
    fn snf_decomposes(rows in 1usize..8, cols in 1usize..8, seed in proptest::collection::vec(-20i64..=20, 64)) {
        let m = IntMatrix::from_rows(
            &(0..rows).map(|i| (0..cols).map(|j| seed[i * 8 + j]).collect::<Vec<_>>()).collect::<Vec<_>>(),
        ).unwrap();
        prop_assert!(check_snf(&m).is_ok(), "{:?}", check_snf(&m));
        let r = snf(&m);
        prop_assert_eq!(rank_mod_p(&m, 2).unwrap() <= r.rank(), true);
    }

    #[test]
    fn certificate_arithmetic(b0 in 0u64..20, b1 in 0u64..20, g in 0u64..10) {
        let raw = livingston_bound(b0, b1, g);
        prop_assert_eq!(raw, Ratio::new(b0 as i64 - b1 as i64 - 2 * g as i64, 2));
        let c = c2_lower(&raw);
        prop_assert!(Ratio::from_integer(c as i64) >= raw);
        prop_assert!(c == 0 || Ratio::from_integer(c as i64 - 1) < raw);
        prop_assert!(c2_lower(&livingston_bound(b0, b1, g + 1)) <= c);
    }

    #[test]
    fn towers_and_reversals(ks in proptest::collection::vec(1i64..=10, 1..4), g in 1u64..=10) {
        let mut c = pretzel_concordance(ks[0]).unwrap();
        for &k in &ks[1..] {
            c = concordance_connected_sum(&c, &pretzel_concordance(k).unwrap()).unwrap();
        }
        prop_assert_eq!(euler_characteristic(&c), 0);
        prop_assert_eq!(c.births(), c.saddles());
        prop_assert!(c.decomposable_certified());
        let rev = reverse_approximate(&c, "S").unwrap();
        prop_assert!(!rev.decomposable_certified());
        let tower = svvw_tower(&rev.source, g).unwrap();
        prop_assert_eq!(genus(&tower).unwrap(), g);
        let lg = concatenate(&tower, &rev).unwrap();
        prop_assert_eq!(euler_characteristic(&lg), euler_characteristic(&tower) + euler_characteristic(&rev));
        prop_assert_eq!(genus(&lg).unwrap(), g);
        prop_assert!(!lg.decomposable_certified());
    }

    #[test]
    fn stabilization_parity(signs in proptest::collection::vec(any::<bool>(), 0..12)) {
        let u = legendrian_unknot();
        let mut l = u.clone();
        for s in &signs {
            l = stabilize(&l, if *s { StabSign::Positive } else { StabSign::Negative });
        }
        prop_assert_eq!(l.tb, u.tb - signs.len() as i64);
        prop_assert_eq!((l.tb + l.rotation).rem_euclid(2), (u.tb + u.rotation).rem_euclid(2));
        prop_assert_eq!(l.base_tb(), u.tb);
    }
}

#[test]
fn decomposable_recipes_are_never_obstructed_at_genus_zero() {
    for k in 1..=10 {
        let c = pretzel_concordance(k).unwrap();
        let cert = ribbon_verdict(c.source.diagram(), c.target.diagram(), 0).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive, "k = {k}");
        let two = concordance_connected_sum(&c, &c).unwrap();
        let cert = ribbon_verdict(two.source.diagram(), two.target.diagram(), 0).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive, "k = {k}");
    }
}
