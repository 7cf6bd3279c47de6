//! Acceptance criteria as runnable checks, shared by the CLI `selftest`
//! command and the acceptance test target.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{abs_det, rank_mod_p, snf, IntMatrix, LaurentPoly};
use crate::cobordism::{
    concatenate, concordance_connected_sum, euler_characteristic, genus, identity,
    pretzel_concordance, reverse_approximate, svvw_tower, CobordismRecipe,
};
use crate::diagram::{
    connected_sum, figure_eight, pretzel, reidemeister_perturb, torus2, trefoil, unknot,
    KnotDiagram,
};
use crate::invariants::{alexander_poly, determinant_knot, goeritz_matrix, h1_double_cover};
use crate::legendrian::{legendrian_unknot, LegendrianKnot};
use crate::obstruction::{check_prop_lower, check_prop_vanish, Verdict};
use crate::pipeline::{build_lg, FamilySpec};

/// Environment variable fixing the fuzz seeds.
pub const SEED_ENV: &str = "RIBBONGATE_SEED";

pub fn seed_from_env() -> u64 {
    std::env::var(SEED_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(0)
}

type Check = fn(u64) -> std::result::Result<String, String>;

pub struct Criterion {
    pub name: &'static str,
    pub limit: Duration,
    check: Check,
}

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl Outcome {
    pub fn line(&self) -> String {
        format!(
            "[{}] {} ({} ms, limit {} ms): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed_ms,
            self.limit_ms,
            self.detail
        )
    }
}

impl Criterion {
    pub fn run(&self, seed: u64) -> Outcome {
        let start = Instant::now();
        let res = (self.check)(seed);
        let elapsed = start.elapsed();
        let in_time = elapsed <= self.limit;
        let (passed, mut detail) = match res {
            Ok(d) => (in_time, d),
            Err(e) => (false, e),
        };
        if !in_time {
            detail = format!("over time limit; {detail}");
        }
        Outcome {
            name: self.name,
            passed,
            detail,
            elapsed_ms: elapsed.as_millis(),
            limit_ms: self.limit.as_millis(),
        }
    }
}

pub fn criteria() -> Vec<Criterion> {
    let c = |name, secs, check| Criterion {
        name,
        limit: Duration::from_secs(secs),
        check,
    };
    vec![
        c("pretzel_determinant_table", 5, pretzel_determinant_table),
        c("unknot_normalization", 5, unknot_normalization),
        c("dual_path_determinant", 60, dual_path_determinant),
        c("multiplicativity", 60, multiplicativity),
        c("prop_grid", 120, prop_grid),
        c("livingston_end_to_end", 60, livingston_end_to_end),
        c("snf_properties", 60, snf_properties),
        c("recipe_accounting", 10, recipe_accounting),
    ]
}

/// Runs every criterion; with `parallel` the criteria run concurrently but
/// outcomes keep their fixed order.
pub fn run_all(seed: u64, parallel: bool) -> Vec<Outcome> {
    let cs = criteria();
    if parallel {
        cs.par_iter().map(|c| c.run(seed)).collect()
    } else {
        cs.iter().map(|c| c.run(seed)).collect()
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: crate::Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// `(k, det P(3,-3,k))` for `k = 1..=10`.
pub fn pretzel_det_table() -> crate::Result<Vec<(i64, BigInt)>> {
    (1..=10)
        .map(|k| Ok((k, determinant_knot(&pretzel(3, -3, k)?)?)))
        .collect()
}

fn pretzel_determinant_table(_: u64) -> std::result::Result<String, String> {
    let table = e2s(pretzel_det_table())?;
    for (k, d) in &table {
        ensure(*d == BigInt::from(9), || format!("det P(3,-3,{k}) = {d}"))?;
    }
    Ok("det P(3,-3,k) = 9 for k = 1..10".into())
}

fn unknot_normalization(_: u64) -> std::result::Result<String, String> {
    let u = unknot();
    let det = e2s(determinant_knot(&u))?;
    let delta = e2s(alexander_poly(&u))?;
    let h = e2s(h1_double_cover(&u))?;
    ensure(det.is_one(), || format!("det = {det}"))?;
    ensure(delta == LaurentPoly::one(), || format!("Δ = {delta}"))?;
    ensure(h.invariant_factors.is_empty(), || {
        format!("factors {:?}", h.invariant_factors)
    })?;
    Ok("det 1, Δ 1, no invariant factors".into())
}

/// Named knots used by the dual-path and multiplicativity checks.
pub fn corpus() -> Vec<(String, KnotDiagram)> {
    let mut out = vec![
        ("unknot".to_string(), unknot()),
        ("trefoil".to_string(), trefoil()),
        ("figure8".to_string(), figure_eight()),
        ("torus2(5)".to_string(), torus2(5).expect("torus2(5)")),
        ("torus2(7)".to_string(), torus2(7).expect("torus2(7)")),
    ];
    for k in 1..=10 {
        out.push((
            format!("pretzel(3,-3,{k})"),
            pretzel(3, -3, k).expect("pretzel"),
        ));
    }
    out
}

/// `(name, |Δ(-1)|, |det Goeritz|)` for one knot.
pub fn dual_determinants(d: &KnotDiagram) -> crate::Result<(BigInt, BigInt)> {
    let via_delta = alexander_poly(d)?.eval_i64(-1)?.abs();
    let via_goeritz = if d.is_trivial() {
        BigInt::one()
    } else {
        abs_det(&goeritz_matrix(d)?)?
    };
    Ok((via_delta, via_goeritz))
}

/// Both determinant routes for every corpus knot.
pub fn crosscheck_table() -> crate::Result<Vec<(String, BigInt, BigInt)>> {
    corpus()
        .into_iter()
        .map(|(name, d)| {
            let (a, b) = dual_determinants(&d)?;
            Ok((name, a, b))
        })
        .collect()
}

fn dual_path_determinant(seed: u64) -> std::result::Result<String, String> {
    let base = corpus();
    let mut cases: Vec<(String, KnotDiagram)> = base.clone();
    // small knots scrambled to figure-eight size and beyond
    for (i, (name, d)) in base.iter().take(3).enumerate() {
        for s in 0..4u64 {
            let p = e2s(reidemeister_perturb(d, seed ^ (100 + 4 * i as u64 + s), 4))?;
            cases.push((format!("{name}~{s}"), p));
        }
    }
    let pair_pool = [
        "trefoil",
        "figure8",
        "torus2(5)",
        "torus2(7)",
        "pretzel(3,-3,1)",
        "pretzel(3,-3,4)",
        "pretzel(3,-3,5)",
        "pretzel(3,-3,10)",
    ];
    let pool: Vec<&(String, KnotDiagram)> = base
        .iter()
        .filter(|(n, _)| pair_pool.contains(&n.as_str()))
        .collect();
    for i in 0..pool.len() {
        for j in i..pool.len() {
            let d = e2s(connected_sum(&pool[i].1, &pool[j].1))?;
            cases.push((format!("{} # {}", pool[i].0, pool[j].0), d));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..200 {
        let (name, d) = &base[i % base.len()];
        let steps = rng.gen_range(1..=8);
        let s = rng.gen();
        let p = e2s(reidemeister_perturb(d, s, steps))?;
        cases.push((format!("{name} perturbed({s}, {steps})"), p));
    }
    let total = cases.len();
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|(name, d)| match dual_determinants(d) {
            Ok((a, b)) if a == b => None,
            Ok((a, b)) => Some(format!("{name}: |Δ(-1)| = {a}, |det G| = {b}")),
            Err(e) => Some(format!("{name}: {e}")),
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok(format!("{total} diagrams agree"))
}

fn multiplicativity(_: u64) -> std::result::Result<String, String> {
    let base = corpus();
    let named: Vec<&(String, KnotDiagram)> = base.iter().filter(|(n, _)| n != "unknot").collect();
    let mut pairs = Vec::new();
    'outer: for i in 0..named.len() {
        for j in i..named.len() {
            if (i + 2 * j) % 3 != 0 && i != j {
                continue;
            }
            pairs.push((named[i], named[j]));
            if pairs.len() == 20 {
                break 'outer;
            }
        }
    }
    let bad: Vec<String> = pairs
        .par_iter()
        .filter_map(|((n1, d1), (n2, d2))| {
            let run = || -> crate::Result<Option<String>> {
                let s = connected_sum(d1, d2)?;
                let expect = (&alexander_poly(d1)? * &alexander_poly(d2)?).normalize()?;
                let got = alexander_poly(&s)?;
                if got != expect {
                    return Ok(Some(format!("Δ({n1} # {n2}) = {got}, expected {expect}")));
                }
                let (a, b, c) = (
                    determinant_knot(d1)?,
                    determinant_knot(d2)?,
                    determinant_knot(&s)?,
                );
                if &a * &b != c {
                    return Ok(Some(format!("det({n1} # {n2}) = {c}, expected {a}·{b}")));
                }
                Ok(None)
            };
            run().unwrap_or_else(|e| Some(e.to_string()))
        })
        .collect();
    ensure(pairs.len() == 20, || format!("only {} pairs", pairs.len()))?;
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("Δ and det multiplicative on 20 pairs".into())
}

fn prop_grid(_: u64) -> std::result::Result<String, String> {
    let lower_knots = [
        ("trefoil", trefoil()),
        ("pretzel(3,-3,4)", e2s(pretzel(3, -3, 4))?),
        ("pretzel(3,-3,5)", e2s(pretzel(3, -3, 5))?),
    ];
    let grid: Vec<(&str, &KnotDiagram, usize)> = lower_knots
        .iter()
        .flat_map(|(n, k)| (1..=6).map(move |m| (*n, k, m)))
        .collect();
    let bad: Vec<String> = grid
        .par_iter()
        .filter_map(|(name, k, n)| match check_prop_lower(k, *n, 3) {
            Ok(true) => None,
            Ok(false) => Some(format!("lower bound fails for {name}, n = {n}")),
            Err(e) => Some(format!("{name}, n = {n}: {e}")),
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;

    let vanish: Vec<(&str, KnotDiagram, u64)> = vec![
        ("unknot", unknot(), 3),
        ("trefoil", trefoil(), 5),
        ("trefoil", trefoil(), 7),
        ("figure8", figure_eight(), 3),
        ("figure8", figure_eight(), 7),
        ("torus2(5)", e2s(torus2(5))?, 3),
        ("torus2(7)", e2s(torus2(7))?, 3),
        ("torus2(7)", e2s(torus2(7))?, 5),
        ("pretzel(3,-3,4)", e2s(pretzel(3, -3, 4))?, 5),
        ("pretzel(3,-3,5)", e2s(pretzel(3, -3, 5))?, 7),
    ];
    for (name, k, p) in &vanish {
        match check_prop_vanish(k, *p) {
            Ok(true) => {}
            Ok(false) => return Err(format!("H_1 does not vanish for {name}, p = {p}")),
            Err(e) => return Err(format!("{name}, p = {p}: {e}")),
        }
    }
    Ok(format!(
        "{} lower-bound cases, {} vanishing cases",
        grid.len(),
        vanish.len()
    ))
}

fn livingston_end_to_end(_: u64) -> std::result::Result<String, String> {
    let family = e2s("pretzel:3,-3,4".parse::<FamilySpec>())?;
    let mut parts = Vec::new();
    for g in 1..=3u64 {
        let c = e2s(build_lg(&family, g))?;
        let cert = &c.certificate;
        let got = e2s(genus(&c.recipe))?;
        ensure(c.copies == 2 * g + 1, || {
            format!("g = {g}: n = {}", c.copies)
        })?;
        ensure(got == g, || format!("g = {g}: recipe genus {got}"))?;
        ensure(cert.raw_bound >= num_rational::Ratio::new(1, 2), || {
            format!("g = {g}: bound {}", cert.raw_bound)
        })?;
        ensure(cert.c2_lower >= 1, || {
            format!("g = {g}: c2_lower {}", cert.c2_lower)
        })?;
        ensure(cert.verdict == Verdict::Obstructed, || {
            format!("g = {g}: {:?}", cert.verdict)
        })?;
        ensure(cert.is_consistent(), || {
            format!("g = {g}: inconsistent certificate")
        })?;
        parts.push(format!(
            "g={g}: n={} bound={} c2>={}",
            c.copies, cert.raw_bound, cert.c2_lower
        ));
    }
    Ok(parts.join(", "))
}

fn random_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let rows = rng.gen_range(1..=30);
    let cols = rng.gen_range(1..=30);
    // sparse or low-rank inputs exercise the zero and repeated-factor paths
    let density = rng.gen_range(0.2..=1.0);
    let mut m = IntMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            if rng.gen_bool(density) {
                m[(i, j)] = BigInt::from(rng.gen_range(-20i64..=20));
            }
        }
    }
    if rng.gen_bool(0.2) && rows > 1 {
        let (a, b) = (rng.gen_range(0..rows), rng.gen_range(0..rows));
        let k = BigInt::from(rng.gen_range(-3i64..=3));
        for j in 0..cols {
            let v = &m[(b, j)] * &k;
            m[(a, j)] = v;
        }
    }
    m
}

/// Checks one Smith decomposition; returns a description of the first defect.
pub fn check_snf(m: &IntMatrix) -> std::result::Result<(), String> {
    let r = snf(m);
    let ums = e2s(r.u.mul(m).and_then(|x| x.mul(&r.v)))?;
    ensure(ums == r.s, || "U·M·V != S".into())?;
    ensure(r.s.is_diagonal(), || "S not diagonal".into())?;
    ensure(e2s(abs_det(&r.u))?.is_one(), || "U not unimodular".into())?;
    ensure(e2s(abs_det(&r.v))?.is_one(), || "V not unimodular".into())?;
    let diag: Vec<BigInt> = (0..m.rows().min(m.cols()))
        .map(|i| r.s[(i, i)].clone())
        .collect();
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        };
        ensure(ok, || {
            format!("divisibility chain broken at {} | {}", w[0], w[1])
        })?;
    }
    ensure(diag.iter().all(|d| !d.is_negative()), || {
        "negative diagonal entry".into()
    })?;
    let nonzero: Vec<&BigInt> = diag.iter().filter(|d| !d.is_zero()).collect();
    ensure(nonzero.len() == r.rank(), || "rank mismatch".into())?;
    for p in [3u64, 5, 7] {
        let expect = nonzero
            .iter()
            .filter(|d| !d.is_multiple_of(&BigInt::from(p)))
            .count();
        let got = e2s(rank_mod_p(m, p))?;
        ensure(got == expect, || {
            format!("rank mod {p}: {got}, factors say {expect}")
        })?;
    }
    Ok(())
}

fn snf_properties(seed: u64) -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let mats: Vec<IntMatrix> = (0..300).map(|_| random_matrix(&mut rng)).collect();
    let bad: Vec<String> = mats
        .par_iter()
        .enumerate()
        .filter_map(|(i, m)| {
            check_snf(m)
                .err()
                .map(|e| format!("matrix {i} ({}x{}): {e}", m.rows(), m.cols()))
        })
        .collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("300 random matrices".into())
}

/// Deterministic sample of recipes built from the public operations.
pub fn recipe_corpus(seed: u64, count: usize) -> crate::Result<Vec<CobordismRecipe>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc0b0);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let summands = rng.gen_range(0..=3);
        let mut c = identity(legendrian_unknot());
        for _ in 0..summands {
            c = concordance_connected_sum(&c, &pretzel_concordance(rng.gen_range(1..=10))?)?;
        }
        let r = match rng.gen_range(0..4) {
            0 => c,
            1 => reverse_approximate(&c, "S")?,
            2 => {
                let base: LegendrianKnot = c.target.clone();
                svvw_tower(&base, rng.gen_range(1..=10))?
            }
            _ => {
                let rev = reverse_approximate(&c, "S")?;
                let t = svvw_tower(&rev.source, rng.gen_range(1..=4))?;
                concatenate(&t, &rev)?
            }
        };
        out.push(r);
    }
    Ok(out)
}

fn recipe_accounting(seed: u64) -> std::result::Result<String, String> {
    let rs = e2s(recipe_corpus(seed, 50))?;
    let mut composed = 0;
    for (i, r) in rs.iter().enumerate() {
        let chi = euler_characteristic(r);
        let g = e2s(genus(r))?;
        ensure(chi == -2 * g as i64, || {
            format!("recipe {i}: χ {chi}, genus {g}")
        })?;
        if r.is_concordance() {
            ensure(r.births() == r.saddles(), || {
                format!("recipe {i}: births != saddles")
            })?;
            let rev = e2s(reverse_approximate(r, "S"))?;
            ensure(!rev.decomposable_certified(), || {
                format!("recipe {i}: reversal certified")
            })?;
            ensure(e2s(genus(&rev))? == 0, || {
                format!("recipe {i}: reversal has genus")
            })?;
        }
        // compose with a tower on the source end
        let t = e2s(svvw_tower(&r.source, 1 + (i as u64 % 3)))?;
        let tr = e2s(concatenate(&t, r))?;
        composed += 1;
        ensure(
            euler_characteristic(&tr) == euler_characteristic(&t) + chi,
            || format!("recipe {i}: χ not additive"),
        )?;
        ensure(
            !tr.decomposable_certified()
                || (t.decomposable_certified() && r.decomposable_certified()),
            || format!("recipe {i}: flag became true"),
        )?;
    }
    for g in 1..=10 {
        let t = e2s(svvw_tower(&legendrian_unknot(), g))?;
        ensure(e2s(genus(&t))? == g, || format!("tower genus {g}"))?;
    }
    Ok(format!("{} recipes, {composed} compositions", rs.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_checker_accepts_valid_input() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]).unwrap();
        assert!(check_snf(&m).is_ok());
    }

    #[test]
    fn criteria_are_named_uniquely() {
        let cs = criteria();
        let mut names: Vec<_> = cs.iter().map(|c| c.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), 8);
    }

    #[test]
    fn quick_criteria_pass() {
        for c in criteria() {
            if ["unknot_normalization", "recipe_accounting"].contains(&c.name) {
                let o = c.run(0);
                assert!(o.passed, "{}", o.line());
            }
        }
    }
}
