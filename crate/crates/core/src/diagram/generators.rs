use super::builder::{twist_column, Builder, Port};
use super::pd::{KnotDiagram, Trace};
use crate::error::{Error, Result};

/// Crossing choice that makes a positive pretzel parameter produce the
/// right-handed trefoil for `pretzel(1, 1, 1)`. In a pretzel diagram with
/// odd parameters the two strands of each column are antiparallel.
const PRETZEL_POSITIVE_OVER_RISING: bool = false;

pub fn unknot() -> KnotDiagram {
    KnotDiagram::unknot()
}

/// Right-handed trefoil in the usual three-crossing PD form.
pub fn trefoil() -> KnotDiagram {
    KnotDiagram::from_pd(&[[1, 5, 2, 4], [3, 1, 4, 6], [5, 3, 6, 2]]).expect("valid trefoil")
}

pub fn figure_eight() -> KnotDiagram {
    KnotDiagram::from_pd(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]])
        .expect("valid figure-eight")
}

/// Three-strand pretzel diagram `P(t1, t2, t3)`; positive parameters are
/// right-handed half-twists.
pub fn pretzel(t1: i64, t2: i64, t3: i64) -> Result<KnotDiagram> {
    let ts = [t1, t2, t3];
    if ts.iter().map(|t| t.unsigned_abs()).sum::<u64>() == 0 {
        return Err(Error::BadParameter(
            "pretzel needs at least one crossing".into(),
        ));
    }
    let mut b = Builder::new();
    let cols: Vec<[Port; 4]> = ts
        .iter()
        .map(|&t| {
            let over = if t > 0 {
                PRETZEL_POSITIVE_OVER_RISING
            } else {
                !PRETZEL_POSITIVE_OVER_RISING
            };
            twist_column(&mut b, t.unsigned_abs() as usize, over)
        })
        .collect();
    const BOT_L: usize = 0;
    const BOT_R: usize = 1;
    const TOP_L: usize = 2;
    const TOP_R: usize = 3;
    for i in 0..2 {
        b.connect(cols[i][TOP_R], cols[i + 1][TOP_L]);
        b.connect(cols[i][BOT_R], cols[i + 1][BOT_L]);
    }
    // outer arcs around the top and the bottom
    b.connect(cols[0][TOP_L], cols[2][TOP_R]);
    b.connect(cols[0][BOT_L], cols[2][BOT_R]);
    let (d, components) = b.finish()?;
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    Ok(d)
}

/// `(2, n)` torus knot as the closure of a two-strand twist with `n`
/// positive crossings.
pub fn torus2(n: i64) -> Result<KnotDiagram> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::BadParameter(format!(
            "torus2 needs an odd crossing number >= 3, got {n}"
        )));
    }
    let mut b = Builder::new();
    let [bl, br, tl, tr] = twist_column(&mut b, n as usize, true);
    b.connect(tl, bl);
    b.connect(tr, br);
    let (d, components) = b.finish()?;
    if components != 1 {
        return Err(Error::NotAKnot { components });
    }
    Ok(d)
}

/// Relabels arcs `1..=2n` in traversal order starting from the lowest label.
pub(crate) fn canonical_labels(codes: &[[u32; 4]]) -> Result<Vec<[u32; 4]>> {
    if codes.is_empty() {
        return Ok(Vec::new());
    }
    let trace = Trace::new(codes)?;
    let mut map = vec![0u32; trace.arc_count() as usize + 1];
    let mut next = 1;
    for start in 1..=trace.arc_count() {
        if map[start as usize] != 0 {
            continue;
        }
        for l in trace.component_from(start) {
            map[l as usize] = next;
            next += 1;
        }
    }
    Ok(codes.iter().map(|t| t.map(|l| map[l as usize])).collect())
}

/// Connected sum, spliced at the lowest-labelled arc of each summand.
pub fn connected_sum(d1: &KnotDiagram, d2: &KnotDiagram) -> Result<KnotDiagram> {
    d1.ensure_knot()?;
    d2.ensure_knot()?;
    if d1.is_trivial() {
        return Ok(d2.clone());
    }
    if d2.is_trivial() {
        return Ok(d1.clone());
    }
    let t1 = d1.trace()?;
    let t2 = d2.trace()?;
    let off = d1.arc_count();
    let n1 = d1.crossing_count();
    let mut codes = d1.codes();
    codes.extend(d2.codes().into_iter().map(|t| t.map(|l| l + off)));

    let (a, b) = (1u32, 1u32);
    let a_head = t1.head[a as usize - 1];
    let b_head = t2.head[b as usize - 1];
    let b_label = b + off;
    // arc a now runs from its old tail into d2; b runs from its tail back into d1
    codes[n1 + b_head.0][b_head.1] = a;
    codes[a_head.0][a_head.1] = b_label;

    let codes = canonical_labels(&codes)?;
    let d = KnotDiagram::from_pd(&codes)?;
    d.ensure_knot()?;
    Ok(d)
}

/// `d # d # ... # d` with `n` summands (`n = 0` gives the unknot).
pub fn connected_power(d: &KnotDiagram, n: usize) -> Result<KnotDiagram> {
    let mut acc = unknot();
    for _ in 0..n {
        acc = connected_sum(&acc, d)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn faces_ok(d: &KnotDiagram) {
        if d.is_trivial() {
            return;
        }
        let f = d.trace().unwrap().faces().unwrap();
        assert_eq!(f.boundaries.len(), d.crossing_count() + 2);
    }

    #[test]
    fn pretzel_111_is_right_handed_trefoil() {
        let d = pretzel(1, 1, 1).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert!(d.crossings().iter().all(|c| c.sign == 1), "{d:?}");
        faces_ok(&d);
    }

    #[test]
    fn pretzel_family() {
        for k in 1..=10 {
            let d = pretzel(3, -3, k).unwrap();
            assert_eq!(d.crossing_count(), 6 + k as usize);
            assert_eq!(d.validate().unwrap(), 1);
            faces_ok(&d);
        }
        assert_eq!(pretzel(3, -3, 2).unwrap().validate().unwrap(), 1);
    }

    #[test]
    fn pretzel_links_rejected() {
        // P(2, 2, 2) has three components
        assert!(matches!(pretzel(2, 2, 2), Err(Error::NotAKnot { .. })));
        assert!(matches!(pretzel(0, 0, 0), Err(Error::BadParameter(_))));
    }

    #[test]
    fn torus_knots() {
        let t3 = torus2(3).unwrap();
        assert_eq!(t3.crossing_count(), 3);
        assert!(t3.crossings().iter().all(|c| c.sign == 1));
        let t5 = torus2(5).unwrap();
        assert_eq!(t5.crossing_count(), 5);
        faces_ok(&t5);
        assert!(matches!(torus2(4), Err(Error::BadParameter(_))));
        assert!(matches!(torus2(1), Err(Error::BadParameter(_))));
    }

    #[test]
    fn sums() {
        let t = trefoil();
        assert_eq!(connected_sum(&unknot(), &t).unwrap(), t);
        let tt = connected_sum(&t, &t).unwrap();
        assert_eq!(tt.crossing_count(), 6);
        assert_eq!(tt.validate().unwrap(), 1);
        faces_ok(&tt);
        let mixed = connected_sum(&pretzel(3, -3, 4).unwrap(), &torus2(3).unwrap()).unwrap();
        assert_eq!(mixed.crossing_count(), 13);
        faces_ok(&mixed);
        let hopf = KnotDiagram::from_pd(&[[1, 3, 2, 4], [3, 1, 4, 2]]).unwrap();
        assert!(matches!(
            connected_sum(&t, &hopf),
            Err(Error::NotAKnot { components: 2 })
        ));
    }

    #[test]
    fn canonical_labels_follow_traversal() {
        let d = connected_power(&figure_eight(), 3).unwrap();
        let t = d.trace().unwrap();
        let seq = t.component_from(1);
        assert_eq!(seq, (1..=d.arc_count()).collect::<Vec<_>>());
    }
}
