use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::algebra::{bareiss_det, det_exact, IntMatrix, LaurentPoly};
use crate::diagram::KnotDiagram;
use crate::error::Result;

/// One Fox-calculus relation row: `(over arc, incoming under arc, outgoing
/// under arc, sign)` in Wirtinger-arc indices.
struct Relation {
    over: usize,
    under_in: usize,
    under_out: usize,
    sign: i8,
}

/// Groups PD edges into Wirtinger arcs (edges joined through over-passes)
/// and returns one relation per crossing.
fn wirtinger_relations(d: &KnotDiagram) -> (usize, Vec<Relation>) {
    let m = d.arc_count() as usize;
    let mut parent: Vec<usize> = (0..=m).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for c in d.crossings() {
        let (a, b) = (
            find(&mut parent, c.arcs[1] as usize),
            find(&mut parent, c.arcs[3] as usize),
        );
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    // index generators by smallest member label
    let mut index = BTreeMap::new();
    for l in 1..=m {
        let r = find(&mut parent, l);
        let next = index.len();
        index.entry(r).or_insert(next);
    }
    let mut gen = |l: u32| index[&find(&mut parent, l as usize)];
    let rels = d
        .crossings()
        .iter()
        .map(|c| Relation {
            over: gen(c.arcs[1]),
            under_in: gen(c.arcs[0]),
            under_out: gen(c.arcs[2]),
            sign: c.sign,
        })
        .collect();
    (index.len(), rels)
}

/// Wirtinger Alexander matrix, one row per crossing with entries from
/// `{1 - t, t, -1}`: a positive crossing puts `t` on the incoming under-arc
/// and `-1` on the outgoing one, a negative crossing the reverse.
pub fn alexander_matrix(d: &KnotDiagram) -> Vec<Vec<LaurentPoly>> {
    let (gens, rels) = wirtinger_relations(d);
    let one_minus_t = LaurentPoly::from_coeffs(0, [1, -1]);
    let t = LaurentPoly::t();
    let minus_one = LaurentPoly::constant(-1);
    rels.iter()
        .map(|r| {
            let mut row = vec![LaurentPoly::zero(); gens];
            let (a, b) = if r.sign > 0 {
                (&t, &minus_one)
            } else {
                (&minus_one, &t)
            };
            row[r.over] = &row[r.over] + &one_minus_t;
            row[r.under_in] = &row[r.under_in] + a;
            row[r.under_out] = &row[r.under_out] + b;
            row
        })
        .collect()
}

/// Same matrix with `t = -1` substituted.
pub fn alexander_matrix_at_minus_one(d: &KnotDiagram) -> IntMatrix {
    let (gens, rels) = wirtinger_relations(d);
    let mut m = IntMatrix::zeros(rels.len(), gens);
    for (i, r) in rels.iter().enumerate() {
        // t and -1 coincide at t = -1, so the crossing sign drops out
        m[(i, r.over)] += 2;
        m[(i, r.under_in)] -= 1;
        m[(i, r.under_out)] -= 1;
    }
    m
}

fn reduce<T: Clone>(rows: Vec<Vec<T>>) -> Vec<Vec<T>> {
    let n = rows.len().saturating_sub(1);
    rows.into_iter()
        .take(n)
        .map(|r| r.into_iter().take(n).collect())
        .collect()
}

/// Normalized Alexander polynomial of a knot diagram.
pub fn alexander_poly(d: &KnotDiagram) -> Result<LaurentPoly> {
    d.ensure_knot()?;
    if d.is_trivial() {
        return Ok(LaurentPoly::one());
    }
    let det = bareiss_det(reduce(alexander_matrix(d)))?;
    det.normalize()
}

/// `|Δ(-1)|`, computed from the Wirtinger matrix evaluated at `t = -1`.
pub fn determinant_knot(d: &KnotDiagram) -> Result<BigInt> {
    d.ensure_knot()?;
    if d.is_trivial() {
        return Ok(BigInt::from(1));
    }
    let m = alexander_matrix_at_minus_one(d).drop_last_row_col();
    Ok(det_exact(&m)?.abs())
}
