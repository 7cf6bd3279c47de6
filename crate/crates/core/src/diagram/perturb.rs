//! Random Reidemeister I/II insertions for invariance fuzzing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::generators::canonical_labels;
use super::pd::{KnotDiagram, Slot, Trace};
use crate::error::Result;

/// Applies `steps` random R1 kinks and R2 finger moves, chosen by a seeded
/// PRNG. The knot type is unchanged; arcs are relabelled canonically after
/// every move.
pub fn reidemeister_perturb(d: &KnotDiagram, seed: u64, steps: usize) -> Result<KnotDiagram> {
    d.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut codes = d.codes();
    for _ in 0..steps {
        codes = if codes.is_empty() || rng.gen_bool(0.5) {
            r1(&codes, &mut rng)?
        } else {
            match r2(&codes, &mut rng)? {
                Some(c) => c,
                None => r1(&codes, &mut rng)?,
            }
        };
        codes = canonical_labels(&codes)?;
    }
    if codes == d.codes() {
        return Ok(d.clone());
    }
    KnotDiagram::from_pd(&codes)
}

/// Inserts a kink on a random arc. The four variants differ in whether the
/// strand first passes under or over and on which side the loop sits.
fn r1(codes: &[[u32; 4]], rng: &mut impl Rng) -> Result<Vec<[u32; 4]>> {
    let kind = rng.gen_range(0..4);
    if codes.is_empty() {
        // x = z is the whole circle
        let (x, y) = (1, 2);
        return Ok(vec![kink(kind, x, y, x)]);
    }
    let trace = Trace::new(codes)?;
    let m = trace.arc_count();
    let e = rng.gen_range(1..=m);
    let (y, z) = (m + 1, m + 2);
    let mut out = codes.to_vec();
    let (hc, hs) = trace.head[e as usize - 1];
    out[hc][hs] = z;
    out.push(kink(kind, e, y, z));
    Ok(out)
}

/// Kink crossing entered by arc `x`, left by arc `z`, with loop arc `y`.
fn kink(kind: u32, x: u32, y: u32, z: u32) -> [u32; 4] {
    match kind {
        // under first, loop from position 2 back into 3
        0 => [x, z, y, y],
        // under first, loop from 2 into 1
        1 => [x, y, y, z],
        // over first (3 -> 1), loop from 1 into 0
        2 => [y, y, z, x],
        // over first (1 -> 3), loop from 3 into 0
        _ => [y, x, z, y],
    }
}

/// Pushes a finger of one boundary edge of a random face across another
/// edge of the same face, creating two crossings of opposite sign.
fn r2(codes: &[[u32; 4]], rng: &mut impl Rng) -> Result<Option<Vec<[u32; 4]>>> {
    let trace = Trace::new(codes)?;
    let faces = trace.faces()?;
    let candidates: Vec<&Vec<Slot>> = faces
        .boundaries
        .iter()
        .filter(|b| {
            let mut labels: Vec<u32> = b.iter().map(|&s| trace.label(s)).collect();
            labels.sort_unstable();
            labels.dedup();
            labels.len() >= 2
        })
        .collect();
    if candidates.is_empty() {
        return Ok(None);
    }
    let boundary = candidates[rng.gen_range(0..candidates.len())];
    let i = rng.gen_range(0..boundary.len());
    let mut j = rng.gen_range(0..boundary.len() - 1);
    if j >= i {
        j += 1;
    }
    let (de, df) = (boundary[i], boundary[j]);
    let (e, f) = (trace.label(de), trace.label(df));
    if e == f {
        return Ok(None);
    }
    // Local picture: the face lies above edge f and below edge e; the
    // finger from e dips under or over f at two points, left then right.
    // Walking the boundary with the face on the left runs along f left to
    // right and along e right to left.
    let f_ltr = trace.is_outgoing(df);
    let e_ltr = !trace.is_outgoing(de);
    let e_over = rng.gen_bool(0.5);

    let m = trace.arc_count();
    let (e_mid, e_end, f_mid, f_end) = (m + 1, m + 2, m + 3, m + 4);
    let mut out = codes.to_vec();
    let (hc, hs) = trace.head[e as usize - 1];
    out[hc][hs] = e_end;
    let (hc, hs) = trace.head[f as usize - 1];
    out[hc][hs] = f_end;

    let (e_left, e_right) = if e_ltr { (e, e_end) } else { (e_end, e) };
    let (f_left, f_right) = if f_ltr { (f, f_end) } else { (f_end, f) };

    // compass labels (west, south, east, north) at the two new crossings
    let left = (f_left, e_mid, f_mid, e_left);
    let right = (f_mid, e_mid, f_right, e_right);
    // e descends at whichever crossing it reaches first
    let e_down_at_left = e_ltr;
    for (idx, (w, s, east, n)) in [left, right].into_iter().enumerate() {
        let tuple = if e_over {
            if f_ltr {
                [w, s, east, n]
            } else {
                [east, n, w, s]
            }
        } else {
            let descending = (idx == 0) == e_down_at_left;
            if descending {
                [n, w, s, east]
            } else {
                [s, east, n, w]
            }
        };
        out.push(tuple);
    }
    Ok(Some(out))
}
