use crate::algebra::IntMatrix;
use crate::diagram::KnotDiagram;
use crate::error::Result;

/// Unreduced Goeritz matrix over the white regions of a checkerboard
/// shading, together with the shading used.
///
/// White is the colour class with fewer faces (ties go to the class of the
/// first traced face). At each crossing the two white corners are either
/// corners {0, 2} (type +1) or {1, 3} (type -1); off-diagonal entries are
/// minus the summed types, diagonal entries make each row sum to zero.
pub fn goeritz_unreduced(d: &KnotDiagram) -> Result<IntMatrix> {
    d.validate()?;
    if d.is_trivial() {
        return Ok(IntMatrix::zeros(1, 1));
    }
    let faces = d.trace()?.faces()?;
    let first = faces.color[0];
    let same = faces.color.iter().filter(|&&c| c == first).count();
    let white = if 2 * same <= faces.color.len() {
        first
    } else {
        !first
    };

    let mut index = vec![usize::MAX; faces.color.len()];
    let mut whites = 0;
    for (f, &c) in faces.color.iter().enumerate() {
        if c == white {
            index[f] = whites;
            whites += 1;
        }
    }

    let mut g = IntMatrix::zeros(whites, whites);
    for corners in &faces.corner_face {
        let (k, eta) = if faces.color[corners[0]] == white {
            (0, 1)
        } else {
            (1, -1)
        };
        let (i, j) = (index[corners[k]], index[corners[k + 2]]);
        if i == j {
            continue;
        }
        g[(i, j)] -= eta;
        g[(j, i)] -= eta;
        g[(i, i)] += eta;
        g[(j, j)] += eta;
    }
    Ok(g)
}

/// Reduced Goeritz matrix (last row and column deleted); presents
/// `H_1` of the double branched cover.
pub fn goeritz_matrix(d: &KnotDiagram) -> Result<IntMatrix> {
    d.ensure_knot()?;
    Ok(goeritz_unreduced(d)?.drop_last_row_col())
}
