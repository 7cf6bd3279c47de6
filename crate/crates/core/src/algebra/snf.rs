use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;

/// Smith decomposition `U * M * V = S` with unimodular `U`, `V`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    /// Nonzero diagonal entries of `S`, positive, each dividing the next.
    #[serde(with = "crate::bigint_json::vec")]
    pub invariant_factors: Vec<BigInt>,
    /// Number of zero diagonal entries (the free rank of the cokernel
    /// contributed by the square part).
    pub zero_count: usize,
}

impl SnfResult {
    /// Number of nonzero invariant factors, i.e. the rank over `Q`.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

struct Work {
    a: Vec<Vec<BigInt>>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
        for row in &mut self.v {
            row.swap(i, j);
        }
    }

    /// row[dst] -= q * row[src]
    fn row_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            let (s, d) = pick2(m, src, dst);
            for (x, y) in d.iter_mut().zip(s.iter()) {
                *x -= q * y;
            }
        }
    }

    /// col[dst] -= q * col[src]
    fn col_axpy(&mut self, dst: usize, src: usize, q: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for row in m.iter_mut() {
                let t = q * &row[src];
                row[dst] -= t;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.a, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }

    /// Smallest nonzero `|a_ij|` in the trailing block, ties broken by
    /// row-major position.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.len() {
            for j in t..self.a[i].len() {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].magnitude() <= x.magnitude() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

fn pick2(m: &mut [Vec<BigInt>], src: usize, dst: usize) -> (&Vec<BigInt>, &mut Vec<BigInt>) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = m.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

/// Smith normal form with unimodular transforms. Deterministic for a given
/// input: pivots are always the smallest nonzero magnitude in the remaining
/// block, first in row-major order.
pub fn snf(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.to_rows(),
        u: IntMatrix::identity(rows).to_rows(),
        v: IntMatrix::identity(cols).to_rows(),
    };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = w.pivot(t) else { break };
        if pi != t {
            w.swap_rows(t, pi);
        }
        if pj != t {
            w.swap_cols(t, pj);
        }
        // Euclidean clearing of row and column t; a nonzero remainder is
        // strictly smaller than the pivot, so re-pivoting terminates.
        let mut clean = true;
        for i in t + 1..rows {
            if !w.a[i][t].is_zero() {
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.row_axpy(i, t, &q);
                clean &= w.a[i][t].is_zero();
            }
        }
        for j in t + 1..cols {
            if !w.a[t][j].is_zero() {
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.col_axpy(j, t, &q);
                clean &= w.a[t][j].is_zero();
            }
        }
        if !clean {
            continue;
        }
        // Divisibility: fold an offending row into row t and redo the step.
        let p = w.a[t][t].clone();
        let offender =
            (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !w.a[i][j].is_multiple_of(&p)));
        if let Some(i) = offender {
            w.row_axpy(t, i, &-BigInt::one());
            continue;
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }

    let mut invariant_factors = Vec::new();
    let mut zero_count = 0;
    for i in 0..rows.min(cols) {
        if w.a[i][i].is_zero() {
            zero_count += 1;
        } else {
            invariant_factors.push(w.a[i][i].clone());
        }
    }
    let flat = |x: Vec<Vec<BigInt>>, r: usize, c: usize| {
        IntMatrix::from_entries(r, c, x.into_iter().flatten().collect()).expect("shape preserved")
    };
    SnfResult {
        u: flat(w.u, rows, rows),
        s: flat(w.a, rows, cols),
        v: flat(w.v, cols, cols),
        invariant_factors,
        zero_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::det_exact;

    fn factors(rows: &[Vec<i64>]) -> (Vec<i64>, usize) {
        let r = snf(&IntMatrix::from_rows(rows).unwrap());
        (
            r.invariant_factors
                .iter()
                .map(|x| i64::try_from(x).unwrap())
                .collect(),
            r.zero_count,
        )
    }

    #[test]
    fn diagonal_with_zero() {
        assert_eq!(factors(&[vec![2, 0], vec![0, 0]]), (vec![2], 1));
    }

    #[test]
    fn two_by_two() {
        // d1 = gcd = 2, d1 * d2 = |det| = 8
        assert_eq!(factors(&[vec![2, 4], vec![6, 8]]), (vec![2, 4], 0));
    }

    #[test]
    fn identity() {
        assert_eq!(
            factors(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]),
            (vec![1, 1, 1], 0)
        );
    }

    #[test]
    fn empty_and_rectangular() {
        let r = snf(&IntMatrix::zeros(0, 3));
        assert!(r.invariant_factors.is_empty());
        assert_eq!(r.zero_count, 0);
        assert_eq!(factors(&[vec![4, 6, 8]]), (vec![2], 0));
        assert_eq!(factors(&[vec![3], vec![9], vec![6]]), (vec![3], 0));
    }

    #[test]
    fn needs_divisibility_fix() {
        // diag(2, 3) ~ diag(1, 6)
        assert_eq!(factors(&[vec![2, 0], vec![0, 3]]), (vec![1, 6], 0));
    }

    #[test]
    fn transforms_reconstruct() {
        let m = IntMatrix::from_rows(&[vec![4, -6, 2], vec![8, 3, -1], vec![0, 5, 7]]).unwrap();
        let r = snf(&m);
        assert_eq!(r.u.mul(&m).unwrap().mul(&r.v).unwrap(), r.s);
        assert!(det_exact(&r.u).unwrap().abs().is_one());
        assert!(det_exact(&r.v).unwrap().abs().is_one());
    }
}
