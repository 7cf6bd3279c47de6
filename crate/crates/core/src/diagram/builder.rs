//! Assembles PD codes from a planar port graph.
//!
//! Crossings expose four ports in counterclockwise order: bottom-left (0),
//! bottom-right (1), top-right (2), top-left (3). Strands pass 0-2 and 1-3.
//! Joints are two-ended pass-through points used for crossingless strands.

use std::collections::HashMap;

use super::pd::KnotDiagram;
use crate::error::{Error, Result};

pub(crate) const BL: usize = 0;
pub(crate) const BR: usize = 1;
pub(crate) const TR: usize = 2;
pub(crate) const TL: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Port {
    X(usize, usize),
    J(usize, usize),
}

#[derive(Default)]
pub(crate) struct Builder {
    /// true when the BL-TR strand is the over-strand
    over_rising: Vec<bool>,
    joints: usize,
    link: HashMap<Port, Port>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn crossing(&mut self, over_rising: bool) -> usize {
        self.over_rising.push(over_rising);
        self.over_rising.len() - 1
    }

    pub fn joint(&mut self) -> usize {
        self.joints += 1;
        self.joints - 1
    }

    pub fn connect(&mut self, a: Port, b: Port) {
        let fresh = self.link.insert(a, b).is_none() & self.link.insert(b, a).is_none();
        debug_assert!(fresh, "port connected twice: {a:?} {b:?}");
    }

    fn follow(&self, from: Port, seen_joints: &mut [bool]) -> Result<(usize, usize)> {
        let mut p = *self
            .link
            .get(&from)
            .ok_or_else(|| Error::Internal(format!("dangling port {from:?}")))?;
        loop {
            match p {
                Port::X(c, s) => return Ok((c, s)),
                Port::J(j, side) => {
                    seen_joints[j] = true;
                    let other = Port::J(j, 1 - side);
                    p = *self
                        .link
                        .get(&other)
                        .ok_or_else(|| Error::Internal(format!("dangling port {other:?}")))?;
                }
            }
        }
    }

    /// Labels arcs in traversal order and emits the PD code. Returns the
    /// diagram together with its component count, crossingless loops included.
    pub fn finish(self) -> Result<(KnotDiagram, usize)> {
        let n = self.over_rising.len();
        let mut labels = vec![[0u32; 4]; n];
        let mut incoming = vec![[false; 4]; n];
        let mut seen_joints = vec![false; self.joints];
        let mut next_label = 1u32;
        let mut components = 0;

        for c0 in 0..n {
            for s0 in [0, 1] {
                if labels[c0][s0] != 0 {
                    continue;
                }
                components += 1;
                // leave through the far end of the strand entering at s0
                let start = (c0, s0 + 2);
                let mut out = start;
                loop {
                    let (c, s) = self.follow(Port::X(out.0, out.1), &mut seen_joints)?;
                    labels[out.0][out.1] = next_label;
                    labels[c][s] = next_label;
                    incoming[c][s] = true;
                    next_label += 1;
                    if (c, s) == (start.0, s0) {
                        break;
                    }
                    out = (c, (s + 2) % 4);
                }
            }
        }

        // Crossingless loops made only of joints.
        let mut j = 0;
        while j < self.joints {
            if seen_joints[j] {
                j += 1;
                continue;
            }
            components += 1;
            let mut p = Port::J(j, 0);
            loop {
                let Port::J(k, side) = p else {
                    return Err(Error::Internal("joint loop reached a crossing".into()));
                };
                seen_joints[k] = true;
                p = self.link[&Port::J(k, 1 - side)];
                if p == Port::J(j, 0) || p == Port::J(j, 1) {
                    break;
                }
            }
        }

        let codes: Vec<[u32; 4]> = (0..n)
            .map(|c| {
                let under = if self.over_rising[c] {
                    [BR, TL]
                } else {
                    [BL, TR]
                };
                let u = if incoming[c][under[0]] {
                    under[0]
                } else {
                    under[1]
                };
                [0, 1, 2, 3].map(|k| labels[c][(u + k) % 4])
            })
            .collect();
        let d = if codes.is_empty() {
            KnotDiagram::unknot()
        } else {
            KnotDiagram::from_pd(&codes)?
        };
        Ok((d, components))
    }
}

/// A vertical twist region: `count` crossings stacked bottom to top.
/// Returns its four end ports (bottom-left, bottom-right, top-left, top-right).
pub(crate) fn twist_column(b: &mut Builder, count: usize, over_rising: bool) -> [Port; 4] {
    if count == 0 {
        let left = b.joint();
        let right = b.joint();
        return [
            Port::J(left, 0),
            Port::J(right, 0),
            Port::J(left, 1),
            Port::J(right, 1),
        ];
    }
    let cs: Vec<usize> = (0..count).map(|_| b.crossing(over_rising)).collect();
    for w in cs.windows(2) {
        b.connect(Port::X(w[0], TL), Port::X(w[1], BL));
        b.connect(Port::X(w[0], TR), Port::X(w[1], BR));
    }
    let (lo, hi) = (cs[0], cs[count - 1]);
    [
        Port::X(lo, BL),
        Port::X(lo, BR),
        Port::X(hi, TL),
        Port::X(hi, TR),
    ]
}
