//! Classical Legendrian data carried on top of a smooth knot type.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{DiagramSpec, KnotDiagram};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StabSign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

/// A Legendrian knot recorded by its smooth type and classical invariants.
///
/// `symbolic` lists unquantified stabilization multisets applied on top of
/// the explicit counters; `tb` and `rotation` are exact only up to those.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Repr", into = "Repr")]
pub struct LegendrianKnot {
    spec: DiagramSpec,
    diagram: KnotDiagram,
    pub tb: i64,
    pub rotation: i64,
    pub pos_stabs: u64,
    pub neg_stabs: u64,
    pub symbolic: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct Repr {
    tb: i64,
    r: i64,
    stabs: [u64; 2],
    smooth: DiagramSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    symbolic: Vec<String>,
}

impl TryFrom<Repr> for LegendrianKnot {
    type Error = Error;

    fn try_from(r: Repr) -> Result<Self> {
        let mut k = LegendrianKnot::new(r.smooth, r.tb, r.r)?;
        k.pos_stabs = r.stabs[0];
        k.neg_stabs = r.stabs[1];
        k.symbolic = r.symbolic;
        Ok(k)
    }
}

impl From<LegendrianKnot> for Repr {
    fn from(k: LegendrianKnot) -> Self {
        Repr {
            tb: k.tb,
            r: k.rotation,
            stabs: [k.pos_stabs, k.neg_stabs],
            smooth: k.spec,
            symbolic: k.symbolic,
        }
    }
}

impl LegendrianKnot {
    /// Unstabilized representative of the smooth knot built from `spec`.
    pub fn new(spec: DiagramSpec, tb: i64, rotation: i64) -> Result<Self> {
        let diagram = spec.build()?;
        diagram.ensure_knot()?;
        Ok(LegendrianKnot {
            spec,
            diagram,
            tb,
            rotation,
            pos_stabs: 0,
            neg_stabs: 0,
            symbolic: Vec::new(),
        })
    }

    pub fn spec(&self) -> &DiagramSpec {
        &self.spec
    }

    pub fn diagram(&self) -> &KnotDiagram {
        &self.diagram
    }

    /// tb before the explicit stabilizations.
    pub fn base_tb(&self) -> i64 {
        self.tb + (self.pos_stabs + self.neg_stabs) as i64
    }

    pub fn base_rotation(&self) -> i64 {
        self.rotation - self.pos_stabs as i64 + self.neg_stabs as i64
    }

    /// Marks an unquantified stabilization multiset `S(.)`.
    pub fn with_symbolic(mut self, name: impl Into<String>) -> Self {
        self.symbolic.push(name.into());
        self
    }
}

impl fmt::Display for LegendrianKnot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut smooth = self.spec.to_string();
        for s in &self.symbolic {
            smooth = format!("{s}({smooth})");
        }
        write!(f, "{smooth} [tb {}, r {}]", self.tb, self.rotation)
    }
}

/// The standard unknot with `tb = -1`, `r = 0`.
pub fn legendrian_unknot() -> LegendrianKnot {
    LegendrianKnot::new(DiagramSpec::Unknot, -1, 0).expect("unknot builds")
}

pub fn stabilize(l: &LegendrianKnot, sign: StabSign) -> LegendrianKnot {
    let mut out = l.clone();
    out.tb -= 1;
    match sign {
        StabSign::Positive => {
            out.rotation += 1;
            out.pos_stabs += 1;
        }
        StabSign::Negative => {
            out.rotation -= 1;
            out.neg_stabs += 1;
        }
    }
    out
}

/// `(S_+ S_-)^g (l)`: a negative then a positive stabilization, `g` times.
pub fn double_stabilize(l: &LegendrianKnot, g: u64) -> LegendrianKnot {
    let mut out = l.clone();
    for _ in 0..g {
        out = stabilize(&stabilize(&out, StabSign::Negative), StabSign::Positive);
    }
    out
}

/// `tb = tb1 + tb2 + 1`, `r = r1 + r2`; counters and symbolic marks add.
pub fn legendrian_connected_sum(a: &LegendrianKnot, b: &LegendrianKnot) -> Result<LegendrianKnot> {
    let spec = DiagramSpec::sum([a.spec.clone(), b.spec.clone()]);
    let diagram = crate::diagram::connected_sum(&a.diagram, &b.diagram)?;
    let mut symbolic = a.symbolic.clone();
    symbolic.extend(b.symbolic.iter().cloned());
    Ok(LegendrianKnot {
        spec,
        diagram,
        tb: a.tb + b.tb + 1,
        rotation: a.rotation + b.rotation,
        pos_stabs: a.pos_stabs + b.pos_stabs,
        neg_stabs: a.neg_stabs + b.neg_stabs,
        symbolic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::{alexander_poly, determinant_knot, h1_double_cover};

    #[test]
    fn unknot_data() {
        let u = legendrian_unknot();
        assert_eq!((u.tb, u.rotation), (-1, 0));
        let s = stabilize(&stabilize(&u, StabSign::Positive), StabSign::Negative);
        assert_eq!((s.tb, s.rotation), (-3, 0));
        let p = stabilize(&u, StabSign::Positive);
        assert_eq!((p.tb, p.rotation), (-2, 1));
        let uu = legendrian_connected_sum(&u, &u).unwrap();
        assert_eq!((uu.tb, uu.rotation), (-1, 0));
        assert_eq!(uu.spec(), &DiagramSpec::Unknot);
    }

    #[test]
    fn double_stabilization() {
        let l = LegendrianKnot::new(DiagramSpec::pretzel(3, -3, 4), -1, 0).unwrap();
        for g in 0..5 {
            let s = double_stabilize(&l, g);
            assert_eq!(s.tb, l.tb - 2 * g as i64);
            assert_eq!(s.rotation, l.rotation);
            assert_eq!((s.pos_stabs, s.neg_stabs), (g, g));
            assert_eq!(s.base_tb(), l.tb);
        }
    }

    #[test]
    fn sum_formula() {
        let a = LegendrianKnot::new(DiagramSpec::Trefoil, 1, 0).unwrap();
        let b = stabilize(
            &LegendrianKnot::new(DiagramSpec::Torus2(5), 3, 0).unwrap(),
            StabSign::Negative,
        );
        let s = legendrian_connected_sum(&a, &b).unwrap();
        assert_eq!((s.tb, s.rotation), (1 + 2 + 1, -1));
        assert_eq!(s.base_tb(), s.tb + 1);
        let u = legendrian_unknot();
        let au = legendrian_connected_sum(&a, &u).unwrap();
        assert_eq!((au.tb, au.rotation), (a.tb, a.rotation));
        assert_eq!(au.spec(), a.spec());
    }

    #[test]
    fn stabilization_keeps_smooth_invariants() {
        let l = LegendrianKnot::new(DiagramSpec::pretzel(3, -3, 5), -1, 0).unwrap();
        let s = stabilize(&double_stabilize(&l, 2), StabSign::Positive);
        assert_eq!(s.diagram(), l.diagram());
        assert_eq!(
            alexander_poly(s.diagram()).unwrap(),
            alexander_poly(l.diagram()).unwrap()
        );
        assert_eq!(
            determinant_knot(s.diagram()).unwrap(),
            determinant_knot(l.diagram()).unwrap()
        );
        assert_eq!(
            h1_double_cover(s.diagram()).unwrap(),
            h1_double_cover(l.diagram()).unwrap()
        );
        assert_eq!(
            (s.tb + s.rotation).rem_euclid(2),
            (l.tb + l.rotation).rem_euclid(2)
        );
    }

    #[test]
    fn json_shape() {
        let l = stabilize(&legendrian_unknot(), StabSign::Negative).with_symbolic("S");
        let v = serde_json::to_value(&l).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"tb": -2, "r": -1, "stabs": [0, 1], "smooth": "unknot", "symbolic": ["S"]})
        );
        assert_eq!(serde_json::from_value::<LegendrianKnot>(v).unwrap(), l);
        let bad = serde_json::json!({"tb": 0, "r": 0, "stabs": [0, 0], "smooth": {"pd": [[1,3,2,4],[3,1,4,2]]}});
        assert!(serde_json::from_value::<LegendrianKnot>(bad).is_err());
    }
}
