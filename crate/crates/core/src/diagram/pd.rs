use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, InvalidReason, Result};

/// Slot of a crossing: `(crossing index, position 0..4)`.
pub type Slot = (usize, usize);

/// One crossing of a PD code.
///
/// `arcs` lists the four incident arc labels counterclockwise, starting at
/// the incoming under-strand. The under-strand runs from position 0 to 2, the
/// over-strand between positions 1 and 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub arcs: [u32; 4],
    /// Writhe sign, `+1` when the over-strand runs from position 3 to 1.
    pub sign: i8,
}

/// Oriented knot or link diagram in PD form.
///
/// The empty code is the zero-crossing unknot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnotDiagram {
    crossings: Vec<Crossing>,
    arc_count: u32,
}

impl KnotDiagram {
    pub fn unknot() -> Self {
        Self {
            crossings: Vec::new(),
            arc_count: 0,
        }
    }

    /// Builds a diagram from raw 4-tuples, deriving crossing signs by
    /// tracing orientations.
    pub fn from_pd(codes: &[[u32; 4]]) -> Result<Self> {
        let trace = Trace::new(codes)?;
        let crossings = codes
            .iter()
            .zip(&trace.signs)
            .map(|(&arcs, &sign)| Crossing { arcs, sign })
            .collect();
        Ok(Self {
            crossings,
            arc_count: trace.arc_count(),
        })
    }

    /// Builds a diagram from crossings carrying explicit signs; the signs
    /// must agree with the traced orientation.
    pub fn from_crossings(crossings: Vec<Crossing>) -> Result<Self> {
        let d = Self {
            arc_count: 2 * crossings.len() as u32,
            crossings,
        };
        d.validate()?;
        Ok(d)
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn arc_count(&self) -> u32 {
        self.arc_count
    }

    pub fn codes(&self) -> Vec<[u32; 4]> {
        self.crossings.iter().map(|c| c.arcs).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.crossings.is_empty()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign as i64).sum()
    }

    /// Number of link components. Fails on structural defects, including a
    /// stored sign that disagrees with the traced orientation.
    pub fn validate(&self) -> Result<usize> {
        if self.crossings.is_empty() {
            return Ok(1);
        }
        let trace = Trace::new(&self.codes())?;
        for (i, (c, s)) in self.crossings.iter().zip(&trace.signs).enumerate() {
            if c.sign != *s {
                return Err(Error::invalid(
                    InvalidReason::SignMismatch,
                    format!("crossing {i} stores sign {} but traces to {s}", c.sign),
                ));
            }
        }
        Ok(trace.components)
    }

    pub fn component_count(&self) -> Result<usize> {
        self.validate()
    }

    pub fn ensure_knot(&self) -> Result<()> {
        match self.validate()? {
            1 => Ok(()),
            n => Err(Error::NotAKnot { components: n }),
        }
    }

    pub(crate) fn trace(&self) -> Result<Trace> {
        Trace::new(&self.codes())
    }
}

impl Serialize for KnotDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("KnotDiagram", 1)?;
        st.serialize_field("pd", &self.codes())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for KnotDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            pd: Vec<[u32; 4]>,
        }
        let raw = Raw::deserialize(d)?;
        KnotDiagram::from_pd(&raw.pd).map_err(serde::de::Error::custom)
    }
}

/// Parses a PD code given as a JSON array of 4-tuples, or as a
/// `{"pd": [...]}` object.
pub fn parse_pd(text: &str) -> Result<KnotDiagram> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    let array = match &value {
        serde_json::Value::Object(map) => map
            .get("pd")
            .ok_or_else(|| Error::MalformedInput("object without a \"pd\" field".into()))?,
        other => other,
    };
    let codes = codes_from_json(array)?;
    KnotDiagram::from_pd(&codes)
}

pub(crate) fn codes_from_json(v: &serde_json::Value) -> Result<Vec<[u32; 4]>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::MalformedInput("PD code must be an array".into()))?;
    items
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let t = t
                .as_array()
                .filter(|t| t.len() == 4)
                .ok_or_else(|| Error::MalformedInput(format!("entry {i} is not a 4-tuple")))?;
            let mut out = [0u32; 4];
            for (k, x) in t.iter().enumerate() {
                out[k] = x
                    .as_u64()
                    .filter(|&x| (1..=u32::MAX as u64).contains(&x))
                    .ok_or_else(|| {
                        Error::MalformedInput(format!(
                            "entry {i}: arc labels must be positive integers"
                        ))
                    })? as u32;
            }
            Ok(out)
        })
        .collect()
}

/// Orientation and connectivity data recovered from a PD code.
#[derive(Clone, Debug)]
pub(crate) struct Trace {
    pub codes: Vec<[u32; 4]>,
    /// Indexed by `label - 1`: the slot the arc leaves from and the slot it enters.
    pub tail: Vec<Slot>,
    pub head: Vec<Slot>,
    pub signs: Vec<i8>,
    pub components: usize,
}

impl Trace {
    pub fn new(codes: &[[u32; 4]]) -> Result<Self> {
        let n = codes.len();
        let arc_count = 2 * n;
        let mut occ: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
        for (c, t) in codes.iter().enumerate() {
            for (s, &l) in t.iter().enumerate() {
                if l == 0 {
                    return Err(Error::MalformedInput("arc label 0".into()));
                }
                occ.entry(l).or_default().push((c, s));
            }
        }
        for (&l, v) in &occ {
            if v.len() > 2 {
                return Err(Error::invalid(
                    InvalidReason::DuplicateArc,
                    format!("arc {l} occurs {} times", v.len()),
                ));
            }
        }
        if let Some((&l, _)) = occ.iter().find(|(_, v)| v.len() == 1) {
            return Err(Error::invalid(
                InvalidReason::OpenStrand,
                format!("arc {l} has a free end"),
            ));
        }
        if let Some(l) = (1..=arc_count as u32).find(|l| !occ.contains_key(l)) {
            return Err(Error::invalid(
                InvalidReason::OpenStrand,
                format!("arc label {l} is missing from 1..={arc_count}"),
            ));
        }

        let partner = |(c, s): Slot| -> Slot {
            let v = &occ[&codes[c][s]];
            if v[0] == (c, s) {
                v[1]
            } else {
                v[0]
            }
        };

        const UNSET: Slot = (usize::MAX, usize::MAX);
        let mut tail = vec![UNSET; arc_count];
        let mut head = vec![UNSET; arc_count];
        let mut signs = vec![0i8; n];
        // passes[c] = [under visited, over visited]
        let mut passes = vec![[false; 2]; n];
        let mut components = 0;

        let mut walk =
            |start: Slot, passes: &mut Vec<[bool; 2]>, signs: &mut Vec<i8>| -> Result<()> {
                // `start` is the outgoing slot of an already-claimed pass.
                let start_in = (start.0, (start.1 + 2) % 4);
                let mut out = start;
                loop {
                    let l = codes[out.0][out.1] as usize - 1;
                    let into = partner(out);
                    if tail[l] != UNSET {
                        return Err(Error::invalid(
                            InvalidReason::InconsistentOrientation,
                            format!("arc {} is traversed twice", l + 1),
                        ));
                    }
                    tail[l] = out;
                    head[l] = into;
                    if into == start_in {
                        return Ok(());
                    }
                    let (c, s) = into;
                    let kind = s % 2;
                    if kind == 0 && s != 0 {
                        return Err(Error::invalid(
                            InvalidReason::InconsistentOrientation,
                            format!("under-strand of crossing {c} entered at position 2"),
                        ));
                    }
                    if passes[c][kind] {
                        return Err(Error::invalid(
                            InvalidReason::InconsistentOrientation,
                            format!("crossing {c} traversed twice along the same strand"),
                        ));
                    }
                    passes[c][kind] = true;
                    if kind == 1 {
                        signs[c] = if s == 3 { 1 } else { -1 };
                    }
                    out = (c, (s + 2) % 4);
                }
            };

        for c in 0..n {
            if !passes[c][0] {
                passes[c][0] = true;
                walk((c, 2), &mut passes, &mut signs)?;
                components += 1;
            }
        }
        // Components that never pass under anything; orientation is arbitrary.
        for c in 0..n {
            if !passes[c][1] {
                passes[c][1] = true;
                signs[c] = 1;
                walk((c, 1), &mut passes, &mut signs)?;
                components += 1;
            }
        }

        Ok(Self {
            codes: codes.to_vec(),
            tail,
            head,
            signs,
            components,
        })
    }

    pub fn arc_count(&self) -> u32 {
        self.tail.len() as u32
    }

    pub fn label(&self, (c, s): Slot) -> u32 {
        self.codes[c][s]
    }

    /// Other end of the arc attached at `slot`.
    pub fn partner(&self, slot: Slot) -> Slot {
        let l = self.label(slot) as usize - 1;
        if self.tail[l] == slot {
            self.head[l]
        } else {
            self.tail[l]
        }
    }

    pub fn is_outgoing(&self, slot: Slot) -> bool {
        self.tail[self.label(slot) as usize - 1] == slot
    }

    /// Arc that follows `label` along the orientation.
    pub fn next_arc(&self, label: u32) -> u32 {
        let (c, s) = self.head[label as usize - 1];
        self.codes[c][(s + 2) % 4]
    }

    /// Arc labels of the component through `start`, in traversal order.
    pub fn component_from(&self, start: u32) -> Vec<u32> {
        let mut seq = vec![start];
        let mut cur = self.next_arc(start);
        while cur != start {
            seq.push(cur);
            cur = self.next_arc(cur);
        }
        seq
    }

    /// Faces of the planar 4-valent graph, traced with the face on the left.
    pub fn faces(&self) -> Result<Faces> {
        let n = self.codes.len();
        const UNSET: usize = usize::MAX;
        // corner k of a crossing sits between positions k and k+1
        let mut corner_face = vec![[UNSET; 4]; n];
        let mut boundaries: Vec<Vec<Slot>> = Vec::new();
        for c0 in 0..n {
            for s0 in 0..4 {
                // Departing dart (c, d) closes corner d; arriving through
                // position i, the face on the left continues out of i - 1.
                if corner_face[c0][s0] != UNSET {
                    continue;
                }
                let f = boundaries.len();
                let mut darts = Vec::new();
                let mut dart = (c0, s0);
                loop {
                    if corner_face[dart.0][dart.1] != UNSET {
                        return Err(Error::invalid(
                            InvalidReason::NonPlanar,
                            "face tracing revisited a corner",
                        ));
                    }
                    corner_face[dart.0][dart.1] = f;
                    darts.push(dart);
                    let (c1, s1) = self.partner(dart);
                    dart = (c1, (s1 + 3) % 4);
                    if dart == (c0, s0) {
                        break;
                    }
                }
                boundaries.push(darts);
            }
        }

        // Euler characteristic of the sphere, per connected piece.
        let pieces = self.graph_pieces();
        let expected = n + 1 + pieces;
        if n > 0 && boundaries.len() != expected {
            return Err(Error::invalid(
                InvalidReason::NonPlanar,
                format!("{} faces, expected {expected}", boundaries.len()),
            ));
        }

        // Two-colouring: corners k and k+1 of a crossing lie on opposite sides
        // of an edge.
        let mut color = vec![None::<bool>; boundaries.len()];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); boundaries.len()];
        for cf in &corner_face {
            for k in 0..4 {
                let (a, b) = (cf[k], cf[(k + 1) % 4]);
                adj[a].push(b);
                adj[b].push(a);
            }
        }
        for root in 0..boundaries.len() {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut queue = VecDeque::from([root]);
            while let Some(f) = queue.pop_front() {
                let cf = color[f].unwrap();
                for &g in &adj[f] {
                    match color[g] {
                        None => {
                            color[g] = Some(!cf);
                            queue.push_back(g);
                        }
                        Some(cg) if cg == cf => {
                            return Err(Error::invalid(
                                InvalidReason::NonPlanar,
                                "faces admit no checkerboard colouring",
                            ));
                        }
                        _ => {}
                    }
                }
            }
        }

        Ok(Faces {
            corner_face,
            boundaries,
            color: color.into_iter().map(|c| c.unwrap_or(false)).collect(),
        })
    }

    fn graph_pieces(&self) -> usize {
        let n = self.codes.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for l in 0..self.tail.len() {
            let (a, b) = (self.tail[l].0, self.head[l].0);
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent[ra] = rb;
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }
}

/// Faces of a diagram's projection graph.
#[derive(Clone, Debug)]
pub(crate) struct Faces {
    /// `corner_face[c][k]`: face containing corner `k` (between positions
    /// `k` and `k + 1`) of crossing `c`.
    pub corner_face: Vec<[usize; 4]>,
    /// Departing darts `(crossing, position)` around each face, face on the left.
    pub boundaries: Vec<Vec<Slot>>,
    /// Checkerboard colour class of each face.
    pub color: Vec<bool>,
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "[[1,5,2,4],[3,1,4,6],[5,3,6,2]]";
    const HOPF: &str = "[[1,3,2,4],[3,1,4,2]]";

    #[test]
    fn trefoil_parses_as_knot() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.validate().unwrap(), 1);
        assert!(d.crossings().iter().all(|c| c.sign == 1));
        assert_eq!(d.writhe(), 3);
    }

    #[test]
    fn hopf_has_two_components() {
        let d = parse_pd(HOPF).unwrap();
        assert_eq!(d.validate().unwrap(), 2);
        assert_eq!(d.ensure_knot(), Err(Error::NotAKnot { components: 2 }));
    }

    #[test]
    fn empty_code_is_unknot() {
        let d = parse_pd("[]").unwrap();
        assert!(d.is_trivial());
        assert_eq!(d.validate().unwrap(), 1);
        assert_eq!(parse_pd(r#"{"pd": []}"#).unwrap(), d);
    }

    #[test]
    fn malformed_inputs() {
        for bad in [
            "",
            "[[1,2,3]]",
            "[[1,2,3,-4]]",
            "[[0,1,1,2]]",
            "{\"x\":1}",
            "[1,2]",
        ] {
            assert!(
                matches!(parse_pd(bad), Err(Error::MalformedInput(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn structural_defects() {
        let reason = |s: &str| match parse_pd(s) {
            Err(Error::InvalidDiagram { reason, .. }) => reason,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(reason("[[1,1,1,2]]"), InvalidReason::DuplicateArc);
        assert_eq!(reason("[[1,2,3,4]]"), InvalidReason::OpenStrand);
        assert_eq!(
            reason("[[1,5,2,4],[3,1,4,7],[5,3,7,2]]"),
            InvalidReason::OpenStrand
        );
        // under-strand entered from position 2
        assert_eq!(
            reason("[[1,3,2,4],[4,1,2,3]]"),
            InvalidReason::InconsistentOrientation
        );
    }

    #[test]
    fn sign_mismatch_detected() {
        let mut cs = parse_pd(TREFOIL).unwrap().crossings().to_vec();
        cs[1].sign = -1;
        match KnotDiagram::from_crossings(cs) {
            Err(Error::InvalidDiagram { reason, .. }) => {
                assert_eq!(reason, InvalidReason::SignMismatch)
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn faces_of_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        let f = d.trace().unwrap().faces().unwrap();
        assert_eq!(f.boundaries.len(), 5);
        let whites = f.color.iter().filter(|&&c| c).count();
        assert!(whites == 2 || whites == 3);
    }

    #[test]
    fn non_planar_rotation_rejected() {
        // trefoil with one crossing's rotation reversed
        let d = KnotDiagram::from_pd(&[[1, 4, 2, 5], [3, 1, 4, 6], [5, 3, 6, 2]]);
        let err = d.and_then(|d| d.trace()?.faces().map(|_| ()));
        assert!(matches!(
            err,
            Err(Error::InvalidDiagram {
                reason: InvalidReason::NonPlanar,
                ..
            })
        ));
    }

    #[test]
    fn kink_unknot() {
        let d = KnotDiagram::from_pd(&[[1, 1, 2, 2]]).unwrap();
        assert_eq!(d.validate().unwrap(), 1);
        assert_eq!(d.crossings()[0].sign, 1);
        let f = d.trace().unwrap().faces().unwrap();
        assert_eq!(f.boundaries.len(), 3);
    }

    #[test]
    fn serde_shape() {
        let d = parse_pd(TREFOIL).unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"{"pd":[[1,5,2,4],[3,1,4,6],[5,3,6,2]]}"#);
        assert_eq!(serde_json::from_str::<KnotDiagram>(&s).unwrap(), d);
    }
}
