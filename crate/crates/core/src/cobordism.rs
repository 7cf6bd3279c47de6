//! Symbolic Lagrangian cobordism recipes with Euler characteristic, genus
//! and component accounting.

use serde::{Deserialize, Serialize};

use crate::diagram::DiagramSpec;
use crate::error::{Error, Result};
use crate::legendrian::{
    double_stabilize, legendrian_connected_sum, legendrian_unknot, LegendrianKnot,
};

/// Elementary pieces of a recipe, read bottom (source) to top (target).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Move {
    /// Standard unknot birth; the new component gets the next free id.
    Birth {
        component: usize,
    },
    /// Pinch move. Two ids join them (the second disappears, later ids shift
    /// down); one id splits it, appending a new component.
    Saddle {
        components: Vec<usize>,
    },
    Isotopy,
    /// A reversed concordance after totally-real approximation, with
    /// unquantified stabilization `stab_param` on both ends.
    ReversalApprox {
        stab_param: String,
        births: u64,
        saddles: u64,
    },
    PrimitiveConcordance {
        name: String,
        births: u64,
        saddles: u64,
        decomposable: bool,
    },
}

impl Move {
    fn births(&self) -> i64 {
        match self {
            Move::Birth { .. } => 1,
            Move::ReversalApprox { births, .. } | Move::PrimitiveConcordance { births, .. } => {
                *births as i64
            }
            _ => 0,
        }
    }

    fn saddles(&self) -> i64 {
        match self {
            Move::Saddle { .. } => 1,
            Move::ReversalApprox { saddles, .. } | Move::PrimitiveConcordance { saddles, .. } => {
                *saddles as i64
            }
            _ => 0,
        }
    }

    fn decomposable(&self) -> bool {
        match self {
            Move::Birth { .. } | Move::Saddle { .. } | Move::Isotopy => true,
            Move::PrimitiveConcordance { decomposable, .. } => *decomposable,
            Move::ReversalApprox { .. } => false,
        }
    }

    /// Applies the move to a running component count.
    fn flow(&self, count: usize, index: usize) -> Result<usize> {
        let bad = |msg: String| Err(Error::MalformedRecipe(format!("move {index}: {msg}")));
        match self {
            Move::Birth { component } => {
                if *component != count {
                    return bad(format!(
                        "birth must create component {count}, got {component}"
                    ));
                }
                Ok(count + 1)
            }
            Move::Saddle { components } => match components[..] {
                [c] if c < count => Ok(count + 1),
                [a, b] if a != b && a < count && b < count => Ok(count - 1),
                _ => bad(format!("saddle on {components:?} with {count} components")),
            },
            Move::Isotopy => Ok(count),
            Move::ReversalApprox { .. } | Move::PrimitiveConcordance { .. } => {
                if count != 1 {
                    return bad(format!("concordance piece needs 1 component, have {count}"));
                }
                Ok(1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RecipeRepr")]
pub struct CobordismRecipe {
    pub source: LegendrianKnot,
    pub target: LegendrianKnot,
    moves: Vec<Move>,
    decomposable_certified: bool,
}

#[derive(Deserialize)]
struct RecipeRepr {
    source: LegendrianKnot,
    target: LegendrianKnot,
    moves: Vec<Move>,
    decomposable_certified: bool,
}

impl TryFrom<RecipeRepr> for CobordismRecipe {
    type Error = Error;

    fn try_from(r: RecipeRepr) -> Result<Self> {
        let built = CobordismRecipe::new(r.source, r.target, r.moves)?;
        if r.decomposable_certified && !built.decomposable_certified {
            return Err(Error::MalformedRecipe(
                "decomposable_certified set on a recipe with non-decomposable moves".into(),
            ));
        }
        Ok(CobordismRecipe {
            decomposable_certified: r.decomposable_certified,
            ..built
        })
    }
}

impl CobordismRecipe {
    /// Validates the component flow `1 -> .. -> 1` and certifies
    /// decomposability iff every move is decomposable.
    pub fn new(source: LegendrianKnot, target: LegendrianKnot, moves: Vec<Move>) -> Result<Self> {
        let mut count = 1usize;
        for (i, m) in moves.iter().enumerate() {
            count = m.flow(count, i)?;
        }
        if count != 1 {
            return Err(Error::MalformedRecipe(format!(
                "recipe ends with {count} components"
            )));
        }
        let decomposable_certified = moves.iter().all(Move::decomposable);
        Ok(CobordismRecipe {
            source,
            target,
            moves,
            decomposable_certified,
        })
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn decomposable_certified(&self) -> bool {
        self.decomposable_certified
    }

    pub fn births(&self) -> i64 {
        self.moves.iter().map(Move::births).sum()
    }

    pub fn saddles(&self) -> i64 {
        self.moves.iter().map(Move::saddles).sum()
    }

    pub fn is_concordance(&self) -> bool {
        euler_characteristic(self) == 0
    }
}

/// `births - saddles`; recipes contain no explicit index-2 pieces.
pub fn euler_characteristic(r: &CobordismRecipe) -> i64 {
    r.births() - r.saddles()
}

pub fn genus(r: &CobordismRecipe) -> Result<u64> {
    let chi = euler_characteristic(r);
    if chi > 0 || chi % 2 != 0 {
        return Err(Error::MalformedRecipe(format!(
            "Euler characteristic {chi} is not that of a connected knot cobordism"
        )));
    }
    Ok((-chi / 2) as u64)
}

/// Trivial cylinder over `l`.
pub fn identity(l: LegendrianKnot) -> CobordismRecipe {
    CobordismRecipe {
        source: l.clone(),
        target: l,
        moves: Vec::new(),
        decomposable_certified: true,
    }
}

fn check_ends(a: &LegendrianKnot, b: &LegendrianKnot) -> Result<()> {
    let mismatch = |field, l: String, r: String| {
        Err(Error::EndMismatch {
            field,
            left: l,
            right: r,
        })
    };
    if a.spec() != b.spec() {
        return mismatch("smooth", a.spec().to_string(), b.spec().to_string());
    }
    if a.tb != b.tb {
        return mismatch("tb", a.tb.to_string(), b.tb.to_string());
    }
    if a.rotation != b.rotation {
        return mismatch("rotation", a.rotation.to_string(), b.rotation.to_string());
    }
    if a.symbolic != b.symbolic {
        return mismatch(
            "symbolic",
            format!("{:?}", a.symbolic),
            format!("{:?}", b.symbolic),
        );
    }
    Ok(())
}

/// `a` followed by `b`; requires `a.target` to match `b.source`.
pub fn concatenate(a: &CobordismRecipe, b: &CobordismRecipe) -> Result<CobordismRecipe> {
    check_ends(&a.target, &b.source)?;
    let mut moves = a.moves.clone();
    moves.extend(b.moves.iter().cloned());
    Ok(CobordismRecipe {
        source: a.source.clone(),
        target: b.target.clone(),
        moves,
        decomposable_certified: a.decomposable_certified && b.decomposable_certified,
    })
}

fn ensure_concordance(c: &CobordismRecipe) -> Result<()> {
    let chi = euler_characteristic(c);
    if chi != 0 {
        return Err(Error::NotAConcordance { genus: -chi / 2 });
    }
    Ok(())
}

/// Connected sum of two concordances: the first acts on its summand, then
/// the second on its own, so move lists simply append.
pub fn concordance_connected_sum(
    c1: &CobordismRecipe,
    c2: &CobordismRecipe,
) -> Result<CobordismRecipe> {
    ensure_concordance(c1)?;
    ensure_concordance(c2)?;
    let mut moves = c1.moves.clone();
    moves.extend(c2.moves.iter().cloned());
    Ok(CobordismRecipe {
        source: legendrian_connected_sum(&c1.source, &c2.source)?,
        target: legendrian_connected_sum(&c1.target, &c2.target)?,
        moves,
        decomposable_certified: c1.decomposable_certified && c2.decomposable_certified,
    })
}

/// Reversed concordance made Lagrangian by approximation: from
/// `S(target)` to `S(source)`, where the two stabilization multisets are
/// independent symbols `{stab_param}.neg` and `{stab_param}.pos`.
pub fn reverse_approximate(c: &CobordismRecipe, stab_param: &str) -> Result<CobordismRecipe> {
    ensure_concordance(c)?;
    let mv = Move::ReversalApprox {
        stab_param: stab_param.to_string(),
        births: c.births() as u64,
        saddles: c.saddles() as u64,
    };
    Ok(CobordismRecipe {
        source: c.target.clone().with_symbolic(format!("{stab_param}.neg")),
        target: c.source.clone().with_symbolic(format!("{stab_param}.pos")),
        moves: vec![mv],
        decomposable_certified: false,
    })
}

/// Genus-`g` cobordism from `(S_+S_-)^g (l)` to `l`, one genus-one block
/// per double stabilization. Each block splits the knot and rejoins it.
pub fn svvw_tower(l: &LegendrianKnot, g: u64) -> Result<CobordismRecipe> {
    if g == 0 {
        return Err(Error::BadParameter("tower genus must be at least 1".into()));
    }
    let mut moves = Vec::with_capacity(2 * g as usize);
    for _ in 0..g {
        moves.push(Move::Saddle {
            components: vec![0],
        });
        moves.push(Move::Saddle {
            components: vec![0, 1],
        });
    }
    CobordismRecipe::new(double_stabilize(l, g), l.clone(), moves)
}

/// Primitive decomposable concordance from the `tb = -1` unknot to the
/// Legendrian pretzel `P(3, -3, k)`: one birth and one pinch. A
/// decomposable concordance preserves `tb` and `r`, so the target carries
/// `tb = -1`, `r = 0`.
pub fn pretzel_concordance(k: i64) -> Result<CobordismRecipe> {
    let target = LegendrianKnot::new(DiagramSpec::pretzel(3, -3, k), -1, 0)?;
    CobordismRecipe::new(
        legendrian_unknot(),
        target,
        vec![Move::PrimitiveConcordance {
            name: format!("C_{k}"),
            births: 1,
            saddles: 1,
            decomposable: true,
        }],
    )
}

/// Pretzel parameters `k` of the primitive concordances used in `r`.
pub fn pretzel_parameters(r: &CobordismRecipe) -> Vec<i64> {
    r.moves
        .iter()
        .filter_map(|m| match m {
            Move::PrimitiveConcordance { name, .. } => name.strip_prefix("C_")?.parse().ok(),
            _ => None,
        })
        .collect()
}
