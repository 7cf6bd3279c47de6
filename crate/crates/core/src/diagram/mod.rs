//! Knot diagrams as PD codes: parsing, validation, generators, surgery.

mod builder;
mod generators;
mod pd;
mod perturb;
mod spec;

pub use generators::{
    connected_power, connected_sum, figure_eight, pretzel, torus2, trefoil, unknot,
};
pub use pd::{parse_pd, Crossing, KnotDiagram};
pub use perturb::reidemeister_perturb;
pub use spec::DiagramSpec;
