//! Exact knot invariants from planar diagram codes, symbolic Lagrangian
//! cobordism recipes, and critical-point obstructions derived from the
//! homology of double branched covers.

pub mod algebra;
pub mod bigint_json;
pub mod cobordism;
pub mod diagram;
pub mod error;
pub mod invariants;
pub mod legendrian;
pub mod obstruction;
pub mod pipeline;
pub mod selftest;

pub use error::{Error, InvalidReason, Result};

/// Version string stamped into reports and certificates.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Sizes the global worker pool used by prime sweeps and batch checks.
/// Only the first call has an effect.
pub fn configure_threads(n: usize) {
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n.max(1))
        .build_global();
}
