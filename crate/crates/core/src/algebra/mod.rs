//! Exact integer linear algebra and Laurent polynomial arithmetic.

mod bareiss;
mod laurent;
mod matrix;
mod modp;
mod snf;

pub use bareiss::{bareiss_det, ExactRing};
pub use laurent::LaurentPoly;
pub use matrix::{abs_det, det_exact, IntMatrix};
pub use modp::{ensure_odd_prime, ensure_prime, is_prime, prime_factors, rank_mod_p};
pub use snf::{snf, SnfResult};
