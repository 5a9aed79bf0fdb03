//! Exact integer and rational arithmetic: the p-adic context, dense integer
//! polynomials, φ-adic expansions and resultants.

pub mod context;
pub mod expansion;
pub mod poly;
pub mod ratval;
pub mod resultant;

pub use context::{is_prime_u64, val_p, ValuedContext};
pub use expansion::{phi_expand, Expansion};
pub use poly::{symmetric_mod, v1, IntPoly};
pub use ratval::RatVal;
pub use resultant::resultant;
