//! Finite fields as a tower `F ⊂ F_1 ⊂ …` of simple extensions, with
//! polynomial arithmetic and factorization over every level.

mod factor;
mod poly;
mod tower;

pub use factor::{ff_factor, is_irreducible, ord_factor, tower_extend};
pub use poly::FFPoly;
pub use tower::{FFElem, TowerField};
