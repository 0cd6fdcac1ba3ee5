pub mod coeff;
pub mod matrix;
pub mod parse;
pub mod poly;

pub use coeff::{Coefficient, DisplayCoefficient, Mod1, RingCoefficient};
pub use matrix::{IntMatrix, PolyMatrix, RatMatrix};
pub use parse::{parse_int_matrix, parse_int_poly, parse_rat_matrix, parse_rat_poly};
pub use poly::{reduce_mod_torus, IntPoly, LaurentPoly, Monomial, RatPoly, TorsionPoly, TorusRingElem};
