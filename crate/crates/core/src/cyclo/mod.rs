//! Cyclotomic polynomials and exact arithmetic in cyclotomic fields.

mod num;
mod poly;

pub use num::CycloNum;
pub use poly::{cyclotomic_poly, eval_phi, totient, CycloPoly};
