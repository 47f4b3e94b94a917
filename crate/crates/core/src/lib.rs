pub mod elimination;
pub mod expr;
pub mod freepart;
pub mod residual;
pub mod starcalc;
pub mod wigner;
