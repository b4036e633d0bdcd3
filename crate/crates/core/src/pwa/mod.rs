//! Piecewise affine functions in min-max form.

mod analysis;
mod builders;
pub mod fixtures;
mod function;

pub use analysis::{Infimum, PieceAnalysis, PieceInfo};
pub use builders::{
    pa_abs, pa_add, pa_affine, pa_clamp_plus, pa_constant, pa_max, pa_min, pa_neg, pa_scale, pa_zero,
    TERM_CAP,
};
pub use function::{AffineTerm, ConvexPiece, MinMaxFunction};
