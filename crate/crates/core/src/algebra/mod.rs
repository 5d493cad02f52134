//! Distribution functions, t-norms and grid triangle functions.

mod df;
mod tnorm;
mod triangle;

pub use df::{DfKind, DistributionFunction, GridDF};
pub use tnorm::{check_tnorm_axioms, check_tnorm_axioms_float, unit_grid_triples, TNorm};
pub use triangle::{triangle_eval, TriangleKind, TriangleOutput};
