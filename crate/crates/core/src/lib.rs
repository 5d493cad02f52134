//! Lacunary and ideal lacunary convergence of sequences in probabilistic
//! normed spaces, decided on finite horizons.
//!
//! Asymptotic statements ("for every ε", "the set is in the ideal") are
//! replaced by finite parameter grids and three-valued [`ideals::Verdict`]s
//! that carry their evidence. Start with [`pn_space::PnSpace`],
//! [`lacunary::LacunaryScheme`] and [`lacunary::SequenceSource`], pick an
//! [`ideals::IdealOracle`], and call the checkers in [`pn_convergence`] and
//! [`points_cauchy`]. [`scenario`] runs the same checks from JSON files.

pub mod algebra;
pub mod axioms;
pub mod classical_modes;
pub mod error;
pub mod ideals;
pub mod lacunary;
pub mod pn_convergence;
pub mod pn_space;
pub mod points_cauchy;
pub mod scenario;

pub use error::{Error, Result};
pub use ideals::{Ideal, IdealOracle, IndexSet, Status, Verdict};
pub use lacunary::{LacunaryScheme, SequenceSource};
pub use pn_convergence::{ConvergenceReport, ParamGrid};
pub use pn_space::{Point, PnSpace};
