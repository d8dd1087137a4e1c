//! Polarizations of monomial ideals: construction from partition families,
//! spanning trees, graph splits and triangle-grid choices; Alexander
//! duality; Hilbert-series and Betti-number oracles; cellular resolution
//! certificates.

pub mod betti;
mod canon;
pub mod cellres;
pub mod duality;
pub mod error;
pub mod graphs;
pub mod hilbert;
pub mod ideals;
pub mod linalg;
pub mod partitions;
pub mod simplicial;
pub mod trees;
pub mod trianglegrid;

pub use betti::{betti_table, BettiTable};
pub use cellres::{supports_resolution, LabeledCellComplex};
pub use duality::alexander_dual;
pub use error::{Error, Result};
pub use hilbert::{hilbert_numerator, is_polarization, HilbertNumerator, PolarizationCheck};
pub use ideals::{MonomialIdeal, SplitMonomial, VarRef};
pub use partitions::PartitionFamily;
pub use trees::LabeledTree;
pub use trianglegrid::TriangleChoice;
pub mod sweep;
