//! Cutsize distributions of balanced hypergraph bipartitions for random
//! hypergraphs drawn from regular LDPC ensembles, and the block-diagonal
//! parallel-encodability test that motivates them.
//!
//! * [`matrix`], [`hypergraph`], [`partition`], [`alist`]: representations.
//! * [`encodability`]: per-partition rank test, brute-force minimum balanced
//!   cutsize, maximum parallel degree.
//! * [`ensemble`]: configuration-model sampling and exhaustive enumeration.
//! * [`distribution`]: exact `A(s, m1)` and `B(s, eps)`.
//! * [`oracle`]: brute-force and Monte-Carlo checks of the exact tables.
//! * [`asymptotics`]: growth rates and typical minimum cutsizes.

pub mod alist;
pub mod asymptotics;
pub mod distribution;
pub mod encodability;
pub mod ensemble;
pub mod error;
pub mod hypergraph;
pub mod matrix;
pub mod oracle;
pub mod partition;
pub mod poly;
pub mod ratio;

pub use asymptotics::{Degrees, GrowthPoint, PointKind, RootSearch, VerdictRow};
pub use distribution::CutsizeTable;
pub use encodability::{BlockWitness, EncodabilityVerdict, PartRank};
pub use ensemble::EnsembleParams;
pub use error::{Error, Result};
pub use hypergraph::Hypergraph;
pub use matrix::BinaryMatrix;
pub use partition::Partition;
pub use poly::PolyZ;
pub use ratio::Ratio;
