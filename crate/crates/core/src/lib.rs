//! Combinatorics of symmetric outer automorphisms of right-angled Artin groups.

pub mod autos;
pub mod corpus;
pub mod error;
pub mod graph;
pub mod norms;
pub mod partitions;
pub mod sample;
pub mod spine;
pub mod words;

pub use error::{Error, Result};
pub use graph::{DefiningGraph, Literal, LitSet, OrderReport};
pub use words::{CyclicClass, Word};
pub use partitions::{WhiteheadPair, WhiteheadPartition};
pub use autos::{ElementaryMove, RaagAutomorphism};
pub use norms::{MarkedSalvetti, NormContext, NormPrefix};
pub use spine::{CompatibleSet, MoveGraph, RankReport};
