//! Computations for the affine Lie algebra sl2-hat: colored partitions and
//! their order, PBW straightening on highest weight modules, the annihilating
//! fields `r_{iα}(n)`, bases of standard modules and specialized characters.

pub mod cli;
pub mod embeddings;
pub mod error;
pub mod linalg;
pub mod liealg;
pub mod modules;
pub mod partitions;
pub mod qseries;
pub mod relations;
pub mod suites;

pub use error::{Error, Result};
pub use liealg::{HighestWeight, LieWord, Module, ModuleKind, ModuleVector};
pub use modules::{GradeSpace, M1Builder, RhoChoice};
pub use partitions::{Color, ColoredPartition, Part, PartSet, Shape};
pub use qseries::{QSeries, Specialization};
pub use relations::RelationId;
