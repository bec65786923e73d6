//! Type A root systems, Weyl group Bruhat data, signed length complexes and
//! the cohomology tables built from them.

pub mod bggsign;
pub mod complex;
pub mod error;
pub mod gf2;
pub mod linalg;
pub mod parse;
pub mod rootsys;
pub mod soergel;
pub mod theorems;
pub mod weyl;

pub use error::{Error, Result};
pub use rootsys::{build_type_a, load_root_system, CompactSubsystem, Root, RootData, RootSystem, Weight};
pub use weyl::{ElementId, Subset, WeylGroup};
