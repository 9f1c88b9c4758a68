//! Commutativity degrees and m-th relative exterior degrees of small finite
//! groups.

pub mod config;
pub mod corpus;
pub mod cover;
pub mod degree;
pub mod error;
pub mod exterior;
pub mod fp;
pub mod group;
pub mod homology;
pub mod spec;
pub mod sweep;
pub mod verify;

pub use config::{Caps, Config, Strategy};
pub use error::{Error, Result};
