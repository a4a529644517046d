//! Exact homological algebra for persistence modules over finite posets: Hom, Ext,
//! minimal projective resolutions and global dimension over the incidence algebra,
//! with independent oracles for cross-checking.

pub mod error;
pub mod exactfield;
pub mod ext;
pub mod io;
pub mod oracle;
pub mod pmodule;
pub mod poset;
pub mod registry;
pub mod resolution;
pub mod suite;

pub use error::{Error, Result};
