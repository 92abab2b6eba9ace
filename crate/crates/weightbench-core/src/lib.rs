//! Exact verification bench for weight-counting identities of finite groups.
//!
//! Everything is computed over exact arithmetic (permutations, cyclotomic
//! integers, finite prime fields); no floating point is involved anywhere, so
//! reports are reproducible byte-for-byte.

pub mod alperin;
pub mod chains;
pub mod chartab;
pub mod cyclo;
pub mod error;
pub mod fusion;
pub mod gf;
pub mod group;
pub mod io;
pub mod kstar;
pub mod perm;
pub mod report;

pub use error::{Error, Result};
pub use group::{GroupHom, PermGroup, DEFAULT_ELEMENT_CAP};
pub use perm::Perm;
