//! Exact character theory of finite groups, Asai characters of index-two
//! subgroups, similitude-group structure in dimension four, and Euler factors
//! of Artin L-functions, with the number theory needed to realise examples.

pub mod asai;
pub mod chr;
pub mod corpus;
pub mod cyc;
pub mod error;
pub mod grp;
pub mod lfn;
pub mod modp;
pub mod nt;
pub mod ogo;

pub use error::{Error, Result};
