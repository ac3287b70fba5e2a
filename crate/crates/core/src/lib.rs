//! Zimin patterns and the words that avoid them: Zimin type and index,
//! higher-order counters, the binary coding ψ with its parse theory, a small
//! regular-language engine, avoidance searches and the abelian variant.

pub mod abelian;
pub mod counters;
pub mod error;
pub mod limits;
pub mod oracle;
pub mod par;
pub mod psi;
pub mod regular;
pub mod search;
mod serde_big;
pub mod verify;
pub mod words;
pub mod zimin;

pub use error::{Error, Result};
pub use limits::Limits;
pub use par::Exec;
pub use words::{BinaryWord, RankedSymbol, RankedWord};
