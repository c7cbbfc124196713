//! Succinct bit-sequence structures.
//!
//! - [`bitvec`]: static `rank`/`select`/`succ`/`pred` over bit sequences, plus a
//!   one-level block index for faster rank on large inputs.
//! - [`louds`]: level-order unary degree sequence encoding of ordinal trees and
//!   navigation (children count, i-th child, parent) written purely in terms of
//!   `rank` and `select`.
//! - [`dynamic`]: bit vectors stored in a red-black tree whose leaves are small
//!   flat bit arrays, supporting insertion, deletion, set and clear.
//! - [`oracle`]: naive reference implementations every structure is tested
//!   against.
//!
//! Index conventions are fixed throughout: `rank` takes a prefix length
//! (0-based, exclusive), `select` returns a 1-based position with `0` for the
//! 0th occurrence and `len + 1` when the occurrence does not exist.

pub mod bitvec;
pub mod dynamic;
pub mod error;
pub mod gen;
pub mod louds;
pub mod oracle;
pub mod par;
pub mod script;
pub mod verify;

pub use bitvec::{pred, rank, select, succ, BitSeq, RankIndex};
pub use dynamic::{Color, DTree, DynamicBitVector, Meta, SizeBounds};
pub use error::Error;
pub use louds::{Louds, Tree};

pub type Result<T, E = Error> = std::result::Result<T, E>;
