//! Executable kernel for Basic Network Algebra and its synchronous dataflow
//! extension.
//!
//! Networks are [`Term`]s built from parallel composition (`++`), sequential
//! composition (`;`), block feedback (`^p`), identities, transpositions, the
//! synchronous branching constants and named cells. Three semantic models are
//! provided:
//!
//! * [`relmodel`]: finite data transforming relations, checked exhaustively;
//! * [`streamsem`]: deterministic synchronous stream transformers evaluated
//!   tick by tick;
//! * [`procsim`]: a discrete-time process network of wires, cells and
//!   branching processes exchanging messages within time slices.
//!
//! [`normal`] brings terms into the cell-list/bijective-connection normal form
//! and decides equality up to cell permutation, and [`axioms`] carries the
//! axiom catalog together with the randomized checking harness.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod axioms;
pub mod derived;
mod env;
mod error;
pub mod expand;
pub mod normal;
pub mod procsim;
pub mod relmodel;
mod rng;
mod sort;
pub mod stream;
pub mod streamsem;
mod term;

pub use env::{CellDef, CellEnv, Datum};
pub use error::{Error, Result};
pub use expand::expand_blocks;
pub use sort::Sort;
pub use stream::{Collision, Stream, Trace};
pub use term::Term;
