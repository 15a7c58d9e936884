//! IO, file formats, and report plumbing around `qmlen-core`.

pub mod element;
pub mod registry;
pub mod table;
pub mod witness_io;
