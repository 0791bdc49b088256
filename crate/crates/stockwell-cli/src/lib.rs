//! Support library for the `stockwell` binary: file formats and error
//! plumbing live here so the format contracts are testable in isolation.

pub mod io;
