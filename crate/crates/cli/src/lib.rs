//! Library surface of the command-line tool: the instance file format and
//! the seeded instance generator, shared with the integration tests.

pub mod format;
pub mod gen;
