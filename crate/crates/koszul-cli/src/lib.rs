//! Documents, command dispatch and the acceptance runner.

pub mod acceptance;
pub mod commands;
pub mod doc;
pub mod gen;
