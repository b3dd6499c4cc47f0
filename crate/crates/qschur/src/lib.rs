//! Std companion to `qschur-core`: literal formats, scale guards, JSON
//! rendering and the command implementations behind the `qschur` binary.

pub mod commands;
pub mod guard;
pub mod literal;
