//! Command-line front end, text and JSON formats, and a multi-threaded
//! counting driver for [`permsquare_core`].

pub mod cli;
pub mod count;
pub mod format;
pub mod report;

pub use cli::{dispatch, CommandResult};
