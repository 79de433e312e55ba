//! Instance generation, file formats, reports and the command-line front end
//! for `fairfan-core`.

pub mod cli;
pub mod error;
pub mod format;
pub mod generate;
pub mod poset;
pub mod render;
pub mod run;
