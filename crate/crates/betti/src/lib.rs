//! Front end for `betti-core`: the BT1 table format, Betti-diagram rendering
//! and the `betti` command.

pub mod cli;
pub mod render;
pub mod table_file;
