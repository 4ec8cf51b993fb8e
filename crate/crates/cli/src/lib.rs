//! Library side of the `toptri` command-line tool.

pub mod algo;
pub mod bench;
pub mod gen;
pub mod report;
