//! Front end for the `contractio` library: a small group description
//! language, report rendering and the command runner behind the binary.

pub mod dsl;
pub mod report;
pub mod run;

pub use dsl::{parse, Document, DslError, GroupDef, Settings};
pub use report::Format;
pub use run::{run_command, Command, Options};
