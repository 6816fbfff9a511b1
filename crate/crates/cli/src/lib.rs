//! Command-line front end for `arcspoke-core`: JSON file formats, the
//! built-in corpus, renderers and the subcommands.
//!
//! Exit codes and file schemas are listed in `docs/FORMATS.md`.

mod app;
pub mod corpus;
pub mod error;
pub mod format;
pub mod render;

pub use app::{load_diagram, run, write_atomic, Cli, Command, CorpusAction, RenderFormat};
pub use error::CliError;
