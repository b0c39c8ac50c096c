pub mod commands;
pub mod manifest;
pub mod run;

pub use manifest::{load_manifest, parse_manifest, Manifest, ManifestError, Options};
pub use run::{run, Run, EXIT_CEILING, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK};
