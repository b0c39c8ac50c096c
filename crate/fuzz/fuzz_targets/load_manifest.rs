#![no_main]

#[path = "common.rs"]
mod common;

use frobsub_core::algebra::with_term_ceiling;
use frobsub_cli::parse_manifest;
use libfuzzer_sys::fuzz_target;

// Same code path as loading from disk, minus the file read.
fuzz_target!(
    init: common::allow_ceiling_unwind(),
    |data: &[u8]| {
        let Ok(text) = std::str::from_utf8(data) else { return };
        let _ = with_term_ceiling(common::FUZZ_TERM_CEILING, || {
            let _ = parse_manifest(text, "fuzz.toml");
        });
    }
);
