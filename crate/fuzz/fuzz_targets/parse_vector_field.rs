#![no_main]

#[path = "common.rs"]
mod common;

use frobsub_core::algebra::{with_term_ceiling, Vars};
use frobsub_core::parser::parse_vector_field;
use libfuzzer_sys::fuzz_target;

fuzz_target!(
    init: common::allow_ceiling_unwind(),
    |data: &[u8]| {
        let Ok(text) = std::str::from_utf8(data) else { return };
        let coords = Vars::new(["t1", "t2", "t3"]);
        let _ = with_term_ceiling(common::FUZZ_TERM_CEILING, || {
            if let Ok(field) = parse_vector_field(text, &coords) {
                assert_eq!(field.len(), coords.len());
            }
        });
    }
);
