#![no_main]

#[path = "common.rs"]
mod common;

use frobsub_core::algebra::{with_term_ceiling, Vars};
use frobsub_core::parser::parse_polynomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(
    init: common::allow_ceiling_unwind(),
    |data: &[u8]| {
        let Ok(text) = std::str::from_utf8(data) else { return };
        let vars = Vars::new(["t1", "t2", "t3", "k"]);
        let _ = with_term_ceiling(common::FUZZ_TERM_CEILING, || {
            if let Ok(p) = parse_polynomial(text, &vars) {
                // Rendering must parse back to the same polynomial.
                let again = parse_polynomial(&p.to_string(), &vars).expect("display re-parses");
                assert_eq!(again, p);
            }
        });
    }
);
