use frobsub_core::algebra::ceiling::is_ceiling_payload;

/// Small ceiling so pathological inputs stop quickly.
pub const FUZZ_TERM_CEILING: usize = 1_000;

/// libFuzzer aborts on every panic; the term-ceiling unwind is an expected,
/// caught signal and must pass through.
pub fn allow_ceiling_unwind() {
    let abort_hook = std::panic::take_hook();
    std::panic::set_hook(Box::new(move |info| {
        if !is_ceiling_payload(info.payload()) {
            abort_hook(info);
        }
    }));
}
