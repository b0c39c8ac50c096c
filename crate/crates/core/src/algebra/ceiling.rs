//! Expression-swell guard.
//!
//! Every polynomial constructed by the arithmetic routines is checked against a
//! per-thread term ceiling. Exceeding it unwinds with a [`TermCeilingExceeded`]
//! payload, which [`with_term_ceiling`] turns back into an ordinary error. The
//! ceiling is thread-local, so concurrent computations on other threads are
//! unaffected.

use std::cell::Cell;
use std::panic::{self, AssertUnwindSafe};

/// Default number of terms a single polynomial may carry.
pub const DEFAULT_TERM_CEILING: usize = 1_000_000;

thread_local! {
    static CEILING: Cell<usize> = const { Cell::new(DEFAULT_TERM_CEILING) };
}

/// Unwind payload raised when a polynomial grows past the active ceiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("expression swell: {terms} terms exceeds the ceiling of {ceiling}")]
pub struct TermCeilingExceeded {
    pub terms: usize,
    pub ceiling: usize,
}

pub fn current_ceiling() -> usize {
    CEILING.with(Cell::get)
}

#[inline]
pub(crate) fn check(terms: usize) {
    let ceiling = current_ceiling();
    if terms > ceiling {
        panic::panic_any(TermCeilingExceeded { terms, ceiling });
    }
}

/// Runs `f` with the given term ceiling installed on the current thread.
///
/// Other panics are propagated unchanged.
pub fn with_term_ceiling<T>(
    ceiling: usize,
    f: impl FnOnce() -> T,
) -> Result<T, TermCeilingExceeded> {
    let previous = CEILING.with(|c| c.replace(ceiling));
    let outcome = panic::catch_unwind(AssertUnwindSafe(f));
    CEILING.with(|c| c.set(previous));
    match outcome {
        Ok(value) => Ok(value),
        Err(payload) => match payload.downcast::<TermCeilingExceeded>() {
            Ok(exceeded) => Err(*exceeded),
            Err(other) => panic::resume_unwind(other),
        },
    }
}

/// Whether a panic payload is the ceiling signal. Used by front ends that
/// install a quiet panic hook.
pub fn is_ceiling_payload(payload: &(dyn std::any::Any + Send)) -> bool {
    payload.is::<TermCeilingExceeded>()
}
