//! Per-thread instrumentation counters.
//!
//! Counters are thread-local, so concurrent solves on other threads never
//! pollute a measurement. Use [`reset`] then [`snapshot`] around the code of
//! interest.

use std::cell::Cell;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Counters {
    /// Series multiplications (either kernel).
    pub series_mults: u64,
    /// General fixed-precision divisions with a unit divisor.
    pub unit_divisions: u64,
    /// General fixed-precision divisions with a non-unit divisor.
    pub nonunit_divisions: u64,
    /// Divisions by an exact integer index performed by the antiderivative.
    pub integration_divisions: u64,
    /// Largest index the antiderivative divided by.
    pub max_integration_divisor: u64,
    /// Inversions of unit constant terms (series inverse seeds).
    pub unit_inversions: u64,
}

thread_local! {
    static COUNTERS: Cell<Counters> = Cell::new(Counters::default());
}

pub fn reset() {
    COUNTERS.with(|c| c.set(Counters::default()));
}

pub fn snapshot() -> Counters {
    COUNTERS.with(|c| c.get())
}

pub(crate) fn bump(f: impl FnOnce(&mut Counters)) {
    COUNTERS.with(|c| {
        let mut v = c.get();
        f(&mut v);
        c.set(v);
    });
}
