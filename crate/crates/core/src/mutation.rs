//! Seeded faults for mutation testing of the verification suite.
//!
//! A mutant is active only inside [`with_mutant`] on the current thread; the
//! production code paths consult [`is_active`] at the five instrumented sites.

use serde::{Deserialize, Serialize};
use std::cell::Cell;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mutant {
    /// Hom differential uses `d∘f + (−1)^|f| f∘d`.
    HomSign,
    /// Telescope differential sends δ_i to δ_i − a·δ_{i−1}.
    TelescopeIndex,
    /// Tensor differential drops the Koszul sign on the second factor.
    KoszulSign,
    /// Resolution lengths and validity floors are one short.
    WindowOffByOne,
    /// Smith normal form skips the divisibility-chain repair step.
    SkipDivisibility,
}

impl Mutant {
    pub const ALL: [Mutant; 5] = [
        Mutant::HomSign,
        Mutant::TelescopeIndex,
        Mutant::KoszulSign,
        Mutant::WindowOffByOne,
        Mutant::SkipDivisibility,
    ];
}

thread_local! {
    static ACTIVE: Cell<Option<Mutant>> = const { Cell::new(None) };
}

pub fn is_active(m: Mutant) -> bool {
    ACTIVE.with(|a| a.get() == Some(m))
}

/// Run `f` with `m` injected on this thread.
pub fn with_mutant<R>(m: Option<Mutant>, f: impl FnOnce() -> R) -> R {
    struct Reset(Option<Mutant>);
    impl Drop for Reset {
        fn drop(&mut self) {
            ACTIVE.with(|a| a.set(self.0));
        }
    }
    let prev = ACTIVE.with(|a| a.replace(m));
    let _reset = Reset(prev);
    f()
}

/// Whether any mutant is active on this thread.
pub fn any_active() -> bool {
    ACTIVE.with(|a| a.get().is_some())
}
