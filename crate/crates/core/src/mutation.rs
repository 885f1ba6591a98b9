//! Deliberate convention breakers used to check that the verification
//! suites are sensitive to the conventions they certify.
//!
//! A mutation is scoped to the current thread and to the closure passed to
//! [`with_mutation`]; nothing leaks into unrelated computations.

use std::cell::Cell;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// Divided differences return `(swap(f) - f) / (x_i - x_{i+1})`.
    SwapOrientation,
    /// Straightening `tau_i * p` omits the divided-difference term.
    DropStraightenOne,
    /// The right action on `Q2` forgets the swap of the two components.
    FlipQ2Action,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [
        Mutation::SwapOrientation,
        Mutation::DropStraightenOne,
        Mutation::FlipQ2Action,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::SwapOrientation => "swap-orientation",
            Mutation::DropStraightenOne => "drop-straighten-one",
            Mutation::FlipQ2Action => "flip-q2-action",
        }
    }
}

impl FromStr for Mutation {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mutation::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown mutation `{s}`"))
    }
}

thread_local! {
    static ACTIVE: Cell<Option<Mutation>> = const { Cell::new(None) };
}

pub fn active() -> Option<Mutation> {
    ACTIVE.with(Cell::get)
}

/// Run `f` with `m` active on this thread, restoring the previous state after.
pub fn with_mutation<R>(m: Option<Mutation>, f: impl FnOnce() -> R) -> R {
    struct Restore(Option<Mutation>);
    impl Drop for Restore {
        fn drop(&mut self) {
            ACTIVE.with(|c| c.set(self.0));
        }
    }
    let _restore = Restore(ACTIVE.with(|c| c.replace(m)));
    f()
}
