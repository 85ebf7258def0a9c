//! Lifting a symbol tier to a tier over actions.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::symbols::{Action, Symbol, Tier};

/// `x:y` is on the lifted tier iff `x` is on `t`.
pub fn lift_tier_input(t: &Tier<Symbol>, actions: &BTreeSet<Action>) -> Result<Tier<Action>> {
    let mut on = Vec::new();
    for a in actions {
        if t.keeps(&a.input)? {
            on.push(a.clone());
        }
    }
    Tier::new(actions.iter().cloned(), on)
}

/// `x:y` is on the lifted tier iff `t(y)` is nonempty.
pub fn lift_tier_output(t: &Tier<Symbol>, actions: &BTreeSet<Action>) -> Result<Tier<Action>> {
    let mut on = Vec::new();
    for a in actions {
        if !t.apply(a.output.symbols())?.is_empty() {
            on.push(a.clone());
        }
    }
    Tier::new(actions.iter().cloned(), on)
}
