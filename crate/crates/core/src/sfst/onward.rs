use super::{Sfst, StateId, StateLabel};
use crate::symbols::{lcp_slices, Str};

/// A non-start state whose outgoing and final outputs share a prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnwardViolation {
    pub state: StateId,
    pub prefix: Str,
}

impl Sfst {
    /// The first non-start state (by index) whose transition outputs and
    /// final output have a nonempty common prefix.
    pub fn onward_violation(&self) -> Option<OnwardViolation> {
        self.states().filter(|&q| q != self.start).find_map(|q| {
            let outs = self.delta[q.0].iter().map(|(_, y)| y.symbols());
            let all = outs.chain(std::iter::once(self.finals[q.0].symbols()));
            let prefix = lcp_slices(all).unwrap_or_default();
            (!prefix.is_empty()).then(|| OnwardViolation { state: q, prefix: Str::from_symbols(prefix) })
        })
    }

    pub fn is_onward(&self) -> bool {
        self.onward_violation().is_none()
    }

    /// For every state, the longest common prefix of everything the machine
    /// can still emit from that state (final outputs included).
    pub fn residual_prefixes(&self) -> Vec<Str> {
        let mut pending: Vec<Str> = self.finals.clone();
        loop {
            let mut changed = false;
            for q in 0..self.num_states() {
                for (r, y) in &self.delta[q] {
                    let through = y.concat(&pending[r.0]);
                    let shorter = lcp_slices([pending[q].symbols(), through.symbols()]).unwrap_or_default();
                    if shorter.len() < pending[q].len() {
                        pending[q] = Str::from_symbols(shorter);
                        changed = true;
                    }
                }
            }
            if !changed {
                return pending;
            }
        }
    }

    /// Equivalent machine in which every non-start state emits as early as
    /// possible. Nothing is hoisted in front of the start state, so `f(λ)`
    /// stays the start state's final output. If the start state would have
    /// to shed a prefix and is re-entered, it is split off first.
    pub fn make_onward(&self) -> Sfst {
        let prefixes = self.residual_prefixes();
        let re_entered = self.delta.iter().flatten().any(|(r, _)| *r == self.start);
        if prefixes[self.start.0].is_empty() || !re_entered {
            return self.pushed(&prefixes);
        }
        let mut split = self.clone();
        let fresh = fresh_name(&self.labels);
        split.labels.push(fresh);
        split.delta.push(self.delta[self.start.0].clone());
        split.finals.push(self.finals[self.start.0].clone());
        split.start = StateId(self.num_states());
        let prefixes = split.residual_prefixes();
        split.pushed(&prefixes)
    }

    fn pushed(&self, prefixes: &[Str]) -> Sfst {
        let mut out = self.clone();
        let strip = |q: usize, y: &Str| -> Str {
            if q == self.start.0 {
                y.clone()
            } else {
                y.strip_prefix(&prefixes[q]).expect("residual prefix of every emission")
            }
        };
        for q in 0..self.num_states() {
            for (s, (r, y)) in self.delta[q].iter().enumerate() {
                out.delta[q][s].1 = strip(q, &y.concat(&prefixes[r.0]));
            }
            out.finals[q] = strip(q, &self.finals[q]);
        }
        out
    }
}

fn fresh_name(labels: &[StateLabel]) -> StateLabel {
    let mut name = String::from("start");
    loop {
        let label = StateLabel::Opaque(name.clone());
        if !labels.contains(&label) {
            return label;
        }
        name.push('\'');
    }
}
