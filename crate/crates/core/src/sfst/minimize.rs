use std::collections::HashMap;

use super::{Sfst, StateId, StateLabel};
use crate::error::{Error, Result};
use crate::symbols::Str;

impl Sfst {
    /// Onward, trimmed, minimal machine for the same function. States are
    /// numbered `q0, q1, ...` breadth-first from the start, so two machines
    /// compute the same function iff their minimizations are equal tables.
    pub fn minimize(&self) -> Sfst {
        let onward = self.make_onward();
        let trimmed = onward.trim();
        let blocks = trimmed.refine();
        trimmed.quotient(&blocks).renumber()
    }

    /// Keeps only reachable states, numbered breadth-first.
    pub fn trim(&self) -> Sfst {
        self.relabel_by(&self.reachable())
    }

    /// Moore-style refinement on (final output, per-symbol output, per-symbol
    /// successor block). Returns the block of each state. On an onward
    /// machine two states share a block iff they have the same behaviour.
    pub(crate) fn refine(&self) -> Vec<usize> {
        let mut blocks = assign(self.states().map(|q| self.final_output(q).clone()));
        let mut count = distinct(&blocks);
        loop {
            let next = assign(self.states().map(|q| {
                let row: Vec<(&Str, usize)> = self.delta[q.0].iter().map(|(r, y)| (y, blocks[r.0])).collect();
                (blocks[q.0], row)
            }));
            let n = distinct(&next);
            blocks = next;
            if n == count {
                return blocks;
            }
            count = n;
        }
    }

    fn quotient(&self, blocks: &[usize]) -> Sfst {
        let n = distinct(blocks);
        let mut rep = vec![None; n];
        for q in self.states() {
            rep[blocks[q.0]].get_or_insert(q);
        }
        let rep: Vec<StateId> = rep.into_iter().map(|r| r.expect("nonempty block")).collect();
        let delta = rep
            .iter()
            .map(|q| self.delta[q.0].iter().map(|(r, y)| (StateId(blocks[r.0]), y.clone())).collect())
            .collect();
        Sfst {
            input: self.input.clone(),
            output: self.output.clone(),
            labels: rep.iter().map(|q| self.labels[q.0].clone()).collect(),
            start: StateId(blocks[self.start.0]),
            delta,
            finals: rep.iter().map(|q| self.finals[q.0].clone()).collect(),
        }
    }

    fn renumber(&self) -> Sfst {
        self.relabel_by(&self.reachable()).with_opaque_names()
    }

    /// Restricts to `order` (which must be closed under transitions) and
    /// renumbers states by their position in it.
    fn relabel_by(&self, order: &[StateId]) -> Sfst {
        let mut new_id = vec![usize::MAX; self.num_states()];
        for (i, q) in order.iter().enumerate() {
            new_id[q.0] = i;
        }
        let delta = order
            .iter()
            .map(|q| self.delta[q.0].iter().map(|(r, y)| (StateId(new_id[r.0]), y.clone())).collect())
            .collect();
        Sfst {
            input: self.input.clone(),
            output: self.output.clone(),
            labels: order.iter().map(|q| self.labels[q.0].clone()).collect::<Vec<StateLabel>>(),
            start: StateId(new_id[self.start.0]),
            delta,
            finals: order.iter().map(|q| self.finals[q.0].clone()).collect(),
        }
    }

    /// Whether both machines compute the same function on all of Σ*.
    pub fn equivalent(&self, other: &Sfst) -> Result<bool> {
        if self.input != other.input {
            return Err(Error::AlphabetMismatch(format!(
                "input alphabets {:?} and {:?} differ",
                self.input, other.input
            )));
        }
        let (a, b) = (self.minimize(), other.minimize());
        Ok(a.start == b.start && a.delta == b.delta && a.finals == b.finals)
    }
}

fn assign<K: std::hash::Hash + Eq>(keys: impl Iterator<Item = K>) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    keys.map(|k| {
        let next = ids.len();
        *ids.entry(k).or_insert(next)
    })
    .collect()
}

fn distinct(blocks: &[usize]) -> usize {
    blocks.iter().max().map_or(0, |m| m + 1)
}
