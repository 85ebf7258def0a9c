//! Canonical machines whose states are the suffix tuples themselves.

use std::collections::HashMap;
use std::hash::Hash;

use super::exact::{tiosl_key_of, tiosl_nodes, tssl_nodes};
use super::explore::{conflict_witness, first_conflict, Node};
use super::LocalityParams;
use crate::error::{Error, Result};
use crate::sfst::{Sfst, SfstBuilder, StateLabel};
use crate::symbols::{padded_suffix, Action, Padded, Str, Symbol, Tier};
use crate::views::FunctionHandle;

/// Largest state count accepted when completing the full tuple set.
const MAX_FULL_STATES: usize = 1 << 16;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    /// Also add every unreachable tuple, so the state set is the whole
    /// Cartesian product. Their transitions follow the shape rule and their
    /// final outputs are λ.
    pub full_state_set: bool,
}

/// One state per reachable carry, copied from the first node with that carry.
fn assemble<C, L>(f: &FunctionHandle, nodes: &[Node<C>], label: L) -> Result<(SfstBuilder, Vec<C>)>
where
    C: Clone + Eq + Hash,
    L: Fn(&C) -> StateLabel,
{
    let canon = f.canon()?;
    let mut rep: HashMap<&C, usize> = HashMap::new();
    let mut order = Vec::new();
    for (n, node) in nodes.iter().enumerate() {
        let first = *rep.entry(&node.carry).or_insert_with(|| {
            order.push(n);
            n
        });
        if nodes[first].state != node.state {
            return Err(Error::InitialOutputConflict {
                prefix: f.initial_output()?.to_string(),
                revisit: node.access.to_string(),
            });
        }
    }
    let mut b = Sfst::builder(canon.input_alphabet().clone(), canon.output_alphabet().clone());
    for &n in &order {
        let q = b.state(label(&nodes[n].carry));
        b.set_final(q, canon.final_output(nodes[n].state).clone());
        for (s, sym) in canon.input_alphabet().symbols().iter().enumerate() {
            let r = b.state(label(&nodes[nodes[n].next[s]].carry));
            b.add_transition(q, sym, r, canon.step(nodes[n].state, s).1.clone())?;
        }
    }
    let start = b.state(label(&nodes[0].carry));
    b.set_start(start);
    Ok((b, order.iter().map(|&n| nodes[n].carry.clone()).collect()))
}

/// Every tuple of length `len` over `LB` and `items`.
fn tuples<T: Clone>(items: &[T], len: usize) -> Result<Vec<Vec<Padded<T>>>> {
    let size = (items.len() + 1).checked_pow(len as u32).filter(|&n| n <= MAX_FULL_STATES);
    if size.is_none() {
        return Err(Error::InvalidParams("full state set is too large".into()));
    }
    let choices: Vec<Padded<T>> =
        std::iter::once(Padded::Boundary).chain(items.iter().cloned().map(Padded::Item)).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Padded<T>>| {
                choices.iter().map(move |c| {
                    let mut t = prefix.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    Ok(out)
}

/// Canonical `k`-TSSL machine: states are tiered `(k−1)`-action suffixes,
/// transitions and final outputs are read off the canon machine.
pub fn build_canonical_tssl(f: &FunctionHandle, k: usize, t: &Tier<Action>, opts: BuildOptions) -> Result<Sfst> {
    let nodes = tssl_nodes(f, k, t)?;
    if let Some(pair) = first_conflict(f, &nodes, |n| nodes[n].carry.clone())? {
        return Err(Error::NotInClass(Box::new(conflict_witness(f, &nodes, pair)?)));
    }
    let label = |c: &Vec<Padded<Action>>| StateLabel::Actions(c.clone());
    let (mut b, _) = assemble(f, &nodes, label)?;
    if opts.full_state_set {
        let actions: Vec<Action> = f.actions()?.into_iter().collect();
        let canon = f.canon()?;
        let missing: Vec<_> = tuples(&actions, k - 1)?.into_iter().filter(|t| !b.has_state(&label(t))).collect();
        for tuple in missing {
            let q = b.state(label(&tuple));
            b.set_final(q, Str::lambda());
            for sym in canon.input_alphabet().symbols() {
                let a = actions.iter().find(|a| &a.input == sym).expect("canon is total");
                let mut next = tuple.clone();
                if t.keeps(a)? {
                    next.push(Padded::Item(a.clone()));
                }
                let r = b.state(label(&padded_suffix(&next, k - 1)));
                b.add_transition(q, sym, r, a.output.clone())?;
            }
        }
    }
    b.build()
}

/// Canonical `i,j`-TIOSL machine: states are tiered input and output suffix
/// pairs, everything else is read off the canon machine.
pub fn build_canonical_tiosl(
    f: &FunctionHandle,
    p: LocalityParams,
    t: &Tier<Symbol>,
    opts: BuildOptions,
) -> Result<Sfst> {
    let p = LocalityParams::new(p.i, p.j)?;
    let (nodes, root_key) = tiosl_nodes(f, p, t)?;
    if let Some(pair) = first_conflict(f, &nodes, |n| tiosl_key_of(&nodes, &root_key, n))? {
        return Err(Error::NotInClass(Box::new(conflict_witness(f, &nodes, pair)?)));
    }
    let label = |(input, output): &(Vec<Padded<Symbol>>, Vec<Padded<Symbol>>)| StateLabel::Io {
        input: input.clone(),
        output: output.clone(),
    };
    let (mut b, _) = assemble(f, &nodes, label)?;
    if opts.full_state_set {
        let canon = f.canon()?;
        let inputs = canon.input_alphabet().symbols();
        let outputs = canon.output_alphabet().symbols();
        let mut missing = Vec::new();
        for a in tuples(inputs, p.i - 1)? {
            for c in tuples(outputs, p.j - 1)? {
                let pair = (a.clone(), c);
                if !b.has_state(&label(&pair)) {
                    missing.push(pair);
                }
            }
        }
        for (a, c) in missing {
            let q = b.state(label(&(a.clone(), c.clone())));
            b.set_final(q, Str::lambda());
            for sym in inputs {
                let mut next = a.clone();
                if t.keeps(sym)? {
                    next.push(Padded::Item(sym.clone()));
                }
                let r = b.state(label(&(padded_suffix(&next, p.i - 1), c.clone())));
                b.add_transition(q, sym, r, Str::lambda())?;
            }
        }
    }
    b.build()
}
