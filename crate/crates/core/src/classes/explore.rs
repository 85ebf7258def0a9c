//! Breadth-first walk of the canon machine paired with a bounded memory.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use super::witness_for;
use crate::error::Result;
use crate::sfst::StateId;
use crate::symbols::{Action, Str};
use crate::views::FunctionHandle;

pub(crate) struct Node<C> {
    pub state: StateId,
    pub carry: C,
    /// Shortlex-first input reaching this node.
    pub access: Str,
    /// Successor node for each input symbol, in alphabet order.
    pub next: Vec<usize>,
}

/// Every reachable `(canon state, carry)` pair, in breadth-first order with
/// symbols in alphabet order. `carry` is updated by `step` with each action
/// the canon machine performs.
pub(crate) fn explore<C, F>(f: &FunctionHandle, root: C, step: F) -> Result<Vec<Node<C>>>
where
    C: Clone + Eq + Hash,
    F: Fn(&C, &Action) -> Result<C>,
{
    let canon = f.canon()?;
    let symbols = canon.input_alphabet().symbols();
    let mut index: HashMap<(StateId, C), usize> = HashMap::new();
    let mut nodes = vec![Node { state: canon.start(), carry: root.clone(), access: Str::lambda(), next: Vec::new() }];
    index.insert((canon.start(), root), 0);
    let mut queue = VecDeque::from([0]);
    while let Some(n) = queue.pop_front() {
        let mut next = Vec::with_capacity(symbols.len());
        for (s, sym) in symbols.iter().enumerate() {
            let (r, y) = canon.step(nodes[n].state, s);
            let carry = step(&nodes[n].carry, &Action::new(sym.clone(), y.clone()))?;
            let id = match index.get(&(r, carry.clone())) {
                Some(&id) => id,
                None => {
                    let id = nodes.len();
                    let mut access = nodes[n].access.clone();
                    access.push(sym.clone());
                    nodes.push(Node { state: r, carry: carry.clone(), access, next: Vec::new() });
                    index.insert((r, carry), id);
                    queue.push_back(id);
                    id
                }
            };
            next.push(id);
        }
        nodes[n].next = next;
    }
    Ok(nodes)
}

/// First pair of nodes (in exploration order) with equal keys but different
/// translations.
pub(crate) fn first_conflict<C, K, G>(f: &FunctionHandle, nodes: &[Node<C>], key: G) -> Result<Option<(usize, usize)>>
where
    K: Eq + Hash,
    G: Fn(usize) -> K,
{
    let mut first: HashMap<K, usize> = HashMap::new();
    for n in 0..nodes.len() {
        let rep = *first.entry(key(n)).or_insert(n);
        if f.class_of(nodes[rep].state)? != f.class_of(nodes[n].state)? {
            return Ok(Some((rep, n)));
        }
    }
    Ok(None)
}

pub(crate) fn conflict_witness<C>(
    f: &FunctionHandle,
    nodes: &[Node<C>],
    pair: (usize, usize),
) -> Result<super::Witness> {
    witness_for(f, &nodes[pair.0].access, &nodes[pair.1].access)
}
