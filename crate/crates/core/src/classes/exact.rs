use super::explore::{conflict_witness, explore, first_conflict, Node};
use super::{check_k, LocalityParams, Verdict};
use crate::error::Result;
use crate::symbols::{padded_suffix, suffix_of, Action, Padded, Symbol, Tier};
use crate::views::FunctionHandle;

pub(crate) type IoCarry = (Vec<Padded<Symbol>>, Vec<Padded<Symbol>>);

/// Product of the canon machine with the tiered input and emitted-output
/// suffixes. The root's carry is the empty history; its key uses `f^←(λ)`.
pub(crate) fn tiosl_nodes(
    f: &FunctionHandle,
    p: LocalityParams,
    t: &Tier<Symbol>,
) -> Result<(Vec<Node<IoCarry>>, IoCarry)> {
    let canon = f.canon()?;
    t.covers(canon.input_alphabet().symbols().iter().chain(canon.output_alphabet().symbols()))?;
    let root = (vec![Padded::Boundary; p.i - 1], vec![Padded::Boundary; p.j - 1]);
    let nodes = explore(f, root, |(input, output): &IoCarry, a: &Action| {
        let mut input = input.clone();
        if t.keeps(&a.input)? {
            input.push(Padded::Item(a.input.clone()));
        }
        let mut output = output.clone();
        output.extend(t.apply(a.output.symbols())?.into_iter().map(Padded::Item));
        Ok((padded_suffix(&input, p.i - 1), padded_suffix(&output, p.j - 1)))
    })?;
    let root_key = (nodes[0].carry.0.clone(), suffix_of(&t.apply(f.initial_output()?.symbols())?, p.j - 1));
    Ok((nodes, root_key))
}

pub(crate) fn tiosl_key_of(nodes: &[Node<IoCarry>], root_key: &IoCarry, n: usize) -> IoCarry {
    if n == 0 {
        root_key.clone()
    } else {
        nodes[n].carry.clone()
    }
}

pub(crate) type ActionCarry = Vec<Padded<Action>>;

pub(crate) fn tssl_nodes(f: &FunctionHandle, k: usize, t: &Tier<Action>) -> Result<Vec<Node<ActionCarry>>> {
    check_k(k)?;
    t.covers(&f.actions()?)?;
    explore(f, vec![Padded::Boundary; k - 1], |carry: &ActionCarry, a: &Action| {
        let mut carry = carry.clone();
        if t.keeps(a)? {
            carry.push(Padded::Item(a.clone()));
        }
        Ok(padded_suffix(&carry, k - 1))
    })
}

/// Exact `i,j`-TIOSL decision on a tier over `Σ ∪ Γ`.
pub fn check_tiosl(f: &FunctionHandle, p: LocalityParams, t: &Tier<Symbol>) -> Result<Verdict> {
    let p = LocalityParams::new(p.i, p.j)?;
    let (nodes, root_key) = tiosl_nodes(f, p, t)?;
    match first_conflict(f, &nodes, |n| tiosl_key_of(&nodes, &root_key, n))? {
        Some(pair) => Ok(Verdict::violated(conflict_witness(f, &nodes, pair)?)),
        None => Ok(Verdict::member()),
    }
}

/// Exact `k`-TSSL decision on a tier over the function's actions.
pub fn check_tssl(f: &FunctionHandle, k: usize, t: &Tier<Action>) -> Result<Verdict> {
    let nodes = tssl_nodes(f, k, t)?;
    match first_conflict(f, &nodes, |n| nodes[n].carry.clone())? {
        Some(pair) => Ok(Verdict::violated(conflict_witness(f, &nodes, pair)?)),
        None => Ok(Verdict::member()),
    }
}
