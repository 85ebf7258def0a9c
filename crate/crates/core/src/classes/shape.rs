//! Syntactic checks that a machine has the canonical tuple shape. Nothing
//! about the computed function is examined.

use super::{check_k, LocalityParams};
use crate::error::{Error, Result};
use crate::sfst::{Sfst, StateLabel};
use crate::symbols::{padded_suffix, Action, Padded, Symbol, Tier};

fn component_ok<T: Ord>(c: &Padded<T>, allowed: impl Fn(&T) -> bool) -> bool {
    match c {
        Padded::Boundary => true,
        Padded::Item(t) => allowed(t),
    }
}

fn action_tuple(label: &StateLabel) -> Result<&[Padded<Action>]> {
    match label {
        StateLabel::Actions(items) => Ok(items),
        other => Err(Error::ShapeUnverifiable(other.to_string())),
    }
}

type IoTuple<'a> = (&'a [Padded<Symbol>], &'a [Padded<Symbol>]);

fn io_tuple(label: &StateLabel) -> Result<IoTuple<'_>> {
    match label {
        StateLabel::Io { input, output } => Ok((input, output)),
        other => Err(Error::ShapeUnverifiable(other.to_string())),
    }
}

/// States are `(k−1)`-tuples over `LB` and the machine's own actions, the
/// start is `LB^{k−1}`, and every transition `q --x:y--> r` has
/// `r = suff^{k−1}(τ(q · x:y))`. Only the states present are checked.
pub fn shape_check_tssl(m: &Sfst, k: usize, t: &Tier<Action>) -> Result<bool> {
    check_k(k)?;
    let actions = m.actions();
    t.covers(&actions)?;
    let tuples = m.labels().iter().map(action_tuple).collect::<Result<Vec<_>>>()?;
    if tuples.iter().any(|q| q.len() != k - 1 || !q.iter().all(|c| component_ok(c, |a| actions.contains(a)))) {
        return Ok(false);
    }
    if tuples[m.start().index()].iter().any(|c| *c != Padded::Boundary) {
        return Ok(false);
    }
    let symbols = m.input_alphabet().symbols();
    for q in m.states() {
        for (s, sym) in symbols.iter().enumerate() {
            let (r, y) = m.step(q, s);
            let a = Action::new(sym.clone(), y.clone());
            let mut expected = tuples[q.index()].to_vec();
            if t.keeps(&a)? {
                expected.push(Padded::Item(a));
            }
            if padded_suffix(&expected, k - 1) != tuples[r.index()] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// As [`shape_check_tssl`], and the state set is the whole product
/// `({LB} ∪ A_T)^{k−1}`.
pub fn shape_check_tssl_strict(m: &Sfst, k: usize, t: &Tier<Action>) -> Result<bool> {
    let full = (m.actions().len() + 1).checked_pow(k as u32 - 1);
    Ok(shape_check_tssl(m, k, t)? && full == Some(m.num_states()))
}

/// States are pairs of an `(i−1)`-tuple over `LB ∪ Σ` and a `(j−1)`-tuple
/// over `LB ∪ Γ`, the start is all `LB`, and every transition
/// `<a,b> --x:y--> <c,d>` has `c = suff^{i−1}(τ(ax))` and
/// `d = suff^{j−1}(τ(by))`.
pub fn shape_check_tiosl(m: &Sfst, p: LocalityParams, t: &Tier<Symbol>) -> Result<bool> {
    let p = LocalityParams::new(p.i, p.j)?;
    let (sigma, gamma) = (m.input_alphabet(), m.output_alphabet());
    t.covers(sigma.symbols().iter().chain(gamma.symbols()))?;
    let tuples = m.labels().iter().map(io_tuple).collect::<Result<Vec<_>>>()?;
    let well_formed = tuples.iter().all(|(a, b)| {
        a.len() == p.i - 1
            && b.len() == p.j - 1
            && a.iter().all(|c| component_ok(c, |s| sigma.contains(s)))
            && b.iter().all(|c| component_ok(c, |s| gamma.contains(s)))
    });
    if !well_formed {
        return Ok(false);
    }
    let (a0, b0) = tuples[m.start().index()];
    if a0.iter().chain(b0).any(|c| *c != Padded::Boundary) {
        return Ok(false);
    }
    for q in m.states() {
        for (s, sym) in sigma.symbols().iter().enumerate() {
            let (r, y) = m.step(q, s);
            let (a, b) = tuples[q.index()];
            let mut c = a.to_vec();
            if t.keeps(sym)? {
                c.push(Padded::Item(sym.clone()));
            }
            let mut d = b.to_vec();
            d.extend(t.apply(y.symbols())?.into_iter().map(Padded::Item));
            if (padded_suffix(&c, p.i - 1).as_slice(), padded_suffix(&d, p.j - 1).as_slice()) != tuples[r.index()] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// As [`shape_check_tiosl`], and the state set is the whole product.
pub fn shape_check_tiosl_strict(m: &Sfst, p: LocalityParams, t: &Tier<Symbol>) -> Result<bool> {
    let ins = (m.input_alphabet().len() + 1).checked_pow(p.i as u32 - 1);
    let outs = (m.output_alphabet().len() + 1).checked_pow(p.j as u32 - 1);
    let full = ins.zip(outs).and_then(|(a, b)| a.checked_mul(b));
    Ok(shape_check_tiosl(m, p, t)? && full == Some(m.num_states()))
}
