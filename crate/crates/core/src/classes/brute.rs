//! Enumeration oracle: tests the class definitions directly on every input
//! of length at most `L`, comparing translations on continuations of length
//! at most `L`. A negative verdict is always genuine; a positive one only
//! says that no violation shows up within the bound.

use std::collections::HashMap;
use std::hash::Hash;

use super::{check_k, tiosl_key, tssl_key, LocalityParams, Verdict, Witness};
use crate::error::Result;
use crate::par::Execution;
use crate::symbols::{all_strings, lcp, Action, Str, Symbol, Tier};
use crate::views::FunctionHandle;

/// Outputs of a function on all bounded inputs, with bounded tops,
/// translations and runs derived from them alone.
pub struct BruteTable {
    words: Vec<Str>,
    continuations: Vec<Str>,
    tops: Vec<Str>,
    /// `translations[w][y]` is `f(wy)` with `tops[w]` removed.
    translations: Vec<Vec<Str>>,
    runs: Vec<Vec<Action>>,
}

impl BruteTable {
    pub fn build(f: &FunctionHandle, len: usize, exec: Execution) -> Result<BruteTable> {
        let symbols = f.input_alphabet().symbols();
        let words = all_strings(symbols, len);
        let continuations = all_strings(symbols, len);
        let rows = exec.map(&words, |w| -> Result<(Str, Vec<Str>)> {
            let outs = continuations.iter().map(|y| f.apply(&w.concat(y))).collect::<Result<Vec<_>>>()?;
            let top = lcp(&outs)?;
            let translations = outs.iter().map(|o| o.strip_prefix(&top).expect("lcp is a prefix")).collect();
            Ok((top, translations))
        });
        let (tops, translations): (Vec<Str>, Vec<Vec<Str>>) =
            rows.into_iter().collect::<Result<Vec<_>>>()?.into_iter().unzip();
        let index: HashMap<&Str, usize> = words.iter().enumerate().map(|(n, w)| (w, n)).collect();
        let runs = words
            .iter()
            .map(|w| {
                let syms = w.symbols();
                (1..=syms.len())
                    .map(|n| {
                        let now = &tops[index[&Str::from_symbols(syms[..n].to_vec())]];
                        let out = if n == 1 {
                            now.clone()
                        } else {
                            let before = &tops[index[&Str::from_symbols(syms[..n - 1].to_vec())]];
                            // Falls back to the part after the common prefix if the
                            // bounded tops are not prefix-ordered.
                            now.strip_prefix(before).unwrap_or_else(|| {
                                let common = lcp([now, before]).expect("two strings");
                                now.strip_prefix(&common).expect("lcp is a prefix")
                            })
                        };
                        Action::new(syms[n - 1].clone(), out)
                    })
                    .collect()
            })
            .collect();
        Ok(BruteTable { words, continuations, tops, translations, runs })
    }

    pub fn words(&self) -> &[Str] {
        &self.words
    }

    pub fn top(&self, n: usize) -> &Str {
        &self.tops[n]
    }

    pub fn run(&self, n: usize) -> &[Action] {
        &self.runs[n]
    }

    fn first_violation<K: Eq + Hash>(&self, keys: Vec<K>) -> Verdict {
        let mut first: HashMap<K, usize> = HashMap::new();
        for (n, key) in keys.into_iter().enumerate() {
            let rep = *first.entry(key).or_insert(n);
            let (a, b) = (&self.translations[rep], &self.translations[n]);
            if let Some(y) = (0..a.len()).find(|&y| a[y] != b[y]) {
                return Verdict::violated(Witness {
                    w: self.words[rep].clone(),
                    x: self.words[n].clone(),
                    continuation: self.continuations[y].clone(),
                    w_translation: a[y].clone(),
                    x_translation: b[y].clone(),
                });
            }
        }
        Verdict::member()
    }

    pub fn check_tiosl(&self, p: LocalityParams, t: &Tier<Symbol>) -> Result<Verdict> {
        let p = LocalityParams::new(p.i, p.j)?;
        let keys = (0..self.words.len())
            .map(|n| tiosl_key(p, t, &self.words[n], &self.tops[n]))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.first_violation(keys))
    }

    /// Actions outside the tier's alphabet count as off the tier.
    pub fn check_tssl(&self, k: usize, t: &Tier<Action>) -> Result<Verdict> {
        check_k(k)?;
        Ok(self.first_violation(self.runs.iter().map(|r| tssl_key(k, t, r)).collect()))
    }
}

pub fn brute_check_tiosl(f: &FunctionHandle, p: LocalityParams, t: &Tier<Symbol>, len: usize) -> Result<Verdict> {
    BruteTable::build(f, len, Execution::default())?.check_tiosl(p, t)
}

pub fn brute_check_tssl(f: &FunctionHandle, k: usize, t: &Tier<Action>, len: usize) -> Result<Verdict> {
    BruteTable::build(f, len, Execution::default())?.check_tssl(k, t)
}
