//! Exhaustive search over every tier at fixed parameters.

use std::fmt;

use super::{check_tiosl, check_tssl, LocalityParams, Verdict};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::symbols::{Action, Symbol, Tier};
use crate::views::FunctionHandle;

pub const MAX_SEARCH_SYMBOLS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassQuery {
    /// Tiers over `Σ ∪ Γ`.
    Tiosl(LocalityParams),
    /// Tiers over the function's actions.
    Tssl(usize),
}

impl fmt::Display for ClassQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassQuery::Tiosl(p) => write!(f, "TIOSL i={} j={}", p.i, p.j),
            ClassQuery::Tssl(k) => write!(f, "TSSL k={k}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchEntry {
    pub query: ClassQuery,
    /// Bit `n` set iff the `n`-th symbol (in sorted order) is on the tier.
    pub mask: u64,
    pub on: Vec<String>,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, Default)]
pub struct SearchReport {
    /// Ordered by query, then mask.
    pub entries: Vec<SearchEntry>,
}

impl SearchReport {
    pub fn members(&self) -> impl Iterator<Item = &SearchEntry> {
        self.entries.iter().filter(|e| e.verdict.member)
    }

    pub fn any_member(&self) -> bool {
        self.members().next().is_some()
    }

    pub fn summary(&self) -> String {
        let members: Vec<String> = self.members().map(|e| format!("{} on {{{}}}", e.query, e.on.join(", "))).collect();
        if members.is_empty() {
            "no tier".to_string()
        } else {
            format!("member under {}", members.join("; "))
        }
    }
}

enum Job {
    Tiosl(LocalityParams, Tier<Symbol>),
    Tssl(usize, Tier<Action>),
}

/// Runs every query on every tier over the relevant alphabet.
pub fn search_tiers(f: &FunctionHandle, queries: &[ClassQuery], exec: Execution) -> Result<SearchReport> {
    let symbols: Vec<Symbol> = f.input_alphabet().union(f.output_alphabet()).symbols().to_vec();
    let actions = f.actions()?;
    let mut queries = queries.to_vec();
    queries.sort();
    let mut jobs = Vec::new();
    for &q in &queries {
        let size = match q {
            ClassQuery::Tiosl(_) => symbols.len(),
            ClassQuery::Tssl(_) => actions.len(),
        };
        if size > MAX_SEARCH_SYMBOLS {
            return Err(Error::SearchTooLarge(size));
        }
        for mask in 0..1u64 << size {
            jobs.push(match q {
                ClassQuery::Tiosl(p) => Job::Tiosl(p, Tier::from_mask(symbols.iter().cloned(), mask)),
                ClassQuery::Tssl(k) => Job::Tssl(k, Tier::from_mask(actions.iter().cloned(), mask)),
            });
        }
    }
    let results = exec.map(&jobs, |job| -> Result<SearchEntry> {
        Ok(match job {
            Job::Tiosl(p, t) => SearchEntry {
                query: ClassQuery::Tiosl(*p),
                mask: t.mask(),
                on: t.on_tier().iter().map(|s| s.to_string()).collect(),
                verdict: check_tiosl(f, *p, t)?,
            },
            Job::Tssl(k, t) => SearchEntry {
                query: ClassQuery::Tssl(*k),
                mask: t.mask(),
                on: t.on_tier().iter().map(|a| a.to_string()).collect(),
                verdict: check_tssl(f, *k, t)?,
            },
        })
    });
    Ok(SearchReport { entries: results.into_iter().collect::<Result<Vec<_>>>()? })
}
