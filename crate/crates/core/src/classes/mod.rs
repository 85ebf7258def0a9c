//! Membership in the tier-based strictly local classes.
//!
//! A function is `i,j`-TIOSL on a tier `τ` over `Σ ∪ Γ` when the padded
//! `(i−1)`-suffix of `τ(w)` and `(j−1)`-suffix of `τ(f^←(w))` together fix the
//! translation `f_w^→`; TISL and TOSL are the `(i,1)` and `(1,j)` cases. A
//! function is `k`-TSSL on a tier over its actions when the `(k−1)`-suffix of
//! the tiered run `τ(f^⇐(w))` fixes the translation.
//!
//! The exact deciders walk the product of the canon machine with these
//! suffixes; the brute-force ones enumerate bounded inputs and serve as an
//! independent oracle.

mod brute;
mod canonical;
mod exact;
mod explore;
mod lift;
mod search;
mod shape;

use std::fmt;

use crate::error::{Error, Result};
use crate::symbols::{suffix_of, Action, Padded, Str, Symbol, Tier};
use crate::views::FunctionHandle;

pub use brute::{brute_check_tiosl, brute_check_tssl, BruteTable};
pub use canonical::{build_canonical_tiosl, build_canonical_tssl, BuildOptions};
pub use exact::{check_tiosl, check_tssl};
pub use lift::{lift_tier_input, lift_tier_output};
pub use search::{search_tiers, ClassQuery, SearchEntry, SearchReport, MAX_SEARCH_SYMBOLS};
pub use shape::{shape_check_tiosl, shape_check_tiosl_strict, shape_check_tssl, shape_check_tssl_strict};

/// Window sizes `i` (input) and `j` (output), both at least 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LocalityParams {
    pub i: usize,
    pub j: usize,
}

impl LocalityParams {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::InvalidParams(format!("i and j must be at least 1, got ({i}, {j})")));
        }
        Ok(LocalityParams { i, j })
    }

    /// `k`-TISL, i.e. `(k, 1)`.
    pub fn tisl(k: usize) -> Result<Self> {
        LocalityParams::new(k, 1)
    }

    /// `k`-TOSL, i.e. `(1, k)`.
    pub fn tosl(k: usize) -> Result<Self> {
        LocalityParams::new(1, k)
    }
}

impl fmt::Display for LocalityParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.i, self.j)
    }
}

pub(crate) fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    Ok(())
}

/// Two inputs whose tiered suffixes agree but whose translations differ on
/// `continuation`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub w: Str,
    pub x: Str,
    pub continuation: Str,
    pub w_translation: Str,
    pub x_translation: Str,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "w=\"{}\" x=\"{}\" y=\"{}\": \"{}\" vs \"{}\"",
            self.w, self.x, self.continuation, self.w_translation, self.x_translation
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub member: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn member() -> Self {
        Verdict { member: true, witness: None }
    }

    pub fn violated(witness: Witness) -> Self {
        Verdict { member: false, witness: Some(witness) }
    }

    /// `VERDICT member=<bool> witness_w="..." witness_x="..."`.
    pub fn report_line(&self) -> String {
        match &self.witness {
            Some(w) => format!("VERDICT member={} witness_w=\"{}\" witness_x=\"{}\"", self.member, w.w, w.x),
            None => format!("VERDICT member={}", self.member),
        }
    }
}

/// Input/output suffix pair used as a TIOSL key.
pub(crate) type IoKey = (Vec<Padded<Symbol>>, Vec<Padded<Symbol>>);

pub(crate) fn tiosl_key(p: LocalityParams, t: &Tier<Symbol>, w: &Str, top: &Str) -> Result<IoKey> {
    Ok((suffix_of(&t.apply(w.symbols())?, p.i - 1), suffix_of(&t.apply(top.symbols())?, p.j - 1)))
}

pub(crate) fn tssl_key(k: usize, t: &Tier<Action>, run: &[Action]) -> Vec<Padded<Action>> {
    let kept: Vec<Action> = run.iter().filter(|a| t.is_on(a) == Some(true)).cloned().collect();
    suffix_of(&kept, k - 1)
}

/// Whether `witness` is a genuine TIOSL violation for `f`: equal suffix pairs
/// and the recorded, differing translations.
pub fn replay_tiosl(f: &FunctionHandle, p: LocalityParams, t: &Tier<Symbol>, witness: &Witness) -> Result<bool> {
    let kw = tiosl_key(p, t, &witness.w, &f.f_top(&witness.w)?)?;
    let kx = tiosl_key(p, t, &witness.x, &f.f_top(&witness.x)?)?;
    replay_translations(f, witness).map(|ok| ok && kw == kx)
}

/// Whether `witness` is a genuine TSSL violation for `f`.
pub fn replay_tssl(f: &FunctionHandle, k: usize, t: &Tier<Action>, witness: &Witness) -> Result<bool> {
    check_k(k)?;
    let kw = tssl_key(k, t, f.run_of(&witness.w)?.actions());
    let kx = tssl_key(k, t, f.run_of(&witness.x)?.actions());
    replay_translations(f, witness).map(|ok| ok && kw == kx)
}

fn replay_translations(f: &FunctionHandle, witness: &Witness) -> Result<bool> {
    let tw = f.translation_apply(&witness.w, &witness.continuation)?;
    let tx = f.translation_apply(&witness.x, &witness.continuation)?;
    Ok(tw != tx && tw == witness.w_translation && tx == witness.x_translation)
}

/// Builds a witness for two inputs known to have different translations.
pub(crate) fn witness_for(f: &FunctionHandle, w: &Str, x: &Str) -> Result<Witness> {
    let y = f.distinguish(w, x)?.expect("inputs have different translations");
    Ok(Witness {
        w_translation: f.translation_apply(w, &y)?,
        x_translation: f.translation_apply(x, &y)?,
        w: w.clone(),
        x: x.clone(),
        continuation: y,
    })
}
