//! Factoring any subsequential function as a 2-TOSL function followed by a
//! homomorphism: `g` tags each output chunk with the state it leads to, and
//! `h` erases the tags.

use std::collections::BTreeMap;
use std::fmt::{self, Write};

use crate::error::{Error, Result};
use crate::sfst::Sfst;
use crate::symbols::{Alphabet, Str, Symbol};

/// A map from each source symbol to a string.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Homomorphism {
    images: BTreeMap<Symbol, Str>,
}

impl Homomorphism {
    pub fn new() -> Self {
        Homomorphism::default()
    }

    pub fn insert(&mut self, symbol: Symbol, image: Str) -> Option<Str> {
        self.images.insert(symbol, image)
    }

    pub fn image(&self, symbol: &Symbol) -> Option<&Str> {
        self.images.get(symbol)
    }

    pub fn source_alphabet(&self) -> Alphabet {
        Alphabet::new(self.images.keys().cloned())
    }

    /// Reads `MAP sym : out...` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut h = Homomorphism::new();
        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let tokens: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
            let syntax = |message: String| Error::Syntax { line, message };
            match tokens.as_slice() {
                [] => {}
                ["MAP", sym, ":", outs @ ..] => {
                    let sym = Symbol::new(sym).map_err(|e| syntax(e.to_string()))?;
                    let image = outs
                        .iter()
                        .map(|t| Symbol::new(t))
                        .collect::<Result<Str>>()
                        .map_err(|e| syntax(e.to_string()))?;
                    if h.insert(sym.clone(), image).is_some() {
                        return Err(syntax(format!("second MAP row for `{sym}`")));
                    }
                }
                _ => return Err(syntax("expected `MAP sym : out...`".into())),
            }
        }
        Ok(h)
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (sym, image) in &self.images {
            if image.is_empty() {
                let _ = writeln!(out, "MAP {sym} :");
            } else {
                let _ = writeln!(out, "MAP {sym} : {image}");
            }
        }
        out
    }
}

pub fn hom_apply(h: &Homomorphism, x: &Str) -> Result<Str> {
    let mut out = Str::lambda();
    for s in x.symbols() {
        out.extend_from(h.image(s).ok_or_else(|| Error::UnknownSymbol(s.to_string()))?);
    }
    Ok(out)
}

pub const SIGMA_TAG: &str = "SIGMA";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairTag {
    State(String),
    /// Marks the final-output chunk.
    Sigma,
}

/// An output chunk tagged with a state of the minimal machine, written
/// `tag|p1.p2`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairSymbol {
    pub tag: PairTag,
    pub payload: Str,
}

impl PairSymbol {
    pub fn to_symbol(&self) -> Symbol {
        Symbol::new(&self.to_string()).expect("pair tokens have no whitespace")
    }

    pub fn parse(token: &str) -> Result<Self> {
        let (tag, payload) = token.split_once('|').ok_or(Error::InvalidToken(token.into(), "pair symbol needs `|`"))?;
        let tag = match tag {
            "" => return Err(Error::InvalidToken(token.into(), "empty tag")),
            SIGMA_TAG => PairTag::Sigma,
            name => PairTag::State(name.into()),
        };
        let payload = if payload.is_empty() {
            Str::lambda()
        } else {
            payload.split('.').map(Symbol::new).collect::<Result<Str>>()?
        };
        Ok(PairSymbol { tag, payload })
    }
}

impl fmt::Display for PairSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tag {
            PairTag::State(name) => f.write_str(name)?,
            PairTag::Sigma => f.write_str(SIGMA_TAG)?,
        }
        write!(f, "|{}", self.payload.join("."))
    }
}

/// Returns `(g, h)` with `h ∘ g` equal to the function of `t`. `g` runs the
/// minimal machine for `t`, emitting one tagged chunk per step and a
/// `SIGMA`-tagged chunk for the final output.
pub fn decompose(t: &Sfst) -> (Sfst, Homomorphism) {
    let m = t.minimize();
    let mut h = Homomorphism::new();
    let mut emit = |tag: PairTag, payload: &Str| -> Str {
        let p = PairSymbol { tag, payload: payload.clone() };
        let s = p.to_symbol();
        h.insert(s.clone(), p.payload);
        Str::from_symbols(vec![s])
    };
    let mut rows = Vec::new();
    for q in m.states() {
        let last = emit(PairTag::Sigma, m.final_output(q));
        let steps: Vec<_> = (0..m.input_alphabet().len())
            .map(|s| {
                let (r, y) = m.step(q, s);
                (r, emit(PairTag::State(m.label(r).to_string()), y))
            })
            .collect();
        rows.push((last, steps));
    }
    let mut b = Sfst::builder(m.input_alphabet().clone(), h.source_alphabet());
    for q in m.states() {
        b.state(m.label(q).clone());
    }
    for (q, (last, steps)) in m.states().zip(rows) {
        b.set_final(q, last);
        for ((r, out), sym) in steps.into_iter().zip(m.input_alphabet().symbols()) {
            b.add_transition(q, sym, r, out).expect("input symbol of the minimal machine");
        }
    }
    b.set_start(m.start());
    let g = b.build().expect("g copies a total table");
    (g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{reduction_direct, rs_direct, Builtin};
    use crate::classes::{check_tiosl, LocalityParams};
    use crate::symbols::{all_strings, Tier};
    use crate::views::FunctionHandle;

    fn s(text: &str) -> Str {
        Str::parse(text).unwrap()
    }

    fn composite_matches(t: &Sfst, len: usize) {
        let (g, h) = decompose(t);
        for x in all_strings(t.input_alphabet().symbols(), len) {
            assert_eq!(hom_apply(&h, &g.transduce(&x).unwrap()).unwrap(), t.transduce(&x).unwrap());
        }
        let gf = FunctionHandle::from_machine(g.clone());
        let full = Tier::full(g.input_alphabet().union(g.output_alphabet()).symbols().to_vec());
        assert!(check_tiosl(&gf, LocalityParams::tosl(2).unwrap(), &full).unwrap().member);
    }

    #[test]
    fn builtins_factor() {
        for b in Builtin::ALL {
            composite_matches(&b.machine(), 8);
        }
    }

    #[test]
    fn identity_factors_through_tagged_copies() {
        let id = Sfst::from_text("INPUT a\nOUTPUT a\nSTATE q\nSTART q\nFINAL q :\nTRANS q a -> q : a\n").unwrap();
        let (g, h) = decompose(&id);
        assert_eq!(g.transduce(&s("a a")).unwrap(), s("q0|a q0|a SIGMA|"));
        assert_eq!(hom_apply(&h, &s("q0|a q0|a SIGMA|")).unwrap(), s("a a"));
        composite_matches(&id, 8);
    }

    #[test]
    fn syncope_tags_minimal_states() {
        let (g, _) = decompose(&Builtin::Syncope.machine());
        assert_eq!(g.num_states(), 2);
        assert_eq!(g.transduce(&s("V V")).unwrap(), s("q1| q0|V SIGMA|"));
    }

    #[test]
    fn hom_apply_examples() {
        let mut erase = Homomorphism::new();
        erase.insert(Symbol::new("q1|V").unwrap(), s("V"));
        erase.insert(Symbol::new("SIGMA|").unwrap(), Str::lambda());
        assert_eq!(hom_apply(&erase, &s("q1|V SIGMA|")).unwrap(), s("V"));
        assert_eq!(hom_apply(&erase, &Str::lambda()).unwrap(), Str::lambda());
        assert!(matches!(hom_apply(&erase, &s("q2|V")), Err(Error::UnknownSymbol(_))));
    }

    #[test]
    fn pseudo_deletion() {
        let h = Homomorphism::parse("MAP @ :\nMAP C : C\nMAP V : V\n").unwrap();
        assert_eq!(hom_apply(&h, &s("C @ C V C")).unwrap(), s("C C V C"));
        for x in all_strings(&[Symbol::new("C").unwrap(), Symbol::new("V").unwrap()], 10) {
            assert_eq!(hom_apply(&h, &reduction_direct(&x).unwrap()).unwrap(), rs_direct(&x).unwrap());
        }
    }

    #[test]
    fn formats_round_trip() {
        let (_, h) = decompose(&Builtin::TioslNotTssl.machine());
        assert_eq!(Homomorphism::parse(&h.serialize()).unwrap(), h);
        for token in ["q3|a.b", "SIGMA|", "q0|"] {
            assert_eq!(PairSymbol::parse(token).unwrap().to_string(), token);
        }
        assert_eq!(PairSymbol::parse("SIGMA|b").unwrap().tag, PairTag::Sigma);
        assert!(PairSymbol::parse("q0").is_err());
        assert!(matches!(Homomorphism::parse("MAP a : b\nMAP a : c\n"), Err(Error::Syntax { line: 2, .. })));
    }
}
