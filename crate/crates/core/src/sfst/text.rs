//! Line-oriented text format.
//!
//! ```text
//! # rhythmic syncope
//! INPUT C V
//! OUTPUT C V
//! STATE [LB] [V:] [V:V]
//! START [LB]
//! FINAL [LB] :
//! TRANS [LB] C -> [LB] : C
//! TRANS [LB] V -> [V:] :
//! ```
//!
//! An empty list after `:` is λ. Every state needs one `FINAL` row and one
//! `TRANS` row per input symbol.

use std::fmt::Write;

use super::{Sfst, SfstBuilder, StateLabel};
use crate::error::{Error, Result};
use crate::symbols::{Alphabet, Str, Symbol};

fn syntax(line: usize, message: impl Into<String>) -> Error {
    Error::Syntax { line, message: message.into() }
}

fn symbols(line: usize, tokens: &[&str]) -> Result<Str> {
    tokens.iter().map(|t| Symbol::new(t)).collect::<Result<Str>>().map_err(|e| syntax(line, e.to_string()))
}

impl Sfst {
    pub fn from_text(text: &str) -> Result<Sfst> {
        let mut input: Option<Alphabet> = None;
        let mut output: Option<Alphabet> = None;
        let mut builder: Option<SfstBuilder> = None;
        let mut declared: Vec<(usize, String)> = Vec::new();
        let mut start: Option<(usize, String)> = None;
        let mut rows: Vec<(usize, Vec<String>)> = Vec::new();

        for (n, raw) in text.lines().enumerate() {
            let line = n + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let Some((&keyword, rest)) = tokens.split_first() else { continue };
            match keyword {
                "INPUT" | "OUTPUT" => {
                    let alphabet = Alphabet::new(symbols(line, rest)?.into_symbols());
                    let slot = if keyword == "INPUT" { &mut input } else { &mut output };
                    if slot.replace(alphabet).is_some() {
                        return Err(syntax(line, format!("duplicate {keyword}")));
                    }
                }
                "STATE" => declared.extend(rest.iter().map(|s| (line, s.to_string()))),
                "START" => {
                    let [name] = rest else { return Err(syntax(line, "START takes one state")) };
                    if start.replace((line, name.to_string())).is_some() {
                        return Err(syntax(line, "duplicate START"));
                    }
                }
                "FINAL" | "TRANS" => {
                    rows.push((line, tokens.iter().map(|t| t.to_string()).collect()));
                }
                other => return Err(syntax(line, format!("unknown keyword `{other}`"))),
            }
        }

        let input = input.ok_or_else(|| syntax(0, "missing INPUT"))?;
        let output = output.ok_or_else(|| syntax(0, "missing OUTPUT"))?;
        let b = builder.insert(Sfst::builder(input, output));
        for (line, name) in &declared {
            let label = StateLabel::parse(name).map_err(|e| syntax(*line, e.to_string()))?;
            if b.has_state(&label) {
                return Err(syntax(*line, format!("duplicate state `{name}`")));
            }
            b.state(label);
        }
        let lookup = |b: &SfstBuilder, line: usize, name: &str| {
            let label = StateLabel::parse(name).map_err(|e| syntax(line, e.to_string()))?;
            if b.has_state(&label) {
                Ok(label)
            } else {
                Err(syntax(line, format!("undeclared state `{name}`")))
            }
        };
        let (line, name) = start.ok_or_else(|| syntax(0, "missing START"))?;
        let label = lookup(b, line, &name)?;
        let q = b.state(label);
        b.set_start(q);

        for (line, tokens) in rows {
            let tokens: Vec<&str> = tokens.iter().map(String::as_str).collect();
            match tokens.as_slice() {
                ["FINAL", state, ":", outs @ ..] => {
                    let q = lookup(b, line, state)?;
                    let q = b.state(q);
                    if !b.set_final(q, symbols(line, outs)?) {
                        return Err(syntax(line, format!("second FINAL row for `{state}`")));
                    }
                }
                ["TRANS", state, sym, "->", target, ":", outs @ ..] => {
                    let q = lookup(b, line, state)?;
                    let q = b.state(q);
                    let r = lookup(b, line, target)?;
                    let r = b.state(r);
                    let sym = Symbol::new(sym).map_err(|e| syntax(line, e.to_string()))?;
                    if !b.add_transition(q, &sym, r, symbols(line, outs)?)? {
                        return Err(syntax(line, format!("second TRANS row for `{state}` on `{sym}`")));
                    }
                }
                [kw, ..] => return Err(syntax(line, format!("malformed {kw} row"))),
                [] => unreachable!("blank lines are skipped"),
            }
        }
        builder.take().expect("builder was created").build()
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "INPUT {}", Str::from_symbols(self.input.symbols().to_vec()));
        let _ = writeln!(out, "OUTPUT {}", Str::from_symbols(self.output.symbols().to_vec()));
        let names: Vec<String> = self.labels.iter().map(|l| l.to_string()).collect();
        let _ = writeln!(out, "STATE {}", names.join(" "));
        let _ = writeln!(out, "START {}", self.labels[self.start.0]);
        for q in self.states() {
            let _ = writeln!(out, "{}", row(&format!("FINAL {} :", self.labels[q.0]), &self.finals[q.0]));
        }
        for q in self.states() {
            for (s, (r, y)) in self.delta[q.0].iter().enumerate() {
                let head = format!("TRANS {} {} -> {} :", self.labels[q.0], self.input.symbols()[s], self.labels[r.0]);
                let _ = writeln!(out, "{}", row(&head, y));
            }
        }
        out
    }
}

fn row(head: &str, y: &Str) -> String {
    if y.is_empty() {
        head.to_string()
    } else {
        format!("{head} {y}")
    }
}
