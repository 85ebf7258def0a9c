//! Subsequential finite-state transducers.
//!
//! A machine is total: every state has exactly one transition per input
//! symbol and a final output. Partial tables are rejected when the machine
//! is built, so every algorithm here may assume totality.

mod dot;
mod minimize;
mod onward;
mod text;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::symbols::{Action, ActionStr, Alphabet, Padded, Str, Symbol, BOUNDARY_TOKEN};

pub use onward::OnwardViolation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub usize);

impl StateId {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Name of a state. Canonical machines keep the tuple their states encode.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StateLabel {
    Opaque(String),
    /// Input and output suffix pair, written `<a,b|c>`.
    Io {
        input: Vec<Padded<Symbol>>,
        output: Vec<Padded<Symbol>>,
    },
    /// Action-history suffix, written `[a:b,LB]`.
    Actions(Vec<Padded<Action>>),
}

impl StateLabel {
    pub fn opaque(name: &str) -> Result<Self> {
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(Error::InvalidToken(name.into(), "bad state name"));
        }
        if name.starts_with('[') || name.starts_with('<') {
            return Err(Error::InvalidToken(name.into(), "reserved for tuple names"));
        }
        Ok(StateLabel::Opaque(name.into()))
    }

    /// Reads the textual form produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |why| Error::InvalidToken(text.into(), why);
        if let Some(body) = text.strip_prefix('[') {
            let body = body.strip_suffix(']').ok_or(bad("unterminated `[`"))?;
            return components(body, Action::parse).map(StateLabel::Actions);
        }
        if let Some(body) = text.strip_prefix('<') {
            let body = body.strip_suffix('>').ok_or(bad("unterminated `<`"))?;
            let (input, output) = body.split_once('|').ok_or(bad("tuple needs `|`"))?;
            return Ok(StateLabel::Io {
                input: components(input, Symbol::new)?,
                output: components(output, Symbol::new)?,
            });
        }
        StateLabel::opaque(text)
    }
}

fn components<T>(body: &str, item: impl Fn(&str) -> Result<T>) -> Result<Vec<Padded<T>>> {
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|c| if c == BOUNDARY_TOKEN { Ok(Padded::Boundary) } else { item(c).map(Padded::Item) })
        .collect()
}

fn write_components<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[Padded<T>]) -> fmt::Result {
    for (n, c) in items.iter().enumerate() {
        if n > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    Ok(())
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateLabel::Opaque(name) => f.write_str(name),
            StateLabel::Io { input, output } => {
                f.write_str("<")?;
                write_components(f, input)?;
                f.write_str("|")?;
                write_components(f, output)?;
                f.write_str(">")
            }
            StateLabel::Actions(items) => {
                f.write_str("[")?;
                write_components(f, items)?;
                f.write_str("]")
            }
        }
    }
}

impl fmt::Debug for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A total deterministic transducer with final outputs.
#[derive(Clone, PartialEq, Eq)]
pub struct Sfst {
    input: Alphabet,
    output: Alphabet,
    labels: Vec<StateLabel>,
    start: StateId,
    // delta[q][s] for s indexing the sorted input alphabet
    delta: Vec<Vec<(StateId, Str)>>,
    finals: Vec<Str>,
}

impl Sfst {
    pub fn new(
        input: Alphabet,
        output: Alphabet,
        labels: Vec<StateLabel>,
        start: StateId,
        delta: Vec<Vec<(StateId, Str)>>,
        finals: Vec<Str>,
    ) -> Result<Self> {
        let n = labels.len();
        if start.0 >= n {
            return Err(Error::InvalidParams(format!("start state {} out of range", start.0)));
        }
        if delta.len() != n || finals.len() != n {
            return Err(Error::InvalidParams("table sizes disagree with state count".into()));
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label) {
                return Err(Error::InvalidParams(format!("duplicate state `{label}`")));
            }
        }
        let check_out = |y: &Str| -> Result<()> {
            match y.symbols().iter().find(|s| !output.contains(s)) {
                Some(s) => Err(Error::UnknownSymbol(s.to_string())),
                None => Ok(()),
            }
        };
        for (q, row) in delta.iter().enumerate() {
            if row.len() != input.len() {
                let missing = input.symbols().get(row.len()).map(|s| s.to_string());
                return Err(Error::NotTotal { state: labels[q].to_string(), symbol: missing.unwrap_or_default() });
            }
            for (r, y) in row {
                if r.0 >= n {
                    return Err(Error::InvalidParams(format!("target {} out of range", r.0)));
                }
                check_out(y)?;
            }
        }
        for y in &finals {
            check_out(y)?;
        }
        Ok(Sfst { input, output, labels, start, delta, finals })
    }

    pub fn builder(input: Alphabet, output: Alphabet) -> SfstBuilder {
        SfstBuilder::new(input, output)
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        &self.input
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        &self.output
    }

    pub fn num_states(&self) -> usize {
        self.labels.len()
    }

    pub fn states(&self) -> impl Iterator<Item = StateId> {
        (0..self.labels.len()).map(StateId)
    }

    pub fn start(&self) -> StateId {
        self.start
    }

    pub fn label(&self, q: StateId) -> &StateLabel {
        &self.labels[q.0]
    }

    pub fn labels(&self) -> &[StateLabel] {
        &self.labels
    }

    pub fn state_named(&self, label: &StateLabel) -> Option<StateId> {
        self.labels.iter().position(|l| l == label).map(StateId)
    }

    /// Successor and emitted output for the `s`-th input symbol.
    pub fn step(&self, q: StateId, s: usize) -> (StateId, &Str) {
        let (r, y) = &self.delta[q.0][s];
        (*r, y)
    }

    pub fn final_output(&self, q: StateId) -> &Str {
        &self.finals[q.0]
    }

    /// Runs from `q` over `x`, returning the end state and the emitted output.
    pub fn run_from(&self, q: StateId, x: &Str) -> Result<(StateId, Str)> {
        let mut state = q;
        let mut out = Str::lambda();
        for s in self.input.indices(x)? {
            let (r, y) = self.step(state, s);
            out.extend_from(y);
            state = r;
        }
        Ok((state, out))
    }

    pub fn transduce(&self, x: &Str) -> Result<Str> {
        let (q, mut out) = self.run_from(self.start, x)?;
        out.extend_from(self.final_output(q));
        Ok(out)
    }

    /// The transition labels of the unique run on `x`.
    pub fn run_trace(&self, x: &Str) -> Result<ActionStr> {
        let mut state = self.start;
        let mut trace = ActionStr::default();
        for (s, sym) in self.input.indices(x)?.into_iter().zip(x.symbols()) {
            let (r, y) = self.step(state, s);
            trace.push(Action::new(sym.clone(), y.clone()));
            state = r;
        }
        Ok(trace)
    }

    /// Every label `x:y` that occurs on some transition.
    pub fn actions(&self) -> BTreeSet<Action> {
        let mut out = BTreeSet::new();
        for row in &self.delta {
            for (s, (_, y)) in row.iter().enumerate() {
                out.insert(Action::new(self.input.symbols()[s].clone(), y.clone()));
            }
        }
        out
    }

    /// States reachable from the start, in breadth-first order by symbol.
    pub fn reachable(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut order = vec![self.start];
        seen[self.start.0] = true;
        let mut head = 0;
        while head < order.len() {
            let q = order[head];
            head += 1;
            for (r, _) in &self.delta[q.0] {
                if !seen[r.0] {
                    seen[r.0] = true;
                    order.push(*r);
                }
            }
        }
        order
    }

    /// Same machine with every state renamed `q0`, `q1`, ... in index order.
    pub fn with_opaque_names(&self) -> Sfst {
        let mut m = self.clone();
        m.labels = (0..m.labels.len()).map(|i| StateLabel::Opaque(format!("q{i}"))).collect();
        m
    }

    /// Structural isomorphism of the reachable parts, matched from the start states.
    pub fn isomorphic(&self, other: &Sfst) -> bool {
        if self.input != other.input || self.num_states() != other.num_states() {
            return false;
        }
        let mut fwd: HashMap<StateId, StateId> = HashMap::new();
        let mut bwd: HashMap<StateId, StateId> = HashMap::new();
        let mut queue = vec![(self.start, other.start)];
        fwd.insert(self.start, other.start);
        bwd.insert(other.start, self.start);
        while let Some((p, q)) = queue.pop() {
            if self.final_output(p) != other.final_output(q) {
                return false;
            }
            for s in 0..self.input.len() {
                let (p2, y1) = self.step(p, s);
                let (q2, y2) = other.step(q, s);
                if y1 != y2 {
                    return false;
                }
                match (fwd.get(&p2), bwd.get(&q2)) {
                    (None, None) => {
                        fwd.insert(p2, q2);
                        bwd.insert(q2, p2);
                        queue.push((p2, q2));
                    }
                    (Some(&a), Some(&b)) if a == q2 && b == p2 => {}
                    _ => return false,
                }
            }
        }
        true
    }
}

impl fmt::Debug for Sfst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

/// Assembles a machine from named states, checking totality at the end.
#[derive(Debug, Clone)]
pub struct SfstBuilder {
    input: Alphabet,
    output: Alphabet,
    labels: Vec<StateLabel>,
    index: HashMap<StateLabel, StateId>,
    start: Option<StateId>,
    delta: HashMap<(StateId, usize), (StateId, Str)>,
    finals: HashMap<StateId, Str>,
}

impl SfstBuilder {
    pub fn new(input: Alphabet, output: Alphabet) -> Self {
        SfstBuilder {
            input,
            output,
            labels: Vec::new(),
            index: HashMap::new(),
            start: None,
            delta: HashMap::new(),
            finals: HashMap::new(),
        }
    }

    /// Returns the state with this label, creating it if needed.
    pub fn state(&mut self, label: StateLabel) -> StateId {
        if let Some(&q) = self.index.get(&label) {
            return q;
        }
        let q = StateId(self.labels.len());
        self.labels.push(label.clone());
        self.index.insert(label, q);
        q
    }

    pub fn has_state(&self, label: &StateLabel) -> bool {
        self.index.contains_key(label)
    }

    pub fn set_start(&mut self, q: StateId) {
        self.start = Some(q);
    }

    /// Sets the final output; returns false if one was already set.
    pub fn set_final(&mut self, q: StateId, out: Str) -> bool {
        self.finals.insert(q, out).is_none()
    }

    /// Adds a transition; returns false if `(q, symbol)` already had one.
    pub fn add_transition(&mut self, q: StateId, symbol: &Symbol, r: StateId, out: Str) -> Result<bool> {
        let s = self.input.index_of(symbol).ok_or_else(|| Error::UnknownSymbol(symbol.to_string()))?;
        Ok(self.delta.insert((q, s), (r, out)).is_none())
    }

    pub fn build(mut self) -> Result<Sfst> {
        let start = self.start.ok_or_else(|| Error::InvalidParams("machine has no start state".into()))?;
        let mut delta = Vec::with_capacity(self.labels.len());
        let mut finals = Vec::with_capacity(self.labels.len());
        for q in 0..self.labels.len() {
            let q = StateId(q);
            let mut row = Vec::with_capacity(self.input.len());
            for (s, sym) in self.input.symbols().iter().enumerate() {
                let entry = self
                    .delta
                    .remove(&(q, s))
                    .ok_or_else(|| Error::NotTotal { state: self.labels[q.0].to_string(), symbol: sym.to_string() })?;
                row.push(entry);
            }
            delta.push(row);
            finals.push(self.finals.remove(&q).ok_or_else(|| Error::NotTotal {
                state: self.labels[q.0].to_string(),
                symbol: "final output".into(),
            })?);
        }
        Sfst::new(self.input, self.output, self.labels, start, delta, finals)
    }
}
