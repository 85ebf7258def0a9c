//! Function-level views of a subsequential function: its top `f^←`, its
//! translations `f_x^→`, its runs `f^⇐` and its action alphabet.
//!
//! A [`FunctionHandle`] built from a machine keeps the onward minimal form of
//! that machine, so every view here is exact. Handles built from a bare
//! formula can only be applied; the exact views report
//! [`Error::ExactUnsupported`].

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::sfst::{Sfst, StateId};
use crate::symbols::{all_strings, lcp, Action, ActionStr, Alphabet, Str};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Capability {
    Exact,
    FormulaOnly,
}

type Formula = Arc<dyn Fn(&Str) -> Result<Str> + Send + Sync>;

#[derive(Clone)]
struct Machine {
    source: Sfst,
    canon: Sfst,
    /// `f^←(λ)`.
    initial: Str,
    /// `canon` with `initial` removed from the start state's outputs, so that
    /// the behaviour of every state is a translation of the function.
    translations: Sfst,
    /// Behaviour class of each canon state.
    class_of: Vec<usize>,
}

#[derive(Clone)]
enum Repr {
    Machine(Box<Machine>),
    Formula { input: Alphabet, output: Alphabet, f: Formula },
}

/// A subsequential function with its exact views.
#[derive(Clone)]
pub struct FunctionHandle {
    repr: Repr,
}

impl FunctionHandle {
    pub fn from_machine(source: Sfst) -> FunctionHandle {
        let canon = source.minimize();
        let start = canon.start();
        let initial = canon.residual_prefixes()[start.index()].clone();
        let strip = |y: &Str| y.strip_prefix(&initial).expect("start outputs share the residual prefix");
        let translations = if initial.is_empty() {
            canon.clone()
        } else {
            let delta = canon
                .states()
                .map(|q| {
                    (0..canon.input_alphabet().len())
                        .map(|s| {
                            let (r, y) = canon.step(q, s);
                            (r, if q == start { strip(y) } else { y.clone() })
                        })
                        .collect()
                })
                .collect();
            let finals = canon
                .states()
                .map(|q| if q == start { strip(canon.final_output(q)) } else { canon.final_output(q).clone() })
                .collect();
            Sfst::new(
                canon.input_alphabet().clone(),
                canon.output_alphabet().clone(),
                canon.labels().to_vec(),
                start,
                delta,
                finals,
            )
            .expect("stripping keeps the table total")
        };
        let class_of = translations.refine();
        let handle = FunctionHandle {
            repr: Repr::Machine(Box::new(Machine { source, canon, initial, translations, class_of })),
        };
        debug_assert!(handle.verify(4));
        handle
    }

    /// A black-box function. Only [`apply`](Self::apply) and the bounded
    /// oracles work on such a handle.
    pub fn from_formula<F>(input: Alphabet, output: Alphabet, f: F) -> FunctionHandle
    where
        F: Fn(&Str) -> Result<Str> + Send + Sync + 'static,
    {
        FunctionHandle { repr: Repr::Formula { input, output, f: Arc::new(f) } }
    }

    pub fn capability(&self) -> Capability {
        match self.repr {
            Repr::Machine(_) => Capability::Exact,
            Repr::Formula { .. } => Capability::FormulaOnly,
        }
    }

    fn machine(&self) -> Result<&Machine> {
        match &self.repr {
            Repr::Machine(m) => Ok(m),
            Repr::Formula { .. } => Err(Error::ExactUnsupported),
        }
    }

    pub fn input_alphabet(&self) -> &Alphabet {
        match &self.repr {
            Repr::Machine(m) => m.canon.input_alphabet(),
            Repr::Formula { input, .. } => input,
        }
    }

    pub fn output_alphabet(&self) -> &Alphabet {
        match &self.repr {
            Repr::Machine(m) => m.canon.output_alphabet(),
            Repr::Formula { output, .. } => output,
        }
    }

    pub fn source(&self) -> Option<&Sfst> {
        self.machine().ok().map(|m| &m.source)
    }

    /// The onward, minimal, trimmed machine for the function.
    pub fn canon(&self) -> Result<&Sfst> {
        self.machine().map(|m| &m.canon)
    }

    /// `f(x)`, computed from the machine as supplied.
    pub fn apply(&self, x: &Str) -> Result<Str> {
        match &self.repr {
            Repr::Machine(m) => m.source.transduce(x),
            Repr::Formula { input, f, .. } => {
                input.indices(x)?;
                f(x)
            }
        }
    }

    /// `f^←(λ)`, the output every input is guaranteed to start with.
    pub fn initial_output(&self) -> Result<&Str> {
        self.machine().map(|m| &m.initial)
    }

    /// The canon state reached on `x`.
    pub fn state_after(&self, x: &Str) -> Result<StateId> {
        let m = self.machine()?;
        Ok(m.canon.run_from(m.canon.start(), x)?.0)
    }

    /// Behaviour class of a canon state: two inputs have the same
    /// translation iff the states they reach share a class.
    pub fn class_of(&self, q: StateId) -> Result<usize> {
        Ok(self.machine()?.class_of[q.index()])
    }

    pub fn translation_class(&self, x: &Str) -> Result<usize> {
        self.class_of(self.state_after(x)?)
    }

    /// `f^←(x)`.
    pub fn f_top(&self, x: &Str) -> Result<Str> {
        let m = self.machine()?;
        let (_, emitted) = m.canon.run_from(m.canon.start(), x)?;
        Ok(if x.is_empty() { m.initial.clone() } else { emitted })
    }

    /// `f_x^→(y)`, so that `f(xy) = f^←(x) · f_x^→(y)`.
    pub fn translation_apply(&self, x: &Str, y: &Str) -> Result<Str> {
        let m = self.machine()?;
        let q = m.canon.run_from(m.canon.start(), x)?.0;
        let (r, mut out) = m.translations.run_from(q, y)?;
        out.extend_from(m.translations.final_output(r));
        Ok(out)
    }

    /// `f^⇐(x)`; the run on λ is empty.
    pub fn run_of(&self, x: &Str) -> Result<ActionStr> {
        self.machine()?.canon.run_trace(x)
    }

    /// `A_f`, the labels of the canon machine.
    pub fn actions(&self) -> Result<BTreeSet<Action>> {
        Ok(self.machine()?.canon.actions())
    }

    /// Shortest (then token-first) `y` on which the translations by `w` and
    /// by `x` differ, or `None` if they are the same translation.
    pub fn distinguish(&self, w: &Str, x: &Str) -> Result<Option<Str>> {
        let m = self.machine()?;
        let (p, q) = (self.state_after(w)?, self.state_after(x)?);
        if m.class_of[p.index()] == m.class_of[q.index()] {
            return Ok(None);
        }
        let t = &m.translations;
        let symbols = t.input_alphabet().symbols();
        let mut seen: HashSet<(StateId, StateId, Str, Str)> = HashSet::new();
        let mut queue = VecDeque::from([(p, q, Str::lambda(), Str::lambda(), Str::lambda())]);
        while let Some((p, q, left, right, y)) = queue.pop_front() {
            if left.concat(t.final_output(p)) != right.concat(t.final_output(q)) {
                return Ok(Some(y));
            }
            for (s, sym) in symbols.iter().enumerate() {
                let (p2, a) = t.step(p, s);
                let (q2, b) = t.step(q, s);
                let (l, r) = (left.concat(a), right.concat(b));
                let common = lcp([&l, &r])?;
                let key = (p2, q2, l.strip_prefix(&common).unwrap(), r.strip_prefix(&common).unwrap());
                if seen.insert(key.clone()) {
                    let mut y2 = y.clone();
                    y2.push(sym.clone());
                    queue.push_back((key.0, key.1, key.2, key.3, y2));
                }
            }
        }
        unreachable!("states in different classes are distinguishable")
    }

    /// Checks the canon machine against the supplied one on every input of
    /// length at most `max_len`.
    pub fn verify(&self, max_len: usize) -> bool {
        let Ok(m) = self.machine() else { return true };
        all_strings(m.canon.input_alphabet().symbols(), max_len)
            .iter()
            .all(|x| m.canon.transduce(x).ok() == m.source.transduce(x).ok())
    }

    /// `f^←(x)` approximated by the lcp of `f(xy)` over `|y| ≤ lookahead`.
    /// Works for formula handles too; exact whenever the lookahead is long
    /// enough for the function.
    pub fn bounded_top(&self, x: &Str, lookahead: usize) -> Result<Str> {
        let outs = all_strings(self.input_alphabet().symbols(), lookahead)
            .iter()
            .map(|y| self.apply(&x.concat(y)))
            .collect::<Result<Vec<_>>>()?;
        lcp(&outs)
    }
}

impl fmt::Debug for FunctionHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Machine(m) => f
                .debug_struct("FunctionHandle")
                .field("canon_states", &m.canon.num_states())
                .field("initial", &m.initial)
                .finish(),
            Repr::Formula { input, output, .. } => {
                f.debug_struct("FunctionHandle").field("input", input).field("output", output).finish()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{rs_direct, Builtin};
    use crate::random::{random_sfst, RandomParams};

    fn s(text: &str) -> Str {
        Str::parse(text).unwrap()
    }

    fn v(n: usize) -> Str {
        Str::parse(&vec!["V"; n].join(" ")).unwrap()
    }

    fn handle(b: Builtin) -> FunctionHandle {
        FunctionHandle::from_machine(b.machine())
    }

    /// `lcp{f(xy) | |y| ≤ 4}` straight from the supplied machine.
    fn top_by_enumeration(m: &Sfst, x: &Str) -> Str {
        let outs: Vec<Str> =
            all_strings(m.input_alphabet().symbols(), 4).iter().map(|y| m.transduce(&x.concat(y)).unwrap()).collect();
        lcp(&outs).unwrap()
    }

    #[test]
    fn syncope_tops_and_translations() {
        let rs = handle(Builtin::Syncope);
        assert_eq!(rs.f_top(&v(4)).unwrap(), v(2));
        assert_eq!(rs.f_top(&Str::lambda()).unwrap(), Str::lambda());
        for k in [2, 4, 6] {
            assert_eq!(rs.translation_apply(&v(k), &s("V")).unwrap(), Str::lambda());
            assert_eq!(rs.translation_apply(&v(k + 1), &s("V")).unwrap(), s("V"));
        }
    }

    #[test]
    fn copy_first_views() {
        let f = handle(Builtin::NonOnwardTssl);
        assert_eq!(f.f_top(&s("a b")).unwrap(), s("a b"));
        assert_eq!(f.f_top(&s("a b")).unwrap(), top_by_enumeration(&Builtin::NonOnwardTssl.machine(), &s("a b")));
        assert_eq!(f.translation_apply(&s("b"), &Str::lambda()).unwrap(), s("b"));
        assert_eq!(f.translation_apply(&s("a"), &Str::lambda()).unwrap(), s("a"));
        for k in 0..5 {
            let mut x = s("b");
            let mut expected = "(b:b)".to_string();
            for _ in 0..k {
                x.push(crate::symbols::Symbol::new("a").unwrap());
                expected.push_str("(a:a)");
            }
            assert_eq!(f.run_of(&x).unwrap().to_string(), expected);
        }
        let acts: Vec<String> = f.actions().unwrap().iter().map(|a| a.to_string()).collect();
        assert_eq!(acts, ["a:a", "b:b"]);
    }

    #[test]
    fn tiosl_not_tssl_run() {
        let f = handle(Builtin::TioslNotTssl);
        assert_eq!(f.run_of(&s("b a")).unwrap().to_string(), "(b:b)(a:)");
        assert!(f.run_of(&Str::lambda()).unwrap().is_empty());
    }

    #[test]
    fn action_alphabets() {
        let show = |f: &FunctionHandle| f.actions().unwrap().iter().map(|a| a.to_string()).collect::<Vec<_>>();
        assert_eq!(show(&handle(Builtin::Syncope)), ["C:C", "V:", "V:V"]);
        let id = Sfst::from_text("INPUT a\nOUTPUT a\nSTATE q\nSTART q\nFINAL q :\nTRANS q a -> q : a\n").unwrap();
        assert_eq!(show(&FunctionHandle::from_machine(id)), ["a:a"]);
    }

    // Actions by enumeration: increments f^←(zx) − f^←(z) for |z| ≤ 6, with
    // tops from the enumeration oracle rather than the canon machine.
    #[test]
    fn actions_match_bounded_enumeration() {
        for b in Builtin::ALL {
            let m = b.machine();
            let f = handle(b);
            if !f.initial_output().unwrap().is_empty() {
                continue;
            }
            let mut found = BTreeSet::new();
            for z in all_strings(m.input_alphabet().symbols(), 6) {
                let top_z = top_by_enumeration(&m, &z);
                for sym in m.input_alphabet().symbols() {
                    let mut zx = z.clone();
                    zx.push(sym.clone());
                    let y = top_by_enumeration(&m, &zx).strip_prefix(&top_z).unwrap();
                    found.insert(Action::new(sym.clone(), y));
                }
            }
            assert_eq!(found, f.actions().unwrap(), "{b}");
        }
    }

    #[test]
    fn laws_on_builtins_and_random_machines() {
        let mut handles: Vec<FunctionHandle> = Builtin::ALL.iter().map(|&b| handle(b)).collect();
        let params = RandomParams { states: 3, input: 2, output: 2, max_output: 2, silent_start: false };
        handles.extend((0..20).map(|seed| FunctionHandle::from_machine(random_sfst(&params, seed))));
        for f in &handles {
            let words = all_strings(f.input_alphabet().symbols(), 8);
            for x in &words {
                let top = f.f_top(x).unwrap();
                let run = f.run_of(x).unwrap();
                assert_eq!(&run.input_projection(), x);
                if !x.is_empty() {
                    assert_eq!(run.output_projection(), top);
                }
                for sym in f.input_alphabet().symbols() {
                    let mut xs = x.clone();
                    xs.push(sym.clone());
                    if xs.len() <= 8 {
                        assert!(f.f_top(&xs).unwrap().starts_with(&top));
                    }
                }
            }
            for x in all_strings(f.input_alphabet().symbols(), 4) {
                for y in all_strings(f.input_alphabet().symbols(), 4) {
                    let whole = f.apply(&x.concat(&y)).unwrap();
                    assert_eq!(f.f_top(&x).unwrap().concat(&f.translation_apply(&x, &y).unwrap()), whole);
                }
            }
        }
    }

    #[test]
    fn same_state_same_translation() {
        let f = handle(Builtin::TioslNotTssl);
        let words = all_strings(f.input_alphabet().symbols(), 5);
        let conts = all_strings(f.input_alphabet().symbols(), 4);
        for w in &words {
            for x in &words {
                if f.state_after(w).unwrap() == f.state_after(x).unwrap() {
                    for y in &conts {
                        assert_eq!(f.translation_apply(w, y).unwrap(), f.translation_apply(x, y).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn distinguishing_continuations() {
        let rs = handle(Builtin::Syncope);
        assert_eq!(rs.distinguish(&v(4), &v(5)).unwrap(), Some(s("V")));
        assert_eq!(rs.distinguish(&v(4), &v(2)).unwrap(), None);
        let f = handle(Builtin::NonOnwardTssl);
        assert_eq!(f.distinguish(&s("a"), &s("b")).unwrap(), Some(Str::lambda()));
    }

    #[test]
    fn initial_output_is_kept_out_of_translations() {
        // f(x) = b x: the start has to emit b before anything is read.
        let m = Sfst::from_text(
            "INPUT a\nOUTPUT a b\nSTATE p q\nSTART p\nFINAL p : b\nFINAL q :\n\
             TRANS p a -> q : b a\nTRANS q a -> q : a\n",
        )
        .unwrap();
        let f = FunctionHandle::from_machine(m);
        assert_eq!(f.initial_output().unwrap(), &s("b"));
        assert_eq!(f.f_top(&Str::lambda()).unwrap(), s("b"));
        assert_eq!(f.translation_apply(&Str::lambda(), &s("a")).unwrap(), s("a"));
        assert_eq!(f.f_top(&s("a")).unwrap(), s("b a"));
        assert_eq!(f.run_of(&s("a")).unwrap().to_string(), "(a:b.a)");
        // The translation by λ equals the translation by every other input.
        assert_eq!(f.distinguish(&Str::lambda(), &s("a a")).unwrap(), None);
    }

    #[test]
    fn formula_handles_are_not_exact() {
        let rs =
            FunctionHandle::from_formula(Alphabet::parse("C V").unwrap(), Alphabet::parse("C V").unwrap(), rs_direct);
        assert_eq!(rs.capability(), Capability::FormulaOnly);
        assert_eq!(rs.apply(&s("C V C V C V")).unwrap(), s("C C V C"));
        assert_eq!(rs.bounded_top(&v(4), 3).unwrap(), v(2));
        assert_eq!(rs.f_top(&v(4)), Err(Error::ExactUnsupported));
        assert!(matches!(rs.apply(&s("C X")), Err(Error::UnknownSymbol(_))));
    }
}
