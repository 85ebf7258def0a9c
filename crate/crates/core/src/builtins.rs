//! The four reference machines, their closed-form functions, and the
//! segment-class transliteration used for the Ojibwe and Macushi data.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::sfst::Sfst;
use crate::symbols::{Str, Symbol};

const REDUCTION: &str = "\
# rhythmic reduction: odd-numbered vowels become @
INPUT C V
OUTPUT C V @
STATE <|LB> <|@> <|V>
START <|LB>
FINAL <|LB> :
FINAL <|@> :
FINAL <|V> :
TRANS <|LB> C -> <|LB> : C
TRANS <|LB> V -> <|@> : @
TRANS <|@> C -> <|@> : C
TRANS <|@> V -> <|V> : V
TRANS <|V> C -> <|V> : C
TRANS <|V> V -> <|@> : @
";

const SYNCOPE: &str = "\
# rhythmic syncope: odd-numbered vowels are deleted
INPUT C V
OUTPUT C V
STATE [LB] [V:] [V:V]
START [LB]
FINAL [LB] :
FINAL [V:] :
FINAL [V:V] :
TRANS [LB] C -> [LB] : C
TRANS [LB] V -> [V:] :
TRANS [V:] C -> [V:] : C
TRANS [V:] V -> [V:V] : V
TRANS [V:V] C -> [V:V] : C
TRANS [V:V] V -> [V:] :
";

const TIOSL_NOT_TSSL: &str = "\
# copy the first symbol; delete a; b becomes c after the first symbol, d otherwise
INPUT a b
OUTPUT a b c d
STATE <LB|LB> <a|a> <b|b> <a|b> <b|a>
START <LB|LB>
FINAL <LB|LB> :
FINAL <a|a> :
FINAL <b|b> :
FINAL <a|b> :
FINAL <b|a> :
TRANS <LB|LB> a -> <a|a> : a
TRANS <LB|LB> b -> <b|b> : b
TRANS <a|a> a -> <a|a> :
TRANS <a|a> b -> <b|a> : c
TRANS <b|a> a -> <a|a> :
TRANS <b|a> b -> <b|a> : d
TRANS <b|b> a -> <a|b> :
TRANS <b|b> b -> <b|b> : c
TRANS <a|b> a -> <a|b> :
TRANS <a|b> b -> <b|b> : d
";

// The a:a and b:b self-loops are forced by totality and by f(xy) = xyx.
const NON_ONWARD_TSSL: &str = "\
# f(xy) = xyx for a first symbol x
INPUT a b
OUTPUT a b
STATE [LB] [a:a] [b:b] [b:] [a:a.a] [a:b.a] [b:a.b] [b:b.b] [a:]
START [LB]
FINAL [LB] :
FINAL [a:a] : a
FINAL [b:b] : a
FINAL [b:] : b b
FINAL [a:a.a] : b
FINAL [a:b.a] : b
FINAL [b:a.b] : b
FINAL [b:b.b] : b
FINAL [a:] : a b
TRANS [LB] a -> [a:a] : a
TRANS [LB] b -> [b:] :
TRANS [a:a] a -> [a:a] : a
TRANS [a:a] b -> [b:b] : b
TRANS [b:b] a -> [a:a] : a
TRANS [b:b] b -> [b:b] : b
TRANS [b:] a -> [a:b.a] : b a
TRANS [b:] b -> [b:b.b] : b b
TRANS [a:a.a] a -> [a:] :
TRANS [a:a.a] b -> [b:] :
TRANS [a:b.a] a -> [a:] :
TRANS [a:b.a] b -> [b:] :
TRANS [b:a.b] a -> [a:] :
TRANS [b:a.b] b -> [b:] :
TRANS [b:b.b] a -> [a:] :
TRANS [b:b.b] b -> [b:] :
TRANS [a:] a -> [a:a.a] : a a
TRANS [a:] b -> [b:a.b] : a b
";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Reduction,
    Syncope,
    TioslNotTssl,
    NonOnwardTssl,
}

impl Builtin {
    pub const ALL: [Builtin; 4] = [Builtin::Reduction, Builtin::Syncope, Builtin::TioslNotTssl, Builtin::NonOnwardTssl];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Reduction => "reduction",
            Builtin::Syncope => "syncope",
            Builtin::TioslNotTssl => "tiosl-not-tssl",
            Builtin::NonOnwardTssl => "nononward-tssl",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }

    pub fn text(self) -> &'static str {
        match self {
            Builtin::Reduction => REDUCTION,
            Builtin::Syncope => SYNCOPE,
            Builtin::TioslNotTssl => TIOSL_NOT_TSSL,
            Builtin::NonOnwardTssl => NON_ONWARD_TSSL,
        }
    }

    pub fn machine(self) -> Sfst {
        Sfst::from_text(self.text()).expect("builtin machines are well formed")
    }

    /// Closed-form version of the function, where one is known.
    pub fn direct(self) -> Option<fn(&Str) -> Result<Str>> {
        match self {
            Builtin::Reduction => Some(reduction_direct),
            Builtin::Syncope => Some(rs_direct),
            Builtin::TioslNotTssl => None,
            Builtin::NonOnwardTssl => Some(copy_first_to_end),
        }
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rewrites the odd-numbered vowels (first, third, ...) with `odd`.
fn alternate_vowels(x: &Str, odd: Option<&str>) -> Result<Str> {
    let mut out = Str::lambda();
    let mut vowels = 0;
    for s in x.symbols() {
        match s.as_str() {
            "C" => out.push(s.clone()),
            "V" => {
                vowels += 1;
                if vowels % 2 == 0 {
                    out.push(s.clone());
                } else if let Some(tok) = odd {
                    out.push(Symbol::new(tok)?);
                }
            }
            _ => return Err(Error::UnknownSymbol(s.to_string())),
        }
    }
    Ok(out)
}

/// Rhythmic syncope: deletes the first, third, fifth, ... vowel.
pub fn rs_direct(x: &Str) -> Result<Str> {
    alternate_vowels(x, None)
}

/// Rhythmic reduction: the first, third, fifth, ... vowel becomes `@`.
pub fn reduction_direct(x: &Str) -> Result<Str> {
    alternate_vowels(x, Some("@"))
}

/// `f(xy) = xyx` over `{a, b}`, with `f(λ) = λ`.
pub fn copy_first_to_end(x: &Str) -> Result<Str> {
    if let Some(s) = x.symbols().iter().find(|s| !matches!(s.as_str(), "a" | "b")) {
        return Err(Error::UnknownSymbol(s.to_string()));
    }
    let mut out = x.clone();
    if let Some(first) = x.symbols().first() {
        out.push(first.clone());
    }
    Ok(out)
}

/// Maps surface segments to the classes `C`, `V` and `@`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SegmentClasses {
    classes: BTreeMap<String, Symbol>,
}

impl SegmentClasses {
    pub fn new() -> Self {
        SegmentClasses::default()
    }

    pub fn insert(&mut self, segment: &str, class: &str) -> Result<()> {
        if !matches!(class, "C" | "V" | "@") {
            return Err(Error::InvalidToken(class.into(), "segment class must be C, V or @"));
        }
        self.classes.insert(segment.to_string(), Symbol::new(class)?);
        Ok(())
    }

    /// Reads `CLASS segment : C|V|@` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = SegmentClasses::new();
        for (n, raw) in text.lines().enumerate() {
            let tokens: Vec<&str> = raw.split('#').next().unwrap_or("").split_whitespace().collect();
            match tokens.as_slice() {
                [] => {}
                ["CLASS", segment, ":", class] => {
                    out.insert(segment, class).map_err(|e| Error::Syntax { line: n + 1, message: e.to_string() })?
                }
                _ => return Err(Error::Syntax { line: n + 1, message: "expected `CLASS segment : C|V|@`".into() }),
            }
        }
        Ok(out)
    }

    pub fn class_of(&self, segment: &str) -> Option<&Symbol> {
        self.classes.get(segment)
    }
}

pub fn transliterate(classes: &SegmentClasses, word: &Str) -> Result<Str> {
    word.symbols()
        .iter()
        .map(|s| classes.class_of(s.as_str()).cloned().ok_or_else(|| Error::UnmappedSegment(s.to_string())))
        .collect()
}

/// One word per line, segments separated by whitespace.
pub fn parse_word_list(text: &str) -> Result<Vec<Str>> {
    text.lines().map(|l| l.split('#').next().unwrap_or("")).filter(|l| !l.trim().is_empty()).map(Str::parse).collect()
}

pub const SEGMENT_CLASSES: &str = include_str!("../data/segments.classes");

/// An underlying/surface pair from the bundled data, with its gloss.
#[derive(Clone, Debug)]
pub struct Attested {
    pub language: &'static str,
    pub gloss: &'static str,
    pub underlying: &'static str,
    pub surface: &'static str,
}

const fn attested(
    language: &'static str,
    gloss: &'static str,
    underlying: &'static str,
    surface: &'static str,
) -> Attested {
    Attested { language, gloss, underlying, surface }
}

/// Rhythmic reduction data for Ojibwe, in ASCII transliteration.
pub const OJIBWE: [Attested; 2] = [
    attested("Ojibwe", "shoes", "m 2 k I z I n 2 n", "m @ k I z @ n 2 n"),
    attested("Ojibwe", "if he rolls him", "g U t I g U m I n 2 g I b I n a: d", "g @ t I g @ m I n @ g I b @ n a: d"),
];

/// Rhythmic syncope data for Macushi.
pub const MACUSHI: [Attested; 2] = [
    attested("Macushi", "spindle", "p i r i p i", "p r i p i"),
    attested("Macushi", "mirror", "w a n a m a r i", "w n a m r i"),
];
