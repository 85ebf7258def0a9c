//! The `subreg` command line.
//!
//! Machines are read from a file path, from `-` (stdin), or named as
//! `builtin:NAME` / `--builtin NAME`. Exit status is 0 on success, 1 on a
//! negative answer (non-member, non-onward, inequivalent) and 2 on usage,
//! parse or other errors. Errors print their code, e.g.
//! `error[NotTotal]: ...`.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::builtins::{
    reduction_direct, rs_direct, transliterate, Builtin, SegmentClasses, MACUSHI, OJIBWE, SEGMENT_CLASSES,
};
use crate::classes::{
    build_canonical_tiosl, build_canonical_tssl, check_tiosl, check_tssl, search_tiers, BruteTable, BuildOptions,
    ClassQuery, LocalityParams, Verdict,
};
use crate::decompose::decompose;
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::sfst::Sfst;
use crate::symbols::{Action, Str, Symbol, Tier};
use crate::views::FunctionHandle;

#[derive(Parser, Debug)]
#[command(name = "subreg", version, about = "Subsequential transducers and tier-based strictly local classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Source {
    /// Use a builtin machine instead of a file.
    #[arg(long, value_name = "NAME")]
    builtin: Option<String>,
}

#[derive(Args, Debug)]
struct Inputs {
    #[command(flatten)]
    source: Source,
    /// Machine (unless --builtin is given) followed by input strings, each a
    /// whitespace-separated token list.
    #[arg(value_name = "ARGS", allow_hyphen_values = true)]
    args: Vec<String>,
}

#[derive(Args, Debug)]
struct OneMachine {
    #[command(flatten)]
    source: Source,
    /// Machine file, `-` for stdin, or `builtin:NAME`.
    machine: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Class {
    Tiosl,
    Tisl,
    Tosl,
    Tssl,
}

#[derive(Args, Debug)]
struct ClassArgs {
    #[arg(long, value_enum)]
    class: Class,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
}

#[derive(Args, Debug)]
struct TierArgs {
    /// Comma-separated on-tier tokens (symbols, or actions `in:out1.out2`
    /// for TSSL), or ALL.
    #[arg(long, allow_hyphen_values = true)]
    tier: Option<String>,
    /// File with one on-tier token per line.
    #[arg(long, value_name = "PATH")]
    tier_file: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transduce input strings.
    Apply(Inputs),
    /// Print the transition labels along each run.
    Trace(Inputs),
    /// Print f top: the output guaranteed after each input.
    Ftop(Inputs),
    /// Print the run of the function (over its minimal onward machine).
    Run(Inputs),
    /// List the actions of the function.
    Actions(OneMachine),
    /// Report onwardness; with --apply print the onward machine instead.
    Onward {
        #[command(flatten)]
        m: OneMachine,
        #[arg(long)]
        apply: bool,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Print the minimal onward machine.
    Minimize {
        #[command(flatten)]
        m: OneMachine,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Decide whether two machines compute the same function.
    Equiv {
        /// Two machines (paths, `-`, or `builtin:NAME`).
        #[arg(num_args = 2, required = true)]
        machines: Vec<String>,
    },
    /// Decide class membership on one tier.
    Check {
        #[command(flatten)]
        m: OneMachine,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        tier: TierArgs,
        /// Use the enumeration oracle up to this length instead.
        #[arg(long, value_name = "L")]
        brute: Option<usize>,
    },
    /// Check every tier at every parameter up to --max-k.
    SearchTiers {
        #[command(flatten)]
        m: OneMachine,
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long, default_value_t = 2)]
        max_k: usize,
        #[arg(long)]
        sequential: bool,
        /// Print every tier, not only the members.
        #[arg(long)]
        verbose: bool,
    },
    /// Build the canonical machine for a class and tier.
    Build {
        #[command(flatten)]
        m: OneMachine,
        #[command(flatten)]
        class: ClassArgs,
        #[command(flatten)]
        tier: TierArgs,
        /// Include every tuple state, reachable or not.
        #[arg(long)]
        full: bool,
        #[arg(short, long)]
        output: Option<String>,
    },
    /// Factor the function as a 2-TOSL machine and a homomorphism.
    Decompose {
        #[command(flatten)]
        m: OneMachine,
        /// Output paths for g and h, in that order.
        #[arg(short, long, num_args = 1)]
        output: Vec<String>,
    },
    /// Graphviz export.
    Dot(OneMachine),
    /// Print a builtin machine, or list them.
    Builtin { name: Option<String> },
    /// Run the rhythmic reduction and syncope data through the closed forms.
    Demo,
}

/// Entry point; returns the process exit status.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli.command, &mut out) {
        Ok(code) => code,
        Err(e) => {
            let _ = out.flush();
            eprintln!("error[{}]: {e}", e.code());
            2
        }
    }
}

fn read_text(path: &str) -> Result<String> {
    let io_err = |e: io::Error| Error::InvalidParams(format!("{path}: {e}"));
    if path == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(io_err)?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn builtin(name: &str) -> Result<Sfst> {
    Builtin::from_name(name).map(Builtin::machine).ok_or_else(|| {
        let names: Vec<&str> = Builtin::ALL.iter().map(|b| b.name()).collect();
        Error::InvalidParams(format!("unknown builtin `{name}` (expected one of {})", names.join(", ")))
    })
}

fn load(source: &str) -> Result<Sfst> {
    match source.strip_prefix("builtin:") {
        Some(name) => builtin(name),
        None => Sfst::from_text(&read_text(source)?),
    }
}

impl OneMachine {
    fn load(&self) -> Result<Sfst> {
        match (&self.source.builtin, &self.machine) {
            (Some(name), None) => builtin(name),
            (None, Some(source)) => load(source),
            (Some(_), Some(_)) => Err(Error::InvalidParams("give either --builtin or a machine, not both".into())),
            (None, None) => Err(Error::InvalidParams("no machine given (path, `-`, or --builtin NAME)".into())),
        }
    }
}

impl Inputs {
    fn load(&self) -> Result<(Sfst, Vec<Str>)> {
        let (m, rest) = match &self.source.builtin {
            Some(name) => (builtin(name)?, &self.args[..]),
            None => {
                let (source, rest) = self
                    .args
                    .split_first()
                    .ok_or_else(|| Error::InvalidParams("no machine given (path, `-`, or --builtin NAME)".into()))?;
                (load(source)?, rest)
            }
        };
        let inputs = rest.iter().map(|x| Str::parse(x)).collect::<Result<Vec<_>>>()?;
        Ok((m, inputs))
    }
}

fn write_or_print(out: &mut dyn Write, path: Option<&str>, text: &str) -> Result<()> {
    match path {
        Some(p) if p != "-" => fs::write(p, text).map_err(|e| Error::InvalidParams(format!("{p}: {e}"))),
        _ => {
            emit(out, text.trim_end_matches('\n'));
            Ok(())
        }
    }
}

fn emit(out: &mut dyn Write, line: impl std::fmt::Display) {
    let _ = writeln!(out, "{line}");
}

fn params(c: &ClassArgs) -> Result<LocalityParams> {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Error::InvalidParams(format!("--class {:?} needs {flag}", c.class).to_lowercase()))
    };
    match c.class {
        Class::Tiosl => LocalityParams::new(need(c.i, "--i")?, need(c.j, "--j")?),
        Class::Tisl => LocalityParams::tisl(need(c.k.or(c.i), "--k")?),
        Class::Tosl => LocalityParams::tosl(need(c.k.or(c.j), "--k")?),
        Class::Tssl => Err(Error::InvalidParams("TSSL takes --k".into())),
    }
}

fn tier_tokens(t: &TierArgs) -> Result<Option<Vec<String>>> {
    match (&t.tier, &t.tier_file) {
        (Some(_), Some(_)) => Err(Error::InvalidParams("give either --tier or --tier-file".into())),
        (Some(list), None) if list == "ALL" => Ok(None),
        (Some(list), None) => {
            Ok(Some(list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect()))
        }
        (None, Some(path)) => Ok(Some(
            read_text(path)?
                .lines()
                .map(|l| l.split('#').next().unwrap_or("").trim())
                .filter(|l| !l.is_empty())
                .map(String::from)
                .collect(),
        )),
        (None, None) => Err(Error::InvalidParams("no tier given (--tier or --tier-file)".into())),
    }
}

fn symbol_tier(f: &FunctionHandle, t: &TierArgs) -> Result<Tier<Symbol>> {
    let alphabet = f.input_alphabet().union(f.output_alphabet()).symbols().to_vec();
    match tier_tokens(t)? {
        None => Ok(Tier::full(alphabet)),
        Some(tokens) => Tier::new(alphabet, tokens.iter().map(|s| Symbol::new(s)).collect::<Result<Vec<_>>>()?),
    }
}

fn action_tier(f: &FunctionHandle, t: &TierArgs) -> Result<Tier<Action>> {
    let actions = f.actions()?;
    match tier_tokens(t)? {
        None => Ok(Tier::full(actions)),
        Some(tokens) => Tier::new(actions, tokens.iter().map(|s| Action::parse(s)).collect::<Result<Vec<_>>>()?),
    }
}

fn report(out: &mut dyn Write, what: &str, verdict: &Verdict) -> i32 {
    match &verdict.witness {
        None => emit(out, format!("{what}: member")),
        Some(w) => emit(out, format!("{what}: not a member; witness {w}")),
    }
    emit(out, verdict.report_line());
    if verdict.member {
        0
    } else {
        1
    }
}

fn run(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Apply(inputs) => {
            let (m, xs) = inputs.load()?;
            for x in xs {
                emit(out, m.transduce(&x)?);
            }
        }
        Command::Trace(inputs) => {
            let (m, xs) = inputs.load()?;
            for x in xs {
                emit(out, m.run_trace(&x)?);
            }
        }
        Command::Ftop(inputs) => {
            let (m, xs) = inputs.load()?;
            let f = FunctionHandle::from_machine(m);
            for x in xs {
                emit(out, f.f_top(&x)?);
            }
        }
        Command::Run(inputs) => {
            let (m, xs) = inputs.load()?;
            let f = FunctionHandle::from_machine(m);
            for x in xs {
                emit(out, f.run_of(&x)?);
            }
        }
        Command::Actions(m) => {
            let f = FunctionHandle::from_machine(m.load()?);
            for a in f.actions()? {
                emit(out, a);
            }
        }
        Command::Onward { m, apply, output } => {
            let machine = m.load()?;
            if apply {
                write_or_print(out, output.as_deref(), &machine.make_onward().serialize())?;
                return Ok(0);
            }
            return Ok(match machine.onward_violation() {
                None => {
                    emit(out, "onward=true");
                    0
                }
                Some(v) => {
                    emit(out, format!("onward=false state={} prefix=\"{}\"", machine.label(v.state), v.prefix));
                    1
                }
            });
        }
        Command::Minimize { m, output } => {
            write_or_print(out, output.as_deref(), &m.load()?.minimize().serialize())?;
        }
        Command::Equiv { machines } => {
            let (a, b) = (load(&machines[0])?, load(&machines[1])?);
            let same = a.equivalent(&b)?;
            emit(out, format!("EQUIV {same}"));
            return Ok(if same { 0 } else { 1 });
        }
        Command::Check { m, class, tier, brute } => {
            let f = FunctionHandle::from_machine(m.load()?);
            let table = brute.map(|len| BruteTable::build(&f, len, Execution::default())).transpose()?;
            let verdict = if class.class == Class::Tssl {
                let k = class.k.ok_or_else(|| Error::InvalidParams("--class tssl needs --k".into()))?;
                let t = action_tier(&f, &tier)?;
                match &table {
                    Some(table) => table.check_tssl(k, &t)?,
                    None => check_tssl(&f, k, &t)?,
                }
            } else {
                let p = params(&class)?;
                let t = symbol_tier(&f, &tier)?;
                match &table {
                    Some(table) => table.check_tiosl(p, &t)?,
                    None => check_tiosl(&f, p, &t)?,
                }
            };
            return Ok(report(out, &format!("{:?}", class.class).to_uppercase(), &verdict));
        }
        Command::SearchTiers { m, class, max_k, sequential, verbose } => {
            let f = FunctionHandle::from_machine(m.load()?);
            let ks: Vec<usize> = match class.k {
                Some(k) => vec![k],
                None => (1..=max_k).collect(),
            };
            let queries: Vec<ClassQuery> = match class.class {
                Class::Tssl => ks.iter().map(|&k| ClassQuery::Tssl(k)).collect(),
                Class::Tisl => {
                    ks.iter().map(|&k| LocalityParams::tisl(k).map(ClassQuery::Tiosl)).collect::<Result<_>>()?
                }
                Class::Tosl => {
                    ks.iter().map(|&k| LocalityParams::tosl(k).map(ClassQuery::Tiosl)).collect::<Result<_>>()?
                }
                Class::Tiosl => {
                    let is: Vec<usize> = class.i.map_or_else(|| (1..=max_k).collect(), |i| vec![i]);
                    let js: Vec<usize> = class.j.map_or_else(|| (1..=max_k).collect(), |j| vec![j]);
                    let mut qs = Vec::new();
                    for &i in &is {
                        for &j in &js {
                            qs.push(ClassQuery::Tiosl(LocalityParams::new(i, j)?));
                        }
                    }
                    qs
                }
            };
            let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
            let report = search_tiers(&f, &queries, exec)?;
            for e in &report.entries {
                if verbose || e.verdict.member {
                    let status = if e.verdict.member { "member" } else { "no" };
                    emit(out, format!("{} tier={{{}}} {status}", e.query, e.on.join(",")));
                }
            }
            emit(out, format!("SUMMARY {}", report.summary()));
            return Ok(if report.any_member() { 0 } else { 1 });
        }
        Command::Build { m, class, tier, full, output } => {
            let f = FunctionHandle::from_machine(m.load()?);
            let opts = BuildOptions { full_state_set: full };
            let built = if class.class == Class::Tssl {
                let k = class.k.ok_or_else(|| Error::InvalidParams("--class tssl needs --k".into()))?;
                build_canonical_tssl(&f, k, &action_tier(&f, &tier)?, opts)
            } else {
                build_canonical_tiosl(&f, params(&class)?, &symbol_tier(&f, &tier)?, opts)
            };
            match built {
                Ok(machine) => write_or_print(out, output.as_deref(), &machine.serialize())?,
                Err(Error::NotInClass(w)) => {
                    let what = format!("{:?}", class.class).to_uppercase();
                    return Ok(report(out, &what, &Verdict::violated(*w)));
                }
                Err(e) => return Err(e),
            }
        }
        Command::Decompose { m, output } => {
            let (g, h) = decompose(&m.load()?);
            match output.as_slice() {
                [] => {
                    emit(out, "# g");
                    emit(out, g.serialize().trim_end());
                    emit(out, "# h");
                    emit(out, h.serialize().trim_end());
                }
                [gp, hp] => {
                    write_or_print(out, Some(gp), &g.serialize())?;
                    write_or_print(out, Some(hp), &h.serialize())?;
                }
                _ => return Err(Error::InvalidParams("decompose takes two -o paths: g, then h".into())),
            }
        }
        Command::Dot(m) => emit(out, m.load()?.to_dot().trim_end()),
        Command::Builtin { name: None } => {
            for b in Builtin::ALL {
                emit(out, b.name());
            }
        }
        Command::Builtin { name: Some(name) } => {
            let b =
                Builtin::from_name(&name).ok_or_else(|| Error::InvalidParams(format!("unknown builtin `{name}`")))?;
            emit(out, b.text().trim_end());
        }
        Command::Demo => demo(out)?,
    }
    Ok(0)
}

fn demo(out: &mut dyn Write) -> Result<()> {
    let classes = SegmentClasses::parse(SEGMENT_CLASSES)?;
    let rows = OJIBWE.iter().map(|w| (w, "reduction", reduction_direct as fn(&Str) -> Result<Str>));
    let rows = rows.chain(MACUSHI.iter().map(|w| (w, "syncope", rs_direct as fn(&Str) -> Result<Str>)));
    for (word, process, f) in rows {
        let underlying = transliterate(&classes, &Str::parse(word.underlying)?)?;
        let surface = transliterate(&classes, &Str::parse(word.surface)?)?;
        let predicted = f(&underlying)?;
        let status = if predicted == surface { "match" } else { "MISMATCH" };
        emit(
            out,
            format!(
                "{} '{}' /{}/ -> [{}]: {process}({underlying}) = {predicted}; attested {surface}: {status}",
                word.language, word.gloss, word.underlying, word.surface
            ),
        );
    }
    emit(
        out,
        "note: the idealized syncope function deletes the third vowel of /p i r i p i/, which the attested form keeps",
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(std::iter::once("subreg").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let code = run(cli.command, &mut buf).unwrap();
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn apply_builtin() {
        assert_eq!(run_args(&["apply", "--builtin", "syncope", "C V C V C V"]), (0, "C C V C\n".into()));
    }

    #[test]
    fn check_exit_codes() {
        let (code, text) =
            run_args(&["check", "--class", "tiosl", "--i", "2", "--j", "2", "--tier", "V", "--builtin", "syncope"]);
        assert_eq!(code, 1);
        assert!(text.contains("VERDICT member=false witness_w="));
        let (code, _) = run_args(&["check", "--class", "tssl", "--k", "2", "--tier", "V:,V:V", "--builtin", "syncope"]);
        assert_eq!(code, 0);
    }

    #[test]
    fn demo_reports_the_mismatch() {
        let (_, text) = run_args(&["demo"]);
        assert_eq!(text.matches(": match").count(), 3);
        assert_eq!(text.matches("MISMATCH").count(), 1);
    }
}
